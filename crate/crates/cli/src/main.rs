use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ungauge_core::analysis::{code_parameters, components, match_against_builder};
use ungauge_core::lattice::{
    build_bacon_shor, build_color_code_2d, build_fractal_code, build_gcc, build_toric, build_toric_sphere,
    build_xu_moore, FractalBoundary, LatticeCode,
};
use ungauge_core::scenarios::{
    bacon_shor, color_2d_partial, fractal, gcc, stabilizer_scenario, toric_3d_type1, toric_sphere,
    toric_torus_augmented, xu_moore_full_gauge_relabel, xu_moore_full_gauge_setup, Scenario,
};
use ungauge_core::sptwall::{fractal_slab, report as spt_report, spt_pipeline, toric_slab};
use ungauge_core::ungauge::{
    commutation_sample, full_gauge_comparison, report as ungauge_report, round_trip, ungauge_hamiltonian,
};
use ungauge_core::verify::{run_check, SuiteConfig, CHECK_NAMES};
use ungauge_core::{Error, Hamiltonian};

#[derive(Parser)]
#[command(name = "ungauge", version, about = "Build CSS codes, ungauge their Z symmetries and check the results")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write its JSON description and lattice DOT.
    Build {
        #[command(flatten)]
        code: CodeArgs,
        /// Code JSON output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Lattice DOT output path.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Ungauge the Z symmetries of a code and check the invariants.
    Ungauge {
        #[command(flatten)]
        code: CodeArgs,
        /// Which Hamiltonian to map (gcc: x, y, z or gauge; others use their default).
        #[arg(long, value_enum)]
        hamiltonian: Option<Which>,
        /// Partially ungauge the color code: only the stars of this vertex color.
        #[arg(long)]
        partial: Option<char>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random symmetric pairs for the commutation sample.
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Component graph DOT output path.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Apply Γ to the ungauged model (round trip), or fully gauge Xu-Moore.
    Gauge {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the domain wall and the SPT Hamiltonian on its surface.
    Spt {
        #[command(flatten)]
        code: CodeArgs,
        /// Slab layers `lo:hi` (inclusive).
        #[arg(long)]
        slab: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the property suite.
    Verify {
        /// Run every check (the default when no --check is given).
        #[arg(long)]
        all: bool,
        /// Run only these checks (1-based, repeatable).
        #[arg(long)]
        check: Vec<usize>,
        /// Lattice size for the builder sweep.
        #[arg(long = "L", default_value_t = 2)]
        l: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
        #[arg(long, default_value_t = 500)]
        oracle_cases: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a code as JSON, its boundary matrices as JSON, or its lattice as DOT.
    Export {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = Format::Code)]
        format: Format,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Clone)]
struct CodeArgs {
    #[arg(long, value_enum)]
    code: Family,
    #[arg(long = "L")]
    l: Option<usize>,
    /// Spatial dimension (toric only).
    #[arg(long = "D", default_value_t = 2)]
    d: usize,
    /// Qubit cell dimension (toric only).
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Boundary::Periodic)]
    boundary: Boundary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Toric,
    Toric2d,
    ToricSphere,
    BaconShor,
    XuMoore,
    Gcc,
    Color2d,
    Fractal,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Boundary {
    Periodic,
    OpenY,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    X,
    Y,
    Z,
    Gauge,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Code,
    Matrices,
    Dot,
}

enum Failure {
    /// A check did not hold (exit 1).
    Check(String),
    /// Bad parameters or input (exit 2).
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameters(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn write_json(path: &Option<PathBuf>, v: &Value) -> Outcome {
    if let Some(p) = path {
        write_text(p, &serde_json::to_string_pretty(v).expect("JSON values serialize"))?;
    }
    Ok(())
}

fn write_text(path: &Path, s: &str) -> Outcome {
    fs::write(path, s).map_err(io)
}

impl CodeArgs {
    fn family_name(&self) -> &'static str {
        match self.code {
            Family::Toric | Family::Toric2d => "toric",
            Family::ToricSphere => "toric-sphere",
            Family::BaconShor => "bacon-shor",
            Family::XuMoore => "xu-moore",
            Family::Gcc => "gcc",
            Family::Color2d => "color2d",
            Family::Fractal => "fractal",
        }
    }

    fn dim(&self) -> usize {
        if self.code == Family::Toric2d {
            2
        } else {
            self.d
        }
    }

    fn size(&self, default: usize) -> usize {
        self.l.unwrap_or(default)
    }

    fn boundary(&self) -> FractalBoundary {
        match self.boundary {
            Boundary::Periodic => FractalBoundary::Periodic,
            Boundary::OpenY => FractalBoundary::OpenY,
        }
    }

    fn build(&self) -> Result<LatticeCode, Failure> {
        Ok(match self.code {
            Family::Toric | Family::Toric2d => build_toric(self.dim(), self.size(3), self.k)?,
            Family::ToricSphere => build_toric_sphere(),
            Family::BaconShor => build_bacon_shor(self.size(3))?.built,
            Family::Gcc => build_gcc(self.size(2))?,
            Family::Color2d => build_color_code_2d(self.size(3))?,
            Family::Fractal => build_fractal_code(self.size(4), self.boundary())?.built,
            Family::XuMoore => {
                return Err(Failure::Usage("xu-moore is a Hamiltonian, not a code; use gauge".into()));
            }
        })
    }

    /// The family's ungauging setup with the Hamiltonian it maps by default.
    fn scenario(&self) -> Result<Scenario, Failure> {
        Ok(match self.code {
            Family::ToricSphere => toric_sphere()?,
            Family::Toric | Family::Toric2d => match (self.dim(), self.k) {
                (2, 1) => toric_torus_augmented(self.size(3))?,
                (3, 1) => toric_3d_type1(self.size(2))?,
                _ => stabilizer_scenario("toric", self.build()?.code)?,
            },
            Family::BaconShor => bacon_shor(self.size(3))?.scenario,
            Family::Gcc => gcc(self.size(2))?.scenario,
            Family::Fractal => fractal(self.size(4), self.boundary())?.0,
            Family::Color2d => stabilizer_scenario("color2d", self.build()?.code)?,
            Family::XuMoore => return Err(Failure::Usage("xu-moore has no ungauging setup; use gauge".into())),
        })
    }
}

fn cmd_build(code: &CodeArgs, out: &Option<PathBuf>, dot: &Option<PathBuf>) -> Outcome {
    let built = code.build()?;
    let params = code_parameters(&built.code);
    let c = built.code.clone().with_meta("k", params.k);
    let v = json!({
        "code": c,
        "parameters": params,
        "complex": { "d_z": c.d_z(), "d_x": c.d_x() },
    });
    println!(
        "{}: n = {}, k = {}, stabilizer rank = {}, gauge qubits = {}",
        c.name, params.n, params.k, params.s_rank, params.gauge_qubits
    );
    write_json(out, &v)?;
    if let Some(p) = dot {
        let lat = built
            .lattice
            .as_ref()
            .ok_or_else(|| Failure::Usage(format!("{} has no lattice to draw", c.name)))?;
        write_text(p, &lat.to_dot(built.qubit_dim.unwrap_or(1).max(1)))?;
    }
    Ok(())
}

fn component_summary(h: &Hamiltonian) -> Value {
    let r = components(h);
    json!({ "count": r.count, "sizes": r.sizes() })
}

fn cmd_ungauge(
    code: &CodeArgs,
    which: Option<Which>,
    partial: Option<char>,
    seed: u64,
    pairs: usize,
    out: &Option<PathBuf>,
    dot: &Option<PathBuf>,
) -> Outcome {
    let mut extra = json!({});
    let (scenario, h, image) = if let Some(color) = partial {
        if code.code != Family::Color2d {
            return Err(Failure::Usage("--partial applies to color2d only".into()));
        }
        if color != 'c' {
            return Err(Failure::Usage(format!("partial ungauging is implemented for color c, got {color}")));
        }
        let c = color_2d_partial(code.size(3))?;
        let mut matches = Vec::new();
        let comps = components(&c.image);
        for sector in 0..2 {
            let (reference, corr) = c.reference(sector)?;
            let ok = comps.components.iter().enumerate().any(|(i, k)| {
                let mut q = k.qubits.clone();
                q.sort_unstable();
                q == c.sectors[sector]
                    && match_against_builder(&comps.hamiltonian(&c.image, i), &reference, &corr).unwrap_or(false)
            });
            matches.push(ok);
        }
        extra = json!({ "sectors_match_toric": matches });
        let h = c.scenario.hamiltonian.clone();
        (c.scenario, h, c.image)
    } else {
        let (scenario, h) = if code.code == Family::Gcc {
            let g = gcc(code.size(2))?;
            let h = match which {
                Some(Which::X) => g.h_x.clone(),
                Some(Which::Y) => g.h_y.clone(),
                Some(Which::Z) => g.h_z.clone(),
                Some(Which::Gauge) | None => g.scenario.hamiltonian.clone(),
            };
            (g.scenario, h)
        } else {
            if which.is_some() {
                return Err(Failure::Usage("--hamiltonian applies to gcc only".into()));
            }
            let s = code.scenario()?;
            let h = s.hamiltonian.clone();
            (s, h)
        };
        let image = ungauge_hamiltonian(&h, &scenario.setup)?;
        (scenario, h, image)
    };
    let rep = ungauge_report(&h, &scenario.setup)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kept = commutation_sample(&scenario.setup, pairs, &mut rng)?;
    let comps = component_summary(&image);
    let ok = rep.all_annihilated && rep.dim_check && kept == pairs && scenario.setup.is_valid_complex();
    let v = json!({
        "code": scenario.code.name,
        "setup": scenario.name,
        "report": rep,
        "checks": {
            "valid_complex": scenario.setup.is_valid_complex(),
            "annihilation": rep.all_annihilated,
            "dim_check": rep.dim_check,
            "commutation_sample": { "pairs": pairs, "preserved": kept, "seed": seed },
        },
        "image_terms": image.ops().map(|p| p.sparse_label()).collect::<Vec<_>>(),
        "components": comps,
        "extra": extra,
    });
    println!(
        "{} ({}): {} -> {} qubits, annihilation {}, dim check {}, commutation {}/{}",
        scenario.name,
        scenario.code.name,
        rep.setup_ranks.n_ini,
        rep.setup_ranks.n_fin,
        rep.all_annihilated,
        rep.dim_check,
        kept,
        pairs
    );
    println!("components: {} with sizes {}", comps["count"], comps["sizes"]);
    if extra != json!({}) {
        println!("{extra}");
    }
    write_json(out, &v)?;
    if let Some(p) = dot {
        write_text(p, &components(&image).to_dot(&image))?;
    }
    let sectors_ok = extra
        .get("sectors_match_toric")
        .and_then(Value::as_array)
        .is_none_or(|a| a.iter().all(|b| b.as_bool() == Some(true)));
    if ok && sectors_ok {
        Ok(())
    } else {
        Err(Failure::Check("an ungauging invariant failed".into()))
    }
}

fn cmd_gauge(code: &CodeArgs, out: &Option<PathBuf>) -> Outcome {
    if code.code == Family::XuMoore {
        let xm = build_xu_moore(code.size(3))?;
        let setup = xu_moore_full_gauge_setup(&xm)?;
        let rep = full_gauge_comparison(&xm.hamiltonian, &setup, &xu_moore_full_gauge_relabel(&xm))?;
        println!("xu-moore full gauging matches the Hadamard conjugate: {}", rep.matches);
        write_json(out, &json!({ "full_gauge": rep }))?;
        return if rep.matches {
            Ok(())
        } else {
            Err(Failure::Check("full gauging differs".into()))
        };
    }
    let s = code.scenario()?;
    let rt = round_trip(&s.hamiltonian, &s.setup)?;
    println!(
        "{}: {}/{} terms returned exactly, {}/{} up to Z symmetries",
        s.name, rt.exact_terms, rt.total, rt.equivalent_terms, rt.total
    );
    write_json(out, &json!({ "setup": s.name, "round_trip": rt }))?;
    if rt.is_equivalent() {
        Ok(())
    } else {
        Err(Failure::Check("round trip changed a term".into()))
    }
}

fn parse_slab(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("slab must be lo:hi, got {s}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn cmd_spt(code: &CodeArgs, slab: &str, out: &Option<PathBuf>) -> Outcome {
    let (lo, hi) = parse_slab(slab)?;
    let result = match code.code {
        Family::Toric | Family::Toric2d if code.dim() == 2 && code.k == 1 => {
            let t = build_toric(2, code.size(4), 1)?;
            let r = toric_slab(&t, lo, hi)?;
            spt_pipeline(&t.code, &r)?
        }
        Family::Fractal => {
            let f = build_fractal_code(code.size(4), code.boundary())?;
            let r = fractal_slab(&f.geometry, lo, hi)?;
            spt_pipeline(&f.built.code, &r)?
        }
        _ => return Err(Failure::Usage("spt supports toric (D=2, k=1) and fractal".into())),
    };
    let rep = spt_report(&result);
    println!(
        "CZ logical: {}; {} wall terms, {} SPT terms, {} symmetries",
        rep.cz_logical,
        rep.wall_terms.len(),
        rep.spt_terms.len(),
        rep.symmetries.len()
    );
    for t in &rep.spt_terms {
        println!("  {t}");
    }
    println!(
        "commuting {}, bulk trivial {}, symmetries commute {}, disentangler {}",
        rep.spt_commuting,
        rep.bulk_trivial,
        rep.symmetries_commute,
        match rep.disentangles {
            Some(true) => "found",
            Some(false) => "found but fails",
            None => "none",
        }
    );
    for w in &rep.warnings {
        eprintln!("warning: {w}");
    }
    let ok = rep.spt_commuting && rep.bulk_trivial && rep.symmetries_commute && rep.disentangles != Some(false);
    write_json(out, &json!({ "components": component_summary(&result.h_spt), "report": rep }))?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Check("an SPT property failed".into()))
    }
}

fn cmd_verify(checks: &[usize], cfg: &SuiteConfig, out: &Option<PathBuf>) -> Outcome {
    let ids: Vec<usize> = if checks.is_empty() {
        (1..=CHECK_NAMES.len()).collect()
    } else {
        checks.to_vec()
    };
    if let Some(&bad) = ids.iter().find(|&&i| i == 0 || i > CHECK_NAMES.len()) {
        return Err(Failure::Usage(format!("checks are numbered 1 to {}, got {bad}", CHECK_NAMES.len())));
    }
    let outcomes: Vec<_> = ids.iter().map(|&id| run_check(id, cfg)).collect();
    for o in &outcomes {
        println!(
            "{} {:>2} {}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.detail
        );
    }
    write_json(out, &json!({ "outcomes": outcomes }))?;
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{failed} check(s) failed")))
    }
}

fn cmd_export(code: &CodeArgs, format: Format, out: &Path) -> Outcome {
    let built = code.build()?;
    match format {
        Format::Code => write_text(out, &serde_json::to_string_pretty(&built.code).map_err(Error::from)?),
        Format::Matrices => write_text(
            out,
            &serde_json::to_string_pretty(&json!({ "d_z": built.code.d_z(), "d_x": built.code.d_x() }))
                .map_err(Error::from)?,
        ),
        Format::Dot => {
            let lat = built
                .lattice
                .as_ref()
                .ok_or_else(|| Failure::Usage(format!("{} has no lattice to draw", code.family_name())))?;
            write_text(out, &lat.to_dot(built.qubit_dim.unwrap_or(1).max(1)))
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Build { code, out, dot } => cmd_build(code, out, dot),
        Command::Ungauge {
            code,
            hamiltonian,
            partial,
            seed,
            pairs,
            out,
            dot,
        } => cmd_ungauge(code, *hamiltonian, *partial, *seed, *pairs, out, dot),
        Command::Gauge { code, out } => cmd_gauge(code, out),
        Command::Spt { code, slab, out } => cmd_spt(code, slab, out),
        Command::Verify {
            all: _,
            check,
            l,
            seed,
            pairs,
            oracle_cases,
            out,
        } => {
            let cfg = SuiteConfig {
                l: *l,
                seed: *seed,
                pairs: *pairs,
                oracle_cases: *oracle_cases,
            };
            cmd_verify(check, &cfg, out)
        }
        Command::Export { code, format, out } => cmd_export(code, *format, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
