//! The property suite: one exact check per acceptance criterion.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{code_parameters, commuting_check, components, is_self_dual, match_against_builder};
use crate::gf2::{rank_of, BitVec};
use crate::hamiltonian::Hamiltonian;
use crate::lattice::{
    build_bacon_shor, build_color_code_2d, build_fractal_code, build_gcc, build_toric, build_toric_sphere,
    FractalBoundary,
};
use crate::oracle::{conjugate_dense, multiply_dense};
use crate::pauli::{conjugate_by_circuit, multiply, symplectic_product, CliffordCircuit, PauliOp};
use crate::scenarios::{
    bacon_shor, color_2d_partial, gcc, toric_3d_type1, toric_sphere, toric_torus_augmented, ungauged, worked_setups,
    xu_moore_full_gauge_relabel, xu_moore_full_gauge_setup,
};
use crate::sptwall::{
    cz_certificate, fractal_slab, spt_pipeline, tensor_with_dual, toric_slab, SptResult,
};
use crate::ungauge::{
    dim_check, emergent_symmetries, full_gauge_comparison, gauge_hamiltonian, random_symmetric, ungauge_pauli,
};

pub const CHECK_NAMES: [&str; 13] = [
    "chain-complex validity",
    "symmetry annihilation",
    "commutation preservation",
    "dimension matching",
    "toric reproductions",
    "Bacon-Shor and Xu-Moore",
    "gauge color code components",
    "gauge color code relations",
    "transversal CZ logical",
    "SPT pipeline",
    "color code partial ungauging",
    "oracle equivalence",
    "code parameters",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Lattice size for the builder sweep of check 1; the other checks use fixed sizes.
    pub l: usize,
    pub seed: u64,
    /// Random symmetric pairs per setup in check 3.
    pub pairs: usize,
    /// Random conjugation cases in check 12.
    pub oracle_cases: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            l: 2,
            seed: 2024,
            pairs: 1000,
            oracle_cases: 500,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

/// Runs check `id` (1-based); panics inside a check count as failures.
pub fn run_check(id: usize, cfg: &SuiteConfig) -> CheckOutcome {
    let f: fn(&SuiteConfig) -> Check = match id {
        1 => chain_complexes,
        2 => annihilation,
        3 => commutation,
        4 => dimensions,
        5 => toric,
        6 => bacon_shor_xu_moore,
        7 => gcc_components,
        8 => gcc_relations,
        9 => cz_logical,
        10 => spt,
        11 => color_partial,
        12 => oracle,
        13 => parameters,
        _ => {
            return CheckOutcome {
                id,
                name: "unknown".into(),
                passed: false,
                detail: format!("no check numbered {id}"),
            }
        }
    };
    let result = catch_unwind(AssertUnwindSafe(|| f(cfg))).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckOutcome {
        id,
        name: CHECK_NAMES[id - 1].into(),
        passed,
        detail,
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    (1..=CHECK_NAMES.len()).map(|id| run_check(id, cfg)).collect()
}

fn chain_complexes(cfg: &SuiteConfig) -> Check {
    let l = cfg.l.max(2);
    let even = l + l % 2;
    let codes = vec![
        build_toric_sphere().code,
        build_toric(2, l, 1).map_err(e)?.code,
        build_toric(3, l, 1).map_err(e)?.code,
        build_toric(3, l, 2).map_err(e)?.code,
        build_toric(4, 2, 2).map_err(e)?.code,
        build_bacon_shor(l.max(3)).map_err(e)?.built.code,
        build_gcc(even).map_err(e)?.code,
        build_color_code_2d(3 * l.div_ceil(3)).map_err(e)?.code,
        build_fractal_code(l.max(3), FractalBoundary::Periodic).map_err(e)?.built.code,
        build_fractal_code(l.max(3), FractalBoundary::OpenY).map_err(e)?.built.code,
    ];
    for c in &codes {
        ensure!(c.css_complex().validate(), "∂_X·∂_Z ≠ 0 for {}", c.name);
    }
    let setups = worked_setups().map_err(e)?;
    for s in &setups {
        ensure!(s.setup.is_valid_complex(), "∂_R·∂_X ≠ 0 for {}", s.name);
    }
    Ok(format!("{} codes and {} setups", codes.len(), setups.len()))
}

fn annihilation(_: &SuiteConfig) -> Check {
    let mut total = 0;
    for s in worked_setups().map_err(e)? {
        for z in s.setup.z_symmetries() {
            let img = ungauge_pauli(&PauliOp::z_type(z), &s.setup).map_err(e)?;
            ensure!(img.is_identity(), "{}: a Z symmetry maps to {}", s.name, img.sparse_label());
            total += 1;
        }
    }
    Ok(format!("{total} generators annihilated"))
}

fn commutation(cfg: &SuiteConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut anticommuting = 0;
    for s in worked_setups().map_err(e)? {
        for _ in 0..cfg.pairs {
            let p = random_symmetric(&s.setup, &mut rng);
            let q = random_symmetric(&s.setup, &mut rng);
            let gp = ungauge_pauli(&p, &s.setup).map_err(e)?;
            let gq = ungauge_pauli(&q, &s.setup).map_err(e)?;
            let before = symplectic_product(&p, &q);
            ensure!(
                before == symplectic_product(&gp, &gq),
                "{}: commutation of {} and {} changed",
                s.name,
                p.sparse_label(),
                q.sparse_label()
            );
            anticommuting += before as usize;
        }
    }
    Ok(format!("7 × {} pairs, {anticommuting} anticommuting", cfg.pairs))
}

fn dimensions(_: &SuiteConfig) -> Check {
    for s in worked_setups().map_err(e)? {
        let r = s.setup.ranks();
        ensure!(
            dim_check(&s.setup),
            "{}: {} − {} ≠ {} − {}",
            s.name,
            r.n_ini,
            r.rank_d_z,
            r.n_fin,
            r.rank_d_r
        );
    }
    Ok("all 7 setups".into())
}

fn is_paramagnet(h: &Hamiltonian) -> bool {
    h.ops()
        .all(|p| p.is_identity() || (p.is_x_type() && p.weight() == 1 && p.sign() == Some(1)))
}

fn toric(_: &SuiteConfig) -> Check {
    let sphere = toric_sphere().map_err(e)?;
    let r = sphere.setup.ranks();
    ensure!(r.rank_d_r == 1, "sphere: rank ∂_R = {}", r.rank_d_r);
    ensure!(emergent_symmetries(&sphere.setup).len() == 1, "sphere: more than one emergent symmetry");
    ensure!(is_paramagnet(&ungauged(&sphere).map_err(e)?), "sphere: image is not a paramagnet");

    let torus = toric_torus_augmented(3).map_err(e)?;
    let r = torus.setup.ranks();
    ensure!(r.rank_d_z + r.rank_d_x == r.n_ini, "torus: {} logical qubits remain", r.n_ini - r.rank_d_z - r.rank_d_x);
    ensure!(is_paramagnet(&ungauged(&torus).map_err(e)?), "torus: image is not a paramagnet");

    let t3 = toric_3d_type1(2).map_err(e)?;
    let img = ungauged(&t3).map_err(e)?;
    ensure!(is_paramagnet(&img), "3D: image is not a paramagnet");
    let singles = img.ops().filter(|p| !p.is_identity()).count();
    ensure!(t3.setup.n_fin() == 8 && singles == 8, "3D: {singles} X terms on {} qubits", t3.setup.n_fin());
    Ok("sphere rank ∂_R = 1; torus k = 0; 3D vertex paramagnet on 8 qubits".into())
}

fn bacon_shor_xu_moore(_: &SuiteConfig) -> Check {
    let bs = bacon_shor(3).map_err(e)?;
    let s = &bs.scenario;
    let img = ungauged(s).map_err(e)?;
    ensure!(img.same_operators(&bs.xu_moore.hamiltonian), "Γ̃(H_BS) differs from Xu-Moore");
    let back = gauge_hamiltonian(&img, &s.setup).map_err(e)?;
    ensure!(back.same_operators(&s.hamiltonian), "Γ(Γ̃(H_BS)) differs from H_BS");
    let full = xu_moore_full_gauge_setup(&bs.xu_moore).map_err(e)?;
    let relabel = xu_moore_full_gauge_relabel(&bs.xu_moore);
    let rep = full_gauge_comparison(&bs.xu_moore.hamiltonian, &full, &relabel).map_err(e)?;
    ensure!(rep.matches, "full gauging differs from the Hadamard conjugate");
    Ok(format!("{} terms", img.len()))
}

fn gcc_components(_: &SuiteConfig) -> Check {
    let g = gcc(2).map_err(e)?;
    let s = &g.scenario.setup;
    let hx = crate::ungauge::ungauge_hamiltonian(&g.h_x, s).map_err(e)?;
    ensure!(hx.ops().all(|p| p.weight() == 1), "Γ̃(H^X) has a term of weight ≠ 1");

    let lat = g.lattice();
    let mut classes: Vec<(Vec<u8>, BTreeSet<usize>)> = Vec::new();
    for edge in 0..lat.count(1) {
        let c = lat.cell_colors(1, edge).ok_or("uncolored edge")?;
        match classes.iter_mut().find(|(k, _)| *k == c) {
            Some((_, set)) => {
                set.insert(edge);
            }
            None => classes.push((c, BTreeSet::from([edge]))),
        }
    }
    let hz = crate::ungauge::ungauge_hamiltonian(&g.h_z, s).map_err(e)?;
    let cz = components(&hz);
    ensure!(cz.count == 6, "Γ̃(H^Z) has {} components", cz.count);
    for c in &cz.components {
        let q: BTreeSet<usize> = c.qubits.iter().copied().collect();
        ensure!(classes.iter().any(|(_, set)| *set == q), "a Z component is not an edge color class");
    }
    ensure!(cz.sizes() == vec![24, 24, 16, 16, 16, 16], "Z component sizes {:?}", cz.sizes());

    let hy = crate::ungauge::ungauge_hamiltonian(&g.h_y, s).map_err(e)?;
    let cy = components(&hy);
    ensure!(cy.count == 3, "Γ̃(H^Y) has {} components", cy.count);
    for i in 0..cy.count {
        ensure!(commuting_check(&cy.hamiltonian(&hy, i)), "RBH copy {i} has anticommuting terms");
    }
    Ok(format!("Z sizes {:?}, Y sizes {:?}", cz.sizes(), cy.sizes()))
}

fn gcc_relations(_: &SuiteConfig) -> Check {
    let g = gcc(2).map_err(e)?;
    for (v, rels) in g.vertex_relations.iter().enumerate() {
        let r = rank_of(rels);
        ensure!(r == 2, "vertex {v}: color-pair relations have rank {r}");
    }
    let gens = g.scenario.setup.x_generators();
    for rels in &g.vertex_relations {
        for r in rels {
            let mut sum = BitVec::zeros(g.scenario.code.n);
            for i in r.iter_ones() {
                sum.xor_assign(&gens[i]);
            }
            ensure!(sum.is_zero(), "a color-pair relation does not multiply to the identity");
        }
    }
    Ok(format!("{} vertices, rank 2 each", g.vertex_relations.len()))
}

fn cz_logical(_: &SuiteConfig) -> Check {
    for boundary in [FractalBoundary::Periodic, FractalBoundary::OpenY] {
        let f = build_fractal_code(4, boundary).map_err(e)?;
        let c = &f.built.code;
        let t = tensor_with_dual(c).map_err(e)?;
        let cert = cz_certificate(&t).map_err(e)?;
        ensure!(cert.is_logical(), "fractal {boundary:?}: generators {:?} fail", cert.failures);
        let n = c.n;
        let zero = BitVec::zeros(n);
        let cz = crate::sptwall::transversal_cz(n, 0..n);
        for sx in &c.stabilizer_x {
            let img = conjugate_by_circuit(&PauliOp::x_type(sx.concat(&zero)), &cz);
            let expect = PauliOp::from_parts(sx.concat(&zero), zero.concat(sx), 0);
            ensure!(img == expect, "fractal {boundary:?}: S^X image is not S^X ⊗ S̃^Z");
        }
    }
    let t = tensor_with_dual(&build_toric(2, 3, 1).map_err(e)?.code).map_err(e)?;
    let cert = cz_certificate(&t).map_err(e)?;
    ensure!(cert.is_logical(), "toric: generators {:?} fail", cert.failures);
    Ok("fractal L=4 (periodic, open y) and toric L=3".into())
}

fn disentangles(r: &SptResult) -> bool {
    match &r.disentangler {
        None => false,
        Some(c) => r.h_spt.ops().all(|t| {
            let p = conjugate_by_circuit(t, c);
            p.is_x_type() && p.weight() == 1 && p.sign() == Some(1)
        }),
    }
}

fn spt(_: &SuiteConfig) -> Check {
    let t = build_toric(2, 4, 1).map_err(e)?;
    let region = toric_slab(&t, 1, 2).map_err(e)?;
    let r = spt_pipeline(&t.code, &region).map_err(e)?;
    ensure!(r.bulk_trivial, "toric: bulk images are not single X");
    ensure!(!r.h_spt.is_empty(), "toric: empty wall Hamiltonian");
    let n = r.h_spt.n();
    let mut nbrs: Vec<Option<BitVec>> = vec![None; n];
    for p in r.h_spt.ops() {
        let xs = p.x().support();
        ensure!(xs.len() == 1 && p.z().weight() == 2 && !p.z().get(xs[0]), "toric: {} is not a cluster term", p.sparse_label());
        ensure!(nbrs[xs[0]].is_none(), "toric: two terms on qubit {}", xs[0]);
        nbrs[xs[0]] = Some(p.z().clone());
    }
    for (v, nv) in nbrs.iter().enumerate() {
        if let Some(nv) = nv {
            for u in nv.iter_ones() {
                ensure!(nbrs[u].as_ref().is_some_and(|nu| nu.get(v)), "toric: neighbors of {v} and {u} disagree");
            }
        }
    }
    let comps = components(&r.h_spt);
    for c in &comps.components {
        ensure!(c.terms.len() == c.qubits.len(), "toric: wall component is not a ring");
    }
    ensure!(disentangles(&r), "toric: no disentangling circuit");
    let rings = comps.sizes();

    let f = build_fractal_code(4, FractalBoundary::OpenY).map_err(e)?;
    let region = fractal_slab(&f.geometry, 1, 2).map_err(e)?;
    let r = spt_pipeline(&f.built.code, &region).map_err(e)?;
    ensure!(r.bulk_trivial, "fractal: bulk images are not single X");
    ensure!(commuting_check(&r.h_spt), "fractal: wall terms do not commute");
    ensure!(!r.symmetries.is_empty(), "fractal: no restricted symmetries");
    for s in &r.symmetries {
        ensure!(r.h_spt.ops().all(|t| t.commutes_with(s)), "fractal: {} breaks a wall term", s.sparse_label());
    }
    ensure!(disentangles(&r), "fractal: no disentangling circuit");
    Ok(format!(
        "toric rings {rings:?}; fractal {} wall terms, {} symmetries",
        r.h_spt.len(),
        r.symmetries.len()
    ))
}

fn color_partial(_: &SuiteConfig) -> Check {
    let c = color_2d_partial(3).map_err(e)?;
    let comps = components(&c.image);
    ensure!(comps.count == 2, "{} components", comps.count);
    for sector in 0..2 {
        let (code, corr) = c.reference(sector).map_err(e)?;
        let want: BTreeSet<usize> = c.sectors[sector].iter().copied().collect();
        let i = comps
            .components
            .iter()
            .position(|k| k.qubits.iter().copied().collect::<BTreeSet<_>>() == want)
            .ok_or(format!("no component on sector {sector}"))?;
        let h = comps.hamiltonian(&c.image, i);
        ensure!(match_against_builder(&h, &code, &corr).map_err(e)?, "sector {sector} differs from the sublattice toric code");
    }
    Ok(format!("sizes {:?}", comps.sizes()))
}

fn random_pauli<R: Rng>(n: usize, rng: &mut R) -> PauliOp {
    let x = BitVec::from_bools(&(0..n).map(|_| rng.gen()).collect::<Vec<bool>>());
    let z = BitVec::from_bools(&(0..n).map(|_| rng.gen()).collect::<Vec<bool>>());
    PauliOp::from_parts(x, z, rng.gen_range(0..4))
}

fn random_circuit<R: Rng>(n: usize, len: usize, rng: &mut R) -> CliffordCircuit {
    let mut c = CliffordCircuit::new(n);
    for _ in 0..len {
        if n < 2 || rng.gen_bool(0.5) {
            c.h(rng.gen_range(0..n));
        } else {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            c.cz(a, b);
        }
    }
    c
}

fn oracle(cfg: &SuiteConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    for case in 0..cfg.oracle_cases {
        let n = 1 + case % 10;
        let p = random_pauli(n, &mut rng);
        let len = rng.gen_range(1..=12);
        let c = random_circuit(n, len, &mut rng);
        let dense = conjugate_dense(&p, &c).ok_or("dense conjugate is not a Pauli")?;
        let fast = conjugate_by_circuit(&p, &c);
        ensure!(dense == fast, "case {case}: {} ≠ {}", fast.sparse_label(), dense.sparse_label());
        if n <= 6 {
            let q = random_pauli(n, &mut rng);
            let dense = multiply_dense(&p, &q).ok_or("dense product is not a Pauli")?;
            ensure!(dense == multiply(&p, &q), "case {case}: products differ");
        }
    }
    Ok(format!("{} conjugations, n ≤ 10", cfg.oracle_cases))
}

fn parameters(_: &SuiteConfig) -> Check {
    let bs = code_parameters(&build_bacon_shor(3).map_err(e)?.built.code);
    let got = (bs.n, bs.k, bs.s_rank, bs.gauge_qubits);
    ensure!(got == (9, 1, 4, 4), "Bacon-Shor (n, k, s, g) = {got:?}");
    ensure!(is_self_dual(&build_gcc(2).map_err(e)?.code), "gauge color code is not self-dual");
    let k = code_parameters(&build_toric(2, 3, 1).map_err(e)?.code).k;
    ensure!(k == 2, "toric L=3 has k = {k}");
    Ok("(9,1,4,4); self-dual; k = 2".into())
}
