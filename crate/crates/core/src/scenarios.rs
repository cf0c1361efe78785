//! The worked ungauging setups: codes, chosen symmetries, generators and
//! relations, assembled from the builders.

use crate::complex::css_logical_reps;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::hamiltonian::Hamiltonian;
use crate::lattice::builders::{edge_axis, edge_base};
use crate::lattice::{
    build_bacon_shor, build_color_code_2d, build_fractal_code, build_gcc, build_toric, build_toric_on_sublattice,
    build_toric_sphere, build_xu_moore, gauge_hamiltonian, stabilizer_hamiltonian, BaconShor, CellComplex,
    CssSubsystemCode, Fractal, FractalBoundary, LatticeCode, XuMoore,
};
use crate::pauli::PauliOp;
use crate::ungauge::{
    complete_relations, full_gauge_setup, make_setup, ungauge_hamiltonian, ungauge_pauli, ungauge_pauli_within,
    UngaugeSetup,
};

/// One setup together with the Hamiltonian it is applied to.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub code: CssSubsystemCode,
    pub setup: UngaugeSetup,
    pub hamiltonian: Hamiltonian,
}

/// Z stabilizers of a stabilizer code plus Z-logical representatives.
fn z_with_logicals(code: &CssSubsystemCode) -> Vec<BitVec> {
    let (z_reps, _) = css_logical_reps(&code.d_z(), &code.d_x());
    code.stabilizer_z.iter().cloned().chain(z_reps).collect()
}

fn toric_scenario(name: &str, built: LatticeCode, augment: bool) -> Result<Scenario> {
    let code = built.code;
    let z = if augment { z_with_logicals(&code) } else { code.stabilizer_z.clone() };
    // Vertex stars multiply to the identity on a connected closed lattice.
    let rel = vec![BitVec::ones(code.stabilizer_x.len())];
    let setup = make_setup(code.n, &z, Some(&code.stabilizer_x), Some(&rel), None)?;
    Ok(Scenario {
        name: name.to_string(),
        hamiltonian: stabilizer_hamiltonian(&code),
        code,
        setup,
    })
}

/// Any stabilizer code: Z stabilizers and Z logicals ungauged, X stabilizers
/// as generators, relations from the kernel.
pub fn stabilizer_scenario(name: &str, code: CssSubsystemCode) -> Result<Scenario> {
    if !code.is_stabilizer_code() {
        return Err(Error::InvalidParameters(format!("{} is not a stabilizer code", code.name)));
    }
    let z = z_with_logicals(&code);
    let setup = make_setup(code.n, &z, Some(&code.stabilizer_x), None, None)?;
    Ok(Scenario {
        name: name.to_string(),
        hamiltonian: stabilizer_hamiltonian(&code),
        code,
        setup,
    })
}

/// 2D toric code on the octahedron surface: plaquettes ungauged, vertex stars kept.
pub fn toric_sphere() -> Result<Scenario> {
    toric_scenario("toric-sphere", build_toric_sphere(), false)
}

/// 2D toric code on the L×L torus with the Z logicals added to the symmetry group.
pub fn toric_torus_augmented(l: usize) -> Result<Scenario> {
    toric_scenario("toric-torus-augmented", build_toric(2, l, 1)?, true)
}

/// 3D toric code of type 1 (qubits on edges); the plaquette 1-form symmetry is ungauged.
pub fn toric_3d_type1(l: usize) -> Result<Scenario> {
    toric_scenario("toric-3d-type-1", build_toric(3, l, 1)?, true)
}

#[derive(Clone, Debug)]
pub struct BaconShorScenario {
    pub scenario: Scenario,
    pub bacon_shor: BaconShor,
    pub xu_moore: XuMoore,
    /// Relations: all horizontal edges of one row, one per row.
    pub row_relations: Vec<BitVec>,
}

/// Bacon-Shor: the single-row Z operators are ungauged with the horizontal
/// XX gauge terms as generators. Two-column X stabilizers are preserved.
pub fn bacon_shor(l: usize) -> Result<BaconShorScenario> {
    let bs = build_bacon_shor(l)?;
    let lattice = bs.built.lattice.as_ref().expect("Bacon-Shor has a lattice");
    let code = bs.built.code.clone();
    let m = bs.horizontal_edges.len();
    let row_relations: Vec<BitVec> = (0..l as i64)
        .map(|r| BitVec::from_indices(m, (0..m).filter(|&i| edge_base(lattice, bs.horizontal_edges[i])[1] == r)))
        .collect();
    let setup = make_setup(
        code.n,
        &bs.row_z,
        Some(&code.gauge_x),
        Some(&row_relations),
        Some(&bs.two_column_x),
    )?;
    Ok(BaconShorScenario {
        scenario: Scenario {
            name: "bacon-shor".into(),
            hamiltonian: gauge_hamiltonian(&code),
            code,
            setup,
        },
        xu_moore: build_xu_moore(l)?,
        bacon_shor: bs,
        row_relations,
    })
}

/// Final qubit `i` of the full gauging of Xu-Moore sits at vertex `i`; the
/// vertex `(x, y)` is read as the vertical edge based there and rotated onto
/// the horizontal edge based at `(y, x)`.
pub fn xu_moore_full_gauge_relabel(xm: &XuMoore) -> Vec<usize> {
    let lat = &xm.lattice;
    let vertical: Vec<usize> = (0..lat.count(0))
        .map(|v| {
            let p = &lat.cell(0, v).points[0];
            (0..lat.count(1))
                .find(|&e| edge_axis(lat, e) == 1 && edge_base(lat, e) == *p)
                .expect("every vertex starts a vertical edge")
        })
        .collect();
    crate::lattice::transpose_vertical_to_horizontal(lat, &vertical, &xm.qubit_edges)
}

/// Setup gauging every row and column symmetry of the Xu-Moore model.
pub fn xu_moore_full_gauge_setup(xm: &XuMoore) -> Result<UngaugeSetup> {
    let syms: Vec<BitVec> = xm.row_symmetries.iter().chain(&xm.column_symmetries).cloned().collect();
    full_gauge_setup(&xm.hamiltonian, &syms)
}

#[derive(Clone, Debug)]
pub struct GccScenario {
    pub scenario: Scenario,
    pub built: LatticeCode,
    /// The three color-pair relations of each vertex, in vertex order.
    pub vertex_relations: Vec<[BitVec; 3]>,
    pub h_x: Hamiltonian,
    pub h_z: Hamiltonian,
    pub h_y: Hamiltonian,
}

impl GccScenario {
    pub fn lattice(&self) -> &CellComplex {
        self.built.lattice.as_ref().expect("gauge color code has a lattice")
    }
}

/// For vertex `v`, the edges at `v` grouped by the color of their other end.
fn edges_by_other_color(lat: &CellComplex, edge_stars_of_v: &[usize], v: usize) -> Vec<(u8, Vec<usize>)> {
    let colors = lat.colors().expect("colored lattice");
    let mut groups: Vec<(u8, Vec<usize>)> = Vec::new();
    for &e in edge_stars_of_v {
        let w = *lat.cell(1, e).vertices.iter().find(|&&u| u != v).expect("edge has two ends");
        match groups.iter_mut().find(|(c, _)| *c == colors[w]) {
            Some((_, es)) => es.push(e),
            None => groups.push((colors[w], vec![e])),
        }
    }
    groups.sort_by_key(|(c, _)| *c);
    groups
}

/// Gauge color code: the Z stabilizers are ungauged with the X edge gauge
/// terms as generators; relations are the per-vertex color-pair products,
/// completed by global ones when the lattice has them.
pub fn gcc(l: usize) -> Result<GccScenario> {
    let built = build_gcc(l)?;
    let code = built.code.clone();
    let lat = built.lattice.as_ref().expect("gauge color code has a lattice");
    let m = code.gauge_x.len();
    let vertex_edges = lat.stars(0, 1);
    let mut vertex_relations = Vec::with_capacity(lat.count(0));
    for (v, edges) in vertex_edges.iter().enumerate() {
        let groups = edges_by_other_color(lat, edges, v);
        if groups.len() != 3 {
            return Err(Error::InvalidComplex(format!("vertex {v} sees {} other colors", groups.len())));
        }
        let pair = |a: usize, b: usize| BitVec::from_indices(m, groups[a].1.iter().chain(&groups[b].1).copied());
        vertex_relations.push([pair(0, 1), pair(0, 2), pair(1, 2)]);
    }
    let natural: Vec<BitVec> = vertex_relations.iter().flat_map(|r| r.iter().cloned()).collect();
    let relations = complete_relations(code.n, &code.gauge_x, &natural)?;
    let setup = make_setup(
        code.n,
        &code.stabilizer_z,
        Some(&code.gauge_x),
        Some(&relations),
        Some(&code.stabilizer_x),
    )?;
    let h_x = Hamiltonian::from_ops(code.n, "J_X", code.gauge_x.iter().map(|g| PauliOp::x_type(g.clone())));
    let h_z = Hamiltonian::from_ops(code.n, "J_Z", code.gauge_z.iter().map(|g| PauliOp::z_type(g.clone())));
    let h_y = Hamiltonian::from_ops(
        code.n,
        "J_Y",
        code.gauge_x.iter().map(|g| PauliOp::hermitian(g.clone(), g.clone())),
    );
    Ok(GccScenario {
        scenario: Scenario {
            name: "gcc".into(),
            hamiltonian: gauge_hamiltonian(&code),
            code,
            setup,
        },
        built,
        vertex_relations,
        h_x,
        h_z,
        h_y,
    })
}

/// 3D fractal code: Z stabilizers and Z logicals ungauged, X stabilizers as generators.
pub fn fractal(l: usize, boundary: FractalBoundary) -> Result<(Scenario, Fractal)> {
    let f = build_fractal_code(l, boundary)?;
    let code = f.built.code.clone();
    let z = z_with_logicals(&code);
    let setup = make_setup(code.n, &z, Some(&code.stabilizer_x), None, None)?;
    Ok((
        Scenario {
            name: "fractal".into(),
            hamiltonian: stabilizer_hamiltonian(&code),
            code,
            setup,
        },
        f,
    ))
}

#[derive(Clone, Debug)]
pub struct ColorPartialScenario {
    pub scenario: Scenario,
    pub built: LatticeCode,
    /// Parent-lattice edge of each final qubit.
    pub edges: Vec<usize>,
    /// Final qubits (generator indices) of the two sectors, for colors `[a, c]` and `[b, c]`.
    pub sectors: [Vec<usize>; 2],
    /// The color code Hamiltonian mapped sector by sector.
    pub image: Hamiltonian,
}

pub const COLOR_A: u8 = 0;
pub const COLOR_B: u8 = 1;
pub const COLOR_C: u8 = 2;

impl ColorPartialScenario {
    pub fn lattice(&self) -> &CellComplex {
        self.built.lattice.as_ref().expect("color code has a lattice")
    }

    /// The toric code built on the `[x, c]` sublattice with, per qubit, the
    /// final qubit it corresponds to.
    pub fn reference(&self, sector: usize) -> Result<(CssSubsystemCode, Vec<usize>)> {
        let colors = [[COLOR_A, COLOR_C], [COLOR_B, COLOR_C]][sector];
        let (code, edge_map) = build_toric_on_sublattice(self.lattice(), colors)?;
        let corr = edge_map
            .iter()
            .map(|e| {
                self.edges
                    .iter()
                    .position(|f| f == e)
                    .ok_or_else(|| Error::InvalidParameters(format!("sublattice edge {e} is not a final qubit")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((code, corr))
    }
}

/// 2D color code with only the Z stars of color-c vertices ungauged. The
/// generators are the X pairs across ac and bc edges; an X star is mapped
/// within the sector(s) of its vertex color, both sectors for color c.
pub fn color_2d_partial(l: usize) -> Result<ColorPartialScenario> {
    let built = build_color_code_2d(l)?;
    let code = built.code.clone();
    let lat = built.lattice.as_ref().expect("color code has a lattice");
    let colors = lat.colors().expect("colored lattice").to_vec();
    let n = code.n;
    let edge_tris = lat.stars(1, 2);
    let pair_of = |e: usize| -> (u8, u8) {
        let vs = &lat.cell(1, e).vertices;
        let (a, b) = (colors[vs[0]], colors[vs[1]]);
        (a.min(b), a.max(b))
    };
    let ac: Vec<usize> = (0..lat.count(1)).filter(|&e| pair_of(e) == (COLOR_A, COLOR_C)).collect();
    let bc: Vec<usize> = (0..lat.count(1)).filter(|&e| pair_of(e) == (COLOR_B, COLOR_C)).collect();
    let edges: Vec<usize> = ac.iter().chain(&bc).copied().collect();
    let x_gens: Vec<BitVec> = edges
        .iter()
        .map(|&e| BitVec::from_indices(n, edge_tris[e].iter().copied()))
        .collect();
    let vertex_tris = lat.stars(0, 2);
    let c_vertices: Vec<usize> = (0..lat.count(0)).filter(|&v| colors[v] == COLOR_C).collect();
    let z_syms: Vec<BitVec> = c_vertices
        .iter()
        .map(|&v| BitVec::from_indices(n, vertex_tris[v].iter().copied()))
        .collect();
    let m = edges.len();
    let relations: Vec<BitVec> = c_vertices
        .iter()
        .map(|&v| BitVec::from_indices(m, (0..m).filter(|&i| lat.cell(1, edges[i]).vertices.contains(&v))))
        .collect();
    let setup = make_setup(n, &z_syms, Some(&x_gens), Some(&relations), None)?;
    let sectors = [(0..ac.len()).collect::<Vec<_>>(), (ac.len()..m).collect::<Vec<_>>()];
    let hamiltonian = stabilizer_hamiltonian(&code);
    let mut image = Hamiltonian::new(m);
    for (v, star) in vertex_tris.iter().enumerate() {
        let xs = PauliOp::x_on(n, star.iter().copied());
        let which: &[usize] = match colors[v] {
            COLOR_A => &[0],
            COLOR_B => &[1],
            _ => &[0, 1],
        };
        for &s in which {
            image.push(ungauge_pauli_within(&xs, &setup, &sectors[s])?, "J_X");
        }
    }
    for star in &vertex_tris {
        image.push(ungauge_pauli(&PauliOp::z_on(n, star.iter().copied()), &setup)?, "J_Z");
    }
    Ok(ColorPartialScenario {
        scenario: Scenario {
            name: "color-2d-partial".into(),
            code,
            setup,
            hamiltonian,
        },
        built,
        edges,
        sectors,
        image,
    })
}

/// The seven worked setups at their default sizes.
pub fn worked_setups() -> Result<Vec<Scenario>> {
    Ok(vec![
        toric_sphere()?,
        toric_torus_augmented(3)?,
        toric_3d_type1(2)?,
        bacon_shor(3)?.scenario,
        gcc(2)?.scenario,
        fractal(4, FractalBoundary::OpenY)?.0,
        color_2d_partial(3)?.scenario,
    ])
}

/// Γ̃ of the scenario's own Hamiltonian.
pub fn ungauged(s: &Scenario) -> Result<Hamiltonian> {
    ungauge_hamiltonian(&s.hamiltonian, &s.setup)
}
