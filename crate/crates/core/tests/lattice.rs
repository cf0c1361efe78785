use std::collections::BTreeMap;

use ungauge_core::analysis::code_parameters;
use ungauge_core::gf2::{rank_of, SpanBasis};
use ungauge_core::lattice::{
    build_bacon_shor, build_color_code_2d, build_fractal_code, build_gcc, build_toric, build_toric_on_sublattice,
    build_toric_sphere, build_xu_moore, gcc_lattice, hypercubic_torus, triangular_torus, FractalBoundary,
    FractalGeometry,
};
use ungauge_core::{BitVec, CssSubsystemCode, PauliOp};

fn commutes_everywhere(c: &CssSubsystemCode) -> bool {
    c.stabilizer_x.iter().all(|x| c.stabilizer_z.iter().all(|z| !x.dot(z)))
}

#[test]
fn gcc_cell_counts() {
    for l in [2usize, 4] {
        let lat = gcc_lattice(l).unwrap();
        let l3 = l.pow(3);
        let counts: Vec<usize> = (0..=3).map(|d| lat.count(d)).collect();
        assert_eq!(counts, vec![2 * l3, 14 * l3, 24 * l3, 12 * l3], "L={l}");
        assert_eq!(lat.euler_characteristic(), 0);
        assert!(lat.is_valid());
    }
}

#[test]
fn gcc_edge_color_classes() {
    let l = 2;
    let lat = gcc_lattice(l).unwrap();
    let mut classes: BTreeMap<String, usize> = BTreeMap::new();
    for e in 0..lat.count(1) {
        *classes.entry(lat.color_name(1, e).unwrap()).or_default() += 1;
    }
    let l3 = l * l * l;
    let expect: BTreeMap<String, usize> = [
        ("ab", 3 * l3),
        ("cd", 3 * l3),
        ("ac", 2 * l3),
        ("ad", 2 * l3),
        ("bc", 2 * l3),
        ("bd", 2 * l3),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    assert_eq!(classes, expect);
    // Every tetrahedron carries all four colors.
    for t in 0..lat.count(3) {
        assert_eq!(lat.color_name(3, t).unwrap(), "abcd");
    }
}

#[test]
fn generalized_boundary_transposes() {
    let lat = gcc_lattice(2).unwrap();
    for (k, l) in [(3, 1), (3, 0), (2, 0), (1, 0)] {
        let down = lat.generalized_boundary(k, l).unwrap();
        let up = lat.generalized_boundary(l, k).unwrap();
        assert_eq!(down.transpose(), up);
    }
    assert_eq!(lat.generalized_boundary(1, 0).unwrap(), *lat.boundary(1));
    assert!(lat.generalized_boundary(1, 1).is_err());
    assert!(lat.generalized_boundary(4, 0).is_err());
    // A tetrahedron has 6 edges and 4 vertices.
    assert_eq!(lat.star(3, 0, 1).len(), 6);
    assert_eq!(lat.star(3, 0, 0).len(), 4);
}

#[test]
fn links_on_the_triangular_torus() {
    let lat = triangular_torus(6).unwrap();
    for v in 0..lat.count(0) {
        // The hexagon around a vertex.
        let link = lat.link(1, 0, v);
        assert_eq!(link.len(), 6);
        assert!(link.iter().all(|&e| !lat.cell(1, e).vertices.contains(&v)));
        assert_eq!(lat.link(0, 0, v).len(), 6);
    }
    // The link of an edge is the two opposite vertices.
    assert_eq!(lat.link(0, 1, 0).len(), 2);
}

#[test]
fn toric_code_sizes() {
    let t2 = build_toric(2, 3, 1).unwrap().code;
    assert_eq!(t2.n, 18);
    assert_eq!(code_parameters(&t2).k, 2);
    let t3 = build_toric(3, 2, 1).unwrap().code;
    assert_eq!(t3.n, 24);
    assert_eq!(code_parameters(&t3).k, 3);
    let sphere = build_toric_sphere().code;
    assert_eq!(sphere.n, 12);
    assert_eq!(code_parameters(&sphere).k, 0);
    assert!(build_toric(2, 3, 2).is_err());
    assert!(build_toric(2, 1, 1).is_err());
}

#[test]
fn toric_code_of_type_two_in_4d() {
    let c = build_toric(4, 2, 2).unwrap().code;
    assert_eq!(c.n, 6 * 16);
    assert!(commutes_everywhere(&c));
    assert_eq!(code_parameters(&c).k, 6);
}

#[test]
fn bacon_shor_structure() {
    let bs = build_bacon_shor(3).unwrap();
    let c = &bs.built.code;
    let p = code_parameters(c);
    assert_eq!((p.n, p.k, p.gauge_qubits), (9, 1, 4));
    assert!(c.gauge_x.iter().chain(&c.gauge_z).all(|g| g.weight() == 2));
    assert!(commutes_everywhere(c));
    for s in &bs.two_column_x {
        assert_eq!(s.weight(), 6);
        assert!(c.gauge_z.iter().all(|g| !s.dot(g)));
    }
}

#[test]
fn xu_moore_row_and_column_symmetries() {
    let xm = build_xu_moore(3).unwrap();
    let h = &xm.hamiltonian;
    assert_eq!(h.n(), 9);
    assert_eq!(h.len(), 18);
    for s in xm.row_symmetries.iter().chain(&xm.column_symmetries) {
        assert_eq!(s.weight(), 3);
        let op = PauliOp::x_type(s.clone());
        assert!(h.ops().all(|t| t.commutes_with(&op)));
    }
    let z_terms: Vec<_> = h.ops().filter(|t| t.weight() == 4).collect();
    assert_eq!(z_terms.len(), 9);
}

#[test]
fn color_code_stabilizers() {
    let lc = build_color_code_2d(6).unwrap();
    let lat = lc.lattice.as_ref().unwrap();
    assert!(lc.code.stabilizer_x.iter().all(|s| s.weight() == 6));
    assert!(commutes_everywhere(&lc.code));
    for t in 0..lat.count(2) {
        assert_eq!(lat.color_name(2, t).unwrap(), "abc");
    }
    for e in 0..lat.count(1) {
        let cs = lat.cell_colors(1, e).unwrap();
        assert_ne!(cs[0], cs[1]);
    }
    assert_eq!(code_parameters(&lc.code).k, 4);
    assert!(build_color_code_2d(4).is_err());
}

#[test]
fn fractal_code_stabilizers() {
    let f = build_fractal_code(3, FractalBoundary::Periodic).unwrap();
    let c = &f.built.code;
    assert_eq!(c.n, 54);
    assert!(c.stabilizer_x.iter().chain(&c.stabilizer_z).all(|s| s.weight() == 5));
    assert!(commutes_everywhere(c));
    // Z on the A qubits of a z-column commutes with every X stabilizer.
    let g = f.geometry;
    for (x, y) in [(0, 0), (1, 2)] {
        let col = BitVec::from_indices(
            c.n,
            (0..3).map(|z| FractalGeometry::qubit(g.site(x, y, z).unwrap(), 0)),
        );
        assert!(c.stabilizer_x.iter().all(|s| !s.dot(&col)));
        assert!(!SpanBasis::from_vectors(c.n, &c.stabilizer_z).contains(&col));
    }
    assert!(build_fractal_code(2, FractalBoundary::Periodic).is_err());
}

#[test]
fn fractal_open_boundary_truncates() {
    let f = build_fractal_code(4, FractalBoundary::OpenY).unwrap();
    let c = &f.built.code;
    assert!(commutes_everywhere(c));
    assert!(c.stabilizer_x.iter().all(|s| s.weight() <= 5));
    assert!(c.stabilizer_x.iter().any(|s| s.weight() < 5));
    assert!(f.built.lattice.is_none());
}

#[test]
fn gcc_sublattice_toric_code() {
    let lat = gcc_lattice(2).unwrap();
    let sub = lat.sublattice(&[0, 1]).unwrap();
    assert_eq!(sub.count(0), 8);
    assert_eq!(sub.count(1), 24);
    let tri = triangular_torus(6).unwrap();
    let (code, edges) = build_toric_on_sublattice(&tri, [0, 1]).unwrap();
    assert_eq!(code.n, edges.len());
    assert!(commutes_everywhere(&code));
    assert_eq!(code_parameters(&code).k, 2);
}

#[test]
fn gcc_center_has_global_part() {
    for l in [2usize, 4] {
        let lc = build_gcc(l).unwrap();
        let lat = lc.lattice.as_ref().unwrap();
        let c = &lc.code;
        let vertex_stars = lat.count(0);
        assert_eq!(c.metadata["global_stabilizers"], "9", "L={l}");
        let full = rank_of(&c.stabilizer_x);
        let local = rank_of(&c.stabilizer_x[..vertex_stars]);
        assert_eq!(full - local, 9, "L={l}");
        // The whole center commutes with every gauge generator.
        assert!(c.stabilizer_x.iter().all(|s| c.gauge_z.iter().all(|g| !s.dot(g))));
    }
}

#[test]
fn gcc_vertex_stars_are_color_products_of_edge_stars() {
    let lc = build_gcc(2).unwrap();
    let lat = lc.lattice.as_ref().unwrap();
    let c = &lc.code;
    let colors = lat.colors().unwrap();
    let edges_at = lat.stars(0, 1);
    for v in 0..lat.count(0) {
        for other in 0..4u8 {
            if other == colors[v] {
                continue;
            }
            let mut acc = BitVec::zeros(c.n);
            for &e in &edges_at[v] {
                if lat.cell(1, e).vertices.iter().any(|&w| w != v && colors[w] == other) {
                    acc.xor_assign(&c.gauge_x[e]);
                }
            }
            assert_eq!(acc, c.stabilizer_x[v], "vertex {v} color {other}");
        }
    }
}

#[test]
fn hypercubic_torus_euler_characteristic() {
    for d in 1..=4 {
        let t = hypercubic_torus(d, 2).unwrap();
        assert_eq!(t.euler_characteristic(), 0);
        assert!(t.is_valid());
    }
    assert!(hypercubic_torus(0, 3).is_err());
}
