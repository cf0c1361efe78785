use ungauge_core::complex::{css_logical_reps, ChainComplex, Orientation};
use ungauge_core::gf2::{rank, SpanBasis};
use ungauge_core::lattice::{build_bacon_shor, build_toric, build_toric_sphere};
use ungauge_core::BitVec;

#[test]
fn toric_complex_validates() {
    let c = build_toric(2, 3, 1).unwrap().code.css_complex();
    assert!(c.validate());
    let mut broken = c.clone();
    let (r, col) = broken.maps[1].entries().next().unwrap();
    broken.maps[1].flip(r, col);
    assert!(!broken.validate());
}

#[test]
fn empty_complex_validates() {
    assert!(ChainComplex::new(vec![], vec![], Orientation::Ascending).unwrap().validate());
}

#[test]
fn homology_of_sphere_and_torus() {
    let sphere = build_toric_sphere().code.css_complex();
    assert_eq!(sphere.homology_dim(1).unwrap(), 0);
    let torus = build_toric(2, 3, 1).unwrap().code.css_complex();
    assert_eq!(torus.homology_dim(1).unwrap(), 2);
    assert!(torus.homology_dim(3).is_err());
}

#[test]
fn logical_representatives() {
    let torus = build_toric(2, 3, 1).unwrap().code.css_complex();
    let (z, x) = torus.css_logical_reps().unwrap();
    assert_eq!((z.len(), x.len()), (2, 2));
    let (d_z, d_x) = (&torus.maps[0], &torus.maps[1]);
    let im = SpanBasis::from_vectors(d_z.nrows(), &d_z.columns());
    for r in &z {
        assert!(d_x.mul_vec(r).is_zero());
        assert!(!im.contains(r));
    }
    // Each Z logical pairs with exactly one X logical.
    let pairing: Vec<Vec<bool>> = z.iter().map(|a| x.iter().map(|b| a.dot(b)).collect()).collect();
    assert_eq!(rank(&ungauge_core::BitMatrix::from_dense(&pairing, 2)), 2);
    let sphere = build_toric_sphere().code.css_complex();
    assert_eq!(sphere.css_logical_reps().unwrap().0.len(), 0);
}

#[test]
fn augmenting_kills_homology() {
    let torus = build_toric(2, 3, 1).unwrap().code.css_complex();
    let (z, _) = torus.css_logical_reps().unwrap();
    let aug = torus.augment_with_logicals(&z).unwrap();
    assert!(aug.validate());
    assert_eq!(aug.homology_dim(1).unwrap(), 0);
    assert_eq!(aug.spaces[0].dim(), torus.spaces[0].dim() + 2);
}

#[test]
fn augmenting_with_a_boundary_changes_nothing() {
    let torus = build_toric(2, 3, 1).unwrap().code.css_complex();
    let col = torus.maps[0].column(0);
    let aug = torus.augment_with_logicals(&[col]).unwrap();
    assert_eq!(rank(&aug.maps[0]), rank(&torus.maps[0]));
    assert_eq!(aug.homology_dim(1).unwrap(), 2);
}

#[test]
fn bad_representative_rejected() {
    let torus = build_toric(2, 3, 1).unwrap().code.css_complex();
    assert!(torus.augment_with_logicals(&[BitVec::unit(18, 0)]).is_err());
    assert!(torus.augment_with_logicals(&[BitVec::zeros(5)]).is_err());
}

#[test]
fn bacon_shor_row_operators_are_bare_z_logicals() {
    let bs = build_bacon_shor(3).unwrap();
    let code = &bs.built.code;
    let bare = code.bare_z_logicals();
    assert_eq!(bare.len(), 1);
    // The stabilizer complex alone also counts the 4 gauge qubits.
    assert_eq!(css_logical_reps(&code.d_z(), &code.d_x()).0.len(), 5);
    let stab = SpanBasis::from_vectors(code.n, &code.stabilizer_z);
    for row in &bs.row_z {
        assert_eq!(row.weight(), 3);
        assert!(code.gauge_x.iter().all(|g| !row.dot(g)));
        assert!(!stab.contains(row));
        assert!(stab.contains(&row.xor(&bs.row_z[0])));
    }
}

#[test]
fn complex_json_round_trip() {
    let c = build_toric(2, 2, 1).unwrap().code.css_complex();
    let s = serde_json::to_string(&c).unwrap();
    assert_eq!(serde_json::from_str::<ChainComplex>(&s).unwrap(), c);
}
