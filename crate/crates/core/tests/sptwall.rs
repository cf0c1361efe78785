use ungauge_core::analysis::{commuting_check, components};
use ungauge_core::lattice::{
    build_bacon_shor, build_fractal_code, build_toric, stabilizer_hamiltonian, FractalBoundary,
};
use ungauge_core::pauli::{conjugate_by_circuit, multiply};
use ungauge_core::sptwall::{
    domain_wall, dual_code, fractal_slab, report, spt_pipeline, tensor_with_dual, toric_slab, transversal_cz,
    transversal_cz_is_logical, Region, RegionShape,
};
use ungauge_core::{BitVec, Error, PauliOp};

#[test]
fn dual_is_an_involution() {
    let c = build_fractal_code(3, FractalBoundary::Periodic).unwrap().built.code;
    let dd = dual_code(&dual_code(&c));
    assert_eq!(dd.stabilizer_x, c.stabilizer_x);
    assert_eq!(dd.stabilizer_z, c.stabilizer_z);
    assert_eq!(dual_code(&c).stabilizer_x, c.stabilizer_z);
}

#[test]
fn cz_sends_x_stabilizers_to_x_times_dual_z() {
    let c = build_toric(2, 3, 1).unwrap().code;
    let t = tensor_with_dual(&c).unwrap();
    let n = c.n;
    let cz = transversal_cz(n, 0..n);
    let zero = BitVec::zeros(n);
    for sx in &c.stabilizer_x {
        let img = conjugate_by_circuit(&PauliOp::x_type(sx.concat(&zero)), &cz);
        let want = multiply(&PauliOp::x_type(sx.concat(&zero)), &PauliOp::z_type(zero.concat(sx)));
        assert_eq!(img, want);
        // The Z half is a Z stabilizer of the dual.
        assert!(t.stabilizer_z.contains(&zero.concat(sx)));
    }
    assert!(transversal_cz_is_logical(&t).unwrap());
    // Z stabilizers are untouched.
    for sz in &t.stabilizer_z {
        assert_eq!(conjugate_by_circuit(&PauliOp::z_type(sz.clone()), &cz), PauliOp::z_type(sz.clone()));
    }
}

#[test]
fn subsystem_codes_are_refused() {
    let bs = build_bacon_shor(3).unwrap().built.code;
    assert!(matches!(tensor_with_dual(&bs), Err(Error::InvalidParameters(_))));
}

#[test]
fn whole_and_empty_regions_have_no_wall() {
    let c = build_toric(2, 3, 1).unwrap().code;
    let t = tensor_with_dual(&c).unwrap();
    let all = domain_wall(&t, &Region::new(c.n, (0..c.n).collect(), RegionShape::Custom).unwrap()).unwrap();
    assert!(all.h_wall.is_empty() && all.h_rc.is_empty());
    assert!(all.same_group);
    assert!(all.h_r.same_terms(&stabilizer_hamiltonian(&t)));
    let none = domain_wall(&t, &Region::new(c.n, vec![], RegionShape::Custom).unwrap()).unwrap();
    assert!(none.h_wall.is_empty() && none.h_r.is_empty());
    assert_eq!(none.replaced, 0);
    assert!(none.h_rc.same_terms(&stabilizer_hamiltonian(&t)));
}

#[test]
fn wall_terms_commute() {
    let built = build_toric(2, 4, 1).unwrap();
    let t = tensor_with_dual(&built.code).unwrap();
    let d = domain_wall(&t, &toric_slab(&built, 1, 2).unwrap()).unwrap();
    assert!(d.same_group);
    assert!(commuting_check(&d.total()));
    assert!(!d.h_wall.is_empty());
}

#[test]
fn toric_wall_is_two_cluster_rings() {
    let built = build_toric(2, 4, 1).unwrap();
    let res = spt_pipeline(&built.code, &toric_slab(&built, 1, 2).unwrap()).unwrap();
    assert!(res.warnings.is_empty());
    assert!(res.bulk_trivial);
    assert_eq!(components(&res.h_spt).sizes(), vec![8, 8]);
    for t in res.h_spt.ops() {
        assert_eq!((t.x().weight(), t.z().weight()), (1, 2));
    }
    let rep = report(&res);
    assert_eq!(rep.disentangles, Some(true));
    assert!(rep.spt_commuting && rep.symmetries_commute);
    // The CZ circuit is a nearest-neighbour cycle on each ring.
    assert_eq!(rep.disentangler.unwrap().len(), 16);
}

#[test]
fn fractal_wall_is_localized_and_decorated_by_triangles() {
    let f = build_fractal_code(6, FractalBoundary::OpenY).unwrap();
    let g = f.geometry;
    let (lo, hi) = (2, 3);
    let region = fractal_slab(&g, lo, hi).unwrap();
    let res = spt_pipeline(&f.built.code, &region).unwrap();
    let n = f.built.code.n;
    let z_of = |q: usize| g.coords((q % n) / 2).2;
    for t in res.wall.h_wall.ops() {
        for q in t.support() {
            let z = z_of(q);
            assert!((lo - 1..=hi + 1).contains(&z), "wall term reaches layer {z}");
        }
    }
    assert!(res.bulk_trivial);
    assert!(res.wall.same_group);
    for t in res.h_spt.ops() {
        assert_eq!(t.x().weight(), 1);
        assert!(t.z().weight() <= 3 && t.z().weight() >= 1);
    }
    assert!(res.h_spt.ops().filter(|t| t.z().weight() == 3).count() > 0);
    let rep = report(&res);
    assert!(rep.spt_commuting && rep.symmetries_commute);
    assert_eq!(rep.disentangles, Some(true));
    assert!(!res.symmetries.is_empty());
}

#[test]
fn custom_regions_warn() {
    let built = build_toric(2, 4, 1).unwrap();
    let slab = toric_slab(&built, 1, 2).unwrap();
    let custom = Region::from_qubits(slab.n, &slab.qubits()).unwrap();
    let res = spt_pipeline(&built.code, &custom).unwrap();
    assert_eq!(res.warnings.len(), 1);
    assert_eq!(res.h_spt.len(), 16);
}

#[test]
fn bad_slabs_rejected() {
    let built = build_toric(2, 4, 1).unwrap();
    assert!(toric_slab(&built, 2, 1).is_err());
    assert!(toric_slab(&built, 0, 4).is_err());
    let g = build_fractal_code(3, FractalBoundary::Periodic).unwrap().geometry;
    assert!(fractal_slab(&g, 0, 3).is_err());
    assert!(Region::new(4, vec![4], RegionShape::Custom).is_err());
}
