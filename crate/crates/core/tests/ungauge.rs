use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ungauge_core::lattice::FractalBoundary;
use ungauge_core::pauli::{symplectic_product, PauliGroup};
use ungauge_core::scenarios::{self, ungauged};
use ungauge_core::ungauge::{
    commutation_sample, dim_check, emergent_symmetries, gauge_pauli, make_setup, preserved_symmetries,
    random_symmetric, round_trip, ungauge_pauli, SetupRanks,
};
use ungauge_core::{BitVec, Error, Hamiltonian, PauliOp};

fn tuple(r: SetupRanks) -> (usize, usize, usize, usize, usize) {
    (r.n_ini, r.n_fin, r.rank_d_z, r.rank_d_x, r.rank_d_r)
}

#[test]
fn sphere_ranks() {
    let s = scenarios::toric_sphere().unwrap();
    assert_eq!(tuple(s.setup.ranks()), (12, 6, 7, 5, 1));
    assert!(dim_check(&s.setup));
    assert!(s.setup.is_valid_complex());
    assert!(s.setup.complex().validate());
}

#[test]
fn augmented_torus_ranks() {
    let s = scenarios::toric_torus_augmented(3).unwrap();
    let r = s.setup.ranks();
    assert_eq!(r.rank_d_z, 10);
    assert_eq!(r.n_ini - r.rank_d_z, r.n_fin - r.rank_d_r);
    assert_eq!((r.n_fin, r.rank_d_r), (9, 1));
}

#[test]
fn bacon_shor_ranks() {
    let s = scenarios::bacon_shor(3).unwrap().scenario;
    let r = s.setup.ranks();
    assert_eq!((r.rank_d_z, r.rank_d_x, r.rank_d_r), (3, 6, 3));
    assert!(dim_check(&s.setup));
}

#[test]
fn fractal_open_ranks() {
    let (s, _) = scenarios::fractal(4, FractalBoundary::OpenY).unwrap();
    let r = s.setup.ranks();
    assert_eq!((r.n_fin, r.rank_d_r), (64, 4));
    assert!(dim_check(&s.setup));
}

#[test]
fn gcc_relation_rank() {
    let g = scenarios::gcc(2).unwrap();
    let r = g.scenario.setup.ranks();
    assert_eq!(r.rank_d_r, 38);
    assert_eq!(r.relations, 48 + 9);
    assert!(dim_check(&g.scenario.setup));
}

#[test]
fn toric_edges_map_to_endpoints_and_stars_to_single_x() {
    let s = scenarios::toric_torus_augmented(3).unwrap();
    let code = ungauge_core::lattice::build_toric(2, 3, 1).unwrap();
    let lat = code.lattice.unwrap();
    let n = s.code.n;
    for e in 0..n {
        let img = ungauge_pauli(&PauliOp::z_on(n, [e]), &s.setup).unwrap();
        assert_eq!(img, PauliOp::z_on(9, lat.cell(1, e).vertices.iter().copied()));
    }
    for (v, star) in s.code.stabilizer_x.iter().enumerate() {
        let img = ungauge_pauli(&PauliOp::x_type(star.clone()), &s.setup).unwrap();
        assert_eq!(img, PauliOp::x_on(9, [v]));
    }
    // Plaquettes and logicals disappear.
    for z in s.setup.z_symmetries() {
        assert!(ungauge_pauli(&PauliOp::z_type(z), &s.setup).unwrap().is_identity());
    }
}

#[test]
fn emergent_and_preserved_symmetries() {
    let s = scenarios::toric_sphere().unwrap();
    let em = emergent_symmetries(&s.setup);
    assert_eq!(em, vec![PauliOp::x_type(BitVec::ones(6))]);
    let image = ungauged(&s).unwrap();
    for t in image.ops() {
        assert!(em.iter().all(|e| e.commutes_with(t)));
    }
    let bs = scenarios::bacon_shor(3).unwrap();
    let pres = preserved_symmetries(&bs.scenario.setup).unwrap();
    assert_eq!(pres.len(), 3);
    let image = ungauged(&bs.scenario).unwrap();
    for p in &pres {
        assert!(p.is_x_type());
        assert!(image.ops().all(|t| t.commutes_with(p)));
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    let s = scenarios::toric_sphere().unwrap();
    let single_x = PauliOp::x_on(12, [0]);
    assert!(matches!(ungauge_pauli(&single_x, &s.setup), Err(Error::NotSymmetric(_))));
    let non_hermitian = PauliOp::from_parts(BitVec::zeros(12), BitVec::unit(12, 0), 1);
    assert!(matches!(ungauge_pauli(&non_hermitian, &s.setup), Err(Error::InvalidPauli(_))));
    assert!(ungauge_pauli(&PauliOp::identity(3), &s.setup).is_err());
    // A Z symmetry anticommuting with a generator is refused.
    let z = vec![BitVec::from_indices(2, [0])];
    let x = vec![BitVec::from_indices(2, [0, 1])];
    assert!(matches!(make_setup(2, &z, Some(&x), None, None), Err(Error::NonCommuting(_))));
    // Too few generators.
    assert!(matches!(
        make_setup(3, &[], Some(&[BitVec::unit(3, 0)]), None, None),
        Err(Error::Incomplete { .. })
    ));
}

#[test]
fn gcc_round_trip_on_random_symmetric_operators() {
    let g = scenarios::gcc(2).unwrap();
    let s = &g.scenario.setup;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = Hamiltonian::from_ops(s.n_ini(), "r", (0..200).map(|_| random_symmetric(s, &mut rng)));
    let rt = round_trip(&h, s).unwrap();
    assert!(rt.is_equivalent(), "{rt:?}");
    assert_eq!(commutation_sample(s, 200, &mut rng).unwrap(), 200);
}

#[test]
fn bacon_shor_round_trip_is_exact() {
    let s = scenarios::bacon_shor(3).unwrap().scenario;
    assert!(round_trip(&s.hamiltonian, &s.setup).unwrap().is_exact());
}

fn scenario_setups() -> Vec<ungauge_core::UngaugeSetup> {
    vec![
        scenarios::toric_sphere().unwrap().setup,
        scenarios::toric_torus_augmented(3).unwrap().setup,
        scenarios::bacon_shor(3).unwrap().scenario.setup,
        scenarios::fractal(3, FractalBoundary::Periodic).unwrap().0.setup,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutation_is_preserved(which in 0usize..4, seed in any::<u64>()) {
        let s = &scenario_setups()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_symmetric(s, &mut rng);
        let q = random_symmetric(s, &mut rng);
        let (gp, gq) = (ungauge_pauli(&p, s).unwrap(), ungauge_pauli(&q, s).unwrap());
        prop_assert_eq!(symplectic_product(&p, &q), symplectic_product(&gp, &gq));
        for e in emergent_symmetries(s) {
            prop_assert!(e.commutes_with(&gp));
        }
    }

    #[test]
    fn gauging_undoes_ungauging(which in 0usize..4, seed in any::<u64>()) {
        let s = &scenario_setups()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_symmetric(s, &mut rng);
        let back = gauge_pauli(&ungauge_pauli(&p, s).unwrap(), s).unwrap();
        let zs: Vec<PauliOp> = s.z_symmetries().into_iter().map(PauliOp::z_type).collect();
        let group = PauliGroup::new(s.n_ini(), &zs);
        prop_assert!(group.contains(&ungauge_core::pauli::multiply(&p, &back), true));
        prop_assert_eq!(back.x(), p.x());
    }

    #[test]
    fn z_symmetries_are_annihilated(which in 0usize..4, mask in any::<u64>()) {
        let s = &scenario_setups()[which];
        let mut z = BitVec::zeros(s.n_ini());
        for (i, col) in s.z_symmetries().iter().enumerate() {
            if (mask >> (i % 64)) & 1 == 1 {
                z.xor_assign(col);
            }
        }
        prop_assert!(ungauge_pauli(&PauliOp::z_type(z), s).unwrap().is_identity());
    }
}
