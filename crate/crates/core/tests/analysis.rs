use std::collections::BTreeSet;

use proptest::prelude::*;

use ungauge_core::analysis::{
    code_parameters, commuting_check, components, first_anticommuting_pair, is_self_dual, match_against_builder,
};
use ungauge_core::lattice::{build_bacon_shor, build_gcc, build_toric};
use ungauge_core::pauli::Gate;
use ungauge_core::scenarios::{color_2d_partial, gcc};
use ungauge_core::sptwall::find_cz_disentangler;
use ungauge_core::ungauge::ungauge_hamiltonian;
use ungauge_core::{Hamiltonian, PauliOp};

#[test]
fn bacon_shor_parameters() {
    let p = code_parameters(&build_bacon_shor(3).unwrap().built.code);
    assert_eq!((p.n, p.g_rank, p.s_rank, p.k, p.gauge_qubits), (9, 12, 4, 1, 4));
}

#[test]
fn self_duality() {
    assert!(is_self_dual(&build_gcc(2).unwrap().code));
    assert!(!is_self_dual(&build_bacon_shor(3).unwrap().built.code));
    assert!(!is_self_dual(&build_toric(2, 3, 1).unwrap().code));
}

#[test]
fn commuting_examples() {
    let h = Hamiltonian::from_ops(2, "J", ["XI", "ZI", "IZ"].map(|s| s.parse::<PauliOp>().unwrap()));
    assert!(!commuting_check(&h));
    assert_eq!(first_anticommuting_pair(&h), Some((0, 1)));
    let h = Hamiltonian::from_ops(2, "J", ["XX", "ZZ"].map(|s| s.parse::<PauliOp>().unwrap()));
    assert!(commuting_check(&h));
}

#[test]
fn identity_terms_have_no_component() {
    let h = Hamiltonian::from_ops(4, "J", ["IIII", "XXII", "IIIZ"].map(|s| s.parse::<PauliOp>().unwrap()));
    let c = components(&h);
    assert_eq!(c.count, 2);
    assert_eq!(c.sizes(), vec![2, 1]);
    assert!(c.to_dot(&h).starts_with("graph"));
}

#[test]
fn rbh_copies_commute_and_disentangle() {
    let g = gcc(2).unwrap();
    let lat = g.lattice();
    let image = ungauge_hamiltonian(&g.h_y, &g.scenario.setup).unwrap();
    let comps = components(&image);
    assert_eq!(comps.count, 3);
    let mut pairs = BTreeSet::new();
    for i in 0..3 {
        let copy = comps.hamiltonian(&image, i);
        assert!(commuting_check(&copy));
        let names: BTreeSet<String> = comps.components[i]
            .qubits
            .iter()
            .map(|&e| lat.color_name(1, e).unwrap())
            .collect();
        pairs.insert(names.into_iter().collect::<Vec<_>>().join("+"));
        let circuit = find_cz_disentangler(&copy).unwrap().expect("symmetric decoration");
        for t in copy.ops() {
            let c = ungauge_core::pauli::conjugate_by_circuit(t, &circuit);
            assert_eq!(c.weight(), 1);
            assert!(c.is_x_type() && c.is_hermitian());
        }
        // Every CZ joins the two opposite edges of some tetrahedron.
        for (a, b) in circuit.gates().iter().filter_map(|g| match *g {
            Gate::CZ(a, b) => Some((a, b)),
            Gate::H(_) => None,
        }) {
            let (va, vb) = (&lat.cell(1, a).vertices, &lat.cell(1, b).vertices);
            assert!(va.iter().all(|v| !vb.contains(v)));
            let ta: BTreeSet<usize> = lat.star(1, a, 3).into_iter().collect();
            assert!(lat.star(1, b, 3).iter().any(|t| ta.contains(t)));
        }
    }
    let want: BTreeSet<String> = ["ab+cd", "ac+bd", "ad+bc"].map(String::from).into();
    assert_eq!(pairs, want);
}

#[test]
fn permuted_correspondence_is_rejected() {
    let c = color_2d_partial(3).unwrap();
    let comps = components(&c.image);
    let (code, mut corr) = c.reference(0).unwrap();
    let want: BTreeSet<usize> = c.sectors[0].iter().copied().collect();
    let i = comps
        .components
        .iter()
        .position(|k| k.qubits.iter().copied().collect::<BTreeSet<_>>() == want)
        .unwrap();
    let h = comps.hamiltonian(&c.image, i);
    assert!(match_against_builder(&h, &code, &corr).unwrap());
    // Swap qubit 0 with one that some stabilizer tells apart from it.
    let stabs: Vec<_> = code.stabilizer_x.iter().chain(&code.stabilizer_z).collect();
    let j = (1..corr.len()).find(|&j| stabs.iter().any(|s| s.get(0) != s.get(j))).unwrap();
    corr.swap(0, j);
    assert!(!match_against_builder(&h, &code, &corr).unwrap());
    corr.pop();
    assert!(match_against_builder(&h, &code, &corr).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn components_ignore_term_order_and_relabeling(seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let h = color_2d_partial(3).unwrap().image;
        let n = h.n();
        let base = components(&h);
        prop_assert_eq!(base.count, 2);
        let mut ops = h.ops_vec();
        ops.shuffle(&mut rng);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let moved = Hamiltonian::from_ops(n, "J", ops.iter().map(|p| p.remap(&perm, n)));
        let other = components(&moved);
        prop_assert_eq!(base.count, other.count);
        prop_assert_eq!(base.sizes(), other.sizes());
    }

    #[test]
    fn parameters_are_consistent(l in 2usize..5) {
        for c in [build_bacon_shor(l).unwrap().built.code, build_toric(2, l, 1).unwrap().code] {
            let p = code_parameters(&c);
            prop_assert!(p.k <= p.n);
            prop_assert!(p.g_rank >= p.s_rank && (p.g_rank - p.s_rank).is_multiple_of(2));
        }
    }
}
