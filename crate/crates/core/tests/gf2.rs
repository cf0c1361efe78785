use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ungauge_core::gf2::{is_zero_product, kernel_basis, rank, solve, BitMatrix, BitVec, Solver};
use ungauge_core::lattice::octahedron_sphere;

/// Textbook elimination on a dense 0/1 table.
fn naive_rank(rows: &[Vec<bool>]) -> usize {
    let mut m: Vec<Vec<bool>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c]) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] {
                let pivot = m[r].clone();
                for (a, b) in m[i].iter_mut().zip(pivot) {
                    *a ^= b;
                }
            }
        }
        r += 1;
    }
    r
}

fn random_dense(rng: &mut impl Rng, r: usize, c: usize) -> Vec<Vec<bool>> {
    (0..r).map(|_| (0..c).map(|_| rng.gen_bool(0.5)).collect()).collect()
}

fn dense_strategy(max_r: usize, max_c: usize) -> impl Strategy<Value = (Vec<Vec<bool>>, usize)> {
    (0..=max_r, 0..=max_c).prop_flat_map(|(r, c)| {
        (prop::collection::vec(prop::collection::vec(any::<bool>(), c), r), Just(c))
    })
}

#[test]
fn identity_rank_and_kernel() {
    let i = BitMatrix::identity(3);
    assert_eq!(rank(&i), 3);
    assert_eq!(kernel_basis(&i).nrows(), 0);
    assert!(!is_zero_product(&i, &i));
}

#[test]
fn equal_rows_rank_one() {
    let m = BitMatrix::from_dense(&[vec![true, true], vec![true, true]], 2);
    assert_eq!(rank(&m), 1);
}

#[test]
fn random_20x30_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let d = random_dense(&mut rng, 20, 30);
        assert_eq!(rank(&BitMatrix::from_dense(&d, 30)), naive_rank(&d));
    }
}

#[test]
fn octahedron_edge_kernel_has_dimension_seven() {
    let oct = octahedron_sphere();
    let d1 = oct.boundary(1);
    assert_eq!((d1.nrows(), d1.ncols()), (6, 12));
    assert_eq!(naive_rank(&d1.to_dense()), 5);
    let k = kernel_basis(d1);
    assert_eq!(k.nrows(), 7);
    for v in k.rows() {
        assert!(d1.mul_vec(&v).is_zero());
    }
}

#[test]
fn single_parity_check_kernel() {
    let m = BitMatrix::from_dense(&[vec![true, true, true]], 3);
    assert_eq!(kernel_basis(&m).nrows(), 2);
}

#[test]
fn solve_identity_and_outside_image() {
    let b = BitVec::from_indices(4, [1, 3]);
    assert_eq!(solve(&BitMatrix::identity(4), &b), Some(b.clone()));
    let m = BitMatrix::from_dense(&[vec![true, true], vec![true, true]], 2);
    assert_eq!(solve(&m, &BitVec::from_indices(2, [0])), None);
}

#[test]
fn random_15x25_solutions_are_canonical() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let m = BitMatrix::from_dense(&random_dense(&mut rng, 15, 25), 25);
        let v = BitVec::from_bools(&(0..25).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
        let b = m.mul_vec(&v);
        let w = solve(&m, &b).expect("b is in the image");
        assert_eq!(m.mul_vec(&w), b);
        assert_eq!(solve(&m, &b), Some(w.clone()));
        assert_eq!(Solver::new(&m).solve(&b), Some(w));
    }
}

#[test]
fn boundary_of_boundary_on_octahedron() {
    let oct = octahedron_sphere();
    assert!(is_zero_product(oct.boundary(1), oct.boundary(2)));
}

#[test]
fn empty_matrices_are_legal() {
    let m = BitMatrix::zeros(0, 5);
    assert_eq!(rank(&m), 0);
    assert_eq!(kernel_basis(&m).nrows(), 5);
    let m = BitMatrix::zeros(4, 0);
    assert_eq!(rank(&m), 0);
    assert_eq!(kernel_basis(&m).nrows(), 0);
    assert_eq!(solve(&m, &BitVec::zeros(4)), Some(BitVec::zeros(0)));
}

#[test]
fn matrix_json_round_trip_and_duplicates() {
    let m = BitMatrix::from_entries(2, 3, [(0, 1), (1, 2)]).unwrap();
    let s = serde_json::to_string(&m).unwrap();
    assert_eq!(serde_json::from_str::<BitMatrix>(&s).unwrap(), m);
    assert!(BitMatrix::from_entries(2, 3, [(0, 1), (0, 1)]).is_err());
    assert!(BitMatrix::from_entries(2, 3, [(2, 0)]).is_err());
}

proptest! {
    #[test]
    fn rank_matches_oracle((d, c) in dense_strategy(24, 64)) {
        let m = BitMatrix::from_dense(&d, c);
        prop_assert_eq!(rank(&m), naive_rank(&d));
    }

    #[test]
    fn rank_nullity((d, c) in dense_strategy(20, 40)) {
        let m = BitMatrix::from_dense(&d, c);
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.nrows(), c);
        prop_assert_eq!(rank(&k), k.nrows());
        for v in k.rows() {
            prop_assert!(m.mul_vec(&v).is_zero());
        }
    }

    #[test]
    fn transpose_rank((d, c) in dense_strategy(20, 40)) {
        let m = BitMatrix::from_dense(&d, c);
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn solve_image((d, c) in dense_strategy(16, 32), seed in any::<u64>()) {
        let m = BitMatrix::from_dense(&d, c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = BitVec::from_bools(&(0..c).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
        let b = m.mul_vec(&v);
        let w = solve(&m, &b);
        prop_assert!(w.is_some());
        prop_assert_eq!(m.mul_vec(&w.unwrap()), b);
    }

    #[test]
    fn zero_product_matches_dense((a, k) in dense_strategy(8, 8), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_dense(&mut rng, k, 6);
        let am = BitMatrix::from_dense(&a, k);
        let bm = BitMatrix::from_dense(&b, 6);
        let zero = a.iter().all(|row| {
            (0..6).all(|j| (0..k).filter(|&i| row[i] && b[i][j]).count() % 2 == 0)
        });
        prop_assert_eq!(is_zero_product(&am, &bm), zero);
    }
}
