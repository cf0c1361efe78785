use super::{BitMatrix, BitVec};

/// Reduced row echelon form of a matrix together with the row transform
/// that produced it (`transform · M = reduced`).
#[derive(Clone, Debug)]
pub struct Rref {
    /// Reduced rows; the first `pivots.len()` rows are nonzero.
    pub rows: Vec<BitVec>,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
    /// Row operations applied, one row per row of the input.
    pub transform: Vec<BitVec>,
    ncols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }
}

/// Gauss-Jordan elimination in place with leftmost pivots.
///
/// When `transform` is given, the same row operations are applied to it.
/// Returns pivot columns; the pivot rows end up first.
fn eliminate(rows: &mut [BitVec], ncols: usize, mut transform: Option<&mut [BitVec]>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
            continue;
        };
        rows.swap(r, p);
        if let Some(t) = transform.as_deref_mut() {
            t.swap(r, p);
        }
        let pivot_row = rows[r].clone();
        let pivot_t = transform.as_deref().map(|t| t[r].clone());
        for i in 0..rows.len() {
            if i != r && rows[i].get(col) {
                rows[i].xor_assign(&pivot_row);
                if let (Some(t), Some(pt)) = (transform.as_deref_mut(), pivot_t.as_ref()) {
                    t[i].xor_assign(pt);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rref(m: &BitMatrix) -> Rref {
    let mut rows = m.rows();
    let mut transform: Vec<BitVec> = (0..m.nrows()).map(|i| BitVec::unit(m.nrows(), i)).collect();
    let pivots = eliminate(&mut rows, m.ncols(), Some(&mut transform));
    Rref {
        rows,
        pivots,
        transform,
        ncols: m.ncols(),
    }
}

/// GF(2) rank. Empty matrices have rank 0.
pub fn rank(m: &BitMatrix) -> usize {
    let mut rows = m.rows();
    eliminate(&mut rows, m.ncols(), None).len()
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(vectors: &[BitVec]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut rows = vectors.to_vec();
    eliminate(&mut rows, first.len(), None).len()
}

/// Basis of the null space `{v : M·v = 0}`, one basis vector per row.
///
/// Each basis vector has a single 1 among the free columns.
pub fn kernel_basis(m: &BitMatrix) -> BitMatrix {
    let mut rows = m.rows();
    let pivots = eliminate(&mut rows, m.ncols(), None);
    let mut is_pivot = vec![false; m.ncols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<BitVec> = (0..m.ncols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = BitVec::unit(m.ncols(), f);
            for (i, &p) in pivots.iter().enumerate() {
                if rows[i].get(f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect();
    BitMatrix::from_rows(m.ncols(), &basis)
}

/// Canonical solution of `M·v = b`, or `None` when `b` is outside the image.
///
/// Pivots are chosen leftmost and free variables are set to zero, so the
/// answer depends only on `M` and `b`.
pub fn solve(m: &BitMatrix, b: &BitVec) -> Option<BitVec> {
    Solver::new(m).solve(b)
}

/// True iff `A·B` is the zero matrix.
pub fn is_zero_product(a: &BitMatrix, b: &BitMatrix) -> bool {
    assert_eq!(
        a.ncols(),
        b.nrows(),
        "inner dimensions differ: {}x{} · {}x{}",
        a.nrows(),
        a.ncols(),
        b.nrows(),
        b.ncols()
    );
    a.mul(b).is_zero()
}

/// Precomputed elimination for repeated canonical solves against one matrix.
#[derive(Clone, Debug)]
pub struct Solver {
    nrows: usize,
    ncols: usize,
    rref: Rref,
}

impl Solver {
    pub fn new(m: &BitMatrix) -> Self {
        Solver {
            nrows: m.nrows(),
            ncols: m.ncols(),
            rref: rref(m),
        }
    }

    pub fn rank(&self) -> usize {
        self.rref.rank()
    }

    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.nrows, "right-hand side length does not match row count");
        let r = self.rank();
        // The transformed right-hand side must vanish on the zero rows.
        if self.rref.transform[r..].iter().any(|t| t.dot(b)) {
            return None;
        }
        let mut v = BitVec::zeros(self.ncols);
        for (i, &p) in self.rref.pivots.iter().enumerate() {
            if self.rref.transform[i].dot(b) {
                v.set(p, true);
            }
        }
        Some(v)
    }

    pub fn in_image(&self, b: &BitVec) -> bool {
        assert_eq!(b.len(), self.nrows, "right-hand side length does not match row count");
        !self.rref.transform[self.rank()..].iter().any(|t| t.dot(b))
    }
}

/// Incrementally built span of vectors for membership and independence queries.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    len: usize,
    // Each element is zero at the leading positions of earlier elements.
    elems: Vec<(usize, BitVec)>,
}

impl SpanBasis {
    pub fn new(len: usize) -> Self {
        SpanBasis {
            len,
            elems: Vec::new(),
        }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a BitVec>>(len: usize, vectors: I) -> Self {
        let mut s = SpanBasis::new(len);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn vector_len(&self) -> usize {
        self.len
    }

    /// Residue of `v` after clearing every leading position of the basis.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.len, "vector length does not match span");
        let mut w = v.clone();
        for (lead, e) in &self.elems {
            if w.get(*lead) {
                w.xor_assign(e);
            }
        }
        w
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let w = self.reduce(v);
        match w.first_one() {
            Some(lead) => {
                self.elems.push((lead, w));
                true
            }
            None => false,
        }
    }

    pub fn basis(&self) -> Vec<BitVec> {
        self.elems.iter().map(|(_, e)| e.clone()).collect()
    }
}

/// Vectors from `candidates` that extend `span(base)` one dimension at a time,
/// giving coset representatives of `span(base + candidates) / span(base)`.
pub fn complement_basis(len: usize, base: &[BitVec], candidates: &[BitVec]) -> Vec<BitVec> {
    let mut span = SpanBasis::from_vectors(len, base);
    candidates
        .iter()
        .filter(|c| span.insert(c))
        .cloned()
        .collect()
}

/// Indices of a maximal independent subset of `vectors`, chosen greedily in order.
pub fn independent_subset(len: usize, vectors: &[BitVec]) -> Vec<usize> {
    let mut span = SpanBasis::new(len);
    (0..vectors.len()).filter(|&i| span.insert(&vectors[i])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(bits: &[&[u8]], ncols: usize) -> BitMatrix {
        let rows: Vec<Vec<bool>> = bits.iter().map(|r| r.iter().map(|&b| b == 1).collect()).collect();
        BitMatrix::from_dense(&rows, ncols)
    }

    #[test]
    fn identity_rank_and_kernel() {
        let id = BitMatrix::identity(3);
        assert_eq!(rank(&id), 3);
        assert_eq!(kernel_basis(&id).nrows(), 0);
        assert_eq!(rank(&m(&[&[1, 1], &[1, 1]], 2)), 1);
    }

    #[test]
    fn single_parity_check_kernel() {
        let k = kernel_basis(&m(&[&[1, 1, 1]], 3));
        assert_eq!(k.nrows(), 2);
        for v in k.rows() {
            assert_eq!(v.weight() % 2, 0);
        }
    }

    #[test]
    fn solve_identity_and_outside_image() {
        let b = BitVec::from_indices(4, [0, 3]);
        assert_eq!(solve(&BitMatrix::identity(4), &b), Some(b.clone()));
        let a = m(&[&[1, 1], &[1, 1]], 2);
        assert_eq!(solve(&a, &BitVec::from_indices(2, [0])), None);
        // Free variable is zeroed.
        assert_eq!(solve(&a, &BitVec::ones(2)), Some(BitVec::from_indices(2, [0])));
    }

    #[test]
    fn empty_matrices() {
        assert_eq!(rank(&BitMatrix::zeros(0, 5)), 0);
        assert_eq!(kernel_basis(&BitMatrix::zeros(0, 5)).nrows(), 5);
        assert_eq!(kernel_basis(&BitMatrix::zeros(3, 0)).nrows(), 0);
        assert_eq!(solve(&BitMatrix::zeros(2, 0), &BitVec::zeros(2)), Some(BitVec::zeros(0)));
        assert!(is_zero_product(&BitMatrix::zeros(2, 0), &BitMatrix::zeros(0, 3)));
    }

    #[test]
    fn span_basis_membership() {
        let a = BitVec::from_indices(3, [0, 1]);
        let b = BitVec::from_indices(3, [1, 2]);
        let mut s = SpanBasis::new(3);
        assert!(s.insert(&a));
        assert!(s.insert(&b));
        assert!(!s.insert(&a.xor(&b)));
        assert!(s.contains(&BitVec::from_indices(3, [0, 2])));
        assert!(!s.contains(&BitVec::from_indices(3, [0])));
        assert_eq!(complement_basis(3, std::slice::from_ref(&a), &[a.clone(), b.clone(), a.xor(&b)]), vec![b]);
    }
}
