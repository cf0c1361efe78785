//! Linear algebra over GF(2).

mod bitvec;
mod elim;
mod matrix;

pub use bitvec::BitVec;
pub use elim::{
    complement_basis, independent_subset, is_zero_product, kernel_basis, rank, rank_of, rref, solve, Rref,
    Solver, SpanBasis,
};
pub use matrix::BitMatrix;
