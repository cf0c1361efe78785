//! Colored cell complexes and code builders.

pub(crate) mod builders;
mod cells;
mod code;

pub use builders::{
    build_bacon_shor, build_color_code_2d, build_fractal_code, build_gcc, build_toric, build_toric_on_sublattice,
    build_toric_sphere, build_xu_moore, gauge_hamiltonian, gcc_lattice, hypercubic_torus, octahedron_sphere,
    stabilizer_hamiltonian, toric_from_complex, transpose_vertical_to_horizontal, triangular_torus, BaconShor,
    Fractal, FractalBoundary, FractalGeometry, LatticeCode, XuMoore,
};
pub use cells::{color_letter, Cell, CellComplex, CellKind, Point};
pub use code::CssSubsystemCode;
