pub mod analysis;
pub mod complex;
pub mod error;
pub mod gf2;
pub mod hamiltonian;
pub mod lattice;
pub mod oracle;
pub mod pauli;
pub mod scenarios;
pub mod sptwall;
pub mod ungauge;
pub mod verify;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use hamiltonian::{Hamiltonian, Term};
pub use lattice::CssSubsystemCode;
pub use pauli::{CliffordCircuit, PauliOp};
pub use ungauge::UngaugeSetup;
