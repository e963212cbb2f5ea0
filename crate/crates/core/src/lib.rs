//! Exact computations with two-row representations of the symmetric groups:
//! the tensor model on square-free forms, explicit Gelfand–Tsetlin bases,
//! and the Markov spectral measures of representations of `S_∞` induced from
//! two-block Young subgroups.

pub mod error;
pub mod gz;
pub mod linalg;
pub mod markov;
pub mod sampler;
pub mod subset;
pub mod tensor;
pub mod verify;
pub mod wire;
pub mod ygraph;

pub use error::{Error, Result};
pub use gz::{full_gz_basis, gz_harmonic, gz_in_h, GzVector};
pub use markov::{BitPrefix, SpectralTable, TransitionKernel};
pub use subset::Subset;
pub use tensor::{Permutation, SquareFreeForm};
pub use ygraph::{TwoRowDiagram, TwoRowTableau};
