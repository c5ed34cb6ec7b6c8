pub mod comalg;
pub mod config;
pub mod error;
pub mod fock;
pub mod lieclass;
pub mod linalg;
pub mod radix;
pub mod tensor;
mod text;
pub mod wigner;

pub use comalg::{BracketForm, ClosedForm, CommutatorTable, TensorPolynomial};
pub use config::RunConfig;
pub use error::{Error, Result};
pub use fock::{FockSpace, OrbitalOrdering, SparseOperator};
pub use radix::{RadicalNumber, Rational};
pub use tensor::{DoubleTensorLabel, TensorConvention, TensorSet};
pub use wigner::HalfInt;
