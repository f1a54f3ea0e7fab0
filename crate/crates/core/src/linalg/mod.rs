//! Exact linear algebra over `F_q` and over `Q(ζ_p)`.

mod form;
mod matrix;
pub mod sparse;
mod subspace;

pub use form::{diagonalize_form, normalize_form, FormDiagonalization};
pub use matrix::{MatrixFq, Rref};
pub use sparse::{KernelTracker, SparseVec, SubspaceCyclo};
pub use subspace::SubspaceFq;
