//! Dense complex linear algebra for small matrices.

mod cholesky;
mod eigen;
mod matrix;
mod schur;
mod takagi;
mod words;

pub use cholesky::{cholesky_hermitian, forward_substitute, lower_inverse};
pub use eigen::{complex_schur, eig_dense, min_pairwise_gap, spectral_distance, EigenSystem, MAX_DIM};
pub use matrix::{CMatrix, CVector, Lu};
pub use schur::{schur_triangularize, schur_triangularize_ordered, SchurForm};
pub use takagi::{takagi_factorize, TakagiForm};
pub use words::{phi_distance, phi_invariants, WORD_DEGREES};

#[cfg(test)]
pub(crate) use eigen::permute;
