//! Numerical backbone for the operator-algebra workspace: dense complex
//! matrices, Hermitian diagonalization, singular values, polar parts, and
//! spectral calculus. Everything is deterministic (fixed pivot orders, no
//! data-dependent reordering), so identical inputs produce identical bytes.

pub mod mat;
pub mod spectra;
pub mod svd;
pub mod tol;

mod eig;
mod qr;
