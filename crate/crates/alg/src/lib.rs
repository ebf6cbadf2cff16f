//! Operator-algebraic layer on top of the matrix core: unital *-subalgebras
//! with their projection lattice, states with the GNS construction, and
//! modular data for a cyclic and separating vector.
//!
//! Everything is finite-dimensional and deterministic. Subalgebras are spans
//! with Hilbert-Schmidt orthonormal bases, states are density matrices, and
//! antilinear operators are carried explicitly as matrix-plus-conjugation.

pub mod algebra;
pub mod modular;
pub mod states;
