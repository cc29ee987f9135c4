//! Quantum Lie operations, Gröbner–Shirshov completion and PBW bases of
//! character Hopf algebras.

pub mod algebra;
pub mod linalg;
pub mod pbw;
pub mod presentation;
pub mod rewrite;
pub mod scalar;
pub mod words;
