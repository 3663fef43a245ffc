//! Exact computations around Λ(V⊗W) under Sp(V) × Sp(g): the sp(g)
//! operator algebra, invariant theory of S(S²W), Weyl
//! multiplicities of pluri-Hodge tables, Chern-number extraction, K3 tables
//! and marked uni-trivalent graph spaces.

pub mod acceptance;
pub mod error;
pub mod exalg;
pub mod genus;
pub mod graphs;
pub mod k3;
pub mod linalg;
pub mod pn;
pub mod poly;
pub mod reps;
pub mod spops;
pub mod rational;

pub use error::{Error, Result};
