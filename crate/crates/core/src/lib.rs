//! Exact computations around Sylow 2-subgroups, odd-degree characters and the
//! Galois automorphism σ for finite linear and unitary groups.

pub mod arith;
pub mod ff;
pub mod cyclotomic;
pub mod matrix;
pub mod groups;
pub mod group;
pub mod sylow;
pub mod chartable;
pub mod galois;
pub mod witness;
pub mod gggr;
pub mod verifier;
