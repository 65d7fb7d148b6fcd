//! Exact-arithmetic workbench for finite hypergroups: convolution tables over
//! rationals, character solvers, duals, twisted extensions of hypergroup
//! pairs, and induction through semidirect products.

pub mod algebra;
pub mod characters;
pub mod constructions;
pub mod emit;
pub mod error;
pub mod examples;
pub mod groups;
pub mod json;
pub mod linalg;
pub mod mackey;
pub mod pairs;
pub mod scalar;
