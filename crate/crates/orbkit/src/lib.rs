//! Exact Frobenius-algebra, bimodule, fusion-category and state-sum computations
//! over the real quadratic fields ℚ(√d).

// Tensor-index loops read closer to the formulas than iterator chains.
#![allow(clippy::needless_range_loop)]

pub mod bimodules;
pub mod ew;
pub mod frobenius;
pub mod fusioncat;
pub mod linalg;
mod roots;
pub mod rtdefects;
pub mod scalars;
pub mod schema;
pub mod statesum;
