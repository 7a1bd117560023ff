//! Approximating a valuation through truncations to initial sets of
//! generators, and the plane branch case.

pub mod branch;
pub mod initial;
pub mod truncation;

pub use branch::{BranchData, BranchSystem, ComposedValue, Precision};
pub use initial::{build_chain, initial_closure, InitialSet};
pub use truncation::{
    eliminate, order_growth_report, semivaluation_value, stabilization, truncate, validate_base,
    Elimination, OrderGrowth, OrderRow, Stabilization, TruncationIdeal,
};
