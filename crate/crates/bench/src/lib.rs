//! Parameter scans and method comparisons on top of the `fedvr` solver.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod report;
pub mod scan;
