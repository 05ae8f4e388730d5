//! File formats, experiment configuration and the run harness for `sr2kit-core`.

// `!(v > 0.0)` is kept on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod harness;
pub mod io;
pub mod output;
