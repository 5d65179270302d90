#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cases;
pub mod eos;
pub mod error;
pub mod euler;
pub mod exact;
pub mod fv;
pub mod relax;
pub mod twophase;
mod vecops;

pub use eos::EosParams;
pub use error::{Error, Result};
