#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod fusion;
pub mod invariants;
pub mod repr;
pub mod braiding;
pub mod cli;
pub mod rootdata;
pub mod scalars;
pub mod tangles;

pub use error::{RelError, RelResult};
