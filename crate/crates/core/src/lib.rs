//! Wilson loop expectations for two-dimensional Yang–Mills theory with
//! structure group `U(N)`, written as finite or truncated sums over balanced
//! configurations of highest weights, with independent oracles to check them.

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod evaluate;
pub mod mm;
pub mod oracle;
pub mod surface;
pub mod symgroup;
pub mod weights;

pub use error::{Error, Result};
