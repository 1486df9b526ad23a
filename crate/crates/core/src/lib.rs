pub mod config;
pub mod dynamics;
pub mod enriched;
pub mod error;
pub mod grassmann;
pub mod model11;
pub mod model32;
pub mod numerics;
pub mod quantize;
pub mod report;
pub mod sampling;
pub mod suites;
pub mod superlinalg;

pub use error::{Error, Result};
