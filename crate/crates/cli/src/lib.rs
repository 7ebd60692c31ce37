//! Reproducibility harness over `fibwork-core`: sweeps, oracle checks, a
//! content-addressed result cache and SVG rendering.

pub mod cache;
pub mod commands;
pub mod error;
pub mod record;

pub use cache::{Cache, CacheEntry, CacheKey, Route};
pub use commands::{Budget, RunOptions, Selector};
pub use error::{CliError, CliResult};
pub use record::SweepRecord;
