//! Pinned data files and the scenarios that reproduce the worked examples.

mod registry;
mod scenarios;

pub use registry::*;
pub use scenarios::*;
