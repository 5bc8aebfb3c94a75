//! Words avoiding large squares and cubes: scanners, uniform morphisms,
//! square-transfer certificates, exhaustive counting and the pinned
//! example constructions.

pub mod enumerate;
pub mod error;
pub mod instances;
pub mod lce;
pub mod morphism;
pub mod scan;
pub mod spec;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use morphism::{Morphism, Substitution};
pub use spec::AvoidanceSpec;
pub use word::{Symbol, Word};

/// Growth estimate in double precision.
pub type Growth = enumerate::GrowthEstimate<f64>;
/// Growth estimate in single precision.
pub type GrowthF32 = enumerate::GrowthEstimate<f32>;
