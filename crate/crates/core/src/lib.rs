//! Endomorphism monoids of star graphs: enumeration, structure, ranks and
//! certified presentations.

pub mod error;
pub mod graph;
pub mod monoid;
pub mod presentation;
pub mod rank;
pub mod transform;

pub use error::{Error, Result};
pub use graph::{star_graph, EndoClass, SimpleGraph};
pub use monoid::{Assignment, TransformationMonoid, Word};
pub use presentation::Presentation;
pub use rank::{RankOptions, RankOutcome};
pub use transform::Transformation;
