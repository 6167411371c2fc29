//! Rack, degenerate and quandle homology of finite quandles, homology classes
//! of colored link and tangle diagrams, and three decision procedures built on
//! them: tangle-embedding obstructions, a 4-move distance lower bound, and
//! exclusion of link periods.
//!
//! Module map:
//!
//! - [`linalg`]: exact integer matrices and the Smith normal form.
//! - [`quandle`]: finite quandles, axiom checks, orbits.
//! - [`homology`]: chains, boundary maps, homology presentations, cocycles.
//! - [`diagram`]: PD-coded link and tangle diagrams, faces, closures.
//! - [`coloring`]: (shadow) colorings and the cycles they represent.
//! - [`applications`]: the decision procedures and the fixed basis of H₂ of R₄.
//! - [`fixtures`]: bundled example diagrams.

pub mod applications;
pub mod coloring;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod linalg;
pub mod quandle;

pub use error::{Error, Result};
