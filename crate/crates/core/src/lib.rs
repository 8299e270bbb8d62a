//! Exact verification of the colorful hyperplane-transversal theorem for
//! matroid-colored families of polytopes.
//!
//! The crate decides the theorem's hypothesis on concrete instances, searches
//! for the subfamily and hyperplane its conclusion promises, and audits the
//! combinatorial objects of the topological proof (the doubled family, the
//! covector cell complex, the complexes `K` and `L`). All arithmetic is exact.

pub mod error;
pub mod geometry;
pub mod hypothesis;
pub mod io;
pub mod lifting;
pub mod limits;
pub mod matroid;
pub mod topology;
pub mod transversal;
pub mod verifier;

pub use error::{Error, Result};
pub use geometry::{Point, Polytope, Rational, Sign, SignVector};
pub use hypothesis::{check_star, check_star_lifted, LiftedStarCheck, StarCheck, StarViolation};
pub use lifting::{lift_instance, Instance, LiftedInstance};
pub use limits::Limits;
pub use matroid::{Mask, Matroid, RankFunction};
pub use transversal::{CellComplex, Covector, Hyperplane};
pub use verifier::{verify_theorem, VerificationResult, Witness};

