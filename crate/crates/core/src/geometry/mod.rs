//! Exact rational geometry: linear algebra, LP feasibility and convexity tests.

pub mod hull;
pub mod linalg;
pub mod lp;
pub mod point;
pub mod rational;

pub use hull::{
    hulls_intersect, origin_in_hull, origin_in_hull_caratheodory, sign_vector,
    vertex_hulls_intersect, Sign, SignVector,
};
pub use linalg::{null_space_basis, null_space_ray, rank_of_vectors};
pub use point::{Point, Polytope};
pub use rational::{format_rational, frac, int, parse_rational, Rational};
