//! Simplicial complexes, GF(2) homology, and the complexes `K` and `L`.

pub mod complexes;
pub mod homology;
pub mod simplicial;

pub use crate::transversal::euler_characteristic_cells;
pub use complexes::{barycentric_skeleton, build_k, CellInstance};
pub use homology::{reduced_betti_gf2, BettiVector};
pub use simplicial::{check_free_z2, induced, SimplicialComplex};
