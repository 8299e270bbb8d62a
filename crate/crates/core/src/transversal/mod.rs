//! Hyperplane transversals and the covector cell complex.

pub mod covectors;
pub mod search;

pub use covectors::{
    enumerate_covectors, essentializing_vectors, euler_characteristic_cells, subfamily_of_cell, CellComplex,
    Covector,
};
pub use search::{
    candidate_normals, find_affine_transversal, find_affine_transversal_mask, find_origin_transversal,
    transversal_predicate, Hyperplane,
};
