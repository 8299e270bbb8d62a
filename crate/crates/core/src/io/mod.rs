//! Instance files, generators and SVG output.

pub mod format;
pub mod generate;
pub mod render;

pub use format::{parse_instance, parse_instance_file, serialize_instance, InstanceFile, MatroidSpec, Meta, SetEntry};
pub use generate::{
    gen_hadwiger, gen_product, gen_random_batch, gen_random_filtered, generated_ids, random_points, MatroidTemplate,
    RandomParams, RejectionStats,
};
pub use render::{convex_hull_2d, render_svg, RenderSpec};
