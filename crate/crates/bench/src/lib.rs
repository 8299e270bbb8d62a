//! Fixtures shared by the benchmarks.

use hypertrans_core::io::{gen_product, random_points, MatroidTemplate};
use hypertrans_core::{Instance, Point};

pub fn product_fixture(members: usize, seed: u64) -> Instance {
    let pts = random_points(members, 1, 8, seed).expect("room for the points");
    gen_product(&pts, 2, &hypertrans_core::geometry::int(1), &MatroidTemplate::Free, seed).expect("valid fixture")
}

/// Integer points on a small lattice, with the origin never hit.
pub fn lattice_points(count: usize, dim: usize) -> Vec<Point> {
    (0..count)
        .map(|i| {
            let coords: Vec<i64> = (0..dim).map(|j| ((i * 7 + j * 3) % 5) as i64 - 2).collect();
            let mut p = Point::from_ints(&coords);
            if p.is_zero() {
                p = Point::unit(dim, 0);
            }
            p
        })
        .collect()
}
