//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use hypertrans_core::geometry::{frac, int};
use hypertrans_core::io::{generated_ids, MatroidTemplate};
use hypertrans_core::{Hyperplane, Instance, Matroid, Point, Polytope, Rational};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with numerator in `[-range * denom, range * denom]` and the given denominator.
pub fn rational(rng: &mut ChaCha8Rng, range: i64, denom: i64) -> Rational {
    frac(rng.random_range(-range * denom..=range * denom), denom)
}

pub fn random_point(rng: &mut ChaCha8Rng, dim: usize, range: i64) -> Point {
    let denom = rng.random_range(1..=3);
    Point::new((0..dim).map(|_| rational(rng, range, denom)).collect())
}

pub fn random_polytope(rng: &mut ChaCha8Rng, id: String, dim: usize, max_vertices: usize, range: i64) -> Polytope {
    let count = rng.random_range(1..=max_vertices);
    Polytope::new(id, (0..count).map(|_| random_point(rng, dim, range)).collect()).unwrap()
}

/// Nonzero integer vector in `[-range, range]^dim`.
pub fn random_nonzero(rng: &mut ChaCha8Rng, dim: usize, range: i64) -> Point {
    loop {
        let p = Point::from_ints(&(0..dim).map(|_| rng.random_range(-range..=range)).collect::<Vec<_>>());
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_template(rng: &mut ChaCha8Rng, members: usize) -> MatroidTemplate {
    match rng.random_range(0..3) {
        0 => MatroidTemplate::Free,
        1 => MatroidTemplate::Uniform(rng.random_range(1..=members.max(1))),
        _ => MatroidTemplate::Partition((0..members).map(|_| rng.random_range(0..3)).collect()),
    }
}

/// Random instance, hypothesis not guaranteed.
pub fn random_instance(rng: &mut ChaCha8Rng, d: usize, k: usize, members: usize, max_vertices: usize) -> Instance {
    let ids = generated_ids(members);
    let family = ids
        .iter()
        .map(|id| random_polytope(rng, id.clone(), d, max_vertices, 3))
        .collect();
    let phi = (0..members).map(|_| random_point(rng, k, 3)).collect();
    let matroid = random_template(rng, members).build(ids).unwrap();
    Instance::new(d, k, family, matroid, phi).unwrap()
}

/// Independent slab test: the hyperplane meets the hull of `p`.
pub fn slab_meets(h: &Hyperplane, p: &Polytope) -> bool {
    let values: Vec<Rational> = p
        .vertices
        .iter()
        .map(|v| v.coords().iter().zip(h.normal.coords()).map(|(x, a)| x * a).fold(Rational::zero(), |s, t| s + t))
        .collect();
    let lo = values.iter().min().unwrap();
    let hi = values.iter().max().unwrap();
    lo <= &h.offset && &h.offset <= hi
}

pub fn uniform_matroid(ids: &[String], rank: usize) -> Matroid {
    Matroid::uniform(ids.to_vec(), rank).unwrap()
}

pub fn ints(coords: &[i64]) -> Point {
    Point::from_ints(coords)
}

pub fn zero() -> Rational {
    int(0)
}
