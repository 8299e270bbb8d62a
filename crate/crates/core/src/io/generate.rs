//! Seeded generators of instances that satisfy the hypothesis. Randomness
//! comes from ChaCha8 seeded with the caller's `u64`.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geometry::{frac, int, Point, Polytope, Rational};
use crate::hypothesis::check_star;
use crate::lifting::Instance;
use crate::limits::Limits;
use crate::matroid::Matroid;
use crate::verifier::replicate_classic;
use crate::{Error, Result};

/// A matroid over generated ids `P0, P1, ...`, given by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidTemplate {
    Uniform(usize),
    /// Class of each member; shorter lists repeat cyclically.
    Partition(Vec<usize>),
    /// Every set independent.
    Free,
}

impl MatroidTemplate {
    pub fn build(&self, ids: Vec<String>) -> Result<Matroid> {
        let n = ids.len();
        match self {
            MatroidTemplate::Uniform(r) => Matroid::uniform(ids, *r),
            MatroidTemplate::Free => Matroid::uniform(ids, n),
            MatroidTemplate::Partition(c) if c.is_empty() => {
                Err(Error::InvalidMatroid("partition template needs at least one class".into()))
            }
            MatroidTemplate::Partition(c) => Matroid::partition(ids, (0..n).map(|i| c[i % c.len()]).collect()),
        }
    }
}

pub fn generated_ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("P{i}")).collect()
}

/// Replicated families outgrow the default cap, so the guard allows more.
const GUARD_FAMILY_CAP: usize = 16;

fn guard(inst: Instance) -> Result<Instance> {
    let limits = Limits {
        max_family: GUARD_FAMILY_CAP,
        ..Limits::default()
    };
    if check_star(&inst, &limits)?.passed() {
        Ok(inst)
    } else {
        Err(Error::Invariant("generated instance fails the hypothesis".into()))
    }
}

/// Corners of `[0, side]^m` in binary counting order.
fn box_corners(m: usize, side: &Rational) -> Vec<Vec<Rational>> {
    (0..1usize << m)
        .map(|bits| {
            (0..m)
                .map(|j| if bits >> j & 1 == 1 { side.clone() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

/// Member `i` is `{x_i} × [0, side]^{d-k}`, with `φ(i) = x_i`. The seed only
/// permutes the listed corners.
pub fn gen_product(
    points: &[Point],
    d: usize,
    box_side: &Rational,
    matroid: &MatroidTemplate,
    seed: u64,
) -> Result<Instance> {
    let k = points.first().map_or(0, Point::dim);
    if k >= d {
        return Err(Error::InvalidInstance(format!("need k < d, got k = {k}, d = {d}")));
    }
    if points.iter().any(|p| p.dim() != k) {
        return Err(Error::InvalidInstance("points must share one dimension".into()));
    }
    if points.iter().collect::<BTreeSet<_>>().len() != points.len() {
        return Err(Error::InvalidInstance("points must be distinct".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let corners = box_corners(d - k, box_side);
    let ids = generated_ids(points.len());
    let mut family = Vec::with_capacity(points.len());
    for (x, id) in points.iter().zip(&ids) {
        let mut vertices: Vec<Point> = corners
            .iter()
            .map(|c| Point::new(x.coords().iter().chain(c).cloned().collect()))
            .collect();
        vertices.dedup();
        vertices.shuffle(&mut rng);
        family.push(Polytope::new(id.clone(), vertices)?);
    }
    guard(Instance::new(d, k, family, matroid.build(ids)?, points.to_vec())?)
}

/// `n` distinct integer points of `[-range, range]^k`.
pub fn random_points(n: usize, k: usize, range: i64, seed: u64) -> Result<Vec<Point>> {
    let cells = (2 * range + 1).checked_pow(k as u32).unwrap_or(i64::MAX);
    if (n as i64) > cells {
        return Err(Error::InvalidInstance(format!("cannot place {n} distinct points in the box")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = Point::from_ints(&(0..k).map(|_| rng.random_range(-range..=range)).collect::<Vec<_>>());
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomParams {
    pub d: usize,
    pub k: usize,
    pub members: usize,
    /// Vertices per member are drawn from `1..=max_vertices`.
    pub max_vertices: usize,
    /// Member centers have integer coordinates in `[-range, range]`.
    pub range: i64,
    pub matroid: MatroidTemplate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct RejectionStats {
    pub accepted: usize,
    pub tried: usize,
}

fn random_rational(rng: &mut ChaCha8Rng, half_width: i64, denom: i64) -> Rational {
    frac(rng.random_range(-half_width * denom..=half_width * denom), denom)
}

fn draw_instance(p: &RandomParams, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let ids = generated_ids(p.members);
    let mut family = Vec::with_capacity(p.members);
    let mut phi = Vec::with_capacity(p.members);
    for id in &ids {
        let center: Vec<Rational> = (0..p.d).map(|_| int(rng.random_range(-p.range..=p.range))).collect();
        let count = rng.random_range(1..=p.max_vertices.max(1));
        let vertices = (0..count)
            .map(|_| Point::new(center.iter().map(|c| c + random_rational(rng, 1, 2)).collect()))
            .collect();
        family.push(Polytope::new(id.clone(), vertices)?);
        // Images follow the leading coordinates of the center with a small jitter.
        phi.push(Point::new(
            center[..p.k].iter().map(|c| c + random_rational(rng, 1, 4)).collect(),
        ));
    }
    Instance::new(p.d, p.k, family, p.matroid.build(ids)?, phi)
}

/// One draw; `None` when the draw fails the hypothesis.
pub fn gen_random_filtered(params: &RandomParams, seed: u64) -> Result<Option<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = draw_instance(params, &mut rng)?;
    Ok(check_star(&inst, &Limits::default())?.passed().then_some(inst))
}

/// Draws with seeds `seed, seed + 1, ...` until `count` instances pass or
/// `max_tries` draws are spent.
pub fn gen_random_batch(
    params: &RandomParams,
    count: usize,
    seed: u64,
    max_tries: usize,
) -> Result<(Vec<Instance>, RejectionStats)> {
    let mut out = Vec::with_capacity(count);
    let mut stats = RejectionStats::default();
    while out.len() < count && stats.tried < max_tries {
        let s = seed.wrapping_add(stats.tried as u64);
        stats.tried += 1;
        if let Some(inst) = gen_random_filtered(params, s)? {
            stats.accepted += 1;
            out.push(inst);
        }
    }
    Ok((out, stats))
}

/// `n` disjoint polygons in the strips `4i <= x <= 4i + 3`, each meeting the
/// line `y = s x` for a random shear `s`, with `φ` the order along the line,
/// replicated into three color classes for `k = 1`.
pub fn gen_hadwiger(n: usize, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidInstance("need at least one member".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shear = frac(rng.random_range(-4..=4), 4);
    let ids = generated_ids(n);
    let mut family = Vec::with_capacity(n);
    for (i, id) in ids.iter().enumerate() {
        let left = int(4 * i as i64);
        let count = rng.random_range(3..=5usize);
        let mut vertices = Vec::with_capacity(count);
        for j in 0..count {
            let x = &left + frac(rng.random_range(0..=12), 4);
            // Alternate sides of the line so the hull crosses it.
            let magnitude = frac(rng.random_range(1..=12), 4);
            let y = if j % 2 == 0 { magnitude } else { -magnitude };
            vertices.push(Point::new(vec![x.clone(), y + &shear * &x]));
        }
        family.push(Polytope::new(id.clone(), vertices)?);
    }
    let phi: Vec<Point> = (0..n).map(|i| Point::new(vec![int(i as i64)])).collect();
    guard(replicate_classic(&family, &phi, 2, 1)?)
}
