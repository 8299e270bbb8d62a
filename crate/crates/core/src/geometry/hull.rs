//! Convexity predicates: origin membership and hull intersection.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use super::linalg::solve_unique;
use super::lp::feasible_point;
use super::point::{common_dim, Point, Polytope};
use super::rational::Rational;
use crate::{Error, Result};

/// Whether the zero vector is a convex combination of `points`.
///
/// Solved as exact LP feasibility on `sum λ_i p_i = 0, sum λ_i = 1, λ >= 0`.
pub fn origin_in_hull(points: &[Point], n: usize) -> Result<bool> {
    common_dim(points, n)?;
    if points.is_empty() {
        return Ok(false);
    }
    if points.iter().any(Point::is_zero) {
        return Ok(true);
    }
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| points.iter().map(|p| p[i].clone()).collect())
        .collect();
    rows.push(vec![Rational::one(); points.len()]);
    let mut b = vec![Rational::zero(); n];
    b.push(Rational::one());
    Ok(feasible_point(&rows, &b).is_some())
}

/// Reference implementation of [`origin_in_hull`] by Carathéodory enumeration:
/// some affinely independent subset of at most `n + 1` points has the origin
/// as a convex combination with uniquely determined coefficients.
pub fn origin_in_hull_caratheodory(points: &[Point], n: usize) -> Result<bool> {
    common_dim(points, n)?;
    let mut b = vec![Rational::zero(); n];
    b.push(Rational::one());
    for size in 1..=(n + 1).min(points.len()) {
        for subset in points.iter().combinations(size) {
            let columns: Vec<Vec<Rational>> = subset
                .iter()
                .map(|p| {
                    let mut c = p.coords().to_vec();
                    c.push(Rational::one());
                    c
                })
                .collect();
            if let Some(lambda) = solve_unique(&columns, &b) {
                if lambda.iter().all(|l| !l.is_negative()) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Whether the hulls of two vertex lists meet, via the difference set
/// `{u - w : u in A, w in B}`.
pub fn vertex_hulls_intersect(a: &[Point], b: &[Point], n: usize) -> Result<bool> {
    common_dim(a, n)?;
    common_dim(b, n)?;
    let diffs: Vec<Point> = a
        .iter()
        .cartesian_product(b)
        .map(|(u, w)| u.sub(w))
        .collect();
    origin_in_hull(&diffs, n)
}

pub fn hulls_intersect(a: &Polytope, b: &Polytope) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    vertex_hulls_intersect(&a.vertices, &b.vertices, a.dim())
}

/// Entry of a sign vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

/// Signs of `a·v` over an ordered pool.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.flip()).collect())
    }

    pub fn is_all_zero(&self) -> bool {
        self.0.iter().all(|&s| s == Sign::Zero)
    }

    /// Face order: `self <= other` iff every entry of `self` is zero or agrees
    /// with `other`.
    pub fn is_face_of(&self, other: &SignVector) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&s, &t)| s == Sign::Zero || s == t)
    }

    pub fn zero_set(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Sign::Zero)
            .map(|(i, _)| i)
    }
}

impl std::fmt::Display for SignVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.as_char()))
    }
}

impl std::fmt::Debug for SignVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl serde::Serialize for SignVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn sign_vector(a: &Point, pool: &[Point]) -> Result<SignVector> {
    if a.is_zero() {
        return Err(Error::ZeroVector);
    }
    common_dim(pool, a.dim())?;
    Ok(SignVector(pool.iter().map(|v| Sign::of(&a.dot(v))).collect()))
}
