use std::cmp::Ordering;
use std::fmt;
use std::ops::{Index, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, int, parse_rational, Rational};
use crate::{Error, Result};

/// A coordinate tuple of exact rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut p = Point::zero(dim);
        p.0[axis] = Rational::one();
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Dot product. Callers guarantee equal dimensions.
    pub fn dot(&self, other: &Point) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: &Rational) -> Point {
        Point(self.0.iter().map(|a| a * s).collect())
    }

    /// Appends one coordinate.
    pub fn extended(&self, last: Rational) -> Point {
        let mut c = self.0.clone();
        c.push(last);
        Point(c)
    }

    /// Drops the last coordinate.
    pub fn truncated(&self) -> Point {
        Point(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    /// Primitive integer multiple with the first nonzero coordinate positive.
    /// Returns `None` for the zero vector.
    pub fn canonical_ray(&self) -> Option<Point> {
        let first = self.0.iter().find(|c| !c.is_zero())?;
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if first.is_negative() {
            g = -g;
        }
        Some(Point(
            ints.into_iter()
                .map(|c| Rational::from_integer(c / &g))
                .collect(),
        ))
    }

    /// Lexicographic order on coordinates.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        -&self
    }
}

impl Index<usize> for Point {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Point)
    }
}

/// Returns the shared dimension of `points`, or `n` if the list is empty.
pub(crate) fn common_dim(points: &[Point], n: usize) -> Result<usize> {
    for p in points {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
    }
    Ok(n)
}

/// A labelled V-polytope: the convex hull of a nonempty vertex list.
///
/// Listed points need not be extreme; nothing here prunes them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polytope {
    pub id: String,
    pub vertices: Vec<Point>,
}

impl Polytope {
    pub fn new(id: impl Into<String>, vertices: Vec<Point>) -> Result<Self> {
        let id = id.into();
        let first = vertices
            .first()
            .ok_or_else(|| Error::InvalidInstance(format!("polytope `{id}` has no vertices")))?;
        common_dim(&vertices, first.dim())?;
        Ok(Polytope { id, vertices })
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// Pointwise negation, under a new id.
    pub fn reflected(&self, id: impl Into<String>) -> Polytope {
        Polytope {
            id: id.into(),
            vertices: self.vertices.iter().map(|v| -v).collect(),
        }
    }
}
