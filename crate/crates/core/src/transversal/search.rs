//! Hyperplane transversals by exhaustive candidate rays.
//!
//! The normals `a` for which every polytope has vertices on both closed sides
//! of `a^⊥` form a union of closed cones of the arrangement given by the
//! vertices. Adding the coordinate hyperplanes makes every such cone pointed,
//! so a feasible normal exists iff some extreme ray is feasible, and every
//! extreme ray is the null ray of `n - 1` independent arrangement vectors.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::geometry::rational::Rational;
use crate::geometry::{Point, Polytope};
use crate::lifting::Instance;
use crate::matroid::{mask_indices, Mask};
use crate::{Error, Result};

/// `{x : normal·x = offset}` with a primitive integer normal whose first nonzero
/// coordinate is positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    pub normal: Point,
    #[serde(with = "crate::geometry::rational::serde_str")]
    pub offset: Rational,
}

impl Hyperplane {
    pub fn coordinate(d: usize) -> Hyperplane {
        Hyperplane {
            normal: Point::unit(d, 0),
            offset: Rational::zero(),
        }
    }

    /// Exact slab test: `min normal·v <= offset <= max normal·v`.
    pub fn meets(&self, p: &Polytope) -> bool {
        let dots: Vec<Rational> = p.vertices.iter().map(|v| self.normal.dot(v)).collect();
        dots.iter().any(|t| *t <= self.offset) && dots.iter().any(|t| *t >= self.offset)
    }

    pub fn meets_all<'a>(&self, family: impl IntoIterator<Item = &'a Polytope>) -> bool {
        family.into_iter().all(|p| self.meets(p))
    }
}

/// Whether the central hyperplane `a^⊥` meets every polytope.
pub fn transversal_predicate(a: &Point, polys: &[Polytope], n: usize) -> Result<bool> {
    if a.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.dim(),
        });
    }
    if a.is_zero() {
        return Err(Error::ZeroVector);
    }
    for p in polys {
        crate::geometry::point::common_dim(&p.vertices, n)?;
    }
    Ok(polys.iter().all(|p| {
        let dots: Vec<Rational> = p.vertices.iter().map(|v| a.dot(v)).collect();
        dots.iter().any(|t| !t.is_positive()) && dots.iter().any(|t| !t.is_negative())
    }))
}

type IntVec = Vec<BigInt>;

/// Positive integer multiple of a rational vector (sign preserved).
fn integral(p: &Point) -> IntVec {
    let lcm = p
        .coords()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coords().iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

fn primitive_canonical(mut v: IntVec) -> Option<IntVec> {
    let first = v.iter().find(|c| !c.is_zero())?.clone();
    let mut g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if first.is_negative() {
        g = -g;
    }
    for c in v.iter_mut() {
        *c /= &g;
    }
    Some(v)
}

/// Fraction-free (Bareiss) determinant.
fn det(mut m: Vec<IntVec>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Generalized cross product of `n - 1` vectors in Z^n; zero iff they are dependent.
fn cross(rows: &[&IntVec], n: usize) -> IntVec {
    (0..n)
        .map(|skip| {
            let minor: Vec<IntVec> = rows
                .iter()
                .map(|r| (0..n).filter(|&j| j != skip).map(|j| r[j].clone()).collect())
                .collect();
            let d = det(minor);
            if skip % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

fn dot(a: &IntVec, b: &IntVec) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Canonical candidate normals: null rays of every rank-`(n-1)` subset of the
/// vertex directions plus the standard basis, in lexicographic order.
pub fn candidate_normals(polys: &[Polytope], n: usize) -> Result<Vec<Point>> {
    Ok(candidates(polys, n)?
        .into_iter()
        .map(|v| Point::new(v.into_iter().map(Rational::from_integer).collect()))
        .collect())
}

fn candidates(polys: &[Polytope], n: usize) -> Result<BTreeSet<IntVec>> {
    for p in polys {
        crate::geometry::point::common_dim(&p.vertices, n)?;
    }
    let mut dirs: BTreeSet<IntVec> = polys
        .iter()
        .flat_map(|p| p.vertices.iter())
        .filter_map(|v| primitive_canonical(integral(v)))
        .collect();
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = BigInt::one();
        dirs.insert(e);
    }
    let dirs: Vec<IntVec> = dirs.into_iter().collect();
    let mut out = BTreeSet::new();
    for subset in dirs.iter().combinations(n.saturating_sub(1)) {
        if let Some(ray) = primitive_canonical(cross(&subset, n)) {
            out.insert(ray);
        }
    }
    Ok(out)
}

/// First canonical normal accepted by `accept` whose central hyperplane meets
/// every polytope.
pub(crate) fn find_origin_transversal_where(
    polys: &[Polytope],
    n: usize,
    accept: impl Fn(&IntVec) -> bool,
) -> Result<Option<Point>> {
    let cands = candidates(polys, n)?;
    let verts: Vec<Vec<IntVec>> = polys
        .iter()
        .map(|p| p.vertices.iter().map(integral).collect())
        .collect();
    let hit = cands.into_iter().filter(|a| accept(a)).find(|a| {
        verts.iter().all(|vs| {
            let mut nonpos = false;
            let mut nonneg = false;
            for v in vs {
                let t = dot(a, v);
                nonpos |= !t.is_positive();
                nonneg |= !t.is_negative();
                if nonpos && nonneg {
                    return true;
                }
            }
            false
        })
    });
    Ok(hit.map(|a| Point::new(a.into_iter().map(Rational::from_integer).collect())))
}

/// A canonical normal `a` with [`transversal_predicate`] true, or `None` when
/// no central hyperplane meets every polytope.
pub fn find_origin_transversal(polys: &[Polytope], n: usize) -> Result<Option<Point>> {
    find_origin_transversal_where(polys, n, |_| true)
}

/// A hyperplane in R^d meeting every member of `g`, found through the central
/// transversals of the lifted `g ∪ −g`.
pub fn find_affine_transversal_mask(inst: &Instance, g: Mask) -> Result<Option<Hyperplane>> {
    if g == 0 {
        return Ok(Some(Hyperplane::coordinate(inst.d)));
    }
    let d = inst.d;
    let one = Rational::one();
    let mut polys = Vec::new();
    for i in mask_indices(g) {
        let p = &inst.family[i];
        let lifted = Polytope {
            id: p.id.clone(),
            vertices: p.vertices.iter().map(|v| v.extended(one.clone())).collect(),
        };
        polys.push(lifted.reflected(crate::lifting::reflection_id(&p.id)));
        polys.push(lifted);
    }
    let found = find_origin_transversal_where(&polys, d + 1, |a| a[..d].iter().any(|c| !c.is_zero()))?;
    let Some(a) = found else {
        return Ok(None);
    };
    let normal = Point::new(a.coords()[..d].to_vec());
    // Dividing by the gcd of the affine part keeps the first nonzero entry positive.
    let scale = normal
        .coords()
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
    let scale = Rational::from_integer(scale);
    let plane = Hyperplane {
        normal: Point::new(normal.coords().iter().map(|c| c / &scale).collect()),
        offset: -&a[d] / &scale,
    };
    if !plane.meets_all(mask_indices(g).map(|i| &inst.family[i])) {
        return Err(Error::Invariant(format!(
            "lifted normal {a} does not give an affine transversal"
        )));
    }
    Ok(Some(plane))
}

pub fn find_affine_transversal<S: AsRef<str>>(inst: &Instance, ids: &[S]) -> Result<Option<Hyperplane>> {
    find_affine_transversal_mask(inst, inst.mask_of(ids)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Matroid;

    fn poly(id: &str, v: &[&[i64]]) -> Polytope {
        Polytope::new(id, v.iter().map(|c| Point::from_ints(c)).collect()).unwrap()
    }

    #[test]
    fn predicate_examples() {
        let a = Point::from_ints(&[1, 0]);
        assert!(transversal_predicate(&a, &[], 2).unwrap());
        assert!(transversal_predicate(&a, &[poly("P", &[&[-1, 1], &[0, 1]])], 2).unwrap());
        assert!(!transversal_predicate(&a, &[poly("P", &[&[1, 1], &[2, 1]])], 2).unwrap());
        assert_eq!(transversal_predicate(&Point::zero(2), &[], 2), Err(Error::ZeroVector));
    }

    #[test]
    fn origin_transversal_examples() {
        let polys = [poly("A", &[&[-1, 1], &[0, 1]]), poly("B", &[&[0, 1], &[1, 1]])];
        assert_eq!(find_origin_transversal(&polys, 2).unwrap(), Some(Point::from_ints(&[1, 0])));
        let apart = [poly("A", &[&[-2, 1], &[-1, 1]]), poly("B", &[&[1, 1], &[2, 1]])];
        assert_eq!(find_origin_transversal(&apart, 2).unwrap(), None);
        let through = [poly("A", &[&[-1, 0], &[1, 0]])];
        let a = find_origin_transversal(&through, 2).unwrap().unwrap();
        assert!(transversal_predicate(&a, &through, 2).unwrap());
        assert_eq!(a, Point::from_ints(&[0, 1]));
    }

    #[test]
    fn one_dimensional_search() {
        assert_eq!(
            find_origin_transversal(&[poly("A", &[&[-1], &[2]])], 1).unwrap(),
            Some(Point::from_ints(&[1]))
        );
        assert_eq!(find_origin_transversal(&[poly("A", &[&[3]])], 1).unwrap(), None);
    }

    #[test]
    fn determinant_and_cross_product() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(2)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)],
        ];
        // 2(3-2) - 0 + 1(1-3)
        assert_eq!(det(m), BigInt::from(0));
        let swap = vec![vec![BigInt::zero(), BigInt::one()], vec![BigInt::one(), BigInt::zero()]];
        assert_eq!(det(swap), BigInt::from(-1));
        let a = vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)];
        let b = vec![BigInt::from(0), BigInt::from(1), BigInt::from(4)];
        let c = cross(&[&a, &b], 3);
        assert_eq!(dot(&c, &a), BigInt::zero());
        assert_eq!(dot(&c, &b), BigInt::zero());
        assert!(c.iter().any(|x| !x.is_zero()));
    }

    fn instance(sets: Vec<Polytope>, d: usize) -> Instance {
        let ids: Vec<String> = sets.iter().map(|p| p.id.clone()).collect();
        let phi = vec![Point::zero(d - 1); sets.len()];
        let r = sets.len().max(1);
        Instance::new(d, d - 1, sets, Matroid::uniform(ids, r).unwrap(), phi).unwrap()
    }

    #[test]
    fn affine_examples() {
        let inst = instance(
            vec![poly("A", &[&[1, 1]]), poly("B", &[&[2, 2]]), poly("C", &[&[4, 4]])],
            2,
        );
        assert_eq!(
            find_affine_transversal::<&str>(&inst, &[]).unwrap(),
            Some(Hyperplane::coordinate(2))
        );
        let h = find_affine_transversal(&inst, &["A", "B", "C"]).unwrap().unwrap();
        assert_eq!(h.normal, Point::from_ints(&[1, -1]));
        assert_eq!(h.offset, Rational::zero());

        let segs = instance(
            vec![poly("S", &[&[-1, 0], &[1, 0]]), poly("T", &[&[-2, 3], &[2, 3]])],
            2,
        );
        let h = find_affine_transversal(&segs, &["S", "T"]).unwrap().unwrap();
        assert!(h.meets_all(&segs.family));
        assert!(Hyperplane { normal: Point::from_ints(&[1, 0]), offset: Rational::zero() }.meets_all(&segs.family));
        assert!(matches!(find_affine_transversal(&segs, &["X"]), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn affine_search_reports_absence() {
        // Three non-collinear points have no common line.
        let inst = instance(
            vec![poly("A", &[&[0, 0]]), poly("B", &[&[1, 0]]), poly("C", &[&[0, 1]])],
            2,
        );
        assert_eq!(find_affine_transversal(&inst, &["A", "B", "C"]).unwrap(), None);
        assert!(find_affine_transversal(&inst, &["A", "B"]).unwrap().is_some());
    }
}
