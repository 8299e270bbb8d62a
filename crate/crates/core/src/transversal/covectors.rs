//! Covectors of the central arrangement `{v^⊥ : v in V}`.
//!
//! Every realized sign vector has a zero set that is a flat `T` of the vector
//! configuration, and the realizing normals form an open chamber of the
//! arrangement restricted to `T^⊥`. Enumeration walks all flats and
//! enumerates chambers of each restriction by incremental insertion, with an
//! exact LP deciding whether a new hyperplane splits a chamber.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::geometry::lp::feasible_point;
use crate::geometry::{null_space_basis, rank_of_vectors, sign_vector, Point, Rational, Sign, SignVector};
use crate::lifting::LiftedInstance;
use crate::limits::Limits;
use crate::matroid::Mask;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Covector {
    pub signs: SignVector,
    pub witness: Point,
    /// Dimension of the cell on the unit sphere.
    pub dim: usize,
}

/// The face poset of the cell decomposition of `S^{n-1}` cut out by the pool.
#[derive(Debug, Clone)]
pub struct CellComplex {
    pub n: usize,
    pub pool: Vec<Point>,
    pub covectors: Vec<Covector>,
    /// `n - rank(pool)`: dimension of the normals orthogonal to the whole pool.
    pub lineality: usize,
    index: HashMap<SignVector, usize>,
}

impl CellComplex {
    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    pub fn index_of(&self, s: &SignVector) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &SignVector) -> bool {
        self.index.contains_key(s)
    }

    /// Index of the antipodal covector.
    pub fn antipode(&self, i: usize) -> usize {
        self.index[&self.covectors[i].signs.negated()]
    }

    pub fn is_face(&self, i: usize, j: usize) -> bool {
        self.covectors[i].signs.is_face_of(&self.covectors[j].signs)
    }

    /// Number of sphere cells behind a covector. The all-zero covector of a
    /// pool of rank `n - 1` is the two antipodal points `±a`; every other
    /// covector is a single cell.
    pub fn multiplicity(&self, i: usize) -> usize {
        if self.covectors[i].signs.is_all_zero() && self.lineality == 1 {
            2
        } else {
            1
        }
    }

    /// Euler characteristic of the sphere as assembled from the cells: the
    /// all-zero covector contributes `χ(S^{lineality-1})`.
    pub fn euler_characteristic(&self) -> i64 {
        self.covectors
            .iter()
            .map(|c| {
                let unit = if c.dim % 2 == 0 { 1 } else { -1 };
                if c.signs.is_all_zero() {
                    1 + unit
                } else {
                    unit
                }
            })
            .sum()
    }
}

pub fn euler_characteristic_cells(cells: &CellComplex) -> i64 {
    cells.euler_characteristic()
}

fn zero_mask<'a>(pool: &'a [Point], basis: &'a [Point]) -> impl Iterator<Item = bool> + 'a {
    pool.iter()
        .map(move |v| basis.iter().all(|b| v.dot(b).is_zero()))
}

pub fn enumerate_covectors(pool: &[Point], n: usize, limits: &Limits) -> Result<CellComplex> {
    Limits::check("vertex pool size", limits.max_vertices.min(64), pool.len())?;
    Limits::check("ambient dimension", limits.max_dim, n)?;
    if pool.is_empty() {
        return Err(Error::InvalidInstance("vertex pool is empty".into()));
    }
    crate::geometry::point::common_dim(pool, n)?;
    if let Some(i) = pool.iter().position(Point::is_zero) {
        return Err(Error::ZeroInPool(i));
    }
    let lineality = n - rank_of_vectors(pool, n)?;

    // Flats of rank < n, grown from the empty flat one element at a time.
    let mut seen: HashSet<Mask> = HashSet::new();
    let mut frontier: Vec<(Mask, Vec<Point>)> = vec![(0, identity(n))];
    seen.insert(0);
    let mut covectors: Vec<Covector> = Vec::new();
    while let Some((flat, basis)) = frontier.pop() {
        let m = basis.len();
        if m == 0 {
            continue;
        }
        for witness in flat_chambers(pool, flat, &basis)? {
            let signs = sign_vector(&witness, pool)?;
            covectors.push(Covector {
                signs,
                witness,
                dim: m - 1,
            });
        }
        for v in (0..pool.len()).filter(|&v| flat >> v & 1 == 0) {
            let mut rows: Vec<Point> = mask_points(pool, flat);
            rows.push(pool[v].clone());
            let next_basis = null_space_basis(&rows, n)?;
            let next: Mask = zero_mask(pool, &next_basis)
                .enumerate()
                .fold(0, |acc, (i, z)| if z { acc | 1 << i } else { acc });
            if seen.insert(next) {
                frontier.push((next, next_basis));
            }
        }
    }
    covectors.sort_by(|a, b| a.signs.cmp(&b.signs));
    covectors.dedup_by(|a, b| a.signs == b.signs);
    let index = covectors
        .iter()
        .enumerate()
        .map(|(i, c)| (c.signs.clone(), i))
        .collect();
    Ok(CellComplex {
        n,
        pool: pool.to_vec(),
        covectors,
        lineality,
        index,
    })
}

fn identity(n: usize) -> Vec<Point> {
    (0..n).map(|i| Point::unit(n, i)).collect()
}

fn mask_points(pool: &[Point], m: Mask) -> Vec<Point> {
    (0..pool.len())
        .filter(|&i| m >> i & 1 == 1)
        .map(|i| pool[i].clone())
        .collect()
}

/// Witnesses, in R^n, of every chamber of the arrangement restricted to the
/// span of `basis` (the orthogonal complement of the flat).
fn flat_chambers(pool: &[Point], flat: Mask, basis: &[Point]) -> Result<Vec<Point>> {
    let m = basis.len();
    let restricted: BTreeSet<Point> = (0..pool.len())
        .filter(|&i| flat >> i & 1 == 0)
        .filter_map(|i| {
            Point::new(basis.iter().map(|b| pool[i].dot(b)).collect()).canonical_ray()
        })
        .collect();
    let hyps: Vec<Point> = restricted.into_iter().collect();
    Ok(chambers(&hyps, m)
        .into_iter()
        .map(|y| {
            basis
                .iter()
                .zip(y.coords())
                .fold(Point::zero(pool[0].dim()), |acc, (b, c)| acc.add(&b.scale(c)))
        })
        .collect())
}

/// One interior point per chamber of the central arrangement `{h^⊥}` in R^m.
fn chambers(hyps: &[Point], m: usize) -> Vec<Point> {
    let Some((first, rest)) = hyps.split_first() else {
        return vec![Point::unit(m, 0)];
    };
    let mut cells = vec![first.clone(), -first];
    let mut inserted = vec![first.clone()];
    for h in rest {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for y in cells {
            let oriented: Vec<Point> = inserted
                .iter()
                .map(|g| if g.dot(&y).is_positive() { g.clone() } else { -g })
                .collect();
            let t = h.dot(&y);
            if t.is_zero() {
                next.push(nudge(&y, h, &oriented));
                next.push(nudge(&y, &-h, &oriented));
                continue;
            }
            let other = if t.is_positive() { -h } else { h.clone() };
            next.push(y);
            let mut constraints = oriented;
            constraints.push(other);
            if let Some(x) = strictly_inside(&constraints, m) {
                next.push(x);
            }
        }
        cells = next;
        inserted.push(h.clone());
    }
    cells
}

/// `y + ε h` for an ε small enough to stay inside every `g·x > 0`.
fn nudge(y: &Point, h: &Point, oriented: &[Point]) -> Point {
    let mut eps = Rational::one();
    for g in oriented {
        let gh = g.dot(h);
        if gh.is_negative() {
            let limit = g.dot(y) / -gh;
            if limit < eps {
                eps = limit;
            }
        }
    }
    let eps = eps / Rational::from_integer(2.into());
    y.add(&h.scale(&eps))
}

/// A point with `g·x >= 1` for every constraint, if one exists.
fn strictly_inside(constraints: &[Point], m: usize) -> Option<Point> {
    let r = constraints.len();
    let rows: Vec<Vec<Rational>> = constraints
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut row: Vec<Rational> = g.coords().to_vec();
            row.extend(g.coords().iter().map(|c| -c));
            row.extend((0..r).map(|j| if i == j { -Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let x = feasible_point(&rows, &vec![Rational::one(); r])?;
    Some(Point::new((0..m).map(|i| &x[i] - &x[m + i]).collect()))
}

/// Pool vectors that make the pool span R^n when appended (greedy over the
/// standard basis).
pub fn essentializing_vectors(pool: &[Point], n: usize) -> Result<Vec<Point>> {
    let mut all = pool.to_vec();
    let mut rank = rank_of_vectors(&all, n)?;
    let mut extra = Vec::new();
    for i in 0..n {
        if rank == n {
            break;
        }
        all.push(Point::unit(n, i));
        let r = rank_of_vectors(&all, n)?;
        if r > rank {
            rank = r;
            extra.push(Point::unit(n, i));
        } else {
            all.pop();
        }
    }
    Ok(extra)
}

/// `F̌(σ)`: members all of whose vertices are strictly positive on σ.
///
/// `cells` may carry auxiliary pool entries after the lifted pool; only the
/// lifted entries are read.
pub fn subfamily_of_cell(cells: &CellComplex, sigma: &SignVector, lifted: &LiftedInstance) -> Result<Mask> {
    if !cells.contains(sigma) || sigma.len() < lifted.pool.len() {
        return Err(Error::UnrealizedCovector);
    }
    Ok(subfamily_of_signs(sigma, lifted))
}

pub(crate) fn subfamily_of_signs(sigma: &SignVector, lifted: &LiftedInstance) -> Mask {
    lifted
        .member_vertices
        .iter()
        .enumerate()
        .filter(|(_, r)| sigma.0[(*r).clone()].iter().all(|&s| s == Sign::Pos))
        .fold(0, |acc, (i, _)| acc | 1 << i)
}
