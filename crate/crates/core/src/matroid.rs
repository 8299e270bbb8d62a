//! Matroid rank oracles over label ground sets.
//!
//! Subsets are bitmasks over ground indices; ground sets are therefore capped at
//! 64 elements, far above every exhaustive limit used elsewhere.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::geometry::{rank_of_vectors, Point};
use crate::limits::Limits;
use crate::{Error, Result};

/// A subset of a ground set, one bit per index.
pub type Mask = u64;

pub fn mask_len(m: Mask) -> usize {
    m.count_ones() as usize
}

pub fn mask_indices(m: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m >> i & 1 == 1)
}

pub fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

/// Anything that assigns a rank to subsets of `0..ground_size()`.
pub trait RankFunction: Sync {
    fn ground_size(&self) -> usize;
    fn rank_mask(&self, s: Mask) -> usize;
}

/// A closure-backed rank function, mostly for hand-built oracles in tests.
pub struct FnRank<F>(pub usize, pub F);

impl<F: Fn(Mask) -> usize + Sync> RankFunction for FnRank<F> {
    fn ground_size(&self) -> usize {
        self.0
    }
    fn rank_mask(&self, s: Mask) -> usize {
        (self.1)(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidKind {
    /// Rank is the number of classes met. `dense` renumbers `classes` to `0..c`.
    Partition { classes: Vec<usize>, dense: Vec<u8> },
    Uniform { rank: usize },
    /// Rank of the column vectors.
    Linear { columns: Vec<Point> },
    /// Rank is the largest intersection with a basis.
    ExplicitBases { bases: Vec<Mask> },
    /// Parallel extension: element `i` behaves as `fold[i]` of `base`.
    Doubled { base: Box<Matroid>, fold: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    ground: Vec<String>,
    kind: MatroidKind,
}

impl RankFunction for Matroid {
    fn ground_size(&self) -> usize {
        self.ground.len()
    }

    fn rank_mask(&self, s: Mask) -> usize {
        match &self.kind {
            MatroidKind::Partition { dense, .. } => mask_indices(s)
                .fold(0u64, |acc, i| acc | 1 << dense[i])
                .count_ones() as usize,
            MatroidKind::Uniform { rank } => mask_len(s).min(*rank),
            MatroidKind::Linear { columns } => {
                let sel: Vec<Point> = mask_indices(s).map(|i| columns[i].clone()).collect();
                let n = columns.first().map_or(0, Point::dim);
                rank_of_vectors(&sel, n).expect("columns validated at construction")
            }
            MatroidKind::ExplicitBases { bases } => bases
                .iter()
                .map(|b| mask_len(b & s))
                .max()
                .unwrap_or(0),
            MatroidKind::Doubled { base, fold } => {
                base.rank_mask(mask_indices(s).fold(0, |acc, i| acc | 1 << fold[i]))
            }
        }
    }
}

impl Matroid {
    fn build(ground: Vec<String>, kind: MatroidKind) -> Result<Self> {
        if ground.len() > 64 {
            return Err(Error::CapExceeded {
                what: "matroid ground set",
                limit: 64,
                actual: ground.len(),
            });
        }
        let unique: BTreeSet<&String> = ground.iter().collect();
        if unique.len() != ground.len() {
            return Err(Error::InvalidMatroid("duplicate ground labels".into()));
        }
        Ok(Matroid { ground, kind })
    }

    pub fn partition(ground: Vec<String>, classes: Vec<usize>) -> Result<Self> {
        if classes.len() != ground.len() {
            return Err(Error::InvalidMatroid(
                "partition needs one class per ground element".into(),
            ));
        }
        let distinct: Vec<usize> = classes.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let dense = classes
            .iter()
            .map(|c| distinct.binary_search(c).expect("class listed") as u8)
            .collect();
        Self::build(ground, MatroidKind::Partition { classes, dense })
    }

    pub fn uniform(ground: Vec<String>, rank: usize) -> Result<Self> {
        Self::build(ground, MatroidKind::Uniform { rank })
    }

    pub fn linear(ground: Vec<String>, columns: Vec<Point>) -> Result<Self> {
        if columns.len() != ground.len() {
            return Err(Error::InvalidMatroid(
                "linear matroid needs one column per ground element".into(),
            ));
        }
        if let Some(first) = columns.first() {
            crate::geometry::point::common_dim(&columns, first.dim())?;
        }
        Self::build(ground, MatroidKind::Linear { columns })
    }

    /// Bases must be nonempty in number and share one size.
    pub fn explicit_bases(ground: Vec<String>, bases: &[Vec<String>]) -> Result<Self> {
        let index = |l: &String| {
            ground
                .iter()
                .position(|g| g == l)
                .ok_or_else(|| Error::UnknownLabel(l.clone()))
        };
        let mut masks = Vec::with_capacity(bases.len());
        for b in bases {
            let mut m: Mask = 0;
            for l in b {
                m |= 1 << index(l)?;
            }
            if mask_len(m) != b.len() {
                return Err(Error::InvalidMatroid(format!("basis {b:?} repeats a label")));
            }
            masks.push(m);
        }
        let sizes: BTreeSet<usize> = masks.iter().map(|&m| mask_len(m)).collect();
        if sizes.len() != 1 {
            return Err(Error::InvalidMatroid(
                "explicit bases must be nonempty and all of one size".into(),
            ));
        }
        Self::build(ground, MatroidKind::ExplicitBases { bases: masks })
    }

    /// The parallel extension of `base` in which ground element `i` is a copy
    /// of `base` element `fold[i]`.
    pub fn doubled(base: Matroid, ground: Vec<String>, fold: Vec<usize>) -> Result<Self> {
        if fold.len() != ground.len() || fold.iter().any(|&j| j >= base.ground.len()) {
            return Err(Error::InvalidMatroid("fold map does not fit the base matroid".into()));
        }
        Self::build(
            ground,
            MatroidKind::Doubled {
                base: Box::new(base),
                fold,
            },
        )
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn kind(&self) -> &MatroidKind {
        &self.kind
    }

    /// Same oracle over a renamed ground set.
    pub fn relabeled(&self, ground: Vec<String>) -> Result<Self> {
        if ground.len() != self.ground.len() {
            return Err(Error::InvalidMatroid("relabeling changes the ground size".into()));
        }
        Self::build(ground, self.kind.clone())
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.ground
            .iter()
            .position(|g| g == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Mask> {
        labels
            .iter()
            .try_fold(0, |m, l| Ok(m | 1 << self.index_of(l.as_ref())?))
    }

    pub fn labels_of(&self, m: Mask) -> Vec<String> {
        mask_indices(m).map(|i| self.ground[i].clone()).collect()
    }

    pub fn full(&self) -> Mask {
        full_mask(self.ground.len())
    }

    pub fn rank<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        Ok(self.rank_mask(self.mask_of(labels)?))
    }

    pub fn is_independent<S: AsRef<str>>(&self, labels: &[S]) -> Result<bool> {
        let m = self.mask_of(labels)?;
        Ok(self.is_independent_mask(m))
    }

    pub fn is_independent_mask(&self, m: Mask) -> bool {
        self.rank_mask(m) == mask_len(m)
    }

    pub fn closure<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<String>> {
        Ok(self.labels_of(self.closure_mask(self.mask_of(labels)?)))
    }

    pub fn closure_mask(&self, s: Mask) -> Mask {
        closure_mask(self, s)
    }

    /// First element with rank zero, if any.
    pub fn find_loop(&self) -> Option<&str> {
        (0..self.ground.len())
            .find(|&i| self.rank_mask(1 << i) != 1)
            .map(|i| self.ground[i].as_str())
    }

    /// All flats of rank at most `r`, each with its rank, ordered by size and
    /// then lexicographically by ground index.
    pub fn enumerate_low_rank_flats(&self, r: usize) -> Vec<Flat> {
        enumerate_low_rank_flats(self, r)
            .into_iter()
            .map(|(mask, rank)| Flat {
                members: self.labels_of(mask),
                mask,
                rank,
            })
            .collect()
    }
}

pub fn closure_mask<R: RankFunction + ?Sized>(oracle: &R, s: Mask) -> Mask {
    let base = oracle.rank_mask(s);
    (0..oracle.ground_size())
        .filter(|&x| s >> x & 1 == 1 || oracle.rank_mask(s | 1 << x) == base)
        .fold(0, |acc, x| acc | 1 << x)
}

/// Ascending by cardinality, then lexicographic in sorted index tuples.
pub(crate) fn canonical_mask_cmp(a: Mask, b: Mask) -> std::cmp::Ordering {
    mask_len(a)
        .cmp(&mask_len(b))
        .then_with(|| mask_indices(a).cmp(mask_indices(b)))
}

pub fn enumerate_low_rank_flats<R: RankFunction + ?Sized>(oracle: &R, r: usize) -> Vec<(Mask, usize)> {
    let n = oracle.ground_size();
    let mut flats = BTreeSet::new();
    for size in 0..=r.min(n) {
        for subset in (0..n).combinations(size) {
            let s = subset.iter().fold(0, |acc, &i| acc | 1 << i);
            let c = closure_mask(oracle, s);
            let rank = oracle.rank_mask(c);
            if rank <= r {
                flats.insert(c);
            }
        }
    }
    let mut out: Vec<(Mask, usize)> = flats.into_iter().map(|m| (m, oracle.rank_mask(m))).collect();
    out.sort_by(|a, b| canonical_mask_cmp(a.0, b.0));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flat {
    pub members: Vec<String>,
    #[serde(skip)]
    pub mask: Mask,
    pub rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Normalization,
    Cardinality,
    UnitIncrease,
    Monotonicity,
    Submodularity,
    Loopless,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AxiomReport {
    Pass,
    Violation { axiom: Axiom, witness: Vec<Mask> },
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomReport::Pass)
    }
}

/// Exhaustive check of the rank axioms, one axiom at a time in declaration order.
///
/// Submodularity is checked in its local form
/// `r(S+x) + r(S+y) >= r(S+x+y) + r(S)`, which is equivalent to the global one.
pub fn verify_rank_axioms<R: RankFunction + ?Sized>(oracle: &R, limits: &Limits) -> Result<AxiomReport> {
    let n = oracle.ground_size();
    Limits::check("ground set for axiom checks", limits.max_axiom_ground, n)?;
    let table: Vec<usize> = (0..1u64 << n).map(|s| oracle.rank_mask(s)).collect();
    let r = |s: Mask| table[s as usize];
    let all = 0..1u64 << n;
    let violation = |axiom, witness| Ok(AxiomReport::Violation { axiom, witness });

    if r(0) != 0 {
        return violation(Axiom::Normalization, vec![0]);
    }
    if let Some(s) = all.clone().find(|&s| r(s) > mask_len(s)) {
        return violation(Axiom::Cardinality, vec![s]);
    }
    for s in all.clone() {
        for x in (0..n).filter(|x| s >> x & 1 == 0) {
            let t = s | 1 << x;
            if r(t) > r(s) + 1 {
                return violation(Axiom::UnitIncrease, vec![s, t]);
            }
            if r(t) < r(s) {
                return violation(Axiom::Monotonicity, vec![s, t]);
            }
        }
    }
    for s in all {
        for (x, y) in (0..n).filter(|x| s >> x & 1 == 0).tuple_combinations() {
            let (sx, sy) = (s | 1 << x, s | 1 << y);
            if r(sx) + r(sy) < r(sx | sy) + r(s) {
                return violation(Axiom::Submodularity, vec![sx, sy]);
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| r(1 << x) != 1) {
        return violation(Axiom::Loopless, vec![1 << x]);
    }
    Ok(AxiomReport::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn rank_examples() {
        let p = Matroid::partition(labels("A B C"), vec![0, 0, 1]).unwrap();
        assert_eq!(p.rank(&["A", "B"]).unwrap(), 1);
        let u = Matroid::uniform(labels("A B C"), 2).unwrap();
        assert_eq!(u.rank(&["A", "B", "C"]).unwrap(), 2);
        let base = Matroid::uniform(labels("A B"), 2).unwrap();
        let d = Matroid::doubled(base, labels("A B -A -B"), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(d.rank(&["A", "-A"]).unwrap(), 1);
        assert!(matches!(u.rank(&["Z"]), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn independence_examples() {
        let p = Matroid::partition(labels("A B"), vec![0, 0]).unwrap();
        assert!(p.is_independent::<&str>(&[]).unwrap());
        assert!(!p.is_independent(&["A", "B"]).unwrap());
        let base = Matroid::uniform(labels("P"), 1).unwrap();
        let d = Matroid::doubled(base, labels("P -P"), vec![0, 0]).unwrap();
        assert!(!d.is_independent(&["P", "-P"]).unwrap());
    }

    #[test]
    fn closure_examples() {
        let u = Matroid::uniform(labels("A B C"), 2).unwrap();
        assert_eq!(u.closure(&["A", "B"]).unwrap(), labels("A B C"));
        let p = Matroid::partition(labels("A B"), vec![0, 1]).unwrap();
        assert_eq!(p.closure(&["A"]).unwrap(), labels("A"));
        assert!(p.closure::<&str>(&[]).unwrap().is_empty());
    }

    #[test]
    fn linear_and_explicit_ranks() {
        let cols = vec![
            Point::from_ints(&[1, 0]),
            Point::from_ints(&[2, 0]),
            Point::from_ints(&[0, 1]),
        ];
        let m = Matroid::linear(labels("a b c"), cols).unwrap();
        assert_eq!(m.rank(&["a", "b"]).unwrap(), 1);
        assert_eq!(m.rank(&["a", "b", "c"]).unwrap(), 2);
        let e = Matroid::explicit_bases(
            labels("a b c"),
            &[labels("a c"), labels("b c")],
        )
        .unwrap();
        assert_eq!(e.rank(&["a", "b"]).unwrap(), 1);
        assert_eq!(e.rank(&["a", "c"]).unwrap(), 2);
        assert!(Matroid::explicit_bases(labels("a b c"), &[labels("a"), labels("b c")]).is_err());
        assert!(Matroid::explicit_bases(labels("a b"), &[]).is_err());
    }

    #[test]
    fn loops_are_found() {
        let e = Matroid::explicit_bases(labels("a b c"), &[labels("a b")]).unwrap();
        assert_eq!(e.find_loop(), Some("c"));
        assert_eq!(Matroid::uniform(labels("a"), 1).unwrap().find_loop(), None);
    }

    #[test]
    fn flat_examples() {
        let u = Matroid::uniform(labels("A B C D"), 3).unwrap();
        let flats: Vec<Vec<String>> = u
            .enumerate_low_rank_flats(1)
            .into_iter()
            .map(|f| f.members)
            .collect();
        assert_eq!(
            flats,
            vec![vec![], labels("A"), labels("B"), labels("C"), labels("D")]
        );
        let p = Matroid::partition(labels("A B"), vec![0, 1]).unwrap();
        let flats: Vec<(Vec<String>, usize)> = p
            .enumerate_low_rank_flats(2)
            .into_iter()
            .map(|f| (f.members, f.rank))
            .collect();
        assert_eq!(
            flats,
            vec![
                (vec![], 0),
                (labels("A"), 1),
                (labels("B"), 1),
                (labels("A B"), 2)
            ]
        );
        assert_eq!(u.enumerate_low_rank_flats(0).len(), 1);
    }

    #[test]
    fn axiom_examples() {
        let limits = Limits::default();
        let u = Matroid::uniform(labels("a b c d"), 2).unwrap();
        assert!(verify_rank_axioms(&u, &limits).unwrap().passed());
        let bad = FnRank(4, |s: Mask| mask_len(s) * mask_len(s));
        match verify_rank_axioms(&bad, &limits).unwrap() {
            AxiomReport::Violation { axiom, witness } => {
                assert_eq!(axiom, Axiom::Cardinality);
                assert!(mask_len(witness[0]) >= 2);
            }
            AxiomReport::Pass => panic!("squared cardinality is not a rank function"),
        }
        let big = Matroid::uniform((0..13).map(|i| i.to_string()).collect(), 2).unwrap();
        assert!(matches!(
            verify_rank_axioms(&big, &limits),
            Err(Error::CapExceeded { .. })
        ));
        let lax = Limits {
            max_axiom_ground: 13,
            ..limits
        };
        assert!(verify_rank_axioms(&big, &lax).unwrap().passed());
    }

    #[test]
    fn loop_is_reported_as_axiom_failure() {
        let e = Matroid::explicit_bases(labels("a b c"), &[labels("a b")]).unwrap();
        assert_eq!(
            verify_rank_axioms(&e, &Limits::default()).unwrap(),
            AxiomReport::Violation {
                axiom: Axiom::Loopless,
                witness: vec![0b100]
            }
        );
    }
}
