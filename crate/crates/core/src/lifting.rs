//! Linearization: the family moves to the hyperplane `x_{d+1} = 1`, gets
//! doubled by reflection through the origin, and the matroid and the map φ are
//! extended equivariantly.

use std::collections::BTreeSet;
use std::ops::Range;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geometry::{origin_in_hull, vertex_hulls_intersect, Point, Polytope, Rational};
use crate::matroid::{full_mask, mask_indices, Mask, Matroid, RankFunction};
use crate::{Error, Result};

/// Ids of reflected members are the original id behind this prefix; user ids
/// may not start with it.
pub const REFLECTION_PREFIX: &str = "-";

/// A family in R^d with a matroid on it and a map φ into R^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub d: usize,
    pub k: usize,
    pub family: Vec<Polytope>,
    pub matroid: Matroid,
    /// `phi[i]` is the image of `family[i]`.
    pub phi: Vec<Point>,
}

impl Instance {
    pub fn new(
        d: usize,
        k: usize,
        family: Vec<Polytope>,
        matroid: Matroid,
        phi: Vec<Point>,
    ) -> Result<Self> {
        let inst = Instance {
            d,
            k,
            family,
            matroid,
            phi,
        };
        inst.validate()?;
        Ok(inst)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInstance(m));
        if self.k >= self.d {
            return bad(format!("need 0 <= k < d, got k = {}, d = {}", self.k, self.d));
        }
        let mut seen = BTreeSet::new();
        for p in &self.family {
            if !seen.insert(p.id.as_str()) {
                return bad(format!("duplicate id `{}`", p.id));
            }
            if p.id.starts_with(REFLECTION_PREFIX) {
                return bad(format!(
                    "id `{}` starts with the reserved prefix `{REFLECTION_PREFIX}`",
                    p.id
                ));
            }
            if p.vertices.is_empty() {
                return bad(format!("`{}` has no vertices", p.id));
            }
            if let Some(v) = p.vertices.iter().find(|v| v.dim() != self.d) {
                return bad(format!("`{}` has a vertex of dimension {}, expected {}", p.id, v.dim(), self.d));
            }
        }
        if self.phi.len() != self.family.len() {
            return bad("phi must give one image per member".into());
        }
        for (p, img) in self.family.iter().zip(&self.phi) {
            if img.dim() != self.k {
                return bad(format!("phi(`{}`) has dimension {}, expected {}", p.id, img.dim(), self.k));
            }
        }
        let ids: Vec<&str> = self.ids().collect();
        if self.matroid.ground().iter().map(String::as_str).ne(ids.iter().copied()) {
            return bad("matroid ground set must list the family ids in family order".into());
        }
        if self.family.len() > 32 {
            return Err(Error::CapExceeded {
                what: "family size",
                limit: 32,
                actual: self.family.len(),
            });
        }
        if let Some(l) = self.matroid.find_loop() {
            return Err(Error::InvalidMatroid(format!("`{l}` is a loop (rank 0); matroids must be loopless")));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.family.iter().map(|p| p.id.as_str())
    }

    pub fn mask_of<S: AsRef<str>>(&self, ids: &[S]) -> Result<Mask> {
        self.matroid.mask_of(ids)
    }

    pub fn ids_of(&self, m: Mask) -> Vec<String> {
        self.matroid.labels_of(m)
    }

    pub fn full(&self) -> Mask {
        full_mask(self.family.len())
    }

    pub fn rank(&self, m: Mask) -> usize {
        self.matroid.rank_mask(m)
    }

    /// Merged vertex list of the selected members.
    pub fn vertices_of(&self, m: Mask) -> Vec<Point> {
        mask_indices(m)
            .flat_map(|i| self.family[i].vertices.iter().cloned())
            .collect()
    }

    pub fn phi_of(&self, m: Mask) -> Vec<Point> {
        mask_indices(m).map(|i| self.phi[i].clone()).collect()
    }
}

/// The doubled instance in R^{d+1}: members `0..m` are the lifted originals,
/// members `m..2m` their reflections, in the same order.
#[derive(Debug, Clone)]
pub struct LiftedInstance {
    pub d: usize,
    pub k: usize,
    pub members: Vec<Polytope>,
    pub matroid: Matroid,
    pub phi: Vec<Point>,
    /// Every vertex of every member: originals in family and vertex order,
    /// then reflections.
    pub pool: Vec<Point>,
    /// Pool positions of each member's vertices.
    pub member_vertices: Vec<Range<usize>>,
}

impl LiftedInstance {
    pub fn n(&self) -> usize {
        self.d + 1
    }

    pub fn originals(&self) -> usize {
        self.members.len() / 2
    }

    pub fn partner(&self, i: usize) -> usize {
        let m = self.originals();
        if i < m {
            i + m
        } else {
            i - m
        }
    }

    pub fn negate_mask(&self, g: Mask) -> Mask {
        mask_indices(g).fold(0, |acc, i| acc | 1 << self.partner(i))
    }

    /// `G̃`: the originals that appear in `g` themselves or through their reflection.
    pub fn fold(&self, g: Mask) -> Mask {
        let m = self.originals();
        mask_indices(g).fold(0, |acc, i| acc | 1 << (i % m.max(1)))
    }

    pub fn full(&self) -> Mask {
        full_mask(self.members.len())
    }

    pub fn rank(&self, g: Mask) -> usize {
        self.matroid.rank_mask(g)
    }

    pub fn ids_of(&self, g: Mask) -> Vec<String> {
        self.matroid.labels_of(g)
    }

    pub fn vertices_of(&self, g: Mask) -> Vec<Point> {
        mask_indices(g)
            .flat_map(|i| self.members[i].vertices.iter().cloned())
            .collect()
    }

    pub fn phi_of(&self, g: Mask) -> Vec<Point> {
        mask_indices(g).map(|i| self.phi[i].clone()).collect()
    }
}

pub fn reflection_id(id: &str) -> String {
    format!("{REFLECTION_PREFIX}{id}")
}

pub fn lift_instance(inst: &Instance) -> Result<LiftedInstance> {
    let m = inst.len();
    let one = Rational::one();
    let mut members: Vec<Polytope> = inst
        .family
        .iter()
        .map(|p| Polytope {
            id: p.id.clone(),
            vertices: p.vertices.iter().map(|v| v.extended(one.clone())).collect(),
        })
        .collect();
    let reflections: Vec<Polytope> = members
        .iter()
        .map(|p| p.reflected(reflection_id(&p.id)))
        .collect();
    members.extend(reflections);

    let ground: Vec<String> = members.iter().map(|p| p.id.clone()).collect();
    if ground.iter().collect::<BTreeSet<_>>().len() != ground.len() {
        return Err(Error::InvalidInstance("ids collide after adding reflection prefixes".into()));
    }
    let fold: Vec<usize> = (0..2 * m).map(|i| i % m.max(1)).collect();
    let matroid = Matroid::doubled(inst.matroid.clone(), ground, fold)?;

    let mut phi: Vec<Point> = inst.phi.iter().map(|p| p.extended(one.clone())).collect();
    let reflected: Vec<Point> = phi.iter().map(|p| -p).collect();
    phi.extend(reflected);

    let mut pool = Vec::new();
    let mut member_vertices = Vec::with_capacity(2 * m);
    for p in &members {
        let start = pool.len();
        pool.extend(p.vertices.iter().cloned());
        member_vertices.push(start..pool.len());
    }
    if let Some(i) = pool.iter().position(Point::is_zero) {
        return Err(Error::Invariant(format!("lifted vertex {i} is zero")));
    }
    Ok(LiftedInstance {
        d: inst.d,
        k: inst.k,
        members,
        matroid,
        phi,
        pool,
        member_vertices,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceAudit {
    pub pairs_checked: usize,
    pub exhaustive: bool,
    /// `(A, B)` where the two sides disagreed.
    pub counterexample: Option<(Vec<String>, Vec<String>)>,
}

impl EquivalenceAudit {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `conv A ∩ conv B ≠ ∅ ⟺ 0 ∈ conv(A ∪ −B)` on lifted positive-side
/// sub-collections. All pairs are checked when there are at most 1024 of them,
/// otherwise `trials` seeded samples.
pub fn disjointness_equivalence_audit(inst: &Instance, trials: usize, seed: u64) -> Result<EquivalenceAudit> {
    let lifted = lift_instance(inst)?;
    let m = inst.len();
    let n = lifted.n();
    let nonempty = full_mask(m);
    let check = |a: Mask, b: Mask| -> Result<bool> {
        let va = lifted.vertices_of(a);
        let vb = lifted.vertices_of(b);
        let meet = vertex_hulls_intersect(&va, &vb, n)?;
        let mut merged = va;
        merged.extend(vb.iter().map(|v| -v));
        Ok(meet == origin_in_hull(&merged, n)?)
    };
    let mut audit = EquivalenceAudit {
        pairs_checked: 0,
        exhaustive: false,
        counterexample: None,
    };
    if m == 0 {
        audit.exhaustive = true;
        return Ok(audit);
    }
    let exhaustive = m <= 5;
    let pairs: Vec<(Mask, Mask)> = if exhaustive {
        (1..=nonempty)
            .flat_map(|a| (1..=nonempty).map(move |b| (a, b)))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..trials)
            .map(|_| (rng.random_range(1..=nonempty), rng.random_range(1..=nonempty)))
            .collect()
    };
    audit.exhaustive = exhaustive;
    for (a, b) in pairs {
        audit.pairs_checked += 1;
        if !check(a, b)? {
            audit.counterexample = Some((inst.ids_of(a), inst.ids_of(b)));
            break;
        }
    }
    Ok(audit)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::geometry::rational::int;

    pub(crate) fn points_instance(coords: &[&[i64]], phi: &[&[i64]], d: usize, k: usize, rank: usize) -> Instance {
        let ids: Vec<String> = (0..coords.len()).map(|i| format!("P{i}")).collect();
        let family = coords
            .iter()
            .zip(&ids)
            .map(|(c, id)| Polytope::new(id.clone(), vec![Point::from_ints(c)]).unwrap())
            .collect();
        let phi = phi.iter().map(|c| Point::from_ints(c)).collect();
        Instance::new(d, k, family, Matroid::uniform(ids, rank).unwrap(), phi).unwrap()
    }

    #[test]
    fn lifts_a_point() {
        let inst = points_instance(&[&[2]], &[&[]], 1, 0, 1);
        let l = lift_instance(&inst).unwrap();
        assert_eq!(l.members[0].vertices, vec![Point::from_ints(&[2, 1])]);
        assert_eq!(l.members[1].vertices, vec![Point::from_ints(&[-2, -1])]);
        assert_eq!(l.members[1].id, "-P0");
    }

    #[test]
    fn lifts_phi_equivariantly() {
        let inst = points_instance(&[&[0, 0]], &[&[3]], 2, 1, 1);
        let l = lift_instance(&inst).unwrap();
        assert_eq!(l.phi[0], Point::from_ints(&[3, 1]));
        assert_eq!(l.phi[1], Point::from_ints(&[-3, -1]));
    }

    #[test]
    fn counts_double() {
        let inst = points_instance(&[&[0, 0], &[1, 0], &[0, 1]], &[&[0], &[1], &[2]], 2, 1, 2);
        let l = lift_instance(&inst).unwrap();
        assert_eq!(l.members.len(), 6);
        assert_eq!(l.matroid.ground().len(), 6);
        assert_eq!((0..6).filter(|&i| l.partner(i) > i).count(), 3);
        assert!((0..6).all(|i| l.partner(i) != i && l.partner(l.partner(i)) == i));
        assert_eq!(l.pool.len(), 6);
        for (i, v) in l.pool.iter().enumerate() {
            assert_eq!(v[2], if i < 3 { int(1) } else { int(-1) });
        }
    }

    #[test]
    fn rejects_bad_instances() {
        let p = |id: &str| Polytope::new(id, vec![Point::from_ints(&[0, 0])]).unwrap();
        let u = |ids: &[&str], r| Matroid::uniform(ids.iter().map(|s| s.to_string()).collect(), r).unwrap();
        let phi = vec![Point::from_ints(&[0])];
        assert!(Instance::new(1, 1, vec![], u(&[], 0), vec![]).is_err());
        assert!(Instance::new(2, 1, vec![p("-A")], u(&["-A"], 1), phi.clone()).is_err());
        assert!(Instance::new(2, 1, vec![p("A")], u(&["A"], 0), phi.clone()).is_err());
        assert!(Instance::new(2, 1, vec![p("A")], u(&["B"], 1), phi.clone()).is_err());
        assert!(Instance::new(2, 1, vec![p("A"), p("A")], u(&["A", "B"], 1), vec![phi[0].clone(); 2]).is_err());
        assert!(Instance::new(2, 1, vec![p("A")], u(&["A"], 1), vec![Point::from_ints(&[0, 0])]).is_err());
        assert!(Instance::new(2, 1, vec![p("A")], u(&["A"], 1), phi).is_ok());
    }

    #[test]
    fn equivalence_on_identical_and_disjoint() {
        let same = points_instance(&[&[1, 1]], &[&[0]], 2, 1, 1);
        let audit = disjointness_equivalence_audit(&same, 0, 0).unwrap();
        assert!(audit.passed() && audit.exhaustive);
        let seg = |id: &str, a: i64, b: i64| {
            Polytope::new(id, vec![Point::from_ints(&[a]), Point::from_ints(&[b])]).unwrap()
        };
        let inst = Instance::new(
            1,
            0,
            vec![seg("A", 0, 1), seg("B", 2, 3)],
            Matroid::uniform(vec!["A".into(), "B".into()], 2).unwrap(),
            vec![Point::zero(0), Point::zero(0)],
        )
        .unwrap();
        let l = lift_instance(&inst).unwrap();
        let (a, b) = (l.vertices_of(1), l.vertices_of(2));
        assert!(!vertex_hulls_intersect(&a, &b, 2).unwrap());
        let mut merged = a;
        merged.extend(b.iter().map(|v| -v));
        assert!(!origin_in_hull(&merged, 2).unwrap());
        assert!(disjointness_equivalence_audit(&inst, 0, 0).unwrap().passed());
    }
}
