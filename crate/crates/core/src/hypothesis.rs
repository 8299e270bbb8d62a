//! The transversal hypothesis: condition (∗) on the original family and its
//! linearized form on the doubled family.
//!
//! Both checks enumerate candidate sets in canonical order (by size, then
//! lexicographically by family index) and report the first failure, so the
//! result does not depend on how the work is split across threads.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::{origin_in_hull, vertex_hulls_intersect};
use crate::lifting::{Instance, LiftedInstance};
use crate::limits::Limits;
use crate::matroid::{mask_indices, mask_len, Mask};
use crate::Result;

/// Two disjoint sub-collections with independent union whose hulls are
/// disjoint while their images under φ have meeting hulls.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarViolation {
    pub g1: Vec<String>,
    pub g2: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StarCheck {
    Pass { pairs_checked: usize },
    Violation(StarViolation),
}

impl StarCheck {
    pub fn passed(&self) -> bool {
        matches!(self, StarCheck::Pass { .. })
    }

    pub fn violation(&self) -> Option<&StarViolation> {
        match self {
            StarCheck::Violation(v) => Some(v),
            StarCheck::Pass { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LiftedStarCheck {
    Pass { sets_checked: usize },
    Violation { g: Vec<String> },
}

impl LiftedStarCheck {
    pub fn passed(&self) -> bool {
        matches!(self, LiftedStarCheck::Pass { .. })
    }
}

/// Subsets of `0..n` with at least `min_size` elements, by size then lexicographically.
pub(crate) fn canonical_subsets(n: usize, min_size: usize) -> impl Iterator<Item = Mask> {
    (min_size..=n).flat_map(move |size| {
        (0..n)
            .combinations(size)
            .map(|c| c.into_iter().fold(0, |acc, i| acc | 1 << i))
    })
}

/// Splits `u` into `(g1, g2)` with the lowest element of `u` in `g1`, so each
/// unordered pair appears once.
fn splits(u: Mask) -> impl Iterator<Item = (Mask, Mask)> {
    let low = u & u.wrapping_neg();
    let rest: Vec<usize> = mask_indices(u & !low).collect();
    let r = rest.len();
    canonical_subsets(r, 0)
        .filter(move |&sel| sel != crate::matroid::full_mask(r))
        .map(move |sel| {
            let g1 = mask_indices(sel).fold(low, |acc, j| acc | 1 << rest[j]);
            (g1, u & !g1)
        })
}

pub fn check_star(inst: &Instance, limits: &Limits) -> Result<StarCheck> {
    Limits::check("family size for hypothesis checks", limits.max_family, inst.len())?;
    let unions: Vec<Mask> = canonical_subsets(inst.len(), 2)
        .filter(|&u| inst.matroid.is_independent_mask(u))
        .collect();
    let first = unions.par_iter().find_map_first(|&u| {
        let found = (|| -> Result<Option<StarViolation>> {
            for (g1, g2) in splits(u) {
                let disjoint = !vertex_hulls_intersect(&inst.vertices_of(g1), &inst.vertices_of(g2), inst.d)?;
                if disjoint && vertex_hulls_intersect(&inst.phi_of(g1), &inst.phi_of(g2), inst.k)? {
                    return Ok(Some(StarViolation {
                        g1: inst.ids_of(g1),
                        g2: inst.ids_of(g2),
                        detail: format!(
                            "hulls are disjoint in R^{} but their images meet in R^{}",
                            inst.d, inst.k
                        ),
                    }));
                }
            }
            Ok(None)
        })();
        found.transpose()
    });
    match first {
        Some(v) => Ok(StarCheck::Violation(v?)),
        None => Ok(StarCheck::Pass {
            pairs_checked: unions.iter().map(|&u| (1usize << (mask_len(u) - 1)) - 1).sum(),
        }),
    }
}

pub fn check_star_lifted(lifted: &LiftedInstance, limits: &Limits) -> Result<LiftedStarCheck> {
    Limits::check(
        "doubled family size for hypothesis checks",
        2 * limits.max_family,
        lifted.members.len(),
    )?;
    let n = lifted.n();
    let sets: Vec<Mask> = canonical_subsets(lifted.members.len(), 1)
        .filter(|&g| lifted.matroid.is_independent_mask(g))
        .collect();
    let first = sets.par_iter().find_map_first(|&g| {
        let ok = (|| -> Result<bool> {
            Ok(origin_in_hull(&lifted.vertices_of(g), n)?
                || !origin_in_hull(&lifted.phi_of(g), lifted.k + 1)?)
        })();
        match ok {
            Ok(true) => None,
            Ok(false) => Some(Ok(g)),
            Err(e) => Some(Err(e)),
        }
    });
    match first {
        Some(g) => Ok(LiftedStarCheck::Violation { g: lifted.ids_of(g?) }),
        None => Ok(LiftedStarCheck::Pass { sets_checked: sets.len() }),
    }
}
