//! The end-to-end check: certify the hypothesis, then find the subfamily and
//! hyperplane the conclusion promises. Also the colorful reading for partition
//! matroids and the audit of the proof's combinatorial objects.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::geometry::{sign_vector, Point, Polytope};
use crate::hypothesis::{check_star, StarCheck, StarViolation};
use crate::lifting::{Instance, LiftedInstance};
use crate::limits::Limits;
use crate::matroid::{mask_indices, Flat, Mask, Matroid, MatroidKind};
use crate::topology::{barycentric_skeleton, build_k, reduced_betti_gf2, BettiVector, SimplicialComplex};
use crate::transversal::covectors::subfamily_of_signs;
use crate::transversal::{enumerate_covectors, essentializing_vectors, find_affine_transversal_mask, Hyperplane};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub g: Vec<String>,
    pub complement_flat: Flat,
    pub hyperplane: Hyperplane,
    /// Set when `g` is empty and the hyperplane holds vacuously.
    pub vacuous: bool,
    #[serde(skip)]
    pub g_mask: Mask,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum VerificationResult {
    HypothesisFailed { violation: StarViolation },
    Witness(Witness),
    TheoremViolated { digest: String, flats_examined: usize },
}

impl VerificationResult {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            VerificationResult::Witness(w) => Some(w),
            _ => None,
        }
    }

    /// CLI exit code for this outcome.
    pub fn exit_code(&self) -> i32 {
        match self {
            VerificationResult::Witness(_) => 0,
            VerificationResult::HypothesisFailed { .. } => 3,
            VerificationResult::TheoremViolated { .. } => 4,
        }
    }
}

/// Hex SHA-256 of the canonical instance file.
pub fn instance_digest(inst: &Instance) -> Result<String> {
    let bytes = crate::io::serialize_instance(inst, None)?;
    Ok(Sha256::digest(bytes.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect())
}

fn checked_witness(inst: &Instance, g: Mask, flat: Flat, hyperplane: Hyperplane) -> Result<Witness> {
    let rest = inst.full() & !g;
    if inst.rank(rest) > inst.k + 1 || rest != flat.mask {
        return Err(Error::Invariant("witness complement is not the reported low-rank flat".into()));
    }
    if !hyperplane.meets_all(mask_indices(g).map(|i| &inst.family[i])) {
        return Err(Error::Invariant("witness hyperplane misses a member of G".into()));
    }
    Ok(Witness {
        g: inst.ids_of(g),
        complement_flat: flat,
        vacuous: g == 0,
        hyperplane,
        g_mask: g,
    })
}

pub fn verify_theorem(inst: &Instance, limits: &Limits) -> Result<VerificationResult> {
    if let StarCheck::Violation(violation) = check_star(inst, limits)? {
        return Ok(VerificationResult::HypothesisFailed { violation });
    }
    let full = inst.full();
    let bound = inst.k + 1;
    let total_rank = inst.rank(full);
    if total_rank <= bound {
        let flat = Flat {
            members: inst.ids_of(full),
            mask: full,
            rank: total_rank,
        };
        let w = checked_witness(inst, 0, flat, Hyperplane::coordinate(inst.d))?;
        return Ok(VerificationResult::Witness(w));
    }
    // Ordered by flat size, so the first hit has the largest G.
    let flats = inst.matroid.enumerate_low_rank_flats(bound);
    let found = flats.par_iter().find_map_first(|flat| {
        let g = full & !flat.mask;
        match find_affine_transversal_mask(inst, g) {
            Ok(Some(h)) => Some(checked_witness(inst, g, flat.clone(), h)),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        }
    });
    match found {
        Some(w) => Ok(VerificationResult::Witness(w?)),
        None => Ok(VerificationResult::TheoremViolated {
            digest: instance_digest(inst)?,
            flats_examined: flats.len(),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColorClass {
    /// Class value as written in the matroid specification.
    pub class: usize,
    pub members: Vec<String>,
}

/// For a partition matroid with `k + 2` nonempty classes, a class contained in
/// the witness subfamily. The hyperplane is re-checked against that class.
pub fn colorful_interpret(inst: &Instance, w: &Witness) -> Result<ColorClass> {
    let MatroidKind::Partition { classes, .. } = inst.matroid.kind() else {
        return Err(Error::InvalidMatroid("colorful reading needs a partition matroid".into()));
    };
    let mut by_class: BTreeMap<usize, Mask> = BTreeMap::new();
    for (i, &c) in classes.iter().enumerate() {
        *by_class.entry(c).or_default() |= 1 << i;
    }
    if by_class.len() != inst.k + 2 {
        return Err(Error::InvalidMatroid(format!(
            "colorful reading needs exactly k + 2 = {} classes, found {}",
            inst.k + 2,
            by_class.len()
        )));
    }
    let (class, members) = by_class
        .iter()
        .find(|(_, &m)| m & !w.g_mask == 0)
        .ok_or_else(|| Error::Invariant("no color class lies inside the witness subfamily".into()))?;
    if !w.hyperplane.meets_all(mask_indices(*members).map(|i| &inst.family[i])) {
        return Err(Error::Invariant("witness hyperplane misses a member of the color class".into()));
    }
    Ok(ColorClass {
        class: *class,
        members: inst.ids_of(*members),
    })
}

/// `k + 2` relabelled copies of the family, colored by copy.
pub fn replicate_classic(family: &[Polytope], phi: &[Point], d: usize, k: usize) -> Result<Instance> {
    let copies = k + 2;
    let mut members = Vec::with_capacity(family.len() * copies);
    let mut images = Vec::with_capacity(family.len() * copies);
    let mut classes = Vec::with_capacity(family.len() * copies);
    for c in 0..copies {
        for (p, img) in family.iter().zip(phi) {
            members.push(Polytope {
                id: format!("{}#{c}", p.id),
                vertices: p.vertices.clone(),
            });
            images.push(img.clone());
            classes.push(c);
        }
    }
    let ids = members.iter().map(|p| p.id.clone()).collect();
    Instance::new(d, k, members, Matroid::partition(ids, classes)?, images)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl AuditCheck {
    fn new(name: &'static str, failure: Option<String>) -> Self {
        AuditCheck {
            name,
            passed: failure.is_none(),
            detail: failure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub covectors: usize,
    /// Auxiliary coordinate hyperplanes added because the pool did not span.
    pub auxiliary_vectors: usize,
    /// Covectors whose subfamily has doubled rank at most `k + 1`; the rank
    /// bound of the argument does not apply to them.
    pub low_rank_covectors: usize,
    pub checks: Vec<AuditCheck>,
    pub note: &'static str,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

const PROXY_NOTE: &str =
    "homology checks are a proxy (necessary condition): vanishing GF(2) homology does not prove k-connectedness";

/// Reduced homology of `complex` must vanish in degrees `0..=k`.
pub fn connectivity_check(
    name: &'static str,
    complex: &SimplicialComplex,
    k: usize,
    limits: &Limits,
) -> Result<(AuditCheck, BettiVector)> {
    let betti = reduced_betti_gf2(complex, k, limits)?;
    let failure = betti
        .first_nonzero()
        .map(|deg| format!("reduced Betti numbers {:?}: degree {deg} is nonzero", betti.0));
    Ok((AuditCheck::new(name, failure), betti))
}

pub fn audit(lifted: &LiftedInstance, limits: &Limits) -> Result<AuditReport> {
    let k = lifted.k;
    let n = lifted.n();
    let mut checks = Vec::new();

    // Construction rejects a face set that is not closed under subsets.
    let complex_k = build_k(lifted, limits)?;
    checks.push(AuditCheck::new("k_downward_closed", None));
    let free = complex_k.check_free_z2()?;
    checks.push(AuditCheck::new(
        "k_free_z2",
        (!free).then(|| "some face of K is fixed or not mapped to a face".to_string()),
    ));

    if lifted.pool.is_empty() {
        return Ok(AuditReport {
            covectors: 0,
            auxiliary_vectors: 0,
            low_rank_covectors: 0,
            checks,
            note: PROXY_NOTE,
        });
    }

    let aux = essentializing_vectors(&lifted.pool, n)?;
    let mut pool = lifted.pool.clone();
    pool.extend(aux.iter().cloned());
    let cells = enumerate_covectors(&pool, n, limits)?;

    let unsound = cells
        .covectors
        .iter()
        .find(|c| sign_vector(&c.witness, &pool).map_or(true, |s| s != c.signs));
    checks.push(AuditCheck::new(
        "cell_witnesses",
        unsound.map(|c| format!("witness {} does not realize {}", c.witness, c.signs)),
    ));
    let open = cells.covectors.iter().find(|c| !cells.contains(&c.signs.negated()));
    checks.push(AuditCheck::new(
        "cell_antipodal_closure",
        open.map(|c| format!("{} has no antipode", c.signs)),
    ));
    let chi = cells.euler_characteristic();
    let sphere = if lifted.d % 2 == 0 { 2 } else { 0 };
    checks.push(AuditCheck::new(
        "cell_euler_characteristic",
        (chi != sphere).then(|| format!("Euler characteristic {chi}, sphere has {sphere}")),
    ));

    let families: Vec<Mask> = cells
        .covectors
        .iter()
        .map(|c| subfamily_of_signs(&c.signs, lifted))
        .collect();

    let asymmetric = (0..cells.len()).find(|&i| families[cells.antipode(i)] != lifted.negate_mask(families[i]));
    checks.push(AuditCheck::new(
        "subfamily_antipodal",
        asymmetric.map(|i| format!("F(-s) != -F(s) at s = {}", cells.covectors[i].signs)),
    ));

    let mut monotone_failure = None;
    'outer: for i in 0..cells.len() {
        for j in 0..cells.len() {
            if i != j && cells.is_face(i, j) && families[i] & !families[j] != 0 {
                monotone_failure = Some(format!(
                    "{} is a face of {} but its subfamily is larger",
                    cells.covectors[i].signs, cells.covectors[j].signs
                ));
                break 'outer;
            }
        }
    }
    checks.push(AuditCheck::new("subfamily_monotone", monotone_failure));

    let rank_gap = (0..cells.len()).find(|&i| {
        let own = families[i];
        lifted.rank(own) != lifted.rank(own | families[cells.antipode(i)])
    });
    checks.push(AuditCheck::new(
        "subfamily_rank_equality",
        rank_gap.map(|i| format!("rank changes under symmetrization at {}", cells.covectors[i].signs)),
    ));

    let mut low_rank = 0;
    let mut cache: HashMap<Mask, Option<String>> = HashMap::new();
    let mut homology_failure = None;
    for (i, &fam) in families.iter().enumerate() {
        if lifted.rank(fam) <= k + 1 {
            low_rank += 1;
            continue;
        }
        let verdict = match cache.get(&fam) {
            Some(v) => v.clone(),
            None => {
                let w: Vec<usize> = mask_indices(fam).collect();
                let (check, _) = connectivity_check("k_subfamily_homology", &complex_k.induced(&w)?, k, limits)?;
                cache.insert(fam, check.detail.clone());
                check.detail
            }
        };
        if let Some(d) = verdict {
            homology_failure = Some(format!("K[F({})]: {d}", cells.covectors[i].signs));
            break;
        }
    }
    checks.push(AuditCheck::new("k_subfamily_homology", homology_failure));

    let (complex_l, _) = barycentric_skeleton(&cells, k + 1, limits)?;
    let (l_check, _) = connectivity_check("l_homology", &complex_l, k, limits)?;
    checks.push(l_check);
    let l_free = complex_l.check_free_z2()?;
    checks.push(AuditCheck::new(
        "l_free_z2",
        (!l_free).then(|| "negation fixes or breaks a chain of L".to_string()),
    ));

    Ok(AuditReport {
        covectors: cells.len(),
        auxiliary_vectors: aux.len(),
        low_rank_covectors: low_rank,
        checks,
        note: PROXY_NOTE,
    })
}
