//! The JSON instance file. Scalars are rational strings; maps are ordered so
//! serialization is canonical.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::geometry::{format_rational, parse_rational, Point, Polytope};
use crate::lifting::{Instance, REFLECTION_PREFIX};
use crate::limits::Limits;
use crate::matroid::{mask_indices, verify_rank_axioms, AxiomReport, Matroid, MatroidKind};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetEntry {
    pub id: String,
    pub vertices: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatroidSpec {
    Partition { classes: BTreeMap<String, usize> },
    Uniform { rank: usize },
    Linear { columns: BTreeMap<String, Vec<String>> },
    ExplicitBases { bases: Vec<Vec<String>> },
}

/// The on-disk form of an [`Instance`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub d: usize,
    pub k: usize,
    pub sets: Vec<SetEntry>,
    pub matroid: MatroidSpec,
    pub phi: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

fn point_strings(p: &Point) -> Vec<String> {
    p.coords().iter().map(format_rational).collect()
}

fn parse_point(coords: &[String], dim: usize, path: &str) -> Result<Point> {
    if coords.len() != dim {
        return Err(Error::parse(
            path,
            format!("expected {dim} coordinates, found {}", coords.len()),
        ));
    }
    coords
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| Error::parse(format!("{path}[{i}]"), e.to_string())))
        .collect::<Result<Vec<_>>>()
        .map(Point::new)
}

fn keyed_by_ids<'a, T>(map: &'a BTreeMap<String, T>, ids: &[String], path: &str) -> Result<Vec<&'a T>> {
    if let Some(extra) = map.keys().find(|key| !ids.contains(key)) {
        return Err(Error::parse(format!("{path}.{extra}"), format!("unknown id \"{extra}\"")));
    }
    ids.iter()
        .map(|id| {
            map.get(id)
                .ok_or_else(|| Error::parse(path, format!("missing entry for \"{id}\"")))
        })
        .collect()
}

impl MatroidSpec {
    /// Builds the oracle over `ids`, checking the axioms of explicit oracles.
    pub fn build(&self, ids: &[String], limits: &Limits) -> Result<Matroid> {
        let path = "matroid";
        let ground = ids.to_vec();
        let invalid = |e: Error| Error::parse(path, e.to_string());
        match self {
            MatroidSpec::Partition { classes } => {
                let classes = keyed_by_ids(classes, ids, "matroid.classes")?;
                Matroid::partition(ground, classes.into_iter().copied().collect()).map_err(invalid)
            }
            MatroidSpec::Uniform { rank } => Matroid::uniform(ground, *rank).map_err(invalid),
            MatroidSpec::Linear { columns } => {
                let raw = keyed_by_ids(columns, ids, "matroid.columns")?;
                let dim = raw.first().map_or(0, |c| c.len());
                let cols = raw
                    .iter()
                    .zip(ids)
                    .map(|(c, id)| parse_point(c, dim, &format!("matroid.columns.{id}")))
                    .collect::<Result<Vec<_>>>()?;
                Matroid::linear(ground, cols).map_err(invalid)
            }
            MatroidSpec::ExplicitBases { bases } => {
                for (i, b) in bases.iter().enumerate() {
                    if let Some(l) = b.iter().find(|l| !ids.contains(l)) {
                        return Err(Error::parse(format!("matroid.bases[{i}]"), format!("unknown id \"{l}\"")));
                    }
                }
                let m = Matroid::explicit_bases(ground, bases).map_err(invalid)?;
                if m.ground().len() <= limits.max_axiom_ground {
                    if let AxiomReport::Violation { axiom, .. } = verify_rank_axioms(&m, limits)? {
                        return Err(Error::parse(path, format!("rank axiom {axiom:?} fails for these bases")));
                    }
                }
                Ok(m)
            }
        }
    }

    /// The specification of a loaded oracle; doubled oracles have none.
    pub fn of(m: &Matroid) -> Result<MatroidSpec> {
        let ground = m.ground();
        Ok(match m.kind() {
            MatroidKind::Partition { classes, .. } => MatroidSpec::Partition {
                classes: ground.iter().cloned().zip(classes.iter().copied()).collect(),
            },
            MatroidKind::Uniform { rank } => MatroidSpec::Uniform { rank: *rank },
            MatroidKind::Linear { columns } => MatroidSpec::Linear {
                columns: ground.iter().cloned().zip(columns.iter().map(point_strings)).collect(),
            },
            MatroidKind::ExplicitBases { bases } => MatroidSpec::ExplicitBases {
                bases: bases.iter().map(|&b| mask_indices(b).map(|i| ground[i].clone()).collect()).collect(),
            },
            MatroidKind::Doubled { .. } => {
                return Err(Error::InvalidMatroid("doubled matroids are derived, not stored".into()))
            }
        })
    }
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance, meta: Option<Meta>) -> Result<Self> {
        Ok(InstanceFile {
            d: inst.d,
            k: inst.k,
            sets: inst
                .family
                .iter()
                .map(|p| SetEntry {
                    id: p.id.clone(),
                    vertices: p.vertices.iter().map(point_strings).collect(),
                })
                .collect(),
            matroid: MatroidSpec::of(&inst.matroid)?,
            phi: inst
                .family
                .iter()
                .zip(&inst.phi)
                .map(|(p, img)| (p.id.clone(), point_strings(img)))
                .collect(),
            meta,
        })
    }

    pub fn to_instance(&self, limits: &Limits) -> Result<Instance> {
        if self.d == 0 {
            return Err(Error::parse("d", "dimension must be positive"));
        }
        if self.k >= self.d {
            return Err(Error::parse("k", format!("k = {} must be less than d = {}", self.k, self.d)));
        }
        let mut seen = BTreeSet::new();
        let mut family = Vec::with_capacity(self.sets.len());
        for (i, set) in self.sets.iter().enumerate() {
            let path = format!("sets[{i}]");
            if set.id.is_empty() {
                return Err(Error::parse(format!("{path}.id"), "empty id"));
            }
            if set.id.starts_with(REFLECTION_PREFIX) {
                return Err(Error::parse(
                    format!("{path}.id"),
                    format!("id \"{}\" starts with the reserved prefix \"{REFLECTION_PREFIX}\"", set.id),
                ));
            }
            if !seen.insert(set.id.as_str()) {
                return Err(Error::parse(format!("{path}.id"), format!("duplicate id \"{}\"", set.id)));
            }
            if set.vertices.is_empty() {
                return Err(Error::parse(format!("{path}.vertices"), "a set needs at least one vertex"));
            }
            let vertices = set
                .vertices
                .iter()
                .enumerate()
                .map(|(j, v)| parse_point(v, self.d, &format!("{path}.vertices[{j}]")))
                .collect::<Result<Vec<_>>>()?;
            family.push(Polytope::new(set.id.clone(), vertices)?);
        }
        let ids: Vec<String> = family.iter().map(|p| p.id.clone()).collect();
        let phi = keyed_by_ids(&self.phi, &ids, "phi")?
            .into_iter()
            .zip(&ids)
            .map(|(img, id)| parse_point(img, self.k, &format!("phi.{id}")))
            .collect::<Result<Vec<_>>>()?;
        let matroid = self.matroid.build(&ids, limits)?;
        if let Some(l) = matroid.find_loop() {
            return Err(Error::parse("matroid", format!("\"{l}\" is a loop; matroids must be loopless")));
        }
        Instance::new(self.d, self.k, family, matroid, phi)
    }
}

fn json_error(e: serde_path_to_error::Error<serde_json::Error>) -> Error {
    let path = e.path().to_string();
    let inner = e.into_inner();
    Error::parse(if path == "." { "$".to_string() } else { path }, inner.to_string())
}

pub fn parse_instance_file(bytes: &[u8], limits: &Limits) -> Result<(Instance, Option<Meta>)> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    let file: InstanceFile = serde_path_to_error::deserialize(de).map_err(json_error)?;
    let inst = file.to_instance(limits)?;
    Ok((inst, file.meta))
}

pub fn parse_instance(bytes: &[u8]) -> Result<Instance> {
    parse_instance_file(bytes, &Limits::default()).map(|(inst, _)| inst)
}

/// Canonical pretty-printed JSON, newline-terminated.
pub fn serialize_instance(inst: &Instance, meta: Option<Meta>) -> Result<String> {
    let file = InstanceFile::from_instance(inst, meta)?;
    let mut s = serde_json::to_string_pretty(&file).map_err(|e| Error::Invariant(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
