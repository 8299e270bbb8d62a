use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;

use crate::{Error, Result};

/// A finite abstract simplicial complex over labelled vertices.
///
/// All nonempty faces are stored, sorted, ordered by size and then
/// lexicographically. The empty face is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    faces: Vec<Vec<usize>>,
    z2: Option<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds from an explicit face list, rejecting lists that are not
    /// closed under taking subsets.
    pub fn from_faces(vertices: Vec<String>, faces: impl IntoIterator<Item = Vec<usize>>, z2: Option<Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut f in faces {
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                continue;
            }
            if let Some(&v) = f.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::Invariant(format!("face uses unknown vertex index {v}")));
            }
            set.insert(f);
        }
        for f in &set {
            if f.len() > 1 {
                for facet in f.iter().copied().combinations(f.len() - 1) {
                    if !set.contains(&facet) {
                        return Err(Error::Invariant(format!(
                            "face {f:?} is present but its facet {facet:?} is not"
                        )));
                    }
                }
            }
        }
        Self::assemble(vertices, set, z2)
    }

    /// Builds the downward closure of `maximal`, failing once more than
    /// `max_faces` faces would be produced.
    pub fn from_maximal_faces(
        vertices: Vec<String>,
        maximal: impl IntoIterator<Item = Vec<usize>>,
        z2: Option<Vec<usize>>,
        max_faces: usize,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut f in maximal {
            f.sort_unstable();
            f.dedup();
            for size in 1..=f.len() {
                for sub in f.iter().copied().combinations(size) {
                    set.insert(sub);
                }
            }
            crate::limits::Limits::check("complex face count", max_faces, set.len())?;
        }
        Self::assemble(vertices, set, z2)
    }

    fn assemble(vertices: Vec<String>, set: BTreeSet<Vec<usize>>, z2: Option<Vec<usize>>) -> Result<Self> {
        if let Some(map) = &z2 {
            let n = vertices.len();
            if map.len() != n || map.iter().any(|&j| j >= n) {
                return Err(Error::Invariant("involution does not fit the vertex set".into()));
            }
            if (0..n).any(|i| map[map[i]] != i || map[i] == i) {
                return Err(Error::Invariant("vertex map is not a fixed-point-free involution".into()));
            }
        }
        let mut faces: Vec<Vec<usize>> = set.into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(SimplicialComplex { vertices, faces, z2 })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Nonempty faces, by size then lexicographically.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn involution(&self) -> Option<&[usize]> {
        self.z2.as_deref()
    }

    /// Dimension of the largest face; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.faces.last().map(|f| f.len() - 1)
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter().filter(move |f| f.len() == k + 1)
    }

    pub fn faces_with_labels(&self) -> impl Iterator<Item = Vec<&str>> {
        self.faces
            .iter()
            .map(|f| f.iter().map(|&v| self.vertices[v].as_str()).collect())
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Faces contained in `w`, over the same vertex labels.
    pub fn induced(&self, w: &[usize]) -> Result<SimplicialComplex> {
        if let Some(&v) = w.iter().find(|&&v| v >= self.vertices.len()) {
            return Err(Error::UnknownLabel(format!("vertex #{v}")));
        }
        let keep: HashSet<usize> = w.iter().copied().collect();
        Ok(SimplicialComplex {
            vertices: self.vertices.clone(),
            faces: self
                .faces
                .iter()
                .filter(|f| f.iter().all(|v| keep.contains(v)))
                .cloned()
                .collect(),
            z2: self.z2.clone(),
        })
    }

    pub fn induced_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<SimplicialComplex> {
        let w = labels
            .iter()
            .map(|l| self.vertex_index(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        self.induced(&w)
    }

    /// Whether the involution maps faces to faces and fixes none.
    pub fn check_free_z2(&self) -> Result<bool> {
        let map = self.z2.as_ref().ok_or(Error::MissingInvolution)?;
        let all: HashSet<&Vec<usize>> = self.faces.iter().collect();
        Ok(self.faces.iter().all(|f| {
            let mut img: Vec<usize> = f.iter().map(|&v| map[v]).collect();
            img.sort_unstable();
            img != *f && all.contains(&img)
        }))
    }
}

pub fn induced(complex: &SimplicialComplex, w: &[usize]) -> Result<SimplicialComplex> {
    complex.induced(w)
}

pub fn check_free_z2(complex: &SimplicialComplex) -> Result<bool> {
    complex.check_free_z2()
}
