//! Reduced simplicial homology over the two-element field.

use std::collections::HashMap;

use serde::Serialize;

use super::simplicial::SimplicialComplex;
use crate::limits::Limits;
use crate::Result;

/// Reduced Betti numbers in degrees `0..=up_to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn vanishes(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// Lowest degree with nonzero homology.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|&b| b != 0)
    }
}

/// Rank of a GF(2) matrix given as sparse rows of sorted column indices,
/// by reduction on the largest entry.
fn gf2_rank(rows: Vec<Vec<usize>>) -> usize {
    let mut pivots: HashMap<usize, Vec<usize>> = HashMap::new();
    for mut row in rows {
        while let Some(&low) = row.last() {
            match pivots.get(&low) {
                Some(p) => row = symmetric_difference(&row, p),
                None => {
                    pivots.insert(low, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `β̃_i = dim C_i − rank ∂_i − rank ∂_{i+1}`, where `∂_0` is the augmentation.
pub fn reduced_betti_gf2(complex: &SimplicialComplex, up_to: usize, limits: &Limits) -> Result<BettiVector> {
    Limits::check("complex face count", limits.max_faces, complex.face_count())?;
    // Chain groups in degrees 0..=up_to+1, faces indexed within their degree.
    let groups: Vec<Vec<&Vec<usize>>> = (0..=up_to + 1)
        .map(|k| complex.faces_of_dim(k).collect())
        .collect();
    // boundary_rank[k] = rank of ∂_k : C_k -> C_{k-1}.
    let mut boundary_rank = vec![0usize; up_to + 2];
    boundary_rank[0] = usize::from(!groups[0].is_empty());
    for k in 1..=up_to + 1 {
        let index: HashMap<&Vec<usize>, usize> =
            groups[k - 1].iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let rows: Vec<Vec<usize>> = groups[k]
            .iter()
            .map(|f| {
                let mut row: Vec<usize> = (0..f.len())
                    .map(|skip| {
                        let facet: Vec<usize> =
                            f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                        index[&facet]
                    })
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        boundary_rank[k] = gf2_rank(rows);
    }
    Ok(BettiVector(
        (0..=up_to)
            .map(|k| groups[k].len() - boundary_rank[k] - boundary_rank[k + 1])
            .collect(),
    ))
}
