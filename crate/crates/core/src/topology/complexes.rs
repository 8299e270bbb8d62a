//! The two complexes of the topological argument: `K` on the doubled family
//! and `L`, the low skeleton of the barycentric subdivision of the cell
//! decomposition.

use super::simplicial::SimplicialComplex;
use crate::geometry::origin_in_hull;
use crate::lifting::LiftedInstance;
use crate::limits::Limits;
use crate::matroid::{mask_indices, Mask};
use crate::transversal::CellComplex;
use crate::{Error, Result};

/// `K`: independent sub-collections of the doubled family whose vertices do
/// not have the origin in their hull; the involution is `P ↔ −P`.
pub fn build_k(lifted: &LiftedInstance, limits: &Limits) -> Result<SimplicialComplex> {
    let total = lifted.members.len();
    Limits::check("doubled family size", 2 * limits.max_family, total)?;
    let n = lifted.n();
    let mut faces: Vec<Mask> = Vec::new();
    // Both conditions pass to subsets, so growing faces by larger indices only
    // reaches every face exactly once.
    let mut stack: Vec<(Mask, usize)> = vec![(0, 0)];
    while let Some((face, next)) = stack.pop() {
        for i in next..total {
            let g = face | 1 << i;
            if !lifted.matroid.is_independent_mask(g) || origin_in_hull(&lifted.vertices_of(g), n)? {
                continue;
            }
            faces.push(g);
            Limits::check("complex face count", limits.max_faces, faces.len())?;
            stack.push((g, i + 1));
        }
    }
    let vertices = lifted.members.iter().map(|p| p.id.clone()).collect();
    let z2 = (0..total).map(|i| lifted.partner(i)).collect();
    SimplicialComplex::from_faces(
        vertices,
        faces.into_iter().map(|g| mask_indices(g).collect()),
        Some(z2),
    )
}

/// A vertex of `L`: a covector, and which antipodal copy when the covector
/// stands for two cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellInstance {
    pub covector: usize,
    pub copy: usize,
}

/// Chains `σ_0 < σ_1 < … < σ_j` of cells with `j <= m`, as a simplicial
/// complex whose vertices are the cells and whose involution is negation.
pub fn barycentric_skeleton(cells: &CellComplex, m: usize, limits: &Limits) -> Result<(SimplicialComplex, Vec<CellInstance>)> {
    let mut instances = Vec::new();
    let mut labels = Vec::new();
    for (i, c) in cells.covectors.iter().enumerate() {
        if c.signs.is_all_zero() && cells.lineality > 1 {
            return Err(Error::NonRegularComplex(cells.lineality - 1));
        }
        let mult = cells.multiplicity(i);
        for copy in 0..mult {
            instances.push(CellInstance { covector: i, copy });
            labels.push(if mult == 1 {
                c.signs.to_string()
            } else {
                format!("{}#{copy}", c.signs)
            });
        }
    }
    let count = instances.len();
    let below = |a: &CellInstance, b: &CellInstance| a.covector != b.covector && cells.is_face(a.covector, b.covector);
    let up: Vec<Vec<usize>> = instances
        .iter()
        .map(|a| (0..count).filter(|&j| below(a, &instances[j])).collect())
        .collect();

    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..count).map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("chains are nonempty");
        if chain.len() <= m {
            for &j in &up[last] {
                let mut longer = chain.clone();
                longer.push(j);
                stack.push(longer);
            }
        }
        chains.push(chain);
        Limits::check("complex face count", limits.max_faces, chains.len())?;
    }

    let z2 = instances
        .iter()
        .map(|a| {
            let anti = cells.antipode(a.covector);
            let copy = if anti == a.covector { 1 - a.copy } else { 0 };
            instances
                .iter()
                .position(|b| b.covector == anti && b.copy == copy)
                .expect("antipodal cell is instantiated")
        })
        .collect();
    let complex = SimplicialComplex::from_faces(labels, chains, Some(z2))?;
    Ok((complex, instances))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::topology::homology::reduced_betti_gf2;
    use crate::transversal::enumerate_covectors;

    fn cells(v: &[&[i64]], n: usize) -> CellComplex {
        let pool: Vec<Point> = v.iter().map(|c| Point::from_ints(c)).collect();
        enumerate_covectors(&pool, n, &Limits::default()).unwrap()
    }

    #[test]
    fn single_hyperplane_in_the_plane_gives_a_circle() {
        let c = cells(&[&[1, 0]], 2);
        let (l, inst) = barycentric_skeleton(&c, 1, &Limits::default()).unwrap();
        assert_eq!(inst.len(), 4);
        assert_eq!(l.faces_of_dim(1).count(), 4);
        assert!(l.check_free_z2().unwrap());
        assert_eq!(reduced_betti_gf2(&l, 1, &Limits::default()).unwrap().0, vec![0, 1]);
    }

    #[test]
    fn vertex_only_skeleton() {
        let c = cells(&[&[1, 0], &[0, 1]], 2);
        let (l, _) = barycentric_skeleton(&c, 0, &Limits::default()).unwrap();
        assert_eq!(l.dim(), Some(0));
        assert_eq!(l.face_count(), 8);
    }

    #[test]
    fn chains_strictly_increase_dimension() {
        let c = cells(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]], 3);
        let (l, inst) = barycentric_skeleton(&c, 2, &Limits::default()).unwrap();
        for f in l.faces() {
            let mut dims: Vec<usize> = f.iter().map(|&v| c.covectors[inst[v].covector].dim).collect();
            let len = dims.len();
            dims.sort_unstable();
            dims.dedup();
            assert_eq!(dims.len(), len);
        }
        // Full barycentric subdivision of the 2-sphere.
        assert_eq!(reduced_betti_gf2(&l, 2, &Limits::default()).unwrap().0, vec![0, 0, 1]);
        let (l1, _) = barycentric_skeleton(&c, 1, &Limits::default()).unwrap();
        assert_eq!(reduced_betti_gf2(&l1, 0, &Limits::default()).unwrap().0, vec![0]);
    }

    #[test]
    fn non_regular_zero_cell_is_rejected() {
        let c = cells(&[&[1, 0, 0]], 3);
        assert_eq!(
            barycentric_skeleton(&c, 1, &Limits::default()).unwrap_err(),
            Error::NonRegularComplex(1)
        );
    }
}
