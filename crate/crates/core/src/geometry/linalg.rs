//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use super::point::{common_dim, Point};
use super::rational::Rational;
use crate::Result;

/// Reduced row echelon form in place. Returns the pivot column of each nonzero row.
pub(crate) fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Linear rank of `vectors` in R^n; 0 for the empty list.
pub fn rank_of_vectors(vectors: &[Point], n: usize) -> Result<usize> {
    common_dim(vectors, n)?;
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    Ok(rref(&mut rows).len())
}

/// A basis of `{a : a·v = 0 for all v}` in R^n.
pub fn null_space_basis(vectors: &[Point], n: usize) -> Result<Vec<Point>> {
    common_dim(vectors, n)?;
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    let pivots = rref(&mut rows);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut a = vec![Rational::zero(); n];
        a[free] = Rational::one();
        for (row, &pc) in rows.iter().zip(&pivots) {
            a[pc] = -row[free].clone();
        }
        basis.push(Point::new(a));
    }
    Ok(basis)
}

/// The canonical generator of the common null space when it is one-dimensional:
/// primitive integer coordinates with the first nonzero coordinate positive.
pub fn null_space_ray(vectors: &[Point], n: usize) -> Result<Option<Point>> {
    let basis = null_space_basis(vectors, n)?;
    Ok(match basis.as_slice() {
        [only] => only.canonical_ray(),
        _ => None,
    })
}

/// Solves `A x = b` when the solution exists and is unique. `columns` are the
/// columns of `A`.
pub(crate) fn solve_unique(columns: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = columns.len();
    let mut rows: Vec<Vec<Rational>> = (0..b.len())
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.last() == Some(&ncols) || pivots.len() != ncols {
        return None;
    }
    Some(rows[..ncols].iter().map(|r| r[ncols].clone()).collect())
}
