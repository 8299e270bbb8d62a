//! Exact phase-one simplex: finds a point of `{x >= 0 : A x = b}`.
//!
//! Dense tableau over rationals with Bland's rule, so it terminates on
//! degenerate problems without perturbation.

use num_traits::{Signed, Zero};

use super::rational::Rational;

/// Returns a basic feasible solution of `A x = b, x >= 0`, or `None` when the
/// system is infeasible. `rows` holds the rows of `A`.
pub fn feasible_point(rows: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = rows.len();
    debug_assert_eq!(m, b.len());
    let n = rows.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }
    let width = n + m + 1;
    let rhs = width - 1;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, bi)) in rows.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut t = Vec::with_capacity(width);
        t.extend(row.iter().map(|a| if flip { -a } else { a.clone() }));
        t.extend((0..m).map(|j| {
            if j == i {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        }));
        t.push(if flip { -bi } else { bi.clone() });
        tab.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost: Vec<Rational> = (0..width)
        .map(|j| {
            if j >= n && j < n + m {
                Rational::zero()
            } else {
                -tab.iter().fold(Rational::zero(), |acc, r| acc + &r[j])
            }
        })
        .collect();

    loop {
        let Some(enter) = (0..n).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &tab[i][rhs] / &tab[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always limits the step.
        let (pr, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, &mut cost, pr, enter);
        basis[pr] = enter;
    }

    let infeasible = basis
        .iter()
        .zip(&tab)
        .any(|(&j, row)| j >= n && !row[rhs].is_zero());
    if infeasible {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (&j, row) in basis.iter().zip(&tab) {
        if j < n {
            x[j] = row[rhs].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], pr: usize, pc: usize) {
    let inv = Rational::from_integer(1.into()) / &tab[pr][pc];
    for v in tab[pr].iter_mut() {
        *v *= &inv;
    }
    let prow = tab[pr].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for (v, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
    }
    if !cost[pc].is_zero() {
        let f = cost[pc].clone();
        for (v, p) in cost.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
    }
}
