//! Exact feasibility of `A x >= b` over the rationals with free variables.
//!
//! Phase-one simplex on `A x+ - A x- - s + a = b` (rows sign-flipped so the
//! right-hand side is nonnegative), minimizing the sum of artificials.
//! Bland's rule makes the pivoting terminate.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// One inequality `coeffs · x >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

/// Returns a point satisfying every inequality, or `None` if none exists.
pub fn find_feasible_point(vars: usize, system: &[Inequality]) -> Option<Vec<Rational>> {
    let rows = system.len();
    if rows == 0 {
        return Some(vec![Rational::zero(); vars]);
    }
    // columns: x+ (vars), x- (vars), surplus (rows), artificial (rows), rhs
    let art = 2 * vars + rows;
    let width = 2 * vars + 2 * rows + 1;
    let rhs_col = width - 1;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for (r, ineq) in system.iter().enumerate() {
        assert_eq!(ineq.coeffs.len(), vars, "inequality width");
        let flip = ineq.rhs.is_negative();
        let sign = |v: &Rational| if flip { -v.clone() } else { v.clone() };
        let mut row = vec![Rational::zero(); width];
        for (c, v) in ineq.coeffs.iter().enumerate() {
            row[c] = sign(v);
            row[vars + c] = -sign(v);
        }
        row[2 * vars + r] = sign(&Rational::from_integer((-1).into()));
        row[art + r] = Rational::from_integer(1.into());
        row[rhs_col] = sign(&ineq.rhs);
        tab.push(row);
    }
    let mut basis: Vec<usize> = (art..art + rows).collect();
    // reduced costs of the phase-one objective
    let mut cost = vec![Rational::zero(); width];
    for row in &tab {
        for j in 0..art {
            cost[j] -= &row[j];
        }
        cost[rhs_col] -= &row[rhs_col];
    }

    while let Some(enter) = (0..art + rows).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[rhs_col] / &row[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // phase one is bounded below by zero, so an entering column always has a leaving row
        let (pr, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, &mut cost, pr, enter);
        basis[pr] = enter;
    }

    if !cost[rhs_col].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); vars];
    for (i, &b) in basis.iter().enumerate() {
        if b < vars {
            x[b] += &tab[i][rhs_col];
        } else if b < 2 * vars {
            x[b - vars] -= &tab[i][rhs_col];
        }
    }
    debug_assert!(satisfies(&x, system));
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], pr: usize, pc: usize) {
    let p = tab[pr][pc].clone();
    for v in tab[pr].iter_mut() {
        *v /= &p;
    }
    let prow = tab[pr].clone();
    let eliminate = |row: &mut Vec<Rational>| {
        let f = row[pc].clone();
        if f.is_zero() {
            return;
        }
        for (v, pv) in row.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    };
    for (i, row) in tab.iter_mut().enumerate() {
        if i != pr {
            eliminate(row);
        }
    }
    let mut c = cost.to_vec();
    eliminate(&mut c);
    cost.clone_from_slice(&c);
}

pub fn satisfies(x: &[Rational], system: &[Inequality]) -> bool {
    system.iter().all(|ineq| {
        let lhs: Rational = ineq.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        lhs >= ineq.rhs
    })
}
