//! Exact rational simplex over dense tableaus. Two phases, Bland's rule for
//! both the entering and leaving choices, so pivoting never cycles and the
//! result is deterministic for a fixed input. Intended for the small
//! box-bounded programs produced by the region compiler.

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

/// `a . x <= b` over nonnegative variables.
pub(crate) struct Row {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

pub(crate) enum Outcome {
    Infeasible,
    /// An optimal vertex: the variable values in input order.
    Optimum(Vec<Rational>),
}

/// Maximizes `objective . x` subject to the rows and `x >= 0`.
///
/// Panics if the program is unbounded; callers must box every variable.
pub(crate) fn maximize(n_vars: usize, rows: &[Row], objective: &[Rational]) -> Outcome {
    debug_assert!(objective.len() == n_vars);
    debug_assert!(rows.iter().all(|r| r.coeffs.len() == n_vars));
    let m = rows.len();
    // Columns: structural | slack | artificial (phase 1 only).
    let n_art = rows.iter().filter(|r| r.rhs.is_negative()).count();
    let total = n_vars + m + n_art;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut art_cols: Vec<usize> = Vec::new();
    let mut next_art = n_vars + m;
    for (i, row) in rows.iter().enumerate() {
        let mut r: Vec<Rational> = vec![Rational::zero(); total + 1];
        let negate = row.rhs.is_negative();
        for (j, c) in row.coeffs.iter().enumerate() {
            r[j] = if negate { -c } else { c.clone() };
        }
        r[n_vars + i] = if negate { -Rational::one() } else { Rational::one() };
        r[total] = if negate { -&row.rhs } else { row.rhs.clone() };
        if negate {
            r[next_art] = Rational::one();
            basis.push(next_art);
            art_cols.push(next_art);
            next_art += 1;
        } else {
            basis.push(n_vars + i);
        }
        t.push(r);
    }

    if !art_cols.is_empty() {
        // Phase 1: maximize minus the sum of artificials.
        let mut c1 = vec![Rational::zero(); total];
        for &a in &art_cols {
            c1[a] = -Rational::one();
        }
        run_simplex(&mut t, &mut basis, &c1, total);
        let infeasible = basis.iter().enumerate().any(|(i, &b)| {
            art_cols.contains(&b) && !t[i][total].is_zero()
        });
        if infeasible {
            return Outcome::Infeasible;
        }
        // Drive degenerate artificials out of the basis or drop their rows.
        let mut i = 0;
        while i < t.len() {
            if art_cols.contains(&basis[i]) {
                match (0..n_vars + m).find(|&j| !t[i][j].is_zero()) {
                    Some(j) => pivot(&mut t, &mut basis, i, j, total),
                    None => {
                        t.remove(i);
                        basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        // Forget the artificial columns.
        for row in &mut t {
            let rhs = row[total].clone();
            row.truncate(n_vars + m);
            row.push(rhs);
        }
    }

    let total = n_vars + m;
    let mut c2 = vec![Rational::zero(); total];
    c2[..n_vars].clone_from_slice(objective);
    run_simplex(&mut t, &mut basis, &c2, total);

    let mut point = vec![Rational::zero(); n_vars];
    for (i, &b) in basis.iter().enumerate() {
        if b < n_vars {
            point[b] = t[i][total].clone();
        }
    }
    Outcome::Optimum(point)
}

/// Pivots until every reduced cost is nonpositive.
fn run_simplex(t: &mut Vec<Vec<Rational>>, basis: &mut Vec<usize>, costs: &[Rational], total: usize) {
    loop {
        let reduced = reduced_costs(t, basis, costs, total);
        // Bland: the lowest-index column with a positive reduced cost.
        let Some(enter) = (0..total).find(|&j| reduced[j].is_positive()) else {
            return;
        };
        // Ratio test; ties broken by the smallest basis variable.
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..t.len() {
            if t[i][enter].is_positive() {
                let ratio = &t[i][total] / &t[i][enter];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((best, r)) => {
                        if ratio < *r || (ratio == *r && basis[i] < basis[*best]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let (row, _) = leave.expect("unbounded program; variables must be boxed");
        pivot(t, basis, row, enter, total);
    }
}

fn reduced_costs(
    t: &[Vec<Rational>],
    basis: &[usize],
    costs: &[Rational],
    total: usize,
) -> Vec<Rational> {
    let mut reduced: Vec<Rational> = costs.to_vec();
    for (i, &b) in basis.iter().enumerate() {
        let cb = &costs[b];
        if cb.is_zero() {
            continue;
        }
        for j in 0..total {
            if !t[i][j].is_zero() {
                let delta = cb * &t[i][j];
                reduced[j] -= delta;
            }
        }
    }
    reduced
}

fn pivot(t: &mut [Vec<Rational>], basis: &mut [usize], row: usize, col: usize, total: usize) {
    let p = t[row][col].clone();
    debug_assert!(!p.is_zero());
    for v in t[row].iter_mut() {
        *v /= &p;
    }
    for i in 0..t.len() {
        if i == row || t[i][col].is_zero() {
            continue;
        }
        let factor = t[i][col].clone();
        for j in 0..=total {
            let delta = &factor * &t[row][j];
            t[i][j] -= delta;
        }
    }
    basis[row] = col;
}
