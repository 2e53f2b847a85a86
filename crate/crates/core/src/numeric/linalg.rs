//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use super::Rat;

/// Outcome of solving `A x = b` simultaneously for several right-hand sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinSolve {
    /// One solution vector per right-hand side column.
    Unique(Vec<Vec<Rat>>),
    Inconsistent,
    /// Consistent, but the kernel of `A` is nontrivial.
    Underdetermined,
}

/// Reduced row echelon form in place. Returns the pivot columns.
///
/// Only the first `ncols` columns are eligible as pivots; any remaining
/// columns are carried along as augmented data.
pub fn rref(rows: &mut [Vec<Rat>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][col];
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v = &*v - &f * p;
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let ncols = first.len();
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Solves `A x = b_k` for every column `k` of `rhs`.
///
/// `a` is `m × n`, `rhs` is `m × r`. An empty `a` with `n = 0` is the
/// trivially unique empty solution when every right-hand side is zero.
pub fn solve(a: &[Vec<Rat>], rhs: &[Vec<Rat>], n: usize) -> LinSolve {
    debug_assert_eq!(a.len(), rhs.len());
    let nrhs = rhs.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| row.iter().chain(b.iter()).cloned().collect())
        .collect();
    let pivots = rref(&mut aug, n);
    let rank = pivots.len();
    if aug[rank..].iter().any(|row| row[n..].iter().any(|v| !v.is_zero())) {
        return LinSolve::Inconsistent;
    }
    if rank < n {
        return LinSolve::Underdetermined;
    }
    let solutions = (0..nrhs)
        .map(|k| (0..n).map(|i| aug[i][n + k].clone()).collect())
        .collect();
    LinSolve::Unique(solutions)
}
