//! Integer lattice computations: the full lattice of integer solutions of a
//! rational homogeneous system, and membership/equality tests between
//! lattices given by integer bases.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::linalg;
use crate::rat::lcm_denominators;
use crate::scalar::Rat;

/// Basis of `{ k in Z^d : C k = 0 }` for an integer constraint matrix `C`
/// (rows are constraints). The result generates the *saturated* kernel
/// lattice, i.e. every integer solution is an integer combination of the
/// returned rows.
///
/// Method: unimodular row reduction of `C^T` augmented with the identity.
/// Rows of the transform whose image row becomes zero span the kernel.
pub fn integer_kernel_basis(constraints: &[Vec<BigInt>], d: usize) -> Vec<Vec<BigInt>> {
    let r = constraints.len();
    // work = [C^T | I_d], d rows, r + d columns
    let mut work: Vec<Vec<BigInt>> = (0..d)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..r).map(|j| constraints[j][i].clone()).collect();
            for k in 0..d {
                row.push(if k == i { BigInt::from(1) } else { BigInt::zero() });
            }
            row
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..r {
        loop {
            // smallest nonzero entry of this column at or below pivot_row
            let best = (pivot_row..d)
                .filter(|&i| !work[i][col].is_zero())
                .min_by_key(|&i| work[i][col].abs());
            let Some(best) = best else { break };
            work.swap(pivot_row, best);
            let mut done = true;
            for i in pivot_row + 1..d {
                if work[i][col].is_zero() {
                    continue;
                }
                let q = &work[i][col] / &work[pivot_row][col];
                if !q.is_zero() {
                    for c in 0..r + d {
                        let sub = &q * &work[pivot_row][c];
                        work[i][c] = &work[i][c] - sub;
                    }
                }
                if !work[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot_row += 1;
                break;
            }
        }
        if pivot_row == d {
            break;
        }
    }

    work[pivot_row..]
        .iter()
        .map(|row| row[r..].to_vec())
        .collect()
}

/// Kernel lattice of a rational constraint matrix: denominators are cleared
/// row-wise, which does not change the solution set.
pub fn rational_kernel_basis(constraints: &[Vec<Rat>], d: usize) -> Vec<Vec<BigInt>> {
    let cleared: Vec<Vec<BigInt>> = constraints
        .iter()
        .map(|row| {
            let scale = lcm_denominators(row.iter());
            row.iter()
                .map(|r| r.numer() * (&scale / r.denom()))
                .collect()
        })
        .collect();
    integer_kernel_basis(&cleared, d)
}

/// True when `v` is an integer combination of the rows of `basis`.
pub fn lattice_contains(basis: &[Vec<BigInt>], v: &[BigInt]) -> Result<bool> {
    let m = basis.len();
    let d = v.len();
    // Solve basis^T x = v over the rationals (least-structure path: the
    // system is m unknowns, d equations; use any m independent rows).
    let bt: Vec<Vec<Rat>> = (0..d)
        .map(|j| (0..m).map(|i| BigRational::from(basis[i][j].clone())).collect())
        .collect();
    let rhs: Vec<Rat> = v.iter().map(|x| BigRational::from(x.clone())).collect();
    // Pick m rows of bt forming an invertible square system.
    let mut chosen: Vec<usize> = Vec::new();
    let mut acc: Vec<Vec<Rat>> = Vec::new();
    for j in 0..d {
        let mut trial = acc.clone();
        trial.push(bt[j].clone());
        if linalg::rank(&trial, 0.0) == trial.len() {
            acc = trial;
            chosen.push(j);
            if chosen.len() == m {
                break;
            }
        }
    }
    if chosen.len() < m {
        return Ok(false);
    }
    let sys: Vec<Vec<Rat>> = chosen.iter().map(|&j| bt[j].clone()).collect();
    let b: Vec<Rat> = chosen.iter().map(|&j| rhs[j].clone()).collect();
    let x = linalg::solve(&sys, &b, 0.0)?;
    // verify remaining equations and integrality
    for j in 0..d {
        let lhs = crate::scalar::dot(&bt[j], &x);
        if lhs != rhs[j] {
            return Ok(false);
        }
    }
    Ok(x.iter().all(|xi| xi.denom() == &BigInt::from(1)))
}

/// Mutual-membership equality of the lattices spanned by two integer bases.
pub fn lattice_eq(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    for v in b {
        if !lattice_contains(a, v)? {
            return Ok(false);
        }
    }
    for v in a {
        if !lattice_contains(b, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}
