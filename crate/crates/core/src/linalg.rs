//! Dense linear algebra over any `Scalar`, sized for dimensions d <= ~10.
//! Gaussian elimination with magnitude pivoting; exact types never lose
//! precision because elimination is plain field arithmetic.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Mat<S> = Vec<Vec<S>>;

pub fn identity<S: Scalar>(n: usize) -> Mat<S> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { S::one() } else { S::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose<S: Scalar>(m: &Mat<S>) -> Mat<S> {
    let rows = m.len();
    let cols = m[0].len();
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect()
}

pub fn mat_vec<S: Scalar>(m: &Mat<S>, v: &[S]) -> Vec<S> {
    m.iter().map(|row| crate::scalar::dot(row, v)).collect()
}

pub fn mat_mul<S: Scalar>(a: &Mat<S>, b: &Mat<S>) -> Mat<S> {
    let bt = transpose(b);
    a.iter()
        .map(|row| bt.iter().map(|col| crate::scalar::dot(row, col)).collect())
        .collect()
}

/// Determinant by LU elimination.
pub fn det<S: Scalar>(m: &Mat<S>, eps: f64) -> S {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = false;
    let mut result = S::one();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_negligible(eps))
            .max_by(|&x, &y| {
                a[x][col]
                    .magnitude()
                    .partial_cmp(&a[y][col].magnitude())
                    .unwrap()
            });
        let Some(p) = pivot else {
            return S::zero();
        };
        if p != col {
            a.swap(p, col);
            sign = !sign;
        }
        let pv = a[col][col].clone();
        result = result * pv.clone();
        for r in col + 1..n {
            let factor = a[r][col].clone() / pv.clone();
            for c in col..n {
                let sub = factor.clone() * a[col][c].clone();
                a[r][c] = a[r][c].clone() - sub;
            }
        }
    }
    if sign {
        -result
    } else {
        result
    }
}

/// Inverse of a square matrix; `Err(SingularMatrix)` when rank-deficient.
pub fn invert<S: Scalar>(m: &Mat<S>, eps: f64) -> Result<Mat<S>> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity::<S>(n);
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_negligible(eps))
            .max_by(|&x, &y| {
                a[x][col]
                    .magnitude()
                    .partial_cmp(&a[y][col].magnitude())
                    .unwrap()
            })
            .ok_or(Error::SingularMatrix)?;
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let pv = a[col][col].clone();
        for c in 0..n {
            a[col][c] = a[col][c].clone() / pv.clone();
            inv[col][c] = inv[col][c].clone() / pv.clone();
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let s = factor.clone() * a[col][c].clone();
                a[r][c] = a[r][c].clone() - s;
                let s = factor.clone() * inv[col][c].clone();
                inv[r][c] = inv[r][c].clone() - s;
            }
        }
    }
    Ok(inv)
}

/// Solves `m x = b` for square nonsingular `m`.
pub fn solve<S: Scalar>(m: &Mat<S>, b: &[S], eps: f64) -> Result<Vec<S>> {
    let inv = invert(m, eps)?;
    Ok(mat_vec(&inv, b))
}

/// Row-echelon rank.
pub fn rank<S: Scalar>(m: &Mat<S>, eps: f64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a = m.clone();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows)
            .filter(|&i| !a[i][col].is_negligible(eps))
            .max_by(|&x, &y| {
                a[x][col]
                    .magnitude()
                    .partial_cmp(&a[y][col].magnitude())
                    .unwrap()
            });
        let Some(p) = pivot else { continue };
        a.swap(p, r);
        let pv = a[r][col].clone();
        for i in r + 1..rows {
            let factor = a[i][col].clone() / pv.clone();
            for c in col..cols {
                let s = factor.clone() * a[r][c].clone();
                a[i][c] = a[i][c].clone() - s;
            }
        }
        r += 1;
    }
    r
}

/// Basis of the right nullspace of `m` (rows are constraints).
pub fn nullspace<S: Scalar>(m: &Mat<S>, eps: f64) -> Vec<Vec<S>> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows)
            .filter(|&i| !a[i][col].is_negligible(eps))
            .max_by(|&x, &y| {
                a[x][col]
                    .magnitude()
                    .partial_cmp(&a[y][col].magnitude())
                    .unwrap()
            });
        let Some(p) = pivot else { continue };
        a.swap(p, r);
        let pv = a[r][col].clone();
        for c in 0..cols {
            a[r][c] = a[r][c].clone() / pv.clone();
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a[i][col].clone();
            for c in 0..cols {
                let s = factor.clone() * a[r][c].clone();
                a[i][c] = a[i][c].clone() - s;
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![S::zero(); cols];
            v[fc] = S::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[row][fc].clone();
            }
            v
        })
        .collect()
}
