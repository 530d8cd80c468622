//! Dense exact linear algebra on small matrices.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Dimensions in this crate never exceed
//! a dozen, so plain Gaussian elimination is all that is needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Rational, RationalVector};

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

/// `m * v` for a column vector `v`.
pub fn mat_vec(m: &[Vec<Rational>], v: &RationalVector) -> RationalVector {
    RationalVector::new(
        m.iter()
            .map(|row| {
                row.iter()
                    .zip(v.iter())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect(),
    )
}

pub fn from_ints(m: &[Vec<i64>]) -> Matrix {
    m.iter()
        .map(|row| row.iter().map(|&x| crate::arith::rat(x)).collect())
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank_of_vectors<'a>(vs: impl IntoIterator<Item = &'a RationalVector>) -> usize {
    let rows: Matrix = vs.into_iter().map(|v| v.coords().to_vec()).collect();
    rank(&rows)
}

/// Affine rank of a point set (dimension of its affine hull); `None` when empty.
pub fn affine_rank<'a>(points: impl IntoIterator<Item = &'a RationalVector>) -> Option<usize> {
    let mut iter = points.into_iter();
    let base = iter.next()?;
    let rows: Matrix = iter.map(|p| p.sub(base).into_coords()).collect();
    Some(rank(&rows))
}

/// Indices of a maximal linearly independent prefix-greedy subset of `rows`.
pub fn independent_rows(rows: &[Vec<Rational>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Matrix = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        basis.push(row.clone());
        if rank(&basis) == basis.len() {
            chosen.push(i);
        } else {
            basis.pop();
        }
    }
    chosen
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let delta = &f * &a[c][j];
                a[i][j] -= delta;
            }
        }
    }
    det
}

pub fn inverse(m: &[Vec<Rational>]) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves the square system `a x = b`, `None` if `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn kernel(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -a[r][f].clone();
            }
            x
        })
        .collect()
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn int_determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Gcd of all maximal (`rows x rows`) minors of an integer matrix with at
/// least as many columns as rows. This is the index of the row lattice in its
/// saturation, i.e. the covolume of the rows inside the lattice points of
/// their real span.
pub fn gcd_of_maximal_minors(rows: &[Vec<BigInt>]) -> BigInt {
    let k = rows.len();
    if k == 0 {
        return BigInt::one();
    }
    let n = rows[0].len();
    let mut g = BigInt::zero();
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        let minor: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        g = g.gcd(&int_determinant(&minor));
        if g.is_one() {
            return g;
        }
        // next column combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| cols[i] != n - k + i) else {
            return g.abs();
        };
        cols[i] += 1;
        for j in i + 1..k {
            cols[j] = cols[j - 1] + 1;
        }
    }
}
