//! Double description method over the integers.
//!
//! The facets of `conv(P)` are the extreme rays of the cone
//! `{(w, t) : <p, w> + t >= 0 for all p in P}`; vertex enumeration of an
//! H-polytope is the same computation on the homogenized inequality system.
//! Rays are kept as primitive integer vectors, so no fractions ever appear.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{primitive, Rational, RationalVector};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::linalg::{independent_rows, inverse, rank, Matrix};

use super::{Facet, Polytope};

/// An extreme ray of `{u : <a_k, u> >= 0}` together with the indices of the
/// constraints it makes tight.
#[derive(Clone, Debug)]
pub(crate) struct Ray {
    pub coords: Vec<BigInt>,
    pub tight: BitSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_matrix(rows: &[Vec<BigInt>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
        .collect()
}

/// Extreme rays of the pointed cone `{u : <a_k, u> >= 0}`. Returns `None` if
/// the constraint matrix does not have full column rank (cone not pointed).
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>]) -> Option<Vec<Ray>> {
    let n = rows.len();
    let dim = rows.first()?.len();
    let qrows = to_matrix(rows);
    let basis = independent_rows(&qrows);
    if basis.len() < dim {
        return None;
    }
    let a0: Matrix = basis.iter().map(|&i| qrows[i].clone()).collect();
    let inv = inverse(&a0)?;
    let mut rays: Vec<Ray> = (0..dim)
        .map(|i| {
            let col = RationalVector::new(inv.iter().map(|row| row[i].clone()).collect());
            let tight = BitSet::from_indices(
                n,
                basis.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &b)| b),
            );
            Ray { coords: col.primitive_integer(), tight }
        })
        .collect();

    let in_basis = BitSet::from_indices(n, basis.iter().copied());
    for (k, row) in rows.iter().enumerate() {
        if in_basis.contains(k) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        for (i, ray) in rays.iter().enumerate() {
            if values[i].is_zero() {
                let mut r = ray.clone();
                r.tight.insert(k);
                next.push(r);
            } else if values[i].is_positive() {
                next.push(ray.clone());
            }
        }
        for &p in &plus {
            for &q in &minus {
                let common = rays[p].tight.intersection(&rays[q].tight);
                if common.len() + 2 < dim {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(r, ray)| {
                    r != p && r != q && common.is_subset(&ray.tight)
                });
                if blocked {
                    continue;
                }
                let coords: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(xq, xp)| &values[p] * xq - &values[q] * xp)
                    .collect();
                let mut tight = common;
                tight.insert(k);
                next.push(Ray { coords: primitive(&coords), tight });
            }
        }
        rays = next;
    }
    Some(rays)
}

/// Homogenized generator row `(D p, D)` made primitive.
fn generator_row(p: &RationalVector) -> Vec<BigInt> {
    let mut h = p.coords().to_vec();
    h.push(Rational::from_integer(1.into()));
    RationalVector::new(h).primitive_integer()
}

/// Irredundant V- and H-representation of `conv(points)` in `Q^dim`.
///
/// Facet normals are primitive integer vectors with positive offsets; the
/// origin must lie strictly inside.
pub fn convex_hull(points: &[RationalVector], dim: usize) -> Result<Polytope> {
    if dim == 0 {
        return Err(Error::NotFullDimensional);
    }
    if dim > super::MAX_DIMENSION {
        return Err(Error::DimensionTooLarge(dim));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let rows: Vec<Vec<BigInt>> = pts.iter().map(generator_row).collect();
    if rows.is_empty() || rank(&to_matrix(&rows)) < dim + 1 {
        return Err(Error::NotFullDimensional);
    }
    let rays = extreme_rays(&rows).ok_or(Error::NotFullDimensional)?;

    let mut facets = Vec::with_capacity(rays.len());
    for ray in &rays {
        // ray = (w, t) encodes <p, -w> <= t
        let normal: Vec<BigInt> = ray.coords[..dim].iter().map(|x| -x).collect();
        let t = &ray.coords[dim];
        let g = normal.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
        let offset = Rational::new(t.clone(), g.clone());
        if !offset.is_positive() {
            return Err(Error::OriginNotInterior);
        }
        let normal: Vec<BigInt> = normal.iter().map(|x| x / &g).collect();
        facets.push(Facet {
            normal: RationalVector::from_bigints(&normal),
            offset,
        });
    }

    let vertices: Vec<RationalVector> = pts
        .iter()
        .enumerate()
        .filter(|&(j, _)| {
            let normals: Matrix = rays
                .iter()
                .zip(&facets)
                .filter(|(r, _)| r.tight.contains(j))
                .map(|(_, f)| f.normal.coords().to_vec())
                .collect();
            rank(&normals) == dim
        })
        .map(|(_, p)| p.clone())
        .collect();
    Ok(Polytope::from_parts(dim, vertices, facets))
}

/// Vertices of the bounded polyhedron `{x : <a_k, x> <= b_k}` in `Q^dim`.
/// Equalities are passed as two opposite inequalities. Returns an empty list
/// when the system is infeasible.
pub fn vertices_of_inequalities(
    inequalities: &[(RationalVector, Rational)],
    dim: usize,
) -> Vec<RationalVector> {
    // (x, t) with b t - <a, x> >= 0 and t >= 0
    let mut rows: Vec<Vec<BigInt>> = inequalities
        .iter()
        .map(|(a, b)| {
            let mut h: Vec<Rational> = a.coords().iter().map(|x| -x).collect();
            h.push(b.clone());
            RationalVector::new(h).primitive_integer()
        })
        .collect();
    let mut t_row = vec![BigInt::zero(); dim + 1];
    t_row[dim] = BigInt::from(1);
    rows.insert(0, t_row);
    let Some(rays) = extreme_rays(&rows) else {
        return Vec::new();
    };
    let mut out: Vec<RationalVector> = rays
        .iter()
        .filter(|r| r.coords[dim].is_positive())
        .map(|r| {
            let t = Rational::from_integer(r.coords[dim].clone());
            RationalVector::new(
                r.coords[..dim]
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()) / &t)
                    .collect(),
            )
        })
        .collect();
    out.sort();
    out.dedup();
    out
}
