//! Lattice automorphisms and unimodular equivalence.
//!
//! Any linear bijection between vertex sets preserves the form
//! `G = (sum_v v v^T)^{-1}`, so the Gram values `G(v, w)` are invariants.
//! The search assigns images to a basis of vertices one at a time, keeping
//! only candidates whose norms, facet degrees and Gram values with earlier
//! images match, then checks the extended map exactly.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{Rational, RationalVector};
use crate::error::{Error, Result};
use crate::linalg::{determinant, independent_rows, inverse, mat_mul, transpose, Matrix};

use super::Polytope;

/// Integer matrix with determinant `±1`, acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnimodularMap {
    matrix: Vec<Vec<i64>>,
}

impl fmt::Debug for UnimodularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnimodularMap{:?}", self.matrix)
    }
}

impl UnimodularMap {
    /// Wraps an integer matrix, checking that it is square with determinant ±1.
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        let map = UnimodularMap { matrix };
        if !map.determinant().abs().is_one() {
            return Err(Error::InvalidArgument("determinant is not ±1".into()));
        }
        Ok(map)
    }

    pub fn identity(n: usize) -> Self {
        UnimodularMap {
            matrix: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn to_rational(&self) -> Matrix {
        crate::linalg::from_ints(&self.matrix)
    }

    pub fn determinant(&self) -> Rational {
        determinant(&self.to_rational())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim())
    }

    pub fn apply(&self, x: &RationalVector) -> RationalVector {
        RationalVector::new(
            self.matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(x.iter())
                        .filter(|(a, _)| **a != 0)
                        .fold(Rational::zero(), |acc, (&a, b)| acc + b * Rational::from_integer(a.into()))
                })
                .collect(),
        )
    }

    /// `A^T x`, without building the transpose.
    pub fn apply_transpose(&self, x: &RationalVector) -> RationalVector {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, row) in self.matrix.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            for (j, &a) in row.iter().enumerate() {
                if a != 0 {
                    out[j] += &x[i] * Rational::from_integer(a.into());
                }
            }
        }
        RationalVector::new(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &UnimodularMap) -> UnimodularMap {
        let n = self.dim();
        let m = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum()).collect())
            .collect();
        UnimodularMap { matrix: m }
    }

    pub fn transpose(&self) -> UnimodularMap {
        UnimodularMap { matrix: transpose(&self.matrix) }
    }

    pub fn inverse(&self) -> UnimodularMap {
        let inv = inverse(&self.to_rational()).expect("unimodular matrix is invertible");
        UnimodularMap {
            matrix: inv
                .iter()
                .map(|r| r.iter().map(|q| q.to_integer().to_i64().expect("entry fits i64")).collect())
                .collect(),
        }
    }

    /// The contragredient `(A^{-1})^T`, which acts on the dual lattice so
    /// that brackets are preserved: `<A m, A^∨ n> = <m, n>`.
    pub fn dual(&self) -> UnimodularMap {
        self.inverse().transpose()
    }

    /// Integer matrix from a rational one, if it is integral and unimodular.
    pub fn from_rational(m: &[Vec<Rational>]) -> Option<UnimodularMap> {
        let matrix: Option<Vec<Vec<i64>>> = m
            .iter()
            .map(|r| r.iter().map(|q| if q.is_integer() { q.to_integer().to_i64() } else { None }).collect())
            .collect();
        let map = UnimodularMap { matrix: matrix? };
        map.determinant().abs().is_one().then_some(map)
    }
}

/// Inverse of `sum_v v v^T` over the vertices; every linear automorphism of
/// the vertex set is orthogonal for this form.
pub fn invariant_form(p: &Polytope) -> Matrix {
    let d = p.dim();
    let mut q: Matrix = vec![vec![Rational::zero(); d]; d];
    for v in p.vertices() {
        for i in 0..d {
            for j in 0..d {
                q[i][j] += &v[i] * &v[j];
            }
        }
    }
    inverse(&q).expect("vertices of a full-dimensional polytope span")
}

fn form(g: &Matrix, x: &RationalVector, y: &RationalVector) -> Rational {
    let mut acc = Rational::zero();
    for (i, row) in g.iter().enumerate() {
        if x[i].is_zero() {
            continue;
        }
        let gy = row.iter().zip(y.iter()).fold(Rational::zero(), |a, (gij, yj)| a + gij * yj);
        acc += &x[i] * gy;
    }
    acc
}

struct Search<'a> {
    p: &'a Polytope,
    q: &'a Polytope,
    basis: Vec<usize>,
    basis_inv: Matrix,
    gram_p: Vec<Vec<Rational>>,
    gram_q: Vec<Vec<Rational>>,
    norm_ok: Vec<Vec<bool>>,
    q_vertices: HashSet<RationalVector>,
    first_only: bool,
    cap: usize,
    found: Vec<UnimodularMap>,
}

impl Search<'_> {
    fn run(&mut self, images: &mut Vec<usize>) -> Result<()> {
        let i = images.len();
        if i == self.basis.len() {
            if let Some(m) = self.extend(images) {
                self.found.push(m);
                if self.found.len() > self.cap {
                    return Err(Error::GroupCapExceeded(self.cap));
                }
            }
            return Ok(());
        }
        for u in 0..self.q.vertices().len() {
            if !self.norm_ok[i][u] || images.contains(&u) {
                continue;
            }
            if (0..i).any(|j| self.gram_q[u][images[j]] != self.gram_p[i][j]) {
                continue;
            }
            images.push(u);
            self.run(images)?;
            images.pop();
            if self.first_only && !self.found.is_empty() {
                return Ok(());
            }
        }
        Ok(())
    }

    fn extend(&self, images: &[usize]) -> Option<UnimodularMap> {
        let d = self.p.dim();
        // L = U B^{-1}, columns of U (resp. B) are the images (resp. basis vertices)
        let u: Matrix = (0..d)
            .map(|r| images.iter().map(|&k| self.q.vertices()[k][r].clone()).collect())
            .collect();
        let l = mat_mul(&u, &self.basis_inv);
        let map = UnimodularMap::from_rational(&l)?;
        self.p
            .vertices()
            .iter()
            .all(|v| self.q_vertices.contains(&map.apply(v)))
            .then_some(map)
    }
}

fn search(p: &Polytope, q: &Polytope, first_only: bool, cap: usize) -> Result<Vec<UnimodularMap>> {
    if p.dim() != q.dim()
        || p.vertices().len() != q.vertices().len()
        || p.facets().len() != q.facets().len()
    {
        return Ok(Vec::new());
    }
    let d = p.dim();
    let rows: Matrix = p.vertices().iter().map(|v| v.coords().to_vec()).collect();
    let basis = independent_rows(&rows);
    let b: Matrix = (0..d).map(|r| basis.iter().map(|&k| p.vertices()[k][r].clone()).collect()).collect();
    let basis_inv = inverse(&b).expect("basis vertices are independent");
    let gp = invariant_form(p);
    let gq = invariant_form(q);
    let gram_p: Vec<Vec<Rational>> = basis
        .iter()
        .map(|&a| basis.iter().map(|&c| form(&gp, &p.vertices()[a], &p.vertices()[c])).collect())
        .collect();
    let nq = q.vertices().len();
    let gram_q: Vec<Vec<Rational>> = (0..nq)
        .map(|a| (0..nq).map(|c| form(&gq, &q.vertices()[a], &q.vertices()[c])).collect())
        .collect();
    let norm_ok: Vec<Vec<bool>> = basis
        .iter()
        .enumerate()
        .map(|(i, &bv)| {
            let deg = p.vertex_facet_set(bv).len();
            (0..nq)
                .map(|u| gram_q[u][u] == gram_p[i][i] && q.vertex_facet_set(u).len() == deg)
                .collect()
        })
        .collect();
    let mut s = Search {
        p,
        q,
        basis,
        basis_inv,
        gram_p,
        gram_q,
        norm_ok,
        q_vertices: q.vertices().iter().cloned().collect(),
        first_only,
        cap,
        found: Vec::new(),
    };
    s.run(&mut Vec::with_capacity(d))?;
    Ok(s.found)
}

/// Every unimodular map sending the vertex set onto itself, stopping with
/// [`Error::GroupCapExceeded`] past `cap` elements.
pub fn automorphism_group_with_cap(p: &Polytope, cap: usize) -> Result<Vec<UnimodularMap>> {
    let mut g = search(p, p, false, cap)?;
    g.sort();
    Ok(g)
}

/// [`automorphism_group_with_cap`] with the configured default cap.
pub fn automorphism_group(p: &Polytope) -> Result<Vec<UnimodularMap>> {
    automorphism_group_with_cap(p, crate::config::orbit_cap())
}

/// A unimodular map sending the vertices of `p` onto those of `q`, if any.
pub fn unimodular_equivalent(p: &Polytope, q: &Polytope) -> Option<UnimodularMap> {
    if p.dim() != q.dim()
        || p.vertices().len() != q.vertices().len()
        || p.lattice_volume() != q.lattice_volume()
    {
        return None;
    }
    search(p, q, true, usize::MAX).ok()?.into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polytope {
        Polytope::from_int_points(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap()
    }

    fn hexagon() -> Polytope {
        Polytope::from_int_points(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]]).unwrap()
    }

    /// Oracle: try every bijection of vertex sets, extend through a fixed
    /// basis and count the ones that are integral, unimodular and onto.
    fn brute_force_order(p: &Polytope) -> usize {
        let n = p.vertices().len();
        let d = p.dim();
        let rows: Matrix = p.vertices().iter().map(|v| v.coords().to_vec()).collect();
        let basis = independent_rows(&rows);
        let b: Matrix = (0..d).map(|r| basis.iter().map(|&k| p.vertices()[k][r].clone()).collect()).collect();
        let binv = inverse(&b).unwrap();
        let verts: HashSet<_> = p.vertices().iter().cloned().collect();
        let mut count = 0;
        let mut idx = vec![0usize; d];
        loop {
            let distinct = (0..d).all(|i| (0..i).all(|j| idx[i] != idx[j]));
            if distinct {
                let u: Matrix =
                    (0..d).map(|r| idx.iter().map(|&k| p.vertices()[k][r].clone()).collect()).collect();
                if let Some(m) = UnimodularMap::from_rational(&mat_mul(&u, &binv)) {
                    if p.vertices().iter().all(|v| verts.contains(&m.apply(v))) {
                        count += 1;
                    }
                }
            }
            let mut i = 0;
            loop {
                if i == d {
                    return count;
                }
                idx[i] += 1;
                if idx[i] < n {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn orders_match_brute_force() {
        let cube = {
            let mut pts = Vec::new();
            for x in [-1, 1] {
                for y in [-1, 1] {
                    for z in [-1, 1] {
                        pts.push(RationalVector::from_ints(&[x, y, z]));
                    }
                }
            }
            Polytope::from_points(&pts).unwrap()
        };
        assert_eq!(brute_force_order(&square()), 8);
        assert_eq!(brute_force_order(&cube), 48);
        assert_eq!(brute_force_order(&hexagon()), 12);
        assert_eq!(automorphism_group(&square()).unwrap().len(), 8);
        assert_eq!(automorphism_group(&cube).unwrap().len(), 48);
        assert_eq!(automorphism_group(&hexagon()).unwrap().len(), 12);
    }

    #[test]
    fn group_axioms_hold_exactly() {
        let g = automorphism_group(&hexagon()).unwrap();
        let set: HashSet<_> = g.iter().cloned().collect();
        assert!(set.contains(&UnimodularMap::identity(2)));
        for a in &g {
            assert!(set.contains(&a.inverse()));
            for b in &g {
                assert!(set.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn hexagon_is_equivalent_to_its_dual() {
        let h = hexagon();
        let d = h.dual();
        let m = unimodular_equivalent(&h, &d).unwrap();
        assert_eq!(h.transform(&m), d);
        assert_eq!(unimodular_equivalent(&h, &h).map(|m| h.transform(&m)), Some(h.clone()));
    }

    #[test]
    fn square_is_not_equivalent_to_diamond() {
        assert!(unimodular_equivalent(&square(), &square().dual()).is_none());
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            automorphism_group_with_cap(&square(), 3).unwrap_err(),
            Error::GroupCapExceeded(3)
        );
    }
}
