//! Exact lattice polytopes with the origin in their interior.
//!
//! A [`Polytope`] carries both representations: lexicographically sorted
//! vertices and facet inequalities `<x, normal> <= offset` with primitive
//! integer normals and positive offsets. Duals of lattice polytopes may have
//! rational vertices, so the same type serves for both; [`Polytope::is_lattice`]
//! tells them apart.

mod faces;
mod hull;
mod symmetry;
mod volume;

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::arith::{Rational, RationalVector};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub use faces::Face;
pub use hull::{convex_hull, vertices_of_inequalities};
pub use symmetry::{
    automorphism_group, automorphism_group_with_cap, invariant_form, unimodular_equivalent,
    UnimodularMap,
};
pub use volume::{barycentric_subdivision, lattice_volume_of_points, placing_triangulation, simplex_volume};

/// Largest ambient dimension accepted by hull and face computations.
pub const MAX_DIMENSION: usize = 8;

/// A facet inequality `<x, normal> <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: RationalVector,
    pub offset: Rational,
}

impl Facet {
    pub fn contains(&self, x: &RationalVector) -> bool {
        x.dot(&self.normal) == self.offset
    }

    pub fn satisfied_by(&self, x: &RationalVector) -> bool {
        x.dot(&self.normal) <= self.offset
    }
}

/// Full-dimensional convex polytope with `0` in its interior.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<RationalVector>,
    facets: Vec<Facet>,
    facet_vertices: Vec<BitSet>,
    vertex_facets: Vec<BitSet>,
    faces: OnceLock<Vec<Face>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices && self.facets == other.facets
    }
}

impl Eq for Polytope {}

impl Polytope {
    /// Assembles a polytope from already irredundant representations.
    pub(crate) fn from_parts(dim: usize, mut vertices: Vec<RationalVector>, mut facets: Vec<Facet>) -> Self {
        vertices.sort();
        vertices.dedup();
        facets.sort();
        facets.dedup();
        let nv = vertices.len();
        let nf = facets.len();
        let mut facet_vertices = vec![BitSet::new(nv); nf];
        let mut vertex_facets = vec![BitSet::new(nf); nv];
        for (f, facet) in facets.iter().enumerate() {
            for (v, vert) in vertices.iter().enumerate() {
                if facet.contains(vert) {
                    facet_vertices[f].insert(v);
                    vertex_facets[v].insert(f);
                }
            }
        }
        Polytope {
            dim,
            vertices,
            facets,
            facet_vertices,
            vertex_facets,
            faces: OnceLock::new(),
        }
    }

    /// Convex hull of lattice points; see [`convex_hull`].
    pub fn from_points(points: &[RationalVector]) -> Result<Self> {
        let dim = points.first().map_or(0, RationalVector::dim);
        convex_hull(points, dim)
    }

    pub fn from_int_points(points: &[&[i64]]) -> Result<Self> {
        let pts: Vec<RationalVector> = points.iter().map(|p| RationalVector::from_ints(p)).collect();
        Self::from_points(&pts)
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertex_index(&self, v: &RationalVector) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub(crate) fn require_vertex(&self, v: &RationalVector) -> Result<usize> {
        self.vertex_index(v).ok_or_else(|| Error::VertexNotFound(v.to_string()))
    }

    pub fn facet_vertex_set(&self, facet: usize) -> &BitSet {
        &self.facet_vertices[facet]
    }

    /// Indices of the vertices lying on `facet`.
    pub fn facet_vertices(&self, facet: usize) -> Vec<usize> {
        self.facet_vertices[facet].iter().collect()
    }

    /// Indices of the facets containing vertex `v`.
    pub fn vertex_facets(&self, v: usize) -> Vec<usize> {
        self.vertex_facets[v].iter().collect()
    }

    pub fn vertex_facet_set(&self, v: usize) -> &BitSet {
        &self.vertex_facets[v]
    }

    /// Indices of the facets whose hyperplane contains `x`.
    pub fn facets_containing(&self, x: &RationalVector) -> Vec<usize> {
        (0..self.facets.len()).filter(|&f| self.facets[f].contains(x)).collect()
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.facets.iter().all(|f| f.satisfied_by(x))
    }

    pub fn is_on_boundary(&self, x: &RationalVector) -> bool {
        self.contains(x) && self.facets.iter().any(|f| f.contains(x))
    }

    /// Whether every vertex is a lattice point.
    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(RationalVector::is_integral)
    }

    /// `{n : <m, n> <= 1 for every vertex m}`; an involution.
    pub fn dual(&self) -> Polytope {
        let vertices: Vec<RationalVector> = self
            .facets
            .iter()
            .map(|f| f.normal.scale(&f.offset.recip()))
            .collect();
        let facets: Vec<Facet> = self
            .vertices
            .iter()
            .map(|v| {
                let n = RationalVector::from_bigints(&v.primitive_integer());
                // v = s n with s > 0, so <y, v> <= 1 becomes <y, n> <= 1/s
                let i = (0..n.dim()).find(|&i| !n[i].is_zero()).expect("vertex at origin");
                let s = &v[i] / &n[i];
                Facet { normal: n, offset: s.recip() }
            })
            .collect();
        Polytope::from_parts(self.dim, vertices, facets)
    }

    /// Lattice polytope whose dual is a lattice polytope, i.e. every facet
    /// is at lattice distance one from the origin.
    pub fn is_reflexive(&self) -> bool {
        self.is_lattice() && self.facets.iter().all(|f| f.offset.is_one())
    }

    pub(crate) fn require_reflexive(&self) -> Result<()> {
        if self.is_reflexive() {
            Ok(())
        } else {
            Err(Error::NotReflexive)
        }
    }

    /// Applies an invertible linear map given by a matrix acting on column
    /// vectors (`x -> A x`) and rebuilds the polytope.
    pub fn transform(&self, map: &UnimodularMap) -> Polytope {
        let vertices: Vec<RationalVector> = self.vertices.iter().map(|v| map.apply(v)).collect();
        let inv_t = map.inverse().transpose();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet { normal: inv_t.apply(&f.normal), offset: f.offset.clone() })
            .collect();
        Polytope::from_parts(self.dim, vertices, facets)
    }

    /// Lattice points of the closed polytope, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<RationalVector> {
        let idx: Vec<usize> = (0..self.vertices.len()).collect();
        self.lattice_points_of(&idx)
    }

    /// Lattice points of the closed face spanned by the given vertices.
    pub(crate) fn lattice_points_of(&self, vertex_indices: &[usize]) -> Vec<RationalVector> {
        let verts: Vec<&RationalVector> = vertex_indices.iter().map(|&i| &self.vertices[i]).collect();
        let facets: Vec<&Facet> = self
            .facets
            .iter()
            .enumerate()
            .filter(|(f, _)| vertex_indices.iter().all(|&v| self.facet_vertices[*f].contains(v)))
            .map(|(_, f)| f)
            .collect();
        let mut lo = Vec::with_capacity(self.dim);
        let mut hi = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let min = verts.iter().map(|v| v[i].clone()).min().expect("empty face");
            let max = verts.iter().map(|v| v[i].clone()).max().expect("empty face");
            lo.push(min.ceil().to_integer());
            hi.push(max.floor().to_integer());
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return out;
        }
        loop {
            let p = RationalVector::from_bigints(&cur);
            if self.contains(&p) && facets.iter().all(|f| f.contains(&p)) {
                out.push(p);
            }
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    for j in i + 1..self.dim {
                        cur[j] = lo[j].clone();
                    }
                    break;
                }
            }
        }
    }

    /// Normalized volume of the solid polytope (a unimodular simplex has
    /// volume `1/d!`).
    pub fn lattice_volume(&self) -> Rational {
        volume::polytope_volume(self)
    }

    /// Exact centroid of the solid polytope.
    pub fn barycenter(&self) -> RationalVector {
        volume::barycenter(self)
    }

    /// Whether the lattice polytope is smooth: at every vertex there are
    /// exactly `dim` edges whose primitive directions form a lattice basis.
    pub fn is_delzant(&self) -> bool {
        if !self.is_lattice() {
            return false;
        }
        let edges = self.edges();
        (0..self.vertices.len()).all(|v| {
            let dirs: Vec<Vec<num_bigint::BigInt>> = edges
                .iter()
                .filter_map(|&(a, b)| {
                    if a == v {
                        Some(b)
                    } else if b == v {
                        Some(a)
                    } else {
                        None
                    }
                })
                .map(|w| self.vertices[w].sub(&self.vertices[v]).primitive_integer())
                .collect();
            dirs.len() == self.dim && crate::linalg::int_determinant(&dirs).abs().is_one()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    pub(crate) fn square() -> Polytope {
        Polytope::from_int_points(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap()
    }

    pub(crate) fn cube() -> Polytope {
        let mut pts = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    pts.push(RationalVector::from_ints(&[x, y, z]));
                }
            }
        }
        Polytope::from_points(&pts).unwrap()
    }

    fn ints(v: &[&[i64]]) -> Vec<RationalVector> {
        let mut out: Vec<_> = v.iter().map(|p| RationalVector::from_ints(p)).collect();
        out.sort();
        out
    }

    #[test]
    fn dual_of_square_is_diamond() {
        let d = square().dual();
        assert_eq!(d.vertices(), ints(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]).as_slice());
        assert_eq!(d.dual(), square());
    }

    #[test]
    fn dual_of_triangle() {
        let t = Polytope::from_int_points(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        assert_eq!(t.dual().vertices(), ints(&[&[1, 1], &[-2, 1], &[1, -2]]).as_slice());
        assert_eq!(t.dual().dual(), t);
    }

    #[test]
    fn dual_is_involution_on_cube() {
        let c = cube();
        assert_eq!(c.dual().dual(), c);
        assert_eq!(c.dual().vertices().len(), 6);
    }

    #[test]
    fn reflexivity() {
        assert!(Polytope::from_int_points(&[&[-1], &[1]]).unwrap().is_reflexive());
        assert!(cube().is_reflexive());
        let octagon = Polytope::from_int_points(&[
            &[1, 2], &[2, 1], &[2, -1], &[1, -2], &[-1, -2], &[-2, -1], &[-2, 1], &[-1, 2],
        ])
        .unwrap();
        assert!(!octagon.is_reflexive());
        let edge = octagon
            .facets()
            .iter()
            .find(|f| f.normal == RationalVector::from_ints(&[1, 1]))
            .unwrap();
        assert_eq!(edge.offset, rat(3));
        assert!(!octagon.dual().is_lattice());
        assert_eq!(octagon.dual().vertices()[0].coords().iter().filter(|c| !c.is_integer()).count() > 0, true);
    }

    #[test]
    fn rational_dual_offsets() {
        let octagon = Polytope::from_int_points(&[
            &[1, 2], &[2, 1], &[2, -1], &[1, -2], &[-1, -2], &[-2, -1], &[-2, 1], &[-1, 2],
        ])
        .unwrap();
        let d = octagon.dual();
        assert!(d.vertices().contains(&RationalVector::new(vec![ratio(1, 3), ratio(1, 3)])));
        assert_eq!(d.dual(), octagon);
    }

    #[test]
    fn delzant() {
        assert!(cube().is_delzant());
        let octahedron = cube().dual();
        assert!(!octahedron.is_delzant());
        let hexagon =
            Polytope::from_int_points(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]])
                .unwrap();
        assert!(hexagon.is_delzant());
    }

    #[test]
    fn lattice_points_of_square() {
        assert_eq!(square().lattice_points().len(), 9);
        let pts = square().lattice_points_of(&square().facet_vertices(0));
        assert_eq!(pts.len(), 3);
    }
}
