//! Boundary face lattice, closed stars and the dual facets `tau_m`.

use std::collections::{HashSet, VecDeque};

use crate::arith::{Rational, RationalVector};
use crate::bitset::BitSet;
use crate::error::Result;
use crate::linalg::affine_rank;

use super::Polytope;

/// A proper face of the boundary.
///
/// `vertices` are indices into [`Polytope::vertices`], `facets` the indices
/// of every facet containing the face.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
    pub facets: Vec<usize>,
}

impl Face {
    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

impl Polytope {
    /// All proper faces, by increasing dimension and then lexicographically
    /// on the sorted vertex-index lists. Cached after the first call.
    pub fn faces(&self) -> &[Face] {
        self.faces.get_or_init(|| self.compute_faces())
    }

    fn compute_faces(&self) -> Vec<Face> {
        let nf = self.facets.len();
        let mut seen: HashSet<BitSet> = HashSet::new();
        let mut queue: VecDeque<BitSet> = VecDeque::new();
        for fv in &self.facet_vertices {
            if seen.insert(fv.clone()) {
                queue.push_back(fv.clone());
            }
        }
        while let Some(face) = queue.pop_front() {
            for fv in &self.facet_vertices {
                let g = face.intersection(fv);
                if !g.is_empty() && g != face && seen.insert(g.clone()) {
                    queue.push_back(g);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|set| {
                let vertices: Vec<usize> = set.iter().collect();
                let dim = affine_rank(vertices.iter().map(|&v| &self.vertices[v])).unwrap_or(0);
                let facets = (0..nf).filter(|&f| set.is_subset(&self.facet_vertices[f])).collect();
                Face { vertices, dim, facets }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        faces
    }

    /// Owned copy of [`Polytope::faces`].
    pub fn enumerate_faces(&self) -> Vec<Face> {
        self.faces().to_vec()
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces().iter().filter(move |f| f.dim == k)
    }

    /// Vertex pairs spanning an edge. Two vertices are adjacent iff no third
    /// vertex lies on every facet through both of them.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let common = self.vertex_facets[u].intersection(&self.vertex_facets[v]);
                let shared = (0..n).any(|w| w != u && w != v && common.is_subset(&self.vertex_facets[w]));
                if !shared {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Every closed boundary face containing the vertex `m`.
    pub fn closed_star(&self, m: &RationalVector) -> Result<Vec<Face>> {
        let idx = self.require_vertex(m)?;
        Ok(self.faces().iter().filter(|f| f.contains_vertex(idx)).cloned().collect())
    }

    /// Whether `x` lies in the closed star of vertex index `m`, i.e. on some
    /// facet through `m`.
    pub fn star_contains(&self, m: usize, x: &RationalVector) -> bool {
        self.contains(x) && self.vertex_facets[m].iter().any(|f| self.facets[f].contains(x))
    }

    /// The facet `tau_m = {n in dual : <m, n> = 1}` of the dual polytope.
    /// Vertex and facet indices refer to `self.dual()`.
    pub fn dual_facet(&self, m: &RationalVector) -> Result<Face> {
        self.require_vertex(m)?;
        let dual = self.dual();
        let one = Rational::from_integer(1.into());
        let vertices: Vec<usize> = (0..dual.vertices.len())
            .filter(|&i| dual.vertices[i].dot(m) == one)
            .collect();
        let facets = (0..dual.facets.len())
            .filter(|&f| vertices.iter().all(|&v| dual.facet_vertices[f].contains(v)))
            .collect();
        Ok(Face { vertices, dim: self.dim - 1, facets })
    }

    /// Normalized volume of a face inside the lattice points of its affine
    /// span (a unimodular `k`-simplex has volume `1/k!`).
    pub fn face_volume(&self, face: &Face) -> Rational {
        let pts: Vec<RationalVector> = face.vertices.iter().map(|&v| self.vertices[v].clone()).collect();
        super::volume::lattice_volume_of_points(&pts)
    }

    pub fn facet_volume(&self, facet: usize) -> Rational {
        let pts: Vec<RationalVector> =
            self.facet_vertices[facet].iter().map(|v| self.vertices[v].clone()).collect();
        super::volume::lattice_volume_of_points(&pts)
    }
}

#[cfg(test)]
mod tests {
    use crate::arith::{ratio, RationalVector};
    use crate::polytope::Polytope;

    fn cube() -> Polytope {
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

    fn count_by_dim(p: &Polytope) -> Vec<usize> {
        (0..p.dim()).map(|k| p.faces_of_dim(k).count()).collect()
    }

    #[test]
    fn face_counts() {
        let square = Polytope::from_int_points(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap();
        assert_eq!(count_by_dim(&square), vec![4, 4]);
        assert_eq!(count_by_dim(&cube()), vec![8, 12, 6]);
        assert_eq!(count_by_dim(&cube().dual()), vec![6, 12, 8]);
        assert_eq!(cube().edges().len(), 12);
    }

    #[test]
    fn faces_sorted_and_consistent() {
        let c = cube();
        let faces = c.faces();
        for w in faces.windows(2) {
            assert!((w[0].dim, &w[0].vertices) < (w[1].dim, &w[1].vertices));
        }
        for f in faces {
            for &facet in &f.facets {
                assert!(f.vertices.iter().all(|&v| c.facet_vertex_set(facet).contains(v)));
            }
        }
    }

    #[test]
    fn closed_star_of_cube_corner() {
        let c = cube();
        let m = RationalVector::from_ints(&[1, 1, 1]);
        let star = c.closed_star(&m).unwrap();
        // 3 facets, 3 edges, the vertex itself
        assert_eq!(star.iter().filter(|f| f.dim == 2).count(), 3);
        assert_eq!(star.iter().filter(|f| f.dim == 1).count(), 3);
        assert_eq!(star.iter().filter(|f| f.dim == 0).count(), 1);
        assert!(c.closed_star(&RationalVector::from_ints(&[1, 0, 0])).is_err());
    }

    #[test]
    fn octahedron_star_has_four_facets() {
        let o = cube().dual();
        let star = o.closed_star(&RationalVector::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(star.iter().filter(|f| f.dim == 2).count(), 4);
    }

    #[test]
    fn drawn_triangle_star_and_tau() {
        let t = Polytope::from_int_points(&[&[1, -1], &[1, 2], &[-2, -1]]).unwrap();
        let m = RationalVector::from_ints(&[1, 2]);
        let star = t.closed_star(&m).unwrap();
        assert_eq!(star.iter().filter(|f| f.dim == 1).count(), 2);
        let tau = t.dual_facet(&m).unwrap();
        let dual = t.dual();
        let verts: Vec<_> = tau.vertices.iter().map(|&i| dual.vertices()[i].clone()).collect();
        assert_eq!(
            verts,
            vec![RationalVector::from_ints(&[-1, 1]), RationalVector::from_ints(&[1, 0])]
        );
    }

    #[test]
    fn dual_facets_of_square_and_cube() {
        let square = Polytope::from_int_points(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap();
        let tau = square.dual_facet(&RationalVector::from_ints(&[1, 1])).unwrap();
        let d = square.dual();
        let verts: Vec<_> = tau.vertices.iter().map(|&i| d.vertices()[i].clone()).collect();
        assert_eq!(verts, vec![RationalVector::from_ints(&[0, 1]), RationalVector::from_ints(&[1, 0])]);

        let c = cube();
        let tau = c.dual_facet(&RationalVector::from_ints(&[1, 1, 1])).unwrap();
        assert_eq!(tau.vertices.len(), 3);
        assert_eq!(tau.facets.len(), 1);
    }

    #[test]
    fn face_volumes() {
        let c = cube();
        let facet = c.faces_of_dim(2).next().unwrap().clone();
        assert_eq!(c.face_volume(&facet), ratio(4, 1));
        let o = c.dual();
        let facet = o.faces_of_dim(2).next().unwrap().clone();
        assert_eq!(o.face_volume(&facet), ratio(1, 2));
        let seg = Polytope::from_int_points(&[&[-1], &[1]]).unwrap();
        assert_eq!(seg.lattice_volume(), ratio(2, 1));
    }
}
