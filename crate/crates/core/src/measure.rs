//! Integral surface measures on the boundary and their discretizations.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{Rational, RationalVector};
use crate::linalg::affine_rank;
use crate::polytope::{barycentric_subdivision, placing_triangulation, simplex_volume, vertices_of_inequalities, Polytope};
use crate::roots::{Side, WeylGroup};

/// Lattice-normalized volume of every facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceMeasure {
    #[serde(with = "crate::arith::serde_rational_vec")]
    pub facet_masses: Vec<Rational>,
    #[serde(with = "crate::arith::serde_rational")]
    pub total: Rational,
}

pub fn surface_measure(p: &Polytope) -> SurfaceMeasure {
    let facet_masses: Vec<Rational> = (0..p.facets().len()).map(|f| p.facet_volume(f)).collect();
    let total = facet_masses.iter().sum();
    SurfaceMeasure { facet_masses, total }
}

/// A probability measure on finitely many boundary points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedPointCloud {
    /// Whether the points live in `M_R` or `N_R`.
    pub side: Side,
    pub points: Vec<RationalVector>,
    #[serde(with = "crate::arith::serde_rational_vec")]
    pub masses: Vec<Rational>,
    /// Index of a facet containing each point.
    pub facets: Vec<usize>,
    /// Index of the group element whose chamber the point was built in.
    pub chambers: Vec<Option<usize>>,
}

impl WeightedPointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_mass(&self) -> Rational {
        self.masses.iter().sum()
    }

    /// Mass carried by each facet.
    pub fn facet_mass(&self, facets: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); facets];
        for (f, m) in self.facets.iter().zip(&self.masses) {
            out[*f] += m;
        }
        out
    }

    /// A cloud from explicit points and masses (no tags); masses are
    /// normalized to total 1.
    pub fn from_points(side: Side, points: Vec<RationalVector>, masses: Vec<Rational>) -> Self {
        let total: Rational = masses.iter().sum();
        let masses = masses.iter().map(|m| m / &total).collect();
        let n = points.len();
        WeightedPointCloud { side, points, masses, facets: vec![0; n], chambers: vec![None; n] }
    }
}

/// Centroids and volume masses after `k` barycentric subdivisions.
fn refine(simplex: Vec<RationalVector>, k: usize, out: &mut Vec<(RationalVector, Rational)>) {
    let vol = simplex_volume(&simplex);
    let mut cells = vec![simplex];
    for _ in 0..k {
        cells = cells.iter().flat_map(|c| barycentric_subdivision(c)).collect();
    }
    let share = vol / Rational::from_integer(cells.len().into());
    for c in cells {
        out.push((RationalVector::centroid(c.iter()), share.clone()));
    }
}

/// Cells of a triangulation of the convex hull of `points` using all of them.
fn triangulate(points: &[RationalVector]) -> Vec<Vec<RationalVector>> {
    placing_triangulation(points)
        .into_iter()
        .map(|s| s.into_iter().map(|i| points[i].clone()).collect())
        .collect()
}

/// Quadrature points of the boundary with masses proportional to the
/// integral surface measure, normalized to total 1.
///
/// Without a group, each facet is triangulated on all of its lattice points
/// (and vertices), every simplex is barycentrically subdivided `k` times,
/// and each cell contributes its centroid. With a group acting on `side`,
/// the same is done for the pieces `F ∩ C+` of every facet `F` meeting the
/// open positive chamber, and the result is moved by every group element.
/// Centroids then lie in open chambers, so the cloud is exactly invariant.
pub fn discretize(p: &Polytope, k: usize, group: Option<&WeylGroup>, side: Side) -> WeightedPointCloud {
    let d = p.dim();
    let mut points = Vec::new();
    let mut masses = Vec::new();
    let mut facets = Vec::new();
    let mut chambers = Vec::new();
    match group {
        None => {
            for f in 0..p.facets().len() {
                let mut pts = p.lattice_points_of(&p.facet_vertices(f));
                pts.extend(p.facet_vertices(f).iter().map(|&v| p.vertices()[v].clone()));
                pts.sort();
                pts.dedup();
                let mut cells = Vec::new();
                for s in triangulate(&pts) {
                    refine(s, k, &mut cells);
                }
                for (x, m) in cells {
                    points.push(x);
                    masses.push(m);
                    facets.push(f);
                    chambers.push(None);
                }
            }
        }
        Some(w) => {
            let zero = Rational::zero();
            let walls = w.walls(side);
            let mut cells = Vec::new();
            for (f, facet) in p.facets().iter().enumerate() {
                let mut ineqs: Vec<(RationalVector, Rational)> =
                    p.facets().iter().map(|g| (g.normal.clone(), g.offset.clone())).collect();
                ineqs.push((facet.normal.neg(), -facet.offset.clone()));
                ineqs.extend(walls.iter().map(|a| (a.neg(), zero.clone())));
                let mut piece = vertices_of_inequalities(&ineqs, d);
                if piece.is_empty() || affine_rank(piece.iter()) != Some(d - 1) {
                    continue;
                }
                piece.extend(
                    p.lattice_points_of(&p.facet_vertices(f))
                        .into_iter()
                        .filter(|x| walls.iter().all(|a| x.dot(a) >= zero)),
                );
                piece.sort();
                piece.dedup();
                for s in triangulate(&piece) {
                    refine(s, k, &mut cells);
                }
            }
            for (e, elem) in w.elements().iter().enumerate() {
                for (x, m) in &cells {
                    let y = elem.act(x, side);
                    let f = p.facets_containing(&y)[0];
                    points.push(y);
                    masses.push(m.clone());
                    facets.push(f);
                    chambers.push(Some(e));
                }
            }
        }
    }
    let total: Rational = masses.iter().sum();
    let masses = masses.into_iter().map(|m| m / &total).collect();
    WeightedPointCloud { side, points, masses, facets, chambers }
}

/// Mass of every closed chamber, indexed like the group elements. A point
/// on walls is split equally among the chambers containing it.
pub fn chamber_mass(cloud: &WeightedPointCloud, group: &WeylGroup) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); group.order()];
    for (x, m) in cloud.points.iter().zip(&cloud.masses) {
        let cs = group.chambers_containing(x, cloud.side);
        let share = m / Rational::from_integer(cs.len().into());
        for c in cs {
            out[c] += &share;
        }
    }
    out
}

/// Groups points by their exact coordinates, summing masses.
pub fn as_measure(cloud: &WeightedPointCloud) -> BTreeMap<RationalVector, Rational> {
    let mut out = BTreeMap::new();
    for (x, m) in cloud.points.iter().zip(&cloud.masses) {
        *out.entry(x.clone()).or_insert_with(Rational::zero) += m;
    }
    out
}

/// Whether every group element maps the weighted cloud onto itself.
pub fn is_invariant(cloud: &WeightedPointCloud, group: &WeylGroup) -> bool {
    let base = as_measure(cloud);
    group.elements().iter().all(|w| {
        let mut moved = BTreeMap::new();
        for (x, m) in &base {
            *moved.entry(w.act(x, cloud.side)).or_insert_with(Rational::zero) += m;
        }
        moved == base
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::arith::{rat, ratio};
    use crate::roots::{build_root_system, weyl_group, Family, LatticeChoice};

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

    #[test]
    fn surface_measures() {
        let c = cube();
        let s = surface_measure(&c);
        assert!(s.facet_masses.iter().all(|m| *m == rat(4)));
        assert_eq!(s.total, rat(24));
        let o = surface_measure(&c.dual());
        assert!(o.facet_masses.iter().all(|m| *m == ratio(1, 2)));
        assert_eq!(o.total, rat(4));
    }

    #[test]
    fn plain_discretizations() {
        let seg = Polytope::from_int_points(&[&[-1], &[1]]).unwrap();
        for k in 0..3 {
            let c = discretize(&seg, k, None, Side::M);
            assert_eq!(c.points, vec![RationalVector::from_ints(&[-1]), RationalVector::from_ints(&[1])]);
            assert_eq!(c.masses, vec![ratio(1, 2), ratio(1, 2)]);
        }
        let square = Polytope::from_int_points(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap();
        let c = discretize(&square, 0, None, Side::M);
        assert_eq!(c.len(), 8);
        assert!(c.masses.iter().all(|m| *m == ratio(1, 8)));
        assert!(c.points.contains(&RationalVector::new(vec![rat(1), ratio(1, 2)])));
        let oct = cube().dual();
        let c = discretize(&oct, 0, None, Side::M);
        assert_eq!(c.len(), 8);
        assert!(c.points.iter().all(|x| x.iter().all(|q| q.numer().magnitude() == &1u32.into() && *q.denom() == 3.into())));
    }

    #[test]
    fn invariant_cloud_of_the_cube() {
        let b3 = build_root_system(Family::B, 3, LatticeChoice::Root).unwrap();
        let w = weyl_group(&b3).unwrap();
        // in root coordinates of B3 the cube is the orbit of 2ω3 = (1, 2, 3)
        let m = b3.weight_from_fundamental(&[0, 0, 2]).unwrap();
        let orbit = crate::roots::weyl_orbit(&b3, &m).unwrap();
        let p = Polytope::from_points(&orbit).unwrap();
        for k in 0..2 {
            let c = discretize(&p, k, Some(&w), Side::M);
            assert!(c.total_mass().is_one());
            assert!(is_invariant(&c, &w));
            assert!(chamber_mass(&c, &w).iter().all(|m| *m == ratio(1, 48)));
            let per_facet = c.facet_mass(p.facets().len());
            assert!(per_facet.iter().all(|m| *m == ratio(1, 6)));
            for (x, f) in c.points.iter().zip(&c.facets) {
                assert!(p.facets()[*f].contains(x));
            }
        }
    }
}
