//! Triangulations and lattice-normalized volumes.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{Rational, RationalVector};
use crate::linalg::{determinant, gcd_of_maximal_minors, rank, rref, Matrix};

use super::Polytope;

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Volume of the simplex spanned by `vertices` in the lattice of its affine
/// span, normalized so that a unimodular `k`-simplex has volume `1/k!`.
/// A single point has volume 1.
pub fn simplex_volume(vertices: &[RationalVector]) -> Rational {
    let k = vertices.len() - 1;
    if k == 0 {
        return Rational::one();
    }
    let edges: Vec<RationalVector> = vertices[1..].iter().map(|v| v.sub(&vertices[0])).collect();
    let d = crate::arith::denominator_lcm(edges.iter().flat_map(|e| e.coords()));
    let dq = Rational::from_integer(d.clone());
    let scaled: Vec<Vec<BigInt>> = edges
        .iter()
        .map(|e| e.coords().iter().map(|c| (c * &dq).to_integer()).collect())
        .collect();
    let g = gcd_of_maximal_minors(&scaled);
    Rational::new(g, num_traits::pow(d, k) * factorial(k))
}

/// Coordinates on which the affine span of `basis` projects injectively.
fn projection_columns(points: &[RationalVector], basis: &[usize]) -> Vec<usize> {
    let base = &points[basis[0]];
    let mut m: Matrix = basis[1..].iter().map(|&i| points[i].sub(base).into_coords()).collect();
    rref(&mut m)
}

fn projected_det(points: &[RationalVector], facet: &[usize], x: &RationalVector, cols: &[usize]) -> Rational {
    let base = &points[facet[0]];
    let mut rows: Matrix = facet[1..]
        .iter()
        .map(|&i| cols.iter().map(|&c| &points[i][c] - &base[c]).collect())
        .collect();
    rows.push(cols.iter().map(|&c| &x[c] - &base[c]).collect());
    determinant(&rows)
}

/// Lexicographic placing triangulation of a point configuration.
///
/// Points are inserted in lexicographic order; each new point is a vertex of
/// the hull of the points before it and is coned over the visible boundary
/// facets, so every point of the configuration is used. Returns simplices
/// as index lists into `points` (duplicates are ignored).
pub fn placing_triangulation(points: &[RationalVector]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    order.dedup_by(|a, b| points[*a] == points[*b]);
    let Some(&first) = order.first() else {
        return Vec::new();
    };
    let mut simplices: Vec<Vec<usize>> = vec![vec![first]];
    let mut basis = vec![first];
    let mut cols: Vec<usize> = Vec::new();
    for &j in &order[1..] {
        let p = &points[j];
        let mut diffs: Matrix = basis[1..].iter().map(|&i| points[i].sub(&points[basis[0]]).into_coords()).collect();
        diffs.push(p.sub(&points[basis[0]]).into_coords());
        if rank(&diffs) == basis.len() {
            for s in &mut simplices {
                s.push(j);
            }
            basis.push(j);
            cols = projection_columns(points, &basis);
            continue;
        }
        let mut boundary: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
        for s in &simplices {
            for (i, &opp) in s.iter().enumerate() {
                let mut f: Vec<usize> = s.iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &v)| v).collect();
                f.sort_unstable();
                let e = boundary.entry(f).or_insert((0, opp));
                e.0 += 1;
            }
        }
        let mut visible: Vec<Vec<usize>> = boundary
            .into_iter()
            .filter(|(f, (count, opp))| {
                *count == 1 && {
                    let sp = projected_det(points, f, p, &cols);
                    let so = projected_det(points, f, &points[*opp], &cols);
                    (sp.is_positive() && so.is_negative()) || (sp.is_negative() && so.is_positive())
                }
            })
            .map(|(f, _)| f)
            .collect();
        visible.sort();
        for mut f in visible {
            f.push(j);
            simplices.push(f);
        }
    }
    for s in &mut simplices {
        s.sort_unstable();
    }
    simplices.sort();
    simplices
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// One barycentric subdivision step: a child for every ordering of the
/// vertices, spanned by the barycenters of the successive initial segments.
/// Each of the `(k+1)!` children of a `k`-simplex has `1/(k+1)!` of its volume.
pub fn barycentric_subdivision(simplex: &[RationalVector]) -> Vec<Vec<RationalVector>> {
    permutations(simplex.len())
        .into_iter()
        .map(|perm| {
            (1..=perm.len())
                .map(|k| RationalVector::centroid(perm[..k].iter().map(|&i| &simplex[i])))
                .collect()
        })
        .collect()
}

/// Lattice-normalized volume of `conv(points)` in its own affine span.
pub fn lattice_volume_of_points(points: &[RationalVector]) -> Rational {
    placing_triangulation(points)
        .iter()
        .map(|s| {
            let verts: Vec<RationalVector> = s.iter().map(|&i| points[i].clone()).collect();
            simplex_volume(&verts)
        })
        .sum()
}

/// Simplices `conv(0, s)` for a triangulation `s` of every facet.
fn cone_simplices(p: &Polytope) -> Vec<Vec<RationalVector>> {
    let mut out = Vec::new();
    for f in 0..p.facets().len() {
        let verts: Vec<RationalVector> = p.facet_vertices(f).iter().map(|&v| p.vertices()[v].clone()).collect();
        for s in placing_triangulation(&verts) {
            out.push(s.iter().map(|&i| verts[i].clone()).collect());
        }
    }
    out
}

fn cone_volume(s: &[RationalVector]) -> Rational {
    let m: Matrix = s.iter().map(|v| v.coords().to_vec()).collect();
    determinant(&m).abs() / Rational::from_integer(factorial(s.len()))
}

pub(crate) fn polytope_volume(p: &Polytope) -> Rational {
    cone_simplices(p).iter().map(|s| cone_volume(s)).sum()
}

pub(crate) fn barycenter(p: &Polytope) -> RationalVector {
    let d = p.dim();
    let mut total = Rational::zero();
    let mut acc = RationalVector::zeros(d);
    let denom = Rational::from_integer(BigInt::from(d + 1));
    for s in cone_simplices(p) {
        let vol = cone_volume(&s);
        let sum = s.iter().fold(RationalVector::zeros(d), |a, v| a.add(v));
        acc = acc.add(&sum.scale(&(&vol / &denom)));
        total += vol;
    }
    acc.scale(&total.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn pts(v: &[&[i64]]) -> Vec<RationalVector> {
        v.iter().map(|p| RationalVector::from_ints(p)).collect()
    }

    #[test]
    fn simplex_volumes() {
        assert_eq!(simplex_volume(&pts(&[&[0, 0], &[1, 0]])), rat(1));
        assert_eq!(simplex_volume(&pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), ratio(1, 2));
        assert_eq!(simplex_volume(&pts(&[&[0, 0], &[2, 0], &[0, 2]])), rat(2));
        // segment of lattice length 3 in a primitive direction
        assert_eq!(simplex_volume(&pts(&[&[2, 1], &[-1, 1]])), rat(3));
        // half-integral endpoints
        let half = vec![RationalVector::new(vec![ratio(1, 2), rat(0)]), RationalVector::from_ints(&[1, 0])];
        assert_eq!(simplex_volume(&half), ratio(1, 2));
    }

    #[test]
    fn placing_uses_every_point() {
        let seg = pts(&[&[1, 1], &[1, -1], &[1, 0]]);
        let t = placing_triangulation(&seg);
        assert_eq!(t.len(), 2);
        let square = pts(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[1, 1], &[2, 1], &[0, 2], &[1, 2], &[2, 2]]);
        let t = placing_triangulation(&square);
        assert_eq!(t.len(), 8);
        for s in &t {
            let verts: Vec<_> = s.iter().map(|&i| square[i].clone()).collect();
            assert_eq!(simplex_volume(&verts), ratio(1, 2));
        }
    }

    #[test]
    fn barycentric_children_share_volume() {
        let tri = pts(&[&[0, 0], &[2, 0], &[0, 2]]);
        let kids = barycentric_subdivision(&tri);
        assert_eq!(kids.len(), 6);
        for k in &kids {
            assert_eq!(simplex_volume(k), ratio(1, 3));
        }
        let seg = pts(&[&[1, -1], &[1, 1]]);
        let kids = barycentric_subdivision(&seg);
        assert_eq!(kids.len(), 2);
        assert!(kids.iter().all(|k| simplex_volume(k) == rat(1)));
    }

    #[test]
    fn placing_in_an_embedded_plane() {
        // cube facet x = 1, all nine lattice points
        let mut facet = Vec::new();
        for y in -1..=1 {
            for z in -1..=1 {
                facet.push(RationalVector::from_ints(&[1, y, z]));
            }
        }
        let t = placing_triangulation(&facet);
        let total: Rational = t
            .iter()
            .map(|s| simplex_volume(&s.iter().map(|&i| facet[i].clone()).collect::<Vec<_>>()))
            .sum();
        assert_eq!(total, rat(4));
        assert_eq!(t.len(), 8);
    }

    #[test]
    fn polytope_volume_and_barycenter() {
        let square = Polytope::from_int_points(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap();
        assert_eq!(square.lattice_volume(), rat(4));
        let p2 = Polytope::from_int_points(&[&[-1, -1], &[2, -1], &[-1, 2]]).unwrap();
        assert_eq!(p2.lattice_volume(), ratio(9, 2));
        assert_eq!(p2.barycenter(), RationalVector::zeros(2));
        let off = Polytope::from_int_points(&[&[-1, -1], &[1, -1], &[-1, 1], &[2, 2]]).unwrap();
        assert_ne!(off.barycenter(), RationalVector::zeros(2));
    }
}
