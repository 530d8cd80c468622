//! Recognizing Weyl polytopes from their vertices alone.
//!
//! A lattice reflection preserving the vertex set is orthogonal for the
//! invariant form `G`, and it moves some vertex `b` of any fixed vertex basis
//! to another vertex `u` of the same `G`-norm, with root line `u − b`. So the
//! candidate roots are the primitive differences `u − b` for `b` in a basis;
//! each candidate is kept iff its `G`-reflection is integral and permutes the
//! vertices. The group they generate is never enumerated: vertex
//! transitivity is an orbit computation, and the isomorphism type is read off
//! from the reflections.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{primitive, Rational, RationalVector};
use crate::linalg::{independent_rows, Matrix};
use crate::polytope::{invariant_form, Polytope, UnimodularMap};
use crate::roots::{classical_order, classical_reflection_count, Family, TypeLabel};

/// The subgroup of lattice automorphisms generated by reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionGroup {
    pub label: TypeLabel,
    pub order: u128,
    /// Primitive lattice vector on each root line, positive for the chamber
    /// containing [`WeylDetection::dominant_vertex`].
    pub roots: Vec<RationalVector>,
    pub reflections: Vec<UnimodularMap>,
    /// Indices into `roots`.
    pub simple_roots: Vec<usize>,
}

/// Witness that a polytope is the Weyl polytope of its reflection group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylDetection {
    pub group: ReflectionGroup,
    pub dominant_vertex: RationalVector,
    /// `<m, α_i∨>` for the simple roots in the order of `group.simple_roots`,
    /// with `α∨ = 2 G(α, ·) / G(α, α)`.
    pub weight: Vec<Rational>,
}

type IVec = Vec<BigInt>;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mat_ivec(m: &[IVec], v: &[BigInt]) -> IVec {
    m.iter().map(|r| dot(r, v)).collect()
}

struct Candidate {
    alpha: IVec,
    g_alpha: IVec,
    norm: BigInt,
}

impl Candidate {
    fn new(alpha: IVec, g: &[IVec]) -> Self {
        let g_alpha = mat_ivec(g, &alpha);
        let norm = dot(&alpha, &g_alpha);
        Candidate { alpha, g_alpha, norm }
    }

    /// `σ(x) = x − k α` with `k = 2 G(x, α) / G(α, α)`, if `k` is an integer.
    fn reflect(&self, x: &[BigInt]) -> Option<IVec> {
        let num: BigInt = dot(x, &self.g_alpha) * 2;
        let (k, r) = num.div_rem(&self.norm);
        if !r.is_zero() {
            return None;
        }
        Some(x.iter().zip(&self.alpha).map(|(xi, ai)| xi - &k * ai).collect())
    }

    fn matrix(&self) -> Option<UnimodularMap> {
        let d = self.alpha.len();
        let cols: Option<Vec<IVec>> = (0..d)
            .map(|i| {
                let mut e = vec![BigInt::zero(); d];
                e[i] = BigInt::from(1);
                self.reflect(&e)
            })
            .collect();
        let cols = cols?;
        let m: Matrix = (0..d)
            .map(|r| (0..d).map(|c| Rational::from_integer(cols[c][r].clone())).collect())
            .collect();
        UnimodularMap::from_rational(&m)
    }
}

/// Integer multiple of the invariant form with coprime entries.
fn integer_form(p: &Polytope) -> Vec<IVec> {
    let g = invariant_form(p);
    let l = crate::arith::denominator_lcm(g.iter().flatten());
    let lq = Rational::from_integer(l);
    let ints: Vec<IVec> = g.iter().map(|r| r.iter().map(|x| (x * &lq).to_integer()).collect()).collect();
    let gcd = ints.iter().flatten().fold(BigInt::zero(), |a, b| a.gcd(b));
    ints.iter().map(|r| r.iter().map(|x| x / &gcd).collect()).collect()
}

fn identify(rank: usize, count: usize, classes: usize) -> Option<(Family, usize)> {
    let n = rank;
    let mut options = Vec::new();
    if classical_reflection_count(Family::A, n) == count {
        options.push((Family::A, n));
    }
    if n >= 2 && classical_reflection_count(Family::B, n) == count {
        options.push((Family::B, n));
    }
    if n >= 4 && classical_reflection_count(Family::D, n) == count {
        options.push((Family::D, n));
    }
    if (6..=8).contains(&n) && classical_reflection_count(Family::E, n) == count {
        options.push((Family::E, n));
    }
    if n == 4 && count == 24 {
        options.push((Family::F, 4));
    }
    if n == 2 && count == 6 {
        options.push((Family::G, 2));
    }
    match options.len() {
        0 => None,
        1 => Some(options[0]),
        // B6 and E6 both have 36 reflections; E6 has a single class of them
        _ => options.into_iter().find(|&(f, _)| (f == Family::E) == (classes == 1)),
    }
}

/// The reflection subgroup of the lattice automorphisms and, if it acts
/// transitively on the vertices, the Weyl-polytope data. Works in the
/// polytope's own lattice `Z^d`; rational vertices are allowed.
pub fn is_weyl_polytope(p: &Polytope) -> Option<WeylDetection> {
    let d = p.dim();
    let scale = crate::arith::denominator_lcm(p.vertices().iter().flat_map(|v| v.coords()));
    let sq = Rational::from_integer(scale.clone());
    let verts: Vec<IVec> = p
        .vertices()
        .iter()
        .map(|v| v.iter().map(|c| (c * &sq).to_integer()).collect())
        .collect();
    let index: HashMap<IVec, usize> = verts.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let g = integer_form(p);
    let norms: Vec<BigInt> = verts.iter().map(|v| dot(v, &mat_ivec(&g, v))).collect();

    let rows: Matrix = p.vertices().iter().map(|v| v.coords().to_vec()).collect();
    let mut lines: BTreeSet<IVec> = BTreeSet::new();
    for b in independent_rows(&rows) {
        for (u, vu) in verts.iter().enumerate() {
            if u == b || norms[u] != norms[b] {
                continue;
            }
            let diff: IVec = vu.iter().zip(&verts[b]).map(|(x, y)| x - y).collect();
            let mut a = primitive(&diff);
            if a.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                a = a.iter().map(|x| -x).collect();
            }
            lines.insert(a);
        }
    }

    let mut refl: Vec<(Candidate, UnimodularMap, Vec<usize>)> = Vec::new();
    'candidates: for a in lines {
        let c = Candidate::new(a, &g);
        let Some(map) = c.matrix() else { continue };
        let mut perm = Vec::with_capacity(verts.len());
        for v in &verts {
            match c.reflect(v).and_then(|w| index.get(&w).copied()) {
                Some(j) => perm.push(j),
                None => continue 'candidates,
            }
        }
        refl.push((c, map, perm));
    }

    // vertex transitivity of the generated group
    let mut seen = vec![false; verts.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for (_, _, perm) in &refl {
            let w = perm[v];
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    if count != verts.len() {
        return None;
    }

    // a regular covector fixes the positive system and the dominant vertex
    let lambda: IVec = (2u32..)
        .map(|t| (0..d).map(|i| BigInt::from(t).pow(i as u32)).collect::<IVec>())
        .find(|l| refl.iter().all(|(c, _, _)| !dot(&c.alpha, l).is_zero()))
        .expect("some power sequence is regular");
    for (c, _, _) in refl.iter_mut() {
        if dot(&c.alpha, &lambda).is_negative() {
            *c = Candidate::new(c.alpha.iter().map(|x| -x).collect(), &g);
        }
    }
    let dominant = (0..verts.len()).max_by_key(|&v| dot(&verts[v], &lambda)).expect("nonempty");

    let alphas: Vec<&IVec> = refl.iter().map(|r| &r.0.alpha).collect();
    let positive: HashSet<&IVec> = alphas.iter().copied().collect();
    let simple: Vec<usize> = (0..refl.len())
        .filter(|&i| {
            (0..refl.len()).filter(|&j| j != i).all(|j| {
                refl[i]
                    .0
                    .reflect(alphas[j])
                    .is_some_and(|b| positive.contains(&b) && dot(&b, &lambda).is_positive())
            })
        })
        .collect();

    // irreducible components: roots linked by nonzero G-pairing
    let k = refl.len();
    let mut comp = vec![usize::MAX; k];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut head = 0;
        while head < members.len() {
            let i = members[head];
            for j in 0..k {
                if comp[j] == usize::MAX && !dot(alphas[i], &refl[j].0.g_alpha).is_zero() {
                    comp[j] = id;
                    members.push(j);
                }
            }
            head += 1;
        }
        components.push(members);
    }
    let mut label = Vec::new();
    for members in &components {
        let vecs: Matrix = members
            .iter()
            .map(|&i| alphas[i].iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        let rank = crate::linalg::rank(&vecs);
        // conjugacy classes of reflections = orbits of root lines
        let set: HashSet<&IVec> = members.iter().map(|&i| alphas[i]).collect();
        let mut class = HashMap::new();
        let mut classes = 0;
        for &s in members {
            if class.contains_key(alphas[s]) {
                continue;
            }
            classes += 1;
            let mut stack = vec![alphas[s].clone()];
            class.insert(alphas[s].clone(), classes);
            while let Some(a) = stack.pop() {
                for &i in members {
                    let b = refl[i].0.reflect(&a).expect("reflections preserve roots");
                    let b = if set.contains(&b) { b } else { b.iter().map(|x| -x).collect() };
                    if !class.contains_key(&b) {
                        class.insert(b.clone(), classes);
                        stack.push(b);
                    }
                }
            }
        }
        label.push(identify(rank, members.len(), classes)?);
    }
    label.sort();
    let order = label.iter().map(|&(f, n)| classical_order(f, n)).product();

    let to_vec = |v: &IVec| RationalVector::from_bigints(v);
    let m = p.vertices()[dominant].clone();
    let m_scaled = &verts[dominant];
    let weight = simple
        .iter()
        .map(|&i| {
            let c = &refl[i].0;
            Rational::new(dot(m_scaled, &c.g_alpha) * 2, c.norm.clone() * &scale)
        })
        .collect();
    let group = ReflectionGroup {
        label: TypeLabel(label),
        order,
        roots: refl.iter().map(|r| to_vec(&r.0.alpha)).collect(),
        reflections: refl.iter().map(|r| r.1.clone()).collect(),
        simple_roots: simple,
    };
    Some(WeylDetection { group, dominant_vertex: m, weight })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[&[i64]]) -> Polytope {
        Polytope::from_int_points(v).unwrap()
    }

    #[test]
    fn square_is_b2() {
        let d = is_weyl_polytope(&poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]])).unwrap();
        assert_eq!(d.group.label.to_string(), "B2");
        assert_eq!(d.group.order, 8);
        assert_eq!(d.group.reflections.len(), 4);
        assert_eq!(d.group.simple_roots.len(), 2);
    }

    #[test]
    fn kite_is_not_weyl() {
        assert!(is_weyl_polytope(&poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -2]])).is_none());
    }

    #[test]
    fn triangles_are_a2() {
        let big = is_weyl_polytope(&poly(&[&[2, 1], &[-1, 1], &[-1, -2]])).unwrap();
        assert_eq!(big.group.label.to_string(), "A2");
        let small = is_weyl_polytope(&poly(&[&[1, 0], &[0, 1], &[-1, -1]])).unwrap();
        assert_eq!(small.group.label.to_string(), "A2");
        assert_eq!(small.group.order, 6);
    }

    #[test]
    fn hexagon_is_g2_and_cube_is_b3() {
        let h = is_weyl_polytope(&poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]])).unwrap();
        assert_eq!(h.group.label.to_string(), "G2");
        let mut pts = Vec::new();
        for x in [-1, 1] {
            for y in [-1, 1] {
                for z in [-1, 1] {
                    pts.push(RationalVector::from_ints(&[x, y, z]));
                }
            }
        }
        let cube = Polytope::from_points(&pts).unwrap();
        let c = is_weyl_polytope(&cube).unwrap();
        assert_eq!(c.group.label.to_string(), "B3");
        assert_eq!(c.group.order, 48);
        assert_eq!(c.dominant_vertex, RationalVector::from_ints(&[1, 1, 1]));
        // rational vertices are fine too
        let o = is_weyl_polytope(&cube.dual().dual().dual()).unwrap();
        assert_eq!(o.group.order, 48);
    }

    #[test]
    fn product_rectangle() {
        // A1 x A1 acting on a non-square rectangle
        let d = is_weyl_polytope(&poly(&[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]])).unwrap();
        assert_eq!(d.group.label.to_string(), "A1xA1");
        assert_eq!(d.group.order, 4);
    }
}
