//! Weyl group elements, orbits and chambers.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::Zero;

use crate::arith::{Rational, RationalVector};
use crate::config::orbit_cap;
use crate::error::{Error, Result};
use crate::polytope::UnimodularMap;

use super::{RootSystem, Side};

/// A group element acting on `M` (`map`) and on `N` (`dual = (map^{-1})^T`),
/// with a word in the simple reflections: the element is
/// `s_{word[0]} ∘ s_{word[1]} ∘ …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub map: UnimodularMap,
    pub dual: UnimodularMap,
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement { map: UnimodularMap::identity(n), dual: UnimodularMap::identity(n), word: Vec::new() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement { map: self.map.compose(&other.map), dual: self.dual.compose(&other.dual), word }
    }

    pub fn act(&self, x: &RationalVector, side: Side) -> RationalVector {
        match side {
            Side::M => self.map.apply(x),
            Side::N => self.dual.apply(x),
        }
    }

    /// Action of the inverse element.
    pub fn act_inverse(&self, x: &RationalVector, side: Side) -> RationalVector {
        match side {
            Side::M => self.dual.apply_transpose(x),
            Side::N => self.map.apply_transpose(x),
        }
    }
}

/// All elements of the Weyl group, in breadth-first order from the identity.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    generators: Vec<WeylElement>,
    index: HashMap<UnimodularMap, usize>,
    simple_roots: Vec<RationalVector>,
    simple_coroots: Vec<RationalVector>,
}

fn generators(r: &RootSystem, subset: &[usize]) -> Vec<WeylElement> {
    subset
        .iter()
        .map(|&i| {
            let map = r.reflection_map(r.simple_roots()[i]);
            WeylElement { dual: map.transpose(), map, word: vec![i] }
        })
        .collect()
}

fn closure(n: usize, gens: &[WeylElement], cap: usize) -> Result<Vec<WeylElement>> {
    let mut index: HashMap<UnimodularMap, usize> = HashMap::new();
    let mut elements = vec![WeylElement::identity(n)];
    index.insert(elements[0].map.clone(), 0);
    let mut head = 0;
    while head < elements.len() {
        for g in gens {
            let w = g.compose(&elements[head]);
            if !index.contains_key(&w.map) {
                if elements.len() >= cap {
                    return Err(Error::OrbitCapExceeded(cap));
                }
                index.insert(w.map.clone(), elements.len());
                elements.push(w);
            }
        }
        head += 1;
    }
    Ok(elements)
}

/// [`weyl_group_with_cap`] with the configured cap.
pub fn weyl_group(r: &RootSystem) -> Result<WeylGroup> {
    weyl_group_with_cap(r, orbit_cap())
}

/// Enumerates `W` by closing the simple reflections under composition.
pub fn weyl_group_with_cap(r: &RootSystem, cap: usize) -> Result<WeylGroup> {
    let all: Vec<usize> = (0..r.rank()).collect();
    let gens = generators(r, &all);
    let elements = closure(r.rank(), &gens, cap)?;
    let index = elements.iter().enumerate().map(|(i, e)| (e.map.clone(), i)).collect();
    Ok(WeylGroup {
        elements,
        generators: gens,
        index,
        simple_roots: (0..r.rank()).map(|i| r.simple_root(i).clone()).collect(),
        simple_coroots: (0..r.rank()).map(|i| r.simple_coroot(i).clone()).collect(),
    })
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    pub fn index_of(&self, map: &UnimodularMap) -> Option<usize> {
        self.index.get(map).copied()
    }

    /// Normals of the walls of the positive chamber on the given side:
    /// simple coroots for `M`, simple roots for `N`.
    pub fn walls(&self, side: Side) -> &[RationalVector] {
        match side {
            Side::M => &self.simple_coroots,
            Side::N => &self.simple_roots,
        }
    }

    pub fn in_chamber(&self, x: &RationalVector, side: Side) -> bool {
        self.walls(side).iter().all(|w| x.dot(w) >= Rational::zero())
    }

    /// Indices of the elements `w` with `x` in the closed chamber `w(C+)`.
    pub fn chambers_containing(&self, x: &RationalVector, side: Side) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| self.in_chamber(&self.elements[i].act_inverse(x, side), side))
            .collect()
    }
}

/// [`weyl_orbit_with_cap`] with the configured cap.
pub fn weyl_orbit(r: &RootSystem, m: &RationalVector) -> Result<Vec<RationalVector>> {
    weyl_orbit_with_cap(r, m, orbit_cap())
}

/// The orbit `W m`, by breadth-first closure under simple reflections,
/// sorted lexicographically.
pub fn weyl_orbit_with_cap(r: &RootSystem, m: &RationalVector, cap: usize) -> Result<Vec<RationalVector>> {
    if m.dim() != r.rank() {
        return Err(Error::DimensionMismatch { expected: r.rank(), found: m.dim() });
    }
    let mut seen: BTreeSet<RationalVector> = BTreeSet::new();
    seen.insert(m.clone());
    let mut queue = VecDeque::from([m.clone()]);
    while let Some(x) = queue.pop_front() {
        for &s in r.simple_roots() {
            let y = r.apply_reflection(s, &x, Side::M);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::OrbitCapExceeded(cap));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn dominant_on(r: &RootSystem, x: &RationalVector, side: Side) -> (RationalVector, WeylElement) {
    let gens = generators(r, &(0..r.rank()).collect::<Vec<_>>());
    let mut cur = x.clone();
    let mut w = WeylElement::identity(r.rank());
    loop {
        let violated = (0..r.rank()).find(|&i| {
            let wall = match side {
                Side::M => r.simple_coroot(i),
                Side::N => r.simple_root(i),
            };
            cur.dot(wall) < Rational::zero()
        });
        let Some(i) = violated else {
            return (cur, w);
        };
        cur = r.apply_reflection(r.simple_roots()[i], &cur, side);
        w = gens[i].compose(&w);
    }
}

/// The point of `W x` in the closed positive chamber of `M_R`, and an
/// element `w` with `w(x) = x_dom`. Reflects at a violated simple wall
/// until none is left.
pub fn dominant_representative(r: &RootSystem, x: &RationalVector) -> (RationalVector, WeylElement) {
    dominant_on(r, x, Side::M)
}

/// Dual-side version: `y ∈ N_R` is moved into `C+_N` by the dual action.
pub fn dominant_representative_dual(r: &RootSystem, y: &RationalVector) -> (RationalVector, WeylElement) {
    dominant_on(r, y, Side::N)
}

/// The cone `C_L = ⋃_{w ∈ W_L} w∨(C+_N)` for a dominant `m`, where
/// `L = {i : <m, α_i∨> = 0}`.
#[derive(Clone, Debug)]
pub struct ParabolicCone {
    pub subset: Vec<usize>,
    pub elements: Vec<WeylElement>,
    simple_roots: Vec<RationalVector>,
}

impl ParabolicCone {
    pub fn contains(&self, y: &RationalVector) -> bool {
        self.elements.iter().any(|w| {
            let z = w.act_inverse(y, Side::N);
            self.simple_roots.iter().all(|a| z.dot(a) >= Rational::zero())
        })
    }
}

pub fn parabolic_chamber_union(r: &RootSystem, m: &RationalVector) -> Result<ParabolicCone> {
    if !r.in_chamber(m) {
        return Err(Error::NotDominant(m.to_string()));
    }
    let subset: Vec<usize> = (0..r.rank()).filter(|&i| m.dot(r.simple_coroot(i)).is_zero()).collect();
    let elements = closure(r.rank(), &generators(r, &subset), orbit_cap())?;
    Ok(ParabolicCone {
        subset,
        elements,
        simple_roots: (0..r.rank()).map(|i| r.simple_root(i).clone()).collect(),
    })
}
