//! Crystallographic root systems in the coordinates of a lattice `M`.
//!
//! Internally every root is first generated in simple-root coordinates
//! (where the root lattice is `Z^r`). A lattice `M` between the root and
//! weight lattices is described by a basis matrix `B` whose rows are its
//! basis vectors in simple-root coordinates. Points of `M_R` are stored in
//! `B`-coordinates and points of `N_R` in the dual basis, so the duality
//! bracket is always the dot product.

mod cartan;
mod group;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::arith::{Rational, RationalVector};
use crate::error::{Error, Result};
use crate::linalg::{from_ints, inverse, mat_mul, mat_vec, transpose, Matrix};
use crate::polytope::UnimodularMap;

pub use cartan::cartan_matrix;
pub use group::{
    dominant_representative, dominant_representative_dual, parabolic_chamber_union, weyl_group,
    weyl_group_with_cap, weyl_orbit, weyl_orbit_with_cap, ParabolicCone, WeylElement, WeylGroup,
};

/// Families of irreducible reduced root systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            "F" | "f" => Ok(Family::F),
            "G" | "g" => Ok(Family::G),
            _ => Err(Error::UnsupportedType(s.to_string())),
        }
    }
}

/// A product of irreducible types, e.g. `A1xA2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeLabel(pub Vec<(Family, usize)>);

impl TypeLabel {
    pub fn rank(&self) -> usize {
        self.0.iter().map(|c| c.1).sum()
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (fam, n)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{fam}{n}")?;
        }
        Ok(())
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    /// Parses `B3`, `A1xA2`, `a1*g2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedType(s.to_string());
        let mut parts = Vec::new();
        for piece in s.trim().split(['x', 'X', '*']) {
            let piece = piece.trim();
            let fam: Family = piece.get(..1).ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let rank: usize = piece[1..].parse().map_err(|_| bad())?;
            parts.push((fam, rank));
        }
        if parts.is_empty() {
            return Err(bad());
        }
        Ok(TypeLabel(parts))
    }
}

impl serde::Serialize for TypeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which lattice `M` the coordinates refer to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeChoice {
    /// `M = Λ_r`, coordinates in the basis of simple roots.
    Root,
    /// `M = Λ_w`, coordinates in the basis of fundamental weights.
    Weight,
    /// Rows are a basis of `M` in simple-root coordinates.
    Custom(Vec<Vec<Rational>>),
}

impl FromStr for LatticeChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "root" => Ok(LatticeChoice::Root),
            "weight" => Ok(LatticeChoice::Weight),
            _ => Err(Error::InvalidLattice(s.to_string())),
        }
    }
}

/// Which side of the duality a point lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Side {
    M,
    N,
}

/// Roots in `M`, index-aligned coroots in `N`, simple roots and Cartan data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    label: TypeLabel,
    cartan: Vec<Vec<i64>>,
    lattice: LatticeChoice,
    basis: Matrix,
    roots: Vec<RationalVector>,
    coroots: Vec<RationalVector>,
    root_coords: Vec<Vec<i64>>,
    simple: Vec<usize>,
}

fn block_diagonal<T: Clone>(a: &[Vec<T>], b: &[Vec<T>], zero: T) -> Vec<Vec<T>> {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![zero; n + m]; n + m];
    for i in 0..n {
        out[i][..n].clone_from_slice(&a[i]);
    }
    for i in 0..m {
        out[n + i][n..].clone_from_slice(&b[i]);
    }
    out
}

fn is_integral_matrix(m: &[Vec<Rational>]) -> bool {
    m.iter().all(|r| r.iter().all(|q| q.is_integer()))
}

/// Builds the irreducible system `(family, rank)` on the chosen lattice.
pub fn build_root_system(family: Family, rank: usize, lattice: LatticeChoice) -> Result<RootSystem> {
    let supported = match family {
        Family::A => rank >= 1,
        Family::B => rank >= 2,
        Family::C => rank >= 3,
        Family::D => rank >= 4,
        Family::E => rank == 6,
        Family::F => rank == 4,
        Family::G => rank == 2,
    };
    if !supported {
        return Err(Error::UnsupportedType(format!("{family}{rank}")));
    }
    RootSystem::from_label(TypeLabel(vec![(family, rank)]), lattice)
}

/// Block direct sum; the Weyl group is the direct product.
pub fn product(r1: &RootSystem, r2: &RootSystem) -> Result<RootSystem> {
    let lattice = match (&r1.lattice, &r2.lattice) {
        (LatticeChoice::Root, LatticeChoice::Root) => LatticeChoice::Root,
        (LatticeChoice::Weight, LatticeChoice::Weight) => LatticeChoice::Weight,
        _ => LatticeChoice::Custom(block_diagonal(&r1.basis, &r2.basis, Rational::zero())),
    };
    let mut label = r1.label.0.clone();
    label.extend(r2.label.0.iter().cloned());
    RootSystem::new(TypeLabel(label), block_diagonal(&r1.cartan, &r2.cartan, 0), lattice)
}

/// Exchanges roots and coroots. `M` becomes the dual lattice `N`, so the
/// root lattice of one side is the weight lattice of the other.
pub fn dual_system(r: &RootSystem) -> RootSystem {
    let cartan = transpose(&r.cartan);
    let c = from_ints(&r.cartan);
    // N-coordinates of a coroot are B C^T γ, so the new basis is (C B^T)^{-1}
    let basis = inverse(&mat_mul(&c, &transpose(&r.basis))).expect("basis is invertible");
    let lattice = match &r.lattice {
        LatticeChoice::Root => LatticeChoice::Weight,
        LatticeChoice::Weight => LatticeChoice::Root,
        LatticeChoice::Custom(_) => LatticeChoice::Custom(basis),
    };
    let label = TypeLabel(
        r.label
            .0
            .iter()
            .map(|&(f, n)| match f {
                Family::B if n >= 2 => (Family::C, n),
                Family::C => (Family::B, n),
                _ => (f, n),
            })
            .collect(),
    );
    RootSystem::new(label, cartan, lattice).expect("dual of a valid root system is valid")
}

impl RootSystem {
    /// Root system of a (possibly reducible) type.
    pub fn from_label(label: TypeLabel, lattice: LatticeChoice) -> Result<Self> {
        let mut cartan: Vec<Vec<i64>> = Vec::new();
        for &(f, n) in &label.0 {
            cartan = block_diagonal(&cartan, &cartan_matrix(f, n)?, 0);
        }
        Self::new(label, cartan, lattice)
    }

    fn new(label: TypeLabel, cartan: Vec<Vec<i64>>, lattice: LatticeChoice) -> Result<Self> {
        let n = cartan.len();
        let c = from_ints(&cartan);
        let c_inv = inverse(&c).ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
        let basis: Matrix = match &lattice {
            LatticeChoice::Root => crate::linalg::identity(n),
            LatticeChoice::Weight => transpose(&c_inv),
            LatticeChoice::Custom(b) => {
                if b.len() != n || b.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidLattice("basis has the wrong shape".into()));
                }
                let inv = inverse(b).ok_or_else(|| Error::InvalidLattice("basis is singular".into()))?;
                // M ⊆ Λ_w: basis vectors pair integrally with the coroots
                if !is_integral_matrix(&mat_mul(b, &transpose(&c))) {
                    return Err(Error::InvalidLattice("M is not inside the weight lattice".into()));
                }
                // Λ_r ⊆ M: simple roots have integral B-coordinates
                if !is_integral_matrix(&inv) {
                    return Err(Error::InvalidLattice("M does not contain the root lattice".into()));
                }
                b.clone()
            }
        };
        let to_m = transpose(&inverse(&basis).expect("checked invertible"));
        let ct = transpose(&c);

        // closure of (root, coroot) pairs in simple-root / simple-coroot coordinates
        let mut found: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            found.insert(e.clone(), e.clone());
            queue.push_back((e.clone(), e));
        }
        while let Some((r, g)) = queue.pop_front() {
            for i in 0..n {
                let pr: i64 = (0..n).map(|k| cartan[i][k] * r[k]).sum();
                let pg: i64 = (0..n).map(|k| cartan[k][i] * g[k]).sum();
                let mut r2 = r.clone();
                r2[i] -= pr;
                let mut g2 = g.clone();
                g2[i] -= pg;
                if !found.contains_key(&r2) {
                    found.insert(r2.clone(), g2.clone());
                    queue.push_back((r2, g2));
                }
            }
        }
        let height = |r: &Vec<i64>| r.iter().sum::<i64>();
        let mut positive: Vec<(Vec<i64>, Vec<i64>)> =
            found.iter().filter(|(r, _)| height(r) > 0).map(|(r, g)| (r.clone(), g.clone())).collect();
        positive.sort_by(|a, b| height(&a.0).cmp(&height(&b.0)).then_with(|| b.0.cmp(&a.0)));
        let negative: Vec<(Vec<i64>, Vec<i64>)> = positive
            .iter()
            .map(|(r, g)| (r.iter().map(|x| -x).collect(), g.iter().map(|x| -x).collect()))
            .collect();
        let all: Vec<(Vec<i64>, Vec<i64>)> = positive.into_iter().chain(negative).collect();

        let int_vec = |v: &[i64]| RationalVector::from_ints(v);
        let roots = all.iter().map(|(r, _)| mat_vec(&to_m, &int_vec(r))).collect();
        let coroots = all
            .iter()
            .map(|(_, g)| mat_vec(&basis, &mat_vec(&ct, &int_vec(g))))
            .collect();
        Ok(RootSystem {
            label,
            cartan,
            lattice,
            basis,
            roots,
            coroots,
            root_coords: all.into_iter().map(|(r, _)| r).collect(),
            simple: (0..n).collect(),
        })
    }

    pub fn label(&self) -> &TypeLabel {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn lattice(&self) -> &LatticeChoice {
        &self.lattice
    }

    /// Rows are the basis of `M` in simple-root coordinates.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// All roots in `M`-coordinates: positive roots by increasing height,
    /// then their negatives in the same order.
    pub fn roots(&self) -> &[RationalVector] {
        &self.roots
    }

    /// Coroots in `N`-coordinates, aligned with [`RootSystem::roots`].
    pub fn coroots(&self) -> &[RationalVector] {
        &self.coroots
    }

    /// Roots in simple-root coordinates.
    pub fn root_coordinates(&self) -> &[Vec<i64>] {
        &self.root_coords
    }

    pub fn positive_roots(&self) -> std::ops::Range<usize> {
        0..self.roots.len() / 2
    }

    pub fn simple_roots(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_root(&self, i: usize) -> &RationalVector {
        &self.roots[self.simple[i]]
    }

    pub fn simple_coroot(&self, i: usize) -> &RationalVector {
        &self.coroots[self.simple[i]]
    }

    /// `σ(m) = m − <m, α∨> α` on `M`, or `σ∨(n) = n − <α, n> α∨` on `N`.
    pub fn apply_reflection(&self, root: usize, x: &RationalVector, side: Side) -> RationalVector {
        let (a, av) = (&self.roots[root], &self.coroots[root]);
        match side {
            Side::M => x.sub(&a.scale(&x.dot(av))),
            Side::N => x.sub(&av.scale(&x.dot(a))),
        }
    }

    /// Matrix of the reflection in a root on `M`-coordinates.
    pub fn reflection_map(&self, root: usize) -> UnimodularMap {
        let n = self.rank();
        let (a, av) = (&self.roots[root], &self.coroots[root]);
        let m: Matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let id = if i == j { Rational::one() } else { Rational::zero() };
                        id - &a[i] * &av[j]
                    })
                    .collect()
            })
            .collect();
        UnimodularMap::from_rational(&m).expect("reflections preserve M")
    }

    /// Whether `x ∈ M_R` lies in the closed positive chamber.
    pub fn in_chamber(&self, x: &RationalVector) -> bool {
        (0..self.rank()).all(|i| x.dot(self.simple_coroot(i)) >= Rational::zero())
    }

    /// Whether `y ∈ N_R` lies in the closed positive dual chamber.
    pub fn in_dual_chamber(&self, y: &RationalVector) -> bool {
        (0..self.rank()).all(|i| y.dot(self.simple_root(i)) >= Rational::zero())
    }

    /// `M`-coordinates of the weight `sum a_i ω_i`.
    pub fn weight_from_fundamental(&self, a: &[i64]) -> Result<RationalVector> {
        if a.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: a.len() });
        }
        let c_inv = inverse(&from_ints(&self.cartan)).expect("Cartan matrix is invertible");
        let r = mat_vec(&c_inv, &RationalVector::from_ints(a));
        let to_m = transpose(&inverse(&self.basis).expect("basis is invertible"));
        Ok(mat_vec(&to_m, &r))
    }

    /// Fundamental-weight coordinates `<x, α_i∨>` of a point of `M_R`.
    pub fn fundamental_coordinates(&self, x: &RationalVector) -> RationalVector {
        RationalVector::new((0..self.rank()).map(|i| x.dot(self.simple_coroot(i))).collect())
    }

    /// Classical order of the Weyl group of the type.
    pub fn weyl_group_order(&self) -> u128 {
        self.label.0.iter().map(|&(f, n)| classical_order(f, n)).product()
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `|W|` for an irreducible type.
pub fn classical_order(f: Family, n: usize) -> u128 {
    match f {
        Family::A => factorial(n + 1),
        Family::B | Family::C => (1u128 << n) * factorial(n),
        Family::D => (1u128 << (n - 1)) * factorial(n),
        Family::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Family::F => 1152,
        Family::G => 12,
    }
}

/// Number of reflections (positive roots) of an irreducible type.
pub fn classical_reflection_count(f: Family, n: usize) -> usize {
    match f {
        Family::A => n * (n + 1) / 2,
        Family::B | Family::C => n * n,
        Family::D => n * (n - 1),
        Family::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Family::F => 24,
        Family::G => 6,
    }
}
