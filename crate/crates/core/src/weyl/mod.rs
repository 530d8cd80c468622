//! Weyl polytopes `conv(W m)`: construction, recognition and the
//! polytope-level properties used by the transport certification.

mod detect;
mod star;
mod table;

use serde::Serialize;

use crate::arith::{Rational, RationalVector};
use crate::config::orbit_cap;
use crate::error::{Error, Result};
use crate::polytope::{automorphism_group, Polytope};
use crate::roots::{weyl_group_with_cap, weyl_orbit_with_cap, LatticeChoice, RootSystem, TypeLabel, WeylGroup};

pub use detect::{is_weyl_polytope, ReflectionGroup, WeylDetection};
pub use star::{star_containment_check, ContainmentVerdict, StarContainmentReport};
pub use table::{mr_family, table_row, TableRow, TABLE};

/// A Weyl polytope together with the data it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylPolytope {
    pub polytope: Polytope,
    pub system: RootSystem,
    /// The dominant vertex `m`, in `M`-coordinates.
    pub weight: RationalVector,
}

impl WeylPolytope {
    pub fn lattice_choice(&self) -> &LatticeChoice {
        self.system.lattice()
    }

    /// The full Weyl group, under the configured cap.
    pub fn group(&self) -> Result<WeylGroup> {
        weyl_group_with_cap(&self.system, orbit_cap())
    }

    /// Fundamental-weight coordinates of `m`.
    pub fn fundamental_weight(&self) -> RationalVector {
        self.system.fundamental_coordinates(&self.weight)
    }
}

/// `conv(W m)` for a nonzero dominant lattice point `m`.
pub fn weyl_polytope(r: &RootSystem, m: &RationalVector) -> Result<WeylPolytope> {
    weyl_polytope_with_cap(r, m, orbit_cap())
}

pub fn weyl_polytope_with_cap(r: &RootSystem, m: &RationalVector, cap: usize) -> Result<WeylPolytope> {
    if m.dim() != r.rank() {
        return Err(Error::DimensionMismatch { expected: r.rank(), found: m.dim() });
    }
    if m.is_zero() {
        return Err(Error::ZeroWeight);
    }
    if !m.is_integral() {
        return Err(Error::NotLatticePoint(m.to_string()));
    }
    if !r.in_chamber(m) {
        return Err(Error::NotDominant(m.to_string()));
    }
    let orbit = weyl_orbit_with_cap(r, m, cap)?;
    let polytope = Polytope::from_points(&orbit)?;
    if polytope.vertices().len() != orbit.len() {
        return Err(Error::Internal("an orbit point is not a vertex of its hull".into()));
    }
    Ok(WeylPolytope { polytope, system: r.clone(), weight: m.clone() })
}

/// [`weyl_polytope`] for `m = Σ a_i ω_i`.
pub fn weyl_polytope_from_fundamental(r: &RootSystem, a: &[i64]) -> Result<WeylPolytope> {
    weyl_polytope(r, &r.weight_from_fundamental(a)?)
}

/// Result of the vertex condition test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCondition {
    pub holds: bool,
    /// A vertex of the polytope and a vertex of its dual with bracket 0.
    pub witness: Option<(RationalVector, RationalVector)>,
}

/// Whether `<m, n> != 0` for every vertex `m` of `p` and `n` of its dual.
/// The first zero pair in lexicographic order is returned as witness.
pub fn vertex_condition(p: &Polytope) -> VertexCondition {
    let dual = p.dual();
    for m in p.vertices() {
        for n in dual.vertices() {
            if m.dot(n) == Rational::from_integer(0.into()) {
                return VertexCondition { holds: false, witness: Some((m.clone(), n.clone())) };
            }
        }
    }
    VertexCondition { holds: true, witness: None }
}

/// [`is_weyl_polytope`] applied to the dual of a reflexive polytope.
pub fn is_dual_weyl_polytope(p: &Polytope) -> Result<Option<WeylDetection>> {
    if !p.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    Ok(is_weyl_polytope(&p.dual()))
}

/// Type, group order and dominant vertex of a detected Weyl structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylSummary {
    pub type_label: TypeLabel,
    pub group_order: u128,
    pub m: RationalVector,
    /// `<m, α_i∨>` over the detected simple roots.
    #[serde(with = "crate::arith::serde_rational_vec")]
    pub weight: Vec<Rational>,
}

impl From<&WeylDetection> for WeylSummary {
    fn from(d: &WeylDetection) -> Self {
        WeylSummary {
            type_label: d.group.label.clone(),
            group_order: d.group.order,
            m: d.dominant_vertex.clone(),
            weight: d.weight.clone(),
        }
    }
}

/// Everything [`classify`] reports about one polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub dimension: usize,
    pub vertices: usize,
    pub facets: usize,
    pub aut_order: usize,
    pub barycenter_zero: bool,
    pub reflexive: bool,
    pub weyl: Option<WeylSummary>,
    /// Only computed for reflexive polytopes.
    pub dual_weyl: Option<WeylSummary>,
    pub vertex_condition: bool,
    pub vertex_condition_witness: Option<(RationalVector, RationalVector)>,
    pub delzant: bool,
}

pub fn classify(p: &Polytope) -> Result<ClassificationRecord> {
    let aut = automorphism_group(p)?;
    let reflexive = p.is_reflexive();
    let weyl = is_weyl_polytope(p).as_ref().map(WeylSummary::from);
    let dual_weyl = if reflexive { is_dual_weyl_polytope(p)?.as_ref().map(WeylSummary::from) } else { None };
    let vc = vertex_condition(p);
    Ok(ClassificationRecord {
        dimension: p.dim(),
        vertices: p.vertices().len(),
        facets: p.facets().len(),
        aut_order: aut.len(),
        barycenter_zero: p.barycenter().is_zero(),
        reflexive,
        weyl,
        dual_weyl,
        vertex_condition: vc.holds,
        vertex_condition_witness: vc.witness,
        delzant: p.is_delzant(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{build_root_system, Family};

    fn poly(v: &[&[i64]]) -> Polytope {
        Polytope::from_int_points(v).unwrap()
    }

    #[test]
    fn small_weyl_polytopes() {
        let a1 = build_root_system(Family::A, 1, LatticeChoice::Root).unwrap();
        let seg = weyl_polytope_from_fundamental(&a1, &[2]).unwrap();
        assert_eq!(seg.polytope.vertices(), &[RationalVector::from_ints(&[-1]), RationalVector::from_ints(&[1])]);

        let a2w = build_root_system(Family::A, 2, LatticeChoice::Weight).unwrap();
        let tri = weyl_polytope_from_fundamental(&a2w, &[1, 0]).unwrap();
        let expected = poly(&[&[1, 0], &[-1, 1], &[0, -1]]);
        assert_eq!(tri.polytope.vertices(), expected.vertices());
    }

    #[test]
    fn weight_errors() {
        let b2 = build_root_system(Family::B, 2, LatticeChoice::Root).unwrap();
        assert_eq!(weyl_polytope(&b2, &RationalVector::zeros(2)), Err(Error::ZeroWeight));
        // ω_1 + ω_2 is not in the root lattice of B2
        assert!(matches!(weyl_polytope_from_fundamental(&b2, &[1, 1]), Err(Error::NotLatticePoint(_))));
        assert!(matches!(weyl_polytope(&b2, &RationalVector::from_ints(&[-1, 0])), Err(Error::NotDominant(_))));
        assert!(matches!(weyl_polytope(&b2, &RationalVector::from_ints(&[1])), Err(Error::DimensionMismatch { .. })));
        assert_eq!(weyl_polytope_with_cap(&b2, &RationalVector::from_ints(&[2, 3]), 4), Err(Error::OrbitCapExceeded(4)));
    }

    #[test]
    fn vertex_condition_examples() {
        let hex = poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]]);
        let vc = vertex_condition(&hex);
        assert!(!vc.holds);
        let (m, n) = vc.witness.unwrap();
        assert_eq!(m.dot(&n), Rational::from_integer(0.into()));
        assert!(vertex_condition(&poly(&[&[-1], &[1]])).holds);
        assert!(vertex_condition(&poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]])).holds);
    }

    #[test]
    fn dual_weyl_needs_reflexive() {
        let diamond = poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        assert!(is_dual_weyl_polytope(&diamond).unwrap().is_some());
        let not_reflexive = poly(&[&[2, 0], &[-2, 0], &[0, 1], &[0, -1]]);
        assert_eq!(is_dual_weyl_polytope(&not_reflexive), Err(Error::NotReflexive));
    }

    #[test]
    fn classify_triangle() {
        let rec = classify(&poly(&[&[1, 0], &[0, 1], &[-1, -1]])).unwrap();
        assert_eq!(rec.aut_order, 6);
        assert!(rec.barycenter_zero && rec.reflexive);
        // the dual of this triangle is the smooth one
        assert!(!rec.delzant);
        assert_eq!(rec.weyl.unwrap().type_label.to_string(), "A2");
        assert_eq!(rec.dual_weyl.unwrap().type_label.to_string(), "A2");
    }
}
