//! Exact check that the positive chamber meets the boundary only inside
//! `Star(m)`, and the dual chamber meets the dual boundary only inside `τ_m`.
//!
//! For a facet `F` outside the target, `R = F ∩ C+` is computed as a
//! polytope. A convex set contained in a union of faces of `F` lies in the
//! face through any of its relative interior points, so `R` is inside the
//! target iff all vertices of `R` lie on one common target facet. The
//! sampled fallback is only reached when that fails, and then confirms the
//! failure with an explicit point.

use serde::Serialize;

use crate::arith::{Rational, RationalVector};
use crate::bitset::BitSet;
use crate::polytope::{barycentric_subdivision, placing_triangulation, vertices_of_inequalities, Polytope};

use super::WeylPolytope;

/// Outcome of one containment check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ContainmentVerdict {
    /// Every chamber piece lies in one target facet.
    Certified,
    /// Some piece needed the sampled fallback, and every sample was inside.
    Sampled,
    /// `witness` lies on `facet` and in the chamber but not in the target.
    Failed { facet: usize, witness: RationalVector },
}

impl ContainmentVerdict {
    pub fn passed(&self) -> bool {
        !matches!(self, ContainmentVerdict::Failed { .. })
    }
}

/// Both halves of the star containment property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarContainmentReport {
    /// `∂Δ ∩ C+_M ⊆ Star(m)`.
    pub primal: ContainmentVerdict,
    /// `∂Δ∨ ∩ C+_N ⊆ τ_m`.
    pub dual: ContainmentVerdict,
}

impl StarContainmentReport {
    pub fn passed(&self) -> bool {
        self.primal.passed() && self.dual.passed()
    }
}

const SAMPLE_DEPTH: usize = 3;

fn sample_points(vertices: &[RationalVector]) -> Vec<RationalVector> {
    let mut cells: Vec<Vec<RationalVector>> = placing_triangulation(vertices)
        .into_iter()
        .map(|s| s.into_iter().map(|i| vertices[i].clone()).collect())
        .collect();
    for _ in 0..SAMPLE_DEPTH {
        cells = cells.iter().flat_map(|c| barycentric_subdivision(c)).collect();
    }
    let mut pts: Vec<RationalVector> = cells.iter().map(|c| RationalVector::centroid(c.iter())).collect();
    pts.extend(vertices.iter().cloned());
    pts
}

fn check_side(p: &Polytope, target: &BitSet, walls: &[RationalVector]) -> ContainmentVerdict {
    let d = p.dim();
    let zero = Rational::from_integer(0.into());
    let mut sampled = false;
    for (f, facet) in p.facets().iter().enumerate() {
        if target.contains(f) {
            continue;
        }
        let mut ineqs: Vec<(RationalVector, Rational)> =
            p.facets().iter().map(|g| (g.normal.clone(), g.offset.clone())).collect();
        ineqs.push((facet.normal.neg(), -facet.offset.clone()));
        ineqs.extend(walls.iter().map(|w| (w.neg(), zero.clone())));
        let piece = vertices_of_inequalities(&ineqs, d);
        if piece.is_empty() {
            continue;
        }
        let certified =
            target.iter().any(|t| piece.iter().all(|x| p.facets()[t].contains(x)));
        if certified {
            continue;
        }
        let outside = sample_points(&piece)
            .into_iter()
            .find(|x| !target.iter().any(|t| p.facets()[t].contains(x)));
        match outside {
            Some(witness) => return ContainmentVerdict::Failed { facet: f, witness },
            None => sampled = true,
        }
    }
    if sampled {
        ContainmentVerdict::Sampled
    } else {
        ContainmentVerdict::Certified
    }
}

/// Checks both containments for a Weyl polytope record. The record's weight
/// is the dominant vertex `m`; chambers come from the record's root system.
pub fn star_containment_check(rec: &WeylPolytope) -> StarContainmentReport {
    let p = &rec.polytope;
    let r = &rec.system;
    let m = p.vertex_index(&rec.weight).expect("the weight is a vertex");
    let coroots: Vec<RationalVector> = (0..r.rank()).map(|i| r.simple_coroot(i).clone()).collect();
    let primal = check_side(p, p.vertex_facet_set(m), &coroots);

    let dual = p.dual();
    let tau = p.dual_facet(&rec.weight).expect("the weight is a vertex");
    let target = BitSet::from_indices(dual.facets().len(), tau.facets.iter().copied());
    let roots: Vec<RationalVector> = (0..r.rank()).map(|i| r.simple_root(i).clone()).collect();
    let dual_verdict = check_side(&dual, &target, &roots);
    StarContainmentReport { primal, dual: dual_verdict }
}
