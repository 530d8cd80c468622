//! The full certification pipeline for a reflexive Weyl polytope.

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{Rational, RationalVector};
use crate::error::{Error, Result};
use crate::measure::{chamber_mass, discretize};
use crate::roots::{LatticeChoice, Side, TypeLabel};
use crate::weyl::{star_containment_check, StarContainmentReport, WeylPolytope};

use super::checks::{
    check_chamber_support, check_cyclical_monotonicity, check_cyclical_monotonicity_all_lengths,
    check_reflection_sign, check_stability_support, CycleVerdict, SignVerdict, SupportVerdict,
    DEFAULT_CYCLE_BUDGET,
};
use super::{solve_ot_with, symmetrize_plan, PivotRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub refinement: usize,
    pub max_cycle_length: usize,
    /// Above this many squared support pairs the cycle check switches from
    /// exhaustive enumeration to the all-lengths negative-cycle search.
    pub cycle_budget: u128,
    pub pivot: PivotRule,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { refinement: 0, max_cycle_length: 3, cycle_budget: DEFAULT_CYCLE_BUDGET, pivot: PivotRule::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberBalance {
    pub passed: bool,
    /// The common chamber mass when all chambers agree on both sides.
    #[serde(with = "crate::arith::serde_rational")]
    pub expected: Rational,
}

/// Verdicts for one polytope and refinement level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificationReport {
    pub type_label: TypeLabel,
    pub lattice: String,
    /// The dominant vertex `m` in `M`-coordinates.
    pub weight: RationalVector,
    /// `m` in fundamental weights.
    pub fundamental_weight: RationalVector,
    pub refinement: usize,
    pub group_order: usize,
    pub source_points: usize,
    pub target_points: usize,
    #[serde(with = "crate::arith::serde_rational")]
    pub cost: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub duality_gap: Rational,
    pub marginals_exact: bool,
    pub chamber_balance: ChamberBalance,
    pub star_containment: StarContainmentReport,
    pub stability: SupportVerdict,
    pub chamber_support: SupportVerdict,
    pub reflection_sign: SignVerdict,
    pub cyclical_monotonicity: CycleVerdict,
    pub passed: bool,
}

pub fn certify(rec: &WeylPolytope, refinement: usize, max_cycle_length: usize) -> Result<CertificationReport> {
    certify_with(rec, &CertifyOptions { refinement, max_cycle_length, ..CertifyOptions::default() })
}

/// Discretizes both boundaries invariantly, solves the transport problem,
/// symmetrizes the plan over the Weyl group and runs every check on it.
pub fn certify_with(rec: &WeylPolytope, opts: &CertifyOptions) -> Result<CertificationReport> {
    let delta = &rec.polytope;
    if !delta.is_reflexive() {
        return Err(Error::NotReflexive);
    }
    let group = rec.group()?;
    let dual = delta.dual();
    let mu = discretize(delta, opts.refinement, Some(&group), Side::M);
    let nu = discretize(&dual, opts.refinement, Some(&group), Side::N);

    let (plan, potentials) = solve_ot_with(&mu, &nu, opts.pivot)?;
    let sym = symmetrize_plan(&plan, &group, &mu, &nu)?;
    let duality_gap = &sym.cost - potentials.dual_value(&mu, &nu);
    let (rows, cols) = sym.marginals(mu.len(), nu.len());
    let marginals_exact = rows == mu.masses && cols == nu.masses;

    let expected = Rational::new(1.into(), group.order().into());
    let balanced = chamber_mass(&mu, &group).iter().chain(chamber_mass(&nu, &group).iter()).all(|m| *m == expected);

    let star = star_containment_check(rec);
    let stability = check_stability_support(&sym, delta, &mu, &nu)?;
    let chamber_support = check_chamber_support(&sym, rec, &group, &mu, &nu)?;
    let reflection_sign = check_reflection_sign(&sym, &rec.system, &mu, &nu);
    let cycles = match check_cyclical_monotonicity(&sym, &mu, &nu, opts.max_cycle_length, opts.cycle_budget) {
        Err(Error::CombinatorialBudgetExceeded { .. }) => check_cyclical_monotonicity_all_lengths(&sym, &mu, &nu)?,
        other => other?,
    };

    let passed = duality_gap.is_zero()
        && marginals_exact
        && balanced
        && star.passed()
        && stability.passed
        && chamber_support.passed
        && reflection_sign.passed
        && cycles.passed;
    let lattice = match rec.lattice_choice() {
        LatticeChoice::Root => "root",
        LatticeChoice::Weight => "weight",
        LatticeChoice::Custom(_) => "custom",
    };
    Ok(CertificationReport {
        type_label: rec.system.label().clone(),
        lattice: lattice.to_string(),
        weight: rec.weight.clone(),
        fundamental_weight: rec.fundamental_weight(),
        refinement: opts.refinement,
        group_order: group.order(),
        source_points: mu.len(),
        target_points: nu.len(),
        cost: sym.cost,
        duality_gap,
        marginals_exact,
        chamber_balance: ChamberBalance { passed: balanced, expected },
        star_containment: star,
        stability,
        chamber_support,
        reflection_sign,
        cyclical_monotonicity: cycles,
        passed,
    })
}
