//! Exact discrete optimal transport for the cost `c(x, y) = -<x, y>`
//! between a cloud on `∂Δ` and a cloud on `∂Δ∨`.

mod certify;
mod checks;
mod simplex;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{format_rational, Rational, RationalVector};
use crate::error::{Error, Result};
use crate::measure::WeightedPointCloud;
use crate::roots::WeylGroup;

pub use certify::{certify, certify_with, CertificationReport, CertifyOptions};
pub use checks::{
    check_chamber_support, check_cyclical_monotonicity, check_cyclical_monotonicity_all_lengths,
    check_reflection_sign, check_stability_support, CycleMethod, CycleVerdict, PairWitness, SignVerdict,
    SignWitness, SupportVerdict, DEFAULT_CYCLE_BUDGET,
};
pub use simplex::PivotRule;

/// `c(x, y) = -<x, y>`.
pub fn transport_cost(x: &RationalVector, y: &RationalVector) -> Rational {
    -x.dot(y)
}

/// One support entry of a plan.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PlanEntry {
    pub source: usize,
    pub target: usize,
    #[serde(with = "crate::arith::serde_rational")]
    pub mass: Rational,
}

/// A coupling given by its support, sorted by `(source, target)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransportPlan {
    pub entries: Vec<PlanEntry>,
    #[serde(with = "crate::arith::serde_rational")]
    pub cost: Rational,
}

impl TransportPlan {
    /// Builds a plan from `(source, target, mass)` triples, merging
    /// repeated pairs and dropping zero masses.
    pub fn from_triples(
        triples: impl IntoIterator<Item = (usize, usize, Rational)>,
        mu: &WeightedPointCloud,
        nu: &WeightedPointCloud,
    ) -> TransportPlan {
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (i, j, m) in triples {
            *acc.entry((i, j)).or_insert_with(Rational::zero) += m;
        }
        let entries: Vec<PlanEntry> = acc
            .into_iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|((source, target), mass)| PlanEntry { source, target, mass })
            .collect();
        let cost = entries
            .iter()
            .map(|e| &e.mass * transport_cost(&mu.points[e.source], &nu.points[e.target]))
            .sum();
        TransportPlan { entries, cost }
    }

    /// Row sums and column sums.
    pub fn marginals(&self, sources: usize, targets: usize) -> (Vec<Rational>, Vec<Rational>) {
        let mut rows = vec![Rational::zero(); sources];
        let mut cols = vec![Rational::zero(); targets];
        for e in &self.entries {
            rows[e.source] += &e.mass;
            cols[e.target] += &e.mass;
        }
        (rows, cols)
    }
}

/// Dual solution: `phi(x) + psi(y) <= c(x, y)` for all pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KantorovichPotentials {
    #[serde(with = "crate::arith::serde_rational_vec")]
    pub phi: Vec<Rational>,
    #[serde(with = "crate::arith::serde_rational_vec")]
    pub psi: Vec<Rational>,
}

impl KantorovichPotentials {
    /// `Σ φ μ + Σ ψ ν`.
    pub fn dual_value(&self, mu: &WeightedPointCloud, nu: &WeightedPointCloud) -> Rational {
        let a: Rational = self.phi.iter().zip(&mu.masses).map(|(p, m)| p * m).sum();
        let b: Rational = self.psi.iter().zip(&nu.masses).map(|(p, m)| p * m).sum();
        a + b
    }
}

/// Optimal plan and potentials with the default pivot rule.
pub fn solve_ot(mu: &WeightedPointCloud, nu: &WeightedPointCloud) -> Result<(TransportPlan, KantorovichPotentials)> {
    solve_ot_with(mu, nu, PivotRule::default())
}

fn lcm_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()))
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128()
        .ok_or_else(|| Error::Internal("instance too large for exact integer pivoting".into()))
}

pub(crate) fn scaled_points(cloud: &WeightedPointCloud) -> Result<Vec<Vec<i128>>> {
    let d = lcm_of(cloud.points.iter().flat_map(|p| p.coords()));
    let dq = Rational::from_integer(d);
    cloud
        .points
        .iter()
        .map(|p| p.iter().map(|c| to_i128(&(c * &dq).to_integer())).collect())
        .collect()
}

fn check_masses(cloud: &WeightedPointCloud) -> Result<()> {
    if cloud.masses.iter().any(|m| m.is_negative()) {
        return Err(Error::InvalidArgument("negative mass".into()));
    }
    if cloud.points.len() != cloud.masses.len() {
        return Err(Error::InvalidArgument("points and masses differ in length".into()));
    }
    Ok(())
}

/// Exact optimal transport by the network simplex method.
///
/// Costs and masses are scaled to integers, solved exactly, and scaled
/// back; potentials are normalized so that `phi` vanishes at the
/// lexicographically smallest source point.
pub fn solve_ot_with(
    mu: &WeightedPointCloud,
    nu: &WeightedPointCloud,
    rule: PivotRule,
) -> Result<(TransportPlan, KantorovichPotentials)> {
    check_masses(mu)?;
    check_masses(nu)?;
    let (tm, tn) = (mu.total_mass(), nu.total_mass());
    if tm != tn {
        return Err(Error::UnbalancedMasses(format_rational(&tm), format_rational(&tn)));
    }
    if mu.is_empty() || nu.is_empty() || tm.is_zero() {
        return Err(Error::InvalidArgument("empty measure".into()));
    }
    let dim = mu.points[0].dim();
    if nu.points.iter().chain(&mu.points).any(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: nu.points[0].dim() });
    }

    let xs = scaled_points(mu)?;
    let ys = scaled_points(nu)?;
    let dx = lcm_of(mu.points.iter().flat_map(|p| p.coords()));
    let dy = lcm_of(nu.points.iter().flat_map(|p| p.coords()));
    let dc = Rational::from_integer(dx * dy);

    // only positive masses enter the solver
    let src: Vec<usize> = (0..mu.len()).filter(|&i| mu.masses[i].is_positive()).collect();
    let dst: Vec<usize> = (0..nu.len()).filter(|&j| nu.masses[j].is_positive()).collect();
    let scale = lcm_of(src.iter().map(|&i| &mu.masses[i]).chain(dst.iter().map(|&j| &nu.masses[j])));
    let sq = Rational::from_integer(scale.clone());
    let supply: Vec<i128> = src.iter().map(|&i| to_i128(&(&mu.masses[i] * &sq).to_integer())).collect::<Result<_>>()?;
    let demand: Vec<i128> = dst.iter().map(|&j| to_i128(&(&nu.masses[j] * &sq).to_integer())).collect::<Result<_>>()?;
    let cost_of = |x: &[i128], y: &[i128]| -> Result<i128> {
        x.iter().zip(y).try_fold(0i128, |acc, (a, b)| {
            a.checked_mul(*b).and_then(|p| acc.checked_sub(p)).ok_or_else(|| Error::Internal("cost overflow".into()))
        })
    };
    let cost: Vec<Vec<i128>> = src
        .iter()
        .map(|&i| dst.iter().map(|&j| cost_of(&xs[i], &ys[j])).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;

    let sol = simplex::solve(&supply, &demand, &cost, rule);

    let plan = TransportPlan::from_triples(
        sol.flows.iter().map(|&(a, b, f)| (src[a], dst[b], Rational::new(f.into(), scale.clone()))),
        mu,
        nu,
    );

    let mut phi = vec![None; mu.len()];
    let mut psi = vec![None; nu.len()];
    for (a, &i) in src.iter().enumerate() {
        phi[i] = Some(Rational::from_integer((-sol.pi[a]).into()) / &dc);
    }
    for (b, &j) in dst.iter().enumerate() {
        psi[j] = Some(Rational::from_integer(sol.pi[src.len() + b].into()) / &dc);
    }
    // zero-mass points get c-transform values, which keep feasibility
    let psi: Vec<Rational> = (0..nu.len())
        .map(|j| {
            psi[j].clone().unwrap_or_else(|| {
                src.iter()
                    .map(|&i| transport_cost(&mu.points[i], &nu.points[j]) - phi[i].as_ref().expect("set"))
                    .min()
                    .expect("nonempty")
            })
        })
        .collect();
    let mut phi: Vec<Rational> = (0..mu.len())
        .map(|i| {
            phi[i].clone().unwrap_or_else(|| {
                (0..nu.len())
                    .map(|j| transport_cost(&mu.points[i], &nu.points[j]) - &psi[j])
                    .min()
                    .expect("nonempty")
            })
        })
        .collect();
    let mut psi = psi;
    let anchor = (0..mu.len()).min_by(|&a, &b| mu.points[a].cmp(&mu.points[b])).expect("nonempty");
    let shift = phi[anchor].clone();
    for p in &mut phi {
        *p -= &shift;
    }
    for p in &mut psi {
        *p += &shift;
    }
    Ok((plan, KantorovichPotentials { phi, psi }))
}

/// Average of `(w, w∨)` pushforwards of the plan over the whole group.
/// Both clouds must be invariant under their respective actions.
pub fn symmetrize_plan(
    plan: &TransportPlan,
    group: &WeylGroup,
    mu: &WeightedPointCloud,
    nu: &WeightedPointCloud,
) -> Result<TransportPlan> {
    let index = |c: &WeightedPointCloud| -> HashMap<RationalVector, usize> {
        c.points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
    };
    let (ix, iy) = (index(mu), index(nu));
    let share = Rational::new(BigInt::one(), BigInt::from(group.order()));
    let mut triples = Vec::with_capacity(plan.entries.len() * group.order());
    for w in group.elements() {
        for e in &plan.entries {
            let x = w.act(&mu.points[e.source], mu.side);
            let y = w.act(&nu.points[e.target], nu.side);
            let (Some(&i), Some(&j)) = (ix.get(&x), iy.get(&y)) else {
                return Err(Error::InvalidArgument("point cloud is not invariant under the group".into()));
            };
            triples.push((i, j, &e.mass * &share));
        }
    }
    Ok(TransportPlan::from_triples(triples, mu, nu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use crate::measure::discretize;
    use crate::polytope::Polytope;
    use crate::roots::Side;

    fn cloud(side: Side, pts: &[&[i64]]) -> WeightedPointCloud {
        let n = pts.len() as i64;
        WeightedPointCloud::from_points(
            side,
            pts.iter().map(|p| RationalVector::from_ints(p)).collect(),
            vec![ratio(1, n); pts.len()],
        )
    }

    #[test]
    fn segment_matches_signs() {
        let mu = cloud(Side::M, &[&[-1], &[1]]);
        let nu = cloud(Side::N, &[&[-1], &[1]]);
        let (plan, pot) = solve_ot(&mu, &nu).unwrap();
        assert_eq!(plan.cost, rat(-1));
        assert_eq!(plan.entries.len(), 2);
        assert!(plan.entries.iter().all(|e| e.source == e.target && e.mass == ratio(1, 2)));
        assert_eq!(pot.dual_value(&mu, &nu), plan.cost);
        assert_eq!(pot.phi[0], rat(0));
    }

    #[test]
    fn unbalanced() {
        let mu = cloud(Side::M, &[&[-1], &[1]]);
        let mut nu = cloud(Side::N, &[&[-1], &[1]]);
        nu.masses[0] = rat(1);
        assert!(matches!(solve_ot(&mu, &nu), Err(Error::UnbalancedMasses(_, _))));
    }

    #[test]
    fn square_to_diamond() {
        let square = Polytope::from_int_points(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]).unwrap();
        let mu = discretize(&square, 0, None, Side::M);
        let nu = discretize(&square.dual(), 0, None, Side::N);
        assert_eq!((mu.len(), nu.len()), (8, 4));
        for rule in [PivotRule::BlockSearch, PivotRule::Bland] {
            let (plan, pot) = solve_ot_with(&mu, &nu, rule).unwrap();
            assert_eq!(plan.cost, ratio(-3, 4));
            assert_eq!(pot.dual_value(&mu, &nu), plan.cost);
            for e in &plan.entries {
                let (x, y) = (&mu.points[e.source], &nu.points[e.target]);
                assert!(x.iter().zip(y.iter()).all(|(a, b)| a.signum() == b.signum() || a.is_zero()));
            }
        }
    }
}
