//! Exact verifications of a transport plan's support.

use std::collections::HashMap;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{Rational, RationalVector};
use crate::error::{Error, Result};
use crate::measure::WeightedPointCloud;
use crate::polytope::Polytope;
use crate::roots::{RootSystem, Side, WeylGroup};
use crate::weyl::WeylPolytope;

use super::{scaled_points, TransportPlan};

/// Default bound on `|support|²` for exhaustive cycle enumeration.
pub const DEFAULT_CYCLE_BUDGET: u128 = 1_000_000;

const MAX_WITNESSES: usize = 8;

/// A support pair that failed a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub source: RationalVector,
    pub target: RationalVector,
    #[serde(with = "crate::arith::serde_rational")]
    pub mass: Rational,
}

/// Mass of the plan outside a target set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportVerdict {
    pub passed: bool,
    #[serde(with = "crate::arith::serde_rational")]
    pub offending_mass: Rational,
    pub offending_pairs: usize,
    /// At most eight offending pairs.
    pub witnesses: Vec<PairWitness>,
}

impl SupportVerdict {
    fn collect(plan: &TransportPlan, mu: &WeightedPointCloud, nu: &WeightedPointCloud, mut ok: impl FnMut(usize, usize) -> bool) -> Self {
        let mut offending_mass = Rational::zero();
        let mut offending_pairs = 0;
        let mut witnesses = Vec::new();
        for e in &plan.entries {
            if ok(e.source, e.target) {
                continue;
            }
            offending_mass += &e.mass;
            offending_pairs += 1;
            if witnesses.len() < MAX_WITNESSES {
                witnesses.push(PairWitness {
                    source: mu.points[e.source].clone(),
                    target: nu.points[e.target].clone(),
                    mass: e.mass.clone(),
                });
            }
        }
        SupportVerdict { passed: offending_pairs == 0, offending_mass, offending_pairs, witnesses }
    }
}

/// Whether the support lies in `⋃_m Star(m) × τ_m` over the vertices `m`.
pub fn check_stability_support(
    plan: &TransportPlan,
    delta: &Polytope,
    mu: &WeightedPointCloud,
    nu: &WeightedPointCloud,
) -> Result<SupportVerdict> {
    delta.require_reflexive()?;
    let one = Rational::from_integer(1.into());
    Ok(SupportVerdict::collect(plan, mu, nu, |s, t| {
        let (x, y) = (&mu.points[s], &nu.points[t]);
        delta
            .vertices()
            .iter()
            .enumerate()
            .any(|(m, v)| v.dot(y) == one && delta.star_contains(m, x))
    }))
}

/// Whether the support lies in `⋃_w w(Star(m) ∩ C+_M) × w∨(τ_m ∩ C+_N)`.
/// Closed chambers are used on both sides; a pair passes if some common
/// chamber works.
pub fn check_chamber_support(
    plan: &TransportPlan,
    rec: &WeylPolytope,
    group: &WeylGroup,
    mu: &WeightedPointCloud,
    nu: &WeightedPointCloud,
) -> Result<SupportVerdict> {
    let delta = &rec.polytope;
    delta.require_reflexive()?;
    let m = delta
        .vertex_index(&rec.weight)
        .ok_or_else(|| Error::VertexNotFound(rec.weight.to_string()))?;
    let one = Rational::from_integer(1.into());
    let mut cx: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut cy: HashMap<usize, Vec<usize>> = HashMap::new();
    Ok(SupportVerdict::collect(plan, mu, nu, |s, t| {
        let (x, y) = (&mu.points[s], &nu.points[t]);
        let ws = cx.entry(s).or_insert_with(|| group.chambers_containing(x, Side::M)).clone();
        let wt = cy.entry(t).or_insert_with(|| group.chambers_containing(y, Side::N));
        ws.iter().filter(|w| wt.contains(w)).any(|&w| {
            let e = group.element(w);
            let x0 = e.act_inverse(x, Side::M);
            let y0 = e.act_inverse(y, Side::N);
            delta.star_contains(m, &x0) && rec.weight.dot(&y0) == one
        })
    }))
}

/// A failed sign test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignWitness {
    pub source: RationalVector,
    pub target: RationalVector,
    pub root: RationalVector,
    #[serde(with = "crate::arith::serde_rational")]
    pub product: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignVerdict {
    pub passed: bool,
    pub violations: usize,
    pub witnesses: Vec<SignWitness>,
}

/// Checks `<x, α∨> <α, y> >= 0` for every support pair and every root.
pub fn check_reflection_sign(
    plan: &TransportPlan,
    r: &RootSystem,
    mu: &WeightedPointCloud,
    nu: &WeightedPointCloud,
) -> SignVerdict {
    let mut violations = 0;
    let mut witnesses = Vec::new();
    for e in &plan.entries {
        let (x, y) = (&mu.points[e.source], &nu.points[e.target]);
        for a in r.positive_roots() {
            let product = x.dot(&r.coroots()[a]) * r.roots()[a].dot(y);
            if product.is_negative() {
                violations += 1;
                if witnesses.len() < MAX_WITNESSES {
                    witnesses.push(SignWitness {
                        source: x.clone(),
                        target: y.clone(),
                        root: r.roots()[a].clone(),
                        product,
                    });
                }
            }
        }
    }
    SignVerdict { passed: violations == 0, violations, witnesses }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleMethod {
    /// Every cycle of support pairs up to the stated length.
    Exhaustive,
    /// Negative-cycle search on the support graph, covering all lengths.
    Potential,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleVerdict {
    pub passed: bool,
    pub method: CycleMethod,
    /// `None` when cycles of every length were covered.
    pub max_cycle_length: Option<usize>,
    pub support_pairs: usize,
    /// Violating cycles as lists of `(source, target)` support pairs.
    pub violations: Vec<Vec<(usize, usize)>>,
}

/// Support pairs and the scaled integer matrix `D[a][b] = c(x_a, y_b) - c(x_a, y_a)`.
fn reassignment_matrix(
    plan: &TransportPlan,
    mu: &WeightedPointCloud,
    nu: &WeightedPointCloud,
) -> Result<(Vec<(usize, usize)>, Vec<Vec<i64>>)> {
    let xs = scaled_points(mu)?;
    let ys = scaled_points(nu)?;
    let pairs: Vec<(usize, usize)> = plan.entries.iter().map(|e| (e.source, e.target)).collect();
    let cost = |i: usize, j: usize| -> i128 { -xs[i].iter().zip(&ys[j]).map(|(a, b)| a * b).sum::<i128>() };
    let overflow = || Error::Internal("cost overflow".into());
    let d = pairs
        .iter()
        .map(|&(i, j)| {
            let own = cost(i, j);
            pairs.iter().map(|&(_, k)| (cost(i, k) - own).to_i64().ok_or_else(overflow)).collect()
        })
        .collect::<Result<_>>()?;
    Ok((pairs, d))
}

/// Splits a closed walk into simple cycles and returns a negative one.
fn negative_simple_cycle(walk: &[usize], d: &[Vec<i64>]) -> Option<Vec<usize>> {
    let mut stack: Vec<usize> = Vec::new();
    for &v in walk {
        if let Some(pos) = stack.iter().position(|&u| u == v) {
            let cycle: Vec<usize> = stack[pos..].to_vec();
            let w: i64 = (0..cycle.len()).map(|t| d[cycle[t]][cycle[(t + 1) % cycle.len()]]).sum();
            if w < 0 {
                return Some(cycle);
            }
            stack.truncate(pos);
        }
        stack.push(v);
    }
    None
}

/// Exhaustive check that no cycle of at most `k` support pairs can be
/// reassigned more cheaply: `Σ c(x_t, y_t) <= Σ c(x_t, y_{t+1})`.
///
/// Closed walks of length `k` in the reassignment graph (with zero loops)
/// are minimized by min-plus products; a negative one contains a negative
/// simple cycle of length at most `k`. Fails with
/// [`Error::CombinatorialBudgetExceeded`] when `|support|²` exceeds `budget`.
pub fn check_cyclical_monotonicity(
    plan: &TransportPlan,
    mu: &WeightedPointCloud,
    nu: &WeightedPointCloud,
    k: usize,
    budget: u128,
) -> Result<CycleVerdict> {
    if k < 2 {
        return Err(Error::InvalidArgument("cycle length must be at least 2".into()));
    }
    let s = plan.entries.len();
    let needed = (s as u128) * (s as u128);
    if needed > budget {
        return Err(Error::CombinatorialBudgetExceeded { needed, budget });
    }
    let (pairs, d) = reassignment_matrix(plan, mu, nu)?;
    // walk[t][a][b]: cheapest walk a -> b with t + 1 steps, and its second-to-last node
    let mut walk = d.clone();
    let mut via: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut violations = Vec::new();
    for _ in 1..k {
        let mut next = vec![vec![i64::MAX; s]; s];
        let mut arg = vec![vec![0u32; s]; s];
        for a in 0..s {
            let row = &walk[a];
            let out = &mut next[a];
            let am = &mut arg[a];
            for (c, &wac) in row.iter().enumerate() {
                let dc = &d[c];
                for b in 0..s {
                    let v = wac + dc[b];
                    if v < out[b] {
                        out[b] = v;
                        am[b] = c as u32;
                    }
                }
            }
        }
        walk = next;
        via.push(arg);
    }
    for a in 0..s {
        if walk[a][a] < 0 {
            // rebuild the closed walk a -> ... -> a backwards
            let mut nodes = vec![a];
            let mut b = a;
            for arg in via.iter().rev() {
                b = arg[a][b] as usize;
                nodes.push(b);
            }
            nodes.push(a);
            nodes.reverse();
            if let Some(cycle) = negative_simple_cycle(&nodes, &d) {
                let mut c: Vec<(usize, usize)> = cycle.iter().map(|&i| pairs[i]).collect();
                let start = (0..c.len()).min_by_key(|&i| c[i]).unwrap_or(0);
                c.rotate_left(start);
                if !violations.contains(&c) {
                    violations.push(c);
                }
            }
            if violations.len() >= MAX_WITNESSES {
                break;
            }
        }
    }
    Ok(CycleVerdict {
        passed: violations.is_empty(),
        method: CycleMethod::Exhaustive,
        max_cycle_length: Some(k),
        support_pairs: s,
        violations,
    })
}

/// Cyclical monotonicity for cycles of every length: Bellman–Ford on the
/// bipartite graph with arcs `x -> y` of weight `c(x, y)` for all pairs
/// and `y -> x` of weight `-c(x, y)` for support pairs. A negative cycle
/// exists iff the support is not c-cyclically monotone.
pub fn check_cyclical_monotonicity_all_lengths(
    plan: &TransportPlan,
    mu: &WeightedPointCloud,
    nu: &WeightedPointCloud,
) -> Result<CycleVerdict> {
    let xs = scaled_points(mu)?;
    let ys = scaled_points(nu)?;
    let mut src: Vec<usize> = plan.entries.iter().map(|e| e.source).collect();
    let mut dst: Vec<usize> = plan.entries.iter().map(|e| e.target).collect();
    src.sort_unstable();
    src.dedup();
    dst.sort_unstable();
    dst.dedup();
    let (nx, ny) = (src.len(), dst.len());
    let sx: HashMap<usize, usize> = src.iter().enumerate().map(|(a, &i)| (i, a)).collect();
    let sy: HashMap<usize, usize> = dst.iter().enumerate().map(|(b, &j)| (j, b)).collect();
    let cost: Vec<Vec<i128>> = src
        .iter()
        .map(|&i| dst.iter().map(|&j| -xs[i].iter().zip(&ys[j]).map(|(a, b)| a * b).sum::<i128>()).collect())
        .collect();
    // support arcs y -> x, grouped by x
    let mut back: Vec<Vec<usize>> = vec![Vec::new(); nx];
    for e in &plan.entries {
        back[sx[&e.source]].push(sy[&e.target]);
    }

    let mut dx = vec![0i128; nx];
    let mut dy = vec![0i128; ny];
    // predecessor of a node: for y the x it was reached from, for x the y
    let mut py = vec![usize::MAX; ny];
    let mut px = vec![usize::MAX; nx];
    let nodes = nx + ny;
    let mut last_changed = None;
    for _ in 0..=nodes {
        let mut changed = None;
        for a in 0..nx {
            let row = &cost[a];
            for b in 0..ny {
                let v = dx[a] + row[b];
                if v < dy[b] {
                    dy[b] = v;
                    py[b] = a;
                    changed = Some(nx + b);
                }
            }
        }
        for a in 0..nx {
            for &b in &back[a] {
                let v = dy[b] - cost[a][b];
                if v < dx[a] {
                    dx[a] = v;
                    px[a] = b;
                    changed = Some(a);
                }
            }
        }
        last_changed = changed;
        if changed.is_none() {
            break;
        }
    }
    let mut violations = Vec::new();
    if last_changed.is_some() {
        // every cycle of the predecessor graph is negative; find one
        let pred = |v: usize| -> Option<usize> {
            if v < nx {
                (px[v] != usize::MAX).then(|| nx + px[v])
            } else {
                (py[v - nx] != usize::MAX).then(|| py[v - nx])
            }
        };
        let mut state = vec![0u8; nodes];
        'search: for s0 in 0..nodes {
            let mut path = Vec::new();
            let mut v = s0;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                match pred(v) {
                    Some(u) => v = u,
                    None => break,
                }
            }
            if state[v] == 1 && pred(*path.last().expect("nonempty")).is_some() {
                let pos = path.iter().position(|&u| u == v).expect("on path");
                // pairs (x, y) with y -> x on the cycle are support pairs
                let mut c: Vec<(usize, usize)> =
                    path[pos..].iter().filter(|&&u| u < nx).map(|&a| (src[a], dst[px[a]])).collect();
                let start = (0..c.len()).min_by_key(|&i| c[i]).unwrap_or(0);
                c.rotate_left(start);
                violations.push(c);
                break 'search;
            }
            for u in path {
                state[u] = 2;
            }
        }
        if violations.is_empty() {
            return Err(Error::Internal("negative cycle not located".into()));
        }
    }
    Ok(CycleVerdict {
        passed: violations.is_empty(),
        method: CycleMethod::Potential,
        max_cycle_length: None,
        support_pairs: plan.entries.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use crate::roots::{build_root_system, Family, LatticeChoice};
    use crate::transport::{solve_ot, PlanEntry};

    fn seg(side: Side) -> WeightedPointCloud {
        WeightedPointCloud::from_points(
            side,
            vec![RationalVector::from_ints(&[-1]), RationalVector::from_ints(&[1])],
            vec![ratio(1, 2), ratio(1, 2)],
        )
    }

    fn plan(pairs: &[(usize, usize)], mu: &WeightedPointCloud, nu: &WeightedPointCloud) -> TransportPlan {
        TransportPlan::from_triples(pairs.iter().map(|&(a, b)| (a, b, ratio(1, 2))), mu, nu)
    }

    #[test]
    fn cycles_on_the_segment() {
        let (mu, nu) = (seg(Side::M), seg(Side::N));
        let good = plan(&[(0, 0), (1, 1)], &mu, &nu);
        assert!(check_cyclical_monotonicity(&good, &mu, &nu, 2, DEFAULT_CYCLE_BUDGET).unwrap().passed);
        assert!(check_cyclical_monotonicity_all_lengths(&good, &mu, &nu).unwrap().passed);
        let bad = plan(&[(0, 1), (1, 0)], &mu, &nu);
        let v = check_cyclical_monotonicity(&bad, &mu, &nu, 2, DEFAULT_CYCLE_BUDGET).unwrap();
        assert!(!v.passed);
        assert_eq!(v.violations, vec![vec![(0, 1), (1, 0)]]);
        let v = check_cyclical_monotonicity_all_lengths(&bad, &mu, &nu).unwrap();
        assert!(!v.passed);
        assert_eq!(v.violations[0].len(), 2);
        assert!(matches!(
            check_cyclical_monotonicity(&bad, &mu, &nu, 2, 3),
            Err(Error::CombinatorialBudgetExceeded { needed: 4, budget: 3 })
        ));
    }

    #[test]
    fn sign_check_on_b2() {
        let b2 = build_root_system(Family::B, 2, LatticeChoice::Root).unwrap();
        let mu = WeightedPointCloud::from_points(Side::M, vec![b2.weight_from_fundamental(&[0, 2]).unwrap()], vec![rat(1)]);
        // α2 short is e2 in e-coordinates; its coroot pairs to -2 with this point
        let y = b2.simple_coroot(1).scale(&ratio(-1, 2));
        let nu = WeightedPointCloud::from_points(Side::N, vec![y], vec![rat(1)]);
        let p = TransportPlan {
            entries: vec![PlanEntry { source: 0, target: 0, mass: rat(1) }],
            cost: rat(0),
        };
        let v = check_reflection_sign(&p, &b2, &mu, &nu);
        assert!(!v.passed);
        assert!(v.witnesses.iter().any(|w| w.product == rat(-2)));
        let (ok, _) = solve_ot(&seg(Side::M), &seg(Side::N)).unwrap();
        let a1 = build_root_system(Family::A, 1, LatticeChoice::Root).unwrap();
        assert!(check_reflection_sign(&ok, &a1, &seg(Side::M), &seg(Side::N)).passed);
    }
}
