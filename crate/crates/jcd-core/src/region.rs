//! Trade-off regions between communication rate and discrimination
//! exponents, computed as Pareto frontiers over a cost-feasible lattice
//! of input distributions.
//!
//! The full region is the downward closure of the reported frontier, so
//! only Pareto-maximal boundary points are kept. Closed-form evaluators
//! for the two canonical binary instances (an on-off sensing pair and a
//! pair of BSCs) double as golden references for the grid sweeps.

use rayon::prelude::*;

use crate::binary::{binary_entropy, binary_kl, convolve_star};
use crate::channel::ChannelProblem;
use crate::dist::FiniteDistribution;
use crate::error::{Error, Result};
use crate::info::{expected_cost, mutual_information};
use crate::scalar::Scalar;
use crate::simplex::simplex_lattice;
use crate::tilt::{chernoff_info, divergence_w_v, exponent_pair, uniform_grid};

/// Componentwise dominance tolerance used by Pareto pruning.
const DOMINANCE_TOL: f64 = 1e-9;
/// Distance below which two points count as duplicates.
const DEDUP_TOL: f64 = 1e-12;
/// Cost-feasibility slack.
const COST_TOL: f64 = 1e-9;

/// One boundary point of the rate-exponent region, with the input
/// distribution and tilt parameter that generate it.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionPoint<S: Scalar> {
    pub rate: S,
    pub e0: S,
    pub e1: S,
    pub px: FiniteDistribution<S>,
    pub s: S,
}

/// Pareto-maximal boundary of the rate-exponent region on a finite grid.
#[derive(Debug, Clone)]
pub struct ParetoSurface<S: Scalar> {
    pub points: Vec<RegionPoint<S>>,
    pub px_resolution: usize,
    pub s_resolution: usize,
}

/// One point of a two-objective (rate, exponent) frontier.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffPoint<S: Scalar> {
    pub rate: S,
    pub e: S,
    /// Tilt parameter attaining the exponent, where one is meaningful.
    pub s_star: Option<S>,
    pub px: FiniteDistribution<S>,
}

fn key3<S: Scalar>(p: &RegionPoint<S>) -> [S; 3] {
    [p.rate, p.e0, p.e1]
}

fn lex_desc<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> std::cmp::Ordering {
    for i in 0..3 {
        match b[i].partial_cmp(&a[i]) {
            Some(std::cmp::Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    std::cmp::Ordering::Equal
}

fn dominates<S: Scalar>(a: &[S; 3], b: &[S; 3], tol: S) -> bool {
    let mut strictly = false;
    for i in 0..3 {
        if a[i] < b[i] - tol {
            return false;
        }
        if a[i] > b[i] + tol {
            strictly = true;
        }
    }
    strictly
}

fn near_duplicate<S: Scalar>(a: &[S; 3], b: &[S; 3], tol: S) -> bool {
    (0..3).all(|i| (a[i] - b[i]).abs() <= tol)
}

/// Keep the Pareto-maximal points of a candidate cloud. Runs an exact
/// weak-dominance pass over a lexicographically sorted list (which is
/// order-stable), then removes points dominated within tolerance and
/// near-duplicates.
fn pareto_prune<S: Scalar>(mut points: Vec<RegionPoint<S>>) -> Vec<RegionPoint<S>> {
    let tol = S::from_const(DOMINANCE_TOL);
    let dedup = S::from_const(DEDUP_TOL);
    points.sort_by(|a, b| lex_desc(&key3(a), &key3(b)));

    let mut kept: Vec<RegionPoint<S>> = Vec::new();
    'candidates: for p in points {
        let kp = key3(&p);
        for k in &kept {
            let kk = key3(k);
            if near_duplicate(&kk, &kp, dedup) {
                continue 'candidates;
            }
            if dominates(&kk, &kp, S::zero()) {
                continue 'candidates;
            }
        }
        kept.push(p);
    }

    // Tolerance sweep among survivors.
    let keys: Vec<[S; 3]> = kept.iter().map(key3).collect();
    let alive: Vec<bool> = (0..kept.len())
        .map(|i| {
            !keys
                .iter()
                .enumerate()
                .any(|(j, kj)| j != i && dominates(kj, &keys[i], tol))
        })
        .collect();
    kept.into_iter()
        .zip(alive)
        .filter_map(|(p, keep)| keep.then_some(p))
        .collect()
}

/// Two-objective variant for the (rate, exponent) frontiers.
fn pareto_prune_2d<S: Scalar>(mut points: Vec<TradeoffPoint<S>>) -> Vec<TradeoffPoint<S>> {
    let tol = S::from_const(DOMINANCE_TOL);
    let dedup = S::from_const(DEDUP_TOL);
    points.sort_by(|a, b| {
        b.rate
            .partial_cmp(&a.rate)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(b.e.partial_cmp(&a.e).unwrap_or(std::cmp::Ordering::Equal))
    });
    let mut kept: Vec<TradeoffPoint<S>> = Vec::new();
    'candidates: for p in points {
        for k in &kept {
            if (k.rate - p.rate).abs() <= dedup && (k.e - p.e).abs() <= dedup {
                continue 'candidates;
            }
            let ge = k.rate >= p.rate && k.e >= p.e;
            let gt = k.rate > p.rate || k.e > p.e;
            if ge && gt {
                continue 'candidates;
            }
        }
        kept.push(p);
    }
    let alive: Vec<bool> = (0..kept.len())
        .map(|i| {
            !(0..kept.len()).any(|j| {
                j != i
                    && kept[j].rate >= kept[i].rate - tol
                    && kept[j].e >= kept[i].e - tol
                    && (kept[j].rate > kept[i].rate + tol || kept[j].e > kept[i].e + tol)
            })
        })
        .collect();
    kept.into_iter()
        .zip(alive)
        .filter_map(|(p, keep)| keep.then_some(p))
        .collect()
}

/// Lattice of cost-feasible input distributions.
fn feasible_lattice<S: Scalar>(
    problem: &ChannelProblem<S>,
    px_resolution: usize,
) -> Result<Vec<FiniteDistribution<S>>> {
    if px_resolution < 2 {
        return Err(Error::Domain("px resolution must be at least 2".into()));
    }
    let budget = problem.cost().budget();
    let slack = S::from_const(COST_TOL);
    let feasible: Vec<_> = simplex_lattice(problem.in_size(), px_resolution)
        .into_iter()
        .filter(|px| {
            expected_cost(px, problem.cost()).map(|c| c <= budget + slack).unwrap_or(false)
        })
        .collect();
    if feasible.is_empty() {
        return Err(Error::InfeasibleCost {
            budget: budget.to_f64_lossy(),
            min_cost: problem.cost().min_cost().to_f64_lossy(),
        });
    }
    Ok(feasible)
}

/// Sweep the cost-feasible px lattice against a tilt grid and keep the
/// Pareto-maximal (rate, e0, e1) points.
pub fn rate_exponent_surface<S: Scalar>(
    problem: &ChannelProblem<S>,
    px_resolution: usize,
    s_resolution: usize,
) -> Result<ParetoSurface<S>> {
    if s_resolution < 2 {
        return Err(Error::Domain("s resolution must be at least 2".into()));
    }
    let feasible = feasible_lattice(problem, px_resolution)?;
    let s_grid = uniform_grid::<S>(s_resolution);

    let candidates: Vec<Vec<RegionPoint<S>>> = feasible
        .into_par_iter()
        .map(|px| -> Result<Vec<RegionPoint<S>>> {
            let rate = mutual_information(&px, problem.comm())?;
            s_grid
                .iter()
                .map(|&s| {
                    let pt = exponent_pair(problem, &px, s)?;
                    Ok(RegionPoint {
                        rate,
                        e0: pt.e0,
                        e1: pt.e1,
                        px: px.clone(),
                        s,
                    })
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;

    let flat: Vec<RegionPoint<S>> = candidates.into_iter().flatten().collect();
    Ok(ParetoSurface {
        points: pareto_prune(flat),
        px_resolution,
        s_resolution,
    })
}

/// Grid-certified membership test for a query tuple.
///
/// Returns the first grid witness `(px, s)` whose rate, exponents and
/// cost all cover the query. A `None` answer is one-sided: boundary
/// points may fail certification at finite grid resolution.
pub fn membership<S: Scalar>(
    problem: &ChannelProblem<S>,
    rate: S,
    e0: S,
    e1: S,
    px_resolution: usize,
    s_resolution: usize,
) -> Result<Option<(FiniteDistribution<S>, S)>> {
    if rate < S::zero() || e0 < S::zero() || e1 < S::zero() {
        return Err(Error::Domain("query tuple must be non-negative".into()));
    }
    if s_resolution < 2 {
        return Err(Error::Domain("s resolution must be at least 2".into()));
    }
    let feasible = feasible_lattice(problem, px_resolution)?;
    let s_grid = uniform_grid::<S>(s_resolution);
    for px in feasible {
        if mutual_information(&px, problem.comm())? < rate {
            continue;
        }
        for &s in &s_grid {
            let pt = exponent_pair(problem, &px, s)?;
            if pt.e0 >= e0 && pt.e1 >= e1 {
                return Ok(Some((px, s)));
            }
        }
    }
    Ok(None)
}

/// Frontier of (rate, common exponent) pairs under the minimax
/// discrimination criterion: the exponent is the conditional Chernoff
/// information of the sensing pair at each feasible input distribution.
pub fn minimax_frontier<S: Scalar>(
    problem: &ChannelProblem<S>,
    px_resolution: usize,
) -> Result<Vec<TradeoffPoint<S>>> {
    let feasible = feasible_lattice(problem, px_resolution)?;
    let points = feasible
        .into_par_iter()
        .map(|px| -> Result<TradeoffPoint<S>> {
            let rate = mutual_information(&px, problem.comm())?;
            let c = chernoff_info(problem, &px)?;
            Ok(TradeoffPoint {
                rate,
                e: c.value,
                s_star: Some(c.s_star),
                px,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pareto_prune_2d(points))
}

/// Frontier of (rate, type-II exponent) pairs under the Neyman-Pearson
/// criterion. The exponent cap is `D(W || V | px)` for every type-I
/// level in (0, 1), so the frontier does not depend on that level.
pub fn np_frontier<S: Scalar>(
    problem: &ChannelProblem<S>,
    px_resolution: usize,
) -> Result<Vec<TradeoffPoint<S>>> {
    let feasible = feasible_lattice(problem, px_resolution)?;
    let points = feasible
        .into_par_iter()
        .map(|px| -> Result<TradeoffPoint<S>> {
            let rate = mutual_information(&px, problem.comm())?;
            let e = divergence_w_v(problem, &px)?;
            Ok(TradeoffPoint {
                rate,
                e,
                s_star: None,
                px,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pareto_prune_2d(points))
}

fn check_open_unit<S: Scalar>(name: &str, v: S) -> Result<()> {
    if !(v > S::zero() && v < S::one()) {
        return Err(Error::Domain(format!("{name} = {v} not in (0, 1)")));
    }
    Ok(())
}

/// Tilt of the binary row `(1-a, a)` against `(1-b, b)`: the mass the
/// tilted row puts on the second symbol.
fn binary_tilt<S: Scalar>(a: S, b: S, s: S) -> S {
    let one = S::one();
    let num = a.powf(one - s) * b.powf(s);
    let den = num + (one - a).powf(one - s) * (one - b).powf(s);
    num / den
}

/// Closed-form surface for the on-off sensing instance: communication
/// over a BSC(p); hypothesis `w` emits Bernoulli(q) noise regardless of
/// the input while `v` is a BSC(q); unit cost on the active symbol with
/// budget `b`. Rows of the region are
/// `rate = H(rho * p) - H(p)`, `e0 = rho d(q_hat || 1-q)`,
/// `e1 = rho d(q_hat || q)` over activity levels `rho <= min(b, 1)` and
/// tilts `s`.
pub fn example1_closed_form<S: Scalar>(
    p: S,
    q: S,
    budget: S,
    rho_grid: &[S],
    s_grid: &[S],
) -> Result<ParetoSurface<S>> {
    check_open_unit("p", p)?;
    check_open_unit("q", q)?;
    if budget < S::zero() || budget > S::one() {
        return Err(Error::Domain(format!("budget {budget} not in [0, 1]")));
    }
    if rho_grid.is_empty() || s_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let h_p = binary_entropy(p)?;
    let mut points = Vec::new();
    for &rho in rho_grid {
        if rho < S::zero() || rho > budget + S::from_const(COST_TOL) {
            continue;
        }
        let rho = rho.min(S::one());
        let rate = binary_entropy(convolve_star(rho, p)?)? - h_p;
        let px = FiniteDistribution::bernoulli(rho)?;
        for &s in s_grid {
            // Tilt of the active row (1-q, q) against (q, 1-q).
            let q_hat = binary_tilt(q, S::one() - q, s);
            let e0 = rho * binary_kl(q_hat, S::one() - q)?;
            let e1 = rho * binary_kl(q_hat, q)?;
            points.push(RegionPoint {
                rate: rate.max(S::zero()),
                e0,
                e1,
                px: px.clone(),
                s,
            });
        }
    }
    if points.is_empty() {
        return Err(Error::Domain("no grid activity level is within budget".into()));
    }
    Ok(ParetoSurface {
        points: pareto_prune(points),
        px_resolution: rho_grid.len(),
        s_resolution: s_grid.len(),
    })
}

/// Closed-form surface for the twin-BSC instance: communication over a
/// BSC(p), `w` a BSC(p) and `v` a BSC(q), unit cost on the second symbol
/// with budget `b`. The exponents do not depend on the input
/// distribution, so the region is a rectangle: maximum rate
/// `H(min(0.5, b) * p) - H(p)` alongside the whole exponent frontier.
pub fn example2_closed_form<S: Scalar>(
    p: S,
    q: S,
    budget: S,
    s_grid: &[S],
) -> Result<ParetoSurface<S>> {
    check_open_unit("p", p)?;
    check_open_unit("q", q)?;
    if budget < S::zero() {
        return Err(Error::Domain(format!("budget {budget} must be non-negative")));
    }
    if s_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let half = S::from_const(0.5);
    let rho = budget.min(half);
    let rate = binary_entropy(convolve_star(rho, p)?)? - binary_entropy(p)?;
    let px = FiniteDistribution::bernoulli(rho)?;
    let mut points = Vec::new();
    for &s in s_grid {
        let q_hat = binary_tilt(p, q, s);
        points.push(RegionPoint {
            rate: rate.max(S::zero()),
            e0: binary_kl(q_hat, p)?,
            e1: binary_kl(q_hat, q)?,
            px: px.clone(),
            s,
        });
    }
    Ok(ParetoSurface {
        points: pareto_prune(points),
        px_resolution: 1,
        s_resolution: s_grid.len(),
    })
}

/// Directed-and-back Hausdorff distance between the point clouds of two
/// surfaces in (rate, e0, e1) space.
pub fn hausdorff_distance<S: Scalar>(a: &ParetoSurface<S>, b: &ParetoSurface<S>) -> S {
    let dir = |from: &ParetoSurface<S>, to: &ParetoSurface<S>| {
        from.points
            .iter()
            .map(|p| {
                to.points
                    .iter()
                    .map(|q| {
                        let d0 = p.rate - q.rate;
                        let d1 = p.e0 - q.e0;
                        let d2 = p.e1 - q.e1;
                        (d0 * d0 + d1 * d1 + d2 * d2).sqrt()
                    })
                    .fold(S::infinity(), S::min)
            })
            .fold(S::zero(), S::max)
    };
    dir(a, b).max(dir(b, a))
}
