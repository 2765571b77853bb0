//! Brute-force grid oracle for the exponent-versus-budget curve.
//!
//! [`e_of_r_oracle`] minimizes `D(T || V | px)` over channels `T` whose
//! rows live on a simplex lattice, subject to `D(T || W | px) <= r`. It
//! never touches the tilted-family machinery, so it serves as an
//! independent cross-check for [`crate::tilt::e_of_r`]. Because the
//! search is restricted to lattice rows (plus the rows of `w` and `v`
//! themselves, which keeps `T = w` feasible for every `r >= 0`), the
//! result is an upper bound on the true optimum that tightens as the
//! resolution grows; it is not exact.
//!
//! Both objective and constraint are sums of independent per-input
//! terms, so instead of crossing full row lattices the search keeps, per
//! input, only the Pareto-minimal `(constraint, objective)` pairs and
//! folds them input by input. This is exhaustive over the lattice: a
//! dominated partial choice can never complete to a better feasible
//! channel, because both coordinates accumulate additively and are
//! non-negative.

use crate::channel::ChannelProblem;
use crate::dist::FiniteDistribution;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::simplex::{for_each_composition, lattice_size};

/// Hard cap on lattice points per input row and on folded frontier
/// cross products.
const ORACLE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy)]
struct FrontierPoint<S: Scalar> {
    /// Accumulated contribution to `D(T || W | px)`.
    f: S,
    /// Accumulated contribution to `D(T || V | px)`.
    g: S,
}

/// Sort by `f` ascending and keep only points whose `g` strictly
/// improves on everything cheaper, i.e. the Pareto-minimal staircase.
fn prune<S: Scalar>(mut points: Vec<FrontierPoint<S>>) -> Vec<FrontierPoint<S>> {
    points.sort_unstable_by(|a, b| {
        a.f.partial_cmp(&b.f)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.g.partial_cmp(&b.g).unwrap_or(std::cmp::Ordering::Equal))
    });
    let mut kept: Vec<FrontierPoint<S>> = Vec::new();
    for p in points {
        match kept.last() {
            Some(last) if p.g >= last.g => {}
            _ => kept.push(p),
        }
    }
    kept
}

/// Best (smallest) `g` among points with `f <= budget`, if any. The
/// staircase has `g` decreasing in `f`, so the winner is the last
/// affordable point.
fn query<S: Scalar>(staircase: &[FrontierPoint<S>], budget: S) -> Option<S> {
    if budget < S::zero() {
        return None;
    }
    let idx = staircase.partition_point(|p| p.f <= budget);
    if idx == 0 {
        None
    } else {
        Some(staircase[idx - 1].g)
    }
}

/// Candidate `(f, g)` pairs for one input symbol: every lattice row at
/// the given resolution plus the `w` and `v` rows themselves, already
/// weighted by the input mass and pruned to the Pareto staircase.
fn class_frontier<S: Scalar>(
    problem: &ChannelProblem<S>,
    x: usize,
    mass: S,
    resolution: usize,
) -> Result<Vec<FrontierPoint<S>>> {
    let out_size = problem.sensing_out_size();
    let points = lattice_size(out_size, resolution);
    if points > ORACLE_BUDGET as u128 {
        return Err(Error::BudgetExceeded {
            required: points,
            budget: ORACLE_BUDGET,
        });
    }

    let w_row = problem.w().row(x);
    let v_row = problem.v().row(x);
    let ln_w: Vec<S> = (0..out_size).map(|y| w_row.prob(y).ln()).collect();
    let ln_v: Vec<S> = (0..out_size).map(|y| v_row.prob(y).ln()).collect();

    // ln(k) and (k/N) tables so the inner loop is table lookups.
    let n_s = S::from_usize(resolution).expect("resolution fits in scalar");
    let ln_n = n_s.ln();
    let ln_k: Vec<S> = (0..=resolution)
        .map(|k| {
            if k == 0 {
                S::zero() // unused: zero counts contribute nothing
            } else {
                S::from_usize(k).expect("count fits in scalar").ln()
            }
        })
        .collect();
    let frac: Vec<S> = (0..=resolution)
        .map(|k| S::from_usize(k).expect("count fits in scalar") / n_s)
        .collect();

    let mut candidates = Vec::with_capacity(points as usize + 2);
    for_each_composition(out_size, resolution, |counts| {
        let mut f = S::zero();
        let mut g = S::zero();
        for (y, &k) in counts.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let t = frac[k];
            let ln_t = ln_k[k] - ln_n;
            f += t * (ln_t - ln_w[y]);
            g += t * (ln_t - ln_v[y]);
        }
        candidates.push(FrontierPoint {
            f: mass * f.max(S::zero()),
            g: mass * g.max(S::zero()),
        });
    });

    // The rows of w and v are candidates too; in particular T = w keeps
    // the constraint feasible for every r >= 0.
    let row_pair = |t: &FiniteDistribution<S>| {
        let mut f = S::zero();
        let mut g = S::zero();
        for (y, ty) in t.support() {
            let ln_t = ty.ln();
            f += ty * (ln_t - ln_w[y]);
            g += ty * (ln_t - ln_v[y]);
        }
        FrontierPoint {
            f: mass * f.max(S::zero()),
            g: mass * g.max(S::zero()),
        }
    };
    candidates.push(row_pair(w_row));
    candidates.push(row_pair(v_row));

    Ok(prune(candidates))
}

/// Grid minimum of `D(T || V | px)` over lattice channels `T` with
/// `D(T || W | px) <= r`. Upper-bounds [`crate::tilt::e_of_r`] and
/// converges to it as `resolution` grows.
pub fn e_of_r_oracle<S: Scalar>(
    problem: &ChannelProblem<S>,
    px: &FiniteDistribution<S>,
    r: S,
    resolution: usize,
) -> Result<S> {
    if px.alphabet_size() != problem.in_size() {
        return Err(Error::ShapeMismatch(format!(
            "px has {} symbols, problem expects {}",
            px.alphabet_size(),
            problem.in_size()
        )));
    }
    if resolution < 2 {
        return Err(Error::Domain("oracle resolution must be at least 2".into()));
    }
    if r < S::zero() {
        return Err(Error::Domain(format!("budget r = {r} must be non-negative")));
    }

    let classes: Vec<Vec<FrontierPoint<S>>> = px
        .support()
        .map(|(x, mass)| class_frontier(problem, x, mass, resolution))
        .collect::<Result<Vec<_>>>()?;

    let (last, rest) = classes
        .split_last()
        .expect("a distribution has at least one supported symbol");

    // Fold all classes but the last into a partial-sum staircase.
    let mut partial = vec![FrontierPoint {
        f: S::zero(),
        g: S::zero(),
    }];
    for class in rest {
        let product = (partial.len() as u128) * (class.len() as u128);
        if product > ORACLE_BUDGET as u128 {
            return Err(Error::BudgetExceeded {
                required: product,
                budget: ORACLE_BUDGET,
            });
        }
        let mut crossed = Vec::with_capacity(product as usize);
        for a in &partial {
            for b in class {
                crossed.push(FrontierPoint {
                    f: a.f + b.f,
                    g: a.g + b.g,
                });
            }
        }
        partial = prune(crossed);
    }

    // The last class is answered by budget queries instead of being
    // materialized into the cross product.
    let mut best = S::infinity();
    for p in &partial {
        if let Some(g) = query(last, r - p.f) {
            let total = p.g + g;
            if total < best {
                best = total;
            }
        }
    }
    debug_assert!(best.is_finite(), "T = w is always feasible");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::DiscreteChannel;
    use crate::info::conditional_kl;
    use crate::tilt::{divergence_v_w, divergence_w_v, e_of_r, exponent_pair};

    type Dist = FiniteDistribution<f64>;
    type Chan = DiscreteChannel<f64>;
    type Problem = ChannelProblem<f64>;

    fn bsc_problem(w: f64, v: f64) -> Problem {
        Problem::unconstrained(
            Chan::bsc(0.1).unwrap(),
            Chan::bsc(w).unwrap(),
            Chan::bsc(v).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn zero_budget_recovers_unconstrained_divergence() {
        // The w rows are candidates, so r = 0 must return D(w || v | px).
        let p = bsc_problem(0.1, 0.3);
        let px = Dist::uniform(2);
        let got = e_of_r_oracle(&p, &px, 0.0, 100).unwrap();
        let expected = conditional_kl(p.w(), p.v(), &px).unwrap();
        assert!((got - expected).abs() < 1e-12);
    }

    #[test]
    fn equal_hypotheses_give_zero() {
        let p = bsc_problem(0.2, 0.2);
        let px = Dist::uniform(2);
        for &r in &[0.0, 0.01, 1.0] {
            assert_eq!(e_of_r_oracle(&p, &px, r, 50).unwrap(), 0.0);
        }
    }

    #[test]
    fn large_budget_reaches_zero() {
        let p = bsc_problem(0.1, 0.3);
        let px = Dist::uniform(2);
        let d_vw = divergence_v_w(&p, &px).unwrap();
        let got = e_of_r_oracle(&p, &px, d_vw + 1e-9, 100).unwrap();
        assert!(got.abs() < 1e-12); // T = v is a candidate
    }

    #[test]
    fn dominates_and_tracks_e_of_r() {
        let p = bsc_problem(0.1, 0.3);
        let px = Dist::uniform(2);
        let mid = exponent_pair(&p, &px, 0.5).unwrap();
        let exact = e_of_r(&p, &px, mid.e0).unwrap();
        let coarse = e_of_r_oracle(&p, &px, mid.e0, 200).unwrap();
        let fine = e_of_r_oracle(&p, &px, mid.e0, 2000).unwrap();
        assert!(coarse >= exact - 1e-9);
        assert!(fine >= exact - 1e-9);
        assert!((fine - exact).abs() < 1e-4);
        assert!(fine <= coarse + 1e-12);
    }

    #[test]
    fn ternary_output_feasible() {
        let w = Chan::new(vec![vec![0.7, 0.2, 0.1], vec![0.3, 0.4, 0.3]]).unwrap();
        let v = Chan::new(vec![vec![0.2, 0.3, 0.5], vec![0.25, 0.5, 0.25]]).unwrap();
        let p = Problem::unconstrained(Chan::bsc(0.1).unwrap(), w, v).unwrap();
        let px = Dist::bernoulli(0.4).unwrap();
        let d_vw = divergence_v_w(&p, &px).unwrap();
        let r = 0.4 * d_vw;
        let exact = e_of_r(&p, &px, r).unwrap();
        let grid = e_of_r_oracle(&p, &px, r, 400).unwrap();
        assert!(grid >= exact - 1e-9);
        assert!((grid - exact).abs() < 2e-3);

        let wv = divergence_w_v(&p, &px).unwrap();
        assert!(grid <= wv + 1e-12);
    }

    #[test]
    fn resolution_guard_trips() {
        let p = bsc_problem(0.1, 0.3);
        let px = Dist::uniform(2);
        assert!(matches!(
            e_of_r_oracle(&p, &px, 0.0, 1),
            Err(Error::Domain(_))
        ));
    }
}
