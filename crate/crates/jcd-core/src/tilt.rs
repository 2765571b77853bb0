//! Tilted channels, the log-normalizer family and the exponent frontier.
//!
//! For each input `x`, `mu_x(s) = ln sum_y w(y|x)^{1-s} v(y|x)^s` is the
//! log-normalizer of the geometric interpolation between the two sensing
//! hypotheses. Its first two derivatives in `s` are the mean and variance
//! of the per-symbol log-likelihood ratio `ln(v/w)` under the tilted
//! output distribution, which gives closed forms for everything here:
//!
//! * the exponent pair `E0 = s mu' - mu`, `E1 = (s-1) mu' - mu`,
//! * the exponent-versus-budget curve `E(r)` by inverting the strictly
//!   increasing map `s -> D(W_s || W | px)`,
//! * the best common exponent `-min_s mu(s)` (a conditional Chernoff
//!   information), attained where `mu'(s) = 0`.

use crate::channel::{ChannelProblem, DiscreteChannel};
use crate::dist::FiniteDistribution;
use crate::error::{Error, Result};
use crate::info::conditional_kl;
use crate::scalar::Scalar;

/// `mu`, `mu'` and `mu''` evaluated at one tilt parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuTriple<S: Scalar> {
    pub mu: S,
    pub mu_prime: S,
    pub mu_double_prime: S,
}

/// One point of the discrimination exponent frontier, in nats per symbol,
/// together with the tilt parameter that generated it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPoint<S: Scalar> {
    pub e0: S,
    pub e1: S,
    pub s: S,
}

/// Result of the common-exponent optimization: the value `-min_s mu_P(s)`
/// and the minimizing tilt parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffPoint<S: Scalar> {
    pub value: S,
    pub s_star: S,
}

fn check_s<S: Scalar>(s: S) -> Result<()> {
    if !(s >= S::zero() && s <= S::one()) {
        return Err(Error::Domain(format!("tilt parameter s = {s} not in [0, 1]")));
    }
    Ok(())
}

/// Log-normalizer triple for a single input symbol.
pub fn mu_x<S: Scalar>(problem: &ChannelProblem<S>, x: usize, s: S) -> Result<MuTriple<S>> {
    check_s(s)?;
    if x >= problem.in_size() {
        return Err(Error::Domain(format!(
            "input symbol {x} outside alphabet of size {}",
            problem.in_size()
        )));
    }
    let w = problem.w().row(x);
    let v = problem.v().row(x);
    let mut z = S::zero();
    let mut first = S::zero();
    let mut second = S::zero();
    for y in 0..w.alphabet_size() {
        let wy = w.prob(y);
        let vy = v.prob(y);
        // Full support is enforced on construction, so the ratio is finite.
        let llr = (vy / wy).ln();
        let t = wy.powf(S::one() - s) * vy.powf(s);
        z += t;
        first += t * llr;
        second += t * llr * llr;
    }
    let mean = first / z;
    let var = second / z - mean * mean;
    Ok(MuTriple {
        mu: z.ln(),
        mu_prime: mean,
        // The variance formula can go a hair negative in floating point.
        mu_double_prime: var.max(S::zero()),
    })
}

/// px-weighted log-normalizer triple.
pub fn mu_p<S: Scalar>(
    problem: &ChannelProblem<S>,
    px: &FiniteDistribution<S>,
    s: S,
) -> Result<MuTriple<S>> {
    if px.alphabet_size() != problem.in_size() {
        return Err(Error::ShapeMismatch(format!(
            "px has {} symbols, problem expects {}",
            px.alphabet_size(),
            problem.in_size()
        )));
    }
    let mut out = MuTriple {
        mu: S::zero(),
        mu_prime: S::zero(),
        mu_double_prime: S::zero(),
    };
    for (x, mass) in px.support() {
        let t = mu_x(problem, x, s)?;
        out.mu += mass * t.mu;
        out.mu_prime += mass * t.mu_prime;
        out.mu_double_prime += mass * t.mu_double_prime;
    }
    Ok(out)
}

/// The tilted channel: row `x` is `w^{1-s} v^s` renormalized. At the
/// endpoints the interpolation is exact: `s = 0` returns `w`, `s = 1`
/// returns `v`.
pub fn tilted_channel<S: Scalar>(problem: &ChannelProblem<S>, s: S) -> Result<DiscreteChannel<S>> {
    check_s(s)?;
    if s == S::zero() {
        return Ok(problem.w().clone());
    }
    if s == S::one() {
        return Ok(problem.v().clone());
    }
    let rows = (0..problem.in_size())
        .map(|x| {
            let w = problem.w().row(x);
            let v = problem.v().row(x);
            let weights: Vec<S> = (0..w.alphabet_size())
                .map(|y| w.prob(y).powf(S::one() - s) * v.prob(y).powf(s))
                .collect();
            let z: S = weights.iter().copied().sum();
            FiniteDistribution::new(weights.into_iter().map(|t| t / z).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    DiscreteChannel::from_rows(rows)
}

/// Exponent pair at tilt `s`, via the derivative identities
/// `D(W_s || W | px) = s mu' - mu` and `D(W_s || V | px) = (s-1) mu' - mu`.
pub fn exponent_pair<S: Scalar>(
    problem: &ChannelProblem<S>,
    px: &FiniteDistribution<S>,
    s: S,
) -> Result<ExponentPoint<S>> {
    let t = mu_p(problem, px, s)?;
    let e0 = s * t.mu_prime - t.mu;
    let e1 = (s - S::one()) * t.mu_prime - t.mu;
    Ok(ExponentPoint {
        e0: e0.max(S::zero()),
        e1: e1.max(S::zero()),
        s,
    })
}

/// Exponent frontier sampled on a grid of tilt parameters. The grid must
/// be sorted and contained in `[0, 1]`; along it `e0` is non-decreasing
/// and `e1` non-increasing.
pub fn exponent_frontier<S: Scalar>(
    problem: &ChannelProblem<S>,
    px: &FiniteDistribution<S>,
    s_grid: &[S],
) -> Result<Vec<ExponentPoint<S>>> {
    if s_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if s_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Domain("s grid must be sorted ascending".into()));
    }
    s_grid
        .iter()
        .map(|&s| exponent_pair(problem, px, s))
        .collect()
}

/// Uniformly spaced grid on `[0, 1]` with `points` entries.
pub fn uniform_grid<S: Scalar>(points: usize) -> Vec<S> {
    assert!(points >= 2, "grid needs at least two points");
    let last = S::from_usize(points - 1).expect("grid size fits in scalar");
    (0..points)
        .map(|i| S::from_usize(i).expect("grid index fits in scalar") / last)
        .collect()
}

/// Default number of tilt-grid points used by frontier sweeps.
pub const DEFAULT_S_RESOLUTION: usize = 201;

/// `D(V || W | px)`, the spread of the type-I exponent budget.
pub fn divergence_v_w<S: Scalar>(
    problem: &ChannelProblem<S>,
    px: &FiniteDistribution<S>,
) -> Result<S> {
    conditional_kl(problem.v(), problem.w(), px)
}

/// `D(W || V | px)`, the largest attainable type-II exponent.
pub fn divergence_w_v<S: Scalar>(
    problem: &ChannelProblem<S>,
    px: &FiniteDistribution<S>,
) -> Result<S> {
    conditional_kl(problem.w(), problem.v(), px)
}

/// Best type-II exponent under a type-I exponent budget `r`:
/// the minimum of `D(T || V | px)` over channels `T` with
/// `D(T || W | px) <= r`, which is attained on the tilted family.
///
/// Solved by bisection on `s`: the map `s -> D(W_s || W | px)` increases
/// strictly from `0` to `D(V || W | px)` whenever the tilt family is
/// non-degenerate. The returned value corresponds to a tilt whose budget
/// matches `r` within `1e-10` and never undershoots `r`, so the result
/// lower-bounds the true optimum (within bisection tolerance).
pub fn e_of_r<S: Scalar>(
    problem: &ChannelProblem<S>,
    px: &FiniteDistribution<S>,
    r: S,
) -> Result<S> {
    let d_max = divergence_v_w(problem, px)?;
    let slack = S::from_const(1e-12);
    if r < -slack || r > d_max + slack.max(d_max * S::from_const(1e-12)) {
        return Err(Error::Domain(format!(
            "budget r = {r} outside [0, D(V||W|px) = {d_max}]"
        )));
    }
    let r = r.max(S::zero()).min(d_max);

    // Degenerate tilt family: v equals w on the support of px, the
    // frontier collapses and the unconstrained optimum is available.
    if d_max <= S::from_const(1e-14) {
        return divergence_w_v(problem, px);
    }
    if r == S::zero() {
        return divergence_w_v(problem, px);
    }

    let budget = |s: S| -> Result<S> { Ok(exponent_pair(problem, px, s)?.e0) };
    let tol = S::from_const(1e-10);
    let mut lo = S::zero(); // budget(lo) <= r
    let mut hi = S::one(); // budget(hi) >= r
    let two = S::from_const(2.0);
    for _ in 0..200 {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break; // bracket exhausted at this precision
        }
        let val = budget(mid)?;
        if (val - r).abs() <= tol {
            return Ok(exponent_pair(problem, px, mid)?.e1);
        }
        if val < r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Fall back to the endpoint whose budget meets or exceeds r, so the
    // result never exceeds the true constrained minimum.
    Ok(exponent_pair(problem, px, hi)?.e1)
}

/// Conditional Chernoff information `-min_{s in [0,1]} mu_P(s)` together
/// with the minimizer, by golden-section search (the objective is
/// strictly convex whenever the tilt family is non-degenerate).
///
/// For a degenerate family (`mu_P` identically zero) the value is `0`
/// and `s_star = 0.5` by convention.
pub fn chernoff_info<S: Scalar>(
    problem: &ChannelProblem<S>,
    px: &FiniteDistribution<S>,
) -> Result<ChernoffPoint<S>> {
    let half = S::from_const(0.5);
    let probe = mu_p(problem, px, half)?;
    if probe.mu_double_prime <= S::from_const(1e-15) && probe.mu.abs() <= S::from_const(1e-15) {
        return Ok(ChernoffPoint {
            value: S::zero(),
            s_star: half,
        });
    }

    let f = |s: S| -> Result<S> { Ok(mu_p(problem, px, s)?.mu) };
    // inverse golden ratio
    let inv_phi = S::from_const(0.618_033_988_749_894_9);
    let mut a = S::zero();
    let mut b = S::one();
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let tol = S::from_const(1e-12);
    let mut iterations = 0;
    while (b - a) > tol && iterations < 400 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
        iterations += 1;
    }
    let s_star = (a + b) * half;
    let value = -f(s_star)?;
    Ok(ChernoffPoint {
        value: value.max(S::zero()),
        s_star,
    })
}
