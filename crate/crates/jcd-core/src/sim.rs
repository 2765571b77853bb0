//! Constant-composition codewords, the log-likelihood-ratio test, exact
//! error enumeration and seeded Monte-Carlo estimation.
//!
//! Under either hypothesis, the outputs at positions carrying the same
//! input symbol are exchangeable, so the accumulated log-likelihood
//! ratio depends on the codeword only through its composition. Exact
//! error probabilities are therefore computed by enumerating, per input
//! symbol class, the multinomial distribution of output counts, and the
//! results are identical for every codeword of a given composition.

use rand::Rng;
use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::ChannelProblem;
use crate::dist::FiniteDistribution;
use crate::error::{Error, Result};
use crate::scalar::{KahanSum, Scalar};
use crate::simplex::{largest_remainder_counts, lattice_size};
use crate::tilt::{exponent_pair, mu_p, ExponentPoint};

/// Leaf budget for exact enumeration: the product over input classes of
/// the number of output-count vectors must stay below this.
pub const EXACT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// The empirical type of a length-`n` sequence, stored as symbol counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeComposition {
    counts: Vec<usize>,
    n: usize,
}

impl TypeComposition {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        let n = counts.iter().sum();
        if counts.is_empty() || n == 0 {
            return Err(Error::Domain(
                "composition needs a positive blocklength".into(),
            ));
        }
        Ok(Self { counts, n })
    }

    /// Nearest lattice type to `px` at blocklength `n`, by
    /// largest-remainder rounding of `n * px`. The rounded type is
    /// within `alphabet_size / n` of `px` in sup norm.
    pub fn quantize<S: Scalar>(px: &FiniteDistribution<S>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("blocklength must be positive".into()));
        }
        Self::new(largest_remainder_counts(px.probs(), n))
    }

    /// Composition of an explicit sequence over `0..alphabet_size`.
    pub fn from_sequence(seq: &[usize], alphabet_size: usize) -> Result<Self> {
        let mut counts = vec![0usize; alphabet_size];
        for &x in seq {
            if x >= alphabet_size {
                return Err(Error::Domain(format!(
                    "symbol {x} outside alphabet of size {alphabet_size}"
                )));
            }
            counts[x] += 1;
        }
        Self::new(counts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn alphabet_size(&self) -> usize {
        self.counts.len()
    }

    /// The type as a probability vector `counts / n`.
    pub fn type_distribution<S: Scalar>(&self) -> FiniteDistribution<S> {
        let n = S::from_usize(self.n).expect("blocklength fits in scalar");
        let probs = self
            .counts
            .iter()
            .map(|&c| S::from_usize(c).expect("count fits in scalar") / n)
            .collect();
        FiniteDistribution::new(probs).expect("type vector is a distribution")
    }
}

/// Parameters of the log-likelihood-ratio test: decide the `w`
/// hypothesis when the accumulated statistic is at most `threshold`
/// (ties decide `w`), where `threshold = n * mu'(s)` evaluated at the
/// codeword's type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LlrtSpec<S: Scalar> {
    pub s: S,
    pub threshold: S,
}

impl<S: Scalar> LlrtSpec<S> {
    pub fn for_composition(
        problem: &ChannelProblem<S>,
        comp: &TypeComposition,
        s: S,
    ) -> Result<Self> {
        let type_dist = comp.type_distribution::<S>();
        let mu = mu_p(problem, &type_dist, s)?;
        let n = S::from_usize(comp.n()).expect("blocklength fits in scalar");
        Ok(Self {
            s,
            threshold: n * mu.mu_prime,
        })
    }
}

/// How an error pair was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorMethod {
    Exact,
    MonteCarlo,
}

/// Estimated or exact error probabilities of a discrimination test at
/// blocklength `n`. `ci_halfwidth` is the wider of the two errors'
/// normal-approximation 95% confidence half-widths (zero for exact
/// results).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorPair<S: Scalar> {
    pub eps0: S,
    pub eps1: S,
    pub method: ErrorMethod,
    pub n: usize,
    pub ci_halfwidth: S,
}

/// A concrete codeword of the requested composition, shuffled
/// deterministically by `seed`.
pub fn make_codeword(comp: &TypeComposition, seed: u64) -> Vec<usize> {
    let mut seq = Vec::with_capacity(comp.n());
    for (x, &c) in comp.counts().iter().enumerate() {
        seq.extend(std::iter::repeat_n(x, c));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    seq.shuffle(&mut rng);
    seq
}

/// Accumulated per-symbol log-likelihood ratio `sum_i ln(v(y_i|x_i) / w(y_i|x_i))`.
pub fn llr_statistic<S: Scalar>(
    problem: &ChannelProblem<S>,
    x_seq: &[usize],
    y_seq: &[usize],
) -> Result<S> {
    if x_seq.len() != y_seq.len() {
        return Err(Error::ShapeMismatch(format!(
            "input length {} vs output length {}",
            x_seq.len(),
            y_seq.len()
        )));
    }
    let mut total = S::zero();
    for (&x, &y) in x_seq.iter().zip(y_seq) {
        if x >= problem.in_size() || y >= problem.sensing_out_size() {
            return Err(Error::Domain(format!("symbol pair ({x}, {y}) out of range")));
        }
        total += (problem.v().prob(x, y) / problem.w().prob(x, y)).ln();
    }
    Ok(total)
}

/// Per-class atom: one output-count vector's log-likelihood-ratio
/// contribution and its log-probabilities under both hypotheses.
#[derive(Debug, Clone, Copy)]
struct ClassAtom<S: Scalar> {
    llr: S,
    ln_pw: S,
    ln_pv: S,
}

fn ln_factorials<S: Scalar>(n: usize) -> Vec<S> {
    let mut table = Vec::with_capacity(n + 1);
    let mut acc = S::zero();
    table.push(acc);
    for k in 1..=n {
        acc += S::from_usize(k).expect("factorial argument fits in scalar").ln();
        table.push(acc);
    }
    table
}

fn enumeration_cost(comp: &TypeComposition, out_size: usize) -> u128 {
    comp.counts()
        .iter()
        .filter(|&&m| m > 0)
        .map(|&m| lattice_size(out_size, m))
        .product()
}

/// Multinomial atoms for one input class of `m` positions.
fn class_atoms<S: Scalar>(
    problem: &ChannelProblem<S>,
    x: usize,
    m: usize,
    ln_fact: &[S],
) -> Vec<ClassAtom<S>> {
    let out_size = problem.sensing_out_size();
    let ln_w: Vec<S> = (0..out_size).map(|y| problem.w().prob(x, y).ln()).collect();
    let ln_v: Vec<S> = (0..out_size).map(|y| problem.v().prob(x, y).ln()).collect();
    let mut atoms = Vec::with_capacity(lattice_size(out_size, m) as usize);
    crate::simplex::for_each_composition(out_size, m, |counts| {
        let mut ln_coeff = ln_fact[m];
        let mut llr = S::zero();
        let mut ln_pw = S::zero();
        let mut ln_pv = S::zero();
        for (y, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c_s = S::from_usize(c).expect("count fits in scalar");
            ln_coeff -= ln_fact[c];
            llr += c_s * (ln_v[y] - ln_w[y]);
            ln_pw += c_s * ln_w[y];
            ln_pv += c_s * ln_v[y];
        }
        atoms.push(ClassAtom {
            llr,
            ln_pw: ln_coeff + ln_pw,
            ln_pv: ln_coeff + ln_pv,
        });
    });
    atoms
}

fn supported_classes<S: Scalar>(
    problem: &ChannelProblem<S>,
    comp: &TypeComposition,
) -> Result<Vec<Vec<ClassAtom<S>>>> {
    if comp.alphabet_size() != problem.in_size() {
        return Err(Error::ShapeMismatch(format!(
            "composition over {} symbols, problem expects {}",
            comp.alphabet_size(),
            problem.in_size()
        )));
    }
    let required = enumeration_cost(comp, problem.sensing_out_size());
    if required > EXACT_ENUMERATION_BUDGET as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget: EXACT_ENUMERATION_BUDGET,
        });
    }
    let ln_fact = ln_factorials::<S>(comp.n());
    Ok(comp
        .counts()
        .iter()
        .enumerate()
        .filter(|&(_, &m)| m > 0)
        .map(|(x, &m)| class_atoms(problem, x, m, &ln_fact))
        .collect())
}

fn fold_classes<S: Scalar>(
    classes: &[Vec<ClassAtom<S>>],
    idx: usize,
    acc: ClassAtom<S>,
    leaf: &mut impl FnMut(ClassAtom<S>),
) {
    if idx == classes.len() {
        leaf(acc);
        return;
    }
    for atom in &classes[idx] {
        fold_classes(
            classes,
            idx + 1,
            ClassAtom {
                llr: acc.llr + atom.llr,
                ln_pw: acc.ln_pw + atom.ln_pw,
                ln_pv: acc.ln_pv + atom.ln_pv,
            },
            leaf,
        );
    }
}

/// Exact error pair of the threshold test, by enumerating output-count
/// vectors per input class. The result depends on the codeword only
/// through its composition.
pub fn exact_error_pair<S: Scalar>(
    problem: &ChannelProblem<S>,
    comp: &TypeComposition,
    spec: &LlrtSpec<S>,
) -> Result<ErrorPair<S>> {
    let classes = supported_classes(problem, comp)?;
    let mut eps0 = KahanSum::new();
    let mut eps1 = KahanSum::new();
    let zero = ClassAtom {
        llr: S::zero(),
        ln_pw: S::zero(),
        ln_pv: S::zero(),
    };
    fold_classes(&classes, 0, zero, &mut |leaf: ClassAtom<S>| {
        if leaf.llr <= spec.threshold {
            // Decide w; an error when v generated the output.
            eps1.add(leaf.ln_pv.exp());
        } else {
            eps0.add(leaf.ln_pw.exp());
        }
    });
    Ok(ErrorPair {
        eps0: eps0.value().min(S::one()).max(S::zero()),
        eps1: eps1.value().min(S::one()).max(S::zero()),
        method: ErrorMethod::Exact,
        n: comp.n(),
        ci_halfwidth: S::zero(),
    })
}

/// Cumulative output distribution per input symbol, in `f64` so the
/// random draw sequence is identical for every scalar type.
fn cumulative_rows<S: Scalar>(ch: &crate::channel::DiscreteChannel<S>) -> Vec<Vec<f64>> {
    ch.rows()
        .iter()
        .map(|row| {
            let mut acc = 0.0;
            row.probs()
                .iter()
                .map(|&p| {
                    acc += p.to_f64_lossy();
                    acc
                })
                .collect()
        })
        .collect()
}

fn sample_symbol(cum: &[f64], u: f64) -> usize {
    cum.iter().position(|&c| u < c).unwrap_or(cum.len() - 1)
}

/// Monte-Carlo estimate of the error pair. Trial `t` draws from a
/// dedicated counter-mode RNG stream (`seed`, stream `t`), so results
/// are reproducible bit-for-bit regardless of how trials are scheduled
/// across threads.
pub fn monte_carlo_error_pair<S: Scalar>(
    problem: &ChannelProblem<S>,
    comp: &TypeComposition,
    spec: &LlrtSpec<S>,
    trials: u64,
    seed: u64,
) -> Result<ErrorPair<S>> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    if comp.alphabet_size() != problem.in_size() {
        return Err(Error::ShapeMismatch(format!(
            "composition over {} symbols, problem expects {}",
            comp.alphabet_size(),
            problem.in_size()
        )));
    }
    // Any codeword of the composition gives the same error statistics;
    // use the sorted one.
    let codeword: Vec<usize> = comp
        .counts()
        .iter()
        .enumerate()
        .flat_map(|(x, &c)| std::iter::repeat_n(x, c))
        .collect();
    let cum_w = cumulative_rows(problem.w());
    let cum_v = cumulative_rows(problem.v());
    let lambda: Vec<Vec<S>> = (0..problem.in_size())
        .map(|x| {
            (0..problem.sensing_out_size())
                .map(|y| (problem.v().prob(x, y) / problem.w().prob(x, y)).ln())
                .collect()
        })
        .collect();

    let run = |rng: &mut ChaCha8Rng, cum: &[Vec<f64>]| -> S {
        let mut llr = S::zero();
        for &x in &codeword {
            let y = sample_symbol(&cum[x], rng.random::<f64>());
            llr += lambda[x][y];
        }
        llr
    };

    let (errors0, errors1) = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            // First the w-hypothesis run, then the v-hypothesis run,
            // both on trial-private randomness.
            let e0 = u64::from(run(&mut rng, &cum_w) > spec.threshold);
            let e1 = u64::from(run(&mut rng, &cum_v) <= spec.threshold);
            (e0, e1)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    let t = S::from_u64(trials).expect("trial count fits in scalar");
    let eps0 = S::from_u64(errors0).expect("error count fits in scalar") / t;
    let eps1 = S::from_u64(errors1).expect("error count fits in scalar") / t;
    let z = S::from_const(1.96);
    let ci = |p: S| z * (p * (S::one() - p) / t).sqrt();
    Ok(ErrorPair {
        eps0,
        eps1,
        method: ErrorMethod::MonteCarlo,
        n: comp.n(),
        ci_halfwidth: ci(eps0).max(ci(eps1)),
    })
}

/// Finite-blocklength guarantees of the threshold test at the
/// composition's type: `eps0 <= exp(n (mu - s mu'))` and
/// `eps1 <= exp(n (mu + (1-s) mu'))`.
pub fn achievability_bounds<S: Scalar>(
    problem: &ChannelProblem<S>,
    comp: &TypeComposition,
    s: S,
) -> Result<(S, S)> {
    let type_dist = comp.type_distribution::<S>();
    let mu = mu_p(problem, &type_dist, s)?;
    let n = S::from_usize(comp.n()).expect("blocklength fits in scalar");
    let b0 = (n * (mu.mu - s * mu.mu_prime)).exp();
    let b1 = (n * (mu.mu + (S::one() - s) * mu.mu_prime)).exp();
    Ok((b0, b1))
}

/// Per-blocklength method for [`exponent_estimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerNMethod {
    Exact,
    MonteCarlo { trials: u64, seed: u64 },
}

/// One blocklength's worth of simulation output.
#[derive(Debug, Clone)]
pub struct ExponentSample<S: Scalar> {
    pub comp: TypeComposition,
    pub spec: LlrtSpec<S>,
    pub pair: ErrorPair<S>,
    /// Exponent pair predicted at the quantized type.
    pub theory: ExponentPoint<S>,
}

/// Empirical exponent estimates across a ladder of blocklengths:
/// `-(1/n) ln eps` at the largest blocklength, plus least-squares slopes
/// of `-ln eps` against `n`. Vanishing error probabilities produce an
/// infinite sentinel.
#[derive(Debug, Clone)]
pub struct ExponentEstimate<S: Scalar> {
    pub e0: S,
    pub e1: S,
    pub slope_e0: S,
    pub slope_e1: S,
    pub per_n: Vec<ExponentSample<S>>,
}

fn point_estimate<S: Scalar>(eps: S, n: usize) -> S {
    if eps > S::zero() {
        -eps.ln() / S::from_usize(n).expect("blocklength fits in scalar")
    } else {
        S::infinity()
    }
}

fn least_squares_slope<S: Scalar>(points: &[(S, S)]) -> S {
    if points.len() < 2 {
        return S::infinity();
    }
    let len = S::from_usize(points.len()).expect("sample count fits in scalar");
    let mean_x = points.iter().map(|&(x, _)| x).sum::<S>() / len;
    let mean_y = points.iter().map(|&(_, y)| y).sum::<S>() / len;
    let mut num = S::zero();
    let mut den = S::zero();
    for &(x, y) in points {
        num += (x - mean_x) * (y - mean_y);
        den += (x - mean_x) * (x - mean_x);
    }
    num / den
}

/// Run the threshold test across increasing blocklengths and summarize
/// how the empirical exponents track the predicted pair.
pub fn exponent_estimate<S: Scalar>(
    problem: &ChannelProblem<S>,
    px: &FiniteDistribution<S>,
    s: S,
    n_list: &[usize],
    method: PerNMethod,
) -> Result<ExponentEstimate<S>> {
    if n_list.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("blocklengths must be strictly increasing".into()));
    }
    let mut per_n = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let comp = TypeComposition::quantize(px, n)?;
        let spec = LlrtSpec::for_composition(problem, &comp, s)?;
        let pair = match method {
            PerNMethod::Exact => exact_error_pair(problem, &comp, &spec)?,
            PerNMethod::MonteCarlo { trials, seed } => {
                monte_carlo_error_pair(problem, &comp, &spec, trials, seed)?
            }
        };
        let theory = exponent_pair(problem, &comp.type_distribution(), s)?;
        per_n.push(ExponentSample {
            comp,
            spec,
            pair,
            theory,
        });
    }

    let last = per_n.last().expect("n_list is non-empty");
    let gather = |pick: fn(&ErrorPair<S>) -> S| -> Vec<(S, S)> {
        per_n
            .iter()
            .filter(|sample| pick(&sample.pair) > S::zero())
            .map(|sample| {
                let n = S::from_usize(sample.pair.n).expect("blocklength fits in scalar");
                (n, -pick(&sample.pair).ln())
            })
            .collect()
    };
    Ok(ExponentEstimate {
        e0: point_estimate(last.pair.eps0, last.pair.n),
        e1: point_estimate(last.pair.eps1, last.pair.n),
        slope_e0: least_squares_slope(&gather(|p| p.eps0)),
        slope_e1: least_squares_slope(&gather(|p| p.eps1)),
        per_n,
    })
}

/// Statistic values closer than this are treated as one threshold by
/// [`np_threshold_search`]: sums that are equal in exact arithmetic can
/// land a few ulps apart when accumulated along different orders, and a
/// threshold splitting such a cluster would be an artifact.
const LLR_TIE_TOL: f64 = 1e-9;

/// Smallest exact type-II error among deterministic LLR threshold tests
/// with type-I error at most `alpha`; returns the chosen threshold and
/// the resulting exact error pair.
///
/// Only deterministic tests are scanned, so at finite blocklength the
/// reported type-I error is generally strictly below `alpha`;
/// asymptotics are unaffected.
pub fn np_threshold_search<S: Scalar>(
    problem: &ChannelProblem<S>,
    comp: &TypeComposition,
    alpha: S,
) -> Result<(S, ErrorPair<S>)> {
    if !(alpha > S::zero() && alpha < S::one()) {
        return Err(Error::Domain(format!("alpha = {alpha} not in (0, 1)")));
    }
    let classes = supported_classes(problem, comp)?;
    let mut atoms: Vec<(S, S, S)> = Vec::new();
    let zero = ClassAtom {
        llr: S::zero(),
        ln_pw: S::zero(),
        ln_pv: S::zero(),
    };
    fold_classes(&classes, 0, zero, &mut |leaf: ClassAtom<S>| {
        atoms.push((leaf.llr, leaf.ln_pw.exp(), leaf.ln_pv.exp()));
    });
    atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));

    // Walk thresholds upward through the achievable statistic values;
    // eps0 falls while eps1 grows, so the first feasible prefix wins.
    let tie = S::from_const(LLR_TIE_TOL);
    let mut cum_w = KahanSum::new();
    let mut cum_v = KahanSum::new();
    let mut idx = 0;
    while idx < atoms.len() {
        let head = atoms[idx].0;
        let mut llr = head;
        // Consume the whole cluster of effectively-tied statistic values.
        while idx < atoms.len() && atoms[idx].0 - head <= tie {
            llr = atoms[idx].0;
            cum_w.add(atoms[idx].1);
            cum_v.add(atoms[idx].2);
            idx += 1;
        }
        let eps0 = (S::one() - cum_w.value()).max(S::zero());
        if eps0 <= alpha {
            return Ok((
                llr,
                ErrorPair {
                    eps0,
                    eps1: cum_v.value().min(S::one()).max(S::zero()),
                    method: ErrorMethod::Exact,
                    n: comp.n(),
                    ci_halfwidth: S::zero(),
                },
            ));
        }
    }
    // Accepting everything as w is always feasible (eps0 = 0).
    Ok((
        atoms.last().map(|a| a.0).unwrap_or(S::zero()),
        ErrorPair {
            eps0: S::zero(),
            eps1: S::one(),
            method: ErrorMethod::Exact,
            n: comp.n(),
            ci_halfwidth: S::zero(),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::DiscreteChannel;

    type Dist = FiniteDistribution<f64>;
    type Chan = DiscreteChannel<f64>;
    type Problem = ChannelProblem<f64>;

    fn bsc_problem() -> Problem {
        Problem::unconstrained(
            Chan::bsc(0.1).unwrap(),
            Chan::bsc(0.1).unwrap(),
            Chan::bsc(0.3).unwrap(),
        )
        .unwrap()
    }

    fn degenerate_problem() -> Problem {
        Problem::unconstrained(
            Chan::bsc(0.1).unwrap(),
            Chan::bsc(0.2).unwrap(),
            Chan::bsc(0.2).unwrap(),
        )
        .unwrap()
    }

    /// Binomial tail oracle used to pin the exact enumeration.
    fn binomial_tail_ge(n: usize, p: f64, k_min: usize) -> f64 {
        (k_min..=n).map(|k| binomial_pmf(n, p, k)).sum()
    }

    fn binomial_pmf(n: usize, p: f64, k: usize) -> f64 {
        let mut c = 1.0f64;
        for i in 0..k {
            c = c * (n - i) as f64 / (i + 1) as f64;
        }
        c * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32)
    }

    #[test]
    fn quantize_examples() {
        let half = Dist::uniform(2);
        assert_eq!(TypeComposition::quantize(&half, 10).unwrap().counts(), &[5, 5]);
        let point = Dist::point_mass(2, 0);
        assert_eq!(TypeComposition::quantize(&point, 9).unwrap().counts(), &[9, 0]);
        let skew = Dist::bernoulli(0.7).unwrap();
        assert_eq!(TypeComposition::quantize(&skew, 7).unwrap().counts(), &[2, 5]);
    }

    #[test]
    fn quantize_sup_norm_bound() {
        let px = Dist::new(vec![0.21, 0.33, 0.46]).unwrap();
        for n in [3usize, 7, 11, 29] {
            let comp = TypeComposition::quantize(&px, n).unwrap();
            assert_eq!(comp.n(), n);
            let dist = comp.type_distribution::<f64>();
            assert!(dist.linf_distance(&px) <= 3.0 / n as f64 + 1e-12);
        }
    }

    #[test]
    fn codeword_type_and_determinism() {
        let comp = TypeComposition::new(vec![3, 5, 2]).unwrap();
        let a = make_codeword(&comp, 17);
        let b = make_codeword(&comp, 17);
        assert_eq!(a, b);
        let recovered = TypeComposition::from_sequence(&a, 3).unwrap();
        assert_eq!(recovered, comp);

        let all_zero = TypeComposition::new(vec![4, 0]).unwrap();
        assert_eq!(make_codeword(&all_zero, 5), vec![0, 0, 0, 0]);
    }

    #[test]
    fn llr_single_symbol_and_additivity() {
        let p = bsc_problem();
        let one = llr_statistic(&p, &[0], &[1]).unwrap();
        assert!((one - 3f64.ln()).abs() < 1e-14);

        let x = vec![0, 1, 0];
        let y = vec![1, 1, 0];
        let x2 = vec![1, 0];
        let y2 = vec![0, 0];
        let joint: Vec<usize> = x.iter().chain(&x2).copied().collect();
        let jointy: Vec<usize> = y.iter().chain(&y2).copied().collect();
        let lhs = llr_statistic(&p, &joint, &jointy).unwrap();
        let rhs = llr_statistic(&p, &x, &y).unwrap() + llr_statistic(&p, &x2, &y2).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);

        assert!(llr_statistic(&p, &[0], &[0, 1]).is_err());
        assert!(llr_statistic(&p, &[7], &[0]).is_err());

        let d = degenerate_problem();
        assert_eq!(llr_statistic(&d, &[0, 1, 1], &[1, 0, 1]).unwrap(), 0.0);
    }

    #[test]
    fn exact_single_symbol_case() {
        let p = bsc_problem();
        let comp = TypeComposition::new(vec![1, 0]).unwrap();
        let spec = LlrtSpec::for_composition(&p, &comp, 0.5).unwrap();
        assert!((spec.threshold - (-0.0095037)).abs() < 1e-6);
        let pair = exact_error_pair(&p, &comp, &spec).unwrap();
        assert!((pair.eps0 - 0.1).abs() < 1e-14);
        assert!((pair.eps1 - 0.7).abs() < 1e-14);
    }

    #[test]
    fn exact_matches_binomial_tail_at_n10() {
        let p = bsc_problem();
        let comp = TypeComposition::new(vec![10, 0]).unwrap();
        let spec = LlrtSpec::for_composition(&p, &comp, 0.5).unwrap();
        let pair = exact_error_pair(&p, &comp, &spec).unwrap();
        // The test decides w iff at most one output disagrees.
        let eps0 = binomial_tail_ge(10, 0.1, 2);
        let eps1 = 1.0 - binomial_tail_ge(10, 0.3, 2);
        assert!((pair.eps0 - eps0).abs() < 1e-12);
        assert!((pair.eps1 - eps1).abs() < 1e-12);
        assert!((pair.eps0 - 0.2639011).abs() < 1e-6);
        assert!((pair.eps1 - 0.1493083).abs() < 1e-6);
    }

    #[test]
    fn exact_is_composition_invariant_under_input_symmetry() {
        // Both inputs of the twin-BSC pair behave identically, so the
        // mixed composition reproduces the all-zeros numbers.
        let p = bsc_problem();
        let all0 = TypeComposition::new(vec![10, 0]).unwrap();
        let mixed = TypeComposition::new(vec![5, 5]).unwrap();
        let s0 = LlrtSpec::for_composition(&p, &all0, 0.5).unwrap();
        let sm = LlrtSpec::for_composition(&p, &mixed, 0.5).unwrap();
        let a = exact_error_pair(&p, &all0, &s0).unwrap();
        let b = exact_error_pair(&p, &mixed, &sm).unwrap();
        assert!((a.eps0 - b.eps0).abs() < 1e-12);
        assert!((a.eps1 - b.eps1).abs() < 1e-12);
    }

    #[test]
    fn exact_degenerate_decides_w_always() {
        let p = degenerate_problem();
        let comp = TypeComposition::new(vec![3, 4]).unwrap();
        let spec = LlrtSpec::for_composition(&p, &comp, 0.5).unwrap();
        let pair = exact_error_pair(&p, &comp, &spec).unwrap();
        assert_eq!(pair.eps0, 0.0);
        assert!((pair.eps1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_budget_guard() {
        let p = bsc_problem();
        let comp = TypeComposition::new(vec![30_000_000, 0]).unwrap();
        let spec = LlrtSpec { s: 0.5, threshold: 0.0 };
        assert!(matches!(
            exact_error_pair(&p, &comp, &spec),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn achievability_bounds_hold_exactly() {
        let p = bsc_problem();
        for n in [4usize, 7, 10, 14] {
            let comp = TypeComposition::quantize(&Dist::uniform(2), n).unwrap();
            for &s in &[0.25, 0.5, 0.75] {
                let spec = LlrtSpec::for_composition(&p, &comp, s).unwrap();
                let pair = exact_error_pair(&p, &comp, &spec).unwrap();
                let (b0, b1) = achievability_bounds(&p, &comp, s).unwrap();
                assert!(pair.eps0 <= b0 + 1e-12, "n={n} s={s}");
                assert!(pair.eps1 <= b1 + 1e-12, "n={n} s={s}");
            }
        }
    }

    #[test]
    fn monte_carlo_determinism_and_consistency() {
        let p = bsc_problem();
        let comp = TypeComposition::new(vec![5, 5]).unwrap();
        let spec = LlrtSpec::for_composition(&p, &comp, 0.5).unwrap();
        let a = monte_carlo_error_pair(&p, &comp, &spec, 20_000, 42).unwrap();
        let b = monte_carlo_error_pair(&p, &comp, &spec, 20_000, 42).unwrap();
        assert_eq!(a, b);

        let exact = exact_error_pair(&p, &comp, &spec).unwrap();
        assert!((a.eps0 - exact.eps0).abs() < 3.0 * a.ci_halfwidth);
        assert!((a.eps1 - exact.eps1).abs() < 3.0 * a.ci_halfwidth);

        assert!(monte_carlo_error_pair(&p, &comp, &spec, 0, 1).is_err());
    }

    #[test]
    fn monte_carlo_degenerate_never_errs_on_w() {
        let p = degenerate_problem();
        let comp = TypeComposition::new(vec![4, 4]).unwrap();
        let spec = LlrtSpec::for_composition(&p, &comp, 0.5).unwrap();
        let pair = monte_carlo_error_pair(&p, &comp, &spec, 5_000, 3).unwrap();
        assert_eq!(pair.eps0, 0.0);
        assert_eq!(pair.eps1, 1.0);
    }

    #[test]
    fn exponent_estimate_tracks_theory_direction() {
        let p = bsc_problem();
        let px = Dist::uniform(2);
        let est = exponent_estimate(&p, &px, 0.5, &[4, 6, 8, 10, 12, 14], PerNMethod::Exact)
            .unwrap();
        let theory = exponent_pair(&p, &px, 0.5).unwrap();
        // The per-n guarantees keep the empirical exponents above the
        // predicted pair at every blocklength.
        assert!(est.e0 >= theory.e0);
        assert!(est.e1 >= theory.e1);
        for sample in &est.per_n {
            assert!(point_estimate(sample.pair.eps0, sample.pair.n) >= sample.theory.e0 - 1e-12);
            assert!(point_estimate(sample.pair.eps1, sample.pair.n) >= sample.theory.e1 - 1e-12);
        }
        assert!(est.slope_e0.is_finite());

        assert!(exponent_estimate(&p, &px, 0.5, &[4, 4], PerNMethod::Exact).is_err());
        assert!(exponent_estimate(&p, &px, 0.5, &[], PerNMethod::Exact).is_err());

        // Doubling n can only tighten the estimate up to the
        // type-counting slack (|X| ln(n+1)) / n.
        let est5 = exponent_estimate(&p, &px, 0.5, &[5], PerNMethod::Exact).unwrap();
        let est10 = exponent_estimate(&p, &px, 0.5, &[10], PerNMethod::Exact).unwrap();
        let slack = 2.0 * 11f64.ln() / 10.0;
        assert!(est10.e0 >= est5.e0 - slack);
        assert!(est10.e1 >= est5.e1 - slack);
    }

    #[test]
    fn exponent_estimate_degenerate_sentinels() {
        // Equal hypotheses: the test always decides w, so eps0 = 0
        // (infinite-exponent sentinel) and eps1 = 1 (zero exponent).
        let p = degenerate_problem();
        let px = Dist::uniform(2);
        let est = exponent_estimate(&p, &px, 0.5, &[4, 8], PerNMethod::Exact).unwrap();
        assert!(est.e0.is_infinite());
        assert!(est.e1.abs() < 1e-12);
        assert!(est.slope_e0.is_infinite()); // no finite eps0 samples to fit
    }

    #[test]
    fn np_search_matches_binomial_scan() {
        let p = bsc_problem();
        let comp = TypeComposition::new(vec![10, 0]).unwrap();
        let (threshold, pair) = np_threshold_search(&p, &comp, 0.30).unwrap();
        // Deciding w iff at most one output disagrees has
        // eps0 = 0.2639 <= 0.30; any smaller threshold exceeds alpha.
        let expect_threshold = 3f64.ln() + 9.0 * (0.7f64 / 0.9).ln();
        assert!((threshold - expect_threshold).abs() < 1e-12);
        assert!((pair.eps0 - 0.2639011).abs() < 1e-6);
        assert!((pair.eps1 - 0.1493083).abs() < 1e-6);
    }

    #[test]
    fn np_search_monotone_in_alpha() {
        let p = bsc_problem();
        let comp = TypeComposition::new(vec![6, 6]).unwrap();
        let mut last = f64::INFINITY;
        for i in 1..20 {
            let alpha = i as f64 / 20.0;
            let (_, pair) = np_threshold_search(&p, &comp, alpha).unwrap();
            assert!(pair.eps0 <= alpha);
            assert!(pair.eps1 <= last + 1e-15);
            last = pair.eps1;
        }
    }

    #[test]
    fn np_search_degenerate_blind_test() {
        // Equal hypotheses: every deterministic threshold test with
        // eps0 <= alpha < 1 accepts w always, so eps1 = 1.
        let p = degenerate_problem();
        let comp = TypeComposition::new(vec![5, 5]).unwrap();
        let (_, pair) = np_threshold_search(&p, &comp, 0.4).unwrap();
        assert_eq!(pair.eps0, 0.0);
        assert!((pair.eps1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn np_rejects_bad_alpha() {
        let p = bsc_problem();
        let comp = TypeComposition::new(vec![4, 0]).unwrap();
        assert!(np_threshold_search(&p, &comp, 0.0).is_err());
        assert!(np_threshold_search(&p, &comp, 1.0).is_err());
    }
}
