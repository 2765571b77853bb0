//! Shared generators for the integration suites: seeded random problem
//! ensembles and small closed-form oracles.
#![allow(dead_code)] // not every suite uses every helper

use jcd_core::channel::{ChannelProblem, DiscreteChannel};
use jcd_core::dist::FiniteDistribution;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Dist = FiniteDistribution<f64>;
pub type Chan = DiscreteChannel<f64>;
pub type Problem = ChannelProblem<f64>;

/// Exponential spacings normalized to the simplex, floored away from
/// zero so log-likelihood ratios stay bounded.
pub fn random_row(rng: &mut ChaCha8Rng, k: usize, floor: f64) -> Vec<f64> {
    let raw: Vec<f64> = (0..k)
        .map(|_| -(rng.random::<f64>()).ln() + floor)
        .collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / sum).collect()
}

pub fn random_px(rng: &mut ChaCha8Rng, k: usize) -> Dist {
    Dist::new(random_row(rng, k, 0.05)).unwrap()
}

/// Random problem with input alphabet in `2..=max_in` and sensing output
/// alphabet in `2..=max_out`. Sensing rows are floored so the standing
/// full-support assumption holds with margin.
pub fn random_problem(rng: &mut ChaCha8Rng, max_in: usize, max_out: usize) -> Problem {
    let in_size = rng.random_range(2..=max_in);
    let out_y = rng.random_range(2..=max_out);
    let out_z = rng.random_range(2..=max_out);
    let comm: Vec<Vec<f64>> = (0..in_size).map(|_| random_row(rng, out_z, 0.0)).collect();
    let w: Vec<Vec<f64>> = (0..in_size).map(|_| random_row(rng, out_y, 0.05)).collect();
    let v: Vec<Vec<f64>> = (0..in_size).map(|_| random_row(rng, out_y, 0.05)).collect();
    Problem::unconstrained(
        Chan::new(comm).unwrap(),
        Chan::new(w).unwrap(),
        Chan::new(v).unwrap(),
    )
    .unwrap()
}

/// The fixed ensemble shared by the identity, derivative and Chernoff
/// acceptance criteria: 100 seeded random problems with alphabets up to
/// 4x4, each with a random input distribution.
pub fn ensemble() -> Vec<(Problem, Dist)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
    (0..100)
        .map(|_| {
            let p = random_problem(&mut rng, 4, 4);
            let px = random_px(&mut rng, p.in_size());
            (p, px)
        })
        .collect()
}

/// Twin-BSC sensing instance: w = BSC(0.1), v = BSC(0.3), communication
/// over a BSC(0.1).
pub fn bsc_instance() -> Problem {
    Problem::unconstrained(
        Chan::bsc(0.1).unwrap(),
        Chan::bsc(0.1).unwrap(),
        Chan::bsc(0.3).unwrap(),
    )
    .unwrap()
}

/// On-off sensing instance: w emits Bernoulli(q) noise regardless of the
/// input, v = BSC(q).
pub fn onoff_instance(q: f64) -> Problem {
    let w = Chan::new(vec![vec![1.0 - q, q], vec![1.0 - q, q]]).unwrap();
    Problem::unconstrained(Chan::bsc(0.1).unwrap(), w, Chan::bsc(q).unwrap()).unwrap()
}

pub fn binomial_pmf(n: usize, p: f64, k: usize) -> f64 {
    let mut c = 1.0f64;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32)
}

pub fn binomial_tail_ge(n: usize, p: f64, k_min: usize) -> f64 {
    (k_min..=n).map(|k| binomial_pmf(n, p, k)).sum()
}
