//! Probability vectors over finite alphabets.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A probability distribution over the index alphabet `0..k`.
///
/// Entries are validated to be non-negative and to sum to one within
/// [`Scalar::NORMALIZATION_TOL`], then renormalized so the stored vector
/// sums to one up to machine precision. Alphabets are always index sets;
/// human-readable symbol labels live in file formats, not here.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution<S: Scalar> {
    probs: Vec<S>,
}

impl<S: Scalar> FiniteDistribution<S> {
    pub fn new(probs: Vec<S>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution(
                "alphabet must be non-empty".into(),
            ));
        }
        let mut sum = S::zero();
        for (i, &p) in probs.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::InvalidDistribution(format!(
                    "entry {i} is not finite"
                )));
            }
            if p < S::zero() {
                return Err(Error::InvalidDistribution(format!(
                    "entry {i} is negative ({p})"
                )));
            }
            sum += p;
        }
        if (sum - S::one()).abs() > S::NORMALIZATION_TOL {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {sum}, not 1"
            )));
        }
        let probs = probs.into_iter().map(|p| p / sum).collect();
        Ok(Self { probs })
    }

    /// Uniform distribution over `k` symbols.
    pub fn uniform(k: usize) -> Self {
        let p = S::one() / S::from_usize(k).expect("alphabet size fits in scalar");
        Self::new(vec![p; k]).expect("uniform vector is valid")
    }

    /// Point mass on `symbol` in an alphabet of `k` symbols.
    pub fn point_mass(k: usize, symbol: usize) -> Self {
        assert!(symbol < k, "symbol {symbol} outside alphabet of size {k}");
        let mut probs = vec![S::zero(); k];
        probs[symbol] = S::one();
        Self { probs }
    }

    /// Bernoulli(rho) as the vector `[1 - rho, rho]`.
    pub fn bernoulli(rho: S) -> Result<Self> {
        if rho < S::zero() || rho > S::one() {
            return Err(Error::Domain(format!("Bernoulli parameter {rho} not in [0, 1]")));
        }
        Ok(Self {
            probs: vec![S::one() - rho, rho],
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[S] {
        &self.probs
    }

    pub fn prob(&self, symbol: usize) -> S {
        self.probs[symbol]
    }

    /// Iterator over `(symbol, probability)` pairs with positive mass.
    pub fn support(&self) -> impl Iterator<Item = (usize, S)> + '_ {
        self.probs
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, p)| p > S::zero())
    }

    /// Largest absolute difference to another distribution.
    pub fn linf_distance(&self, other: &Self) -> S {
        self.probs
            .iter()
            .zip(other.probs.iter())
            .map(|(&a, &b)| (a - b).abs())
            .fold(S::zero(), S::max)
    }
}
