//! Discrete memoryless channels, cost constraints and problem instances.

use crate::dist::FiniteDistribution;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A row-stochastic matrix from an input alphabet to an output alphabet.
/// Row `x` is the output distribution given input `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteChannel<S: Scalar> {
    rows: Vec<FiniteDistribution<S>>,
    out_size: usize,
}

impl<S: Scalar> DiscreteChannel<S> {
    pub fn new(rows: Vec<Vec<S>>) -> Result<Self> {
        let dists = rows
            .into_iter()
            .enumerate()
            .map(|(x, row)| {
                FiniteDistribution::new(row)
                    .map_err(|e| Error::InvalidChannel(format!("row {x}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(dists)
    }

    pub fn from_rows(rows: Vec<FiniteDistribution<S>>) -> Result<Self> {
        let out_size = match rows.first() {
            Some(r) => r.alphabet_size(),
            None => return Err(Error::InvalidChannel("no rows".into())),
        };
        if rows.iter().any(|r| r.alphabet_size() != out_size) {
            return Err(Error::InvalidChannel(
                "rows have inconsistent output alphabet sizes".into(),
            ));
        }
        Ok(Self { rows, out_size })
    }

    /// Binary symmetric channel with crossover probability `q`.
    pub fn bsc(q: S) -> Result<Self> {
        if q < S::zero() || q > S::one() {
            return Err(Error::Domain(format!("BSC parameter {q} not in [0, 1]")));
        }
        Self::new(vec![vec![S::one() - q, q], vec![q, S::one() - q]])
    }

    /// Noiseless channel mapping each of `k` inputs to itself.
    pub fn identity(k: usize) -> Self {
        let rows = (0..k).map(|x| FiniteDistribution::point_mass(k, x)).collect();
        Self::from_rows(rows).expect("identity rows are valid")
    }

    pub fn in_size(&self) -> usize {
        self.rows.len()
    }

    pub fn out_size(&self) -> usize {
        self.out_size
    }

    pub fn row(&self, x: usize) -> &FiniteDistribution<S> {
        &self.rows[x]
    }

    pub fn rows(&self) -> &[FiniteDistribution<S>] {
        &self.rows
    }

    /// Transition probability of output `y` given input `x`.
    pub fn prob(&self, x: usize, y: usize) -> S {
        self.rows[x].prob(y)
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.in_size() == other.in_size() && self.out_size() == other.out_size()
    }
}

/// Per-symbol input costs `b(x)` together with the average budget `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostSpec<S: Scalar> {
    costs: Vec<S>,
    budget: S,
}

impl<S: Scalar> CostSpec<S> {
    pub fn new(costs: Vec<S>, budget: S) -> Result<Self> {
        if costs.iter().any(|&c| !c.is_finite() || c < S::zero()) {
            return Err(Error::Domain("costs must be non-negative and finite".into()));
        }
        if !budget.is_finite() || budget < S::zero() {
            return Err(Error::Domain(format!("budget {budget} must be non-negative")));
        }
        Ok(Self { costs, budget })
    }

    /// All-zero costs with zero budget: every input distribution is feasible.
    pub fn free(in_size: usize) -> Self {
        Self {
            costs: vec![S::zero(); in_size],
            budget: S::zero(),
        }
    }

    pub fn costs(&self) -> &[S] {
        &self.costs
    }

    pub fn budget(&self) -> S {
        self.budget
    }

    pub fn in_size(&self) -> usize {
        self.costs.len()
    }

    /// Cheapest single input; the least expected cost any distribution attains.
    pub fn min_cost(&self) -> S {
        self.costs.iter().copied().fold(S::infinity(), S::min)
    }
}

/// One instance of the joint communication / discrimination setting:
/// a communication channel, a pair of sensing hypotheses `w` and `v`
/// on a shared output alphabet, and an input cost constraint.
#[derive(Debug, Clone)]
pub struct ChannelProblem<S: Scalar> {
    comm: DiscreteChannel<S>,
    w: DiscreteChannel<S>,
    v: DiscreteChannel<S>,
    cost: CostSpec<S>,
}

impl<S: Scalar> ChannelProblem<S> {
    pub fn new(
        comm: DiscreteChannel<S>,
        w: DiscreteChannel<S>,
        v: DiscreteChannel<S>,
        cost: CostSpec<S>,
    ) -> Result<Self> {
        if comm.in_size() != w.in_size() || w.in_size() != v.in_size() {
            return Err(Error::ShapeMismatch(format!(
                "input alphabets differ: comm {}, w {}, v {}",
                comm.in_size(),
                w.in_size(),
                v.in_size()
            )));
        }
        if !w.same_shape(&v) {
            return Err(Error::ShapeMismatch(format!(
                "sensing channels differ in output alphabet: w {}, v {}",
                w.out_size(),
                v.out_size()
            )));
        }
        if cost.in_size() != comm.in_size() {
            return Err(Error::ShapeMismatch(format!(
                "cost vector length {} does not match input alphabet {}",
                cost.in_size(),
                comm.in_size()
            )));
        }
        // Standing positivity assumption: w(y|x) v(y|x) != 0 everywhere.
        // It keeps every divergence in sight finite.
        for x in 0..w.in_size() {
            for y in 0..w.out_size() {
                if w.prob(x, y) * v.prob(x, y) == S::zero() {
                    return Err(Error::InvalidChannel(format!(
                        "w({y}|{x}) * v({y}|{x}) = 0; sensing hypotheses must share full support"
                    )));
                }
            }
        }
        Ok(Self { comm, w, v, cost })
    }

    /// Convenience constructor with a free (all-zero) cost constraint.
    pub fn unconstrained(
        comm: DiscreteChannel<S>,
        w: DiscreteChannel<S>,
        v: DiscreteChannel<S>,
    ) -> Result<Self> {
        let cost = CostSpec::free(comm.in_size());
        Self::new(comm, w, v, cost)
    }

    pub fn comm(&self) -> &DiscreteChannel<S> {
        &self.comm
    }

    pub fn w(&self) -> &DiscreteChannel<S> {
        &self.w
    }

    pub fn v(&self) -> &DiscreteChannel<S> {
        &self.v
    }

    pub fn cost(&self) -> &CostSpec<S> {
        &self.cost
    }

    pub fn in_size(&self) -> usize {
        self.comm.in_size()
    }

    /// Output alphabet size of the sensing channels.
    pub fn sensing_out_size(&self) -> usize {
        self.w.out_size()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Chan = DiscreteChannel<f64>;

    #[test]
    fn bsc_rows() {
        let c = Chan::bsc(0.1).unwrap();
        assert_eq!(c.prob(0, 0), 0.9);
        assert_eq!(c.prob(0, 1), 0.1);
        assert_eq!(c.prob(1, 0), 0.1);
        assert_eq!(c.prob(1, 1), 0.9);
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(Chan::new(vec![vec![1.0], vec![0.5, 0.5]]).is_err());
    }

    #[test]
    fn problem_requires_shared_support() {
        let comm = Chan::bsc(0.1).unwrap();
        let w = Chan::identity(2);
        let v = Chan::bsc(0.3).unwrap();
        let err = ChannelProblem::unconstrained(comm, w, v).unwrap_err();
        assert!(matches!(err, Error::InvalidChannel(_)));
    }

    #[test]
    fn problem_shape_checks() {
        let comm = Chan::identity(3);
        let w = Chan::bsc(0.1).unwrap();
        let v = Chan::bsc(0.3).unwrap();
        assert!(ChannelProblem::unconstrained(comm, w, v).is_err());

        let comm = Chan::bsc(0.1).unwrap();
        let w = Chan::bsc(0.1).unwrap();
        let v = Chan::bsc(0.3).unwrap();
        let cost = CostSpec::new(vec![0.0, 1.0, 2.0], 1.0).unwrap();
        assert!(ChannelProblem::new(comm, w, v, cost).is_err());
    }

    #[test]
    fn min_cost_is_cheapest_symbol() {
        let cost = CostSpec::new(vec![2.0, 0.5, 1.0], 1.0).unwrap();
        assert_eq!(cost.min_cost(), 0.5);
    }
}
