//! Conditional divergence, mutual information and expected cost.

use crate::channel::{CostSpec, DiscreteChannel};
use crate::dist::FiniteDistribution;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Conditional relative entropy `D(p || q | px)` in nats per symbol:
/// the px-weighted sum of row divergences, with the `0 ln(0/q) = 0`
/// convention. Inputs with zero mass under `px` contribute nothing, so
/// absolute continuity is only required on the support of `px`.
pub fn conditional_kl<S: Scalar>(
    p: &DiscreteChannel<S>,
    q: &DiscreteChannel<S>,
    px: &FiniteDistribution<S>,
) -> Result<S> {
    if !p.same_shape(q) {
        return Err(Error::ShapeMismatch(format!(
            "p is {}x{}, q is {}x{}",
            p.in_size(),
            p.out_size(),
            q.in_size(),
            q.out_size()
        )));
    }
    if px.alphabet_size() != p.in_size() {
        return Err(Error::ShapeMismatch(format!(
            "px has {} symbols, channels expect {}",
            px.alphabet_size(),
            p.in_size()
        )));
    }
    let mut total = S::zero();
    for (x, mass) in px.support() {
        let mut row = S::zero();
        for y in 0..p.out_size() {
            let py = p.prob(x, y);
            if py == S::zero() {
                continue;
            }
            let qy = q.prob(x, y);
            if qy == S::zero() {
                return Err(Error::AbsoluteContinuity { x, y });
            }
            row += py * (py / qy).ln();
        }
        total += mass * row;
    }
    // Rounding can leave a tiny negative residue on p == q rows.
    Ok(total.max(S::zero()))
}

/// Mutual information `I(px, ch)` in nats per symbol.
pub fn mutual_information<S: Scalar>(
    px: &FiniteDistribution<S>,
    ch: &DiscreteChannel<S>,
) -> Result<S> {
    if px.alphabet_size() != ch.in_size() {
        return Err(Error::ShapeMismatch(format!(
            "px has {} symbols, channel expects {}",
            px.alphabet_size(),
            ch.in_size()
        )));
    }
    // Output marginal induced by px.
    let mut marginal = vec![S::zero(); ch.out_size()];
    for (x, mass) in px.support() {
        for (y, m) in marginal.iter_mut().enumerate() {
            *m += mass * ch.prob(x, y);
        }
    }
    let mut info = S::zero();
    for (x, mass) in px.support() {
        for (y, &m) in marginal.iter().enumerate() {
            let py = ch.prob(x, y);
            if py > S::zero() {
                info += mass * py * (py / m).ln();
            }
        }
    }
    Ok(info.max(S::zero()))
}

/// Expected cost of an input distribution under a cost specification.
pub fn expected_cost<S: Scalar>(px: &FiniteDistribution<S>, cost: &CostSpec<S>) -> Result<S> {
    if px.alphabet_size() != cost.in_size() {
        return Err(Error::ShapeMismatch(format!(
            "px has {} symbols, cost vector has {}",
            px.alphabet_size(),
            cost.in_size()
        )));
    }
    Ok(px
        .probs()
        .iter()
        .zip(cost.costs())
        .map(|(&p, &c)| p * c)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::{binary_entropy, binary_kl};

    type Dist = FiniteDistribution<f64>;
    type Chan = DiscreteChannel<f64>;

    #[test]
    fn kl_zero_on_equal_channels() {
        let p = Chan::bsc(0.27).unwrap();
        let px = Dist::uniform(2);
        assert_eq!(conditional_kl(&p, &p, &px).unwrap(), 0.0);
    }

    #[test]
    fn kl_bsc_matches_scalar_evaluation() {
        let p = Chan::bsc(0.1).unwrap();
        let q = Chan::bsc(0.3).unwrap();
        let px = Dist::uniform(2);
        // Both rows give the same two-term sum d(0.1 || 0.3).
        let expected = 0.1 * (0.1f64 / 0.3).ln() + 0.9 * (0.9f64 / 0.7).ln();
        let got = conditional_kl(&p, &q, &px).unwrap();
        assert!((got - expected).abs() < 1e-15);
        assert!((got - 0.1163217565860046).abs() < 1e-12);
    }

    #[test]
    fn kl_ignores_rows_outside_support() {
        // Rows differ at input 1, but px puts no mass there.
        let p = Chan::new(vec![vec![0.5, 0.5], vec![0.9, 0.1]]).unwrap();
        let q = Chan::new(vec![vec![0.5, 0.5], vec![0.2, 0.8]]).unwrap();
        let px = Dist::point_mass(2, 0);
        assert_eq!(conditional_kl(&p, &q, &px).unwrap(), 0.0);

        let p_masked = Chan::new(vec![vec![0.5, 0.5], vec![0.2, 0.8]]).unwrap();
        assert_eq!(
            conditional_kl(&p, &q, &px).unwrap(),
            conditional_kl(&p_masked, &q, &px).unwrap()
        );
    }

    #[test]
    fn kl_detects_support_violation() {
        let p = Chan::new(vec![vec![0.5, 0.5]]).unwrap();
        let q = Chan::new(vec![vec![1.0, 0.0]]).unwrap();
        let px = Dist::uniform(1);
        assert!(matches!(
            conditional_kl(&p, &q, &px),
            Err(Error::AbsoluteContinuity { x: 0, y: 1 })
        ));
    }

    #[test]
    fn kl_agrees_with_binary_kl() {
        // One-input channels over a binary output reduce to d(a || b).
        for &(a, b) in &[(0.2, 0.6), (0.0, 0.4), (0.9, 0.5)] {
            let p = Chan::new(vec![vec![1.0 - a, a]]).unwrap();
            let q = Chan::new(vec![vec![1.0 - b, b]]).unwrap();
            let px = Dist::uniform(1);
            let lhs = conditional_kl(&p, &q, &px).unwrap();
            let rhs = binary_kl(a, b).unwrap();
            assert!((lhs - rhs).abs() < 1e-12, "a={a} b={b}");
        }
    }

    #[test]
    fn mi_noiseless_and_useless() {
        let id = Chan::identity(4);
        let u = Dist::uniform(4);
        assert!((mutual_information(&u, &id).unwrap() - 4f64.ln()).abs() < 1e-12);

        let useless = Chan::new(vec![vec![0.3, 0.7], vec![0.3, 0.7]]).unwrap();
        let px = Dist::bernoulli(0.4).unwrap();
        assert_eq!(mutual_information(&px, &useless).unwrap(), 0.0);
    }

    #[test]
    fn mi_bsc_uniform() {
        let ch = Chan::bsc(0.1).unwrap();
        let u = Dist::uniform(2);
        let expected = 2f64.ln() - binary_entropy(0.1).unwrap();
        let got = mutual_information(&u, &ch).unwrap();
        assert!((got - expected).abs() < 1e-14);
        assert!((got - 0.3680642).abs() < 1e-6);
    }

    #[test]
    fn expected_cost_examples() {
        let zero = CostSpec::new(vec![0.0, 0.0], 0.0).unwrap();
        let px = Dist::bernoulli(0.8).unwrap();
        assert_eq!(expected_cost(&px, &zero).unwrap(), 0.0);

        let unit = CostSpec::new(vec![0.0, 1.0], 1.0).unwrap();
        assert!((expected_cost(&px, &unit).unwrap() - 0.8).abs() < 1e-15);

        let both = CostSpec::new(vec![2.0, 4.0], 4.0).unwrap();
        let u = Dist::uniform(2);
        assert_eq!(expected_cost(&u, &both).unwrap(), 3.0);

        assert!(expected_cost(&Dist::uniform(3), &unit).is_err());
    }
}
