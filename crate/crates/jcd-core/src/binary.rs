//! Scalar helpers for binary alphabets.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check_unit<S: Scalar>(name: &str, v: S) -> Result<()> {
    if !(v >= S::zero() && v <= S::one()) {
        return Err(Error::Domain(format!("{name} = {v} not in [0, 1]")));
    }
    Ok(())
}

/// Binary entropy in nats: `-p ln p - (1-p) ln(1-p)` with `0 ln 0 = 0`.
pub fn binary_entropy<S: Scalar>(p: S) -> Result<S> {
    check_unit("p", p)?;
    let term = |a: S| if a > S::zero() { -a * a.ln() } else { S::zero() };
    Ok(term(p) + term(S::one() - p))
}

/// Binary relative entropy `d(a || b)` in nats.
///
/// Requires `b` in the open interval unless `a` sits on the matching
/// boundary; anything that would be infinite is a domain error.
pub fn binary_kl<S: Scalar>(a: S, b: S) -> Result<S> {
    check_unit("a", a)?;
    check_unit("b", b)?;
    if (b == S::zero() && a > S::zero()) || (b == S::one() && a < S::one()) {
        return Err(Error::Domain(format!(
            "d({a} || {b}) is infinite; b must be interior unless a matches the boundary"
        )));
    }
    let term = |p: S, q: S| {
        if p > S::zero() {
            p * (p / q).ln()
        } else {
            S::zero()
        }
    };
    Ok(term(a, b) + term(S::one() - a, S::one() - b))
}

/// Binary convolution `p * q = (1-q) p + q (1-p)`.
pub fn convolve_star<S: Scalar>(p: S, q: S) -> Result<S> {
    check_unit("p", p)?;
    check_unit("q", q)?;
    Ok((S::one() - q) * p + q * (S::one() - p))
}
