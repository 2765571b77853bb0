//! Rate-exponent trade-offs for joint communication and binary channel
//! discrimination over discrete memoryless channels.
//!
//! A transmitter's codeword simultaneously carries a message through a
//! communication channel and probes which of two sensing channels (`w`
//! or `v`) is active. With constant-composition codebooks, the codeword
//! type `px` determines both sides of the trade-off: the communication
//! rate is capped by `I(px, comm)`, while a log-likelihood-ratio test at
//! tilt `s` achieves the discrimination error exponents
//! `E0 = D(W_s || W | px)` and `E1 = D(W_s || V | px)`.
//!
//! The crate computes these trade-off regions and validates the
//! predicted exponents empirically:
//!
//! * [`dist`], [`channel`], [`info`], [`binary`] — finite-alphabet
//!   probability objects and divergence/information primitives;
//! * [`tilt`] — the log-normalizer family `mu(s)`, tilted channels, the
//!   exponent frontier, the exponent-versus-budget curve and Chernoff
//!   information;
//! * [`oracle`] — an independent brute-force check of the budget curve
//!   on simplex lattices;
//! * [`region`], [`simplex`] — Pareto surfaces and frontiers over
//!   cost-feasible input lattices, plus closed forms for the two
//!   canonical binary examples;
//! * [`sim`] — constant-composition codewords, exact error enumeration,
//!   seeded Monte-Carlo estimation and Neyman-Pearson threshold search;
//! * [`report`] — CSV/JSON emission.
//!
//! All numeric routines are generic over the scalar type through
//! [`Scalar`]; the aliases below fix `f64` for ordinary use.

pub mod binary;
pub mod channel;
pub mod dist;
pub mod error;
pub mod info;
pub mod oracle;
pub mod region;
pub mod report;
pub mod scalar;
pub mod sim;
pub mod simplex;
pub mod tilt;

pub use channel::{ChannelProblem, CostSpec, DiscreteChannel};
pub use dist::FiniteDistribution;
pub use error::{Error, Result};
pub use scalar::Scalar;

/// `f64` aliases for the core domain types.
pub type DistF64 = FiniteDistribution<f64>;
pub type ChannelF64 = DiscreteChannel<f64>;
pub type CostSpecF64 = CostSpec<f64>;
pub type ProblemF64 = ChannelProblem<f64>;
