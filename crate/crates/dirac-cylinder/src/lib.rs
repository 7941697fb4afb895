//! Workbench for an S¹-equivariant Dirac family on the infinite cylinder
//! M = ℝ × S¹ and for a small catalog of rotation-invariant model surfaces.
//!
//! The cylinder carries a prequantum line bundle whose connection is twisted by
//! a clamped level profile ρ (flat value m ∓ 1/2 at the two ends). The family
//!
//! ```text
//! D(s,t) = D + i·s·f^{ε₁}·c(μ) + t·f^{ε₂}·D_{S¹}
//! ```
//!
//! decomposes over Fourier modes e^{2πinθ}; each mode reduces to a first-order
//! ODE a′ = c_n(r)·a whose L² solvability at both ends decides whether the mode
//! contributes to ker D⁺. Three views of that decision live here:
//!
//! * [`symbolic`] — exact asymptotic-exponent analysis (which integer weights
//!   survive, as a closed-form weight set),
//! * [`numeric`] — an independent spectral oracle (Sturm bisection on the
//!   discretized SUSY pair L*L / LL*),
//! * [`models`] — level-by-level index bookkeeping for the cylinder, disc, and
//!   sphere models, with brute-force section-count oracles.
//!
//! Start with the runnable examples (`cargo run --example kernel_trichotomy`)
//! or the `dirac-cylinder` binary (`kernel`, `index`, `sweep`, `model`,
//! `spectrum`, `verify` subcommands).

pub mod character;
pub mod cli;
pub mod config;
mod error;
pub mod models;
pub mod numeric;
pub mod profiles;
pub mod report;
pub mod symbolic;
pub mod tridiag;
pub mod verify;

pub use error::{Error, Indeterminacy, Result};

/// 2π, the loop volume of the S¹ fiber; every exponent in the mode analysis
/// carries it.
pub const TAU: f64 = std::f64::consts::TAU;
