//! Exact L² kernel determination per Fourier weight.
//!
//! On the flat regions |r − m| > 1/2 the log-profile of the mode solution
//! a_n′ = c_n·a_n is a finite sum of odd power terms
//!
//! ```text
//! Φ_n(r) = Σ_d κ_d · r·|r|^{d−1},   d ∈ {1, 1+ε₁, 1+ε₂},
//! ```
//!
//! with end-dependent coefficients (ρ is clamped to m ± 1/2). Square
//! integrability of exp(Φ_n) is decided by the sign of the top-degree
//! coefficient at each end, which this module computes in closed form.

use crate::profiles::PerturbationParams;
use crate::{Error, Result, TAU};

/// Which end of the cylinder an asymptotic expansion describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    PlusInfinity,
    MinusInfinity,
}

impl End {
    /// ρ's clamped value at this end: m + 1/2 at +∞, m − 1/2 at −∞.
    fn rho_limit(self, m: i64) -> f64 {
        match self {
            End::PlusInfinity => m as f64 + 0.5,
            End::MinusInfinity => m as f64 - 0.5,
        }
    }
}

/// One term κ·r·|r|^{degree−1} of a log-profile expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentTerm {
    pub degree: f64,
    pub coefficient: f64,
}

/// Merged, degree-sorted expansion of Φ_n at one end.
///
/// Coincident degrees are merged by summing coefficients; a merged
/// coefficient within 1e−12 (relative) of cancelling is snapped to exactly
/// zero, so downstream sign tests never act on rounding residue.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticExponent {
    pub end: End,
    /// Ascending degree; zero coefficients are kept (they mark thresholds).
    pub terms: Vec<ExponentTerm>,
}

impl AsymptoticExponent {
    /// Highest-degree term, including an exactly-cancelled one.
    pub fn top(&self) -> ExponentTerm {
        *self.terms.last().expect("expansion always has the degree-1 term")
    }

    /// Highest-degree term with nonzero coefficient. Total cancellation is
    /// impossible: the degree-1 coefficient 2π(n − m ∓ 1/2) is a nonzero
    /// half-integer multiple of 2π.
    pub fn leading(&self) -> ExponentTerm {
        *self
            .terms
            .iter()
            .rev()
            .find(|t| t.coefficient != 0.0)
            .expect("degree-1 coefficient is never zero")
    }
}

/// Relative cancellation tolerance when merged coefficients are not exactly
/// representable (for dyadic inputs the cancellation itself is exact).
const MERGE_ZERO_TOL: f64 = 1e-12;

/// Expansion of Φ_n at one end: the degree-1 term always, the degree-(1+ε₂)
/// term iff t > 0, the degree-(1+ε₁) term iff s > 0, merged by degree.
pub fn solution_exponent(params: PerturbationParams, n: i64, end: End) -> AsymptoticExponent {
    let rho = end.rho_limit(params.m);
    let base = n as f64 - rho;
    let mut raw: Vec<ExponentTerm> = vec![ExponentTerm { degree: 1.0, coefficient: TAU * base }];
    if params.t > 0.0 {
        let d = 1.0 + params.eps2;
        raw.push(ExponentTerm { degree: d, coefficient: TAU * params.t * base / d });
    }
    if params.s > 0.0 {
        let d = 1.0 + params.eps1;
        raw.push(ExponentTerm { degree: d, coefficient: -TAU * params.s * rho / d });
    }
    raw.sort_by(|a, b| a.degree.partial_cmp(&b.degree).unwrap());

    let mut terms: Vec<ExponentTerm> = Vec::with_capacity(raw.len());
    let mut scales: Vec<f64> = Vec::with_capacity(raw.len());
    for t in raw {
        match terms.last_mut() {
            Some(prev) if prev.degree == t.degree => {
                prev.coefficient += t.coefficient;
                *scales.last_mut().unwrap() += t.coefficient.abs();
            }
            _ => {
                terms.push(t);
                scales.push(t.coefficient.abs());
            }
        }
    }
    for (t, scale) in terms.iter_mut().zip(&scales) {
        if t.coefficient.abs() <= MERGE_ZERO_TOL * scale.max(1.0) {
            t.coefficient = 0.0;
        }
    }
    AsymptoticExponent { end, terms }
}

/// The two halves of the supersymmetric pair: D⁺ (solutions exp(Φ_n)) and its
/// formal adjoint D⁻ (solutions exp(−Φ_n)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    DPlus,
    DMinus,
}

/// Per-mode kernel decision.
///
/// `in_kernel` demands strict decay certified by the top-degree coefficient
/// at each end. `threshold` marks the borderline modes where the strict test
/// fails only because a merged top coefficient cancelled exactly: there the
/// top degree is silent and integrability would be decided by subleading
/// terms. Those modes are excluded from the kernel by convention and callers
/// comparing against numerics should skip them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    pub in_kernel: bool,
    pub threshold: bool,
}

/// Strict-decay test for one end: wants the top coefficient negative at +∞
/// and positive at −∞ for D⁺; D⁻ reverses both.
fn end_ok(top: f64, end: End, operator: Operator) -> bool {
    let want_negative = matches!(
        (end, operator),
        (End::PlusInfinity, Operator::DPlus) | (End::MinusInfinity, Operator::DMinus)
    );
    if want_negative {
        top < 0.0
    } else {
        top > 0.0
    }
}

pub fn mode_membership(
    params: PerturbationParams,
    n: i64,
    operator: Operator,
) -> Result<Membership> {
    if params.is_unperturbed() {
        return Err(Error::NonFredholm);
    }
    let plus = solution_exponent(params, n, End::PlusInfinity).top().coefficient;
    let minus = solution_exponent(params, n, End::MinusInfinity).top().coefficient;
    let in_kernel =
        end_ok(plus, End::PlusInfinity, operator) && end_ok(minus, End::MinusInfinity, operator);
    // Borderline: at least one end cancelled at top degree and every
    // non-cancelled end passes its strict test.
    let threshold = !in_kernel
        && (plus == 0.0 || minus == 0.0)
        && (plus == 0.0 || end_ok(plus, End::PlusInfinity, operator))
        && (minus == 0.0 || end_ok(minus, End::MinusInfinity, operator));
    Ok(Membership { in_kernel, threshold })
}

pub fn mode_in_kernel(params: PerturbationParams, n: i64, operator: Operator) -> Result<bool> {
    Ok(mode_membership(params, n, operator)?.in_kernel)
}

/// Provenance label for which textual case of the trichotomy applied. The
/// membership logic never branches on this; it is reporting metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    /// s > 0 and ε₁ > ε₂: the Clifford-action term dominates both ends.
    I,
    /// t > 0 and ε₂ > ε₁: the orbitwise-Dirac term dominates.
    II,
    /// t > 0 and ε₁ = ε₂ > 0: both perturbations share the top degree.
    III,
    /// Everything else (degenerate exponents, single-term regimes).
    General,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::I => "I",
            CaseLabel::II => "II",
            CaseLabel::III => "III",
            CaseLabel::General => "general",
        }
    }
}

pub fn case_label(params: &PerturbationParams) -> CaseLabel {
    if params.s > 0.0 && params.eps1 > params.eps2 {
        CaseLabel::I
    } else if params.t > 0.0 && params.eps2 > params.eps1 {
        CaseLabel::II
    } else if params.t > 0.0 && params.eps1 == params.eps2 && params.eps1 > 0.0 {
        CaseLabel::III
    } else {
        CaseLabel::General
    }
}

/// Support of a kernel, as a set of Fourier weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightSetKind {
    Empty,
    /// Strictly increasing, duplicate-free.
    Finite(Vec<i64>),
    AllIntegers,
    /// The s = t = 0 family member; carried as data only by reporting paths
    /// that must not abort mid-stream.
    NonFredholm,
}

impl WeightSetKind {
    pub fn contains(&self, n: i64) -> bool {
        match self {
            WeightSetKind::Empty | WeightSetKind::NonFredholm => false,
            WeightSetKind::Finite(v) => v.binary_search(&n).is_ok(),
            WeightSetKind::AllIntegers => true,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            WeightSetKind::Empty => Some(0),
            WeightSetKind::Finite(v) => Some(v.len()),
            WeightSetKind::AllIntegers | WeightSetKind::NonFredholm => None,
        }
    }
}

/// Kernel support plus reporting metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSet {
    pub kind: WeightSetKind,
    pub case: CaseLabel,
    /// Borderline modes excluded by the strict-decay convention (see
    /// [`Membership::threshold`]); empty in the generic regimes.
    pub threshold_modes: Vec<i64>,
}

/// Real interval (lo, hi) that provably brackets every kernel weight in the
/// bounded regimes, derived from the top-degree coefficient structure.
fn kernel_bracket(params: &PerturbationParams) -> (f64, f64) {
    let (s, t) = (params.s, params.t);
    let (e1, e2) = (params.eps1, params.eps2);
    // Factor multiplying (m ∓ 1/2) in the interval bounds.
    let factor = if t > 0.0 && e2 > 0.0 && (s == 0.0 || e2 > e1) {
        1.0
    } else if s > 0.0 && t > 0.0 && e1 == e2 && e1 > 0.0 {
        1.0 + s / t
    } else {
        // All contributing terms sit at degree 1.
        1.0 + s / (1.0 + t)
    };
    let m = params.m as f64;
    (factor * (m - 0.5), factor * (m + 0.5))
}

/// Full kernel support of D⁺ or D⁻.
///
/// The regimes where the support is provably ℤ or provably bounded cover all
/// admissible parameters, so the answer never depends on `window`; the window
/// is used to spot-check pointwise agreement with [`mode_in_kernel`] in debug
/// builds.
pub fn kernel_weights(
    params: PerturbationParams,
    operator: Operator,
    window: (i64, i64),
) -> Result<WeightSet> {
    if params.is_unperturbed() {
        return Err(Error::NonFredholm);
    }
    if window.0 > window.1 {
        return Err(Error::invalid(format!(
            "window lower bound {} exceeds upper bound {}",
            window.0, window.1
        )));
    }
    let case = case_label(&params);

    let set = if operator == Operator::DMinus {
        // exp(−Φ_n) must grow at the end where exp(Φ_n) decays and vice
        // versa; the two strict sign conditions are incompatible for every
        // admissible parameter set, so the adjoint kernel is empty.
        WeightSet { kind: WeightSetKind::Empty, case, threshold_modes: Vec::new() }
    } else if params.s > 0.0
        && params.eps1 > 0.0
        && (params.t == 0.0 || params.eps1 > params.eps2)
    {
        // The s-term owns the top degree alone; its coefficient −s(m ∓ 1/2)
        // has the decaying sign at both ends iff m = 0, independent of n.
        let kind =
            if params.m == 0 { WeightSetKind::AllIntegers } else { WeightSetKind::Empty };
        WeightSet { kind, case, threshold_modes: Vec::new() }
    } else {
        let (lo, hi) = kernel_bracket(&params);
        let mut weights = Vec::new();
        let mut threshold_modes = Vec::new();
        for n in (lo.floor() as i64 - 2)..=(hi.ceil() as i64 + 2) {
            let mem = mode_membership(params, n, operator)?;
            if mem.in_kernel {
                weights.push(n);
            } else if mem.threshold {
                threshold_modes.push(n);
            }
        }
        let kind =
            if weights.is_empty() { WeightSetKind::Empty } else { WeightSetKind::Finite(weights) };
        WeightSet { kind, case, threshold_modes }
    };

    debug_assert!(
        (window.0..=window.1).all(|n| {
            mode_membership(params, n, operator)
                .is_ok_and(|mem| mem.in_kernel == set.kind.contains(n))
        }),
        "weight set disagrees with per-mode membership on the window"
    );
    Ok(set)
}

/// One row of a kernel-dimension staircase sweep over s/t ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub ratio: f64,
    pub dim: usize,
    pub weights: Vec<i64>,
    pub threshold_modes: Vec<i64>,
}

/// Kernel dimension of D⁺ as a function of the ratio s/t at fixed common
/// exponent ε₁ = ε₂ = eps and t = 1. The weight interval widens with the
/// ratio, but a ratio that lands an endpoint exactly on an integer excludes
/// that weight (threshold), so the dimension need not be monotone.
pub fn sweep_ratios(m: i64, ratios: &[f64], eps: f64) -> Result<Vec<SweepRow>> {
    if ratios.is_empty() {
        return Err(Error::invalid("ratio list must be non-empty"));
    }
    ratios
        .iter()
        .map(|&ratio| {
            if !ratio.is_finite() || ratio < 0.0 {
                return Err(Error::invalid(format!(
                    "ratio must be finite and nonnegative, got {ratio}"
                )));
            }
            let params = PerturbationParams::new(m, ratio, 1.0, eps, eps)?;
            let ws = kernel_weights(params, Operator::DPlus, (m - 6, m + 6))?;
            let weights = match ws.kind {
                WeightSetKind::Finite(v) => v,
                WeightSetKind::Empty => Vec::new(),
                _ => unreachable!("ratio sweeps stay in the bounded regime"),
            };
            Ok(SweepRow {
                ratio,
                dim: weights.len(),
                weights,
                threshold_modes: ws.threshold_modes,
            })
        })
        .collect()
}
