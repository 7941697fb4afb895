//! Executable verification catalog.
//!
//! Every identity the library claims — the kernel trichotomy, the interval
//! law, adjoint vanishing, partner isospectrality, the character contrast,
//! quantization, the closed-model match, and grid robustness — is packaged
//! here as one named check producing a pass/fail outcome with human-readable
//! evidence. The binary's `verify` subcommand and the acceptance test both
//! run exactly this code, so there is a single source of truth for what
//! "working" means.

use crate::models::{
    chi_character_model, classify_level, local_index, rr_loc_character_model,
    total_character_oracle, LevelClassification, Polarity, RotationModel,
};
use crate::numeric::{
    low_spectrum_above, numeric_kernel_decision, numeric_kernel_decision_for,
    schrodinger_matrix, Discretization, SchrodingerForm, Thresholds, DEFAULT_TAU_GAP,
};
use crate::profiles::{mode_coefficient, PerturbationParams, ProfilePair, RhoSmoothing};
use crate::symbolic::{kernel_weights, Operator, WeightSetKind};
use crate::{Error, Indeterminacy, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;
use std::time::Instant;

/// Result of one verification check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {:<3} {:<34} {}", self.id, self.name, self.details)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Kernel-support laws and the numerical oracle agreement (A1–A5, A9).
    AppendixA,
    /// Quantization at regular levels and the closed-model match (A7, A8).
    Quantization,
    /// Localized-vs-transverse character contrast (A6).
    Contrast,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "appendix-a" | "kernel" => Ok(Suite::AppendixA),
            "quantization" => Ok(Suite::Quantization),
            "contrast" => Ok(Suite::Contrast),
            "all" => Ok(Suite::All),
            other => Err(Error::invalid(format!(
                "unknown suite {other:?} (expected all, appendix-a, quantization, contrast)"
            ))),
        }
    }
}

/// Runs a suite and returns one outcome per check, in catalog order.
pub fn run_suite(suite: Suite) -> Vec<CheckOutcome> {
    let checks: Vec<fn() -> CheckOutcome> = match suite {
        Suite::AppendixA => vec![
            check_clifford_trichotomy,
            check_orbit_localization,
            check_interval_law,
            check_adjoint_vanishing,
            check_partner_isospectrality,
            check_grid_robustness,
        ],
        Suite::Quantization => vec![check_quantization, check_closed_model_match],
        Suite::Contrast => vec![check_character_contrast],
        Suite::All => vec![
            check_clifford_trichotomy,
            check_orbit_localization,
            check_interval_law,
            check_adjoint_vanishing,
            check_partner_isospectrality,
            check_character_contrast,
            check_quantization,
            check_closed_model_match,
            check_grid_robustness,
        ],
    };
    checks.into_iter().map(|f| f()).collect()
}

fn outcome(
    id: &'static str,
    name: &'static str,
    failures: Vec<String>,
    evidence: String,
) -> CheckOutcome {
    let passed = failures.is_empty();
    let details = if passed {
        evidence
    } else {
        let shown = failures.iter().take(4).cloned().collect::<Vec<_>>().join("; ");
        let more = failures.len().saturating_sub(4);
        if more > 0 {
            format!("{shown}; … {more} more")
        } else {
            shown
        }
    };
    CheckOutcome { id, name, passed, details }
}

fn p(m: i64, s: f64, t: f64, e1: f64, e2: f64) -> PerturbationParams {
    PerturbationParams::new(m, s, t, e1, e2).unwrap()
}

/// Numeric decision with one retry at the suggested wider window when the
/// default one cannot resolve a slow mode.
fn decide_with_refinement(
    params: PerturbationParams,
    n: i64,
    disc: &Discretization,
    thr: &Thresholds,
) -> Result<crate::numeric::KernelDecision> {
    match numeric_kernel_decision(params, n, disc, thr) {
        Err(Error::IndeterminateSpectrum {
            cause: Indeterminacy::Truncation { suggested_half_width },
            ..
        }) => {
            let wide = Discretization::new(suggested_half_width, disc.h)?;
            numeric_kernel_decision(params, n, &wide, thr)
        }
        other => other,
    }
}

/// A1 — Clifford-dominant trichotomy: with the Clifford term alone (s = 1,
/// ε₁ = 1), the kernel is all integer weights at level shift 0 and empty at
/// every other shift, symbolically and numerically, within 30 seconds.
fn check_clifford_trichotomy() -> CheckOutcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for m in -2..=2 {
        let ws = kernel_weights(p(m, 1.0, 0.0, 1.0, 0.0), Operator::DPlus, (m - 6, m + 6));
        let expect =
            if m == 0 { WeightSetKind::AllIntegers } else { WeightSetKind::Empty };
        match ws {
            Ok(ws) if ws.kind == expect => {}
            other => failures.push(format!("symbolic m={m}: got {other:?}")),
        }
    }
    let disc = Discretization::default();
    let thr = Thresholds::default();
    let jobs: Vec<(i64, i64)> =
        (-2..=2).flat_map(|m| (-5..=5).map(move |n| (m, n))).collect();
    let numeric: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(m, n)| {
            let want = m == 0;
            match numeric_kernel_decision(p(m, 1.0, 0.0, 1.0, 0.0), n, &disc, &thr) {
                Ok(d) if d.kernel_plus == want && !d.kernel_minus => None,
                Ok(d) => Some(format!(
                    "numeric m={m} n={n}: (+{}, -{}) want (+{want}, -false)",
                    d.kernel_plus, d.kernel_minus
                )),
                Err(e) => Some(format!("numeric m={m} n={n}: {e}")),
            }
        })
        .collect();
    failures.extend(numeric);
    let elapsed = start.elapsed();
    if elapsed.as_secs_f64() >= 30.0 {
        failures.push(format!("took {elapsed:.1?}, budget is 30s"));
    }
    outcome(
        "A1",
        "clifford-dominant trichotomy",
        failures,
        format!("5 level shifts symbolic, 55 modes numeric in {elapsed:.2?}"),
    )
}

/// A2 — Orbit-dominant localization: with the orbitwise term alone (t = 1,
/// ε₂ = 1), the kernel is exactly the single weight m for every level shift,
/// and the adjoint kernel is empty.
fn check_orbit_localization() -> CheckOutcome {
    let mut failures = Vec::new();
    for m in -2..=2 {
        match kernel_weights(p(m, 0.0, 1.0, 0.0, 1.0), Operator::DPlus, (m - 6, m + 6)) {
            Ok(ws) if ws.kind == WeightSetKind::Finite(vec![m]) => {}
            other => failures.push(format!("symbolic m={m}: got {other:?}")),
        }
        match kernel_weights(p(m, 0.0, 1.0, 0.0, 1.0), Operator::DMinus, (m - 6, m + 6)) {
            Ok(ws) if ws.kind == WeightSetKind::Empty => {}
            other => failures.push(format!("adjoint m={m}: got {other:?}")),
        }
    }
    let disc = Discretization::default();
    let thr = Thresholds::default();
    let jobs: Vec<(i64, i64)> =
        (-2..=2).flat_map(|m| (m - 5..=m + 5).map(move |n| (m, n))).collect();
    failures.extend(jobs.par_iter().filter_map(|&(m, n)| {
        let want = n == m;
        match numeric_kernel_decision(p(m, 0.0, 1.0, 0.0, 1.0), n, &disc, &thr) {
            Ok(d) if d.kernel_plus == want && !d.kernel_minus => None,
            Ok(d) => Some(format!(
                "numeric m={m} n={n}: (+{}, -{}) want (+{want}, -false)",
                d.kernel_plus, d.kernel_minus
            )),
            Err(e) => Some(format!("numeric m={m} n={n}: {e}")),
        }
    }).collect::<Vec<String>>());
    outcome(
        "A2",
        "orbit-dominant localization",
        failures,
        "5 level shifts symbolic, 55 modes numeric".into(),
    )
}

/// Integer points strictly inside the open interval, plus the integers
/// sitting exactly on its ends.
fn bracket_scan(lo: f64, hi: f64) -> (Vec<i64>, Vec<i64>) {
    let mut inside = Vec::new();
    let mut ends = Vec::new();
    for n in (lo.floor() as i64 - 2)..=(hi.ceil() as i64 + 2) {
        let x = n as f64;
        if x > lo && x < hi {
            inside.push(n);
        } else if x == lo || x == hi {
            ends.push(n);
        }
    }
    (inside, ends)
}

/// A3 — Balanced-exponent interval law: at common exponent ε₁ = ε₂ = 1 and
/// t = 1, the kernel weights are exactly the integers strictly inside
/// ((1+s)(m−½), (1+s)(m+½)); the law is scale covariant in (s, t) and the
/// numerics agree away from the interval endpoints.
fn check_interval_law() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut numeric_jobs: Vec<(PerturbationParams, i64, bool)> = Vec::new();
    for m in [0i64, 1] {
        for s in [0.0, 0.5, 1.0, 2.0, 3.0] {
            let params = p(m, s, 1.0, 1.0, 1.0);
            let (lo, hi) = ((1.0 + s) * (m as f64 - 0.5), (1.0 + s) * (m as f64 + 0.5));
            let (inside, ends) = bracket_scan(lo, hi);
            let ws = match kernel_weights(params, Operator::DPlus, (m - 6, m + 6)) {
                Ok(ws) => ws,
                Err(e) => {
                    failures.push(format!("m={m} s={s}: {e}"));
                    continue;
                }
            };
            let expect = if inside.is_empty() {
                WeightSetKind::Empty
            } else {
                WeightSetKind::Finite(inside.clone())
            };
            if ws.kind != expect {
                failures.push(format!("m={m} s={s}: {:?}, scan says {inside:?}", ws.kind));
            }
            if ws.threshold_modes != ends {
                failures.push(format!(
                    "m={m} s={s}: threshold modes {:?}, scan says {ends:?}",
                    ws.threshold_modes
                ));
            }
            // Scale covariance: (s, t) → (10s, 10t) leaves the support alone.
            match kernel_weights(p(m, 10.0 * s, 10.0, 1.0, 1.0), Operator::DPlus, (m - 6, m + 6))
            {
                Ok(big) if big.kind == ws.kind => {}
                other => failures.push(format!("m={m} s={s} scaled ×10: {other:?}")),
            }
            for n in m - 6..=m + 6 {
                if !ends.contains(&n) {
                    numeric_jobs.push((params, n, ws.kind.contains(n)));
                }
            }
        }
    }
    let disc = Discretization::default();
    let thr = Thresholds::default();
    failures.extend(numeric_jobs.par_iter().filter_map(|&(params, n, want)| {
        match numeric_kernel_decision(params, n, &disc, &thr) {
            Ok(d) if d.kernel_plus == want && !d.kernel_minus => None,
            Ok(d) => Some(format!(
                "numeric m={} s={} n={n}: (+{}, -{}) want (+{want}, -false)",
                params.m, params.s, d.kernel_plus, d.kernel_minus
            )),
            Err(e) => Some(format!("numeric m={} s={} n={n}: {e}", params.m, params.s)),
        }
    }).collect::<Vec<String>>());
    outcome(
        "A3",
        "balanced-exponent interval law",
        failures,
        format!("10 parameter sets, {} non-threshold modes numeric", numeric_jobs.len()),
    )
}

/// A4 — Adjoint kernel vanishing: the adjoint side has empty kernel across
/// the whole Fredholm parameter grid, symbolically and numerically.
fn check_adjoint_vanishing() -> CheckOutcome {
    let mut failures = Vec::new();
    let strengths = [0.0, 0.5, 1.0, 2.0];
    let exponents = [0.0, 0.5, 1.0, 2.0];
    let mut symbolic = 0usize;
    for m in -2..=2 {
        for &s in &strengths {
            for &t in &strengths {
                if s == 0.0 && t == 0.0 {
                    continue;
                }
                for &e1 in &exponents {
                    for &e2 in &exponents {
                        symbolic += 1;
                        match kernel_weights(p(m, s, t, e1, e2), Operator::DMinus, (m - 6, m + 6))
                        {
                            Ok(ws) if ws.kind == WeightSetKind::Empty => {}
                            other => failures
                                .push(format!("symbolic m={m} s={s} t={t} ε=({e1},{e2}): {other:?}")),
                        }
                    }
                }
            }
        }
    }
    let mut jobs = Vec::new();
    for m in -1..=1 {
        for &s in &[0.0, 1.0, 2.0] {
            for &t in &[0.0, 1.0, 2.0] {
                if s == 0.0 && t == 0.0 {
                    continue;
                }
                for &e1 in &[0.0, 1.0] {
                    for &e2 in &[0.0, 1.0] {
                        for n in m - 2..=m + 2 {
                            jobs.push((p(m, s, t, e1, e2), n));
                        }
                    }
                }
            }
        }
    }
    let disc = Discretization::default();
    let thr = Thresholds::default();
    failures.extend(jobs.par_iter().filter_map(|&(params, n)| {
        match decide_with_refinement(params, n, &disc, &thr) {
            Ok(d) if !d.kernel_minus => None,
            Ok(_) => Some(format!(
                "numeric m={} s={} t={} ε=({},{}) n={n}: adjoint kernel nonempty",
                params.m, params.s, params.t, params.eps1, params.eps2
            )),
            Err(e) => Some(format!(
                "numeric m={} s={} t={} ε=({},{}) n={n}: {e}",
                params.m, params.s, params.t, params.eps1, params.eps2
            )),
        }
    }).collect::<Vec<String>>());
    outcome(
        "A4",
        "adjoint kernel vanishing",
        failures,
        format!("{symbolic} parameter combinations symbolic, {} modes numeric", jobs.len()),
    )
}

/// A5 — Partner isospectrality: away from zero the two Schrödinger partners
/// share their spectrum. Checked on 10 seeded draws of well-localized
/// instances: the 5 smallest eigenvalues above the gap threshold agree to
/// relative 1e−6 after h² Richardson extrapolation at h = 1e−3.
fn check_partner_isospectrality() -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20260816);
    let pick = |rng: &mut ChaCha8Rng, choices: &[f64]| choices[rng.gen_range(0..choices.len())];
    let mut draws = Vec::new();
    for _ in 0..10 {
        let m = rng.gen_range(-2..=2);
        let params = p(
            m,
            pick(&mut rng, &[1.0, 2.0]),
            pick(&mut rng, &[1.0, 2.0]),
            pick(&mut rng, &[1.0, 2.0]),
            pick(&mut rng, &[1.0, 2.0]),
        );
        let n = m + rng.gen_range(-3..=3);
        draws.push((params, n));
    }
    let failures: Vec<String> = draws
        .par_iter()
        .filter_map(|&(params, n)| {
            let coef = mode_coefficient(params, ProfilePair::with_defaults(params.m), n);
            let low = |h: f64, form: SchrodingerForm| {
                let disc = Discretization::new(12.0, h).unwrap();
                low_spectrum_above(&schrodinger_matrix(&coef, &disc, form), DEFAULT_TAU_GAP, 5)
            };
            let extrapolate = |form: SchrodingerForm| {
                let coarse = low(1e-3, form);
                let fine = low(5e-4, form);
                coarse
                    .iter()
                    .zip(fine)
                    .map(|(c, f)| (4.0 * f - c) / 3.0)
                    .collect::<Vec<f64>>()
            };
            let plus = extrapolate(SchrodingerForm::StarLL);
            let minus = extrapolate(SchrodingerForm::LLStar);
            let worst = plus
                .iter()
                .zip(&minus)
                .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()))
                .fold(0.0f64, f64::max);
            if worst <= 1e-6 {
                None
            } else {
                Some(format!(
                    "m={} s={} t={} ε=({},{}) n={n}: relative mismatch {worst:.2e}",
                    params.m, params.s, params.t, params.eps1, params.eps2
                ))
            }
        })
        .collect();
    outcome(
        "A5",
        "partner isospectrality",
        failures,
        "10 draws × 5 eigenvalues, Richardson at h=1e-3, tolerance 1e-6".into(),
    )
}

/// A6 — Character contrast: the localized Riemann–Roch character of the
/// cylinder at level 3 is the delta at weight 3 while its transverse
/// character vanishes; at level 0 the transverse character is 1 at every
/// weight. Both statements are confirmed numerically.
fn check_character_contrast() -> CheckOutcome {
    let mut failures = Vec::new();
    let cyl3 = RotationModel::cylinder(3);
    let rr3 = rr_loc_character_model(&cyl3);
    for n in -2..=8 {
        let want = i64::from(n == 3);
        if rr3.evaluate(n) != want {
            failures.push(format!("rr-loc cylinder:3 at n={n}: {} want {want}", rr3.evaluate(n)));
        }
    }
    match chi_character_model(&cyl3) {
        Ok(chi) if chi.is_zero() => {}
        other => failures.push(format!("transverse cylinder:3: {other:?}, want zero")),
    }
    match chi_character_model(&RotationModel::cylinder(0)) {
        Ok(chi) => {
            for n in -5..=5 {
                if chi.evaluate(n) != 1 {
                    failures.push(format!("transverse cylinder:0 at n={n}: {}", chi.evaluate(n)));
                }
            }
        }
        Err(e) => failures.push(format!("transverse cylinder:0: {e}")),
    }
    // Numerical form of the same contrast.
    let disc = Discretization::default();
    let thr = Thresholds::default();
    let mut jobs: Vec<(PerturbationParams, i64, bool)> = Vec::new();
    for n in -2..=8 {
        jobs.push((p(3, 0.0, 1.0, 1.0, 0.0), n, n == 3)); // localized at level 3
        jobs.push((p(3, 1.0, 0.0, 1.0, 0.0), n, false)); // transverse at level 3
    }
    for n in -5..=5 {
        jobs.push((p(0, 1.0, 0.0, 1.0, 0.0), n, true)); // transverse at level 0
    }
    failures.extend(jobs.par_iter().filter_map(|&(params, n, want)| {
        match numeric_kernel_decision(params, n, &disc, &thr) {
            Ok(d) if d.kernel_plus == want && !d.kernel_minus => None,
            Ok(d) => Some(format!(
                "numeric (s={}, t={}) n={n}: (+{}, -{}) want (+{want}, -false)",
                params.s, params.t, d.kernel_plus, d.kernel_minus
            )),
            Err(e) => Some(format!("numeric (s={}, t={}) n={n}: {e}", params.s, params.t)),
        }
    }).collect::<Vec<String>>());
    let evidence = format!("2 characters exact, {} modes numeric", jobs.len());
    outcome("A6", "character contrast", failures, evidence)
}

/// A7 — Regular-level quantization: at every regular level of every catalog
/// model the local index is exactly 1, and the localized mode problem at
/// that level has a one-dimensional kernel numerically.
fn check_quantization() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut models: Vec<(RotationModel, Vec<i64>)> = Vec::new();
    for m in -2..=2 {
        models.push((RotationModel::cylinder(m), (m - 1..=m + 1).collect()));
    }
    models.push((RotationModel::disc(0, Polarity::Min), (0..=10).collect()));
    for k in 1..=8 {
        models.push((RotationModel::sphere(k).unwrap(), (0..=k).collect()));
    }
    let mut regular_levels = Vec::new();
    for (model, levels) in &models {
        for &n in levels {
            match classify_level(model, n) {
                LevelClassification::Regular => {
                    if local_index(model, n) != 1 {
                        failures.push(format!("{model} level {n}: local index ≠ 1"));
                    }
                    regular_levels.push(n);
                }
                LevelClassification::OutsideImage => {
                    if local_index(model, n) != 0 {
                        failures.push(format!("{model} level {n}: outside image but index ≠ 0"));
                    }
                }
                LevelClassification::FixedPoint => {
                    if local_index(model, n) != 1 {
                        failures.push(format!("{model} fixed level {n}: local index ≠ 1"));
                    }
                }
            }
        }
    }
    regular_levels.sort_unstable();
    regular_levels.dedup();
    let disc = Discretization::default();
    let thr = Thresholds::default();
    failures.extend(regular_levels.par_iter().filter_map(|&n| {
        match numeric_kernel_decision(p(n, 0.0, 1.0, 0.0, 1.0), n, &disc, &thr) {
            Ok(d) if d.kernel_plus && !d.kernel_minus => None,
            Ok(_) => Some(format!("level {n}: localized kernel is not one ray")),
            Err(e) => Some(format!("level {n}: {e}")),
        }
    }).collect::<Vec<String>>());
    outcome(
        "A7",
        "regular-level quantization",
        failures,
        format!(
            "{} models, {} distinct regular levels confirmed numerically",
            models.len(),
            regular_levels.len()
        ),
    )
}

/// A8 — Closed-model character match: for the sphere at top level k the
/// localized character equals the independent monomial-basis character on
/// the window [−2, k+2], for k = 1..8.
fn check_closed_model_match() -> CheckOutcome {
    let mut failures = Vec::new();
    for k in 1..=8 {
        let sph = RotationModel::sphere(k).unwrap();
        let rr = rr_loc_character_model(&sph);
        let total = match total_character_oracle(&sph) {
            Ok(t) => t,
            Err(e) => {
                failures.push(format!("sphere:{k}: {e}"));
                continue;
            }
        };
        let window = (-2, k + 2);
        if rr.evaluate_window(window) != total.evaluate_window(window) {
            failures.push(format!(
                "sphere:{k}: localized {:?} vs monomial {:?}",
                rr.evaluate_window(window),
                total.evaluate_window(window)
            ));
        }
        let expect: Vec<i64> = (-2..=k + 2).map(|n| i64::from(n >= 0 && n <= k)).collect();
        if total.evaluate_window(window) != expect {
            failures.push(format!("sphere:{k}: monomial oracle does not match 0..{k}"));
        }
    }
    outcome(
        "A8",
        "closed-model character match",
        failures,
        "8 sphere sizes on windows [-2, k+2]".into(),
    )
}

/// A9 — Grid robustness: every decided verdict from the A1–A3 instance list
/// is identical across half-widths {8, 12, 16} and both ρ-smoothings
/// (narrow windows may abstain, never flip, and the widest window decides
/// everything); and the smallest nonzero eigenvalue converges at second
/// order (h-halving ratio in [3.5, 4.5]).
fn check_grid_robustness() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut instances: Vec<(PerturbationParams, i64, bool)> = Vec::new();
    for m in -2..=2 {
        for n in -5..=5 {
            instances.push((p(m, 1.0, 0.0, 1.0, 0.0), n, m == 0));
        }
        for n in m - 5..=m + 5 {
            instances.push((p(m, 0.0, 1.0, 0.0, 1.0), n, n == m));
        }
    }
    for m in [0i64, 1] {
        for s in [0.0, 0.5, 1.0, 2.0, 3.0] {
            let (lo, hi) = ((1.0 + s) * (m as f64 - 0.5), (1.0 + s) * (m as f64 + 0.5));
            let (inside, ends) = bracket_scan(lo, hi);
            for n in m - 6..=m + 6 {
                if !ends.contains(&n) {
                    instances.push((p(m, s, 1.0, 1.0, 1.0), n, inside.contains(&n)));
                }
            }
        }
    }
    let thr = Thresholds::default();
    let mut decided = 0usize;
    let mut abstained = 0usize;
    for half_width in [8.0, 12.0, 16.0] {
        let disc = Discretization::new(half_width, 0.01).unwrap();
        for smoothing in [RhoSmoothing::CubicHermite, RhoSmoothing::QuinticSmoothstep] {
            let results: Vec<_> = instances
                .par_iter()
                .map(|&(params, n, want)| {
                    let profiles = ProfilePair::new(
                        params.m,
                        smoothing,
                        crate::profiles::FSmoothing::default(),
                    );
                    (
                        params,
                        n,
                        want,
                        numeric_kernel_decision_for(profiles, params, n, &disc, &thr),
                    )
                })
                .collect();
            for (params, n, want, res) in results {
                match res {
                    Ok(d) => {
                        decided += 1;
                        if d.kernel_plus != want || d.kernel_minus {
                            failures.push(format!(
                                "R={half_width} {smoothing:?} m={} s={} t={} n={n}: verdict flipped",
                                params.m, params.s, params.t
                            ));
                        }
                    }
                    Err(Error::IndeterminateSpectrum {
                        cause: Indeterminacy::Truncation { .. },
                        ..
                    }) if half_width < 16.0 => abstained += 1,
                    Err(e) => failures.push(format!(
                        "R={half_width} {smoothing:?} m={} s={} t={} n={n}: {e}",
                        params.m, params.s, params.t
                    )),
                }
            }
        }
    }
    // Second-order h-convergence of the smallest nonzero eigenvalue on an
    // orbit-dominant kernel instance. The floor 1.0 skips the zero mode at
    // every grid, including its coarse-grid symmetrization defect.
    let coef = mode_coefficient(p(2, 0.0, 1.0, 0.0, 1.0), ProfilePair::with_defaults(2), 2);
    let lam = |h: f64| {
        let disc = Discretization::new(12.0, h).unwrap();
        low_spectrum_above(&schrodinger_matrix(&coef, &disc, SchrodingerForm::StarLL), 1.0, 1)[0]
    };
    let (l1, l2, l3) = (lam(0.02), lam(0.01), lam(0.005));
    let ratio = (l1 - l2) / (l2 - l3);
    if !(3.5..=4.5).contains(&ratio) {
        failures.push(format!("h-halving ratio {ratio:.3} outside [3.5, 4.5]"));
    }
    outcome(
        "A9",
        "grid robustness",
        failures,
        format!(
            "{} instances × 3 windows × 2 smoothings: {decided} decided, {abstained} abstentions; h-ratio {ratio:.3}",
            instances.len()
        ),
    )
}
