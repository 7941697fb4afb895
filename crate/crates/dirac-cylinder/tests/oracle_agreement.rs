//! Dense cross-validation of the symbolic kernel law against the spectral
//! oracle: every admissible parameter combination in the grid, every mode in
//! a 13-wide window, both pair members.
//!
//! Threshold modes (exactly cancelled top coefficient) are skipped — the
//! symbolic law excludes them by convention while the spectral oracle sees
//! the genuine borderline solution. Window refusals are followed up at the
//! suggested half-width, so the grid must end fully decided.

use dirac_cylinder::numeric::{numeric_kernel_decision, Discretization, KernelDecision, Thresholds};
use dirac_cylinder::profiles::PerturbationParams;
use dirac_cylinder::symbolic::{mode_membership, Operator};
use dirac_cylinder::{Error, Indeterminacy};
use rayon::prelude::*;

fn decide_with_refinement(params: PerturbationParams, n: i64) -> Result<KernelDecision, String> {
    let thr = Thresholds::default();
    let mut disc = Discretization::default();
    for _ in 0..3 {
        match numeric_kernel_decision(params, n, &disc, &thr) {
            Ok(d) => return Ok(d),
            Err(Error::IndeterminateSpectrum {
                cause: Indeterminacy::Truncation { suggested_half_width },
                ..
            }) => {
                disc = Discretization::new(suggested_half_width, disc.h)
                    .map_err(|e| e.to_string())?;
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    Err(format!("still unresolved at half-width {}", disc.half_width))
}

#[test]
fn symbolic_and_numeric_verdicts_agree_on_dense_grid() {
    let ratios = [0.0, 0.5, 1.0, 2.0];
    let exponents = [0.0, 0.5, 1.0, 2.0];
    let mut cases = Vec::new();
    for m in -2i64..=2 {
        for &s in &ratios {
            for &t in &ratios {
                if s == 0.0 && t == 0.0 {
                    continue;
                }
                for &e1 in &exponents {
                    for &e2 in &exponents {
                        let params = PerturbationParams::new(m, s, t, e1, e2).unwrap();
                        for n in m - 6..=m + 6 {
                            cases.push((params, n));
                        }
                    }
                }
            }
        }
    }
    assert_eq!(cases.len(), 5 * 15 * 16 * 13);

    let mismatches: Vec<String> = cases
        .par_iter()
        .filter_map(|&(params, n)| {
            let plus = mode_membership(params, n, Operator::DPlus).unwrap();
            let minus = mode_membership(params, n, Operator::DMinus).unwrap();
            if plus.threshold || minus.threshold {
                return None;
            }
            let ctx = format!(
                "m={} s={} t={} eps=({},{}) n={n}",
                params.m, params.s, params.t, params.eps1, params.eps2
            );
            match decide_with_refinement(params, n) {
                Err(e) => Some(format!("{ctx}: {e}")),
                Ok(dec) if dec.kernel_plus != plus.in_kernel || dec.kernel_minus != minus.in_kernel => {
                    Some(format!(
                        "{ctx}: symbolic ({}, {}) vs numeric ({}, {})",
                        plus.in_kernel, minus.in_kernel, dec.kernel_plus, dec.kernel_minus
                    ))
                }
                Ok(_) => None,
            }
        })
        .collect();
    assert!(
        mismatches.is_empty(),
        "{} disagreement(s):\n{}",
        mismatches.len(),
        mismatches.join("\n")
    );
}
