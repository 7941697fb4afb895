//! Index characters: functionals on the representation ring that record, for
//! each integer weight n, the multiplicity of C_(n) in ker D⁺ minus its
//! multiplicity in ker D⁻.

use crate::profiles::PerturbationParams;
use crate::symbolic::{kernel_weights, Operator, WeightSetKind};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Support of one half of a character: which weights occur and with what
/// multiplicity. The cofinite variants are exact values (every level from
/// `start` on, or up to `end`), not window truncations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightSupport {
    Empty,
    /// Weight → multiplicity ≥ 1.
    Finite(BTreeMap<i64, u32>),
    AllIntegers { mult: u32 },
    LevelsFrom { start: i64, mult: u32 },
    LevelsUpTo { end: i64, mult: u32 },
}

impl WeightSupport {
    /// Single-multiplicity finite support from a sorted weight list.
    pub fn from_weights(weights: &[i64]) -> Self {
        if weights.is_empty() {
            WeightSupport::Empty
        } else {
            WeightSupport::Finite(weights.iter().map(|&n| (n, 1)).collect())
        }
    }

    /// Lifts a kernel support (all kernel modes are one-dimensional rays, so
    /// every multiplicity is 1).
    pub fn from_kernel(kind: &WeightSetKind) -> Result<Self> {
        Ok(match kind {
            WeightSetKind::Empty => WeightSupport::Empty,
            WeightSetKind::Finite(v) => WeightSupport::from_weights(v),
            WeightSetKind::AllIntegers => WeightSupport::AllIntegers { mult: 1 },
            WeightSetKind::NonFredholm => return Err(Error::NonFredholm),
        })
    }

    pub fn multiplicity(&self, n: i64) -> u32 {
        match self {
            WeightSupport::Empty => 0,
            WeightSupport::Finite(map) => map.get(&n).copied().unwrap_or(0),
            WeightSupport::AllIntegers { mult } => *mult,
            WeightSupport::LevelsFrom { start, mult } => {
                if n >= *start {
                    *mult
                } else {
                    0
                }
            }
            WeightSupport::LevelsUpTo { end, mult } => {
                if n <= *end {
                    *mult
                } else {
                    0
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            WeightSupport::Empty => true,
            WeightSupport::Finite(map) => map.is_empty(),
            WeightSupport::AllIntegers { mult }
            | WeightSupport::LevelsFrom { mult, .. }
            | WeightSupport::LevelsUpTo { mult, .. } => *mult == 0,
        }
    }

    /// Short tag naming the support pattern, used in reports where a finite
    /// window cannot convey cofinite supports.
    pub fn pattern(&self) -> &'static str {
        match self {
            WeightSupport::Empty => "zero",
            WeightSupport::Finite(_) => "finite",
            WeightSupport::AllIntegers { .. } => "all_integers",
            WeightSupport::LevelsFrom { .. } => "levels_from",
            WeightSupport::LevelsUpTo { .. } => "levels_up_to",
        }
    }
}

/// A character functional n ↦ mult⁺(n) − mult⁻(n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterFunctional {
    pub plus: WeightSupport,
    pub minus: WeightSupport,
}

impl CharacterFunctional {
    pub fn evaluate(&self, n: i64) -> i64 {
        self.plus.multiplicity(n) as i64 - self.minus.multiplicity(n) as i64
    }

    pub fn evaluate_window(&self, window: (i64, i64)) -> Vec<i64> {
        (window.0..=window.1).map(|n| self.evaluate(n)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }
}

/// Transverse index character: the s-perturbation at unit strength with a
/// strictly larger exponent than the t-side (s = 1, t = 0 representative).
/// Nonzero exactly at level shift m = 0, where every weight occurs once.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // negated form also rejects NaN exponents
pub fn chi_character(m: i64, eps1: f64, eps2: f64) -> Result<CharacterFunctional> {
    if !(eps1 > eps2) {
        return Err(Error::invalid(format!(
            "transverse character requires eps1 > eps2, got eps1 = {eps1}, eps2 = {eps2}"
        )));
    }
    let params = PerturbationParams::new(m, 1.0, 0.0, eps1, eps2)?;
    let window = (m - 6, m + 6);
    let plus = WeightSupport::from_kernel(&kernel_weights(params, Operator::DPlus, window)?.kind)?;
    // The adjoint side is computed, not asserted, so the emptiness claim is
    // re-verified on every construction.
    let minus =
        WeightSupport::from_kernel(&kernel_weights(params, Operator::DMinus, window)?.kind)?;
    Ok(CharacterFunctional { plus, minus })
}

/// Localized Riemann–Roch character of the cylinder: the t-perturbation alone
/// (s = 0, ε₂ = 0). The kernel concentrates at the single weight m.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // negated form also rejects NaN strength
pub fn rr_loc_character(m: i64, t: f64, eps1: f64) -> Result<CharacterFunctional> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::invalid(format!(
            "localized character requires t > 0, got t = {t}"
        )));
    }
    let params = PerturbationParams::new(m, 0.0, t, eps1, 0.0)?;
    let window = (m - 6, m + 6);
    let plus = WeightSupport::from_kernel(&kernel_weights(params, Operator::DPlus, window)?.kind)?;
    let minus =
        WeightSupport::from_kernel(&kernel_weights(params, Operator::DMinus, window)?.kind)?;
    Ok(CharacterFunctional { plus, minus })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transverse_character_at_level_zero_hits_every_weight() {
        let chi = chi_character(0, 1.0, 0.0).unwrap();
        assert_eq!(chi.plus, WeightSupport::AllIntegers { mult: 1 });
        assert!(chi.minus.is_empty());
        for n in [-7i64, -1, 0, 1, 42] {
            assert_eq!(chi.evaluate(n), 1);
        }
        assert_eq!(chi.plus.pattern(), "all_integers");
    }

    #[test]
    fn transverse_character_vanishes_off_level_zero() {
        for (m, e1, e2) in [(3i64, 1.0, 0.0), (-1, 2.0, 1.0), (2, 0.5, 0.0)] {
            let chi = chi_character(m, e1, e2).unwrap();
            assert!(chi.is_zero(), "expected zero functional at m={m}");
        }
    }

    #[test]
    fn transverse_character_rejects_bad_exponents() {
        assert!(chi_character(0, 1.0, 1.0).is_err());
        assert!(chi_character(0, 0.5, 2.0).is_err());
    }

    #[test]
    fn localized_character_is_delta_at_level() {
        for (m, t, e1) in [(3i64, 1.0, 1.0), (0, 2.0, 0.0), (-4, 0.5, 1.0)] {
            let rr = rr_loc_character(m, t, e1).unwrap();
            let mut expect = BTreeMap::new();
            expect.insert(m, 1);
            assert_eq!(rr.plus, WeightSupport::Finite(expect));
            assert!(rr.minus.is_empty());
            for n in m - 3..=m + 3 {
                assert_eq!(rr.evaluate(n), i64::from(n == m));
            }
        }
    }

    #[test]
    fn localized_character_rejects_nonpositive_t() {
        assert!(rr_loc_character(0, 0.0, 1.0).is_err());
        assert!(rr_loc_character(0, -1.0, 1.0).is_err());
    }

    /// The two characters disagree at every nonzero level while both are
    /// defined: the localized one picks out weight m, the transverse one is
    /// identically zero.
    #[test]
    fn characters_disagree_at_nonzero_levels() {
        for m in [-2i64, -1, 1, 2, 3] {
            let chi = chi_character(m, 1.0, 0.0).unwrap();
            let rr = rr_loc_character(m, 1.0, 1.0).unwrap();
            assert!(chi.is_zero());
            assert_eq!(rr.evaluate(m), 1);
            assert_ne!(chi.evaluate(m), rr.evaluate(m));
        }
    }

    #[test]
    fn cofinite_supports_evaluate_correctly() {
        let from = WeightSupport::LevelsFrom { start: 2, mult: 1 };
        assert_eq!(from.multiplicity(1), 0);
        assert_eq!(from.multiplicity(2), 1);
        assert_eq!(from.multiplicity(100), 1);
        let upto = WeightSupport::LevelsUpTo { end: -1, mult: 2 };
        assert_eq!(upto.multiplicity(-1), 2);
        assert_eq!(upto.multiplicity(0), 0);
        let c = CharacterFunctional { plus: from, minus: WeightSupport::Empty };
        assert_eq!(c.evaluate_window((0, 4)), vec![0, 0, 1, 1, 1]);
    }
}
