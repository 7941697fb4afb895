//! Background profile data for the cylinder: the clamped level profile ρ, the
//! positive weight profile f, the perturbation strengths, and the per-mode
//! first-order coefficient they induce.
//!
//! Everything downstream (symbolic weight sets, numeric spectra) sees the
//! geometry only through [`ModeCoefficient`]:
//!
//! ```text
//! c_n(r) = 2π·[ (1 + t·f(r)^{ε₂})·(n − ρ(r)) − s·f(r)^{ε₁}·ρ(r) ]
//! ```
//!
//! and the mode ODE is a_n′(r) = c_n(r)·a_n(r).

use crate::{Error, Result, TAU};
use num_complex::Complex64;

/// Tolerance for "ρ(r) is an integer" when flagging parallel orbit sections.
pub const HOLONOMY_INTEGER_TOL: f64 = 1e-12;

/// Perturbation strengths (s, t) and profile exponents (ε₁, ε₂) together with
/// the level index m that pins the connection twist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationParams {
    pub m: i64,
    pub s: f64,
    pub t: f64,
    pub eps1: f64,
    pub eps2: f64,
}

impl PerturbationParams {
    /// All four strengths/exponents must be finite and nonnegative.
    pub fn new(m: i64, s: f64, t: f64, eps1: f64, eps2: f64) -> Result<Self> {
        for (name, v) in [("s", s), ("t", t), ("eps1", eps1), ("eps2", eps2)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::invalid(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(PerturbationParams { m, s, t, eps1, eps2 })
    }

    /// s = t = 0 leaves the bare operator; kernel queries must refuse rather
    /// than produce a weight set.
    pub fn is_unperturbed(&self) -> bool {
        self.s == 0.0 && self.t == 0.0
    }
}

/// Interpolant used on the two bands where ρ bends from the identity to its
/// clamped values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RhoSmoothing {
    /// Monotone cubic Hermite; C¹ across the junctions.
    #[default]
    CubicHermite,
    /// Quintic with vanishing second derivatives at both junction points; C².
    QuinticSmoothstep,
}

/// Cap used for f on the band |r| ≤ 1/2 when m = 0 (for |m| ≥ 1 the band sits
/// away from the origin and f = |r| throughout).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FSmoothing {
    /// f(r) = r² + 1/4 on |r| ≤ 1/2; matches |r| in value and slope.
    #[default]
    QuadraticCap,
    /// f(r) = A·cosh(Kr) with (A, K) chosen to match |r| in value and slope.
    CoshBlend,
}

/// Solves K·tanh(K/2) = 2, the slope-matching condition for the cosh cap.
fn cosh_blend_rate() -> f64 {
    let g = |k: f64| k * (k / 2.0).tanh() - 2.0;
    let (mut lo, mut hi) = (2.0_f64, 3.0_f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The pair (ρ, f) for a fixed level index m.
///
/// ρ is non-decreasing, equals r on (m−1/4, m+1/4), and is clamped to m ∓ 1/2
/// outside [m−1/2, m+1/2]. f is the asymptotic weight |r|, capped on |r| ≤ 1/2
/// when m = 0 so it stays smooth and positive there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePair {
    pub m: i64,
    pub rho_smoothing: RhoSmoothing,
    pub f_smoothing: FSmoothing,
    cosh_k: f64,
    cosh_a: f64,
}

impl ProfilePair {
    pub fn new(m: i64, rho_smoothing: RhoSmoothing, f_smoothing: FSmoothing) -> Self {
        let cosh_k = cosh_blend_rate();
        let cosh_a = 0.5 / (cosh_k / 2.0).cosh();
        ProfilePair { m, rho_smoothing, f_smoothing, cosh_k, cosh_a }
    }

    pub fn with_defaults(m: i64) -> Self {
        Self::new(m, RhoSmoothing::default(), FSmoothing::default())
    }

    /// Odd band interpolant on 1/4 ≤ |x| ≤ 1/2, in normalized band coordinate
    /// u = (|x| − 1/4)/(1/4).
    fn band_value(&self, u: f64) -> f64 {
        match self.rho_smoothing {
            // (1 + u + u² − u³)/4: Hermite data (1/4, slope 1) → (1/2, slope 0).
            RhoSmoothing::CubicHermite => 0.25 * (1.0 + u + u * u * (1.0 - u)),
            // (1 + u + 4u³ − 7u⁴ + 3u⁵)/4: same data plus zero curvature at both ends.
            RhoSmoothing::QuinticSmoothstep => {
                0.25 * (1.0 + u + u * u * u * (4.0 - 7.0 * u + 3.0 * u * u))
            }
        }
    }

    /// d(band)/dx (x in profile units, band width 1/4).
    fn band_slope(&self, u: f64) -> f64 {
        match self.rho_smoothing {
            RhoSmoothing::CubicHermite => (1.0 - u) * (1.0 + 3.0 * u),
            RhoSmoothing::QuinticSmoothstep => {
                1.0 + u * u * (12.0 - 28.0 * u + 15.0 * u * u)
            }
        }
    }

    /// The clamped level profile.
    pub fn rho(&self, r: f64) -> f64 {
        let x = r - self.m as f64;
        let a = x.abs();
        let v = if a <= 0.25 {
            return r; // identity region, exact
        } else if a >= 0.5 {
            0.5
        } else {
            self.band_value((a - 0.25) / 0.25)
        };
        self.m as f64 + v.copysign(x)
    }

    /// dρ/dr (piecewise closed form, matching the interpolant exactly).
    pub fn rho_prime(&self, r: f64) -> f64 {
        let a = (r - self.m as f64).abs();
        if a <= 0.25 {
            1.0
        } else if a >= 0.5 {
            0.0
        } else {
            self.band_slope((a - 0.25) / 0.25)
        }
    }

    /// The positive weight profile. Equals |r| for |r − m| > 1/2; for m = 0 the
    /// band |r| ≤ 1/2 is capped to keep f smooth and positive across the origin.
    pub fn f(&self, r: f64) -> f64 {
        if self.m != 0 || r.abs() > 0.5 {
            return r.abs();
        }
        match self.f_smoothing {
            FSmoothing::QuadraticCap => r * r + 0.25,
            FSmoothing::CoshBlend => self.cosh_a * (self.cosh_k * r).cosh(),
        }
    }
}

/// f^ε with the conventions f⁰ ≡ 1 and f¹ = f kept exact.
#[inline]
fn f_pow(f: f64, eps: f64) -> f64 {
    if eps == 0.0 {
        1.0
    } else if eps == 1.0 {
        f
    } else {
        f.powf(eps)
    }
}

/// The scalar coefficient of the n-th Fourier mode ODE a′ = c_n(r)·a.
#[derive(Debug, Clone, Copy)]
pub struct ModeCoefficient {
    pub params: PerturbationParams,
    pub profiles: ProfilePair,
    pub n: i64,
}

impl ModeCoefficient {
    pub fn eval(&self, r: f64) -> f64 {
        let p = &self.params;
        let rho = self.profiles.rho(r);
        let f = self.profiles.f(r);
        TAU * ((1.0 + p.t * f_pow(f, p.eps2)) * (self.n as f64 - rho)
            - p.s * f_pow(f, p.eps1) * rho)
    }

    /// Closed form on the flat regions r > m + 1/2 (sign = +1) or r < m − 1/2
    /// (sign = −1), where ρ ≡ m ± 1/2 and f ≡ |r|.
    pub fn eval_flat(&self, r: f64, sign: f64) -> f64 {
        let p = &self.params;
        let rho = p.m as f64 + 0.5 * sign;
        let f = r.abs();
        TAU * ((1.0 + p.t * f_pow(f, p.eps2)) * (self.n as f64 - rho)
            - p.s * f_pow(f, p.eps1) * rho)
    }
}

/// Builds the mode coefficient. The profile pair must carry the same level
/// index as the parameters; mixing levels is a caller bug.
pub fn mode_coefficient(
    params: PerturbationParams,
    profiles: ProfilePair,
    n: i64,
) -> ModeCoefficient {
    assert_eq!(
        params.m, profiles.m,
        "mode_coefficient: params.m and profiles.m must agree"
    );
    ModeCoefficient { params, profiles, n }
}

/// 2×2 complex matrix, row-major.
pub type Mat2 = [[Complex64; 2]; 2];

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Fixed background data of the cylinder: flat metric g = dr² + dθ², area form
/// ω = dr ∧ dθ, complex structure J∂_r = ∂_θ, the spinor module W = C² with its
/// Clifford action, the twisted connection ∇ = d − 2πiρ·dθ, the moment function
/// μ = −2πρ, and the induced vector field μ♯ = −2πρ·∂_θ.
///
/// All of these enter the computations only through [`ModeCoefficient`]; the
/// struct exists so the matrices and moment data can be inspected and tested.
#[derive(Debug, Clone, Copy)]
pub struct CylinderGeometry {
    pub profiles: ProfilePair,
}

impl CylinderGeometry {
    pub fn new(profiles: ProfilePair) -> Self {
        CylinderGeometry { profiles }
    }

    /// c(dr) = [[0, −i], [−i, 0]].
    pub fn clifford_dr(&self) -> Mat2 {
        let mi = Complex64::new(0.0, -1.0);
        let z = Complex64::new(0.0, 0.0);
        [[z, mi], [mi, z]]
    }

    /// c(dθ) = [[0, −1], [1, 0]].
    pub fn clifford_dtheta(&self) -> Mat2 {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        [[z, -one], [one, z]]
    }

    /// Moment function μ(r) = −2πρ(r).
    pub fn moment(&self, r: f64) -> f64 {
        -TAU * self.profiles.rho(r)
    }

    /// ∂_θ-component of the moment vector field μ♯ (equals μ here).
    pub fn moment_vector_theta(&self, r: f64) -> f64 {
        self.moment(r)
    }

    /// dθ-coefficient of ∇ − d acting on sections, i.e. −2πρ(r) times i·Id.
    pub fn connection_dtheta(&self, r: f64) -> f64 {
        -TAU * self.profiles.rho(r)
    }
}

/// Holonomy of the prequantum connection around the orbit at radius r, plus
/// the integer weight when the orbit carries a parallel section.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitHolonomy {
    /// exp(2πi·ρ(r)), a unit complex number.
    pub value: Complex64,
    /// Some(k) iff ρ(r) is an integer k (within [`HOLONOMY_INTEGER_TOL`]); the
    /// orbit then carries a parallel section of weight k.
    pub parallel_weight: Option<i64>,
}

pub fn orbit_holonomy(profiles: &ProfilePair, r: f64) -> OrbitHolonomy {
    let rho = profiles.rho(r);
    let value = Complex64::from_polar(1.0, TAU * rho);
    let nearest = rho.round();
    let parallel_weight =
        ((rho - nearest).abs() <= HOLONOMY_INTEGER_TOL).then_some(nearest as i64);
    OrbitHolonomy { value, parallel_weight }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ALL_RHO: [RhoSmoothing; 2] =
        [RhoSmoothing::CubicHermite, RhoSmoothing::QuinticSmoothstep];

    #[test]
    fn rho_clamps_and_passes_through_identity_region() {
        for sm in ALL_RHO {
            let p = ProfilePair::new(3, sm, FSmoothing::QuadraticCap);
            assert_eq!(p.rho(10.0), 3.5);
            assert_eq!(p.rho(-10.0), 2.5);
            assert_eq!(p.rho(3.0), 3.0);
            assert_eq!(p.rho(3.2), 3.2);
            assert_eq!(p.rho(2.8), 2.8);
            assert_eq!(p.rho(2.5), 2.5);
            assert_eq!(p.rho(3.5), 3.5);
        }
    }

    #[test]
    fn rho_is_monotone_and_in_range() {
        for sm in ALL_RHO {
            for m in [-3i64, 0, 2, 5] {
                let p = ProfilePair::new(m, sm, FSmoothing::QuadraticCap);
                let mf = m as f64;
                let mut prev = f64::NEG_INFINITY;
                for i in 0..=10_000 {
                    let r = mf - 1.0 + 2.0 * i as f64 / 10_000.0;
                    let v = p.rho(r);
                    assert!(v >= prev - 1e-15, "rho not monotone at r={r} (m={m}, {sm:?})");
                    assert!(
                        (mf - 0.5..=mf + 0.5).contains(&v),
                        "rho out of range at r={r}: {v}"
                    );
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn rho_prime_matches_finite_differences() {
        let h = 1e-6;
        for sm in ALL_RHO {
            let p = ProfilePair::new(0, sm, FSmoothing::QuadraticCap);
            for i in 0..200 {
                let r = -0.6 + 1.2 * i as f64 / 199.0;
                let fd = (p.rho(r + h) - p.rho(r - h)) / (2.0 * h);
                assert!(
                    (fd - p.rho_prime(r)).abs() < 1e-6,
                    "rho' mismatch at r={r} ({sm:?}): fd={fd}, closed={}",
                    p.rho_prime(r)
                );
            }
        }
    }

    #[test]
    fn cubic_band_is_c1_and_quintic_band_is_c2_at_junctions() {
        let (d, h) = (1e-9, 1e-4);
        for (sm, order) in [(RhoSmoothing::CubicHermite, 1), (RhoSmoothing::QuinticSmoothstep, 2)]
        {
            let p = ProfilePair::new(0, sm, FSmoothing::QuadraticCap);
            for junction in [-0.5, -0.25, 0.25, 0.5] {
                let jump1 = (p.rho_prime(junction - d) - p.rho_prime(junction + d)).abs();
                assert!(jump1 < 1e-7, "first derivative jump at {junction} for {sm:?}: {jump1}");
                if order == 2 {
                    // One-sided second-order estimates of σ'' from the
                    // closed-form σ' on each side of the junction.
                    let left = (3.0 * p.rho_prime(junction) - 4.0 * p.rho_prime(junction - h)
                        + p.rho_prime(junction - 2.0 * h))
                        / (2.0 * h);
                    let right = (-3.0 * p.rho_prime(junction) + 4.0 * p.rho_prime(junction + h)
                        - p.rho_prime(junction + 2.0 * h))
                        / (2.0 * h);
                    assert!(
                        (left - right).abs() < 1e-4,
                        "second derivative jump at {junction}: {left} vs {right}"
                    );
                }
            }
        }
    }

    #[test]
    fn f_quadratic_cap_values() {
        let p = ProfilePair::with_defaults(0);
        assert_eq!(p.f(2.0), 2.0);
        assert_eq!(p.f(0.0), 0.25);
        assert_eq!(p.f(0.5), 0.5);
        assert_eq!(p.f(-0.5), 0.5);
        // C¹ across the cap junction.
        let h = 1e-6;
        let slope = (p.f(0.5 + h) - p.f(0.5 - h)) / (2.0 * h);
        assert!((slope - 1.0).abs() < 1e-5);
    }

    #[test]
    fn f_cosh_blend_matches_abs_at_junction() {
        let p = ProfilePair::new(0, RhoSmoothing::CubicHermite, FSmoothing::CoshBlend);
        assert!((p.f(0.5) - 0.5).abs() < 1e-12);
        assert!((p.f(-0.5) - 0.5).abs() < 1e-12);
        let h = 1e-6;
        let slope = (p.f(0.5 + h) - p.f(0.5 - h)) / (2.0 * h);
        assert!((slope - 1.0).abs() < 1e-5, "slope at junction: {slope}");
        for i in 0..=100 {
            let r = -0.5 + i as f64 / 100.0;
            assert!(p.f(r) > 0.2, "cosh cap should stay positive, f({r}) = {}", p.f(r));
        }
    }

    #[test]
    fn f_is_abs_r_for_nonzero_level() {
        for fs in [FSmoothing::QuadraticCap, FSmoothing::CoshBlend] {
            let p = ProfilePair::new(2, RhoSmoothing::CubicHermite, fs);
            assert_eq!(p.f(0.3), 0.3);
            assert_eq!(p.f(-0.3), 0.3);
            assert_eq!(p.f(2.2), 2.2);
            assert_eq!(p.f(0.0), 0.0); // the one zero f carries away from m = 0
        }
    }

    #[test]
    fn params_validation() {
        assert!(PerturbationParams::new(0, 1.0, 0.0, 1.0, 0.0).is_ok());
        assert!(PerturbationParams::new(0, -0.1, 0.0, 1.0, 0.0).is_err());
        assert!(PerturbationParams::new(0, 0.0, f64::NAN, 1.0, 0.0).is_err());
        assert!(PerturbationParams::new(0, 0.0, 0.0, 0.0, 0.0).unwrap().is_unperturbed());
        assert!(!PerturbationParams::new(0, 0.0, 0.5, 0.0, 0.0).unwrap().is_unperturbed());
    }

    /// Unperturbed coefficient is 2π(n − ρ); at the origin ρ = 0.
    #[test]
    fn coefficient_unperturbed_at_origin() {
        let params = PerturbationParams::new(0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let c = mode_coefficient(params, ProfilePair::with_defaults(0), 1);
        assert!((c.eval(0.0) - TAU).abs() < 1e-15);
    }

    /// With s = 0, t = 1, ε₂ = 0 the flat-region value is 2π·2·(n − m − 1/2).
    #[test]
    fn coefficient_flat_value_case_ii_style() {
        let params = PerturbationParams::new(2, 0.0, 1.0, 0.0, 0.0).unwrap();
        let c = mode_coefficient(params, ProfilePair::with_defaults(2), 2);
        for r in [2.6, 3.0, 7.5, 40.0] {
            assert!((c.eval(r) + TAU).abs() < 1e-12, "c({r}) = {}", c.eval(r));
        }
    }

    /// With s = 1, t = 0, ε₁ = 1, m = 0, n = 0 the right flat region gives
    /// 2π(−1/2 − r/2) = −π(1 + r): the base term −π plus the moment term −πr.
    #[test]
    fn coefficient_flat_value_moment_perturbation() {
        let params = PerturbationParams::new(0, 1.0, 0.0, 1.0, 0.0).unwrap();
        let c = mode_coefficient(params, ProfilePair::with_defaults(0), 0);
        for r in [0.6, 1.0, 3.0, 12.0] {
            let expect = -std::f64::consts::PI * (1.0 + r);
            assert!((c.eval(r) - expect).abs() < 1e-12 * (1.0 + r.abs()));
        }
    }

    /// The evaluator agrees with the flat-region closed form on both ends, for
    /// positive and negative levels.
    #[test]
    fn coefficient_matches_flat_closed_form() {
        for m in [-3i64, 0, 2] {
            let params = PerturbationParams::new(m, 0.7, 1.3, 1.5, 0.5).unwrap();
            for n in [m - 2, m, m + 3] {
                let c = mode_coefficient(params, ProfilePair::with_defaults(m), n);
                let mf = m as f64;
                for dr in [0.51, 1.0, 4.7, 11.0] {
                    let (r_hi, r_lo) = (mf + dr, mf - dr);
                    let scale = 1.0 + c.eval(r_hi).abs().max(c.eval(r_lo).abs());
                    assert!((c.eval(r_hi) - c.eval_flat(r_hi, 1.0)).abs() < 1e-12 * scale);
                    assert!((c.eval(r_lo) - c.eval_flat(r_lo, -1.0)).abs() < 1e-12 * scale);
                }
            }
        }
    }

    #[test]
    fn clifford_relations_hold() {
        let g = CylinderGeometry::new(ProfilePair::with_defaults(0));
        let cr = g.clifford_dr();
        let ct = g.clifford_dtheta();
        let id = [[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                  [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]];
        let cr2 = mat2_mul(&cr, &cr);
        let ct2 = mat2_mul(&ct, &ct);
        let anti = {
            let ab = mat2_mul(&cr, &ct);
            let ba = mat2_mul(&ct, &cr);
            [[ab[0][0] + ba[0][0], ab[0][1] + ba[0][1]],
             [ab[1][0] + ba[1][0], ab[1][1] + ba[1][1]]]
        };
        for i in 0..2 {
            for j in 0..2 {
                assert!((cr2[i][j] + id[i][j]).norm() < 1e-15);
                assert!((ct2[i][j] + id[i][j]).norm() < 1e-15);
                assert!(anti[i][j].norm() < 1e-15);
            }
        }
    }

    #[test]
    fn moment_is_scaled_profile() {
        let p = ProfilePair::with_defaults(1);
        let g = CylinderGeometry::new(p);
        for r in [-4.0, 0.9, 1.0, 1.3, 6.0] {
            assert!((g.moment(r) + TAU * p.rho(r)).abs() < 1e-15);
            assert_eq!(g.moment(r), g.moment_vector_theta(r));
            assert_eq!(g.moment(r), g.connection_dtheta(r));
        }
    }

    #[test]
    fn holonomy_flags_integer_levels() {
        let p0 = ProfilePair::with_defaults(0);
        let h0 = orbit_holonomy(&p0, 0.0);
        assert_eq!(h0.parallel_weight, Some(0));
        assert!((h0.value - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        let p3 = ProfilePair::with_defaults(3);
        let h3 = orbit_holonomy(&p3, 3.0);
        assert_eq!(h3.parallel_weight, Some(3));
        assert!((h3.value - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        // The clamped value m + 1/2 is a half level: holonomy −1, no section.
        let hc = orbit_holonomy(&p3, 30.0);
        assert_eq!(hc.parallel_weight, None);
        assert!((hc.value - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    /// Solve ρ(r) = 0.3 in the bend band and check the holonomy angle there.
    #[test]
    fn holonomy_at_fractional_level() {
        let p = ProfilePair::with_defaults(0);
        let (mut lo, mut hi) = (0.25, 0.5);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if p.rho(mid) < 0.3 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let r = 0.5 * (lo + hi);
        let h = orbit_holonomy(&p, r);
        assert_eq!(h.parallel_weight, None);
        let expect = Complex64::from_polar(1.0, TAU * 0.3);
        assert!((h.value - expect).norm() < 1e-9);
    }

    proptest! {
        #[test]
        fn rho_monotone_under_random_sampling(
            m in -4i64..=4,
            a in -3.0f64..3.0,
            b in -3.0f64..3.0,
            quintic in proptest::bool::ANY,
        ) {
            let sm = if quintic { RhoSmoothing::QuinticSmoothstep } else { RhoSmoothing::CubicHermite };
            let p = ProfilePair::new(m, sm, FSmoothing::QuadraticCap);
            let mf = m as f64;
            let (x, y) = if a <= b { (mf + a, mf + b) } else { (mf + b, mf + a) };
            prop_assert!(p.rho(x) <= p.rho(y) + 1e-15);
        }

        #[test]
        fn holonomy_is_unitary(m in -4i64..=4, r in -20.0f64..20.0) {
            let p = ProfilePair::with_defaults(m);
            let h = orbit_holonomy(&p, r);
            prop_assert!((h.value.norm() - 1.0).abs() < 1e-12);
        }
    }
}
