//! Symmetric tridiagonal matrices with Sturm-sequence eigenvalue counting and
//! bisection extraction. This is the entire linear-algebra footprint of the
//! numeric oracle: the discretized Schrödinger forms are tridiagonal, and
//! kernel decisions only ever need "how many eigenvalues lie below λ".

/// Symmetric tridiagonal matrix: `diag` of length n, `off` of length n − 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty(), "matrix must have at least one row");
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length must be n - 1");
        assert!(
            diag.iter().chain(off.iter()).all(|x| x.is_finite()),
            "matrix entries must be finite"
        );
        SymTridiag { diag, off }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `lambda`, by counting negative
    /// pivots of the LDLᵀ factorization of (A − λI). A pivot that lands on
    /// exactly zero (λ equal to a Ritz value of a leading minor) is nudged to
    /// +tiny so exact ties resolve as "not below".
    pub fn count_below(&self, lambda: f64) -> usize {
        debug_assert!(lambda.is_finite());
        let mut count = 0;
        let mut d = self.diag[0] - lambda;
        if d == 0.0 {
            d = f64::MIN_POSITIVE;
        }
        if d < 0.0 {
            count += 1;
        }
        for i in 1..self.n() {
            let b = self.off[i - 1];
            d = (self.diag[i] - lambda) - b * b / d;
            if d == 0.0 {
                d = f64::MIN_POSITIVE;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Interval certain to contain the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let n = self.n();
        for i in 0..n {
            let radius = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - radius);
            hi = hi.max(self.diag[i] + radius);
        }
        (lo, hi)
    }

    /// The k-th smallest eigenvalue (0-based), by bisection on the count.
    /// Bisection runs until no representable midpoint remains, so the result
    /// is the eigenvalue rounded toward −∞ — bit-exact for spectra whose
    /// values are representable (diagonal matrices, 1×1 instances).
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.n(), "eigenvalue index {k} out of range for n = {}", self.n());
        let (glo, ghi) = self.gershgorin();
        let (mut lo, mut hi) = (glo - 1.0, ghi + 1.0);
        // Invariant: count(lo) ≤ k < count(hi).
        loop {
            let mid = lo + 0.5 * (hi - lo);
            if !(mid > lo && mid < hi) {
                return lo;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    /// The `count` smallest eigenvalues, ascending.
    pub fn smallest(&self, count: usize) -> Vec<f64> {
        (0..count.min(self.n())).map(|k| self.eigenvalue(k)).collect()
    }
}

/// Number of eigenvalues of `matrix` strictly below `lambda`.
pub fn count_eigen_below(matrix: &SymTridiag, lambda: f64) -> usize {
    matrix.count_below(lambda)
}
