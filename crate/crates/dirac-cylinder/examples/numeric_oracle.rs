//! What the finite-window oracle actually does: classify each tail exactly,
//! confirm claimed zero modes spectrally, and abstain — rather than guess —
//! when the Dirichlet window cannot separate a candidate from the edge.

use dirac_cylinder::numeric::{numeric_kernel, Discretization, Thresholds};
use dirac_cylinder::profiles::PerturbationParams;
use dirac_cylinder::{Error, Indeterminacy};

fn main() {
    let thr = Thresholds::default();

    // A mode whose profile grows on one side is decided by the tail algebra
    // alone. The truncated well still shows near-zero Dirichlet resonances,
    // which is exactly why the spectrum is never consulted for such modes.
    let params = PerturbationParams::new(-2, 1.0, 0.0, 1.0, 0.0).unwrap();
    let report = numeric_kernel(params, -5, &Discretization::default(), &thr).unwrap();
    println!(
        "growing-tail mode   n = {:>2}: kernel_plus = {}, kernel_minus = {}",
        report.n, report.kernel_plus, report.kernel_minus
    );
    println!("  lowest Dirichlet eigenvalues (plus form): {:?}", report.low_plus);

    // A genuine zero mode: the lowest eigenvalue sits inside the defect band
    // and the first excitation is far above it.
    let params = PerturbationParams::new(1, 1.0, 1.0, 1.0, 1.0).unwrap();
    let report = numeric_kernel(params, 2, &Discretization::default(), &thr).unwrap();
    println!("\nconfirmed zero mode n = {:>2}: kernel_plus = {}", report.n, report.kernel_plus);
    println!("  low_plus = {:?}", report.low_plus);

    // A candidate the default window cannot resolve: the oracle abstains with
    // a concrete retry suggestion instead of reporting a guess.
    let params = PerturbationParams::new(0, 1.0, 0.0, 1.0, 0.0).unwrap();
    match numeric_kernel(params, -6, &Discretization::default(), &thr) {
        Err(Error::IndeterminateSpectrum { n, cause: Indeterminacy::Truncation { suggested_half_width }, .. }) => {
            println!("\nmode n = {n}: window too small, retry with R >= {suggested_half_width}");
            let disc = Discretization { half_width: suggested_half_width + 1.0, ..Discretization::default() };
            let report = numeric_kernel(params, -6, &disc, &thr).unwrap();
            println!("  at R = {}: kernel_plus = {}", disc.half_width, report.kernel_plus);
        }
        other => println!("unexpected: {other:?}"),
    }
}
