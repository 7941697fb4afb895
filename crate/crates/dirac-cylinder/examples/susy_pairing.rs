//! The two Schrodinger forms of one mode are supersymmetric partners: away
//! from zero their Dirichlet spectra coincide, and only one of them keeps the
//! zero mode. Pairing quality improves quadratically as the grid refines.

use dirac_cylinder::numeric::{low_spectrum_above, schrodinger_matrix, Discretization, SchrodingerForm};
use dirac_cylinder::profiles::{mode_coefficient, PerturbationParams, ProfilePair};

fn main() {
    let params = PerturbationParams::new(1, 1.0, 1.0, 1.0, 1.0).unwrap();
    let n = 2;
    let coef = mode_coefficient(params, ProfilePair::with_defaults(1), n);

    println!("mode n = {n} of the family m = 1, s = t = 1, eps = (1, 1)\n");
    println!("{:>8}  {:>22}  {:>22}  {:>10}", "h", "plus-form eigenvalue", "minus-form eigenvalue", "mismatch");
    for h in [0.04, 0.02, 0.01] {
        let disc = Discretization { h, ..Discretization::default() };
        let plus = schrodinger_matrix(&coef, &disc, SchrodingerForm::StarLL);
        let minus = schrodinger_matrix(&coef, &disc, SchrodingerForm::LLStar);
        // skip the zero mode of the plus form; compare the paired excitations
        let p = low_spectrum_above(&plus, 1.0, 3);
        let q = low_spectrum_above(&minus, 1.0, 3);
        for k in 0..3 {
            let label = if k == 0 { format!("{h:>8}") } else { " ".repeat(8) };
            println!("{label}  {:>22.12}  {:>22.12}  {:>10.2e}", p[k], q[k], (p[k] - q[k]).abs());
        }
    }
    println!(
        "\nThe mismatch shrinks like h^2: the centered difference breaks the exact\n\
         factorization by a symmetrization defect of that order, the same defect that\n\
         sets the width of the zero-mode confirmation band."
    );
}
