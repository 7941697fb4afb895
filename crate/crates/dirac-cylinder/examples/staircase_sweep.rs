//! Kernel dimension along the coupling ray s = ratio * t: a staircase that
//! jumps exactly when the shifted level crosses an integer, with threshold
//! ratios excluded from both neighbouring steps.

use dirac_cylinder::symbolic::sweep_ratios;

fn main() {
    let m = 1;
    let ratios: Vec<f64> = (0..=14).map(|k| 0.25 * k as f64).collect();
    let rows = sweep_ratios(m, &ratios, 1.0).unwrap();

    println!("m = {m}, eps1 = eps2 = 1, t = 1, s = ratio\n");
    println!("{:>6}  {:>4}  weights", "ratio", "dim");
    for row in &rows {
        println!("{:>6.2}  {:>4}  {:?}", row.ratio, row.dim, row.weights);
    }
    println!(
        "\nEach step holds the integers strictly inside the open interval between the\n\
         two asymptotic level shifts; a ratio that puts an endpoint on an integer\n\
         drops that weight, so the dimension is not monotone in the ratio."
    );
}
