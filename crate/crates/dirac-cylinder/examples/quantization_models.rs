//! The three rotation-invariant model geometries, level by level: regular
//! levels quantize (local index 1), fixed-point levels carry the boundary
//! contribution, and levels outside the moment image contribute nothing.

use dirac_cylinder::models::{classify_level, local_index, total_character_oracle, LevelClassification, RotationModel};

fn print_model(name: &str, model: &RotationModel, window: (i64, i64)) {
    println!("{name}");
    for n in window.0..=window.1 {
        let status = match classify_level(model, n) {
            LevelClassification::Regular => "regular",
            LevelClassification::FixedPoint => "fixed point",
            LevelClassification::OutsideImage => "outside image",
        };
        println!("  level {n:>3}: {status:<14} local index {}", local_index(model, n));
    }
    println!();
}

fn main() {
    print_model("cylinder about level 4", &RotationModel::cylinder(4), (1, 7));
    print_model(
        "disc with minimum at level 0",
        &RotationModel::disc(0, dirac_cylinder::models::Polarity::Min),
        (-2, 4),
    );

    let sphere = RotationModel::sphere(3).unwrap();
    print_model("sphere with levels 0..=3", &sphere, (-2, 5));

    let total = total_character_oracle(&sphere).unwrap();
    let localized = dirac_cylinder::models::rr_loc_character_model(&sphere);
    let window = (-2, 5);
    println!("sphere character check over {window:?}");
    println!("  sum of local contributions: {:?}", localized.evaluate_window(window));
    println!("  closed-geometry total:      {:?}", total.evaluate_window(window));
    println!(
        "\nOn the closed model the localized contributions already add up to the global\n\
         character: one unit at every level the moment image covers, fixed points\n\
         included, and nothing outside."
    );
}
