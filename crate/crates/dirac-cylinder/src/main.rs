fn main() {
    std::process::exit(dirac_cylinder::cli::run());
}
