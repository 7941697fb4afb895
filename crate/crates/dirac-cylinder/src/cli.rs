//! Command-line front end.
//!
//! Subcommands: `kernel`, `index`, `sweep`, `model`, `spectrum`, `verify`.
//! Exit codes: 0 success, 1 usage, 2 verification failure, 3 non-Fredholm
//! input, 4 indeterminate spectrum.

use crate::character::CharacterFunctional;
use crate::config::{parse_config, OutputFormat, RunConfig};
use crate::models::{classify_level, local_index, LevelClassification, RotationModel};
use crate::numeric::{numeric_kernel, Discretization, Thresholds};
use crate::profiles::PerturbationParams;
use crate::report::{
    character_json, float_cell, params_json, spectral_report_json, weight_set_json, CsvTable,
    JsonValue,
};
use crate::symbolic::{kernel_weights, sweep_ratios, CaseLabel, Operator, WeightSet, WeightSetKind};
use crate::verify::{run_suite, Suite};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

#[derive(Parser, Debug)]
#[command(
    name = "dirac-cylinder",
    version,
    about = "Kernels and equivariant index characters of a perturbed operator family on the cylinder"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format written to stdout.
    #[arg(long, global = true, value_name = "json|csv")]
    output: Option<String>,

    /// Truncation half-width of the numerical window [m-R, m+R].
    #[arg(long = "R", global = true, value_name = "HALF_WIDTH")]
    half_width: Option<f64>,

    /// Grid step of the numerical window.
    #[arg(long, global = true)]
    h: Option<f64>,

    /// Eigenvalues below this count as numerical zeros.
    #[arg(long = "tau-zero", global = true, value_name = "TAU")]
    tau_zero: Option<f64>,

    /// Clean decisions need the rest of the spectrum above this.
    #[arg(long = "tau-gap", global = true, value_name = "TAU")]
    tau_gap: Option<f64>,

    /// Worker threads for per-mode fan-out (results are order-independent).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// key=value settings file; explicit flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<std::path::PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
struct ParamFlags {
    /// Level shift (center of the profile bend).
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    /// Clifford-term strength.
    #[arg(long, default_value_t = 0.0)]
    s: f64,
    /// Orbitwise-term strength.
    #[arg(long, default_value_t = 0.0)]
    t: f64,
    /// Clifford-term exponent.
    #[arg(long, default_value_t = 0.0)]
    eps1: f64,
    /// Orbitwise-term exponent.
    #[arg(long, default_value_t = 0.0)]
    eps2: f64,
}

impl ParamFlags {
    fn build(self) -> Result<PerturbationParams> {
        PerturbationParams::new(self.m, self.s, self.t, self.eps1, self.eps2)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kernel weight set of one operator of the pair, optionally cross-checked
    /// mode by mode against the discretized spectrum.
    Kernel {
        #[command(flatten)]
        params: ParamFlags,
        /// Which member of the pair: plus (the operator) or minus (its adjoint).
        #[arg(long, default_value = "plus", value_name = "plus|minus")]
        operator: String,
        /// Smallest mode of the report window (default m-6).
        #[arg(long = "n-min", allow_hyphen_values = true)]
        n_min: Option<i64>,
        /// Largest mode of the report window (default m+6).
        #[arg(long = "n-max", allow_hyphen_values = true)]
        n_max: Option<i64>,
        /// Also compute the per-mode spectral reports over the window.
        #[arg(long)]
        numeric: bool,
    },
    /// Index character over a weight window: localized Riemann-Roch (rr-loc)
    /// or transverse (chi).
    Index {
        /// Character scheme: rr-loc or transverse.
        #[arg(long, value_name = "rr-loc|transverse")]
        scheme: String,
        /// Level shift.
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// Orbitwise strength (rr-loc only).
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// First exponent.
        #[arg(long, default_value_t = 1.0)]
        eps1: f64,
        /// Second exponent (transverse only; must stay below eps1).
        #[arg(long, default_value_t = 0.0)]
        eps2: f64,
        /// Weight window lo:hi (default m-6:m+6).
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Kernel-dimension staircase over strength ratios at a common exponent.
    Sweep {
        /// Level shift.
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// Comma-separated list of s/t ratios.
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
        ratios: Vec<f64>,
        /// Common exponent of both terms.
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
    },
    /// Level classification, local indices, and characters of a catalog model.
    Model {
        /// Model name: cylinder:M, disc:N0:min, disc:N0:max, or sphere:K.
        name: String,
        /// Level window lo:hi (default depends on the model).
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Low spectrum of both pair members for a single mode.
    Spectrum {
        #[command(flatten)]
        params: ParamFlags,
        /// Fourier mode to analyze.
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Run the verification catalog and exit nonzero on any failure.
    Verify {
        /// Check suite: all, appendix-a, quantization, or contrast.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Parses "lo:hi" with either bound possibly negative.
fn parse_window(text: &str) -> Result<(i64, i64)> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| Error::invalid(format!("window {text:?} is not of the form lo:hi")))?;
    let lo: i64 =
        lo.trim().parse().map_err(|_| Error::invalid(format!("bad window bound {lo:?}")))?;
    let hi: i64 =
        hi.trim().parse().map_err(|_| Error::invalid(format!("bad window bound {hi:?}")))?;
    if lo > hi {
        return Err(Error::invalid(format!("window {text:?} is empty")));
    }
    Ok((lo, hi))
}

fn parse_operator(text: &str) -> Result<Operator> {
    match text {
        "plus" => Ok(Operator::DPlus),
        "minus" => Ok(Operator::DMinus),
        other => Err(Error::invalid(format!("operator must be plus or minus, got {other:?}"))),
    }
}

fn operator_name(op: Operator) -> &'static str {
    match op {
        Operator::DPlus => "plus",
        Operator::DMinus => "minus",
    }
}

struct Settings {
    disc: Discretization,
    thresholds: Thresholds,
    format: OutputFormat,
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::InvalidInput(_) => 1,
                Error::NonFredholm => 3,
                Error::IndeterminateSpectrum { .. } => 4,
            }
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let flags = RunConfig {
        half_width: cli.half_width,
        h: cli.h,
        tau_zero: cli.tau_zero,
        tau_gap: cli.tau_gap,
        output: cli.output.as_deref().map(str::parse).transpose()?,
        jobs: cli.jobs,
    };
    let merged = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::invalid(format!("cannot read config {}: {e}", path.display()))
            })?;
            flags.merged_over(parse_config(&text)?)
        }
        None => flags,
    };
    let settings = Settings {
        disc: merged.discretization()?,
        thresholds: merged.thresholds()?,
        format: merged.format(),
    };
    let body = || dispatch(cli.command, &settings);
    match merged.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::invalid(format!("cannot build worker pool: {e}")))?
            .install(body),
        None => body(),
    }
}

fn dispatch(command: Command, settings: &Settings) -> Result<i32> {
    match command {
        Command::Kernel { params, operator, n_min, n_max, numeric } => {
            cmd_kernel(params, &operator, n_min, n_max, numeric, settings)
        }
        Command::Index { scheme, m, t, eps1, eps2, window } => {
            cmd_index(&scheme, m, t, eps1, eps2, window.as_deref(), settings)
        }
        Command::Sweep { m, ratios, eps } => cmd_sweep(m, &ratios, eps, settings),
        Command::Model { name, window } => cmd_model(&name, window.as_deref(), settings),
        Command::Spectrum { params, n } => cmd_spectrum(params, n, settings),
        Command::Verify { suite } => cmd_verify(&suite, settings),
    }
}

fn cmd_kernel(
    flags: ParamFlags,
    operator: &str,
    n_min: Option<i64>,
    n_max: Option<i64>,
    numeric: bool,
    settings: &Settings,
) -> Result<i32> {
    let op = parse_operator(operator)?;
    let params = flags.build()?;
    let window = (n_min.unwrap_or(params.m - 6), n_max.unwrap_or(params.m + 6));
    if window.0 > window.1 {
        return Err(Error::invalid(format!("mode window {}..{} is empty", window.0, window.1)));
    }

    let symbolic = match kernel_weights(params, op, window) {
        Ok(ws) => ws,
        Err(Error::NonFredholm) => {
            // Report the degenerate family member in-band, then signal it.
            let ws = WeightSet {
                kind: WeightSetKind::NonFredholm,
                case: CaseLabel::General,
                threshold_modes: Vec::new(),
            };
            let out = JsonValue::object([
                ("params", params_json(&params)),
                ("operator", JsonValue::Str(operator_name(op).into())),
                ("symbolic", weight_set_json(&ws)),
                ("numeric", JsonValue::Array(Vec::new())),
            ]);
            println!("{}", out.to_canonical());
            return Ok(3);
        }
        Err(e) => return Err(e),
    };

    let reports = if numeric {
        (window.0..=window.1)
            .into_par_iter()
            .map(|n| numeric_kernel(params, n, &settings.disc, &settings.thresholds))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };

    match settings.format {
        OutputFormat::Json => {
            let out = JsonValue::object([
                ("params", params_json(&params)),
                ("operator", JsonValue::Str(operator_name(op).into())),
                ("symbolic", weight_set_json(&symbolic)),
                ("numeric", JsonValue::Array(reports.iter().map(spectral_report_json).collect())),
            ]);
            println!("{}", out.to_canonical());
        }
        OutputFormat::Csv => {
            let mut table = CsvTable::new(&[
                "n",
                "symbolic",
                "kernel_plus",
                "kernel_minus",
                "lambda_plus",
                "lambda_minus",
            ]);
            for (i, n) in (window.0..=window.1).enumerate() {
                let sym = i64::from(symbolic.kind.contains(n)).to_string();
                let row = if numeric {
                    let rep = &reports[i];
                    vec![
                        n.to_string(),
                        sym,
                        i64::from(rep.kernel_plus).to_string(),
                        i64::from(rep.kernel_minus).to_string(),
                        float_cell(rep.low_plus[0]),
                        float_cell(rep.low_minus[0]),
                    ]
                } else {
                    vec![n.to_string(), sym, String::new(), String::new(), String::new(), String::new()]
                };
                table.push(row);
            }
            print!("{}", table.to_csv());
        }
    }
    Ok(0)
}

fn character_csv(chi: &CharacterFunctional, window: (i64, i64)) -> String {
    let mut table = CsvTable::new(&["n", "multiplicity"]);
    for (n, value) in (window.0..=window.1).zip(chi.evaluate_window(window)) {
        table.push(vec![n.to_string(), value.to_string()]);
    }
    table.to_csv()
}

fn cmd_index(
    scheme: &str,
    m: i64,
    t: f64,
    eps1: f64,
    eps2: f64,
    window: Option<&str>,
    settings: &Settings,
) -> Result<i32> {
    let window = match window {
        Some(text) => parse_window(text)?,
        None => (m - 6, m + 6),
    };
    let chi = match scheme {
        "rr-loc" => crate::character::rr_loc_character(m, t, eps1)?,
        "transverse" => crate::character::chi_character(m, eps1, eps2)?,
        other => {
            return Err(Error::invalid(format!(
                "scheme must be rr-loc or transverse, got {other:?}"
            )))
        }
    };
    match settings.format {
        OutputFormat::Json => println!("{}", character_json(&chi, window).to_canonical()),
        OutputFormat::Csv => print!("{}", character_csv(&chi, window)),
    }
    Ok(0)
}

fn cmd_sweep(m: i64, ratios: &[f64], eps: f64, settings: &Settings) -> Result<i32> {
    let rows = sweep_ratios(m, ratios, eps)?;
    match settings.format {
        OutputFormat::Json => {
            let out = JsonValue::object([
                ("m", JsonValue::Int(m)),
                ("eps", JsonValue::Float(eps)),
                (
                    "rows",
                    JsonValue::Array(
                        rows.iter()
                            .map(|row| {
                                JsonValue::object([
                                    ("ratio", JsonValue::Float(row.ratio)),
                                    ("kernel_dim", JsonValue::Int(row.dim as i64)),
                                    (
                                        "weights",
                                        JsonValue::Array(
                                            row.weights.iter().map(|&w| JsonValue::Int(w)).collect(),
                                        ),
                                    ),
                                ])
                            })
                            .collect(),
                    ),
                ),
            ]);
            println!("{}", out.to_canonical());
        }
        OutputFormat::Csv => {
            let mut table = CsvTable::new(&["ratio", "kernel_dim", "weights"]);
            for row in &rows {
                table.push(vec![
                    float_cell(row.ratio),
                    row.dim.to_string(),
                    row.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" "),
                ]);
            }
            print!("{}", table.to_csv());
        }
    }
    Ok(0)
}

fn classification_name(c: LevelClassification) -> &'static str {
    match c {
        LevelClassification::Regular => "regular",
        LevelClassification::FixedPoint => "fixed_point",
        LevelClassification::OutsideImage => "outside_image",
    }
}

fn default_model_window(model: &RotationModel) -> (i64, i64) {
    match *model {
        RotationModel::Cylinder { level } => (level - 6, level + 6),
        RotationModel::Disc { level0, polarity: crate::models::Polarity::Min } => {
            (level0 - 2, level0 + 10)
        }
        RotationModel::Disc { level0, polarity: crate::models::Polarity::Max } => {
            (level0 - 10, level0 + 2)
        }
        RotationModel::Sphere { top } => (-2, top + 2),
    }
}

fn cmd_model(name: &str, window: Option<&str>, settings: &Settings) -> Result<i32> {
    let model: RotationModel = name.parse()?;
    let window = match window {
        Some(text) => parse_window(text)?,
        None => default_model_window(&model),
    };
    let rr = crate::models::rr_loc_character_model(&model);
    let levels: Vec<(i64, LevelClassification, i64)> = (window.0..=window.1)
        .map(|n| (n, classify_level(&model, n), local_index(&model, n)))
        .collect();
    match settings.format {
        OutputFormat::Json => {
            let mut entries = vec![
                ("model", JsonValue::Str(model.to_string())),
                (
                    "levels",
                    JsonValue::Array(
                        levels
                            .iter()
                            .map(|&(n, c, ix)| {
                                JsonValue::object([
                                    ("level", JsonValue::Int(n)),
                                    ("status", JsonValue::Str(classification_name(c).into())),
                                    ("local_index", JsonValue::Int(ix)),
                                ])
                            })
                            .collect(),
                    ),
                ),
                ("localized", character_json(&rr, window)),
            ];
            if let Ok(chi) = crate::models::chi_character_model(&model) {
                entries.push(("transverse", character_json(&chi, window)));
            }
            if let Ok(total) = crate::models::total_character_oracle(&model) {
                entries.push(("total", character_json(&total, window)));
            }
            println!("{}", JsonValue::object(entries).to_canonical());
        }
        OutputFormat::Csv => {
            let mut table = CsvTable::new(&["level", "status", "local_index"]);
            for &(n, c, ix) in &levels {
                table.push(vec![n.to_string(), classification_name(c).into(), ix.to_string()]);
            }
            print!("{}", table.to_csv());
        }
    }
    Ok(0)
}

fn cmd_spectrum(flags: ParamFlags, n: i64, settings: &Settings) -> Result<i32> {
    let params = flags.build()?;
    let report = numeric_kernel(params, n, &settings.disc, &settings.thresholds)?;
    match settings.format {
        OutputFormat::Json => println!("{}", spectral_report_json(&report).to_canonical()),
        OutputFormat::Csv => {
            let mut table = CsvTable::new(&["side", "k", "lambda", "kernel"]);
            for (side, lows, kernel) in [
                ("plus", &report.low_plus, report.kernel_plus),
                ("minus", &report.low_minus, report.kernel_minus),
            ] {
                for (k, &lambda) in lows.iter().enumerate() {
                    table.push(vec![
                        side.into(),
                        k.to_string(),
                        float_cell(lambda),
                        i64::from(kernel).to_string(),
                    ]);
                }
            }
            print!("{}", table.to_csv());
        }
    }
    Ok(0)
}

fn cmd_verify(suite: &str, settings: &Settings) -> Result<i32> {
    let suite: Suite = suite.parse()?;
    let outcomes = run_suite(suite);
    for outcome in &outcomes {
        eprintln!("{outcome}");
    }
    match settings.format {
        OutputFormat::Json => {
            let out = JsonValue::Array(
                outcomes
                    .iter()
                    .map(|c| {
                        JsonValue::object([
                            ("id", JsonValue::Str(c.id.into())),
                            ("name", JsonValue::Str(c.name.into())),
                            ("passed", JsonValue::Bool(c.passed)),
                            ("details", JsonValue::Str(c.details.clone())),
                        ])
                    })
                    .collect(),
            );
            println!("{}", out.to_canonical());
        }
        OutputFormat::Csv => {
            let mut table = CsvTable::new(&["id", "name", "passed", "details"]);
            for c in &outcomes {
                table.push(vec![
                    c.id.into(),
                    c.name.into(),
                    i64::from(c.passed).to_string(),
                    c.details.clone(),
                ]);
            }
            print!("{}", table.to_csv());
        }
    }
    Ok(if outcomes.iter().all(|c| c.passed) { 0 } else { 2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_parsing_accepts_negative_bounds() {
        assert_eq!(parse_window("-1:6").unwrap(), (-1, 6));
        assert_eq!(parse_window(" -4 : -2 ").unwrap(), (-4, -2));
        assert!(parse_window("5:1").is_err());
        assert!(parse_window("nope").is_err());
    }

    #[test]
    fn operator_names_round_trip() {
        for op in [Operator::DPlus, Operator::DMinus] {
            assert_eq!(parse_operator(operator_name(op)).unwrap(), op);
        }
    }

    #[test]
    fn cli_definition_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
