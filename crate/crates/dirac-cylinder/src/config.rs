//! Key=value run configuration, shared by the command line and config files.

use crate::numeric::{Discretization, Thresholds};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::invalid(format!("unknown output format {other:?}"))),
        }
    }
}

/// Partially-specified run settings. Unset fields fall back to the library
/// defaults; a settings file can be overridden field-by-field by flags.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunConfig {
    pub half_width: Option<f64>,
    pub h: Option<f64>,
    pub tau_zero: Option<f64>,
    pub tau_gap: Option<f64>,
    pub output: Option<OutputFormat>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    /// `self` where set, `base` otherwise.
    pub fn merged_over(self, base: RunConfig) -> RunConfig {
        RunConfig {
            half_width: self.half_width.or(base.half_width),
            h: self.h.or(base.h),
            tau_zero: self.tau_zero.or(base.tau_zero),
            tau_gap: self.tau_gap.or(base.tau_gap),
            output: self.output.or(base.output),
            jobs: self.jobs.or(base.jobs),
        }
    }

    pub fn discretization(&self) -> Result<Discretization> {
        let d = Discretization::default();
        Discretization::new(self.half_width.unwrap_or(d.half_width), self.h.unwrap_or(d.h))
    }

    pub fn thresholds(&self) -> Result<Thresholds> {
        let t = Thresholds::default();
        Thresholds::new(self.tau_zero.unwrap_or(t.tau_zero), self.tau_gap.unwrap_or(t.tau_gap))
    }

    pub fn format(&self) -> OutputFormat {
        self.output.unwrap_or_default()
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::invalid(format!("bad value {value:?} for {key}")))
}

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
/// Keys: `half_width` (alias `R`), `h`, `tau_zero`, `tau_gap`, `output`,
/// `jobs`.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::invalid(format!("line {}: expected key=value", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "half_width" | "R" => cfg.half_width = Some(parse_num(key, value)?),
            "h" => cfg.h = Some(parse_num(key, value)?),
            "tau_zero" => cfg.tau_zero = Some(parse_num(key, value)?),
            "tau_gap" => cfg.tau_gap = Some(parse_num(key, value)?),
            "output" => cfg.output = Some(value.parse()?),
            "jobs" => cfg.jobs = Some(parse_num(key, value)?),
            other => {
                return Err(Error::invalid(format!(
                    "line {}: unknown setting {other:?}",
                    lineno + 1
                )))
            }
        }
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_files_with_comments_and_aliases() {
        let cfg = parse_config("# grid\nR = 16\nh=0.005\n\noutput = csv\njobs=2\n").unwrap();
        assert_eq!(cfg.half_width, Some(16.0));
        assert_eq!(cfg.h, Some(0.005));
        assert_eq!(cfg.output, Some(OutputFormat::Csv));
        assert_eq!(cfg.jobs, Some(2));
        assert_eq!(cfg.tau_zero, None);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_numbers() {
        assert!(parse_config("width = 3\n").is_err());
        assert!(parse_config("h = fast\n").is_err());
        assert!(parse_config("just a line\n").is_err());
    }

    #[test]
    fn flags_override_file_settings_fieldwise() {
        let file = parse_config("R = 16\nh = 0.005\n").unwrap();
        let flags = RunConfig { h: Some(0.02), ..RunConfig::default() };
        let merged = flags.merged_over(file);
        assert_eq!(merged.half_width, Some(16.0));
        assert_eq!(merged.h, Some(0.02));
        let disc = merged.discretization().unwrap();
        assert_eq!((disc.half_width, disc.h), (16.0, 0.02));
    }

    #[test]
    fn defaults_kick_in_when_unset() {
        let cfg = RunConfig::default();
        let disc = cfg.discretization().unwrap();
        assert_eq!((disc.half_width, disc.h), (12.0, 0.01));
        let thr = cfg.thresholds().unwrap();
        assert_eq!((thr.tau_zero, thr.tau_gap), (1e-6, 1e-3));
        assert_eq!(cfg.format(), OutputFormat::Json);
    }
}
