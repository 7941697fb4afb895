//! Error type shared across the workbench.

use thiserror::Error;

/// Why a spectrum query declined to give a yes/no kernel answer.
#[derive(Debug, Clone, PartialEq)]
pub enum Indeterminacy {
    /// An eigenvalue landed in the dead band between `tau_zero` and `tau_gap`.
    EigenvalueGap { lambda: f64 },
    /// The Dirichlet window provably cannot resolve a candidate zero mode
    /// (its turning region sits at or beyond the boundary). Retry with
    /// `half_width >= suggested_half_width`.
    Truncation { suggested_half_width: f64 },
    /// The eigenvalue test and the tail analysis of the mode profile disagree.
    Conflict { lambda: f64 },
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// s = t = 0: the unperturbed family carries no Fredholm deformation data,
    /// so kernel queries refuse to answer rather than report a weight set.
    #[error("operator family is not Fredholm at s = t = 0")]
    NonFredholm,

    /// The discretized spectrum does not support a clean kernel decision.
    #[error("indeterminate spectrum for mode n = {n}: {detail}")]
    IndeterminateSpectrum { n: i64, detail: String, cause: Indeterminacy },

    /// Bad parameters, bad configuration, or a violated operation precondition.
    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn indeterminate(n: i64, cause: Indeterminacy) -> Self {
        let detail = match &cause {
            Indeterminacy::EigenvalueGap { lambda } => format!(
                "eigenvalue {lambda:.3e} falls between tau_zero and tau_gap; refine R or h"
            ),
            Indeterminacy::Truncation { suggested_half_width } => format!(
                "Dirichlet window too small to resolve the mode; retry with R >= {suggested_half_width:.1}"
            ),
            Indeterminacy::Conflict { lambda } => format!(
                "eigenvalue test ({lambda:.3e}) contradicts the tail analysis; refine R or h"
            ),
        };
        Error::IndeterminateSpectrum { n, detail, cause }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
