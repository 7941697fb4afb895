//! Catalog of rotation-invariant model surfaces and their index characters.
//!
//! Each model is described by the integer levels its moment map reaches and
//! by its circle-action fixed points. The localized Riemann–Roch character
//! counts one ray per level inside the moment image; on a closed model this
//! reproduces the global character exactly, while on open models it is the
//! honest localized answer (cofinite supports are kept exact, never
//! truncated to a window).

use crate::character::{chi_character, CharacterFunctional, WeightSupport};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Which end of the moment interval a disc's fixed point sits at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RotationModel {
    /// Open cylinder around level `level`: moment image (level−½, level+½),
    /// no fixed points.
    Cylinder { level: i64 },
    /// Disc with one fixed point at `level0`; Min means the image is
    /// [level0, ∞), Max the mirror (−∞, level0].
    Disc { level0: i64, polarity: Polarity },
    /// Closed model: image [0, top] with fixed points at both ends.
    Sphere { top: i64 },
}

impl RotationModel {
    pub fn cylinder(level: i64) -> Self {
        RotationModel::Cylinder { level }
    }

    pub fn disc(level0: i64, polarity: Polarity) -> Self {
        RotationModel::Disc { level0, polarity }
    }

    pub fn sphere(top: i64) -> Result<Self> {
        if top < 1 {
            return Err(Error::invalid(format!(
                "sphere needs a positive top level, got {top}"
            )));
        }
        Ok(RotationModel::Sphere { top })
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, RotationModel::Sphere { .. })
    }

    pub fn fixed_point_levels(&self) -> Vec<i64> {
        match self {
            RotationModel::Cylinder { .. } => vec![],
            RotationModel::Disc { level0, .. } => vec![*level0],
            RotationModel::Sphere { top } => vec![0, *top],
        }
    }
}

impl fmt::Display for RotationModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RotationModel::Cylinder { level } => write!(f, "cylinder:{level}"),
            RotationModel::Disc { level0, polarity: Polarity::Min } => write!(f, "disc:{level0}:min"),
            RotationModel::Disc { level0, polarity: Polarity::Max } => write!(f, "disc:{level0}:max"),
            RotationModel::Sphere { top } => write!(f, "sphere:{top}"),
        }
    }
}

impl FromStr for RotationModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let level = |p: &str| {
            p.parse::<i64>()
                .map_err(|_| Error::invalid(format!("bad level {p:?} in model {s:?}")))
        };
        match parts.as_slice() {
            ["cylinder", l] => Ok(RotationModel::cylinder(level(l)?)),
            ["disc", l, "min"] => Ok(RotationModel::disc(level(l)?, Polarity::Min)),
            ["disc", l, "max"] => Ok(RotationModel::disc(level(l)?, Polarity::Max)),
            ["sphere", k] => RotationModel::sphere(level(k)?),
            _ => Err(Error::invalid(format!(
                "unknown model {s:?} (expected cylinder:M, disc:N:min, disc:N:max, or sphere:K)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelClassification {
    /// The moment map never reaches this level.
    OutsideImage,
    /// Interior level with a free orbit circle.
    Regular,
    /// The level of a circle-action fixed point.
    FixedPoint,
}

pub fn classify_level(model: &RotationModel, n: i64) -> LevelClassification {
    use LevelClassification::*;
    match model {
        // The open interval (level−½, level+½) contains exactly one integer.
        RotationModel::Cylinder { level } => {
            if n == *level {
                Regular
            } else {
                OutsideImage
            }
        }
        RotationModel::Disc { level0, polarity } => {
            let inside = match polarity {
                Polarity::Min => n > *level0,
                Polarity::Max => n < *level0,
            };
            if n == *level0 {
                FixedPoint
            } else if inside {
                Regular
            } else {
                OutsideImage
            }
        }
        RotationModel::Sphere { top } => {
            if n == 0 || n == *top {
                FixedPoint
            } else if n > 0 && n < *top {
                Regular
            } else {
                OutsideImage
            }
        }
    }
}

/// Local index contribution of one level: 1 whenever the level meets the
/// moment image (a regular circle contributes one ray; a fixed point's
/// Bargmann-type local model contributes one ray to its own level and to
/// every level on its interior side — see the log-radial oracle test below).
pub fn local_index(model: &RotationModel, n: i64) -> i64 {
    match classify_level(model, n) {
        LevelClassification::OutsideImage => 0,
        LevelClassification::Regular | LevelClassification::FixedPoint => 1,
    }
}

/// Localized Riemann–Roch character of a model: one ray per level in the
/// moment image, nothing on the adjoint side.
pub fn rr_loc_character_model(model: &RotationModel) -> CharacterFunctional {
    let plus = match model {
        RotationModel::Cylinder { level } => WeightSupport::from_weights(&[*level]),
        RotationModel::Disc { level0, polarity: Polarity::Min } => {
            WeightSupport::LevelsFrom { start: *level0, mult: 1 }
        }
        RotationModel::Disc { level0, polarity: Polarity::Max } => {
            WeightSupport::LevelsUpTo { end: *level0, mult: 1 }
        }
        RotationModel::Sphere { top } => {
            WeightSupport::Finite((0..=*top).map(|n| (n, 1)).collect())
        }
    };
    CharacterFunctional { plus, minus: WeightSupport::Empty }
}

/// Global equivariant index character of a closed model, written down
/// independently of any localization: the sphere at top level k carries the
/// k+1 monomial sections of weights 0..k, each once, and nothing against
/// them.
pub fn total_character_oracle(model: &RotationModel) -> Result<CharacterFunctional> {
    match model {
        RotationModel::Sphere { top } => {
            let weights: BTreeMap<i64, u32> = (0..=*top).map(|n| (n, 1)).collect();
            Ok(CharacterFunctional {
                plus: WeightSupport::Finite(weights),
                minus: WeightSupport::Empty,
            })
        }
        other => Err(Error::invalid(format!(
            "total character is only defined for closed models, got {other}"
        ))),
    }
}

/// Transverse index character of a model. Only the cylinder supports the
/// transverse deformation; its character is nonzero exactly at level 0.
pub fn chi_character_model(model: &RotationModel) -> Result<CharacterFunctional> {
    match model {
        RotationModel::Cylinder { level } => chi_character(*level, 1.0, 0.0),
        other => Err(Error::invalid(format!(
            "transverse character is only defined for the cylinder, got {other}"
        ))),
    }
}
