//! Disparity response functions: how a node rescales its baseline sharing
//! rate given the feedback disparity it perceives.
//!
//! Textual form (used on the command line and in file names):
//!
//! ```text
//! neg-step:<K>   1 if x <= K, else 0
//! pos-step:<K>   0 if x <= K, else 1
//! linear:<K>     max(0, K - (K - 1) x), K > 1
//! inverse        1 / x
//! convex:<C>     min((e^(1 - 1.5x) + e^(0.35x - 1)) / (e + 1/e), C)
//! ```
//!
//! Note that the convex family, as defined, equals 1 at `x = 0` and about
//! 0.366 at `x = 1`; it does not pass through `(1, 1)` like the others.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DrfError {
    #[error("invalid parameter for {family}: {value} ({requirement})")]
    InvalidParameter { family: &'static str, value: f64, requirement: &'static str },
    #[error("disparity {0} is outside the domain of this response function")]
    OutOfDomain(f64),
    #[error("cannot parse response function {spec:?}: {reason}")]
    Parse { spec: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum DisparityResponse {
    NegativeStep { threshold: f64 },
    PositiveStep { threshold: f64 },
    Linear { intercept: f64 },
    Inverse,
    ConvexExpSum { cap: f64 },
}

/// Lower end of the negative-step threshold grid.
pub const NEGATIVE_STEP_MIN: f64 = 0.5;
/// Upper end of the negative-step threshold grid.
pub const NEGATIVE_STEP_MAX: f64 = 2.6;
/// Number of negative-step instances in the standard grid.
pub const NEGATIVE_STEP_COUNT: usize = 21;
/// Intercepts of the standard linear instances.
pub const LINEAR_INTERCEPTS: [f64; 3] = [1.05, 1.55, 2.05];
/// Cap of the standard convex instance.
pub const CONVEX_CAP: f64 = 10.0;

fn check(family: &'static str, value: f64, ok: bool, requirement: &'static str) -> Result<(), DrfError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(DrfError::InvalidParameter { family, value, requirement })
    }
}

impl DisparityResponse {
    pub fn negative_step(threshold: f64) -> Result<Self, DrfError> {
        check("neg-step", threshold, threshold > 0.0, "threshold must be > 0")?;
        Ok(Self::NegativeStep { threshold })
    }

    pub fn positive_step(threshold: f64) -> Result<Self, DrfError> {
        check("pos-step", threshold, threshold > 0.0, "threshold must be > 0")?;
        Ok(Self::PositiveStep { threshold })
    }

    pub fn linear(intercept: f64) -> Result<Self, DrfError> {
        check("linear", intercept, intercept > 1.0, "intercept must be > 1")?;
        Ok(Self::Linear { intercept })
    }

    pub fn inverse() -> Self {
        Self::Inverse
    }

    pub fn convex(cap: f64) -> Result<Self, DrfError> {
        check("convex", cap, cap > 0.0, "cap must be > 0")?;
        Ok(Self::ConvexExpSum { cap })
    }

    /// Multiplier applied to the baseline rate at disparity `x`.
    pub fn evaluate(&self, x: f64) -> Result<f64, DrfError> {
        if x.is_nan() || x < 0.0 {
            return Err(DrfError::OutOfDomain(x));
        }
        Ok(match *self {
            Self::NegativeStep { threshold } => {
                if x <= threshold {
                    1.0
                } else {
                    0.0
                }
            }
            Self::PositiveStep { threshold } => {
                if x <= threshold {
                    0.0
                } else {
                    1.0
                }
            }
            Self::Linear { intercept } => (intercept - (intercept - 1.0) * x).max(0.0),
            Self::Inverse => {
                if x == 0.0 {
                    return Err(DrfError::OutOfDomain(x));
                }
                1.0 / x
            }
            Self::ConvexExpSum { cap } => {
                let norm = std::f64::consts::E + (-1.0f64).exp();
                let v = ((1.0 - 1.5 * x).exp() + (0.35 * x - 1.0).exp()) / norm;
                // exp overflows to +inf for very large x; the cap absorbs it.
                v.min(cap)
            }
        })
    }

    /// True for the two step families, whose outputs are always 0 or 1.
    pub fn is_step(&self) -> bool {
        matches!(self, Self::NegativeStep { .. } | Self::PositiveStep { .. })
    }

    pub fn family(&self) -> &'static str {
        match self {
            Self::NegativeStep { .. } => "neg-step",
            Self::PositiveStep { .. } => "pos-step",
            Self::Linear { .. } => "linear",
            Self::Inverse => "inverse",
            Self::ConvexExpSum { .. } => "convex",
        }
    }

    /// Upper bound of the output over `x >= 0`.
    pub fn upper_bound(&self) -> f64 {
        match *self {
            Self::NegativeStep { .. } | Self::PositiveStep { .. } => 1.0,
            Self::Linear { intercept } => intercept,
            Self::Inverse => f64::INFINITY,
            Self::ConvexExpSum { cap } => cap,
        }
    }
}

/// Evenly spaced negative-step thresholds from [`NEGATIVE_STEP_MIN`] to
/// [`NEGATIVE_STEP_MAX`], rounded to nine decimals so they print cleanly.
pub fn negative_step_thresholds() -> Vec<f64> {
    let step = (NEGATIVE_STEP_MAX - NEGATIVE_STEP_MIN) / (NEGATIVE_STEP_COUNT - 1) as f64;
    (0..NEGATIVE_STEP_COUNT)
        .map(|i| ((NEGATIVE_STEP_MIN + step * i as f64) * 1e9).round() / 1e9)
        .collect()
}

/// The standard sweep set: 21 negative steps, three linear intercepts, the
/// inverse, the capped convex function and a positive step at 1.
pub fn standard_instances() -> Vec<DisparityResponse> {
    let mut out: Vec<_> = negative_step_thresholds()
        .into_iter()
        .map(|k| DisparityResponse::NegativeStep { threshold: k })
        .collect();
    out.extend(LINEAR_INTERCEPTS.iter().map(|&k| DisparityResponse::Linear { intercept: k }));
    out.push(DisparityResponse::Inverse);
    out.push(DisparityResponse::ConvexExpSum { cap: CONVEX_CAP });
    out.push(DisparityResponse::PositiveStep { threshold: 1.0 });
    out
}

impl fmt::Display for DisparityResponse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::NegativeStep { threshold } => write!(f, "neg-step:{threshold}"),
            Self::PositiveStep { threshold } => write!(f, "pos-step:{threshold}"),
            Self::Linear { intercept } => write!(f, "linear:{intercept}"),
            Self::Inverse => write!(f, "inverse"),
            Self::ConvexExpSum { cap } => write!(f, "convex:{cap}"),
        }
    }
}

impl FromStr for DisparityResponse {
    type Err = DrfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_err = |reason: String| DrfError::Parse { spec: s.to_string(), reason };
        let (family, param) = match s.trim().split_once(':') {
            Some((f, p)) => (f.trim(), Some(p.trim())),
            None => (s.trim(), None),
        };
        let value = || -> Result<f64, DrfError> {
            let p = param.ok_or_else(|| parse_err(format!("{family} needs a parameter, e.g. {family}:1.5")))?;
            p.parse::<f64>()
                .map_err(|_| parse_err(format!("bad number {p:?}")))
        };
        match family {
            "neg-step" => Self::negative_step(value()?),
            "pos-step" => Self::positive_step(value()?),
            "linear" => Self::linear(value()?),
            "convex" => Self::convex(value()?),
            "inverse" => match param {
                None => Ok(Self::Inverse),
                Some(p) => Err(parse_err(format!("inverse takes no parameter, got {p:?}"))),
            },
            other => Err(parse_err(format!(
                "unknown family {other:?}; expected neg-step, pos-step, linear, inverse or convex"
            ))),
        }
    }
}

impl From<DisparityResponse> for String {
    fn from(d: DisparityResponse) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for DisparityResponse {
    type Error = DrfError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}
