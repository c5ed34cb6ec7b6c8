//! Run configuration and the frozen convention file.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::comalg::{BracketForm, ClosedForm};
use crate::error::{Error, Result};
use crate::tensor::TensorConvention;
use crate::wigner::HalfInt;

/// The convention file shipped with the crate.
pub const FROZEN: &str = include_str!("../conventions.toml");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Self::Text),
            "json" => Ok(Self::Json),
            _ => Err(Error::Config(format!("unknown output format `{s}` (text, json)"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Text => "text",
            Self::Json => "json",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub s: HalfInt,
    pub l: HalfInt,
    pub convention: TensorConvention,
    pub bracket: BracketForm,
    pub format: OutputFormat,
    /// `None` writes to stdout.
    pub output: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConventionFile {
    convention: TensorConvention,
    bracket: BracketForm,
    s: Option<String>,
    l: Option<String>,
}

impl RunConfig {
    /// Parses a convention file; missing `s` and `l` default to the d shell.
    pub fn from_toml(text: &str) -> Result<Self> {
        let file: ConventionFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let half = |v: Option<String>, default: HalfInt| -> Result<HalfInt> {
            v.map_or(Ok(default), |v| {
                v.parse().map_err(|e| Error::Config(format!("`{v}`: {e}")))
            })
        };
        let s = half(file.s, HalfInt::HALF)?;
        if s != HalfInt::HALF {
            return Err(Error::Config(format!("only s = 1/2 is supported, got {s}")));
        }
        let l = half(file.l, HalfInt::int(2))?;
        if !l.is_integer() || l.twice() < 0 {
            return Err(Error::Config(format!("l must be a nonnegative integer, got {l}")));
        }
        Ok(RunConfig {
            s,
            l,
            convention: file.convention,
            bracket: file.bracket,
            format: OutputFormat::Text,
            output: None,
        })
    }

    pub fn frozen() -> Self {
        Self::from_toml(FROZEN).expect("shipped convention file parses")
    }

    pub fn closed_form(&self) -> ClosedForm {
        ClosedForm {
            s: self.s,
            l: self.l,
            bracket: self.bracket,
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self::frozen()
    }
}
