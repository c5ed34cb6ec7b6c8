use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{ClosedForm, FockVerifier, TensorPolynomial, Verdict};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::tensor::DoubleTensorLabel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableConfig {
    pub s: String,
    pub l: String,
    pub convention: String,
    pub bracket: String,
}

impl From<&RunConfig> for TableConfig {
    fn from(c: &RunConfig) -> Self {
        TableConfig {
            s: c.s.to_string(),
            l: c.l.to_string(),
            convention: c.convention.to_string(),
            bracket: c.bracket.to_string(),
        }
    }
}

/// One ordered pair and its commutator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutatorRecord {
    pub lhs: [DoubleTensorLabel; 2],
    pub rhs: TensorPolynomial,
    /// Decimal value of each `rhs` coefficient, in the same order.
    pub approx: Vec<f64>,
    /// `None` when the oracle was not consulted.
    pub oracle: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutatorTable {
    pub config: TableConfig,
    pub records: Vec<CommutatorRecord>,
}

impl CommutatorTable {
    /// Closed-form commutators of every ordered pair in `labels × labels`,
    /// optionally judged against the oracle.
    pub fn build(config: &RunConfig, labels: &[DoubleTensorLabel], oracle: Option<&FockVerifier<'_>>) -> Result<Self> {
        let form: ClosedForm = config.closed_form();
        let mut records = Vec::with_capacity(labels.len() * labels.len());
        for &a in labels {
            for &b in labels {
                let rhs = form.commutator(a, b)?;
                let oracle = match oracle {
                    Some(v) => Some(Verdict::compare(&rhs, &v.oracle_commutator(a, b)?)),
                    None => None,
                };
                let approx = rhs.terms().map(|(_, c)| c.approx()).collect();
                records.push(CommutatorRecord {
                    lhs: [a, b],
                    rhs,
                    approx,
                    oracle,
                });
            }
        }
        Ok(CommutatorTable {
            config: TableConfig::from(config),
            records,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(Error::parse)
    }

    /// One line per record with a nonzero right-hand side.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in self.records.iter().filter(|r| !r.rhs.is_zero()) {
            write!(out, "[{}, {}] = {}", r.lhs[0], r.lhs[1], r.rhs).unwrap();
            if let Some(v) = &r.oracle {
                write!(out, "   oracle: {v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_byte_identical() {
        let labels: Vec<DoubleTensorLabel> = (-1..=1).map(|q| DoubleTensorLabel::new(0, 1, 0, q)).collect();
        let table = CommutatorTable::build(&RunConfig::frozen(), &labels, None).unwrap();
        let json = table.to_json();
        let again = CommutatorTable::from_json(&json).unwrap();
        assert_eq!(again, table);
        assert_eq!(again.to_json(), json);
        assert!(json.contains("\"lhs\""));
        assert!(json.contains("\"coeff\": \"1/10*sqrt(5)\""));
    }
}
