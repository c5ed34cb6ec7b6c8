use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ClosedForm, TensorPolynomial};
use crate::error::{Error, Result};
use crate::fock::SparseOperator;
use crate::linalg::Matrix;
use crate::radix::RadicalNumber;
use crate::tensor::{DoubleTensorLabel, TensorSet};

/// Outcome of comparing the closed form `C` with the oracle `O`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    /// `O = r·C` with `r ≠ 1`.
    Ratio(RadicalNumber),
    Mismatch,
}

impl Verdict {
    pub fn compare(closed: &TensorPolynomial, oracle: &TensorPolynomial) -> Verdict {
        if closed == oracle {
            return Verdict::Equal;
        }
        match closed.ratio_to(oracle) {
            Some(r) => Verdict::Ratio(r),
            None => Verdict::Mismatch,
        }
    }

    pub fn is_equal(&self) -> bool {
        *self == Verdict::Equal
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal => f.write_str("equal"),
            Verdict::Ratio(r) => write!(f, "ratio:{r}"),
            Verdict::Mismatch => f.write_str("mismatch"),
        }
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equal" => Ok(Verdict::Equal),
            "mismatch" => Ok(Verdict::Mismatch),
            _ => match s.strip_prefix("ratio:") {
                Some(r) => Ok(Verdict::Ratio(r.parse()?)),
                None => Err(Error::parse(format!("unknown verdict `{s}`"))),
            },
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug)]
pub struct PairReport {
    pub a: DoubleTensorLabel,
    pub b: DoubleTensorLabel,
    pub closed: TensorPolynomial,
    pub oracle: TensorPolynomial,
    pub verdict: Verdict,
    /// The commutator restricted to the two-particle sector equals the
    /// commutator of the restricted operators.
    pub sector_agrees: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub convention: String,
    pub bracket: String,
    pub ordering: String,
    pub pairs: usize,
    pub nonzero_pairs: usize,
    pub equal: usize,
    pub ratio: usize,
    pub mismatch: usize,
    pub sector_failures: usize,
    /// Distinct ratios seen among `ratio` pairs, canonical text.
    pub ratios: Vec<String>,
    pub overall: Verdict,
    /// Up to ten offending pairs, `W[..] W[..]`.
    pub examples: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.overall.is_equal() && self.sector_failures == 0
    }
}

/// Expresses Fock-space commutators in the tensor basis and compares them
/// with a closed form.
pub struct FockVerifier<'a> {
    set: &'a TensorSet,
    form: ClosedForm,
    inverse: Matrix,
    pair_sector: Vec<u32>,
    restricted: Vec<SparseOperator>,
}

impl<'a> FockVerifier<'a> {
    pub fn new(set: &'a TensorSet, form: ClosedForm) -> Result<Self> {
        let inverse = set.change_of_basis().inverse().ok_or(Error::LinearlyDependent)?;
        let pair_sector = set.space().sector(2);
        let restricted = (0..set.len())
            .map(|i| set.operator_at(i).restrict(&pair_sector))
            .collect();
        Ok(FockVerifier {
            set,
            form,
            inverse,
            pair_sector,
            restricted,
        })
    }

    pub fn set(&self) -> &TensorSet {
        self.set
    }

    pub fn form(&self) -> &ClosedForm {
        &self.form
    }

    /// Coordinates of a one-body operator in the tensor basis, read from its
    /// one-particle block and confirmed on the whole space.
    pub fn expand(&self, op: &SparseOperator) -> Result<TensorPolynomial> {
        let n = self.set.space().num_orbitals();
        let mut block = vec![RadicalNumber::zero(); n * n];
        for i in 0..n {
            for (col, v) in op.row(1 << i) {
                if col.count_ones() == 1 {
                    block[i * n + col.trailing_zeros() as usize] = v.clone();
                }
            }
        }
        let coords = self.inverse.mul_vec(&block);
        let mut rebuilt = SparseOperator::zero(op.dim());
        for (i, x) in coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            rebuilt = rebuilt.add_scaled(x, self.set.operator_at(i))?;
        }
        if rebuilt != *op {
            let diff = op.sub(&rebuilt)?;
            let (r, c, v) = diff.entries().next().expect("operators differ");
            return Err(Error::NotInSpan {
                residual: format!("{} entries differ, first at ({r}, {c}) = {v}", diff.nnz()),
            });
        }
        Ok(TensorPolynomial::from_terms(
            self.set
                .labels()
                .iter()
                .copied()
                .zip(coords)
                .filter(|(_, x)| !x.is_zero()),
        ))
    }

    pub fn oracle_commutator(&self, a: DoubleTensorLabel, b: DoubleTensorLabel) -> Result<TensorPolynomial> {
        let c = self.set.operator(a)?.commutator(self.set.operator(b)?)?;
        self.expand(&c)
    }

    pub fn check_pair(&self, a: DoubleTensorLabel, b: DoubleTensorLabel) -> Result<PairReport> {
        let (ia, ib) = (self.set.index_of(a)?, self.set.index_of(b)?);
        let full = self.set.operator_at(ia).commutator(self.set.operator_at(ib))?;
        let oracle = self.expand(&full)?;
        let sector = self.restricted[ia].commutator(&self.restricted[ib])?;
        let sector_agrees = full.restrict(&self.pair_sector) == sector;
        let closed = self.form.commutator(a, b)?;
        let verdict = Verdict::compare(&closed, &oracle);
        Ok(PairReport {
            a,
            b,
            closed,
            oracle,
            verdict,
            sector_agrees,
        })
    }

    /// Checks every ordered pair from `left × right`.
    pub fn sweep(&self, left: &[DoubleTensorLabel], right: &[DoubleTensorLabel]) -> Result<SweepReport> {
        let mut report = SweepReport {
            convention: self.set.convention().to_string(),
            bracket: self.form.bracket.to_string(),
            ordering: format!("{:?}", self.set.space().ordering()).to_lowercase(),
            pairs: 0,
            nonzero_pairs: 0,
            equal: 0,
            ratio: 0,
            mismatch: 0,
            sector_failures: 0,
            ratios: Vec::new(),
            overall: Verdict::Equal,
            examples: Vec::new(),
        };
        let mut nonzero_equal = 0;
        let mut ratios: Vec<RadicalNumber> = Vec::new();
        for &a in left {
            for &b in right {
                let pair = self.check_pair(a, b)?;
                report.pairs += 1;
                if !pair.oracle.is_zero() || !pair.closed.is_zero() {
                    report.nonzero_pairs += 1;
                }
                if !pair.sector_agrees {
                    report.sector_failures += 1;
                }
                match &pair.verdict {
                    Verdict::Equal => {
                        report.equal += 1;
                        if !pair.oracle.is_zero() {
                            nonzero_equal += 1;
                        }
                    }
                    Verdict::Ratio(r) => {
                        report.ratio += 1;
                        if !ratios.contains(r) {
                            ratios.push(r.clone());
                        }
                    }
                    Verdict::Mismatch => report.mismatch += 1,
                }
                if (!pair.verdict.is_equal() || !pair.sector_agrees) && report.examples.len() < 10 {
                    report.examples.push(format!("{} {}", a, b));
                }
            }
        }
        report.overall = match (report.mismatch, ratios.len(), nonzero_equal) {
            (0, 0, _) => Verdict::Equal,
            (0, 1, 0) => Verdict::Ratio(ratios[0].clone()),
            _ => Verdict::Mismatch,
        };
        report.ratios = ratios.iter().map(ToString::to_string).collect();
        Ok(report)
    }
}
