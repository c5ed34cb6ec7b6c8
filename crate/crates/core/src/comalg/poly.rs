use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radix::{parse_monomial, RadicalNumber};
use crate::tensor::DoubleTensorLabel;
use crate::text::Cursor;

/// Finite linear combination of double-tensor components.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TensorPolynomial {
    terms: BTreeMap<DoubleTensorLabel, RadicalNumber>,
}

impl TensorPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(label: DoubleTensorLabel) -> Self {
        Self::term(label, RadicalNumber::one())
    }

    pub fn term(label: DoubleTensorLabel, coeff: RadicalNumber) -> Self {
        let mut p = Self::zero();
        p.add_term(label, &coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (DoubleTensorLabel, RadicalNumber)>) -> Self {
        let mut p = Self::zero();
        for (l, c) in terms {
            p.add_term(l, &c);
        }
        p
    }

    pub fn add_term(&mut self, label: DoubleTensorLabel, coeff: &RadicalNumber) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(label).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&label);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, label: &DoubleTensorLabel) -> RadicalNumber {
        self.terms.get(label).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DoubleTensorLabel, &RadicalNumber)> + '_ {
        self.terms.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = DoubleTensorLabel> + '_ {
        self.terms.keys().copied()
    }

    pub fn scale(&self, c: &RadicalNumber) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TensorPolynomial {
            terms: self.terms.iter().map(|(l, v)| (*l, v * c)).collect(),
        }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: &RadicalNumber, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, v) in &other.terms {
            out.add_term(*l, &(v * c));
        }
        out
    }

    /// Exact `other = r·self` test; returns `r` when it exists and `self` is
    /// nonzero.
    pub fn ratio_to(&self, other: &Self) -> Option<RadicalNumber> {
        if self.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let mut ratio: Option<RadicalNumber> = None;
        for (l, v) in &self.terms {
            let w = other.terms.get(l)?;
            let r = w.checked_div(v).ok()?;
            match &ratio {
                Some(prev) if *prev != r => return None,
                Some(_) => {}
                None => ratio = Some(r),
            }
        }
        ratio
    }

    /// Double-precision coefficients in label order.
    pub fn approx(&self) -> Vec<(DoubleTensorLabel, f64)> {
        self.terms.iter().map(|(l, v)| (*l, v.approx())).collect()
    }

    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> Result<Self> {
        let mut poly = Self::zero();
        if cur.eat("0") {
            return Ok(poly);
        }
        let mut negative = cur.eat("-");
        loop {
            let coeff = if cur.looking_at("W[") {
                RadicalNumber::one()
            } else {
                let c = if cur.eat("(") {
                    let c = RadicalNumber::parse_from(cur)?;
                    cur.expect(")").map_err(Error::parse)?;
                    c
                } else {
                    parse_monomial(cur)?
                };
                cur.expect("*").map_err(Error::parse)?;
                c
            };
            if !cur.looking_at("W[") {
                return Err(Error::parse(format!("expected a W[...] label at `{}`", cur.rest())));
            }
            let label = DoubleTensorLabel::parse_from(cur)?;
            poly.add_term(label, &if negative { -coeff } else { coeff });
            if cur.eat("+") {
                negative = false;
            } else if cur.eat("-") {
                negative = true;
            } else {
                break;
            }
        }
        Ok(poly)
    }
}

/// Writes `Σ c·name` canonically: signs pulled out of single-term
/// coefficients, unit coefficients elided, sums parenthesized.
pub(crate) fn write_combination<'a, N: fmt::Display + 'a>(
    f: &mut impl fmt::Write,
    items: impl IntoIterator<Item = (N, &'a RadicalNumber)>,
) -> fmt::Result {
    let mut empty = true;
    for (i, (name, c)) in items.into_iter().enumerate() {
        empty = false;
        let negative = c.num_terms() == 1 && c.signum() < 0;
        let mag = if negative { -c } else { c.clone() };
        match (i, negative) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        if mag.num_terms() > 1 {
            write!(f, "({mag}) * ")?;
        } else if !mag.is_one() {
            write!(f, "{mag} * ")?;
        }
        write!(f, "{name}")?;
    }
    if empty {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for TensorPolynomial {
    /// Canonical text, e.g. `-3/10*sqrt(5) * W[0,1,0,1] + 1/10*sqrt(5) * W[0,3,0,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.terms.iter())
    }
}

impl fmt::Debug for TensorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TensorPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let p = Self::parse_from(&mut cur)?;
        if !cur.at_end() {
            return Err(Error::parse(format!("trailing input `{}`", cur.rest())));
        }
        Ok(p)
    }
}

/// JSON form: `[{"label": [σ,k,π,q], "coeff": "<exact>"}, ...]`.
#[derive(Serialize, Deserialize)]
struct TermRecord {
    label: DoubleTensorLabel,
    coeff: RadicalNumber,
}

impl Serialize for TensorPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(l, c)| TermRecord {
            label: *l,
            coeff: c.clone(),
        }))
    }
}

impl<'de> Deserialize<'de> for TensorPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        Ok(Self::from_terms(records.into_iter().map(|r| (r.label, r.coeff))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_round_trip() {
        let cases = [
            "0",
            "W[0,1,0,0]",
            "1/10*sqrt(5) * W[0,1,0,0]",
            "-3/10*sqrt(5) * W[0,1,0,1] + 1/10*sqrt(5) * W[0,3,0,1]",
            "(1/2 - sqrt(3)) * W[0,0,0,0] - W[1,4,-1,-4]",
            "-W[0,3,0,-2] + 2 * W[0,3,0,3]",
        ];
        for text in cases {
            let p: TensorPolynomial = text.parse().unwrap();
            assert_eq!(p.to_string(), text);
        }
    }

    #[test]
    fn terms_cancel_and_ratio() {
        let a: TensorPolynomial = "sqrt(2) * W[0,1,0,0] + W[0,3,0,0]".parse().unwrap();
        let b = a.scale(&"-1/3*sqrt(2)".parse().unwrap());
        assert_eq!(a.ratio_to(&b).unwrap(), "-1/3*sqrt(2)".parse().unwrap());
        assert!(a.add_scaled(&RadicalNumber::from_integer(-1), &a).is_zero());
        let c: TensorPolynomial = "sqrt(2) * W[0,1,0,0] - W[0,3,0,0]".parse().unwrap();
        assert!(a.ratio_to(&c).is_none());
    }
}
