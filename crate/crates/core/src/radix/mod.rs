//! Exact arithmetic in the ring of rational combinations of square roots.
//!
//! Every Clebsch-Gordan coefficient, Racah coefficient and structure
//! constant handled by this crate has the form `Σ c_d √d` with rational
//! `c_d` and squarefree `d`. Square roots of distinct squarefree integers
//! are linearly independent over ℚ, so keeping radicands squarefree and
//! dropping zero coefficients gives a unique representation: structural
//! equality is numeric equality.

mod rational;
mod squarefree;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

pub use rational::Rational;
pub use squarefree::is_squarefree;

use crate::error::{Error, Result};
use crate::text::Cursor;

type Terms = SmallVec<[(u64, Rational); 2]>;

/// Exact value `Σ c_d √d` over squarefree radicands `d`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RadicalNumber {
    /// Sorted by radicand, no zero coefficients.
    terms: Terms,
}

impl RadicalNumber {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from(Rational::ONE)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from(Rational::from_integer(n))
    }

    /// `coeff · √radicand`; the radicand is reduced to squarefree form.
    pub fn term(coeff: Rational, radicand: u64) -> Self {
        if radicand == 0 || coeff.is_zero() {
            return Self::zero();
        }
        let (outer, rad) =
            squarefree::split_square(&BigUint::from(radicand)).expect("a u64 radicand always fits after reduction");
        let coeff = coeff * Rational::from_bigint(BigInt::from(outer));
        let mut terms = Terms::new();
        terms.push((rad, coeff));
        RadicalNumber { terms }
    }

    /// Exact `√r`. For `r = p/q` in lowest terms this is `(1/q)·√(pq)`,
    /// reduced to a squarefree radicand.
    pub fn sqrt_rational(r: &Rational) -> Result<Self> {
        if r.signum() < 0 {
            return Err(Error::NegativeSqrt(r.to_string()));
        }
        if r.is_zero() {
            return Ok(Self::zero());
        }
        let p = r.numer().to_biguint().expect("nonnegative");
        let q = r.denom().to_biguint().expect("positive");
        let (po, pr) = squarefree::split_square(&p).ok_or(Error::RadicandOverflow)?;
        let (qo, qr) = squarefree::split_square(&q).ok_or(Error::RadicandOverflow)?;
        // p and q are coprime, so pr·qr is squarefree: √(p/q) = po·√(pr·qr) / (qo·qr).
        let radicand = pr.checked_mul(qr).ok_or(Error::RadicandOverflow)?;
        let coeff = Rational::from_big(BigRational::new(BigInt::from(po), BigInt::from(qo) * BigInt::from(qr)));
        let mut terms = Terms::new();
        terms.push((radicand, coeff));
        Ok(RadicalNumber { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 1 && self.terms[0].1.is_one()
    }

    /// `(radicand, coefficient)` pairs in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> + '_ {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value as a rational, if it has no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::ZERO),
            [(1, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// `(c, d)` if the value is a single term `c√d`.
    pub fn as_single_term(&self) -> Option<(&Rational, u64)> {
        match self.terms.as_slice() {
            [(d, c)] => Some((c, *d)),
            _ => None,
        }
    }

    /// Double-precision evaluation of `Σ c_d √d`.
    pub fn approx(&self) -> f64 {
        self.terms.iter().map(|(d, c)| c.to_f64() * (*d as f64).sqrt()).sum()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        RadicalNumber {
            terms: self.terms.iter().map(|(d, c)| (*d, c * r)).collect(),
        }
    }

    /// Exact sign: -1, 0 or 1.
    ///
    /// Single terms are read off directly. Sums are first tried in floating
    /// point with a conservative error bound, then by interval evaluation of
    /// each square root at increasing binary precision until the interval
    /// excludes zero (it must, since a nonzero canonical value is nonzero).
    pub fn signum(&self) -> i32 {
        match self.terms.as_slice() {
            [] => return 0,
            [(_, c)] => return c.signum(),
            _ => {}
        }
        let magnitude: f64 = self
            .terms
            .iter()
            .map(|(d, c)| (c.to_f64() * (*d as f64).sqrt()).abs())
            .sum();
        let value = self.approx();
        if magnitude.is_finite() && value.abs() > magnitude * 1e-12 {
            return if value > 0.0 { 1 } else { -1 };
        }
        let mut bits = 64u32;
        loop {
            let scale = BigInt::one() << bits;
            let mut lo = BigRational::zero();
            let mut hi = BigRational::zero();
            for (d, c) in &self.terms {
                let root_floor = (BigInt::from(*d) * &scale * &scale).sqrt();
                let r_lo = BigRational::new(root_floor.clone(), scale.clone());
                let r_hi = if (&root_floor * &root_floor) == BigInt::from(*d) * &scale * &scale {
                    r_lo.clone()
                } else {
                    BigRational::new(root_floor + 1, scale.clone())
                };
                let c = c.to_big();
                if c.numer().sign() == Sign::Minus {
                    lo += &c * &r_hi;
                    hi += &c * &r_lo;
                } else {
                    lo += &c * &r_lo;
                    hi += &c * &r_hi;
                }
            }
            if lo > BigRational::zero() {
                return 1;
            }
            if hi < BigRational::zero() {
                return -1;
            }
            bits *= 2;
        }
    }

    /// Exact comparison.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse, `None` for zero.
    ///
    /// Single terms invert directly: `1/(r√d) = (1/(r·d))√d`. A general
    /// value is written as `A + B√p` for a prime `p` dividing some radicand;
    /// multiplying by the conjugate `A − B√p` gives `A² − pB²`, which no
    /// longer involves `p`. Recursing eliminates every prime in turn.
    pub fn recip(&self) -> Option<Self> {
        match self.terms.as_slice() {
            [] => None,
            [(d, c)] => {
                let inv = &c.recip()? / &Rational::from_integer(*d as i64);
                let mut terms = Terms::new();
                terms.push((*d, inv));
                Some(RadicalNumber { terms })
            }
            _ => {
                let largest = self.terms.iter().map(|(d, _)| *d).max().expect("nonempty");
                let p = squarefree::smallest_prime_factor(largest);
                let conjugate = RadicalNumber {
                    terms: self
                        .terms
                        .iter()
                        .map(|(d, c)| (*d, if d % p == 0 { -c } else { c.clone() }))
                        .collect(),
                };
                let norm = self * &conjugate;
                Some(&conjugate * &norm.recip()?)
            }
        }
    }

    /// `self / other`; errors on a zero divisor.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip().ok_or(Error::DivisionByZero)?)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    fn from_unsorted(mut terms: Vec<(u64, Rational)>) -> Self {
        terms.sort_by_key(|(d, _)| *d);
        let mut out = Terms::new();
        for (d, c) in terms {
            match out.last_mut() {
                Some((last, acc)) if *last == d => *acc += &c,
                _ => out.push((d, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        RadicalNumber { terms: out }
    }

    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> Result<Self> {
        let mut terms = Vec::new();
        let mut negative = cur.eat("-");
        loop {
            let (c, d) = parse_term(cur)?;
            terms.push((d, if negative { -c } else { c }));
            // A following `+`/`-` continues the sum only if a term follows;
            // `* W[...]` and closing brackets end it.
            if cur.looking_at("+") {
                cur.eat("+");
                negative = false;
            } else if cur.looking_at("-") {
                cur.eat("-");
                negative = true;
            } else {
                break;
            }
        }
        let mut acc = Self::zero();
        for (d, c) in terms {
            acc += &Self::term(c, d);
        }
        Ok(acc)
    }
}

/// One unsigned term as a value.
pub(crate) fn parse_monomial(cur: &mut Cursor<'_>) -> Result<RadicalNumber> {
    let (c, d) = parse_term(cur)?;
    Ok(RadicalNumber::term(c, d))
}

/// One unsigned term: `p[/q]`, `sqrt(d)` or `p[/q]*sqrt(d)`.
fn parse_term(cur: &mut Cursor<'_>) -> Result<(Rational, u64)> {
    if cur.eat("sqrt(") {
        let d = parse_radicand(cur)?;
        return Ok((Rational::ONE, d));
    }
    let n = cur
        .integer()
        .ok_or_else(|| Error::parse(format!("expected number at `{}`", cur.rest())))?;
    let mut coeff = Rational::from_bigint(n);
    if cur.eat("/") {
        let q = cur
            .integer()
            .ok_or_else(|| Error::parse(format!("expected denominator at `{}`", cur.rest())))?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        coeff = coeff * Rational::from_bigint(q).recip().expect("nonzero");
    }
    let save = cur.rest();
    if cur.eat("*") {
        if cur.eat("sqrt(") {
            let d = parse_radicand(cur)?;
            return Ok((coeff, d));
        }
        // `*` belongs to an enclosing product; rewind.
        *cur = Cursor::new(save);
    }
    Ok((coeff, 1))
}

fn parse_radicand(cur: &mut Cursor<'_>) -> Result<u64> {
    let d: u64 = cur
        .integer()
        .and_then(|n| n.try_into().ok())
        .ok_or_else(|| Error::parse(format!("expected radicand at `{}`", cur.rest())))?;
    cur.expect(")").map_err(Error::Parse)?;
    Ok(d)
}

impl From<Rational> for RadicalNumber {
    fn from(r: Rational) -> Self {
        let mut terms = Terms::new();
        if !r.is_zero() {
            terms.push((1, r));
        }
        RadicalNumber { terms }
    }
}

impl From<i64> for RadicalNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl<'a> Add<&'a RadicalNumber> for &'a RadicalNumber {
    type Output = RadicalNumber;

    fn add(self, rhs: &'a RadicalNumber) -> RadicalNumber {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let mut out = Terms::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => {
                        i += 1;
                        x.clone()
                    }
                    Ordering::Greater => {
                        j += 1;
                        y.clone()
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (x.0, &x.1 + &y.1)
                    }
                },
                (Some(x), None) => {
                    i += 1;
                    x.clone()
                }
                (None, Some(y)) => {
                    j += 1;
                    y.clone()
                }
                (None, None) => unreachable!(),
            };
            if !next.1.is_zero() {
                out.push(next);
            }
        }
        RadicalNumber { terms: out }
    }
}

impl<'a> Sub<&'a RadicalNumber> for &'a RadicalNumber {
    type Output = RadicalNumber;

    fn sub(self, rhs: &'a RadicalNumber) -> RadicalNumber {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RadicalNumber> for &'a RadicalNumber {
    type Output = RadicalNumber;

    /// `√a·√b = g·√((a/g)(b/g))` with `g = gcd(a, b)`; for squarefree `a`
    /// and `b` the new radicand is squarefree again.
    fn mul(self, rhs: &'a RadicalNumber) -> RadicalNumber {
        if self.is_zero() || rhs.is_zero() {
            return RadicalNumber::zero();
        }
        let product = |(a, x): &(u64, Rational), (b, y): &(u64, Rational)| {
            let g = a.gcd(b);
            let radicand = (a / g)
                .checked_mul(b / g)
                .expect("radicand overflow in radical product");
            let mut coeff = x * y;
            if g != 1 {
                coeff *= &Rational::from_integer(g as i64);
            }
            (radicand, coeff)
        };
        if self.terms.len() == 1 && rhs.terms.len() == 1 {
            let mut terms = Terms::new();
            terms.push(product(&self.terms[0], &rhs.terms[0]));
            return RadicalNumber { terms };
        }
        let mut all = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for x in &self.terms {
            for y in &rhs.terms {
                all.push(product(x, y));
            }
        }
        RadicalNumber::from_unsorted(all)
    }
}

impl Neg for &RadicalNumber {
    type Output = RadicalNumber;

    fn neg(self) -> RadicalNumber {
        RadicalNumber {
            terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

impl Neg for RadicalNumber {
    type Output = RadicalNumber;

    fn neg(self) -> RadicalNumber {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RadicalNumber> for RadicalNumber {
            type Output = RadicalNumber;
            fn $m(self, rhs: RadicalNumber) -> RadicalNumber { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a RadicalNumber> for RadicalNumber {
            type Output = RadicalNumber;
            fn $m(self, rhs: &'a RadicalNumber) -> RadicalNumber { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl AddAssign<&RadicalNumber> for RadicalNumber {
    fn add_assign(&mut self, rhs: &RadicalNumber) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RadicalNumber> for RadicalNumber {
    fn sub_assign(&mut self, rhs: &RadicalNumber) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for RadicalNumber {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, d: u64, c: &Rational) -> fmt::Result {
    if d == 1 {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "sqrt({d})")
    } else if (-c).is_one() {
        write!(f, "-sqrt({d})")
    } else {
        write!(f, "{c}*sqrt({d})")
    }
}

impl fmt::Display for RadicalNumber {
    /// Canonical text: terms by ascending radicand, e.g. `1/2 - 1/10*sqrt(5)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                write_term(f, *d, c)?;
            } else if c.signum() < 0 {
                write!(f, " - ")?;
                write_term(f, *d, &-c)?;
            } else {
                write!(f, " + ")?;
                write_term(f, *d, c)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RadicalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for RadicalNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let value = Self::parse_from(&mut cur)?;
        if !cur.at_end() {
            return Err(Error::parse(format!("trailing input `{}`", cur.rest())));
        }
        Ok(value)
    }
}

impl serde::Serialize for RadicalNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for RadicalNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
