//! Commutators of double tensors: the Racah closed form, the Fock-space
//! oracle that checks it, and structure constants of closed subsets.

mod poly;
mod table;
mod verify;

pub(crate) use poly::write_combination;
pub use poly::TensorPolynomial;
pub use table::{CommutatorRecord, CommutatorTable, TableConfig};
pub use verify::{FockVerifier, PairReport, SweepReport, Verdict};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Span;
use crate::radix::{RadicalNumber, Rational};
use crate::tensor::DoubleTensorLabel;
use crate::wigner::{cg, racah_w, HalfInt};

/// Parity factor multiplying each term of the recoupling sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BracketForm {
    /// `1 − (−1)^(σ+k+σ'+k'+σ''+k'')`; matches the time-reversed tensors.
    #[default]
    Corrected,
    /// `(−1)^(σ+k+σ'+k') − (−1)^(σ''+k'')`.
    Printed,
}

impl BracketForm {
    pub fn name(self) -> &'static str {
        match self {
            Self::Corrected => "corrected",
            Self::Printed => "printed",
        }
    }

    fn value(self, outer: i32, inner: i32) -> i64 {
        let sign = |e: i32| if e.rem_euclid(2) == 0 { 1 } else { -1 };
        match self {
            Self::Corrected => 1 - sign(outer + inner),
            Self::Printed => sign(outer) - sign(inner),
        }
    }
}

impl fmt::Display for BracketForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BracketForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(Self::Corrected),
            "printed" => Ok(Self::Printed),
            _ => Err(Error::parse(format!("unknown bracket form `{s}` (corrected, printed)"))),
        }
    }
}

/// The recoupling formula for `[W^{σk}_{πq}, W^{σ'k'}_{π'q'}]` in one shell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub s: HalfInt,
    pub l: HalfInt,
    pub bracket: BracketForm,
}

impl Default for ClosedForm {
    fn default() -> Self {
        ClosedForm {
            s: HalfInt::HALF,
            l: HalfInt::int(2),
            bracket: BracketForm::Corrected,
        }
    }
}

impl ClosedForm {
    pub fn new(l: HalfInt, bracket: BracketForm) -> Self {
        ClosedForm {
            s: HalfInt::HALF,
            l,
            bracket,
        }
    }

    pub fn commutator(&self, a: DoubleTensorLabel, b: DoubleTensorLabel) -> Result<TensorPolynomial> {
        a.validate(self.s, self.l)?;
        b.validate(self.s, self.l)?;
        let (s, l) = (self.s, self.l);
        let pi2 = a.pi + b.pi;
        let q2 = a.q + b.q;
        let dims = Rational::from_integer(
            a.sigma.multiplicity() * b.sigma.multiplicity() * a.k.multiplicity() * b.k.multiplicity(),
        );
        let prefactor = RadicalNumber::sqrt_rational(&dims)?;
        let outer = (a.sigma + a.k + b.sigma + b.k).twice() / 2;
        let mut out = TensorPolynomial::zero();
        for sigma2 in HalfInt::range_inclusive((a.sigma - b.sigma).abs(), a.sigma + b.sigma) {
            if pi2.abs() > sigma2 {
                continue;
            }
            let spin = &cg(a.sigma, a.pi, b.sigma, b.pi, sigma2, pi2)? * &racah_w(a.sigma, b.sigma, s, s, sigma2, s)?;
            if spin.is_zero() {
                continue;
            }
            for k2 in HalfInt::range_inclusive((a.k - b.k).abs(), a.k + b.k) {
                if q2.abs() > k2 {
                    continue;
                }
                let bracket = self.bracket.value(outer, (sigma2 + k2).twice() / 2);
                if bracket == 0 {
                    continue;
                }
                let orbital = &cg(a.k, a.q, b.k, b.q, k2, q2)? * &racah_w(a.k, b.k, l, l, k2, l)?;
                if orbital.is_zero() {
                    continue;
                }
                let c = (&(&prefactor * &spin) * &orbital).scale(&Rational::from_integer(bracket));
                out.add_term(
                    DoubleTensorLabel {
                        sigma: sigma2,
                        k: k2,
                        pi: pi2,
                        q: q2,
                    },
                    &c,
                );
            }
        }
        Ok(out)
    }

    /// Bilinear extension of [`ClosedForm::commutator`].
    pub fn commutator_poly(&self, a: &TensorPolynomial, b: &TensorPolynomial) -> Result<TensorPolynomial> {
        let mut out = TensorPolynomial::zero();
        for (la, ca) in a.terms() {
            for (lb, cb) in b.terms() {
                let c = ca * cb;
                out = out.add_scaled(&c, &self.commutator(*la, *lb)?);
            }
        }
        Ok(out)
    }
}

/// The d-shell closed form with the corrected bracket.
pub fn commutator_closed_form(a: DoubleTensorLabel, b: DoubleTensorLabel) -> Result<TensorPolynomial> {
    ClosedForm::default().commutator(a, b)
}

/// Coordinates of polynomials with respect to a fixed independent list.
#[derive(Clone, Debug)]
pub struct PolySpan {
    support: Vec<DoubleTensorLabel>,
    span: Span,
}

impl PolySpan {
    pub fn new(basis: &[TensorPolynomial]) -> Result<Self> {
        let mut support: Vec<DoubleTensorLabel> = basis.iter().flat_map(|p| p.labels()).collect();
        support.sort();
        support.dedup();
        let vectors: Vec<Vec<RadicalNumber>> = basis
            .iter()
            .map(|p| support.iter().map(|l| p.coeff(l)).collect())
            .collect();
        let span = Span::new(&vectors, support.len())?;
        Ok(PolySpan { support, span })
    }

    /// Coordinates, or the part of `p` left over after the best projection.
    pub fn coordinates(&self, p: &TensorPolynomial) -> std::result::Result<Vec<RadicalNumber>, TensorPolynomial> {
        let outside: Vec<_> = p
            .terms()
            .filter(|(l, _)| self.support.binary_search(l).is_err())
            .collect();
        let v: Vec<RadicalNumber> = self.support.iter().map(|l| p.coeff(l)).collect();
        match self.span.coordinates(&v) {
            Ok(x) if outside.is_empty() => Ok(x),
            Ok(_) => Err(TensorPolynomial::from_terms(
                outside.into_iter().map(|(l, c)| (*l, c.clone())),
            )),
            Err(residual) => {
                let inside = self.support.iter().copied().zip(residual);
                Err(TensorPolynomial::from_terms(
                    inside.chain(outside.into_iter().map(|(l, c)| (*l, c.clone()))),
                ))
            }
        }
    }
}

/// `[e_x, e_y] = Σ_z c[x][y][z] e_z` for an ordered basis.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    basis: Vec<TensorPolynomial>,
    c: Vec<Vec<Vec<RadicalNumber>>>,
}

impl StructureConstants {
    pub fn compute(basis: &[TensorPolynomial], form: &ClosedForm) -> Result<Self> {
        let n = basis.len();
        let span = PolySpan::new(basis)?;
        let zero_row = vec![RadicalNumber::zero(); n];
        let mut c = vec![vec![zero_row; n]; n];
        for x in 0..n {
            for y in 0..n {
                let bracket = form.commutator_poly(&basis[x], &basis[y])?;
                let coords = span.coordinates(&bracket).map_err(|residual| Error::NotClosed {
                    left: basis[x].to_string(),
                    right: basis[y].to_string(),
                    residual: residual.to_string(),
                })?;
                c[x][y] = coords;
            }
        }
        Ok(StructureConstants {
            basis: basis.to_vec(),
            c,
        })
    }

    /// Builds from a raw table; the caller vouches for antisymmetry.
    pub fn from_table(basis: Vec<TensorPolynomial>, c: Vec<Vec<Vec<RadicalNumber>>>) -> Self {
        StructureConstants { basis, c }
    }

    pub fn basis(&self) -> &[TensorPolynomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn get(&self, x: usize, y: usize, z: usize) -> &RadicalNumber {
        &self.c[x][y][z]
    }

    /// Coordinates of `[e_x, e_y]`.
    pub fn bracket(&self, x: usize, y: usize) -> &[RadicalNumber] {
        &self.c[x][y]
    }

    /// Coordinates of `[u, v]` for coordinate vectors `u`, `v`.
    pub fn bracket_vectors(&self, u: &[RadicalNumber], v: &[RadicalNumber]) -> Vec<RadicalNumber> {
        let n = self.dim();
        let mut out = vec![RadicalNumber::zero(); n];
        for (x, ux) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (y, vy) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let w = ux * vy;
                for (z, c) in self.c[x][y].iter().enumerate() {
                    if !c.is_zero() {
                        out[z] += &(&w * c);
                    }
                }
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| self.c[x][y][z] == -&self.c[y][x][z])))
    }

    /// Coordinates of `[[e_x,e_y],e_z] + [[e_y,e_z],e_x] + [[e_z,e_x],e_y]`.
    pub fn jacobiator(&self, x: usize, y: usize, z: usize) -> Vec<RadicalNumber> {
        let n = self.dim();
        let unit = |i: usize| {
            let mut v = vec![RadicalNumber::zero(); n];
            v[i] = RadicalNumber::one();
            v
        };
        let (ex, ey, ez) = (unit(x), unit(y), unit(z));
        let a = self.bracket_vectors(&self.c[x][y], &ez);
        let b = self.bracket_vectors(&self.c[y][z], &ex);
        let c = self.bracket_vectors(&self.c[z][x], &ey);
        a.iter().zip(&b).zip(&c).map(|((p, q), r)| &(p + q) + r).collect()
    }

    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.dim();
        (0..n).all(|x| {
            (x + 1..n).all(|y| (y + 1..n).all(|z| self.jacobiator(x, y, z).iter().all(RadicalNumber::is_zero)))
        })
    }
}
