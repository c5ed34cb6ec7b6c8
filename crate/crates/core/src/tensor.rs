//! Coupled double tensors `W^{σk}_{πq} = Σ ⟨s m_s s m_s'|σπ⟩⟨l m_l l m_l'|kq⟩ a⁺_ξ A_η`
//! as sparse Fock-space operators, where `A` is the plain or time-reversed
//! annihilation operator selected by [`TensorConvention`].

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{FockSpace, OrbitalOrdering, SparseOperator};
use crate::linalg::Matrix;
use crate::radix::RadicalNumber;
use crate::text::Cursor;
use crate::wigner::{cg, HalfInt};

/// Component label `(σ, k, π, q)`. Ordered by `σ`, then `k`, `π`, `q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleTensorLabel {
    pub sigma: HalfInt,
    pub k: HalfInt,
    pub pi: HalfInt,
    pub q: HalfInt,
}

impl DoubleTensorLabel {
    /// Integer-valued label without validation.
    pub const fn new(sigma: i32, k: i32, pi: i32, q: i32) -> Self {
        DoubleTensorLabel {
            sigma: HalfInt::int(sigma),
            k: HalfInt::int(k),
            pi: HalfInt::int(pi),
            q: HalfInt::int(q),
        }
    }

    pub fn validate(&self, s: HalfInt, l: HalfInt) -> Result<()> {
        let bad = |reason: String| {
            Err(Error::InvalidLabel {
                label: self.to_string(),
                reason,
            })
        };
        let all = [self.sigma, self.k, self.pi, self.q];
        if !all.iter().all(|x| x.is_integer()) {
            return bad("all four quantum numbers must be integers".into());
        }
        if self.sigma < HalfInt::ZERO || self.sigma.twice() > 2 * s.twice() {
            return bad(format!("sigma must lie in 0..={}", HalfInt::from_twice(2 * s.twice())));
        }
        if self.k < HalfInt::ZERO || self.k.twice() > 2 * l.twice() {
            return bad(format!("k must lie in 0..={}", HalfInt::from_twice(2 * l.twice())));
        }
        if self.pi.abs() > self.sigma {
            return bad("|pi| exceeds sigma".into());
        }
        if self.q.abs() > self.k {
            return bad("|q| exceeds k".into());
        }
        Ok(())
    }

    /// The label with both projections negated.
    pub fn conjugate(&self) -> Self {
        DoubleTensorLabel {
            pi: -self.pi,
            q: -self.q,
            ..*self
        }
    }

    /// `[σ, k, π, q]` as plain integers (labels are always integral).
    pub fn to_array(&self) -> [i32; 4] {
        [self.sigma, self.k, self.pi, self.q].map(|x| x.twice() / 2)
    }

    /// Parses `W[σ,k,π,q]` or the bare `σ,k,π,q`.
    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> Result<Self> {
        let bracketed = cur.eat("W[");
        let mut v = [0i32; 4];
        for (i, slot) in v.iter_mut().enumerate() {
            if i > 0 {
                cur.expect(",").map_err(Error::parse)?;
            }
            let n = cur
                .signed_integer()
                .ok_or_else(|| Error::parse(format!("expected an integer at `{}`", cur.rest())))?;
            *slot = i32::try_from(n).map_err(|_| Error::parse("quantum number out of range"))?;
        }
        if bracketed {
            cur.expect("]").map_err(Error::parse)?;
        }
        Ok(DoubleTensorLabel::new(v[0], v[1], v[2], v[3]))
    }
}

impl fmt::Display for DoubleTensorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W[{},{},{},{}]", self.sigma, self.k, self.pi, self.q)
    }
}

impl fmt::Debug for DoubleTensorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for DoubleTensorLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let label = Self::parse_from(&mut cur)?;
        if !cur.at_end() {
            return Err(Error::parse(format!("trailing input `{}`", cur.rest())));
        }
        Ok(label)
    }
}

impl Serialize for DoubleTensorLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DoubleTensorLabel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c, d] = <[i32; 4]>::deserialize(deserializer)?;
        Ok(DoubleTensorLabel::new(a, b, c, d))
    }
}

/// Which annihilation operator enters the coupled product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TensorConvention {
    /// `a_η` exactly as written in the defining sum.
    Plain,
    /// `ã_{m_s' m_l'} = (−1)^(s−m_s'+l−m_l') a_{−m_s',−m_l'}`.
    #[default]
    TimeReversed,
    /// `ã_{m_s' m_l'} = (−1)^(s+m_s'+l+m_l') a_{−m_s',−m_l'}`; for half-integer
    /// `s` this is the negative of [`TensorConvention::TimeReversed`].
    TimeReversedAlt,
}

impl TensorConvention {
    pub const ALL: [TensorConvention; 3] = [Self::Plain, Self::TimeReversed, Self::TimeReversedAlt];

    pub fn name(self) -> &'static str {
        match self {
            Self::Plain => "plain",
            Self::TimeReversed => "time-reversed",
            Self::TimeReversedAlt => "time-reversed-alt",
        }
    }
}

impl fmt::Display for TensorConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TensorConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            Error::parse(format!(
                "unknown convention `{s}` (plain, time-reversed, time-reversed-alt)"
            ))
        })
    }
}

fn phase(exponent_twice: i32) -> RadicalNumber {
    debug_assert!(exponent_twice % 2 == 0);
    if (exponent_twice / 2).rem_euclid(2) == 0 {
        RadicalNumber::one()
    } else {
        -RadicalNumber::one()
    }
}

/// Coefficient matrix `h` with `W = Σ h_ij a⁺_i a_j` (orbital indices of
/// `space`). This is also the action of `W` on the one-particle sector.
pub fn one_body_matrix(space: &FockSpace, label: DoubleTensorLabel, conv: TensorConvention) -> Result<Matrix> {
    let s = HalfInt::HALF;
    let l = space.l();
    label.validate(s, l)?;
    let n = space.num_orbitals();
    let mut h = Matrix::zeros(n, n);
    for xi in space.orbitals() {
        for eta in space.orbitals() {
            let c = &cg(s, xi.ms, s, eta.ms, label.sigma, label.pi)? * &cg(l, xi.ml, l, eta.ml, label.k, label.q)?;
            if c.is_zero() {
                continue;
            }
            let (target, sign) = match conv {
                TensorConvention::Plain => (*eta, RadicalNumber::one()),
                TensorConvention::TimeReversed => {
                    let partner = space.orbital(-eta.ms, -eta.ml).expect("shell is closed under negation");
                    (partner, phase((s - eta.ms + l - eta.ml).twice()))
                }
                TensorConvention::TimeReversedAlt => {
                    let partner = space.orbital(-eta.ms, -eta.ml).expect("shell is closed under negation");
                    (partner, phase((s + eta.ms + l + eta.ml).twice()))
                }
            };
            h[(xi.index, target.index)] += &(&c * &sign);
        }
    }
    Ok(h)
}

/// Assembles `Σ h_ij a⁺_i a_j` on the full Fock space.
pub fn assemble(space: &FockSpace, h: &Matrix, hopping: &[SparseOperator]) -> SparseOperator {
    let n = space.num_orbitals();
    let mut op = SparseOperator::zero(space.dim());
    for i in 0..n {
        for j in 0..n {
            if !h[(i, j)].is_zero() {
                op = op.add_scaled(&h[(i, j)], &hopping[i * n + j]).expect("same space");
            }
        }
    }
    op
}

/// All `a⁺_i a_j`, row-major in `(i, j)`.
pub fn hopping_operators(space: &FockSpace) -> Vec<SparseOperator> {
    let n = space.num_orbitals();
    (0..n * n).map(|ij| space.hopping(ij / n, ij % n)).collect()
}

pub fn build_double_tensor(
    space: &FockSpace,
    label: DoubleTensorLabel,
    conv: TensorConvention,
) -> Result<SparseOperator> {
    let h = one_body_matrix(space, label, conv)?;
    Ok(assemble(space, &h, &hopping_operators(space)))
}

/// Every valid label for spin `s` and shell `l`, in label order.
pub fn all_labels(s: HalfInt, l: HalfInt) -> Vec<DoubleTensorLabel> {
    let mut out = Vec::new();
    for sigma in 0..=(2 * s.twice() / 2) {
        for k in 0..=(2 * l.twice() / 2) {
            for pi in -sigma..=sigma {
                for q in -k..=k {
                    out.push(DoubleTensorLabel::new(sigma, k, pi, q));
                }
            }
        }
    }
    out
}

/// All components for one space and convention, built once.
pub struct TensorSet {
    space: FockSpace,
    convention: TensorConvention,
    labels: Vec<DoubleTensorLabel>,
    one_body: Vec<Matrix>,
    operators: Vec<SparseOperator>,
}

impl TensorSet {
    pub fn new(space: FockSpace, convention: TensorConvention) -> Result<Self> {
        let labels = all_labels(HalfInt::HALF, space.l());
        let hopping = hopping_operators(&space);
        let mut one_body = Vec::with_capacity(labels.len());
        let mut operators = Vec::with_capacity(labels.len());
        for &label in &labels {
            let h = one_body_matrix(&space, label, convention)?;
            operators.push(assemble(&space, &h, &hopping));
            one_body.push(h);
        }
        Ok(TensorSet {
            space,
            convention,
            labels,
            one_body,
            operators,
        })
    }

    /// Shared d-shell set in the standard orbital ordering.
    pub fn d_shell(convention: TensorConvention) -> &'static TensorSet {
        static SETS: [OnceLock<TensorSet>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
        let slot = TensorConvention::ALL
            .iter()
            .position(|c| *c == convention)
            .expect("listed");
        SETS[slot].get_or_init(|| TensorSet::new(FockSpace::d_shell(), convention).expect("d shell labels are valid"))
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn convention(&self) -> TensorConvention {
        self.convention
    }

    pub fn labels(&self) -> &[DoubleTensorLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: DoubleTensorLabel) -> Result<usize> {
        self.labels.binary_search(&label).map_err(|_| Error::InvalidLabel {
            label: label.to_string(),
            reason: format!("not a component for l = {}", self.space.l()),
        })
    }

    pub fn operator(&self, label: DoubleTensorLabel) -> Result<&SparseOperator> {
        Ok(&self.operators[self.index_of(label)?])
    }

    pub fn operator_at(&self, index: usize) -> &SparseOperator {
        &self.operators[index]
    }

    pub fn one_body(&self, label: DoubleTensorLabel) -> Result<&Matrix> {
        Ok(&self.one_body[self.index_of(label)?])
    }

    pub fn one_body_at(&self, index: usize) -> &Matrix {
        &self.one_body[index]
    }

    /// Change-of-basis matrix from `{a⁺_i a_j}` to the components: column
    /// `L` holds the row-major entries of `h_L`.
    pub fn change_of_basis(&self) -> Matrix {
        let columns: Vec<Vec<RadicalNumber>> = self
            .one_body
            .iter()
            .map(|h| (0..h.rows()).flat_map(|i| h.row(i).to_vec()).collect())
            .collect();
        Matrix::from_columns(&columns)
    }
}

/// Builds the standard-ordering components of a space with the given `l`.
pub fn list_all(l: HalfInt, convention: TensorConvention) -> Result<Vec<(DoubleTensorLabel, SparseOperator)>> {
    let set = TensorSet::new(FockSpace::new(l, OrbitalOrdering::Standard)?, convention)?;
    Ok(set.labels.into_iter().zip(set.operators).collect())
}
