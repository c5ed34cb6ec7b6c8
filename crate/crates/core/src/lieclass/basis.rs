use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{cartan_subalgebra, root_decomposition};
use crate::comalg::{write_combination, ClosedForm, PolySpan, StructureConstants, TensorPolynomial};
use crate::error::{Error, Result};
use crate::radix::{RadicalNumber, Rational};
use crate::tensor::DoubleTensorLabel;

/// An ordered basis with a name per element.
#[derive(Clone, Debug)]
pub struct NamedBasis {
    pub names: Vec<String>,
    pub elements: Vec<TensorPolynomial>,
}

impl NamedBasis {
    pub fn from_labels(labels: impl IntoIterator<Item = DoubleTensorLabel>) -> Self {
        let elements: Vec<TensorPolynomial> = labels.into_iter().map(TensorPolynomial::single).collect();
        let names = elements.iter().map(ToString::to_string).collect();
        NamedBasis { names, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&TensorPolynomial> {
        self.names.iter().position(|n| n == name).map(|i| &self.elements[i])
    }

    /// Parses one element per line, either `poly` or `NAME = poly`; blank
    /// lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names = Vec::new();
        let mut elements = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, poly) = match line.split_once('=') {
                Some((name, poly)) => (Some(name.trim().to_string()), poly),
                None => (None, line),
            };
            let poly: TensorPolynomial = poly.parse().map_err(|e| Error::parse(format!("line {}: {e}", n + 1)))?;
            names.push(name.unwrap_or_else(|| poly.to_string()));
            elements.push(poly);
        }
        Ok(NamedBasis { names, elements })
    }

    /// `c·name` text for a coordinate vector in this basis.
    pub fn describe(&self, coords: &[RadicalNumber]) -> String {
        let mut out = String::new();
        write_combination(&mut out, self.names.iter().zip(coords).filter(|(_, c)| !c.is_zero()))
            .expect("writing to a String");
        out
    }
}

impl fmt::Display for NamedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, p) in self.names.iter().zip(&self.elements) {
            if *name == p.to_string() {
                writeln!(f, "{p}")?;
            } else {
                writeln!(f, "{name} = {p}")?;
            }
        }
        Ok(())
    }
}

/// `b = 2√5`, the reciprocal of the `[W[0,1,0,1], W[0,1,0,-1]]` constant.
pub fn b_scale() -> RadicalNumber {
    RadicalNumber::term(Rational::from_integer(2), 5)
}

/// How the `q = ±2, ±3` members of the F family are formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FBasisPreset {
    /// `F±2 = b(3/5·W[0,3,0,±2] + 2/5·W[0,3,0,±3])` and `F±3` with the
    /// weights swapped: the decimals 0.6 and 0.4 read as exact fractions.
    Printed,
    /// Root vectors of the adjoint action of `{J0, F0}`.
    Eigen,
}

impl FromStr for FBasisPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(Self::Printed),
            "eigen" => Ok(Self::Eigen),
            _ => Err(Error::parse(format!("unknown F basis `{s}` (printed, eigen)"))),
        }
    }
}

fn sigma0_odd_k() -> Vec<DoubleTensorLabel> {
    [1, 3]
        .into_iter()
        .flat_map(|k| (-k..=k).map(move |q| DoubleTensorLabel::new(0, k, 0, q)))
        .collect()
}

fn w(k: i32, q: i32) -> DoubleTensorLabel {
    DoubleTensorLabel::new(0, k, 0, q)
}

/// `J0, J1, J-1, F0, F1, F-1, F2, F-2, F3, F-3`.
pub fn build_jf_basis(preset: FBasisPreset, form: &ClosedForm) -> Result<NamedBasis> {
    let b = b_scale();
    let single = |k, q| TensorPolynomial::term(w(k, q), b.clone());
    let mut names: Vec<String> = ["J0", "J1", "J-1", "F0", "F1", "F-1"].map(String::from).to_vec();
    let mut elements = vec![
        single(1, 0),
        single(1, 1),
        single(1, -1),
        single(3, 0),
        single(3, 1),
        single(3, -1),
    ];
    let mix = |weights: (i64, i64), sign: i32| {
        TensorPolynomial::from_terms([
            (w(3, 2 * sign), b.scale(&Rational::new(weights.0, 5))),
            (w(3, 3 * sign), b.scale(&Rational::new(weights.1, 5))),
        ])
    };
    let extra: Vec<TensorPolynomial> = match preset {
        FBasisPreset::Printed => vec![mix((3, 2), 1), mix((3, 2), -1), mix((2, 3), 1), mix((2, 3), -1)],
        FBasisPreset::Eigen => eigen_f_family(form)?,
    };
    names.extend(["F2", "F-2", "F3", "F-3"].map(String::from));
    elements.extend(extra);
    Ok(NamedBasis { names, elements })
}

/// Root vectors supported on `W[0,3,0,±2]`, `W[0,3,0,±3]`, scaled by `b`.
fn eigen_f_family(form: &ClosedForm) -> Result<Vec<TensorPolynomial>> {
    let b = b_scale();
    let basis: Vec<TensorPolynomial> = sigma0_odd_k()
        .into_iter()
        .map(|l| TensorPolynomial::term(l, b.clone()))
        .collect();
    let sc = StructureConstants::compute(&basis, form)?;
    let cartan = cartan_subalgebra(&sc)?;
    let roots = root_decomposition(&sc, &cartan)?;
    let pick = |q: i32| -> Result<TensorPolynomial> {
        let pair = [
            w(3, q),
            w(3, if q.abs() == 2 { 3 * q.signum() } else { 2 * q.signum() }),
        ];
        roots
            .iter()
            .map(|r| &r.vector)
            .filter(|v| v.labels().all(|l| pair.contains(&l)))
            .max_by(|x, y| x.coeff(&pair[0]).abs().cmp_value(&y.coeff(&pair[0]).abs()))
            .map(|v| {
                let lead = v.coeff(&pair[0]);
                v.scale(&b.checked_div(&lead).expect("leading coefficient is nonzero"))
            })
            .ok_or_else(|| Error::Cartan(format!("no root vector on W[0,3,0,{q}]")))
    };
    [2, -2, 3, -3].into_iter().map(pick).collect()
}

/// Named candidate subalgebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// The ten `σ = 0`, odd-`k` components.
    Sigma0OddK,
    /// `W[0,1,0,q]`, `q = -1, 0, 1`.
    JTriple,
    /// `W[0,0,0,0]` and `W[0,2,0,0]`.
    ToralPair,
    JfPrinted,
    JfEigen,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::Sigma0OddK,
        Preset::JTriple,
        Preset::ToralPair,
        Preset::JfPrinted,
        Preset::JfEigen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Sigma0OddK => "sigma0-odd-k",
            Preset::JTriple => "j-triple",
            Preset::ToralPair => "toral-pair",
            Preset::JfPrinted => "jf-printed",
            Preset::JfEigen => "jf-eigen",
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Self::ALL.iter().map(|p| p.name()).collect();
            Error::parse(format!("unknown preset `{s}` ({})", names.join(", ")))
        })
    }
}

pub fn preset(p: Preset, form: &ClosedForm) -> Result<NamedBasis> {
    Ok(match p {
        Preset::Sigma0OddK => NamedBasis::from_labels(sigma0_odd_k()),
        Preset::JTriple => NamedBasis::from_labels((-1..=1).map(|q| w(1, q))),
        Preset::ToralPair => NamedBasis::from_labels([w(0, 0), w(2, 0)]),
        Preset::JfPrinted => build_jf_basis(FBasisPreset::Printed, form)?,
        Preset::JfEigen => build_jf_basis(FBasisPreset::Eigen, form)?,
    })
}

/// One reference relation `[X, Y] = rhs` evaluated in a named basis.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub left: String,
    pub right: String,
    /// Reference right-hand side in basis names.
    pub expected: String,
    /// Computed commutator in basis names, or in components when it leaves
    /// the span.
    pub computed: String,
    pub holds: bool,
}

impl fmt::Display for RelationCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.holds { "holds" } else { "FAILS" };
        write!(
            f,
            "[{}, {}] = {}   computed: {}   {mark}",
            self.left, self.right, self.expected, self.computed
        )
    }
}

/// `[X, Y] = Σ coeff·name`.
pub type Relation = (&'static str, &'static str, Vec<(&'static str, RadicalNumber)>);

/// The reference relations for the J/F basis.
pub fn reference_relations() -> Vec<Relation> {
    let one = RadicalNumber::one();
    let r2 = RadicalNumber::term(Rational::ONE, 2);
    vec![
        ("J0", "J1", vec![("J1", one.clone())]),
        ("J0", "J-1", vec![("J-1", one.clone())]),
        ("J1", "J-1", vec![("J0", one.clone())]),
        ("F1", "F-1", vec![("J0", r2.clone()), ("F0", r2.clone())]),
        ("F2", "F-2", vec![("F0", one)]),
        ("F3", "F-3", vec![("J0", -&r2), ("F0", r2)]),
    ]
}

pub fn check_relations(basis: &NamedBasis, form: &ClosedForm) -> Result<Vec<RelationCheck>> {
    let span = PolySpan::new(&basis.elements)?;
    let lookup = |name: &str| {
        basis
            .get(name)
            .ok_or_else(|| Error::parse(format!("basis has no element named `{name}`")))
    };
    let mut out = Vec::new();
    for (x, y, rhs) in reference_relations() {
        let bracket = form.commutator_poly(lookup(x)?, lookup(y)?)?;
        let mut expected_poly = TensorPolynomial::zero();
        for (name, c) in &rhs {
            expected_poly = expected_poly.add_scaled(c, lookup(name)?);
        }
        let mut expected = String::new();
        write_combination(&mut expected, rhs.iter().map(|(n, c)| (*n, c))).expect("writing to a String");
        let computed = match span.coordinates(&bracket) {
            Ok(coords) => basis.describe(&coords),
            Err(_) => bracket.to_string(),
        };
        out.push(RelationCheck {
            left: x.into(),
            right: y.into(),
            expected,
            computed,
            holds: bracket == expected_poly,
        });
    }
    Ok(out)
}
