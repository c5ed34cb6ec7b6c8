//! Lie-algebraic analysis of closed sets of double tensors: closure,
//! Cartan subalgebra, root decomposition, Killing form and rank ≤ 2
//! classification.

mod basis;
pub mod diagram;
pub mod eigen;

pub use basis::{
    b_scale, build_jf_basis, check_relations, preset, reference_relations, FBasisPreset, NamedBasis, Preset,
    RelationCheck,
};

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::comalg::{ClosedForm, PolySpan, StructureConstants, TensorPolynomial};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::radix::RadicalNumber;

/// Pairs whose commutator leaves the span, with the leftover part.
#[derive(Clone, Debug, Default)]
pub struct ClosureReport {
    pub residuals: Vec<(usize, usize, TensorPolynomial)>,
}

impl ClosureReport {
    pub fn is_closed(&self) -> bool {
        self.residuals.is_empty()
    }
}

pub fn check_closure(basis: &[TensorPolynomial], form: &ClosedForm) -> Result<ClosureReport> {
    let span = PolySpan::new(basis)?;
    let mut report = ClosureReport::default();
    for x in 0..basis.len() {
        for y in x + 1..basis.len() {
            let c = form.commutator_poly(&basis[x], &basis[y])?;
            if let Err(residual) = span.coordinates(&c) {
                report.residuals.push((x, y, residual));
            }
        }
    }
    Ok(report)
}

/// `ad_u` as a matrix on coordinates: column `y` holds `[u, e_y]`.
pub fn adjoint(sc: &StructureConstants, u: &[RadicalNumber]) -> Matrix {
    let n = sc.dim();
    let columns: Vec<Vec<RadicalNumber>> = (0..n)
        .map(|y| {
            let mut e = vec![RadicalNumber::zero(); n];
            e[y] = RadicalNumber::one();
            sc.bracket_vectors(u, &e)
        })
        .collect();
    Matrix::from_columns(&columns)
}

fn unit(n: usize, i: usize) -> Vec<RadicalNumber> {
    let mut v = vec![RadicalNumber::zero(); n];
    v[i] = RadicalNumber::one();
    v
}

/// `K(e_x, e_y) = tr(ad_x ∘ ad_y)`.
pub fn killing_form(sc: &StructureConstants) -> Matrix {
    let n = sc.dim();
    let ads: Vec<Matrix> = (0..n).map(|x| adjoint(sc, &unit(n, x))).collect();
    let mut k = Matrix::zeros(n, n);
    for x in 0..n {
        for y in x..n {
            let v = ads[x].mul(&ads[y]).expect("square").trace();
            k[(y, x)] = v.clone();
            k[(x, y)] = v;
        }
    }
    k
}

fn bilinear(k: &Matrix, u: &[RadicalNumber], v: &[RadicalNumber]) -> RadicalNumber {
    u.iter().zip(k.mul_vec(v)).map(|(a, b)| a * &b).sum()
}

fn combine(basis: &[TensorPolynomial], coords: &[RadicalNumber]) -> TensorPolynomial {
    basis
        .iter()
        .zip(coords)
        .fold(TensorPolynomial::zero(), |acc, (p, c)| acc.add_scaled(c, p))
}

/// Cartan subalgebra in coordinates of `sc`'s basis.
///
/// An abelian algebra is its own Cartan subalgebra. Otherwise the candidate
/// is the part of the algebra spanned by components with `π = q = 0`
/// (diagonal in the occupation basis); it must be abelian and equal to its
/// own centralizer.
pub fn cartan_subalgebra(sc: &StructureConstants) -> Result<Vec<Vec<RadicalNumber>>> {
    let n = sc.dim();
    let abelian = (0..n).all(|x| (0..n).all(|y| sc.bracket(x, y).iter().all(RadicalNumber::is_zero)));
    if abelian {
        return Ok((0..n).map(|i| unit(n, i)).collect());
    }
    let mut off: Vec<_> = sc
        .basis()
        .iter()
        .flat_map(|p| p.labels())
        .filter(|l| l.pi.twice() != 0 || l.q.twice() != 0)
        .collect();
    off.sort();
    off.dedup();
    let rows: Vec<Vec<RadicalNumber>> = off
        .iter()
        .map(|l| sc.basis().iter().map(|p| p.coeff(l)).collect())
        .collect();
    let h = if rows.is_empty() {
        (0..n).map(|i| unit(n, i)).collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    if h.is_empty() {
        return Err(Error::Cartan("no element with π = q = 0 in the algebra".into()));
    }
    for (i, a) in h.iter().enumerate() {
        for b in &h[i + 1..] {
            if !sc.bracket_vectors(a, b).iter().all(RadicalNumber::is_zero) {
                return Err(Error::Cartan("diagonal elements do not commute".into()));
            }
        }
    }
    let mut stacked = Vec::new();
    for u in &h {
        let ad = adjoint(sc, u);
        stacked.extend((0..n).map(|r| ad.row(r).to_vec()));
    }
    let centralizer = Matrix::from_rows(stacked).nullspace().len();
    if centralizer != h.len() {
        return Err(Error::Cartan(format!(
            "diagonal part has dimension {} but its centralizer has dimension {centralizer}",
            h.len()
        )));
    }
    Ok(h)
}

/// Simultaneous eigenvector of the Cartan adjoints with nonzero weight.
#[derive(Clone, Debug)]
pub struct RootVector {
    /// Eigenvalue under each Cartan element.
    pub weight: Vec<RadicalNumber>,
    /// Coordinates in the algebra basis, first nonzero entry equal to one.
    pub coords: Vec<RadicalNumber>,
    pub vector: TensorPolynomial,
}

pub fn root_decomposition(sc: &StructureConstants, cartan: &[Vec<RadicalNumber>]) -> Result<Vec<RootVector>> {
    let ads: Vec<Matrix> = cartan.iter().map(|h| adjoint(sc, h)).collect();
    let spaces = eigen::joint_eigenspaces(&ads)?;
    let mut roots = Vec::new();
    for (weight, vectors) in spaces {
        if weight.iter().all(RadicalNumber::is_zero) {
            if vectors.len() != cartan.len() {
                return Err(Error::Cartan(format!(
                    "zero weight space has dimension {} but the Cartan subalgebra {}",
                    vectors.len(),
                    cartan.len()
                )));
            }
            continue;
        }
        for v in vectors {
            let lead = v
                .iter()
                .find(|c| !c.is_zero())
                .expect("eigenvector is nonzero")
                .recip()
                .expect("nonzero");
            let coords: Vec<RadicalNumber> = v.iter().map(|c| c * &lead).collect();
            let vector = combine(sc.basis(), &coords);
            roots.push(RootVector {
                weight: weight.clone(),
                coords,
                vector,
            });
        }
    }
    roots.sort_by(|a, b| cmp_weights(&a.weight, &b.weight).reverse());
    Ok(roots)
}

fn cmp_weights(a: &[RadicalNumber], b: &[RadicalNumber]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.cmp_value(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn is_positive(w: &[RadicalNumber]) -> bool {
    w.iter().map(RadicalNumber::signum).find(|s| *s != 0) == Some(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CartanName {
    A1,
    A1xA1,
    A2,
    B2,
    G2,
    /// Abelian: no roots.
    Toral,
    Unclassified,
}

impl fmt::Display for CartanName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CartanName::A1 => "A1",
            CartanName::A1xA1 => "A1xA1",
            CartanName::A2 => "A2",
            CartanName::B2 => "B2",
            CartanName::G2 => "G2",
            CartanName::Toral => "toral",
            CartanName::Unclassified => "unclassified",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CartanType {
    pub name: CartanName,
    pub cartan_matrix: Vec<Vec<i64>>,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .cartan_matrix
            .iter()
            .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{} [{}]", self.name, rows.join(","))
    }
}

/// Roots as functionals on the Cartan subalgebra with the inner product
/// induced by the Killing form.
#[derive(Clone, Debug)]
pub struct RootGeometry {
    /// Inverse of the Killing form restricted to the Cartan subalgebra.
    pub metric: Matrix,
    pub roots: Vec<Vec<RadicalNumber>>,
}

impl RootGeometry {
    pub fn inner(&self, a: &[RadicalNumber], b: &[RadicalNumber]) -> RadicalNumber {
        bilinear(&self.metric, a, b)
    }

    /// `s_α(β) = β − 2(β,α)/(α,α)·α`.
    pub fn reflect(&self, alpha: &[RadicalNumber], beta: &[RadicalNumber]) -> Vec<RadicalNumber> {
        let f = (&self.inner(beta, alpha) * &RadicalNumber::from_integer(2))
            .checked_div(&self.inner(alpha, alpha))
            .expect("roots have nonzero length");
        beta.iter().zip(alpha).map(|(b, a)| b - &(&f * a)).collect()
    }

    pub fn contains(&self, w: &[RadicalNumber]) -> bool {
        self.roots.iter().any(|r| r.as_slice() == w)
    }

    /// Every reflection maps the root set into itself.
    pub fn weyl_closed(&self) -> bool {
        self.roots
            .iter()
            .all(|a| self.roots.iter().all(|b| self.contains(&self.reflect(a, b))))
    }

    /// Distinct squared lengths, ascending.
    pub fn squared_lengths(&self) -> Vec<RadicalNumber> {
        let mut out: Vec<RadicalNumber> = self.roots.iter().map(|r| self.inner(r, r)).collect();
        out.sort_by(|a, b| a.cmp_value(b));
        out.dedup();
        out
    }

    /// Positive roots (lexicographic on the weight) that are not sums of
    /// two positive roots.
    pub fn simple_roots(&self) -> Vec<Vec<RadicalNumber>> {
        let positive: Vec<&Vec<RadicalNumber>> = self.roots.iter().filter(|r| is_positive(r)).collect();
        positive
            .iter()
            .filter(|r| {
                !positive.iter().any(|a| {
                    positive.iter().any(|b| {
                        let sum: Vec<RadicalNumber> = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
                        sum == ***r
                    })
                })
            })
            .map(|r| (*r).clone())
            .collect()
    }

    pub fn classify(&self, rank: usize) -> CartanType {
        if self.roots.is_empty() {
            return CartanType {
                name: CartanName::Toral,
                cartan_matrix: Vec::new(),
            };
        }
        let mut simple = self.simple_roots();
        // Short root first for a stable presentation.
        simple.sort_by(|a, b| self.inner(a, a).cmp_value(&self.inner(b, b)));
        let mut matrix = vec![vec![0i64; simple.len()]; simple.len()];
        let mut integral = true;
        for (i, a) in simple.iter().enumerate() {
            for (j, b) in simple.iter().enumerate() {
                let v = (&self.inner(a, b) * &RadicalNumber::from_integer(2))
                    .checked_div(&self.inner(b, b))
                    .ok()
                    .and_then(|x| x.as_rational())
                    .and_then(|x| x.is_integer().then(|| x.to_i64()).flatten());
                match v {
                    Some(v) => matrix[i][j] = v,
                    None => integral = false,
                }
            }
        }
        let n_roots = self.roots.len();
        let off: Vec<i64> = if simple.len() == 2 {
            vec![matrix[0][1], matrix[1][0]]
        } else {
            Vec::new()
        };
        let name = match (integral, simple.len(), rank, n_roots) {
            (true, 1, 1, 2) => CartanName::A1,
            (true, 2, 2, 4) if off == [0, 0] => CartanName::A1xA1,
            (true, 2, 2, 6) if off == [-1, -1] => CartanName::A2,
            (true, 2, 2, 8) if off == [-1, -2] || off == [-2, -1] => CartanName::B2,
            (true, 2, 2, 12) if off == [-1, -3] || off == [-3, -1] => CartanName::G2,
            _ => CartanName::Unclassified,
        };
        CartanType {
            name,
            cartan_matrix: matrix,
        }
    }
}

/// Everything computed about one candidate algebra.
#[derive(Clone, Debug)]
pub struct Classification {
    pub basis: Vec<TensorPolynomial>,
    pub structure: StructureConstants,
    pub cartan: Vec<TensorPolynomial>,
    pub cartan_coords: Vec<Vec<RadicalNumber>>,
    pub roots: Vec<RootVector>,
    pub killing: Matrix,
    pub killing_nondegenerate: bool,
    pub geometry: RootGeometry,
    pub cartan_type: CartanType,
}

impl Classification {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// The Killing form on a pair of Cartan elements.
    pub fn killing_cartan(&self) -> Matrix {
        let r = self.rank();
        let mut k = Matrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                k[(i, j)] = bilinear(&self.killing, &self.cartan_coords[i], &self.cartan_coords[j]);
            }
        }
        k
    }
}

/// Closure, Cartan subalgebra, roots, Killing form and type of `basis`.
pub fn classify(basis: &[TensorPolynomial], form: &ClosedForm) -> Result<Classification> {
    let structure = StructureConstants::compute(basis, form)?;
    let cartan_coords = cartan_subalgebra(&structure)?;
    let roots = root_decomposition(&structure, &cartan_coords)?;
    let killing = killing_form(&structure);
    let killing_nondegenerate = basis.is_empty() || !killing.determinant().is_zero();
    let cartan: Vec<TensorPolynomial> = cartan_coords.iter().map(|h| combine(basis, h)).collect();
    let rank = cartan.len();
    let mut kh = Matrix::zeros(rank, rank);
    for i in 0..rank {
        for j in 0..rank {
            kh[(i, j)] = bilinear(&killing, &cartan_coords[i], &cartan_coords[j]);
        }
    }
    let weights: Vec<Vec<RadicalNumber>> = roots.iter().map(|r| r.weight.clone()).collect();
    let (geometry, cartan_type) = match kh.inverse() {
        Some(metric) => {
            let g = RootGeometry { metric, roots: weights };
            let t = g.classify(rank);
            (g, t)
        }
        None => {
            let g = RootGeometry {
                metric: Matrix::zeros(rank, rank),
                roots: weights,
            };
            let name = if g.roots.is_empty() {
                CartanName::Toral
            } else {
                CartanName::Unclassified
            };
            (
                g,
                CartanType {
                    name,
                    cartan_matrix: Vec::new(),
                },
            )
        }
    };
    Ok(Classification {
        basis: basis.to_vec(),
        structure,
        cartan,
        cartan_coords,
        roots,
        killing,
        killing_nondegenerate,
        geometry,
        cartan_type,
    })
}
