//! Exact eigenvalues and simultaneous eigenspaces over the radical field.
//!
//! Roots of a characteristic polynomial are searched in the form `μ·√d`
//! with `μ` rational or a rational quadratic surd. Candidates come from a
//! floating-point root isolation and are accepted only after exact
//! substitution.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Span};
use crate::radix::{RadicalNumber, Rational};

/// Evaluates `Σ c_k x^k` exactly.
fn eval(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::ZERO, |acc, c| &(&acc * x) + c)
}

/// Quotient of `p(x) / (x − r)`; the caller guarantees `p(r) = 0`.
fn deflate(coeffs: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = coeffs.len() - 1;
    let mut out = vec![Rational::ZERO; n];
    let mut carry = Rational::ZERO;
    for k in (0..n).rev() {
        carry = &coeffs[k + 1] + &(&carry * r);
        out[k] = carry.clone();
    }
    out
}

/// Best rational approximation with denominator at most `max_den`.
fn rationalize(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    (k1 != 0).then(|| Rational::new(h1, k1))
}

/// Durand-Kerner iteration on a monic floating-point polynomial.
fn numeric_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32) * radius).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
    for _ in 0..2000 {
        let mut shift = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-12, 0.0);
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            shift = shift.max(step.norm());
        }
        if shift < 1e-15 {
            break;
        }
    }
    z
}

/// Rational roots (with multiplicity) and the irreducible rest of degree
/// at most two, when that is what remains.
fn rational_roots(mut coeffs: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
    let mut roots = Vec::new();
    while coeffs.len() > 1 && coeffs[0].is_zero() {
        coeffs.remove(0);
        roots.push(Rational::ZERO);
    }
    'search: while coeffs.len() > 1 {
        let approx: Vec<f64> = coeffs.iter().map(Rational::to_f64).collect();
        for z in numeric_roots(&approx) {
            if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
                continue;
            }
            for max_den in [1, 12, 1000, 1_000_000] {
                if let Some(r) = rationalize(z.re, max_den) {
                    if eval(&coeffs, &r).is_zero() {
                        coeffs = deflate(&coeffs, &r);
                        roots.push(r);
                        continue 'search;
                    }
                }
            }
        }
        break;
    }
    (roots, coeffs)
}

/// `c / (√d)^k` when it is rational.
fn unscale(c: &RadicalNumber, d: u64, k: usize) -> Option<Rational> {
    let mut v = c.clone();
    let inv_sqrt = RadicalNumber::term(Rational::new(1, d as i64), d);
    for _ in 0..k {
        v = &v * &inv_sqrt;
    }
    v.as_rational()
}

/// All roots of the monic-normalizable polynomial `Σ c_k λ^k` in the radical
/// field, with multiplicity, when they are of the form `μ·√d` for a single
/// `d` and `μ` rational or a rational quadratic surd.
pub fn polynomial_roots(coeffs: &[RadicalNumber]) -> Result<Vec<RadicalNumber>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].recip().ok_or(Error::DivisionByZero)?;
    let monic: Vec<RadicalNumber> = coeffs.iter().map(|c| c * &lead).collect();
    let mut candidates: Vec<u64> = vec![1];
    for c in &monic {
        for (d, _) in c.terms() {
            if !candidates.contains(&d) {
                candidates.push(d);
            }
        }
    }
    // Squarefree parts of λ² for the numeric real roots.
    let approx: Vec<f64> = monic.iter().map(RadicalNumber::approx).collect();
    for z in numeric_roots(&approx) {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) || z.re.abs() < 1e-9 {
            continue;
        }
        if let Some(sq) = rationalize(z.re * z.re, 100_000) {
            if let Ok(root) = RadicalNumber::sqrt_rational(&sq) {
                if let Some((_, d)) = root.as_single_term() {
                    if !candidates.contains(&d) {
                        candidates.push(d);
                    }
                }
            }
        }
    }
    let mut last = Error::EigenvalueOutsideField("coefficients do not share a common radical scale".into());
    for d in candidates {
        match roots_with_scale(&monic, d) {
            Some(Ok(roots)) => return Ok(roots),
            Some(Err(e)) => last = e,
            None => {}
        }
    }
    Err(last)
}

/// Roots `μ·√d` of a monic polynomial, or `None` if the coefficients do not
/// scale rationally with `√d`.
fn roots_with_scale(monic: &[RadicalNumber], d: u64) -> Option<Result<Vec<RadicalNumber>>> {
    let n = monic.len() - 1;
    // Coefficient of λ^(n−k) scales as (√d)^k.
    let mu_poly: Vec<Rational> = (0..=n).map(|j| unscale(&monic[j], d, n - j)).collect::<Option<_>>()?;
    let (mu_roots, rest) = rational_roots(mu_poly);
    let sqrt_d = RadicalNumber::term(Rational::ONE, d);
    let mut roots: Vec<RadicalNumber> = mu_roots
        .iter()
        .map(|m| &RadicalNumber::from(m.clone()) * &sqrt_d)
        .collect();
    match rest.len() {
        1 => {}
        3 => {
            let (c0, c1, c2) = (&rest[0], &rest[1], &rest[2]);
            let disc = &(c1 * c1) - &(&(c0 * c2) * &Rational::from_integer(4));
            if disc.signum() < 0 {
                return Some(Err(Error::EigenvalueOutsideField(format!(
                    "complex pair with discriminant {disc}"
                ))));
            }
            let root = match RadicalNumber::sqrt_rational(&disc) {
                Ok(r) => r,
                Err(e) => return Some(Err(e)),
            };
            let half = (c2 * &Rational::from_integer(2)).recip().expect("leading coefficient");
            let minus_b = RadicalNumber::from(-c1);
            for s in [&root, &-&root] {
                let mu = (&minus_b + s).scale(&half);
                roots.push(&mu * &sqrt_d);
            }
        }
        deg => {
            return Some(Err(Error::EigenvalueOutsideField(format!(
                "an irreducible factor of degree {} remains",
                deg - 1
            ))))
        }
    }
    Some(Ok(roots))
}

/// Matrix of `a` restricted to the invariant subspace spanned by `basis`.
fn restrict(a: &Matrix, basis: &[Vec<RadicalNumber>]) -> Result<Matrix> {
    let span = Span::new(basis, a.rows())?;
    let columns = basis
        .iter()
        .map(|u| {
            span.coordinates(&a.mul_vec(u))
                .map_err(|_| Error::NonSemisimple("subspace is not invariant under a Cartan element".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(&columns))
}

/// A weight (one eigenvalue per matrix) and a basis of its eigenspace.
pub type JointEigenspace = (Vec<RadicalNumber>, Vec<Vec<RadicalNumber>>);

/// Joint eigenspaces of pairwise commuting matrices.
pub fn joint_eigenspaces(mats: &[Matrix]) -> Result<Vec<JointEigenspace>> {
    let n = mats.first().map_or(0, Matrix::rows);
    let identity: Vec<Vec<RadicalNumber>> = (0..n).map(|i| Matrix::identity(n).column(i)).collect();
    let mut spaces = vec![(Vec::new(), identity)];
    for a in mats {
        let mut next = Vec::new();
        for (weight, basis) in spaces {
            let r = restrict(a, &basis)?;
            let mut eigen: Vec<RadicalNumber> = polynomial_roots(&r.characteristic_polynomial())?;
            eigen.sort_by(|x, y| x.cmp_value(y));
            eigen.dedup();
            let mut found = 0;
            for lambda in eigen {
                let mut shifted = r.clone();
                for i in 0..shifted.rows() {
                    shifted[(i, i)] -= &lambda;
                }
                let null = shifted.nullspace();
                found += null.len();
                let vectors: Vec<Vec<RadicalNumber>> = null
                    .iter()
                    .map(|y| {
                        (0..n)
                            .map(|row| basis.iter().zip(y).map(|(u, c)| &u[row] * c).sum())
                            .collect()
                    })
                    .collect();
                let mut w = weight.clone();
                w.push(lambda);
                next.push((w, vectors));
            }
            if found < basis.len() {
                return Err(Error::NonSemisimple(format!(
                    "eigenvectors span {found} of {} dimensions",
                    basis.len()
                )));
            }
        }
        spaces = next;
    }
    Ok(spaces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RadicalNumber {
        s.parse().unwrap()
    }

    #[test]
    fn roots_with_common_radical_scale() {
        // (λ − √5/10)(λ + 3√5/10) λ = λ³ + (√5/5) λ² − (3/20) λ
        let roots = polynomial_roots(&[r("0"), r("-3/20"), r("1/5*sqrt(5)"), r("1")]).unwrap();
        let mut got: Vec<String> = roots.iter().map(ToString::to_string).collect();
        got.sort();
        assert_eq!(got, vec!["-3/10*sqrt(5)", "0", "1/10*sqrt(5)"]);
    }

    #[test]
    fn quadratic_surd_roots() {
        // λ² − 2λ − 1 → 1 ± √2
        let roots = polynomial_roots(&[r("-1"), r("-2"), r("1")]).unwrap();
        assert!(roots.contains(&r("1 + sqrt(2)")) && roots.contains(&r("1 - sqrt(2)")));
        assert!(matches!(
            polynomial_roots(&[r("1"), r("0"), r("1")]),
            Err(Error::EigenvalueOutsideField(_))
        ));
        assert!(matches!(
            polynomial_roots(&[r("-2"), r("0"), r("0"), r("1")]),
            Err(Error::EigenvalueOutsideField(_))
        ));
    }

    #[test]
    fn repeated_roots_and_defective_matrices() {
        let roots = polynomial_roots(&[r("4"), r("-4"), r("1")]).unwrap();
        assert_eq!(roots, vec![r("2"), r("2")]);
        let jordan = Matrix::from_rows(vec![vec![r("1"), r("1")], vec![r("0"), r("1")]]);
        assert!(matches!(joint_eigenspaces(&[jordan]), Err(Error::NonSemisimple(_))));
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        assert_eq!(rationalize(-0.75, 100).unwrap(), Rational::new(-3, 4));
        assert_eq!(rationalize(2.0000000001, 100).unwrap(), Rational::from_integer(2));
    }
}
