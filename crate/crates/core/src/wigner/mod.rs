//! Exact Clebsch-Gordan, 6-j and Racah W coefficients.
//!
//! All three are evaluated from Racah's single-sum formulas over exact
//! factorials. Each value has the form `r·√d`: the alternating sum is a
//! rational and the prefactor under the square root is a rational, so the
//! result is `sum · sqrt_rational(prefactor)`.
//!
//! Phases follow Condon-Shortley: `⟨j1 j1 j2 (J−j1)|J J⟩ > 0`.

mod halfint;

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

pub use halfint::HalfInt;

use crate::error::{Error, Result};
use crate::radix::{RadicalNumber, Rational};

const FACTORIAL_TABLE: usize = 128;

fn factorial(n: i64) -> BigInt {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(FACTORIAL_TABLE);
        t.push(BigInt::one());
        for i in 1..FACTORIAL_TABLE {
            let next = &t[i - 1] * BigInt::from(i);
            t.push(next);
        }
        t
    });
    assert!(n >= 0, "factorial of negative {n}");
    let n = n as usize;
    if n < FACTORIAL_TABLE {
        table[n].clone()
    } else {
        (FACTORIAL_TABLE..=n).fold(table[FACTORIAL_TABLE - 1].clone(), |acc, i| acc * BigInt::from(i))
    }
}

fn fact(n: i64) -> Rational {
    Rational::from_bigint(factorial(n))
}

/// Checks that `j ≥ 0`, `|m| ≤ j` and `j − m` is an integer.
pub fn check_pair(j: HalfInt, m: HalfInt) -> Result<()> {
    let reason = if j.twice() < 0 {
        Some("j must be nonnegative")
    } else if m.twice().abs() > j.twice() {
        Some("|m| exceeds j")
    } else if (j.twice() - m.twice()) % 2 != 0 {
        Some("j and m differ by a half-integer")
    } else {
        None
    };
    match reason {
        Some(reason) => Err(Error::InvalidAngularMomentum {
            j: j.to_string(),
            m: m.to_string(),
            reason,
        }),
        None => Ok(()),
    }
}

fn check_j(j: HalfInt) -> Result<()> {
    if j.twice() < 0 {
        return Err(Error::InvalidAngularMomentum {
            j: j.to_string(),
            m: "-".into(),
            reason: "j must be nonnegative",
        });
    }
    Ok(())
}

/// Triangle rule plus integer perimeter.
pub fn triangle(a: HalfInt, b: HalfInt, c: HalfInt) -> bool {
    let (a, b, c) = (a.twice(), b.twice(), c.twice());
    c >= (a - b).abs() && c <= a + b && (a + b + c) % 2 == 0
}

fn phase(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        Rational::ONE
    } else {
        -Rational::ONE
    }
}

/// Integer value of a sum of half-integers already known to be integral.
fn int(x: HalfInt) -> i64 {
    debug_assert!(x.is_integer(), "{x} is not an integer");
    (x.twice() / 2) as i64
}

type Memo = RwLock<HashMap<[i32; 6], RadicalNumber>>;

fn memoized(memo: &'static OnceLock<Memo>, key: [i32; 6], f: impl FnOnce() -> RadicalNumber) -> RadicalNumber {
    let memo = memo.get_or_init(Default::default);
    if let Some(v) = memo.read().expect("memo poisoned").get(&key) {
        return v.clone();
    }
    let v = f();
    memo.write().expect("memo poisoned").insert(key, v.clone());
    v
}

/// Clebsch-Gordan coefficient `⟨j1 m1 j2 m2|J M⟩`.
///
/// Zero when `M ≠ m1 + m2` or the triangle rule fails; malformed `(j, m)`
/// pairs are rejected.
pub fn cg(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> Result<RadicalNumber> {
    check_pair(j1, m1)?;
    check_pair(j2, m2)?;
    check_pair(j, m)?;
    if m != m1 + m2 || !triangle(j1, j2, j) {
        return Ok(RadicalNumber::zero());
    }
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let key = [j1, m1, j2, m2, j, m].map(HalfInt::twice);
    Ok(memoized(&MEMO, key, || cg_racah(j1, m1, j2, m2, j, m)))
}

fn cg_racah(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> RadicalNumber {
    let a = int(j1 + j2 - j);
    let b = int(j1 - j2 + j);
    let c = int(j2 - j1 + j);
    let d = int(j1 + j2 + j) + 1;
    let j1m = int(j1 - m1);
    let j1p = int(j1 + m1);
    let j2m = int(j2 - m2);
    let j2p = int(j2 + m2);
    let jm = int(j - m);
    let jp = int(j + m);
    let prefactor = Rational::from_integer(j.multiplicity())
        * fact(a)
        * fact(b)
        * fact(c)
        * fact(jp)
        * fact(jm)
        * fact(j1m)
        * fact(j1p)
        * fact(j2m)
        * fact(j2p)
        / fact(d);
    // Remaining factorial arguments: J − j2 + m1 + k and J − j1 − m2 + k.
    let e = int(j - j2 + m1);
    let f = int(j - j1 - m2);
    let k_min = 0.max(-e).max(-f);
    let k_max = a.min(j1m).min(j2p);
    let mut sum = Rational::ZERO;
    for k in k_min..=k_max {
        let denom = fact(k) * fact(a - k) * fact(j1m - k) * fact(j2p - k) * fact(e + k) * fact(f + k);
        sum += &(phase(k) / denom);
    }
    RadicalNumber::sqrt_rational(&prefactor)
        .expect("prefactor is a product of factorials")
        .scale(&sum)
}

fn delta_squared(a: HalfInt, b: HalfInt, c: HalfInt) -> Rational {
    fact(int(a + b - c)) * fact(int(a - b + c)) * fact(int(b + c - a)) / fact(int(a + b + c) + 1)
}

/// Wigner 6-j symbol `{a b c; d e f}`.
///
/// Zero unless all four triads `(a b c)`, `(a e f)`, `(d b f)`, `(d e c)`
/// satisfy the triangle rule with integer perimeter.
pub fn six_j(a: HalfInt, b: HalfInt, c: HalfInt, d: HalfInt, e: HalfInt, f: HalfInt) -> Result<RadicalNumber> {
    for x in [a, b, c, d, e, f] {
        check_j(x)?;
    }
    if !(triangle(a, b, c) && triangle(a, e, f) && triangle(d, b, f) && triangle(d, e, c)) {
        return Ok(RadicalNumber::zero());
    }
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let key = [a, b, c, d, e, f].map(HalfInt::twice);
    Ok(memoized(&MEMO, key, || six_j_racah(a, b, c, d, e, f)))
}

fn six_j_racah(a: HalfInt, b: HalfInt, c: HalfInt, d: HalfInt, e: HalfInt, f: HalfInt) -> RadicalNumber {
    let prefactor = delta_squared(a, b, c) * delta_squared(a, e, f) * delta_squared(d, b, f) * delta_squared(d, e, c);
    let abc = int(a + b + c);
    let aef = int(a + e + f);
    let dbf = int(d + b + f);
    let dec = int(d + e + c);
    let abde = int(a + b + d + e);
    let acdf = int(a + c + d + f);
    let bcef = int(b + c + e + f);
    let t_min = abc.max(aef).max(dbf).max(dec);
    let t_max = abde.min(acdf).min(bcef);
    let mut sum = Rational::ZERO;
    for t in t_min..=t_max {
        let denom = fact(t - abc)
            * fact(t - aef)
            * fact(t - dbf)
            * fact(t - dec)
            * fact(abde - t)
            * fact(acdf - t)
            * fact(bcef - t);
        sum += &(phase(t) * fact(t + 1) / denom);
    }
    RadicalNumber::sqrt_rational(&prefactor)
        .expect("prefactor is a product of factorials")
        .scale(&sum)
}

/// Racah coefficient `W(abcd; ef) = (−1)^(a+b+c+d) {a b e; d c f}`.
pub fn racah_w(a: HalfInt, b: HalfInt, c: HalfInt, d: HalfInt, e: HalfInt, f: HalfInt) -> Result<RadicalNumber> {
    let sixj = six_j(a, b, e, d, c, f)?;
    if sixj.is_zero() {
        return Ok(sixj);
    }
    Ok(sixj.scale(&phase(int(a + b + c + d))))
}
