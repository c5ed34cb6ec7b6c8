//! Square/squarefree splitting by trial division.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Splits `n` as `outer² · radicand` with `radicand` squarefree.
///
/// Returns `None` only if the radicand does not fit in a `u64`. Trial
/// division is fast here because every number we feed it is a product of
/// small primes; a large prime factor just makes it slow, never wrong.
pub fn split_square(n: &BigUint) -> Option<(BigUint, u64)> {
    if let Some(small) = n.to_u128() {
        let (outer, rad) = split_square_u128(small);
        return Some((BigUint::from(outer), u64::try_from(rad).ok()?));
    }
    let mut rest = n.clone();
    let mut outer = BigUint::one();
    let mut radicand = BigUint::one();
    let mut d = BigUint::from(2u32);
    while &d * &d <= rest {
        let mut exp = 0u32;
        loop {
            let (q, r) = rest.div_rem(&d);
            if !r.is_zero() {
                break;
            }
            rest = q;
            exp += 1;
        }
        for _ in 0..exp / 2 {
            outer *= &d;
        }
        if exp % 2 == 1 {
            radicand *= &d;
        }
        if let Some(small) = rest.to_u128() {
            let (o, r) = split_square_u128(small);
            outer *= BigUint::from(o);
            radicand *= BigUint::from(r);
            return Some((outer, radicand.to_u64()?));
        }
        d += 1u32;
    }
    radicand *= rest;
    Some((outer, radicand.to_u64()?))
}

fn split_square_u128(mut n: u128) -> (u128, u128) {
    if n == 0 {
        return (0, 1);
    }
    let mut outer = 1u128;
    let mut radicand = 1u128;
    let mut d = 2u128;
    while d * d <= n {
        let mut exp = 0;
        while n % d == 0 {
            n /= d;
            exp += 1;
        }
        for _ in 0..exp / 2 {
            outer *= d;
        }
        if exp % 2 == 1 {
            radicand *= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    (outer, radicand * n)
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && split_square_u128(n as u128).0 == 1
}

/// Smallest prime factor of `n > 1`.
pub fn smallest_prime_factor(n: u64) -> u64 {
    debug_assert!(n > 1);
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits() {
        assert_eq!(split_square_u128(72), (6, 2));
        assert_eq!(split_square_u128(1), (1, 1));
        assert_eq!(split_square_u128(49), (7, 1));
        assert_eq!(split_square_u128(30), (1, 30));
        let big = BigUint::from(3u32).pow(90) * BigUint::from(10u32);
        let (o, r) = split_square(&big).unwrap();
        assert_eq!(o, BigUint::from(3u32).pow(45));
        assert_eq!(r, 10);
    }

    #[test]
    fn squarefree_and_spf() {
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
        assert_eq!(smallest_prime_factor(35), 5);
        assert_eq!(smallest_prime_factor(13), 13);
    }
}
