//! Exact rational scalars shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

/// Exact rational coefficient.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `7`, `-3/4` or `+2` into an exact rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `base^exp` for any integer exponent; `base` must be nonzero when `exp < 0`.
pub fn pow_q(base: &Q, exp: i64) -> Q {
    let mut acc = Q::one();
    let b = if exp < 0 { base.recip() } else { base.clone() };
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    acc
}

/// Random rational with numerator and denominator bounded by `bound` in absolute value.
pub fn random_q<R: Rng>(rng: &mut R, bound: i64) -> Q {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    frac(n, d)
}

/// Random nonzero rational, same bounds as [`random_q`].
pub fn random_nonzero_q<R: Rng>(rng: &mut R, bound: i64) -> Q {
    loop {
        let x = random_q(rng, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn factorial(n: u64) -> Q {
    (1..=n as i64).fold(Q::one(), |acc, k| acc * q(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6"), Some(frac(1, 2)));
        assert_eq!(parse_q("-4"), Some(q(-4)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(fmt_q(&frac(-6, 4)), "-3/2");
        assert_eq!(fmt_q(&q(5)), "5");
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow_q(&q(2), -3), frac(1, 8));
        assert_eq!(pow_q(&frac(2, 3), 2), frac(4, 9));
        assert_eq!(pow_q(&q(7), 0), q(1));
    }
}
