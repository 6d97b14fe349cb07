//! Exact arithmetic: binomial coefficients, rationals and their rendering.
//!
//! Every sum and bound in the crate is a [`Rational`]. Nothing is ever
//! rounded during computation; [`to_decimal`] exists only for display.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Number of significant digits used by [`to_decimal`].
pub const DECIMAL_DIGITS: usize = 12;

/// `C(a, b)`, with the convention that it vanishes outside `0 <= b <= a`.
pub fn binomial(a: u64, b: i64) -> BigUint {
    if b < 0 || b as u64 > a {
        return BigUint::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigUint::one();
    for i in 0..b {
        // acc * (a - i) is always divisible by (i + 1) at this point.
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn from_biguint(v: BigUint) -> Rational {
    Rational::from_integer(BigInt::from_biguint(Sign::Plus, v))
}

/// `1 / v` for a positive integer `v`.
pub fn recip(v: BigUint) -> Rational {
    Rational::new(BigInt::one(), BigInt::from_biguint(Sign::Plus, v))
}

/// `q^e` for a nonnegative integer exponent.
pub fn pow(q: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * q)
}

/// Renders as `"p/q"`, including `"3/1"` for integers.
pub fn to_ratio_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_ratio(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e as usize)
}

/// Decimal rendering with [`DECIMAL_DIGITS`] significant digits, rounding
/// half to even, formatted like C's `%.12g`.
pub fn to_decimal(q: &Rational) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let negative = q.is_negative();
    let num = q.numer().abs();
    let den = q.denom().clone();

    // exponent e with 10^e <= |q| < 10^(e+1)
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    let ge = |e: i64| -> bool {
        if e >= 0 {
            num >= &den * pow10(e as u32)
        } else {
            &num * pow10((-e) as u32) >= den
        }
    };
    while !ge(e) {
        e -= 1;
    }
    while ge(e + 1) {
        e += 1;
    }

    let shift = DECIMAL_DIGITS as i64 - 1 - e;
    let (n, d) = if shift >= 0 {
        (&num * pow10(shift as u32), den.clone())
    } else {
        (num.clone(), &den * pow10((-shift) as u32))
    };
    let (mut digits, rem) = n.div_rem(&d);
    let twice = rem * 2u32;
    if twice > d || (twice == d && digits.is_odd()) {
        digits += 1u32;
    }
    if digits == pow10(DECIMAL_DIGITS as u32) {
        digits /= 10u32;
        e += 1;
    }

    let mantissa = digits.to_string();
    debug_assert_eq!(mantissa.len(), DECIMAL_DIGITS);
    let body = if e < -4 || e >= DECIMAL_DIGITS as i64 {
        let (head, tail) = mantissa.split_at(1);
        let tail = tail.trim_end_matches('0');
        let sign = if e < 0 { '-' } else { '+' };
        if tail.is_empty() {
            format!("{head}e{sign}{:02}", e.abs())
        } else {
            format!("{head}.{tail}e{sign}{:02}", e.abs())
        }
    } else if e >= 0 {
        let (int_part, frac) = mantissa.split_at(e as usize + 1);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac}")
        }
    } else {
        let zeros = "0".repeat((-e - 1) as usize);
        format!("0.{zeros}{}", mantissa.trim_end_matches('0'))
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}
