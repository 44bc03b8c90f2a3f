//! Exact rational scalars and the few integer helpers the rest of the crate
//! needs (factorials, falling factorials, primitive normalization).
//!
//! Everything downstream reduces to linear algebra over these scalars, so no
//! floating point appears anywhere in the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rational = BigRational;

/// `n/d` as a [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// `n · (n−1) ⋯ (n−k+1)`, i.e. `n!/(n−k)!`. Zero when `k > n`.
pub fn falling_factorial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= BigInt::from(n - j);
    }
    acc
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    &falling_factorial(n, k) / &factorial(k)
}

/// Parse `"p/q"` or `"p"` into a reduced rational. Returns `None` on malformed
/// input or a zero denominator.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().ok()?;
            let d: BigInt = den.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(n))
        }
    }
}

/// Render in lowest terms: `"p/q"`, or just `"p"` for integers.
pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scale a rational vector so its entries become coprime integers and the
/// highest-index nonzero entry is positive. The zero vector is returned as-is.
///
/// This is the normal form used for ideal generators and gcds: deterministic,
/// integer, and sign-fixed.
pub fn primitive_normalize(v: &[Rational]) -> Vec<Rational> {
    if v.iter().all(Zero::is_zero) {
        return v.to_vec();
    }
    let mut denom_lcm = BigInt::one();
    for x in v {
        if !x.is_zero() {
            denom_lcm = denom_lcm.lcm(x.denom());
        }
    }
    let scaled: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&denom_lcm / x.denom()))
        .collect();
    let mut content = BigInt::zero();
    for n in &scaled {
        content = content.gcd(n);
    }
    let leading_negative = scaled
        .iter()
        .rev()
        .find(|n| !n.is_zero())
        .map(Signed::is_negative)
        .unwrap_or(false);
    if leading_negative {
        content = -content;
    }
    scaled
        .into_iter()
        .map(|n| Rational::from_integer(n / &content))
        .collect()
}
