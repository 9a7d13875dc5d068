//! Exact rational scalars and the helpers built on top of them.
//!
//! The scalar type is [`num_rational::BigRational`]; it is always kept in
//! lowest terms with a positive denominator, and its `Display` produces the
//! canonical `"p/q"` / `"p"` text form used by every JSON interface.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision exact rational number.
pub type Rational = num_rational::BigRational;

/// Integer rational `n`.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p"`, `"p/q"` or `"-p/q"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    if t.is_empty() {
        return Err(bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(Rational::new(n, d))
}

/// Parse a comma-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(parse_rational)
        .collect()
}

/// Exact square root if `r` is the square of a rational (returns the nonnegative root).
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Exact cube root if `r` is the cube of a rational.
pub fn cbrt_exact(r: &Rational) -> Option<Rational> {
    let n = r.numer().cbrt();
    let d = r.denom().cbrt();
    if &(&n * &n * &n) == r.numer() && &(&d * &d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Factor `|n|` into `(prime, exponent)` pairs by trial division.
///
/// Trial division stops at `10^7`; any cofactor left over is returned as a
/// single "prime" (it is a perfect power check below that matters for the
/// callers, and catalog parameters are tiny).
fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(10_000_000u64);
    while &p * &p <= m && p <= limit {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if !m.is_one() {
        // Leftover cofactor: collapse perfect squares/cubes so kernels stay canonical.
        let s = m.sqrt();
        if &s * &s == m {
            out.push((s, 2));
        } else {
            out.push((m, 1));
        }
    }
    out
}

/// Representative of `r` modulo nonzero rational `k`-th powers, as an integer
/// with sign preserved (for `k = 2`: the squarefree kernel of `p·q`).
fn power_free_kernel(r: &Rational, k: u32) -> Rational {
    if r.is_zero() {
        return Rational::zero();
    }
    // p/q ~ p·q^(k-1) modulo k-th powers.
    let mut m = r.numer().clone() * r.denom().pow(k - 1);
    let sign = m.is_negative();
    m = m.abs();
    let mut kernel = BigInt::one();
    for (p, e) in factor(&m) {
        kernel *= p.pow(e % k);
    }
    // For odd k, -1 is itself a k-th power and the sign is absorbed.
    if sign && k % 2 == 0 {
        kernel = -kernel;
    }
    Rational::from_integer(kernel)
}

/// Canonical representative of `r` modulo squares of nonzero rationals,
/// sign preserved: the squarefree integer kernel.
pub fn squarefree_kernel(r: &Rational) -> Rational {
    power_free_kernel(r, 2)
}

/// Canonical representative of `r` modulo cubes of nonzero rationals
/// (always positive, since `-1` is a cube).
pub fn cubefree_kernel(r: &Rational) -> Rational {
    power_free_kernel(r, 3)
}

/// Least common multiple of the denominators.
pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Simplest rational (smallest denominator) in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if &next <= hi {
        return next;
    }
    // Both endpoints lie strictly inside (fl, fl + 1).
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "2", "-3/16", "7/3", "-1"] {
            assert_eq!(parse_rational(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_rational(" 4/6 ").unwrap().to_string(), "2/3");
        assert_eq!(parse_rational("3/-6").unwrap().to_string(), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn exact_roots() {
        assert_eq!(sqrt_exact(&qf(9, 4)), Some(qf(3, 2)));
        assert_eq!(sqrt_exact(&qf(2, 1)), None);
        assert_eq!(sqrt_exact(&qf(-4, 1)), None);
        assert_eq!(cbrt_exact(&qf(-8, 27)), Some(qf(-2, 3)));
        assert_eq!(cbrt_exact(&qf(4, 1)), None);
    }

    #[test]
    fn kernels() {
        assert_eq!(squarefree_kernel(&q(12)), q(3));
        assert_eq!(squarefree_kernel(&qf(-1, 4)), q(-1));
        assert_eq!(squarefree_kernel(&qf(2, 9)), q(2));
        assert_eq!(squarefree_kernel(&qf(1, 2)), q(2));
        assert_eq!(squarefree_kernel(&q(0)), q(0));
        assert_eq!(cubefree_kernel(&q(-16)), q(2));
        assert_eq!(cubefree_kernel(&qf(1, 2)), q(4));
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_between(&qf(3, 10), &qf(4, 10)), qf(1, 3));
        assert_eq!(simplest_between(&qf(-7, 5), &qf(-6, 5)), qf(-4, 3));
        assert_eq!(simplest_between(&q(2), &q(5)), q(2));
    }
}
