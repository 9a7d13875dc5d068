//! Exact arithmetic in quadratic fields `ℚ(√d)`.
//!
//! Parameters produced by the square-root normalization (and the bases of the
//! corresponding isomorphisms) live in `ℚ(√(1+4α))`; representing them exactly
//! makes every modulus/argument comparison decidable, so no interval arithmetic
//! is needed.  `d` may be negative (`√d = i·√|d|`), which also covers
//! isomorphisms that only exist over `ℚ(i)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::linalg::{sqrt_exact, Rational};

/// `re + im·√d`; `d` is a squarefree integer other than 0 and 1 whenever
/// `im ≠ 0`, and `d = 0` for plain rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    re: Rational,
    im: Rational,
    d: BigInt,
}

fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    // n = s²·k with k squarefree (sign kept in k); trial division is enough
    // for the small radicands that occur.
    let sign = n.is_negative();
    let mut m = n.abs();
    let mut s = BigInt::one();
    let mut k = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            k *= &p;
        }
        p += 1u32;
    }
    k *= m;
    if sign {
        k = -k;
    }
    (s, k)
}

impl Surd {
    /// Embed a rational.
    pub fn rational(q: Rational) -> Self {
        Surd {
            re: q,
            im: Rational::zero(),
            d: BigInt::zero(),
        }
    }

    /// Zero.
    pub fn zero() -> Self {
        Surd::rational(Rational::zero())
    }

    /// One.
    pub fn one() -> Self {
        Surd::rational(Rational::one())
    }

    /// Principal square root of a rational: the nonnegative root for `r ≥ 0`,
    /// `i·√|r|` for `r < 0`.
    pub fn sqrt(r: &Rational) -> Self {
        if let Some(s) = sqrt_exact(r) {
            return Surd::rational(s);
        }
        // √(p/q) = √(p·q)/q
        let n = r.numer() * r.denom();
        let (s, k) = squarefree_split(&n);
        if k.is_one() {
            return Surd::rational(Rational::new(s, r.denom().clone()));
        }
        Surd {
            re: Rational::zero(),
            im: Rational::new(s, r.denom().clone()),
            d: k,
        }
    }

    /// Rational part.
    pub fn re(&self) -> &Rational {
        &self.re
    }

    /// Coefficient of `√d`.
    pub fn im(&self) -> &Rational {
        &self.im
    }

    /// Radicand (0 for rationals).
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    /// True when the value is rational.
    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    /// The value as a rational, if it is one.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.re)
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Galois conjugate `re − im·√d`.
    pub fn conj(&self) -> Self {
        Surd::make(self.re.clone(), -self.im.clone(), self.d.clone())
    }

    /// Field norm `re² − d·im²`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re - Rational::from_integer(self.d.clone()) * &self.im * &self.im
    }

    /// True when the number is real (rational or `d > 0`).
    pub fn is_real(&self) -> bool {
        self.im.is_zero() || self.d.is_positive()
    }

    /// Sign of a real value; `None` for non-real values.
    pub fn sign(&self) -> Option<Ordering> {
        if !self.is_real() {
            return None;
        }
        let z = Rational::zero();
        let sa = self.re.cmp(&z);
        let sb = self.im.cmp(&z);
        Some(match (sa, sb) {
            (a, Ordering::Equal) => a,
            (Ordering::Equal, b) => b,
            (a, b) if a == b => a,
            (a, b) => {
                let a2 = &self.re * &self.re;
                let b2d = &self.im * &self.im * Rational::from_integer(self.d.clone());
                if a2 > b2d {
                    a
                } else {
                    b
                }
            }
        })
    }

    /// `|x|²`, as a real element of the same field.
    pub fn modulus_sq(&self) -> Surd {
        if self.is_real() {
            self * self
        } else {
            Surd::rational(self.norm())
        }
    }

    /// Compare `|self|` with `|other|`.
    pub fn cmp_abs(&self, other: &Surd) -> Ordering {
        (&self.modulus_sq() - &other.modulus_sq())
            .sign()
            .expect("moduli are real")
    }

    /// Sign of the imaginary part (`Equal` for real values).
    pub fn imag_sign(&self) -> Ordering {
        if self.is_real() {
            Ordering::Equal
        } else {
            self.im.cmp(&Rational::zero())
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Surd> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Surd::make(&c.re / &n, &c.im / &n, c.d))
    }

    fn make(re: Rational, im: Rational, d: BigInt) -> Self {
        if im.is_zero() {
            Surd::rational(re)
        } else {
            Surd { re, im, d }
        }
    }

    fn field(a: &Surd, b: &Surd) -> BigInt {
        match (a.im.is_zero(), b.im.is_zero()) {
            (true, true) => BigInt::zero(),
            (false, true) => a.d.clone(),
            (true, false) => b.d.clone(),
            (false, false) => {
                assert_eq!(a.d, b.d, "mixing different quadratic fields");
                a.d.clone()
            }
        }
    }
}

impl From<Rational> for Surd {
    fn from(q: Rational) -> Self {
        Surd::rational(q)
    }
}

impl<'a> Add<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn add(self, o: &Surd) -> Surd {
        let d = Surd::field(self, o);
        Surd::make(&self.re + &o.re, &self.im + &o.im, d)
    }
}

impl<'a> Sub<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn sub(self, o: &Surd) -> Surd {
        let d = Surd::field(self, o);
        Surd::make(&self.re - &o.re, &self.im - &o.im, d)
    }
}

impl<'a> Mul<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn mul(self, o: &Surd) -> Surd {
        let d = Surd::field(self, o);
        let dq = Rational::from_integer(d.clone());
        let re = &self.re * &o.re + dq * &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Surd::make(re, im, d)
    }
}

impl<'a> Div<&'a Surd> for &'a Surd {
    type Output = Surd;
    #[allow(clippy::suspicious_arithmetic_impl)] // division is multiplication by the inverse
    fn div(self, o: &Surd) -> Surd {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::make(-self.re.clone(), -self.im.clone(), self.d.clone())
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        &self + &o
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        &self - &o
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        &self * &o
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            if self.im.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.im == Rational::one() {
            write!(f, "sqrt({})", self.d)
        } else if self.im == -Rational::one() {
            write!(f, "-sqrt({})", self.d)
        } else {
            write!(f, "{}*sqrt({})", self.im, self.d)
        }
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qf};
    use proptest::prelude::*;

    #[test]
    fn square_roots() {
        assert_eq!(Surd::sqrt(&qf(1, 4)), Surd::rational(qf(1, 2)));
        let s5 = Surd::sqrt(&q(20));
        assert_eq!((s5.im().clone(), s5.radicand().clone()), (q(2), BigInt::from(5)));
        assert_eq!(&s5 * &s5, Surd::rational(q(20)));
        let i = Surd::sqrt(&q(-1));
        assert_eq!(&i * &i, Surd::rational(q(-1)));
        assert!(!i.is_real());
        let h = Surd::sqrt(&qf(2, 3));
        assert_eq!(&h * &h, Surd::rational(qf(2, 3)));
        assert_eq!(h.to_string(), "1/3*sqrt(6)");
    }

    #[test]
    fn signs_and_moduli() {
        let s2 = Surd::sqrt(&q(2));
        let x = &Surd::rational(q(1)) - &s2; // 1 - √2 < 0
        assert_eq!(x.sign(), Some(Ordering::Less));
        let y = &Surd::rational(qf(3, 2)) - &s2; // 1.5 - 1.414 > 0
        assert_eq!(y.sign(), Some(Ordering::Greater));
        assert_eq!(x.cmp_abs(&y), Ordering::Greater);
        let z = &Surd::rational(q(1)) + &Surd::sqrt(&q(-3)); // |1 + i√3| = 2
        assert_eq!(z.modulus_sq(), Surd::rational(q(4)));
        assert_eq!(z.imag_sign(), Ordering::Greater);
        assert_eq!(z.conj().imag_sign(), Ordering::Less);
    }

    proptest! {
        #[test]
        fn field_axioms(a in -9i64..9, b in -9i64..9, c in -9i64..9, e in -9i64..9, d in prop::sample::select(vec![-3i64, -1, 2, 3, 5])) {
            let r = Surd::sqrt(&q(d));
            let x = &Surd::rational(q(a)) + &(&Surd::rational(q(b)) * &r);
            let y = &Surd::rational(q(c)) + &(&Surd::rational(q(e)) * &r);
            prop_assert_eq!(&(&x * &y) - &(&y * &x), Surd::zero());
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x.clone());
            }
            prop_assert_eq!(Surd::rational((&x * &x.conj()).re().clone()), &x * &x.conj());
        }
    }
}
