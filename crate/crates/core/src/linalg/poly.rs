//! Univariate polynomials over ℚ, with exact rational-root extraction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mat4::Mat4;
use super::rational::{lcm_denominators, simplest_between, sqrt_exact, Rational};
use crate::error::{Error, Result};

/// Polynomial with rational coefficients, lowest degree first.
///
/// The coefficient vector never has trailing zeros, so the zero polynomial is
/// the empty vector and structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    /// Build from coefficients (lowest degree first), trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Build from integer coefficients, lowest degree first.
    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Poly::new(vec![-r.clone(), Rational::one()])
    }

    /// Coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Monic associate (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Sum.
    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    /// Difference.
    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    /// Product.
    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lead_inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut qv = vec![Rational::zero(); r.len() - dd];
        for k in (0..qv.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            qv[k] = c;
        }
        r.truncate(dd);
        (Poly::new(qv), Poly::new(r))
    }

    /// Monic greatest common divisor (gcd(0, 0) = 0).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Evaluate at a rational point (Horner).
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Evaluate at a 4×4 matrix (Horner).
    pub fn eval_mat(&self, m: &Mat4) -> Mat4 {
        let mut acc = Mat4::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Mat4::scalar(c.clone());
        }
        acc
    }

    /// Monic squarefree part `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Primitive integer coefficients with positive leading coefficient.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let l = lcm_denominators(self.coeffs.iter());
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) {
            -1
        } else {
            1
        };
        ints.into_iter().map(|c| c / &g * sign).collect()
    }

    /// All rational roots with multiplicities, sorted ascending.
    ///
    /// Roots of the squarefree part are isolated with a Sturm sequence and
    /// refined until the interval can hold at most one fraction whose
    /// denominator divides the leading coefficient (rational root theorem);
    /// the simplest fraction in that interval is then tested exactly.
    pub fn rational_roots(&self) -> Result<Vec<(Rational, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut p = self.clone();
        let mut out = Vec::new();
        let mut zero_mult = 0;
        while p.coeff(0).is_zero() && p.degree().unwrap_or(0) > 0 {
            p = Poly::new(p.coeffs[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            out.push((Rational::zero(), zero_mult));
        }
        let sf = p.squarefree_part();
        for r in squarefree_rational_roots(&sf) {
            let mut m = 0;
            let lin = Poly::linear_root(&r);
            loop {
                let (qt, rem) = p.divrem(&lin);
                if !rem.is_zero() {
                    break;
                }
                p = qt;
                m += 1;
            }
            out.push((r, m));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// True when the polynomial splits into rational linear factors.
    pub fn splits(&self) -> Result<bool> {
        let roots = self.rational_roots()?;
        let total: usize = roots.iter().map(|(_, m)| m).sum();
        Ok(Some(total) == self.degree())
    }
}

/// Rational roots of a squarefree polynomial with nonzero constant term.
fn squarefree_rational_roots(p: &Poly) -> Vec<Rational> {
    let deg = match p.degree() {
        None | Some(0) => return vec![],
        Some(d) => d,
    };
    if deg == 1 {
        return vec![-p.coeff(0) / p.coeff(1)];
    }
    if deg == 2 {
        let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
        let disc = &b * &b - Rational::from_integer(4.into()) * &a * &c;
        return match sqrt_exact(&disc) {
            Some(s) => {
                let two_a = &a + &a;
                let mut v = vec![(-&b - &s) / &two_a, (-&b + &s) / &two_a];
                v.dedup();
                v
            }
            None => vec![],
        };
    }
    // Even polynomial: roots are ± square roots of the roots of h(y) = p(√y).
    if p.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero()) {
        let h = Poly::new(p.coeffs.iter().step_by(2).cloned().collect());
        let mut v = Vec::new();
        for y in squarefree_rational_roots(&h.squarefree_part()) {
            if let Some(s) = sqrt_exact(&y) {
                if s.is_zero() {
                    v.push(s);
                } else {
                    v.push(-s.clone());
                    v.push(s);
                }
            }
        }
        return v;
    }
    sturm_rational_roots(p)
}

/// Sign variations of the Sturm chain at `x`.
fn variations(chain: &[Poly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in chain {
        let v = s.eval(x);
        let sg = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if sg != 0 {
            if last != 0 && sg != last {
                count += 1;
            }
            last = sg;
        }
    }
    count
}

fn sturm_rational_roots(p: &Poly) -> Vec<Rational> {
    let ints = p.primitive_integer();
    let lead = ints.last().unwrap().abs();
    let lead_q = Rational::from_integer(lead.clone());
    // Two distinct fractions with denominators ≤ lead differ by ≥ 1/lead².
    let width = (&lead_q * &lead_q).recip();
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].divrem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(r.scale(&-Rational::one()));
    }
    let lc = p.leading();
    let bound = Rational::one()
        + p.coeffs[..p.coeffs.len() - 1]
            .iter()
            .map(|c| (c / &lc).abs())
            .max()
            .unwrap_or_else(Rational::zero);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = variations(&chain, &lo) - variations(&chain, &hi);
        if count == 0 {
            continue;
        }
        if count > 1 {
            let mid = (&lo + &hi) / Rational::from_integer(2.into());
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
            continue;
        }
        // Exactly one root in (lo, hi]: bisect by sign until narrow enough.
        let (mut lo, mut hi) = (lo, hi);
        if p.eval(&hi).is_zero() {
            out.push(hi);
            continue;
        }
        let mut found = None;
        while &hi - &lo >= width {
            let mid = (&lo + &hi) / Rational::from_integer(2.into());
            let vm = p.eval(&mid);
            if vm.is_zero() {
                found = Some(mid);
                break;
            }
            if vm.is_positive() == p.eval(&hi).is_positive() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if let Some(r) = found {
            out.push(r);
            continue;
        }
        let cand = simplest_between(&lo, &hi);
        if p.eval(&cand).is_zero() {
            out.push(cand);
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{q, qf};
    use proptest::prelude::*;

    #[test]
    fn arithmetic_and_division() {
        let p = Poly::from_ints(&[-2, -1, 1]); // λ² − λ − 2
        let d = Poly::from_ints(&[1, 1]);
        let (qt, r) = p.divrem(&d);
        assert_eq!(qt, Poly::from_ints(&[-2, 1]));
        assert!(r.is_zero());
        assert_eq!(p.gcd(&d), d);
        assert_eq!(p.derivative(), Poly::from_ints(&[-1, 2]));
        assert_eq!(p.to_string(), "λ^2 - λ - 2");
    }

    #[test]
    fn rational_roots_examples() {
        // λ² − λ − 2 = (λ − 2)(λ + 1)
        assert_eq!(
            Poly::from_ints(&[-2, -1, 1]).rational_roots().unwrap(),
            vec![(q(-1), 1), (q(2), 1)]
        );
        assert_eq!(
            Poly::from_ints(&[0, 0, 0, 0, 1]).rational_roots().unwrap(),
            vec![(q(0), 4)]
        );
        // λ³ − λ² − Bλ − A with A = 1/27, B = −1/3 has the triple root 1/3.
        let p = Poly::new(vec![qf(-1, 27), qf(1, 3), q(-1), q(1)]);
        assert_eq!(p.rational_roots().unwrap(), vec![(qf(1, 3), 3)]);
        assert_eq!(Poly::zero().rational_roots(), Err(Error::ZeroPolynomial));
        // x² − 2 has no rational roots; (x − 1/3)(x² + 1)(x + 7/2)
        assert!(Poly::from_ints(&[-2, 0, 1]).rational_roots().unwrap().is_empty());
        let p = Poly::linear_root(&qf(1, 3))
            .mul(&Poly::from_ints(&[1, 0, 1]))
            .mul(&Poly::linear_root(&qf(-7, 2)));
        assert_eq!(p.rational_roots().unwrap(), vec![(qf(-7, 2), 1), (qf(1, 3), 1)]);
    }

    #[test]
    fn close_roots_are_separated() {
        let p = Poly::linear_root(&qf(1000, 1001))
            .mul(&Poly::linear_root(&qf(999, 1000)))
            .mul(&Poly::linear_root(&qf(-5, 3)));
        assert_eq!(
            p.rational_roots().unwrap(),
            vec![(qf(-5, 3), 1), (qf(999, 1000), 1), (qf(1000, 1001), 1)]
        );
    }

    proptest! {
        #[test]
        fn roots_of_products_of_linear_factors(
            rs in proptest::collection::vec((-30i64..30, 1i64..12), 1..6),
            extra in 0i64..5,
        ) {
            let mut p = Poly::constant(q(3));
            for (n, d) in &rs {
                p = p.mul(&Poly::linear_root(&qf(*n, *d)));
            }
            // Irreducible quadratic factor x² + extra + 1 contributes nothing.
            p = p.mul(&Poly::from_ints(&[extra + 1, 0, 1]));
            let roots = p.rational_roots().unwrap();
            let total: usize = roots.iter().map(|r| r.1).sum();
            prop_assert_eq!(total, rs.len());
            for (r, _) in &roots {
                prop_assert!(p.eval(r).is_zero());
            }
        }
    }
}
