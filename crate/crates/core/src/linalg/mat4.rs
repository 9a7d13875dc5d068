//! Fixed-size 4×4 rational matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Poly;
use super::rational::{parse_rational, Rational};
use crate::error::{Error, Result};

/// A 4×4 matrix with exact rational entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat4(pub [[Rational; 4]; 4]);

impl Mat4 {
    /// Matrix with entries `f(i, j)`.
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    /// The zero matrix.
    pub fn zero() -> Self {
        Mat4::from_fn(|_, _| Rational::zero())
    }

    /// The identity matrix.
    pub fn identity() -> Self {
        Mat4::scalar(Rational::one())
    }

    /// `c · I`.
    pub fn scalar(c: Rational) -> Self {
        Mat4::from_fn(|i, j| if i == j { c.clone() } else { Rational::zero() })
    }

    /// Diagonal matrix.
    pub fn diag(d: [Rational; 4]) -> Self {
        Mat4::from_fn(|i, j| if i == j { d[i].clone() } else { Rational::zero() })
    }

    /// Matrix from integer rows.
    pub fn from_ints(rows: [[i64; 4]; 4]) -> Self {
        Mat4::from_fn(|i, j| Rational::from_integer(rows[i][j].into()))
    }

    /// Matrix unit `E_{ij}` with 1-based indices, as in the usual notation.
    pub fn unit(i: usize, j: usize) -> Self {
        Mat4::from_fn(|r, c| {
            if r + 1 == i && c + 1 == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Entry `(i, j)` (0-based).
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.0[i][j]
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_zero())
    }

    /// True when every off-diagonal entry is zero.
    pub fn is_diagonal(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| i == j || self.0[i][j].is_zero()))
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> Self {
        Mat4::from_fn(|i, j| &self.0[i][j] * c)
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        Mat4::from_fn(|i, j| self.0[j][i].clone())
    }

    /// Trace.
    pub fn trace(&self) -> Rational {
        (0..4).map(|i| self.0[i][i].clone()).sum()
    }

    /// Row-major flattening into 16 entries (the fixed echelon order).
    pub fn flatten(&self) -> Vec<Rational> {
        self.0.iter().flatten().cloned().collect()
    }

    /// Inverse of [`Mat4::flatten`]. Panics unless `v.len() == 16`.
    pub fn from_flat(v: &[Rational]) -> Self {
        assert_eq!(v.len(), 16);
        Mat4::from_fn(|i, j| v[4 * i + j].clone())
    }

    /// Non-negative integer power.
    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Mat4::identity(), |acc, _| &acc * self)
    }

    /// Gaussian elimination on a copy; returns `(echelon rows, pivot columns, det sign/scale)`.
    fn eliminate(&self) -> (Vec<[Rational; 4]>, Vec<usize>, Rational) {
        let mut rows: Vec<[Rational; 4]> = self.0.to_vec();
        let mut pivots = Vec::new();
        let mut det = Rational::one();
        let mut r = 0;
        for c in 0..4 {
            let Some(p) = (r..4).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                rows.swap(p, r);
                det = -det;
            }
            let pv = rows[r][c].clone();
            det *= &pv;
            let inv = pv.recip();
            for x in rows[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..4 {
                if i != r && !rows[i][c].is_zero() {
                    let f = rows[i][c].clone();
                    for j in 0..4 {
                        let d = &f * &rows[r][j];
                        rows[i][j] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (rows, pivots, det)
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        self.eliminate().1.len()
    }

    /// Exact determinant.
    pub fn det(&self) -> Rational {
        let (_, piv, det) = self.eliminate();
        if piv.len() < 4 {
            Rational::zero()
        } else {
            det
        }
    }

    /// Basis of the right kernel `{v : m v = 0}`.
    pub fn kernel(&self) -> Vec<[Rational; 4]> {
        let (rows, pivots, _) = self.eliminate();
        let free: Vec<usize> = (0..4).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
                v[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -rows[r][f].clone();
                }
                v
            })
            .collect()
    }

    /// Exact inverse.
    pub fn inverse(&self) -> Result<Mat4> {
        let mut a: Vec<Vec<Rational>> = self.0.iter().map(|r| r.to_vec()).collect();
        let mut inv: Vec<Vec<Rational>> = Mat4::identity().0.iter().map(|r| r.to_vec()).collect();
        for c in 0..4 {
            let p = (c..4).find(|&i| !a[i][c].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(p, c);
            inv.swap(p, c);
            let pinv = a[c][c].recip();
            for j in 0..4 {
                a[c][j] *= &pinv;
                inv[c][j] *= &pinv;
            }
            for i in 0..4 {
                if i != c && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..4 {
                        let d1 = &f * &a[c][j];
                        a[i][j] -= d1;
                        let d2 = &f * &inv[c][j];
                        inv[i][j] -= d2;
                    }
                }
            }
        }
        Ok(Mat4::from_fn(|i, j| inv[i][j].clone()))
    }

    /// Characteristic polynomial `det(λI − m)` via Faddeev–LeVerrier.
    pub fn char_poly(&self) -> Poly {
        let n = 4;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut mk = Mat4::zero();
        for k in 1..=n {
            mk = &(self * &mk) + &Mat4::scalar(coeffs[n - k + 1].clone());
            let t = (self * &mk).trace();
            coeffs[n - k] = -t / Rational::from_integer((k as i64).into());
        }
        Poly::new(coeffs)
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Rational; 4]) -> [Rational; 4] {
        std::array::from_fn(|i| (0..4).map(|j| &self.0[i][j] * &v[j]).sum())
    }
}

impl Add for &Mat4 {
    type Output = Mat4;
    fn add(self, o: &Mat4) -> Mat4 {
        Mat4::from_fn(|i, j| &self.0[i][j] + &o.0[i][j])
    }
}

impl Sub for &Mat4 {
    type Output = Mat4;
    fn sub(self, o: &Mat4) -> Mat4 {
        Mat4::from_fn(|i, j| &self.0[i][j] - &o.0[i][j])
    }
}

impl Neg for &Mat4 {
    type Output = Mat4;
    fn neg(self) -> Mat4 {
        Mat4::from_fn(|i, j| -&self.0[i][j])
    }
}

impl Mul for &Mat4 {
    type Output = Mat4;
    fn mul(self, o: &Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for k in 0..4 {
                let a = &self.0[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..4 {
                    if !o.0[k][j].is_zero() {
                        out.0[i][j] += a * &o.0[k][j];
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.0.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
            if i < 3 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Mat4 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .0
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat4 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
            return Err(D::Error::custom("matrix must be 4 rows of 4 entries"));
        }
        let mut m = Mat4::zero();
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                let text = match v {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) if n.is_i64() => n.to_string(),
                    _ => return Err(D::Error::custom("entries must be rational strings or integers")),
                };
                m.0[i][j] = parse_rational(&text).map_err(D::Error::custom)?;
            }
        }
        Ok(m)
    }
}
