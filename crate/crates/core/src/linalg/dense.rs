//! Small dynamically sized rational matrices and row spaces.
//!
//! Used for adjoint representations and abstract algebras, whose dimension
//! (≤ 10) differs from the fixed 4×4 matrix type.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense `rows × cols` rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DMat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl DMat {
    /// Zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DMat {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = DMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// From row vectors (all of equal length).
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        DMat { rows: r, cols: c, data }
    }

    /// From column vectors (all of equal length).
    pub fn from_cols(cols: &[Vec<Rational>]) -> Self {
        DMat::from_rows(cols).transpose()
    }

    /// Number of rows.
    pub fn nrows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    /// Set entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    /// Row `i` as a vector.
    pub fn row(&self, i: usize) -> Vec<Rational> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let mut t = DMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Product.
    pub fn mul(&self, o: &DMat) -> DMat {
        assert_eq!(self.cols, o.rows);
        let mut out = DMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Sum.
    pub fn add(&self, o: &DMat) -> DMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        DMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Difference.
    pub fn sub(&self, o: &DMat) -> DMat {
        self.add(&o.scale(&-Rational::one()))
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> DMat {
        DMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// True when all entries vanish.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (DMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                m.data[r * m.cols + j] *= &inv;
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let d = &f * m.get(r, j);
                        m.data[i * m.cols + j] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (m, pivots) = self.rref();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<DMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = DMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return Err(Error::SingularMatrix);
        }
        let mut inv = DMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Rational {
        self.char_poly().coeff(0)
            * if self.rows % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            }
    }

    /// Characteristic polynomial `det(λI − m)` via Faddeev–LeVerrier.
    pub fn char_poly(&self) -> Poly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut mk = DMat::zeros(n, n);
        for k in 1..=n {
            mk = self.mul(&mk).add(&DMat::identity(n).scale(&coeffs[n - k + 1]));
            let t = self.mul(&mk).trace();
            coeffs[n - k] = -t / Rational::from_integer((k as i64).into());
        }
        Poly::new(coeffs)
    }
}

/// A subspace of ℚⁿ kept in reduced row echelon form (unique basis).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VecSpace {
    n: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl VecSpace {
    /// The zero subspace of ℚⁿ.
    pub fn zero(n: usize) -> Self {
        VecSpace {
            n,
            basis: vec![],
            pivots: vec![],
        }
    }

    /// Span of the given vectors.
    pub fn span(n: usize, vecs: &[Vec<Rational>]) -> Self {
        if vecs.is_empty() {
            return VecSpace::zero(n);
        }
        let (m, pivots) = DMat::from_rows(vecs).rref();
        let basis = (0..pivots.len()).map(|i| m.row(i)).collect();
        VecSpace { n, basis, pivots }
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Echelon basis.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Pivot columns of the echelon basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after reduction against the echelon basis.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        r
    }

    /// Membership test.
    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` is outside.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Sum of subspaces.
    pub fn sum(&self, o: &VecSpace) -> VecSpace {
        let mut all = self.basis.clone();
        all.extend(o.basis.iter().cloned());
        VecSpace::span(self.n, &all)
    }

    /// Intersection of subspaces.
    pub fn intersect(&self, o: &VecSpace) -> VecSpace {
        if self.dim() == 0 || o.dim() == 0 {
            return VecSpace::zero(self.n);
        }
        // Solve Σ a_i u_i = Σ b_j w_j.
        let mut cols: Vec<Vec<Rational>> = self.basis.clone();
        cols.extend(o.basis.iter().map(|w| w.iter().map(|x| -x).collect()));
        let m = DMat::from_cols(&cols);
        let vecs: Vec<Vec<Rational>> = m
            .kernel()
            .iter()
            .map(|k| {
                let mut v = vec![Rational::zero(); self.n];
                for (a, u) in k.iter().zip(&self.basis) {
                    for (x, y) in v.iter_mut().zip(u) {
                        *x += a * y;
                    }
                }
                v
            })
            .collect();
        VecSpace::span(self.n, &vecs)
    }

    /// True if `self ⊆ o`.
    pub fn is_subspace_of(&self, o: &VecSpace) -> bool {
        self.basis.iter().all(|b| o.contains(b))
    }

    /// Extend the echelon basis of `self` by vectors completing it to a basis of `sup`.
    pub fn complement_in(&self, sup: &VecSpace) -> Vec<Vec<Rational>> {
        let mut cur = self.clone();
        let mut out = Vec::new();
        for b in &sup.basis {
            if !cur.contains(b) {
                out.push(b.clone());
                cur = cur.sum(&VecSpace::span(self.n, std::slice::from_ref(b)));
            }
        }
        out
    }
}
