//! Abstract Lie algebras over `ℚ(√d)` and exact verification of explicit isomorphisms.

use serde::Serialize;

use super::surd::Surd;
use crate::error::{Error, Result};
use crate::lie::StructureConstants;
use crate::linalg::Rational;

/// Structure constants with entries in a quadratic field:
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractAlgebra {
    dim: usize,
    c: Vec<Surd>,
}

/// One defining relation `[e_i, e_j] = Σ coeff·e_k` (0-based indices).
pub type Relation = (usize, usize, Vec<(usize, Surd)>);

impl AbstractAlgebra {
    /// Abelian algebra of dimension `dim`.
    pub fn abelian(dim: usize) -> Self {
        AbstractAlgebra {
            dim,
            c: vec![Surd::zero(); dim * dim * dim],
        }
    }

    /// Build from relations; antisymmetric partners are filled in.
    pub fn from_relations(dim: usize, rels: &[Relation]) -> Self {
        let mut a = AbstractAlgebra::abelian(dim);
        for (i, j, terms) in rels {
            for (k, v) in terms {
                let cur = a.get(*i, *j, *k).clone();
                let new = &cur + v;
                a.set(*j, *i, *k, -&new);
                a.set(*i, *j, *k, new);
            }
        }
        a
    }

    /// Lift rational structure constants.
    pub fn from_constants(sc: &StructureConstants) -> Self {
        let d = sc.dim();
        let mut a = AbstractAlgebra::abelian(d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    a.set(i, j, k, Surd::rational(sc.get(i, j, k).clone()));
                }
            }
        }
        a
    }

    /// Rational structure constants, when every entry is rational.
    pub fn to_rational(&self) -> Option<StructureConstants> {
        let d = self.dim;
        let mut rels = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                let mut terms = Vec::new();
                for k in 0..d {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        terms.push((k, v.as_rational()?.clone()));
                    }
                }
                if !terms.is_empty() {
                    rels.push((i, j, terms));
                }
            }
        }
        Some(StructureConstants::from_relations(d, &rels))
    }

    /// Direct sum; the basis is the concatenation of the summands' bases.
    pub fn direct_sum(parts: &[AbstractAlgebra]) -> Self {
        let dim = parts.iter().map(|p| p.dim).sum();
        let mut a = AbstractAlgebra::abelian(dim);
        let mut off = 0;
        for p in parts {
            for i in 0..p.dim {
                for j in 0..p.dim {
                    for k in 0..p.dim {
                        a.set(off + i, off + j, off + k, p.get(i, j, k).clone());
                    }
                }
            }
            off += p.dim;
        }
        a
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c[i][j][k]`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Surd {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: Surd) {
        let d = self.dim;
        self.c[(i * d + j) * d + k] = v;
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, u: &[Surd], v: &[Surd]) -> Vec<Surd> {
        let d = self.dim;
        let mut out = vec![Surd::zero(); d];
        for i in 0..d {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if v[j].is_zero() || i == j {
                    continue;
                }
                let f = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        *o = &*o + &(&f * c);
                    }
                }
            }
        }
        out
    }

    /// Antisymmetry and Jacobi, checked exactly.
    pub fn is_lie(&self) -> bool {
        let d = self.dim;
        let unit = |i: usize| {
            let mut v = vec![Surd::zero(); d];
            v[i] = Surd::one();
            v
        };
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if *self.get(i, j, k) != -self.get(j, i, k) {
                        return false;
                    }
                }
            }
        }
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    let a = self.bracket(&x, &self.bracket(&y, &z));
                    let b = self.bracket(&y, &self.bracket(&z, &x));
                    let c = self.bracket(&z, &self.bracket(&x, &y));
                    if (0..d).any(|t| !(&(&a[t] + &b[t]) + &c[t]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A linear map from a target algebra to a source algebra, given by the images
/// of the target's basis vectors in source coordinates (`images[i]` is the
/// element corresponding to target basis vector `i`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoMap {
    /// Images of the target basis, in source coordinates.
    pub images: Vec<Vec<Surd>>,
}

impl IsoMap {
    /// Map with the given images.
    pub fn new(images: Vec<Vec<Surd>>) -> Self {
        IsoMap { images }
    }

    /// Map with rational images.
    pub fn from_rational(images: Vec<Vec<Rational>>) -> Self {
        IsoMap {
            images: images
                .into_iter()
                .map(|v| v.into_iter().map(Surd::rational).collect())
                .collect(),
        }
    }

    /// The identity of `ℚᵈ`.
    pub fn identity(d: usize) -> Self {
        IsoMap::new(
            (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| if i == j { Surd::one() } else { Surd::zero() })
                        .collect()
                })
                .collect(),
        )
    }

    /// Compose with a map into this map's source: if `inner` expresses an
    /// intermediate basis in source coordinates and `self` expresses the final
    /// target basis in intermediate coordinates, the result expresses the
    /// final target basis in source coordinates.
    pub fn after(&self, inner: &IsoMap) -> IsoMap {
        let n = inner.images.first().map_or(0, Vec::len);
        IsoMap::new(
            self.images
                .iter()
                .map(|row| {
                    let mut out = vec![Surd::zero(); n];
                    for (c, v) in row.iter().zip(&inner.images) {
                        if c.is_zero() {
                            continue;
                        }
                        for (o, x) in out.iter_mut().zip(v) {
                            *o = &*o + &(c * x);
                        }
                    }
                    out
                })
                .collect(),
        )
    }

    /// All single-coefficient perturbations (each entry shifted by one).
    pub fn mutations(&self) -> Vec<IsoMap> {
        let mut out = Vec::new();
        for i in 0..self.images.len() {
            for j in 0..self.images[i].len() {
                let mut m = self.clone();
                m.images[i][j] = &m.images[i][j] + &Surd::one();
                out.push(m);
            }
        }
        out
    }
}

/// Rank of a matrix over `ℚ(√d)`.
pub fn surd_rank(rows: &[Vec<Surd>]) -> usize {
    let mut m: Vec<Vec<Surd>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].inv().expect("nonzero pivot");
        let pivot_row: Vec<Surd> = m[rank].iter().map(|x| x * &inv).collect();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..ncols {
                    m[r][c] = &m[r][c] - &(&f * &pivot_row[c]);
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// True iff `map` is a linear bijection `target → source` preserving brackets.
pub fn verify_map(source: &AbstractAlgebra, target: &AbstractAlgebra, map: &IsoMap) -> Result<bool> {
    let d = target.dim();
    if source.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: source.dim(),
        });
    }
    if map.images.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: map.images.len(),
        });
    }
    if let Some(bad) = map.images.iter().find(|v| v.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad.len(),
        });
    }
    if surd_rank(&map.images) != d {
        return Ok(false);
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let mut lhs = vec![Surd::zero(); d];
            for k in 0..d {
                let c = target.get(i, j, k);
                if c.is_zero() {
                    continue;
                }
                for (o, x) in lhs.iter_mut().zip(&map.images[k]) {
                    *o = &*o + &(c * x);
                }
            }
            if lhs != source.bracket(&map.images[i], &map.images[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Row-vector helper: a combination `Σ c_i·x_i` given sparse `(index, coeff)` pairs.
pub fn combo(dim: usize, terms: &[(usize, Surd)]) -> Vec<Surd> {
    let mut v = vec![Surd::zero(); dim];
    for (i, c) in terms {
        v[*i] = &v[*i] + c;
    }
    v
}

/// Shorthand for a rational embedded as a [`Surd`].
pub fn sq(r: Rational) -> Surd {
    Surd::rational(r)
}
