//! Rank stratification of pencils `t·n₁ + n₂` of 4×4 matrices, computed
//! symbolically in `t`.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{Mat4, Poly, Rational, Subspace};

/// A line `⟨t·n₁ + n₂⟩` of the pencil.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LineTag {
    /// The line at a rational parameter `t`.
    At(Rational),
    /// The lines at the (irrational, Galois-conjugate) roots of a polynomial.
    Conjugates(Poly),
    /// The line of `n₁` alone.
    Infinity,
}

impl Serialize for LineTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text = match self {
            LineTag::At(t) => format!("t={t}"),
            LineTag::Conjugates(p) => format!("roots of {p}"),
            LineTag::Infinity => "t=inf".to_string(),
        };
        s.serialize_str(&text)
    }
}

/// Generic rank of a pencil and the lines where the rank drops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilStrata {
    /// Rank of `t·n₁ + n₂` for all but finitely many `t`.
    pub generic_rank: usize,
    /// Exceptional lines with their (smaller) rank.
    pub exceptional: Vec<(LineTag, usize)>,
}

impl PencilStrata {
    /// Number of projective lines (over `ℚ̄`) of the given rank.
    pub fn lines_of_rank(&self, r: usize) -> usize {
        self.exceptional
            .iter()
            .filter(|(_, k)| *k == r)
            .map(|(t, _)| match t {
                LineTag::Conjugates(p) => p.degree().unwrap_or(0),
                _ => 1,
            })
            .sum()
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Determinant of the submatrix (Laplace expansion along the first row).
fn minor(m: &[Vec<Poly>], rows: &[usize], cols: &[usize]) -> Poly {
    if rows.is_empty() {
        return Poly::constant(Rational::from_integer(1.into()));
    }
    let r = rows[0];
    let mut acc = Poly::zero();
    for (idx, &c) in cols.iter().enumerate() {
        if m[r][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = m[r][c].mul(&minor(m, &rows[1..], &rest));
        acc = if idx % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Monic gcd of all `k×k` minors (zero if they all vanish).
fn minors_gcd(m: &[Vec<Poly>], k: usize) -> Poly {
    let mut g = Poly::zero();
    for rows in subsets(4, k) {
        for cols in subsets(4, k) {
            let d = minor(m, &rows, &cols);
            if !d.is_zero() {
                g = if g.is_zero() { d.monic() } else { g.gcd(&d).monic() };
            }
        }
    }
    g
}

/// Ranks along the pencil `t·n₁ + n₂`.
pub fn pencil_rank_strata(n1: &Mat4, n2: &Mat4) -> Result<PencilStrata> {
    if Subspace::span(&[n1.clone(), n2.clone()]).dim() < 2 {
        return Err(Error::DependentInputs);
    }
    let m: Vec<Vec<Poly>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| Poly::new(vec![n2.get(i, j).clone(), n1.get(i, j).clone()]))
                .collect()
        })
        .collect();
    let gcds: Vec<Poly> = (0..=4).map(|k| minors_gcd(&m, k)).collect();
    let generic = (0..=4).rev().find(|&k| !gcds[k].is_zero()).expect("0-minor is 1");
    let mut exceptional = Vec::new();
    let g = &gcds[generic];
    if g.degree().unwrap_or(0) > 0 {
        let roots = g.rational_roots()?;
        let mut rest = g.squarefree_part();
        for (t, _) in &roots {
            let rank = (&n1.scale(t) + n2).rank();
            exceptional.push((LineTag::At(t.clone()), rank));
            rest = rest.divrem(&Poly::linear_root(t)).0;
        }
        if rest.degree().unwrap_or(0) > 0 {
            // rank exactly j at the roots of gcd(rest, G_{j+1}) / gcd(rest, G_j)
            let mut prev = rest.gcd(&gcds[1]).monic();
            if prev.degree().unwrap_or(0) > 0 {
                exceptional.push((LineTag::Conjugates(prev.clone()), 0));
            }
            for j in 1..generic {
                let d = rest.gcd(&gcds[j + 1]).monic();
                let (part, _) = d.divrem(&prev);
                if part.degree().unwrap_or(0) > 0 {
                    exceptional.push((LineTag::Conjugates(part.monic()), j));
                }
                prev = d;
            }
        }
    }
    let r1 = n1.rank();
    if r1 < generic {
        exceptional.push((LineTag::Infinity, r1));
    }
    Ok(PencilStrata {
        generic_rank: generic,
        exceptional,
    })
}
