//! Jordan–Chevalley decomposition, Jordan block data and the classification
//! of single elements of sp(4) up to conjugacy.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Mat4, Rational};
use crate::sp4::{conjugate, in_borel, in_sp4, shear, DiagonalElement, Root};

/// `x = semisimple + nilpotent` with commuting parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanDecomposition {
    /// Semisimple part.
    pub semisimple: Mat4,
    /// Nilpotent part.
    pub nilpotent: Mat4,
}

/// Jordan–Chevalley decomposition by the Newton iteration
/// `S ← S − g(S)·g′(S)⁻¹` on the squarefree part `g` of the characteristic polynomial.
pub fn jordan_decompose(x: &Mat4) -> JordanDecomposition {
    let g = x.char_poly().squarefree_part();
    let dg = g.derivative();
    let mut s = x.clone();
    for _ in 0..16 {
        let gs = g.eval_mat(&s);
        if gs.is_zero() {
            break;
        }
        // g′(S) is invertible along the iteration over a perfect field.
        let inv = dg.eval_mat(&s).inverse().expect("g'(S) invertible");
        s = &s - &(&gs * &inv);
    }
    let n = x - &s;
    JordanDecomposition {
        semisimple: s,
        nilpotent: n,
    }
}

/// True when the nilpotent part vanishes.
pub fn is_semisimple(x: &Mat4) -> bool {
    jordan_decompose(x).nilpotent.is_zero()
}

/// True when the semisimple part vanishes.
pub fn is_nilpotent_mat(x: &Mat4) -> bool {
    jordan_decompose(x).semisimple.is_zero()
}

/// Jordan blocks as `(eigenvalue, block size)`, sorted by eigenvalue then size (descending).
pub type JordanType = Vec<(Rational, usize)>;

/// Jordan block data from the kernel-dimension staircase of `(x − λ)^k`.
pub fn jordan_type(x: &Mat4) -> Result<JordanType> {
    let cp = x.char_poly();
    let roots = cp.rational_roots()?;
    let total: usize = roots.iter().map(|r| r.1).sum();
    if total < 4 {
        return Err(Error::IrrationalSpectrum(format!("characteristic polynomial {cp}")));
    }
    let mut out = Vec::new();
    for (lam, mult) in roots {
        let shifted = x - &Mat4::scalar(lam.clone());
        // ranks[k] = rank((x − λ)^k)
        let mut ranks = vec![4usize];
        let mut p = Mat4::identity();
        for _ in 0..=mult {
            p = &p * &shifted;
            ranks.push(p.rank());
        }
        for k in 1..=mult {
            let at_least_k = ranks[k - 1] - ranks[k];
            let at_least_k1 = ranks[k] - ranks[k + 1];
            for _ in 0..(at_least_k - at_least_k1) {
                out.push((lam.clone(), k));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    Ok(out)
}

/// A conjugacy class of elements of sp(4), as a row of the semisimple (table 1)
/// or nonsemisimple (table 2) class lists, together with the one-dimensional
/// subalgebra class of the line it spans.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitLabel {
    /// 1 for semisimple classes, 2 for nonsemisimple classes.
    pub table: u8,
    /// Row name, e.g. `"T_{a,b}"`, `"T_{a,a}+X_beta"`, `"X_alpha"`.
    pub row: String,
    /// Parameters of the row (`a`, `b`), as rational strings.
    #[serde(with = "params_serde")]
    pub params: BTreeMap<String, Rational>,
    /// Catalog row of the line `⟨x⟩` (absent for `x = 0`).
    pub line: Option<String>,
    /// Parameters of that catalog row.
    #[serde(with = "params_serde")]
    pub line_params: BTreeMap<String, Rational>,
}

pub(crate) mod params_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let t: BTreeMap<&String, String> = m.iter().map(|(k, v)| (k, v.to_string())).collect();
        t.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<String, Rational>, D::Error> {
        use serde::de::Error as _;
        let t: BTreeMap<String, String> = BTreeMap::deserialize(d)?;
        t.into_iter()
            .map(|(k, v)| Ok((k, crate::linalg::parse_rational(&v).map_err(D::Error::custom)?)))
            .collect()
    }
}

fn params(kv: &[(&str, &Rational)]) -> BTreeMap<String, Rational> {
    kv.iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect()
}

/// Classify an element of sp(4) up to Sp(4)-conjugacy.
///
/// Semisimple classes are normalized to the dominant Weyl representative
/// `a ≥ b ≥ 0`; nilpotent classes are read off the Jordan type; mixed classes
/// from the semisimple part's spectrum.
pub fn classify_element(x: &Mat4) -> Result<OrbitLabel> {
    if !in_sp4(x) {
        return Err(Error::NotInSp4);
    }
    let jt = jordan_type(x)?;
    let dec = jordan_decompose(x);
    let mut abs: Vec<Rational> = jt
        .iter()
        .flat_map(|(l, k)| std::iter::repeat(l.abs()).take(*k))
        .collect();
    abs.sort_by(|p, q| q.cmp(p));
    let (a, b) = (abs[0].clone(), abs[2].clone());
    let label =
        |table: u8, row: &str, p: BTreeMap<String, Rational>, line: Option<&str>, lp: BTreeMap<String, Rational>| {
            OrbitLabel {
                table,
                row: row.to_string(),
                params: p,
                line: line.map(str::to_string),
                line_params: lp,
            }
        };
    if dec.nilpotent.is_zero() {
        return Ok(if a.is_zero() {
            label(1, "T_{0,0}", BTreeMap::new(), None, BTreeMap::new())
        } else if b.is_zero() {
            label(1, "T_{a,0}", params(&[("a", &a)]), Some("<T_{1,0}>"), BTreeMap::new())
        } else if a == b {
            label(1, "T_{a,a}", params(&[("a", &a)]), Some("<T_{1,1}>"), BTreeMap::new())
        } else {
            label(
                1,
                "T_{a,b}",
                params(&[("a", &a), ("b", &b)]),
                Some("<T_{a,1}>"),
                params(&[("a", &(&a / &b))]),
            )
        });
    }
    if dec.semisimple.is_zero() {
        let sizes: Vec<usize> = jt.iter().map(|(_, k)| *k).collect();
        let row = match sizes.as_slice() {
            [2, 1, 1] => "X_alpha",
            [2, 2] => "X_beta",
            [4] => "X_alpha+X_beta",
            _ => return Err(Error::UnrecognizedFamily(format!("nilpotent Jordan type {sizes:?}"))),
        };
        return Ok(label(
            2,
            row,
            BTreeMap::new(),
            Some(&format!("<{row}>")),
            BTreeMap::new(),
        ));
    }
    if b.is_zero() {
        Ok(label(
            2,
            "T_{a,0}+X_alpha",
            params(&[("a", &a)]),
            Some("<T_{1,0}+X_alpha>"),
            BTreeMap::new(),
        ))
    } else if a == b {
        Ok(label(
            2,
            "T_{a,a}+X_beta",
            params(&[("a", &a)]),
            Some("<T_{1,1}+X_beta>"),
            BTreeMap::new(),
        ))
    } else {
        Err(Error::UnrecognizedFamily(
            "regular semisimple part with nonzero nilpotent part".into(),
        ))
    }
}

/// Coefficient of `X_γ` in an element of the Borel subalgebra.
fn root_coefficient(m: &Mat4, r: Root) -> Rational {
    match r {
        Root::Alpha => m.get(1, 3).clone(),
        Root::Beta => m.get(0, 1).clone(),
        Root::AlphaPlusBeta => m.get(0, 3).clone(),
        Root::AlphaPlus2Beta => m.get(0, 2).clone(),
    }
}

/// Conjugate a semisimple element `x = T + N` of `b` to its diagonal part `T`
/// by a product of root shears (an element of the Borel subgroup).
pub fn conjugate_ss_into_cartan(x: &Mat4) -> Result<(Mat4, DiagonalElement)> {
    if !in_borel(x) {
        return Err(Error::NotInBorel);
    }
    if !is_semisimple(x) {
        return Err(Error::NotSemisimple);
    }
    let t = DiagonalElement::new(x.get(0, 0).clone(), x.get(1, 1).clone());
    let target = t.matrix();
    let mut g = Mat4::identity();
    let mut y = x.clone();
    for _ in 0..4 {
        if y == target {
            break;
        }
        for r in Root::ALL {
            let c = root_coefficient(&y, r);
            let v = r.value(&t.a, &t.b);
            if c.is_zero() || v.is_zero() {
                continue;
            }
            let h = shear(r, &c / &v).matrix();
            y = conjugate(&h, &y)?;
            g = &h * &g;
        }
    }
    if y != target {
        return Err(Error::NotSemisimple);
    }
    Ok((g, t))
}
