//! Šnobl–Winternitz families of solvable Lie algebras and explicit
//! isomorphisms from the de Graaf normal forms.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::degraaf::DeGraafClass;
use super::iso::{combo, sq, AbstractAlgebra, IsoMap, Relation};
use super::surd::Surd;
use crate::error::{Error, Result};
use crate::linalg::{parse_rational, q, qf, DMat, Rational, VecSpace};

/// A Šnobl–Winternitz family (indecomposable, except that direct sums are
/// expressed through [`SWClass`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(missing_docs)]
pub enum SwFamily {
    N11,
    S21,
    N31,
    S31,
    S32,
    N41,
    S42,
    S43,
    S44,
    S46,
    S48,
    S410,
    S411,
    S412,
    S533,
    S535,
    S536,
    S537,
    S541,
    S544,
    S6242,
}

const FAMILIES: [(SwFamily, &str, usize, usize); 21] = [
    (SwFamily::N11, "n_{1,1}", 1, 0),
    (SwFamily::S21, "s_{2,1}", 2, 0),
    (SwFamily::N31, "n_{3,1}", 3, 0),
    (SwFamily::S31, "s_{3,1}", 3, 1),
    (SwFamily::S32, "s_{3,2}", 3, 0),
    (SwFamily::N41, "n_{4,1}", 4, 0),
    (SwFamily::S42, "s_{4,2}", 4, 0),
    (SwFamily::S43, "s_{4,3}", 4, 2),
    (SwFamily::S44, "s_{4,4}", 4, 1),
    (SwFamily::S46, "s_{4,6}", 4, 0),
    (SwFamily::S48, "s_{4,8}", 4, 1),
    (SwFamily::S410, "s_{4,10}", 4, 0),
    (SwFamily::S411, "s_{4,11}", 4, 0),
    (SwFamily::S412, "s_{4,12}", 4, 0),
    (SwFamily::S533, "s_{5,33}", 5, 0),
    (SwFamily::S535, "s_{5,35}", 5, 1),
    (SwFamily::S536, "s_{5,36}", 5, 0),
    (SwFamily::S537, "s_{5,37}", 5, 0),
    (SwFamily::S541, "s_{5,41}", 5, 2),
    (SwFamily::S544, "s_{5,44}", 5, 0),
    (SwFamily::S6242, "s_{6,242}", 6, 0),
];

impl SwFamily {
    fn entry(self) -> &'static (SwFamily, &'static str, usize, usize) {
        FAMILIES.iter().find(|e| e.0 == self).expect("listed")
    }

    /// Name such as `s_{3,1}`.
    pub fn name(self) -> &'static str {
        self.entry().1
    }

    /// Dimension.
    pub fn dim(self) -> usize {
        self.entry().2
    }

    /// Number of parameters.
    pub fn param_count(self) -> usize {
        self.entry().3
    }

    /// Look up by name (`s_{3,1}`, also `s31`, `s_31`).
    pub fn from_name(s: &str) -> Result<Self> {
        let norm = |t: &str| t.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>();
        let key = norm(s);
        FAMILIES
            .iter()
            .find(|e| norm(e.1) == key)
            .map(|e| e.0)
            .ok_or_else(|| Error::Parse(format!("unknown Šnobl–Winternitz family '{s}'")))
    }

    /// Defining relations (1-based names in the docs, 0-based here).
    pub fn algebra(self, p: &[Surd]) -> Result<AbstractAlgebra> {
        use SwFamily::*;
        if p.len() != self.param_count() {
            return Err(Error::DimensionMismatch {
                expected: self.param_count(),
                found: p.len(),
            });
        }
        let one = || Surd::one();
        let r = |x: i64| sq(q(x));
        let a = || p[0].clone();
        let b = || p[1].clone();
        // [e_{i+1}, e_{j+1}] = Σ c e_{k+1}
        let rel = |i: usize, j: usize, t: Vec<(usize, Surd)>| -> Relation {
            (i - 1, j - 1, t.into_iter().map(|(k, c)| (k - 1, c)).collect())
        };
        let nil_chain = || vec![rel(2, 4, vec![(1, one())]), rel(3, 4, vec![(2, one())])];
        let rels: Vec<Relation> = match self {
            N11 => vec![],
            S21 => vec![rel(2, 1, vec![(1, one())])],
            N31 => vec![rel(2, 3, vec![(1, one())])],
            S31 => vec![rel(3, 1, vec![(1, one())]), rel(3, 2, vec![(2, a())])],
            S32 => vec![rel(3, 1, vec![(1, one())]), rel(3, 2, vec![(1, one()), (2, one())])],
            N41 => nil_chain(),
            S42 => vec![
                rel(4, 1, vec![(1, one())]),
                rel(4, 2, vec![(1, one()), (2, one())]),
                rel(4, 3, vec![(2, one()), (3, one())]),
            ],
            S43 => vec![
                rel(4, 1, vec![(1, one())]),
                rel(4, 2, vec![(2, a())]),
                rel(4, 3, vec![(3, b())]),
            ],
            S44 => vec![
                rel(4, 1, vec![(1, one())]),
                rel(4, 2, vec![(1, one()), (2, one())]),
                rel(4, 3, vec![(3, a())]),
            ],
            S46 => vec![
                rel(2, 3, vec![(1, one())]),
                rel(4, 2, vec![(2, one())]),
                rel(4, 3, vec![(3, r(-1))]),
            ],
            S48 => vec![
                rel(2, 3, vec![(1, one())]),
                rel(4, 1, vec![(1, &one() + &a())]),
                rel(4, 2, vec![(2, one())]),
                rel(4, 3, vec![(3, a())]),
            ],
            S410 => vec![
                rel(2, 3, vec![(1, one())]),
                rel(4, 1, vec![(1, r(2))]),
                rel(4, 2, vec![(2, one())]),
                rel(4, 3, vec![(2, one()), (3, one())]),
            ],
            S411 => vec![
                rel(2, 3, vec![(1, one())]),
                rel(4, 1, vec![(1, one())]),
                rel(4, 2, vec![(2, one())]),
            ],
            S412 => vec![
                rel(3, 1, vec![(1, one())]),
                rel(3, 2, vec![(2, one())]),
                rel(4, 1, vec![(2, r(-1))]),
                rel(4, 2, vec![(1, one())]),
            ],
            S533 => [
                nil_chain(),
                vec![
                    rel(5, 2, vec![(2, r(-1))]),
                    rel(5, 3, vec![(3, r(-2))]),
                    rel(5, 4, vec![(4, one())]),
                ],
            ]
            .concat(),
            S535 => [
                nil_chain(),
                vec![
                    rel(5, 1, vec![(1, &a() + &r(2))]),
                    rel(5, 2, vec![(2, &a() + &r(1))]),
                    rel(5, 3, vec![(3, a())]),
                    rel(5, 4, vec![(4, one())]),
                ],
            ]
            .concat(),
            S536 => [
                nil_chain(),
                vec![
                    rel(5, 1, vec![(1, r(2))]),
                    rel(5, 2, vec![(2, one())]),
                    rel(5, 4, vec![(4, one())]),
                ],
            ]
            .concat(),
            S537 => [
                nil_chain(),
                vec![
                    rel(5, 1, vec![(1, one())]),
                    rel(5, 2, vec![(2, one())]),
                    rel(5, 3, vec![(3, one())]),
                ],
            ]
            .concat(),
            S541 => vec![
                rel(4, 1, vec![(1, one())]),
                rel(4, 3, vec![(3, a())]),
                rel(5, 2, vec![(2, one())]),
                rel(5, 3, vec![(3, b())]),
            ],
            S544 => vec![
                rel(2, 3, vec![(1, one())]),
                rel(4, 1, vec![(1, one())]),
                rel(4, 2, vec![(2, one())]),
                rel(5, 2, vec![(2, one())]),
                rel(5, 3, vec![(3, r(-1))]),
            ],
            S6242 => [
                nil_chain(),
                vec![
                    rel(5, 1, vec![(1, r(2))]),
                    rel(5, 2, vec![(2, one())]),
                    rel(5, 4, vec![(4, one())]),
                    rel(6, 1, vec![(1, one())]),
                    rel(6, 2, vec![(2, one())]),
                    rel(6, 3, vec![(3, one())]),
                ],
            ]
            .concat(),
        };
        Ok(AbstractAlgebra::from_relations(self.dim(), &rels))
    }
}

/// One summand of a direct sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SwSummand {
    /// Family.
    pub family: SwFamily,
    /// Parameters (`A`, then `B`).
    pub params: Vec<Surd>,
}

/// A Šnobl–Winternitz class: a direct sum of family members, basis ordered
/// summand by summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SWClass {
    /// Summands in basis order.
    pub summands: Vec<SwSummand>,
}

impl SWClass {
    /// A single family member with parameters normalized.
    pub fn single(family: SwFamily, params: Vec<Surd>) -> Result<Self> {
        Ok(SWClass {
            summands: vec![normalize_summand(family, params)?],
        })
    }

    /// Direct sum of classes (bases concatenated in order).
    pub fn sum(parts: Vec<SWClass>) -> Self {
        SWClass {
            summands: parts.into_iter().flat_map(|p| p.summands).collect(),
        }
    }

    /// `k` copies of `n_{1,1}`.
    pub fn abelian(k: usize) -> Self {
        SWClass {
            summands: vec![
                SwSummand {
                    family: SwFamily::N11,
                    params: vec![]
                };
                k
            ],
        }
    }

    /// Total dimension.
    pub fn dim(&self) -> usize {
        self.summands.iter().map(|s| s.family.dim()).sum()
    }

    /// Structure constants of the direct sum.
    pub fn algebra(&self) -> AbstractAlgebra {
        let parts: Vec<AbstractAlgebra> = self
            .summands
            .iter()
            .map(|s| {
                s.family
                    .algebra(&s.params)
                    .expect("parameter count checked on construction")
            })
            .collect();
        AbstractAlgebra::direct_sum(&parts)
    }

    /// Parse with a custom evaluator for parameter expressions, e.g.
    /// `"n_{1,1}+s_{3,1}(A=1/2)"`, `"2n_{1,1}"`, `"s_{4,3}(A=1,B=1)"`.
    pub fn parse_with(s: &str, eval: &dyn Fn(&str) -> Result<Surd>) -> Result<Self> {
        let mut parts = Vec::new();
        for piece in split_top(s.trim(), '+') {
            let piece = piece.trim();
            let digits: String = piece.chars().take_while(|c| c.is_ascii_digit()).collect();
            let count: usize = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| Error::Parse(piece.into()))?
            };
            let body = &piece[digits.len()..];
            let (name, args) = match body.find('(') {
                Some(i) if body.ends_with(')') => (&body[..i], &body[i + 1..body.len() - 1]),
                _ => (body, ""),
            };
            let family = SwFamily::from_name(name)?;
            let mut params = Vec::new();
            for arg in split_top(args, ',').into_iter().filter(|a| !a.trim().is_empty()) {
                let expr = match arg.split_once('=') {
                    Some((_, e)) => e,
                    None => arg,
                };
                params.push(eval(expr.trim())?);
            }
            if params.len() != family.param_count() {
                return Err(Error::Parse(format!(
                    "'{piece}' needs {} parameter(s)",
                    family.param_count()
                )));
            }
            for _ in 0..count {
                parts.push(SWClass::single(family, params.clone())?);
            }
        }
        if parts.is_empty() {
            return Err(Error::Parse("empty Šnobl–Winternitz class".into()));
        }
        Ok(SWClass::sum(parts))
    }
}

/// Split on `sep` outside parentheses and braces.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for SwSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family.name())?;
        match self.params.as_slice() {
            [] => Ok(()),
            [a] => write!(f, "(A={a})"),
            [a, b] => write!(f, "(A={a},B={b})"),
            _ => unreachable!("at most two parameters"),
        }
    }
}

impl fmt::Display for SWClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.summands.len() {
            let mut j = i + 1;
            while j < self.summands.len() && self.summands[j] == self.summands[i] {
                j += 1;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if j - i > 1 {
                write!(f, "{}", j - i)?;
            }
            write!(f, "{}", self.summands[i])?;
            i = j;
        }
        Ok(())
    }
}

impl FromStr for SWClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SWClass::parse_with(s, &|e| parse_rational(e).map(Surd::rational))
    }
}

impl Serialize for SWClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn normalize_summand(family: SwFamily, mut params: Vec<Surd>) -> Result<SwSummand> {
    if params.len() != family.param_count() {
        return Err(Error::DimensionMismatch {
            expected: family.param_count(),
            found: params.len(),
        });
    }
    if matches!(family, SwFamily::S31 | SwFamily::S48) {
        params[0] = normalize_sw_param(&params[0])?;
    }
    Ok(SwSummand { family, params })
}

/// Normalize a one-parameter `s_{3,1}` / `s_{4,8}` parameter: `A ↦ 1/A` when
/// `|A| > 1`, or when `|A| = 1` and `A` lies in the lower half plane.
pub fn normalize_sw_param(a: &Surd) -> Result<Surd> {
    if a.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let flip = match a.cmp_abs(&Surd::one()) {
        Ordering::Greater => true,
        Ordering::Equal => a.imag_sign() == Ordering::Less,
        Ordering::Less => false,
    };
    Ok(if flip { a.inv().expect("nonzero") } else { a.clone() })
}

/// Roots of `μ² = μ + α` in the branch giving the normalized ratio.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lam {
    /// `λ = λ₊/λ₋`, normalized.
    pub lam: Surd,
    /// `λ₊ = (1 + s)/2`.
    pub plus: Surd,
    /// `λ₋ = (1 − s)/2`.
    pub minus: Surd,
    /// `s = ±√(1 + 4α)`, sign chosen so that `λ` is normalized.
    pub root: Surd,
}

/// The square-root normalization `λ(α)` for `α ≠ 0`.
pub fn lam(alpha: &Rational) -> Result<Lam> {
    if alpha.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let disc = Rational::one() + q(4) * alpha;
    let principal = Surd::sqrt(&disc);
    let half = sq(qf(1, 2));
    for root in [principal.clone(), -&principal] {
        let plus = &(&Surd::one() + &root) * &half;
        let minus = &(&Surd::one() - &root) * &half;
        let l = &plus / &minus;
        if normalize_sw_param(&l)? == l {
            return Ok(Lam {
                lam: l,
                plus,
                minus,
                root,
            });
        }
    }
    unreachable!("one of λ, 1/λ is normalized")
}

fn row(n: usize, terms: &[(usize, Surd)]) -> Vec<Surd> {
    combo(n, terms)
}

fn r(x: Rational) -> Surd {
    sq(x)
}

fn rows_rational(m: &[Vec<Rational>]) -> Vec<Vec<Surd>> {
    m.iter()
        .map(|v| v.iter().cloned().map(Surd::rational).collect())
        .collect()
}

/// The corresponding Šnobl–Winternitz class together with an isomorphism
/// whose images express the ŠW basis in the de Graaf basis `x_1, …, x_n`.
pub fn degraaf_to_sw(c: &DeGraafClass) -> Result<(SWClass, IsoMap)> {
    use DeGraafClass::*;
    let n = c.dim();
    let x = |i: usize| i - 1;
    let one = Surd::one;
    let out = match c {
        J | K1 | L1 => (SWClass::abelian(n), IsoMap::identity(n)),
        K2 => (
            SWClass::single(SwFamily::S21, vec![])?,
            IsoMap::new(vec![row(n, &[(x(2), one())]), row(n, &[(x(1), one())])]),
        ),
        L2 => (SWClass::single(SwFamily::S31, vec![one()])?, IsoMap::identity(3)),
        L3(a) if a.is_zero() => (
            SWClass::sum(vec![SWClass::abelian(1), SWClass::single(SwFamily::S21, vec![])?]),
            IsoMap::new(vec![
                row(n, &[(x(1), one()), (x(2), r(q(-1)))]),
                row(n, &[(x(2), one())]),
                row(n, &[(x(3), one())]),
            ]),
        ),
        L3(a) if *a == qf(-1, 4) => (
            SWClass::single(SwFamily::S32, vec![])?,
            IsoMap::new(vec![
                row(n, &[(x(1), one()), (x(2), r(q(-2)))]),
                row(n, &[(x(1), one()), (x(2), r(q(-4)))]),
                row(n, &[(x(3), r(q(2)))]),
            ]),
        ),
        L3(a) => {
            let l = lam(a)?;
            let al = r(a.clone());
            (
                SWClass::single(SwFamily::S31, vec![l.lam.clone()])?,
                IsoMap::new(vec![
                    row(n, &[(x(1), al.clone()), (x(2), l.minus.clone())]),
                    row(n, &[(x(1), al.clone()), (x(2), l.plus.clone())]),
                    row(n, &[(x(3), l.minus.inv().expect("α ≠ 0"))]),
                ]),
            )
        }
        L4(a) if a.is_zero() => (
            SWClass::single(SwFamily::N31, vec![])?,
            IsoMap::new(vec![
                row(n, &[(x(2), one())]),
                row(n, &[(x(3), one())]),
                row(n, &[(x(1), one())]),
            ]),
        ),
        L4(a) => {
            let s = Surd::sqrt(a);
            (
                SWClass::single(SwFamily::S31, vec![r(q(-1))])?,
                IsoMap::new(vec![
                    row(n, &[(x(1), s.clone()), (x(2), one())]),
                    row(n, &[(x(1), s.clone()), (x(2), r(q(-1)))]),
                    row(n, &[(x(3), s.inv().expect("A ≠ 0"))]),
                ]),
            )
        }
        M2 => (SWClass::single(SwFamily::S43, vec![one(), one()])?, IsoMap::identity(4)),
        M6(a, b) => m6_to_sw(a, b)?,
        M7(a, b) if a.is_zero() && b.is_zero() => (
            SWClass::single(SwFamily::N41, vec![])?,
            IsoMap::new(vec![
                row(n, &[(x(3), one())]),
                row(n, &[(x(2), one())]),
                row(n, &[(x(1), one())]),
                row(n, &[(x(4), r(q(-1)))]),
            ]),
        ),
        M7(a, b) if a.is_zero() => {
            let s = Surd::sqrt(b);
            (
                SWClass::sum(vec![
                    SWClass::abelian(1),
                    SWClass::single(SwFamily::S31, vec![r(q(-1))])?,
                ]),
                IsoMap::new(vec![
                    row(n, &[(x(1), one()), (x(3), r(-b.recip()))]),
                    row(n, &[(x(2), s.clone()), (x(3), one())]),
                    row(n, &[(x(2), s.clone()), (x(3), r(q(-1)))]),
                    row(n, &[(x(4), s.inv().expect("B ≠ 0"))]),
                ]),
            )
        }
        M7(..) => return Err(Error::OutOfCatalog(c.to_string())),
        M8 => {
            let i = Surd::sqrt(&q(-1));
            let h = r(qf(1, 2));
            (
                SWClass::single(SwFamily::S412, vec![])?,
                IsoMap::new(vec![
                    row(n, &[(x(2), h.clone()), (x(4), h.clone())]),
                    row(n, &[(x(2), &-&i * &h), (x(4), &i * &h)]),
                    row(n, &[(x(1), one()), (x(3), one())]),
                    row(n, &[(x(1), i.clone()), (x(3), -&i)]),
                ]),
            )
        }
        M12 => (
            SWClass::single(SwFamily::S48, vec![one()])?,
            IsoMap::new(vec![
                row(n, &[(x(2), one())]),
                row(n, &[(x(3), one())]),
                row(n, &[(x(1), one())]),
                row(n, &[(x(4), one())]),
            ]),
        ),
        M13(a) if a.is_zero() => (
            SWClass::single(SwFamily::S411, vec![])?,
            IsoMap::new(vec![
                row(n, &[(x(2), one())]),
                row(n, &[(x(1), one())]),
                row(n, &[(x(1), one()), (x(3), r(q(-1)))]),
                row(n, &[(x(4), one())]),
            ]),
        ),
        M13(a) if *a == qf(-1, 4) => (
            SWClass::single(SwFamily::S410, vec![])?,
            IsoMap::new(vec![
                row(n, &[(x(2), r(q(-2)))]),
                row(n, &[(x(1), r(q(2))), (x(3), r(q(-1)))]),
                row(n, &[(x(3), one())]),
                row(n, &[(x(4), r(q(2)))]),
            ]),
        ),
        M13(a) => {
            let l = lam(a)?;
            let al = r(a.clone());
            (
                SWClass::single(SwFamily::S48, vec![l.lam.clone()])?,
                IsoMap::new(vec![
                    row(n, &[(x(2), &al * &l.root)]),
                    row(n, &[(x(1), l.minus.clone()), (x(3), al.clone())]),
                    row(n, &[(x(1), l.plus.clone()), (x(3), al.clone())]),
                    row(n, &[(x(4), l.minus.inv().expect("α ≠ 0"))]),
                ]),
            )
        }
        M14(a) => {
            let s = Surd::sqrt(a);
            (
                SWClass::single(SwFamily::S46, vec![])?,
                IsoMap::new(vec![
                    row(n, &[(x(2), &r(q(2)) * &s)]),
                    row(n, &[(x(1), one()), (x(3), s.clone())]),
                    row(n, &[(x(1), one()), (x(3), -&s)]),
                    row(n, &[(x(4), s.inv().expect("A ≠ 0"))]),
                ]),
            )
        }
    };
    Ok(out)
}

/// `M6_{A,B}`: decompose `ad x4` on `⟨x1,x2,x3⟩` (companion matrix of
/// `λ³ − λ² − Bλ − A`).
fn m6_to_sw(a: &Rational, b: &Rational) -> Result<(SWClass, IsoMap)> {
    let z = Rational::zero;
    let o = Rational::one;
    let comp = DMat::from_cols(&[
        vec![z(), o(), z()],
        vec![z(), z(), o()],
        vec![a.clone(), b.clone(), o()],
    ]);
    let ext = |v: &[Rational], last: Rational| {
        let mut w = v.to_vec();
        w.push(last);
        w
    };
    let eigvec = |mu: &Rational| comp.sub(&DMat::identity(3).scale(mu)).kernel()[0].clone();
    // vector of ker(N^k) outside ker(N^(k−1))
    let chain_top = |nm: &DMat, k: u32| -> Vec<Rational> {
        let mut p = DMat::identity(3);
        for _ in 0..k - 1 {
            p = p.mul(nm);
        }
        let lower = VecSpace::span(3, &p.kernel());
        p.mul(nm)
            .kernel()
            .into_iter()
            .find(|v| !lower.contains(v))
            .expect("Jordan chain exists")
    };
    let x4 = |c: Rational| vec![z(), z(), z(), c];
    if a.is_zero() {
        if b.is_zero() {
            return Err(Error::OutOfCatalog("M6(0,0)".to_string()));
        }
        let center = ext(&eigvec(&z()), z());
        if *b == qf(-1, 4) {
            // ad x4 has the double eigenvalue 1/2 on ⟨x2, x3⟩
            let nm = comp.scale(&q(2)).sub(&DMat::identity(3));
            let v = chain_top(&nm, 2);
            let nv = nm.apply(&v);
            let m = IsoMap::new(rows_rational(&[center, ext(&nv, z()), ext(&v, z()), x4(q(2))]));
            return Ok((
                SWClass::sum(vec![SWClass::abelian(1), SWClass::single(SwFamily::S32, vec![])?]),
                m,
            ));
        }
        let l = lam(b)?;
        let bb = sq(b.clone());
        let zero = Surd::zero();
        let m = IsoMap::new(vec![
            center.into_iter().map(Surd::rational).collect(),
            vec![zero.clone(), bb.clone(), l.minus.clone(), zero.clone()],
            vec![zero.clone(), bb, l.plus.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), zero, l.minus.inv().expect("B ≠ 0")],
        ]);
        return Ok((
            SWClass::sum(vec![SWClass::abelian(1), SWClass::single(SwFamily::S31, vec![l.lam])?]),
            m,
        ));
    }
    let roots = comp.char_poly().rational_roots()?;
    if roots.iter().map(|(_, m)| m).sum::<usize>() < 3 {
        return Err(Error::IrrationalSpectrum(format!(
            "M6({a},{b}) has characteristic polynomial {} for ad x4; its Šnobl–Winternitz parameters are not rational",
            comp.char_poly()
        )));
    }
    let order = |p: &Rational, r: &Rational| (p.abs().cmp(&r.abs())).then(p.cmp(r)).reverse();
    match roots.len() {
        3 => {
            let mut rs: Vec<Rational> = roots.into_iter().map(|(r, _)| r).collect();
            rs.sort_by(order);
            let lead = rs[0].clone();
            let m = IsoMap::new(rows_rational(&[
                ext(&eigvec(&rs[0]), z()),
                ext(&eigvec(&rs[1]), z()),
                ext(&eigvec(&rs[2]), z()),
                x4(lead.recip()),
            ]));
            let params = vec![sq(&rs[1] / &lead), sq(&rs[2] / &lead)];
            Ok((SWClass::single(SwFamily::S43, params)?, m))
        }
        2 => {
            let (double, simple) = if roots[0].1 == 2 {
                (&roots[0].0, &roots[1].0)
            } else {
                (&roots[1].0, &roots[0].0)
            };
            let nm = comp.scale(&double.recip()).sub(&DMat::identity(3));
            let v = chain_top(&nm, 2);
            let m = IsoMap::new(rows_rational(&[
                ext(&nm.apply(&v), z()),
                ext(&v, z()),
                ext(&eigvec(simple), z()),
                x4(double.recip()),
            ]));
            Ok((SWClass::single(SwFamily::S44, vec![sq(simple / double)])?, m))
        }
        _ => {
            let r0 = roots[0].0.clone();
            let nm = comp.scale(&r0.recip()).sub(&DMat::identity(3));
            let w = chain_top(&nm, 3);
            let nw = nm.apply(&w);
            let nnw = nm.apply(&nw);
            let m = IsoMap::new(rows_rational(&[
                ext(&nnw, z()),
                ext(&nw, z()),
                ext(&w, z()),
                x4(r0.recip()),
            ]));
            Ok((SWClass::single(SwFamily::S42, vec![])?, m))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::iso::verify_map;

    fn check(c: DeGraafClass, expect: &str) {
        let (sw, m) = degraaf_to_sw(&c).unwrap();
        assert_eq!(sw.to_string(), expect, "{c}");
        assert!(sw.algebra().is_lie(), "{sw}");
        assert!(verify_map(&c.algebra(), &sw.algebra(), &m).unwrap(), "{c} -> {sw}");
    }

    #[test]
    fn families_satisfy_jacobi() {
        for (f, _, _, np) in FAMILIES {
            let params: Vec<Surd> = [q(3), qf(1, 2)].iter().take(np).cloned().map(Surd::rational).collect();
            assert!(f.algebra(&params).unwrap().is_lie(), "{}", f.name());
        }
    }

    #[test]
    fn lam_normalization() {
        assert_eq!(lam(&qf(-3, 16)).unwrap().lam, sq(qf(1, 3)));
        assert_eq!(lam(&qf(-2, 9)).unwrap().lam, sq(qf(1, 2)));
        assert_eq!(lam(&q(2)).unwrap().lam, sq(qf(-1, 2)));
        // complex pair: |λ| = 1, upper half plane
        let l = lam(&q(-1)).unwrap().lam;
        assert_eq!(l.modulus_sq(), Surd::one());
        assert_eq!(l.imag_sign(), Ordering::Greater);
        assert_eq!(normalize_sw_param(&sq(q(2))).unwrap(), sq(qf(1, 2)));
        assert_eq!(normalize_sw_param(&sq(q(-1))).unwrap(), sq(q(-1)));
        assert_eq!(normalize_sw_param(&sq(q(0))), Err(Error::ZeroParameter));
    }

    #[test]
    fn explicit_isomorphisms() {
        use DeGraafClass::*;
        check(J, "n_{1,1}");
        check(K1, "2n_{1,1}");
        check(K2, "s_{2,1}");
        check(L1, "3n_{1,1}");
        check(L2, "s_{3,1}(A=1)");
        check(L3(q(0)), "n_{1,1}+s_{2,1}");
        check(L3(qf(-1, 4)), "s_{3,2}");
        check(L3(qf(-3, 16)), "s_{3,1}(A=1/3)");
        check(L3(qf(-2, 9)), "s_{3,1}(A=1/2)");
        check(L3(q(1)), "s_{3,1}(A=-3/2+1/2*sqrt(5))");
        check(L3(q(-1)), "s_{3,1}(A=-1/2+1/2*sqrt(-3))");
        check(L4(q(0)), "n_{3,1}");
        check(L4(q(1)), "s_{3,1}(A=-1)");
        check(L4(q(-1)), "s_{3,1}(A=-1)");
        check(M2, "s_{4,3}(A=1,B=1)");
        check(M6(qf(1, 27), qf(-1, 3)), "s_{4,2}");
        check(M6(q(0), qf(-2, 9)), "n_{1,1}+s_{3,1}(A=1/2)");
        check(M6(q(0), qf(-1, 4)), "n_{1,1}+s_{3,2}");
        check(M6(qf(8, 243), qf(-26, 81)), "s_{4,3}(A=3/4,B=1/2)");
        check(M7(q(0), q(0)), "n_{4,1}");
        check(M7(q(0), q(1)), "n_{1,1}+s_{3,1}(A=-1)");
        check(M7(q(0), q(2)), "n_{1,1}+s_{3,1}(A=-1)");
        check(M8, "s_{4,12}");
        check(M12, "s_{4,8}(A=1)");
        check(M13(q(0)), "s_{4,11}");
        check(M13(qf(-1, 4)), "s_{4,10}");
        check(M13(qf(-2, 9)), "s_{4,8}(A=1/2)");
        check(M13(qf(-3, 16)), "s_{4,8}(A=1/3)");
        check(M14(q(1)), "s_{4,6}");
        check(M14(q(-3)), "s_{4,6}");
    }

    #[test]
    fn m6_special_cases() {
        // double root: λ³ − λ² − Bλ − A = (λ − 1)²(λ + 1)
        check(DeGraafClass::M6(q(-1), q(1)), "s_{4,4}(A=-1)");
        // irrational cubic
        assert!(matches!(
            degraaf_to_sw(&DeGraafClass::M6(q(1), q(0))),
            Err(Error::IrrationalSpectrum(_))
        ));
        assert!(matches!(
            degraaf_to_sw(&DeGraafClass::M7(q(1), q(0))),
            Err(Error::OutOfCatalog(_))
        ));
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "2n_{1,1}",
            "n_{1,1}+s_{3,1}(A=1/2)",
            "s_{4,3}(A=1,B=1)",
            "s_{5,35}(A=2)",
            "s_{6,242}",
        ] {
            assert_eq!(s.parse::<SWClass>().unwrap().to_string(), s);
        }
        assert_eq!("s31(A=2)".parse::<SWClass>().unwrap().to_string(), "s_{3,1}(A=1/2)");
        assert!("s_{3,1}".parse::<SWClass>().is_err());
        assert!("s_{9,9}".parse::<SWClass>().is_err());
    }
}
