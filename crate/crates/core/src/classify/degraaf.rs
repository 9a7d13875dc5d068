//! de Graaf's classes of solvable Lie algebras of dimension at most four, and
//! a constructive identifier.
//!
//! Every identification comes with a *witness*: a basis `x_1, …, x_n` of the
//! input algebra in which the structure constants are literally the defining
//! relations of the returned class.  The identifier never answers without
//! checking that, so a wrong branch can only lead to "unrecognized", never to
//! a wrong class.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::iso::AbstractAlgebra;
use crate::error::{Error, Result};
use crate::lie::{restrict_operator, solve_in_columns, unit, BracketRelation, StructureConstants};
use crate::linalg::{
    cbrt_exact, cubefree_kernel, parse_rational_list, q, sqrt_exact, squarefree_kernel, DMat, Rational, VecSpace,
};

/// A de Graaf isomorphism class (parameters in canonical form).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DeGraafClass {
    /// One-dimensional.
    J,
    /// Abelian, dimension 2.
    K1,
    /// `[x1,x2] = x2`.
    K2,
    /// Abelian, dimension 3.
    L1,
    /// `[x3,x1] = x1`, `[x3,x2] = x2`.
    L2,
    /// `[x3,x1] = x2`, `[x3,x2] = A x1 + x2`.
    L3(Rational),
    /// `[x3,x1] = x2`, `[x3,x2] = A x1`; `A` up to nonzero squares.
    L4(Rational),
    /// `[x4,x_i] = x_i` for `i = 1, 2, 3`.
    M2,
    /// `[x4,x1] = x2`, `[x4,x2] = x3`, `[x4,x3] = A x1 + B x2 + x3`.
    M6(Rational, Rational),
    /// `[x4,x1] = x2`, `[x4,x2] = x3`, `[x4,x3] = A x1 + B x2`; `(A, B) ~ (A/α³, B/α²)`.
    M7(Rational, Rational),
    /// `[x1,x2] = x2`, `[x3,x4] = x4`.
    M8,
    /// `[x4,x1] = x1`, `[x4,x2] = 2x2`, `[x4,x3] = x3`, `[x3,x1] = x2`.
    M12,
    /// `[x4,x1] = x1 + A x3`, `[x4,x2] = x2`, `[x4,x3] = x1`, `[x3,x1] = x2`.
    M13(Rational),
    /// `[x4,x1] = A x3`, `[x4,x3] = x1`, `[x3,x1] = x2`; `A ≠ 0` up to squares.
    M14(Rational),
}

impl DeGraafClass {
    /// Dimension of the algebras in the class.
    pub fn dim(&self) -> usize {
        use DeGraafClass::*;
        match self {
            J => 1,
            K1 | K2 => 2,
            L1 | L2 | L3(_) | L4(_) => 3,
            _ => 4,
        }
    }

    /// Family name without parameters.
    pub fn family(&self) -> &'static str {
        use DeGraafClass::*;
        match self {
            J => "J",
            K1 => "K1",
            K2 => "K2",
            L1 => "L1",
            L2 => "L2",
            L3(_) => "L3",
            L4(_) => "L4",
            M2 => "M2",
            M6(..) => "M6",
            M7(..) => "M7",
            M8 => "M8",
            M12 => "M12",
            M13(_) => "M13",
            M14(_) => "M14",
        }
    }

    /// Parameters in display order.
    pub fn params(&self) -> Vec<Rational> {
        use DeGraafClass::*;
        match self {
            L3(a) | L4(a) | M13(a) | M14(a) => vec![a.clone()],
            M6(a, b) | M7(a, b) => vec![a.clone(), b.clone()],
            _ => vec![],
        }
    }

    /// Replace parameters by the canonical representative of their
    /// equivalence class (squarefree / cubefree kernels).
    pub fn canonical(self) -> Result<Self> {
        use DeGraafClass::*;
        Ok(match self {
            L4(a) => L4(squarefree_kernel(&a)),
            M14(a) if a.is_zero() => return Err(Error::ZeroParameter),
            M14(a) => M14(squarefree_kernel(&a)),
            M7(a, b) => {
                let (c, _) = m7_canonical(&a, &b);
                c
            }
            other => other,
        })
    }

    /// Defining relations as rational structure constants.
    pub fn structure_constants(&self) -> StructureConstants {
        use DeGraafClass::*;
        let one = Rational::one;
        let rels: Vec<BracketRelation> = match self {
            J | K1 | L1 => vec![],
            K2 => vec![(0, 1, vec![(1, one())])],
            L2 => vec![(2, 0, vec![(0, one())]), (2, 1, vec![(1, one())])],
            L3(a) => vec![(2, 0, vec![(1, one())]), (2, 1, vec![(0, a.clone()), (1, one())])],
            L4(a) => vec![(2, 0, vec![(1, one())]), (2, 1, vec![(0, a.clone())])],
            M2 => (0..3).map(|i| (3, i, vec![(i, one())])).collect(),
            M6(a, b) => vec![
                (3, 0, vec![(1, one())]),
                (3, 1, vec![(2, one())]),
                (3, 2, vec![(0, a.clone()), (1, b.clone()), (2, one())]),
            ],
            M7(a, b) => vec![
                (3, 0, vec![(1, one())]),
                (3, 1, vec![(2, one())]),
                (3, 2, vec![(0, a.clone()), (1, b.clone())]),
            ],
            M8 => vec![(0, 1, vec![(1, one())]), (2, 3, vec![(3, one())])],
            M12 => vec![
                (3, 0, vec![(0, one())]),
                (3, 1, vec![(1, q(2))]),
                (3, 2, vec![(2, one())]),
                (2, 0, vec![(1, one())]),
            ],
            M13(a) => vec![
                (3, 0, vec![(0, one()), (2, a.clone())]),
                (3, 1, vec![(1, one())]),
                (3, 2, vec![(0, one())]),
                (2, 0, vec![(1, one())]),
            ],
            M14(a) => vec![
                (3, 0, vec![(2, a.clone())]),
                (3, 2, vec![(0, one())]),
                (2, 0, vec![(1, one())]),
            ],
        };
        StructureConstants::from_relations(self.dim(), &rels)
    }

    /// Defining relations over the quadratic-field type used by isomorphism checks.
    pub fn algebra(&self) -> AbstractAlgebra {
        AbstractAlgebra::from_constants(&self.structure_constants())
    }
}

/// Canonical `M7` parameters and the scale `α` with `(A, B) = (α³A', α²B')`.
fn m7_canonical(a: &Rational, b: &Rational) -> (DeGraafClass, Rational) {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => (DeGraafClass::M7(Rational::zero(), Rational::zero()), Rational::one()),
        (false, false) => {
            let t = b * b * b / (a * a);
            (DeGraafClass::M7(t.clone(), t), a / b)
        }
        (false, true) => {
            let k = cubefree_kernel(a);
            let alpha = cbrt_exact(&(a / &k)).expect("cube by construction");
            (DeGraafClass::M7(k, Rational::zero()), alpha)
        }
        (true, false) => {
            let k = squarefree_kernel(b);
            let alpha = sqrt_exact(&(b / &k)).expect("square by construction");
            (DeGraafClass::M7(Rational::zero(), k), alpha)
        }
    }
}

impl fmt::Display for DeGraafClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params();
        if p.is_empty() {
            write!(f, "{}", self.family())
        } else {
            let ps: Vec<String> = p.iter().map(|r| r.to_string()).collect();
            write!(f, "{}({})", self.family(), ps.join(","))
        }
    }
}

impl FromStr for DeGraafClass {
    type Err = Error;

    /// Parses `"K2"`, `"L3(-3/16)"`, `"M6(8/243,-26/81)"`, also accepting
    /// `"L3_-3/16"`-style suffixes.  Parameters are canonicalized.
    fn from_str(s: &str) -> Result<Self> {
        use DeGraafClass::*;
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown de Graaf class '{s}'"));
        let (name, args) = match s.find(['(', '_']) {
            Some(i) => {
                let rest = s[i + 1..].trim_end_matches(')');
                (&s[..i], parse_rational_list(rest)?)
            }
            None => (s, vec![]),
        };
        let want = |n: usize| if args.len() == n { Ok(()) } else { Err(bad()) };
        let c = match name {
            "J" => want(0).map(|_| J),
            "K1" => want(0).map(|_| K1),
            "K2" => want(0).map(|_| K2),
            "L1" => want(0).map(|_| L1),
            "L2" => want(0).map(|_| L2),
            "L3" => want(1).map(|_| L3(args[0].clone())),
            "L4" => want(1).map(|_| L4(args[0].clone())),
            "M2" => want(0).map(|_| M2),
            "M6" => want(2).map(|_| M6(args[0].clone(), args[1].clone())),
            "M7" => want(2).map(|_| M7(args[0].clone(), args[1].clone())),
            "M8" => want(0).map(|_| M8),
            "M12" => want(0).map(|_| M12),
            "M13" => want(1).map(|_| M13(args[0].clone())),
            "M14" => want(1).map(|_| M14(args[0].clone())),
            _ => Err(bad()),
        }?;
        c.canonical()
    }
}

impl Serialize for DeGraafClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DeGraafClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A class together with a basis realizing its relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identified {
    /// The class.
    pub class: DeGraafClass,
    /// `x_1, …, x_n` in the coordinates of the input algebra.
    pub basis: Vec<Vec<Rational>>,
}

type V = Vec<Rational>;

fn scale(c: &Rational, v: &[Rational]) -> V {
    v.iter().map(|x| c * x).collect()
}

fn add(v: &[Rational], w: &[Rational]) -> V {
    v.iter().zip(w).map(|(a, b)| a + b).collect()
}

fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `w = c·z` for a nonzero `z`; returns `c`.
fn ratio(w: &[Rational], z: &[Rational]) -> Rational {
    let k = z.iter().position(|x| !x.is_zero()).expect("nonzero vector");
    &w[k] / &z[k]
}

fn to_ambient(basis: &[V], coords: &[Rational]) -> V {
    let mut out = vec![Rational::zero(); basis[0].len()];
    for (c, b) in coords.iter().zip(basis) {
        if !c.is_zero() {
            out = add(&out, &scale(c, b));
        }
    }
    out
}

/// Small integer combinations of `basis` (coefficients `0..=3`), sparsest first.
fn grid(basis: &[V]) -> Vec<V> {
    let m = basis.len();
    let mut tuples: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..m {
        tuples = tuples
            .into_iter()
            .flat_map(|t| (0..4).map(move |c| [t.clone(), vec![c]].concat()))
            .collect();
    }
    tuples.retain(|t| t.iter().any(|&c| c != 0));
    tuples.sort_by_key(|t| (t.iter().filter(|&&c| c != 0).count(), t.iter().sum::<i64>()));
    tuples
        .into_iter()
        .map(|t| to_ambient(basis, &t.into_iter().map(q).collect::<Vec<_>>()))
        .collect()
}

fn first_outside(n: usize, s: &VecSpace) -> V {
    (0..n)
        .map(|i| unit(n, i))
        .find(|u| !s.contains(u))
        .expect("proper subspace")
}

fn certify(sc: &StructureConstants, class: DeGraafClass, basis: Vec<V>) -> Option<Identified> {
    let got = sc.change_basis(&basis).ok()?;
    (got == class.structure_constants()).then_some(Identified { class, basis })
}

/// Vectors `v` of the invariant subspace `basis` with `v, Mv, …` spanning it.
fn cyclic_vector(op: &DMat, basis: &[V]) -> Option<V> {
    let n = basis[0].len();
    grid(basis).into_iter().find(|v| {
        let mut chain = vec![v.clone()];
        for _ in 1..basis.len() {
            chain.push(op.apply(chain.last().unwrap()));
        }
        VecSpace::span(n, &chain).dim() == basis.len()
    })
}

/// Solve the linear conditions `[y, w_i] = r_i` for `y`.
fn solve_brackets(sc: &StructureConstants, conds: &[(&V, V)]) -> Option<V> {
    let n = sc.dim();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (w, r) in conds {
        // [y, w] = −ad(w)·y
        let a = sc.ad(w).scale(&-Rational::one());
        for i in 0..n {
            rows.push(a.row(i));
            rhs.push(r[i].clone());
        }
    }
    solve_in_columns(&DMat::from_rows(&rows), &rhs)
}

/// Identify a solvable Lie algebra of dimension at most four, returning its
/// class and a certified basis.
pub fn identify_degraaf(sc: &StructureConstants) -> Result<Identified> {
    let n = sc.dim();
    if n == 0 || n > 4 {
        return Err(Error::UnsupportedDimension(n));
    }
    if !sc.is_solvable() {
        return Err(Error::NotSolvable);
    }
    let found = match n {
        1 => certify(sc, DeGraafClass::J, vec![unit(1, 0)]),
        2 => identify_dim2(sc),
        3 => identify_dim3(sc),
        _ => identify_dim4(sc),
    };
    found.ok_or_else(|| {
        Error::UnrecognizedFamily(format!(
            "dimension {n}, derived series {:?}, lower central series {:?}",
            sc.derived_dims(),
            sc.lower_central_dims()
        ))
    })
}

fn identity_basis(n: usize) -> Vec<V> {
    (0..n).map(|i| unit(n, i)).collect()
}

fn identify_dim2(sc: &StructureConstants) -> Option<Identified> {
    if sc.is_abelian() {
        return certify(sc, DeGraafClass::K1, identity_basis(2));
    }
    let z = sc.derived().basis()[0].clone();
    let u = (0..2).map(|i| unit(2, i)).find(|u| !is_zero(&sc.bracket(u, &z)))?;
    let c = ratio(&sc.bracket(&u, &z), &z);
    certify(sc, DeGraafClass::K2, vec![scale(&c.recip(), &u), z])
}

fn identify_dim3(sc: &StructureConstants) -> Option<Identified> {
    let n = 3;
    if sc.is_abelian() {
        return certify(sc, DeGraafClass::L1, identity_basis(n));
    }
    let d = sc.derived();
    if d.dim() == 2 {
        let db = d.basis().to_vec();
        let x = first_outside(n, &d);
        let ad = sc.ad(&x);
        let m = restrict_operator(&ad, &db)?;
        let tr = m.trace();
        if m.get(0, 1).is_zero() && m.get(1, 0).is_zero() && m.get(0, 0) == m.get(1, 1) {
            let c = m.get(0, 0).clone();
            let x3 = scale(&c.recip(), &x);
            return certify(sc, DeGraafClass::L2, vec![db[0].clone(), db[1].clone(), x3]);
        }
        let (x3, class) = if !tr.is_zero() {
            let a = -m.scale(&tr.recip()).det();
            (scale(&tr.recip(), &x), DeGraafClass::L3(a))
        } else {
            let a = -m.det();
            let k = squarefree_kernel(&a);
            let alpha = sqrt_exact(&(&a / &k))?;
            (scale(&alpha.recip(), &x), DeGraafClass::L4(k))
        };
        let op = sc.ad(&x3);
        let x1 = cyclic_vector(&op, &db)?;
        let x2 = op.apply(&x1);
        return certify(sc, class, vec![x1, x2, x3]);
    }
    // dim [g,g] = 1
    let z = d.basis()[0].clone();
    if let Some(u) = (0..n).map(|i| unit(n, i)).find(|u| !is_zero(&sc.bracket(u, &z))) {
        let c = ratio(&sc.bracket(&u, &z), &z);
        let x3 = scale(&c.recip(), &u);
        let zs = VecSpace::span(n, std::slice::from_ref(&z));
        let cz = sc.centralizer(&zs);
        let x1p = cz.basis().iter().find(|v| !zs.contains(v))?.clone();
        let k = ratio(&sc.bracket(&x3, &x1p), &z);
        let x1 = if k.is_zero() {
            add(&x1p, &z)
        } else {
            scale(&k.recip(), &x1p)
        };
        return certify(sc, DeGraafClass::L3(Rational::zero()), vec![x1, z, x3]);
    }
    for i in 0..n {
        for j in 0..n {
            let (ui, uj) = (unit(n, i), unit(n, j));
            let br = sc.bracket(&ui, &uj);
            if !is_zero(&br) {
                let k = ratio(&br, &z);
                return certify(
                    sc,
                    DeGraafClass::L4(Rational::zero()),
                    vec![scale(&k.recip(), &uj), z, ui],
                );
            }
        }
    }
    None
}

fn identify_dim4(sc: &StructureConstants) -> Option<Identified> {
    abelian_ideal_family(sc)
        .or_else(|| heisenberg_family(sc))
        .or_else(|| split_torus_family(sc))
        .or_else(|| nilpotent_twist_family(sc))
}

/// `M2`, `M6`, `M7`: a three-dimensional abelian ideal and one extra element.
fn abelian_ideal_family(sc: &StructureConstants) -> Option<Identified> {
    let n = sc.dim();
    let d = sc.derived();
    let ideal = if d.dim() == 3 && sc.bracket_space(&d, &d).dim() == 0 {
        d
    } else if d.dim() == 2 {
        let c = sc.centralizer(&d);
        if c.dim() != 3 || sc.bracket_space(&c, &c).dim() != 0 {
            return None;
        }
        c
    } else {
        return None;
    };
    let nb = ideal.basis().to_vec();
    let x = first_outside(n, &ideal);
    let m = restrict_operator(&sc.ad(&x), &nb)?;
    let tr = m.trace();
    let c00 = m.get(0, 0).clone();
    if !c00.is_zero() && m == DMat::identity(3).scale(&c00) {
        let x4 = scale(&c00.recip(), &x);
        return certify(
            sc,
            DeGraafClass::M2,
            vec![nb[0].clone(), nb[1].clone(), nb[2].clone(), x4],
        );
    }
    let (x4, class) = if !tr.is_zero() {
        let p = m.scale(&tr.recip()).char_poly();
        (scale(&tr.recip(), &x), DeGraafClass::M6(-p.coeff(0), -p.coeff(1)))
    } else {
        let p = m.char_poly();
        let (class, alpha) = m7_canonical(&-p.coeff(0), &-p.coeff(1));
        (scale(&alpha.recip(), &x), class)
    };
    let op = sc.ad(&x4);
    let x1 = cyclic_vector(&op, &nb)?;
    let x2 = op.apply(&x1);
    let x3 = op.apply(&x2);
    certify(sc, class, vec![x1, x2, x3, x4])
}

/// `M12`, `M13_A` (`A ≠ 0`), `M14_A`: a Heisenberg derived algebra.
fn heisenberg_family(sc: &StructureConstants) -> Option<Identified> {
    let n = sc.dim();
    let d = sc.derived();
    if d.dim() != 3 {
        return None;
    }
    let z = sc.bracket_space(&d, &d);
    if z.dim() != 1 || sc.bracket_space(&z, &d).dim() != 0 {
        return None;
    }
    let zv = z.basis()[0].clone();
    let mut adapted = vec![zv];
    adapted.extend(z.complement_in(&d));
    let db = d.basis().to_vec();
    let x = first_outside(n, &d);
    let m = restrict_operator(&sc.ad(&x), &adapted)?;
    let mbar = DMat::from_rows(&[
        vec![m.get(1, 1).clone(), m.get(1, 2).clone()],
        vec![m.get(2, 1).clone(), m.get(2, 2).clone()],
    ]);
    let tr = mbar.trace();
    let cyc = |x4: V, poly: &dyn Fn(&DMat) -> DMat, class: DeGraafClass| -> Option<Identified> {
        let op = sc.ad(&x4);
        let md = restrict_operator(&op, &db)?;
        let w: Vec<V> = poly(&md).kernel().iter().map(|c| to_ambient(&db, c)).collect();
        if w.is_empty() {
            return None;
        }
        for x3 in grid(&w) {
            let x1 = op.apply(&x3);
            let x2 = sc.bracket(&x3, &x1);
            if let Some(found) = certify(sc, class.clone(), vec![x1, x2, x3, x4.clone()]) {
                return Some(found);
            }
        }
        None
    };
    if !tr.is_zero() {
        let c = mbar.get(0, 0).clone();
        if mbar.get(0, 1).is_zero() && mbar.get(1, 0).is_zero() && mbar.get(1, 1) == &c {
            let x4 = scale(&c.recip(), &x);
            let md = restrict_operator(&sc.ad(&x4), &db)?;
            let e1: Vec<V> = md
                .sub(&DMat::identity(3))
                .kernel()
                .iter()
                .map(|c| to_ambient(&db, c))
                .collect();
            if e1.len() != 2 {
                return None;
            }
            let x2 = sc.bracket(&e1[1], &e1[0]);
            return certify(sc, DeGraafClass::M12, vec![e1[0].clone(), x2, e1[1].clone(), x4]);
        }
        let a = -mbar.scale(&tr.recip()).det();
        if a.is_zero() {
            return None;
        }
        let x4 = scale(&tr.recip(), &x);
        let aa = a.clone();
        let poly = move |md: &DMat| md.mul(md).sub(md).sub(&DMat::identity(3).scale(&aa));
        cyc(x4, &poly, DeGraafClass::M13(a))
    } else {
        let a = -mbar.det();
        if a.is_zero() {
            return None;
        }
        let k = squarefree_kernel(&a);
        let alpha = sqrt_exact(&(&a / &k))?;
        let x4 = scale(&alpha.recip(), &x);
        let kk = k.clone();
        let poly = move |md: &DMat| md.mul(md).sub(&DMat::identity(3).scale(&kk));
        cyc(x4, &poly, DeGraafClass::M14(k))
    }
}

/// `M8 = K2 ⊕ K2`: a two-dimensional abelian derived algebra on which `ad`
/// acts through a split two-dimensional torus.
fn split_torus_family(sc: &StructureConstants) -> Option<Identified> {
    let n = sc.dim();
    let d = sc.derived();
    if d.dim() != 2 || sc.bracket_space(&d, &d).dim() != 0 {
        return None;
    }
    let db = d.basis().to_vec();
    for u in grid(&identity_basis(n)) {
        let m = restrict_operator(&sc.ad(&u), &db)?;
        let Ok(roots) = m.char_poly().rational_roots() else {
            continue;
        };
        if roots.len() != 2 {
            continue;
        }
        let eig = |mu: &Rational| {
            let k = m.sub(&DMat::identity(2).scale(mu)).kernel();
            to_ambient(&db, &k[0])
        };
        let (w1, w2) = (eig(&roots[0].0), eig(&roots[1].0));
        let zero = vec![Rational::zero(); n];
        let mut y1 = solve_brackets(sc, &[(&w1, w1.clone()), (&w2, zero.clone())])?;
        let mut y3 = solve_brackets(sc, &[(&w2, w2.clone()), (&w1, zero)])?;
        let coords = VecSpace::span(n, &[w1.clone(), w2.clone()]);
        let br = sc.bracket(&y1, &y3);
        coords.coords(&br)?;
        let m2 = DMat::from_cols(&[w1.clone(), w2.clone()]);
        let pq = solve_in_columns(&m2, &br)?;
        y1 = add(&y1, &scale(&pq[1], &w2));
        y3 = add(&y3, &scale(&-pq[0].clone(), &w1));
        return certify(sc, DeGraafClass::M8, vec![y1, w1, y3, w2]);
    }
    None
}

/// `M13_0`: a two-dimensional abelian derived algebra on which `ad` acts
/// through scalars plus a nilpotent.
fn nilpotent_twist_family(sc: &StructureConstants) -> Option<Identified> {
    let n = sc.dim();
    let d = sc.derived();
    if d.dim() != 2 || sc.bracket_space(&d, &d).dim() != 0 {
        return None;
    }
    let db = d.basis().to_vec();
    let x4 = solve_brackets(sc, &[(&db[0], db[0].clone()), (&db[1], db[1].clone())])?;
    let traces: Vec<Rational> = (0..n)
        .map(|i| restrict_operator(&sc.ad(&unit(n, i)), &db).map(|m| m.trace()))
        .collect::<Option<_>>()?;
    let h: Vec<V> = DMat::from_rows(&[traces]).kernel();
    for x3 in grid(&h) {
        if d.contains(&x3) {
            continue;
        }
        let x1 = sc.bracket(&x4, &x3);
        let x2 = sc.bracket(&x3, &x1);
        if let Some(found) = certify(sc, DeGraafClass::M13(Rational::zero()), vec![x1, x2, x3, x4.clone()]) {
            return Some(found);
        }
    }
    None
}
