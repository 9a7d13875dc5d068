//! The concrete sp(4) apparatus.
//!
//! sp(4) is realized as the 4×4 rational matrices `X` with `J Xᵀ J = X` for
//! the fixed form `J`; the diagonal Cartan subalgebra is spanned by
//! `T_{a,b} = diag(a, b, −a, −b)`, and the Borel subalgebra `b` by the Cartan
//! together with the four positive root vectors.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{parse_rational, q, Mat4, Rational, Subspace};

/// Default parameter samples for parameterized catalog families.
pub const DEFAULT_SAMPLES: [&str; 8] = ["2", "3", "5", "-2", "-3", "1/2", "2/3", "7/3"];

/// Environment variable overriding [`DEFAULT_SAMPLES`] (comma-separated rationals).
pub const SAMPLES_ENV: &str = "SP4_PARAM_SAMPLES";

/// The default samples as rationals.
pub fn default_samples() -> Vec<Rational> {
    DEFAULT_SAMPLES
        .iter()
        .map(|s| parse_rational(s).expect("valid literal"))
        .collect()
}

/// Samples from `SP4_PARAM_SAMPLES` when set, else the defaults.
pub fn param_samples() -> Result<Vec<Rational>> {
    match std::env::var(SAMPLES_ENV) {
        Ok(s) if !s.trim().is_empty() => crate::linalg::rational::parse_rational_list(&s),
        _ => Ok(default_samples()),
    }
}

/// The symplectic form `J`.
pub fn form_j() -> Mat4 {
    Mat4::from_ints([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
}

/// Membership in sp(4): `J mᵀ J = m`.
pub fn in_sp4(m: &Mat4) -> bool {
    let j = form_j();
    &(&j * &m.transpose()) * &j == *m
}

/// Membership in Sp(4): `g J gᵀ = J`.
pub fn in_sp4_group(g: &Mat4) -> bool {
    let j = form_j();
    &(g * &j) * &g.transpose() == j
}

/// Commutator `xy − yx`.
pub fn bracket(x: &Mat4, y: &Mat4) -> Mat4 {
    &(x * y) - &(y * x)
}

/// Adjoint action `g x g⁻¹`.
pub fn conjugate(g: &Mat4, x: &Mat4) -> Result<Mat4> {
    let gi = g.inverse()?;
    Ok(&(g * x) * &gi)
}

/// Image of a subspace under `x ↦ g x g⁻¹`, re-echelonized.
pub fn conjugate_subalgebra(g: &Mat4, s: &Subspace) -> Result<Subspace> {
    let gi = g.inverse()?;
    let imgs: Vec<Mat4> = s.basis().iter().map(|x| &(g * x) * &gi).collect();
    Ok(Subspace::span(&imgs))
}

/// Positive roots of the rank-2 root system of sp(4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Root {
    /// Long simple root α.
    Alpha,
    /// Short simple root β.
    Beta,
    /// Short root α + β.
    AlphaPlusBeta,
    /// Long root α + 2β.
    AlphaPlus2Beta,
}

impl Root {
    /// All positive roots in height order.
    pub const ALL: [Root; 4] = [Root::Alpha, Root::Beta, Root::AlphaPlusBeta, Root::AlphaPlus2Beta];

    /// Root vector `X_γ`.
    pub fn matrix(self) -> Mat4 {
        match self {
            Root::Alpha => Mat4::unit(2, 4),
            Root::Beta => &Mat4::unit(1, 2) - &Mat4::unit(4, 3),
            Root::AlphaPlusBeta => &Mat4::unit(1, 4) + &Mat4::unit(2, 3),
            Root::AlphaPlus2Beta => Mat4::unit(1, 3),
        }
    }

    /// Value `γ(T_{a,b})`, so that `[T_{a,b}, X_γ] = γ(T_{a,b}) X_γ`.
    pub fn value(self, a: &Rational, b: &Rational) -> Rational {
        match self {
            Root::Alpha => b + b,
            Root::Beta => a - b,
            Root::AlphaPlusBeta => a + b,
            Root::AlphaPlus2Beta => a + a,
        }
    }

    /// Height in the simple roots.
    pub fn height(self) -> usize {
        match self {
            Root::Alpha | Root::Beta => 1,
            Root::AlphaPlusBeta => 2,
            Root::AlphaPlus2Beta => 3,
        }
    }

    /// Canonical text name.
    pub fn name(self) -> &'static str {
        match self {
            Root::Alpha => "alpha",
            Root::Beta => "beta",
            Root::AlphaPlusBeta => "alpha+beta",
            Root::AlphaPlus2Beta => "alpha+2beta",
        }
    }
}

impl FromStr for Root {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "alpha" | "a" => Ok(Root::Alpha),
            "beta" | "b" => Ok(Root::Beta),
            "alpha+beta" | "alpha_plus_beta" | "ab" => Ok(Root::AlphaPlusBeta),
            "alpha+2beta" | "alpha_plus_2beta" | "a2b" => Ok(Root::AlphaPlus2Beta),
            other => Err(Error::Parse(format!("unknown root '{other}'"))),
        }
    }
}

/// `T_{a,b} = diag(a, b, −a, −b)`.
pub fn t_ab(a: &Rational, b: &Rational) -> Mat4 {
    Mat4::diag([a.clone(), b.clone(), -a.clone(), -b.clone()])
}

/// `T_{a,b}` for integer arguments.
pub fn t_int(a: i64, b: i64) -> Mat4 {
    t_ab(&q(a), &q(b))
}

/// Shorthand for the root vector matrix.
pub fn x(r: Root) -> Mat4 {
    r.matrix()
}

/// A diagonal element `T_{a,b}` of the Cartan subalgebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagonalElement {
    /// First coordinate.
    pub a: Rational,
    /// Second coordinate.
    pub b: Rational,
}

impl DiagonalElement {
    /// Construct `T_{a,b}`.
    pub fn new(a: Rational, b: Rational) -> Self {
        DiagonalElement { a, b }
    }

    /// The matrix `diag(a, b, −a, −b)`.
    pub fn matrix(&self) -> Mat4 {
        t_ab(&self.a, &self.b)
    }

    /// Read `(a, b)` off a matrix of the form `diag(a, b, −a, −b)`.
    pub fn from_matrix(m: &Mat4) -> Option<Self> {
        let d = DiagonalElement::new(m.get(0, 0).clone(), m.get(1, 1).clone());
        (d.matrix() == *m).then_some(d)
    }
}

/// Orbit of `T_{a,b}` under the Weyl group generated by
/// `s_α: (a,b) ↦ (a,−b)` and `s_β: (a,b) ↦ (b,a)`.
pub fn weyl_orbit(t: &DiagonalElement) -> BTreeSet<DiagonalElement> {
    let mut orbit = BTreeSet::new();
    let mut todo = vec![t.clone()];
    while let Some(d) = todo.pop() {
        if !orbit.insert(d.clone()) {
            continue;
        }
        todo.push(DiagonalElement::new(d.a.clone(), -d.b.clone()));
        todo.push(DiagonalElement::new(d.b.clone(), d.a.clone()));
    }
    orbit
}

/// The standard subalgebras of sp(4) used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StandardSubalgebraId {
    /// Diagonal Cartan subalgebra.
    T,
    /// Borel subalgebra.
    B,
    /// Nilradical of `b`.
    N,
    /// Maximal parabolic subalgebra.
    P,
    /// Nilradical of `p` (abelian).
    NP,
}

impl StandardSubalgebraId {
    /// Spanning set of the subalgebra.
    pub fn generators(self) -> Vec<Mat4> {
        let t = vec![t_int(1, 0), t_int(0, 1)];
        let n = Root::ALL.iter().map(|r| r.matrix()).collect::<Vec<_>>();
        let np = vec![x(Root::Alpha), x(Root::AlphaPlusBeta), x(Root::AlphaPlus2Beta)];
        match self {
            StandardSubalgebraId::T => t,
            StandardSubalgebraId::N => n,
            StandardSubalgebraId::NP => np,
            StandardSubalgebraId::B => [t, n].concat(),
            StandardSubalgebraId::P => {
                // Levi factor gl(2) embedded as diag(g, g^{-T}) plus the abelian radical.
                let neg_beta = &Mat4::unit(2, 1) - &Mat4::unit(3, 4);
                [t, vec![x(Root::Beta), neg_beta], np].concat()
            }
        }
    }

    /// The subalgebra as a canonical subspace.
    pub fn subspace(self) -> Subspace {
        Subspace::span(&self.generators())
    }
}

/// The Borel generators in the fixed order `[T₁₀, T₀₁, X_α, X_β, X_{α+β}, X_{α+2β}]`,
/// which is also the coordinate order of catalog coefficient lists.
pub fn borel_generators() -> [Mat4; 6] {
    [
        t_int(1, 0),
        t_int(0, 1),
        x(Root::Alpha),
        x(Root::Beta),
        x(Root::AlphaPlusBeta),
        x(Root::AlphaPlus2Beta),
    ]
}

/// Membership in the Borel subalgebra.
pub fn in_borel(m: &Mat4) -> bool {
    StandardSubalgebraId::B.subspace().contains(m)
}

/// A named element of Sp(4) usable as a conjugator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedConjugator {
    /// The identity.
    Identity,
    /// Weyl element swapping the two coordinates (`T_{a,b} ↦ T_{b,a}`); also `s_beta`.
    W,
    /// Weyl element `T_{a,b} ↦ T_{a,−b}`; also `s_alpha`.
    A,
    /// The form `J` itself (`X ↦ −Xᵀ`).
    J,
    /// The product `A·J`.
    AJ,
    /// The product `W·A`.
    WA,
    /// `diag(d₁, d₂, d₃, d₄)` with `d₁d₃ = d₂d₄ = 1`.
    Diag([Rational; 4]),
    /// Unipotent `I + z X_γ`.
    Shear(Root, Rational),
    /// `SL(2)` acting on coordinates 2 and 4 (centralizes `T_{1,0}`).
    Block([Rational; 4]),
    /// `GL(2)` Levi element `diag(g, g^{-T})` for `g = [[a, b], [c, d]]`.
    Levi([Rational; 4]),
}

impl NamedConjugator {
    /// The group element.
    pub fn matrix(&self) -> Mat4 {
        match self {
            NamedConjugator::Identity => Mat4::identity(),
            NamedConjugator::W => Mat4::from_ints([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]),
            NamedConjugator::A => Mat4::from_ints([[1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0]]),
            NamedConjugator::J => form_j(),
            NamedConjugator::AJ => &NamedConjugator::A.matrix() * &form_j(),
            NamedConjugator::WA => &NamedConjugator::W.matrix() * &NamedConjugator::A.matrix(),
            NamedConjugator::Diag(d) => Mat4::diag(d.clone()),
            NamedConjugator::Shear(r, z) => &Mat4::identity() + &r.matrix().scale(z),
            NamedConjugator::Block([a, b, c, d]) => {
                let mut m = Mat4::identity();
                m.0[1][1] = a.clone();
                m.0[1][3] = b.clone();
                m.0[3][1] = c.clone();
                m.0[3][3] = d.clone();
                m
            }
            NamedConjugator::Levi([a, b, c, d]) => {
                let det = a * d - b * c;
                let mut m = Mat4::zero();
                m.0[0][0] = a.clone();
                m.0[0][1] = b.clone();
                m.0[1][0] = c.clone();
                m.0[1][1] = d.clone();
                // g^{-T} = (1/det) [[d, −c], [−b, a]]
                m.0[2][2] = d / &det;
                m.0[2][3] = -c / &det;
                m.0[3][2] = -b / &det;
                m.0[3][3] = a / &det;
                m
            }
        }
    }

    /// Parse a single factor such as `W`, `shear:alpha:1/2`, `diag:2,1,1/2,1`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let args = |rest: &str, n: usize| -> Result<[Rational; 4]> {
            let v: Vec<Rational> = rest.split(',').map(parse_rational).collect::<Result<_>>()?;
            if v.len() != n {
                return Err(Error::Conjugator(format!("'{s}' needs {n} entries")));
            }
            Ok(std::array::from_fn(|i| v[i].clone()))
        };
        let c = match s {
            "I" | "id" => NamedConjugator::Identity,
            "W" | "s_beta" => NamedConjugator::W,
            "A" | "s_alpha" => NamedConjugator::A,
            "J" => NamedConjugator::J,
            "AJ" => NamedConjugator::AJ,
            "WA" => NamedConjugator::WA,
            _ => {
                let (kind, rest) = s
                    .split_once(':')
                    .ok_or_else(|| Error::Conjugator(format!("unknown conjugator '{s}'")))?;
                match kind {
                    "diag" => NamedConjugator::Diag(args(rest, 4)?),
                    "block" => NamedConjugator::Block(args(rest, 4)?),
                    "levi" => NamedConjugator::Levi(args(rest, 4)?),
                    "shear" => {
                        let (root, z) = rest
                            .rsplit_once(':')
                            .ok_or_else(|| Error::Conjugator(format!("'{s}' needs shear:<root>:<z>")))?;
                        NamedConjugator::Shear(root.parse()?, parse_rational(z)?)
                    }
                    _ => return Err(Error::Conjugator(format!("unknown conjugator '{s}'"))),
                }
            }
        };
        c.validate()?;
        Ok(c)
    }

    /// Check that the element is invertible and lies in Sp(4).
    pub fn validate(&self) -> Result<()> {
        if let NamedConjugator::Levi([a, b, c, d]) = self {
            if (a * d - b * c).is_zero() {
                return Err(Error::Conjugator(format!("{self}: singular Levi block")));
            }
        }
        if in_sp4_group(&self.matrix()) {
            Ok(())
        } else {
            Err(Error::Conjugator(format!("{self} is not in Sp(4)")))
        }
    }
}

fn join(v: &[Rational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for NamedConjugator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedConjugator::Identity => write!(f, "I"),
            NamedConjugator::W => write!(f, "W"),
            NamedConjugator::A => write!(f, "A"),
            NamedConjugator::J => write!(f, "J"),
            NamedConjugator::AJ => write!(f, "AJ"),
            NamedConjugator::WA => write!(f, "WA"),
            NamedConjugator::Diag(d) => write!(f, "diag:{}", join(d)),
            NamedConjugator::Shear(r, z) => write!(f, "shear:{}:{}", r.name(), z),
            NamedConjugator::Block(d) => write!(f, "block:{}", join(d)),
            NamedConjugator::Levi(d) => write!(f, "levi:{}", join(d)),
        }
    }
}

/// Unipotent shear `I + z X_γ`.
pub fn shear(gamma: Root, z: Rational) -> NamedConjugator {
    NamedConjugator::Shear(gamma, z)
}

/// A product of named conjugators, applied as the matrix product in written order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recipe(pub Vec<NamedConjugator>);

impl Recipe {
    /// Parse `F1*F2*...` (the empty string is the identity).
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Recipe(vec![]));
        }
        Ok(Recipe(s.split('*').map(NamedConjugator::parse).collect::<Result<_>>()?))
    }

    /// The group element `F1·F2·…`.
    pub fn matrix(&self) -> Mat4 {
        self.0.iter().fold(Mat4::identity(), |acc, c| &acc * &c.matrix())
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}
