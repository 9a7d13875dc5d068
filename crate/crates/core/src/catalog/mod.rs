//! The built-in catalog of conjugacy classes of solvable subalgebras of sp(4)
//! and the driver that certifies it.
//!
//! Each row stores its representative as symbolic coefficient lists over
//! `[T first, T second, X_alpha, X_beta, X_alpha+beta, X_alpha+2beta]`, where
//! the two `T` entries are the parameters of `T_{p,q}`.  Coefficients are
//! formulas in the row parameter `a` (see [`expr`]).

pub mod expr;
pub mod verify;

use serde::{Deserialize, Serialize};

use crate::classify::{DeGraafClass, SWClass};
use crate::error::{Error, Result};
use crate::linalg::{Mat4, Rational};
use crate::sp4::{t_ab, x, Root};

pub use expr::{env_a, Env, Expr};
pub use verify::{
    mutation_outcomes, random_subalgebra_probe, verify_catalog, verify_entry, verify_separations, CheckResult,
    EntryReport, ProbeReport, SeparationReport, Status, VerificationReport,
};

/// Number of rows per table (dimensions 1, 2, 3, 4 and 5–6).
pub const TABLE_COUNTS: [usize; 5] = [8, 16, 19, 14, 8];

/// Names of the six symbolic coordinates, in storage order.
pub const COORDINATES: [&str; 6] = ["Ta", "Tb", "Xalpha", "Xbeta", "Xab", "Xa2b"];

/// A symbolic element: six coefficient formulas.
pub type SymbolicElement = Vec<String>;

/// A claimed conjugacy between two rows (or a row and itself at transformed
/// parameters).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    /// Target row id.
    pub to: String,
    /// Target parameters as formulas in this row's parameters.
    pub params: Vec<String>,
    /// Conjugator recipe (`F1*F2*…`, factors may contain `{formula}`
    /// placeholders) or `"search"` for a bounded search.
    pub conjugator: String,
}

/// Which classification the explicit isomorphism of a row targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsoTargetKind {
    /// The de Graaf class of the row.
    Degraaf,
    /// The Šnobl–Winternitz class of the row.
    Sw,
}

/// An explicit isomorphism: `images[i]` is the element of the row
/// corresponding to the `i`-th basis vector of the target class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoMapSpec {
    /// Target classification.
    pub target: IsoTargetKind,
    /// Images of the target basis as symbolic elements.
    pub images: Vec<SymbolicElement>,
}

/// A signature field recorded as separating this row from another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// The other row id.
    pub other: String,
    /// Name of the separating [`crate::classify::InvariantSignature`] field.
    pub field: String,
}

/// One table row: a (possibly parameterized) family of representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    /// Table number (5 covers dimensions 5 and 6).
    pub table: u8,
    /// Row id such as `"3.5"`.
    pub row: String,
    /// Human-readable representative.
    pub name: String,
    /// Descriptive class of the representative within its table.
    pub section: String,
    /// Dimension.
    pub dim: usize,
    /// Parameter names (empty or `["a"]`).
    pub params: Vec<String>,
    /// Basis of the representative.
    pub basis: Vec<SymbolicElement>,
    /// Comma-separated admissibility conditions such as `a != 0`.
    pub conditions: String,
    /// Claimed equivalences.
    pub equiv: Vec<Equivalence>,
    /// de Graaf class formula (dimensions ≤ 4).
    pub degraaf: Option<String>,
    /// Šnobl–Winternitz class formula, or `"auto"` when derived from the de Graaf class.
    pub sw: String,
    /// Explicit isomorphism.
    pub isomap: Option<IsoMapSpec>,
    /// Recorded separating fields.
    #[serde(default)]
    pub witness: Vec<Witness>,
}

/// A pair of explicit subalgebras claimed to be non-conjugate, with the
/// signature field expected to separate them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationClaim {
    /// First basis.
    pub left: Vec<SymbolicElement>,
    /// Second basis.
    pub right: Vec<SymbolicElement>,
    /// Separating field.
    pub witness: String,
    /// Free-form description.
    #[serde(default)]
    pub note: String,
}

/// The whole catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    /// Rows of all tables, in table order.
    pub rows: Vec<CatalogEntry>,
    /// Explicit separation claims.
    #[serde(default)]
    pub separations: Vec<SeparationClaim>,
}

const BUILTIN: &str = include_str!("data.json");

/// The built-in catalog (validated, with the per-table row counts asserted).
pub fn load_catalog() -> Catalog {
    let c = Catalog::from_json(BUILTIN).expect("built-in catalog is valid");
    for (t, &n) in TABLE_COUNTS.iter().enumerate() {
        assert_eq!(
            c.rows.iter().filter(|r| r.table as usize == t + 1).count(),
            n,
            "row count of table {}",
            t + 1
        );
    }
    c
}

/// Evaluate a symbolic element to a matrix.
pub fn element_at(e: &[String], env: &Env) -> Result<Mat4> {
    if e.len() != COORDINATES.len() {
        return Err(Error::Parse(format!(
            "symbolic element needs 6 coefficients, got {}",
            e.len()
        )));
    }
    let v: Vec<Rational> = e.iter().map(|s| expr::eval_rational(s, env)).collect::<Result<_>>()?;
    Ok(element_from_coords(&v))
}

/// The matrix with the given six coordinates.
pub fn element_from_coords(v: &[Rational]) -> Mat4 {
    let roots = [Root::Alpha, Root::Beta, Root::AlphaPlusBeta, Root::AlphaPlus2Beta];
    roots
        .iter()
        .zip(&v[2..6])
        .fold(t_ab(&v[0], &v[1]), |acc, (r, c)| &acc + &x(*r).scale(c))
}

/// Split on commas outside parentheses.
fn split_args(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Replace every `{formula}` in `template` by its rational value.
pub fn instantiate(template: &str, env: &Env) -> Result<String> {
    let mut out = String::new();
    let mut rest = template;
    while let Some(i) = rest.find('{') {
        let j = rest[i..]
            .find('}')
            .ok_or_else(|| Error::Parse(format!("unclosed '{{' in '{template}'")))?
            + i;
        out.push_str(&rest[..i]);
        out.push_str(&expr::eval_rational(&rest[i + 1..j], env)?.to_string());
        rest = &rest[j + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

impl CatalogEntry {
    /// Environment binding the row parameter (if any) to `a`.
    pub fn env(&self, a: Option<&Rational>) -> Result<Env> {
        match (self.params.as_slice(), a) {
            ([], _) => Ok(Env::new()),
            ([p], Some(v)) => Ok(Env::from([(p.clone(), v.clone())])),
            ([p], None) => Err(Error::Parse(format!("row {} needs a value for '{p}'", self.row))),
            _ => Err(Error::Parse(format!(
                "row {}: only one parameter is supported",
                self.row
            ))),
        }
    }

    /// Whether the conditions hold (and every formula of the row is defined) at `env`.
    pub fn admissible(&self, env: &Env) -> bool {
        let conds_ok = self
            .conditions
            .split(',')
            .map(str::trim)
            .filter(|c| !c.is_empty())
            .all(|c| {
                let (l, r, eq) = match (c.split_once("!="), c.split_once("==")) {
                    (Some((l, r)), _) => (l, r, false),
                    (None, Some((l, r))) => (l, r, true),
                    _ => return false,
                };
                match (expr::eval(l, env), expr::eval(r, env)) {
                    (Ok(x), Ok(y)) => (x == y) == eq,
                    _ => false,
                }
            });
        conds_ok && self.basis_at(env).is_ok()
    }

    /// The representative at `env`.
    pub fn basis_at(&self, env: &Env) -> Result<Vec<Mat4>> {
        self.basis.iter().map(|e| element_at(e, env)).collect()
    }

    /// The catalog's de Graaf class at `env`.
    pub fn degraaf_at(&self, env: &Env) -> Result<Option<DeGraafClass>> {
        let Some(src) = &self.degraaf else { return Ok(None) };
        let text = match src.find('(') {
            Some(i) if src.ends_with(')') => {
                let vals: Vec<String> = split_args(&src[i + 1..src.len() - 1])
                    .into_iter()
                    .map(|e| expr::eval_rational(e.trim(), env).map(|v| v.to_string()))
                    .collect::<Result<_>>()?;
                format!("{}({})", &src[..i], vals.join(","))
            }
            _ => src.clone(),
        };
        text.parse().map(Some)
    }

    /// The catalog's Šnobl–Winternitz class at `env`; `None` when it is
    /// recorded as derived from the de Graaf class.
    pub fn sw_at(&self, env: &Env) -> Result<Option<SWClass>> {
        if self.sw == "auto" {
            return Ok(None);
        }
        SWClass::parse_with(&self.sw, &|e| expr::eval(e, env)).map(Some)
    }

    /// The images of the explicit isomorphism at `env`, as matrices.
    pub fn isomap_images_at(&self, env: &Env) -> Result<Option<Vec<Mat4>>> {
        self.isomap
            .as_ref()
            .map(|m| m.images.iter().map(|e| element_at(e, env)).collect())
            .transpose()
    }

    /// The sample environments at which the row is checked: the admissible
    /// samples for a parameterized row, a single empty environment otherwise.
    pub fn sample_envs(&self, samples: &[Rational]) -> Vec<(Option<Rational>, Env)> {
        if self.params.is_empty() {
            return vec![(None, Env::new())];
        }
        samples
            .iter()
            .filter_map(|a| {
                let env = self.env(Some(a)).ok()?;
                self.admissible(&env).then(|| (Some(a.clone()), env))
            })
            .collect()
    }

    /// Row id with the parameter value, e.g. `3.5[a=2]`.
    pub fn label(&self, a: Option<&Rational>) -> String {
        match a {
            Some(a) => format!("{}[a={a}]", self.row),
            None => self.row.clone(),
        }
    }
}

impl Catalog {
    /// Parse and validate catalog JSON.
    pub fn from_json(s: &str) -> Result<Catalog> {
        let c: Catalog = serde_json::from_str(s)?;
        c.validate()?;
        Ok(c)
    }

    /// Pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serializes")
    }

    /// Look up a row by id.
    pub fn row(&self, id: &str) -> Option<&CatalogEntry> {
        self.rows.iter().find(|r| r.row == id)
    }

    /// Structural checks: unique ids, consistent dimensions and arities, and
    /// parseable formulas.
    pub fn validate(&self) -> Result<()> {
        let bad = |r: &CatalogEntry, m: String| Err(Error::Parse(format!("catalog row {}: {m}", r.row)));
        for (i, r) in self.rows.iter().enumerate() {
            if self.rows[..i].iter().any(|o| o.row == r.row) {
                return bad(r, "duplicate id".into());
            }
            if r.basis.len() != r.dim {
                return bad(r, format!("{} basis elements for dimension {}", r.basis.len(), r.dim));
            }
            if r.params.len() > 1 {
                return bad(r, "at most one parameter is supported".into());
            }
            let elements = r.basis.iter().chain(r.isomap.iter().flat_map(|m| m.images.iter()));
            for e in elements {
                if e.len() != COORDINATES.len() {
                    return bad(r, format!("element with {} coefficients", e.len()));
                }
                for f in e {
                    f.parse::<Expr>()?;
                }
            }
            if let Some(m) = &r.isomap {
                if m.images.len() != r.dim {
                    return bad(r, format!("isomorphism has {} images", m.images.len()));
                }
                if m.target == IsoTargetKind::Degraaf && r.degraaf.is_none() {
                    return bad(r, "isomorphism targets a missing de Graaf class".into());
                }
            }
            for e in &r.equiv {
                let Some(t) = self.row(&e.to) else {
                    return bad(r, format!("unknown equivalence target {}", e.to));
                };
                if t.params.len() != e.params.len() {
                    return bad(
                        r,
                        format!("equivalence to {} needs {} parameter(s)", e.to, t.params.len()),
                    );
                }
            }
            for w in &r.witness {
                if self.row(&w.other).is_none() {
                    return bad(r, format!("unknown witness row {}", w.other));
                }
            }
        }
        for s in &self.separations {
            for e in s.left.iter().chain(&s.right) {
                if e.len() != COORDINATES.len() {
                    return Err(Error::Parse("separation element needs 6 coefficients".into()));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qf};
    use crate::sp4::t_int;

    #[test]
    fn builtin_catalog_loads_with_expected_counts() {
        let c = load_catalog();
        assert_eq!(c.rows.len(), TABLE_COUNTS.iter().sum::<usize>());
        let r = c.rows.iter().find(|r| r.name == "<T_{1,0}, X_alpha>").unwrap();
        assert_eq!(r.degraaf.as_deref(), Some("K1"));
        let r = c.rows.iter().find(|r| r.name == "<T_{a,1}, X_beta>").unwrap();
        assert_eq!(r.equiv[0].params, vec!["1/a".to_string()]);
        let b = c.rows.iter().find(|r| r.name == "b").unwrap();
        assert_eq!((b.dim, b.sw.as_str()), (6, "s_{6,242}"));
    }

    #[test]
    fn evaluation_at_parameters() {
        let c = load_catalog();
        let r = c.row("1.1").unwrap();
        let env = r.env(Some(&q(2))).unwrap();
        assert_eq!(r.basis_at(&env).unwrap(), vec![t_int(2, 1)]);
        assert!(!r.admissible(&r.env(Some(&q(-1))).unwrap()));
        assert!(r.admissible(&env));
        let r = c.row("3.3").unwrap();
        assert!(!r.admissible(&r.env(Some(&q(-3))).unwrap()));
        let d = r.degraaf_at(&r.env(Some(&q(2))).unwrap()).unwrap().unwrap();
        assert_eq!(d.to_string(), "L3(-6/25)");
        let r = c.row("4.3").unwrap();
        let d = r.degraaf_at(&r.env(Some(&q(2))).unwrap()).unwrap().unwrap();
        assert_eq!(d.params(), vec![qf(8, 243), qf(-26, 81)]);
        assert_eq!(r.sample_envs(&[q(2), q(1), q(0), qf(1, 2)]).len(), 2);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let c = load_catalog();
        assert_eq!(Catalog::from_json(&c.to_json()).unwrap(), c);
        let mut broken = c.clone();
        broken.rows[3].basis.pop();
        assert!(Catalog::from_json(&broken.to_json()).is_err());
        let mut broken = c.clone();
        broken.rows[0].equiv[0].to = "9.9".into();
        assert!(broken.validate().is_err());
        assert!(Catalog::from_json("{\"rows\": 3}").is_err());
    }

    #[test]
    fn recipe_templates() {
        let env = env_a(&q(3));
        assert_eq!(
            instantiate("W*shear:alpha:{1/(a-1)}", &env).unwrap(),
            "W*shear:alpha:1/2"
        );
        assert!(instantiate("shear:alpha:{a", &env).is_err());
    }
}
