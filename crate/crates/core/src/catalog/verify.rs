//! Certification of the catalog: closure, solvability, conjugacy claims,
//! isomorphism-class identification, explicit isomorphisms, pairwise
//! separation by invariants, and a random completeness spot-check.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{element_at, element_from_coords, expr, instantiate, Catalog, CatalogEntry, Env, IsoTargetKind};
use crate::classify::{
    degraaf_to_sw, identify_degraaf, signature_of_basis, verify_isomorphism, InvariantSignature, IsoMap, IsoTarget,
};
use crate::error::{Error, Result};
use crate::lie::{generated_subalgebra, solve_in_columns, StructureConstants, Subalgebra};
use crate::linalg::{q, qf, DMat, Mat4, Rational, Subspace};
use crate::sp4::{in_sp4_group, NamedConjugator, Recipe, Root};

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// The claim was machine-checked.
    Pass,
    /// The claim is false as encoded.
    Fail,
    /// A bounded search found no witness; the claim is neither confirmed nor refuted.
    Unverified,
    /// Not applicable at this sample.
    Skipped,
}

impl Status {
    /// Whether the status counts towards an overall pass.
    pub fn is_ok(self) -> bool {
        matches!(self, Status::Pass | Status::Skipped)
    }

    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One check at one sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    /// Check name (`closure`, `solvable`, `equivalence`, `degraaf`, `isomorphism`, `sw`, …).
    pub check: String,
    /// Instance label such as `3.5[a=2]`.
    pub sample: String,
    /// Outcome.
    pub status: Status,
    /// Class found, conjugator used, or failure reason.
    pub detail: String,
}

impl CheckResult {
    fn new(check: impl Into<String>, sample: &str, status: Status, detail: impl Into<String>) -> Self {
        CheckResult {
            check: check.into(),
            sample: sample.to_string(),
            status,
            detail: detail.into(),
        }
    }
}

/// All checks of one catalog row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    /// Row id.
    pub row: String,
    /// Representative.
    pub name: String,
    /// Dimension.
    pub dim: usize,
    /// Parameter samples used (empty for rows without parameters).
    pub samples: Vec<String>,
    /// Individual checks.
    pub checks: Vec<CheckResult>,
    /// Whether every check passed (or was not applicable).
    pub pass: bool,
}

/// Pairwise separation results.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    /// Number of (row, sample) instances whose signatures were computed.
    pub instances: usize,
    /// Number of same-dimension pairs compared.
    pub pairs_compared: usize,
    /// Checks of the recorded witness fields and explicit separation claims.
    pub witness_checks: Vec<CheckResult>,
    /// Pairs whose signatures coincide although they are claimed inequivalent,
    /// and instances whose signature could not be computed.
    pub failures: Vec<CheckResult>,
    /// Overall result.
    pub pass: bool,
}

/// One random subalgebra of the probe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeCase {
    /// Generators, as coordinates `[Ta, Tb, Xalpha, Xbeta, Xab, Xa2b]`.
    pub generators: Vec<Vec<String>>,
    /// Dimension of the generated subalgebra.
    pub dim: usize,
    /// Catalog instances with the same signature.
    pub matches: Vec<String>,
}

/// Result of the random completeness spot-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    /// RNG seed.
    pub seed: u64,
    /// Number of random draws.
    pub draws: usize,
    /// Draws generating a subalgebra of dimension 1–4.
    pub in_scope: usize,
    /// In-scope draws matched by some catalog row.
    pub matched: usize,
    /// In-scope draws without a match.
    pub unmatched: Vec<ProbeCase>,
    /// Overall result.
    pub pass: bool,
}

/// The full certification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Parameter samples used.
    pub samples: Vec<String>,
    /// Per-row results, in catalog order.
    pub entries: Vec<EntryReport>,
    /// Separation results.
    pub separations: SeparationReport,
    /// Probe results, when requested.
    pub probe: Option<ProbeReport>,
    /// True iff every part passed.
    pub pass: bool,
}

/// Coordinates of `m` in the (independent) list `basis`.
fn coords_in(basis: &[Mat4], m: &Mat4) -> Option<Vec<Rational>> {
    let cols: Vec<Vec<Rational>> = basis.iter().map(Mat4::flatten).collect();
    solve_in_columns(&DMat::from_cols(&cols), &m.flatten())
}

fn same_space(a: &Subspace, b: &Subspace) -> bool {
    a.is_subspace_of(b) && b.is_subspace_of(a)
}

/// The explicit isomorphism of a row at `env`, converted to coordinates of the
/// row basis, together with its target.  `Ok(None)` when the row has none;
/// an image outside the representative is an error.
fn isomap_at(e: &CatalogEntry, env: &Env, basis: &[Mat4]) -> Result<Option<(IsoTarget, IsoMap)>> {
    let Some(spec) = &e.isomap else { return Ok(None) };
    let images = spec
        .images
        .iter()
        .map(|s| element_at(s, env))
        .collect::<Result<Vec<_>>>()?;
    let target = iso_target(e, env, spec.target)?;
    Ok(Some((target, images_to_map(basis, &images)?)))
}

fn iso_target(e: &CatalogEntry, env: &Env, kind: IsoTargetKind) -> Result<IsoTarget> {
    Ok(match kind {
        IsoTargetKind::Degraaf => IsoTarget::DeGraaf(
            e.degraaf_at(env)?
                .ok_or_else(|| Error::Parse("missing de Graaf class".into()))?,
        ),
        IsoTargetKind::Sw => IsoTarget::Sw(
            e.sw_at(env)?
                .ok_or_else(|| Error::Parse("a Šnobl–Winternitz target must be explicit".into()))?,
        ),
    })
}

fn images_to_map(basis: &[Mat4], images: &[Mat4]) -> Result<IsoMap> {
    let coords = images
        .iter()
        .enumerate()
        .map(|(i, m)| {
            coords_in(basis, m).ok_or_else(|| Error::Parse(format!("image {} lies outside the representative", i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IsoMap::from_rational(coords))
}

/// Outcome of the single-coefficient mutation test of one explicit isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutationOutcome {
    /// Whether the unmodified map verifies.
    pub original_ok: bool,
    /// Number of perturbed maps tried.
    pub mutations: usize,
    /// Number of perturbed maps rejected.
    pub rejected: usize,
}

/// Perturb each symbolic coefficient of the row's explicit isomorphism by
/// `+1` in turn and count the perturbed maps that fail verification (a
/// perturbed image outside the representative is a failure).
pub fn mutation_outcomes(e: &CatalogEntry, env: &Env) -> Result<Option<MutationOutcome>> {
    let Some(spec) = &e.isomap else { return Ok(None) };
    let basis = e.basis_at(env)?;
    let sc = StructureConstants::of_basis(&basis)?;
    let target = iso_target(e, env, spec.target)?;
    let check = |images: &[Vec<String>]| -> Result<bool> {
        let mats = images.iter().map(|s| element_at(s, env)).collect::<Result<Vec<_>>>()?;
        match images_to_map(&basis, &mats) {
            Ok(map) => verify_isomorphism(&sc, &target, &map),
            Err(_) => Ok(false),
        }
    };
    let original_ok = check(&spec.images)?;
    let (mut mutations, mut rejected) = (0, 0);
    for i in 0..spec.images.len() {
        for j in 0..spec.images[i].len() {
            let mut images = spec.images.clone();
            images[i][j] = format!("({})+1", images[i][j]);
            mutations += 1;
            if !check(&images)? {
                rejected += 1;
            }
        }
    }
    Ok(Some(MutationOutcome {
        original_ok,
        mutations,
        rejected,
    }))
}

/// Factors of the bounded conjugator search.
fn search_factors() -> Vec<(NamedConjugator, Mat4, Mat4)> {
    let mut f = vec![
        NamedConjugator::W,
        NamedConjugator::A,
        NamedConjugator::J,
        NamedConjugator::AJ,
        NamedConjugator::WA,
    ];
    let zs = [qf(1, 2), qf(-1, 2), q(1), q(-1), q(2), q(-2)];
    for r in Root::ALL {
        for z in &zs {
            f.push(NamedConjugator::Shear(r, z.clone()));
        }
    }
    f.into_iter()
        .map(|c| {
            let m = c.matrix();
            let inv = m.inverse().expect("named conjugators are invertible");
            (c, m, inv)
        })
        .collect()
}

/// Bounded search (products of length ≤ 3 of Weyl-type elements and root
/// shears with `z ∈ {±1/2, ±1, ±2}`) for `g` with `g·src·g⁻¹ = dst`.
pub fn search_conjugator(src: &Subspace, dst: &Subspace) -> Option<Recipe> {
    if src.dim() != dst.dim() {
        return None;
    }
    if same_space(src, dst) {
        return Some(Recipe(vec![]));
    }
    let factors = search_factors();
    let basis = src.basis();
    let hits = |g: &Mat4, gi: &Mat4| basis.iter().all(|b| dst.contains(&(&(g * b) * gi)));
    // words in lexicographic order of factor indices, shortest first
    let mut frontier: Vec<(Vec<usize>, Mat4, Mat4)> = vec![(vec![], Mat4::identity(), Mat4::identity())];
    for _ in 0..3 {
        let mut next = Vec::new();
        for (word, g, gi) in &frontier {
            for (k, (_, m, mi)) in factors.iter().enumerate() {
                let (g2, gi2) = (g * m, mi * gi);
                let mut w = word.clone();
                w.push(k);
                if hits(&g2, &gi2) {
                    return Some(Recipe(w.iter().map(|&i| factors[i].0.clone()).collect()));
                }
                next.push((w, g2, gi2));
            }
        }
        frontier = next;
    }
    None
}

fn check_equivalence(
    c: &Catalog,
    e: &CatalogEntry,
    idx: usize,
    env: &Env,
    space: &Subspace,
    label: &str,
) -> CheckResult {
    let eq = &e.equiv[idx];
    let name = format!("equivalence {}", idx + 1);
    let run = || -> Result<CheckResult> {
        let target = c
            .row(&eq.to)
            .ok_or_else(|| Error::Parse(format!("unknown row {}", eq.to)))?;
        let tp: Option<Rational> = eq.params.first().map(|p| expr::eval_rational(p, env)).transpose()?;
        let tlabel = target.label(tp.as_ref());
        let tenv = target.env(tp.as_ref())?;
        if !target.admissible(&tenv) {
            return Ok(CheckResult::new(
                &name,
                label,
                Status::Skipped,
                format!("{tlabel} is not admissible"),
            ));
        }
        let tspace = Subspace::span(&target.basis_at(&tenv)?);
        if eq.conjugator == "search" {
            return Ok(match search_conjugator(space, &tspace) {
                Some(r) => CheckResult::new(
                    &name,
                    label,
                    Status::Pass,
                    format!("~ {tlabel} via {r} (found by search)"),
                ),
                None => CheckResult::new(
                    &name,
                    label,
                    Status::Unverified,
                    format!("~ {tlabel}: unverified (search exhausted)"),
                ),
            });
        }
        let recipe = Recipe::parse(&instantiate(&eq.conjugator, env)?)?;
        let g = recipe.matrix();
        if !in_sp4_group(&g) {
            return Ok(CheckResult::new(
                &name,
                label,
                Status::Fail,
                format!("{recipe} is not in Sp(4)"),
            ));
        }
        let image = crate::sp4::conjugate_subalgebra(&g, space)?;
        let ok = same_space(&image, &tspace);
        let detail = if ok {
            format!("~ {tlabel} via {recipe}")
        } else {
            format!("{recipe} does not map onto {tlabel}")
        };
        Ok(CheckResult::new(&name, label, Status::of(ok), detail))
    };
    run().unwrap_or_else(|err| CheckResult::new(&name, label, Status::Fail, err.to_string()))
}

fn check_sample(c: &Catalog, e: &CatalogEntry, env: &Env, label: &str) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let fail = |out: &mut Vec<CheckResult>, check: &str, err: &Error| {
        out.push(CheckResult::new(check, label, Status::Fail, err.to_string()));
    };
    // (1) closure and dimension
    let basis = match e.basis_at(env) {
        Ok(b) => b,
        Err(err) => {
            fail(&mut out, "closure", &err);
            return out;
        }
    };
    let sub = match Subalgebra::from_basis(&basis) {
        Ok(s) => s,
        Err(err) => {
            fail(&mut out, "closure", &err);
            return out;
        }
    };
    let dim_ok = sub.dim() == e.dim && basis.len() == e.dim;
    out.push(CheckResult::new(
        "closure",
        label,
        Status::of(dim_ok),
        format!("closed, dimension {}", sub.dim()),
    ));
    if !dim_ok {
        return out;
    }
    // (2) solvability
    let sc = match StructureConstants::of_basis(&basis) {
        Ok(sc) => sc,
        Err(err) => {
            fail(&mut out, "solvable", &err);
            return out;
        }
    };
    let solvable = sc.is_solvable();
    out.push(CheckResult::new(
        "solvable",
        label,
        Status::of(solvable),
        format!("derived dims {:?}", sc.derived_dims()),
    ));
    if !solvable {
        return out;
    }
    // (3) equivalences
    for i in 0..e.equiv.len() {
        out.push(check_equivalence(c, e, i, env, sub.space(), label));
    }
    // (4) de Graaf class
    let class = match e.degraaf_at(env) {
        Ok(cl) => cl,
        Err(err) => {
            fail(&mut out, "degraaf", &err);
            return out;
        }
    };
    if let Some(class) = &class {
        let r = identify_degraaf(&sc).and_then(|id| Ok((id.class.canonical()?, class.clone().canonical()?)));
        out.push(match r {
            Ok((found, expected)) => CheckResult::new(
                "degraaf",
                label,
                Status::of(found == expected),
                if found == expected {
                    found.to_string()
                } else {
                    format!("identified {found}, catalog says {expected}")
                },
            ),
            Err(err) => CheckResult::new("degraaf", label, Status::Fail, err.to_string()),
        });
    }
    // (5) explicit isomorphism
    let iso = match isomap_at(e, env, &basis) {
        Ok(iso) => iso,
        Err(err) => {
            fail(&mut out, "isomorphism", &err);
            return out;
        }
    };
    if let Some((target, map)) = &iso {
        let name = match target {
            IsoTarget::DeGraaf(c) => c.to_string(),
            IsoTarget::Sw(c) => c.to_string(),
        };
        out.push(match verify_isomorphism(&sc, target, map) {
            Ok(ok) => CheckResult::new(
                "isomorphism",
                label,
                Status::of(ok),
                if ok {
                    format!("explicit map onto {name} verified")
                } else {
                    format!("map onto {name} is not an isomorphism")
                },
            ),
            Err(err) => CheckResult::new("isomorphism", label, Status::Fail, err.to_string()),
        });
    }
    // (6) Šnobl–Winternitz class through the de Graaf correspondence
    if let Some(class) = &class {
        let run = || -> Result<CheckResult> {
            let (sw, to_sw) = degraaf_to_sw(class)?;
            let expected = e.sw_at(env)?;
            if let Some(exp) = &expected {
                if *exp != sw {
                    return Ok(CheckResult::new(
                        "sw",
                        label,
                        Status::Fail,
                        format!("correspondence gives {sw}, catalog says {exp}"),
                    ));
                }
            }
            let Some((IsoTarget::DeGraaf(_), map)) = &iso else {
                return Ok(CheckResult::new(
                    "sw",
                    label,
                    Status::Pass,
                    format!("{sw} (label only)"),
                ));
            };
            let ok = verify_isomorphism(&sc, &IsoTarget::Sw(sw.clone()), &to_sw.after(map))?;
            let detail = if ok {
                format!("{sw}, composed map verified")
            } else {
                format!("composed map onto {sw} fails")
            };
            Ok(CheckResult::new("sw", label, Status::of(ok), detail))
        };
        out.push(run().unwrap_or_else(|err| CheckResult::new("sw", label, Status::Fail, err.to_string())));
    }
    out
}

/// Run every check of one row at every admissible sample.
pub fn verify_entry(c: &Catalog, e: &CatalogEntry, samples: &[Rational]) -> EntryReport {
    let envs = e.sample_envs(samples);
    let mut checks = Vec::new();
    if envs.is_empty() {
        checks.push(CheckResult::new(
            "samples",
            &e.row,
            Status::Unverified,
            "no admissible parameter sample",
        ));
    }
    for (a, env) in &envs {
        checks.extend(check_sample(c, e, env, &e.label(a.as_ref())));
    }
    let pass = checks.iter().all(|c| c.status.is_ok());
    EntryReport {
        row: e.row.clone(),
        name: e.name.clone(),
        dim: e.dim,
        samples: envs
            .iter()
            .filter_map(|(a, _)| a.as_ref().map(ToString::to_string))
            .collect(),
        checks,
        pass,
    }
}

/// The parameter values a row is declared equivalent to itself at, starting
/// from `a` (closure of its self-equivalences).
pub fn self_orbit(e: &CatalogEntry, a: &Rational) -> BTreeSet<Rational> {
    let mut orbit = BTreeSet::from([a.clone()]);
    let mut frontier = vec![a.clone()];
    while let Some(v) = frontier.pop() {
        let env = match e.env(Some(&v)) {
            Ok(env) => env,
            Err(_) => continue,
        };
        for eq in e.equiv.iter().filter(|q| q.to == e.row) {
            if let Some(Ok(w)) = eq.params.first().map(|p| expr::eval_rational(p, &env)) {
                if orbit.len() < 64 && orbit.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
    }
    orbit
}

struct Instance<'a> {
    entry: &'a CatalogEntry,
    a: Option<Rational>,
    label: String,
    sig: InvariantSignature,
}

fn witness_check(
    check: String,
    label: String,
    l: &InvariantSignature,
    r: &InvariantSignature,
    field: &str,
) -> CheckResult {
    let differs = l.field(field).is_some() && l.field(field) != r.field(field);
    let all = l.differing_fields(r).join(", ");
    CheckResult::new(
        check,
        &label,
        Status::of(differs),
        if differs {
            format!("{field} differs (all differing: {all})")
        } else {
            format!("{field} does not separate (differing: [{all}])")
        },
    )
}

/// Compare the signatures of every pair of same-dimension catalog instances
/// that are not declared equivalent, and check every recorded witness field.
pub fn verify_separations(c: &Catalog, samples: &[Rational]) -> SeparationReport {
    let jobs: Vec<(&CatalogEntry, Option<Rational>, Env)> = c
        .rows
        .iter()
        .flat_map(|e| e.sample_envs(samples).into_iter().map(move |(a, env)| (e, a, env)))
        .collect();
    let computed: Vec<std::result::Result<Instance, CheckResult>> = jobs
        .par_iter()
        .map(|(e, a, env)| {
            let label = e.label(a.as_ref());
            e.basis_at(env)
                .and_then(|b| signature_of_basis(&b))
                .map(|sig| Instance {
                    entry: e,
                    a: a.clone(),
                    label: label.clone(),
                    sig,
                })
                .map_err(|err| CheckResult::new("signature", &label, Status::Fail, err.to_string()))
        })
        .collect();
    let mut failures = Vec::new();
    let mut inst = Vec::new();
    for r in computed {
        match r {
            Ok(i) => inst.push(i),
            Err(f) => failures.push(f),
        }
    }
    let mut pairs = 0;
    for i in 0..inst.len() {
        for j in (i + 1)..inst.len() {
            let (x, y) = (&inst[i], &inst[j]);
            if x.entry.dim != y.entry.dim {
                continue;
            }
            if x.entry.row == y.entry.row {
                if let (Some(a), Some(b)) = (&x.a, &y.a) {
                    if self_orbit(x.entry, a).contains(b) {
                        continue;
                    }
                }
            }
            pairs += 1;
            if x.sig == y.sig {
                failures.push(CheckResult::new(
                    "separation",
                    &format!("{} vs {}", x.label, y.label),
                    Status::Fail,
                    "signatures coincide",
                ));
            }
        }
    }
    let mut witness_checks = Vec::new();
    for x in &inst {
        for w in &x.entry.witness {
            for y in inst.iter().filter(|y| y.entry.row == w.other) {
                witness_checks.push(witness_check(
                    "witness".into(),
                    format!("{} vs {}", x.label, y.label),
                    &x.sig,
                    &y.sig,
                    &w.field,
                ));
            }
        }
    }
    for (k, s) in c.separations.iter().enumerate() {
        let label = format!("claim {}", k + 1);
        let sig = |b: &[Vec<String>]| -> Result<InvariantSignature> {
            let m = b
                .iter()
                .map(|e| element_at(e, &Env::new()))
                .collect::<Result<Vec<_>>>()?;
            signature_of_basis(&m)
        };
        witness_checks.push(match (sig(&s.left), sig(&s.right)) {
            (Ok(l), Ok(r)) => witness_check("claim".into(), label, &l, &r, &s.witness),
            (Err(err), _) | (_, Err(err)) => CheckResult::new("claim", &label, Status::Fail, err.to_string()),
        });
    }
    let pass = failures.is_empty() && witness_checks.iter().all(|c| c.status.is_ok());
    SeparationReport {
        instances: inst.len(),
        pairs_compared: pairs,
        witness_checks,
        failures,
        pass,
    }
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> i64 {
    if rng.gen_bool(0.6) {
        0
    } else {
        [-2, -1, 1, 2][rng.gen_range(0..4)]
    }
}

/// Candidate values of the row parameter for a subalgebra of `b`: the ratios
/// `±p/q, ±q/p` of the diagonal direction when the diagonal projection is a line.
pub fn parameter_candidates(basis: &[Mat4]) -> Vec<Rational> {
    let diag: Vec<Mat4> = basis
        .iter()
        .map(|m| crate::sp4::t_ab(m.get(0, 0), m.get(1, 1)))
        .collect();
    let span = Subspace::span(&diag);
    if span.dim() != 1 {
        return vec![];
    }
    let d = &span.basis()[0];
    let (p, qv) = (d.get(0, 0).clone(), d.get(1, 1).clone());
    if num_traits::Zero::is_zero(&p) || num_traits::Zero::is_zero(&qv) {
        return vec![];
    }
    let r = &p / &qv;
    let mut v = vec![
        r.clone(),
        -r.clone(),
        num_traits::Inv::inv(r.clone()),
        -num_traits::Inv::inv(r),
    ];
    v.sort();
    v.dedup();
    v
}

/// Memoized catalog signatures keyed by row id and parameter value.
pub type SignatureCache = Mutex<HashMap<(String, Option<Rational>), Option<InvariantSignature>>>;

/// Catalog instances (row and parameter) whose signature equals `sig`;
/// parameterized rows are tried at the candidate values.
pub fn matching_rows(
    c: &Catalog,
    sig: &InvariantSignature,
    candidates: &[Rational],
    cache: &SignatureCache,
) -> Vec<String> {
    let mut out = Vec::new();
    for e in c.rows.iter().filter(|e| e.dim == sig.dim) {
        let values: Vec<Option<Rational>> = if e.params.is_empty() {
            vec![None]
        } else {
            candidates.iter().cloned().map(Some).collect()
        };
        for a in values {
            let key = (e.row.clone(), a.clone());
            let cached = cache.lock().expect("cache lock").get(&key).cloned();
            let row_sig = match cached {
                Some(s) => s,
                None => {
                    let s = e
                        .env(a.as_ref())
                        .ok()
                        .filter(|env| e.admissible(env))
                        .and_then(|env| e.basis_at(&env).ok())
                        .and_then(|b| signature_of_basis(&b).ok());
                    cache.lock().expect("cache lock").insert(key, s.clone());
                    s
                }
            };
            if row_sig.as_ref() == Some(sig) {
                out.push(e.label(a.as_ref()));
            }
        }
    }
    out
}

/// Random completeness spot-check: close random sparse elements of `b` under
/// the bracket and match each subalgebra of dimension 1–4 against the catalog
/// by signature.
pub fn random_subalgebra_probe(c: &Catalog, seed: u64, draws: usize) -> ProbeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cache = Mutex::new(HashMap::new());
    let (mut in_scope, mut matched, mut unmatched) = (0, 0, Vec::new());
    for _ in 0..draws {
        let k = rng.gen_range(1..=3);
        let gens: Vec<Vec<Rational>> = (0..k)
            .map(|_| (0..6).map(|_| q(random_coefficient(&mut rng))).collect())
            .collect();
        let mats: Vec<Mat4> = gens.iter().map(|g| element_from_coords(g)).collect();
        let space = generated_subalgebra(&mats);
        let d = space.dim();
        if d == 0 || d > 4 {
            continue;
        }
        in_scope += 1;
        let basis = space.basis();
        let matches = match signature_of_basis(&basis) {
            Ok(sig) => matching_rows(c, &sig, &parameter_candidates(&basis), &cache),
            Err(_) => vec![],
        };
        if matches.is_empty() {
            unmatched.push(ProbeCase {
                generators: gens
                    .iter()
                    .map(|g| g.iter().map(ToString::to_string).collect())
                    .collect(),
                dim: d,
                matches,
            });
        } else {
            matched += 1;
        }
    }
    let pass = unmatched.is_empty();
    ProbeReport {
        seed,
        draws,
        in_scope,
        matched,
        unmatched,
        pass,
    }
}

/// Verify every row (in parallel, merged in catalog order), the separations,
/// and optionally run the probe with `(seed, draws)`.
pub fn verify_catalog(c: &Catalog, samples: &[Rational], probe: Option<(u64, usize)>) -> VerificationReport {
    let entries: Vec<EntryReport> = c.rows.par_iter().map(|e| verify_entry(c, e, samples)).collect();
    let separations = verify_separations(c, samples);
    let probe = probe.map(|(seed, n)| random_subalgebra_probe(c, seed, n));
    let pass = entries.iter().all(|e| e.pass) && separations.pass && probe.as_ref().map_or(true, |p| p.pass);
    VerificationReport {
        samples: samples.iter().map(ToString::to_string).collect(),
        entries,
        separations,
        probe,
        pass,
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

impl VerificationReport {
    /// Pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable table.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "parameter samples: {}", self.samples.join(", "));
        let _ = writeln!(
            s,
            "{:<6} {:<58} {:>3} {:>7} {:>6}  result",
            "row", "representative", "dim", "samples", "checks"
        );
        for e in &self.entries {
            let n = if e.samples.is_empty() {
                "-".to_string()
            } else {
                e.samples.len().to_string()
            };
            let _ = writeln!(
                s,
                "{:<6} {:<58} {:>3} {:>7} {:>6}  {}",
                e.row,
                e.name,
                e.dim,
                n,
                e.checks.len(),
                verdict(e.pass)
            );
            for c in e.checks.iter().filter(|c| !c.status.is_ok()) {
                let _ = writeln!(s, "         {:?} {} {}: {}", c.status, c.sample, c.check, c.detail);
            }
        }
        let sep = &self.separations;
        let _ = writeln!(
            s,
            "separations: {} instances, {} pairs, {} witness checks: {}",
            sep.instances,
            sep.pairs_compared,
            sep.witness_checks.len(),
            verdict(sep.pass)
        );
        for c in sep
            .failures
            .iter()
            .chain(sep.witness_checks.iter().filter(|c| !c.status.is_ok()))
        {
            let _ = writeln!(s, "         {:?} {} {}: {}", c.status, c.sample, c.check, c.detail);
        }
        if let Some(p) = &self.probe {
            let _ = writeln!(
                s,
                "probe: seed {}, {} draws, {} in scope, {} matched: {}",
                p.seed,
                p.draws,
                p.in_scope,
                p.matched,
                verdict(p.pass)
            );
            for u in &p.unmatched {
                let _ = writeln!(s, "         unmatched dim {} from {:?}", u.dim, u.generators);
            }
        }
        let _ = writeln!(s, "overall: {}", verdict(self.pass));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_catalog;
    use crate::sp4::{default_samples, t_int, x};

    #[test]
    fn single_rows_verify() {
        let c = load_catalog();
        for id in ["1.1", "2.2", "3.5", "4.3", "5.5"] {
            let r = verify_entry(&c, c.row(id).unwrap(), &default_samples());
            assert!(
                r.pass,
                "{id}: {:#?}",
                r.checks.iter().filter(|c| !c.status.is_ok()).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn broken_rows_are_reported() {
        let mut c = load_catalog();
        // not closed: drop X_alpha+beta from <T_{1,0}, X_alpha, X_alpha+beta> and add X_beta
        let i = c.rows.iter().position(|r| r.row == "3.7").unwrap();
        c.rows[i].basis[2] = vec!["0", "0", "0", "1", "0", "0"]
            .into_iter()
            .map(String::from)
            .collect();
        let r = verify_entry(&c, &c.rows[i], &[]);
        assert!(!r.pass);
        assert_eq!(r.checks[0].check, "closure");
        // wrong class label
        let i = c.rows.iter().position(|r| r.row == "3.6").unwrap();
        c.rows[i].degraaf = Some("L3(-1/4)".into());
        let r = verify_entry(&c, &c.rows[i], &[]);
        assert!(r
            .checks
            .iter()
            .any(|c| c.check == "degraaf" && c.status == Status::Fail));
        // wrong conjugator
        let i = c.rows.iter().position(|r| r.row == "3.5").unwrap();
        c.rows[i].equiv[0].conjugator = "A".into();
        let r = verify_entry(&c, &c.rows[i], &[q(2)]);
        assert!(r
            .checks
            .iter()
            .any(|c| c.check.starts_with("equivalence") && c.status == Status::Fail));
    }

    #[test]
    fn search_finds_weyl_words_and_reports_exhaustion() {
        let src = Subspace::span(&[t_int(2, 1), x(Root::Alpha)]);
        let dst = Subspace::span(&[t_int(-2, 1), x(Root::Alpha)]);
        let r = search_conjugator(&src, &dst).unwrap();
        let g = r.matrix();
        assert!(same_space(&crate::sp4::conjugate_subalgebra(&g, &src).unwrap(), &dst));
        let other = Subspace::span(&[t_int(3, 1), x(Root::Alpha)]);
        assert_eq!(search_conjugator(&src, &other), None);
    }

    #[test]
    fn self_orbits() {
        let c = load_catalog();
        let o = self_orbit(c.row("1.1").unwrap(), &q(2));
        assert_eq!(o, BTreeSet::from([q(2), q(-2), qf(1, 2), qf(-1, 2)]));
        assert_eq!(self_orbit(c.row("3.3").unwrap(), &q(2)).len(), 1);
    }

    #[test]
    fn mutations_of_a_dimension_one_map() {
        let c = load_catalog();
        let e = c.row("1.2").unwrap();
        let m = mutation_outcomes(e, &Env::new()).unwrap().unwrap();
        assert!(m.original_ok);
        assert_eq!((m.mutations, m.rejected), (6, 5));
    }

    #[test]
    fn probe_is_deterministic_and_matches_known_seeds() {
        let c = load_catalog();
        let a = random_subalgebra_probe(&c, 7, 15);
        assert_eq!(a, random_subalgebra_probe(&c, 7, 15));
        let cache = Mutex::new(HashMap::new());
        let basis = [t_int(2, 1), x(Root::Alpha)];
        let sig = signature_of_basis(&basis).unwrap();
        let m = matching_rows(&c, &sig, &parameter_candidates(&basis), &cache);
        assert!(m.contains(&"2.3[a=2]".to_string()), "{m:?}");
        let n = generated_subalgebra(&[x(Root::Alpha), x(Root::Beta)]);
        let sig = signature_of_basis(&n.basis()).unwrap();
        assert_eq!(matching_rows(&c, &sig, &[], &cache), vec!["4.14".to_string()]);
    }
}
