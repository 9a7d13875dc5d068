//! Command-line front end: catalog verification, identification of
//! user-supplied subalgebras, invariant inspection, conjugation experiments
//! and element classification.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::Mutex;

use clap::{Parser, ValueEnum};
use serde_json::json;

use crate::catalog::verify::matching_rows;
use crate::catalog::{load_catalog, verify_catalog, Catalog};
use crate::classify::weights::conjugate_into_borel;
use crate::classify::{degraaf_to_sw, identify_degraaf, signature, SWClass};
use crate::error::{Error, Result};
use crate::jordan::classify_element;
use crate::lie::{StructureConstants, Subalgebra};
use crate::linalg::{parse_rational_list, Mat4, Rational, Subspace};
use crate::sp4::{conjugate, conjugate_subalgebra, in_sp4_group, param_samples, Recipe};

/// Draws of the random completeness probe run by `verify-catalog`.
pub const PROBE_DRAWS: usize = 200;

/// The operation to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Subcommand {
    /// Certify the catalog (built-in, or `--input` catalog JSON).
    VerifyCatalog,
    /// Isomorphism classes and matching catalog rows of a subalgebra.
    Identify,
    /// Conjugation invariants of a subalgebra.
    Invariants,
    /// Image of a subalgebra under a conjugator recipe.
    Conjugate,
    /// Conjugacy class of a single element.
    ClassifyElement,
    /// Print the catalog as JSON.
    ExportCatalog,
}

/// Output format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Machine-readable JSON.
    Json,
    /// Human-readable text.
    Text,
}

/// Parsed command line.
#[derive(Clone, Debug, Parser)]
#[command(
    name = "sp4",
    version,
    about = "Exact computations with solvable subalgebras of sp(4)"
)]
pub struct CliConfig {
    /// Operation.
    #[arg(value_enum)]
    pub subcommand: Subcommand,
    /// Input file (subalgebra, matrix or catalog JSON, depending on the operation).
    #[arg(long = "input")]
    pub input_path: Option<PathBuf>,
    /// Comma-separated parameter samples (overrides SP4_PARAM_SAMPLES).
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    /// Conjugator recipe such as `W*shear:alpha:1/2`.
    #[arg(long)]
    pub conjugator: Option<String>,
    /// Seed of the random probe.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    pub output: OutputFormat,
}

/// Exit code and printed text of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// Process exit code: 0 success, 1 verification failure, 2 input error,
    /// 3 spectrum or family outside the supported scope.
    pub code: i32,
    /// Standard output.
    pub stdout: String,
    /// Standard error.
    pub stderr: String,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::IrrationalSpectrum(_)
        | Error::UnrecognizedFamily(_)
        | Error::OutOfCatalog(_)
        | Error::UnsupportedDimension(_)
        | Error::NotSolvable => 3,
        Error::Parse(_)
        | Error::Conjugator(_)
        | Error::NotInSp4
        | Error::NotClosed
        | Error::DimensionMismatch { .. }
        | Error::DependentInputs => 2,
        _ => 1,
    }
}

fn read_input(c: &CliConfig) -> Result<String> {
    let p = c
        .input_path
        .as_ref()
        .ok_or_else(|| Error::Parse("--input is required".into()))?;
    std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
}

fn samples(c: &CliConfig) -> Result<Vec<Rational>> {
    match &c.params {
        Some(s) => parse_rational_list(s),
        None => param_samples(),
    }
}

fn render(c: &CliConfig, value: &serde_json::Value, text: String) -> String {
    match c.output {
        OutputFormat::Json => serde_json::to_string_pretty(value).expect("json value") + "\n",
        OutputFormat::Text => text,
    }
}

fn catalog_for(c: &CliConfig) -> Result<Catalog> {
    match c.input_path {
        Some(_) => Catalog::from_json(&read_input(c)?),
        None => Ok(load_catalog()),
    }
}

/// Catalog instances with the same signature as `s` (conjugated into the
/// Borel subalgebra first so the parameter candidates can be read off).
fn catalog_matches(cat: &Catalog, s: &Subalgebra) -> Result<Vec<String>> {
    let sig = signature(s)?;
    let g = conjugate_into_borel(&s.basis())?;
    let b: Vec<Mat4> = s.basis().iter().map(|m| conjugate(&g, m)).collect::<Result<_>>()?;
    let cands = crate::catalog::verify::parameter_candidates(&b);
    Ok(matching_rows(cat, &sig, &cands, &Mutex::new(HashMap::new())))
}

/// Identification of a subalgebra: de Graaf class (dimension ≤ 4),
/// Šnobl–Winternitz class and matching catalog rows, as JSON and text.
pub fn identify_subalgebra(s: &Subalgebra) -> Result<(serde_json::Value, String)> {
    let cat = load_catalog();
    let sc = StructureConstants::of_basis(&s.basis())?;
    if !sc.is_solvable() {
        return Err(Error::NotSolvable);
    }
    let matches = catalog_matches(&cat, s)?;
    let (degraaf, sw): (Option<String>, SWClass) = if s.dim() <= 4 {
        let id = identify_degraaf(&sc)?;
        let class = id.class.canonical()?;
        let (sw, _) = degraaf_to_sw(&class)?;
        (Some(class.to_string()), sw)
    } else {
        // dimensions 5 and 6: the class of the matching catalog row
        let sws: Vec<SWClass> = matches
            .iter()
            .filter_map(|m| {
                let (id, a) = split_label(m);
                let e = cat.row(id)?;
                e.sw_at(&e.env(a.as_ref()).ok()?).ok().flatten()
            })
            .collect();
        match sws.first() {
            Some(sw) if sws.iter().all(|x| x == sw) => (None, sw.clone()),
            _ => {
                return Err(Error::UnrecognizedFamily(format!(
                    "dimension {} subalgebra matches no catalog row unambiguously",
                    s.dim()
                )))
            }
        }
    };
    let value = json!({ "dim": s.dim(), "degraaf": degraaf, "sw": sw.to_string(), "catalog_matches": matches });
    let text = format!(
        "dimension: {}\nde Graaf: {}\nŠnobl–Winternitz: {}\ncatalog rows: {}\n",
        s.dim(),
        degraaf.as_deref().unwrap_or("-"),
        sw,
        if matches.is_empty() {
            "-".to_string()
        } else {
            matches.join(", ")
        }
    );
    Ok((value, text))
}

/// Split an instance label `3.5[a=2]` into the row id and parameter.
fn split_label(l: &str) -> (&str, Option<Rational>) {
    match l.split_once("[a=") {
        Some((id, rest)) => (id, crate::linalg::parse_rational(rest.trim_end_matches(']')).ok()),
        None => (l, None),
    }
}

fn run_inner(c: &CliConfig) -> Result<(i32, String)> {
    Ok(match c.subcommand {
        Subcommand::VerifyCatalog => {
            let cat = catalog_for(c)?;
            let samples = samples(c)?;
            let report = verify_catalog(&cat, &samples, Some((c.seed.unwrap_or(0), PROBE_DRAWS)));
            let out = match c.output {
                OutputFormat::Json => report.to_json() + "\n",
                OutputFormat::Text => report.to_text(),
            };
            (if report.pass { 0 } else { 1 }, out)
        }
        Subcommand::Identify => {
            let (v, t) = identify_subalgebra(&Subalgebra::from_json(&read_input(c)?)?)?;
            (0, render(c, &v, t))
        }
        Subcommand::Invariants => {
            let s = Subalgebra::from_json(&read_input(c)?)?;
            let sig = signature(&s)?;
            let v = serde_json::to_value(&sig)?;
            let text = serde_json::to_string_pretty(&v)? + "\n";
            (0, render(c, &v, text))
        }
        Subcommand::Conjugate => {
            let s = Subalgebra::from_json(&read_input(c)?)?;
            let recipe = Recipe::parse(
                c.conjugator
                    .as_deref()
                    .ok_or_else(|| Error::Parse("--conjugator is required".into()))?,
            )?;
            let g = recipe.matrix();
            if !in_sp4_group(&g) {
                return Err(Error::Conjugator(format!("{recipe} is not in Sp(4)")));
            }
            let image = Subalgebra::new(conjugate_subalgebra(&g, s.space())?)?;
            let v: serde_json::Value = serde_json::from_str(&image.to_json())?;
            let text = image
                .basis()
                .iter()
                .map(|m| format!("{m}\n"))
                .collect::<Vec<_>>()
                .join("\n");
            (0, render(c, &v, text))
        }
        Subcommand::ClassifyElement => {
            let m: Mat4 = serde_json::from_str(&read_input(c)?)?;
            let label = classify_element(&m)?;
            let v = serde_json::to_value(&label)?;
            let text = format!(
                "table {} row {} {}\nline: {}\n",
                label.table,
                label.row,
                label
                    .params
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(" "),
                label.line.as_deref().unwrap_or("-")
            );
            (0, render(c, &v, text))
        }
        Subcommand::ExportCatalog => (0, catalog_for(c)?.to_json() + "\n"),
    })
}

/// Execute one command.
pub fn run(c: &CliConfig) -> Outcome {
    match run_inner(c) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => {
            let code = exit_code(&e);
            let hint = match code {
                3 => {
                    "\nhint: the input lies outside the supported families or has a non-rational spectrum; \
                      compare characteristic polynomials instead"
                }
                _ => "",
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {e}{hint}\n"),
            }
        }
    }
}

/// A subalgebra JSON document for the span of `basis` (used by tests and examples).
pub fn subalgebra_json(basis: &[Mat4]) -> String {
    serde_json::to_string(&json!({ "basis": Subspace::span(basis).basis() })).expect("json")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sp4::{t_int, x, Root};

    fn cfg(sub: Subcommand, input: Option<PathBuf>) -> CliConfig {
        CliConfig {
            subcommand: sub,
            input_path: input,
            params: None,
            conjugator: None,
            seed: None,
            output: OutputFormat::Json,
        }
    }

    fn write(name: &str, s: &str) -> PathBuf {
        let p = std::env::temp_dir().join(format!("sp4-cli-{}-{name}", std::process::id()));
        std::fs::write(&p, s).unwrap();
        p
    }

    #[test]
    fn identify_dimension_five() {
        let b = [
            t_int(1, 1),
            x(Root::Alpha),
            x(Root::Beta),
            x(Root::AlphaPlusBeta),
            x(Root::AlphaPlus2Beta),
        ];
        let p = write("tn.json", &subalgebra_json(&b));
        let o = run(&cfg(Subcommand::Identify, Some(p)));
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("s_{5,37}"), "{}", o.stdout);
    }

    #[test]
    fn identify_dimension_three_after_conjugation() {
        let g = Recipe::parse("W*shear:beta:1").unwrap().matrix();
        let b: Vec<Mat4> = [t_int(3, 1), &x(Root::Alpha) + &x(Root::Beta), x(Root::AlphaPlus2Beta)]
            .iter()
            .map(|m| conjugate(&g, m).unwrap())
            .collect();
        let p = write("l3.json", &subalgebra_json(&b));
        let o = run(&cfg(Subcommand::Identify, Some(p)));
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(
            o.stdout.contains("L3(-3/16)") && o.stdout.contains("\"3.6\""),
            "{}",
            o.stdout
        );
    }

    #[test]
    fn classify_element_and_errors() {
        let p = write("x.json", &serde_json::to_string(&x(Root::AlphaPlus2Beta)).unwrap());
        let o = run(&cfg(Subcommand::ClassifyElement, Some(p)));
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("\"X_alpha\""), "{}", o.stdout);
        let p = write("bad.json", "[[1,2]");
        let o = run(&cfg(Subcommand::ClassifyElement, Some(p)));
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("line"), "{}", o.stderr);
        assert_eq!(run(&cfg(Subcommand::Identify, None)).code, 2);
        let irr = Mat4::from_ints([[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, -1, 0, 0]]);
        let p = write("irr.json", &serde_json::to_string(&irr).unwrap());
        assert_eq!(run(&cfg(Subcommand::ClassifyElement, Some(p))).code, 3);
    }

    #[test]
    fn conjugate_and_invariants() {
        let p = write("ta.json", &subalgebra_json(&[t_int(2, 1), x(Root::Alpha)]));
        let mut c = cfg(Subcommand::Conjugate, Some(p.clone()));
        c.conjugator = Some("W".into());
        let o = run(&c);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let img = Subalgebra::from_json(&o.stdout).unwrap();
        assert!(img.space().contains(&x(Root::AlphaPlus2Beta)));
        c.conjugator = Some("diag:1,1,1,1/2".into());
        assert_eq!(run(&c).code, 2);
        let o = run(&cfg(Subcommand::Invariants, Some(p)));
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("\"is_abelian\": false"));
    }

    #[test]
    fn export_round_trips() {
        let o = run(&cfg(Subcommand::ExportCatalog, None));
        assert_eq!(Catalog::from_json(&o.stdout).unwrap(), load_catalog());
        let p = write("cat.json", &o.stdout);
        assert_eq!(run(&cfg(Subcommand::ExportCatalog, Some(p))).stdout, o.stdout);
    }

    #[test]
    fn command_line_parsing() {
        let c =
            CliConfig::try_parse_from(["sp4", "verify-catalog", "--params", "2,-3,1/2", "--output", "json"]).unwrap();
        assert_eq!(c.subcommand, Subcommand::VerifyCatalog);
        assert_eq!(samples(&c).unwrap().len(), 3);
        assert!(CliConfig::try_parse_from(["sp4", "frobnicate"]).is_err());
        assert!(CliConfig::try_parse_from(["sp4"]).is_err());
    }
}
