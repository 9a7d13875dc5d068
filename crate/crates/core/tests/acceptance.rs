//! Acceptance harness: one PASS/FAIL line per acceptance criterion.
//!
//! Every oracle here is independent of the code under test: closed-form
//! parameter formulas, brute-force cofactor expansion, grid sampling of
//! pencils, and direct matrix identities.  Exits nonzero on any failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sp4::catalog::{element_from_coords, load_catalog, mutation_outcomes, verify_separations, Catalog};
use sp4::classify::pencil::pencil_rank_strata;
use sp4::classify::{identify_degraaf, signature_of_basis, DeGraafClass, NilpotentStrata};
use sp4::jordan::{classify_element, is_nilpotent_mat, jordan_decompose, jordan_type};
use sp4::lie::StructureConstants;
use sp4::linalg::{q, qf, Mat4, Poly, Rational};
use sp4::sp4::{bracket, conjugate, default_samples, in_sp4, t_ab, t_int, x, NamedConjugator, Root, SAMPLES_ENV};

/// Outcome of a single criterion.
struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn rand_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    qf(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

fn rand_nonzero(rng: &mut ChaCha8Rng, choices: &[Rational]) -> Rational {
    choices[rng.gen_range(0..choices.len())].clone()
}

/// A random group element from the named generators.
fn rand_factor(rng: &mut ChaCha8Rng) -> NamedConjugator {
    let units = [qf(1, 2), qf(-1, 2), q(1), q(-1), q(2), q(-2), q(3), qf(-1, 3)];
    match rng.gen_range(0..8) {
        0 => NamedConjugator::W,
        1 => NamedConjugator::A,
        2 => NamedConjugator::J,
        3 => NamedConjugator::AJ,
        4 => NamedConjugator::WA,
        5 => {
            let d = rand_nonzero(rng, &units);
            let e = rand_nonzero(rng, &units);
            NamedConjugator::Diag([d.clone(), e.clone(), d.recip(), e.recip()])
        }
        6 => {
            let root = Root::ALL[rng.gen_range(0..4)];
            NamedConjugator::Shear(root, rand_nonzero(rng, &units))
        }
        _ => loop {
            let g: [Rational; 4] = std::array::from_fn(|_| q(rng.gen_range(-2..=2)));
            if &g[0] * &g[3] - &g[1] * &g[2] != q(0) {
                break NamedConjugator::Levi(g);
            }
        },
    }
}

fn rand_group_element(rng: &mut ChaCha8Rng, max_len: usize) -> Mat4 {
    let len = rng.gen_range(1..=max_len);
    (0..len).fold(Mat4::identity(), |acc, _| &acc * &rand_factor(rng).matrix())
}

/// A random element of the Borel subalgebra, biased towards degenerate
/// diagonal parts so that every orbit type occurs.
fn rand_borel(rng: &mut ChaCha8Rng) -> Mat4 {
    let p = q(rng.gen_range(-3..=3));
    let qq = match rng.gen_range(0..6) {
        0 => p.clone(),
        1 => -p.clone(),
        2 => q(0),
        _ => q(rng.gen_range(-3..=3)),
    };
    let (p, qq) = if rng.gen_bool(0.25) { (q(0), q(0)) } else { (p, qq) };
    let mut v = vec![p, qq];
    for _ in 0..4 {
        v.push(if rng.gen_bool(0.4) {
            q(0)
        } else {
            rand_rational(rng, 3, 2)
        });
    }
    element_from_coords(&v)
}

/// `det(λI − m)` by cofactor expansion along the first row.
fn cofactor_char_poly(m: &Mat4) -> Poly {
    let entries: Vec<Vec<Poly>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    let c = Poly::constant(-m.get(i, j).clone());
                    if i == j {
                        c.add(&Poly::x())
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    fn det(rows: &[usize], cols: &[usize], e: &[Vec<Poly>]) -> Poly {
        if rows.len() == 1 {
            return e[rows[0]][cols[0]].clone();
        }
        let mut acc = Poly::zero();
        for (k, &c) in cols.iter().enumerate() {
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = e[rows[0]][c].mul(&det(&rows[1..], &sub_cols, e));
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
    det(&[0, 1, 2, 3], &[0, 1, 2, 3], &entries)
}

fn criterion_1() -> Verdict {
    let out = Command::new(env!("CARGO_BIN_EXE_sp4"))
        .arg("verify-catalog")
        .env_remove(SAMPLES_ENV)
        .output();
    match out {
        Ok(o) => {
            let code = o.status.code().unwrap_or(-1);
            let stdout = String::from_utf8_lossy(&o.stdout);
            let summary = stdout.lines().last().unwrap_or("").trim().to_string();
            verdict(code == 0, format!("verify-catalog exit {code}; {summary}"))
        }
        Err(e) => verdict(false, format!("could not run binary: {e}")),
    }
}

fn criterion_2() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    let mut nilpotent_seen = [0usize; 3];
    for i in 0..1000 {
        let base = rand_borel(&mut rng);
        let g0 = rand_group_element(&mut rng, 3);
        let x0 = conjugate(&g0, &base).expect("invertible conjugator");
        if !in_sp4(&x0) {
            return verdict(false, format!("sample {i} left sp(4)"));
        }
        let label = match classify_element(&x0) {
            Ok(l) => l,
            Err(e) => return verdict(false, format!("sample {i}: {e}")),
        };
        for _ in 0..20 {
            let g = rand_group_element(&mut rng, 4);
            let y = conjugate(&g, &x0).expect("invertible conjugator");
            match classify_element(&y) {
                Ok(l) if l == label => {}
                Ok(l) => {
                    return verdict(
                        false,
                        format!("sample {i}: {} vs {} after conjugation", label.row, l.row),
                    )
                }
                Err(e) => return verdict(false, format!("sample {i}: {e}")),
            }
        }
        if is_nilpotent_mat(&x0) && !x0.is_zero() {
            let jt = jordan_type(&x0).expect("rational spectrum");
            let sizes: Vec<usize> = jt.iter().map(|b| b.1).collect();
            let expect = match sizes.as_slice() {
                [2, 1, 1] => (0, "X_alpha"),
                [2, 2] => (1, "X_beta"),
                [4] => (2, "X_alpha+X_beta"),
                _ => return verdict(false, format!("sample {i}: unexpected nilpotent type {sizes:?}")),
            };
            if label.row != expect.1 {
                return verdict(false, format!("sample {i}: type {sizes:?} labelled {}", label.row));
            }
            nilpotent_seen[expect.0] += 1;
        }
        checked += 1;
    }
    let zero = q(0);
    let types_ok = jordan_type(&x(Root::Alpha)).ok()
        == Some(vec![(zero.clone(), 2), (zero.clone(), 1), (zero.clone(), 1)])
        && jordan_type(&x(Root::Beta)).ok() == Some(vec![(zero.clone(), 2), (zero.clone(), 2)])
        && jordan_type(&(&x(Root::Alpha) + &x(Root::Beta))).ok() == Some(vec![(zero, 4)]);
    let all_nilpotent_types = nilpotent_seen.iter().all(|&n| n > 0);
    verdict(
        checked == 1000 && types_ok && all_nilpotent_types,
        format!(
            "{checked} elements × 20 conjugates stable; nilpotent orbits seen {nilpotent_seen:?}; root-vector Jordan types {}",
            if types_ok { "ok" } else { "WRONG" }
        ),
    )
}

fn criterion_3() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..10_000 {
        let r = |rng: &mut ChaCha8Rng| rand_rational(rng, 9, 4);
        let a: [[Rational; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| r(&mut rng)));
        let (b0, b1, b2) = (r(&mut rng), r(&mut rng), r(&mut rng));
        let (c0, c1, c2) = (r(&mut rng), r(&mut rng), r(&mut rng));
        let b = [[b0, b1.clone()], [b1, b2]];
        let c = [[c0, c1.clone()], [c1, c2]];
        let m = Mat4::from_fn(|i, j| match (i < 2, j < 2) {
            (true, true) => a[i][j].clone(),
            (true, false) => b[i][j - 2].clone(),
            (false, true) => c[i - 2][j].clone(),
            (false, false) => -a[j - 2][i - 2].clone(),
        });
        if !in_sp4(&m) {
            return verdict(false, format!("sample {i} not recognised as symplectic"));
        }
        let cp = m.char_poly();
        if !cp.coeff(1).is_zero() || !cp.coeff(3).is_zero() {
            return verdict(false, format!("sample {i}: odd coefficients in {cp}"));
        }
    }
    verdict(
        true,
        "10000 random elements: membership holds, characteristic polynomials even",
    )
}

fn criterion_4() -> Verdict {
    let mut rs: Vec<Rational> = (-10..=10).map(q).collect();
    for (n, d) in [
        (1, 2),
        (3, 2),
        (5, 2),
        (7, 2),
        (9, 2),
        (1, 3),
        (2, 3),
        (4, 3),
        (5, 3),
        (7, 3),
        (1, 4),
        (3, 4),
        (5, 4),
        (7, 4),
        (9, 4),
    ] {
        rs.push(qf(n, d));
        rs.push(qf(-n, d));
    }
    rs.truncate(50);
    assert!(rs.contains(&q(2)) && rs.contains(&q(-2)));
    let mut failures = Vec::new();
    for r in &rs {
        // Basis T, A, B with [T,A] = 2A, [T,B] = rB.
        let sc = StructureConstants::from_relations(3, &[(0, 1, vec![(1, q(2))]), (0, 2, vec![(2, r.clone())])]);
        let expected = if *r == q(2) {
            DeGraafClass::L2
        } else if *r == q(-2) {
            DeGraafClass::L4(q(1))
        } else {
            let s = r + q(2);
            DeGraafClass::L3(-(q(2) * r) / (&s * &s))
        };
        let expected = expected.canonical().expect("canonical");
        match identify_degraaf(&sc) {
            Ok(id) if id.class == expected => {}
            Ok(id) => failures.push(format!("r={r}: got {} expected {expected}", id.class)),
            Err(e) => failures.push(format!("r={r}: {e}")),
        }
    }
    verdict(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} values of r agree", rs.len())
        } else {
            failures.join("; ")
        },
    )
}

fn criterion_5() -> Verdict {
    let np = [
        x(Root::Alpha),
        x(Root::Beta),
        x(Root::AlphaPlusBeta),
        x(Root::AlphaPlus2Beta),
    ];
    // Nilradical of the maximal parabolic: ⟨X_α, X_{α+β}, X_{α+2β}⟩.
    let n_p = [np[0].clone(), np[2].clone(), np[3].clone()];
    let one = q(1);
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut check = |name: &str, basis: Vec<Mat4>, expected: DeGraafClass| {
        checked += 1;
        let sc = match StructureConstants::of_basis(&basis) {
            Ok(sc) => sc,
            Err(e) => return failures.push(format!("{name}: {e}")),
        };
        let expected = match expected.canonical() {
            Ok(c) => c,
            Err(e) => return failures.push(format!("{name}: {e}")),
        };
        match identify_degraaf(&sc) {
            Ok(id) if id.class == expected => {}
            Ok(id) => failures.push(format!("{name}: got {} expected {expected}", id.class)),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    };
    for a in default_samples() {
        let t = t_ab(&a, &one);
        let a1 = &a + &one;
        if a != q(0) && a != q(1) && a != q(-1) {
            let mut b = vec![t.clone()];
            b.extend(n_p.iter().cloned());
            let p = q(4) * &a / (q(27) * &a1 * &a1);
            let r = -(q(2) * (&a * &a + q(4) * &a + q(1))) / (q(9) * &a1 * &a1);
            check(&format!("<T(a,1),n> a={a}"), b, DeGraafClass::M6(p, r));

            let b = vec![t.clone(), np[1].clone(), np[2].clone(), np[3].clone()];
            check(
                &format!("<T(a,1),Xb,Xab,Xa2b> a={a}"),
                b,
                DeGraafClass::M13((q(1) - &a * &a) / (q(4) * &a * &a)),
            );

            let b = vec![t.clone(), np[0].clone(), np[3].clone()];
            check(
                &format!("<T(a,1),Xa,Xa2b> a={a}"),
                b,
                DeGraafClass::L3(-a.clone() / (&a1 * &a1)),
            );
        }
        if a != q(-3) && a != q(-1) && a != q(0) && a != q(1) {
            let a3 = &a + q(3);
            let b = vec![t.clone(), np[0].clone(), np[2].clone()];
            check(
                &format!("<T(a,1),Xa,Xab> a={a}"),
                b,
                DeGraafClass::L3(-(q(2) * &a1) / (&a3 * &a3)),
            );
        }
    }
    let xab_sum = &np[0] + &np[1];
    let t11_xb = &t_int(1, 1) + &np[1];
    check(
        "<T31,Xa+Xb,Xa2b>",
        vec![t_int(3, 1), xab_sum.clone(), np[3].clone()],
        DeGraafClass::L3(qf(-3, 16)),
    );
    check(
        "<T10,Xab,Xa2b>",
        vec![t_int(1, 0), np[2].clone(), np[3].clone()],
        DeGraafClass::L3(qf(-2, 9)),
    );
    check(
        "<T11+Xb,Xab,Xa2b>",
        vec![t11_xb.clone(), np[2].clone(), np[3].clone()],
        DeGraafClass::L3(qf(-1, 4)),
    );
    check(
        "<T31,Xa+Xb,Xab,Xa2b>",
        vec![t_int(3, 1), xab_sum, np[2].clone(), np[3].clone()],
        DeGraafClass::M13(qf(-2, 9)),
    );
    let mut b = vec![t11_xb];
    b.extend(n_p.iter().cloned());
    check("<T11+Xb,n>", b, DeGraafClass::M6(qf(1, 27), qf(-1, 3)));
    verdict(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{checked} instances match closed forms")
        } else {
            failures.join("; ")
        },
    )
}

fn criterion_6(catalog: &Catalog) -> Verdict {
    let report = verify_separations(catalog, &default_samples());
    let sig = |b: Vec<Mat4>| signature_of_basis(&b).expect("signature");
    let (xa, xb, xab, xa2b) = (
        x(Root::Alpha),
        x(Root::Beta),
        x(Root::AlphaPlusBeta),
        x(Root::AlphaPlus2Beta),
    );
    let weights_differ = sig(vec![t_int(0, 1), xa.clone()]).weights != sig(vec![t_int(0, 1), xb]).weights;
    let abelian_differs =
        sig(vec![t_int(1, 0), xa.clone()]).is_abelian && !sig(vec![t_int(0, 1), xa.clone()]).is_abelian;
    let rank_one_lines = |s: NilpotentStrata| match s {
        NilpotentStrata::Pencil { exceptional, .. } => {
            exceptional.iter().filter(|e| e.0 == 1).map(|e| e.1).sum::<usize>()
        }
        _ => usize::MAX,
    };
    let lines_a2b = rank_one_lines(sig(vec![xa.clone(), xa2b]).nilpotent_rank_strata);
    let lines_ab = rank_one_lines(sig(vec![xa, xab]).nilpotent_rank_strata);
    let explicit = weights_differ && abelian_differs && lines_a2b == 2 && lines_ab == 1;
    verdict(
        report.pass && explicit,
        format!(
            "{} instances, {} pairs separated, {} witness checks, {} failures; rank-1 lines {} vs {}",
            report.instances,
            report.pairs_compared,
            report.witness_checks.len(),
            report.failures.len(),
            lines_a2b,
            lines_ab
        ),
    )
}

fn criterion_7(catalog: &Catalog) -> Verdict {
    let samples = default_samples();
    let mut maps = 0;
    let mut min_rejected = usize::MAX;
    let mut failures = Vec::new();
    for e in catalog.rows.iter().filter(|e| e.isomap.is_some()) {
        for (a, env) in e.sample_envs(&samples) {
            match mutation_outcomes(e, &env) {
                Ok(Some(m)) => {
                    maps += 1;
                    min_rejected = min_rejected.min(m.rejected);
                    if !m.original_ok || m.rejected < 5 {
                        failures.push(format!(
                            "{}: original {} rejected {}/{}",
                            e.label(a.as_ref()),
                            m.original_ok,
                            m.rejected,
                            m.mutations
                        ));
                    }
                }
                Ok(None) => {}
                Err(err) => failures.push(format!("{}: {err}", e.label(a.as_ref()))),
            }
        }
    }
    verdict(
        failures.is_empty() && maps > 0,
        if failures.is_empty() {
            format!("{maps} maps verified; every map has at least {min_rejected} rejected mutations")
        } else {
            failures.join("; ")
        },
    )
}

fn criterion_8(catalog: &Catalog) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..200 {
        let m = Mat4::from_fn(|_, _| rand_rational(&mut rng, 6, 3));
        if m.char_poly() != cofactor_char_poly(&m) {
            return verdict(false, format!("characteristic polynomial mismatch on matrix {i}"));
        }
    }

    // Pencils: every pair of independent nilpotent basis elements of catalog instances.
    let samples = default_samples();
    let mut pencils = 0;
    for e in &catalog.rows {
        for (a, env) in e.sample_envs(&samples) {
            let basis = match e.basis_at(&env) {
                Ok(b) => b,
                Err(err) => return verdict(false, format!("{}: {err}", e.label(a.as_ref()))),
            };
            let nil: Vec<&Mat4> = basis.iter().filter(|m| is_nilpotent_mat(m)).collect();
            for (i, n1) in nil.iter().enumerate() {
                for n2 in &nil[i + 1..] {
                    let strata = match pencil_rank_strata(n1, n2) {
                        Ok(s) => s,
                        Err(err) => return verdict(false, format!("{}: {err}", e.label(a.as_ref()))),
                    };
                    let mut grid: Vec<(Option<Rational>, usize)> = (-20..=20)
                        .map(|t| (Some(q(t)), (&n1.scale(&q(t)) + n2).rank()))
                        .collect();
                    grid.push((None, n1.rank()));
                    let max_rank = grid.iter().map(|g| g.1).max().unwrap_or(0);
                    if max_rank != strata.generic_rank {
                        return verdict(
                            false,
                            format!(
                                "{}: generic rank {} vs grid {max_rank}",
                                e.label(a.as_ref()),
                                strata.generic_rank
                            ),
                        );
                    }
                    for (t, r) in grid.iter().filter(|g| g.1 < max_rank) {
                        let tag = match t {
                            Some(t) => sp4::classify::pencil::LineTag::At(t.clone()),
                            None => sp4::classify::pencil::LineTag::Infinity,
                        };
                        if !strata.exceptional.iter().any(|(l, k)| *l == tag && k == r) {
                            return verdict(
                                false,
                                format!("{}: grid drop at {t:?} (rank {r}) missing", e.label(a.as_ref())),
                            );
                        }
                    }
                    pencils += 1;
                }
            }
        }
    }

    // Jordan decomposition invariants on random Borel elements.
    for i in 0..1000 {
        let xm = rand_borel(&mut rng);
        let d = jordan_decompose(&xm);
        let (s, n) = (&d.semisimple, &d.nilpotent);
        let mut eigen: Vec<Rational> = (0..4).map(|k| xm.get(k, k).clone()).collect();
        eigen.sort();
        eigen.dedup();
        let min_poly = eigen
            .iter()
            .fold(Mat4::identity(), |acc, l| &acc * &(s - &Mat4::scalar(l.clone())));
        let ok = (s + n) == xm && bracket(s, n).is_zero() && min_poly.is_zero() && n.pow(4).is_zero();
        if !ok {
            return verdict(false, format!("decomposition invariants fail on Borel sample {i}"));
        }
    }
    verdict(
        true,
        format!("200 characteristic polynomials, {pencils} pencils, 1000 decompositions agree with oracles"),
    )
}

/// Criterion number, runtime budget and check.
type Criterion<'a> = (usize, Duration, Box<dyn Fn() -> Verdict + 'a>);

fn main() -> ExitCode {
    let catalog = load_catalog();
    let criteria: Vec<Criterion<'_>> = vec![
        (1, Duration::from_secs(60), Box::new(criterion_1)),
        (2, Duration::from_secs(30), Box::new(criterion_2)),
        (3, Duration::from_secs(10), Box::new(criterion_3)),
        (4, Duration::from_secs(5), Box::new(criterion_4)),
        (5, Duration::from_secs(10), Box::new(criterion_5)),
        (6, Duration::from_secs(30), Box::new(|| criterion_6(&catalog))),
        (7, Duration::from_secs(10), Box::new(|| criterion_7(&catalog))),
        (8, Duration::from_secs(30), Box::new(|| criterion_8(&catalog))),
    ];
    let mut all = true;
    for (n, budget, run) in criteria {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= budget;
        let pass = v.pass && in_budget;
        all &= pass;
        let budget_note = if in_budget {
            String::new()
        } else {
            format!(" [over {}s budget]", budget.as_secs())
        };
        println!(
            "criterion {n}: {} — {} ({:.2}s){budget_note}",
            if pass { "PASS" } else { "FAIL" },
            v.detail,
            elapsed.as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
