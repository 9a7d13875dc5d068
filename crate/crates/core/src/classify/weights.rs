//! Weights of solvable linear Lie algebras (Lie's theorem made constructive)
//! and conjugation of solvable subalgebras of sp(4) into the Borel subalgebra.

use crate::error::{Error, Result};
use crate::lie::{restrict_operator, solve_in_columns, unit};
use crate::linalg::{DMat, Mat4, Rational, VecSpace};
use crate::sp4::{conjugate, form_j, in_borel, in_sp4_group};

fn to_dmat(m: &Mat4) -> DMat {
    DMat::from_rows(&m.0.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn commutator(a: &DMat, b: &DMat) -> DMat {
    a.mul(b).sub(&b.mul(a))
}

fn combine(basis: &[Vec<Rational>], coords: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0.into()); basis[0].len()];
    for (c, b) in coords.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

/// A common eigenvector of operators spanning a solvable Lie algebra of
/// matrices.  Fails with `IrrationalSpectrum` when the eigenvalues needed are
/// not rational.
pub fn common_eigenvector(ops: &[DMat]) -> Result<Vec<Rational>> {
    let m = ops.first().map_or(0, DMat::nrows);
    // Weights vanish on the derived algebra, so common eigenvectors lie in
    // its common kernel, which is invariant and on which the operators commute.
    let mut rows = Vec::new();
    for i in 0..ops.len() {
        for j in (i + 1)..ops.len() {
            let c = commutator(&ops[i], &ops[j]);
            rows.extend((0..m).map(|r| c.row(r)));
        }
    }
    let mut space: Vec<Vec<Rational>> = if rows.is_empty() {
        standard_basis(m)
    } else {
        DMat::from_rows(&rows).kernel()
    };
    for op in ops {
        let r = restrict_operator(op, &space).ok_or(Error::NotSolvable)?;
        let roots = r.char_poly().rational_roots()?;
        let Some((mu, _)) = roots.first() else {
            return Err(Error::IrrationalSpectrum(format!(
                "characteristic polynomial {} has no rational root",
                r.char_poly()
            )));
        };
        let k = r.sub(&DMat::identity(r.nrows()).scale(mu)).kernel();
        space = k.iter().map(|c| combine(&space, c)).collect();
    }
    space.into_iter().next().ok_or(Error::NotSolvable)
}

fn standard_basis(m: usize) -> Vec<Vec<Rational>> {
    (0..m).map(|i| unit(m, i)).collect()
}

/// The weights (with multiplicity) of a solvable representation: each weight
/// is the list of eigenvalues it assigns to the given operators.
pub fn rep_weights(ops: &[DMat]) -> Result<Vec<Vec<Rational>>> {
    let mut ops: Vec<DMat> = ops.to_vec();
    let mut out = Vec::new();
    loop {
        let m = ops.first().map_or(0, DMat::nrows);
        if m == 0 {
            return Ok(out);
        }
        let v = common_eigenvector(&ops)?;
        let k = v
            .iter()
            .position(|x| !num_traits::Zero::is_zero(x))
            .expect("nonzero eigenvector");
        out.push(ops.iter().map(|op| &op.apply(&v)[k] / &v[k]).collect());
        // basis [v, complement] and keep the quotient block
        let vs = VecSpace::span(m, std::slice::from_ref(&v));
        let full = VecSpace::span(m, &standard_basis(m));
        let mut cols = vec![v];
        cols.extend(vs.complement_in(&full));
        let q = DMat::from_cols(&cols);
        let qi = q.inverse()?;
        ops = ops
            .iter()
            .map(|op| {
                let t = qi.mul(&op.mul(&q));
                DMat::from_rows(
                    &(1..m)
                        .map(|i| (1..m).map(|j| t.get(i, j).clone()).collect())
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
    }
}

/// Weights of the defining representation on `ℚ⁴`, as functionals in the
/// coordinates of `basis`.
pub fn v_weights(basis: &[Mat4]) -> Result<Vec<Vec<Rational>>> {
    if basis.is_empty() {
        return Ok(vec![vec![]; 4]);
    }
    rep_weights(&basis.iter().map(to_dmat).collect::<Vec<_>>())
}

/// An element `g ∈ Sp(4)` with `g s g⁻¹ ⊂ b` for a solvable subalgebra with
/// basis `basis` (rational spectra required).
pub fn conjugate_into_borel(basis: &[Mat4]) -> Result<Mat4> {
    let ops: Vec<DMat> = basis.iter().map(to_dmat).collect();
    let ops = if ops.is_empty() { vec![DMat::zeros(4, 4)] } else { ops };
    let j = form_j();
    let omega_row = |f: &[Rational]| -> Vec<Rational> {
        // ω(f, y) = fᵀ J y
        (0..4).map(|c| (0..4).map(|r| &f[r] * j.get(r, c)).sum()).collect()
    };
    let f1 = common_eigenvector(&ops)?;
    let perp = VecSpace::span(4, &DMat::from_rows(&[omega_row(&f1)]).kernel());
    let line = VecSpace::span(4, std::slice::from_ref(&f1));
    let mut pb = vec![f1.clone()];
    pb.extend(line.complement_in(&perp));
    let quotient: Vec<DMat> = ops
        .iter()
        .map(|op| {
            let r = restrict_operator(op, &pb).ok_or(Error::NotSolvable)?;
            Ok(DMat::from_rows(
                &(1..3)
                    .map(|i| (1..3).map(|k| r.get(i, k).clone()).collect())
                    .collect::<Vec<_>>(),
            ))
        })
        .collect::<Result<_>>()?;
    let u = common_eigenvector(&quotient)?;
    let f2 = combine(&pb[1..], &u);
    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    let f3 = solve_in_columns(
        &DMat::from_rows(&[omega_row(&f1), omega_row(&f2)]),
        &[one.clone(), zero.clone()],
    )
    .ok_or(Error::SingularMatrix)?;
    let f4 = solve_in_columns(
        &DMat::from_rows(&[omega_row(&f1), omega_row(&f2), omega_row(&f3)]),
        &[zero.clone(), one, zero],
    )
    .ok_or(Error::SingularMatrix)?;
    let p = Mat4::from_fn(|r, c| [&f1, &f2, &f3, &f4][c][r].clone());
    let g = p.inverse()?;
    debug_assert!(in_sp4_group(&g));
    for x in basis {
        if !in_borel(&conjugate(&g, x)?) {
            return Err(Error::NotInBorel);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::sp4::{t_int, x, NamedConjugator, Recipe, Root};
    use proptest::prelude::*;

    fn conj_all(g: &Mat4, b: &[Mat4]) -> Vec<Mat4> {
        b.iter().map(|m| conjugate(g, m).unwrap()).collect()
    }

    #[test]
    fn weights_of_diagonal_and_nilpotent() {
        let w = v_weights(&[t_int(2, 1)]).unwrap();
        let mut vals: Vec<Rational> = w.into_iter().map(|v| v[0].clone()).collect();
        vals.sort();
        assert_eq!(vals, vec![q(-2), q(-1), q(1), q(2)]);
        let w = v_weights(&[x(Root::Alpha), x(Root::Beta)]).unwrap();
        assert!(w.iter().all(|v| v.iter().all(|c| c == &q(0))));
    }

    #[test]
    fn irrational_spectrum_is_reported() {
        // X_α − X_{−α}-type element with eigenvalues ±i: not split over ℚ
        let m = Mat4::from_ints([[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, -1, 0, 0]]);
        assert!(matches!(v_weights(&[m]), Err(Error::IrrationalSpectrum(_))));
    }

    proptest! {
        #[test]
        fn conjugated_borel_subalgebras_return(
            word in prop::collection::vec(prop::sample::select(vec!["W", "A", "J", "AJ", "WA", "shear:alpha:2", "shear:beta:-1", "shear:alpha+beta:1/2", "shear:alpha+2beta:3"]), 1..4),
            pick in 0usize..4,
        ) {
            let seeds: Vec<Vec<Mat4>> = vec![
                vec![t_int(1, 1), x(Root::Beta)],
                vec![t_int(2, 1), x(Root::Alpha), x(Root::AlphaPlusBeta)],
                vec![&t_int(1, 0) + &x(Root::Alpha), x(Root::AlphaPlusBeta), x(Root::AlphaPlus2Beta)],
                vec![x(Root::Beta), x(Root::AlphaPlusBeta), x(Root::AlphaPlus2Beta)],
            ];
            let rec = Recipe(word.iter().map(|w| NamedConjugator::parse(w).unwrap()).collect());
            let basis = conj_all(&rec.matrix(), &seeds[pick]);
            let g = conjugate_into_borel(&basis).unwrap();
            prop_assert!(in_sp4_group(&g));
            prop_assert!(conj_all(&g, &basis).iter().all(in_borel));
        }
    }
}
