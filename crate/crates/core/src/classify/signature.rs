//! Conjugation invariants of solvable subalgebras of sp(4).
//!
//! Every field of an [`InvariantSignature`] is unchanged when the subalgebra is
//! conjugated by an element of Sp(4), so two subalgebras with different
//! signatures are not conjugate.  The weight data is recorded as a canonical
//! configuration (independent of the chosen basis), the nilpotent elements
//! through the rank stratification of their span, and the semisimple
//! elements through a coarse content class.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::classify::pencil::{pencil_rank_strata, LineTag};
use crate::classify::weights::{rep_weights, v_weights};
use crate::error::{Error, Result};
use crate::jordan::jordan_decompose;
use crate::lie::{restrict_operator, solve_in_columns, unit, StructureConstants, Subalgebra};
use crate::linalg::{q, DMat, Mat4, Rational, VecSpace};

/// Which representation a weight belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeightModule {
    /// The defining representation on `ℚ⁴`.
    Defining,
    /// The adjoint action on the derived algebra.
    Adjoint,
}

/// A weight in coordinates relative to a basis of the weight span.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    /// Representation carrying the weight.
    pub module: WeightModule,
    /// Coordinates in the canonical basis of the weight span.
    pub coords: Vec<Rational>,
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.module {
            WeightModule::Defining => "V",
            WeightModule::Adjoint => "ad",
        };
        let c: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "{tag}({})", c.join(","))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The weights of the defining and adjoint representations, up to a change
/// of basis of the subalgebra: the lexicographically smallest sorted list of
/// coordinates over all choices of a basis of the weight span made of weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightConfiguration {
    /// Dimension of the span of all weights.
    pub rank: usize,
    /// Canonically ordered weights.
    pub weights: Vec<Weight>,
}

/// Rank stratification of the nilpotent elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum NilpotentStrata {
    /// No nonzero nilpotent elements.
    None,
    /// A single line of nilpotent elements of the given rank.
    Line {
        /// Rank of its nonzero elements.
        rank: usize,
    },
    /// A plane of nilpotent elements.
    Pencil {
        /// Rank of a generic element.
        generic: usize,
        /// Exceptional lines as `(rank, number of conjugate lines)`, sorted;
        /// rational lines have count 1.
        exceptional: Vec<(usize, usize)>,
    },
    /// Three or more dimensions of nilpotent elements.
    Generic {
        /// Rank of a generic element.
        rank: usize,
    },
}

/// What kind of semisimple elements a subalgebra contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SemisimpleContent {
    /// Contains a Cartan subalgebra of sp(4).
    HasCartan,
    /// Contains a regular semisimple element but no Cartan subalgebra.
    HasRegularSs,
    /// Contains nonzero semisimple elements, none regular.
    HasNonregularSsOnly,
    /// Contains non-nilpotent elements but no nonzero semisimple ones.
    MixedOnly,
    /// Every element is nilpotent.
    AllNilpotent,
}

/// Conjugation invariants of a solvable subalgebra of sp(4).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantSignature {
    /// Dimension.
    pub dim: usize,
    /// Dimensions of the derived series.
    pub derived_dims: Vec<usize>,
    /// Dimensions of the lower central series.
    pub lower_central_dims: Vec<usize>,
    /// Whether the bracket vanishes.
    pub is_abelian: bool,
    /// Dimension of the center.
    pub center_dim: usize,
    /// Whether some element is an invertible matrix.
    pub contains_invertible: bool,
    /// Dimension of the ideal of nilpotent elements.
    pub nil_dim: usize,
    /// Rank stratification of the nilpotent elements.
    pub nilpotent_rank_strata: NilpotentStrata,
    /// Generic rank of the elements of the derived algebra.
    pub derived_generic_rank: usize,
    /// Canonical weight configuration.
    pub weights: WeightConfiguration,
    /// Semisimple content.
    pub semisimple_content: SemisimpleContent,
}

impl InvariantSignature {
    /// Names of the fields in which two signatures differ.
    pub fn differing_fields(&self, o: &InvariantSignature) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut check = |name: &'static str, same: bool| {
            if !same {
                out.push(name);
            }
        };
        check("dim", self.dim == o.dim);
        check("derived_dims", self.derived_dims == o.derived_dims);
        check("lower_central_dims", self.lower_central_dims == o.lower_central_dims);
        check("is_abelian", self.is_abelian == o.is_abelian);
        check("center_dim", self.center_dim == o.center_dim);
        check("contains_invertible", self.contains_invertible == o.contains_invertible);
        check("nil_dim", self.nil_dim == o.nil_dim);
        check(
            "nilpotent_rank_strata",
            self.nilpotent_rank_strata == o.nilpotent_rank_strata,
        );
        check(
            "derived_generic_rank",
            self.derived_generic_rank == o.derived_generic_rank,
        );
        check("weights", self.weights == o.weights);
        check("semisimple_content", self.semisimple_content == o.semisimple_content);
        out
    }

    /// The JSON value of a field by name (as listed by [`Self::differing_fields`]).
    pub fn field(&self, name: &str) -> Option<serde_json::Value> {
        serde_json::to_value(self).ok()?.get(name).cloned()
    }
}

/// Integer points of `{lo..=hi}^m` in lexicographic order.
fn grid_points(m: usize, lo: i64, hi: i64) -> impl Iterator<Item = Vec<Rational>> {
    let n = (hi - lo + 1) as usize;
    let total = n.pow(m as u32);
    (0..total).map(move |mut idx| {
        (0..m)
            .map(|_| {
                let d = idx % n;
                idx /= n;
                q(lo + d as i64)
            })
            .collect()
    })
}

fn combine(basis: &[Mat4], c: &[Rational]) -> Mat4 {
    basis.iter().zip(c).fold(Mat4::zero(), |acc, (b, x)| &acc + &b.scale(x))
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rank of a generic element of the span of `basis`.
///
/// Every `r×r` minor of a generic combination is a polynomial of degree at
/// most 4 in the coefficients, so a nonvanishing one is nonzero somewhere on
/// the grid `{−2..2}ᵐ`; the maximum rank over that grid is the generic rank.
pub fn generic_rank(basis: &[Mat4]) -> usize {
    let mut best = 0;
    for c in grid_points(basis.len(), -2, 2) {
        best = best.max(combine(basis, &c).rank());
        if best == 4 {
            break;
        }
    }
    best
}

/// Canonical form of a tagged weight list up to `GL` of the ambient space.
fn canonical_weights(tagged: &[(WeightModule, Vec<Rational>)], m: usize) -> WeightConfiguration {
    let span = VecSpace::span(m, &tagged.iter().map(|t| t.1.clone()).collect::<Vec<_>>());
    let k = span.dim();
    if k == 0 {
        let mut weights: Vec<Weight> = tagged
            .iter()
            .map(|(module, _)| Weight {
                module: *module,
                coords: vec![],
            })
            .collect();
        weights.sort();
        return WeightConfiguration { rank: 0, weights };
    }
    let mut best: Option<Vec<Weight>> = None;
    let mut choose = |idx: &[usize]| {
        let cols: Vec<Vec<Rational>> = idx.iter().map(|&i| tagged[i].1.clone()).collect();
        if VecSpace::span(m, &cols).dim() < k {
            return;
        }
        let mat = DMat::from_cols(&cols);
        let mut weights: Vec<Weight> = tagged
            .iter()
            .map(|(module, w)| Weight {
                module: *module,
                coords: solve_in_columns(&mat, w).expect("weight lies in the span"),
            })
            .collect();
        weights.sort();
        if best.as_ref().map_or(true, |b| &weights < b) {
            best = Some(weights);
        }
    };
    let n = tagged.len();
    // ordered k-tuples of distinct indices (k ≤ 2 in sp(4), but stay general)
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(cur) = stack.pop() {
        if cur.len() == k {
            choose(&cur);
            continue;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                let mut next = cur.clone();
                next.push(i);
                stack.push(next);
            }
        }
    }
    WeightConfiguration {
        rank: k,
        weights: best.expect("some basis of the span consists of weights"),
    }
}

/// Eigenvalues `±c₁, ±c₂` are regular when `c₁, c₂ ≠ 0` and `c₁ ≠ ±c₂`.
fn is_regular(eigs: &[Rational]) -> bool {
    let mut abs: Vec<Rational> = eigs.iter().map(Signed::abs).collect();
    abs.sort();
    !abs[0].is_zero() && abs[0] != abs[2]
}

/// Conjugation invariants of a solvable subalgebra with rational spectra.
pub fn signature(s: &Subalgebra) -> Result<InvariantSignature> {
    let basis = s.basis();
    let m = basis.len();
    let sc = StructureConstants::of_basis(&basis)?;
    if !sc.is_solvable() {
        return Err(Error::NotSolvable);
    }
    let vw = v_weights(&basis)?;
    let derived = sc.derived();
    let mut tagged: Vec<(WeightModule, Vec<Rational>)> =
        vw.iter().map(|w| (WeightModule::Defining, w.clone())).collect();
    if derived.dim() > 0 {
        let ops: Vec<DMat> = (0..m)
            .map(|i| restrict_operator(&sc.ad(&unit(m, i)), derived.basis()).ok_or(Error::NotSolvable))
            .collect::<Result<_>>()?;
        tagged.extend(rep_weights(&ops)?.into_iter().map(|w| (WeightModule::Adjoint, w)));
    }
    let weights = canonical_weights(&tagged, m);

    // nilpotent elements: common kernel of the defining weights
    let nil_coords = if m == 0 { vec![] } else { DMat::from_rows(&vw).kernel() };
    let nil: Vec<Mat4> = nil_coords.iter().map(|c| combine(&basis, c)).collect();
    let nilpotent_rank_strata = match nil.len() {
        0 => NilpotentStrata::None,
        1 => NilpotentStrata::Line { rank: nil[0].rank() },
        2 => {
            let p = pencil_rank_strata(&nil[0], &nil[1])?;
            let mut exceptional: Vec<(usize, usize)> = p
                .exceptional
                .iter()
                .map(|(tag, r)| match tag {
                    LineTag::Conjugates(poly) => (*r, poly.degree().unwrap_or(0)),
                    _ => (*r, 1),
                })
                .collect();
            exceptional.sort();
            NilpotentStrata::Pencil {
                generic: p.generic_rank,
                exceptional,
            }
        }
        _ => NilpotentStrata::Generic {
            rank: generic_rank(&nil),
        },
    };
    let derived_basis: Vec<Mat4> = derived.basis().iter().map(|c| combine(&basis, c)).collect();

    let v_rank = VecSpace::span(m, &vw).dim();
    let semisimple_content = match v_rank {
        0 => SemisimpleContent::AllNilpotent,
        1 => {
            let i = (0..m)
                .find(|&i| vw.iter().any(|w| !w[i].is_zero()))
                .expect("nonzero weight");
            let eigs: Vec<Rational> = vw.iter().map(|w| w[i].clone()).collect();
            if s.space().contains(&jordan_decompose(&basis[i]).semisimple) {
                if is_regular(&eigs) {
                    SemisimpleContent::HasRegularSs
                } else {
                    SemisimpleContent::HasNonregularSsOnly
                }
            } else {
                SemisimpleContent::MixedOnly
            }
        }
        _ => {
            // distinct eigenvalues make the element semisimple
            let c = grid_points(m, -3, 3)
                .find(|c| is_regular(&vw.iter().map(|w| dot(w, c)).collect::<Vec<_>>()))
                .expect("two independent weights admit a regular point on the grid");
            let cent = sc.centralizer(&VecSpace::span(m, &[c]));
            if cent.dim() == 2 {
                SemisimpleContent::HasCartan
            } else {
                SemisimpleContent::HasRegularSs
            }
        }
    };

    Ok(InvariantSignature {
        dim: m,
        derived_dims: sc.derived_dims(),
        lower_central_dims: sc.lower_central_dims(),
        is_abelian: sc.is_abelian(),
        center_dim: sc.centralizer(&sc.full()).dim(),
        contains_invertible: vw.iter().all(|w| w.iter().any(|x| !x.is_zero())),
        nil_dim: nil.len(),
        nilpotent_rank_strata,
        derived_generic_rank: generic_rank(&derived_basis),
        weights,
        semisimple_content,
    })
}

/// Signature of the span of `basis` (which must be a subalgebra).
pub fn signature_of_basis(basis: &[Mat4]) -> Result<InvariantSignature> {
    signature(&Subalgebra::from_basis(basis)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sp4::{conjugate, t_int, x, NamedConjugator, Recipe, Root};
    use proptest::prelude::*;

    fn sig(b: &[Mat4]) -> InvariantSignature {
        signature_of_basis(b).unwrap()
    }

    #[test]
    fn small_examples() {
        let s = sig(&[t_int(1, 1), x(Root::Beta)]);
        assert!(s.is_abelian);
        assert_eq!(s.semisimple_content, SemisimpleContent::HasNonregularSsOnly);
        let s = sig(&[x(Root::Alpha), x(Root::AlphaPlus2Beta)]);
        assert_eq!(
            s.nilpotent_rank_strata,
            NilpotentStrata::Pencil {
                generic: 2,
                exceptional: vec![(1, 1), (1, 1)]
            }
        );
        assert_eq!(s.semisimple_content, SemisimpleContent::AllNilpotent);
        let s = sig(&[x(Root::Alpha), x(Root::AlphaPlusBeta)]);
        assert_eq!(
            s.nilpotent_rank_strata,
            NilpotentStrata::Pencil {
                generic: 2,
                exceptional: vec![(1, 1)]
            }
        );
        let s = sig(&[t_int(1, 0), t_int(0, 1)]);
        assert_eq!(s.semisimple_content, SemisimpleContent::HasCartan);
        assert!(s.contains_invertible);
        let s = sig(&[t_int(2, 1)]);
        assert_eq!(s.semisimple_content, SemisimpleContent::HasRegularSs);
        let s = sig(&[&t_int(1, 0) + &x(Root::Alpha)]);
        assert_eq!(s.semisimple_content, SemisimpleContent::MixedOnly);
        assert_eq!(s.nilpotent_rank_strata, NilpotentStrata::None);
        let s = sig(&[
            t_int(2, 1),
            x(Root::Alpha),
            x(Root::AlphaPlusBeta),
            x(Root::AlphaPlus2Beta),
        ]);
        assert_eq!(s.semisimple_content, SemisimpleContent::HasRegularSs);
        assert_eq!(s.nil_dim, 3);
    }

    #[test]
    fn differing_fields_names_witnesses() {
        let a = sig(&[x(Root::Alpha), x(Root::AlphaPlus2Beta)]);
        let b = sig(&[x(Root::Alpha), x(Root::AlphaPlusBeta)]);
        assert_eq!(a.differing_fields(&b), vec!["nilpotent_rank_strata"]);
        assert!(a.differing_fields(&a).is_empty());
        assert!(a.field("nilpotent_rank_strata").is_some());
    }

    #[test]
    fn weights_are_basis_independent() {
        let s1 = sig(&[t_int(1, 0), t_int(0, 1), x(Root::Beta)]);
        let s2 = sig(&[
            &t_int(1, 0) + &t_int(0, 1).scale(&q(3)),
            t_int(0, 1),
            x(Root::Beta).scale(&q(5)),
        ]);
        assert_eq!(s1, s2);
    }

    proptest! {
        #[test]
        fn invariant_under_conjugation(
            word in prop::collection::vec(prop::sample::select(vec!["W", "A", "J", "AJ", "WA", "shear:alpha:2", "shear:beta:-1", "shear:alpha+beta:1/2", "shear:alpha+2beta:3"]), 1..4),
            pick in 0usize..6,
        ) {
            let seeds: Vec<Vec<Mat4>> = vec![
                vec![t_int(1, 1), x(Root::Beta)],
                vec![t_int(2, 1), x(Root::Alpha), x(Root::AlphaPlusBeta)],
                vec![&t_int(1, 0) + &x(Root::Alpha), x(Root::AlphaPlusBeta), x(Root::AlphaPlus2Beta)],
                vec![x(Root::Beta), x(Root::AlphaPlusBeta), x(Root::AlphaPlus2Beta)],
                vec![t_int(1, 0), t_int(0, 1), x(Root::Alpha)],
                vec![x(Root::Alpha), x(Root::AlphaPlus2Beta)],
            ];
            let g = Recipe(word.iter().map(|w| NamedConjugator::parse(w).unwrap()).collect()).matrix();
            let moved: Vec<Mat4> = seeds[pick].iter().map(|m| conjugate(&g, m).unwrap()).collect();
            prop_assert_eq!(sig(&seeds[pick]), sig(&moved));
        }
    }
}
