//! Subspaces of the 16-dimensional space of 4×4 matrices.

use serde::{Deserialize, Serialize};

use super::dense::VecSpace;
use super::mat4::Mat4;
use super::rational::Rational;

/// A linear span of 4×4 matrices with its unique reduced-echelon basis
/// (row-major flattening order), so equality of subspaces is equality of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    space: VecSpace,
}

/// Echelonized span of the given matrices.
pub fn echelon_span(vectors: &[Mat4]) -> Subspace {
    Subspace::span(vectors)
}

impl Subspace {
    /// Echelonized span of the given matrices.
    pub fn span(vectors: &[Mat4]) -> Self {
        let flat: Vec<Vec<Rational>> = vectors.iter().map(Mat4::flatten).collect();
        Subspace {
            space: VecSpace::span(16, &flat),
        }
    }

    /// The zero subspace.
    pub fn zero() -> Self {
        Subspace {
            space: VecSpace::zero(16),
        }
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Echelon basis as matrices.
    pub fn basis(&self) -> Vec<Mat4> {
        self.space.basis().iter().map(|v| Mat4::from_flat(v)).collect()
    }

    /// Underlying row space in ℚ¹⁶.
    pub fn as_vec_space(&self) -> &VecSpace {
        &self.space
    }

    /// Membership test.
    pub fn contains(&self, m: &Mat4) -> bool {
        self.space.contains(&m.flatten())
    }

    /// Coordinates in the echelon basis.
    pub fn coords(&self, m: &Mat4) -> Option<Vec<Rational>> {
        self.space.coords(&m.flatten())
    }

    /// Linear combination of the echelon basis.
    pub fn combine(&self, coeffs: &[Rational]) -> Mat4 {
        let mut v = vec![Rational::default(); 16];
        for (c, b) in coeffs.iter().zip(self.space.basis()) {
            for (x, y) in v.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        Mat4::from_flat(&v)
    }

    /// Sum of subspaces.
    pub fn sum(&self, o: &Subspace) -> Subspace {
        Subspace {
            space: self.space.sum(&o.space),
        }
    }

    /// Intersection of subspaces.
    pub fn intersect(&self, o: &Subspace) -> Subspace {
        Subspace {
            space: self.space.intersect(&o.space),
        }
    }

    /// True if `self ⊆ o`.
    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.space.is_subspace_of(&o.space)
    }
}

/// JSON form `{ "basis": [Mat4, ...] }`.
#[derive(Serialize, Deserialize)]
struct SubspaceJson {
    basis: Vec<Mat4>,
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SubspaceJson { basis: self.basis() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Subspace::span(&SubspaceJson::deserialize(d)?.basis))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::q;

    #[test]
    fn echelon_span_examples() {
        let xa = Mat4::unit(2, 4);
        let xa2b = Mat4::unit(1, 3);
        let s = echelon_span(&[xa.clone(), xa.scale(&q(2))]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), vec![xa.clone()]);
        assert_eq!(echelon_span(&[xa.clone(), xa2b.clone()]).dim(), 2);
        assert_eq!(echelon_span(&[]).dim(), 0);
        // Canonical: order and scaling of generators do not matter.
        assert_eq!(
            echelon_span(&[xa.clone(), xa2b.clone()]),
            echelon_span(&[&xa2b.scale(&q(3)) + &xa, xa2b.clone()])
        );
    }

    #[test]
    fn coordinates_round_trip() {
        let s = echelon_span(&[Mat4::unit(1, 3), Mat4::unit(2, 4)]);
        let m = &Mat4::unit(1, 3).scale(&q(5)) - &Mat4::unit(2, 4);
        let c = s.coords(&m).unwrap();
        assert_eq!(s.combine(&c), m);
        assert!(s.coords(&Mat4::unit(1, 1)).is_none());
    }
}
