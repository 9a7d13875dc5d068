//! Exact rational linear algebra: scalars, polynomials, 4×4 matrices, small
//! dense matrices and canonical subspaces.

pub mod dense;
pub mod mat4;
pub mod poly;
pub mod rational;
pub mod subspace;

pub use dense::{DMat, VecSpace};
pub use mat4::Mat4;
pub use poly::Poly;
pub use rational::{
    cbrt_exact, cubefree_kernel, parse_rational, parse_rational_list, q, qf, sqrt_exact, squarefree_kernel, Rational,
};
pub use subspace::{echelon_span, Subspace};
