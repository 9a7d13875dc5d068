//! Isomorphism classes of solvable subalgebras: exact quadratic-field
//! arithmetic, de Graaf and Šnobl–Winternitz classes, explicit isomorphisms
//! and conjugation invariants.

pub mod degraaf;
pub mod iso;
pub mod pencil;
pub mod signature;
pub mod surd;
pub mod sw;
pub mod weights;

pub use degraaf::{identify_degraaf, DeGraafClass, Identified};
pub use iso::{verify_map, AbstractAlgebra, IsoMap};
pub use signature::{signature, signature_of_basis, InvariantSignature, NilpotentStrata, SemisimpleContent};
pub use surd::Surd;
pub use sw::{degraaf_to_sw, lam, normalize_sw_param, SWClass, SwFamily, SwSummand};

use crate::error::Result;
use crate::lie::StructureConstants;

/// The class an explicit isomorphism maps onto.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoTarget {
    /// A de Graaf class, with its defining relations.
    DeGraaf(DeGraafClass),
    /// A Šnobl–Winternitz class, with its defining relations.
    Sw(SWClass),
}

impl IsoTarget {
    /// The target's defining relations as an abstract algebra.
    pub fn algebra(&self) -> AbstractAlgebra {
        match self {
            IsoTarget::DeGraaf(c) => c.algebra(),
            IsoTarget::Sw(c) => c.algebra(),
        }
    }
}

/// True iff `map` (images of the target basis in source coordinates) is a
/// bijection preserving every bracket of the target's defining relations.
pub fn verify_isomorphism(source: &StructureConstants, target: &IsoTarget, map: &IsoMap) -> Result<bool> {
    verify_map(&AbstractAlgebra::from_constants(source), &target.algebra(), map)
}
