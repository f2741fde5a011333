//! Filtrations of a symplectic space, the sets `ζ(V_*)` partitioning the
//! nilpotent forms, the classifier, and the gradings used to describe them.

mod classify;
mod enumerate;
mod filtration;
mod induced;
mod label;
mod membership;
mod witness;

pub use classify::{classify, ef_invariants, Classification, EFInvariants};
pub use enumerate::{rational_filtrations, rational_gradings, standard_grading};
pub use filtration::{Filtration, FiltrationFrame};
pub use induced::{induced_form, zeta_membership, ZetaTester};
pub use label::{admissible_sequences, PieceLabel};
pub use membership::{check_s_good, graded_form, is_nondegenerate, membership, polar_radical, GradedForm, Membership};
pub use witness::{
    stabilizer, stabilizer_subordinate, symplectic_group, verify_witness, witness, witness_recipes, Witness,
    WitnessRecipe,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PiecesError {
    #[error("grading is not s-good for the space")]
    NotSGood,
    #[error("form is not compatible with the filtration")]
    NotCompatible,
    #[error("induced form depends on the choice of lifts")]
    LiftDependent,
    #[error("requires characteristic 2")]
    OddCharacteristic,
    #[error("space is zero")]
    ZeroSpace,
    #[error("A_Q is not nilpotent")]
    NotNilpotent,
    #[error("classification failed: {0}")]
    ClassificationFailed(String),
    #[error("form is not in Q(V)_2 for the grading")]
    NotInQ2,
    #[error("form is already in Q(V)_2^0 for the grading")]
    AlreadyDistinguished,
    #[error("no witness construction applies")]
    ConstructionInapplicable,
    #[error("witness from recipe {0} fails verification")]
    RecipeFailed(&'static str),
    #[error("group order {order} exceeds limit {limit}")]
    SizeLimitExceeded { order: u128, limit: u128 },
    #[error("space does not use the standard Gram matrix")]
    NonStandardSpace,
}
