//! Finite reduced groups with action, their derived actions and pentactions.
//!
//! Objects are finite groups acting on themselves, stored as operation
//! tables over dense element indices. On top of the table layer the crate
//! enumerates pentactions, assembles `PA(A)` with its sum and power, and checks
//! whether `PA(A)` represents every derived action on `A`.

pub mod corpus;
pub mod derived;
pub mod error;
pub mod object;
pub mod pentaction;
pub mod report;
pub mod representability;
pub mod search;
pub mod structure;

pub use error::{Error, Result};
pub use object::{
    check_axioms, is_morphism, make_object, quotient_by_subgroup, quotient_with_projection, restrict_to_subobject,
    subobject_closure, ElementSet, FiniteGwaObject, GwaMorphism, ObjectFile, Table,
};
pub use report::{CheckReport, Violation};
pub use search::{Budget, DEFAULT_BUDGET};
