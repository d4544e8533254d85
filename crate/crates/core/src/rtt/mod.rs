//! The RTT superalgebra: generators, PBW normal forms and the rewriting engine.

mod algebra;
mod checks;
mod dj;
mod element;
mod gens;
mod parse;
mod rules;
mod scale;

pub use algebra::RttAlgebra;
pub use dj::{DjFailure, DjGenerator, DjReport, Half};
pub use checks::{RelationFailure, RelationReport};
pub use element::{AlgebraElement, Monomial, TermDump};
pub use gens::{GenKind, GenSymbol, Layout, Slot};
pub use parse::ElementParseError;
pub use scale::DiagonalScale;
pub use rules::{all_relation_instances, derive_rules, relation_instance, Letter, MissingRule, Quadratic, RelationFamily, RelationInstance, RuleRhs, RuleSet};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RttError {
    #[error(transparent)]
    MissingRule(#[from] MissingRule),
    #[error("rewriting exceeded {0} rule applications")]
    RewriteBudget(usize),
    #[error("scaling factor must be nonzero")]
    ZeroScale,
    #[error("scaling signs must be +1 or -1")]
    BadSign,
}
