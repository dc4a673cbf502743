//! Downset realizability over a finite structure.
//!
//! Truth values are downsets, predicates are [`Family`]s, and `P ⊢ Q` holds
//! when the uniform realizers `⋂ₓ P(x) ⇒ Q(x)` belong to the external filter.
//! Families are compared up to `⊣⊢`, never by equality.

mod algebra;
mod eval;
mod formula;
mod model;
mod schema;

use thiserror::Error;

pub use algebra::{
    app_down, arrow, entails, equivalent, exists_along, forall_along, reindex, Entailment, Family,
    FibreAlgebra,
};
pub use eval::{eval_formula, is_valid, realizers};
pub use formula::{parse_formula, FTerm, Formula};
pub use model::{tuples, Function, Model, Predicate, Sort, CARRIER_SORT};
pub use schema::{random_instances, schema_instance, SchemaData, SchemaKind, INTERSECTION, MCT, UP};

use crate::opca::OpcaError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RtriposError {
    #[error("index sets differ: {0} vs {1}")]
    IndexMismatch(usize, usize),
    #[error("downset application undefined: {left} {right}")]
    UndefinedApplication { left: String, right: String },
    #[error("formula syntax error at byte {offset}: {message}")]
    FormulaSyntax { offset: usize, message: String },
    #[error("model line {line}: {message}")]
    ModelSyntax { line: usize, message: String },
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("`{0}` names elements of several sorts; use it where its sort is determined")]
    AmbiguousName(String),
    #[error("sort mismatch in `{context}`: expected {expected}, found {found}")]
    SortMismatch {
        expected: String,
        found: String,
        context: String,
    },
    #[error("`{name}` takes {expected} argument(s), got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("`{0}` is already defined")]
    Duplicate(String),
    #[error("{name}: {set} is not downward closed")]
    NotDownset { name: String, set: String },
    #[error(transparent)]
    Opca(#[from] OpcaError),
}
