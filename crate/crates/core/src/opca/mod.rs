//! Order partial applicative structures.
//!
//! [`FiniteOpca`] is an explicit table over at most 64 elements; [`CtModel`]
//! is the term model of closed CL terms ordered by head reduction. Both
//! implement [`Applicative`], which is all the generic realizer checks need.

mod builtin;
mod ct;
mod elemset;
mod finite;
mod phi;
mod poly;
mod realizers;

use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

pub use builtin::{builtin, builtin_names, load_opca};
pub use ct::{ct_model, CtModel};
pub use elemset::ElemSet;
pub use finite::{parse_sets, validate_opca, Elem, FiniteOpca, MonotonicityViolation, OpcaError};
pub use phi::Phi;
pub use poly::PolyExpr;
pub use realizers::{
    check_completeness, check_phi_closure, realizer_object, realizes_on_probe, CompletenessReport,
};

/// A downward closed set of elements of a finite structure.
pub type Downset = ElemSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `a ≤ a'`, `b ≤ b'`, `a'b'↓` imply `ab↓` and `ab ≤ a'b'`.
    Standard,
    /// Only the left argument is monotone.
    Lazy,
}

/// The interface shared by finite and symbolic structures.
pub trait Applicative {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn app(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn mode(&self) -> Mode;

    /// Left-associated application `a b1 ... bn`, undefined as soon as one step is.
    fn app_all(&self, a: &Self::Elem, args: &[Self::Elem]) -> Option<Self::Elem> {
        let mut acc = a.clone();
        for b in args {
            acc = self.app(&acc, b)?;
        }
        Some(acc)
    }
}
