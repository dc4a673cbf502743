//! Krivine-style classical realizability.
//!
//! Krivine's machine is implemented in combinatory logic with
//! `M·N = p M N`, `M•N = b M (p N)`, `λ•x.M = g ĥx(M)`, continuations
//! `k_π = κ π` and the control operator `cc`. An abstract Krivine structure is
//! either induced by a finite structure through a partial interpretation of
//! the basic combinators, or is syntactic (CL terms under head reduction).

mod finite;
mod syntactic;

use thiserror::Error;

pub use finite::{
    check_boolean_laws, check_cr_vs_intuitionistic, cr_entails, cr_forall, cr_implies, cr_valid,
    find_interpretation, induce_aks, interpret, neg_translate, orthogonal, orthogonal_stacks,
    validate_interpretation, BooleanLaws, CrEntailment, CrVsRr, FiniteAks, Interpretation,
    InterpretationViolation, MachineViolation, Pole, StackPredicate,
};
pub use syntactic::{LawCheck, MachineLaw, SyntacticAks, SyntacticPole};

use crate::terms::{bracket_abstract, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicalError {
    #[error("interpretation law fails: {0}")]
    Interpretation(InterpretationViolation),
    #[error("interpretation of {0} lies outside the filter")]
    NotInFilter(String),
    #[error("interpretation of `{0}` is undefined")]
    Undefined(String),
    #[error("{op} is undefined at {args}")]
    Partial { op: String, args: String },
    #[error("no interpretation of b, c, k, w into the filter satisfies the laws")]
    NoInterpretation,
    #[error("stack predicates over {0} and {1} indices")]
    IndexMismatch(usize, usize),
    #[error("pole line {line}: {message}")]
    PoleSyntax { line: usize, message: String },
}

/// `M·N = p M N`
pub fn push(m: Term, n: Term) -> Term {
    Term::apply_all(Term::p(), [m, n])
}

/// `M•N = b M (p N)`
pub fn bullet(m: Term, n: Term) -> Term {
    Term::apply_all(Term::b(), [m, Term::app(Term::p(), n)])
}

/// `λ•x.M = g ĥx(M)`
pub fn lam_bullet(x: &str, m: &Term) -> Term {
    Term::app(Term::g(), bracket_abstract(x, m).expect("CL-pure body"))
}

/// `κ = ĥx(λ•y. k (y x))`.
pub fn kappa() -> Term {
    let body = Term::app(Term::k(), Term::app(Term::var("y"), Term::var("x")));
    bracket_abstract("x", &lam_bullet("y", &body)).expect("CL-pure body")
}

/// `k_π = κ π`
pub fn continuation(pi: Term) -> Term {
    Term::app(kappa(), pi)
}

/// `cc = λ•x. ĥy(x (k_y · y))`
pub fn cc() -> Term {
    let y = Term::var("y");
    let body = Term::app(Term::var("x"), push(continuation(y.clone()), y));
    lam_bullet("x", &bracket_abstract("y", &body).expect("CL-pure body"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_terms_are_closed() {
        assert!(kappa().is_basic_closed());
        assert!(cc().is_basic_closed());
    }
}
