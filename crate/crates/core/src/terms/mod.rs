//! Combinatory and λ-terms.
//!
//! A [`Term`] is a binary tree whose leaves are the basic combinators
//! `b c k w`, variables, or adjoined constants. Lambda nodes are allowed so
//! that λ-terms can be written down and compiled away with
//! [`compile_lambda`]; every reduction and model-level operation expects a
//! CL-pure term (no lambda nodes).

mod abstraction;
mod parse;
mod print;
mod random;
mod subst;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

pub use abstraction::{bracket_abstract, compile_lambda, s_combinator, CompileOptions};
pub use parse::{parse_term, ParseError};
pub use random::{random_closed, random_term};
pub use subst::{fresh_variable, substitute};

use thiserror::Error;

/// Identifier of a variable or an adjoined constant.
pub type Symbol = Arc<str>;

/// Set of variable symbols, ordered for deterministic output.
pub type VarSet = BTreeSet<Symbol>;

/// The Curry basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Comb {
    B,
    C,
    K,
    W,
}

impl Comb {
    pub const ALL: [Comb; 4] = [Comb::B, Comb::C, Comb::K, Comb::W];

    /// Number of arguments consumed by the head rule.
    pub fn arity(self) -> usize {
        match self {
            Comb::B | Comb::C => 3,
            Comb::K | Comb::W => 2,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Comb::B => 'b',
            Comb::C => 'c',
            Comb::K => 'k',
            Comb::W => 'w',
        }
    }

    /// Leaf tag used by the K1 code bijection.
    pub fn tag(self) -> u8 {
        match self {
            Comb::B => 0,
            Comb::C => 1,
            Comb::K => 2,
            Comb::W => 3,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Comb> {
        Comb::ALL.get(tag as usize).copied()
    }
}

// The manual `PartialEq` below is structural, so the derived `Hash` agrees with it.
#[allow(clippy::derived_hash_with_manual_eq)]
#[derive(Debug, Clone, Eq, Hash)]
pub enum Term {
    Comb(Comb),
    Var(Symbol),
    /// Inert leaf; never reduces and is never abstracted over.
    Const(Symbol),
    App(Arc<Term>, Arc<Term>),
    Lam(Symbol, Arc<Term>),
}

// Structural equality with a pointer shortcut for shared subtrees.
impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        match (self, other) {
            (Term::Comb(a), Term::Comb(b)) => a == b,
            (Term::Var(a), Term::Var(b)) | (Term::Const(a), Term::Const(b)) => a == b,
            (Term::App(f, a), Term::App(g, b)) => {
                (Arc::ptr_eq(f, g) || f == g) && (Arc::ptr_eq(a, b) || a == b)
            }
            (Term::Lam(x, m), Term::Lam(y, n)) => x == y && (Arc::ptr_eq(m, n) || m == n),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("term contains a lambda node; bracket abstraction needs a CL-pure term")]
    NotClPure,
    #[error("unbound variable `{0}`")]
    UnboundVariable(Symbol),
}

impl Term {
    pub fn comb(c: Comb) -> Term {
        Term::Comb(c)
    }

    pub fn var(name: &str) -> Term {
        Term::Var(Arc::from(name))
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(Arc::from(name))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    pub fn lam(x: &str, body: Term) -> Term {
        Term::Lam(Arc::from(x), Arc::new(body))
    }

    /// Left-associated application `head a1 a2 ... an`.
    pub fn apply_all<I: IntoIterator<Item = Term>>(head: Term, args: I) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    pub fn b() -> Term {
        Term::Comb(Comb::B)
    }
    pub fn c() -> Term {
        Term::Comb(Comb::C)
    }
    pub fn k() -> Term {
        Term::Comb(Comb::K)
    }
    pub fn w() -> Term {
        Term::Comb(Comb::W)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Term::Comb(_) | Term::Var(_) | Term::Const(_))
    }

    pub fn is_cl_pure(&self) -> bool {
        match self {
            Term::Lam(..) => false,
            Term::App(f, a) => f.is_cl_pure() && a.is_cl_pure(),
            _ => true,
        }
    }

    /// Closed CL term over the basic combinators only (no variables, no constants).
    pub fn is_basic_closed(&self) -> bool {
        match self {
            Term::Comb(_) => true,
            Term::App(f, a) => f.is_basic_closed() && a.is_basic_closed(),
            _ => false,
        }
    }

    pub fn free_vars(&self) -> VarSet {
        let mut out = VarSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Symbol>, out: &mut VarSet) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            Term::Lam(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::Comb(_) | Term::Const(_) => {}
        }
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => &**y == x,
            Term::App(f, a) => f.occurs_free(x) || a.occurs_free(x),
            Term::Lam(y, body) => &**y != x && body.occurs_free(x),
            Term::Comb(_) | Term::Const(_) => false,
        }
    }

    /// Every variable name mentioned anywhere, bound or free.
    pub fn all_vars(&self) -> VarSet {
        let mut out = VarSet::new();
        self.collect_all(&mut out);
        out
    }

    fn collect_all(&self, out: &mut VarSet) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::App(f, a) => {
                f.collect_all(out);
                a.collect_all(out);
            }
            Term::Lam(x, body) => {
                out.insert(x.clone());
                body.collect_all(out);
            }
            Term::Comb(_) | Term::Const(_) => {}
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Lam(_, body) => 1 + body.size(),
            _ => 1,
        }
    }

    /// Height of the application tree; leaves have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::App(f, a) => 1 + f.depth().max(a.depth()),
            Term::Lam(_, body) => 1 + body.depth(),
            _ => 0,
        }
    }

    /// Splits `h a1 ... an` into the head and its arguments.
    pub fn spine(&self) -> (&Term, Vec<&Arc<Term>>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }
}

impl fmt::Display for Comb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_variables_follow_binders() {
        let t = parse_term("\\x. x y (\\y. y z)").unwrap();
        let fv: Vec<_> = t.free_vars().iter().map(|s| s.to_string()).collect();
        assert_eq!(fv, vec!["y", "z"]);
    }

    #[test]
    fn cl_purity() {
        assert!(parse_term("b x (y z)").unwrap().is_cl_pure());
        assert!(!parse_term("k (\\x. x)").unwrap().is_cl_pure());
    }

    #[test]
    fn spine_of_left_nested_application() {
        let t = parse_term("k a b d").unwrap();
        let (head, args) = t.spine();
        assert_eq!(head, &Term::k());
        assert_eq!(args.len(), 3);
        assert_eq!(*args[2].as_ref(), Term::var("d"));
    }
}
