use super::{Applicative, Mode};
use crate::reduction::chain_reaches;
use crate::terms::Term;

/// Closed CL terms under juxtaposition, ordered by the head chain.
///
/// `M ≤ N` iff `N` is on the head-reduction chain of `M` within `fuel`
/// steps. Application is total; only the lazy law holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CtModel {
    pub fuel: usize,
}

pub fn ct_model(fuel: usize) -> CtModel {
    assert!(fuel > 0, "fuel must be positive");
    CtModel { fuel }
}

impl Applicative for CtModel {
    type Elem = Term;

    fn le(&self, a: &Term, b: &Term) -> bool {
        chain_reaches(a, b, self.fuel)
    }

    fn app(&self, a: &Term, b: &Term) -> Option<Term> {
        Some(Term::app(a.clone(), b.clone()))
    }

    fn mode(&self) -> Mode {
        Mode::Lazy
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opca::{realizes_on_probe, PolyExpr};
    use crate::terms::{parse_term, s_combinator};

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn order_is_head_reduction() {
        let ct = ct_model(100);
        assert!(ct.le(&p("k A B"), &p("A")));
        assert!(ct.le(&p("w k"), &p("w k")));
        assert!(!ct.le(&p("A"), &p("k A B")));
        assert_eq!(ct.app(&p("w"), &p("w")), Some(p("w w")));
    }

    #[test]
    fn basis_realizes_k_and_s_on_probe() {
        let ct = ct_model(100);
        let probe = vec![p("A"), p("B"), p("k"), p("w k")];
        assert!(realizes_on_probe(&ct, &Term::k(), &PolyExpr::k(), &probe));
        assert!(realizes_on_probe(&ct, &s_combinator(), &PolyExpr::s(), &probe));
        assert!(!realizes_on_probe(&ct, &Term::w(), &PolyExpr::k(), &probe));
    }
}
