use serde::Serialize;

use super::{bullet, cc, continuation, lam_bullet, push};
use crate::reduction::{chain_position, reduce_whnf_traced};
use crate::terms::{substitute, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MachineLaw {
    /// `(M•N) π ↠ M (N·π)`
    Bullet,
    /// `(λ•x.M) (N·π) ↠ M[N/x] π`
    Abstraction,
    /// `k_π (M·ρ) ↠ M π`
    Continuation,
    /// `cc (M·π) ↠ M (k_π·π)`
    CallCc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: MachineLaw,
    pub lhs: Term,
    pub rhs: Term,
    pub holds: bool,
    pub steps: Option<usize>,
    /// The head chain from `lhs` up to `rhs`, when requested and reached.
    pub trace: Option<Vec<Term>>,
}

/// Terms and stacks are CL terms; `t ⋆ π` is the juxtaposition `t π` and
/// `q ≻ p` means the head chain of `q` reaches `p` within fuel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyntacticAks {
    pub fuel: usize,
}

impl SyntacticAks {
    pub fn new(fuel: usize) -> SyntacticAks {
        SyntacticAks { fuel }
    }

    pub fn process(t: &Term, pi: &Term) -> Term {
        Term::app(t.clone(), pi.clone())
    }

    pub fn succ(&self, q: (&Term, &Term), p: (&Term, &Term)) -> bool {
        chain_position(&Self::process(q.0, q.1), &Self::process(p.0, p.1), self.fuel).is_some()
    }

    /// The two sides of a law. `x` is only used by [`MachineLaw::Abstraction`],
    /// where `m` is the body; `n` plays the role of `ρ` for continuations.
    pub fn instance(law: MachineLaw, x: &str, m: &Term, n: &Term, pi: &Term) -> (Term, Term) {
        match law {
            MachineLaw::Bullet => (
                Term::app(bullet(m.clone(), n.clone()), pi.clone()),
                Term::app(m.clone(), push(n.clone(), pi.clone())),
            ),
            MachineLaw::Abstraction => (
                Term::app(lam_bullet(x, m), push(n.clone(), pi.clone())),
                Term::app(substitute(m, x, n), pi.clone()),
            ),
            MachineLaw::Continuation => (
                Term::app(continuation(pi.clone()), push(m.clone(), n.clone())),
                Term::app(m.clone(), pi.clone()),
            ),
            MachineLaw::CallCc => (
                Term::app(cc(), push(m.clone(), pi.clone())),
                Term::app(m.clone(), push(continuation(pi.clone()), pi.clone())),
            ),
        }
    }

    pub fn check(&self, law: MachineLaw, x: &str, m: &Term, n: &Term, pi: &Term, traced: bool) -> LawCheck {
        let (lhs, rhs) = Self::instance(law, x, m, n, pi);
        let steps = chain_position(&lhs, &rhs, self.fuel);
        let trace = match (traced, steps) {
            (true, Some(k)) => reduce_whnf_traced(&lhs, k)
                .trace
                .map(|mut t| {
                    t.truncate(k + 1);
                    t
                }),
            _ => None,
        };
        LawCheck {
            law,
            lhs,
            rhs,
            holds: steps.is_some(),
            steps,
            trace,
        }
    }
}

/// Generated by processes and closed under fuel-bounded `≻`-predecessors,
/// so saturated by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntacticPole {
    pub generators: Vec<(Term, Term)>,
    pub fuel: usize,
}

impl SyntacticPole {
    pub fn contains(&self, t: &Term, pi: &Term) -> bool {
        let q = SyntacticAks::process(t, pi);
        self.generators
            .iter()
            .any(|(g, rho)| chain_position(&q, &SyntacticAks::process(g, rho), self.fuel).is_some())
    }

    /// `S^⊥` restricted to a probe of terms.
    pub fn orthogonal<'a>(&self, stacks: &[Term], probe: &'a [Term]) -> Vec<&'a Term> {
        probe
            .iter()
            .filter(|t| stacks.iter().all(|pi| self.contains(t, pi)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn laws_on_symbolic_arguments() {
        let aks = SyntacticAks::new(10_000);
        let (m, n, pi) = (p("M"), p("N"), p("P"));
        for law in [
            MachineLaw::Bullet,
            MachineLaw::Continuation,
            MachineLaw::CallCc,
        ] {
            let r = aks.check(law, "x", &m, &n, &pi, true);
            assert!(r.holds, "{law:?}");
            let trace = r.trace.unwrap();
            assert_eq!(trace.first(), Some(&r.lhs));
            assert_eq!(trace.last(), Some(&r.rhs));
        }
        let body = p("x M x");
        assert!(aks.check(MachineLaw::Abstraction, "x", &body, &n, &pi, false).holds);
    }

    #[test]
    fn pole_contains_predecessors() {
        let aks = SyntacticAks::new(1000);
        let pole = SyntacticPole {
            generators: vec![(p("M"), p("P"))],
            fuel: 1000,
        };
        let (lhs, _) = SyntacticAks::instance(MachineLaw::Continuation, "x", &p("M"), &p("N"), &p("P"));
        let Term::App(t, pi) = &lhs else { unreachable!() };
        assert!(pole.contains(t, pi));
        assert!(aks.succ((t, pi), (&p("M"), &p("P"))));
        assert!(!pole.contains(&p("N"), &p("P")));
        let probe = [p("M"), p("N"), p("k M")];
        assert_eq!(pole.orthogonal(&[p("P")], &probe).len(), 1);
    }
}
