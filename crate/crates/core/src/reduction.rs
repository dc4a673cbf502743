//! Weak head reduction for CL terms.
//!
//! The head rules are
//!
//! ```text
//! b x y z -> x (y z)    c x y z -> x z y    k x y -> x    w x y -> x y y
//! ```
//!
//! applied at the head of the spine; `M -> M'` implies `M N -> M' N`.
//! Nothing else reduces: variables, constants and lambda nodes are inert.

use std::sync::Arc;

use serde::Serialize;

use crate::terms::{Comb, Term};

/// Fuel used when the caller does not choose one.
pub const DEFAULT_FUEL: usize = 10_000;

/// One head step, or `None` if the term is head-normal.
pub fn whnf_step(m: &Term) -> Option<Term> {
    let (head, args) = m.spine();
    let Term::Comb(c) = head else {
        return None;
    };
    let n = c.arity();
    if args.len() < n {
        return None;
    }
    let arg = |i: usize| args[i].as_ref().clone();
    let contracted = match c {
        Comb::B => Term::App(Arc::new(arg(0)), Arc::new(Term::App(args[1].clone(), args[2].clone()))),
        Comb::C => Term::App(
            Arc::new(Term::App(args[0].clone(), args[2].clone())),
            args[1].clone(),
        ),
        Comb::K => arg(0),
        Comb::W => Term::App(
            Arc::new(Term::App(args[0].clone(), args[1].clone())),
            args[1].clone(),
        ),
    };
    Some(
        args[n..]
            .iter()
            .fold(contracted, |acc, a| Term::App(Arc::new(acc), Arc::clone(a))),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionStatus {
    HeadNormal,
    FuelExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub status: ReductionStatus,
    pub final_term: Term,
    pub steps: usize,
    /// Every term on the chain, starting with the input, when tracing was requested.
    pub trace: Option<Vec<Term>>,
}

/// Iterates [`whnf_step`] at most `fuel` times.
pub fn reduce_whnf(m: &Term, fuel: usize) -> ReductionOutcome {
    run(m, fuel, false)
}

/// Like [`reduce_whnf`] but records the chain.
pub fn reduce_whnf_traced(m: &Term, fuel: usize) -> ReductionOutcome {
    run(m, fuel, true)
}

fn run(m: &Term, fuel: usize, trace: bool) -> ReductionOutcome {
    let mut cur = m.clone();
    let mut steps = 0;
    let mut chain = trace.then(|| vec![cur.clone()]);
    loop {
        match whnf_step(&cur) {
            None => {
                return ReductionOutcome {
                    status: ReductionStatus::HeadNormal,
                    final_term: cur,
                    steps,
                    trace: chain,
                }
            }
            Some(_) if steps == fuel => {
                return ReductionOutcome {
                    status: ReductionStatus::FuelExhausted,
                    final_term: cur,
                    steps,
                    trace: chain,
                }
            }
            Some(next) => {
                steps += 1;
                if let Some(c) = chain.as_mut() {
                    c.push(next.clone());
                }
                cur = next;
            }
        }
    }
}

/// True iff `n` occurs on the head chain of `m` within `fuel` steps.
pub fn chain_reaches(m: &Term, n: &Term, fuel: usize) -> bool {
    chain_position(m, n, fuel).is_some()
}

/// Index of the first occurrence of `n` on the head chain of `m`.
pub fn chain_position(m: &Term, n: &Term, fuel: usize) -> Option<usize> {
    let mut cur = m.clone();
    for step in 0..=fuel {
        if &cur == n {
            return Some(step);
        }
        if step == fuel {
            break;
        }
        cur = whnf_step(&cur)?;
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalization {
    Normal { term: Term, steps: usize },
    /// The deterministic chain revisited a term; it can never terminate.
    Cycle { steps: usize },
    FuelExhausted,
}

impl Normalization {
    pub fn normal_form(self) -> Option<Term> {
        match self {
            Normalization::Normal { term, .. } => Some(term),
            _ => None,
        }
    }
}

/// Leftmost-outermost normalization: reduce the head to head-normal form,
/// then normalize the arguments left to right. At most `fuel` contractions.
pub fn normalize(m: &Term, fuel: usize) -> Normalization {
    let mut left = fuel;
    match norm(m, &mut left) {
        Ok(term) => Normalization::Normal {
            term,
            steps: fuel - left,
        },
        Err(Stop::Fuel) => Normalization::FuelExhausted,
        Err(Stop::Cycle) => Normalization::Cycle { steps: fuel - left },
    }
}

enum Stop {
    Fuel,
    Cycle,
}

/// Head-reduces with an explicit argument stack (`args` holds the spine
/// arguments, last element first), so each contraction costs O(1). The
/// contraction count and the cycle-check schedule match iterating
/// [`whnf_step`].
fn norm(m: &Term, fuel: &mut usize) -> Result<Term, Stop> {
    let mut head = Arc::new(m.clone());
    let mut args: Vec<Arc<Term>> = Vec::new();
    unwind(&mut head, &mut args);
    // Brent's cycle detection on the head chain.
    let mut saved = (Arc::clone(&head), args.clone());
    let mut power = 1usize;
    let mut lam = 0usize;
    while let Term::Comb(c) = *head {
        if args.len() < c.arity() {
            break;
        }
        if *fuel == 0 {
            return Err(Stop::Fuel);
        }
        *fuel -= 1;
        let x = args.pop().expect("arity checked");
        let y = args.pop().expect("arity checked");
        match c {
            Comb::B => {
                let z = args.pop().expect("arity checked");
                args.push(Arc::new(Term::App(y, z)));
            }
            Comb::C => {
                let z = args.pop().expect("arity checked");
                args.push(y);
                args.push(z);
            }
            Comb::K => {}
            Comb::W => {
                args.push(Arc::clone(&y));
                args.push(y);
            }
        }
        head = x;
        unwind(&mut head, &mut args);
        lam += 1;
        if same_state(&head, &args, &saved) {
            return Err(Stop::Cycle);
        }
        if lam == power {
            saved = (Arc::clone(&head), args.clone());
            power *= 2;
            lam = 0;
        }
    }
    let mut out = (*head).clone();
    while let Some(a) = args.pop() {
        out = Term::app(out, norm(&a, fuel)?);
    }
    Ok(out)
}

fn unwind(head: &mut Arc<Term>, args: &mut Vec<Arc<Term>>) {
    while let Term::App(f, a) = &**head {
        args.push(Arc::clone(a));
        *head = Arc::clone(f);
    }
}

fn same_state(head: &Arc<Term>, args: &[Arc<Term>], saved: &(Arc<Term>, Vec<Arc<Term>>)) -> bool {
    args.len() == saved.1.len()
        && (Arc::ptr_eq(head, &saved.0) || **head == *saved.0)
        && args
            .iter()
            .rev()
            .zip(saved.1.iter().rev())
            .all(|(a, b)| Arc::ptr_eq(a, b) || a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn k_step() {
        assert_eq!(whnf_step(&p("k a b")), Some(p("a")));
    }

    #[test]
    fn www_reproduces_itself() {
        assert_eq!(whnf_step(&p("w w w")), Some(p("w w w")));
    }

    #[test]
    fn variables_are_inert() {
        assert_eq!(whnf_step(&p("x")), None);
        assert_eq!(whnf_step(&p("x (k a b)")), None);
        assert_eq!(whnf_step(&p("k a")), None);
    }

    #[test]
    fn each_rule_once() {
        assert_eq!(whnf_step(&p("b x y z")), Some(p("x (y z)")));
        assert_eq!(whnf_step(&p("c x y z")), Some(p("x z y")));
        assert_eq!(whnf_step(&p("w x y")), Some(p("x y y")));
        assert_eq!(whnf_step(&p("k x y z v")), Some(p("x z v")));
    }

    #[test]
    fn reduce_variable_is_zero_steps() {
        let out = reduce_whnf(&p("x"), 10);
        assert_eq!(out.status, ReductionStatus::HeadNormal);
        assert_eq!(out.steps, 0);
    }

    #[test]
    fn www_exhausts_fuel() {
        let out = reduce_whnf(&p("w w w"), 50);
        assert_eq!(out.status, ReductionStatus::FuelExhausted);
        assert_eq!(out.steps, 50);
    }

    #[test]
    fn push_through_b() {
        // (M•N)π = b M (p N) π  ->  M (p N π)
        let m = p("M");
        let n = p("N");
        let pi = p("P");
        let lhs = Term::apply_all(Term::b(), [m.clone(), Term::app(Term::p(), n.clone()), pi.clone()]);
        let rhs = Term::app(m, Term::apply_all(Term::p(), [n, pi]));
        let out = reduce_whnf_traced(&lhs, 100);
        assert!(out.trace.unwrap().contains(&rhs));
    }

    #[test]
    fn trace_of_k() {
        let out = reduce_whnf_traced(&p("k a b"), 10);
        assert_eq!(out.trace.unwrap(), vec![p("k a b"), p("a")]);
    }

    #[test]
    fn chain_reaches_examples() {
        assert!(chain_reaches(&p("k a b"), &p("a"), 5));
        assert!(chain_reaches(&p("w w w"), &p("w w w"), 0));
        assert!(chain_reaches(&p("c a b c"), &p("a c b"), 5));
        assert!(!chain_reaches(&p("b x y z"), &p("x (y z)"), 0));
        assert!(!chain_reaches(&p("a"), &p("b"), 100));
    }

    #[test]
    fn normalize_reaches_inside_arguments() {
        let out = normalize(&p("x (k a b) (w k y)"), 100);
        assert_eq!(out.normal_form(), Some(p("x a y")));
    }

    #[test]
    fn normalize_detects_loops() {
        assert!(matches!(normalize(&p("w w w"), 1_000), Normalization::Cycle { .. }));
        assert!(matches!(normalize(&p("w w w"), 0), Normalization::FuelExhausted));
    }
}
