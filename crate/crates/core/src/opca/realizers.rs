use serde::Serialize;

use super::{Applicative, Elem, ElemSet, FiniteOpca, Phi, PolyExpr};
use crate::rtripos::app_down;

/// Does `r` realize `f` when every universal quantifier ranges over `probe`?
///
/// `r x1 ... x(n-1)` must be defined for all probe tuples, and `r y⃗` must be
/// defined and below `f(y⃗)` wherever `f(y⃗)` is defined.
pub fn realizes_on_probe<A: Applicative>(a: &A, r: &A::Elem, f: &PolyExpr, probe: &[A::Elem]) -> bool {
    let n = f.arity();
    let mut args = Vec::with_capacity(n);
    go(a, f, probe, &mut args, r.clone())
}

fn go<A: Applicative>(
    a: &A,
    f: &PolyExpr,
    probe: &[A::Elem],
    args: &mut Vec<A::Elem>,
    partial: A::Elem,
) -> bool {
    let n = f.arity();
    for x in probe {
        args.push(x.clone());
        let next = a.app(&partial, x);
        let ok = if args.len() == n {
            match f.eval(a, args) {
                None => true,
                Some(target) => next.is_some_and(|v| a.le(&v, &target)),
            }
        } else {
            match next {
                None => false,
                Some(v) => go(a, f, probe, args, v),
            }
        };
        args.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// `⟦f⟧` over the whole carrier; always a downset.
pub fn realizer_object(a: &FiniteOpca, f: &PolyExpr) -> ElemSet {
    let probe: Vec<Elem> = a.elems().collect();
    ElemSet::from_elems(a.elems().filter(|r| realizes_on_probe(a, r, f, &probe)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub k: ElemSet,
    pub s: ElemSet,
    pub k_in_phi: bool,
    pub s_in_phi: bool,
    /// `∅ ∈ φ`: everything is accepted, so completeness says nothing.
    pub degenerate: bool,
    pub complete: bool,
}

/// Combinatory completeness: `⟦k⟧ ∈ φ` and `⟦s⟧ ∈ φ`.
pub fn check_completeness(a: &FiniteOpca, phi: &Phi) -> CompletenessReport {
    let k = realizer_object(a, &PolyExpr::k());
    let s = realizer_object(a, &PolyExpr::s());
    let k_in_phi = phi.contains(k);
    let s_in_phi = phi.contains(s);
    CompletenessReport {
        k,
        s,
        k_in_phi,
        s_in_phi,
        degenerate: phi.is_degenerate(),
        complete: k_in_phi && s_in_phi,
    }
}

/// `U, V ∈ φ` and `UV` defined imply `UV ∈ φ`; returns the first failing pair.
pub fn check_phi_closure(a: &FiniteOpca, phi: &Phi) -> Result<(), (ElemSet, ElemSet)> {
    let members: Vec<ElemSet> = a.downsets().into_iter().filter(|&u| phi.contains(u)).collect();
    for &u in &members {
        for &v in &members {
            if let Ok(uv) = app_down(a, u, v) {
                if !phi.contains(uv) {
                    return Err((u, v));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opca::builtin;

    #[test]
    fn s2_projections_are_everything() {
        let a = builtin("s2").unwrap();
        assert_eq!(realizer_object(&a, &PolyExpr::first()), a.carrier());
        assert_eq!(realizer_object(&a, &PolyExpr::second()), a.carrier());
    }

    #[test]
    fn one_point_realizes_everything() {
        let a = builtin("one").unwrap();
        for f in [PolyExpr::k(), PolyExpr::s(), PolyExpr::pair()] {
            assert_eq!(realizer_object(&a, &f), a.carrier());
        }
        assert!(check_completeness(&a, &Phi::Inhabited).complete);
    }

    #[test]
    fn s2_completeness_and_degenerate_flag() {
        let a = builtin("s2").unwrap();
        let r = check_completeness(&a, &Phi::Inhabited);
        assert!(r.complete && !r.degenerate);
        assert_eq!((r.k, r.s), (a.carrier(), a.carrier()));
        let r = check_completeness(&a, &Phi::Principal(vec![ElemSet::EMPTY]));
        assert!(r.degenerate && r.complete);
    }

    #[test]
    fn realizer_objects_are_downsets() {
        for name in crate::opca::builtin_names() {
            let a = builtin(name).unwrap();
            for f in [PolyExpr::k(), PolyExpr::s(), PolyExpr::pair(), PolyExpr::left(), PolyExpr::second()] {
                assert!(a.is_downset(realizer_object(&a, &f)), "{name} {f}");
            }
        }
    }
}
