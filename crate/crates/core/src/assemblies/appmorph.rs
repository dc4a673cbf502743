use serde::Serialize;

use super::{Assembly, AsmError};
use crate::opca::{ElemSet, FiniteOpca, Phi};

/// A relation `C ⊆ B×A` from a source `(A, φ)` to a target `(B, χ)`,
/// stored as `related[a] = {b | (b, a) ∈ C}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ApplicativeMorphism {
    pub related: Vec<ElemSet>,
}

impl ApplicativeMorphism {
    /// `C[U] = {b | ∃a∈U. (b, a) ∈ C}`.
    pub fn image(&self, u: ElemSet) -> ElemSet {
        u.iter().fold(ElemSet::EMPTY, |acc, a| acc.union(self.related[a]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub holds: bool,
    /// The certifying downset (maximal choice), when the condition has one.
    pub witness: Option<ElemSet>,
    /// A human-readable counterexample when the condition fails.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppMorphReport {
    pub downward_closed: Condition,
    pub realized_monotonicity: Condition,
    pub realized_application: Condition,
    pub filter_preserving: Condition,
    pub valid: bool,
}

/// The order of `A` as a morphism `A → A`: `(b, a) ∈ C` iff `b ≤ a`.
pub fn identity_relation(a: &FiniteOpca) -> ApplicativeMorphism {
    ApplicativeMorphism {
        related: a.elems().map(|x| a.down(x)).collect(),
    }
}

/// `D' ∘ D = {(c, a) | ∃b. (b, a) ∈ D, (c, b) ∈ D'}`.
pub fn compose_relations(d: &ApplicativeMorphism, d2: &ApplicativeMorphism) -> ApplicativeMorphism {
    ApplicativeMorphism {
        related: d.related.iter().map(|&bs| d2.image(bs)).collect(),
    }
}

/// Checks the four conditions; `U` and `R` are reported as the largest
/// candidate downsets of the target.
pub fn check_applicative_morphism(
    src: &FiniteOpca,
    phi: &Phi,
    tgt: &FiniteOpca,
    chi: &Phi,
    c: &ApplicativeMorphism,
) -> AppMorphReport {
    assert_eq!(c.related.len(), src.len(), "relation must cover the source carrier");
    let aname = |a: usize| src.name(a).to_string();

    // 1. downward closed in b.
    let bad = src.elems().find(|&a| !tgt.is_downset(c.related[a]));
    let downward_closed = Condition {
        holds: bad.is_none(),
        witness: None,
        failure: bad.map(|a| format!("{{b | (b,{})∈C}} is not a downset", aname(a))),
    };

    let pairs: Vec<(usize, usize)> = src
        .elems()
        .flat_map(|a| c.related[a].iter().map(move |b| (b, a)))
        .collect();

    // 2. (b,a) ∈ C, a ≤ a' ⇒ ub↓ ∧ (ub, a') ∈ C.
    let u = ElemSet::from_elems(tgt.elems().filter(|&u| {
        pairs.iter().all(|&(b, a)| {
            src.up(a).iter().all(|a2| {
                tgt.app(u, b).is_some_and(|ub| c.related[a2].contains(ub))
            })
        })
    }));
    let realized_monotonicity = Condition {
        holds: chi.contains(u),
        witness: Some(u),
        failure: (!chi.contains(u)).then(|| format!("U = {} is not in χ", u.display(tgt.names()))),
    };

    // 3. (b,a), (b',a') ∈ C, aa'↓ ⇒ rbb'↓ ∧ (rbb', aa') ∈ C.
    let r = ElemSet::from_elems(tgt.elems().filter(|&r| {
        pairs.iter().all(|&(b, a)| {
            pairs.iter().all(|&(b2, a2)| match src.app(a, a2) {
                None => true,
                Some(aa) => tgt
                    .app(r, b)
                    .and_then(|rb| tgt.app(rb, b2))
                    .is_some_and(|rbb| c.related[aa].contains(rbb)),
            })
        })
    }));
    let realized_application = Condition {
        holds: chi.contains(r),
        witness: Some(r),
        failure: (!chi.contains(r)).then(|| format!("R = {} is not in χ", r.display(tgt.names()))),
    };

    // 4. U ∈ φ ⇒ C[U] ∈ χ.
    let bad = src
        .downsets()
        .into_iter()
        .find(|&s| phi.contains(s) && !chi.contains(c.image(s)));
    let filter_preserving = Condition {
        holds: bad.is_none(),
        witness: None,
        failure: bad.map(|s| {
            format!(
                "U = {} ∈ φ but C[U] = {} ∉ χ",
                s.display(src.names()),
                c.image(s).display(tgt.names())
            )
        }),
    };

    let valid = downward_closed.holds
        && realized_monotonicity.holds
        && realized_application.holds
        && filter_preserving.holds;
    AppMorphReport {
        downward_closed,
        realized_monotonicity,
        realized_application,
        filter_preserving,
        valid,
    }
}

/// `(X, E) ↦ (X, x ↦ C[E(x)])`.
pub fn induced_map(tgt: &FiniteOpca, c: &ApplicativeMorphism, x: &Assembly) -> Result<Assembly, AsmError> {
    let realizers = x.realizers().iter().map(|&e| c.image(e)).collect();
    Assembly::new(tgt, x.names().to_vec(), realizers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opca::builtin;

    #[test]
    fn order_is_an_applicative_morphism() {
        for name in crate::opca::builtin_names() {
            let a = builtin(name).unwrap();
            let id = identity_relation(&a);
            let r = check_applicative_morphism(&a, &Phi::Inhabited, &a, &Phi::Inhabited, &id);
            assert!(r.valid, "{name}: {r:?}");
        }
    }

    #[test]
    fn composite_of_identities_is_valid() {
        let a = builtin("s3").unwrap();
        let id = identity_relation(&a);
        let c = compose_relations(&id, &id);
        assert_eq!(c, id);
        assert!(check_applicative_morphism(&a, &Phi::Inhabited, &a, &Phi::Inhabited, &c).valid);
    }

    #[test]
    fn empty_relation_fails_filter_preservation() {
        let a = builtin("s2").unwrap();
        let empty = ApplicativeMorphism {
            related: vec![ElemSet::EMPTY; a.len()],
        };
        let r = check_applicative_morphism(&a, &Phi::Inhabited, &a, &Phi::Inhabited, &empty);
        assert!(!r.filter_preserving.holds);
        assert!(!r.valid);
    }

    #[test]
    fn induced_map_of_identity_is_identity() {
        let a = builtin("s2").unwrap();
        let x = Assembly::new(&a, vec!["p".into()], vec![ElemSet(1)]).unwrap();
        assert_eq!(induced_map(&a, &identity_relation(&a), &x).unwrap(), x);
    }
}
