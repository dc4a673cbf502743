use serde::Serialize;

use super::RtriposError;
use crate::opca::{realizer_object, Elem, ElemSet, FiniteOpca, Phi, PolyExpr};

/// A predicate: one downset per index `0..len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Family(pub Vec<ElemSet>);

impl Family {
    pub fn constant(n: usize, u: ElemSet) -> Family {
        Family(vec![u; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, x: usize) -> ElemSet {
        self.0[x]
    }

    pub fn iter(&self) -> impl Iterator<Item = ElemSet> + '_ {
        self.0.iter().copied()
    }

    /// Every family of downsets over `n` indices (`|downsets|^n` of them).
    pub fn all(downsets: &[ElemSet], n: usize) -> Vec<Family> {
        let mut out = vec![Family(Vec::with_capacity(n))];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|f| {
                    downsets.iter().map(move |&d| {
                        let mut g = f.0.clone();
                        g.push(d);
                        Family(g)
                    })
                })
                .collect();
        }
        out
    }
}

/// `U ⇒ V = {a | ∀b∈U. ab↓ ∧ ab∈V}`.
pub fn arrow(a: &FiniteOpca, u: ElemSet, v: ElemSet) -> ElemSet {
    ElemSet::from_elems(a.elems().filter(|&x| {
        u.iter()
            .all(|b| a.app(x, b).is_some_and(|c| v.contains(c)))
    }))
}

/// `UV = ↓{ab | a∈U, b∈V}`, defined iff every such `ab` is.
/// The error carries the first undefined pair.
pub fn app_down(a: &FiniteOpca, u: ElemSet, v: ElemSet) -> Result<ElemSet, (Elem, Elem)> {
    let mut out = ElemSet::EMPTY;
    for x in u.iter() {
        for y in v.iter() {
            match a.app(x, y) {
                Some(c) => out = out.union(a.down(c)),
                None => return Err((x, y)),
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entailment {
    pub holds: bool,
    /// `⋂ₓ P(x) ⇒ Q(x)`
    pub witness: ElemSet,
}

/// `P ⊢ Q` iff `⋂ₓ P(x) ⇒ Q(x)` belongs to `φ`.
pub fn entails(a: &FiniteOpca, phi: &Phi, p: &Family, q: &Family) -> Result<Entailment, RtriposError> {
    if p.len() != q.len() {
        return Err(RtriposError::IndexMismatch(p.len(), q.len()));
    }
    let witness = p
        .iter()
        .zip(q.iter())
        .fold(a.carrier(), |acc, (px, qx)| acc.intersect(arrow(a, px, qx)));
    Ok(Entailment {
        holds: phi.contains(witness),
        witness,
    })
}

/// `P ⊣⊢ Q`.
pub fn equivalent(a: &FiniteOpca, phi: &Phi, p: &Family, q: &Family) -> Result<bool, RtriposError> {
    Ok(entails(a, phi, p, q)?.holds && entails(a, phi, q, p)?.holds)
}

/// `f*Q = Q ∘ f`.
pub fn reindex(f: &[usize], q: &Family) -> Family {
    Family(f.iter().map(|&y| q.get(y)).collect())
}

/// `∃_f P (y) = ⋃_{f(x)=y} P(x)`; `∅` on empty fibres.
pub fn exists_along(f: &[usize], codomain: usize, p: &Family) -> Family {
    let mut out = vec![ElemSet::EMPTY; codomain];
    for (x, &y) in f.iter().enumerate() {
        out[y] = out[y].union(p.get(x));
    }
    Family(out)
}

/// `∀_f P (y) = ⋂_{f(x)=y} P(x)`; the full carrier on empty fibres.
pub fn forall_along(a: &FiniteOpca, f: &[usize], codomain: usize, p: &Family) -> Family {
    let mut out = vec![a.carrier(); codomain];
    for (x, &y) in f.iter().enumerate() {
        out[y] = out[y].intersect(p.get(x));
    }
    Family(out)
}

/// Heyting operations on a fibre, encoded with combinators:
/// `X×Y = 𝐩XY`, `X+Y = 𝐥X ∪ 𝐫Y`, `X→Y = X⇒Y`.
#[derive(Debug, Clone)]
pub struct FibreAlgebra<'a> {
    pub opca: &'a FiniteOpca,
    pub pair: ElemSet,
    pub left: ElemSet,
    pub right: ElemSet,
}

impl<'a> FibreAlgebra<'a> {
    pub fn new(opca: &'a FiniteOpca) -> FibreAlgebra<'a> {
        FibreAlgebra {
            opca,
            pair: realizer_object(opca, &PolyExpr::pair()),
            left: realizer_object(opca, &PolyExpr::left()),
            right: realizer_object(opca, &PolyExpr::right()),
        }
    }

    pub fn top(&self, n: usize) -> Family {
        Family::constant(n, self.opca.carrier())
    }

    pub fn bottom(&self, n: usize) -> Family {
        Family::constant(n, ElemSet::EMPTY)
    }

    fn pointwise(
        &self,
        p: &Family,
        q: &Family,
        op: impl Fn(ElemSet, ElemSet) -> Result<ElemSet, (Elem, Elem)>,
    ) -> Result<Family, RtriposError> {
        if p.len() != q.len() {
            return Err(RtriposError::IndexMismatch(p.len(), q.len()));
        }
        p.iter()
            .zip(q.iter())
            .map(|(x, y)| {
                op(x, y).map_err(|(l, r)| RtriposError::UndefinedApplication {
                    left: self.opca.name(l).to_string(),
                    right: self.opca.name(r).to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Family)
    }

    pub fn and(&self, p: &Family, q: &Family) -> Result<Family, RtriposError> {
        self.pointwise(p, q, |x, y| {
            let px = app_down(self.opca, self.pair, x)?;
            app_down(self.opca, px, y)
        })
    }

    pub fn or(&self, p: &Family, q: &Family) -> Result<Family, RtriposError> {
        self.pointwise(p, q, |x, y| {
            Ok(app_down(self.opca, self.left, x)?.union(app_down(self.opca, self.right, y)?))
        })
    }

    pub fn implies(&self, p: &Family, q: &Family) -> Result<Family, RtriposError> {
        self.pointwise(p, q, |x, y| Ok(arrow(self.opca, x, y)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opca::builtin;

    fn s2() -> FiniteOpca {
        builtin("s2").unwrap()
    }

    const E: ElemSet = ElemSet(1);
    const FULL: ElemSet = ElemSet(3);

    #[test]
    fn arrow_examples() {
        let a = s2();
        assert_eq!(arrow(&a, FULL, E), E);
        assert_eq!(arrow(&a, ElemSet::EMPTY, E), FULL);
        assert_eq!(arrow(&a, E, FULL), FULL);
    }

    #[test]
    fn app_down_examples() {
        let a = s2();
        assert_eq!(app_down(&a, E, FULL), Ok(E));
        assert_eq!(app_down(&a, ElemSet::EMPTY, FULL), Ok(ElemSet::EMPTY));
    }

    #[test]
    fn entailment_examples() {
        let a = s2();
        let p = Family(vec![FULL]);
        let r = entails(&a, &Phi::Inhabited, &p, &Family(vec![ElemSet::EMPTY])).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, ElemSet::EMPTY);
        assert!(entails(&a, &Phi::Inhabited, &p, &p).unwrap().holds);
        assert!(entails(&a, &Phi::Inhabited, &p, &Family(vec![])).is_err());
    }

    #[test]
    fn quantifiers_on_empty_fibres() {
        let a = s2();
        let p = Family(vec![E]);
        assert_eq!(exists_along(&[0], 2, &p), Family(vec![E, ElemSet::EMPTY]));
        assert_eq!(forall_along(&a, &[0], 2, &p), Family(vec![E, FULL]));
    }

    #[test]
    fn family_enumeration_count() {
        let a = s2();
        assert_eq!(Family::all(&a.downsets(), 2).len(), 9);
        assert_eq!(Family::all(&a.downsets(), 0), vec![Family(vec![])]);
    }
}
