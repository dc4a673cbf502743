//! The category of assemblies over a finite structure.
//!
//! An assembly is a finite set with an inhabited downset of realizers per
//! element; a morphism is a function with a φ-member downset of trackers.

mod appmorph;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

pub use appmorph::{
    check_applicative_morphism, compose_relations, identity_relation, induced_map, AppMorphReport,
    ApplicativeMorphism, Condition,
};

use crate::opca::{realizer_object, ElemSet, FiniteOpca, Phi, PolyExpr};
use crate::rtripos::{app_down, arrow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsmError {
    #[error("realizers of `{0}` are empty")]
    NotInhabited(String),
    #[error("realizers of `{0}` are not downward closed")]
    NotDownset(String),
    #[error("{names} names but {sets} realizer sets")]
    SizeMismatch { names: usize, sets: usize },
    #[error("map is not total or points outside the target")]
    BadMap,
    #[error("function is not tracked: trackers {trackers} are not in φ")]
    NotTracked { trackers: String },
    #[error("morphisms do not compose: target and source differ")]
    NotComposable,
    #[error("downset application undefined while pairing realizers")]
    PairingUndefined,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Assembly {
    names: Vec<String>,
    realizers: Vec<ElemSet>,
}

impl Assembly {
    pub fn new(a: &FiniteOpca, names: Vec<String>, realizers: Vec<ElemSet>) -> Result<Assembly, AsmError> {
        if names.len() != realizers.len() {
            return Err(AsmError::SizeMismatch {
                names: names.len(),
                sets: realizers.len(),
            });
        }
        for (n, &e) in names.iter().zip(&realizers) {
            if e.is_empty() {
                return Err(AsmError::NotInhabited(n.clone()));
            }
            if !a.is_downset(e) {
                return Err(AsmError::NotDownset(n.clone()));
            }
        }
        Ok(Assembly { names, realizers })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn realizers(&self) -> &[ElemSet] {
        &self.realizers
    }

    pub fn e(&self, x: usize) -> ElemSet {
        self.realizers[x]
    }

    /// A random assembly with `n` elements.
    pub fn random(a: &FiniteOpca, n: usize, rng: &mut impl Rng) -> Assembly {
        let inhabited: Vec<ElemSet> = a.downsets().into_iter().filter(|d| !d.is_empty()).collect();
        let realizers = (0..n).map(|_| inhabited[rng.gen_range(0..inhabited.len())]).collect();
        Assembly {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
            realizers,
        }
    }
}

/// `∇X`: every element realized by the whole carrier.
pub fn nabla(a: &FiniteOpca, names: Vec<String>) -> Assembly {
    let realizers = vec![a.carrier(); names.len()];
    Assembly { names, realizers }
}

/// `Γ`: the underlying set.
pub fn gamma(x: &Assembly) -> Vec<String> {
    x.names.clone()
}

/// The terminal assembly `∇{∗}`.
pub fn terminal(a: &FiniteOpca) -> Assembly {
    nabla(a, vec!["*".into()])
}

/// `⋂ₓ E(x) ⇒ F(f(x))`.
pub fn trackers(a: &FiniteOpca, f: &[usize], x: &Assembly, y: &Assembly) -> ElemSet {
    f.iter()
        .enumerate()
        .fold(a.carrier(), |acc, (i, &fx)| acc.intersect(arrow(a, x.e(i), y.e(fx))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrackedMorphism {
    pub source: Assembly,
    pub target: Assembly,
    pub map: Vec<usize>,
    pub trackers: ElemSet,
}

impl TrackedMorphism {
    /// Computes the trackers and certifies that they belong to `φ`.
    pub fn new(a: &FiniteOpca, phi: &Phi, source: Assembly, target: Assembly, map: Vec<usize>) -> Result<TrackedMorphism, AsmError> {
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(AsmError::BadMap);
        }
        let t = trackers(a, &map, &source, &target);
        if !phi.contains(t) {
            return Err(AsmError::NotTracked {
                trackers: t.display(a.names()).to_string(),
            });
        }
        Ok(TrackedMorphism {
            source,
            target,
            map,
            trackers: t,
        })
    }

    pub fn identity(a: &FiniteOpca, phi: &Phi, x: &Assembly) -> Result<TrackedMorphism, AsmError> {
        TrackedMorphism::new(a, phi, x.clone(), x.clone(), (0..x.len()).collect())
    }

    /// `self ∘ f`.
    pub fn after(&self, a: &FiniteOpca, phi: &Phi, f: &TrackedMorphism) -> Result<TrackedMorphism, AsmError> {
        if f.target != self.source {
            return Err(AsmError::NotComposable);
        }
        let map = f.map.iter().map(|&y| self.map[y]).collect();
        TrackedMorphism::new(a, phi, f.source.clone(), self.target.clone(), map)
    }

    pub fn is_mono(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.target.len()).all(|y| self.map.contains(&y))
    }

    /// Surjective, with a `φ`-member downset `V` such that every `v ∈ V`
    /// sends each realizer of `y` to a realizer of some preimage of `y`.
    /// Returns the largest such `V` when the map is surjective.
    pub fn regular_epi_witness(&self, a: &FiniteOpca) -> Option<ElemSet> {
        if !self.is_surjective() {
            return None;
        }
        Some(ElemSet::from_elems(a.elems().filter(|&v| {
            (0..self.target.len()).all(|y| {
                self.target.e(y).iter().all(|b| {
                    a.app(v, b).is_some_and(|vb| {
                        self.map
                            .iter()
                            .enumerate()
                            .any(|(x, &fx)| fx == y && self.source.e(x).contains(vb))
                    })
                })
            })
        })))
    }

    pub fn is_regular_epi(&self, a: &FiniteOpca, phi: &Phi) -> bool {
        self.regular_epi_witness(a).is_some_and(|v| phi.contains(v))
    }
}

/// Every element realized by a principal downset `↓aₓ`.
pub fn is_partitioned(a: &FiniteOpca, x: &Assembly) -> bool {
    x.realizers.iter().all(|&e| a.is_principal(e))
}

/// Realizers separate elements: `E(x) ∩ E(x')` inhabited implies `x = x'`.
pub fn is_modest(x: &Assembly) -> bool {
    (0..x.len()).all(|i| (i + 1..x.len()).all(|j| !x.e(i).intersects(x.e(j))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Product {
    pub object: Assembly,
    pub fst: TrackedMorphism,
    pub snd: TrackedMorphism,
}

/// `E(x,y) = 𝐩 E(x) E(y)`, pairs in row-major order.
pub fn product(a: &FiniteOpca, phi: &Phi, x: &Assembly, y: &Assembly) -> Result<Product, AsmError> {
    let p = realizer_object(a, &PolyExpr::pair());
    let mut names = Vec::new();
    let mut realizers = Vec::new();
    for i in 0..x.len() {
        for j in 0..y.len() {
            let px = app_down(a, p, x.e(i)).map_err(|_| AsmError::PairingUndefined)?;
            let pxy = app_down(a, px, y.e(j)).map_err(|_| AsmError::PairingUndefined)?;
            names.push(format!("({},{})", x.names[i], y.names[j]));
            realizers.push(pxy);
        }
    }
    let object = Assembly::new(a, names, realizers)?;
    let n = y.len();
    let fst = TrackedMorphism::new(a, phi, object.clone(), x.clone(), (0..object.len()).map(|k| k / n).collect())?;
    let snd = TrackedMorphism::new(a, phi, object.clone(), y.clone(), (0..object.len()).map(|k| k % n).collect())?;
    Ok(Product { object, fst, snd })
}

/// The mediating map `⟨f, g⟩: Z → X×Y`.
pub fn pairing(a: &FiniteOpca, phi: &Phi, prod: &Product, f: &TrackedMorphism, g: &TrackedMorphism) -> Result<TrackedMorphism, AsmError> {
    if f.source != g.source || f.target != prod.fst.target || g.target != prod.snd.target {
        return Err(AsmError::NotComposable);
    }
    let n = g.target.len();
    let map = f.map.iter().zip(&g.map).map(|(&x, &y)| x * n + y).collect();
    TrackedMorphism::new(a, phi, f.source.clone(), prod.object.clone(), map)
}

/// The subassembly where `f` and `g` agree, with its inclusion.
pub fn equalizer(a: &FiniteOpca, phi: &Phi, f: &TrackedMorphism, g: &TrackedMorphism) -> Result<(Assembly, TrackedMorphism), AsmError> {
    if f.source != g.source || f.target != g.target {
        return Err(AsmError::NotComposable);
    }
    let keep: Vec<usize> = (0..f.source.len()).filter(|&x| f.map[x] == g.map[x]).collect();
    let sub = Assembly {
        names: keep.iter().map(|&x| f.source.names[x].clone()).collect(),
        realizers: keep.iter().map(|&x| f.source.e(x)).collect(),
    };
    let incl = TrackedMorphism::new(a, phi, sub.clone(), f.source.clone(), keep)?;
    Ok((sub, incl))
}

/// Mutually inverse tracked bijections exist.
pub fn is_isomorphic(a: &FiniteOpca, phi: &Phi, x: &Assembly, y: &Assembly) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let n = x.len();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        if phi.contains(trackers(a, &perm, x, y)) && phi.contains(trackers(a, &inv, y, x)) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap_or(i);
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opca::builtin;

    fn s2() -> FiniteOpca {
        builtin("s2").unwrap()
    }

    fn example_x(a: &FiniteOpca) -> Assembly {
        Assembly::new(a, vec!["x1".into(), "x2".into()], vec![ElemSet(3), ElemSet(1)]).unwrap()
    }

    fn example_y(a: &FiniteOpca) -> Assembly {
        Assembly::new(a, vec!["y".into()], vec![ElemSet(1)]).unwrap()
    }

    #[test]
    fn tracker_example() {
        let a = s2();
        assert_eq!(trackers(&a, &[0, 0], &example_x(&a), &example_y(&a)), ElemSet(1));
    }

    #[test]
    fn inhabitation_is_required() {
        let a = s2();
        assert!(matches!(
            Assembly::new(&a, vec!["x".into()], vec![ElemSet::EMPTY]),
            Err(AsmError::NotInhabited(_))
        ));
    }

    #[test]
    fn nabla_maps_are_tracked() {
        let a = s2();
        let x = nabla(&a, vec!["a".into(), "b".into()]);
        let y = nabla(&a, vec!["c".into()]);
        assert!(TrackedMorphism::new(&a, &Phi::Inhabited, x, y, vec![0, 0]).is_ok());
    }

    #[test]
    fn product_with_terminal_is_isomorphic() {
        let a = s2();
        let x = example_x(&a);
        let p = product(&a, &Phi::Inhabited, &x, &terminal(&a)).unwrap();
        assert!(is_isomorphic(&a, &Phi::Inhabited, &p.object, &x));
    }

    #[test]
    fn equalizer_of_equal_maps_is_everything() {
        let a = s2();
        let x = example_x(&a);
        let id = TrackedMorphism::identity(&a, &Phi::Inhabited, &x).unwrap();
        let (sub, incl) = equalizer(&a, &Phi::Inhabited, &id, &id).unwrap();
        assert_eq!(sub, x);
        assert!(incl.is_mono());
    }

    #[test]
    fn identity_is_mono_and_regular_epi() {
        let a = s2();
        let id = TrackedMorphism::identity(&a, &Phi::Inhabited, &example_x(&a)).unwrap();
        assert!(id.is_mono() && id.is_regular_epi(&a, &Phi::Inhabited));
    }

    #[test]
    fn partitioned_and_modest() {
        let a = s2();
        let shared = Assembly::new(&a, vec!["x1".into(), "x2".into()], vec![ElemSet(1), ElemSet(1)]).unwrap();
        assert!(!is_modest(&shared));
        assert!(is_modest(&example_y(&a)));
        assert!(is_partitioned(&a, &shared));
        let d = builtin("diamond").unwrap();
        // {bot, l, r} is a downset but not principal.
        let x = Assembly::new(&d, vec!["x".into()], vec![ElemSet(0b0111)]).unwrap();
        assert!(!is_partitioned(&d, &x));
    }

    #[test]
    fn permutations_are_exhaustive() {
        let mut p = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
