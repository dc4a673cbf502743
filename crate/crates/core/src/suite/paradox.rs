//! Exhaustive search for a finite structure where every instance of
//! `P(x) ∨ ¬P(x)` is valid but `∀x. P(x) ∨ ¬P(x)` is not.
//!
//! Structures are enumerated raw (bitmask preorders, byte tables) because
//! there are millions of them; [`RawStructure::to_opca`] converts one for the
//! full evaluator, which the tests use to cross-check the fast evaluator here.

use serde::Serialize;

use crate::opca::{builtin, builtin_names, ElemSet, FiniteOpca, Mode, Phi};

const UNDEFINED: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawStructure {
    pub n: usize,
    /// `up[a]` has bit `b` set iff `a ≤ b`.
    pub up: Vec<u64>,
    /// Row-major; [`UNDEFINED`] marks undefined application.
    pub app: Vec<u8>,
    pub mode: Mode,
}

impl RawStructure {
    fn le(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    fn ap(&self, a: usize, b: usize) -> Option<usize> {
        match self.app[a * self.n + b] {
            UNDEFINED => None,
            v => Some(v as usize),
        }
    }

    fn monotone(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for a2 in 0..n {
                if !self.le(a, a2) {
                    continue;
                }
                for b in 0..n {
                    for b2 in 0..n {
                        let related = match self.mode {
                            Mode::Standard => self.le(b, b2),
                            Mode::Lazy => b == b2,
                        };
                        if !related {
                            continue;
                        }
                        if let Some(v2) = self.ap(a2, b2) {
                            match self.ap(a, b) {
                                Some(v) if self.le(v, v2) => {}
                                _ => return false,
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Realizers of `(x, y) ↦ x` (`first = true`) or `(x, y) ↦ y`.
    fn selector(&self, first: bool) -> ElemSet {
        ElemSet::from_elems((0..self.n).filter(|&r| {
            (0..self.n).all(|x| {
                self.ap(r, x).is_some_and(|rx| {
                    (0..self.n).all(|y| {
                        let target = if first { x } else { y };
                        self.ap(rx, y).is_some_and(|v| self.le(v, target))
                    })
                })
            })
        }))
    }

    fn downsets(&self) -> Vec<ElemSet> {
        ElemSet::full(self.n)
            .subsets()
            .filter(|s| s.iter().all(|a| (0..self.n).all(|b| !self.le(b, a) || s.contains(b))))
            .collect()
    }

    fn arrow(&self, u: ElemSet, v: ElemSet) -> ElemSet {
        ElemSet::from_elems((0..self.n).filter(|&x| u.iter().all(|b| self.ap(x, b).is_some_and(|c| v.contains(c)))))
    }

    /// Realizers of `P ∨ Q` for the selectors `tt`, `ff`.
    fn or(&self, tt: ElemSet, ff: ElemSet, p: ElemSet, q: ElemSet) -> ElemSet {
        ElemSet::from_elems((0..self.n).filter(|&x| {
            tt.iter().all(|t| {
                ff.iter().all(|f| match (self.ap(x, t), self.ap(x, f)) {
                    (Some(xt), Some(xf)) => (tt.contains(xt) && p.contains(xf)) || (ff.contains(xt) && q.contains(xf)),
                    _ => false,
                })
            })
        }))
    }

    /// Realizers of `P(x) ∨ ¬P(x)` for one value `P(x)`.
    pub fn excluded_middle(&self, p: ElemSet) -> ElemSet {
        let tt = self.selector(true);
        let ff = self.selector(false);
        self.or(tt, ff, p, self.arrow(p, ElemSet::EMPTY))
    }

    pub fn from_opca(a: &FiniteOpca) -> RawStructure {
        let n = a.len();
        RawStructure {
            n,
            up: a.elems().map(|x| a.up(x).0).collect(),
            app: (0..n * n).map(|i| a.app(i / n, i % n).map_or(UNDEFINED, |v| v as u8)).collect(),
            mode: a.mode(),
        }
    }

    pub fn to_opca(&self, phi: Phi) -> FiniteOpca {
        let names = (0..self.n).map(|i| format!("a{i}")).collect();
        let up = self.up.iter().map(|&u| ElemSet(u)).collect();
        let app = (0..self.n * self.n)
            .map(|i| match self.app[i] {
                UNDEFINED => None,
                v => Some(v as usize),
            })
            .collect();
        FiniteOpca::new(names, up, app, self.mode, None, phi).expect("enumerated structures are monotone preorders")
    }
}

/// All preorders on `n` labelled points, as `up` rows.
pub fn preorders(n: usize) -> Vec<Vec<u64>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut up: Vec<u64> = (0..n).map(|a| 1 << a).collect();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                up[a] |= 1 << b;
            }
        }
        let transitive = (0..n).all(|a| (0..n).filter(|&b| up[a] >> b & 1 == 1).all(|b| up[b] & !up[a] == 0));
        if transitive {
            out.push(up);
        }
    }
    out
}

/// Every monotone structure on 1..=`max_n` points, in both modes.
pub fn for_each_structure(max_n: usize, mut visit: impl FnMut(&RawStructure)) {
    for n in 1..=max_n {
        let cells = n * n;
        let tables = (n as u64 + 1).pow(cells as u32);
        for up in preorders(n) {
            for mode in [Mode::Standard, Mode::Lazy] {
                let mut s = RawStructure {
                    n,
                    up: up.clone(),
                    app: vec![UNDEFINED; cells],
                    mode,
                };
                for code in 0..tables {
                    let mut c = code;
                    for cell in s.app.iter_mut() {
                        let d = (c % (n as u64 + 1)) as u8;
                        c /= n as u64 + 1;
                        *cell = if d as usize == n { UNDEFINED } else { d };
                    }
                    if s.monotone() {
                        visit(&s);
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParadoxSearch {
    pub max_elements: usize,
    /// Monotone structures examined (both modes), plus the bundled ones.
    pub structures: usize,
    /// Structures whose selector realizer sets are disjoint (possibly empty).
    pub disjoint: usize,
    /// Of those, how many have both selector sets inhabited.
    pub disjoint_inhabited: usize,
    /// 2-point predicates examined on disjoint structures.
    pub predicates: usize,
    pub witness: Option<String>,
}

/// For a 2-point predicate with instance realizers `e0`, `e1`, the smallest
/// upward-closed `φ` accepting both instances is generated by `{e0, e1}`; it
/// rejects the universal sentence (realized by `e0 ∩ e1`) iff `e0`, `e1` are
/// incomparable. Checking that single `φ` therefore covers every external
/// filter at once.
pub fn search_paradox(max_n: usize) -> ParadoxSearch {
    let mut r = ParadoxSearch {
        max_elements: max_n,
        structures: 0,
        disjoint: 0,
        disjoint_inhabited: 0,
        predicates: 0,
        witness: None,
    };
    let bundled: Vec<RawStructure> = builtin_names()
        .filter_map(builtin)
        .map(|a| RawStructure::from_opca(&a))
        .collect();
    let mut visit = |s: &RawStructure| {
        r.structures += 1;
        let tt = s.selector(true);
        let ff = s.selector(false);
        if tt.intersects(ff) {
            return;
        }
        r.disjoint += 1;
        if !tt.is_empty() && !ff.is_empty() {
            r.disjoint_inhabited += 1;
        }
        let ds = s.downsets();
        let em: Vec<ElemSet> = ds.iter().map(|&p| s.excluded_middle(p)).collect();
        for (i, &e0) in em.iter().enumerate() {
            for (j, &e1) in em.iter().enumerate() {
                r.predicates += 1;
                let phi = Phi::Principal(vec![e0, e1]);
                if r.witness.is_none() && !phi.contains(e0.intersect(e1)) {
                    r.witness = Some(format!(
                        "n={} mode={:?} up={:?} app={:?} φ={} P=({:?}, {:?})",
                        s.n, s.mode, s.up, s.app, phi, ds[i], ds[j]
                    ));
                }
            }
        }
    };
    for_each_structure(max_n, &mut visit);
    bundled.iter().for_each(&mut visit);
    r
}

/// Structures where both selector sets are inhabited but disjoint.
pub fn disjoint_inhabited_selectors(max_n: usize) -> usize {
    let mut count = 0;
    for_each_structure(max_n, |s| {
        let tt = s.selector(true);
        let ff = s.selector(false);
        if !tt.is_empty() && !ff.is_empty() && !tt.intersects(ff) {
            count += 1;
        }
    });
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opca::{realizer_object, PolyExpr};
    use crate::rtripos::{eval_formula, parse_formula, Model};

    #[test]
    fn preorder_counts() {
        // OEIS A000798: 1, 4, 29.
        assert_eq!(preorders(1).len(), 1);
        assert_eq!(preorders(2).len(), 4);
        assert_eq!(preorders(3).len(), 29);
    }

    #[test]
    fn bundled_structures_round_trip() {
        for name in builtin_names() {
            let a = builtin(name).unwrap();
            let raw = RawStructure::from_opca(&a);
            let back = raw.to_opca(a.phi().clone());
            assert!(a.elems().all(|x| a.elems().all(|y| a.app(x, y) == back.app(x, y) && a.le(x, y) == back.le(x, y))));
        }
    }

    #[test]
    fn raw_evaluator_agrees_with_formula_evaluator() {
        let f = parse_formula("P(x) \\/ ~P(x)").unwrap();
        let mut checked = 0;
        let mut k = 0usize;
        for_each_structure(2, |s| {
            k += 1;
            if k % 7 != 0 {
                return;
            }
            let a = s.to_opca(Phi::Inhabited);
            assert_eq!(realizer_object(&a, &PolyExpr::first()), s.selector(true));
            assert_eq!(realizer_object(&a, &PolyExpr::second()), s.selector(false));
            for p in s.downsets() {
                let mut m = Model::new(a.clone());
                let sort = m.sort_id("A").unwrap();
                m.add_pred("P", vec![sort], vec![p; a.len()]).unwrap();
                let full = eval_formula(&m, &f, &[("x", "A")]).unwrap();
                assert_eq!(full.get(0), s.excluded_middle(p), "{s:?} {p:?}");
                checked += 1;
            }
        });
        assert!(checked > 50);
    }
}
