use serde::Serialize;

use super::{cc, kappa, ClassicalError};
use crate::opca::{Elem, ElemSet, FiniteOpca, Phi};
use crate::rtripos::{arrow, entails, Family};
use crate::terms::{Comb, Term};

/// Values of `b, c, k, w`, indexed by tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Interpretation(pub [Elem; 4]);

impl Interpretation {
    pub fn constant(x: Elem) -> Interpretation {
        Interpretation([x; 4])
    }

    pub fn get(&self, c: Comb) -> Elem {
        self.0[c.tag() as usize]
    }
}

/// `f(M N) = f(M) f(N)`; `None` when undefined or when `M` is not closed CL.
pub fn interpret(a: &FiniteOpca, f: &Interpretation, m: &Term) -> Option<Elem> {
    match m {
        Term::Comb(c) => Some(f.get(*c)),
        Term::App(l, r) => a.app(interpret(a, f, l)?, interpret(a, f, r)?),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterpretationViolation {
    pub combinator: char,
    pub args: Vec<String>,
    pub reason: String,
}

impl std::fmt::Display for InterpretationViolation {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "{} at ({}): {}", self.combinator, self.args.join(", "), self.reason)
    }
}

/// Checks, for all `x, y, z`:
/// `f(b)xy↓`, `x(yz)↓ ⇒ f(b)xyz ≤ x(yz)`; `f(c)xy↓`, `xzy↓ ⇒ f(c)xyz ≤ xzy`;
/// `f(k)xy ≤ x`; `f(w)x↓`, `xyy↓ ⇒ f(w)xy ≤ xyy`.
pub fn validate_interpretation(a: &FiniteOpca, f: &Interpretation) -> Result<(), InterpretationViolation> {
    let ap = |x: Option<Elem>, y: Elem| x.and_then(|x| a.app(x, y));
    let below = |l: Option<Elem>, r: Option<Elem>| match r {
        None => true,
        Some(r) => l.is_some_and(|l| a.le(l, r)),
    };
    let fail = |c: Comb, args: &[Elem], reason: &str| InterpretationViolation {
        combinator: c.letter(),
        args: args.iter().map(|&e| a.name(e).to_string()).collect(),
        reason: reason.into(),
    };
    for x in a.elems() {
        if ap(Some(f.get(Comb::W)), x).is_none() {
            return Err(fail(Comb::W, &[x], "f(w)x undefined"));
        }
        for y in a.elems() {
            let bxy = ap(ap(Some(f.get(Comb::B)), x), y);
            let cxy = ap(ap(Some(f.get(Comb::C)), x), y);
            let kxy = ap(ap(Some(f.get(Comb::K)), x), y);
            let wxy = ap(ap(Some(f.get(Comb::W)), x), y);
            if bxy.is_none() {
                return Err(fail(Comb::B, &[x, y], "f(b)xy undefined"));
            }
            if cxy.is_none() {
                return Err(fail(Comb::C, &[x, y], "f(c)xy undefined"));
            }
            if !kxy.is_some_and(|v| a.le(v, x)) {
                return Err(fail(Comb::K, &[x, y], "f(k)xy is undefined or not below x"));
            }
            if !below(wxy, ap(a.app(x, y), y)) {
                return Err(fail(Comb::W, &[x, y], "f(w)xy is not below xyy"));
            }
            for z in a.elems() {
                if !below(ap(bxy, z), a.app(y, z).and_then(|yz| a.app(x, yz))) {
                    return Err(fail(Comb::B, &[x, y, z], "f(b)xyz is not below x(yz)"));
                }
                if !below(ap(cxy, z), ap(a.app(x, z), y)) {
                    return Err(fail(Comb::C, &[x, y, z], "f(c)xyz is not below xzy"));
                }
            }
        }
    }
    Ok(())
}

/// The first interpretation into the filter, in lexicographic order of
/// `(f(b), f(c), f(k), f(w))`, that satisfies the laws and induces a
/// structure.
pub fn find_interpretation(a: &FiniteOpca) -> Option<Interpretation> {
    let c: Vec<Elem> = a.filter().iter().collect();
    for &b in &c {
        for &cc in &c {
            for &k in &c {
                for &w in &c {
                    let f = Interpretation([b, cc, k, w]);
                    if induce_aks(a, f).is_ok() {
                        return Some(f);
                    }
                }
            }
        }
    }
    None
}

/// Terms and stacks are both the carrier.
#[derive(Debug, Clone)]
pub struct FiniteAks {
    opca: FiniteOpca,
    interp: Interpretation,
    push: Vec<Elem>,
    bullet: Vec<Elem>,
    cont: Vec<Elem>,
    cc: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MachineViolation {
    pub law: &'static str,
    pub args: Vec<String>,
}

pub fn induce_aks(a: &FiniteOpca, f: Interpretation) -> Result<FiniteAks, ClassicalError> {
    validate_interpretation(a, &f).map_err(ClassicalError::Interpretation)?;
    for c in Comb::ALL {
        if !a.filter().contains(f.get(c)) {
            return Err(ClassicalError::NotInFilter(c.letter().to_string()));
        }
    }
    let fp = interpret(a, &f, &Term::p()).ok_or_else(|| ClassicalError::Undefined("p".into()))?;
    let fb = f.get(Comb::B);
    let fk = interpret(a, &f, &kappa()).ok_or_else(|| ClassicalError::Undefined("κ".into()))?;
    let fcc = interpret(a, &f, &cc()).ok_or_else(|| ClassicalError::Undefined("cc".into()))?;
    let n = a.len();
    let partial = |op: &str, args: &[Elem]| ClassicalError::Partial {
        op: op.into(),
        args: args.iter().map(|&e| a.name(e)).collect::<Vec<_>>().join(" "),
    };
    let mut push = Vec::with_capacity(n * n);
    let mut bullet = Vec::with_capacity(n * n);
    for x in a.elems() {
        for y in a.elems() {
            push.push(a.app(fp, x).and_then(|px| a.app(px, y)).ok_or_else(|| partial("push", &[x, y]))?);
            let py = a.app(fp, y).ok_or_else(|| partial("push", &[y]))?;
            bullet.push(a.app(fb, x).and_then(|bx| a.app(bx, py)).ok_or_else(|| partial("•", &[x, y]))?);
        }
    }
    let cont = a
        .elems()
        .map(|x| a.app(fk, x).ok_or_else(|| partial("k_", &[x])))
        .collect::<Result<_, _>>()?;
    Ok(FiniteAks {
        opca: a.clone(),
        interp: f,
        push,
        bullet,
        cont,
        cc: fcc,
    })
}

impl FiniteAks {
    pub fn opca(&self) -> &FiniteOpca {
        &self.opca
    }

    pub fn interpretation(&self) -> Interpretation {
        self.interp
    }

    pub fn len(&self) -> usize {
        self.opca.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opca.is_empty()
    }

    /// `t·π`
    pub fn push(&self, t: Elem, pi: Elem) -> Elem {
        self.push[t * self.len() + pi]
    }

    /// `t•u`
    pub fn bullet(&self, t: Elem, u: Elem) -> Elem {
        self.bullet[t * self.len() + u]
    }

    /// `k_π`
    pub fn cont(&self, pi: Elem) -> Elem {
        self.cont[pi]
    }

    pub fn cc(&self) -> Elem {
        self.cc
    }

    pub fn filter(&self) -> ElemSet {
        self.opca.filter()
    }

    /// `(x, y) ≻ (x', y')` iff `x'y'↓ ⇒ xy↓ ∧ xy ≤ x'y'`.
    pub fn succ(&self, q: (Elem, Elem), p: (Elem, Elem)) -> bool {
        match self.opca.app(p.0, p.1) {
            None => true,
            Some(v) => self.opca.app(q.0, q.1).is_some_and(|w| self.opca.le(w, v)),
        }
    }

    /// The first violation of `t•u ⋆ π ≻ t ⋆ u·π`, `cc ⋆ t·π ≻ t ⋆ k_π·π`
    /// or `k_π ⋆ t·ρ ≻ t ⋆ π`.
    pub fn machine_violation(&self) -> Option<MachineViolation> {
        let a = &self.opca;
        let names = |xs: &[Elem]| xs.iter().map(|&e| a.name(e).to_string()).collect();
        for t in a.elems() {
            for u in a.elems() {
                for pi in a.elems() {
                    if !self.succ((self.bullet(t, u), pi), (t, self.push(u, pi))) {
                        return Some(MachineViolation {
                            law: "t•u ⋆ π ≻ t ⋆ u·π",
                            args: names(&[t, u, pi]),
                        });
                    }
                    let rho = u;
                    if !self.succ((self.cont(pi), self.push(t, rho)), (t, pi)) {
                        return Some(MachineViolation {
                            law: "k_π ⋆ t·ρ ≻ t ⋆ π",
                            args: names(&[t, rho, pi]),
                        });
                    }
                }
                let pi = u;
                if !self.succ((self.cc, self.push(t, pi)), (t, self.push(self.cont(pi), pi))) {
                    return Some(MachineViolation {
                        law: "cc ⋆ t·π ≻ t ⋆ k_π·π",
                        args: names(&[t, pi]),
                    });
                }
            }
        }
        None
    }
}

/// `rows[t] = {π | t ⋆ π ∈ ⊥⊥}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Pole {
    rows: Vec<ElemSet>,
}

impl Pole {
    /// `⊥⊥_U = {(t, π) | tπ↓ ∧ tπ ∈ U}`.
    pub fn from_downset(aks: &FiniteAks, u: ElemSet) -> Pole {
        let a = &aks.opca;
        Pole {
            rows: a
                .elems()
                .map(|t| ElemSet::from_elems(a.elems().filter(|&pi| a.app(t, pi).is_some_and(|v| u.contains(v)))))
                .collect(),
        }
    }

    /// The least pole containing the given processes.
    pub fn explicit(aks: &FiniteAks, processes: &[(Elem, Elem)]) -> Pole {
        let a = &aks.opca;
        Pole {
            rows: a
                .elems()
                .map(|t| {
                    ElemSet::from_elems(a.elems().filter(|&pi| processes.iter().any(|&p| aks.succ((t, pi), p))))
                })
                .collect(),
        }
    }

    pub fn everything(aks: &FiniteAks) -> Pole {
        Pole {
            rows: vec![aks.opca.carrier(); aks.len()],
        }
    }

    /// Parses `from-downset {…}` or `explicit (t,π) …`, optionally prefixed
    /// with `pole`; `#` starts a comment.
    pub fn parse(aks: &FiniteAks, text: &str) -> Result<Pole, ClassicalError> {
        let a = &aks.opca;
        let mut found = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| ClassicalError::PoleSyntax { line: i + 1, message };
            if found.is_some() {
                return Err(err("only one pole per file".into()));
            }
            let line = line.strip_prefix("pole").unwrap_or(line).trim_start();
            if let Some(rest) = line.strip_prefix("from-downset") {
                let sets = crate::opca::parse_sets(rest, a, i + 1).map_err(|e| err(e.to_string()))?;
                let [u] = sets[..] else {
                    return Err(err("expected one set".into()));
                };
                if !a.is_downset(u) {
                    return Err(err(format!("{} is not a downset", u.display(a.names()))));
                }
                found = Some(Pole::from_downset(aks, u));
            } else if let Some(rest) = line.strip_prefix("explicit") {
                let mut procs = Vec::new();
                for tok in rest.split(')').map(str::trim).filter(|s| !s.is_empty()) {
                    let inner = tok
                        .strip_prefix('(')
                        .ok_or_else(|| err(format!("expected `(t,π)`, found `{tok}`")))?;
                    let (t, pi) = inner
                        .split_once(',')
                        .ok_or_else(|| err(format!("expected `(t,π)`, found `{tok})`")))?;
                    let look = |s: &str| a.index(s.trim()).ok_or_else(|| err(format!("unknown element `{}`", s.trim())));
                    procs.push((look(t)?, look(pi)?));
                }
                found = Some(Pole::explicit(aks, &procs));
            } else {
                return Err(err(format!("expected `from-downset` or `explicit`, found `{line}`")));
            }
        }
        found.ok_or(ClassicalError::PoleSyntax {
            line: 0,
            message: "empty pole file".into(),
        })
    }

    pub fn contains(&self, t: Elem, pi: Elem) -> bool {
        self.rows[t].contains(pi)
    }

    pub fn row(&self, t: Elem) -> ElemSet {
        self.rows[t]
    }

    /// A pair `q ≻ p` with `p` in the pole and `q` not, if any.
    pub fn saturation_violation(&self, aks: &FiniteAks) -> Option<((Elem, Elem), (Elem, Elem))> {
        let a = &aks.opca;
        for t in a.elems() {
            for pi in self.rows[t].iter() {
                for t2 in a.elems() {
                    for pi2 in a.elems() {
                        if !self.contains(t2, pi2) && aks.succ((t2, pi2), (t, pi)) {
                            return Some(((t2, pi2), (t, pi)));
                        }
                    }
                }
            }
        }
        None
    }
}

/// `S^⊥ = {t | ∀π∈S. t ⋆ π ∈ ⊥⊥}`.
pub fn orthogonal(pole: &Pole, stacks: ElemSet) -> ElemSet {
    ElemSet::from_elems((0..pole.rows.len()).filter(|&t| stacks.is_subset(pole.rows[t])))
}

/// `V^⊥ = {π | ∀t∈V. t ⋆ π ∈ ⊥⊥}`.
pub fn orthogonal_stacks(aks: &FiniteAks, pole: &Pole, terms: ElemSet) -> ElemSet {
    terms.iter().fold(aks.opca.carrier(), |acc, t| acc.intersect(pole.rows[t]))
}

/// A stack set per index.
pub type StackPredicate = Vec<ElemSet>;

/// `(f → g)(x) = {t·π | t ∈ f(x)^⊥, π ∈ g(x)}`.
pub fn cr_implies(aks: &FiniteAks, pole: &Pole, f: &[ElemSet], g: &[ElemSet]) -> Result<StackPredicate, ClassicalError> {
    check_len(f, g)?;
    Ok(f.iter()
        .zip(g)
        .map(|(&fx, &gx)| {
            let ts = orthogonal(pole, fx);
            ElemSet::from_elems(ts.iter().flat_map(|t| gx.iter().map(move |pi| aks.push(t, pi))))
        })
        .collect())
}

fn check_len(f: &[ElemSet], g: &[ElemSet]) -> Result<(), ClassicalError> {
    if f.len() == g.len() {
        Ok(())
    } else {
        Err(ClassicalError::IndexMismatch(f.len(), g.len()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrEntailment {
    pub holds: bool,
    /// Every term (in or out of the filter) that realizes the judgement.
    pub realizers: ElemSet,
    /// The least realizer in the filter.
    pub witness: Option<Elem>,
}

fn judgement(aks: &FiniteAks, pole: &Pole, h: &[ElemSet]) -> CrEntailment {
    let realizers = h
        .iter()
        .fold(aks.opca.carrier(), |acc, &hx| acc.intersect(orthogonal(pole, hx)));
    let witness = realizers.intersect(aks.filter()).first();
    CrEntailment {
        holds: witness.is_some(),
        realizers,
        witness,
    }
}

/// `f ⊩ g`: some `t ∈ C` with `t ⋆ u·π ∈ ⊥⊥` for all `x`, `u ∈ f(x)^⊥`, `π ∈ g(x)`.
pub fn cr_entails(aks: &FiniteAks, pole: &Pole, f: &[ElemSet], g: &[ElemSet]) -> Result<CrEntailment, ClassicalError> {
    Ok(judgement(aks, pole, &cr_implies(aks, pole, f, g)?))
}

/// Some `t ∈ C` lies in `h(x)^⊥` for every `x`.
pub fn cr_valid(aks: &FiniteAks, pole: &Pole, h: &[ElemSet]) -> CrEntailment {
    judgement(aks, pole, h)
}

/// `∀_f(g)(y) = ⋃_{f(x)=y} g(x)`.
pub fn cr_forall(map: &[usize], codomain: usize, g: &[ElemSet]) -> StackPredicate {
    let mut out = vec![ElemSet::EMPTY; codomain];
    for (x, &y) in map.iter().enumerate() {
        out[y] = out[y].union(g[x]);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BooleanLaws {
    /// `f → g → f`
    pub k_axiom: CrEntailment,
    /// `(f → g → h) → (f → g) → f → h`
    pub s_axiom: CrEntailment,
    /// `((f → g) → f) → f`
    pub peirce: CrEntailment,
    /// `cc` itself realizes Peirce's law.
    pub peirce_by_cc: bool,
    /// `Π ⊩ f`
    pub explosion: CrEntailment,
}

impl BooleanLaws {
    pub fn all_hold(&self) -> bool {
        self.k_axiom.holds && self.s_axiom.holds && self.peirce.holds && self.explosion.holds
    }
}

pub fn check_boolean_laws(
    aks: &FiniteAks,
    pole: &Pole,
    f: &[ElemSet],
    g: &[ElemSet],
    h: &[ElemSet],
) -> Result<BooleanLaws, ClassicalError> {
    check_len(f, g)?;
    check_len(f, h)?;
    let imp = |p: &[ElemSet], q: &[ElemSet]| cr_implies(aks, pole, p, q);
    let k_axiom = cr_valid(aks, pole, &imp(f, &imp(g, f)?)?);
    let fgh = imp(f, &imp(g, h)?)?;
    let fg = imp(f, g)?;
    let s_axiom = cr_valid(aks, pole, &imp(&fgh, &imp(&fg, &imp(f, h)?)?)?);
    let peirce_pred = imp(&imp(&fg, f)?, f)?;
    let peirce = cr_valid(aks, pole, &peirce_pred);
    let peirce_by_cc = peirce.realizers.contains(aks.cc());
    let everything = vec![aks.opca.carrier(); f.len()];
    let explosion = cr_entails(aks, pole, &everything, f)?;
    Ok(BooleanLaws {
        k_axiom,
        s_axiom,
        peirce,
        peirce_by_cc,
        explosion,
    })
}

/// `n(V) = V ⇒ U`, which equals `V^⊥` for the pole `⊥⊥_U`.
pub fn neg_translate(a: &FiniteOpca, v: ElemSet, u: ElemSet) -> ElemSet {
    arrow(a, v, u)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrVsRr {
    pub classical: bool,
    pub intuitionistic: bool,
    pub agree: bool,
}

/// Compares `f ⊩ g` for the pole `⊥⊥_U` with `n∘f ⊢ n∘g` in the downset
/// tripos whose external filter is the downsets meeting `C`.
pub fn check_cr_vs_intuitionistic(aks: &FiniteAks, u: ElemSet, f: &[ElemSet], g: &[ElemSet]) -> Result<CrVsRr, ClassicalError> {
    let a = &aks.opca;
    let pole = Pole::from_downset(aks, u);
    let classical = cr_entails(aks, &pole, f, g)?.holds;
    let n = |p: &[ElemSet]| Family(p.iter().map(|&v| neg_translate(a, v, u)).collect());
    let intuitionistic = entails(a, &Phi::Intersects(aks.filter()), &n(f), &n(g))
        .expect("same index set")
        .holds;
    Ok(CrVsRr {
        classical,
        intuitionistic,
        agree: classical == intuitionistic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opca::builtin;

    fn s2_aks() -> FiniteAks {
        let a = builtin("s2").unwrap();
        induce_aks(&a, Interpretation::constant(a.index("t").unwrap())).unwrap()
    }

    #[test]
    fn top_interpretation_of_s2() {
        let aks = s2_aks();
        assert_eq!(aks.machine_violation(), None);
    }

    #[test]
    fn search_finds_an_interpretation_for_every_builtin() {
        for name in crate::opca::builtin_names() {
            let a = builtin(name).unwrap();
            let f = find_interpretation(&a).unwrap_or_else(|| panic!("{name}"));
            assert_eq!(induce_aks(&a, f).unwrap().machine_violation(), None, "{name}");
        }
    }

    #[test]
    fn k_law_needs_a_lower_bound() {
        // Meet makes every constant interpretation of s2 lawful.
        let a = builtin("s2").unwrap();
        assert!(validate_interpretation(&a, &Interpretation::constant(0)).is_ok());
        // In lproj3 `ab = a`, so f(k)xy = f(k), which must lie below every x.
        let lp = builtin("lproj3").unwrap();
        let top = Interpretation::constant(lp.index("p2").unwrap());
        assert_eq!(validate_interpretation(&lp, &top).unwrap_err().combinator, 'k');
    }

    #[test]
    fn induced_poles_are_saturated() {
        let aks = s2_aks();
        for u in aks.opca().downsets() {
            assert_eq!(Pole::from_downset(&aks, u).saturation_violation(&aks), None);
        }
    }

    #[test]
    fn orthogonal_examples() {
        let aks = s2_aks();
        let e = ElemSet::singleton(0);
        let pole = Pole::from_downset(&aks, e);
        assert_eq!(orthogonal(&pole, ElemSet::EMPTY), ElemSet::full(2));
        assert_eq!(orthogonal(&pole, ElemSet::full(2)), e);
        assert_eq!(orthogonal(&Pole::everything(&aks), ElemSet::full(2)), ElemSet::full(2));
        assert_eq!(neg_translate(aks.opca(), ElemSet::full(2), e), e);
        assert_eq!(neg_translate(aks.opca(), ElemSet::EMPTY, e), ElemSet::full(2));
    }

    #[test]
    fn explicit_poles_are_saturated() {
        let aks = s2_aks();
        let pole = Pole::explicit(&aks, &[(0, 1)]);
        assert!(pole.contains(0, 1));
        assert_eq!(pole.saturation_violation(&aks), None);
    }

    #[test]
    fn everything_pole_validates_every_entailment() {
        let aks = s2_aks();
        let pole = Pole::everything(&aks);
        let f = vec![ElemSet::full(2)];
        assert!(cr_entails(&aks, &pole, &f, &f).unwrap().holds);
    }

    #[test]
    fn boolean_laws_on_s2() {
        let aks = s2_aks();
        let sets: Vec<ElemSet> = ElemSet::full(2).subsets().collect();
        for u in aks.opca().downsets() {
            let pole = Pole::from_downset(&aks, u);
            for &f in &sets {
                for &g in &sets {
                    let laws = check_boolean_laws(&aks, &pole, &[f], &[g], &[f]).unwrap();
                    assert!(laws.all_hold(), "{u:?} {f:?} {g:?}: {laws:?}");
                }
            }
        }
    }

    #[test]
    fn forall_is_right_adjoint_to_reindexing() {
        let aks = s2_aks();
        let sets: Vec<ElemSet> = ElemSet::full(2).subsets().collect();
        let map = [0usize, 0, 1];
        let pole = Pole::from_downset(&aks, ElemSet::singleton(0));
        for &k0 in &sets {
            for &k1 in &sets {
                for &h0 in &sets {
                    for &h2 in &sets {
                        let k = vec![k0, k1];
                        let h = vec![h0, ElemSet::singleton(1), h2];
                        let kf: Vec<ElemSet> = map.iter().map(|&y| k[y]).collect();
                        let lhs = cr_entails(&aks, &pole, &kf, &h).unwrap().holds;
                        let rhs = cr_entails(&aks, &pole, &k, &cr_forall(&map, 2, &h)).unwrap().holds;
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn pole_files() {
        let aks = s2_aks();
        let p = Pole::parse(&aks, "pole from-downset {e}  # comment").unwrap();
        assert_eq!(p, Pole::from_downset(&aks, ElemSet::singleton(0)));
        let q = Pole::parse(&aks, "explicit (e,t) (t,e)").unwrap();
        assert_eq!(q, Pole::explicit(&aks, &[(0, 1), (1, 0)]));
        assert!(Pole::parse(&aks, "from-downset {t}").is_err());
        assert!(Pole::parse(&aks, "explicit (e,q)").is_err());
    }
}
