//! The acceptance criteria as runnable checks.
//!
//! Each criterion returns a [`CriterionReport`] whose `line()` is the
//! `PASS`/`FAIL` summary printed by the acceptance test target and the CLI.

pub mod paradox;

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::assemblies::{
    compose_relations, check_applicative_morphism, gamma, identity_relation, nabla, Assembly, TrackedMorphism,
};
use crate::classical::{
    check_boolean_laws, check_cr_vs_intuitionistic, find_interpretation, induce_aks, FiniteAks, MachineLaw, Pole,
    SyntacticAks,
};
use crate::k1::{check_pca_laws, fuel_monotonicity_violations, normal_probe};
use crate::opca::{builtin, builtin_names, ElemSet, FiniteOpca, Phi};
use crate::reduction::chain_reaches;
use crate::rtripos::{
    app_down, arrow, entails, exists_along, forall_along, is_valid, random_instances, reindex, schema_instance,
    Family, FibreAlgebra, SchemaData, SchemaKind,
};
use crate::terms::{bracket_abstract, random_closed, random_term, substitute, Term};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "{} [{}] {}: {} ({} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed_ms
        )
    }
}

pub const CRITERIA: &[(u8, &str)] = &[
    (1, "bracket-abstraction"),
    (2, "machine-laws"),
    (3, "downset-adjunction"),
    (4, "heyting-quantifiers"),
    (5, "axiom-schemas"),
    (6, "non-classicality-witness"),
    (7, "cr-boolean"),
    (8, "negative-translation"),
    (9, "k1-laws"),
    (10, "assemblies"),
];

/// Accepts `"3"` or `"downset-adjunction"`.
pub fn criterion_id(name: &str) -> Option<u8> {
    CRITERIA
        .iter()
        .find(|(id, n)| *n == name || name.parse::<u8>().ok() == Some(*id))
        .map(|(id, _)| *id)
}

struct Outcome {
    passed: bool,
    detail: String,
    budget: Option<Duration>,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome {
        passed,
        detail,
        budget: None,
    }
}

impl Outcome {
    fn within(mut self, secs: u64) -> Outcome {
        self.budget = Some(Duration::from_secs(secs));
        self
    }
}

pub fn run_criterion(id: u8, seed: u64) -> Option<CriterionReport> {
    let name = CRITERIA.iter().find(|(i, _)| *i == id)?.1;
    let start = Instant::now();
    let o = match id {
        1 => bracket_abstraction(seed),
        2 => machine_laws(seed),
        3 => downset_adjunction(),
        4 => heyting_quantifiers(seed),
        5 => axiom_schemas(seed),
        6 => non_classicality(),
        7 => cr_boolean(),
        8 => negative_translation(),
        9 => k1_laws(),
        _ => assemblies(seed),
    };
    let elapsed = start.elapsed();
    let mut passed = o.passed;
    let mut detail = o.detail;
    if let Some(b) = o.budget {
        if elapsed > b {
            passed = false;
            detail.push_str(&format!("; exceeded {} s budget", b.as_secs()));
        }
    }
    Some(CriterionReport {
        id,
        name,
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    CRITERIA.iter().filter_map(|(id, _)| run_criterion(*id, seed)).collect()
}

fn bracket_abstraction(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = 1000;
    let mut failures = Vec::new();
    for _ in 0..total {
        let m = random_term(&mut rng, 6, &["x", "y"], &["A", "B"]);
        let n = random_closed(&mut rng, 3);
        let abs = bracket_abstract("x", &m).expect("CL-pure");
        if !chain_reaches(&Term::app(abs, n.clone()), &substitute(&m, "x", &n), 10_000) {
            failures.push(format!("M = {m}, N = {n}"));
        }
    }
    outcome(
        failures.is_empty(),
        format!("{}/{total} instances reach M[N/x]{}", total - failures.len(), first_failure(&failures)),
    )
    .within(30)
}

fn first_failure(f: &[String]) -> String {
    f.first().map(|s| format!("; first failure: {s}")).unwrap_or_default()
}

fn machine_laws(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let aks = SyntacticAks::new(10_000);
    let per_law = 500;
    let consts = ["M", "N", "P", "Q"];
    let mut parts = Vec::new();
    let mut failures = Vec::new();
    for law in [MachineLaw::Bullet, MachineLaw::Abstraction, MachineLaw::Continuation, MachineLaw::CallCc] {
        let mut ok = 0;
        for _ in 0..per_law {
            let vars: &[&str] = if law == MachineLaw::Abstraction { &["x"] } else { &[] };
            let m = random_term(&mut rng, 4, vars, &consts);
            let n = random_term(&mut rng, 4, &[], &consts);
            let pi = random_term(&mut rng, 4, &[], &consts);
            if aks.check(law, "x", &m, &n, &pi, false).holds {
                ok += 1;
            } else {
                failures.push(format!("{law:?}: M = {m}, N = {n}, π = {pi}"));
            }
        }
        parts.push(format!("{law:?} {ok}/{per_law}"));
    }
    outcome(failures.is_empty(), format!("{}{}", parts.join(", "), first_failure(&failures))).within(30)
}

fn downset_adjunction() -> Outcome {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for name in builtin_names() {
        let a = builtin(name).expect("bundled");
        if a.len() > 4 {
            continue;
        }
        let ds = a.downsets();
        for &u in &ds {
            for &v in &ds {
                for &w in &ds {
                    checked += 1;
                    let lhs = u.is_subset(arrow(&a, v, w));
                    let rhs = app_down(&a, u, v).is_ok_and(|uv| uv.is_subset(w));
                    if lhs != rhs {
                        failures.push(format!("{name}: U={u:?} V={v:?} W={w:?}"));
                    }
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{}/{checked} equivalences hold{}", checked - failures.len(), first_failure(&failures)),
    )
    .within(10)
}

/// All functions `{0..n} → {0..m}`.
fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..m.pow(n as u32))
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let d = c % m;
                    c /= m;
                    d
                })
                .collect()
        })
        .collect()
}

struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn into_outcome(self, what: &str) -> Outcome {
        outcome(
            self.failures.is_empty(),
            format!(
                "{}/{} {what}{}",
                self.checked - self.failures.len(),
                self.checked,
                first_failure(&self.failures)
            ),
        )
    }
}

fn heyting_quantifiers(seed: u64) -> Outcome {
    let a = builtin("s2").expect("bundled");
    let phi = Phi::Inhabited;
    let alg = FibreAlgebra::new(&a);
    let ds = a.downsets();
    let ent = |p: &Family, q: &Family| entails(&a, &phi, p, q).expect("same index").holds;
    let equiv = |p: &Family, q: &Family| ent(p, q) && ent(q, p);
    let mut t = Tally::new();

    for n in 1..=3 {
        let fams = Family::all(&ds, n);
        let (top, bot) = (alg.top(n), alg.bottom(n));
        for p in &fams {
            t.check(ent(p, &top) && ent(&bot, p), || format!("units at {p:?}"));
            for q in &fams {
                let pq = alg.and(p, q).expect("total");
                let p_or_q = alg.or(p, q).expect("total");
                t.check(ent(&pq, p) && ent(&pq, q), || format!("∧ projections at {p:?} {q:?}"));
                t.check(ent(p, &p_or_q) && ent(q, &p_or_q), || format!("∨ injections at {p:?} {q:?}"));
                for r in &fams {
                    let pq_r = ent(&pq, r);
                    let p_qr = ent(p, &alg.implies(q, r).expect("total"));
                    t.check(pq_r == p_qr, || format!("→ adjunction at {p:?} {q:?} {r:?}"));
                    let into_and = ent(r, &pq) == (ent(r, p) && ent(r, q));
                    t.check(into_and, || format!("∧ pairing at {p:?} {q:?} {r:?}"));
                    let out_of_or = ent(&p_or_q, r) == (ent(p, r) && ent(q, r));
                    t.check(out_of_or, || format!("∨ copairing at {p:?} {q:?} {r:?}"));
                }
            }
        }
    }

    for n in 1..=3 {
        for m in 1..=3 {
            let (pn, qm) = (Family::all(&ds, n), Family::all(&ds, m));
            for f in all_maps(n, m) {
                for p in &pn {
                    let ex = exists_along(&f, m, p);
                    let all = forall_along(&a, &f, m, p);
                    for q in &qm {
                        let fq = reindex(&f, q);
                        t.check(ent(&ex, q) == ent(p, &fq), || format!("∃ ⊣ f* at f={f:?} {p:?} {q:?}"));
                        t.check(ent(&fq, p) == ent(q, &all), || format!("f* ⊣ ∀ at f={f:?} {p:?} {q:?}"));
                        let lhs = exists_along(&f, m, &alg.and(p, &fq).expect("total"));
                        let rhs = alg.and(&ex, q).expect("total");
                        t.check(equiv(&lhs, &rhs), || format!("Frobenius at f={f:?} {p:?} {q:?}"));
                    }
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let (nx, ny, nz) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let f: Vec<usize> = (0..nx).map(|_| rng.gen_range(0..nz)).collect();
        let g: Vec<usize> = (0..ny).map(|_| rng.gen_range(0..nz)).collect();
        let pb: Vec<(usize, usize)> = (0..nx)
            .flat_map(|x| (0..ny).map(move |y| (x, y)))
            .filter(|&(x, y)| f[x] == g[y])
            .collect();
        let p1: Vec<usize> = pb.iter().map(|&(x, _)| x).collect();
        let p2: Vec<usize> = pb.iter().map(|&(_, y)| y).collect();
        let p = Family((0..nx).map(|_| *ds.choose(&mut rng).expect("downsets")).collect());
        let lhs = reindex(&g, &exists_along(&f, nz, &p));
        let rhs = exists_along(&p2, ny, &reindex(&p1, &p));
        t.check(equiv(&lhs, &rhs), || format!("Beck–Chevalley ∃ at f={f:?} g={g:?} {p:?}"));
        let lhs = reindex(&g, &forall_along(&a, &f, nz, &p));
        let rhs = forall_along(&a, &p2, ny, &reindex(&p1, &p));
        t.check(equiv(&lhs, &rhs), || format!("Beck–Chevalley ∀ at f={f:?} g={g:?} {p:?}"));
    }
    t.into_outcome("laws hold on s2")
}

fn axiom_schemas(seed: u64) -> Outcome {
    let phi = Phi::Inhabited;
    let mut t = Tally::new();
    for name in builtin_names() {
        let a = builtin(name).expect("bundled").with_phi(phi.clone());
        for kind in [SchemaKind::Mct, SchemaKind::Up] {
            for data in random_instances(kind, &a, 50, seed) {
                let valid = schema_instance(&a, &phi, &data).and_then(|(m, f)| is_valid(&m, &f));
                t.check(valid == Ok(true), || format!("{name} {kind:?}: {data:?} gave {valid:?}"));
            }
        }
        for u in a.downsets() {
            let valid = schema_instance(&a, &phi, &SchemaData::Intersection { u }).and_then(|(m, f)| is_valid(&m, &f));
            t.check(valid == Ok(phi.contains(u)), || format!("{name} intersection U={u:?} gave {valid:?}"));
        }
    }
    t.into_outcome("schema instances as expected")
}

fn non_classicality() -> Outcome {
    let r = paradox::search_paradox(3);
    let detail = match &r.witness {
        Some(w) => format!("witness: {w}"),
        None => format!(
            "no witness among {} structures (all on ≤ {} points, plus the bundled ones; {} with disjoint selectors, {} of them with both inhabited; {} predicates)",
            r.structures, r.max_elements, r.disjoint, r.disjoint_inhabited, r.predicates
        ),
    };
    outcome(r.witness.is_some(), detail)
}

/// S2 with the first interpretation found, and one pole per downset.
fn s2_machine() -> (FiniteAks, Vec<(ElemSet, Pole)>) {
    let a = builtin("s2").expect("bundled");
    let f = find_interpretation(&a).expect("s2 interprets the combinators");
    let aks = induce_aks(&a, f).expect("interpretation was validated");
    let poles = a.downsets().into_iter().map(|u| (u, Pole::from_downset(&aks, u))).collect();
    (aks, poles)
}

/// Every stack predicate (arbitrary set of stacks per index) of size ≤ 2.
fn stack_predicates(a: &FiniteOpca) -> Vec<Vec<Vec<ElemSet>>> {
    let subsets: Vec<ElemSet> = a.carrier().subsets().collect();
    (1..=2).map(|n| Family::all(&subsets, n).into_iter().map(|f| f.0).collect()).collect()
}

fn cr_boolean() -> Outcome {
    let (aks, poles) = s2_machine();
    let mut t = Tally::new();
    for preds in stack_predicates(aks.opca()) {
        for (u, pole) in &poles {
            for f in &preds {
                for g in &preds {
                    for h in &preds {
                        let laws = check_boolean_laws(&aks, pole, f, g, h).expect("same index");
                        t.check(laws.all_hold(), || format!("U={u:?} f={f:?} g={g:?} h={h:?}: {laws:?}"));
                    }
                }
            }
        }
    }
    t.into_outcome("instances realize k, s, Peirce and explosion").within(60)
}

fn negative_translation() -> Outcome {
    let (aks, poles) = s2_machine();
    let mut t = Tally::new();
    for preds in stack_predicates(aks.opca()) {
        for (u, _) in &poles {
            for f in &preds {
                for g in &preds {
                    let r = check_cr_vs_intuitionistic(&aks, *u, f, g).expect("same index");
                    t.check(r.agree, || format!("U={u:?} f={f:?} g={g:?}: {r:?}"));
                }
            }
        }
    }
    t.into_outcome("judgements agree")
}

fn k1_laws() -> Outcome {
    let probe = normal_probe(50);
    let laws = check_pca_laws(&probe, 100_000);
    let mut detail = format!(
        "k {}/{} exact, s {}/{} exact where defined ({} skipped)",
        laws.k_checked - laws.k_failures.len(),
        laws.k_checked,
        laws.s_checked - laws.s_failures.len(),
        laws.s_checked,
        laws.s_skipped
    );
    let mut passed = laws.holds();
    for (lo, hi) in [(10, 100), (100, 1000), (1000, 100_000)] {
        let v = fuel_monotonicity_violations(&probe, lo, hi);
        if !v.is_empty() {
            passed = false;
            detail.push_str(&format!("; fuel {lo}→{hi}: {} violations", v.len()));
        }
    }
    if passed {
        detail.push_str("; fuel monotone");
    }
    outcome(passed, detail)
}

/// `f` with a codomain built so that the identity realizers track it: each
/// image element gets at least the union of its preimages' realizers.
fn tracked_step(a: &FiniteOpca, phi: &Phi, x: &Assembly, rng: &mut ChaCha8Rng) -> TrackedMorphism {
    let ds: Vec<ElemSet> = a.downsets();
    let m = rng.gen_range(1..=3);
    let map: Vec<usize> = (0..x.len()).map(|_| rng.gen_range(0..m)).collect();
    let mut e = vec![ElemSet::EMPTY; m];
    for (i, &y) in map.iter().enumerate() {
        e[y] = e[y].union(x.e(i));
    }
    for ey in e.iter_mut() {
        *ey = ey.union(*ds.choose(rng).expect("downsets"));
        if ey.is_empty() {
            *ey = a.carrier();
        }
    }
    let names = (1..=m).map(|i| format!("y{i}")).collect();
    let y = Assembly::new(a, names, e).expect("unions of inhabited downsets");
    TrackedMorphism::new(a, phi, x.clone(), y, map).expect("identity realizers track it")
}

fn assemblies(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let structures: Vec<(&str, FiniteOpca)> = builtin_names().map(|n| (n, builtin(n).expect("bundled"))).collect();
    let mut t = Tally::new();
    for _ in 0..200 {
        let (name, a) = structures.choose(&mut rng).expect("builtins");
        let phi = a.phi().clone();
        let n = rng.gen_range(1..=3);
        let x = Assembly::random(a, n, &mut rng);
        let f = tracked_step(a, &phi, &x, &mut rng);
        let g = tracked_step(a, &phi, &f.target, &mut rng);
        let h = tracked_step(a, &phi, &g.target, &mut rng);
        let id_x = TrackedMorphism::identity(a, &phi, &f.source);
        let id_y = TrackedMorphism::identity(a, &phi, &f.target);
        let units = match (id_x, id_y) {
            (Ok(ix), Ok(iy)) => f.after(a, &phi, &ix).as_ref() == Ok(&f) && iy.after(a, &phi, &f).as_ref() == Ok(&f),
            _ => false,
        };
        t.check(units, || format!("{name}: identity laws at {:?}", f.map));
        let gf = g.after(a, &phi, &f);
        let composed = gf.as_ref().is_ok_and(|gf| gf.map.iter().zip(&f.map).all(|(&z, &y)| z == g.map[y]));
        t.check(composed, || format!("{name}: composite of {:?} then {:?}", f.map, g.map));
        let left = gf.and_then(|gf| h.after(a, &phi, &gf));
        let right = h.after(a, &phi, &g).and_then(|hg| hg.after(a, &phi, &f));
        t.check(left.is_ok() && left == right, || format!("{name}: associativity at {:?} {:?} {:?}", f.map, g.map, h.map));
    }
    for (name, a) in &structures {
        let phi = a.phi().clone();
        for n in 1..=3 {
            let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            t.check(gamma(&nabla(a, names.clone())) == names, || format!("{name}: Γ∇ at size {n}"));
            for m in 1..=3 {
                let (src, tgt) = (nabla(a, names.clone()), nabla(a, (1..=m).map(|i| format!("y{i}")).collect()));
                for map in all_maps(n, m) {
                    let ok = TrackedMorphism::new(a, &phi, src.clone(), tgt.clone(), map.clone()).is_ok();
                    t.check(ok, || format!("{name}: ∇ map {map:?} untracked"));
                }
            }
        }
        let id = identity_relation(a);
        let report = check_applicative_morphism(a, &phi, a, &phi, &id);
        t.check(report.valid, || format!("{name}: identity relation invalid: {report:?}"));
        let twice = compose_relations(&id, &id);
        let ok = twice == id && check_applicative_morphism(a, &phi, a, &phi, &twice).valid;
        t.check(ok, || format!("{name}: identity relation does not compose to itself"));
    }
    t.into_outcome("category laws hold")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_names_resolve() {
        assert_eq!(criterion_id("3"), Some(3));
        assert_eq!(criterion_id("k1-laws"), Some(9));
        assert_eq!(criterion_id("nope"), None);
    }

    #[test]
    fn maps_are_enumerated() {
        assert_eq!(all_maps(2, 3).len(), 9);
        assert_eq!(all_maps(3, 1), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn report_line_format() {
        let r = CriterionReport {
            id: 2,
            name: "machine-laws",
            passed: true,
            detail: "ok".into(),
            elapsed_ms: 5,
        };
        assert_eq!(r.line(), "PASS [2] machine-laws: ok (5 ms)");
    }
}
