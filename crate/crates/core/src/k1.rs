//! Kleene's first model at desk scale.
//!
//! Numbers code closed CL terms over `{b, c, k, w}`: leaves get tags 0–3 and
//! `M N` gets `4 + ⟨M, N⟩` with the Cantor pairing. Application juxtaposes the
//! decoded terms and normalizes (leftmost-outermost) under fuel; the length of
//! that chain plays the role of Kleene's `T` and the encoded normal form that
//! of `U`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::opca::{realizes_on_probe, Applicative, Mode, PolyExpr};
use crate::reduction::{normalize, Normalization};
use crate::terms::{s_combinator, Comb, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum K1Error {
    #[error("`{0}` is not a closed term over b, c, k, w")]
    NotClosedCl(String),
    #[error("`{0}` is not a natural number")]
    BadCode(String),
}

/// A natural number, held as the closed CL term it codes. The number itself
/// is computed on demand: codes of deep terms are astronomically large, and
/// since coding is a bijection, term equality is code equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct K1Code(Term);

impl K1Code {
    pub fn from_number(n: &BigUint) -> K1Code {
        fn go(n: &BigUint) -> Term {
            match n.to_u8() {
                Some(t) if t < 4 => Term::Comb(Comb::from_tag(t).expect("tag below 4")),
                _ => {
                    let (l, r) = unpair(&(n - 4u32));
                    Term::App(Arc::new(go(&l)), Arc::new(go(&r)))
                }
            }
        }
        K1Code(go(n))
    }

    pub fn from_u64(n: u64) -> K1Code {
        K1Code::from_number(&BigUint::from(n))
    }

    pub fn number(&self) -> BigUint {
        fn go(m: &Term) -> BigUint {
            match m {
                Term::Comb(c) => BigUint::from(c.tag()),
                Term::App(l, r) => pair(&go(l), &go(r)) + 4u32,
                _ => unreachable!("codes hold closed CL terms"),
            }
        }
        go(&self.0)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.number().to_u64()
    }

    pub fn term(&self) -> &Term {
        &self.0
    }
}

impl PartialOrd for K1Code {
    fn partial_cmp(&self, other: &K1Code) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for K1Code {
    fn cmp(&self, other: &K1Code) -> std::cmp::Ordering {
        self.number().cmp(&other.number())
    }
}

impl fmt::Display for K1Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.number().fmt(f)
    }
}

impl FromStr for K1Code {
    type Err = K1Error;

    fn from_str(s: &str) -> Result<K1Code, K1Error> {
        BigUint::from_str(s.trim())
            .map(|n| K1Code::from_number(&n))
            .map_err(|_| K1Error::BadCode(s.to_string()))
    }
}

impl Serialize for K1Code {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn pair(l: &BigUint, r: &BigUint) -> BigUint {
    let s = l + r;
    ((&s * (&s + 1u32)) >> 1u32) + r
}

fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) >> 1u32;
    let t = (&w * (&w + 1u32)) >> 1u32;
    let r = z - t;
    let l = w - &r;
    (l, r)
}

pub fn encode(m: &Term) -> Result<K1Code, K1Error> {
    if m.is_basic_closed() {
        Ok(K1Code(m.clone()))
    } else {
        Err(K1Error::NotClosedCl(m.to_string()))
    }
}

pub fn decode(e: &K1Code) -> Term {
    e.0.clone()
}

/// No redex anywhere: every combinator has fewer arguments than its arity.
pub fn is_normal(m: &Term) -> bool {
    let (head, args) = m.spine();
    let head_ok = match head {
        Term::Comb(c) => args.len() < c.arity(),
        _ => true,
    };
    head_ok && args.iter().all(|a| is_normal(a))
}

/// One application with its bookkeeping: the chain length (`T`) and the
/// encoded normal form (`U`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K1Application {
    pub result: Option<K1Code>,
    pub steps: Option<usize>,
    pub diverges: bool,
}

pub fn k1_apply_detailed(e: &K1Code, n: &K1Code, fuel: usize) -> K1Application {
    let m = Term::app(e.0.clone(), n.0.clone());
    match normalize(&m, fuel) {
        Normalization::Normal { term, steps } => K1Application {
            result: Some(K1Code(term)),
            steps: Some(steps),
            diverges: false,
        },
        Normalization::Cycle { .. } => K1Application {
            result: None,
            steps: None,
            diverges: true,
        },
        Normalization::FuelExhausted => K1Application {
            result: None,
            steps: None,
            diverges: false,
        },
    }
}

pub fn k1_apply(e: &K1Code, n: &K1Code, fuel: usize) -> Option<K1Code> {
    k1_apply_detailed(e, n, fuel).result
}

/// The first `count` codes that decode to normal terms.
pub fn normal_probe(count: usize) -> Vec<K1Code> {
    (0u64..)
        .map(K1Code::from_u64)
        .filter(|e| is_normal(&decode(e)))
        .take(count)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct K1Opca {
    pub fuel: usize,
}

impl Applicative for K1Opca {
    type Elem = K1Code;

    fn le(&self, a: &K1Code, b: &K1Code) -> bool {
        a == b
    }

    fn app(&self, a: &K1Code, b: &K1Code) -> Option<K1Code> {
        k1_apply(a, b, self.fuel)
    }

    fn mode(&self) -> Mode {
        Mode::Standard
    }
}

pub fn k_code() -> K1Code {
    encode(&Term::k()).expect("k is closed")
}

/// Code of the normal form of the compiled `λxyz. x z (y z)`.
pub fn s_code() -> K1Code {
    let s = normalize(&s_combinator(), crate::reduction::DEFAULT_FUEL)
        .normal_form()
        .expect("the compiled s combinator normalizes");
    encode(&s).expect("s is closed")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub probe_size: usize,
    pub fuel: usize,
    pub k_checked: usize,
    pub k_failures: Vec<(K1Code, K1Code)>,
    pub s_checked: usize,
    /// Triples where one side was undefined within fuel.
    pub s_skipped: usize,
    pub s_failures: Vec<(K1Code, K1Code, K1Code)>,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.k_failures.is_empty() && self.s_failures.is_empty()
    }
}

/// Divergent chains can build very deep terms; reduction, comparison and
/// drop all recurse on depth, so probe work runs on threads with large stacks.
const PROBE_STACK: usize = 1 << 29;

fn with_deep_stacks<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .stack_size(PROBE_STACK)
        .build()
        .expect("thread pool")
        .install(f)
}

/// `k a b = a` exactly; `s a b c = (a c)(b c)` wherever both sides are defined.
pub fn check_pca_laws(probe: &[K1Code], fuel: usize) -> LawReport {
    with_deep_stacks(|| pca_laws(probe, fuel))
}

fn pca_laws(probe: &[K1Code], fuel: usize) -> LawReport {
    let k = k_code();
    let s = s_code();
    let k_failures: Vec<(K1Code, K1Code)> = probe
        .par_iter()
        .flat_map_iter(|a| {
            let ka = k1_apply(&k, a, fuel);
            probe.iter().filter_map(move |b| {
                let lhs = ka.as_ref().and_then(|ka| k1_apply(ka, b, fuel));
                (lhs.as_ref() != Some(a)).then(|| (a.clone(), b.clone()))
            })
        })
        .collect();

    // (a c) and (b c) are shared across triples.
    let ac: Vec<Vec<Option<K1Code>>> = probe
        .par_iter()
        .map(|a| probe.iter().map(|c| k1_apply(a, c, fuel)).collect())
        .collect();
    let results: Vec<(bool, Option<(K1Code, K1Code, K1Code)>)> = (0..probe.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let sa = k1_apply(&s, &probe[i], fuel);
            let ac = &ac;
            (0..probe.len()).flat_map(move |j| {
                let sab = sa.as_ref().and_then(|sa| k1_apply(sa, &probe[j], fuel));
                (0..probe.len()).map(move |l| {
                    let lhs = sab.as_ref().and_then(|sab| k1_apply(sab, &probe[l], fuel));
                    let rhs = match (&ac[i][l], &ac[j][l]) {
                        (Some(x), Some(y)) => k1_apply(x, y, fuel),
                        _ => None,
                    };
                    match (lhs, rhs) {
                        (Some(x), Some(y)) => (
                            true,
                            (x != y).then(|| (probe[i].clone(), probe[j].clone(), probe[l].clone())),
                        ),
                        _ => (false, None),
                    }
                })
            })
        })
        .collect();
    let s_checked = results.iter().filter(|r| r.0).count();
    LawReport {
        probe_size: probe.len(),
        fuel,
        k_checked: probe.len() * probe.len(),
        k_failures,
        s_checked,
        s_skipped: results.len() - s_checked,
        s_failures: results.into_iter().filter_map(|r| r.1).collect(),
    }
}

/// Pairs `(e, n)` defined at `fuel` but undefined or different at `larger`.
pub fn fuel_monotonicity_violations(probe: &[K1Code], fuel: usize, larger: usize) -> Vec<(K1Code, K1Code)> {
    with_deep_stacks(|| monotonicity(probe, fuel, larger))
}

fn monotonicity(probe: &[K1Code], fuel: usize, larger: usize) -> Vec<(K1Code, K1Code)> {
    probe
        .par_iter()
        .flat_map_iter(|e| {
            probe.iter().filter_map(move |n| {
                let small = k1_apply(e, n, fuel)?;
                (k1_apply(e, n, larger).as_ref() != Some(&small)).then(|| (e.clone(), n.clone()))
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeCompleteness {
    pub k_realizes: bool,
    pub s_realizes: bool,
}

/// Whether the codes of `k` and `s` realize the projections and `s` over the probe.
pub fn probe_completeness(probe: &[K1Code], fuel: usize) -> ProbeCompleteness {
    let a = K1Opca { fuel };
    ProbeCompleteness {
        k_realizes: realizes_on_probe(&a, &k_code(), &PolyExpr::k(), probe),
        s_realizes: realizes_on_probe(&a, &s_code(), &PolyExpr::s(), probe),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;

    fn code(s: &str) -> K1Code {
        encode(&parse_term(s).unwrap()).unwrap()
    }

    #[test]
    fn small_codes() {
        assert_eq!(code("b"), K1Code::from_u64(0));
        assert_eq!(code("w"), K1Code::from_u64(3));
        // ⟨0,0⟩ = 0, ⟨1,0⟩ = 1, ⟨0,1⟩ = 2.
        assert_eq!(code("b b"), K1Code::from_u64(4));
        assert_eq!(code("c b"), K1Code::from_u64(5));
        assert_eq!(code("b c"), K1Code::from_u64(6));
    }

    #[test]
    fn numbering_is_a_bijection_on_small_codes() {
        for n in 0..2000u64 {
            let e = K1Code::from_u64(n);
            assert_eq!(e.to_u64(), Some(n));
            assert_eq!(encode(&decode(&e)).unwrap(), e);
        }
    }

    #[test]
    fn open_terms_have_no_code() {
        assert!(encode(&parse_term("k x").unwrap()).is_err());
    }

    #[test]
    fn k_applied_to_w() {
        assert_eq!(k1_apply(&code("k"), &code("w"), 100), Some(code("k w")));
    }

    #[test]
    fn www_is_undefined() {
        let ww = k1_apply(&code("w"), &code("w"), 1000).unwrap();
        let app = k1_apply_detailed(&ww, &code("w"), 1000);
        assert_eq!(app.result, None);
        assert!(app.diverges);
    }

    #[test]
    fn probe_is_normal_and_sorted() {
        let p = normal_probe(50);
        assert_eq!(p.len(), 50);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
        assert!(p.iter().all(|e| is_normal(&decode(e))));
        assert!(!is_normal(&parse_term("k b c").unwrap()));
    }

    #[test]
    fn laws_on_small_probe() {
        let p = normal_probe(8);
        assert!(check_pca_laws(&p, 1000).holds());
        assert!(fuel_monotonicity_violations(&p, 10, 1000).is_empty());
    }

    #[test]
    fn codes_parse() {
        assert_eq!("42".parse::<K1Code>().unwrap(), K1Code::from_u64(42));
        assert!("x".parse::<K1Code>().is_err());
    }
}
