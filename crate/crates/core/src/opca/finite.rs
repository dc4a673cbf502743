use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::{Applicative, ElemSet, Mode, Phi};

/// Index into the carrier of a [`FiniteOpca`].
pub type Elem = usize;

/// Largest supported carrier (elements are bits of a `u64`).
pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityViolation {
    pub a: String,
    pub a2: String,
    pub b: String,
    pub b2: String,
    /// What went wrong: `undefined` if `ab` is missing, else the offending value.
    pub found: String,
    pub expected_below: String,
}

impl fmt::Display for MonotonicityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}≤{}, {}≤{}: {} {} = {} is not ≤ {}",
            self.a, self.a2, self.b, self.b2, self.a, self.b, self.found, self.expected_below
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpcaError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown element `{name}`")]
    UnknownElement { line: usize, name: String },
    #[error("order is not a preorder: {0}")]
    NotPreorder(String),
    #[error("{} monotonicity violation(s); first: {}", .0.len(), .0[0])]
    Monotonicity(Vec<MonotonicityViolation>),
    #[error("carrier has {0} elements; at most 64 are supported")]
    TooLarge(usize),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

/// A finite order partial applicative structure with a filter and an external filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOpca {
    names: Vec<String>,
    /// `up[a] = {b | a ≤ b}`
    up: Vec<ElemSet>,
    /// `down[a] = {b | b ≤ a}`
    down: Vec<ElemSet>,
    app: Vec<Option<Elem>>,
    mode: Mode,
    filter: ElemSet,
    phi: Phi,
}

impl FiniteOpca {
    /// Builds a structure from an order given as up-sets (`a ≤ b` iff
    /// `up[a]` contains `b`) and a row-major application table.
    ///
    /// The order must already be a preorder. `filter_gens = None` means the
    /// whole carrier; otherwise the generated filter is used. Monotonicity
    /// is *not* checked here; see [`FiniteOpca::monotonicity_violations`].
    pub fn from_tables(
        names: Vec<String>,
        up: Vec<ElemSet>,
        app: Vec<Option<Elem>>,
        mode: Mode,
        filter_gens: Option<ElemSet>,
        phi: Phi,
    ) -> Result<FiniteOpca, OpcaError> {
        let n = names.len();
        if n > MAX_ELEMENTS {
            return Err(OpcaError::TooLarge(n));
        }
        assert_eq!(up.len(), n, "order rows");
        assert_eq!(app.len(), n * n, "application table");
        for a in 0..n {
            if !up[a].contains(a) {
                return Err(OpcaError::NotPreorder(format!("not reflexive at {}", names[a])));
            }
            for b in up[a].iter() {
                if !up[b].is_subset(up[a]) {
                    let c = up[b].minus(up[a]).first().unwrap_or(b);
                    return Err(OpcaError::NotPreorder(format!(
                        "not transitive: {} ≤ {} ≤ {} but not {} ≤ {}",
                        names[a], names[b], names[c], names[a], names[c]
                    )));
                }
            }
        }
        let mut down = vec![ElemSet::EMPTY; n];
        for a in 0..n {
            for b in up[a].iter() {
                down[b].insert(a);
            }
        }
        let mut out = FiniteOpca {
            names,
            up,
            down,
            app,
            mode,
            filter: ElemSet::EMPTY,
            phi,
        };
        out.filter = match filter_gens {
            None => ElemSet::full(n),
            Some(g) => out.generated_filter(g),
        };
        Ok(out)
    }

    /// Like [`FiniteOpca::from_tables`] but also rejects non-monotone tables.
    pub fn new(
        names: Vec<String>,
        up: Vec<ElemSet>,
        app: Vec<Option<Elem>>,
        mode: Mode,
        filter_gens: Option<ElemSet>,
        phi: Phi,
    ) -> Result<FiniteOpca, OpcaError> {
        let a = FiniteOpca::from_tables(names, up, app, mode, filter_gens, phi)?;
        let v = a.monotonicity_violations(usize::MAX);
        if v.is_empty() {
            Ok(a)
        } else {
            Err(OpcaError::Monotonicity(v))
        }
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

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn index(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn elems(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn carrier(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn filter(&self) -> ElemSet {
        self.filter
    }

    pub fn phi(&self) -> &Phi {
        &self.phi
    }

    pub fn with_phi(mut self, phi: Phi) -> FiniteOpca {
        self.phi = phi;
        self
    }

    pub fn with_filter(mut self, gens: ElemSet) -> FiniteOpca {
        self.filter = self.generated_filter(gens);
        self
    }

    pub fn le(&self, a: Elem, b: Elem) -> bool {
        self.up[a].contains(b)
    }

    pub fn app(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.app[a * self.len() + b]
    }

    pub fn up(&self, a: Elem) -> ElemSet {
        self.up[a]
    }

    /// The principal downset `↓a`.
    pub fn down(&self, a: Elem) -> ElemSet {
        self.down[a]
    }

    pub fn down_closure(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(ElemSet::EMPTY, |acc, a| acc.union(self.down[a]))
    }

    pub fn up_closure(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(ElemSet::EMPTY, |acc, a| acc.union(self.up[a]))
    }

    pub fn is_downset(&self, s: ElemSet) -> bool {
        self.down_closure(s) == s
    }

    /// `↓a` for some `a`.
    pub fn is_principal(&self, s: ElemSet) -> bool {
        s.iter().any(|a| self.down[a] == s)
    }

    /// Every downset, in increasing mask order.
    pub fn downsets(&self) -> Vec<ElemSet> {
        assert!(self.len() <= 24, "downset enumeration is exponential");
        self.carrier().subsets().filter(|&s| self.is_downset(s)).collect()
    }

    /// Smallest application-closed, upward closed set containing `gens`.
    pub fn generated_filter(&self, gens: ElemSet) -> ElemSet {
        let mut cur = self.up_closure(gens);
        loop {
            let mut next = cur;
            for a in cur.iter() {
                for b in cur.iter() {
                    if let Some(c) = self.app(a, b) {
                        next.insert(c);
                    }
                }
            }
            let next = self.up_closure(next);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// True iff `s` is upward closed and closed under defined applications.
    pub fn is_filter(&self, s: ElemSet) -> bool {
        self.up_closure(s) == s
            && s.iter().all(|a| {
                s.iter()
                    .all(|b| self.app(a, b).map_or(true, |c| s.contains(c)))
            })
    }

    /// Exhaustive check of the mode's monotonicity law; at most `limit` reports.
    pub fn monotonicity_violations(&self, limit: usize) -> Vec<MonotonicityViolation> {
        let mut out = Vec::new();
        for a in self.elems() {
            for a2 in self.up[a].iter() {
                for b in self.elems() {
                    let b2s = match self.mode {
                        Mode::Standard => self.up[b],
                        Mode::Lazy => ElemSet::singleton(b),
                    };
                    for b2 in b2s.iter() {
                        let Some(big) = self.app(a2, b2) else { continue };
                        let ok = self.app(a, b).is_some_and(|small| self.le(small, big));
                        if !ok {
                            out.push(MonotonicityViolation {
                                a: self.names[a].clone(),
                                a2: self.names[a2].clone(),
                                b: self.names[b].clone(),
                                b2: self.names[b2].clone(),
                                found: self
                                    .app(a, b)
                                    .map_or("undefined".into(), |c| self.names[c].clone()),
                                expected_below: self.names[big].clone(),
                            });
                            if out.len() >= limit {
                                return out;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity_violations(1).is_empty()
    }

    /// Whether every application is defined.
    pub fn is_total(&self) -> bool {
        self.app.iter().all(Option::is_some)
    }

    /// Inverse of [`validate_opca`]: the structure in file format.
    pub fn to_text(&self) -> String {
        let mut s = format!("elements {}\n", self.names.join(" "));
        for a in self.elems() {
            for b in self.up[a].iter() {
                if a != b {
                    s += &format!("le {} {}\n", self.names[a], self.names[b]);
                }
            }
        }
        for a in self.elems() {
            for b in self.elems() {
                if let Some(c) = self.app(a, b) {
                    s += &format!("app {} {} {}\n", self.names[a], self.names[b], self.names[c]);
                }
            }
        }
        s += match self.mode {
            Mode::Standard => "mode standard\n",
            Mode::Lazy => "mode lazy\n",
        };
        if self.filter != self.carrier() {
            let gens: Vec<_> = self.filter.iter().map(|a| self.names[a].as_str()).collect();
            s += &format!("filter {}\n", gens.join(" "));
        }
        s += &match &self.phi {
            Phi::Inhabited => "phi inhabited\n".to_string(),
            Phi::Intersects(c) if *c == self.filter => "phi intersects\n".to_string(),
            other => format!("phi {}\n", other.describe(&self.names)),
        };
        s
    }
}

impl Applicative for FiniteOpca {
    type Elem = Elem;

    fn le(&self, a: &Elem, b: &Elem) -> bool {
        FiniteOpca::le(self, *a, *b)
    }

    fn app(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        FiniteOpca::app(self, *a, *b)
    }

    fn mode(&self) -> Mode {
        self.mode
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Parses `{a b} {c}` groups.
pub(crate) fn parse_braced_sets(
    text: &str,
    lookup: &dyn Fn(&str) -> Option<usize>,
    line: usize,
) -> Result<Vec<ElemSet>, OpcaError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('{') else {
            return Err(OpcaError::Parse {
                line,
                message: format!("expected `{{` at `{rest}`"),
            });
        };
        let Some(end) = body.find('}') else {
            return Err(OpcaError::Parse {
                line,
                message: "unclosed `{`".into(),
            });
        };
        let mut set = ElemSet::EMPTY;
        for name in body[..end].split_whitespace() {
            let a = lookup(name).ok_or_else(|| OpcaError::UnknownElement {
                line,
                name: name.to_string(),
            })?;
            set.insert(a);
        }
        out.push(set);
        rest = body[end + 1..].trim_start();
    }
    Ok(out)
}

/// Parses `{a b} {c}` groups of element names of `a`.
pub fn parse_sets(text: &str, a: &FiniteOpca, line: usize) -> Result<Vec<ElemSet>, OpcaError> {
    parse_braced_sets(text, &|x| a.index(x), line)
}

/// Parses and validates the OPCA file format.
///
/// ```text
/// elements e t
/// le e t            # generators; the reflexive-transitive closure is used
/// app e e e
/// app e t e
/// app t e e
/// app t t t
/// mode standard     # or: lazy
/// filter t          # optional generators of the internal filter
/// phi inhabited     # or: intersects | principal {e} {e t}
/// ```
///
/// Missing `app` entries are undefined. Without `le` lines the order is discrete.
pub fn validate_opca(text: &str) -> Result<FiniteOpca, OpcaError> {
    let mut names: Vec<String> = Vec::new();
    let mut le_pairs: Vec<(usize, usize)> = Vec::new();
    let mut apps: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    let mut mode = Mode::Standard;
    let mut filter = None;
    let mut phi_line: Option<(usize, String)> = None;

    let lookup = |names: &[String], line: usize, n: &str| {
        names
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| OpcaError::UnknownElement {
                line,
                name: n.to_string(),
            })
    };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = strip_comment(raw).trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let key = words.next().unwrap_or_default();
        let args: Vec<&str> = words.collect();
        match key {
            "elements" => {
                for a in args {
                    if names.iter().any(|n| n == a) {
                        return Err(OpcaError::Parse {
                            line,
                            message: format!("duplicate element `{a}`"),
                        });
                    }
                    if !a.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                        return Err(OpcaError::Parse {
                            line,
                            message: format!("bad element name `{a}`"),
                        });
                    }
                    names.push(a.to_string());
                }
            }
            "le" => {
                if args.len() < 2 {
                    return Err(OpcaError::Parse {
                        line,
                        message: "`le` needs at least two elements".into(),
                    });
                }
                let idx = args
                    .iter()
                    .map(|a| lookup(&names, line, a))
                    .collect::<Result<Vec<_>, _>>()?;
                le_pairs.extend(idx.windows(2).map(|w| (w[0], w[1])));
            }
            "app" => {
                if args.len() != 3 {
                    return Err(OpcaError::Parse {
                        line,
                        message: "`app` needs exactly three elements: a b ab".into(),
                    });
                }
                let a = lookup(&names, line, args[0])?;
                let b = lookup(&names, line, args[1])?;
                let c = lookup(&names, line, args[2])?;
                if let Some((old, _)) = apps.insert((a, b), (c, line)) {
                    if old != c {
                        return Err(OpcaError::Parse {
                            line,
                            message: format!(
                                "conflicting entries for {} {}",
                                args[0], args[1]
                            ),
                        });
                    }
                }
            }
            "mode" => {
                mode = match args.as_slice() {
                    ["standard"] => Mode::Standard,
                    ["lazy"] => Mode::Lazy,
                    _ => {
                        return Err(OpcaError::Parse {
                            line,
                            message: "mode must be `standard` or `lazy`".into(),
                        })
                    }
                }
            }
            "filter" => {
                let mut s = ElemSet::EMPTY;
                for a in args {
                    s.insert(lookup(&names, line, a)?);
                }
                filter = Some(filter.unwrap_or(ElemSet::EMPTY).union(s));
            }
            "phi" => phi_line = Some((line, args.join(" "))),
            other => {
                return Err(OpcaError::Parse {
                    line,
                    message: format!("unknown directive `{other}`"),
                })
            }
        }
    }

    let n = names.len();
    if n == 0 {
        return Err(OpcaError::Parse {
            line: 1,
            message: "no `elements` line".into(),
        });
    }
    if n > MAX_ELEMENTS {
        return Err(OpcaError::TooLarge(n));
    }
    let mut up: Vec<ElemSet> = (0..n).map(ElemSet::singleton).collect();
    for &(a, b) in &le_pairs {
        up[a].insert(b);
    }
    // Transitive closure.
    loop {
        let mut changed = false;
        for a in 0..n {
            let closed = up[a].iter().fold(up[a], |acc, b| acc.union(up[b]));
            if closed != up[a] {
                up[a] = closed;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut app = vec![None; n * n];
    for (&(a, b), &(c, _)) in &apps {
        app[a * n + b] = Some(c);
    }

    let tmp = FiniteOpca::from_tables(names.clone(), up.clone(), app.clone(), mode, filter, Phi::Inhabited)?;
    let phi = match phi_line {
        None => Phi::Inhabited,
        Some((line, spec)) => {
            let spec = spec.trim();
            if spec == "inhabited" {
                Phi::Inhabited
            } else if spec == "intersects" {
                Phi::Intersects(tmp.filter())
            } else if let Some(rest) = spec.strip_prefix("principal") {
                let sets = parse_braced_sets(rest, &|x| tmp.index(x), line)?;
                Phi::Principal(sets.into_iter().map(|s| tmp.down_closure(s)).collect())
            } else {
                return Err(OpcaError::Parse {
                    line,
                    message: "phi must be `inhabited`, `intersects` or `principal {..} ..`".into(),
                });
            }
        }
    };
    FiniteOpca::new(names, up, app, mode, filter, phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    const S2: &str = "elements e t\nle e t\napp e e e\napp e t e\napp t e e\napp t t t\nmode standard\nphi inhabited\n";

    #[test]
    fn s2_is_valid() {
        let a = validate_opca(S2).unwrap();
        assert_eq!(a.len(), 2);
        assert!(a.le(0, 1) && !a.le(1, 0));
        assert_eq!(a.app(1, 1), Some(1));
        assert_eq!(a.filter(), a.carrier());
    }

    #[test]
    fn swapped_table_violates_monotonicity() {
        let bad = "elements e t\nle e t\napp e e t\napp e t e\napp t e e\napp t t e\n";
        match validate_opca(bad) {
            Err(OpcaError::Monotonicity(v)) => {
                assert!(v.iter().any(|x| x.a == "e" && x.a2 == "t" && x.b == "e" && x.b2 == "t"));
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn missing_order_is_discrete() {
        let a = validate_opca("elements x y\napp x y x\n").unwrap();
        assert!(!a.le(0, 1) && !a.le(1, 0));
        assert_eq!(a.app(1, 1), None);
    }

    #[test]
    fn unknown_element_reports_line() {
        assert_eq!(
            validate_opca("elements a\n\napp a a z\n"),
            Err(OpcaError::UnknownElement {
                line: 3,
                name: "z".into()
            })
        );
    }

    #[test]
    fn builder_rejects_non_preorder() {
        let up = vec![ElemSet::from_elems([0, 1]), ElemSet::from_elems([1, 2]), ElemSet::from_elems([2])];
        let r = FiniteOpca::from_tables(
            vec!["a".into(), "b".into(), "c".into()],
            up,
            vec![None; 9],
            Mode::Standard,
            None,
            Phi::Inhabited,
        );
        assert!(matches!(r, Err(OpcaError::NotPreorder(_))));
    }

    #[test]
    fn filter_is_generated() {
        let a = validate_opca(&format!("{S2}filter t\n")).unwrap();
        assert_eq!(a.filter(), ElemSet::singleton(1));
        assert!(a.is_filter(a.filter()));
    }

    #[test]
    fn lazy_mode_ignores_right_argument() {
        // app(x, e) undefined while app(x, t) is defined: fine lazily, not standardly.
        let text = "elements e t\nle e t\napp e t e\napp t t t\n";
        assert!(matches!(validate_opca(text), Err(OpcaError::Monotonicity(_))));
        assert!(validate_opca(&format!("{text}mode lazy\n")).is_ok());
    }

    #[test]
    fn text_round_trip() {
        let a = validate_opca(&format!("{S2}filter t\nphi principal {{t}}\n")).unwrap();
        assert_eq!(validate_opca(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn downsets_of_chain() {
        let a = validate_opca(S2).unwrap();
        assert_eq!(a.downsets(), vec![ElemSet(0), ElemSet(1), ElemSet(3)]);
    }
}
