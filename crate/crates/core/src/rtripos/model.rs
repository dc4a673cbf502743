use std::collections::BTreeMap;
use std::path::Path;

use super::RtriposError;
use crate::assemblies::Assembly;
use crate::opca::{load_opca, ElemSet, FiniteOpca, Phi};

/// Name of the built-in sort whose elements are the carrier.
pub const CARRIER_SORT: &str = "A";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sort {
    pub name: String,
    pub elems: Vec<String>,
}

/// A predicate over a product of sorts, stored densely in mixed radix
/// (first argument most significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicate {
    pub name: String,
    pub sorts: Vec<usize>,
    pub table: Vec<ElemSet>,
}

/// A partial function between sorts, stored like [`Predicate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Function {
    pub name: String,
    pub domain: Vec<usize>,
    pub codomain: usize,
    pub table: Vec<Option<usize>>,
}

/// Sorts, predicates and functions over a finite structure with an external filter.
///
/// Always present: the sort `A` (the carrier), the predicates `C(a) = ↓a`
/// and `D(a, b)` (full iff `ab` is defined), and the partial function
/// `app(a, b) = ab`.
#[derive(Debug, Clone)]
pub struct Model {
    pub opca: FiniteOpca,
    pub phi: Phi,
    pub sorts: Vec<Sort>,
    pub preds: Vec<Predicate>,
    pub funs: Vec<Function>,
    pub assemblies: BTreeMap<String, Assembly>,
}

pub(crate) fn mixed_index(sizes: impl Iterator<Item = usize>, values: &[usize]) -> usize {
    sizes.zip(values).fold(0, |acc, (n, &v)| acc * n + v)
}

impl Model {
    pub fn new(opca: FiniteOpca) -> Model {
        let phi = opca.phi().clone();
        let n = opca.len();
        let carrier = Sort {
            name: CARRIER_SORT.into(),
            elems: opca.names().to_vec(),
        };
        let c = Predicate {
            name: "C".into(),
            sorts: vec![0],
            table: opca.elems().map(|a| opca.down(a)).collect(),
        };
        let mut dtab = Vec::with_capacity(n * n);
        let mut atab = Vec::with_capacity(n * n);
        for a in opca.elems() {
            for b in opca.elems() {
                let ab = opca.app(a, b);
                dtab.push(if ab.is_some() { opca.carrier() } else { ElemSet::EMPTY });
                atab.push(ab);
            }
        }
        let d = Predicate {
            name: "D".into(),
            sorts: vec![0, 0],
            table: dtab,
        };
        let app = Function {
            name: "app".into(),
            domain: vec![0, 0],
            codomain: 0,
            table: atab,
        };
        Model {
            opca,
            phi,
            sorts: vec![carrier],
            preds: vec![c, d],
            funs: vec![app],
            assemblies: BTreeMap::new(),
        }
    }

    pub fn with_phi(mut self, phi: Phi) -> Model {
        self.phi = phi;
        self
    }

    pub fn sort_id(&self, name: &str) -> Result<usize, RtriposError> {
        self.sorts
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| RtriposError::UnknownSort(name.into()))
    }

    pub fn sort_size(&self, s: usize) -> usize {
        self.sorts[s].elems.len()
    }

    pub fn elem_id(&self, sort: usize, name: &str) -> Option<usize> {
        self.sorts[sort].elems.iter().position(|e| e == name)
    }

    pub fn pred(&self, name: &str) -> Option<&Predicate> {
        self.preds.iter().find(|p| p.name == name)
    }

    pub fn fun(&self, name: &str) -> Option<&Function> {
        self.funs.iter().find(|f| f.name == name)
    }

    fn check_fresh(&self, name: &str) -> Result<(), RtriposError> {
        if self.sorts.iter().any(|s| s.name == name)
            || self.preds.iter().any(|p| p.name == name)
            || self.funs.iter().any(|f| f.name == name)
        {
            return Err(RtriposError::Duplicate(name.into()));
        }
        Ok(())
    }

    pub fn add_sort(&mut self, name: &str, elems: Vec<String>) -> Result<usize, RtriposError> {
        self.check_fresh(name)?;
        for (i, e) in elems.iter().enumerate() {
            if elems[..i].contains(e) {
                return Err(RtriposError::Duplicate(format!("{name}.{e}")));
            }
        }
        self.sorts.push(Sort {
            name: name.into(),
            elems,
        });
        Ok(self.sorts.len() - 1)
    }

    /// Adds a predicate; every value must be a downset.
    pub fn add_pred(&mut self, name: &str, sorts: Vec<usize>, table: Vec<ElemSet>) -> Result<(), RtriposError> {
        self.check_fresh(name)?;
        let size: usize = sorts.iter().map(|&s| self.sort_size(s)).product();
        assert_eq!(table.len(), size, "predicate table size");
        if let Some(bad) = table.iter().find(|&&u| !self.opca.is_downset(u)) {
            return Err(RtriposError::NotDownset {
                name: name.into(),
                set: bad.display(self.opca.names()).to_string(),
            });
        }
        self.preds.push(Predicate {
            name: name.into(),
            sorts,
            table,
        });
        Ok(())
    }

    /// A predicate with values full (related) or empty.
    pub fn add_relation(&mut self, name: &str, sorts: Vec<usize>, related: impl Fn(&[usize]) -> bool) -> Result<(), RtriposError> {
        let full = self.opca.carrier();
        let sizes: Vec<usize> = sorts.iter().map(|&s| self.sort_size(s)).collect();
        let table = tuples(&sizes)
            .iter()
            .map(|t| if related(t) { full } else { ElemSet::EMPTY })
            .collect();
        self.add_pred(name, sorts, table)
    }

    pub fn add_fun(&mut self, name: &str, domain: Vec<usize>, codomain: usize, table: Vec<Option<usize>>) -> Result<(), RtriposError> {
        self.check_fresh(name)?;
        let size: usize = domain.iter().map(|&s| self.sort_size(s)).product();
        assert_eq!(table.len(), size, "function table size");
        self.funs.push(Function {
            name: name.into(),
            domain,
            codomain,
            table,
        });
        Ok(())
    }

    /// Parses the model file format; `use opca` paths are relative to `base`.
    ///
    /// ```text
    /// use opca builtin:s2
    /// phi inhabited                       # optional; defaults to the structure's
    /// sort X = x1 x2
    /// pred P : X = x1 {e t} ; x2 {}
    /// pred R : A * X = e x1 {e} ; t x2 {e t}
    /// fun  g : X -> X = x1 x1 ; x2 x1
    /// asm  Y = y1 {e t} ; y2 {e}
    /// map  f : Y -> X = y1 x1 ; y2 x1
    /// ```
    ///
    /// Unlisted predicate entries are empty; unlisted function entries undefined.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Model, RtriposError> {
        let mut model: Option<Model> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: String| RtriposError::ModelSyntax { line, message };
            let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            let rest = rest.trim();
            if key == "use" {
                let spec = rest
                    .strip_prefix("opca")
                    .map(str::trim)
                    .ok_or_else(|| syntax("expected `use opca <file>`".into()))?;
                let spec = match base {
                    Some(dir) if !spec.starts_with("builtin:") && !Path::new(spec).is_absolute() => {
                        dir.join(spec).to_string_lossy().into_owned()
                    }
                    _ => spec.to_string(),
                };
                if model.is_some() {
                    return Err(syntax("`use opca` must appear once, first".into()));
                }
                model = Some(Model::new(load_opca(&spec)?));
                continue;
            }
            let m = model
                .as_mut()
                .ok_or_else(|| syntax("the first directive must be `use opca <file>`".into()))?;
            match key {
                "phi" => m.phi = m.parse_phi(rest, line)?,
                "sort" => {
                    let (name, elems) = rest
                        .split_once('=')
                        .ok_or_else(|| syntax("expected `sort NAME = e1 e2 ...`".into()))?;
                    m.add_sort(name.trim(), elems.split_whitespace().map(String::from).collect())?;
                }
                "pred" => m.parse_pred(rest, line)?,
                "fun" | "map" => m.parse_fun(rest, line, key == "map")?,
                "asm" => m.parse_asm(rest, line)?,
                other => return Err(syntax(format!("unknown directive `{other}`"))),
            }
        }
        model.ok_or(RtriposError::ModelSyntax {
            line: 1,
            message: "empty model: expected `use opca <file>`".into(),
        })
    }

    pub fn load(path: &str) -> Result<Model, RtriposError> {
        let text = std::fs::read_to_string(path).map_err(|e| RtriposError::ModelSyntax {
            line: 0,
            message: format!("cannot read {path}: {e}"),
        })?;
        Model::parse(&text, Path::new(path).parent())
    }

    fn parse_phi(&self, spec: &str, line: usize) -> Result<Phi, RtriposError> {
        let a = &self.opca;
        match spec {
            "inhabited" => Ok(Phi::Inhabited),
            "intersects" => Ok(Phi::Intersects(a.filter())),
            _ => {
                let Some(rest) = spec.strip_prefix("principal") else {
                    return Err(RtriposError::ModelSyntax {
                        line,
                        message: "phi must be `inhabited`, `intersects` or `principal {..} ..`".into(),
                    });
                };
                let sets = crate::opca::parse_sets(rest, a, line)?;
                Ok(Phi::Principal(sets.into_iter().map(|s| a.down_closure(s)).collect()))
            }
        }
    }

    fn parse_sorts(&self, text: &str) -> Result<Vec<usize>, RtriposError> {
        text.split('*')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.sort_id(s))
            .collect()
    }

    fn parse_entries(&self, sorts: &[usize], body: &str, line: usize, name: &str) -> Result<Vec<ElemSet>, RtriposError> {
        let size: usize = sorts.iter().map(|&s| self.sort_size(s)).product();
        let mut table = vec![ElemSet::EMPTY; size];
        for entry in body.split(';').map(str::trim).filter(|e| !e.is_empty()) {
            let brace = entry.find('{').ok_or_else(|| RtriposError::ModelSyntax {
                line,
                message: format!("entry `{entry}` lacks a `{{...}}` set"),
            })?;
            let keys: Vec<&str> = entry[..brace].split_whitespace().collect();
            let idx = self.key_index(sorts, &keys, line)?;
            let sets = crate::opca::parse_sets(&entry[brace..], &self.opca, line)?;
            let [set] = sets.as_slice() else {
                return Err(RtriposError::ModelSyntax {
                    line,
                    message: format!("entry `{entry}` needs exactly one set"),
                });
            };
            if !self.opca.is_downset(*set) {
                return Err(RtriposError::NotDownset {
                    name: name.into(),
                    set: set.display(self.opca.names()).to_string(),
                });
            }
            table[idx] = *set;
        }
        Ok(table)
    }

    fn key_index(&self, sorts: &[usize], keys: &[&str], line: usize) -> Result<usize, RtriposError> {
        if keys.len() != sorts.len() {
            return Err(RtriposError::ModelSyntax {
                line,
                message: format!("expected {} key(s), found {}", sorts.len(), keys.len()),
            });
        }
        let vals = sorts
            .iter()
            .zip(keys)
            .map(|(&s, k)| {
                self.elem_id(s, k).ok_or_else(|| RtriposError::ModelSyntax {
                    line,
                    message: format!("`{k}` is not an element of sort {}", self.sorts[s].name),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(mixed_index(sorts.iter().map(|&s| self.sort_size(s)), &vals))
    }

    fn parse_pred(&mut self, rest: &str, line: usize) -> Result<(), RtriposError> {
        let (head, body) = rest.split_once('=').ok_or_else(|| RtriposError::ModelSyntax {
            line,
            message: "expected `pred NAME : SORTS = entries`".into(),
        })?;
        let (name, sorts) = match head.split_once(':') {
            Some((n, s)) => (n.trim(), self.parse_sorts(s)?),
            None => (head.trim(), vec![]),
        };
        let table = self.parse_entries(&sorts, body, line, name)?;
        self.add_pred(name, sorts, table)
    }

    fn parse_fun(&mut self, rest: &str, line: usize, total: bool) -> Result<(), RtriposError> {
        let syntax = |message: String| RtriposError::ModelSyntax { line, message };
        let (head, body) = rest
            .split_once('=')
            .ok_or_else(|| syntax("expected `fun NAME : S1 * S2 -> T = entries`".into()))?;
        let (name, sig) = head
            .split_once(':')
            .ok_or_else(|| syntax("missing `:` signature".into()))?;
        let (dom, cod) = sig
            .split_once("->")
            .ok_or_else(|| syntax("missing `->` in signature".into()))?;
        let domain = self.parse_sorts(dom)?;
        let codomain = self.sort_id(cod.trim())?;
        let size: usize = domain.iter().map(|&s| self.sort_size(s)).product();
        let mut table = vec![None; size];
        for entry in body.split(';').map(str::trim).filter(|e| !e.is_empty()) {
            let words: Vec<&str> = entry.split_whitespace().collect();
            let Some((out, keys)) = words.split_last() else { continue };
            let idx = self.key_index(&domain, keys, line)?;
            let v = self
                .elem_id(codomain, out)
                .ok_or_else(|| syntax(format!("`{out}` is not an element of sort {}", self.sorts[codomain].name)))?;
            table[idx] = Some(v);
        }
        if total && table.iter().any(Option::is_none) {
            return Err(syntax(format!("map `{}` must be total", name.trim())));
        }
        self.add_fun(name.trim(), domain, codomain, table)
    }

    fn parse_asm(&mut self, rest: &str, line: usize) -> Result<(), RtriposError> {
        let syntax = |message: String| RtriposError::ModelSyntax { line, message };
        let (name, body) = rest
            .split_once('=')
            .ok_or_else(|| syntax("expected `asm NAME = x1 {..} ; ...`".into()))?;
        let name = name.trim();
        let mut elems = Vec::new();
        let mut sets = Vec::new();
        for entry in body.split(';').map(str::trim).filter(|e| !e.is_empty()) {
            let brace = entry
                .find('{')
                .ok_or_else(|| syntax(format!("entry `{entry}` lacks a `{{...}}` set")))?;
            let key = entry[..brace].trim();
            if key.is_empty() || key.contains(char::is_whitespace) {
                return Err(syntax(format!("bad element name `{key}`")));
            }
            let set = crate::opca::parse_sets(&entry[brace..], &self.opca, line)?;
            let [set] = set.as_slice() else {
                return Err(syntax(format!("entry `{entry}` needs exactly one set")));
            };
            elems.push(key.to_string());
            sets.push(*set);
        }
        let asm = Assembly::new(&self.opca, elems.clone(), sets).map_err(|e| syntax(e.to_string()))?;
        let sort = self.add_sort(name, elems)?;
        let table = asm.realizers().to_vec();
        self.add_pred(&format!("E_{name}"), vec![sort], table)?;
        self.assemblies.insert(name.to_string(), asm);
        Ok(())
    }
}

/// All tuples of the given sizes, in mixed-radix order.
pub fn tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in sizes {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MODEL: &str = "use opca builtin:s2\nsort X = x1 x2\npred P : X = x1 {e t} ; x2 {}\nfun g : X -> X = x1 x1 ; x2 x1\npred R : A * X = t x2 {e}\nasm Y = y1 {e t} ; y2 {e}\n";

    #[test]
    fn parses_all_directives() {
        let m = Model::parse(MODEL, None).unwrap();
        assert_eq!(m.sorts.len(), 3);
        let p = m.pred("P").unwrap();
        assert_eq!(p.table, vec![ElemSet(3), ElemSet(0)]);
        let r = m.pred("R").unwrap();
        assert_eq!(r.table, vec![ElemSet(0), ElemSet(0), ElemSet(0), ElemSet(1)]);
        assert_eq!(m.fun("g").unwrap().table, vec![Some(0), Some(0)]);
        assert!(m.assemblies.contains_key("Y"));
    }

    #[test]
    fn builtins_exist() {
        let m = Model::new(crate::opca::builtin("s2").unwrap());
        assert_eq!(m.pred("C").unwrap().table, vec![ElemSet(1), ElemSet(3)]);
        assert!(m.fun("app").is_some());
    }

    #[test]
    fn non_downset_is_rejected() {
        let r = Model::parse("use opca builtin:s2\nsort X = x\npred P : X = x {t}\n", None);
        assert!(matches!(r, Err(RtriposError::NotDownset { .. })));
    }

    #[test]
    fn errors_name_the_line() {
        match Model::parse("use opca builtin:s2\nsort X = x\nfrob\n", None) {
            Err(RtriposError::ModelSyntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(Model::parse("sort X = x\n", None).is_err());
    }
}
