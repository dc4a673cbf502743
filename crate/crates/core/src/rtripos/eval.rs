use super::model::{mixed_index, tuples, Model};
use super::{arrow, Family, FTerm, Formula, RtriposError};
use crate::opca::{realizer_object, ElemSet, PolyExpr};

#[derive(Debug, Clone)]
enum RTerm {
    Var(usize),
    Const(usize),
    Fun(usize, Vec<RTerm>),
}

#[derive(Debug, Clone)]
enum RFormula {
    True,
    False,
    Eq(RTerm, RTerm),
    Pred(usize, Vec<RTerm>),
    And(Box<RFormula>, Box<RFormula>),
    Or(Box<RFormula>, Box<RFormula>),
    Implies(Box<RFormula>, Box<RFormula>),
    Forall(usize, Box<RFormula>),
    Exists(usize, Box<RFormula>),
}

struct Resolver<'m> {
    model: &'m Model,
    /// (variable, sort) from outermost to innermost.
    scope: Vec<(String, usize)>,
}

impl Resolver<'_> {
    fn term(&self, t: &FTerm, expected: Option<usize>) -> Result<(RTerm, usize), RtriposError> {
        let m = self.model;
        match t {
            FTerm::Name(n) => {
                if let Some(level) = self.scope.iter().rposition(|(v, _)| v == n) {
                    let sort = self.scope[level].1;
                    return Ok((RTerm::Var(level), sort));
                }
                if let Some(s) = expected {
                    return m
                        .elem_id(s, n)
                        .map(|e| (RTerm::Const(e), s))
                        .ok_or_else(|| RtriposError::UnknownName(format!("{n} (expected an element of {})", m.sorts[s].name)));
                }
                let hits: Vec<usize> = (0..m.sorts.len()).filter(|&s| m.elem_id(s, n).is_some()).collect();
                match hits.as_slice() {
                    [s] => Ok((RTerm::Const(m.elem_id(*s, n).unwrap_or_default()), *s)),
                    [] => Err(RtriposError::UnknownName(n.clone())),
                    _ => Err(RtriposError::AmbiguousName(n.clone())),
                }
            }
            FTerm::Apply(f, args) => {
                let id = m
                    .funs
                    .iter()
                    .position(|g| &g.name == f)
                    .ok_or_else(|| RtriposError::UnknownFunction(f.clone()))?;
                let fun = &m.funs[id];
                if fun.domain.len() != args.len() {
                    return Err(RtriposError::Arity {
                        name: f.clone(),
                        expected: fun.domain.len(),
                        found: args.len(),
                    });
                }
                let rargs = self.args(f, &fun.domain, args)?;
                if let Some(s) = expected {
                    self.same_sort(s, fun.codomain, &t.to_string())?;
                }
                Ok((RTerm::Fun(id, rargs), fun.codomain))
            }
        }
    }

    fn args(&self, _name: &str, sorts: &[usize], args: &[FTerm]) -> Result<Vec<RTerm>, RtriposError> {
        sorts
            .iter()
            .zip(args)
            .map(|(&s, a)| {
                let (r, found) = self.term(a, Some(s))?;
                self.same_sort(s, found, &a.to_string())?;
                Ok(r)
            })
            .collect()
    }

    fn same_sort(&self, expected: usize, found: usize, context: &str) -> Result<(), RtriposError> {
        if expected == found {
            return Ok(());
        }
        Err(RtriposError::SortMismatch {
            expected: self.model.sorts[expected].name.clone(),
            found: self.model.sorts[found].name.clone(),
            context: context.into(),
        })
    }

    fn formula(&mut self, f: &Formula) -> Result<RFormula, RtriposError> {
        let m = self.model;
        Ok(match f {
            Formula::True => RFormula::True,
            Formula::False => RFormula::False,
            Formula::Eq(a, b) => {
                let (ra, sa, rb) = match self.term(a, None) {
                    Ok((ra, sa)) => {
                        let (rb, sb) = self.term(b, Some(sa))?;
                        self.same_sort(sa, sb, &b.to_string())?;
                        (ra, sa, rb)
                    }
                    Err(_) => {
                        let (rb, sb) = self.term(b, None)?;
                        let (ra, sa) = self.term(a, Some(sb))?;
                        (ra, sa, rb)
                    }
                };
                let _ = sa;
                RFormula::Eq(ra, rb)
            }
            Formula::Atom(p, args) => {
                let id = m
                    .preds
                    .iter()
                    .position(|q| &q.name == p)
                    .ok_or_else(|| RtriposError::UnknownPredicate(p.clone()))?;
                let pred = &m.preds[id];
                if pred.sorts.len() != args.len() {
                    return Err(RtriposError::Arity {
                        name: p.clone(),
                        expected: pred.sorts.len(),
                        found: args.len(),
                    });
                }
                RFormula::Pred(id, self.args(p, &pred.sorts, args)?)
            }
            Formula::And(a, b) => RFormula::And(Box::new(self.formula(a)?), Box::new(self.formula(b)?)),
            Formula::Or(a, b) => RFormula::Or(Box::new(self.formula(a)?), Box::new(self.formula(b)?)),
            Formula::Implies(a, b) => RFormula::Implies(Box::new(self.formula(a)?), Box::new(self.formula(b)?)),
            Formula::Not(a) => RFormula::Implies(Box::new(self.formula(a)?), Box::new(RFormula::False)),
            Formula::Forall(v, s, body) | Formula::Exists(v, s, body) => {
                let sort = m.sort_id(s)?;
                self.scope.push((v.clone(), sort));
                let body = self.formula(body);
                self.scope.pop();
                let body = Box::new(body?);
                if matches!(f, Formula::Forall(..)) {
                    RFormula::Forall(sort, body)
                } else {
                    RFormula::Exists(sort, body)
                }
            }
        })
    }
}

/// The realizability relation of a model, with `𝕥 = ⟦(x,y)↦x⟧` and `𝕗 = ⟦(x,y)↦y⟧`.
struct Evaluator<'m> {
    model: &'m Model,
    tt: ElemSet,
    ff: ElemSet,
}

impl Evaluator<'_> {
    fn term(&self, t: &RTerm, env: &[usize]) -> Option<usize> {
        match t {
            RTerm::Var(i) => Some(env[*i]),
            RTerm::Const(c) => Some(*c),
            RTerm::Fun(id, args) => {
                let vals = args.iter().map(|a| self.term(a, env)).collect::<Option<Vec<_>>>()?;
                let f = &self.model.funs[*id];
                f.table[mixed_index(f.domain.iter().map(|&s| self.model.sort_size(s)), &vals)]
            }
        }
    }

    /// `{x | ∀t∈𝕥, f∈𝕗. xt↓, xf↓, xt∈P, xf∈Q}`
    fn and(&self, p: ElemSet, q: ElemSet) -> ElemSet {
        let a = &self.model.opca;
        ElemSet::from_elems(a.elems().filter(|&x| {
            self.tt.iter().all(|t| {
                self.ff.iter().all(|f| match (a.app(x, t), a.app(x, f)) {
                    (Some(xt), Some(xf)) => p.contains(xt) && q.contains(xf),
                    _ => false,
                })
            })
        }))
    }

    /// `{x | ∀t∈𝕥, f∈𝕗. xt↓, xf↓, and (xt∈𝕥 ∧ xf∈P or xt∈𝕗 ∧ xf∈Q)}`
    fn or(&self, p: ElemSet, q: ElemSet) -> ElemSet {
        let a = &self.model.opca;
        ElemSet::from_elems(a.elems().filter(|&x| {
            self.tt.iter().all(|t| {
                self.ff.iter().all(|f| match (a.app(x, t), a.app(x, f)) {
                    (Some(xt), Some(xf)) => {
                        (self.tt.contains(xt) && p.contains(xf)) || (self.ff.contains(xt) && q.contains(xf))
                    }
                    _ => false,
                })
            })
        }))
    }

    fn eval(&self, f: &RFormula, env: &mut Vec<usize>) -> ElemSet {
        let m = self.model;
        let full = m.opca.carrier();
        match f {
            RFormula::True => full,
            RFormula::False => ElemSet::EMPTY,
            RFormula::Eq(a, b) => match (self.term(a, env), self.term(b, env)) {
                (Some(x), Some(y)) if x == y => full,
                _ => ElemSet::EMPTY,
            },
            RFormula::Pred(id, args) => {
                let p = &m.preds[*id];
                let Some(vals) = args.iter().map(|a| self.term(a, env)).collect::<Option<Vec<_>>>() else {
                    return ElemSet::EMPTY;
                };
                p.table[mixed_index(p.sorts.iter().map(|&s| m.sort_size(s)), &vals)]
            }
            RFormula::And(a, b) => {
                let (x, y) = (self.eval(a, env), self.eval(b, env));
                self.and(x, y)
            }
            RFormula::Or(a, b) => {
                let (x, y) = (self.eval(a, env), self.eval(b, env));
                self.or(x, y)
            }
            RFormula::Implies(a, b) => {
                let (x, y) = (self.eval(a, env), self.eval(b, env));
                arrow(&m.opca, x, y)
            }
            RFormula::Forall(s, body) => {
                let mut acc = full;
                for v in 0..m.sort_size(*s) {
                    env.push(v);
                    acc = acc.intersect(self.eval(body, env));
                    env.pop();
                }
                acc
            }
            RFormula::Exists(s, body) => {
                let mut acc = ElemSet::EMPTY;
                for v in 0..m.sort_size(*s) {
                    env.push(v);
                    acc = acc.union(self.eval(body, env));
                    env.pop();
                }
                acc
            }
        }
    }
}

/// Realizers of `f` for every assignment of the free variables `free`
/// (name, sort), in mixed-radix order with the first variable most significant.
pub fn eval_formula(model: &Model, f: &Formula, free: &[(&str, &str)]) -> Result<Family, RtriposError> {
    let mut scope = Vec::new();
    for (v, s) in free {
        scope.push((v.to_string(), model.sort_id(s)?));
    }
    let sizes: Vec<usize> = scope.iter().map(|(_, s)| model.sort_size(*s)).collect();
    let mut r = Resolver { model, scope };
    let rf = r.formula(f)?;
    let ev = Evaluator {
        model,
        tt: realizer_object(&model.opca, &PolyExpr::first()),
        ff: realizer_object(&model.opca, &PolyExpr::second()),
    };
    Ok(Family(
        tuples(&sizes)
            .into_iter()
            .map(|mut env| ev.eval(&rf, &mut env))
            .collect(),
    ))
}

/// Realizers of a sentence.
pub fn realizers(model: &Model, sentence: &Formula) -> Result<ElemSet, RtriposError> {
    Ok(eval_formula(model, sentence, &[])?.get(0))
}

/// A sentence is valid iff its realizers belong to the model's `φ`.
pub fn is_valid(model: &Model, sentence: &Formula) -> Result<bool, RtriposError> {
    Ok(model.phi.contains(realizers(model, sentence)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opca::builtin;
    use crate::rtripos::parse_formula;

    fn model() -> Model {
        Model::parse(
            "use opca builtin:s2\nsort X = x1 x2\npred P : X = x1 {e t} ; x2 {}\nfun g : X -> X = x1 x1 ; x2 x1\n",
            None,
        )
        .unwrap()
    }

    fn val(m: &Model, s: &str) -> ElemSet {
        realizers(m, &parse_formula(s).unwrap()).unwrap()
    }

    #[test]
    fn constants_and_equality() {
        let m = model();
        assert_eq!(val(&m, "T"), ElemSet(3));
        assert_eq!(val(&m, "F"), ElemSet::EMPTY);
        assert_eq!(val(&m, "x1 = x1"), ElemSet(3));
        assert_eq!(val(&m, "x1 = x2"), ElemSet::EMPTY);
        assert_eq!(val(&m, "g(x2) = x1"), ElemSet(3));
    }

    #[test]
    fn quantifiers_over_predicates() {
        let m = model();
        assert_eq!(val(&m, "exists u:X. P(u)"), ElemSet(3));
        assert_eq!(val(&m, "forall u:X. P(u)"), ElemSet::EMPTY);
        assert_eq!(val(&m, "forall u:X. P(g(u))"), ElemSet(3));
    }

    #[test]
    fn free_variables_give_families() {
        let m = model();
        let f = parse_formula("P(u)").unwrap();
        assert_eq!(eval_formula(&m, &f, &[("u", "X")]).unwrap(), Family(vec![ElemSet(3), ElemSet::EMPTY]));
    }

    #[test]
    fn sort_errors() {
        let m = model();
        let bad = parse_formula("P(e)").unwrap();
        assert!(realizers(&m, &bad).is_err());
        assert!(matches!(
            realizers(&m, &parse_formula("Q(x1)").unwrap()),
            Err(RtriposError::UnknownPredicate(_))
        ));
        assert!(realizers(&m, &parse_formula("forall v:Nope. T").unwrap()).is_err());
    }

    #[test]
    fn empty_sort_quantifiers() {
        let mut m = Model::new(builtin("s2").unwrap());
        m.add_sort("E", vec![]).unwrap();
        assert_eq!(val(&m, "forall v:E. F"), ElemSet(3));
        assert_eq!(val(&m, "exists v:E. T"), ElemSet::EMPTY);
    }

    #[test]
    fn builtin_application_domain() {
        let m = Model::new(builtin("s2").unwrap());
        assert_eq!(val(&m, "forall a:A. forall b:A. D(a, b)"), ElemSet(3));
        assert_eq!(val(&m, "app(t, e) = e"), ElemSet(3));
        assert_eq!(val(&m, "C(e)"), ElemSet(1));
    }
}
