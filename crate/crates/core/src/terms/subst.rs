use std::sync::Arc;

use super::{Symbol, Term, VarSet};

/// First name of the form `{base}_{n}` that is not in `avoid`.
pub fn fresh_variable(base: &str, avoid: &VarSet) -> Symbol {
    let stem = base.split('_').next().unwrap_or(base);
    (0..)
        .map(|n| Symbol::from(format!("{stem}_{n}")))
        .find(|s| !avoid.contains(s))
        .expect("unbounded counter")
}

/// `m[n/x]`, renaming binders that would capture a free variable of `n`.
pub fn substitute(m: &Term, x: &str, n: &Term) -> Term {
    let fv_n = n.free_vars();
    subst(m, x, n, &fv_n)
}

fn subst(m: &Term, x: &str, n: &Term, fv_n: &VarSet) -> Term {
    match m {
        Term::Var(y) if &**y == x => n.clone(),
        Term::Var(_) | Term::Comb(_) | Term::Const(_) => m.clone(),
        Term::App(f, a) => Term::App(
            Arc::new(subst(f, x, n, fv_n)),
            Arc::new(subst(a, x, n, fv_n)),
        ),
        Term::Lam(y, _) if &**y == x => m.clone(),
        Term::Lam(y, body) => {
            if !body.occurs_free(x) {
                return m.clone();
            }
            if fv_n.contains(y) {
                let mut avoid = fv_n.clone();
                avoid.extend(body.all_vars());
                avoid.insert(Symbol::from(x));
                let z = fresh_variable(y, &avoid);
                let renamed = subst(body, y, &Term::Var(z.clone()), &VarSet::from([z.clone()]));
                Term::Lam(z, Arc::new(subst(&renamed, x, n, fv_n)))
            } else {
                Term::Lam(y.clone(), Arc::new(subst(body, x, n, fv_n)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn variable_rules() {
        assert_eq!(substitute(&p("x"), "x", &p("k k")), p("k k"));
        assert_eq!(substitute(&p("y"), "x", &p("k")), p("y"));
        assert_eq!(substitute(&p("x x"), "x", &p("w")), p("w w"));
    }

    #[test]
    fn binder_equal_to_target_is_untouched() {
        let t = p("\\x. x y");
        assert_eq!(substitute(&t, "x", &p("k")), t);
    }

    #[test]
    fn capture_is_avoided() {
        // (\y. x y)[y/x] must not become \y. y y
        let out = substitute(&p("\\y. x y"), "x", &p("y"));
        match &out {
            Term::Lam(z, body) => {
                assert_ne!(&**z, "y");
                assert_eq!(**body, Term::app(p("y"), Term::Var(z.clone())));
            }
            other => panic!("expected lambda, got {other}"),
        }
        assert_eq!(out.free_vars(), VarSet::from([Symbol::from("y")]));
    }

    #[test]
    fn fresh_names_skip_used_ones() {
        let avoid = VarSet::from([Symbol::from("v_0"), Symbol::from("v_1")]);
        assert_eq!(&*fresh_variable("v", &avoid), "v_2");
        assert_eq!(&*fresh_variable("v_7", &VarSet::new()), "v_0");
    }
}
