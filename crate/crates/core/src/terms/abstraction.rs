use std::sync::Arc;

use super::{Term, TermError};

/// `ĥx(M)`: eliminates `x` from a CL-pure term.
///
/// The five rules, applied to the shape of `M`:
///
/// ```text
/// ĥx(x)      = w k
/// ĥx(y)      = k y            y a leaf other than x
/// ĥx(M x)    = w ĥx(M)
/// ĥx(M Q)    = c ĥx(M) Q      x not free in Q
/// ĥx(M(N P)) = ĥx(b M N P)    x free in N P
/// ```
///
/// The fourth rule is stated for every `x`-free argument, not only leaves:
/// with leaves only, closed right-nested arguments such as `b (b (b b))`
/// make the last rule loop forever. On leaf arguments the two readings agree.
///
/// The result never mentions `x`, and `ĥx(M) N` head-reduces to `M[N/x]`.
pub fn bracket_abstract(x: &str, m: &Term) -> Result<Term, TermError> {
    match m {
        Term::Lam(..) => Err(TermError::NotClPure),
        Term::Var(y) if &**y == x => Ok(Term::app(Term::w(), Term::k())),
        Term::Var(_) | Term::Comb(_) | Term::Const(_) => Ok(Term::app(Term::k(), m.clone())),
        Term::App(f, a) => match a.as_ref() {
            Term::Var(y) if &**y == x => Ok(Term::app(Term::w(), bracket_abstract(x, f)?)),
            Term::Lam(..) => Err(TermError::NotClPure),
            _ if !a.occurs_free(x) => {
                if !a.is_cl_pure() {
                    return Err(TermError::NotClPure);
                }
                Ok(Term::App(
                    Arc::new(Term::app(Term::c(), bracket_abstract(x, f)?)),
                    a.clone(),
                ))
            }
            Term::App(n, p) => {
                let bmn = Term::App(
                    Arc::new(Term::App(Arc::new(Term::app(Term::b(), (**f).clone())), n.clone())),
                    p.clone(),
                );
                bracket_abstract(x, &bmn)
            }
            Term::Var(_) | Term::Comb(_) | Term::Const(_) => unreachable!("leaf arguments are x or x-free"),
        },
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CompileOptions {
    /// Use `λ•x.M = g ĥx(M)` for every binder instead of plain `ĥx(M)`.
    pub stack: bool,
    /// Fail with [`TermError::UnboundVariable`] if the result has free variables.
    pub require_closed: bool,
}

/// Eliminates every lambda node, innermost binder first.
pub fn compile_lambda(l: &Term, opts: CompileOptions) -> Result<Term, TermError> {
    let out = compile(l, opts.stack)?;
    if opts.require_closed {
        if let Some(x) = out.free_vars().into_iter().next() {
            return Err(TermError::UnboundVariable(x));
        }
    }
    Ok(out)
}

fn compile(t: &Term, stack: bool) -> Result<Term, TermError> {
    match t {
        Term::Lam(x, body) => {
            let body = compile(body, stack)?;
            let abs = bracket_abstract(x, &body)?;
            Ok(if stack { Term::app(Term::g(), abs) } else { abs })
        }
        Term::App(f, a) => Ok(Term::app(compile(f, stack)?, compile(a, stack)?)),
        _ => Ok(t.clone()),
    }
}

/// The Feferman `s` as a derived combinator: compiled `\x y z. x z (y z)`.
pub fn s_combinator() -> Term {
    let (x, y, z) = (Term::var("x"), Term::var("y"), Term::var("z"));
    let body = Term::app(Term::app(x, z.clone()), Term::app(y, z));
    let lam = Term::lam("x", Term::lam("y", Term::lam("z", body)));
    compile_lambda(&lam, CompileOptions::default()).expect("closed CL body")
}

impl Term {
    /// `i = w k`
    pub fn i() -> Term {
        Term::app(Term::w(), Term::k())
    }

    /// `g = c i`, so that `g x y` head-reduces to `y x`.
    pub fn g() -> Term {
        Term::app(Term::c(), Term::i())
    }

    /// `p = b c g`, so that `p x y z` head-reduces to `z x y`.
    pub fn p() -> Term {
        Term::apply_all(Term::b(), [Term::c(), Term::g()])
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
    fn base_rules() {
        assert_eq!(bracket_abstract("x", &p("x")).unwrap(), p("w k"));
        assert_eq!(bracket_abstract("x", &p("y")).unwrap(), p("k y"));
        assert_eq!(bracket_abstract("x", &p("k x")).unwrap(), p("w (k k)"));
        assert_eq!(bracket_abstract("x", &p("k y")).unwrap(), p("c (k k) y"));
    }

    #[test]
    fn composition_rule_rewrites_through_b() {
        // ĥx(k (x y)) = ĥx(b k x y) = c (w (c (k b) k)) y
        assert_eq!(
            bracket_abstract("x", &p("k (x y)")).unwrap(),
            p("c (w (c (k b) k)) y")
        );
    }

    #[test]
    fn closed_right_nested_arguments_terminate() {
        assert_eq!(
            bracket_abstract("x", &p("b (b (b (b b)))")).unwrap(),
            p("c (k b) (b (b (b b)))")
        );
    }

    #[test]
    fn lambda_is_rejected() {
        assert_eq!(
            bracket_abstract("x", &p("\\y. y")),
            Err(TermError::NotClPure)
        );
    }

    #[test]
    fn compile_identity() {
        assert_eq!(compile_lambda(&p("\\x. x"), CompileOptions::default()).unwrap(), p("w k"));
    }

    #[test]
    fn compile_first_projection_is_innermost_first() {
        assert_eq!(
            compile_lambda(&p("\\x. \\y. x"), CompileOptions::default()).unwrap(),
            p("w (k k)")
        );
    }

    #[test]
    fn stack_flag_prefixes_g() {
        let opts = CompileOptions { stack: true, require_closed: false };
        assert_eq!(compile_lambda(&p("\\x. x"), opts).unwrap(), Term::app(Term::g(), p("w k")));
    }

    #[test]
    fn closedness_is_enforced_on_request() {
        let opts = CompileOptions { stack: false, require_closed: true };
        assert_eq!(
            compile_lambda(&p("\\x. y"), opts),
            Err(TermError::UnboundVariable("y".into()))
        );
        assert!(compile_lambda(&p("\\x. A x"), opts).is_ok());
    }
}
