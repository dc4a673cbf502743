use std::fmt;

use super::Applicative;
use crate::terms::{parse_term, Term};

/// A partial combinatory function `Aⁿ ⇀ A`: projections closed under
/// pointwise application.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyExpr {
    arity: usize,
    body: Node,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Proj(usize),
    App(Box<Node>, Box<Node>),
}

impl PolyExpr {
    /// `xᵢ` (0-based) of an `arity`-ary function.
    pub fn proj(arity: usize, i: usize) -> PolyExpr {
        assert!(i < arity, "projection index out of range");
        PolyExpr {
            arity,
            body: Node::Proj(i),
        }
    }

    pub fn app(f: PolyExpr, g: PolyExpr) -> PolyExpr {
        assert_eq!(f.arity, g.arity, "pointwise application needs equal arities");
        PolyExpr {
            arity: f.arity,
            body: Node::App(Box::new(f.body), Box::new(g.body)),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Parses `\x1 ... xn. body` where the body uses only the binders.
    pub fn parse(text: &str) -> Result<PolyExpr, String> {
        let t = parse_term(text).map_err(|e| e.to_string())?;
        let mut binders = Vec::new();
        let mut cur = &t;
        while let Term::Lam(x, body) = cur {
            binders.push(x.to_string());
            cur = body;
        }
        if binders.is_empty() {
            return Err("expected `\\x1 ... xn. body`".into());
        }
        fn conv(t: &Term, binders: &[String]) -> Result<Node, String> {
            match t {
                // The innermost binder with a given name wins.
                Term::Var(x) => binders
                    .iter()
                    .rposition(|b| **b == **x)
                    .map(Node::Proj)
                    .ok_or_else(|| format!("`{x}` is not a binder")),
                Term::App(f, a) => Ok(Node::App(Box::new(conv(f, binders)?), Box::new(conv(a, binders)?))),
                other => Err(format!("`{other}` is not allowed in a combinatory function body")),
            }
        }
        Ok(PolyExpr {
            arity: binders.len(),
            body: conv(cur, &binders)?,
        })
    }

    /// `k(x, y) = x`
    pub fn k() -> PolyExpr {
        PolyExpr::proj(2, 0)
    }

    /// `s(x, y, z) = x z (y z)`
    pub fn s() -> PolyExpr {
        let p = |i| PolyExpr::proj(3, i);
        PolyExpr::app(PolyExpr::app(p(0), p(2)), PolyExpr::app(p(1), p(2)))
    }

    /// `i(x) = x`
    pub fn identity() -> PolyExpr {
        PolyExpr::proj(1, 0)
    }

    /// `(x, y) ↦ x`; realizers of "true".
    pub fn first() -> PolyExpr {
        PolyExpr::proj(2, 0)
    }

    /// `(x, y) ↦ y`; realizers of "false".
    pub fn second() -> PolyExpr {
        PolyExpr::proj(2, 1)
    }

    /// `p(x, y, z) = z x y`
    pub fn pair() -> PolyExpr {
        let p = |i| PolyExpr::proj(3, i);
        PolyExpr::app(PolyExpr::app(p(2), p(0)), p(1))
    }

    /// `l(x, y, z) = y x`
    pub fn left() -> PolyExpr {
        PolyExpr::app(PolyExpr::proj(3, 1), PolyExpr::proj(3, 0))
    }

    /// `r(x, y, z) = z x`
    pub fn right() -> PolyExpr {
        PolyExpr::app(PolyExpr::proj(3, 2), PolyExpr::proj(3, 0))
    }

    /// `b(x, y, z) = x (y z)`
    pub fn compose() -> PolyExpr {
        let p = |i| PolyExpr::proj(3, i);
        PolyExpr::app(p(0), PolyExpr::app(p(1), p(2)))
    }

    /// `f(x⃗)`, or `None` outside the domain.
    pub fn eval<A: Applicative>(&self, a: &A, args: &[A::Elem]) -> Option<A::Elem> {
        assert_eq!(args.len(), self.arity);
        fn go<A: Applicative>(n: &Node, a: &A, args: &[A::Elem]) -> Option<A::Elem> {
            match n {
                Node::Proj(i) => Some(args[*i].clone()),
                Node::App(f, g) => {
                    let f = go(f, a, args)?;
                    let g = go(g, a, args)?;
                    a.app(&f, &g)
                }
            }
        }
        go(&self.body, a, args)
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(n: &Node, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
            match n {
                Node::Proj(i) => write!(f, "x{}", i + 1),
                Node::App(l, r) => {
                    if !top {
                        write!(f, "(")?;
                    }
                    go(l, f, true)?;
                    write!(f, " ")?;
                    go(r, f, false)?;
                    if !top {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
            }
        }
        write!(f, "\\")?;
        for i in 0..self.arity {
            write!(f, "x{} ", i + 1)?;
        }
        write!(f, ". ")?;
        go(&self.body, f, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_matches_constructors() {
        assert_eq!(PolyExpr::parse("\\x y z. x z (y z)").unwrap(), PolyExpr::s());
        assert_eq!(PolyExpr::parse("\\x y. x").unwrap(), PolyExpr::k());
        assert_eq!(PolyExpr::parse("\\x y z. z x y").unwrap(), PolyExpr::pair());
    }

    #[test]
    fn parse_rejects_free_names() {
        assert!(PolyExpr::parse("\\x. y").is_err());
        assert!(PolyExpr::parse("x").is_err());
        assert!(PolyExpr::parse("\\x. k x").is_err());
    }

    #[test]
    fn display_round_trips() {
        for p in [PolyExpr::s(), PolyExpr::pair(), PolyExpr::left(), PolyExpr::identity()] {
            assert_eq!(PolyExpr::parse(&p.to_string()).unwrap(), p);
        }
    }
}
