use std::fmt;

use super::Term;

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Comb(c) => write!(f, "{c}"),
            Term::Var(x) | Term::Const(x) => write!(f, "{x}"),
            Term::Lam(x, body) => write!(f, "\\{x}. {body}"),
            Term::App(fun, arg) => {
                match fun.as_ref() {
                    Term::Lam(..) => write!(f, "({fun})")?,
                    _ => write!(f, "{fun}")?,
                }
                match arg.as_ref() {
                    Term::App(..) | Term::Lam(..) => write!(f, " ({arg})"),
                    _ => write!(f, " {arg}"),
                }
            }
        }
    }
}

impl serde::Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use crate::terms::parse_term;

    #[test]
    fn prints_minimal_parentheses() {
        for src in ["b x (y z)", "k a b", "\\x. \\y. x", "(\\x. x) (k a)", "w (k k)"] {
            assert_eq!(parse_term(src).unwrap().to_string(), src);
        }
    }
}
