use std::sync::Arc;

use thiserror::Error;

use super::{s_combinator, Comb, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Backslash,
    Dot,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'\\' => {
                out.push((i, Tok::Backslash));
                i += 1;
            }
            b'.' => {
                out.push((i, Tok::Dot));
                i += 1;
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: i,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if self.peek() == Some(&Tok::Backslash) {
            return self.lambda();
        }
        let mut acc = match self.atom()? {
            Some(t) => t,
            None => return self.err("expected a term"),
        };
        loop {
            if self.peek() == Some(&Tok::Backslash) {
                let body = self.lambda()?;
                return Ok(Term::app(acc, body));
            }
            match self.atom()? {
                Some(t) => acc = Term::app(acc, t),
                None => return Ok(acc),
            }
        }
    }

    fn lambda(&mut self) -> Result<Term, ParseError> {
        self.pos += 1;
        let mut binders = Vec::new();
        while let Some(Tok::Ident(name)) = self.peek() {
            if is_reserved(name) || starts_upper(name) {
                return self.err(format!("`{name}` cannot be bound"));
            }
            binders.push(name.clone());
            self.pos += 1;
        }
        if binders.is_empty() {
            return self.err("expected a binder after `\\`");
        }
        if self.peek() != Some(&Tok::Dot) {
            return self.err("expected `.` after binders");
        }
        self.pos += 1;
        let body = self.term()?;
        Ok(binders
            .iter()
            .rev()
            .fold(body, |acc, x| Term::Lam(Arc::from(x.as_str()), Arc::new(acc))))
    }

    fn atom(&mut self) -> Result<Option<Term>, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Some(leaf(&name)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.term()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(Some(inner))
            }
            _ => Ok(None),
        }
    }
}

fn is_reserved(name: &str) -> bool {
    matches!(name, "b" | "c" | "k" | "w" | "s" | "i")
}

fn starts_upper(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

fn leaf(name: &str) -> Term {
    match name {
        "b" => Term::Comb(Comb::B),
        "c" => Term::Comb(Comb::C),
        "k" => Term::Comb(Comb::K),
        "w" => Term::Comb(Comb::W),
        "i" => Term::app(Term::w(), Term::k()),
        "s" => s_combinator(),
        _ if starts_upper(name) => Term::constant(name),
        _ => Term::var(name),
    }
}

/// Parses the term grammar: identifiers `[a-zA-Z][a-zA-Z0-9_]*`, reserved
/// leaves `b c k w s i`, juxtaposition (left associative), parentheses,
/// `\x y. M` and `#` line comments.
///
/// Identifiers starting with an upper-case letter are adjoined constants.
/// `i` abbreviates `w k` and `s` abbreviates the compiled `\x y z. x z (y z)`.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_leaf() {
        assert_eq!(parse_term("k").unwrap(), Term::k());
    }

    #[test]
    fn application_associates_left() {
        let expected = Term::app(
            Term::app(Term::b(), Term::var("x")),
            Term::app(Term::var("y"), Term::var("z")),
        );
        assert_eq!(parse_term("b x (y z)").unwrap(), expected);
    }

    #[test]
    fn nested_lambdas() {
        let expected = Term::lam("x", Term::lam("y", Term::var("x")));
        assert_eq!(parse_term("\\x.\\y.x").unwrap(), expected);
        assert_eq!(parse_term("\\x y. x").unwrap(), expected);
    }

    #[test]
    fn lambda_in_argument_tail() {
        let t = parse_term("k \\x. x").unwrap();
        assert_eq!(t, Term::app(Term::k(), Term::lam("x", Term::var("x"))));
    }

    #[test]
    fn constants_and_comments() {
        let t = parse_term("k A b # trailing comment\n").unwrap();
        assert_eq!(
            t,
            Term::apply_all(Term::k(), [Term::constant("A"), Term::b()])
        );
    }

    #[test]
    fn macro_leaves() {
        assert_eq!(parse_term("i").unwrap(), Term::app(Term::w(), Term::k()));
        assert_eq!(parse_term("s").unwrap(), s_combinator());
    }

    #[test]
    fn errors_carry_byte_offsets() {
        let e = parse_term("k (a b").unwrap_err();
        assert_eq!(e.offset, 6);
        let e = parse_term("k $").unwrap_err();
        assert_eq!(e.offset, 2);
        let e = parse_term("\\. x").unwrap_err();
        assert_eq!(e.offset, 1);
        let e = parse_term("a )").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(parse_term("").is_err());
        assert!(parse_term("\\k. k").is_err());
    }
}
