use std::fmt;

use super::RtriposError;

/// A first-order term: a variable, a sort element, or a function application.
/// Bare identifiers are resolved against the model at evaluation time.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FTerm {
    Name(String),
    Apply(String, Vec<FTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Eq(FTerm, FTerm),
    Atom(String, Vec<FTerm>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Forall(String, String, Box<Formula>),
    Exists(String, String, Box<Formula>),
}

impl FTerm {
    pub fn name(s: &str) -> FTerm {
        FTerm::Name(s.to_string())
    }

    pub fn apply(f: &str, args: Vec<FTerm>) -> FTerm {
        FTerm::Apply(f.to_string(), args)
    }
}

impl Formula {
    pub fn atom(p: &str, args: Vec<FTerm>) -> Formula {
        Formula::Atom(p.to_string(), args)
    }

    pub fn and(self, o: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(o))
    }

    pub fn or(self, o: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(o))
    }

    pub fn implies(self, o: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(o))
    }

    pub fn negate(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn forall(v: &str, sort: &str, body: Formula) -> Formula {
        Formula::Forall(v.to_string(), sort.to_string(), Box::new(body))
    }

    pub fn exists(v: &str, sort: &str, body: Formula) -> Formula {
        Formula::Exists(v.to_string(), sort.to_string(), Box::new(body))
    }
}

impl fmt::Display for FTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FTerm::Name(n) => write!(f, "{n}"),
            FTerm::Apply(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

// Precedence levels: 0 implication, 1 disjunction, 2 conjunction, 3 unary.
fn prec(p: &Formula) -> u8 {
    match p {
        Formula::Implies(..) | Formula::Forall(..) | Formula::Exists(..) => 0,
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        _ => 3,
    }
}

fn show(p: &Formula, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let paren = prec(p) < min;
    if paren {
        write!(f, "(")?;
    }
    match p {
        Formula::True => write!(f, "T")?,
        Formula::False => write!(f, "F")?,
        Formula::Eq(a, b) => write!(f, "{a} = {b}")?,
        Formula::Atom(name, args) => {
            write!(f, "{name}")?;
            if !args.is_empty() {
                write!(f, "(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")?;
            }
        }
        Formula::And(a, b) => {
            show(a, 2, f)?;
            write!(f, " /\\ ")?;
            show(b, 3, f)?;
        }
        Formula::Or(a, b) => {
            show(a, 1, f)?;
            write!(f, " \\/ ")?;
            show(b, 2, f)?;
        }
        Formula::Implies(a, b) => {
            show(a, 1, f)?;
            write!(f, " -> ")?;
            show(b, 0, f)?;
        }
        Formula::Not(a) => {
            write!(f, "~")?;
            show(a, 3, f)?;
        }
        Formula::Forall(v, s, body) => {
            write!(f, "forall {v}:{s}. ")?;
            show(body, 0, f)?;
        }
        Formula::Exists(v, s, body) => {
            write!(f, "exists {v}:{s}. ")?;
            show(body, 0, f)?;
        }
    }
    if paren {
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        show(self, 0, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Colon,
    Dot,
    Equals,
    And,
    Or,
    Arrow,
    Tilde,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, RtriposError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let single = match c {
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b':' => Some(Tok::Colon),
            b'.' => Some(Tok::Dot),
            b'=' => Some(Tok::Equals),
            b'~' => Some(Tok::Tilde),
            _ => None,
        };
        if let Some(t) = single {
            out.push((i, t));
            i += 1;
            continue;
        }
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'/' if b.get(i + 1) == Some(&b'\\') => {
                out.push((i, Tok::And));
                i += 2;
            }
            b'\\' if b.get(i + 1) == Some(&b'/') => {
                out.push((i, Tok::Or));
                i += 2;
            }
            b'-' if b.get(i + 1) == Some(&b'>') => {
                out.push((i, Tok::Arrow));
                i += 2;
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                let s = i;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_' || b[i] == b'\'') {
                    i += 1;
                }
                out.push((s, Tok::Ident(text[s..i].to_string())));
            }
            _ => {
                return Err(RtriposError::FormulaSyntax {
                    offset: i,
                    message: format!("unexpected character `{}`", text[i..].chars().next().unwrap_or('?')),
                })
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

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, RtriposError> {
        Err(RtriposError::FormulaSyntax {
            offset: self.toks.get(self.pos).map_or(self.end, |(o, _)| *o),
            message: message.into(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), RtriposError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn ident(&mut self) -> Result<String, RtriposError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected an identifier"),
        }
    }

    fn implication(&mut self) -> Result<Formula, RtriposError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.implication()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, RtriposError> {
        let mut acc = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            acc = acc.or(self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, RtriposError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            acc = acc.and(self.unary()?);
        }
        Ok(acc)
    }

    fn quantifier(&mut self) -> Result<(String, String), RtriposError> {
        let v = self.ident()?;
        self.expect(Tok::Colon, "`:` after the bound variable")?;
        let s = self.ident()?;
        self.expect(Tok::Dot, "`.` after the sort")?;
        Ok((v, s))
    }

    fn unary(&mut self) -> Result<Formula, RtriposError> {
        match self.peek().cloned() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(self.unary()?.negate())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.implication()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(w)) if w == "forall" || w == "exists" => {
                self.pos += 1;
                let (v, s) = self.quantifier()?;
                let body = self.implication()?;
                Ok(if w == "forall" {
                    Formula::forall(&v, &s, body)
                } else {
                    Formula::exists(&v, &s, body)
                })
            }
            Some(Tok::Ident(w)) if (w == "T" || w == "F") && self.peek_at(1) != Some(&Tok::LParen) && self.peek_at(1) != Some(&Tok::Equals) => {
                self.pos += 1;
                Ok(if w == "T" { Formula::True } else { Formula::False })
            }
            Some(Tok::Ident(_)) => {
                let head = self.term()?;
                if self.peek() == Some(&Tok::Equals) {
                    self.pos += 1;
                    let rhs = self.term()?;
                    return Ok(Formula::Eq(head, rhs));
                }
                Ok(match head {
                    FTerm::Name(p) => Formula::Atom(p, vec![]),
                    FTerm::Apply(p, args) => Formula::Atom(p, args),
                })
            }
            _ => self.err("expected a formula"),
        }
    }

    fn term(&mut self) -> Result<FTerm, RtriposError> {
        let name = self.ident()?;
        if self.peek() != Some(&Tok::LParen) {
            return Ok(FTerm::Name(name));
        }
        self.pos += 1;
        let mut args = vec![self.term()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            args.push(self.term()?);
        }
        self.expect(Tok::RParen, "`)` or `,`")?;
        Ok(FTerm::Apply(name, args))
    }
}

/// Parses `T F /\ \/ -> ~ = forall v:S. exists v:S.` with atoms `P(t, ...)`.
///
/// `~` binds tightest, then `/\`, `\/`, and `->` (right associative);
/// quantifier bodies extend as far right as possible.
pub fn parse_formula(text: &str) -> Result<Formula, RtriposError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let f = p.implication()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let f = parse_formula("~P /\\ Q \\/ R -> S -> T").unwrap();
        let expected = Formula::atom("P", vec![])
            .negate()
            .and(Formula::atom("Q", vec![]))
            .or(Formula::atom("R", vec![]))
            .implies(Formula::atom("S", vec![]).implies(Formula::True));
        assert_eq!(f, expected);
    }

    #[test]
    fn quantifiers_and_terms() {
        let f = parse_formula("forall y:Y. g(y) = z -> exists x:A. X(x, y) /\\ C(x)").unwrap();
        let body = Formula::Eq(FTerm::apply("g", vec![FTerm::name("y")]), FTerm::name("z")).implies(
            Formula::exists(
                "x",
                "A",
                Formula::atom("X", vec![FTerm::name("x"), FTerm::name("y")]).and(Formula::atom("C", vec![FTerm::name("x")])),
            ),
        );
        assert_eq!(f, Formula::forall("y", "Y", body));
    }

    #[test]
    fn print_parse_round_trip() {
        for src in [
            "forall u:X. P(u) \\/ ~P(u)",
            "(P -> Q) -> P",
            "exists x:A. C(x) /\\ U(x)",
            "a(w, y) = x /\\ (T \\/ F)",
        ] {
            let f = parse_formula(src).unwrap();
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f, "{src}");
        }
    }

    #[test]
    fn syntax_errors_have_offsets() {
        match parse_formula("P /\\ ") {
            Err(RtriposError::FormulaSyntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_formula("forall x. P").is_err());
        assert!(parse_formula("P $").is_err());
    }
}
