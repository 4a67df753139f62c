//! Recursive-descent parser for the term grammar:
//!
//! ```text
//! term  := IDENT
//!        | "(" term OP term ")"
//!        | "com(" term "," term ")"
//!        | "asc(" term "," term "," term ")"
//!        | "dev(" term {"," term} ";" INT {"," INT} ")"
//! OP    := "*" | "\" | "/"
//! IDENT := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! The outermost parentheses may be omitted. There is no precedence: every
//! nested binary node must be parenthesised.

use thiserror::Error;

use super::{deviation_unchecked, AlphaSequence, Op, Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at offset {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown operator symbol `{0}`")]
    UnknownOperator(char),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("expected an integer")]
    ExpectedInteger,
    #[error("{0}")]
    Deviation(TermError),
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let first = p.term()?;
    p.skip_ws();
    let t = if p.at_end() {
        first
    } else {
        let op = p.op()?;
        let second = p.term()?;
        Term::node(op, first, second)
    };
    p.skip_ws();
    match p.peek() {
        None => Ok(t),
        Some(c) => Err(p.error(ParseErrorKind::UnexpectedChar(c))),
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(c) => self.error(ParseErrorKind::UnexpectedChar(c)),
            None => self.error(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn op(&mut self) -> Result<Op, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) => match Op::from_symbol(c) {
                Some(op) => {
                    self.bump();
                    Ok(op)
                }
                None if c.is_ascii_punctuation() && !"(),;".contains(c) => {
                    Err(self.error(ParseErrorKind::UnknownOperator(c)))
                }
                None => Err(self.unexpected()),
            },
            None => Err(self.unexpected()),
        }
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let left = self.term()?;
                let op = self.op()?;
                let right = self.term()?;
                self.expect(')')?;
                Ok(Term::node(op, left, right))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.ident().to_owned();
                let save = self.pos;
                self.skip_ws();
                if self.peek() != Some('(') {
                    self.pos = save;
                    return Ok(Term::Gen(name));
                }
                self.bump();
                match name.as_str() {
                    "com" => {
                        let a = self.term()?;
                        self.expect(',')?;
                        let b = self.term()?;
                        self.expect(')')?;
                        Ok(Term::commutator(&a, &b))
                    }
                    "asc" => {
                        let a = self.term()?;
                        self.expect(',')?;
                        let b = self.term()?;
                        self.expect(',')?;
                        let c = self.term()?;
                        self.expect(')')?;
                        Ok(Term::associator(&a, &b, &c))
                    }
                    "dev" => self.deviation(start),
                    _ => Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::UnknownFunction(name),
                    }),
                }
            }
            _ => Err(self.unexpected()),
        }
    }

    fn deviation(&mut self, start: usize) -> Result<Term, ParseError> {
        let mut args = vec![self.term()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.bump();
                    args.push(self.term()?);
                }
                Some(';') => {
                    self.bump();
                    break;
                }
                _ => return Err(self.unexpected()),
            }
        }
        let mut alphas = vec![self.integer()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.bump();
                    alphas.push(self.integer()?);
                }
                Some(')') => {
                    self.bump();
                    break;
                }
                _ => return Err(self.unexpected()),
            }
        }
        let seq = AlphaSequence::from_signed(&alphas).map_err(|e| ParseError {
            position: start,
            kind: ParseErrorKind::Deviation(e),
        })?;
        seq.check_arity(args.len()).map_err(|e| ParseError {
            position: start,
            kind: ParseErrorKind::Deviation(e),
        })?;
        Ok(deviation_unchecked(&args, seq.as_slice()))
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.bump();
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        self.src[start..self.pos].parse().map_err(|_| ParseError {
            position: start,
            kind: ParseErrorKind::ExpectedInteger,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(name: &str) -> Term {
        Term::gen(name)
    }

    #[test]
    fn single_generator() {
        assert_eq!(parse_term("a").unwrap(), g("a"));
        assert_eq!(parse_term("  x_10 ").unwrap(), g("x_10"));
    }

    #[test]
    fn mandatory_parentheses() {
        let t = parse_term("(a*b)\\c").unwrap();
        assert_eq!(t, Term::ldiv(Term::mul(g("a"), g("b")), g("c")));
        assert_eq!(parse_term("((a*b)\\c)").unwrap(), t);
        assert_eq!(t.to_string(), "(a*b)\\c");
        // no precedence: a*b*c is rejected
        assert!(parse_term("a*b*c").is_err());
    }

    #[test]
    fn sugar_expands() {
        assert_eq!(
            parse_term("com(a,b)").unwrap(),
            Term::commutator(&g("a"), &g("b"))
        );
        assert_eq!(
            parse_term("asc(a, b, c)").unwrap(),
            Term::associator(&g("a"), &g("b"), &g("c"))
        );
        let seq = AlphaSequence::new(vec![3]).unwrap();
        assert_eq!(
            parse_term("dev(a,b,c,d;3)").unwrap(),
            Term::deviation(&[g("a"), g("b"), g("c"), g("d")], &seq).unwrap()
        );
        // a generator may share a name with the sugar keywords
        assert_eq!(parse_term("com").unwrap(), g("com"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_term("(a+b)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownOperator('+'));
        assert_eq!(e.position, 2);

        let e = parse_term("(a*b").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(e.position, 4);

        let e = parse_term("foo(a)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownFunction("foo".into()));

        let e = parse_term("dev(a,b,c;1)").unwrap_err();
        assert!(matches!(
            e.kind,
            ParseErrorKind::Deviation(TermError::Arity { .. })
        ));
        let e = parse_term("dev(a,b,c,d;4)").unwrap_err();
        assert!(matches!(
            e.kind,
            ParseErrorKind::Deviation(TermError::InvalidAlpha { .. })
        ));
        assert!(parse_term("").is_err());
        assert!(parse_term("(a)").is_err());
        assert!(parse_term("a b").is_err());
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        let leaf = "[a-e][a-z0-9_]{0,2}".prop_map(Term::Gen);
        leaf.prop_recursive(8, 256, 2, |inner| {
            (
                prop_oneof![Just(Op::Mul), Just(Op::LDiv), Just(Op::RDiv)],
                inner.clone(),
                inner,
            )
                .prop_map(|(op, l, r)| Term::node(op, l, r))
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_roundtrips(t in arb_term()) {
            let text = t.to_string();
            let back = parse_term(&text).unwrap();
            prop_assert_eq!(&back, &t);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
