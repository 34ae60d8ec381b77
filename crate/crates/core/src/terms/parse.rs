//! Recursive-descent parser for the surface grammar
//!
//! ```text
//! term   := impl
//! impl   := sum ( "->" impl )?
//! sum    := prod ( "+" prod )*
//! prod   := unary ( "*" unary )*
//! unary  := ("~" | "D" | "N") unary | atom
//! atom   := "0" | "1" | "i" | IDENT | "(" term ")"
//! ```

use std::fmt;

use thiserror::Error;

use super::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("`{word}` at byte {offset} is a reserved word and cannot be used as a variable")]
    ReservedWord { offset: usize, word: String },
    #[error("unexpected character {ch:?} at byte {offset}")]
    InvalidCharacter { offset: usize, ch: char },
    #[error("invalid numeral `{text}` at byte {offset}; only 0 and 1 are constants")]
    InvalidNumeral { offset: usize, text: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::ReservedWord { offset, .. }
            | ParseError::InvalidCharacter { offset, .. }
            | ParseError::InvalidNumeral { offset, .. } => *offset,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Zero,
    One,
    Iota,
    Ident(String),
    Tilde,
    Delta,
    Nabla,
    Plus,
    Star,
    Arrow,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Zero => f.write_str("`0`"),
            Tok::One => f.write_str("`1`"),
            Tok::Iota => f.write_str("`i`"),
            Tok::Ident(name) => write!(f, "identifier `{name}`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Delta => f.write_str("`D`"),
            Tok::Nabla => f.write_str("`N`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'~' => Tok::Tilde,
            b'+' => Tok::Plus,
            b'*' => Tok::Star,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(pos + 1) == Some(&b'>') => {
                pos += 1;
                Tok::Arrow
            }
            b'0'..=b'9' => {
                while pos + 1 < bytes.len() && bytes[pos + 1].is_ascii_digit() {
                    pos += 1;
                }
                match &text[start..=pos] {
                    "0" => Tok::Zero,
                    "1" => Tok::One,
                    other => {
                        return Err(ParseError::InvalidNumeral {
                            offset: start,
                            text: other.to_string(),
                        })
                    }
                }
            }
            c if c.is_ascii_alphabetic() => {
                while pos + 1 < bytes.len()
                    && (bytes[pos + 1].is_ascii_alphanumeric() || bytes[pos + 1] == b'_')
                {
                    pos += 1;
                }
                match &text[start..=pos] {
                    "D" => Tok::Delta,
                    "N" => Tok::Nabla,
                    "i" => Tok::Iota,
                    word => Tok::Ident(word.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().expect("in bounds");
                return Err(ParseError::InvalidCharacter { offset: start, ch });
            }
        };
        out.push((tok, start));
        pos += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

const OPERAND_START: [&str; 8] = [
    "`0`",
    "`1`",
    "`i`",
    "identifier",
    "`(`",
    "`~`",
    "`D`",
    "`N`",
];

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].0.clone();
        if tok != Tok::End {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        }
    }

    fn parse_impl(&mut self) -> Result<Term, ParseError> {
        let lhs = self.parse_sum()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.parse_impl()?;
            return Ok(Term::arrow(lhs, rhs));
        }
        Ok(lhs)
    }

    fn parse_sum(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.parse_prod()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            acc = Term::oplus(acc, self.parse_prod()?);
        }
        Ok(acc)
    }

    fn parse_prod(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.parse_unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = Term::odot(acc, self.parse_unary()?);
        }
        Ok(acc)
    }

    fn parse_unary(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(Term::neg(self.parse_unary()?))
            }
            Tok::Delta | Tok::Nabla => {
                let offset = self.offset();
                let tok = self.bump();
                if !starts_operand(self.peek()) {
                    // `D` with nothing to apply to reads as an attempted variable
                    let word = if tok == Tok::Delta { "D" } else { "N" };
                    return Err(ParseError::ReservedWord {
                        offset,
                        word: word.to_string(),
                    });
                }
                let arg = self.parse_unary()?;
                Ok(if tok == Tok::Delta {
                    Term::delta(arg)
                } else {
                    Term::nabla(arg)
                })
            }
            _ => self.parse_atom(),
        }
    }

    fn parse_atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::One => {
                self.bump();
                Ok(Term::One)
            }
            Tok::Iota => {
                self.bump();
                Ok(Term::Iota)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Term::Var(name))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.parse_impl()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`+`", "`*`", "`->`", "`)`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(&OPERAND_START)),
        }
    }
}

fn starts_operand(tok: &Tok) -> bool {
    matches!(
        tok,
        Tok::Zero
            | Tok::One
            | Tok::Iota
            | Tok::Ident(_)
            | Tok::LParen
            | Tok::Tilde
            | Tok::Delta
            | Tok::Nabla
    )
}

/// Parses a term. Whitespace is insignificant.
pub fn parse(text: &str) -> Result<Term, ParseError> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let term = parser.parse_impl()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error(&["`+`", "`*`", "`->`", "end of input"]));
    }
    Ok(term)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Term {
        Term::var(name)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse("D(X + ~X)").unwrap(),
            Term::delta(Term::oplus(v("X"), Term::neg(v("X"))))
        );
        assert_eq!(
            parse("i * N Y -> 0").unwrap(),
            Term::arrow(Term::odot(Term::Iota, Term::nabla(v("Y"))), Term::Zero)
        );
        assert_eq!(
            parse("X -> Y -> Z").unwrap(),
            Term::arrow(v("X"), Term::arrow(v("Y"), v("Z")))
        );
        assert_eq!(
            parse("X + Y + Z").unwrap(),
            Term::oplus(Term::oplus(v("X"), v("Y")), v("Z"))
        );
        assert_eq!(
            parse("~D~X").unwrap(),
            Term::neg(Term::delta(Term::neg(v("X"))))
        );
        assert_eq!(parse("DX").unwrap(), v("DX"));
        assert_eq!(parse(" ( ( x1 ) ) ").unwrap(), v("x1"));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse("X + + Y") {
            Err(ParseError::Syntax {
                offset, expected, ..
            }) => {
                assert_eq!(offset, 4);
                assert!(expected.contains(&"identifier".to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse("(X").unwrap_err().offset(), 2);
        assert_eq!(parse("X Y").unwrap_err().offset(), 2);
        assert_eq!(parse("").unwrap_err().offset(), 0);
        assert!(matches!(
            parse("X & Y"),
            Err(ParseError::InvalidCharacter { offset: 2, ch: '&' })
        ));
        assert!(matches!(parse("2"), Err(ParseError::InvalidNumeral { .. })));
        assert!(matches!(
            parse("X - Y"),
            Err(ParseError::InvalidCharacter { .. })
        ));
    }

    #[test]
    fn reserved_words() {
        assert_eq!(
            parse("X + D"),
            Err(ParseError::ReservedWord {
                offset: 4,
                word: "D".into()
            })
        );
        assert!(matches!(
            parse("N * X"),
            Err(ParseError::ReservedWord { offset: 0, .. })
        ));
    }

    #[test]
    fn printing_round_trips() {
        for text in [
            "X + ~X",
            "(X -> Y) -> Z",
            "D(X * Y) + N ~i",
            "~(X + Y) * Z",
            "X * (Y * Z)",
            "D D X -> N(X -> Y)",
        ] {
            let t = parse(text).unwrap();
            assert_eq!(parse(&t.to_string()).unwrap(), t, "{text}");
        }
    }
}
