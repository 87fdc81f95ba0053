//! Recursive-descent parser for the concrete TTL syntax.
//!
//! ```text
//! formula := choice
//! choice  := seq ("|" seq)*
//! seq     := conc (";" conc)*
//! conc    := unary ("&" unary)*
//! unary   := primary "~"?
//! primary := IDENT | "(" formula ")"
//! IDENT   := [a-z_][a-z0-9_]*
//! ```
//!
//! `∪`, `∩` and `∼` are accepted as aliases of `|`, `&` and `~`.

use std::fmt;

use thiserror::Error;

use super::{AtomName, TtlFormula};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at {position}: {kind}")]
pub struct ParseError {
    /// Character offset into the input (0-based).
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    UnexpectedChar(char),
    UnexpectedToken {
        found: String,
        expected: &'static str,
    },
    UnexpectedEnd {
        expected: &'static str,
    },
    PrefixNegation,
    CompoundNegation,
    UnbalancedParen,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Empty => write!(f, "empty formula"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "found {found}, expected {expected}")
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "unexpected end of input, expected {expected}")
            }
            ParseErrorKind::PrefixNegation => {
                write!(f, "negation is postfix: write `wood~`, not `~wood`")
            }
            ParseErrorKind::CompoundNegation => write!(f, "negation applies to atoms only"),
            ParseErrorKind::UnbalancedParen => write!(f, "unbalanced parenthesis"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Tilde,
    Amp,
    Semi,
    Bar,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' | '∼' => Tok::Tilde,
            '&' | '∩' => Tok::Amp,
            ';' => Tok::Semi,
            '|' | '∪' => Tok::Bar,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_lowercase() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_lowercase()
                        || chars[i].is_ascii_digit()
                        || chars[i] == '_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(ParseError {
                    position: i,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        };
        toks.push((i, tok));
        i += 1;
    }
    Ok(toks)
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
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.offset(),
            kind,
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn choice(&mut self) -> Result<TtlFormula, ParseError> {
        let mut lhs = self.seq()?;
        while self.eat(&Tok::Bar) {
            lhs = TtlFormula::choice(lhs, self.seq()?);
        }
        Ok(lhs)
    }

    fn seq(&mut self) -> Result<TtlFormula, ParseError> {
        let mut lhs = self.conc()?;
        while self.eat(&Tok::Semi) {
            lhs = TtlFormula::seq(lhs, self.conc()?);
        }
        Ok(lhs)
    }

    fn conc(&mut self) -> Result<TtlFormula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            lhs = TtlFormula::concurrent(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<TtlFormula, ParseError> {
        const EXPECTED: &str = "an atom or `(`";
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let atom = AtomName::new(name).expect("lexer only yields identifiers");
                if self.eat(&Tok::Tilde) {
                    Ok(TtlFormula::NegAtom(atom))
                } else {
                    Ok(TtlFormula::Atom(atom))
                }
            }
            Some(Tok::LParen) => {
                let open = self.offset();
                self.pos += 1;
                let inner = self.choice()?;
                if !self.eat(&Tok::RParen) {
                    return Err(match self.peek() {
                        None => ParseError {
                            position: open,
                            kind: ParseErrorKind::UnbalancedParen,
                        },
                        Some(t) => self.err(ParseErrorKind::UnexpectedToken {
                            found: t.to_string(),
                            expected: "`)`",
                        }),
                    });
                }
                if self.peek() == Some(&Tok::Tilde) {
                    return Err(self.err(ParseErrorKind::CompoundNegation));
                }
                Ok(inner)
            }
            Some(Tok::Tilde) => Err(self.err(ParseErrorKind::PrefixNegation)),
            Some(Tok::RParen) => Err(self.err(ParseErrorKind::UnbalancedParen)),
            Some(t) => Err(self.err(ParseErrorKind::UnexpectedToken {
                found: t.to_string(),
                expected: EXPECTED,
            })),
            None => Err(self.err(ParseErrorKind::UnexpectedEnd { expected: EXPECTED })),
        }
    }
}

/// Parses TTL concrete syntax.
pub fn parse_ttl(text: &str) -> Result<TtlFormula, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
    };
    if parser.toks.is_empty() {
        return Err(ParseError {
            position: 0,
            kind: ParseErrorKind::Empty,
        });
    }
    let f = parser.choice()?;
    match parser.peek() {
        None => Ok(f),
        Some(Tok::RParen) => Err(parser.err(ParseErrorKind::UnbalancedParen)),
        Some(Tok::Tilde) => Err(parser.err(ParseErrorKind::CompoundNegation)),
        Some(t) => Err(parser.err(ParseErrorKind::UnexpectedToken {
            found: t.to_string(),
            expected: "an operator or end of input",
        })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> TtlFormula {
        TtlFormula::Atom(AtomName::new(n).unwrap())
    }

    fn n(n: &str) -> TtlFormula {
        TtlFormula::NegAtom(AtomName::new(n).unwrap())
    }

    #[test]
    fn single_atom() {
        assert_eq!(parse_ttl("wood").unwrap(), a("wood"));
        assert_eq!(parse_ttl("  wood\n").unwrap(), a("wood"));
    }

    #[test]
    fn shears() {
        assert_eq!(
            parse_ttl("(wood & iron) ; workbench").unwrap(),
            TtlFormula::seq(TtlFormula::concurrent(a("wood"), a("iron")), a("workbench"))
        );
    }

    #[test]
    fn running_example() {
        let f = parse_ttl("((wood ; grass) | (iron ; axe)) ; workbench ; toolshed~").unwrap();
        let expected = TtlFormula::seq(
            TtlFormula::seq(
                TtlFormula::choice(
                    TtlFormula::seq(a("wood"), a("grass")),
                    TtlFormula::seq(a("iron"), a("axe")),
                ),
                a("workbench"),
            ),
            n("toolshed"),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(
            parse_ttl("(wood ∩ iron) ; workbench").unwrap(),
            parse_ttl("(wood & iron) ; workbench").unwrap()
        );
        assert_eq!(
            parse_ttl("a ∪ b∼").unwrap(),
            TtlFormula::choice(a("a"), n("b"))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_ttl("a | b ; c & d~").unwrap(),
            TtlFormula::choice(
                a("a"),
                TtlFormula::seq(a("b"), TtlFormula::concurrent(a("c"), n("d")))
            )
        );
        assert_eq!(
            parse_ttl("a ; b ; c").unwrap(),
            TtlFormula::seq(TtlFormula::seq(a("a"), a("b")), a("c"))
        );
        assert_eq!(
            parse_ttl("a | b | c").unwrap(),
            TtlFormula::choice(TtlFormula::choice(a("a"), a("b")), a("c"))
        );
    }

    #[test]
    fn prefix_negation_is_rejected() {
        let err = parse_ttl("~wood").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::PrefixNegation);
        assert_eq!(err.position, 0);
    }

    #[test]
    fn compound_negation_is_rejected() {
        let err = parse_ttl("(a;b)~").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::CompoundNegation);
        assert_eq!(err.position, 5);
    }

    #[test]
    fn unknown_characters() {
        let err = parse_ttl("wood + iron").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedChar('+'));
        assert_eq!(err.position, 5);
        assert!(matches!(
            parse_ttl("Wood").unwrap_err().kind,
            ParseErrorKind::UnexpectedChar('W')
        ));
    }

    #[test]
    fn unbalanced_parentheses() {
        assert_eq!(
            parse_ttl("(a ; b").unwrap_err().kind,
            ParseErrorKind::UnbalancedParen
        );
        assert_eq!(
            parse_ttl("a ; b)").unwrap_err().kind,
            ParseErrorKind::UnbalancedParen
        );
        assert_eq!(
            parse_ttl(")").unwrap_err().kind,
            ParseErrorKind::UnbalancedParen
        );
    }

    #[test]
    fn other_errors() {
        assert_eq!(parse_ttl("   ").unwrap_err().kind, ParseErrorKind::Empty);
        assert!(matches!(
            parse_ttl("a ;").unwrap_err().kind,
            ParseErrorKind::UnexpectedEnd { .. }
        ));
        assert!(matches!(
            parse_ttl("a b").unwrap_err().kind,
            ParseErrorKind::UnexpectedToken { .. }
        ));
        assert!(parse_ttl("a~~").is_err());
    }
}
