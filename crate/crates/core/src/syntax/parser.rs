//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! formula := imp ('<->' imp)*
//! imp     := or ('->' imp)?
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '~' unary | 'K' agent unary | '[' formula ']' unary
//!          | '<' formula '>' unary | 'box' unary | 'dia' unary
//!          | atom | 'false' | 'true' | '(' formula ')'
//! ```

use std::fmt;

use thiserror::Error;

use super::Formula;

const KEYWORDS: [&str; 4] = ["false", "true", "box", "dia"];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Tilde,
    Pipe,
    Amp,
    Arrow,
    Iff,
    LBracket,
    RBracket,
    Lt,
    Gt,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(name) => return write!(f, "`{name}`"),
            Tok::Tilde => "`~`",
            Tok::Pipe => "`|`",
            Tok::Amp => "`&`",
            Tok::Arrow => "`->`",
            Tok::Iff => "`<->`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::Lt => "`<`",
            Tok::Gt => "`>`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::End => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownToken(char),
    Unexpected {
        found: String,
        expected: Vec<&'static str>,
    },
}

/// A syntax error at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{}", self.describe())]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn describe(&self) -> String {
        match &self.kind {
            ParseErrorKind::UnknownToken(c) => {
                format!("unknown token {c:?} at position {}", self.position)
            }
            ParseErrorKind::Unexpected { found, expected } => format!(
                "syntax error at position {}: found {found}, expected one of {}",
                self.position,
                expected.join(", ")
            ),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < text.len() {
        let c = text[i..].chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let start = i;
        let rest = &bytes[i..];
        let tok = if c.is_ascii_alphabetic() {
            let len = rest
                .iter()
                .take_while(|b| b.is_ascii_alphanumeric() || **b == b'_')
                .count();
            i += len;
            out.push((Tok::Ident(text[start..i].to_string()), start));
            continue;
        } else if rest.starts_with(b"<->") {
            i += 3;
            Tok::Iff
        } else if rest.starts_with(b"->") {
            i += 2;
            Tok::Arrow
        } else {
            i += 1;
            match c {
                '~' => Tok::Tilde,
                '|' => Tok::Pipe,
                '&' => Tok::Amp,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '<' => Tok::Lt,
                '>' => Tok::Gt,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::UnknownToken(other),
                    })
                }
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

pub(crate) fn is_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
        && !KEYWORDS.contains(&s)
}

pub(crate) fn is_agent_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

const UNARY_START: [&str; 10] = [
    "`~`", "`K`", "`[`", "`<`", "`box`", "`dia`", "`(`", "`false`", "`true`", "atom",
];

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let (tok, position) = &self.toks[self.pos];
        ParseError {
            position: *position,
            kind: ParseErrorKind::Unexpected {
                found: tok.to_string(),
                expected: expected.to_vec(),
            },
        }
    }

    fn expect(
        &mut self,
        tok: Tok,
        name: &'static str,
        also: &[&'static str],
    ) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            let mut expected = also.to_vec();
            expected.push(name);
            Err(self.error(&expected))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.implication()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let right = self.implication()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conjunction()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let right = self.conjunction()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        const BINARY: [&str; 4] = ["`&`", "`|`", "`->`", "`<->`"];
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::LBracket => {
                self.bump();
                let announced = self.formula()?;
                self.expect(Tok::RBracket, "`]`", &BINARY)?;
                Ok(Formula::announce(announced, self.unary()?))
            }
            Tok::Lt => {
                self.bump();
                let announced = self.formula()?;
                self.expect(Tok::Gt, "`>`", &BINARY)?;
                Ok(Formula::announce_dual(announced, self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                self.expect(Tok::RParen, "`)`", &BINARY)?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "K" => {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Ident(agent) if is_agent_name(&agent) => {
                            self.bump();
                            Ok(Formula::know(agent, self.unary()?))
                        }
                        _ => Err(self.error(&["agent"])),
                    }
                }
                "box" => {
                    self.bump();
                    Ok(Formula::boxed(self.unary()?))
                }
                "dia" => {
                    self.bump();
                    Ok(Formula::diamond(self.unary()?))
                }
                "false" => {
                    self.bump();
                    Ok(Formula::Bottom)
                }
                "true" => {
                    self.bump();
                    Ok(Formula::top())
                }
                _ if is_atom_name(&name) => {
                    self.bump();
                    Ok(Formula::Atom(name))
                }
                _ => Err(self.error(&UNARY_START)),
            },
            _ => Err(self.error(&UNARY_START)),
        }
    }
}

/// Parses a formula, expanding derived connectives into primitives.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = parser.formula()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error(&["`&`", "`|`", "`->`", "`<->`", "end of input"]));
    }
    Ok(f)
}
