use std::fmt;

use thiserror::Error;

use super::ast::{Formula, Sequent, SequentKind};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("syntax error at column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

fn err(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        column: pos + 1,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    Amp,
    Pipe,
    LParen,
    RParen,
    Strict,
    Defeasible,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Top => write!(f, "`top`"),
            Tok::Bot => write!(f, "`bot`"),
            Tok::Amp => write!(f, "`&`"),
            Tok::Pipe => write!(f, "`|`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Strict => write!(f, "`|-`"),
            Tok::Defeasible => write!(f, "`|~`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            '&' => {
                out.push((Tok::Amp, i));
                i += 1;
            }
            '|' => match bytes.get(i + 1) {
                Some('-') => {
                    out.push((Tok::Strict, i));
                    i += 2;
                }
                Some('~') => {
                    out.push((Tok::Defeasible, i));
                    i += 2;
                }
                _ => {
                    out.push((Tok::Pipe, i));
                    i += 1;
                }
            },
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                let word: String = bytes[start..i].iter().collect();
                let tok = match word.as_str() {
                    "top" => Tok::Top,
                    "bot" => Tok::Bot,
                    _ => Tok::Ident(word),
                };
                out.push((tok, start));
            }
            other => return Err(err(i, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<&(Tok, usize)> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while matches!(self.peek(), Some((Tok::Pipe, _))) {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.atom()?;
        while matches!(self.peek(), Some((Tok::Amp, _))) {
            self.bump();
            let rhs = self.atom()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.bump() {
            Some((Tok::Top, _)) => Ok(Formula::Top),
            Some((Tok::Bot, _)) => Ok(Formula::Bot),
            Some((Tok::Ident(name), _)) => Ok(Formula::Var(name.clone())),
            Some((Tok::LParen, open)) => {
                let open = *open;
                let inner = self.formula()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    Some((t, p)) => Err(err(*p, format!("expected `)`, found {t}"))),
                    None => Err(err(open, "unclosed `(`")),
                }
            }
            Some((t, p)) => Err(err(*p, format!("expected a formula, found {t}"))),
            None => Err(err(self.end, "expected a formula")),
        }
    }
}

fn parse_tokens(toks: &[(Tok, usize)], end: usize) -> Result<Formula, ParseError> {
    if toks.is_empty() {
        return Err(err(0, "empty formula"));
    }
    let mut p = Parser { toks, pos: 0, end };
    let f = p.formula()?;
    if let Some((t, pos)) = p.peek() {
        return Err(err(*pos, format!("unexpected {t}")));
    }
    Ok(f)
}

/// Parses a formula. `&` binds tighter than `|`; both associate left.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    for (t, p) in &toks {
        if matches!(t, Tok::Strict | Tok::Defeasible) {
            return Err(err(*p, format!("{t} is not allowed inside a formula")));
        }
    }
    parse_tokens(&toks, text.chars().count())
}

/// Parses `lhs |- rhs` or `lhs |~ rhs`.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let toks = lex(text)?;
    let end = text.chars().count();
    let mut split = None;
    for (i, (t, p)) in toks.iter().enumerate() {
        let kind = match t {
            Tok::Strict => SequentKind::Strict,
            Tok::Defeasible => SequentKind::Defeasible,
            _ => continue,
        };
        if split.is_some() {
            return Err(err(*p, "more than one sequent arrow"));
        }
        split = Some((i, kind, *p));
    }
    let (i, kind, arrow_pos) = split.ok_or_else(|| err(end, "expected `|-` or `|~`"))?;
    let lhs = parse_tokens(&toks[..i], arrow_pos)?;
    let rhs = parse_tokens(&toks[i + 1..], end)?;
    Ok(Sequent { kind, lhs, rhs })
}
