use thiserror::Error;

use super::{Axis, Formula};

/// Syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    BoxOp(Axis),
    DiaOp(Axis),
}

fn describe(tok: Option<&(Token, usize)>) -> String {
    match tok {
        None => "end of input".to_string(),
        Some((t, _)) => match t {
            Token::Ident(s) => format!("identifier `{s}`"),
            Token::True => "`true`".into(),
            Token::False => "`false`".into(),
            Token::Not => "`~`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Arrow => "`->`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::BoxOp(a) => format!("`[{a}]`"),
            Token::DiaOp(a) => format!("`<{a}>`"),
        },
    }
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, message: String| ParseError { pos, message };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        match c {
            b'~' => {
                out.push((Token::Not, start));
                i += 1;
            }
            b'&' => {
                out.push((Token::And, start));
                i += 1;
            }
            b'|' => {
                out.push((Token::Or, start));
                i += 1;
            }
            b'(' => {
                out.push((Token::LParen, start));
                i += 1;
            }
            b')' => {
                out.push((Token::RParen, start));
                i += 1;
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push((Token::Arrow, start));
                    i += 2;
                } else {
                    return Err(err(start, "expected `->`".into()));
                }
            }
            b'[' | b'<' => {
                let close = if c == b'[' { b']' } else { b'>' };
                let axis = match bytes.get(i + 1) {
                    Some(b'0') => Axis::Zero,
                    Some(b'1') => Axis::One,
                    _ => return Err(err(start, "modality index must be 0 or 1".into())),
                };
                if bytes.get(i + 2) != Some(&close) {
                    return Err(err(start, format!("unterminated modality, expected `{}`", close as char)));
                }
                out.push((if c == b'[' { Token::BoxOp(axis) } else { Token::DiaOp(axis) }, start));
                i += 3;
            }
            b'a'..=b'z' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &text[start..i];
                out.push((
                    match word {
                        "true" => Token::True,
                        "false" => Token::False,
                        _ => Token::Ident(word.to_string()),
                    },
                    start,
                ));
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(err(start, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(_, o)| *o).unwrap_or(self.end)
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            pos: self.offset(),
            message: format!("expected {expected}, found {}", describe(self.tokens.get(self.pos))),
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Token::Arrow) {
            self.pos += 1;
            let rhs = self.implication()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            let rhs = self.conjunction()?;
            acc = Formula::Or(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = Formula::And(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(Formula::Not(Box::new(self.unary()?)))
            }
            Some(Token::BoxOp(a)) => {
                self.pos += 1;
                Ok(Formula::Box(a, Box::new(self.unary()?)))
            }
            Some(Token::DiaOp(a)) => {
                self.pos += 1;
                Ok(Formula::Diamond(a, Box::new(self.unary()?)))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let f = match self.peek().cloned() {
            Some(Token::True) => Formula::Top,
            Some(Token::False) => Formula::Bottom,
            Some(Token::Ident(name)) => Formula::Var(name),
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.implication()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.error("`)`"));
                }
                inner
            }
            _ => return Err(self.error("a formula")),
        };
        self.pos += 1;
        Ok(f)
    }
}

/// Parses the ASCII formula grammar.
///
/// Precedence from tightest: `~` and the modal prefixes, `&`, `|`, `->`.
/// `&` and `|` associate to the left, `->` to the right.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.len() };
    let f = parser.implication()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("end of input"));
    }
    Ok(f)
}
