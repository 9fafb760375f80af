//! Expressions over `Q(β)`: integers, the symbol `b`, `+ - * / ^` and parentheses.
//! Juxtaposition multiplies, so `3b^2` and `2(b-1)` are accepted.

use betanum::{FieldElement, NumberField};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    B,
    Op(char),
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>, CliError> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut n = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    n.push(d);
                    chars.next();
                }
                out.push(Token::Int(n.parse().map_err(|_| CliError::Usage(format!("integer too large: {n}")))?));
            }
            'b' | 'β' => {
                chars.next();
                out.push(Token::B);
            }
            '+' | '-' | '*' | '/' | '^' => {
                chars.next();
                out.push(Token::Op(c));
            }
            '(' => {
                chars.next();
                out.push(Token::Open);
            }
            ')' => {
                chars.next();
                out.push(Token::Close);
            }
            _ => return Err(CliError::Usage(format!("unexpected character {c:?} in {s:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    field: &'a NumberField,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<FieldElement, CliError> {
        let mut acc = self.term()?;
        while let Some(Token::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement, CliError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Op('*')) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Token::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs)?;
                }
                Some(Token::Int(_) | Token::B | Token::Open) => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<FieldElement, CliError> {
        match self.peek() {
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<FieldElement, CliError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Op('^')) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Token::Op('-')) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Token::Int(e)) => Ok(base.pow(if negative { -e } else { e })?),
            _ => Err(CliError::Usage("exponent must be an integer".into())),
        }
    }

    fn atom(&mut self) -> Result<FieldElement, CliError> {
        match self.next() {
            Some(Token::Int(n)) => Ok(self.field.from_int(n)),
            Some(Token::B) => Ok(self.field.beta()),
            Some(Token::Open) => {
                let v = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(v),
                    _ => Err(CliError::Usage("missing ')'".into())),
                }
            }
            other => Err(CliError::Usage(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses an exact element of the field.
pub fn parse_value(field: &NumberField, s: &str) -> Result<FieldElement, CliError> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(CliError::Usage("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0, field };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(CliError::Usage(format!("trailing input in {s:?}")));
    }
    Ok(v)
}

/// Parses `lo,hi`.
pub fn parse_window(field: &NumberField, s: &str) -> Result<(FieldElement, FieldElement), CliError> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("window must be lo,hi: {s:?}")))?;
    let (lo, hi) = (parse_value(field, a)?, parse_value(field, b)?);
    if lo.compare(&hi).is_ge() {
        return Err(CliError::Usage("window must satisfy lo < hi".into()));
    }
    Ok((lo, hi))
}
