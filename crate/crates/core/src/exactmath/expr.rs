//! Parser for arithmetic expressions over the variable `n`.
//!
//! Grammar (usual precedence, `^` binds tightest, `*` `/` over `+` `-`):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' '-'? INTEGER)?
//! atom  := INTEGER | 'n' | '(' expr ')'
//! ```
//!
//! Every expression denotes a rational function; `1/2*n^2` is `(1/2) * n^2`
//! by left association. Exponents are integer literals; negative exponents
//! take reciprocals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::polynomial::Polynomial;
use super::rational_function::RationalFunction;

/// Largest accepted exponent magnitude; beyond this the expression is
/// rejected rather than letting degrees explode.
const MAX_EXPONENT: i64 = 1 << 16;

/// A parse failure with 1-based line and column of the offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(v) => write!(f, "{v}"),
            Tok::Var => write!(f, "n"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Slash => write!(f, "/"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
        }
    }
}

struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                digits.push(chars[i]);
                i += 1;
                col += 1;
            }
            let value: BigInt = digits.parse().expect("digit string");
            tokens.push(Token { tok: Tok::Int(value), line: tline, col: tcol });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut word = String::new();
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                word.push(chars[i]);
                i += 1;
                col += 1;
            }
            if word != "n" {
                return Err(ParseError::new(
                    tline,
                    tcol,
                    format!("unknown symbol '{word}' (the only variable is 'n')"),
                ));
            }
            tokens.push(Token { tok: Tok::Var, line: tline, col: tcol });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ParseError::new(
                    tline,
                    tcol,
                    format!("unexpected character '{other}'"),
                ))
            }
        };
        i += 1;
        col += 1;
        tokens.push(Token { tok, line: tline, col: tcol });
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end_line: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or((self.end_line, self.end_col))
    }

    fn advance(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::new(line, col, message)
    }

    fn expr(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.advance();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.advance();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.advance();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    let (line, col) = self.here();
                    self.advance();
                    let rhs = self.unary()?;
                    acc = acc
                        .checked_div(&rhs)
                        .map_err(|_| ParseError::new(line, col, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.advance();
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.advance();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let (line, col) = self.here();
        self.advance();
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.advance();
            true
        } else {
            false
        };
        let magnitude = match self.advance() {
            Some(Token { tok: Tok::Int(v), .. }) => v.clone(),
            _ => return Err(self.error_here("expected an integer exponent after '^'")),
        };
        let magnitude: i64 = magnitude
            .try_into()
            .ok()
            .filter(|&m| m <= MAX_EXPONENT)
            .ok_or_else(|| {
                ParseError::new(line, col, format!("exponent exceeds the limit {MAX_EXPONENT}"))
            })?;
        let exponent = if negative { -magnitude } else { magnitude };
        base.pow(exponent as i32)
            .map_err(|_| ParseError::new(line, col, "zero raised to a negative power"))
    }

    fn atom(&mut self) -> Result<RationalFunction, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.advance();
                Ok(RationalFunction::constant(BigRational::from_integer(v)))
            }
            Some(Tok::Var) => {
                self.advance();
                Ok(RationalFunction::from_polynomial(Polynomial::variable()))
            }
            Some(Tok::LParen) => {
                self.advance();
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.advance();
                        Ok(inner)
                    }
                    _ => Err(self.error_here("expected ')'")),
                }
            }
            Some(other) => Err(self.error_here(format!("unexpected '{other}'"))),
            None => Err(self.error_here("unexpected end of expression")),
        }
    }
}

/// Parses an expression into a rational function of `n`.
pub fn parse_expression(text: &str) -> Result<RationalFunction, ParseError> {
    let tokens = tokenize(text)?;
    let lines = text.lines().count().max(1);
    let end_col = text.lines().last().map(|l| l.chars().count() + 1).unwrap_or(1);
    let mut parser = Parser {
        tokens,
        pos: 0,
        end_line: lines,
        end_col,
    };
    if parser.peek().is_none() {
        return Err(parser.error_here("empty expression"));
    }
    let value = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(parser.error_here(format!("unexpected '{tok}' after expression")));
    }
    Ok(value)
}

/// Parses an expression that must denote a constant, e.g. `7`, `-3/2`,
/// or `(1+1)/4`.
pub fn parse_rational_literal(text: &str) -> Result<BigRational, ParseError> {
    let value = parse_expression(text)?;
    match value.as_polynomial() {
        Some(p) if p.is_constant() => Ok(p.coefficient(0)),
        _ => Err(ParseError::new(1, 1, "expected a constant expression")),
    }
}
