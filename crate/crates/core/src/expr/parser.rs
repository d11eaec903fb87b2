use std::fmt;

use num_bigint::BigInt;

use super::{Ast, Statement};
use crate::scalar::{Bindings, Rational, Scalar, Var};
use crate::weyl::Letter;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    EqEq,
    Eq,
    /// Statement separator: newline or `;`.
    Sep,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Nat(n) => write!(f, "`{n}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::EqEq => f.write_str("`==`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Sep => f.write_str("end of statement"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

/// Position (1-based line and column), expected tokens and what was found.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: expected {}, found {found}", expected_text(.expected))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

fn expected_text(xs: &[String]) -> String {
    match xs {
        [x] => x.clone(),
        _ => format!("one of {}", xs.join(", ")),
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line: l0, column: c0 });
        match c {
            '\n' => {
                push(&mut out, Tok::Sep);
                line += 1;
                col = 1;
                k += 1;
                continue;
            }
            '#' => {
                while k < chars.len() && chars[k] != '\n' {
                    k += 1;
                }
                continue;
            }
            c if c.is_whitespace() => {}
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                let s: String = chars[start..k].iter().collect();
                col += k - start;
                push(&mut out, Tok::Ident(s));
                continue;
            }
            c if c.is_ascii_digit() => {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let s: String = chars[start..k].iter().collect();
                col += k - start;
                push(&mut out, Tok::Nat(s.parse().expect("digits")));
                continue;
            }
            '=' if chars.get(k + 1) == Some(&'=') => {
                push(&mut out, Tok::EqEq);
                k += 2;
                col += 2;
                continue;
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    '=' => Tok::Eq,
                    ';' => Tok::Sep,
                    other => {
                        return Err(ParseError {
                            line,
                            column: col,
                            expected: vec!["an expression token".into()],
                            found: format!("`{other}`"),
                        })
                    }
                };
                push(&mut out, tok);
            }
        }
        k += 1;
        col += 1;
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

const ATOM_START: &[&str] = &["`a`", "`b`", "`N`", "`p`", "`q`", "`A`", "`d`", "integer", "`qnum(`", "`comm(`", "`(`"];

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let s = &self.toks[self.at];
        ParseError {
            line: s.line,
            column: s.column,
            expected: expected.iter().map(|x| x.to_string()).collect(),
            found: s.tok.to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn skip_seps(&mut self) {
        while *self.peek() == Tok::Sep {
            self.bump();
        }
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = if *self.peek() == Tok::Minus {
            self.bump();
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Ast, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let expected: &[&str] = if negative { &["integer"] } else { &["integer", "`-`"] };
        let e = match self.peek() {
            Tok::Nat(n) => i32::try_from(n.clone()).map_err(|_| self.error(&["exponent below 2^31"]))?,
            _ => return Err(self.error(expected)),
        };
        self.bump();
        Ok(Ast::Pow(Box::new(base), if negative { -e } else { e }))
    }

    fn nat_u32(&mut self) -> Result<u32, ParseError> {
        match self.peek() {
            Tok::Nat(n) => {
                let v = u32::try_from(n.clone()).map_err(|_| self.error(&["integer below 2^32"]))?;
                self.bump();
                Ok(v)
            }
            _ => Err(self.error(&["integer"])),
        }
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                Ok(Ast::Int(n))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Ast::Group(Box::new(inner)))
            }
            Tok::Ident(s) => {
                let ast = match s.as_str() {
                    "a" => Ast::Gen(Letter::A),
                    "b" => Ast::Gen(Letter::B),
                    "N" => Ast::Gen(Letter::N),
                    "p" => Ast::Param(Var::P),
                    "q" => Ast::Param(Var::Q),
                    "A" => Ast::Param(Var::A),
                    "d" => Ast::Param(Var::Delta),
                    "qnum" => {
                        self.bump();
                        self.expect(Tok::LParen, "`(`")?;
                        let k = self.nat_u32()?;
                        self.expect(Tok::RParen, "`)`")?;
                        return Ok(Ast::QNum(k));
                    }
                    "comm" => {
                        self.bump();
                        self.expect(Tok::LParen, "`(`")?;
                        let x = self.expr()?;
                        self.expect(Tok::Comma, "`,`")?;
                        let y = self.expr()?;
                        self.expect(Tok::RParen, "`)`")?;
                        return Ok(Ast::Comm(Box::new(x), Box::new(y)));
                    }
                    _ => return Err(self.error(ATOM_START)),
                };
                self.bump();
                Ok(ast)
            }
            _ => Err(self.error(ATOM_START)),
        }
    }

    fn end_of_statement(&mut self, also: &[&str]) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Sep | Tok::Eof => Ok(()),
            _ => {
                let mut exp = vec!["`+`", "`-`", "`*`", "`/`", "`^`"];
                exp.extend_from_slice(also);
                exp.push("end of statement");
                Err(self.error(&exp))
            }
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let num = match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                n
            }
            _ => return Err(self.error(&["integer"])),
        };
        let num = if neg { -num } else { num };
        if *self.peek() != Tok::Slash {
            return Ok(Rational::from_int(num));
        }
        self.bump();
        match self.peek().clone() {
            Tok::Nat(d) if d != BigInt::from(0) => {
                self.bump();
                Ok(Rational::new(num, d).expect("nonzero denominator"))
            }
            _ => Err(self.error(&["nonzero integer"])),
        }
    }

    /// `p=1, q=2/3`; a variable bound to its own name stays symbolic.
    fn bindings(&mut self) -> Result<Vec<(Var, Option<Rational>)>, ParseError> {
        let mut out = Vec::new();
        loop {
            let var = match self.peek() {
                Tok::Ident(s) => Var::from_name(s).ok_or_else(|| self.error(&["`p`", "`q`", "`A`", "`d`"]))?,
                _ => return Err(self.error(&["`p`", "`q`", "`A`", "`d`"])),
            };
            self.bump();
            self.expect(Tok::Eq, "`=`")?;
            let value = match self.peek() {
                Tok::Ident(s) if Var::from_name(s) == Some(var) => {
                    self.bump();
                    None
                }
                _ => Some(self.rational()?),
            };
            out.push((var, value));
            if *self.peek() != Tok::Comma {
                return Ok(out);
            }
            self.bump();
        }
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.error(&["`normalize`", "`verify`", "`expand`", "`with`"])),
        };
        match kw.as_str() {
            "normalize" | "expand" => {
                self.bump();
                let x = self.expr()?;
                self.end_of_statement(&[])?;
                Ok(if kw == "normalize" { Statement::Normalize(x) } else { Statement::Expand(x) })
            }
            "verify" => {
                self.bump();
                let lhs = self.expr()?;
                if *self.peek() != Tok::EqEq {
                    return Err(self.error(&["`+`", "`-`", "`*`", "`/`", "`^`", "`==`"]));
                }
                self.bump();
                let rhs = self.expr()?;
                self.end_of_statement(&[])?;
                Ok(Statement::Verify(lhs, rhs))
            }
            "with" => {
                self.bump();
                let b = self.bindings()?;
                match self.peek() {
                    Tok::Sep | Tok::Eof => Ok(Statement::With(b)),
                    _ => Err(self.error(&["`,`", "end of statement"])),
                }
            }
            _ => Err(self.error(&["`normalize`", "`verify`", "`expand`", "`with`"])),
        }
    }
}

/// Parses one expression.
pub fn parse(text: &str) -> Result<Ast, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    p.skip_seps();
    let x = p.expr()?;
    p.skip_seps();
    if *p.peek() != Tok::Eof {
        let mut e = p.error(&["`+`", "`-`", "`*`", "`/`", "`^`", "end of input"]);
        if matches!(p.peek(), Tok::Ident(_) | Tok::Nat(_) | Tok::LParen) {
            e.expected.insert(0, "explicit `*` between factors".into());
        }
        return Err(e);
    }
    Ok(x)
}

/// Parses `lhs == rhs`.
pub fn parse_equation(text: &str) -> Result<(Ast, Ast), ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let lhs = p.expr()?;
    p.expect(Tok::EqEq, "`==`")?;
    let rhs = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["`+`", "`-`", "`*`", "`/`", "`^`", "end of input"]));
    }
    Ok((lhs, rhs))
}

/// Parses a script: statements separated by newlines or `;`, `#` comments.
pub fn parse_script(text: &str) -> Result<Vec<Statement>, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let mut out = Vec::new();
    loop {
        p.skip_seps();
        if *p.peek() == Tok::Eof {
            return Ok(out);
        }
        out.push(p.statement()?);
    }
}

/// Parses `p=1,q=2/3` into bindings.
pub fn parse_bindings(text: &str) -> Result<Bindings, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let b = p.bindings()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["`,`", "end of input"]));
    }
    Ok(b.into_iter().filter_map(|(v, r)| r.map(|r| (v, Scalar::from_rational(r)))).collect())
}
