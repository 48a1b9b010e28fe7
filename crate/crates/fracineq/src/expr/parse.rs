//! Recursive-descent parser with precedence climbing.
//!
//! Grammar (loosest to tightest): `+ -`, `* /`, unary `-`, `^` (right
//! associative, constant exponent), atoms. Errors carry the byte offset of
//! the offending token and the token set that was expected there.

use super::Ast;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: found {found}, expected {}", expected.join(" or "))]
    Syntax {
        offset: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("exponent at byte {offset} is not a constant (powers require a constant exponent)")]
    NonConstantExponent { offset: usize },
    #[error("constant at byte {offset} does not evaluate to a finite number")]
    NonFiniteConstant { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::NonConstantExponent { offset }
            | ParseError::NonFiniteConstant { offset } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            b'/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                // Exponent part only when it is complete: `e`/`E`, optional
                // sign, at least one digit. Otherwise `e` stays an identifier
                // (Euler's number), e.g. `2*e`.
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let slice = &text[start..i];
                let value: f64 = slice.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    found: format!("`{slice}`"),
                    expected: vec!["number"],
                })?;
                if !value.is_finite() {
                    return Err(ParseError::NonFiniteConstant { offset: start });
                }
                toks.push((Tok::Num(value), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(ParseError::Syntax {
                    offset: i,
                    found: format!("`{}`", &text[i..i + c.len_utf8_guess()]),
                    expected: vec!["number", "identifier", "`(`", "`-`"],
                })
            }
        }
    }
    toks.push((Tok::Eof, text.len()));
    Ok(toks)
}

trait ByteLen {
    fn len_utf8_guess(self) -> usize;
}

impl ByteLen for u8 {
    fn len_utf8_guess(self) -> usize {
        match self {
            0x00..=0x7f => 1,
            0xc0..=0xdf => 2,
            0xe0..=0xef => 3,
            _ => 4,
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

const EXPECTED_ATOM: &[&str] = &["number", "identifier", "`(`", "`-`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: &[&'static str]) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            found: self.peek().describe(),
            expected: expected.to_vec(),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::RParen {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&["`+`", "`-`", "`*`", "`/`", "`^`", "`)`"]))
        }
    }

    // Binding powers: (+,-) = (1,2); (*,/) = (3,4); unary minus operand = 6;
    // ^ = (8,7) for right associativity with a tighter grip than unary minus.
    fn expr(&mut self, min_bp: u8) -> Result<Ast, ParseError> {
        let mut lhs = self.prefix()?;
        loop {
            let (l_bp, r_bp) = match self.peek() {
                Tok::Plus | Tok::Minus => (1, 2),
                Tok::Star | Tok::Slash => (3, 4),
                Tok::Caret => (8, 7),
                _ => break,
            };
            if l_bp < min_bp {
                break;
            }
            let (op, _) = self.bump();
            if op == Tok::Caret {
                let exp_offset = self.offset();
                let rhs = self.expr(r_bp)?;
                let c = match const_value(&rhs) {
                    Some(c) if c.is_finite() => c,
                    Some(_) => return Err(ParseError::NonFiniteConstant { offset: exp_offset }),
                    None => return Err(ParseError::NonConstantExponent { offset: exp_offset }),
                };
                lhs = Ast::Pow(Box::new(lhs), c);
            } else {
                let rhs = self.expr(r_bp)?;
                lhs = match op {
                    Tok::Plus => Ast::Add(Box::new(lhs), Box::new(rhs)),
                    Tok::Minus => Ast::Sub(Box::new(lhs), Box::new(rhs)),
                    Tok::Star => Ast::Mul(Box::new(lhs), Box::new(rhs)),
                    Tok::Slash => Ast::Div(Box::new(lhs), Box::new(rhs)),
                    _ => unreachable!(),
                };
            }
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Ast, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Ast::Const(n))
            }
            Tok::Minus => {
                self.bump();
                let operand = self.expr(6)?;
                Ok(super::neg(operand))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr(0)?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                let off = self.offset();
                self.bump();
                match name.as_str() {
                    "x" => Ok(Ast::Var),
                    "e" => Ok(Ast::Const(std::f64::consts::E)),
                    "pi" => Ok(Ast::Const(std::f64::consts::PI)),
                    "exp" | "ln" | "abs" => {
                        if *self.peek() != Tok::LParen {
                            return Err(self.err(&["`(`"]));
                        }
                        self.bump();
                        let arg = self.expr(0)?;
                        self.expect_rparen()?;
                        Ok(match name.as_str() {
                            "exp" => Ast::Exp(Box::new(arg)),
                            "ln" => Ast::Ln(Box::new(arg)),
                            _ => Ast::Abs(Box::new(arg)),
                        })
                    }
                    _ => Err(ParseError::UnknownIdentifier { offset: off, name }),
                }
            }
            _ => Err(self.err(EXPECTED_ATOM)),
        }
    }
}

/// Fold a variable-free subtree to its numeric value.
fn const_value(ast: &Ast) -> Option<f64> {
    Some(match ast {
        Ast::Const(c) => *c,
        Ast::Var => return None,
        Ast::Add(a, b) => const_value(a)? + const_value(b)?,
        Ast::Sub(a, b) => const_value(a)? - const_value(b)?,
        Ast::Mul(a, b) => const_value(a)? * const_value(b)?,
        Ast::Div(a, b) => const_value(a)? / const_value(b)?,
        Ast::Pow(a, c) => const_value(a)?.powf(*c),
        Ast::Exp(a) => const_value(a)?.exp(),
        Ast::Ln(a) => const_value(a)?.ln(),
        Ast::Abs(a) => const_value(a)?.abs(),
        Ast::Neg(a) => -const_value(a)?,
    })
}

pub(super) fn parse(text: &str) -> Result<Ast, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0 };
    let ast = parser.expr(0)?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.err(&["`+`", "`-`", "`*`", "`/`", "`^`", "end of input"]));
    }
    Ok(ast)
}
