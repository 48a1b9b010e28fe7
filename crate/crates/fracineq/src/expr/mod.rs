//! Expression front-end: parsing, symbolic differentiation, evaluation.
//!
//! Test functions enter the system only through [`FunctionSpec::parse`], so a
//! function and its derivative are always consistent by construction. The
//! grammar covers constants, the variable `x`, `+ - * /`, `^` with a constant
//! exponent, `exp`, `ln`, `abs`, unary minus, and the named constants `e` and
//! `pi`.

mod parse;

pub use parse::ParseError;

use std::fmt;

/// Expression tree. Power nodes carry a constant real exponent.
#[derive(Debug, Clone, PartialEq)]
pub enum Ast {
    Const(f64),
    Var,
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, f64),
    Exp(Box<Ast>),
    Ln(Box<Ast>),
    Abs(Box<Ast>),
    Neg(Box<Ast>),
}

/// A parsed function of one variable together with its source text.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    pub ast: Ast,
    pub source_text: String,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("ln of non-positive value {arg} at x = {x} in `{node}`")]
    LnDomain { x: f64, arg: f64, node: String },
    #[error("division by zero at x = {x} in `{node}`")]
    DivisionByZero { x: f64, node: String },
    #[error("negative base {base} raised to non-integer exponent {exponent} at x = {x} in `{node}`")]
    FractionalPowOfNegative {
        x: f64,
        base: f64,
        exponent: f64,
        node: String,
    },
    #[error("non-finite result at x = {x} in `{node}`")]
    NonFinite { x: f64, node: String },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiffError {
    #[error("abs is not differentiable; it may only be evaluated")]
    AbsNotDifferentiable,
}

impl FunctionSpec {
    /// Parse an infix expression in `x`.
    pub fn parse(text: &str) -> Result<FunctionSpec, ParseError> {
        let ast = parse::parse(text)?;
        Ok(FunctionSpec {
            ast,
            source_text: text.to_string(),
        })
    }

    /// Build a spec directly from a tree; the source text is the canonical
    /// printed form, so it re-parses to the same tree.
    pub fn from_ast(ast: Ast) -> FunctionSpec {
        let source_text = ast.to_string();
        FunctionSpec { ast, source_text }
    }

    pub fn evaluate(&self, x: f64) -> Result<f64, EvalError> {
        self.ast.evaluate(x)
    }

    /// Symbolic derivative with 0/1 identities folded.
    pub fn differentiate(&self) -> Result<FunctionSpec, DiffError> {
        Ok(FunctionSpec::from_ast(self.ast.differentiate()?))
    }

    /// Canonical printed form; `parse(canonical_text())` rebuilds `ast`.
    pub fn canonical_text(&self) -> String {
        self.ast.to_string()
    }
}

impl Ast {
    pub fn evaluate(&self, x: f64) -> Result<f64, EvalError> {
        let v = match self {
            Ast::Const(c) => *c,
            Ast::Var => x,
            Ast::Add(a, b) => a.evaluate(x)? + b.evaluate(x)?,
            Ast::Sub(a, b) => a.evaluate(x)? - b.evaluate(x)?,
            Ast::Mul(a, b) => a.evaluate(x)? * b.evaluate(x)?,
            Ast::Div(a, b) => {
                let denom = b.evaluate(x)?;
                if denom == 0.0 {
                    return Err(EvalError::DivisionByZero {
                        x,
                        node: self.to_string(),
                    });
                }
                a.evaluate(x)? / denom
            }
            Ast::Pow(base, c) => {
                let b = base.evaluate(x)?;
                if b < 0.0 && c.fract() != 0.0 {
                    return Err(EvalError::FractionalPowOfNegative {
                        x,
                        base: b,
                        exponent: *c,
                        node: self.to_string(),
                    });
                }
                b.powf(*c)
            }
            Ast::Exp(a) => a.evaluate(x)?.exp(),
            Ast::Ln(a) => {
                let arg = a.evaluate(x)?;
                if arg <= 0.0 {
                    return Err(EvalError::LnDomain {
                        x,
                        arg,
                        node: self.to_string(),
                    });
                }
                arg.ln()
            }
            Ast::Abs(a) => a.evaluate(x)?.abs(),
            Ast::Neg(a) => -a.evaluate(x)?,
        };
        if !v.is_finite() {
            return Err(EvalError::NonFinite {
                x,
                node: self.to_string(),
            });
        }
        Ok(v)
    }

    fn differentiate(&self) -> Result<Ast, DiffError> {
        use Ast::*;
        Ok(match self {
            Const(_) => Const(0.0),
            Var => Const(1.0),
            Add(u, v) => add(u.differentiate()?, v.differentiate()?),
            Sub(u, v) => sub(u.differentiate()?, v.differentiate()?),
            Mul(u, v) => add(
                mul(u.differentiate()?, (**v).clone()),
                mul((**u).clone(), v.differentiate()?),
            ),
            Div(u, v) => div(
                sub(
                    mul(u.differentiate()?, (**v).clone()),
                    mul((**u).clone(), v.differentiate()?),
                ),
                pow((**v).clone(), 2.0),
            ),
            Pow(u, c) => mul(
                mul(Const(*c), pow((**u).clone(), c - 1.0)),
                u.differentiate()?,
            ),
            Exp(u) => mul(Exp(u.clone()), u.differentiate()?),
            Ln(u) => div(u.differentiate()?, (**u).clone()),
            Abs(_) => return Err(DiffError::AbsNotDifferentiable),
            Neg(u) => neg(u.differentiate()?),
        })
    }
}

// Smart constructors folding 0/1 identities. Neg(Const c) normalizes to
// Const(-c) so printed trees re-parse to themselves. Guards spell the float
// comparisons out instead of using literal patterns.

#[allow(clippy::redundant_guards)]
pub(crate) fn add(a: Ast, b: Ast) -> Ast {
    match (a, b) {
        (Ast::Const(z), u) if z == 0.0 => u,
        (u, Ast::Const(z)) if z == 0.0 => u,
        (a, b) => Ast::Add(Box::new(a), Box::new(b)),
    }
}

#[allow(clippy::redundant_guards)]
pub(crate) fn sub(a: Ast, b: Ast) -> Ast {
    match (a, b) {
        (u, Ast::Const(z)) if z == 0.0 => u,
        (Ast::Const(z), u) if z == 0.0 => neg(u),
        (a, b) => Ast::Sub(Box::new(a), Box::new(b)),
    }
}

#[allow(clippy::redundant_guards)]
pub(crate) fn mul(a: Ast, b: Ast) -> Ast {
    match (a, b) {
        (Ast::Const(z), _) | (_, Ast::Const(z)) if z == 0.0 => Ast::Const(0.0),
        (Ast::Const(o), u) if o == 1.0 => u,
        (u, Ast::Const(o)) if o == 1.0 => u,
        (a, b) => Ast::Mul(Box::new(a), Box::new(b)),
    }
}

#[allow(clippy::redundant_guards)]
pub(crate) fn div(a: Ast, b: Ast) -> Ast {
    match (a, b) {
        (u, Ast::Const(o)) if o == 1.0 => u,
        (Ast::Const(z), u) if z == 0.0 && u != Ast::Const(0.0) => Ast::Const(0.0),
        (a, b) => Ast::Div(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn pow(base: Ast, c: f64) -> Ast {
    if c == 0.0 {
        Ast::Const(1.0)
    } else if c == 1.0 {
        base
    } else {
        Ast::Pow(Box::new(base), c)
    }
}

pub(crate) fn neg(a: Ast) -> Ast {
    match a {
        Ast::Const(c) => Ast::Const(-c),
        Ast::Neg(u) => *u,
        a => Ast::Neg(Box::new(a)),
    }
}

// Printing. Precedence: + - (1) < * / (2) < unary - (3) < ^ (4) < atom (5).
// A child is parenthesized when its level is below what its position needs,
// which makes parse(to_string()) structually identical.

impl Ast {
    fn level(&self) -> u8 {
        match self {
            Ast::Add(..) | Ast::Sub(..) => 1,
            Ast::Mul(..) | Ast::Div(..) => 2,
            Ast::Neg(_) => 3,
            Ast::Pow(..) => 4,
            Ast::Const(c) if *c < 0.0 => 0,
            _ => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Ast::Const(c) => write!(f, "{c}"),
            Ast::Var => write!(f, "x"),
            Ast::Add(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " + ")?;
                b.fmt_at(f, 2)
            }
            Ast::Sub(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " - ")?;
                b.fmt_at(f, 2)
            }
            Ast::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, "*")?;
                b.fmt_at(f, 3)
            }
            Ast::Div(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, "/")?;
                b.fmt_at(f, 3)
            }
            Ast::Neg(a) => {
                write!(f, "-")?;
                a.fmt_at(f, 3)
            }
            Ast::Pow(base, c) => {
                base.fmt_at(f, 5)?;
                if *c < 0.0 {
                    write!(f, "^({c})")
                } else {
                    write!(f, "^{c}")
                }
            }
            Ast::Exp(a) => {
                write!(f, "exp(")?;
                a.fmt_at(f, 0)?;
                write!(f, ")")
            }
            Ast::Ln(a) => {
                write!(f, "ln(")?;
                a.fmt_at(f, 0)?;
                write!(f, ")")
            }
            Ast::Abs(a) => {
                write!(f, "abs(")?;
                a.fmt_at(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

#[cfg(test)]
mod tests;
