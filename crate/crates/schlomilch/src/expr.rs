//! A small expression language for supplying integrands textually.
//!
//! Grammar (standard precedence; `^` binds tightest and is right-associative,
//! unary minus sits below `^`, then `*` `/`, then `+` `-`):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?
//! atom   := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! Numbers are decimal with an optional exponent; `pi` and `e` are predefined
//! constants. Implicit multiplication is rejected: `2x` is a syntax error.
//! The callable side stays in real arithmetic: out-of-domain evaluations
//! (log of a non-positive, division by zero, `^` of a negative base with a
//! non-integer exponent) produce IEEE non-finite values rather than panics;
//! the quadrature layer treats those per its own contract.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::{specfun, RealFunction};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { name: String, offset: usize },
    #[error("function `{name}` takes {expected} argument(s), got {got}")]
    WrongArity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("unbound name `{name}` (not the variable and not a parameter)")]
    UnboundName { name: String },
}

pub type Result<T> = std::result::Result<T, ExprError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// The registered function set: the elementary functions plus the special
/// functions the catalog's right-hand sides use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Sqrt,
    Abs,
    Pow,
    Erf,
    BesselI0,
    BesselI1,
    BesselJ0,
    BesselJ1,
    Si,
    Gamma,
    Zeta,
}

impl Function {
    fn lookup(name: &str) -> Option<Function> {
        Some(match name {
            "exp" => Function::Exp,
            "log" => Function::Log,
            "sin" => Function::Sin,
            "cos" => Function::Cos,
            "tan" => Function::Tan,
            "sinh" => Function::Sinh,
            "cosh" => Function::Cosh,
            "sqrt" => Function::Sqrt,
            "abs" => Function::Abs,
            "pow" => Function::Pow,
            "erf" => Function::Erf,
            "besseli0" => Function::BesselI0,
            "besseli1" => Function::BesselI1,
            "besselj0" => Function::BesselJ0,
            "besselj1" => Function::BesselJ1,
            "si" => Function::Si,
            "gamma" => Function::Gamma,
            "zeta" => Function::Zeta,
        _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Function::Exp => "exp",
            Function::Log => "log",
            Function::Sin => "sin",
            Function::Cos => "cos",
            Function::Tan => "tan",
            Function::Sinh => "sinh",
            Function::Cosh => "cosh",
            Function::Sqrt => "sqrt",
            Function::Abs => "abs",
            Function::Pow => "pow",
            Function::Erf => "erf",
            Function::BesselI0 => "besseli0",
            Function::BesselI1 => "besseli1",
            Function::BesselJ0 => "besselj0",
            Function::BesselJ1 => "besselj1",
            Function::Si => "si",
            Function::Gamma => "gamma",
            Function::Zeta => "zeta",
        }
    }

    fn arity(self) -> usize {
        match self {
            Function::Pow => 2,
            _ => 1,
        }
    }

    fn apply(self, args: &[f64]) -> f64 {
        match self {
            Function::Exp => args[0].exp(),
            Function::Log => args[0].ln(),
            Function::Sin => args[0].sin(),
            Function::Cos => args[0].cos(),
            Function::Tan => args[0].tan(),
            Function::Sinh => args[0].sinh(),
            Function::Cosh => args[0].cosh(),
            Function::Sqrt => args[0].sqrt(),
            Function::Abs => args[0].abs(),
            Function::Pow => args[0].powf(args[1]),
            Function::Erf => specfun::erf(args[0]),
            // Domain errors surface as the non-finite sentinel, not a crash.
            Function::BesselI0 => specfun::bessel_i(0, args[0]).unwrap_or(f64::NAN),
            Function::BesselI1 => specfun::bessel_i(1, args[0]).unwrap_or(f64::NAN),
            Function::BesselJ0 => specfun::bessel_j(0, args[0]).unwrap_or(f64::NAN),
            Function::BesselJ1 => specfun::bessel_j(1, args[0]).unwrap_or(f64::NAN),
            Function::Si => specfun::sine_integral(args[0]).unwrap_or(f64::NAN),
            Function::Gamma => specfun::gamma(args[0]).unwrap_or(f64::NAN),
            Function::Zeta => specfun::zeta(args[0]).unwrap_or(f64::NAN),
        }
    }
}

/// Abstract syntax tree for a real-valued expression in one variable plus
/// named parameters. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Constant(f64),
    Variable(String),
    Negate(Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Call(Function, Vec<Expr>),
}

// --- lexer ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(f64),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Number(v) => write!(f, "number {v}"),
            Token::Name(n) => write!(f, "name `{n}`"),
            Token::Plus => write!(f, "`+`"),
            Token::Minus => write!(f, "`-`"),
            Token::Star => write!(f, "`*`"),
            Token::Slash => write!(f, "`/`"),
            Token::Caret => write!(f, "`^`"),
            Token::LParen => write!(f, "`(`"),
            Token::RParen => write!(f, "`)`"),
            Token::Comma => write!(f, "`,`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')' | b',' => {
                let tok = match c {
                    b'+' => Token::Plus,
                    b'-' => Token::Minus,
                    b'*' => Token::Star,
                    b'/' => Token::Slash,
                    b'^' => Token::Caret,
                    b'(' => Token::LParen,
                    b')' => Token::RParen,
                    _ => Token::Comma,
                };
                tokens.push((tok, i));
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
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let slice = &text[start..i];
                let value: f64 = slice.parse().map_err(|_| ExprError::Syntax {
                    offset: start,
                    message: format!("malformed number literal `{slice}`"),
                })?;
                // A literal immediately followed by a name would be implicit
                // multiplication; reject it here with a clear message.
                if i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                    return Err(ExprError::Syntax {
                        offset: i,
                        message: "implicit multiplication is not allowed; write `*`".into(),
                    });
                }
                tokens.push((Token::Number(value), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((Token::Name(text[start..i].to_string()), start));
            }
            _ => {
                return Err(ExprError::Syntax {
                    offset: i,
                    message: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
                });
            }
        }
    }
    Ok(tokens)
}

// --- parser --------------------------------------------------------------------

struct Parser<'a> {
    tokens: &'a [(Token, usize)],
    pos: usize,
    text_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|&(_, o)| o)
            .unwrap_or(self.text_len)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: &Token, context: &str) -> Result<()> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(ExprError::Syntax {
                offset: self.offset(),
                message: format!("expected {want} {context}, found {t}"),
            }),
            None => Err(ExprError::Syntax {
                offset: self.offset(),
                message: format!("expected {want} {context}, found end of input"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Token::Plus) => BinaryOp::Add,
                Some(Token::Minus) => BinaryOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Token::Star) => BinaryOp::Mul,
                Some(Token::Slash) => BinaryOp::Div,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Some(Token::Minus) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Negate(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            // Right-associative, and a leading minus in the exponent is fine.
            let exponent = self.unary()?;
            return Ok(Expr::Binary(
                BinaryOp::Pow,
                Box::new(base),
                Box::new(exponent),
            ));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let offset = self.offset();
        match self.bump() {
            Some(Token::Number(v)) => Ok(Expr::Constant(v)),
            Some(Token::Name(name)) => {
                if let Some(Token::LParen) = self.peek() {
                    self.pos += 1;
                    let function = Function::lookup(&name)
                        .ok_or(ExprError::UnknownFunction { name: name.clone(), offset })?;
                    let mut args = vec![self.expr()?];
                    while let Some(Token::Comma) = self.peek() {
                        self.pos += 1;
                        args.push(self.expr()?);
                    }
                    self.expect(&Token::RParen, "to close the argument list")?;
                    if args.len() != function.arity() {
                        return Err(ExprError::WrongArity {
                            name: name.clone(),
                            expected: function.arity(),
                            got: args.len(),
                        });
                    }
                    Ok(Expr::Call(function, args))
                } else {
                    match name.as_str() {
                        "pi" => Ok(Expr::Constant(std::f64::consts::PI)),
                        "e" => Ok(Expr::Constant(std::f64::consts::E)),
                        _ => Ok(Expr::Variable(name)),
                    }
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(&Token::RParen, "to close the group")?;
                Ok(inner)
            }
            Some(t) => Err(ExprError::Syntax {
                offset,
                message: format!("expected a number, name, or `(`, found {t}"),
            }),
            None => Err(ExprError::Syntax {
                offset,
                message: "expected a number, name, or `(`, found end of input".into(),
            }),
        }
    }
}

/// Parse `text` into an AST.
pub fn parse(text: &str) -> Result<Expr> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        text_len: text.len(),
    };
    let expr = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(ExprError::Syntax {
            offset: parser.offset(),
            message: format!("unexpected trailing {}", tokens[parser.pos].0),
        });
    }
    Ok(expr)
}

// --- printing --------------------------------------------------------------------

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => 10,
            Expr::Binary(BinaryOp::Mul | BinaryOp::Div, ..) => 20,
            Expr::Negate(_) => 30,
            Expr::Binary(BinaryOp::Pow, ..) => 40,
            Expr::Constant(_) | Expr::Variable(_) | Expr::Call(..) => 50,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Constant(v) => write!(f, "{v}"),
            Expr::Variable(name) => write!(f, "{name}"),
            Expr::Negate(inner) => {
                write!(f, "-")?;
                inner.fmt_prec(f, 30)
            }
            Expr::Binary(op, lhs, rhs) => {
                let (sym, lmin, rmin) = match op {
                    BinaryOp::Add => ("+", 10, 11),
                    BinaryOp::Sub => ("-", 10, 11),
                    BinaryOp::Mul => ("*", 20, 21),
                    BinaryOp::Div => ("/", 20, 21),
                    // The grammar wants an atom on the left of `^` and
                    // allows a full unary on the right.
                    BinaryOp::Pow => ("^", 50, 30),
                };
                lhs.fmt_prec(f, lmin)?;
                write!(f, "{sym}")?;
                rhs.fmt_prec(f, rmin)
            }
            Expr::Call(function, args) => {
                write!(f, "{}(", function.name())?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    arg.fmt_prec(f, 0)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

// --- compilation -------------------------------------------------------------------

enum Compiled {
    Constant(f64),
    Variable,
    Negate(Box<Compiled>),
    Binary(BinaryOp, Box<Compiled>, Box<Compiled>),
    Call(Function, Vec<Compiled>),
}

impl Compiled {
    fn eval(&self, x: f64) -> f64 {
        match self {
            Compiled::Constant(v) => *v,
            Compiled::Variable => x,
            Compiled::Negate(inner) => -inner.eval(x),
            Compiled::Binary(op, lhs, rhs) => {
                let l = lhs.eval(x);
                let r = rhs.eval(x);
                match op {
                    BinaryOp::Add => l + r,
                    BinaryOp::Sub => l - r,
                    BinaryOp::Mul => l * r,
                    BinaryOp::Div => l / r,
                    BinaryOp::Pow => l.powf(r),
                }
            }
            Compiled::Call(function, args) => {
                let values: Vec<f64> = args.iter().map(|a| a.eval(x)).collect();
                function.apply(&values)
            }
        }
    }
}

fn resolve(e: &Expr, variable: &str, parameters: &HashMap<String, f64>) -> Result<Compiled> {
    Ok(match e {
        Expr::Constant(v) => Compiled::Constant(*v),
        Expr::Variable(name) if name == variable => Compiled::Variable,
        Expr::Variable(name) => match parameters.get(name) {
            Some(v) => Compiled::Constant(*v),
            None => return Err(ExprError::UnboundName { name: name.clone() }),
        },
        Expr::Negate(inner) => Compiled::Negate(Box::new(resolve(inner, variable, parameters)?)),
        Expr::Binary(op, lhs, rhs) => Compiled::Binary(
            *op,
            Box::new(resolve(lhs, variable, parameters)?),
            Box::new(resolve(rhs, variable, parameters)?),
        ),
        Expr::Call(function, args) => Compiled::Call(
            *function,
            args.iter()
                .map(|a| resolve(a, variable, parameters))
                .collect::<Result<_>>()?,
        ),
    })
}

/// Compile an AST into a pure callable of one variable with all other names
/// bound from `parameters`. The result is immutable and thread-safe.
pub fn compile(
    e: &Expr,
    variable: &str,
    parameters: &HashMap<String, f64>,
) -> Result<RealFunction> {
    let compiled = resolve(e, variable, parameters)?;
    Ok(std::sync::Arc::new(move |x| compiled.eval(x)))
}

/// Convenience: parse and compile in one step.
pub fn compile_str(
    text: &str,
    variable: &str,
    parameters: &HashMap<String, f64>,
) -> Result<RealFunction> {
    compile(&parse(text)?, variable, parameters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[(&str, f64)]) -> HashMap<String, f64> {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    #[test]
    fn precedence_structure() {
        let e = parse("2+3*x").unwrap();
        assert_eq!(
            e,
            Expr::Binary(
                BinaryOp::Add,
                Box::new(Expr::Constant(2.0)),
                Box::new(Expr::Binary(
                    BinaryOp::Mul,
                    Box::new(Expr::Constant(3.0)),
                    Box::new(Expr::Variable("x".into()))
                ))
            )
        );
    }

    #[test]
    fn caret_is_right_associative() {
        let f = compile_str("2^3^2", "x", &HashMap::new()).unwrap();
        assert_eq!(f(0.0), 512.0);
        assert_eq!(f(17.3), 512.0);
    }

    #[test]
    fn unary_minus_below_caret() {
        let f = compile_str("-x^2", "x", &HashMap::new()).unwrap();
        assert_eq!(f(3.0), -9.0);
        let g = compile_str("2^-2", "x", &HashMap::new()).unwrap();
        assert_eq!(g(0.0), 0.25);
    }

    #[test]
    fn cs_integrand_expression() {
        let f = compile_str("exp(-(x-1/x)^2)", "x", &HashMap::new()).unwrap();
        assert_eq!(f(1.0), 1.0);
    }

    #[test]
    fn parameters_bind() {
        let f = compile_str("a*x+b", "x", &params(&[("a", 2.0), ("b", 1.0)])).unwrap();
        assert_eq!(f(3.0), 7.0);
    }

    #[test]
    fn division_by_zero_is_non_finite() {
        let f = compile_str("1/x", "x", &HashMap::new()).unwrap();
        assert!(!f(0.0).is_finite());
    }

    #[test]
    fn squared_argument_oracle() {
        // exp(−c(x − 1/x)²) at c = 1, x = 2 → exp(−2.25).
        let f = compile_str("exp(-c*(x-1/x)^2)", "x", &params(&[("c", 1.0)])).unwrap();
        assert_eq!(f(2.0), (-2.25f64).exp());
    }

    #[test]
    fn negative_base_fractional_power_is_nan() {
        let f = compile_str("x^0.5", "x", &HashMap::new()).unwrap();
        assert!(f(-2.0).is_nan());
    }

    #[test]
    fn predefined_constants() {
        let f = compile_str("pi", "x", &HashMap::new()).unwrap();
        assert_eq!(f(0.0), std::f64::consts::PI);
        let g = compile_str("e^2", "x", &HashMap::new()).unwrap();
        assert_eq!(g(0.0), std::f64::consts::E.powf(2.0));
    }

    #[test]
    fn implicit_multiplication_rejected() {
        assert!(matches!(parse("2x"), Err(ExprError::Syntax { .. })));
    }

    #[test]
    fn error_reporting() {
        match parse("2+*3") {
            Err(ExprError::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(
            parse("foo(x)"),
            Err(ExprError::UnknownFunction { .. })
        ));
        assert!(matches!(
            parse("pow(x)"),
            Err(ExprError::WrongArity { expected: 2, got: 1, .. })
        ));
        assert!(matches!(
            compile_str("a*x", "x", &HashMap::new()),
            Err(ExprError::UnboundName { .. })
        ));
    }

    #[test]
    fn special_functions_available() {
        let f = compile_str("erf(x)+besseli0(x)+si(x)", "x", &HashMap::new()).unwrap();
        let want = specfun::erf(0.5)
            + specfun::bessel_i(0, 0.5).unwrap()
            + specfun::sine_integral(0.5).unwrap();
        assert_eq!(f(0.5), want);
        // Out-of-domain special-function arguments surface as NaN.
        let g = compile_str("gamma(x)", "x", &HashMap::new()).unwrap();
        assert!(g(-1.0).is_nan());
    }

    #[test]
    fn compile_is_referentially_transparent() {
        let f = compile_str("sin(x)*exp(-x^2)+gamma(x+3)", "x", &HashMap::new()).unwrap();
        for &x in &[0.1, 1.7, 2.9] {
            assert_eq!(f(x).to_bits(), f(x).to_bits());
        }
    }

    // Naive tree-walking oracle over the original AST with an environment.
    fn eval_oracle(e: &Expr, env: &HashMap<String, f64>) -> f64 {
        match e {
            Expr::Constant(v) => *v,
            Expr::Variable(name) => env[name],
            Expr::Negate(inner) => -eval_oracle(inner, env),
            Expr::Binary(op, l, r) => {
                let (a, b) = (eval_oracle(l, env), eval_oracle(r, env));
                match op {
                    BinaryOp::Add => a + b,
                    BinaryOp::Sub => a - b,
                    BinaryOp::Mul => a * b,
                    BinaryOp::Div => a / b,
                    BinaryOp::Pow => a.powf(b),
                }
            }
            Expr::Call(function, args) => {
                let values: Vec<f64> = args.iter().map(|a| eval_oracle(a, env)).collect();
                function.apply(&values)
            }
        }
    }

    #[test]
    fn eval_matches_tree_walking_oracle_to_zero_ulp() {
        let exprs = [
            "x^3-2*x+1",
            "(x+1)/(x-1)*x",
            "-x^2+4*a*x-b/(x+c)",
            "2^x^2-x/3",
        ];
        let p = params(&[("a", 0.5), ("b", 2.25), ("c", 3.0)]);
        for text in exprs {
            let ast = parse(text).unwrap();
            let f = compile(&ast, "x", &p).unwrap();
            let mut env = p.clone();
            for &x in &[0.25, 1.5, -2.0, 42.0] {
                env.insert("x".into(), x);
                assert_eq!(
                    f(x).to_bits(),
                    eval_oracle(&ast, &env).to_bits(),
                    "mismatch for {text} at x={x}"
                );
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_expr() -> impl Strategy<Value = Expr> {
            let leaf = prop_oneof![
                (0.0f64..1e6).prop_map(Expr::Constant),
                Just(Expr::Variable("x".into())),
                Just(Expr::Variable("a".into())),
            ];
            leaf.prop_recursive(6, 64, 3, |inner| {
                prop_oneof![
                    inner.clone().prop_map(|e| Expr::Negate(Box::new(e))),
                    (inner.clone(), inner.clone(), 0..5u8).prop_map(|(l, r, op)| {
                        let op = [
                            BinaryOp::Add,
                            BinaryOp::Sub,
                            BinaryOp::Mul,
                            BinaryOp::Div,
                            BinaryOp::Pow,
                        ][op as usize];
                        Expr::Binary(op, Box::new(l), Box::new(r))
                    }),
                    inner.clone().prop_map(|e| Expr::Call(Function::Sin, vec![e])),
                    (inner.clone(), inner).prop_map(|(l, r)| {
                        Expr::Call(Function::Pow, vec![l, r])
                    }),
                ]
            })
        }

        proptest! {
            #[test]
            fn print_parse_roundtrip_is_structural_identity(e in arb_expr()) {
                let printed = e.to_string();
                let reparsed = parse(&printed).unwrap();
                prop_assert_eq!(&reparsed, &e, "printed form: {}", printed);
                // Idempotence: printing the reparsed tree changes nothing.
                prop_assert_eq!(reparsed.to_string(), printed);
            }
        }
    }
}
