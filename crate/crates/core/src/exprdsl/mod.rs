//! Scalar expressions in one variable `u`, with structural differentiation.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = power { ("*" | "/") power } ;
//! power   = unary [ "^" int ] ;
//! unary   = "-" unary | primary ;
//! primary = number | "u" | "pi"
//!         | func "(" expr ")"
//!         | "pow" "(" expr "," int ")"
//!         | "(" expr ")" ;
//! func    = "sin" | "cos" | "sinh" | "cosh" | "exp" | "sqrt" ;
//! int     = [ "-" ] digit { digit } ;
//! number  = digit { digit } [ "." { digit } ] [ ("e" | "E") [ "+" | "-" ] digit { digit } ] ;
//! ```
//!
//! Unary minus binds tighter than `^`, so `-u^2` is `(-u)^2`.

mod parser;

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub use parser::parse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
        }
    }

    pub(crate) fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var,
    Lit(f64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// The denominator is checked for zero at evaluation time.
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

fn domain(at: f64, reason: &'static str) -> Error {
    Error::Domain { at, reason }
}

impl Expr {
    pub fn eval(&self, u: f64) -> Result<f64> {
        let v = match self {
            Expr::Var => u,
            Expr::Lit(c) => *c,
            Expr::Neg(a) => -a.eval(u)?,
            Expr::Add(a, b) => a.eval(u)? + b.eval(u)?,
            Expr::Sub(a, b) => a.eval(u)? - b.eval(u)?,
            Expr::Mul(a, b) => a.eval(u)? * b.eval(u)?,
            Expr::Div(a, b) => {
                let d = b.eval(u)?;
                if d == 0.0 {
                    return Err(domain(u, "division by zero"));
                }
                a.eval(u)? / d
            }
            Expr::Pow(a, n) => {
                let x = a.eval(u)?;
                if *n < 0 && x == 0.0 {
                    return Err(domain(u, "division by zero"));
                }
                libm::pow(x, *n as f64)
            }
            Expr::Call(f, a) => {
                let x = a.eval(u)?;
                match f {
                    Func::Sin => libm::sin(x),
                    Func::Cos => libm::cos(x),
                    Func::Sinh => libm::sinh(x),
                    Func::Cosh => libm::cosh(x),
                    Func::Exp => libm::exp(x),
                    Func::Sqrt => {
                        if x < 0.0 {
                            return Err(domain(u, "square root of a negative value"));
                        }
                        libm::sqrt(x)
                    }
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(domain(u, "overflow"))
        }
    }

    /// Structural derivative with respect to `u`, with constant folding.
    pub fn differentiate(&self) -> Expr {
        match self {
            Expr::Var => Expr::Lit(1.0),
            Expr::Lit(_) => Expr::Lit(0.0),
            Expr::Neg(a) => neg(a.differentiate()),
            Expr::Add(a, b) => add(a.differentiate(), b.differentiate()),
            Expr::Sub(a, b) => sub(a.differentiate(), b.differentiate()),
            Expr::Mul(a, b) => add(
                mul(a.differentiate(), (**b).clone()),
                mul((**a).clone(), b.differentiate()),
            ),
            Expr::Div(a, b) => div(
                sub(
                    mul(a.differentiate(), (**b).clone()),
                    mul((**a).clone(), b.differentiate()),
                ),
                pow((**b).clone(), 2),
            ),
            Expr::Pow(a, n) => match n {
                0 => Expr::Lit(0.0),
                _ => mul(
                    mul(Expr::Lit(*n as f64), pow((**a).clone(), n - 1)),
                    a.differentiate(),
                ),
            },
            Expr::Call(f, a) => {
                let inner = (**a).clone();
                let outer = match f {
                    Func::Sin => call(Func::Cos, inner),
                    Func::Cos => neg(call(Func::Sin, inner)),
                    Func::Sinh => call(Func::Cosh, inner),
                    Func::Cosh => call(Func::Sinh, inner),
                    Func::Exp => call(Func::Exp, inner),
                    Func::Sqrt => div(Expr::Lit(0.5), call(Func::Sqrt, inner)),
                };
                mul(outer, a.differentiate())
            }
        }
    }

    /// `[e, e', e'', ...]` up to and including order `n`.
    pub fn derivatives(&self, n: usize) -> Vec<Expr> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.clone());
        for k in 0..n {
            let d = out[k].differentiate();
            out.push(d);
        }
        out
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Var => false,
            Expr::Lit(_) => true,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.is_constant(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_constant() && b.is_constant()
            }
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Expr::Var | Expr::Lit(_) => 1,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => 1 + a.size(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }
}

fn lit(e: &Expr) -> Option<f64> {
    match e {
        Expr::Lit(c) => Some(*c),
        _ => None,
    }
}

fn folded(c: f64, otherwise: impl FnOnce() -> Expr) -> Expr {
    if c.is_finite() {
        Expr::Lit(c)
    } else {
        otherwise()
    }
}

pub fn neg(a: Expr) -> Expr {
    match a {
        Expr::Lit(c) => Expr::Lit(-c),
        Expr::Neg(inner) => *inner,
        a => Expr::Neg(Box::new(a)),
    }
}

pub fn add(a: Expr, b: Expr) -> Expr {
    match (lit(&a), lit(&b)) {
        (Some(x), Some(y)) => folded(x + y, || Expr::Add(Box::new(a.clone()), Box::new(b.clone()))),
        (Some(x), None) if x == 0.0 => b,
        (None, Some(y)) if y == 0.0 => a,
        _ => Expr::Add(Box::new(a), Box::new(b)),
    }
}

pub fn sub(a: Expr, b: Expr) -> Expr {
    match (lit(&a), lit(&b)) {
        (Some(x), Some(y)) => folded(x - y, || Expr::Sub(Box::new(a.clone()), Box::new(b.clone()))),
        (Some(x), None) if x == 0.0 => neg(b),
        (None, Some(y)) if y == 0.0 => a,
        _ => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

pub fn mul(a: Expr, b: Expr) -> Expr {
    match (lit(&a), lit(&b)) {
        (Some(x), Some(y)) => folded(x * y, || Expr::Mul(Box::new(a.clone()), Box::new(b.clone()))),
        (Some(x), _) | (_, Some(x)) if x == 0.0 => Expr::Lit(0.0),
        (Some(x), None) if x == 1.0 => b,
        (None, Some(y)) if y == 1.0 => a,
        (Some(x), None) if x == -1.0 => neg(b),
        (None, Some(y)) if y == -1.0 => neg(a),
        _ => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

pub fn div(a: Expr, b: Expr) -> Expr {
    match (lit(&a), lit(&b)) {
        (Some(x), Some(y)) if y != 0.0 => {
            folded(x / y, || Expr::Div(Box::new(a.clone()), Box::new(b.clone())))
        }
        (None, Some(y)) if y == 1.0 => a,
        _ => Expr::Div(Box::new(a), Box::new(b)),
    }
}

pub fn pow(a: Expr, n: i32) -> Expr {
    match (lit(&a), n) {
        (_, 0) => Expr::Lit(1.0),
        (_, 1) => a,
        (Some(x), n) if !(x == 0.0 && n < 0) => {
            folded(libm::pow(x, n as f64), || Expr::Pow(Box::new(a.clone()), n))
        }
        _ => Expr::Pow(Box::new(a), n),
    }
}

pub fn call(f: Func, a: Expr) -> Expr {
    Expr::Call(f, Box::new(a))
}

/// Prints a fully parenthesized form that [`parse`] reads back.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var => f.write_str("u"),
            Expr::Lit(c) if *c < 0.0 || (*c == 0.0 && c.is_sign_negative()) => {
                write!(f, "(-{:?})", -c)
            }
            Expr::Lit(c) => write!(f, "{c:?}"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, n) => write!(f, "pow({a}, {n})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

impl core::str::FromStr for Expr {
    type Err = crate::error::ParseError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("cosh(u)"), Expr::Call(Func::Cosh, Box::new(Expr::Var)));
        assert_eq!(
            p("u*u + 1"),
            Expr::Add(
                Box::new(Expr::Mul(Box::new(Expr::Var), Box::new(Expr::Var))),
                Box::new(Expr::Lit(1.0))
            )
        );
        let err = parse("cos(u").unwrap_err();
        assert_eq!(err.offset, 5);
        assert!(err.expected.contains(&")"));
    }

    #[test]
    fn precedence() {
        assert_eq!(p("1 + 2 * 3").eval(0.0).unwrap(), 7.0);
        assert_eq!(p("2 * 3 ^ 2").eval(0.0).unwrap(), 18.0);
        // unary minus binds tighter than ^
        assert_eq!(p("-u^2").eval(3.0).unwrap(), 9.0);
        assert_eq!(p("8 / 4 / 2").eval(0.0).unwrap(), 1.0);
        assert_eq!(p("5 - 3 - 1").eval(0.0).unwrap(), 1.0);
        assert_eq!(p("pow(u, -2)").eval(2.0).unwrap(), 0.25);
        assert!((p("2*pi").eval(0.0).unwrap() - core::f64::consts::TAU).abs() < 1e-15);
        assert_eq!(p("1.5e-1 * 2").eval(0.0).unwrap(), 0.3);
    }

    #[test]
    fn rejects_unknown_identifier() {
        let err = parse("sin(x)").unwrap_err();
        assert_eq!(err.offset, 4);
        let err = parse("tan(u)").unwrap_err();
        assert_eq!(err.offset, 0);
        assert!(parse("u u").is_err());
        assert!(parse("").is_err());
        assert!(parse("u^1.5").is_err());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("sinh(u)").eval(0.0).unwrap(), 0.0);
        assert_eq!(p("cosh(u)").eval(0.0).unwrap(), 1.0);
        assert!(matches!(p("1/u").eval(0.0), Err(Error::Domain { .. })));
        assert!(matches!(p("sqrt(u)").eval(-1.0), Err(Error::Domain { .. })));
        assert!(matches!(p("exp(u)").eval(1e4), Err(Error::Domain { .. })));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("sinh(u)").differentiate(), p("cosh(u)"));
        let d = p("u*u").differentiate();
        for i in 0..20 {
            let u = -2.0 + 0.21 * i as f64;
            assert!((d.eval(u).unwrap() - 2.0 * u).abs() < 1e-12);
        }
        assert_eq!(p("cos(u)").differentiate().eval(0.0).unwrap(), 0.0);
        let d3 = p("sin(2*u)").derivatives(3);
        assert!((d3[3].eval(0.0).unwrap() + 8.0).abs() < 1e-12);
    }

    #[test]
    fn constant_folding() {
        assert_eq!(p("3*u + 2").differentiate(), Expr::Lit(3.0));
        assert!(p("pi * 2").is_constant());
        assert_eq!(p("u^3").differentiate().differentiate().differentiate(), Expr::Lit(6.0));
    }

    /// Random expression trees that stay well-conditioned near `[-1, 1]`.
    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            Just(Expr::Var),
            (-3.0f64..3.0).prop_map(Expr::Lit),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| {
                    // denominator bounded away from zero
                    let den = Expr::Add(
                        Box::new(Expr::Lit(2.5)),
                        Box::new(Expr::Call(Func::Sin, Box::new(b))),
                    );
                    Expr::Div(Box::new(a), Box::new(den))
                }),
                (inner.clone(), 0i32..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
                inner.clone().prop_map(|a| Expr::Call(Func::Sin, Box::new(a))),
                inner.clone().prop_map(|a| Expr::Call(Func::Cos, Box::new(a))),
                inner.clone().prop_map(|a| Expr::Call(
                    Func::Sinh,
                    Box::new(Expr::Call(Func::Sin, Box::new(a)))
                )),
                inner.clone().prop_map(|a| Expr::Call(
                    Func::Cosh,
                    Box::new(Expr::Call(Func::Cos, Box::new(a)))
                )),
                inner.clone().prop_map(|a| Expr::Call(
                    Func::Exp,
                    Box::new(Expr::Call(Func::Sin, Box::new(a)))
                )),
                inner.prop_map(|a| Expr::Call(
                    Func::Sqrt,
                    Box::new(Expr::Add(
                        Box::new(Expr::Lit(1.5)),
                        Box::new(Expr::Call(Func::Cos, Box::new(a)))
                    ))
                )),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn derivative_matches_central_difference(e in arb_expr(), u in -1.0f64..1.0) {
            let h = 1e-5;
            let (Ok(fp), Ok(fm)) = (e.eval(u + h), e.eval(u - h)) else {
                return Ok(());
            };
            let fd = (fp - fm) / (2.0 * h);
            let exact = e.differentiate().eval(u).unwrap();
            // relative error against the scale of the function values
            let scale = 1.0 + exact.abs() + fp.abs() * 1e-5 / h;
            prop_assert!(
                (fd - exact).abs() <= 1e-6 * scale,
                "{e}: fd {fd} vs exact {exact}"
            );
        }

        #[test]
        fn print_parse_round_trip(e in arb_expr()) {
            let text = e.to_string();
            let back = parse(&text).unwrap();
            for i in 0..20 {
                let u = -1.0 + 0.1 * i as f64;
                match (e.eval(u), back.eval(u)) {
                    (Ok(a), Ok(b)) => prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs())),
                    (Err(_), Err(_)) => {}
                    (a, b) => prop_assert!(false, "{text}: {a:?} vs {b:?}"),
                }
            }
        }
    }
}
