//! Closed-form functions on the Heisenberg group with exact Wirtinger
//! derivatives.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::HeisenbergPoint;
use crate::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Complex64),
    /// `z^α`
    Z(usize),
    /// `z̄^α`
    ZBar(usize),
    T,
    Sum(Arc<Expr>, Arc<Expr>),
    Product(Arc<Expr>, Arc<Expr>),
    Pow(Arc<Expr>, u32),
    Exp(Arc<Expr>),
}

/// Coordinate direction of a partial derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Partial {
    Z(usize),
    ZBar(usize),
    T,
}

impl Expr {
    pub fn constant(c: f64) -> Expr {
        Expr::Const(Complex64::new(c, 0.0))
    }

    pub fn complex(c: Complex64) -> Expr {
        Expr::Const(c)
    }

    pub fn z(a: usize) -> Expr {
        Expr::Z(a)
    }

    pub fn zbar(a: usize) -> Expr {
        Expr::ZBar(a)
    }

    pub fn t() -> Expr {
        Expr::T
    }

    /// `Re z^α = (z^α + z̄^α)/2`.
    pub fn re_z(a: usize) -> Expr {
        (Expr::Z(a) + Expr::ZBar(a)) * Expr::constant(0.5)
    }

    /// `|z|² = Σ z^α z̄^α` on `H^n`.
    pub fn abs_sq(n: usize) -> Expr {
        (0..n)
            .map(|a| Expr::Z(a) * Expr::ZBar(a))
            .reduce(|x, y| x + y)
            .unwrap_or(Expr::constant(0.0))
    }

    /// `exp(−a|z|² − b t²)`.
    pub fn gaussian(n: usize, a: f64, b: f64) -> Expr {
        Expr::Exp(Arc::new(
            Expr::constant(-a) * Expr::abs_sq(n) + Expr::constant(-b) * Expr::T.powi(2),
        ))
    }

    pub fn exp(self) -> Expr {
        Expr::Exp(Arc::new(self))
    }

    pub fn powi(self, k: u32) -> Expr {
        match k {
            0 => Expr::constant(1.0),
            1 => self,
            _ => Expr::Pow(Arc::new(self), k),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if *c == Complex64::new(0.0, 0.0))
    }

    fn as_const(&self) -> Option<Complex64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn eval(&self, p: &HeisenbergPoint) -> Complex64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Z(a) => p.z[*a],
            Expr::ZBar(a) => p.z[*a].conj(),
            Expr::T => Complex64::new(p.t, 0.0),
            Expr::Sum(x, y) => x.eval(p) + y.eval(p),
            Expr::Product(x, y) => x.eval(p) * y.eval(p),
            Expr::Pow(x, k) => x.eval(p).powu(*k),
            Expr::Exp(x) => x.eval(p).exp(),
        }
    }

    /// Exact partial derivative; `∂/∂z^α` and `∂/∂z̄^α` are the Wirtinger
    /// derivatives.
    pub fn partial(&self, d: Partial) -> Expr {
        match self {
            Expr::Const(_) => Expr::constant(0.0),
            Expr::Z(a) => Expr::constant(if d == Partial::Z(*a) { 1.0 } else { 0.0 }),
            Expr::ZBar(a) => Expr::constant(if d == Partial::ZBar(*a) { 1.0 } else { 0.0 }),
            Expr::T => Expr::constant(if d == Partial::T { 1.0 } else { 0.0 }),
            Expr::Sum(x, y) => x.partial(d) + y.partial(d),
            Expr::Product(x, y) => {
                x.partial(d) * (**y).clone() + (**x).clone() * y.partial(d)
            }
            Expr::Pow(x, k) => {
                Expr::constant(*k as f64) * (**x).clone().powi(k - 1) * x.partial(d)
            }
            Expr::Exp(x) => self.clone() * x.partial(d),
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        if let (Some(a), Some(b)) = (self.as_const(), rhs.as_const()) {
            return Expr::Const(a + b);
        }
        Expr::Sum(Arc::new(self), Arc::new(rhs))
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        if self.is_zero() || rhs.is_zero() {
            return Expr::constant(0.0);
        }
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => return Expr::Const(a * b),
            (Some(a), None) if a == Complex64::new(1.0, 0.0) => return rhs,
            (None, Some(b)) if b == Complex64::new(1.0, 0.0) => return self,
            _ => {}
        }
        Expr::Product(Arc::new(self), Arc::new(rhs))
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::constant(-1.0) * self
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if c.im == 0.0 => write!(f, "{}", c.re),
            Expr::Const(c) => write!(f, "({}{:+}i)", c.re, c.im),
            Expr::Z(a) => write!(f, "z{}", a + 1),
            Expr::ZBar(a) => write!(f, "zbar{}", a + 1),
            Expr::T => write!(f, "t"),
            Expr::Sum(x, y) => write!(f, "({x} + {y})"),
            Expr::Product(x, y) => write!(f, "{x}*{y}"),
            Expr::Pow(x, k) => write!(f, "{x}^{k}"),
            Expr::Exp(x) => write!(f, "exp({x})"),
        }
    }
}
