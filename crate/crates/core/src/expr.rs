//! Symbolic expressions in one double variable, with a registry of the
//! built-in functions and their real restrictions.

use alloc::boxed::Box;

use crate::algebra::DoubleNumber;
use crate::elementary;
use crate::error::{Error, Result};
use crate::math;

/// A named analytic building block.
///
/// Each builtin acts on the plane through [`Builtin::apply`] and restricts
/// to a classical real function on the t-axis, exposed as
/// [`Builtin::profile`] together with its exact derivative. The profile is
/// what the componentwise null-coordinate oracle extends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    Cot,
    Sinh,
    Cosh,
    Tanh,
    Coth,
    Arcsin,
    Arccos,
    Arctan,
    Arccot,
    Arsinh,
    Arcosh,
    Artanh,
    Arcoth,
    PowInt(i32),
    PowReal(f64),
    Root { n: u32, branch: u32 },
    Zhukowskiy,
}

impl Builtin {
    pub fn apply(self, h: DoubleNumber) -> Result<DoubleNumber> {
        match self {
            Builtin::Exp => elementary::exp(h),
            Builtin::Log => elementary::log(h),
            Builtin::Sin => elementary::sin(h),
            Builtin::Cos => elementary::cos(h),
            Builtin::Tan => elementary::tan(h),
            Builtin::Cot => elementary::cot(h),
            Builtin::Sinh => elementary::sinh(h),
            Builtin::Cosh => elementary::cosh(h),
            Builtin::Tanh => elementary::tanh(h),
            Builtin::Coth => elementary::coth(h),
            Builtin::Arcsin => elementary::arcsin(h),
            Builtin::Arccos => elementary::arccos(h),
            Builtin::Arctan => elementary::arctan(h),
            Builtin::Arccot => elementary::arccot(h),
            Builtin::Arsinh => elementary::arsinh(h),
            Builtin::Arcosh => elementary::arcosh(h),
            Builtin::Artanh => elementary::artanh(h),
            Builtin::Arcoth => elementary::arcoth(h),
            Builtin::PowInt(k) => elementary::pow_int(h, k),
            Builtin::PowReal(alpha) => elementary::pow_real(h, alpha),
            Builtin::Root { n, branch } => elementary::root(h, n, branch),
            Builtin::Zhukowskiy => elementary::zhukowskiy(h),
        }
    }

    /// The real restriction f(y) = apply(y + 0j).t; NaN outside its domain
    /// or on branches that leave the real axis.
    pub fn profile(self, y: f64) -> f64 {
        match self {
            Builtin::Exp => math::exp(y),
            Builtin::Log => {
                if y > 0.0 {
                    math::ln(y)
                } else {
                    f64::NAN
                }
            }
            Builtin::Sin => math::sin(y),
            Builtin::Cos => math::cos(y),
            Builtin::Tan => math::tan(y),
            Builtin::Cot => math::cos(y) / math::sin(y),
            Builtin::Sinh => math::sinh(y),
            Builtin::Cosh => math::cosh(y),
            Builtin::Tanh => math::tanh(y),
            Builtin::Coth => 1.0 / math::tanh(y),
            Builtin::Arcsin => math::asin(y),
            Builtin::Arccos => math::acos(y),
            Builtin::Arctan => math::atan(y),
            Builtin::Arccot => core::f64::consts::FRAC_PI_2 - math::atan(y),
            Builtin::Arsinh => math::asinh(y),
            Builtin::Arcosh => math::acosh(y),
            Builtin::Artanh => math::atanh(y),
            Builtin::Arcoth => math::atanh(1.0 / y),
            Builtin::PowInt(k) => math::powf(y, k as f64),
            Builtin::PowReal(alpha) => math::powf(y, alpha),
            Builtin::Root { n, branch } => {
                if branch != 0 {
                    return f64::NAN;
                }
                let inv_n = 1.0 / n as f64;
                if n % 2 == 0 {
                    math::powf(y, inv_n)
                } else {
                    math::copysign(math::powf(math::abs(y), inv_n), y)
                }
            }
            Builtin::Zhukowskiy => 0.5 * (y + 1.0 / y),
        }
    }

    /// Analytic derivative of [`profile`](Self::profile).
    pub fn profile_derivative(self, y: f64) -> f64 {
        match self {
            Builtin::Exp => math::exp(y),
            Builtin::Log => 1.0 / y,
            Builtin::Sin => math::cos(y),
            Builtin::Cos => -math::sin(y),
            Builtin::Tan => {
                let c = math::cos(y);
                1.0 / (c * c)
            }
            Builtin::Cot => {
                let s = math::sin(y);
                -1.0 / (s * s)
            }
            Builtin::Sinh => math::cosh(y),
            Builtin::Cosh => math::sinh(y),
            Builtin::Tanh => {
                let c = math::cosh(y);
                1.0 / (c * c)
            }
            Builtin::Coth => {
                let s = math::sinh(y);
                -1.0 / (s * s)
            }
            Builtin::Arcsin => 1.0 / math::sqrt(1.0 - y * y),
            Builtin::Arccos => -1.0 / math::sqrt(1.0 - y * y),
            Builtin::Arctan => 1.0 / (1.0 + y * y),
            Builtin::Arccot => -1.0 / (1.0 + y * y),
            Builtin::Arsinh => 1.0 / math::sqrt(1.0 + y * y),
            Builtin::Arcosh => 1.0 / math::sqrt(y * y - 1.0),
            Builtin::Artanh => 1.0 / (1.0 - y * y),
            Builtin::Arcoth => 1.0 / (1.0 - y * y),
            Builtin::PowInt(k) => k as f64 * math::powf(y, k as f64 - 1.0),
            Builtin::PowReal(alpha) => alpha * math::powf(y, alpha - 1.0),
            Builtin::Root { n, .. } => self.profile(y) / (n as f64 * y),
            Builtin::Zhukowskiy => 0.5 * (1.0 - 1.0 / (y * y)),
        }
    }

    /// Base name without parameters, as accepted by [`Builtin::by_name`]
    /// where applicable.
    pub fn name(self) -> &'static str {
        match self {
            Builtin::Exp => "exp",
            Builtin::Log => "log",
            Builtin::Sin => "sin",
            Builtin::Cos => "cos",
            Builtin::Tan => "tan",
            Builtin::Cot => "cot",
            Builtin::Sinh => "sinh",
            Builtin::Cosh => "cosh",
            Builtin::Tanh => "tanh",
            Builtin::Coth => "coth",
            Builtin::Arcsin => "arcsin",
            Builtin::Arccos => "arccos",
            Builtin::Arctan => "arctan",
            Builtin::Arccot => "arccot",
            Builtin::Arsinh => "arsinh",
            Builtin::Arcosh => "arcosh",
            Builtin::Artanh => "artanh",
            Builtin::Arcoth => "arcoth",
            Builtin::PowInt(_) => "pow_int",
            Builtin::PowReal(_) => "pow_real",
            Builtin::Root { .. } => "root",
            Builtin::Zhukowskiy => "zhukowskiy",
        }
    }

    /// Looks up a fixed (parameter-free) builtin; `sqrt` and `cbrt` resolve
    /// to the principal square and cube roots.
    pub fn by_name(name: &str) -> Option<Builtin> {
        Some(match name {
            "exp" => Builtin::Exp,
            "log" | "ln" => Builtin::Log,
            "sin" => Builtin::Sin,
            "cos" => Builtin::Cos,
            "tan" => Builtin::Tan,
            "cot" => Builtin::Cot,
            "sinh" => Builtin::Sinh,
            "cosh" => Builtin::Cosh,
            "tanh" => Builtin::Tanh,
            "coth" => Builtin::Coth,
            "arcsin" | "asin" => Builtin::Arcsin,
            "arccos" | "acos" => Builtin::Arccos,
            "arctan" | "atan" => Builtin::Arctan,
            "arccot" | "acot" => Builtin::Arccot,
            "arsinh" | "asinh" => Builtin::Arsinh,
            "arcosh" | "acosh" => Builtin::Arcosh,
            "artanh" | "atanh" => Builtin::Artanh,
            "arcoth" | "acoth" => Builtin::Arcoth,
            "sqrt" => Builtin::Root { n: 2, branch: 0 },
            "cbrt" => Builtin::Root { n: 3, branch: 0 },
            "zhukowskiy" => Builtin::Zhukowskiy,
            _ => return None,
        })
    }

    /// All parameter-free builtins, in registry order.
    pub const NAMED: [Builtin; 19] = [
        Builtin::Exp,
        Builtin::Log,
        Builtin::Sin,
        Builtin::Cos,
        Builtin::Tan,
        Builtin::Cot,
        Builtin::Sinh,
        Builtin::Cosh,
        Builtin::Tanh,
        Builtin::Coth,
        Builtin::Arcsin,
        Builtin::Arccos,
        Builtin::Arctan,
        Builtin::Arccot,
        Builtin::Arsinh,
        Builtin::Arcosh,
        Builtin::Artanh,
        Builtin::Arcoth,
        Builtin::Zhukowskiy,
    ];
}

/// An expression tree over one variable `h`.
///
/// Evaluation checks finiteness at every node and reports
/// [`Error::Overflow`] instead of letting NaN or infinity propagate.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var,
    Const(DoubleNumber),
    Apply(Builtin, Box<Expr>),
    Conj(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Compose(f, g) is h -> f(g(h)).
    Compose(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn constant(c: DoubleNumber) -> Expr {
        Expr::Const(c)
    }

    pub fn real(t: f64) -> Expr {
        Expr::Const(DoubleNumber::from_real(t))
    }

    pub fn apply(b: Builtin, inner: Expr) -> Expr {
        Expr::Apply(b, Box::new(inner))
    }

    pub fn conj(inner: Expr) -> Expr {
        Expr::Conj(Box::new(inner))
    }

    pub fn neg(inner: Expr) -> Expr {
        Expr::Neg(Box::new(inner))
    }

    pub fn add(l: Expr, r: Expr) -> Expr {
        Expr::Add(Box::new(l), Box::new(r))
    }

    pub fn sub(l: Expr, r: Expr) -> Expr {
        Expr::Sub(Box::new(l), Box::new(r))
    }

    pub fn mul(l: Expr, r: Expr) -> Expr {
        Expr::Mul(Box::new(l), Box::new(r))
    }

    pub fn div(l: Expr, r: Expr) -> Expr {
        Expr::Div(Box::new(l), Box::new(r))
    }

    pub fn compose(outer: Expr, inner: Expr) -> Expr {
        Expr::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn eval(&self, h: DoubleNumber) -> Result<DoubleNumber> {
        let v = match self {
            Expr::Var => h,
            Expr::Const(c) => *c,
            Expr::Apply(b, e) => b.apply(e.eval(h)?)?,
            Expr::Conj(e) => e.eval(h)?.conj(),
            Expr::Neg(e) => -e.eval(h)?,
            Expr::Add(l, r) => l.eval(h)? + r.eval(h)?,
            Expr::Sub(l, r) => l.eval(h)? - r.eval(h)?,
            Expr::Mul(l, r) => l.eval(h)? * r.eval(h)?,
            Expr::Div(l, r) => l.eval(h)?.checked_div(r.eval(h)?)?,
            Expr::Compose(f, g) => f.eval(g.eval(h)?)?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_arithmetic() {
        let h2 = Expr::mul(Expr::Var, Expr::Var);
        let v = h2.eval(DoubleNumber::new(2.0, 1.0)).unwrap();
        assert_eq!(v, DoubleNumber::new(5.0, 4.0));
    }

    #[test]
    fn eval_propagates_domain_errors() {
        let f = Expr::apply(Builtin::Log, Expr::Var);
        assert!(matches!(
            f.eval(DoubleNumber::new(-2.0, 0.0)),
            Err(Error::Domain(_))
        ));
        let g = Expr::div(Expr::real(1.0), Expr::Var);
        assert_eq!(g.eval(DoubleNumber::new(1.0, 1.0)), Err(Error::ZeroDivisor));
    }

    #[test]
    fn compose_substitutes() {
        let f = Expr::apply(Builtin::Exp, Expr::Var);
        let g = Expr::mul(Expr::real(2.0), Expr::Var);
        let fg = Expr::compose(f, g);
        let got = fg.eval(DoubleNumber::new(0.3, 0.1)).unwrap();
        let want = crate::elementary::exp(DoubleNumber::new(0.6, 0.2)).unwrap();
        assert!((got - want).euclid() < 1e-15);
    }

    #[test]
    fn overflow_is_reported_not_propagated() {
        // cosh(1e6) overflows f64
        let f = Expr::apply(Builtin::Cosh, Expr::Var);
        assert_eq!(f.eval(DoubleNumber::new(1e6, 0.0)), Err(Error::Overflow));
    }

    #[test]
    fn profiles_match_apply_on_the_real_axis() {
        let pts: &[(Builtin, f64)] = &[
            (Builtin::Exp, 0.7),
            (Builtin::Log, 2.1),
            (Builtin::Sin, 1.2),
            (Builtin::Cos, 1.2),
            (Builtin::Tan, 0.4),
            (Builtin::Cot, 0.9),
            (Builtin::Sinh, 0.8),
            (Builtin::Cosh, 0.8),
            (Builtin::Tanh, 0.8),
            (Builtin::Coth, 1.3),
            (Builtin::Arcsin, 0.4),
            (Builtin::Arccos, 0.4),
            (Builtin::Arctan, 2.0),
            (Builtin::Arccot, 2.0),
            (Builtin::Arsinh, 3.0),
            (Builtin::Arcosh, 2.5),
            (Builtin::Artanh, 0.6),
            (Builtin::Arcoth, 1.7),
            (Builtin::PowInt(3), 1.4),
            (Builtin::PowReal(0.7), 2.2),
            (Builtin::Root { n: 2, branch: 0 }, 5.0),
            (Builtin::Root { n: 3, branch: 0 }, -5.0),
            (Builtin::Zhukowskiy, 2.0),
        ];
        for &(b, y) in pts {
            let on_axis = b.apply(DoubleNumber::from_real(y)).unwrap();
            assert!(
                (on_axis.t - b.profile(y)).abs() <= 1e-12 * (1.0 + b.profile(y).abs()),
                "{b:?} at {y}: {} vs {}",
                on_axis.t,
                b.profile(y)
            );
            assert!(on_axis.x.abs() <= 1e-12, "{b:?} at {y} left the axis");
        }
    }

    #[test]
    fn profile_derivatives_match_finite_differences() {
        let pts: &[(Builtin, f64)] = &[
            (Builtin::Exp, 0.7),
            (Builtin::Log, 2.1),
            (Builtin::Tan, 0.4),
            (Builtin::Arcsin, 0.4),
            (Builtin::Arcosh, 2.5),
            (Builtin::PowInt(-2), 1.4),
            (Builtin::PowReal(1.7), 2.2),
            (Builtin::Root { n: 3, branch: 0 }, -5.0),
            (Builtin::Zhukowskiy, 2.0),
        ];
        for &(b, y) in pts {
            let s = 1e-6;
            let fd = (b.profile(y + s) - b.profile(y - s)) / (2.0 * s);
            let an = b.profile_derivative(y);
            assert!(
                (fd - an).abs() <= 1e-6 * (1.0 + an.abs()),
                "{b:?} at {y}: fd {fd} vs analytic {an}"
            );
        }
    }

    #[test]
    fn registry_has_at_least_twenty_entries() {
        // 19 named + pow_int + pow_real + root parameter families
        let total = Builtin::NAMED.len() + 3;
        assert!(total >= 20);
        for b in Builtin::NAMED {
            assert_eq!(Builtin::by_name(b.name()), Some(b));
        }
        assert_eq!(
            Builtin::by_name("sqrt"),
            Some(Builtin::Root { n: 2, branch: 0 })
        );
        assert_eq!(Builtin::by_name("nope"), None);
    }
}
