//! Differential tests for h-holomorphy.
//!
//! A differentiable F = U + jV is h-holomorphic where the hyperbolic
//! Cauchy-Riemann system U_t = V_x, U_x = V_t holds; both components then
//! solve the wave equation U_tt - U_xx = 0. The checks here are finite
//! difference probes of those identities, plus the push-forward data
//! (derivative, conformal factor) that the grid module builds on.

use crate::algebra::DoubleNumber;
use crate::error::Result;
use crate::expr::Expr;
use crate::math;

/// Central-difference stencil order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StencilOrder {
    Second,
    Fourth,
}

/// Finite-difference configuration.
///
/// The actual step at a point is `rel_step * max(1, |t|, |x|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilSpec {
    pub rel_step: f64,
    pub order: StencilOrder,
}

impl Default for StencilSpec {
    fn default() -> Self {
        StencilSpec {
            rel_step: 1e-5,
            order: StencilOrder::Second,
        }
    }
}

impl StencilSpec {
    pub fn with_step(rel_step: f64) -> Self {
        StencilSpec {
            rel_step,
            ..Default::default()
        }
    }

    pub fn step_at(&self, h: DoubleNumber) -> f64 {
        self.rel_step * math::abs(h.t).max(math::abs(h.x)).max(1.0)
    }
}

/// Component access U = Re F, V = Im F for an expression.
#[derive(Clone, Copy)]
pub struct FieldComponents<'a> {
    f: &'a Expr,
}

impl<'a> FieldComponents<'a> {
    pub fn new(f: &'a Expr) -> Self {
        FieldComponents { f }
    }

    pub fn u(&self, t: f64, x: f64) -> Result<f64> {
        Ok(self.f.eval(DoubleNumber::new(t, x))?.t)
    }

    pub fn v(&self, t: f64, x: f64) -> Result<f64> {
        Ok(self.f.eval(DoubleNumber::new(t, x))?.x)
    }
}

fn central<G: Fn(f64) -> Result<f64>>(g: G, c: f64, s: f64, order: StencilOrder) -> Result<f64> {
    match order {
        StencilOrder::Second => Ok((g(c + s)? - g(c - s)?) / (2.0 * s)),
        StencilOrder::Fourth => Ok(
            (-g(c + 2.0 * s)? + 8.0 * g(c + s)? - 8.0 * g(c - s)? + g(c - 2.0 * s)?) / (12.0 * s),
        ),
    }
}

fn second_diff<G: Fn(f64) -> Result<f64>>(g: G, c: f64, s: f64) -> Result<f64> {
    Ok((g(c + s)? - 2.0 * g(c)? + g(c - s)?) / (s * s))
}

/// F'(h) as the t-directional derivative of the full value.
///
/// For h-holomorphic F the t-direction is representative: the derivative is
/// direction-independent off the cone.
pub fn derivative(f: &Expr, h: DoubleNumber, spec: &StencilSpec) -> Result<DoubleNumber> {
    let s = spec.step_at(h);
    match spec.order {
        StencilOrder::Second => {
            let p = f.eval(DoubleNumber::new(h.t + s, h.x))?;
            let m = f.eval(DoubleNumber::new(h.t - s, h.x))?;
            Ok((p - m).scale(1.0 / (2.0 * s)))
        }
        StencilOrder::Fourth => {
            let p2 = f.eval(DoubleNumber::new(h.t + 2.0 * s, h.x))?;
            let p1 = f.eval(DoubleNumber::new(h.t + s, h.x))?;
            let m1 = f.eval(DoubleNumber::new(h.t - s, h.x))?;
            let m2 = f.eval(DoubleNumber::new(h.t - 2.0 * s, h.x))?;
            Ok((-p2 + p1.scale(8.0) - m1.scale(8.0) + m2).scale(1.0 / (12.0 * s)))
        }
    }
}

/// Residuals (U_t - V_x, U_x - V_t) of the hyperbolic Cauchy-Riemann system.
pub fn cr_residual(f: &Expr, h: DoubleNumber, spec: &StencilSpec) -> Result<(f64, f64)> {
    let fc = FieldComponents::new(f);
    let s = spec.step_at(h);
    let u_t = central(|t| fc.u(t, h.x), h.t, s, spec.order)?;
    let u_x = central(|x| fc.u(h.t, x), h.x, s, spec.order)?;
    let v_t = central(|t| fc.v(t, h.x), h.t, s, spec.order)?;
    let v_x = central(|x| fc.v(h.t, x), h.x, s, spec.order)?;
    Ok((u_t - v_x, u_x - v_t))
}

/// Cauchy-Riemann residuals in hyperbolic polar coordinates:
/// (U_rho - V_psi / rho, V_rho - U_psi / rho). Needs h off the cone.
pub fn polar_cr_residual(f: &Expr, h: DoubleNumber, spec: &StencilSpec) -> Result<(f64, f64)> {
    let p = h.to_polar()?;
    let at = |rho: f64, psi: f64| -> Result<DoubleNumber> {
        f.eval(DoubleNumber::from_polar(p.region, rho, psi)?)
    };
    let s_rho = spec.rel_step * p.rho.max(1.0);
    let s_psi = spec.rel_step * math::abs(p.psi).max(1.0);
    let u_rho = central(|r| Ok(at(r, p.psi)?.t), p.rho, s_rho, spec.order)?;
    let v_rho = central(|r| Ok(at(r, p.psi)?.x), p.rho, s_rho, spec.order)?;
    let u_psi = central(|q| Ok(at(p.rho, q)?.t), p.psi, s_psi, spec.order)?;
    let v_psi = central(|q| Ok(at(p.rho, q)?.x), p.psi, s_psi, spec.order)?;
    Ok((u_rho - v_psi / p.rho, v_rho - u_psi / p.rho))
}

/// Wave-operator residuals (U_tt - U_xx, V_tt - V_xx) by five-point stencil.
pub fn box_residual(f: &Expr, h: DoubleNumber, spec: &StencilSpec) -> Result<(f64, f64)> {
    let fc = FieldComponents::new(f);
    let s = spec.step_at(h);
    let u = second_diff(|t| fc.u(t, h.x), h.t, s)? - second_diff(|x| fc.u(h.t, x), h.x, s)?;
    let v = second_diff(|t| fc.v(t, h.x), h.t, s)? - second_diff(|x| fc.v(h.t, x), h.x, s)?;
    Ok((u, v))
}

/// The signed conformal factor Re(F')^2 - Im(F')^2 = |F'(h)|^2 with sign.
///
/// Push-forward by F scales hyperbolic lengths by sqrt(|factor|); the sign
/// records whether F' is timelike or spacelike. Zero (within fp) means the
/// map crushes directions at h.
pub fn conformal_factor(f: &Expr, h: DoubleNumber, spec: &StencilSpec) -> Result<f64> {
    Ok(derivative(f, h, spec)?.norm())
}

/// U_t V_t - U_x V_x, the hyperbolic inner product of the component
/// gradients; vanishes wherever F is h-holomorphic.
pub fn gradient_orthogonality(f: &Expr, h: DoubleNumber, spec: &StencilSpec) -> Result<f64> {
    let fc = FieldComponents::new(f);
    let s = spec.step_at(h);
    let u_t = central(|t| fc.u(t, h.x), h.t, s, spec.order)?;
    let u_x = central(|x| fc.u(h.t, x), h.x, s, spec.order)?;
    let v_t = central(|t| fc.v(t, h.x), h.t, s, spec.order)?;
    let v_x = central(|x| fc.v(h.t, x), h.x, s, spec.order)?;
    Ok(u_t * v_t - u_x * v_x)
}

/// For the conjugate field w = (U, -V): returns
/// (rot w, div w) = (U_x - V_t, U_t - V_x). Both vanish exactly where F is
/// h-holomorphic, making w a curl-free, source-free flow.
pub fn divrot_residual(f: &Expr, h: DoubleNumber, spec: &StencilSpec) -> Result<(f64, f64)> {
    let (d, r) = cr_residual(f, h, spec)?;
    Ok((r, d))
}

/// Line integral of dV = U_x dt + U_t dx along the straight segment from
/// `from` to `to` (midpoint rule, `panels` panels): recovers the increment
/// of the conjugate component V from U alone when F = U + jV is
/// h-holomorphic.
pub fn harmonic_conjugate_increment(
    f: &Expr,
    from: DoubleNumber,
    to: DoubleNumber,
    panels: usize,
    spec: &StencilSpec,
) -> Result<f64> {
    let fc = FieldComponents::new(f);
    let n = panels.max(1);
    let step = (to - from).scale(1.0 / n as f64);
    let mut acc = 0.0;
    let mut comp = 0.0;
    for k in 0..n {
        let p = from + step.scale(k as f64 + 0.5);
        let s = spec.step_at(p);
        let u_t = central(|t| fc.u(t, p.x), p.t, s, spec.order)?;
        let u_x = central(|x| fc.u(p.t, x), p.x, s, spec.order)?;
        let term = u_x * step.t + u_t * step.x;
        // Kahan update keeps the sum deterministic and tight
        let y = term - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    Ok(acc)
}
