//! Boundary-value solutions of the one-dimensional wave equation built
//! from double-analytic functions.
//!
//! The real part of any double-differentiable F solves phi_tt - phi_xx = 0,
//! the same way harmonic functions arise from complex-analytic ones. The
//! model problem here is the log solution: constant boundary data on a
//! pseudo-circle t^2 - x^2 = R^2, with phi growing logarithmically in the
//! polar radius.

use crate::algebra::DoubleNumber;
use crate::error::{Error, Result};
use crate::expr::{Builtin, Expr};
use crate::holomorphy::{box_residual, StencilSpec};
use crate::math;

/// phi(t, x) = phi0 + ln((t^2 - x^2) / R^2), the real part of
/// phi0 + 2 log(h / R).
///
/// Defined on both timelike wedges t^2 > x^2. Takes the constant value
/// phi0 on the pseudo-circle of radius R and grows as twice the log of the
/// polar radius: phi = phi0 + 2 ln(rho / R).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogCircleSolution {
    pub radius: f64,
    pub phi0: f64,
}

impl LogCircleSolution {
    pub fn new(radius: f64, phi0: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !phi0.is_finite() {
            return Err(Error::Domain("radius must be positive and finite"));
        }
        Ok(LogCircleSolution { radius, phi0 })
    }

    /// Pointwise value. Evaluated through the null factors t+x and t-x,
    /// which stay accurate near the cone where t^2 - x^2 cancels.
    pub fn phi(&self, t: f64, x: f64) -> Result<f64> {
        let (a, b) = (t + x, t - x);
        if !(a * b > 0.0) {
            return Err(Error::Domain("wave log solution needs t^2 > x^2"));
        }
        Ok(self.phi0 + math::ln(math::abs(a)) + math::ln(math::abs(b))
            - 2.0 * math::ln(self.radius))
    }

    /// The generating function phi0 + 2 log(h / R) as an expression tree.
    /// The logarithm node restricts evaluation to the right wedge; use
    /// [`LogCircleSolution::phi`] for the left one.
    pub fn expr(&self) -> Expr {
        Expr::add(
            Expr::real(self.phi0),
            Expr::mul(
                Expr::real(2.0),
                Expr::apply(Builtin::Log, Expr::div(Expr::var(), Expr::real(self.radius))),
            ),
        )
    }
}

/// What [`verify_solution`] measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyReport {
    /// max |phi - phi0| over the boundary samples
    pub boundary_max_dev: f64,
    /// max |phi_tt - phi_xx| over the interior probe grid
    pub interior_max_box_residual: f64,
    /// interior points that were actually probed
    pub interior_points: usize,
    pub pass: bool,
}

/// Checks the boundary condition and the wave equation by sampling.
///
/// Boundary: `boundary_samples` points (R cosh s, R sinh s) with s uniform
/// on [-3, 3]. Larger |s| is pointless in doubles: the inputs t, x agree to
/// within eps * cosh^2 s of each other and the boundary value drowns in
/// rounding before s reaches 4.
///
/// Interior: a 16 x 16 polar grid, radius in [1.2 R, 3 R] and angle in
/// [-2, 2], probed with the five-point box stencil on the expression tree.
pub fn verify_solution(
    sol: &LogCircleSolution,
    boundary_samples: usize,
    tol_boundary: f64,
    tol_box: f64,
    spec: &StencilSpec,
) -> Result<VerifyReport> {
    if boundary_samples < 2 {
        return Err(Error::Domain("need at least two boundary samples"));
    }
    let mut boundary_max_dev: f64 = 0.0;
    for k in 0..boundary_samples {
        let s = -3.0 + 6.0 * k as f64 / (boundary_samples - 1) as f64;
        let t = sol.radius * math::cosh(s);
        let x = sol.radius * math::sinh(s);
        boundary_max_dev = boundary_max_dev.max(math::abs(sol.phi(t, x)? - sol.phi0));
    }

    let f = sol.expr();
    let mut interior_max: f64 = 0.0;
    let mut interior_points = 0usize;
    for i in 0..16 {
        let rho = sol.radius * (1.2 + 1.8 * i as f64 / 15.0);
        for jj in 0..16 {
            let psi = -2.0 + 4.0 * jj as f64 / 15.0;
            let h = DoubleNumber::new(rho * math::cosh(psi), rho * math::sinh(psi));
            // skip probes whose stencil pokes out of the wedge
            if let Ok((box_u, _)) = box_residual(&f, h, spec) {
                interior_max = interior_max.max(math::abs(box_u));
                interior_points += 1;
            }
        }
    }
    if interior_points == 0 {
        return Err(Error::Domain("no interior point admitted the stencil"));
    }

    Ok(VerifyReport {
        boundary_max_dev,
        interior_max_box_residual: interior_max,
        interior_points,
        pass: boundary_max_dev <= tol_boundary && interior_max <= tol_box,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_on_its_pseudo_circle() {
        let sol = LogCircleSolution::new(1.0, 1.0).unwrap();
        for k in 0..=60 {
            let s = -3.0 + 0.1 * k as f64;
            let v = sol.phi(1.0f64 * s.cosh(), 1.0f64 * s.sinh()).unwrap();
            assert!((v - 1.0).abs() < 1e-12, "s {s}: {v}");
        }
    }

    #[test]
    fn axis_slice_is_two_log_t() {
        let sol = LogCircleSolution::new(1.0, 1.0).unwrap();
        for t in [1.0, 2.0, 3.0, 4.0] {
            let v = sol.phi(t, 0.0).unwrap();
            assert!((v - (1.0 + 2.0 * t.ln())).abs() < 1e-14);
        }
    }

    #[test]
    fn scaling_shifts_by_two_log_lambda() {
        let sol = LogCircleSolution::new(1.0, 0.25).unwrap();
        let (t, x) = (1.7, 0.4);
        let base = sol.phi(t, x).unwrap();
        for lam in [0.5, 2.0, 10.0] {
            let v = sol.phi(lam * t, lam * x).unwrap();
            assert!((v - base - 2.0 * lam.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_spacelike_and_cone_points() {
        let sol = LogCircleSolution::new(1.0, 0.0).unwrap();
        assert!(matches!(sol.phi(0.5, 1.0), Err(Error::Domain(_))));
        assert!(matches!(sol.phi(1.0, 1.0), Err(Error::Domain(_))));
        // the left wedge works and is even in t
        let v = sol.phi(-2.0, 0.0).unwrap();
        assert!((v - 2.0 * 2.0f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn expression_tree_matches_pointwise_values() {
        let sol = LogCircleSolution::new(2.0, -0.5).unwrap();
        let f = sol.expr();
        for (t, x) in [(2.5, 0.0), (3.0, 1.0), (2.2, -0.9), (10.0, 4.0)] {
            let w = f.eval(DoubleNumber::new(t, x)).unwrap();
            let v = sol.phi(t, x).unwrap();
            assert!((w.t - v).abs() < 1e-12, "({t},{x}): {} vs {v}", w.t);
        }
    }

    #[test]
    fn verification_passes_for_the_true_solution() {
        let sol = LogCircleSolution::new(1.0, 1.0).unwrap();
        let spec = StencilSpec::with_step(1e-3);
        let rep = verify_solution(&sol, 1000, 1e-12, 1e-6, &spec).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.boundary_max_dev < 1e-12, "{rep:?}");
        assert!(rep.interior_max_box_residual < 1e-6, "{rep:?}");
        assert_eq!(rep.interior_points, 256);
    }

    #[test]
    fn pass_flag_respects_tolerances() {
        let sol = LogCircleSolution::new(1.0, 1.0).unwrap();
        let spec = StencilSpec::with_step(1e-3);
        let rep = verify_solution(&sol, 100, 0.0, 0.0, &spec).unwrap();
        assert!(!rep.pass);
    }
}
