//! Elementary functions extended to the double plane.
//!
//! Every function here equals the componentwise action of its real profile
//! on the null coordinates (a, b) = (t + x, t - x) wherever both exist:
//! f(h) = from_null(f(a), f(b)). The implementations below use coordinate
//! formulas chosen to avoid the cancellation that the naive componentwise
//! route suffers near the cone (where a and b are nearly equal), and they
//! fail loudly (never NaN) outside the componentwise domain.

use core::f64::consts::{FRAC_PI_2, PI};

use crate::algebra::{DoubleNumber, Region};
use crate::error::{Error, Result};
use crate::math;

/// ln(f64::MAX): the coordinate formula for exp overflows past this.
const LN_MAX: f64 = 709.782712893384;

/// Past this component size the double-angle forms of tanh/coth overflow;
/// the componentwise route saturates cleanly instead.
const SATURATION: f64 = 350.0;

fn finite(h: DoubleNumber) -> Result<DoubleNumber> {
    if h.is_finite() {
        Ok(h)
    } else {
        Err(Error::Overflow)
    }
}

#[inline]
fn clamp_unit(v: f64) -> f64 {
    v.clamp(-1.0, 1.0)
}

/// e^h = e^t (cosh x + j sinh x).
///
/// Errors with [`Error::Overflow`] once |t| + |x| reaches ln(f64::MAX):
/// beyond that either a component overflows or the value collapses onto the
/// cone by underflow, losing invertibility silently.
pub fn exp(h: DoubleNumber) -> Result<DoubleNumber> {
    if math::abs(h.t) + math::abs(h.x) >= LN_MAX {
        return Err(Error::Overflow);
    }
    let et = math::exp(h.t);
    Ok(DoubleNumber::new(et * math::cosh(h.x), et * math::sinh(h.x)))
}

/// ln h = ln rho + j psi, defined on the right wedge t > |x| only; the other
/// sectors contain no point of the form e^w.
pub fn log(h: DoubleNumber) -> Result<DoubleNumber> {
    let (a, b) = h.null();
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain("logarithm needs the right wedge t > |x|"));
    }
    Ok(DoubleNumber::from_null(math::ln(a), math::ln(b)))
}

pub fn sin(h: DoubleNumber) -> Result<DoubleNumber> {
    Ok(DoubleNumber::new(
        math::sin(h.t) * math::cos(h.x),
        math::cos(h.t) * math::sin(h.x),
    ))
}

pub fn cos(h: DoubleNumber) -> Result<DoubleNumber> {
    Ok(DoubleNumber::new(
        math::cos(h.t) * math::cos(h.x),
        -math::sin(h.t) * math::sin(h.x),
    ))
}

pub fn sinh(h: DoubleNumber) -> Result<DoubleNumber> {
    finite(DoubleNumber::new(
        math::sinh(h.t) * math::cosh(h.x),
        math::cosh(h.t) * math::sinh(h.x),
    ))
}

pub fn cosh(h: DoubleNumber) -> Result<DoubleNumber> {
    finite(DoubleNumber::new(
        math::cosh(h.t) * math::cosh(h.x),
        math::sinh(h.t) * math::sinh(h.x),
    ))
}

/// tan h = (sin 2t + j sin 2x) / (cos 2t + cos 2x).
///
/// The denominator equals 2 cos(a) cos(b), so it vanishes exactly on the
/// pole set of the componentwise tangent.
pub fn tan(h: DoubleNumber) -> Result<DoubleNumber> {
    let (a, b) = h.null();
    let den = 2.0 * math::cos(a) * math::cos(b);
    if den == 0.0 {
        return Err(Error::Pole("tangent pole: cos vanishes in a null coordinate"));
    }
    finite(DoubleNumber::new(
        math::sin(2.0 * h.t) / den,
        math::sin(2.0 * h.x) / den,
    ))
}

/// cot h = (sin 2t - j sin 2x) / (cos 2x - cos 2t); denominator 2 sin(a) sin(b).
pub fn cot(h: DoubleNumber) -> Result<DoubleNumber> {
    let (a, b) = h.null();
    let den = 2.0 * math::sin(a) * math::sin(b);
    if den == 0.0 {
        return Err(Error::Pole("cotangent pole: sin vanishes in a null coordinate"));
    }
    finite(DoubleNumber::new(
        math::sin(2.0 * h.t) / den,
        -math::sin(2.0 * h.x) / den,
    ))
}

/// tanh h = (sinh 2t + j sinh 2x) / (cosh 2t + cosh 2x). Entire on the double
/// plane; for large components the componentwise form is used, where tanh
/// saturates instead of overflowing.
pub fn tanh(h: DoubleNumber) -> Result<DoubleNumber> {
    if math::abs(h.t) > SATURATION || math::abs(h.x) > SATURATION {
        return Ok(h.map_null(math::tanh));
    }
    let den = math::cosh(2.0 * h.t) + math::cosh(2.0 * h.x);
    Ok(DoubleNumber::new(
        math::sinh(2.0 * h.t) / den,
        math::sinh(2.0 * h.x) / den,
    ))
}

/// coth h = (sinh 2t - j sinh 2x) / (cosh 2t - cosh 2x); denominator
/// 2 sinh(a) sinh(b), so the pole set is exactly the null cone.
pub fn coth(h: DoubleNumber) -> Result<DoubleNumber> {
    if h.is_zero_divisor() {
        return Err(Error::Pole("coth has its poles on the null cone"));
    }
    if math::abs(h.t) > SATURATION || math::abs(h.x) > SATURATION {
        return finite(h.map_null(|y| 1.0 / math::tanh(y)));
    }
    let den = math::cosh(2.0 * h.t) - math::cosh(2.0 * h.x);
    if den == 0.0 {
        // subnormal null coordinates can slip past the exact cone test
        return Err(Error::Pole("coth has its poles on the null cone"));
    }
    finite(DoubleNumber::new(
        math::sinh(2.0 * h.t) / den,
        -math::sinh(2.0 * h.x) / den,
    ))
}

/// Componentwise asin(a), asin(b) recombined without cancellation.
///
/// Needs |a| <= 1 and |b| <= 1. The single-asin closed form is only valid
/// on a^2 + b^2 <= 1; outside, the standard arcsine-addition corrections
/// sign(a) pi - asin(...) apply.
pub fn arcsin(h: DoubleNumber) -> Result<DoubleNumber> {
    let (a, b) = h.null();
    if !(math::abs(a) <= 1.0 && math::abs(b) <= 1.0) {
        return Err(Error::Domain("arcsin needs |t+x| <= 1 and |t-x| <= 1"));
    }
    let ra = math::sqrt(((1.0 - a) * (1.0 + a)).max(0.0));
    let rb = math::sqrt(((1.0 - b) * (1.0 + b)).max(0.0));
    let s = clamp_unit(a * rb + b * ra);
    let d = clamp_unit(a * rb - b * ra);
    let outside = a * a + b * b > 1.0;
    let sum = if a * b > 0.0 && outside {
        math::copysign(PI, a) - math::asin(s)
    } else {
        math::asin(s)
    };
    let diff = if a * b < 0.0 && outside {
        math::copysign(PI, a) - math::asin(d)
    } else {
        math::asin(d)
    };
    Ok(DoubleNumber::new(0.5 * sum, 0.5 * diff))
}

/// Componentwise acos. Needs |a| <= 1 and |b| <= 1; the sum branch folds at
/// a + b = 0 and the difference carries the sign of b - a.
pub fn arccos(h: DoubleNumber) -> Result<DoubleNumber> {
    let (a, b) = h.null();
    if !(math::abs(a) <= 1.0 && math::abs(b) <= 1.0) {
        return Err(Error::Domain("arccos needs |t+x| <= 1 and |t-x| <= 1"));
    }
    let ra = math::sqrt(((1.0 - a) * (1.0 + a)).max(0.0));
    let rb = math::sqrt(((1.0 - b) * (1.0 + b)).max(0.0));
    let c1 = clamp_unit(a * b - ra * rb);
    let c2 = clamp_unit(a * b + ra * rb);
    let sum = if a + b >= 0.0 {
        math::acos(c1)
    } else {
        2.0 * PI - math::acos(c1)
    };
    let sgn = if b > a {
        1.0
    } else if b < a {
        -1.0
    } else {
        0.0
    };
    Ok(DoubleNumber::new(0.5 * sum, 0.5 * sgn * math::acos(c2)))
}

// atan(a) + atan(b) and atan(a) - atan(b) through the tangent-addition
// closed forms, with the +-pi corrections past the branch hyperbolas.
fn atan_sum_diff(h: DoubleNumber) -> Result<(f64, f64)> {
    let (a, b) = h.null();
    let p = a * b;
    if p == 1.0 || p == -1.0 {
        return Err(Error::Pole(
            "arctan's closed form pinches where (t+x)(t-x) = +-1",
        ));
    }
    let mut sum = math::atan(2.0 * h.t / (1.0 - p));
    if p > 1.0 {
        sum += math::copysign(PI, h.t);
    }
    let mut diff = math::atan(2.0 * h.x / (1.0 + p));
    if p < -1.0 {
        diff += math::copysign(PI, h.x);
    }
    Ok((sum, diff))
}

/// Componentwise atan; total except on the hyperbolas (t+x)(t-x) = +-1
/// where the closed form degenerates.
pub fn arctan(h: DoubleNumber) -> Result<DoubleNumber> {
    let (sum, diff) = atan_sum_diff(h)?;
    Ok(DoubleNumber::new(0.5 * sum, 0.5 * diff))
}

/// Componentwise acot with values in (0, pi), sharing arctan's pinch set.
pub fn arccot(h: DoubleNumber) -> Result<DoubleNumber> {
    let (sum, diff) = atan_sum_diff(h)?;
    Ok(DoubleNumber::new(FRAC_PI_2 - 0.5 * sum, -0.5 * diff))
}

/// Componentwise asinh; defined on the whole plane.
pub fn arsinh(h: DoubleNumber) -> Result<DoubleNumber> {
    let (a, b) = h.null();
    let ra = math::sqrt(1.0 + a * a);
    let rb = math::sqrt(1.0 + b * b);
    finite(DoubleNumber::new(
        0.5 * math::asinh(a * rb + b * ra),
        0.5 * math::asinh(a * rb - b * ra),
    ))
}

/// Componentwise acosh. Needs a >= 1 and b >= 1, i.e. h in the wedge where
/// cosh takes its values.
pub fn arcosh(h: DoubleNumber) -> Result<DoubleNumber> {
    let (a, b) = h.null();
    if !(a >= 1.0 && b >= 1.0) {
        return Err(Error::Domain("arcosh needs t+x >= 1 and t-x >= 1"));
    }
    let ra = math::sqrt(((a - 1.0) * (a + 1.0)).max(0.0));
    let rb = math::sqrt(((b - 1.0) * (b + 1.0)).max(0.0));
    let sum = math::acosh((a * b + ra * rb).max(1.0));
    let sgn = if a > b {
        1.0
    } else if a < b {
        -1.0
    } else {
        0.0
    };
    let diff = sgn * math::acosh((a * b - ra * rb).max(1.0));
    Ok(DoubleNumber::new(0.5 * sum, 0.5 * diff))
}

/// artanh h = log((1 + h)/(1 - h)) / 2 on the open unit square |a| < 1,
/// |b| < 1 in null coordinates.
pub fn artanh(h: DoubleNumber) -> Result<DoubleNumber> {
    let (a, b) = h.null();
    if !(math::abs(a) < 1.0 && math::abs(b) < 1.0) {
        return Err(Error::Domain("artanh needs |t+x| < 1 and |t-x| < 1"));
    }
    let w = (DoubleNumber::ONE + h).checked_div(DoubleNumber::ONE - h)?;
    Ok(log(w)?.scale(0.5))
}

/// arcoth h = artanh(1/h) on |a| > 1, |b| > 1.
pub fn arcoth(h: DoubleNumber) -> Result<DoubleNumber> {
    let (a, b) = h.null();
    if !(math::abs(a) > 1.0 && math::abs(b) > 1.0) {
        return Err(Error::Domain("arcoth needs |t+x| > 1 and |t-x| > 1"));
    }
    artanh(h.inv()?)
}

/// h^k for integer k by binary exponentiation; negative k inverts first.
pub fn pow_int(h: DoubleNumber, k: i32) -> Result<DoubleNumber> {
    if k == 0 {
        return Ok(DoubleNumber::ONE);
    }
    let base = if k < 0 { h.inv()? } else { h };
    let mut e = k.unsigned_abs();
    let mut acc = DoubleNumber::ONE;
    let mut sq = base;
    loop {
        if e & 1 == 1 {
            acc = acc * sq;
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        sq = sq * sq;
    }
    finite(acc)
}

/// h^alpha for real alpha.
///
/// On the right wedge this is exp(alpha ln h) = (a^alpha, b^alpha)
/// componentwise. On the upper cone rays h = s (1 +- j), s > 0, the ray is a
/// ring with identity (1 +- j)/2 and the power follows the idempotent
/// identity h^alpha = 2^(alpha-1) s^alpha (1 +- j) for every real alpha;
/// note alpha = 0 then yields the ray's unit, not 1.
pub fn pow_real(h: DoubleNumber, alpha: f64) -> Result<DoubleNumber> {
    match h.classify() {
        Region::QuadrantI => exp(log(h)?.scale(alpha)),
        Region::ConePlusUp => cone_pow(h.t, alpha, 1.0),
        Region::ConeMinusUp => cone_pow(h.t, alpha, -1.0),
        _ => Err(Error::Domain(
            "fractional powers need the right wedge or an upper cone ray",
        )),
    }
}

fn cone_pow(s: f64, alpha: f64, dir: f64) -> Result<DoubleNumber> {
    let m = math::powf(2.0, alpha - 1.0) * math::powf(s, alpha);
    finite(DoubleNumber::new(m, dir * m))
}

/// n-th root. Even n needs the right wedge and admits four branches
/// (multiplication by the units 1, j, -1, -j, selected by `branch` 0..=3);
/// odd n is unique (`branch` must be 0) and preserves the sector, since
/// every unit eps satisfies eps^n = eps for odd n. No roots on the cone.
pub fn root(h: DoubleNumber, n: u32, branch: u32) -> Result<DoubleNumber> {
    if n == 0 {
        return Err(Error::Domain("0th root is undefined"));
    }
    let region = h.classify();
    if !region.is_quadrant() {
        return Err(Error::Cone("roots are undefined on the null cone"));
    }
    let p = h.to_polar()?;
    let rho_root = math::powf(p.rho, 1.0 / n as f64);
    if n % 2 == 0 {
        if region != Region::QuadrantI {
            return Err(Error::Domain("even roots need the right wedge t > |x|"));
        }
        let eps = match branch {
            0 => DoubleNumber::ONE,
            1 => DoubleNumber::J,
            2 => -DoubleNumber::ONE,
            3 => -DoubleNumber::J,
            _ => return Err(Error::Branch("even roots have branches 0..=3")),
        };
        Ok(eps * DoubleNumber::from_polar(Region::QuadrantI, rho_root, p.psi / n as f64)?)
    } else {
        if branch != 0 {
            return Err(Error::Branch("odd roots are unique: branch must be 0"));
        }
        DoubleNumber::from_polar(region, rho_root, p.psi / n as f64)
    }
}

/// The averaging map Z(h) = (h + 1/h)/2.
pub fn zhukowskiy(h: DoubleNumber) -> Result<DoubleNumber> {
    Ok((h + h.inv()?).scale(0.5))
}

/// A fractional-linear map h -> (a h + b) / (c h + d).
///
/// The coefficient matrix must have invertible determinant: these maps form
/// a group under composition, acting on the double plane minus the pullback
/// of the cone under the denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Homography {
    pub a: DoubleNumber,
    pub b: DoubleNumber,
    pub c: DoubleNumber,
    pub d: DoubleNumber,
}

impl Homography {
    pub fn new(
        a: DoubleNumber,
        b: DoubleNumber,
        c: DoubleNumber,
        d: DoubleNumber,
    ) -> Result<Self> {
        let det = a * d - b * c;
        if det.is_zero_divisor() {
            return Err(Error::Degenerate("determinant ad - bc is a zero divisor"));
        }
        Ok(Homography { a, b, c, d })
    }

    pub fn determinant(&self) -> DoubleNumber {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, h: DoubleNumber) -> Result<DoubleNumber> {
        let den = self.c * h + self.d;
        let inv = den
            .inv()
            .map_err(|_| Error::Cone("denominator c h + d lands on the null cone"))?;
        finite((self.a * h + self.b) * inv)
    }

    /// The inverse map; same determinant, swapped/negated entries.
    pub fn inverse(&self) -> Homography {
        Homography {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// self after `inner`: (self.compose(inner)).apply(h) =
    /// self.apply(inner.apply(h)); the matrices multiply.
    pub fn compose(&self, inner: &Homography) -> Homography {
        Homography {
            a: self.a * inner.a + self.b * inner.c,
            b: self.a * inner.b + self.b * inner.d,
            c: self.c * inner.a + self.d * inner.c,
            d: self.c * inner.b + self.d * inner.d,
        }
    }
}
