//! The double-number algebra: arithmetic, null coordinates, sector
//! classification, and the hyperbolic polar form.

use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::math;

/// A double number h = t + j x with j^2 = +1.
///
/// `t` is the timelike component, `x` the spacelike one. The product of h
/// with its conjugate is the real number t^2 - x^2, which can take either
/// sign; its zero set, the null cone |t| = |x|, consists of zero divisors.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleNumber {
    pub t: f64,
    pub x: f64,
}

/// Sector of the double plane relative to the null cone.
///
/// Quadrants are numbered by the unit that represents them in the polar
/// form h = eps * rho * exp(j psi): I -> 1, II -> j, III -> -1, IV -> -j.
/// Cone halves are split by the sign of the surviving null coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// t > |x|, unit +1.
    QuadrantI,
    /// x > |t|, unit +j.
    QuadrantII,
    /// -t > |x|, unit -1.
    QuadrantIII,
    /// -x > |t|, unit -j.
    QuadrantIV,
    /// t = x > 0.
    ConePlusUp,
    /// t = x < 0.
    ConePlusDown,
    /// t = -x, t > 0.
    ConeMinusUp,
    /// t = -x, t < 0.
    ConeMinusDown,
    Origin,
}

impl Region {
    /// The four open quadrants carry a polar form, cone sectors do not.
    pub fn is_quadrant(self) -> bool {
        matches!(
            self,
            Region::QuadrantI | Region::QuadrantII | Region::QuadrantIII | Region::QuadrantIV
        )
    }

    pub fn is_cone(self) -> bool {
        matches!(
            self,
            Region::ConePlusUp | Region::ConePlusDown | Region::ConeMinusUp | Region::ConeMinusDown
        )
    }

    /// Representing unit eps of a quadrant; `None` on cone sectors and origin.
    pub fn unit(self) -> Option<DoubleNumber> {
        match self {
            Region::QuadrantI => Some(DoubleNumber::new(1.0, 0.0)),
            Region::QuadrantII => Some(DoubleNumber::new(0.0, 1.0)),
            Region::QuadrantIII => Some(DoubleNumber::new(-1.0, 0.0)),
            Region::QuadrantIV => Some(DoubleNumber::new(0.0, -1.0)),
            _ => None,
        }
    }
}

/// Polar data of an off-cone point: h = unit(region) * rho * exp(j psi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polar {
    pub region: Region,
    /// Hyperbolic modulus, always positive.
    pub rho: f64,
    /// Hyperbolic angle, any real.
    pub psi: f64,
}

impl DoubleNumber {
    pub const ZERO: DoubleNumber = DoubleNumber { t: 0.0, x: 0.0 };
    pub const ONE: DoubleNumber = DoubleNumber { t: 1.0, x: 0.0 };
    /// The imaginary unit j.
    pub const J: DoubleNumber = DoubleNumber { t: 0.0, x: 1.0 };

    #[inline]
    pub const fn new(t: f64, x: f64) -> Self {
        DoubleNumber { t, x }
    }

    #[inline]
    pub const fn from_real(t: f64) -> Self {
        DoubleNumber { t, x: 0.0 }
    }

    /// Null (characteristic) coordinates (a, b) = (t + x, t - x).
    ///
    /// In these coordinates multiplication acts componentwise, which makes
    /// them the ground truth for every elementary function in this crate.
    #[inline]
    pub fn null(self) -> (f64, f64) {
        (self.t + self.x, self.t - self.x)
    }

    /// Inverse of [`null`](Self::null).
    #[inline]
    pub fn from_null(a: f64, b: f64) -> Self {
        DoubleNumber::new(0.5 * (a + b), 0.5 * (a - b))
    }

    /// Applies a real function to both null coordinates.
    ///
    /// For any f this extends f from the reals to the double plane wherever
    /// the componentwise images exist; it is the reference implementation
    /// the coordinate formulas in [`crate::elementary`] are tested against.
    #[inline]
    pub fn map_null(self, f: impl Fn(f64) -> f64) -> Self {
        let (a, b) = self.null();
        DoubleNumber::from_null(f(a), f(b))
    }

    #[inline]
    pub fn conj(self) -> Self {
        DoubleNumber::new(self.t, -self.x)
    }

    /// The quadratic form h * conj(h) = t^2 - x^2. Negative in the
    /// spacelike quadrants, zero exactly on the null cone.
    #[inline]
    pub fn norm(self) -> f64 {
        self.t * self.t - self.x * self.x
    }

    /// Hyperbolic modulus sqrt(|t^2 - x^2|). Multiplicative, but vanishes on
    /// the whole cone, so it is not a norm in the metric sense.
    #[inline]
    pub fn modulus(self) -> f64 {
        let (a, b) = self.null();
        // |a*b| = |t^2 - x^2| without the cancellation of t*t - x*x near the cone
        math::sqrt(math::abs(a * b))
    }

    /// Euclidean magnitude sqrt(t^2 + x^2); positive off the origin, used for
    /// error measurement where the hyperbolic modulus would degenerate.
    #[inline]
    pub fn euclid(self) -> f64 {
        math::hypot(self.t, self.x)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.t.is_finite() && self.x.is_finite()
    }

    /// True exactly on the null cone (including the origin), where the
    /// number has no inverse.
    #[inline]
    pub fn is_zero_divisor(self) -> bool {
        let (a, b) = self.null();
        a == 0.0 || b == 0.0
    }

    pub fn inv(self) -> Result<Self> {
        let (a, b) = self.null();
        if a == 0.0 || b == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        let r = DoubleNumber::from_null(1.0 / a, 1.0 / b);
        if r.is_finite() {
            Ok(r)
        } else {
            Err(Error::Overflow)
        }
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        Ok(self * rhs.inv()?)
    }

    /// Which sector of the plane the point lies in, decided by the exact
    /// signs of the null coordinates.
    pub fn classify(self) -> Region {
        let (a, b) = self.null();
        match (sign3(a), sign3(b)) {
            (1, 1) => Region::QuadrantI,
            (1, -1) => Region::QuadrantII,
            (-1, -1) => Region::QuadrantIII,
            (-1, 1) => Region::QuadrantIV,
            (1, 0) => Region::ConePlusUp,
            (-1, 0) => Region::ConePlusDown,
            (0, 1) => Region::ConeMinusUp,
            (0, -1) => Region::ConeMinusDown,
            _ => Region::Origin,
        }
    }

    /// Hyperbolic polar decomposition h = eps * rho * exp(j psi).
    ///
    /// rho = sqrt(|a b|) and psi = (ln|a| - ln|b|)/2 in null coordinates,
    /// which stays accurate arbitrarily close to the cone. Cone points and
    /// the origin have no polar form.
    pub fn to_polar(self) -> Result<Polar> {
        let region = self.classify();
        if !region.is_quadrant() {
            return Err(Error::Cone("polar form undefined on the null cone"));
        }
        let (a, b) = self.null();
        let (aa, ab) = (math::abs(a), math::abs(b));
        Ok(Polar {
            region,
            rho: math::sqrt(aa * ab),
            psi: 0.5 * (math::ln(aa) - math::ln(ab)),
        })
    }

    /// Rebuilds a point from polar data. The region must be a quadrant.
    pub fn from_polar(region: Region, rho: f64, psi: f64) -> Result<Self> {
        if !region.is_quadrant() {
            return Err(Error::Domain("polar form needs a quadrant region"));
        }
        if !(rho > 0.0) || !rho.is_finite() || !psi.is_finite() {
            return Err(Error::Domain("polar radius must be positive and finite"));
        }
        // null factors of eps: I (1,1), II (1,-1), III (-1,-1), IV (-1,1)
        let (sa, sb) = match region {
            Region::QuadrantI => (1.0, 1.0),
            Region::QuadrantII => (1.0, -1.0),
            Region::QuadrantIII => (-1.0, -1.0),
            _ => (-1.0, 1.0),
        };
        let r = DoubleNumber::from_null(sa * rho * math::exp(psi), sb * rho * math::exp(-psi));
        if r.is_finite() {
            Ok(r)
        } else {
            Err(Error::Overflow)
        }
    }

    /// Scales by a real factor.
    #[inline]
    pub fn scale(self, s: f64) -> Self {
        DoubleNumber::new(self.t * s, self.x * s)
    }
}

impl Polar {
    pub fn join(self) -> Result<DoubleNumber> {
        DoubleNumber::from_polar(self.region, self.rho, self.psi)
    }
}

/// Hyperbolic polar radius of the Euclidean circle t^2 + x^2 = r^2 at
/// hyperbolic angle psi: rho(psi) = r / sqrt(cosh(2 psi)).
///
/// Useful for comparing Euclidean circles against pseudo-circles rho = const:
/// the circle sags toward the cone as |psi| grows.
pub fn euclidean_circle_rho(r: f64, psi: f64) -> f64 {
    // cosh^2 + sinh^2 = cosh(2 psi)
    r / math::sqrt(math::cosh(2.0 * psi))
}

fn sign3(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

impl Add for DoubleNumber {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        DoubleNumber::new(self.t + rhs.t, self.x + rhs.x)
    }
}

impl Sub for DoubleNumber {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        DoubleNumber::new(self.t - rhs.t, self.x - rhs.x)
    }
}

impl Mul for DoubleNumber {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        DoubleNumber::new(
            self.t * rhs.t + self.x * rhs.x,
            self.t * rhs.x + self.x * rhs.t,
        )
    }
}

impl Neg for DoubleNumber {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        DoubleNumber::new(-self.t, -self.x)
    }
}

impl Mul<f64> for DoubleNumber {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl Mul<DoubleNumber> for f64 {
    type Output = DoubleNumber;
    #[inline]
    fn mul(self, h: DoubleNumber) -> DoubleNumber {
        h.scale(self)
    }
}

impl Div<f64> for DoubleNumber {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        DoubleNumber::new(self.t / s, self.x / s)
    }
}

impl AddAssign for DoubleNumber {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for DoubleNumber {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl From<f64> for DoubleNumber {
    fn from(t: f64) -> Self {
        DoubleNumber::from_real(t)
    }
}

impl fmt::Display for DoubleNumber {
    /// Renders as `t`, `xj`, or `t+xj` / `t-xj`, parseable by [`FromStr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x == 0.0 {
            write!(f, "{}", self.t)
        } else if self.t == 0.0 {
            write!(f, "{}j", self.x)
        } else if self.x < 0.0 {
            write!(f, "{}-{}j", self.t, -self.x)
        } else {
            write!(f, "{}+{}j", self.t, self.x)
        }
    }
}

/// Error for [`DoubleNumber::from_str`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDoubleNumberError;

impl fmt::Display for ParseDoubleNumberError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expected a double number like `1.5`, `0.5j` or `1.5-0.5j`")
    }
}

impl core::error::Error for ParseDoubleNumberError {}

impl FromStr for DoubleNumber {
    type Err = ParseDoubleNumberError;

    /// Accepts `t`, `xj`, `t+xj`, `t-xj`, with `j` and `-j` meaning 1j and
    /// -1j. Exponent notation in the components is fine.
    fn from_str(s: &str) -> core::result::Result<Self, ParseDoubleNumberError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseDoubleNumberError);
        }
        let parse_real = |tok: &str| -> core::result::Result<f64, ParseDoubleNumberError> {
            tok.parse::<f64>().map_err(|_| ParseDoubleNumberError)
        };
        let parse_imag = |tok: &str| -> core::result::Result<f64, ParseDoubleNumberError> {
            match tok {
                "" | "+" => Ok(1.0),
                "-" => Ok(-1.0),
                _ => parse_real(tok),
            }
        };
        // split before the last top-level +/- that is not an exponent sign
        let bytes = s.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            let c = bytes[i];
            if (c == b'+' || c == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
                break;
            }
        }
        if let Some(stripped) = s.strip_suffix('j') {
            if let Some(i) = split {
                if i < stripped.len() {
                    let t = parse_real(&stripped[..i])?;
                    let x = parse_imag(&stripped[i..])?;
                    return Ok(DoubleNumber::new(t, x));
                }
            }
            return Ok(DoubleNumber::new(0.0, parse_imag(stripped)?));
        }
        Ok(DoubleNumber::from_real(parse_real(s)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(u: DoubleNumber, v: DoubleNumber, tol: f64) -> bool {
        (u - v).euclid() <= tol
    }

    #[test]
    fn product_mixes_components() {
        let p = DoubleNumber::new(2.0, 1.0) * DoubleNumber::new(3.0, 1.0);
        assert_eq!(p, DoubleNumber::new(7.0, 5.0));
    }

    #[test]
    fn j_squares_to_one() {
        assert_eq!(DoubleNumber::J * DoubleNumber::J, DoubleNumber::ONE);
    }

    #[test]
    fn null_coordinates_diagonalize_product() {
        let u = DoubleNumber::new(0.3, -1.7);
        let v = DoubleNumber::new(-2.4, 0.9);
        let (ua, ub) = u.null();
        let (va, vb) = v.null();
        let direct = u * v;
        let via_null = DoubleNumber::from_null(ua * va, ub * vb);
        assert!(close(direct, via_null, 1e-15));
    }

    #[test]
    fn inverse_round_trip() {
        let h = DoubleNumber::new(2.0, 1.0);
        let r = h * h.inv().unwrap();
        assert!(close(r, DoubleNumber::ONE, 1e-15));
    }

    #[test]
    fn cone_points_are_not_invertible() {
        assert_eq!(DoubleNumber::new(1.0, 1.0).inv(), Err(Error::ZeroDivisor));
        assert_eq!(DoubleNumber::new(-3.0, 3.0).inv(), Err(Error::ZeroDivisor));
        assert_eq!(DoubleNumber::ZERO.inv(), Err(Error::ZeroDivisor));
    }

    #[test]
    fn classification_covers_all_sectors() {
        use Region::*;
        let cases = [
            ((2.0, 1.0), QuadrantI),
            ((1.0, 2.0), QuadrantII),
            ((-2.0, 1.0), QuadrantIII),
            ((1.0, -2.0), QuadrantIV),
            ((1.5, 1.5), ConePlusUp),
            ((-1.5, -1.5), ConePlusDown),
            ((1.5, -1.5), ConeMinusUp),
            ((-1.5, 1.5), ConeMinusDown),
            ((0.0, 0.0), Origin),
        ];
        for ((t, x), want) in cases {
            assert_eq!(DoubleNumber::new(t, x).classify(), want, "({t}, {x})");
        }
    }

    #[test]
    fn polar_of_known_point() {
        // h = 1.25 + 0.75j has null (2, 0.5): rho = 1, psi = ln 2
        let p = DoubleNumber::new(1.25, 0.75).to_polar().unwrap();
        assert_eq!(p.region, Region::QuadrantI);
        assert!((p.rho - 1.0).abs() < 1e-15);
        assert!((p.psi - core::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn polar_round_trip_all_quadrants() {
        for h in [
            DoubleNumber::new(2.0, -1.0),
            DoubleNumber::new(0.3, 2.0),
            DoubleNumber::new(-5.0, 4.9),
            DoubleNumber::new(0.1, -0.4),
        ] {
            let p = h.to_polar().unwrap();
            assert!(close(p.join().unwrap(), h, 1e-12 * h.euclid()));
        }
    }

    #[test]
    fn polar_rejects_cone() {
        assert!(matches!(
            DoubleNumber::new(1.0, -1.0).to_polar(),
            Err(Error::Cone(_))
        ));
    }

    #[test]
    fn modulus_is_multiplicative() {
        let u = DoubleNumber::new(1.3, 0.4);
        let v = DoubleNumber::new(-0.2, 2.2);
        assert!(((u * v).modulus() - u.modulus() * v.modulus()).abs() < 1e-14);
    }

    #[test]
    fn circle_in_polar_coordinates() {
        let r = euclidean_circle_rho(1.0, core::f64::consts::LN_2);
        assert!((r - 0.6859943405700353).abs() < 1e-15);
        assert_eq!(euclidean_circle_rho(2.0, 0.0), 2.0);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["1.5", "-2", "0.5j", "-j", "j", "1.5+0.5j", "1.5-0.5j", "1e-3+2e-4j"] {
            let h: DoubleNumber = s.parse().unwrap();
            let again: DoubleNumber = h.to_string().parse().unwrap();
            assert_eq!(h, again, "{s}");
        }
        assert_eq!("2+j".parse::<DoubleNumber>().unwrap(), DoubleNumber::new(2.0, 1.0));
        assert_eq!("2-j".parse::<DoubleNumber>().unwrap(), DoubleNumber::new(2.0, -1.0));
        assert!("".parse::<DoubleNumber>().is_err());
        assert!("1.5+".parse::<DoubleNumber>().is_err());
        assert!("nope".parse::<DoubleNumber>().is_err());
    }
}
