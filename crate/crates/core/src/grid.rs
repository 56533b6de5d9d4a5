//! Coordinate-grid images under double-differentiable maps.
//!
//! A map F sends the lines t = const and x = const to a curvilinear net.
//! Where F'(h) is invertible the net stays orthogonal in the hyperbolic
//! sense, because multiplication by F'(h) rescales all hyperbolic angles'
//! cosh/sinh pair uniformly. [`angle_preservation_check`] measures this.

use alloc::vec::Vec;

use crate::algebra::{DoubleNumber, Region};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::holomorphy::{conformal_factor, derivative, StencilSpec};
use crate::math;

/// Which coordinate net to sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// Lines t = const and x = const on a rectangle.
    Cartesian,
    /// Lines rho = const (pseudo-circles) and psi = const (rays) inside
    /// one sector. The `t_range` of the spec is read as the rho range and
    /// `x_range` as the psi range.
    Polar(Region),
}

/// A rectangular lattice of sample lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub kind: GridKind,
    pub t_range: (f64, f64),
    pub x_range: (f64, f64),
    /// number of t = const (or rho = const) lines
    pub n_t: usize,
    /// number of x = const (or psi = const) lines
    pub n_x: usize,
    /// samples along each line
    pub samples_per_line: usize,
}

impl GridSpec {
    pub fn cartesian(t_range: (f64, f64), x_range: (f64, f64), n_t: usize, n_x: usize) -> GridSpec {
        GridSpec {
            kind: GridKind::Cartesian,
            t_range,
            x_range,
            n_t,
            n_x,
            samples_per_line: 128,
        }
    }

    pub fn polar(
        sector: Region,
        rho_range: (f64, f64),
        psi_range: (f64, f64),
        n_rho: usize,
        n_psi: usize,
    ) -> GridSpec {
        GridSpec {
            kind: GridKind::Polar(sector),
            t_range: rho_range,
            x_range: psi_range,
            n_t: n_rho,
            n_x: n_psi,
            samples_per_line: 128,
        }
    }

    pub fn with_samples(mut self, samples_per_line: usize) -> GridSpec {
        self.samples_per_line = samples_per_line;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_t < 1 || self.n_x < 1 || self.samples_per_line < 2 {
            return Err(Error::Domain("grid needs lines and at least two samples"));
        }
        if let GridKind::Polar(sector) = self.kind {
            if !sector.is_quadrant() {
                return Err(Error::Domain("polar grids live inside one quadrant"));
            }
            if !(self.t_range.0 > 0.0 && self.t_range.1 > 0.0) {
                return Err(Error::Domain("polar radius range must be positive"));
            }
        }
        Ok(())
    }

    fn source_point(&self, c_fixed: f64, c_along: f64, family: GridFamily) -> Result<DoubleNumber> {
        let (u, v) = match family {
            GridFamily::ConstT => (c_fixed, c_along),
            GridFamily::ConstX => (c_along, c_fixed),
        };
        match self.kind {
            GridKind::Cartesian => Ok(DoubleNumber::new(u, v)),
            GridKind::Polar(sector) => DoubleNumber::from_polar(sector, u, v),
        }
    }
}

/// Family of a grid line: first coordinate held fixed or second.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridFamily {
    /// t = const (Cartesian) or rho = const (polar)
    ConstT,
    /// x = const (Cartesian) or psi = const (polar)
    ConstX,
}

/// Which source line a polyline is the image of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineId {
    pub family: GridFamily,
    pub index: usize,
}

/// Image of one grid line, with bookkeeping for samples the map rejected.
///
/// `points` holds only the successfully mapped samples, in line order.
/// `breaks` holds the indices into `points` where a new connected run
/// starts (0 is implied and never stored). A renderer should lift the pen
/// at each break.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub line: LineId,
    pub points: Vec<(f64, f64)>,
    pub breaks: Vec<usize>,
}

fn levels(range: (f64, f64), n: usize) -> impl Iterator<Item = f64> {
    let (lo, hi) = range;
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| lo + step * i as f64)
}

/// Maps the grid through F, one polyline per source line.
///
/// Samples where F fails to evaluate (logarithm off its half-plane, poles,
/// overflow) are dropped and the surrounding runs are separated by a break.
pub fn map_grid(f: &Expr, spec: &GridSpec) -> Result<Vec<Polyline>> {
    spec.validate()?;
    let mut out = Vec::with_capacity(spec.n_t + spec.n_x);
    let fams = [
        (GridFamily::ConstT, spec.t_range, spec.n_t, spec.x_range),
        (GridFamily::ConstX, spec.x_range, spec.n_x, spec.t_range),
    ];
    for (family, fixed_range, n_lines, along_range) in fams {
        for (index, c_fixed) in levels(fixed_range, n_lines).enumerate() {
            let mut points = Vec::with_capacity(spec.samples_per_line);
            let mut breaks = Vec::new();
            let mut in_run = false;
            for c_along in levels(along_range, spec.samples_per_line) {
                let h = spec.source_point(c_fixed, c_along, family)?;
                match f.eval(h) {
                    Ok(w) => {
                        if !in_run && !points.is_empty() {
                            breaks.push(points.len());
                        }
                        points.push((w.t, w.x));
                        in_run = true;
                    }
                    Err(_) => in_run = false,
                }
            }
            out.push(Polyline {
                line: LineId { family, index },
                points,
                breaks,
            });
        }
    }
    Ok(out)
}

/// Hyperbolic angle from u to v: the difference of their polar angles.
///
/// Both vectors must be non-cone and of the same causal character
/// (both timelike, sectors I/III, or both spacelike, sectors II/IV);
/// the angle between mixed characters is not a real number.
pub fn hyperbolic_angle(u: DoubleNumber, v: DoubleNumber) -> Result<f64> {
    let pu = u.to_polar()?;
    let pv = v.to_polar()?;
    let timelike = |r: Region| matches!(r, Region::QuadrantI | Region::QuadrantIII);
    if !pu.region.is_quadrant() || !pv.region.is_quadrant() {
        return Err(Error::Cone("angle undefined for cone vectors"));
    }
    if timelike(pu.region) != timelike(pv.region) {
        return Err(Error::MixedSector);
    }
    Ok(pv.psi - pu.psi)
}

/// Outcome of probing angle preservation at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnglePreservation {
    /// angle between the two direction vectors at the source
    pub source_angle: f64,
    /// angle between their push-forwards F'(h) u and F'(h) v
    pub image_angle: f64,
    /// |image - source|
    pub angle_defect: f64,
    /// | |F'(h) u| / |u| - |F'(h) v| / |v| | over the common factor:
    /// relative spread of the length scaling between the two directions
    pub length_ratio_spread: f64,
}

/// Checks that F scales hyperbolic angles and lengths isotropically at h.
///
/// The push-forward of a direction vector under a double-differentiable map
/// is multiplication by F'(h). Where the conformal factor |F'(h)|^2 in the
/// hyperbolic sense degenerates (|norm| below 1e-12) the map creases and
/// [`Error::BrokenConformality`] is returned.
pub fn angle_preservation_check(
    f: &Expr,
    h: DoubleNumber,
    u: DoubleNumber,
    v: DoubleNumber,
    spec: &StencilSpec,
) -> Result<AnglePreservation> {
    let factor = conformal_factor(f, h, spec)?;
    if math::abs(factor) < 1e-12 {
        return Err(Error::BrokenConformality);
    }
    let d = derivative(f, h, spec)?;
    let source_angle = hyperbolic_angle(u, v)?;
    let image_angle = hyperbolic_angle(d * u, d * v)?;
    let ru = (d * u).modulus() / u.modulus();
    let rv = (d * v).modulus() / v.modulus();
    let mean = 0.5 * (ru + rv);
    Ok(AnglePreservation {
        source_angle,
        image_angle,
        angle_defect: math::abs(image_angle - source_angle),
        length_ratio_spread: if mean > 0.0 {
            math::abs(ru - rv) / mean
        } else {
            0.0
        },
    })
}
