//! Colon-and-comma contour descriptions for the command line.
//!
//! ```text
//! circle:ct,cx,r              Euclidean circle, counterclockwise
//! segment:t0,x0,t1,x1         straight segment
//! polygon:t0,x0,t1,x1,...     closed polygon through the listed vertices
//! gamma1:t,x,psi_max,r_inner  pinched sector contour around (t, x) in
//!                             sector I: ray in at +psi_max, ray out at
//!                             -psi_max, pseudo-circle arc at exp(-psi_max)
//! ```

use std::str::FromStr;

use splitplane_core::algebra::Region;
use splitplane_core::contour::{Contour, Curve, RegularizationParams};
use splitplane_core::{DoubleNumber, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ContourSpec {
    Circle { center: DoubleNumber, r: f64 },
    Segment { from: DoubleNumber, to: DoubleNumber },
    Polygon { vertices: Vec<DoubleNumber> },
    Gamma1 { center: DoubleNumber, psi_max: f64, r_inner: f64 },
}

impl ContourSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ContourSpec::Circle { .. } => "circle",
            ContourSpec::Segment { .. } => "segment",
            ContourSpec::Polygon { .. } => "polygon",
            ContourSpec::Gamma1 { .. } => "gamma1",
        }
    }

    /// Canonical text form, echoed into output metadata.
    pub fn describe(&self) -> String {
        match self {
            ContourSpec::Circle { center, r } => {
                format!("circle:{},{},{}", center.t, center.x, r)
            }
            ContourSpec::Segment { from, to } => {
                format!("segment:{},{},{},{}", from.t, from.x, to.t, to.x)
            }
            ContourSpec::Polygon { vertices } => {
                let mut s = String::from("polygon");
                let mut sep = ':';
                for v in vertices {
                    s.push_str(&format!("{sep}{},{}", v.t, v.x));
                    sep = ',';
                }
                s
            }
            ContourSpec::Gamma1 { center, psi_max, r_inner } => {
                format!("gamma1:{},{},{},{}", center.t, center.x, psi_max, r_inner)
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, ContourSpec::Circle { .. } | ContourSpec::Polygon { .. })
    }

    pub fn to_contour(&self, panels: usize) -> Result<Contour> {
        match self {
            ContourSpec::Circle { center, r } => Contour::closed(vec![
                Curve::euclidean_circle_arc(*center, *r, 0.0, std::f64::consts::TAU, panels),
            ]),
            ContourSpec::Segment { from, to } => {
                Contour::open(vec![Curve::line_segment(*from, *to, panels)])
            }
            ContourSpec::Polygon { vertices } => {
                let n = vertices.len();
                Contour::closed(
                    (0..n)
                        .map(|i| Curve::line_segment(vertices[i], vertices[(i + 1) % n], panels))
                        .collect(),
                )
            }
            ContourSpec::Gamma1 { center, psi_max, r_inner } => {
                let reg = RegularizationParams::new(*psi_max, *r_inner)?;
                let (lr_out, lr_in) = (reg.r_outer().ln(), reg.r_inner.ln());
                let sector = Region::QuadrantI;
                Contour::open(vec![
                    Curve::polar_ray(*center, sector, reg.psi_max, lr_out, lr_in, panels)?,
                    Curve::polar_ray(*center, sector, -reg.psi_max, lr_in, lr_out, panels)?,
                    Curve::hyperbolic_arc(
                        *center,
                        sector,
                        reg.r_outer(),
                        -reg.psi_max,
                        reg.psi_max,
                        panels,
                    )?,
                ])
            }
        }
    }
}

impl FromStr for ContourSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| usage("expected `kind:numbers,...`"))?;
        let nums: Vec<f64> = rest
            .split(',')
            .map(|tok| tok.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| usage("every field after the colon must be a number"))?;
        match kind {
            "circle" => {
                if nums.len() != 3 {
                    return Err(usage("circle takes ct,cx,r"));
                }
                if !(nums[2] > 0.0) {
                    return Err(usage("circle radius must be positive"));
                }
                Ok(ContourSpec::Circle {
                    center: DoubleNumber::new(nums[0], nums[1]),
                    r: nums[2],
                })
            }
            "segment" => {
                if nums.len() != 4 {
                    return Err(usage("segment takes t0,x0,t1,x1"));
                }
                Ok(ContourSpec::Segment {
                    from: DoubleNumber::new(nums[0], nums[1]),
                    to: DoubleNumber::new(nums[2], nums[3]),
                })
            }
            "polygon" => {
                if nums.len() < 6 || nums.len() % 2 != 0 {
                    return Err(usage("polygon takes at least three t,x vertex pairs"));
                }
                Ok(ContourSpec::Polygon {
                    vertices: nums.chunks(2).map(|p| DoubleNumber::new(p[0], p[1])).collect(),
                })
            }
            "gamma1" => {
                if nums.len() != 4 {
                    return Err(usage("gamma1 takes t,x,psi_max,r_inner"));
                }
                if !(nums[2] > 0.0) || !(nums[3] > 0.0) || nums[3] >= (-nums[2]).exp() {
                    return Err(usage("gamma1 needs psi_max > 0 and 0 < r_inner < exp(-psi_max)"));
                }
                Ok(ContourSpec::Gamma1 {
                    center: DoubleNumber::new(nums[0], nums[1]),
                    psi_max: nums[2],
                    r_inner: nums[3],
                })
            }
            other => Err(usage(&format!("unknown contour kind `{other}`"))),
        }
    }
}

fn usage(detail: &str) -> String {
    format!("{detail}; accepted forms: circle:ct,cx,r segment:t0,x0,t1,x1 polygon:t0,x0,... gamma1:t,x,psi_max,r_inner")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_four_kinds() {
        let c: ContourSpec = "circle:0,0,1".parse().unwrap();
        assert!(c.is_closed());
        assert!(c.to_contour(64).unwrap().is_closed());

        let s: ContourSpec = "segment:0,0,2,1".parse().unwrap();
        assert!(!s.is_closed());

        let p: ContourSpec = "polygon:1,0.5,-1,0.5,-1,-0.5,1,-0.5".parse().unwrap();
        assert!(p.to_contour(16).unwrap().is_closed());

        let g: ContourSpec = "gamma1:0.5,0.1,2,1e-6".parse().unwrap();
        assert_eq!(g.kind(), "gamma1");
        assert_eq!(g.to_contour(8).unwrap().pieces().len(), 3);
    }

    #[test]
    fn round_trips_through_describe() {
        for src in [
            "circle:0,0,1",
            "segment:0,0,2,1",
            "polygon:1,0.5,-1,0.5,-1,-0.5,1,-0.5",
            "gamma1:0.5,0.1,2,0.000001",
        ] {
            let spec: ContourSpec = src.parse().unwrap();
            let again: ContourSpec = spec.describe().parse().unwrap();
            assert_eq!(spec, again, "{src}");
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert!("circle:0,0".parse::<ContourSpec>().is_err());
        assert!("circle:0,0,-1".parse::<ContourSpec>().is_err());
        assert!("blob:1,2".parse::<ContourSpec>().is_err());
        assert!("polygon:1,2,3,4".parse::<ContourSpec>().is_err());
        assert!("segment:a,b,c,d".parse::<ContourSpec>().is_err());
        assert!("gamma1:0,0,2,0.2".parse::<ContourSpec>().is_err());
        assert!("circle".parse::<ContourSpec>().is_err());
    }
}
