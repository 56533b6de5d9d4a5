//! Deterministic output formats. Every number is printed through the same
//! fixed-width scientific formatter, so identical invocations produce byte
//! identical output.

use std::fmt::Write as _;

use splitplane_core::grid::{GridFamily, Polyline};
use splitplane_core::DoubleNumber;

/// Full-precision form used in JSON and CSV payloads.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Shorter form for SVG coordinates.
pub fn num6(x: f64) -> String {
    format!("{x:.6e}")
}

pub fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn json_point(h: DoubleNumber) -> String {
    format!("{{\"t\":{},\"x\":{}}}", num(h.t), num(h.x))
}

/// Run metadata echoed into every structured output: tool version, the
/// command name, and the fully resolved parameters. Values must already be
/// valid JSON fragments.
pub struct Meta {
    pub command: &'static str,
    pub params: Vec<(&'static str, String)>,
}

impl Meta {
    pub fn new(command: &'static str) -> Meta {
        Meta { command, params: Vec::new() }
    }

    pub fn push(&mut self, key: &'static str, json_value: String) {
        self.params.push((key, json_value));
    }

    pub fn json(&self) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "{{\"version\":{},\"command\":{},\"parameters\":{{",
            json_str(env!("CARGO_PKG_VERSION")),
            json_str(self.command)
        );
        for (i, (k, v)) in self.params.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{}:{}", json_str(k), v);
        }
        s.push_str("}}");
        s
    }

    /// One `#` comment line carrying the same information for CSV output.
    pub fn csv_comment(&self) -> String {
        let mut s = format!("# splitplane {} {}", env!("CARGO_PKG_VERSION"), self.command);
        for (k, v) in &self.params {
            let _ = write!(s, " {k}={v}");
        }
        s
    }
}

/// Renders grid polylines as a standalone SVG document.
///
/// The j axis points up, so image coordinates are emitted with the second
/// component negated. The null cone through the origin is drawn dashed.
/// Breaks recorded on a polyline become fresh `M` starts within its path.
pub fn svg_grid(lines: &[Polyline], meta: &Meta) -> String {
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for pl in lines {
        for &(t, x) in &pl.points {
            lo.0 = lo.0.min(t);
            lo.1 = lo.1.min(x);
            hi.0 = hi.0.max(t);
            hi.1 = hi.1.max(x);
        }
    }
    if !(lo.0 <= hi.0) {
        lo = (-1.0, -1.0);
        hi = (1.0, 1.0);
    }
    let span = ((hi.0 - lo.0).max(1e-9), (hi.1 - lo.1).max(1e-9));
    let margin = 0.05 * span.0.max(span.1);
    let view = (
        lo.0 - margin,
        -(hi.1 + margin),
        span.0 + 2.0 * margin,
        span.1 + 2.0 * margin,
    );
    let stroke = 0.004 * span.0.max(span.1);

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"720\">",
        num6(view.0),
        num6(view.1),
        num6(view.2),
        num6(view.3)
    );
    let _ = writeln!(s, "<!-- {} -->", meta.csv_comment().trim_start_matches("# "));

    // null cone of the image plane, dashed
    let reach = 2.0 * (view.2 + view.3);
    for sign in [1.0, -1.0] {
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999999\" \
             stroke-width=\"{}\" stroke-dasharray=\"{} {}\"/>",
            num6(-reach),
            num6(sign * reach),
            num6(reach),
            num6(-sign * reach),
            num6(0.5 * stroke),
            num6(3.0 * stroke),
            num6(3.0 * stroke),
        );
    }

    for pl in lines {
        let color = match pl.line.family {
            GridFamily::ConstT => "#1f77b4",
            GridFamily::ConstX => "#d62728",
        };
        if pl.points.is_empty() {
            continue;
        }
        let mut d = String::new();
        let mut next_break = pl.breaks.iter().peekable();
        for (i, &(t, x)) in pl.points.iter().enumerate() {
            let restart = i == 0 || next_break.peek() == Some(&&i);
            if next_break.peek() == Some(&&i) {
                next_break.next();
            }
            let _ = write!(
                d,
                "{}{} {}",
                if restart { "M" } else { " L" },
                num6(t),
                num6(-x)
            );
        }
        let _ = writeln!(
            s,
            "<path d=\"{d}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{}\"/>",
            num6(stroke)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use splitplane_core::grid::LineId;

    #[test]
    fn numbers_have_fixed_width_form() {
        assert_eq!(num(1.0), "1.0000000000000000e0");
        assert_eq!(num(-0.5), "-5.0000000000000000e-1");
        assert_eq!(num6(150.0), "1.500000e2");
    }

    #[test]
    fn meta_renders_to_json_and_comment() {
        let mut m = Meta::new("integrate");
        m.push("panels", "4096".into());
        m.push("expr", json_str("exp(h)"));
        let j = m.json();
        assert!(j.starts_with("{\"version\":\""));
        assert!(j.contains("\"command\":\"integrate\""));
        assert!(j.contains("\"panels\":4096"));
        assert!(j.ends_with("}}"));
        assert!(m.csv_comment().starts_with("# splitplane "));
    }

    #[test]
    fn svg_paths_restart_at_breaks() {
        let lines = vec![Polyline {
            line: LineId { family: GridFamily::ConstT, index: 0 },
            points: vec![(0.0, 0.0), (1.0, 0.0), (2.0, 1.0), (3.0, 1.0)],
            breaks: vec![2],
        }];
        let svg = svg_grid(&lines, &Meta::new("grid"));
        assert!(svg.starts_with("<svg "));
        assert!(svg.contains("stroke-dasharray"));
        let path = svg.lines().find(|l| l.starts_with("<path")).unwrap();
        assert_eq!(path.matches('M').count(), 2, "{path}");
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
