use std::io::{self, Write};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use splitplane::contour_spec::ContourSpec;
use splitplane::output::{json_point, json_str, num, svg_grid, Meta};
use splitplane::parse::ExprArg;
use splitplane_core::algebra::Region;
use splitplane_core::contour::{
    cauchy_value, contour_integral_with_error, curve_length, curve_length_adaptive,
    power_residue, region_area, Curve, RegularizationParams, ResidueShape,
};
use splitplane_core::grid::{map_grid, GridFamily, GridSpec};
use splitplane_core::holomorphy::{cr_residual, StencilSpec};
use splitplane_core::wave::{verify_solution, LogCircleSolution};
use splitplane_core::{DoubleNumber, Error};

const DEFAULT_MIDPOINT_PANELS: usize = 4096;

/// A point argument: either `t+xj` text or a JSON object `{"t":..,"x":..}`.
#[derive(Debug, Clone, Copy)]
struct Point(DoubleNumber);

impl FromStr for Point {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.starts_with('{') {
            let v: serde_json::Value =
                serde_json::from_str(s).map_err(|e| format!("bad JSON point: {e}"))?;
            let field = |k: &str| {
                v.get(k)
                    .and_then(serde_json::Value::as_f64)
                    .ok_or_else(|| format!("JSON point needs a numeric \"{k}\""))
            };
            Ok(Point(DoubleNumber::new(field("t")?, field("x")?)))
        } else {
            s.parse::<DoubleNumber>().map(Point).map_err(|e| e.to_string())
        }
    }
}

/// `lo,hi` pair.
#[derive(Debug, Clone, Copy)]
struct Range(f64, f64);

impl Range {
    fn pair(self) -> (f64, f64) {
        (self.0, self.1)
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s.split_once(',').ok_or("expected `lo,hi`")?;
        let lo = lo.trim().parse::<f64>().map_err(|_| "expected `lo,hi`".to_owned())?;
        let hi = hi.trim().parse::<f64>().map_err(|_| "expected `lo,hi`".to_owned())?;
        Ok(Range(lo, hi))
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SectorArg {
    I,
    Ii,
    Iii,
    Iv,
}

impl SectorArg {
    fn region(self) -> Region {
        match self {
            SectorArg::I => Region::QuadrantI,
            SectorArg::Ii => Region::QuadrantII,
            SectorArg::Iii => Region::QuadrantIII,
            SectorArg::Iv => Region::QuadrantIV,
        }
    }

    fn name(self) -> &'static str {
        match self {
            SectorArg::I => "i",
            SectorArg::Ii => "ii",
            SectorArg::Iii => "iii",
            SectorArg::Iv => "iv",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GridKindArg {
    Cartesian,
    PolarI,
    PolarIi,
    PolarIii,
    PolarIv,
}

impl GridKindArg {
    fn sector(self) -> Option<Region> {
        match self {
            GridKindArg::Cartesian => None,
            GridKindArg::PolarI => Some(Region::QuadrantI),
            GridKindArg::PolarIi => Some(Region::QuadrantII),
            GridKindArg::PolarIii => Some(Region::QuadrantIII),
            GridKindArg::PolarIv => Some(Region::QuadrantIV),
        }
    }

    fn name(self) -> &'static str {
        match self {
            GridKindArg::Cartesian => "cartesian",
            GridKindArg::PolarI => "polar-i",
            GridKindArg::PolarIi => "polar-ii",
            GridKindArg::PolarIii => "polar-iii",
            GridKindArg::PolarIv => "polar-iv",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ShapeArg {
    Sector,
    Crossing,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Fmt {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "splitplane",
    version,
    about = "Analysis toolkit over double (split-complex) numbers"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression at one or more points
    Eval {
        /// expression in h, e.g. `exp(h)*conj(h) - 1`
        #[arg(long)]
        expr: ExprArg,
        /// point like `0.5+0.1j` or `{"t":0.5,"x":0.1}`; repeatable
        #[arg(long = "at", required = true, allow_hyphen_values = true)]
        at: Vec<Point>,
        #[arg(long, value_enum, default_value_t = Fmt::Text)]
        format: Fmt,
    },
    /// Map a coordinate grid through an expression and render the image
    Grid {
        #[arg(long)]
        expr: ExprArg,
        #[arg(long, value_enum, default_value_t = GridKindArg::Cartesian)]
        kind: GridKindArg,
        /// `lo,hi` for t (the radial coordinate for polar kinds)
        #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
        t_range: Range,
        /// `lo,hi` for x (the angular coordinate for polar kinds)
        #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
        x_range: Range,
        #[arg(long, default_value_t = 9)]
        lines_t: usize,
        #[arg(long, default_value_t = 9)]
        lines_x: usize,
        #[arg(long, default_value_t = 129)]
        samples: usize,
        /// svg draws the image plane; csv lists the polyline points
        #[arg(long, default_value = "svg", value_parser = ["svg", "csv"])]
        format: String,
        /// emit structure-equation residuals at the source samples as CSV
        /// `t,x,r1,r2` instead of the image
        #[arg(long)]
        residual: bool,
        /// relative stencil step for --residual
        #[arg(long, default_value_t = 1e-5)]
        step: f64,
    },
    /// Integrate an expression along a contour (midpoint rule)
    Integrate {
        #[arg(long)]
        expr: ExprArg,
        /// e.g. `circle:0,0,1`, `segment:0,0,2,1`, `polygon:...`, `gamma1:...`
        #[arg(long)]
        contour: ContourSpec,
        /// midpoint panels per piece; default 4096 or SPLITPLANE_PANELS
        #[arg(long)]
        panels: Option<usize>,
        #[arg(long, value_enum, default_value_t = Fmt::Json)]
        format: Fmt,
    },
    /// Reconstruct a function value from a pinched sector contour
    Cauchy {
        #[arg(long)]
        expr: ExprArg,
        #[arg(long = "at", allow_hyphen_values = true)]
        at: Point,
        #[arg(long, default_value_t = 5.0)]
        psi_max: f64,
        #[arg(long, default_value_t = 1e-8)]
        r_inner: f64,
        #[arg(long, value_enum, default_value_t = SectorArg::I)]
        sector: SectorArg,
        /// 16-point Gauss-Legendre panels per piece
        #[arg(long, default_value_t = 64)]
        gl_panels: usize,
        #[arg(long, value_enum, default_value_t = Fmt::Json)]
        format: Fmt,
    },
    /// Integrate h^alpha around the origin on a regularized shape
    Residue {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 2.0)]
        psi_max: f64,
        #[arg(long, default_value_t = 1e-8)]
        r_inner: f64,
        /// sector: closed loop in sector I (any real alpha). crossing:
        /// mirrored pinched pair in sectors I and III (integer alpha)
        #[arg(long, value_enum, default_value_t = ShapeArg::Crossing)]
        shape: ShapeArg,
        #[arg(long, default_value_t = 8)]
        gl_panels: usize,
        #[arg(long, value_enum, default_value_t = Fmt::Json)]
        format: Fmt,
    },
    /// Hyperbolic length of a contour
    #[command(group(ArgGroup::new("path").required(true).args(["contour", "arc"])))]
    Length {
        #[arg(long)]
        contour: Option<ContourSpec>,
        /// named arc: the Euclidean quarter unit circle from 1 to j
        #[arg(long, value_parser = ["1-to-j"])]
        arc: Option<String>,
        #[arg(long)]
        panels: Option<usize>,
        /// adaptive interval halving instead of fixed panels
        #[arg(long)]
        adaptive: bool,
        /// absolute tolerance for --adaptive
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Fmt::Text)]
        format: Fmt,
    },
    /// Oriented Euclidean area enclosed by a closed contour
    Area {
        #[arg(long)]
        contour: ContourSpec,
        #[arg(long)]
        panels: Option<usize>,
        #[arg(long, value_enum, default_value_t = Fmt::Text)]
        format: Fmt,
    },
    /// Sample the logarithmic wave solution on a polar grid (CSV t,x,phi)
    Wave {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi0: f64,
        #[arg(long, default_value = "1,3", allow_hyphen_values = true)]
        rho_range: Range,
        #[arg(long, default_value = "-2,2", allow_hyphen_values = true)]
        psi_range: Range,
        /// grid resolution per axis
        #[arg(long, default_value_t = 16)]
        n: usize,
    },
    /// Check the logarithmic wave solution against its boundary data and
    /// the wave equation; exits 1 when the check fails
    Verify {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi0: f64,
        #[arg(long, default_value_t = 1000)]
        boundary_samples: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol_boundary: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol_box: f64,
        /// relative stencil step for the interior probe
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
    },
}

enum CliFail {
    Math(String),
    Usage(String),
    /// stdout went away; finish quietly like any pipeline-friendly tool
    Pipe,
}

impl From<Error> for CliFail {
    fn from(e: Error) -> Self {
        CliFail::Math(e.to_string())
    }
}

impl From<io::Error> for CliFail {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            CliFail::Pipe
        } else {
            CliFail::Math(format!("io error: {e}"))
        }
    }
}

macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(CliFail::from)?
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out)
        .and_then(|code| out.flush().map(|()| code).map_err(CliFail::from));
    match result {
        Ok(code) => code,
        Err(CliFail::Pipe) => ExitCode::SUCCESS,
        Err(CliFail::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliFail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn resolve_panels(explicit: Option<usize>) -> Result<usize, CliFail> {
    if let Some(p) = explicit {
        return Ok(p.max(1));
    }
    match std::env::var("SPLITPLANE_PANELS") {
        Ok(v) => match v.parse::<usize>() {
            Ok(p) if p > 0 => Ok(p),
            _ => Err(CliFail::Usage(
                "SPLITPLANE_PANELS must be a positive integer".to_owned(),
            )),
        },
        Err(_) => Ok(DEFAULT_MIDPOINT_PANELS),
    }
}

fn level(range: (f64, f64), i: usize, n: usize) -> f64 {
    if n > 1 {
        range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64
    } else {
        range.0
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<ExitCode, CliFail> {
    match cli.cmd {
        Cmd::Eval { expr, at, format } => {
            let mut meta = Meta::new("eval");
            meta.push("expr", json_str(&expr.src));
            match format {
                Fmt::Text => {
                    for Point(h) in &at {
                        outln!(out, "{}", expr.expr.eval(*h)?);
                    }
                }
                Fmt::Json => {
                    let mut rows = Vec::with_capacity(at.len());
                    for Point(h) in &at {
                        let v = expr.expr.eval(*h)?;
                        rows.push(format!(
                            "{{\"at\":{},\"value\":{}}}",
                            json_point(*h),
                            json_point(v)
                        ));
                    }
                    outln!(out, "{{\"metadata\":{},\"results\":[{}]}}", meta.json(), rows.join(","));
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Grid {
            expr,
            kind,
            t_range,
            x_range,
            lines_t,
            lines_x,
            samples,
            format,
            residual,
            step,
        } => {
            let mut meta = Meta::new("grid");
            meta.push("expr", json_str(&expr.src));
            meta.push("kind", json_str(kind.name()));
            meta.push("t_range", format!("[{},{}]", num(t_range.0), num(t_range.1)));
            meta.push("x_range", format!("[{},{}]", num(x_range.0), num(x_range.1)));
            meta.push("lines_t", lines_t.to_string());
            meta.push("lines_x", lines_x.to_string());
            meta.push("samples", samples.to_string());

            if residual {
                meta.push("step", num(step));
                if lines_t < 1 || lines_x < 1 || samples < 2 {
                    return Err(CliFail::Math(
                        "grid needs lines and at least two samples".to_owned(),
                    ));
                }
                let spec = StencilSpec::with_step(step);
                outln!(out, "{}", meta.csv_comment());
                outln!(out, "t,x,r1,r2");
                let fams = [
                    (t_range.pair(), lines_t, x_range.pair()),
                    (x_range.pair(), lines_x, t_range.pair()),
                ];
                for (fam, (fixed_range, n_lines, along_range)) in fams.iter().enumerate() {
                    for i in 0..*n_lines {
                        let c_fixed = level(*fixed_range, i, *n_lines);
                        for k in 0..samples {
                            let c_along = level(*along_range, k, samples);
                            let (u, v) = if fam == 0 { (c_fixed, c_along) } else { (c_along, c_fixed) };
                            let h = match kind.sector() {
                                None => DoubleNumber::new(u, v),
                                Some(sector) => match DoubleNumber::from_polar(sector, u, v) {
                                    Ok(h) => h,
                                    Err(_) => continue,
                                },
                            };
                            if let Ok((r1, r2)) = cr_residual(&expr.expr, h, &spec) {
                                outln!(out, "{},{},{},{}", num(h.t), num(h.x), num(r1), num(r2));
                            }
                        }
                    }
                }
                return Ok(ExitCode::SUCCESS);
            }

            let spec = match kind.sector() {
                None => GridSpec::cartesian(t_range.pair(), x_range.pair(), lines_t, lines_x),
                Some(sector) => {
                    GridSpec::polar(sector, t_range.pair(), x_range.pair(), lines_t, lines_x)
                }
            }
            .with_samples(samples);
            let lines = map_grid(&expr.expr, &spec)?;
            match format.as_str() {
                "svg" => write!(out, "{}", svg_grid(&lines, &meta)).map_err(CliFail::from)?,
                _ => {
                    outln!(out, "{}", meta.csv_comment());
                    outln!(out, "family,index,run,t,x");
                    for pl in &lines {
                        let fam = match pl.line.family {
                            GridFamily::ConstT => "const_t",
                            GridFamily::ConstX => "const_x",
                        };
                        let mut run = 0usize;
                        let mut next_break = pl.breaks.iter().peekable();
                        for (i, &(t, x)) in pl.points.iter().enumerate() {
                            if next_break.peek() == Some(&&i) {
                                next_break.next();
                                run += 1;
                            }
                            outln!(out, "{fam},{},{run},{},{}", pl.line.index, num(t), num(x));
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Integrate { expr, contour, panels, format } => {
            let panels = resolve_panels(panels)?;
            let c = contour.to_contour(panels)?;
            let (value, est_error) = contour_integral_with_error(&expr.expr, &c)?;
            let mut meta = Meta::new("integrate");
            meta.push("expr", json_str(&expr.src));
            meta.push("contour", json_str(&contour.describe()));
            meta.push("panels", panels.to_string());
            match format {
                Fmt::Text => outln!(out, "{value}"),
                Fmt::Json => outln!(out, 
                    "{{\"metadata\":{},\"value\":{},\"est_error\":{}}}",
                    meta.json(),
                    json_point(value),
                    num(est_error)
                ),
            }
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Cauchy { expr, at, psi_max, r_inner, sector, gl_panels, format } => {
            let reg = RegularizationParams::new(psi_max, r_inner)?;
            let value = cauchy_value(&expr.expr, at.0, &reg, sector.region(), gl_panels)?;
            let mut meta = Meta::new("cauchy");
            meta.push("expr", json_str(&expr.src));
            meta.push("at", json_point(at.0));
            meta.push("psi_max", num(psi_max));
            meta.push("r_inner", num(r_inner));
            meta.push("sector", json_str(sector.name()));
            meta.push("gl_panels", gl_panels.to_string());
            match format {
                Fmt::Text => outln!(out, "{value}"),
                Fmt::Json => outln!(out, 
                    "{{\"metadata\":{},\"value\":{}}}",
                    meta.json(),
                    json_point(value)
                ),
            }
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Residue { alpha, psi_max, r_inner, shape, gl_panels, format } => {
            let reg = RegularizationParams::new(psi_max, r_inner)?;
            let (shape_kind, shape_name) = match shape {
                ShapeArg::Sector => (ResidueShape::SectorLoop, "sector"),
                ShapeArg::Crossing => (ResidueShape::CrossingPair, "crossing"),
            };
            let value = power_residue(alpha, &reg, shape_kind, gl_panels)?;
            let mut meta = Meta::new("residue");
            meta.push("alpha", num(alpha));
            meta.push("psi_max", num(psi_max));
            meta.push("r_inner", num(r_inner));
            meta.push("shape", json_str(shape_name));
            meta.push("gl_panels", gl_panels.to_string());
            match format {
                Fmt::Text => outln!(out, "{value}"),
                Fmt::Json => outln!(out, 
                    "{{\"metadata\":{},\"value\":{}}}",
                    meta.json(),
                    json_point(value)
                ),
            }
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Length { contour, arc, panels, adaptive, tol, format } => {
            let panels = resolve_panels(panels)?;
            let mut meta = Meta::new("length");
            let curves: Vec<Curve> = if let Some(arc) = arc {
                meta.push("arc", json_str(&arc));
                vec![Curve::euclidean_circle_arc(
                    DoubleNumber::ZERO,
                    1.0,
                    0.0,
                    std::f64::consts::FRAC_PI_2,
                    panels,
                )]
            } else {
                let spec = contour.expect("clap group guarantees one of contour/arc");
                meta.push("contour", json_str(&spec.describe()));
                spec.to_contour(panels)?.pieces().to_vec()
            };
            meta.push("panels", panels.to_string());
            meta.push("adaptive", adaptive.to_string());
            let length: f64 = if adaptive {
                meta.push("tol", num(tol));
                let per_piece = tol / curves.len() as f64;
                curves.iter().map(|c| curve_length_adaptive(c, per_piece)).sum()
            } else {
                curves.iter().map(curve_length).sum()
            };
            match format {
                Fmt::Text => outln!(out, "{}", num(length)),
                Fmt::Json => outln!(out, 
                    "{{\"metadata\":{},\"length\":{}}}",
                    meta.json(),
                    num(length)
                ),
            }
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Area { contour, panels, format } => {
            let panels = resolve_panels(panels)?;
            let area = region_area(&contour.to_contour(panels)?)?;
            let mut meta = Meta::new("area");
            meta.push("contour", json_str(&contour.describe()));
            meta.push("panels", panels.to_string());
            match format {
                Fmt::Text => outln!(out, "{}", num(area)),
                Fmt::Json => {
                    outln!(out, "{{\"metadata\":{},\"area\":{}}}", meta.json(), num(area))
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Wave { radius, phi0, rho_range, psi_range, n } => {
            let sol = LogCircleSolution::new(radius, phi0)?;
            if n < 1 {
                return Err(CliFail::Math("wave grid needs n >= 1".to_owned()));
            }
            let mut meta = Meta::new("wave");
            meta.push("radius", num(radius));
            meta.push("phi0", num(phi0));
            meta.push("rho_range", format!("[{},{}]", num(rho_range.0), num(rho_range.1)));
            meta.push("psi_range", format!("[{},{}]", num(psi_range.0), num(psi_range.1)));
            meta.push("n", n.to_string());
            outln!(out, "{}", meta.csv_comment());
            outln!(out, "t,x,phi");
            for i in 0..n {
                let rho = level(rho_range.pair(), i, n);
                for k in 0..n {
                    let psi = level(psi_range.pair(), k, n);
                    let (t, x) = (rho * psi.cosh(), rho * psi.sinh());
                    let phi = sol.phi(t, x)?;
                    outln!(out, "{},{},{}", num(t), num(x), num(phi));
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Verify { radius, phi0, boundary_samples, tol_boundary, tol_box, step } => {
            let sol = LogCircleSolution::new(radius, phi0)?;
            let spec = StencilSpec::with_step(step);
            let rep = verify_solution(&sol, boundary_samples, tol_boundary, tol_box, &spec)?;
            let mut meta = Meta::new("verify");
            meta.push("radius", num(radius));
            meta.push("phi0", num(phi0));
            meta.push("boundary_samples", boundary_samples.to_string());
            meta.push("tol_boundary", num(tol_boundary));
            meta.push("tol_box", num(tol_box));
            meta.push("step", num(step));
            outln!(out, 
                "{{\"metadata\":{},\"boundary_max_dev\":{},\"interior_max_box_residual\":{},\"interior_points\":{},\"pass\":{}}}",
                meta.json(),
                num(rep.boundary_max_dev),
                num(rep.interior_max_box_residual),
                rep.interior_points,
                rep.pass
            );
            Ok(if rep.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
