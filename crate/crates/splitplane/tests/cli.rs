//! End-to-end checks of the `splitplane` binary: output formats, exit
//! codes, determinism, and a few numerical spot values.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_splitplane"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Pull `"key":<number>` out of flat JSON without a parser dependency.
fn json_number(json: &str, key: &str) -> f64 {
    let pat = format!("\"{key}\":");
    let start = json.find(&pat).unwrap_or_else(|| panic!("{key} in {json}")) + pat.len();
    let rest = &json[start..];
    let end = rest
        .find(|c: char| !(c.is_ascii_digit() || "+-.eE".contains(c)))
        .unwrap_or(rest.len());
    rest[..end].parse().expect("numeric field")
}

#[test]
fn eval_squares_a_point() {
    let out = stdout(&["eval", "--expr", "h^2", "--at", "2+1j", "--format", "json"]);
    // (2+j)^2 = 5+4j
    assert_eq!(json_number(&out, "t"), 2.0);
    let vals = &out[out.find("\"value\"").unwrap()..];
    assert_eq!(json_number(vals, "t"), 5.0);
    assert_eq!(json_number(vals, "x"), 4.0);
}

#[test]
fn eval_accepts_json_points_and_text_format() {
    let out = stdout(&["eval", "--expr", "exp(h)", "--at", r#"{"t":0,"x":0}"#]);
    assert_eq!(out.trim(), "1");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "integrate",
        "--expr",
        "conj(h)",
        "--contour",
        "circle:0,0,1",
        "--panels",
        "256",
    ];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b);
}

#[test]
fn integrate_conjugate_around_circle() {
    let out = stdout(&[
        "integrate",
        "--expr",
        "conj(h)",
        "--contour",
        "circle:0,0,1",
        "--panels",
        "4096",
    ]);
    let vals = &out[out.find("\"value\"").unwrap()..];
    assert!(json_number(vals, "t").abs() < 1e-12);
    assert!((json_number(vals, "x") - 2.0 * std::f64::consts::PI).abs() < 1e-9);
    assert!(json_number(&out, "est_error") < 1e-9);
}

#[test]
fn panels_env_var_sets_default_and_is_echoed() {
    let out = bin()
        .args(["integrate", "--expr", "h", "--contour", "circle:0,0,1"])
        .env("SPLITPLANE_PANELS", "128")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"panels\":128"), "metadata echoes the env default: {text}");
}

#[test]
fn invalid_panels_env_var_is_a_usage_error() {
    let out = bin()
        .args(["area", "--contour", "circle:0,0,1"])
        .env("SPLITPLANE_PANELS", "banana")
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("SPLITPLANE_PANELS"));
}

#[test]
fn explicit_panels_flag_beats_the_env_var() {
    let out = bin()
        .args([
            "integrate",
            "--expr",
            "h",
            "--contour",
            "circle:0,0,1",
            "--panels",
            "64",
        ])
        .env("SPLITPLANE_PANELS", "128")
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"panels\":64"));
}

#[test]
fn exit_codes_separate_usage_from_math() {
    // unknown flag: usage
    assert_eq!(code(&run(&["eval", "--expr", "h", "--no-such-flag"])), 2);
    // log outside the right wedge: math
    let out = run(&["eval", "--expr", "log(h)", "--at", "-1+0j"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    // malformed expression: usage, message names the function and offset
    let out = run(&["eval", "--expr", "foo(h)", "--at", "1+0j"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("foo") && err.contains("byte 0"), "{err}");
}

#[test]
fn grid_svg_has_cone_guides_and_closing_tag() {
    let out = stdout(&[
        "grid", "--expr", "exp(h)", "--lines-t", "3", "--lines-x", "3", "--samples", "9",
    ]);
    assert!(out.starts_with("<svg"));
    assert!(out.contains("stroke-dasharray"), "dashed cone diagonals present");
    assert!(out.matches("<path").count() >= 6, "one path per grid line");
    assert!(out.trim_end().ends_with("</svg>"));
}

#[test]
fn grid_csv_reports_runs_split_by_domain_breaks() {
    // log is defined on t > |x| only; a const-x line crossing the wedge
    // boundary must restart its run index
    let out = stdout(&[
        "grid", "--expr", "log(h)", "--t-range", "-2,2", "--x-range", "-1,1", "--lines-t",
        "1", "--lines-x", "3", "--samples", "33", "--format", "csv",
    ]);
    assert!(out.starts_with("# splitplane"));
    assert!(out.contains("family,index,run,t,x"));
    assert!(out.contains("const_x"));
}

#[test]
fn grid_residuals_vanish_for_holomorphic_square() {
    let out = stdout(&[
        "grid", "--expr", "h^2", "--residual", "--lines-t", "3", "--lines-x", "3",
        "--samples", "5",
    ]);
    for line in out.lines().skip(2) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols.len(), 4);
        assert!(cols[2].abs() < 1e-9 && cols[3].abs() < 1e-9, "{line}");
    }
}

#[test]
fn cauchy_reconstructs_exp() {
    let out = stdout(&[
        "cauchy", "--expr", "exp(h)", "--at", "0.5+0.2j", "--psi-max", "5", "--r-inner",
        "1e-8",
    ]);
    let vals = &out[out.find("\"value\"").unwrap()..];
    let e = 0.5f64.exp();
    assert!((json_number(vals, "t") - e * 0.2f64.cosh()).abs() < 1e-5);
    assert!((json_number(vals, "x") - e * 0.2f64.sinh()).abs() < 1e-5);
}

#[test]
fn residue_of_inverse_is_four_psi_on_the_crossing_pair() {
    let out = stdout(&["residue", "--alpha", "-1", "--psi-max", "2", "--format", "json"]);
    let vals = &out[out.find("\"value\"").unwrap()..];
    assert!(json_number(vals, "t").abs() < 1e-9);
    assert!((json_number(vals, "x") - 8.0).abs() < 1e-9);
}

#[test]
fn fractional_residue_needs_the_sector_shape() {
    let out = run(&["residue", "--alpha", "0.5", "--shape", "crossing"]);
    assert_eq!(code(&out), 1);
    let ok = run(&["residue", "--alpha", "0.5", "--shape", "sector", "--gl-panels", "16"]);
    assert_eq!(code(&ok), 0);
}

#[test]
fn quarter_circle_hyperbolic_length() {
    // sqrt(2) * (2 E(1/2) - K(1/2))
    let expected = 1.1981402347355922;
    let out = stdout(&["length", "--arc", "1-to-j", "--adaptive", "--tol", "1e-10"]);
    let got: f64 = out.trim().parse().unwrap();
    assert!((got - expected).abs() < 1e-8, "{got}");
    // the fixed-panel path converges more slowly across the cone crossing
    let out = stdout(&["length", "--arc", "1-to-j", "--panels", "4096"]);
    let got: f64 = out.trim().parse().unwrap();
    assert!((got - expected).abs() < 1e-5, "{got}");
}

#[test]
fn length_requires_exactly_one_path() {
    assert_eq!(code(&run(&["length"])), 2);
    let both = run(&["length", "--contour", "segment:0,0,1,0", "--arc", "1-to-j"]);
    assert_eq!(code(&both), 2);
}

#[test]
fn area_of_unit_circle() {
    let out = stdout(&["area", "--contour", "circle:0,0,1", "--panels", "4096"]);
    let got: f64 = out.trim().parse().unwrap();
    assert!((got - std::f64::consts::PI).abs() < 1e-6, "{got}");
}

#[test]
fn area_rejects_open_contours() {
    let out = run(&["area", "--contour", "segment:0,0,1,1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn wave_emits_a_csv_table() {
    let out = stdout(&["wave", "--radius", "1", "--phi0", "0.5", "--n", "4"]);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("# splitplane"));
    assert_eq!(lines.next().unwrap(), "t,x,phi");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 16);
    // on the boundary rho = radius the solution equals phi0
    let first: Vec<f64> = rows[0].split(',').map(|c| c.parse().unwrap()).collect();
    assert!((first[0].powi(2) - first[1].powi(2) - 1.0).abs() < 1e-12);
    assert!((first[2] - 0.5).abs() < 1e-12);
}

#[test]
fn verify_passes_for_the_log_solution() {
    let out = run(&["verify", "--radius", "1", "--phi0", "1"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"pass\":true"));
    assert!(json_number(&text, "interior_points") > 0.0);
}

#[test]
fn verify_fails_loudly_under_impossible_tolerances() {
    let out = run(&["verify", "--radius", "1", "--tol-boundary", "1e-30"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"pass\":false"));
}
