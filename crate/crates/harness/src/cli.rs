//! Command-line front end. Exit codes: 0 ok, 1 violated check, 2 usage or
//! input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use trimetric::balls::{formula_verdict, is_smooth, tessellate_ball_boundary, BallSpec};
use trimetric::metrics::{j_metric, p_quantity, rho_ball, rho_half_space};
use trimetric::moebius::explore_l;
use trimetric::qc::{
    corollary_coefficient, eta_star_upper, phi_bounds, phi_exact_2d, phi_inv_bounds, schwarz_bound,
    thm1_bound, BoundValue, QcParams,
};
use trimetric::solver::{s_metric, s_oracle, sector_flag_check, v_numeric};
use trimetric::{Domain, Point, SolverConfig};

use crate::emit::{domain_outline, emit_csv, emit_json, emit_svg};
use crate::parse::{domain_label, parse_domain, parse_point};
use crate::suites::{run_suite, SuiteSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_SUITE_SAMPLES: u64 = 10_000;
const DEFAULT_EXPLORE_BUDGET: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(name = "trimetric", version, about = "Triangular ratio metric toolkit")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print CSV (check only).
    #[arg(long, global = true)]
    csv: bool,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Samples per check, or the explore-L budget.
    #[arg(long, global = true)]
    samples: Option<u64>,
    /// Override every check tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Metric {
    S,
    J,
    P,
    V,
    Rho,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one metric at a pair of points.
    Dist {
        #[arg(long)]
        domain: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, value_enum, default_value_t = Metric::S)]
        metric: Metric,
        /// Tabulation count for solver-backed values.
        #[arg(long, default_value_t = 1000)]
        m: usize,
    },
    /// Smoothness verdict and boundary of an s-ball.
    Ball {
        #[arg(long)]
        domain: String,
        #[arg(long, allow_hyphen_values = true)]
        center: String,
        #[arg(long)]
        r: f64,
        /// Write the ball and domain outline to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Boundary points of the tessellation.
        #[arg(long, default_value_t = 256)]
        m: usize,
    },
    /// Run inequality suites.
    Check {
        /// S1..S13 or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        domain: Option<String>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        t: Option<f64>,
    },
    /// Estimate the distortion constant of disk automorphisms.
    #[command(name = "explore-L")]
    ExploreL {
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.25, 0.5, 0.75])]
        a: Vec<f64>,
    },
    /// Distortion bounds for K-quasiregular maps.
    Qc {
        #[arg(long)]
        k: f64,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Argument of the distortion function.
        #[arg(long, default_value_t = 0.5)]
        r: f64,
        /// Value of s for the four distortion cases.
        #[arg(long)]
        s: Option<f64>,
    },
    /// Compare the closed form of s with the boundary-sampling oracle.
    Oracle {
        #[arg(long)]
        domain: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 1000)]
        m: usize,
    },
}

type CmdResult = Result<i32, String>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::Dist {
            domain,
            x,
            y,
            metric,
            m,
        } => dist(cli, out, domain, x, y, *metric, *m),
        Command::Ball {
            domain,
            center,
            r,
            svg,
            m,
        } => ball(cli, out, domain, center, *r, svg.as_ref(), *m),
        Command::Check {
            suite,
            domain,
            lambda,
            t,
        } => check(cli, out, suite, domain.as_deref(), *lambda, *t),
        Command::ExploreL { a } => explore(cli, out, a),
        Command::Qc { k, n, r, s } => qc(cli, out, *k, *n, *r, *s),
        Command::Oracle { domain, x, y, m } => oracle(cli, out, domain, x, y, *m),
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn say(out: &mut dyn Write, text: &str) -> Result<(), String> {
    writeln!(out, "{text}").map_err(e)
}

fn coords(p: &Point) -> String {
    p.coords()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn solver(m: usize) -> Result<SolverConfig, String> {
    SolverConfig::with_m(m).map_err(e)
}

fn dist(
    cli: &Cli,
    out: &mut dyn Write,
    domain: &str,
    x: &str,
    y: &str,
    metric: Metric,
    m: usize,
) -> CmdResult {
    let d = parse_domain(domain).map_err(e)?;
    let (x, y) = (parse_point(x).map_err(e)?, parse_point(y).map_err(e)?);
    let cfg = solver(m)?;
    let (value, witness, method) = match metric {
        Metric::S => {
            let r = s_metric(&d, &x, &y, &cfg).map_err(e)?;
            (r.value, Some(r.witness), r.method.as_str())
        }
        Metric::J => (j_metric(&d, &x, &y).map_err(e)?, None, "closed_form"),
        Metric::P => (p_quantity(&d, &x, &y).map_err(e)?, None, "closed_form"),
        Metric::V => (
            v_numeric(&d, &x, &y, &cfg).map_err(e)?,
            None,
            "tabulated_refined",
        ),
        Metric::Rho => {
            d.require_interior(&x).map_err(e)?;
            d.require_interior(&y).map_err(e)?;
            let v = match d {
                Domain::UnitBall { .. } => rho_ball(&x, &y),
                Domain::HalfSpace { .. } => rho_half_space(&x, &y),
                _ => {
                    return Err(format!(
                        "rho is only available on the unit ball and the half-space, not {domain}"
                    ))
                }
            };
            (v.map_err(e)?, None, "closed_form")
        }
    };
    if cli.json {
        let w = witness.as_ref().map(|p| p.coords().to_vec());
        let doc = json!({
            "domain": domain_label(&d),
            "metric": format!("{metric:?}").to_lowercase(),
            "x": x.coords(),
            "y": y.coords(),
            "value": value,
            "witness": w,
            "method": method,
        });
        say(out, &emit_json(&doc))?;
    } else {
        say(out, &value.to_string())?;
        if let Some(w) = witness {
            say(out, &format!("witness {}", coords(&w)))?;
        }
        say(out, &format!("method {method}"))?;
    }
    Ok(EXIT_OK)
}

fn ball(
    cli: &Cli,
    out: &mut dyn Write,
    domain: &str,
    center: &str,
    r: f64,
    svg: Option<&PathBuf>,
    m: usize,
) -> CmdResult {
    let d = parse_domain(domain).map_err(e)?;
    let c = parse_point(center).map_err(e)?;
    let spec = BallSpec::new(d.clone(), c, r).map_err(e)?;
    let structural = is_smooth(&spec).map_err(e)?;
    let formula = match d {
        Domain::TriangleT | Domain::Rectangle { .. } => Some(formula_verdict(&spec).map_err(e)?),
        _ => None,
    };
    let disks: Vec<Value> = spec
        .disks()
        .map_err(e)?
        .iter()
        .map(|k| json!({"center": k.center.coords(), "radius": k.radius}))
        .collect();
    if let Some(path) = svg {
        let outline =
            domain_outline(&d).ok_or_else(|| format!("no outline for domain {domain}"))?;
        let chain = tessellate_ball_boundary(&spec, m).map_err(e)?;
        std::fs::write(path, emit_svg(&outline, &[chain]))
            .map_err(|err| format!("{}: {err}", path.display()))?;
    }
    if cli.json {
        let thresholds = formula.as_ref().map(|f| {
            f.thresholds
                .iter()
                .map(|(n, v)| (n.to_string(), json!(v)))
                .collect::<serde_json::Map<_, _>>()
        });
        let doc = json!({
            "domain": domain_label(&d),
            "center": spec.center.coords(),
            "r": r,
            "smooth": structural.smooth,
            "formula_smooth": formula.as_ref().map(|f| f.smooth),
            "active_branch": formula.as_ref().and_then(|f| f.active_branch),
            "degenerate": formula.as_ref().map(|f| f.degenerate),
            "thresholds": thresholds,
            "containing_disk": structural.containing_disk,
            "disks": disks,
        });
        say(out, &emit_json(&doc))?;
    } else {
        say(out, &format!("smooth {}", structural.smooth))?;
        if let Some(f) = &formula {
            for (n, v) in &f.thresholds {
                say(out, &format!("{n} {v}"))?;
            }
            if let Some(n) = f.active_branch {
                say(out, &format!("active {n}"))?;
            }
            if f.degenerate {
                say(out, "degenerate locus")?;
            }
        }
        say(out, &format!("disks {}", disks.len()))?;
        if let Some(path) = svg {
            say(out, &format!("wrote {}", path.display()))?;
        }
    }
    Ok(EXIT_OK)
}

fn check(
    cli: &Cli,
    out: &mut dyn Write,
    suite: &str,
    domain: Option<&str>,
    lambda: Option<f64>,
    t: Option<f64>,
) -> CmdResult {
    let mut spec = SuiteSpec::new(
        suite,
        cli.samples.unwrap_or(DEFAULT_SUITE_SAMPLES),
        cli.seed,
    );
    spec.domain = domain.map(parse_domain).transpose().map_err(e)?;
    spec.lambda = lambda;
    spec.t = t;
    spec.tolerance = cli.tol;
    let reports = run_suite(&spec).map_err(e)?;
    if cli.json {
        say(out, &emit_json(&reports))?;
    } else if cli.csv {
        write!(out, "{}", emit_csv(&reports)).map_err(e)?;
    } else {
        for r in &reports {
            let status = if r.informational {
                "INFO"
            } else if r.failed() {
                "FAIL"
            } else {
                "PASS"
            };
            let param = match (r.lambda, r.t) {
                (Some(l), _) => format!(" lambda={l}"),
                (_, Some(t)) => format!(" t={t}"),
                _ => String::new(),
            };
            let margin = r.worst_margin.map_or("-".into(), |m| format!("{m:.3e}"));
            say(
                out,
                &format!(
                    "{status} {} {}{param}: samples={} violations={} worst_margin={margin}",
                    r.suite_id, r.check, r.samples, r.violations
                ),
            )?;
        }
    }
    Ok(if reports.iter().any(|r| r.failed()) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    })
}

fn explore(cli: &Cli, out: &mut dyn Write, a: &[f64]) -> CmdResult {
    let budget = cli.samples.unwrap_or(DEFAULT_EXPLORE_BUDGET) as usize;
    let mut docs = Vec::new();
    for &a in a {
        let est = explore_l(a, budget, cli.seed).map_err(e)?;
        let finding = est.sampled_sup > 1.0 + a + 0.01;
        if cli.json {
            docs.push(json!({
                "a": est.a,
                "budget": est.budget,
                "seed": est.seed,
                "lower_witnessed": est.lower_witnessed,
                "sampled_sup": est.sampled_sup,
                "random_best": est.random_best,
                "conjectured": 1.0 + a,
                "finding": finding,
                "witness": {
                    "x": est.witness_x.coords(),
                    "y": est.witness_y.coords(),
                    "rotation": est.witness_rotation,
                },
            }));
        } else {
            say(
                out,
                &format!(
                    "a={a} sampled_sup={:.9} random_best={:.9} lower_witnessed={:.9} 1+a={}{}",
                    est.sampled_sup,
                    est.random_best,
                    est.lower_witnessed,
                    1.0 + a,
                    if finding {
                        " FINDING: exceeds 1+a+0.01"
                    } else {
                        ""
                    }
                ),
            )?;
        }
    }
    if cli.json {
        say(out, &emit_json(&docs))?;
    }
    Ok(EXIT_OK)
}

fn bound_json(b: &BoundValue) -> Value {
    json!({"value": b.value, "kind": format!("{:?}", b.kind), "formula": b.formula})
}

fn qc(cli: &Cli, out: &mut dyn Write, k: f64, n: usize, r: f64, s: Option<f64>) -> CmdResult {
    let p = QcParams::new(k, n).map_err(e)?;
    let mut rows: Vec<(String, BoundValue)> = Vec::new();
    let (lo, hi) = phi_bounds(&p, r).map_err(e)?;
    rows.push(("phi_lower".into(), lo));
    rows.push(("phi_upper".into(), hi));
    let (ilo, ihi) = phi_inv_bounds(&p, r).map_err(e)?;
    rows.push(("phi_inv_lower".into(), ilo));
    rows.push(("phi_inv_upper".into(), ihi));
    rows.push(("eta_star".into(), eta_star_upper(k, n).map_err(e)?));
    if r < 1.0 {
        rows.push(("schwarz".into(), schwarz_bound(&p, r).map_err(e)?));
    }
    if let Some(s) = s {
        for case in 1..=4u8 {
            rows.push((format!("case{case}"), thm1_bound(case, &p, s).map_err(e)?));
        }
    }
    let exact = if n == 2 {
        Some(phi_exact_2d(k, r).map_err(e)?)
    } else {
        None
    };
    let coef = corollary_coefficient(k).map_err(e)?;
    if cli.json {
        let mut doc = serde_json::Map::new();
        doc.insert("k".into(), json!(k));
        doc.insert("n".into(), json!(n));
        doc.insert("r".into(), json!(r));
        doc.insert("alpha".into(), json!(p.alpha));
        doc.insert("lambda_hi".into(), json!(p.lambda_hi));
        doc.insert("phi".into(), json!(exact));
        doc.insert("corollary_coefficient".into(), json!(coef));
        for (name, b) in &rows {
            doc.insert(name.clone(), bound_json(b));
        }
        say(out, &emit_json(&Value::Object(doc)))?;
    } else {
        say(out, &format!("alpha {}", p.alpha))?;
        if let Some(v) = exact {
            say(out, &format!("phi {v}"))?;
        }
        for (name, b) in &rows {
            say(
                out,
                &format!("{name} {} {:?} {}", b.value, b.kind, b.formula),
            )?;
        }
        say(out, &format!("corollary_coefficient {coef}"))?;
    }
    Ok(EXIT_OK)
}

fn oracle(cli: &Cli, out: &mut dyn Write, domain: &str, x: &str, y: &str, m: usize) -> CmdResult {
    let d = parse_domain(domain).map_err(e)?;
    let (x, y) = (parse_point(x).map_err(e)?, parse_point(y).map_err(e)?);
    let cfg = solver(m)?;
    let closed = s_metric(&d, &x, &y, &cfg).map_err(e)?;
    let oracle = s_oracle(&d, &x, &y, &cfg).map_err(e)?;
    let flagged = match d {
        Domain::Sector { alpha } => {
            Some(sector_flag_check(alpha, &x, &y, &cfg).map_err(e)?.flagged)
        }
        _ => None,
    };
    let diff = (closed.value - oracle.value).abs();
    if cli.json {
        let doc = json!({
            "domain": domain_label(&d),
            "s": closed.value,
            "method": closed.method.as_str(),
            "witness": closed.witness.coords(),
            "oracle": oracle.value,
            "oracle_witness": oracle.witness.coords(),
            "difference": diff,
            "sector_flag": flagged,
        });
        say(out, &emit_json(&doc))?;
    } else {
        say(
            out,
            &format!(
                "s {} ({}) witness {}",
                closed.value,
                closed.method.as_str(),
                coords(&closed.witness)
            ),
        )?;
        say(
            out,
            &format!(
                "oracle {} witness {}",
                oracle.value,
                coords(&oracle.witness)
            ),
        )?;
        say(out, &format!("difference {diff:.3e}"))?;
        if let Some(f) = flagged {
            say(out, &format!("sector_flag {f}"))?;
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["trimetric"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn dist_on_rectangle() {
        let (code, out, _) = run_str(&[
            "dist", "--domain", "rect:2,1", "--x", "0,0.5", "--y", "0,-0.5", "--metric", "s",
        ]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().next().unwrap(), "0.5");
        assert!(out.contains("witness"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(
            run_str(&["dist", "--domain", "blob", "--x", "0,0", "--y", "1,1"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["check", "--suite", "S99"]).0, EXIT_USAGE);
        assert_eq!(
            run_str(&["dist", "--domain", "disk", "--x", "2,0", "--y", "0,0"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn informational_checks_do_not_fail() {
        assert_eq!(
            run_str(&["check", "--suite", "S12", "--samples", "20", "--tol", "-1"]).0,
            EXIT_USAGE
        );
        let (code, out, _) = run_str(&["check", "--suite", "S6", "--samples", "50"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("INFO"));
    }

    #[test]
    fn check_json_and_csv() {
        let (code, out, _) = run_str(&["check", "--suite", "S12", "--samples", "20", "--json"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v[0]["suite_id"], "S12");
        let (_, out, _) = run_str(&["check", "--suite", "S12", "--samples", "20", "--csv"]);
        assert_eq!(out.lines().count(), 2);
    }
}
