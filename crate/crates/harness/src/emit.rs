//! JSON, CSV and SVG output.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use trimetric::{Domain, Point};

use crate::report::ComparisonReport;

/// Compact JSON that writes every float with 17 significant digits.
struct SigDigits;

impl Formatter for SigDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Non-finite floats become `null`.
pub fn emit_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, SigDigits);
    value
        .serialize(&mut ser)
        .expect("serializing to memory cannot fail");
    String::from_utf8(out).expect("JSON is UTF-8")
}

const CSV_HEADER: [&str; 11] = [
    "suite_id",
    "check",
    "seed",
    "samples",
    "violations",
    "worst_margin",
    "tolerance",
    "lambda",
    "t",
    "informational",
    "elapsed",
];

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

/// One row per report after a fixed header.
pub fn emit_csv(reports: &[ComparisonReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in reports {
        w.write_record([
            r.suite_id.clone(),
            r.check.clone(),
            r.seed.to_string(),
            r.samples.to_string(),
            r.violations.to_string(),
            opt(r.worst_margin),
            format!("{:.16e}", r.tolerance),
            opt(r.lambda),
            opt(r.t),
            r.informational.to_string(),
            format!("{:.6}", r.elapsed),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}

/// Closed outline of a bounded planar domain.
pub fn domain_outline(domain: &Domain) -> Option<Vec<[f64; 2]>> {
    if let Some(p) = domain.as_polygon() {
        return Some(p.vertices().iter().map(|v| [v.x(), v.y()]).collect());
    }
    match domain {
        Domain::UnitBall { dim: 2 } => Some(
            (0..256)
                .map(|k| {
                    let t = std::f64::consts::TAU * k as f64 / 256.0;
                    [t.cos(), t.sin()]
                })
                .collect(),
        ),
        _ => None,
    }
}

fn num(x: f64) -> String {
    let s = format!("{:.6}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// `viewBox` of the outline with a 2% margin on each side, y pointing up.
pub fn view_box(outline: &[[f64; 2]]) -> String {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in outline {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let (w, h) = (hi[0] - lo[0], hi[1] - lo[1]);
    [lo[0] - 0.02 * w, -hi[1] - 0.02 * h, 1.04 * w, 1.04 * h]
        .iter()
        .map(|&v| num(v))
        .collect::<Vec<_>>()
        .join(" ")
}

/// SVG with the stroked domain outline and one filled `<path>` per chain.
pub fn emit_svg(outline: &[[f64; 2]], chains: &[Vec<Point>]) -> String {
    let pts: Vec<String> = outline
        .iter()
        .map(|p| format!("{},{}", num(p[0]), num(-p[1])))
        .collect();
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{}\">\n",
        view_box(outline)
    ));
    s.push_str(&format!(
        "  <polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.005\"/>\n",
        pts.join(" ")
    ));
    for chain in chains {
        let d: Vec<String> = chain
            .iter()
            .enumerate()
            .map(|(i, p)| {
                format!(
                    "{}{},{}",
                    if i == 0 { "M" } else { "L" },
                    num(p.x()),
                    num(-p.y())
                )
            })
            .collect();
        s.push_str(&format!(
            "  <path d=\"{} Z\" fill=\"steelblue\" fill-opacity=\"0.5\" stroke=\"steelblue\" stroke-width=\"0.003\"/>\n",
            d.join(" ")
        ));
    }
    s.push_str("</svg>\n");
    s
}
