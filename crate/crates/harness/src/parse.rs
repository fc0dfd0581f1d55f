//! Command-line grammar for domains and points.

use thiserror::Error;
use trimetric::{Domain, Point};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("unknown domain `{0}` (expected hp, disk, tri, rect:a,b, sector:alpha, poly:x,y;..., punctured:px,py)")]
    UnknownDomain(String),
    #[error("bad number `{0}`")]
    Number(String),
    #[error("expected {expected} coordinates in `{text}`")]
    Arity { expected: usize, text: String },
    #[error(transparent)]
    Domain(#[from] trimetric::Error),
}

fn numbers(text: &str) -> Result<Vec<f64>, ParseError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| ParseError::Number(t.to_string()))
        })
        .collect()
}

fn exactly(text: &str, n: usize) -> Result<Vec<f64>, ParseError> {
    let v = numbers(text)?;
    if v.len() != n {
        return Err(ParseError::Arity {
            expected: n,
            text: text.into(),
        });
    }
    Ok(v)
}

/// `x1,x2[,...]`.
pub fn parse_point(text: &str) -> Result<Point, ParseError> {
    let v = numbers(text)?;
    if v.len() < 2 {
        return Err(ParseError::Arity {
            expected: 2,
            text: text.into(),
        });
    }
    Ok(Point::new(v)?)
}

pub fn parse_domain(text: &str) -> Result<Domain, ParseError> {
    let (head, rest) = match text.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (text, None),
    };
    let domain = match (head, rest) {
        ("hp", None) => Domain::half_plane(),
        ("disk", None) => Domain::unit_disk(),
        ("tri", None) => Domain::TriangleT,
        ("rect", Some(r)) => {
            let v = exactly(r, 2)?;
            Domain::rectangle(v[0], v[1])?
        }
        ("sector", Some(r)) => Domain::sector(exactly(r, 1)?[0])?,
        ("poly", Some(r)) => {
            let vs = r
                .split(';')
                .map(|p| exactly(p, 2).map(|c| Point::xy(c[0], c[1])))
                .collect::<Result<Vec<_>, _>>()?;
            Domain::polygon(vs)?
        }
        ("punctured", Some(r)) => Domain::punctured(parse_point(r)?),
        _ => return Err(ParseError::UnknownDomain(text.into())),
    };
    Ok(domain)
}

/// Inverse of [`parse_domain`].
pub fn domain_label(d: &Domain) -> String {
    match d {
        Domain::HalfSpace { dim: 2 } => "hp".into(),
        Domain::HalfSpace { dim } => format!("halfspace{dim}"),
        Domain::UnitBall { dim: 2 } => "disk".into(),
        Domain::UnitBall { dim } => format!("ball{dim}"),
        Domain::TriangleT => "tri".into(),
        Domain::Rectangle { a, b } => format!("rect:{a},{b}"),
        Domain::Sector { alpha } => format!("sector:{alpha}"),
        Domain::Polygon(p) => {
            let vs: Vec<String> = p
                .vertices()
                .iter()
                .map(|v| format!("{},{}", v.x(), v.y()))
                .collect();
            format!("poly:{}", vs.join(";"))
        }
        Domain::PuncturedSpace { puncture } => {
            let cs: Vec<String> = puncture.coords().iter().map(|c| c.to_string()).collect();
            format!("punctured:{}", cs.join(","))
        }
    }
}
