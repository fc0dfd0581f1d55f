//! The triangular ratio metric
//!
//! `s_G(x, y) = sup_{z in dG} |x-y| / (|x-z| + |z-y|)`
//!
//! Closed forms are used where they exist (half-spaces, sectors, convex
//! polygons, punctured space). Everything else goes through tabulation of
//! the distance sum `|x-z| + |z-y|` along a parametrized boundary followed
//! by golden-section refinement in the boundary parameter.
//!
//! Balls and half-spaces of dimension `n >= 3` reduce to the plane through
//! the query pair: for the ball, the plane spanned by `x`, `y` and the
//! origin; for the half-space, the vertical plane containing `x` and `y`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{
    angle_at, angle_at_v2, ensure_dim, ensure_same_dim, v2, BoundaryCurve, Domain, Line2, Piece,
    Point, Polygon, V2,
};
use crate::metrics;

const INV_PHI: f64 = 0.618_033_988_749_894_8;
const GOLDEN_MAX_ITER: usize = 200;
/// Number of discrete local minima of the table that get refined.
const MAX_BRACKETS: usize = 8;

/// Tabulation and refinement settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    /// Number of tabulated boundary points.
    pub m: usize,
    /// Width of the final golden-section bracket in the boundary parameter.
    pub refine_tol: f64,
    pub refine: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            m: 1000,
            refine_tol: 1e-12,
            refine: true,
        }
    }
}

impl SolverConfig {
    pub fn new(m: usize, refine_tol: f64, refine: bool) -> Result<Self> {
        let cfg = SolverConfig {
            m,
            refine_tol,
            refine,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_m(m: usize) -> Result<Self> {
        Self::new(m, 1e-12, true)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 16 {
            return Err(Error::InvalidArgument(format!(
                "solver needs m >= 16, got {}",
                self.m
            )));
        }
        if !(self.refine_tol > 0.0) {
            return Err(Error::InvalidArgument("refine_tol must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Tabulated,
    TabulatedRefined,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Tabulated => "tabulated",
            Method::TabulatedRefined => "tabulated_refined",
        }
    }
}

/// Value of `s` with the boundary point attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalResult {
    pub value: f64,
    pub witness: Point,
    pub method: Method,
}

/// Minimizes `f` on `[a, b]`; returns `(argmin, min)`.
pub(crate) fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iter = 0;
    while b - a > tol && iter < GOLDEN_MAX_ITER {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iter += 1;
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[derive(Clone, Copy, Debug)]
struct CurveMin {
    t: f64,
    z: V2,
    f: f64,
}

impl CurveMin {
    /// Keeps the smaller value; on exact ties the smaller parameter.
    fn offer(&mut self, t: f64, z: V2, f: f64) {
        if f < self.f || (f == self.f && t < self.t) {
            *self = CurveMin { t, z, f };
        }
    }
}

fn normalize(curve: &BoundaryCurve, t: f64) -> f64 {
    if curve.is_closed() && curve.length() > 0.0 {
        t.rem_euclid(curve.length())
    } else {
        t.clamp(0.0, curve.length())
    }
}

/// Refines `f` on `[lo, hi]`, splitting the bracket at piece junctions.
fn refine_bracket<F: Fn(V2) -> f64>(
    curve: &BoundaryCurve,
    f: &F,
    lo: f64,
    hi: f64,
    tol: f64,
    best: &mut CurveMin,
) {
    let len = curve.length();
    let mut cuts = vec![lo, hi];
    let shifts: &[f64] = if curve.is_closed() {
        &[-1.0, 0.0, 1.0]
    } else {
        &[0.0]
    };
    for b in curve.breakpoints() {
        for s in shifts {
            let bb = b + s * len;
            if bb > lo && bb < hi {
                cuts.push(bb);
            }
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite parameters"));
    for &c in &cuts {
        let z = curve.point_at(c);
        best.offer(normalize(curve, c), z, f(z));
    }
    for w in cuts.windows(2) {
        if w[1] - w[0] <= 0.0 {
            continue;
        }
        let (t, v) = golden_min(|t| f(curve.point_at(t)), w[0], w[1], tol);
        best.offer(normalize(curve, t), curve.point_at(t), v);
    }
}

/// Tabulates `f` at `cfg.m` parameters and refines around the smallest
/// discrete local minima, each within one grid cell on either side.
fn minimize_on_curve<F: Fn(V2) -> f64>(
    curve: &BoundaryCurve,
    f: &F,
    cfg: &SolverConfig,
) -> CurveMin {
    let params = curve.sample_params(cfg.m);
    let vals: Vec<f64> = params.iter().map(|&t| f(curve.point_at(t))).collect();
    let n = vals.len();
    let mut best = CurveMin {
        t: params[0],
        z: curve.point_at(params[0]),
        f: vals[0],
    };
    for k in 1..n {
        if vals[k] < best.f {
            best = CurveMin {
                t: params[k],
                z: curve.point_at(params[k]),
                f: vals[k],
            };
        }
    }
    let len = curve.length();
    if !cfg.refine || len == 0.0 {
        return best;
    }
    let closed = curve.is_closed();
    let h = if closed {
        len / n as f64
    } else {
        len / (n - 1) as f64
    };
    let neighbour = |k: usize, forward: bool| -> Option<usize> {
        match (forward, closed) {
            (true, true) => Some((k + 1) % n),
            (false, true) => Some((k + n - 1) % n),
            (true, false) => (k + 1 < n).then_some(k + 1),
            (false, false) => k.checked_sub(1),
        }
    };
    let mut minima: Vec<usize> = (0..n)
        .filter(|&k| {
            let ok = |j: Option<usize>| j.is_none_or(|j| vals[k] <= vals[j]);
            ok(neighbour(k, false)) && ok(neighbour(k, true))
        })
        .collect();
    minima.sort_by(|&a, &b| {
        vals[a]
            .partial_cmp(&vals[b])
            .expect("finite values")
            .then(a.cmp(&b))
    });
    minima.truncate(MAX_BRACKETS);
    minima.sort_unstable();
    for k in minima {
        let (mut lo, mut hi) = (params[k] - h, params[k] + h);
        if !closed {
            lo = lo.max(0.0);
            hi = hi.min(len);
        }
        refine_bracket(curve, f, lo, hi, cfg.refine_tol, &mut best);
    }
    best
}

/// Orthonormal frame lifting planar coordinates back into `R^n`.
struct Frame {
    origin: Point,
    e1: Point,
    e2: Point,
}

impl Frame {
    fn lift(&self, u: V2) -> Point {
        self.origin
            .add(&self.e1.scale(u[0]))
            .add(&self.e2.scale(u[1]))
    }
}

/// A planar instance of the problem.
struct Planar {
    domain: Domain,
    x: V2,
    y: V2,
    frame: Option<Frame>,
}

impl Planar {
    fn lift(&self, z: V2) -> Point {
        match &self.frame {
            Some(f) => f.lift(z),
            None => Point::from(z),
        }
    }
}

/// A unit vector orthogonal to the unit vector `e`.
fn orthogonal_unit(e: &Point) -> Point {
    let n = e.dim();
    let i = (0..n)
        .min_by(|&a, &b| {
            e.coords()[a]
                .abs()
                .partial_cmp(&e.coords()[b].abs())
                .expect("finite")
        })
        .expect("nonempty");
    let b = Point::basis(n, i);
    let v = b.sub(&e.scale(b.dot(e)));
    v.scale(1.0 / v.norm())
}

fn planarize(domain: &Domain, x: &Point, y: &Point) -> Result<Planar> {
    let n = domain.dim();
    match domain {
        Domain::UnitBall { dim } if *dim > 2 => {
            let e1 = if x.norm() > 0.0 {
                x.scale(1.0 / x.norm())
            } else if y.norm() > 0.0 {
                y.scale(1.0 / y.norm())
            } else {
                Point::basis(n, 0)
            };
            let w = y.sub(&e1.scale(y.dot(&e1)));
            let e2 = if w.norm() > 1e-14 * y.norm().max(1e-300) {
                w.scale(1.0 / w.norm())
            } else {
                orthogonal_unit(&e1)
            };
            let frame = Frame {
                origin: Point::origin(n),
                e1,
                e2,
            };
            Ok(Planar {
                domain: Domain::unit_disk(),
                x: [x.dot(&frame.e1), x.dot(&frame.e2)],
                y: [y.dot(&frame.e1), y.dot(&frame.e2)],
                frame: Some(frame),
            })
        }
        Domain::HalfSpace { dim } if *dim > 2 => {
            let mut horizontal_x = x.coords().to_vec();
            horizontal_x[n - 1] = 0.0;
            let origin = Point::new(horizontal_x)?;
            let mut dir = y.sub(x).coords().to_vec();
            dir[n - 1] = 0.0;
            let dir = Point::new(dir)?;
            let len = dir.norm();
            let e1 = if len > 0.0 {
                dir.scale(1.0 / len)
            } else {
                Point::basis(n, 0)
            };
            Ok(Planar {
                domain: Domain::half_plane(),
                x: [0.0, x.last()],
                y: [len, y.last()],
                frame: Some(Frame {
                    origin,
                    e1,
                    e2: Point::basis(n, n - 1),
                }),
            })
        }
        _ => {
            ensure_dim(x, 2)?;
            Ok(Planar {
                domain: domain.clone(),
                x: x.v2(),
                y: y.v2(),
                frame: None,
            })
        }
    }
}

/// Default parameter window for unbounded planar boundaries.
fn default_window(domain: &Domain, x: V2, y: V2) -> Option<(f64, f64)> {
    match domain {
        Domain::HalfSpace { .. } => {
            let c = [(x[0] + y[0]) / 2.0, 0.0];
            let w = 10.0 * v2::dist(x, c).max(v2::dist(y, c));
            Some((c[0] - w, c[0] + w))
        }
        Domain::Sector { .. } => {
            let w = 10.0 * v2::norm(x).max(v2::norm(y));
            Some((-w, w))
        }
        _ => None,
    }
}

fn check_pair(domain: &Domain, x: &Point, y: &Point, cfg: &SolverConfig) -> Result<()> {
    cfg.validate()?;
    ensure_same_dim(x, y)?;
    domain.require_interior(x)?;
    domain.require_interior(y)
}

fn method_of(cfg: &SolverConfig) -> Method {
    if cfg.refine {
        Method::TabulatedRefined
    } else {
        Method::Tabulated
    }
}

fn ratio(d: f64, sum: f64) -> f64 {
    if d == 0.0 {
        0.0
    } else {
        (d / sum).min(1.0)
    }
}

/// Tabulation oracle for `s`, independent of every closed form. Unbounded
/// boundaries use a window of ten times the pair's extent.
pub fn s_oracle(
    domain: &Domain,
    x: &Point,
    y: &Point,
    cfg: &SolverConfig,
) -> Result<ExtremalResult> {
    check_pair(domain, x, y, cfg)?;
    if let Domain::PuncturedSpace { puncture } = domain {
        return Ok(ExtremalResult {
            value: metrics::s_punctured(x, y, puncture)?,
            witness: puncture.clone(),
            method: Method::ClosedForm,
        });
    }
    let planar = planarize(domain, x, y)?;
    let window = default_window(&planar.domain, planar.x, planar.y);
    let curve = planar.domain.boundary_curve(window)?;
    let (px, py) = (planar.x, planar.y);
    let f = move |z: V2| v2::dist(px, z) + v2::dist(z, py);
    let best = minimize_on_curve(&curve, &f, cfg);
    Ok(ExtremalResult {
        value: ratio(x.dist(y), best.f),
        witness: planar.lift(best.z),
        method: method_of(cfg),
    })
}

/// `s` on the unit disk, tabulated on the smaller boundary arc between
/// the directions of `x` and `y`. The full circle is used when one point
/// is the origin or the directions are opposite.
pub fn s_unit_disk(x: &Point, y: &Point, cfg: &SolverConfig) -> Result<ExtremalResult> {
    ensure_dim(x, 2)?;
    let disk = Domain::unit_disk();
    check_pair(&disk, x, y, cfg)?;
    let (px, py) = (x.v2(), y.v2());
    let d = x.dist(y);
    let f = move |z: V2| v2::dist(px, z) + v2::dist(z, py);
    let (rx, ry) = (v2::norm(px), v2::norm(py));
    if rx == 0.0 || ry == 0.0 || d == 0.0 {
        if d == 0.0 {
            return Ok(ExtremalResult {
                value: 0.0,
                witness: Point::xy(1.0, 0.0),
                method: Method::ClosedForm,
            });
        }
        return s_oracle(&disk, x, y, cfg);
    }
    let sweep = v2::cross(px, py).atan2(v2::dot(px, py));
    if sweep.abs() >= PI - 1e-12 {
        return s_oracle(&disk, x, y, cfg);
    }
    let start = px[1].atan2(px[0]);
    if sweep == 0.0 {
        let z = v2::scale(px, 1.0 / rx);
        return Ok(ExtremalResult {
            value: ratio(d, f(z)),
            witness: Point::from(z),
            method: Method::ClosedForm,
        });
    }
    let curve = BoundaryCurve::open(vec![Piece::Arc {
        center: [0.0, 0.0],
        radius: 1.0,
        start,
        sweep,
    }]);
    let best = minimize_on_curve(&curve, &f, cfg);
    Ok(ExtremalResult {
        value: ratio(d, best.f),
        witness: Point::from(best.z),
        method: method_of(cfg),
    })
}

/// `s` on the unit ball of any dimension via the plane through `0`, `x`, `y`.
pub fn s_unit_ball(x: &Point, y: &Point, cfg: &SolverConfig) -> Result<ExtremalResult> {
    if x.dim() == 2 {
        return s_unit_disk(x, y, cfg);
    }
    let ball = Domain::UnitBall { dim: x.dim() };
    check_pair(&ball, x, y, cfg)?;
    let planar = planarize(&ball, x, y)?;
    let r = s_unit_disk(&Point::from(planar.x), &Point::from(planar.y), cfg)?;
    Ok(ExtremalResult {
        value: r.value,
        witness: planar.lift(r.witness.v2()),
        method: r.method,
    })
}

/// Largest half-plane value of `s` among `lines` (normals pointing inward),
/// with the touching point on the achieving line. Ties go to the first line.
fn halfplane_max(lines: &[Line2], x: V2, y: V2) -> (f64, V2) {
    let d = v2::dist(x, y);
    let mut best: Option<(f64, usize, V2)> = None;
    for (i, l) in lines.iter().enumerate() {
        let ybar = l.reflect_v2(y);
        let dist = v2::dist(x, ybar);
        if best.is_none_or(|(b, _, _)| dist < b) {
            best = Some((dist, i, ybar));
        }
    }
    let (dist, i, ybar) = best.expect("at least one line");
    let l = &lines[i];
    let (hx, hy) = (l.signed_distance_v2(x), l.signed_distance_v2(y));
    let z = v2::lerp(x, ybar, hx / (hx + hy));
    (ratio(d, dist), z)
}

/// `s` on the upper half-plane: `|x-y| / |x - ybar|`, attained where the
/// segment `[x, ybar]` crosses the real axis.
pub fn s_half_plane(x: &Point, y: &Point) -> Result<ExtremalResult> {
    ensure_dim(x, 2)?;
    s_half_space_extremal(x, y)
}

/// Half-space of any dimension, with witness.
pub fn s_half_space_extremal(x: &Point, y: &Point) -> Result<ExtremalResult> {
    ensure_same_dim(x, y)?;
    let value = metrics::s_half_space(x, y)?;
    let n = x.dim();
    let mut bar = y.coords().to_vec();
    bar[n - 1] = -bar[n - 1];
    let ybar = Point::new(bar)?;
    let t = x.last() / (x.last() + y.last());
    let mut witness = x.add(&ybar.sub(x).scale(t));
    let mut c = witness.coords().to_vec();
    c[n - 1] = 0.0;
    witness = Point::new(c)?;
    Ok(ExtremalResult {
        value,
        witness,
        method: Method::ClosedForm,
    })
}

/// `s` in the rectangle `(+-a, +-b)` via reflections of `y` in the four sides.
pub fn s_rectangle(a: f64, b: f64, x: &Point, y: &Point) -> Result<ExtremalResult> {
    let rect = Domain::rectangle(a, b)?;
    let poly = rect.as_polygon().expect("rectangle is polygonal");
    closed_polygon(&rect, &poly, x, y)
}

fn closed_polygon(domain: &Domain, poly: &Polygon, x: &Point, y: &Point) -> Result<ExtremalResult> {
    ensure_dim(x, 2)?;
    ensure_same_dim(x, y)?;
    domain.require_interior(x)?;
    domain.require_interior(y)?;
    let (value, z) = halfplane_max(&poly.edge_lines(), x.v2(), y.v2());
    Ok(ExtremalResult {
        value,
        witness: Point::from(z),
        method: Method::ClosedForm,
    })
}

fn sector_lines(alpha: f64) -> [Line2; 2] {
    [
        Line2::from_parts([0.0, 0.0], [0.0, 1.0]),
        Line2::from_parts([0.0, 0.0], [alpha.sin(), -alpha.cos()]),
    ]
}

/// `s` in the sector `0 < arg z < alpha` via the reflections of `y` in the
/// two boundary lines.
pub fn s_sector(alpha: f64, x: &Point, y: &Point) -> Result<ExtremalResult> {
    let sector = Domain::sector(alpha)?;
    ensure_dim(x, 2)?;
    ensure_same_dim(x, y)?;
    sector.require_interior(x)?;
    sector.require_interior(y)?;
    let (value, z) = halfplane_max(&sector_lines(alpha), x.v2(), y.v2());
    Ok(ExtremalResult {
        value,
        witness: Point::from(z),
        method: Method::ClosedForm,
    })
}

/// Closed form and tabulation on a truncated wedge for one sector pair.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorCheck {
    pub closed: ExtremalResult,
    pub oracle: ExtremalResult,
    pub discrepancy: f64,
    /// The two values differ by more than `1e-6`.
    pub flagged: bool,
}

/// The triangle `0, R, R e^{i alpha}` with `R` large enough that its third
/// side stays clear of every ellipse relevant to the pair.
pub fn sector_truncation(alpha: f64, x: &Point, y: &Point) -> Result<Polygon> {
    Domain::sector(alpha)?;
    let r = 10.0 * x.norm().max(y.norm()) / (alpha / 2.0).cos();
    Polygon::new(vec![
        Point::xy(0.0, 0.0),
        Point::xy(r, 0.0),
        Point::xy(r * alpha.cos(), r * alpha.sin()),
    ])
}

/// Compares [`s_sector`] with tabulation on [`sector_truncation`].
pub fn sector_flag_check(
    alpha: f64,
    x: &Point,
    y: &Point,
    cfg: &SolverConfig,
) -> Result<SectorCheck> {
    let closed = s_sector(alpha, x, y)?;
    let wedge = sector_truncation(alpha, x, y)?;
    let oracle = s_polygon_tabulation(&wedge, x, y, cfg)?;
    let discrepancy = (closed.value - oracle.value).abs();
    Ok(SectorCheck {
        closed,
        oracle,
        discrepancy,
        flagged: discrepancy > 1e-6,
    })
}

/// Maximum over the supporting half-planes of a convex polygon. Non-convex
/// input falls back to [`s_polygon_tabulation`] with the default settings;
/// the returned method then reports the tabulation.
pub fn s_convex_polygon(poly: &Polygon, x: &Point, y: &Point) -> Result<ExtremalResult> {
    let domain = Domain::Polygon(poly.clone());
    if !poly.is_convex() {
        return s_polygon_tabulation(poly, x, y, &SolverConfig::default());
    }
    closed_polygon(&domain, poly, x, y)
}

/// Tabulation along the perimeter plus a golden-section search over every
/// edge. The distance sum is convex along a segment, so the per-edge
/// searches find each edge's minimum.
pub fn s_polygon_tabulation(
    poly: &Polygon,
    x: &Point,
    y: &Point,
    cfg: &SolverConfig,
) -> Result<ExtremalResult> {
    let domain = Domain::Polygon(poly.clone());
    check_pair(&domain, x, y, cfg)?;
    ensure_dim(x, 2)?;
    let curve = domain.boundary_curve(None)?;
    let (px, py) = (x.v2(), y.v2());
    let f = move |z: V2| v2::dist(px, z) + v2::dist(z, py);
    let mut best = minimize_on_curve(&curve, &f, cfg);
    if cfg.refine {
        for i in 0..curve.pieces().len() {
            let (lo, hi) = curve.piece_range(i);
            let (t, v) = golden_min(|t| f(curve.point_at(t)), lo, hi, cfg.refine_tol);
            best.offer(normalize(&curve, t), curve.point_at(t), v);
        }
    }
    Ok(ExtremalResult {
        value: ratio(x.dist(y), best.f),
        witness: Point::from(best.z),
        method: method_of(cfg),
    })
}

/// `s` with the best available method for each domain.
pub fn s_metric(
    domain: &Domain,
    x: &Point,
    y: &Point,
    cfg: &SolverConfig,
) -> Result<ExtremalResult> {
    match domain {
        Domain::HalfSpace { dim } => {
            ensure_dim(x, *dim)?;
            s_half_space_extremal(x, y)
        }
        Domain::UnitBall { dim } => {
            ensure_dim(x, *dim)?;
            s_unit_ball(x, y, cfg)
        }
        Domain::PuncturedSpace { .. } => s_oracle(domain, x, y, cfg),
        Domain::Sector { alpha } => s_sector(*alpha, x, y),
        Domain::Rectangle { a, b } => s_rectangle(*a, *b, x, y),
        Domain::TriangleT => {
            let poly = domain.as_polygon().expect("triangle is polygonal");
            closed_polygon(domain, &poly, x, y)
        }
        Domain::Polygon(poly) => {
            if poly.is_convex() {
                closed_polygon(domain, poly, x, y)
            } else {
                s_polygon_tabulation(poly, x, y, cfg)
            }
        }
    }
}

/// `s` in `R^n` minus one point.
pub fn s_punctured(x: &Point, y: &Point, puncture: &Point) -> Result<f64> {
    metrics::s_punctured(x, y, puncture)
}

/// Visual angle metric `sup_{z in dG} angle(x, z, y)` by tabulation and
/// refinement; exact in punctured space.
pub fn v_numeric(domain: &Domain, x: &Point, y: &Point, cfg: &SolverConfig) -> Result<f64> {
    check_pair(domain, x, y, cfg)?;
    if x == y {
        return Ok(0.0);
    }
    if let Domain::PuncturedSpace { puncture } = domain {
        return angle_at(x, puncture, y);
    }
    let planar = planarize(domain, x, y)?;
    let window = default_window(&planar.domain, planar.x, planar.y);
    let curve = planar.domain.boundary_curve(window)?;
    let (px, py) = (planar.x, planar.y);
    let f = move |z: V2| -angle_at_v2(px, z, py).unwrap_or(0.0);
    let best = minimize_on_curve(&curve, &f, cfg);
    Ok((-best.f).clamp(0.0, PI))
}
