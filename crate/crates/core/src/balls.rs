//! Balls of `s` in convex polygons as intersections of disks, and the
//! smoothness thresholds for the triangle `T` and the rectangle `R_{a,b}`.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::{ensure_dim, v2, Domain, Line2, Location, Point, SQRT3, V2};

/// Inclusion tolerance in the structural smoothness test.
pub const INCLUSION_TOL: f64 = 1e-9;

/// Slack when comparing a radius with a smoothness threshold.
pub const THRESHOLD_TOL: f64 = 1e-12;

/// An open disk in the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskRegion {
    pub center: Point,
    pub radius: f64,
}

impl DiskRegion {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        ensure_dim(&center, 2)?;
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("disk radius {radius}")));
        }
        Ok(DiskRegion { center, radius })
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.center.dist(p) < self.radius
    }

    /// `|c_self - c_other| <= R_other - R_self + tol`.
    pub fn is_inside(&self, other: &DiskRegion, tol: f64) -> bool {
        self.center.dist(&other.center) <= other.radius - self.radius + tol
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "radius r = {r} outside (0, 1)"
        )));
    }
    Ok(())
}

/// The ball `{y : s_H(x, y) < r}` of the half-plane on the normal side of
/// `l`. This is the Apollonius disk `|y - x| < r |y - x'|` with `x'` the
/// mirror image of `x`.
pub fn sball_halfplane(l: &Line2, x: &Point, r: f64) -> Result<DiskRegion> {
    ensure_dim(x, 2)?;
    check_radius(r)?;
    let h = l.signed_distance(x);
    if h < -crate::geometry::MEMBERSHIP_TOL {
        return Err(Error::OutsideDomain);
    }
    if h <= crate::geometry::MEMBERSHIP_TOL {
        return Err(Error::BoundaryPoint);
    }
    let xv = x.v2();
    let xr = l.reflect_v2(xv);
    let k = 1.0 - r * r;
    let c = v2::scale(v2::sub(xv, v2::scale(xr, r * r)), 1.0 / k);
    DiskRegion::new(c.into(), 2.0 * r * h / k)
}

/// Boundary lines of a supported domain, normals inward.
///
/// The triangle lists `y2 = y1/sqrt3`, `y2 = -y1/sqrt3`, `y1 = sqrt3`; the
/// rectangle lists top, right, bottom, left.
pub fn supporting_lines(domain: &Domain) -> Result<Vec<Line2>> {
    match domain {
        Domain::TriangleT => Ok(vec![
            Line2::from_parts([0.0, 0.0], [0.5, -SQRT3 / 2.0]),
            Line2::from_parts([0.0, 0.0], [0.5, SQRT3 / 2.0]),
            Line2::from_parts([SQRT3, 0.0], [-1.0, 0.0]),
        ]),
        Domain::Rectangle { a, b } => Ok(vec![
            Line2::from_parts([0.0, *b], [0.0, -1.0]),
            Line2::from_parts([*a, 0.0], [-1.0, 0.0]),
            Line2::from_parts([0.0, -*b], [0.0, 1.0]),
            Line2::from_parts([-*a, 0.0], [1.0, 0.0]),
        ]),
        Domain::Polygon(p) if p.is_convex() => Ok(p.edge_lines()),
        Domain::Polygon(_) => Err(Error::NonConvex),
        other => Err(Error::UnsupportedDomain(other.name().into())),
    }
}

/// One disk per supporting half-plane; the ball of the domain is their
/// intersection.
pub fn sball_polygon(domain: &Domain, x: &Point, r: f64) -> Result<Vec<DiskRegion>> {
    let lines = supporting_lines(domain)?;
    domain.require_interior(x)?;
    check_radius(r)?;
    lines.iter().map(|l| sball_halfplane(l, x, r)).collect()
}

/// A ball `B_s(center, r)` in a convex polygonal domain.
#[derive(Clone, Debug, PartialEq)]
pub struct BallSpec {
    pub domain: Domain,
    pub center: Point,
    pub r: f64,
}

impl BallSpec {
    pub fn new(domain: Domain, center: Point, r: f64) -> Result<Self> {
        supporting_lines(&domain)?;
        domain.require_interior(&center)?;
        check_radius(r)?;
        Ok(BallSpec { domain, center, r })
    }

    pub fn disks(&self) -> Result<Vec<DiskRegion>> {
        sball_polygon(&self.domain, &self.center, self.r)
    }

    /// Membership through the disk decomposition.
    pub fn contains(&self, y: &Point) -> Result<bool> {
        Ok(self.disks()?.iter().all(|d| d.contains(y)))
    }
}

/// Named thresholds from the closed formulas, before a radius is fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct Thresholds {
    pub values: Vec<(&'static str, f64)>,
    /// No positive threshold: no ball centred here is smooth.
    pub degenerate: bool,
}

impl Thresholds {
    fn from_values(values: Vec<(&'static str, f64)>) -> Self {
        let degenerate = values.iter().all(|&(_, t)| t <= THRESHOLD_TOL);
        Thresholds { values, degenerate }
    }

    /// The positive threshold with the largest value.
    pub fn active_branch(&self) -> Option<(&'static str, f64)> {
        self.values
            .iter()
            .copied()
            .filter(|&(_, t)| t > THRESHOLD_TOL)
            .fold(None, |best: Option<(&'static str, f64)>, c| match best {
                Some(b) if b.1 >= c.1 => Some(b),
                _ => Some(c),
            })
    }

    /// Equality counts as smooth.
    pub fn is_smooth(&self, r: f64) -> bool {
        !self.degenerate
            && self
                .active_branch()
                .is_some_and(|(_, t)| r <= t + THRESHOLD_TOL)
    }

    pub fn verdict(&self, r: f64) -> SmoothnessVerdict {
        SmoothnessVerdict {
            smooth: self.is_smooth(r),
            thresholds: self.values.clone(),
            active_branch: self.active_branch().map(|(n, _)| n),
            degenerate: self.degenerate,
            containing_disk: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothnessVerdict {
    pub smooth: bool,
    pub thresholds: Vec<(&'static str, f64)>,
    pub active_branch: Option<&'static str>,
    pub degenerate: bool,
    /// Index of a component disk contained in all others (structural route).
    pub containing_disk: Option<usize>,
}

/// `r0` and `r1` for the triangle `T`.
pub fn triangle_thresholds(x: &Point) -> Result<Thresholds> {
    Domain::TriangleT.require_interior(x)?;
    let (x1, x2) = (x.x(), x.y().abs());
    let den = (x1 - SQRT3).hypot(1.0 - x2);
    let r0 = (2.0 * x2 / x1.hypot(x2)).min((x2 - SQRT3 * x1 + 2.0) / den);
    let r1 = (SQRT3 * x1 - 2.0 - x2) / den;
    Ok(Thresholds::from_values(vec![("r0", r0), ("r1", r1)]))
}

/// `r2` and `r3` for the rectangle `R_{a,b}`.
pub fn rectangle_thresholds(a: f64, b: f64, x: &Point) -> Result<Thresholds> {
    Domain::rectangle(a, b)?.require_interior(x)?;
    let (u, w) = (a - x.x().abs(), b - x.y().abs());
    let den = u.hypot(w);
    let r2 = (x.y().abs() / b).min((u - w) / den);
    let r3 = (x.x().abs() / a).min((w - u) / den);
    Ok(Thresholds::from_values(vec![("r2", r2), ("r3", r3)]))
}

/// The loci on which the triangle ball is never smooth, as closed-form
/// conditions (tolerance `1e-12`).
pub fn triangle_degenerate_locus(x: &Point) -> bool {
    let (x1, x2) = (x.x(), x.y().abs());
    (x2 <= THRESHOLD_TOL && x1 > 0.0 && x1 <= 2.0 * SQRT3 / 3.0 + THRESHOLD_TOL)
        || (x2 - (SQRT3 * x1 - 2.0)).abs() <= THRESHOLD_TOL
}

/// The loci on which the rectangle ball is never smooth.
pub fn rectangle_degenerate_locus(a: f64, b: f64, x: &Point) -> bool {
    let (u, w) = (a - x.x().abs(), b - x.y().abs());
    (x.y().abs() <= THRESHOLD_TOL && u >= b - THRESHOLD_TOL) || (u - w).abs() <= THRESHOLD_TOL
}

/// Threshold route for a [`BallSpec`] on `T` or `R_{a,b}`.
pub fn formula_verdict(spec: &BallSpec) -> Result<SmoothnessVerdict> {
    let t = match spec.domain {
        Domain::TriangleT => triangle_thresholds(&spec.center)?,
        Domain::Rectangle { a, b } => rectangle_thresholds(a, b, &spec.center)?,
        ref other => return Err(Error::UnsupportedDomain(other.name().into())),
    };
    Ok(t.verdict(spec.r))
}

/// Structural route: the ball is smooth exactly when one component disk is
/// contained in all the others.
pub fn is_smooth(spec: &BallSpec) -> Result<SmoothnessVerdict> {
    let mut verdict = formula_verdict(spec)?;
    let disks = spec.disks()?;
    verdict.containing_disk = containing_disk(&disks);
    verdict.smooth = verdict.containing_disk.is_some();
    Ok(verdict)
}

fn containing_disk(disks: &[DiskRegion]) -> Option<usize> {
    (0..disks.len()).find(|&i| {
        disks
            .iter()
            .enumerate()
            .all(|(j, d)| j == i || disks[i].is_inside(d, INCLUSION_TOL))
    })
}

/// Polar angles on circle `a` where it meets circle `b`.
fn circle_intersections(a: &DiskRegion, b: &DiskRegion) -> Vec<f64> {
    let (ca, cb) = (a.center.v2(), b.center.v2());
    let d = v2::dist(ca, cb);
    if d == 0.0 || d >= a.radius + b.radius || d <= (a.radius - b.radius).abs() {
        return Vec::new();
    }
    let base = (cb[1] - ca[1]).atan2(cb[0] - ca[0]);
    let cos = ((a.radius * a.radius + d * d - b.radius * b.radius) / (2.0 * a.radius * d))
        .clamp(-1.0, 1.0);
    let half = cos.acos();
    vec![(base - half).rem_euclid(TAU), (base + half).rem_euclid(TAU)]
}

fn on_circle(d: &DiskRegion, t: f64) -> V2 {
    let c = d.center.v2();
    [c[0] + d.radius * t.cos(), c[1] + d.radius * t.sin()]
}

struct Arc {
    disk: usize,
    start: f64,
    sweep: f64,
    start_point: V2,
}

/// Counterclockwise polyline of about `m` vertices on the boundary of the
/// ball. A smooth ball gives one circle sampled at `m` points.
pub fn tessellate_ball_boundary(spec: &BallSpec, m: usize) -> Result<Vec<Point>> {
    if m < 16 {
        return Err(Error::InvalidArgument(format!("m = {m} below 16")));
    }
    let disks = spec.disks()?;
    if let Some(i) = containing_disk(&disks) {
        let d = &disks[i];
        return Ok((0..m)
            .map(|k| on_circle(d, TAU * k as f64 / m as f64).into())
            .collect());
    }
    let inside_others = |i: usize, p: V2| {
        disks
            .iter()
            .enumerate()
            .all(|(j, d)| j == i || v2::dist(p, d.center.v2()) <= d.radius * (1.0 + 1e-12))
    };
    let mut arcs = Vec::new();
    for (i, d) in disks.iter().enumerate() {
        let mut cuts: Vec<f64> = disks
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .flat_map(|(_, o)| circle_intersections(d, o))
            .collect();
        cuts.sort_by(f64::total_cmp);
        for k in 0..cuts.len() {
            let start = cuts[k];
            let end = if k + 1 < cuts.len() {
                cuts[k + 1]
            } else {
                cuts[0] + TAU
            };
            let sweep = end - start;
            if sweep <= 1e-15 {
                continue;
            }
            if inside_others(i, on_circle(d, start + 0.5 * sweep)) {
                arcs.push(Arc {
                    disk: i,
                    start,
                    sweep,
                    start_point: on_circle(d, start),
                });
            }
        }
    }
    if arcs.is_empty() {
        return Err(Error::Undefined("empty ball boundary"));
    }
    let x = spec.center.v2();
    let polar = |p: V2| (p[1] - x[1]).atan2(p[0] - x[0]).rem_euclid(TAU);
    arcs.sort_by(|a, b| polar(a.start_point).total_cmp(&polar(b.start_point)));
    let total: f64 = arcs.iter().map(|a| a.sweep * disks[a.disk].radius).sum();
    let mut out = Vec::with_capacity(m + arcs.len());
    for arc in &arcs {
        let len = arc.sweep * disks[arc.disk].radius;
        let n = ((m as f64 * len / total).round() as usize).max(1);
        for k in 0..n {
            let t = arc.start + arc.sweep * k as f64 / n as f64;
            out.push(on_circle(&disks[arc.disk], t).into());
        }
    }
    Ok(out)
}

/// `true` when `y` lies in the closure of the domain.
pub fn in_closure(domain: &Domain, y: &Point) -> Result<bool> {
    Ok(domain.classify(y)? != Location::Exterior)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rectangle_bottom_disk() {
        let l = Line2::from_parts([0.0, -1.0], [0.0, 1.0]);
        for r in [0.1, 0.5, 0.9] {
            let d = sball_halfplane(&l, &Point::origin(2), r).unwrap();
            let k = 1.0 - r * r;
            assert_abs_diff_eq!(d.center.x(), 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(d.center.y(), 2.0 * r * r / k, epsilon = 1e-14);
            assert_abs_diff_eq!(d.radius, 2.0 * r / k, epsilon = 1e-14);
        }
        let d = sball_halfplane(&l, &Point::xy(0.3, -0.2), 1e-6).unwrap();
        assert_abs_diff_eq!(d.center.dist(&Point::xy(0.3, -0.2)), 0.0, epsilon = 1e-11);
        assert!(sball_halfplane(&l, &Point::xy(0.0, -1.0), 0.5).is_err());
        assert!(sball_halfplane(&l, &Point::origin(2), 1.0).is_err());
    }

    #[test]
    fn triangle_first_disk_formula() {
        let x = Point::xy(1.0, 0.2);
        let r: f64 = 0.4;
        let k = 1.0 - r * r;
        let d = &sball_polygon(&Domain::TriangleT, &x, r).unwrap()[0];
        let (x1, x2) = (x.x(), x.y());
        assert_abs_diff_eq!(
            d.center.x(),
            ((2.0 - r * r) * x1 - SQRT3 * r * r * x2) / (2.0 * k),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            d.center.y(),
            ((2.0 + r * r) * x2 - SQRT3 * r * r * x1) / (2.0 * k),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(d.radius, r * (x1 - SQRT3 * x2).abs() / k, epsilon = 1e-14);
    }

    #[test]
    fn threshold_examples() {
        let t = rectangle_thresholds(2.0, 1.0, &Point::xy(0.0, 0.5)).unwrap();
        assert_abs_diff_eq!(t.values[0].1, 0.5, epsilon = 1e-15);
        assert_eq!(t.active_branch().unwrap().0, "r2");
        assert!(t.is_smooth(0.5) && !t.is_smooth(0.6));
        assert!(
            rectangle_thresholds(2.0, 1.0, &Point::xy(1.5, 0.5))
                .unwrap()
                .degenerate
        );
        assert!(
            rectangle_thresholds(2.0, 1.0, &Point::origin(2))
                .unwrap()
                .degenerate
        );
        assert!(
            triangle_thresholds(&Point::xy(2.0 * SQRT3 / 3.0, 0.0))
                .unwrap()
                .degenerate
        );
        assert!(
            !triangle_thresholds(&Point::xy(1.0, 0.1))
                .unwrap()
                .degenerate
        );
        assert!(triangle_thresholds(&Point::xy(2.0, 0.0)).is_err());
    }

    #[test]
    fn structural_examples() {
        let dom = Domain::rectangle(2.0, 1.0).unwrap();
        let v = is_smooth(&BallSpec::new(dom.clone(), Point::xy(0.0, 0.5), 0.4).unwrap()).unwrap();
        assert!(v.smooth);
        assert_eq!(v.containing_disk, Some(0));
        let v = is_smooth(&BallSpec::new(dom, Point::xy(0.0, 0.5), 0.6).unwrap()).unwrap();
        assert!(!v.smooth);
    }

    #[test]
    fn tessellation_shapes() {
        let dom = Domain::rectangle(2.0, 1.0).unwrap();
        let smooth = BallSpec::new(dom.clone(), Point::xy(0.0, 0.5), 0.4).unwrap();
        assert_eq!(tessellate_ball_boundary(&smooth, 64).unwrap().len(), 64);
        let corner = BallSpec::new(dom, Point::xy(0.0, 0.5), 0.6).unwrap();
        let pts = tessellate_ball_boundary(&corner, 64).unwrap();
        assert!(pts.len() >= 64);
        let x = corner.center.v2();
        let angles: Vec<f64> = pts
            .iter()
            .map(|p| (p.y() - x[1]).atan2(p.x() - x[0]).rem_euclid(TAU))
            .collect();
        let descents = angles.windows(2).filter(|w| w[1] < w[0]).count();
        assert!(descents <= 1);
    }
}
