//! Points, domains and boundary parametrizations.
//!
//! Every metric in this crate is defined relative to a [`Domain`] and its
//! boundary. Planar work is done internally on `[f64; 2]` values; the public
//! surface uses [`Point`], which carries an arbitrary dimension `n >= 2`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Signed tolerance used to classify points as interior, boundary or exterior.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

const UNIT_TOL: f64 = 1e-12;

pub(crate) type V2 = [f64; 2];

pub(crate) mod v2 {
    use super::V2;

    #[inline]
    pub fn add(a: V2, b: V2) -> V2 {
        [a[0] + b[0], a[1] + b[1]]
    }
    #[inline]
    pub fn sub(a: V2, b: V2) -> V2 {
        [a[0] - b[0], a[1] - b[1]]
    }
    #[inline]
    pub fn scale(a: V2, s: f64) -> V2 {
        [a[0] * s, a[1] * s]
    }
    #[inline]
    pub fn dot(a: V2, b: V2) -> f64 {
        a[0] * b[0] + a[1] * b[1]
    }
    #[inline]
    pub fn cross(a: V2, b: V2) -> f64 {
        a[0] * b[1] - a[1] * b[0]
    }
    #[inline]
    pub fn norm(a: V2) -> f64 {
        a[0].hypot(a[1])
    }
    #[inline]
    pub fn dist(a: V2, b: V2) -> f64 {
        (a[0] - b[0]).hypot(a[1] - b[1])
    }
    #[inline]
    pub fn lerp(a: V2, b: V2, t: f64) -> V2 {
        [a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t]
    }

    /// Distance from `p` to the closed segment `[a, b]`.
    pub fn dist_to_segment(p: V2, a: V2, b: V2) -> f64 {
        let ab = sub(b, a);
        let len_sq = dot(ab, ab);
        if len_sq == 0.0 {
            return dist(p, a);
        }
        let t = (dot(sub(p, a), ab) / len_sq).clamp(0.0, 1.0);
        dist(p, lerp(a, b, t))
    }
}

/// A point of `R^n`, `n >= 2`, with finite coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "points need at least two coordinates, got {}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        Ok(Point(coords))
    }

    /// Planar point. Coordinates are expected to be finite.
    pub fn xy(x: f64, y: f64) -> Self {
        debug_assert!(
            x.is_finite() && y.is_finite(),
            "non-finite point ({x}, {y})"
        );
        Point(vec![x, y])
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![0.0; dim.max(2)])
    }

    /// The `i`-th standard basis vector of `R^dim`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut c = vec![0.0; dim.max(2)];
        c[i] = 1.0;
        Point(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }

    pub fn y(&self) -> f64 {
        self.0[1]
    }

    pub fn last(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        if self.0.len() == 2 {
            self.0[0].hypot(self.0[1])
        } else {
            self.norm_sq().sqrt()
        }
    }

    pub fn dot(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        if self.0.len() == 2 {
            (self.0[0] - other.0[0]).hypot(self.0[1] - other.0[1])
        } else {
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        }
    }

    pub fn sub(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: f64) -> Point {
        Point(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> Point {
        self.scale(-1.0)
    }

    pub(crate) fn v2(&self) -> V2 {
        [self.0[0], self.0[1]]
    }
}

impl From<V2> for Point {
    fn from(p: V2) -> Self {
        Point::xy(p[0], p[1])
    }
}

pub(crate) fn ensure_same_dim(a: &Point, b: &Point) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

pub(crate) fn ensure_dim(p: &Point, dim: usize) -> Result<()> {
    if p.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: p.dim(),
        });
    }
    Ok(())
}

/// A line in the plane given by a point on it and a unit normal.
///
/// When a line bounds a half-plane, the interior is the side the normal
/// points into.
#[derive(Clone, Debug, PartialEq)]
pub struct Line2 {
    point: V2,
    normal: V2,
}

impl Line2 {
    /// Fails unless `unit_normal` has norm one within `1e-12`.
    pub fn new(point: &Point, unit_normal: &Point) -> Result<Self> {
        ensure_dim(point, 2)?;
        ensure_dim(unit_normal, 2)?;
        let n = unit_normal.v2();
        if (v2::norm(n) - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidArgument(format!(
                "line normal has norm {}, expected 1",
                v2::norm(n)
            )));
        }
        Ok(Line2 {
            point: point.v2(),
            normal: n,
        })
    }

    /// The line through `a` and `b`, with the normal pointing to the left of
    /// the direction `a -> b`.
    pub fn through(a: &Point, b: &Point) -> Result<Self> {
        ensure_dim(a, 2)?;
        ensure_dim(b, 2)?;
        Self::through_v2(a.v2(), b.v2())
    }

    pub(crate) fn through_v2(a: V2, b: V2) -> Result<Self> {
        let d = v2::sub(b, a);
        let len = v2::norm(d);
        if len == 0.0 {
            return Err(Error::InvalidArgument(
                "line through coincident points".into(),
            ));
        }
        Ok(Line2 {
            point: a,
            normal: [-d[1] / len, d[0] / len],
        })
    }

    pub(crate) fn from_parts(point: V2, normal: V2) -> Self {
        Line2 { point, normal }
    }

    pub fn point(&self) -> Point {
        self.point.into()
    }

    pub fn unit_normal(&self) -> Point {
        self.normal.into()
    }

    /// Signed distance, positive on the side the normal points into.
    pub fn signed_distance(&self, p: &Point) -> f64 {
        self.signed_distance_v2(p.v2())
    }

    pub(crate) fn signed_distance_v2(&self, p: V2) -> f64 {
        v2::dot(v2::sub(p, self.point), self.normal)
    }

    pub(crate) fn reflect_v2(&self, p: V2) -> V2 {
        let h = self.signed_distance_v2(p);
        v2::sub(p, v2::scale(self.normal, 2.0 * h))
    }
}

/// Mirror image of `p` across `line`.
pub fn reflect_across_line(p: &Point, line: &Line2) -> Result<Point> {
    ensure_dim(p, 2)?;
    if (v2::norm(line.normal) - 1.0).abs() > UNIT_TOL {
        return Err(Error::InvalidArgument(
            "line normal is not a unit vector".into(),
        ));
    }
    Ok(line.reflect_v2(p.v2()).into())
}

/// Inversion in the unit sphere, `x -> x / |x|^2`.
pub fn invert_in_unit_sphere(x: &Point) -> Result<Point> {
    let n2 = x.norm_sq();
    if n2 == 0.0 {
        return Err(Error::Singularity("inversion of the origin"));
    }
    Ok(x.scale(1.0 / n2))
}

/// The angle of the triangle `(x, z, y)` at the vertex `z`, in `[0, pi]`.
pub fn angle_at(x: &Point, z: &Point, y: &Point) -> Result<f64> {
    ensure_same_dim(x, z)?;
    ensure_same_dim(y, z)?;
    let u = x.sub(z);
    let v = y.sub(z);
    let (nu, nv) = (u.norm(), v.norm());
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::DegenerateTriangle);
    }
    let u = u.scale(1.0 / nu);
    let v = v.scale(1.0 / nv);
    Ok(2.0 * u.sub(&v).norm().atan2(u.add(&v).norm()))
}

/// Angle at `z` for planar points; `None` when `z` coincides with an endpoint.
pub(crate) fn angle_at_v2(x: V2, z: V2, y: V2) -> Option<f64> {
    let u = v2::sub(x, z);
    let v = v2::sub(y, z);
    let (nu, nv) = (v2::norm(u), v2::norm(v));
    if nu == 0.0 || nv == 0.0 {
        return None;
    }
    let u = v2::scale(u, 1.0 / nu);
    let v = v2::scale(v, 1.0 / nv);
    Some(2.0 * v2::norm(v2::sub(u, v)).atan2(v2::norm(v2::add(u, v))))
}

/// `x -> scale * rotation * x + translation`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityTransform {
    scale: f64,
    rotation: Vec<Vec<f64>>,
    translation: Point,
}

impl SimilarityTransform {
    /// `rotation` is row-major and must be orthogonal within `1e-12`.
    pub fn new(scale: f64, rotation: Vec<Vec<f64>>, translation: Point) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "scale must be positive, got {scale}"
            )));
        }
        let n = translation.dim();
        if rotation.len() != n || rotation.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rotation.len(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let d: f64 = (0..n).map(|k| rotation[i][k] * rotation[j][k]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                if (d - expected).abs() > UNIT_TOL {
                    return Err(Error::InvalidArgument(
                        "rotation matrix is not orthogonal".into(),
                    ));
                }
            }
        }
        Ok(SimilarityTransform {
            scale,
            rotation,
            translation,
        })
    }

    pub fn identity(dim: usize) -> Self {
        let rotation = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        SimilarityTransform {
            scale: 1.0,
            rotation,
            translation: Point::origin(dim),
        }
    }

    /// Planar similarity: rotate by `theta`, optionally reflect in the
    /// first axis beforehand, scale, then translate.
    pub fn planar(scale: f64, theta: f64, reflect: bool, translation: [f64; 2]) -> Result<Self> {
        let (s, c) = theta.sin_cos();
        let f = if reflect { -1.0 } else { 1.0 };
        let rotation = vec![vec![c, -s * f], vec![s, c * f]];
        Self::new(scale, rotation, Point::xy(translation[0], translation[1]))
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn dim(&self) -> usize {
        self.translation.dim()
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        ensure_same_dim(&self.translation, x)?;
        let n = x.dim();
        let coords = (0..n)
            .map(|i| {
                let r: f64 = (0..n).map(|k| self.rotation[i][k] * x.coords()[k]).sum();
                self.scale * r + self.translation.coords()[i]
            })
            .collect();
        Ok(Point(coords))
    }

    /// Image of a planar domain. Polygonal and punctured domains map to
    /// domains of the same kind; the others are not closed under general
    /// similarities and are rejected.
    pub fn apply_domain(&self, domain: &Domain) -> Result<Domain> {
        match domain {
            Domain::PuncturedSpace { puncture } => Ok(Domain::PuncturedSpace {
                puncture: self.apply(puncture)?,
            }),
            _ => match domain.as_polygon() {
                Some(poly) => {
                    let verts = poly
                        .vertices()
                        .iter()
                        .map(|v| self.apply(v))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Domain::Polygon(Polygon::new(verts)?))
                }
                None => Err(Error::UnsupportedDomain(format!(
                    "similarity image of {}",
                    domain.name()
                ))),
            },
        }
    }
}

/// Apply `t` to `x`.
pub fn apply_similarity(t: &SimilarityTransform, x: &Point) -> Result<Point> {
    t.apply(x)
}

/// A simple planar polygon stored counterclockwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<V2>,
    convex: bool,
}

impl Polygon {
    /// Validates simplicity and normalizes the orientation to counterclockwise.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let mut vs = Vec::with_capacity(vertices.len());
        for v in &vertices {
            ensure_dim(v, 2)?;
            vs.push(v.v2());
        }
        Self::from_v2(vs)
    }

    pub(crate) fn from_v2(mut vs: Vec<V2>) -> Result<Self> {
        let m = vs.len();
        for i in 0..m {
            if vs[i] == vs[(i + 1) % m] {
                return Err(Error::InvalidArgument("repeated consecutive vertex".into()));
            }
        }
        let area2: f64 = (0..m).map(|i| v2::cross(vs[i], vs[(i + 1) % m])).sum();
        if area2.abs() <= f64::EPSILON {
            return Err(Error::InvalidArgument("polygon has zero area".into()));
        }
        if area2 < 0.0 {
            vs.reverse();
        }
        for i in 0..m {
            for j in (i + 1)..m {
                let adjacent = j == i + 1 || (i == 0 && j == m - 1);
                let (a, b) = (vs[i], vs[(i + 1) % m]);
                let (c, d) = (vs[j], vs[(j + 1) % m]);
                if !adjacent && segments_intersect(a, b, c, d) {
                    return Err(Error::InvalidArgument(format!(
                        "polygon edges {i} and {j} intersect"
                    )));
                }
            }
        }
        let scale = vs.iter().map(|v| v2::norm(*v)).fold(1.0, f64::max);
        let convex = (0..m).all(|i| {
            let e1 = v2::sub(vs[(i + 1) % m], vs[i]);
            let e2 = v2::sub(vs[(i + 2) % m], vs[(i + 1) % m]);
            v2::cross(e1, e2) >= -1e-12 * scale * scale
        });
        Ok(Polygon {
            vertices: vs,
            convex,
        })
    }

    pub fn vertices(&self) -> Vec<Point> {
        self.vertices.iter().map(|v| Point::from(*v)).collect()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All inner angles are at most `pi`.
    pub fn is_convex(&self) -> bool {
        self.convex
    }

    pub(crate) fn edges(&self) -> impl Iterator<Item = (V2, V2)> + '_ {
        let m = self.vertices.len();
        (0..m).map(move |i| (self.vertices[i], self.vertices[(i + 1) % m]))
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| v2::dist(a, b)).sum()
    }

    /// Supporting lines of the edges, normals pointing inward.
    pub fn edge_lines(&self) -> Vec<Line2> {
        self.edges()
            .map(|(a, b)| Line2::through_v2(a, b).expect("polygon edges have positive length"))
            .collect()
    }

    fn winding_contains(&self, p: V2) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
                if p[0] < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub(crate) fn boundary_distance_v2(&self, p: V2) -> f64 {
        self.edges()
            .map(|(a, b)| v2::dist_to_segment(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    pub(crate) fn signed_distance_v2(&self, p: V2) -> f64 {
        let d = self.boundary_distance_v2(p);
        if self.winding_contains(p) {
            d
        } else {
            -d
        }
    }

    fn bbox(&self) -> (V2, V2) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for v in &self.vertices {
            for k in 0..2 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }
}

fn orient(a: V2, b: V2, c: V2) -> f64 {
    v2::cross(v2::sub(b, a), v2::sub(c, a))
}

fn on_segment(a: V2, b: V2, p: V2) -> bool {
    p[0] >= a[0].min(b[0])
        && p[0] <= a[0].max(b[0])
        && p[1] >= a[1].min(b[1])
        && p[1] <= a[1].max(b[1])
}

fn segments_intersect(a: V2, b: V2, c: V2, d: V2) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

/// Where a point sits relative to a domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// The concrete domains the crate knows how to measure in.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    /// `{x in R^dim : x_dim > 0}`.
    HalfSpace {
        dim: usize,
    },
    /// The open unit ball of `R^dim`.
    UnitBall {
        dim: usize,
    },
    /// `R^n` minus one point.
    PuncturedSpace {
        puncture: Point,
    },
    /// `{z : 0 < arg z < alpha}` with `alpha` in `(0, pi)`.
    Sector {
        alpha: f64,
    },
    /// The rectangle with vertices `(+-a, +-b)`, `a >= b > 0`.
    Rectangle {
        a: f64,
        b: f64,
    },
    /// The equilateral triangle with vertices `(0,0)`, `(sqrt 3, 1)`, `(sqrt 3, -1)`.
    TriangleT,
    Polygon(Polygon),
}

pub(crate) const SQRT3: f64 = 1.732_050_807_568_877_2;

impl Domain {
    pub fn half_plane() -> Self {
        Domain::HalfSpace { dim: 2 }
    }

    pub fn unit_disk() -> Self {
        Domain::UnitBall { dim: 2 }
    }

    pub fn half_space(dim: usize) -> Result<Self> {
        let d = Domain::HalfSpace { dim };
        d.validate()?;
        Ok(d)
    }

    pub fn unit_ball(dim: usize) -> Result<Self> {
        let d = Domain::UnitBall { dim };
        d.validate()?;
        Ok(d)
    }

    pub fn punctured(puncture: Point) -> Self {
        Domain::PuncturedSpace { puncture }
    }

    pub fn sector(alpha: f64) -> Result<Self> {
        let d = Domain::Sector { alpha };
        d.validate()?;
        Ok(d)
    }

    pub fn rectangle(a: f64, b: f64) -> Result<Self> {
        let d = Domain::Rectangle { a, b };
        d.validate()?;
        Ok(d)
    }

    pub fn polygon(vertices: Vec<Point>) -> Result<Self> {
        Ok(Domain::Polygon(Polygon::new(vertices)?))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Domain::HalfSpace { dim } | Domain::UnitBall { dim } if *dim < 2 => Err(
                Error::InvalidArgument(format!("dimension must be >= 2, got {dim}")),
            ),
            Domain::Sector { alpha } if !(*alpha > 0.0 && *alpha < PI) => Err(
                Error::UnsupportedParameter(format!("sector angle {alpha} outside (0, pi)")),
            ),
            Domain::Rectangle { a, b } if !(*b > 0.0 && a >= b && a.is_finite()) => Err(
                Error::InvalidArgument(format!("rectangle needs a >= b > 0, got a={a}, b={b}")),
            ),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Domain::HalfSpace { .. } => "half-space",
            Domain::UnitBall { .. } => "unit-ball",
            Domain::PuncturedSpace { .. } => "punctured-space",
            Domain::Sector { .. } => "sector",
            Domain::Rectangle { .. } => "rectangle",
            Domain::TriangleT => "triangle",
            Domain::Polygon(_) => "polygon",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::HalfSpace { dim } | Domain::UnitBall { dim } => *dim,
            Domain::PuncturedSpace { puncture } => puncture.dim(),
            _ => 2,
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(
            self,
            Domain::UnitBall { .. }
                | Domain::Rectangle { .. }
                | Domain::TriangleT
                | Domain::Polygon(_)
        )
    }

    pub fn is_convex(&self) -> bool {
        match self {
            Domain::PuncturedSpace { .. } => false,
            Domain::Polygon(p) => p.is_convex(),
            _ => true,
        }
    }

    /// Polygonal view of the rectangle, the triangle and polygons.
    pub fn as_polygon(&self) -> Option<Polygon> {
        match self {
            Domain::Rectangle { a, b } => Some(
                Polygon::from_v2(vec![[-a, -b], [*a, -b], [*a, *b], [-a, *b]])
                    .expect("validated rectangle"),
            ),
            Domain::TriangleT => Some(
                Polygon::from_v2(vec![[0.0, 0.0], [SQRT3, -1.0], [SQRT3, 1.0]])
                    .expect("fixed triangle"),
            ),
            Domain::Polygon(p) => Some(p.clone()),
            _ => None,
        }
    }

    /// Axis-aligned bounding box of a bounded planar domain.
    pub fn bounding_box(&self) -> Option<([f64; 2], [f64; 2])> {
        match self {
            Domain::UnitBall { dim: 2 } => Some(([-1.0, -1.0], [1.0, 1.0])),
            _ => self.as_polygon().map(|p| p.bbox()),
        }
    }

    fn check_dim(&self, x: &Point) -> Result<()> {
        ensure_dim(x, self.dim())
    }

    /// Signed Euclidean distance to the boundary, positive inside.
    pub fn signed_distance(&self, x: &Point) -> Result<f64> {
        self.check_dim(x)?;
        Ok(match self {
            Domain::HalfSpace { .. } => x.last(),
            Domain::UnitBall { .. } => 1.0 - x.norm(),
            Domain::PuncturedSpace { puncture } => x.dist(puncture),
            Domain::Sector { alpha } => sector_signed_distance(*alpha, x.v2()),
            Domain::Rectangle { a, b } => {
                let (dx, dy) = (a - x.x().abs(), b - x.y().abs());
                if dx >= 0.0 && dy >= 0.0 {
                    dx.min(dy)
                } else {
                    -(dx.min(0.0).hypot(dy.min(0.0)))
                }
            }
            Domain::TriangleT | Domain::Polygon(_) => self
                .as_polygon()
                .expect("polygonal domain")
                .signed_distance_v2(x.v2()),
        })
    }

    pub fn classify(&self, x: &Point) -> Result<Location> {
        let d = self.signed_distance(x)?;
        Ok(if d > MEMBERSHIP_TOL {
            Location::Interior
        } else if d >= -MEMBERSHIP_TOL {
            Location::Boundary
        } else {
            Location::Exterior
        })
    }

    /// `true` for points strictly inside the domain.
    pub fn contains(&self, x: &Point) -> bool {
        matches!(self.classify(x), Ok(Location::Interior))
    }

    /// Distance from `x` to the boundary; zero on the boundary.
    pub fn boundary_distance(&self, x: &Point) -> Result<f64> {
        let d = self.signed_distance(x)?;
        if d < -MEMBERSHIP_TOL {
            return Err(Error::OutsideDomain);
        }
        Ok(d.max(0.0))
    }

    /// Like [`Domain::boundary_distance`] but rejects boundary points.
    pub fn interior_distance(&self, x: &Point) -> Result<f64> {
        match self.classify(x)? {
            Location::Interior => Ok(self.signed_distance(x)?),
            Location::Boundary => Err(Error::BoundaryPoint),
            Location::Exterior => Err(Error::OutsideDomain),
        }
    }

    pub fn require_interior(&self, x: &Point) -> Result<()> {
        self.interior_distance(x).map(|_| ())
    }

    /// Parametrization of the planar boundary. Unbounded boundaries need a
    /// parameter window: the interval along the real axis for the
    /// half-plane, or a signed ray parameter for sectors (negative values
    /// run along the ray of angle `alpha`).
    pub fn boundary_curve(&self, window: Option<(f64, f64)>) -> Result<BoundaryCurve> {
        match self {
            Domain::UnitBall { dim: 2 } => Ok(BoundaryCurve::closed(vec![Piece::Arc {
                center: [0.0, 0.0],
                radius: 1.0,
                start: 0.0,
                sweep: 2.0 * PI,
            }])),
            Domain::HalfSpace { dim: 2 } => {
                let (lo, hi) = check_window(window)?;
                Ok(BoundaryCurve::open(vec![Piece::Segment {
                    a: [lo, 0.0],
                    b: [hi, 0.0],
                }]))
            }
            Domain::Sector { alpha } => {
                let (lo, hi) = check_window(window)?;
                let ray = [alpha.cos(), alpha.sin()];
                let at = |t: f64| {
                    if t < 0.0 {
                        v2::scale(ray, -t)
                    } else {
                        [t, 0.0]
                    }
                };
                let pieces = if lo < 0.0 && hi > 0.0 {
                    vec![
                        Piece::Segment {
                            a: at(lo),
                            b: [0.0, 0.0],
                        },
                        Piece::Segment {
                            a: [0.0, 0.0],
                            b: at(hi),
                        },
                    ]
                } else {
                    vec![Piece::Segment {
                        a: at(lo),
                        b: at(hi),
                    }]
                };
                Ok(BoundaryCurve::open(pieces))
            }
            Domain::PuncturedSpace { puncture } if puncture.dim() == 2 => {
                Ok(BoundaryCurve::open(vec![Piece::Point(puncture.v2())]))
            }
            _ => match self.as_polygon() {
                Some(poly) => Ok(BoundaryCurve::closed(
                    poly.edges().map(|(a, b)| Piece::Segment { a, b }).collect(),
                )),
                None => Err(Error::UnsupportedDomain(format!(
                    "boundary parametrization of {} in dimension {}",
                    self.name(),
                    self.dim()
                ))),
            },
        }
    }
}

fn check_window(window: Option<(f64, f64)>) -> Result<(f64, f64)> {
    match window {
        Some((lo, hi)) if lo.is_finite() && hi.is_finite() && hi > lo => Ok((lo, hi)),
        _ => Err(Error::DegenerateWindow),
    }
}

fn sector_signed_distance(alpha: f64, p: V2) -> f64 {
    let ray = [alpha.cos(), alpha.sin()];
    let to_ray = |u: V2| {
        let t = v2::dot(p, u).max(0.0);
        v2::dist(p, v2::scale(u, t))
    };
    let d = to_ray([1.0, 0.0]).min(to_ray(ray));
    let arg = p[1].atan2(p[0]);
    if arg > 0.0 && arg < alpha {
        d
    } else {
        -d
    }
}

/// One smooth piece of a boundary curve, parametrized by arclength.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Piece {
    Segment {
        a: [f64; 2],
        b: [f64; 2],
    },
    /// Arc of the circle `center + radius * (cos t, sin t)` for
    /// `t` in `start .. start + sweep`; `sweep` may be negative.
    Arc {
        center: [f64; 2],
        radius: f64,
        start: f64,
        sweep: f64,
    },
    /// A single boundary point (punctures).
    Point([f64; 2]),
}

impl Piece {
    pub fn length(&self) -> f64 {
        match *self {
            Piece::Segment { a, b } => v2::dist(a, b),
            Piece::Arc { radius, sweep, .. } => radius * sweep.abs(),
            Piece::Point(_) => 0.0,
        }
    }

    fn at(&self, s: f64) -> V2 {
        match *self {
            Piece::Segment { a, b } => {
                let len = v2::dist(a, b);
                if len == 0.0 {
                    a
                } else {
                    v2::lerp(a, b, s / len)
                }
            }
            Piece::Arc {
                center,
                radius,
                start,
                sweep,
            } => {
                let t = start + sweep.signum() * s / radius;
                let (sn, cs) = t.sin_cos();
                [center[0] + radius * cs, center[1] + radius * sn]
            }
            Piece::Point(p) => p,
        }
    }
}

/// A boundary as a chain of pieces with a global arclength parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryCurve {
    pieces: Vec<Piece>,
    starts: Vec<f64>,
    length: f64,
    closed: bool,
}

impl BoundaryCurve {
    pub fn closed(pieces: Vec<Piece>) -> Self {
        Self::build(pieces, true)
    }

    pub fn open(pieces: Vec<Piece>) -> Self {
        Self::build(pieces, false)
    }

    fn build(pieces: Vec<Piece>, closed: bool) -> Self {
        let mut starts = Vec::with_capacity(pieces.len());
        let mut acc = 0.0;
        for p in &pieces {
            starts.push(acc);
            acc += p.length();
        }
        BoundaryCurve {
            pieces,
            starts,
            length: acc,
            closed,
        }
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Parameters where one piece ends and the next begins, plus the end.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b = self.starts.clone();
        b.push(self.length);
        b
    }

    /// Global parameter range of piece `i`.
    pub fn piece_range(&self, i: usize) -> (f64, f64) {
        let s = self.starts[i];
        (s, s + self.pieces[i].length())
    }

    /// Boundary point at parameter `t`; closed curves wrap around.
    pub fn point_at(&self, t: f64) -> [f64; 2] {
        let t = if self.closed && self.length > 0.0 {
            t.rem_euclid(self.length)
        } else {
            t.clamp(0.0, self.length)
        };
        let i = match self
            .starts
            .binary_search_by(|s| s.partial_cmp(&t).expect("finite parameter"))
        {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1),
        };
        self.pieces[i].at(t - self.starts[i])
    }

    /// `m` parameters: `k L / m` on closed curves, `k L / (m - 1)` on open ones.
    pub fn sample_params(&self, m: usize) -> Vec<f64> {
        if self.closed {
            (0..m).map(|k| self.length * k as f64 / m as f64).collect()
        } else if m == 1 {
            vec![0.0]
        } else {
            (0..m)
                .map(|k| self.length * k as f64 / (m - 1) as f64)
                .collect()
        }
    }
}

/// `m` points on the boundary: arclength-uniform on polygonal boundaries,
/// angle-uniform on the circle. Unbounded boundaries use `window`.
pub fn boundary_sample(
    domain: &Domain,
    m: usize,
    window: Option<(f64, f64)>,
) -> Result<Vec<Point>> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 samples, got {m}"
        )));
    }
    if let Domain::PuncturedSpace { puncture } = domain {
        return Ok(vec![puncture.clone(); m]);
    }
    let curve = domain.boundary_curve(window)?;
    Ok(curve
        .sample_params(m)
        .into_iter()
        .map(|t| Point::from(curve.point_at(t)))
        .collect())
}
