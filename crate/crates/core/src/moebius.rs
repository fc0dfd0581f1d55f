//! Automorphisms of the unit disk and how much they can distort `s`.
//!
//! The class of automorphisms `h` with `|h(0)| = a` is parametrized as
//! `z -> e^{i t2} h_a(e^{i t1} z)` with `h_a(z) = (z + a) / (1 + a z)`.
//! Rotations are isometries of `s`, so the distortion ratio
//! `s(h x, h y) / s(x, y)` depends only on `a` and `t1`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{ensure_dim, Point};
use crate::rng::stream_rng;
use crate::solver::{s_unit_disk, SolverConfig};

/// `z -> e^{i post} h_a(e^{i pre} z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskAutomorphism {
    a: f64,
    rotation_pre: f64,
    rotation_post: f64,
}

impl DiskAutomorphism {
    /// `a` in `(-1, 1)`; angles are reduced to `[0, 2 pi)`.
    pub fn new(a: f64, rotation_pre: f64, rotation_post: f64) -> Result<Self> {
        if !(a > -1.0 && a < 1.0) {
            return Err(Error::InvalidArgument(format!("a = {a} outside (-1, 1)")));
        }
        if !(rotation_pre.is_finite() && rotation_post.is_finite()) {
            return Err(Error::InvalidArgument("non-finite rotation angle".into()));
        }
        Ok(DiskAutomorphism {
            a,
            rotation_pre: rotation_pre.rem_euclid(TAU),
            rotation_post: rotation_post.rem_euclid(TAU),
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn rotation_pre(&self) -> f64 {
        self.rotation_pre
    }

    pub fn rotation_post(&self) -> f64 {
        self.rotation_post
    }

    pub(crate) fn apply_c(&self, z: Complex64) -> Complex64 {
        let w = z * Complex64::from_polar(1.0, self.rotation_pre);
        let h = (w + self.a) / (1.0 + self.a * w);
        h * Complex64::from_polar(1.0, self.rotation_post)
    }

    pub fn apply(&self, z: &Point) -> Result<Point> {
        ensure_dim(z, 2)?;
        if z.norm() >= 1.0 {
            return Err(Error::OutsideDomain);
        }
        let w = self.apply_c(Complex64::new(z.x(), z.y()));
        // rounding can push images of points very close to the circle onto it
        let r = w.norm();
        let w = if r >= 1.0 {
            w * ((1.0 - f64::EPSILON) / r)
        } else {
            w
        };
        Ok(Point::xy(w.re, w.im))
    }

    /// Boundary points map to boundary points; no domain check.
    pub fn apply_closed(&self, z: &Point) -> Result<Point> {
        ensure_dim(z, 2)?;
        let w = self.apply_c(Complex64::new(z.x(), z.y()));
        Ok(Point::xy(w.re, w.im))
    }
}

/// Apply `h` to `z`.
pub fn apply_automorphism(h: &DiskAutomorphism, z: &Point) -> Result<Point> {
    h.apply(z)
}

/// `T_a(z) = (z - a) / (1 - a z)`, mapping `a e_1` to the origin.
pub fn t_a(a: f64, z: &Point) -> Result<Point> {
    ensure_dim(z, 2)?;
    if !(a > -1.0 && a < 1.0) {
        return Err(Error::InvalidArgument(format!("a = {a} outside (-1, 1)")));
    }
    let z = Complex64::new(z.x(), z.y());
    let w = (z - a) / (1.0 - a * z);
    Ok(Point::xy(w.re, w.im))
}

/// Both sides of `|T_a x - T_a y| = r^2 |x-y| / (|x - a*| |y - a*|)` with
/// `a* = a / |a|^2` and `r^2 = 1/|a|^2 - 1`, evaluated independently.
pub fn distance_ratio_identity(a: f64, x: &Point, y: &Point) -> Result<(f64, f64)> {
    if a == 0.0 {
        return Err(Error::Singularity("a* is undefined for a = 0"));
    }
    let lhs = t_a(a, x)?.dist(&t_a(a, y)?);
    let a_star = Point::xy(1.0 / a, 0.0);
    let r2 = 1.0 / (a * a) - 1.0;
    let rhs = r2 * x.dist(y) / (x.dist(&a_star) * y.dist(&a_star));
    Ok((lhs, rhs))
}

fn check_a(a: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidArgument(format!("a = {a} outside (0, 1)")));
    }
    Ok(())
}

/// The point `b = 1 / (1 + v (1 + a))` of the collinear witness family.
pub fn witness_b(a: f64, v: f64) -> f64 {
    1.0 / (1.0 + v * (1.0 + a))
}

/// `s(h 0, h b) / s(0, b)` for `h = h_a` and `b` from [`witness_b`], using
/// the same-ray formula `s(r, t) = (t - r) / (2 - t - r)`.
pub fn collinear_ratio(a: f64, v: f64) -> Result<f64> {
    check_a(a)?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::InvalidArgument(format!("v = {v} must be positive")));
    }
    let b = witness_b(a, v);
    // h(b) - a and 1 - h(b) without cancellation
    let num = b * (1.0 - a * a) / (1.0 + a * b);
    let one_minus_hb = (1.0 - a) * (1.0 - b) / (1.0 + a * b);
    let s_image = num / ((1.0 - a) + one_minus_hb);
    let s_pre = b / (1.0 + (1.0 - b));
    Ok(s_image / s_pre)
}

/// `(1 + 2 v (1 + a)) / (1 + 2 v)`, the closed value of [`collinear_ratio`].
pub fn collinear_ratio_formula(a: f64, v: f64) -> f64 {
    (1.0 + 2.0 * v * (1.0 + a)) / (1.0 + 2.0 * v)
}

/// Outcome of the two-sided distortion check for one pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SandwichCheck {
    pub s_pre: f64,
    pub s_image: f64,
    pub lower: f64,
    pub upper: f64,
    pub lower_margin: f64,
    pub upper_margin: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

/// `(1-|c|)/(1+|c|) s(x,y) <= s(h x, h y) <= (1+|c|)/(1-|c|) s(x,y)` where
/// `c = h^{-1}(0)` has modulus `|a|`.
pub fn sandwich_check(
    h: &DiskAutomorphism,
    x: &Point,
    y: &Point,
    cfg: &SolverConfig,
    tol: f64,
) -> Result<SandwichCheck> {
    if x == y {
        return Err(Error::InvalidArgument("points must be distinct".into()));
    }
    let s_pre = s_unit_disk(x, y, cfg)?.value;
    let s_image = s_unit_disk(&h.apply(x)?, &h.apply(y)?, cfg)?.value;
    let c = h.a().abs();
    let k = (1.0 + c) / (1.0 - c);
    let lower = s_pre / k;
    let upper = s_pre * k;
    let lower_margin = s_image - lower;
    let upper_margin = upper - s_image;
    Ok(SandwichCheck {
        s_pre,
        s_image,
        lower,
        upper,
        lower_margin,
        upper_margin,
        lower_ok: lower_margin >= -tol,
        upper_ok: upper_margin >= -tol,
    })
}

/// [`sandwich_check`] for `h = h_a` with the default solver and tolerance 1e-6.
pub fn moebius_sandwich_check(a: f64, x: &Point, y: &Point) -> Result<SandwichCheck> {
    let h = DiskAutomorphism::new(a, 0.0, 0.0)?;
    sandwich_check(&h, x, y, &SolverConfig::default(), 1e-6)
}

/// Settings for [`explore_l_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExploreConfig {
    pub budget: usize,
    pub seed: u64,
    /// Solver used during the random search.
    pub search_solver: SolverConfig,
    /// Solver used to re-evaluate the final configuration.
    pub final_solver: SolverConfig,
    pub hill_climb_iterations: usize,
}

impl ExploreConfig {
    pub fn new(budget: usize, seed: u64) -> Self {
        ExploreConfig {
            budget,
            seed,
            search_solver: SolverConfig {
                m: 64,
                ..SolverConfig::default()
            },
            final_solver: SolverConfig::default(),
            hill_climb_iterations: 200,
        }
    }
}

/// Result of the search for `L(a) = sup s(h x, h y) / s(x, y)` over the
/// automorphisms with `|h(0)| = a`.
#[derive(Clone, Debug, PartialEq)]
pub struct LEstimate {
    pub a: f64,
    /// Best value of the collinear witness family on a grid of `v`.
    pub lower_witnessed: f64,
    /// Ratio at the best configuration found.
    pub sampled_sup: f64,
    /// Best ratio among the random samples alone, before hill climbing.
    pub random_best: f64,
    pub budget: usize,
    pub seed: u64,
    pub witness_x: Point,
    pub witness_y: Point,
    pub witness_rotation: f64,
}

const EXPLORE_STREAM: u64 = 0x4c5f_6578_706c;

/// Ratio `s(h x, h y) / s(x, y)` for `h = h_a` after a pre-rotation by
/// `theta`; `None` when undefined.
fn distortion_ratio(a: f64, q: &[f64; 5], cfg: &SolverConfig) -> Option<f64> {
    let (x, y) = (q_point(q, 0), q_point(q, 2));
    if x.norm() >= 1.0 || y.norm() >= 1.0 || x == y {
        return None;
    }
    let h = DiskAutomorphism::new(a, q[4], 0.0).ok()?;
    let s_pre = s_unit_disk(&x, &y, cfg).ok()?.value;
    if s_pre <= 0.0 {
        return None;
    }
    let s_image = s_unit_disk(&h.apply(&x).ok()?, &h.apply(&y).ok()?, cfg)
        .ok()?
        .value;
    Some(s_image / s_pre)
}

fn q_point(q: &[f64; 5], i: usize) -> Point {
    Point::xy(q[i], q[i + 1])
}

fn random_in_disk(rng: &mut ChaCha8Rng, radius: f64) -> [f64; 2] {
    let r = radius * rng.gen::<f64>().sqrt();
    let t = rng.gen::<f64>() * TAU;
    [r * t.cos(), r * t.sin()]
}

/// Sample `index`: cycles through a boundary-biased pair, a pair at
/// separation `10^{-u}` and a uniform pair.
fn explore_sample(seed: u64, index: usize) -> [f64; 5] {
    let mut rng = stream_rng(seed, EXPLORE_STREAM, index as u64);
    let x = random_in_disk(&mut rng, 1.0);
    let y = match index % 3 {
        0 => {
            let u = rng.gen::<f64>() * 6.0;
            let r = 1.0 - 10f64.powf(-u);
            let t = rng.gen::<f64>() * TAU;
            [r * t.cos(), r * t.sin()]
        }
        1 => {
            let u = 1.0 + rng.gen::<f64>() * 7.0;
            let d = 10f64.powf(-u);
            let t = rng.gen::<f64>() * TAU;
            let y = [x[0] + d * t.cos(), x[1] + d * t.sin()];
            if y[0].hypot(y[1]) < 1.0 {
                y
            } else {
                [x[0] - d * t.cos(), x[1] - d * t.sin()]
            }
        }
        _ => random_in_disk(&mut rng, 1.0),
    };
    let theta = rng.gen::<f64>() * TAU;
    [x[0], x[1], y[0], y[1], theta]
}

/// Nelder-Mead maximization of `f` from `start`.
fn nelder_mead<F: Fn(&[f64; 5]) -> Option<f64>>(
    f: F,
    start: [f64; 5],
    steps: [f64; 5],
    iterations: usize,
) -> ([f64; 5], f64) {
    let cost = |q: &[f64; 5]| f(q).map_or(f64::INFINITY, |v| -v);
    let mut simplex: Vec<([f64; 5], f64)> = Vec::with_capacity(6);
    simplex.push((start, cost(&start)));
    for i in 0..5 {
        let mut q = start;
        q[i] += steps[i];
        simplex.push((q, cost(&q)));
    }
    let combine = |a: &[f64; 5], b: &[f64; 5], t: f64| -> [f64; 5] {
        let mut out = [0.0; 5];
        for i in 0..5 {
            out[i] = a[i] + t * (b[i] - a[i]);
        }
        out
    };
    for _ in 0..iterations {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("costs are never NaN"));
        let mut centroid = [0.0; 5];
        for (q, _) in &simplex[..5] {
            for i in 0..5 {
                centroid[i] += q[i] / 5.0;
            }
        }
        let worst = simplex[5];
        let reflected = combine(&centroid, &worst.0, -1.0);
        let fr = cost(&reflected);
        if fr < simplex[0].1 {
            let expanded = combine(&centroid, &worst.0, -2.0);
            let fe = cost(&expanded);
            simplex[5] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
        } else if fr < simplex[4].1 {
            simplex[5] = (reflected, fr);
        } else {
            let contracted = combine(&centroid, &worst.0, 0.5);
            let fc = cost(&contracted);
            if fc < worst.1 {
                simplex[5] = (contracted, fc);
            } else {
                let best = simplex[0].0;
                for item in simplex.iter_mut().skip(1) {
                    let q = combine(&best, &item.0, 0.5);
                    *item = (q, cost(&q));
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("costs are never NaN"));
    (simplex[0].0, -simplex[0].1)
}

/// Grid of `v` values for the witness family.
pub const WITNESS_V_GRID: [f64; 9] = [1.0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8];

/// [`explore_l_with`] with the default search settings.
pub fn explore_l(a: f64, budget: usize, seed: u64) -> Result<LEstimate> {
    explore_l_with(a, &ExploreConfig::new(budget, seed))
}

/// Seeded random search for the largest distortion ratio, followed by a
/// Nelder-Mead hill climb from the best sample. The witness family is
/// included among the candidates.
pub fn explore_l_with(a: f64, cfg: &ExploreConfig) -> Result<LEstimate> {
    check_a(a)?;
    if cfg.budget == 0 {
        return Err(Error::InvalidArgument("budget must be positive".into()));
    }
    let scfg = &cfg.search_solver;
    let mut lower_witnessed = f64::NEG_INFINITY;
    let mut best: Option<([f64; 5], f64)> = None;
    let mut offer = |q: [f64; 5], v: f64| {
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((q, v));
        }
    };
    for v in WITNESS_V_GRID {
        lower_witnessed = lower_witnessed.max(collinear_ratio(a, v)?);
        let q = [0.0, 0.0, witness_b(a, v), 0.0, 0.0];
        if let Some(r) = distortion_ratio(a, &q, scfg) {
            offer(q, r);
        }
    }
    let mut random_best = f64::NEG_INFINITY;
    for index in 0..cfg.budget {
        let q = explore_sample(cfg.seed, index);
        if let Some(r) = distortion_ratio(a, &q, scfg) {
            random_best = random_best.max(r);
            offer(q, r);
        }
    }
    let (start, start_value) = best.ok_or(Error::Undefined("no admissible sample"))?;
    let sep = (start[0] - start[2]).hypot(start[1] - start[3]).max(1e-12);
    let steps = [0.5 * sep, 0.5 * sep, 0.5 * sep, 0.5 * sep, 0.1];
    let (q, v) = nelder_mead(
        |q| distortion_ratio(a, q, scfg),
        start,
        steps,
        cfg.hill_climb_iterations,
    );
    let q = if v > start_value { q } else { start };
    let sampled_sup = distortion_ratio(a, &q, &cfg.final_solver)
        .ok_or(Error::Undefined("final configuration"))?;
    Ok(LEstimate {
        a,
        lower_witnessed,
        sampled_sup,
        random_best,
        budget: cfg.budget,
        seed: cfg.seed,
        witness_x: q_point(&q, 0),
        witness_y: q_point(&q, 2),
        witness_rotation: q[4].rem_euclid(TAU),
    })
}
