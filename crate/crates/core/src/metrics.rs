//! Metrics with closed formulas: `j`, `p`, the hyperbolic metrics of the
//! ball and half-space, `s` on the half-space and in punctured space, and
//! two explicit lower bounds for `s` on the unit ball.
//!
//! All functions return plain `f64` values. Coincident arguments give
//! exactly `0` (after the domain check).

use crate::error::{Error, Result};
use crate::geometry::{ensure_dim, ensure_same_dim, Domain, Point};

fn check_pair(domain: &Domain, x: &Point, y: &Point) -> Result<(f64, f64)> {
    ensure_same_dim(x, y)?;
    let dx = domain.interior_distance(x)?;
    let dy = domain.interior_distance(y)?;
    Ok((dx, dy))
}

/// `log(1 + |x-y| / min(d(x), d(y)))`.
pub fn j_metric(domain: &Domain, x: &Point, y: &Point) -> Result<f64> {
    let (dx, dy) = check_pair(domain, x, y)?;
    if x == y {
        return Ok(0.0);
    }
    let q = x.dist(y) / dx.min(dy);
    Ok(if q < 1.0 { q.ln_1p() } else { (1.0 + q).ln() })
}

/// `|x-y| / sqrt(|x-y|^2 + 4 d(x) d(y))`.
pub fn p_quantity(domain: &Domain, x: &Point, y: &Point) -> Result<f64> {
    let (dx, dy) = check_pair(domain, x, y)?;
    if x == y {
        return Ok(0.0);
    }
    let d = x.dist(y);
    Ok(d / (d * d + 4.0 * dx * dy).sqrt())
}

fn check_ball(x: &Point, y: &Point) -> Result<()> {
    ensure_same_dim(x, y)?;
    if x.norm() >= 1.0 || y.norm() >= 1.0 {
        return Err(Error::OutsideDomain);
    }
    Ok(())
}

fn check_half_space(x: &Point, y: &Point) -> Result<()> {
    ensure_same_dim(x, y)?;
    if x.last() <= 0.0 || y.last() <= 0.0 {
        return Err(Error::OutsideDomain);
    }
    Ok(())
}

/// `1 - |x|^2` without cancellation for `|x|` near one.
fn one_minus_sq(x: &Point) -> f64 {
    let r = x.norm();
    (1.0 - r) * (1.0 + r)
}

/// Hyperbolic distance in the upper half-space.
pub fn rho_half_space(x: &Point, y: &Point) -> Result<f64> {
    check_half_space(x, y)?;
    if x == y {
        return Ok(0.0);
    }
    let d = x.dist(y);
    // arcosh(1 + u) = log1p(u + sqrt(u (u + 2)))
    let u = d * d / (2.0 * x.last() * y.last());
    Ok((u + (u * (u + 2.0)).sqrt()).ln_1p())
}

/// Hyperbolic distance in the unit ball.
pub fn rho_ball(x: &Point, y: &Point) -> Result<f64> {
    Ok(2.0 * sinh_half_rho_ball(x, y)?.asinh())
}

/// `sinh(rho/2) = |x-y| / sqrt((1-|x|^2)(1-|y|^2))`.
pub fn sinh_half_rho_ball(x: &Point, y: &Point) -> Result<f64> {
    check_ball(x, y)?;
    if x == y {
        return Ok(0.0);
    }
    Ok(x.dist(y) / (one_minus_sq(x) * one_minus_sq(y)).sqrt())
}

/// `tanh(rho/2) = |x-y| / sqrt(|x-y|^2 + (1-|x|^2)(1-|y|^2))`.
pub fn tanh_half_rho_ball(x: &Point, y: &Point) -> Result<f64> {
    check_ball(x, y)?;
    if x == y {
        return Ok(0.0);
    }
    let d = x.dist(y);
    Ok(d / (d * d + one_minus_sq(x) * one_minus_sq(y)).sqrt())
}

/// `tanh(rho/2)` through the inversion form `|x-y| / (|x| |x* - y|)`; for
/// cross-checks only. Falls back to `|y|` at `x = 0`.
pub fn tanh_half_rho_ball_inversion(x: &Point, y: &Point) -> Result<f64> {
    check_ball(x, y)?;
    if x == y {
        return Ok(0.0);
    }
    let r = x.norm();
    if r == 0.0 {
        return Ok(y.norm());
    }
    let x_star = x.scale(1.0 / (r * r));
    Ok(x.dist(y) / (r * x_star.dist(y)))
}

/// `tanh(rho/2)` in the upper half-space.
pub fn tanh_half_rho_half_space(x: &Point, y: &Point) -> Result<f64> {
    check_half_space(x, y)?;
    if x == y {
        return Ok(0.0);
    }
    let d = x.dist(y);
    Ok(d / (d * d + 4.0 * x.last() * y.last()).sqrt())
}

/// `s` on the upper half-space: `|x-y| / |x - ybar|` where `ybar` is the
/// mirror image of `y` in the boundary hyperplane.
pub fn s_half_space(x: &Point, y: &Point) -> Result<f64> {
    check_half_space(x, y)?;
    if x == y {
        return Ok(0.0);
    }
    let mut bar = y.coords().to_vec();
    let n = bar.len();
    bar[n - 1] = -bar[n - 1];
    let ybar = Point::new(bar)?;
    Ok(x.dist(y) / x.dist(&ybar))
}

/// `arctan(sinh(rho/2))` in the unit disk.
pub fn rho_star_disk(x: &Point, y: &Point) -> Result<f64> {
    ensure_dim(x, 2)?;
    Ok(sinh_half_rho_ball(x, y)?.atan())
}

/// `s` in `R^n` minus `puncture`: `|x-y| / (|x-p| + |y-p|)`.
pub fn s_punctured(x: &Point, y: &Point, puncture: &Point) -> Result<f64> {
    ensure_same_dim(x, y)?;
    ensure_same_dim(x, puncture)?;
    let (dx, dy) = (x.dist(puncture), y.dist(puncture));
    if dx == 0.0 || dy == 0.0 {
        return Err(Error::BoundaryPoint);
    }
    if x == y {
        return Ok(0.0);
    }
    Ok((x.dist(y) / (dx + dy)).min(1.0))
}

/// Distance from the origin to the line through `x` and `y`.
fn chord_line_distance(x: &Point, y: &Point) -> f64 {
    let gram = x.norm_sq() * y.norm_sq() - x.dot(y).powi(2);
    gram.max(0.0).sqrt() / x.dist(y)
}

/// Lower bound for `s` on the unit ball from the symmetric pair about the
/// chord midpoint: `|x-y| / sqrt(|x-y|^2 + 4 (1 - |m|)^2)` with `|m|` the
/// distance from the origin to the line through `x` and `y`.
pub fn s_ball_lower_symmetrized(x: &Point, y: &Point) -> Result<f64> {
    check_ball(x, y)?;
    if x == y {
        return Err(Error::Undefined("chord direction of coincident points"));
    }
    let d = x.dist(y);
    let gap = 1.0 - chord_line_distance(x, y);
    Ok(d / (d * d + 4.0 * gap * gap).sqrt())
}

/// Lower bound `|x-y| / (|x-y| + 2(1-t))`, `t = max(|x|, |y|)`.
pub fn s_ball_lower_radial(x: &Point, y: &Point) -> Result<f64> {
    check_ball(x, y)?;
    if x == y {
        return Ok(0.0);
    }
    let d = x.dist(y);
    let t = x.norm().max(y.norm());
    Ok(d / (d + 2.0 * (1.0 - t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn p(x: f64, y: f64) -> Point {
        Point::xy(x, y)
    }

    #[test]
    fn j_examples() {
        let g = Domain::punctured(p(0.0, 0.0));
        let x = p(0.3, -0.7);
        assert_eq!(j_metric(&g, &x, &x.neg()).unwrap(), 3f64.ln());
        assert_eq!(j_metric(&g, &x, &x).unwrap(), 0.0);
        let h = Domain::half_plane();
        assert_abs_diff_eq!(
            j_metric(&h, &p(0.0, 1.0), &p(0.0, 2.0)).unwrap(),
            2f64.ln(),
            epsilon = 1e-15
        );
        assert_eq!(
            j_metric(&h, &p(0.0, 0.0), &p(0.0, 2.0)),
            Err(Error::BoundaryPoint)
        );
    }

    #[test]
    fn p_examples() {
        let h = Domain::half_plane();
        assert_abs_diff_eq!(
            p_quantity(&h, &p(0.0, 1.0), &p(0.0, 3.0)).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        let disk = Domain::unit_disk();
        let v = p_quantity(&disk, &p(0.0, 0.0), &p(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(v, 1.0 / 3.0, epsilon = 1e-15);
        assert_eq!(p_quantity(&disk, &p(0.2, 0.1), &p(0.2, 0.1)).unwrap(), 0.0);
    }

    #[test]
    fn rho_examples() {
        assert_abs_diff_eq!(
            rho_half_space(&p(0.0, 1.0), &p(0.0, 2.0)).unwrap(),
            2f64.ln(),
            epsilon = 1e-15
        );
        let t = tanh_half_rho_half_space(&p(0.0, 1.0), &p(1.0, 1.0)).unwrap();
        assert_abs_diff_eq!(t, 1.0 / 5f64.sqrt(), epsilon = 1e-15);
        let rho = rho_half_space(&p(0.0, 1.0), &p(1.0, 1.0)).unwrap();
        assert_abs_diff_eq!((rho / 2.0).tanh(), t, epsilon = 1e-15);
        assert_eq!(
            rho_half_space(&p(0.0, -1.0), &p(0.0, 1.0)),
            Err(Error::OutsideDomain)
        );

        let x = p(0.3, 0.4);
        assert_abs_diff_eq!(
            tanh_half_rho_ball(&Point::origin(2), &x).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            tanh_half_rho_ball(&p(0.5, 0.0), &p(-0.5, 0.0)).unwrap(),
            0.8,
            epsilon = 1e-15
        );
        assert_eq!(rho_ball(&x, &x).unwrap(), 0.0);
        assert_eq!(rho_ball(&p(1.0, 0.0), &x), Err(Error::OutsideDomain));
    }

    #[test]
    fn s_closed_forms() {
        assert_abs_diff_eq!(
            s_half_space(&p(0.0, 1.0), &p(0.0, 3.0)).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            s_half_space(&p(0.0, 1.0), &p(4.0, 1.0)).unwrap(),
            2.0 / 5f64.sqrt(),
            epsilon = 1e-15
        );
        let o = Point::origin(2);
        let x = p(0.4, -1.1);
        assert_eq!(s_punctured(&x, &x.neg(), &o).unwrap(), 1.0);
        assert_abs_diff_eq!(
            s_punctured(&p(1.0, 0.0), &p(0.0, 1.0), &o).unwrap(),
            FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        assert_eq!(s_punctured(&o, &x, &o), Err(Error::BoundaryPoint));
    }

    #[test]
    fn rho_star() {
        let t = FRAC_1_SQRT_2;
        assert_abs_diff_eq!(
            rho_star_disk(&Point::origin(2), &p(t, 0.0)).unwrap(),
            PI / 4.0,
            epsilon = 1e-15
        );
        let mut prev = 0.0;
        for k in 1..100 {
            let v = rho_star_disk(&Point::origin(2), &p(k as f64 / 100.0, 0.0)).unwrap();
            assert!(v > prev && v < PI / 2.0);
            prev = v;
        }
    }

    #[test]
    fn ball_lower_bounds() {
        let t = 0.6;
        let v = s_ball_lower_symmetrized(&p(t, 0.0), &p(-t, 0.0)).unwrap();
        assert_abs_diff_eq!(v, t / (t * t + 1.0f64).sqrt(), epsilon = 1e-15);
        let m = chord_line_distance(&p(0.5, 0.0), &p(0.0, 0.5));
        assert_abs_diff_eq!(m, 0.25 / (0.5 * 2f64.sqrt()), epsilon = 1e-15);
        assert_eq!(chord_line_distance(&p(0.2, 0.2), &p(0.5, 0.5)), 0.0);
        assert!(s_ball_lower_symmetrized(&p(0.1, 0.0), &p(0.1, 0.0)).is_err());

        let (r, t) = (0.2, 0.6);
        let v = s_ball_lower_radial(&p(r, 0.0), &p(t, 0.0)).unwrap();
        assert_abs_diff_eq!(v, (t - r) / (2.0 - t - r), epsilon = 1e-15);
        assert_abs_diff_eq!(
            s_ball_lower_radial(&Point::origin(2), &p(0.5, 0.0)).unwrap(),
            1.0 / 3.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn inversion_form_agrees() {
        let x = p(0.3, -0.2);
        let y = p(-0.5, 0.45);
        assert_abs_diff_eq!(
            tanh_half_rho_ball_inversion(&x, &y).unwrap(),
            tanh_half_rho_ball(&x, &y).unwrap(),
            epsilon = 1e-14
        );
    }
}
