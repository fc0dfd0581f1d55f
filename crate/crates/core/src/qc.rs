//! Distortion functions and distortion bounds for quasiconformal and
//! quasiregular maps.
//!
//! In the plane the distortion function is realized exactly through the
//! Grötzsch modulus `mu`, evaluated with complete elliptic integrals by the
//! arithmetic-geometric mean. In higher dimensions only explicit bounds in
//! terms of the ring constant `lambda_n` are available; `lambda_n` is known
//! to lie in `[4, 2 e^(n-1))` and every bound uses whichever end of that
//! interval keeps the bound valid.

use std::f64::consts::{E, FRAC_PI_2};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::metrics;

const AGM_EPSILON: f64 = 1e-15;
const AGM_MAX_ITER: usize = 64;
const BISECTION_LO: f64 = 1e-12;
const BISECTION_HI: f64 = 1.0 - 1e-12;
const BISECTION_MAX_ITER: usize = 200;

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() < AGM_EPSILON * a.max(1.0) {
            break;
        }
        let next = (a + b) / 2.0;
        b = (a * b).sqrt();
        a = next;
    }
    (a + b) / 2.0
}

/// `sqrt(1 - r^2)` without cancellation near `r = 1`.
fn complement(r: f64) -> f64 {
    ((1.0 - r) * (1.0 + r)).sqrt()
}

fn check_unit_interval(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "argument {r} outside (0, 1)"
        )));
    }
    Ok(())
}

/// Modulus of the plane Grötzsch ring, `mu(r) = (pi/2) K(r') / K(r)`.
pub fn mu_grotzsch_2d(r: f64) -> Result<f64> {
    check_unit_interval(r)?;
    Ok(FRAC_PI_2 * agm(1.0, complement(r)) / agm(1.0, r))
}

/// `mu^{-1}` by bisection; `mu` is decreasing.
fn mu_inverse(target: f64) -> f64 {
    let mu = |s: f64| FRAC_PI_2 * agm(1.0, complement(s)) / agm(1.0, s);
    let (mut lo, mut hi) = (BISECTION_LO, BISECTION_HI);
    for _ in 0..BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mu(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Plane distortion function `phi_{K,2}(r) = mu^{-1}(mu(r) / K)`. Any
/// `K > 0` is accepted, so `K < 1` gives the inverse direction.
pub fn phi_exact_2d(k: f64, r: f64) -> Result<f64> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "K must be positive, got {k}"
        )));
    }
    check_unit_interval(r)?;
    if k == 1.0 {
        return Ok(r);
    }
    Ok(mu_inverse(mu_grotzsch_2d(r)? / k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Exact,
    UpperBound,
    LowerBound,
}

impl BoundKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::Exact => "exact",
            BoundKind::UpperBound => "upper_bound",
            BoundKind::LowerBound => "lower_bound",
        }
    }
}

/// A value together with whether it is exact or one-sided.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundValue {
    pub value: f64,
    pub kind: BoundKind,
    /// Short description of the formula that produced the value.
    pub formula: &'static str,
}

impl BoundValue {
    fn new(value: f64, kind: BoundKind, formula: &'static str) -> Self {
        BoundValue {
            value,
            kind,
            formula,
        }
    }
}

/// Dilatation `K`, dimension `n` and the derived exponents.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QcParams {
    pub k: f64,
    pub n: usize,
    /// `K^{1/(1-n)}`.
    pub alpha: f64,
    /// `1 / alpha`.
    pub beta: f64,
    /// Lower end of the interval known to contain `lambda_n`.
    pub lambda_lo: f64,
    /// Upper end of that interval (exclusive for `n >= 3`, equal to the
    /// lower end for `n = 2`).
    pub lambda_hi: f64,
}

impl QcParams {
    pub fn new(k: f64, n: usize) -> Result<Self> {
        if !(k >= 1.0 && k.is_finite()) {
            return Err(Error::InvalidArgument(format!("K must be >= 1, got {k}")));
        }
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "dimension must be >= 2, got {n}"
            )));
        }
        let alpha = k.powf(1.0 / (1.0 - n as f64));
        let lambda_hi = if n == 2 {
            4.0
        } else {
            2.0 * E.powi(n as i32 - 1)
        };
        Ok(QcParams {
            k,
            n,
            alpha,
            beta: 1.0 / alpha,
            lambda_lo: 4.0,
            lambda_hi,
        })
    }

    pub fn lambda_is_exact(&self) -> bool {
        self.n == 2
    }
}

/// Bracket `r^alpha <= phi_{K,n}(r) <= min(1, lambda^{1-alpha} r^alpha)`.
pub fn phi_bounds(p: &QcParams, r: f64) -> Result<(BoundValue, BoundValue)> {
    check_unit_interval(r)?;
    let ra = r.powf(p.alpha);
    Ok((
        BoundValue::new(ra, BoundKind::LowerBound, "r^alpha"),
        BoundValue::new(
            (p.lambda_hi.powf(1.0 - p.alpha) * ra).min(1.0),
            BoundKind::UpperBound,
            "min(1, lambda^(1-alpha) r^alpha)",
        ),
    ))
}

/// The weaker explicit upper bound `2^{1-1/K} K r^alpha`.
pub fn phi_upper_weak(p: &QcParams, r: f64) -> Result<BoundValue> {
    check_unit_interval(r)?;
    Ok(BoundValue::new(
        2f64.powf(1.0 - 1.0 / p.k) * p.k * r.powf(p.alpha),
        BoundKind::UpperBound,
        "2^(1-1/K) K r^alpha",
    ))
}

/// Bracket `lambda^{1-beta} r^beta <= phi_{1/K,n}(r) <= r^beta`.
pub fn phi_inv_bounds(p: &QcParams, r: f64) -> Result<(BoundValue, BoundValue)> {
    check_unit_interval(r)?;
    let rb = r.powf(p.beta);
    Ok((
        BoundValue::new(
            p.lambda_hi.powf(1.0 - p.beta) * rb,
            BoundKind::LowerBound,
            "lambda^(1-beta) r^beta",
        ),
        BoundValue::new(rb, BoundKind::UpperBound, "r^beta"),
    ))
}

/// The weaker explicit lower bound `2^{1-K} K^{-K} r^beta`.
pub fn phi_inv_lower_weak(p: &QcParams, r: f64) -> Result<BoundValue> {
    check_unit_interval(r)?;
    Ok(BoundValue::new(
        2f64.powf(1.0 - p.k) * p.k.powf(-p.k) * r.powf(p.beta),
        BoundKind::LowerBound,
        "2^(1-K) K^(-K) r^beta",
    ))
}

fn check_k(k: f64) -> Result<()> {
    if !(k >= 1.0 && k.is_finite()) {
        return Err(Error::InvalidArgument(format!("K must be >= 1, got {k}")));
    }
    Ok(())
}

/// Upper bound `exp(4 K (K+1) sqrt(K-1))` for `eta*_{K,n}(1)`.
pub fn eta_star_upper(k: f64, n: usize) -> Result<BoundValue> {
    check_k(k)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "dimension must be >= 2, got {n}"
        )));
    }
    let value = (4.0 * k * (k + 1.0) * (k - 1.0).sqrt()).exp();
    let kind = if k == 1.0 {
        BoundKind::Exact
    } else {
        BoundKind::UpperBound
    };
    Ok(BoundValue::new(value, kind, "exp(4K(K+1)sqrt(K-1))"))
}

/// `P5 = 2^{1-beta/alpha} lambda^{1-beta} / eta*` and
/// `P6 = 2^{1-alpha/beta} lambda^{beta-1} eta*`. With only an upper bound
/// for `eta*` these become a lower bound for `P5` and an upper bound for `P6`.
pub fn p5_p6(p: &QcParams, eta: &BoundValue) -> Result<(BoundValue, BoundValue)> {
    if eta.kind == BoundKind::LowerBound {
        return Err(Error::InvalidArgument(
            "eta* must be exact or an upper bound".into(),
        ));
    }
    let exact = eta.kind == BoundKind::Exact && (p.lambda_is_exact() || p.k == 1.0);
    let lower_kind = if exact {
        BoundKind::Exact
    } else {
        BoundKind::LowerBound
    };
    let upper_kind = if exact {
        BoundKind::Exact
    } else {
        BoundKind::UpperBound
    };
    let lam = p.lambda_hi;
    let p5 = 2f64.powf(1.0 - p.beta / p.alpha) * lam.powf(1.0 - p.beta) / eta.value;
    let p6 = 2f64.powf(1.0 - p.alpha / p.beta) * lam.powf(p.beta - 1.0) * eta.value;
    Ok((
        BoundValue::new(p5, lower_kind, "2^(1-beta/alpha) lambda^(1-beta) / eta*"),
        BoundValue::new(p6, upper_kind, "2^(1-alpha/beta) lambda^(beta-1) eta*"),
    ))
}

/// `K^K exp(2(K+1)(K-1) + 4K(K+1) sqrt(K-1))`, an explicit upper bound for `1/P5`.
pub fn corollary_coefficient(k: f64) -> Result<f64> {
    check_k(k)?;
    let exponent = 2.0 * (k + 1.0) * (k - 1.0) + 4.0 * k * (k + 1.0) * (k - 1.0).sqrt();
    Ok(k.powf(k) * exponent.exp())
}

/// Schwarz-type bound for `tanh(rho(f x, f y) / 2)` given `t = tanh(rho(x, y) / 2)`:
/// exact `phi_{K,2}(t)` in the plane, `min(1, lambda^{1-alpha} t^alpha)` otherwise.
pub fn schwarz_bound(p: &QcParams, t: f64) -> Result<BoundValue> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!("t = {t} outside [0, 1)")));
    }
    if t == 0.0 {
        return Ok(BoundValue::new(0.0, BoundKind::Exact, "phi(0) = 0"));
    }
    if p.n == 2 {
        return Ok(BoundValue::new(
            phi_exact_2d(p.k, t)?,
            BoundKind::Exact,
            "phi_{K,2}(t)",
        ));
    }
    Ok(BoundValue::new(
        (p.lambda_hi.powf(1.0 - p.alpha) * t.powf(p.alpha)).min(1.0),
        BoundKind::UpperBound,
        "min(1, lambda^(1-alpha) t^alpha)",
    ))
}

/// The four distortion bounds for `s` under `K`-quasiregular maps between
/// balls and half-spaces:
///
/// 1. half-space to half-space: `lambda^{1-alpha} s^alpha`
/// 2. ball to ball: `2^alpha lambda^{1-alpha} s^alpha`
/// 3. ball to half-space: `2^alpha lambda^{1-alpha} s^alpha`
/// 4. half-space to ball: `lambda^{1-alpha} s^alpha`
///
/// Values are clamped to `[0, 1]`.
pub fn thm1_bound(case: u8, p: &QcParams, s: f64) -> Result<BoundValue> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidArgument(format!("s = {s} outside [0, 1]")));
    }
    let base = p.lambda_hi.powf(1.0 - p.alpha) * s.powf(p.alpha);
    let (value, formula) = match case {
        1 | 4 => (base, "lambda^(1-alpha) s^alpha"),
        2 | 3 => (
            2f64.powf(p.alpha) * base,
            "2^alpha lambda^(1-alpha) s^alpha",
        ),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "case must be 1..=4, got {case}"
            )))
        }
    };
    Ok(BoundValue::new(
        value.clamp(0.0, 1.0),
        BoundKind::UpperBound,
        formula,
    ))
}

/// Radial stretch `x -> |x|^{1/K - 1} x`, a `K`-quasiconformal self-map of
/// punctured space fixing the unit sphere.
pub fn radial_stretch(k: f64, x: &Point) -> Result<Point> {
    check_k(k)?;
    let r = x.norm();
    if r == 0.0 {
        return Err(Error::Singularity("radial stretch at the origin"));
    }
    if k == 1.0 {
        return Ok(x.clone());
    }
    Ok(x.scale(r.powf(1.0 / k - 1.0)))
}

/// One evaluation of the punctured-space distortion bound under the radial
/// stretch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Thm2Check {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// `s(f z, f w) <= C(K) s(z, w)^alpha` in `R^n` minus the origin, with `f`
/// the radial stretch and `C(K)` the [`corollary_coefficient`].
pub fn thm2_check(k: f64, z: &Point, w: &Point) -> Result<Thm2Check> {
    let origin = Point::origin(z.dim());
    if z == w {
        return Err(Error::InvalidArgument("points must be distinct".into()));
    }
    let s = metrics::s_punctured(z, w, &origin)?;
    let fz = radial_stretch(k, z)?;
    let fw = radial_stretch(k, w)?;
    let lhs = metrics::s_punctured(&fz, &fw, &origin)?;
    let p = QcParams::new(k, z.dim())?;
    let rhs = corollary_coefficient(k)? * s.powf(p.alpha);
    Ok(Thm2Check {
        lhs,
        rhs,
        pass: lhs <= rhs + 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn mu_values() {
        assert_abs_diff_eq!(
            mu_grotzsch_2d(FRAC_1_SQRT_2).unwrap(),
            PI / 2.0,
            epsilon = 1e-14
        );
        let r: f64 = 0.3;
        let prod = mu_grotzsch_2d(r).unwrap() * mu_grotzsch_2d((1.0 - r * r).sqrt()).unwrap();
        assert_abs_diff_eq!(prod, PI * PI / 4.0, epsilon = 1e-10);
        assert!(mu_grotzsch_2d(0.2).unwrap() > mu_grotzsch_2d(0.8).unwrap());
        assert!(mu_grotzsch_2d(0.0).is_err());
        assert!(mu_grotzsch_2d(1.0).is_err());
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi_exact_2d(1.0, 0.37).unwrap(), 0.37);
        let r: f64 = 0.5;
        assert_abs_diff_eq!(
            phi_exact_2d(2.0, r).unwrap(),
            2.0 * r.sqrt() / (1.0 + r),
            epsilon = 1e-12
        );
        let v = phi_exact_2d(2.0, r).unwrap();
        assert!(v >= r.sqrt() && v <= 1.0);
        assert!(phi_exact_2d(0.0, 0.5).is_err());
    }

    #[test]
    fn bounds_examples() {
        let p = QcParams::new(1.0, 2).unwrap();
        let (lo, hi) = phi_bounds(&p, 0.4).unwrap();
        assert_eq!((lo.value, hi.value), (0.4, 0.4));
        let p = QcParams::new(2.0, 2).unwrap();
        let (lo, hi) = phi_bounds(&p, 0.25).unwrap();
        assert_abs_diff_eq!(lo.value, 0.5, epsilon = 1e-15);
        assert_eq!(hi.value, 1.0);
        let (lo, hi) = phi_inv_bounds(&p, 0.9).unwrap();
        assert_abs_diff_eq!(lo.value, 0.2025, epsilon = 1e-15);
        assert_abs_diff_eq!(hi.value, 0.81, epsilon = 1e-15);
        let exact = phi_exact_2d(0.5, 0.9).unwrap();
        assert!(lo.value <= exact && exact <= hi.value);
        let p3 = QcParams::new(2.0, 3).unwrap();
        assert_abs_diff_eq!(p3.alpha, FRAC_1_SQRT_2, epsilon = 1e-15);
        let (lo, hi) = phi_bounds(&p3, 0.3).unwrap();
        assert!(lo.value <= hi.value);
    }

    #[test]
    fn eta_and_coefficients() {
        assert_eq!(eta_star_upper(1.0, 2).unwrap().value, 1.0);
        assert_abs_diff_eq!(
            eta_star_upper(2.0, 2).unwrap().value / 24f64.exp(),
            1.0,
            epsilon = 1e-14
        );
        assert!(eta_star_upper(0.5, 2).is_err());
        let p = QcParams::new(1.0, 3).unwrap();
        let (p5, p6) = p5_p6(&p, &eta_star_upper(1.0, 3).unwrap()).unwrap();
        assert_eq!((p5.value, p6.value), (1.0, 1.0));
        assert_eq!(corollary_coefficient(1.0).unwrap(), 1.0);
        let k: f64 = 1.5;
        let expected = k.powf(k) * (2.5 + 4.0 * 1.5 * 2.5 * 0.5f64.sqrt()).exp();
        assert_abs_diff_eq!(
            corollary_coefficient(k).unwrap() / expected,
            1.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn bound_functions_at_identity() {
        let p = QcParams::new(1.0, 2).unwrap();
        assert_eq!(schwarz_bound(&p, 0.3).unwrap().value, 0.3);
        assert_eq!(thm1_bound(1, &p, 0.3).unwrap().value, 0.3);
        assert_eq!(thm1_bound(2, &p, 0.3).unwrap().value, 0.6);
        assert!(thm1_bound(5, &p, 0.3).is_err());
        let p = QcParams::new(2.0, 2).unwrap();
        let a = FRAC_1_SQRT_2;
        let expected = 2f64.powf(a) * 4f64.powf(1.0 - a) * 0.3f64.powf(a);
        assert_abs_diff_eq!(
            thm1_bound(2, &p, 0.3).unwrap().value,
            expected.min(1.0),
            epsilon = 1e-15
        );
        let s = schwarz_bound(&p, 0.5).unwrap();
        assert_abs_diff_eq!(s.value, 2.0 * 0.5f64.sqrt() / 1.5, epsilon = 1e-12);
        let p3 = QcParams::new(2.0, 3).unwrap();
        let s3 = schwarz_bound(&p3, 0.5).unwrap();
        assert_eq!(s3.kind, BoundKind::UpperBound);
        assert!(s3.value <= 1.0);
    }

    #[test]
    fn stretch_and_thm2() {
        let x = Point::xy(4.0, 0.0);
        assert_eq!(radial_stretch(1.0, &x).unwrap(), x);
        assert_eq!(radial_stretch(2.0, &x).unwrap(), Point::xy(2.0, 0.0));
        assert!(radial_stretch(2.0, &Point::origin(2)).is_err());
        let c = thm2_check(2.0, &Point::xy(1.0, 0.0), &Point::xy(-1.0, 0.0)).unwrap();
        assert_eq!(c.lhs, 1.0);
        assert!(c.pass && c.rhs >= 1.0);
        let c = thm2_check(1.0, &Point::xy(0.3, 0.2), &Point::xy(-1.0, 0.5)).unwrap();
        assert_eq!(c.lhs, c.rhs);
    }
}
