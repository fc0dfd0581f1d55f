//! Seeded samplers. Every sample draws from its own counter-based stream.

use std::f64::consts::TAU;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use trimetric::rng::{stream_id, stream_rng};
use trimetric::{Domain, Point};

/// Half-width of the box used for unbounded domains.
pub const UNBOUNDED_EXTENT: f64 = 3.0;

pub fn rng_for(seed: u64, label: &str, index: u64) -> ChaCha8Rng {
    stream_rng(seed, stream_id(label), index)
}

fn gaussian_direction(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        // Box-Muller pairs; the norm is rejected only when it degenerates
        let v: Vec<f64> = (0..dim)
            .map(|_| {
                let (u1, u2): (f64, f64) = (rng.gen::<f64>().max(f64::MIN_POSITIVE), rng.gen());
                (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
            })
            .collect();
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

/// Uniform point of the ball `B(center, radius)`.
pub fn in_ball(rng: &mut ChaCha8Rng, center: &Point, radius: f64) -> Point {
    let n = center.dim();
    let r = radius * rng.gen::<f64>().powf(1.0 / n as f64);
    on_sphere(rng, center, r)
}

/// Uniform point of the sphere `S(center, radius)`.
pub fn on_sphere(rng: &mut ChaCha8Rng, center: &Point, radius: f64) -> Point {
    let n = center.dim();
    let dir = if n == 2 {
        let t = rng.gen::<f64>() * TAU;
        vec![t.cos(), t.sin()]
    } else {
        gaussian_direction(rng, n)
    };
    Point::new(
        center
            .coords()
            .iter()
            .zip(&dir)
            .map(|(c, d)| c + radius * d)
            .collect(),
    )
    .expect("finite point")
}

/// `radius * (1 - 10^{-u})` with `u` uniform in `[0, 6]`.
pub fn boundary_biased_radius(rng: &mut ChaCha8Rng, radius: f64) -> f64 {
    radius * (1.0 - 10f64.powf(-6.0 * rng.gen::<f64>()))
}

/// Interior point of `domain`, uniform on bounded domains and on a box of
/// half-width [`UNBOUNDED_EXTENT`] otherwise.
pub fn uniform_in(rng: &mut ChaCha8Rng, domain: &Domain) -> Point {
    loop {
        let p = match domain {
            Domain::UnitBall { dim } => in_ball(rng, &Point::origin(*dim), 1.0),
            Domain::HalfSpace { dim } => {
                let mut c: Vec<f64> = (0..dim - 1)
                    .map(|_| rng.gen_range(-UNBOUNDED_EXTENT..UNBOUNDED_EXTENT))
                    .collect();
                c.push(rng.gen::<f64>() * UNBOUNDED_EXTENT);
                Point::new(c).expect("finite point")
            }
            Domain::PuncturedSpace { puncture } => in_ball(rng, puncture, UNBOUNDED_EXTENT),
            Domain::Sector { alpha } => {
                let r = UNBOUNDED_EXTENT * rng.gen::<f64>().sqrt();
                let t = alpha * rng.gen::<f64>();
                Point::xy(r * t.cos(), r * t.sin())
            }
            _ => {
                let (lo, hi) = domain.bounding_box().expect("bounded polygonal domain");
                Point::xy(rng.gen_range(lo[0]..hi[0]), rng.gen_range(lo[1]..hi[1]))
            }
        };
        if domain.contains(&p) {
            return p;
        }
    }
}

/// Interior point `z` with two points uniform in `B(z, lambda d(z))`.
pub fn local_pair(rng: &mut ChaCha8Rng, domain: &Domain, lambda: f64) -> (Point, Point, Point) {
    let z = uniform_in(rng, domain);
    let d = domain.boundary_distance(&z).expect("interior point");
    let x = in_ball(rng, &z, lambda * d);
    let y = in_ball(rng, &z, lambda * d);
    (z, x, y)
}

/// Point of `domain` outside `B(x, t d(x))`, half of the time placed just
/// outside that ball.
pub fn outside_ball(rng: &mut ChaCha8Rng, domain: &Domain, x: &Point, t: f64) -> Point {
    let d = domain.boundary_distance(x).expect("interior point");
    loop {
        let y = if rng.gen_bool(0.5) {
            let r = t * d * (1.0 + 10f64.powf(-6.0 * rng.gen::<f64>()));
            on_sphere(rng, x, r)
        } else {
            uniform_in(rng, domain)
        };
        if domain.contains(&y) && y.dist(x) >= t * d {
            return y;
        }
    }
}
