#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trimetric::{Domain, Point};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the disk of the given radius.
pub fn in_disk(rng: &mut ChaCha8Rng, radius: f64) -> Point {
    let r = radius * rng.gen::<f64>().sqrt();
    let t = rng.gen::<f64>() * std::f64::consts::TAU;
    Point::xy(r * t.cos(), r * t.sin())
}

pub fn in_half_plane(rng: &mut ChaCha8Rng) -> Point {
    Point::xy(rng.gen_range(-3.0..3.0), rng.gen_range(1e-3..3.0))
}

/// Uniform interior point by rejection from the bounding box; unbounded
/// domains are cut to a box of half-width 3.
pub fn in_domain(rng: &mut ChaCha8Rng, domain: &Domain) -> Point {
    let (lo, hi) = domain.bounding_box().unwrap_or(([-3.0, -3.0], [3.0, 3.0]));
    loop {
        let p = Point::xy(rng.gen_range(lo[0]..hi[0]), rng.gen_range(lo[1]..hi[1]));
        if domain.contains(&p) && domain.boundary_distance(&p).unwrap() > 1e-6 {
            return p;
        }
    }
}

pub fn l_shape() -> Domain {
    Domain::polygon(vec![
        Point::xy(0.0, 0.0),
        Point::xy(2.0, 0.0),
        Point::xy(2.0, 1.0),
        Point::xy(1.0, 1.0),
        Point::xy(1.0, 2.0),
        Point::xy(0.0, 2.0),
    ])
    .unwrap()
}

pub fn pentagon() -> Domain {
    let vs = (0..5)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / 5.0 + 0.3;
            Point::xy(1.5 * t.cos() + 0.2, 1.5 * t.sin() - 0.1)
        })
        .collect();
    Domain::polygon(vs).unwrap()
}
