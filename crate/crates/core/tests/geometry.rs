mod common;

use proptest::prelude::*;
use trimetric::geometry::{angle_at, boundary_sample, invert_in_unit_sphere, reflect_across_line};
use trimetric::{Domain, Line2, Point};

fn pt() -> impl Strategy<Value = Point> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| Point::xy(x, y))
}

fn line() -> impl Strategy<Value = Line2> {
    (pt(), 0.0..std::f64::consts::TAU)
        .prop_map(|(p, t)| Line2::new(&p, &Point::xy(t.cos(), t.sin())).unwrap())
}

proptest! {
    #[test]
    fn reflection_is_an_involutive_isometry(l in line(), p in pt(), q in pt()) {
        let (rp, rq) = (reflect_across_line(&p, &l).unwrap(), reflect_across_line(&q, &l).unwrap());
        prop_assert!((p.dist(&q) - rp.dist(&rq)).abs() <= 1e-12 * (1.0 + p.dist(&q)) * 10.0);
        prop_assert!(reflect_across_line(&rp, &l).unwrap().dist(&p) <= 1e-12 * 40.0);
    }

    #[test]
    fn inversion_fixes_the_unit_sphere(t in 0.0..std::f64::consts::TAU, phi in 0.0..std::f64::consts::PI) {
        let u = Point::new(vec![phi.sin() * t.cos(), phi.sin() * t.sin(), phi.cos()]).unwrap();
        prop_assert!(invert_in_unit_sphere(&u).unwrap().dist(&u) <= 1e-15);
        let w = Point::xy(t.cos(), t.sin());
        prop_assert!(invert_in_unit_sphere(&w).unwrap().dist(&w) <= 1e-15);
    }

    #[test]
    fn angle_is_symmetric(x in pt(), z in pt(), y in pt()) {
        prop_assume!(x != z && y != z);
        prop_assert_eq!(angle_at(&x, &z, &y).unwrap(), angle_at(&y, &z, &x).unwrap());
    }
}

fn domains() -> Vec<Domain> {
    vec![
        Domain::unit_disk(),
        Domain::TriangleT,
        Domain::rectangle(2.0, 1.0).unwrap(),
        common::l_shape(),
        common::pentagon(),
    ]
}

#[test]
fn boundary_samples_are_no_closer_than_the_boundary() {
    let mut rng = common::rng(1);
    for d in domains() {
        for _ in 0..50 {
            let x = common::in_domain(&mut rng, &d);
            let dist = d.boundary_distance(&x).unwrap();
            let pts = boundary_sample(&d, 200, None).unwrap();
            for z in &pts {
                assert!(x.dist(z) >= dist - 1e-12, "{} {:?} {:?}", d.name(), x, z);
                assert!(d.boundary_distance(z).unwrap() <= 1e-12);
            }
        }
    }
}

#[test]
fn dense_boundary_sample_recovers_the_distance() {
    let mut rng = common::rng(2);
    for d in domains() {
        let pts = boundary_sample(&d, 100_000, None).unwrap();
        for _ in 0..5 {
            let x = common::in_domain(&mut rng, &d);
            let best = pts.iter().map(|z| x.dist(z)).fold(f64::INFINITY, f64::min);
            assert!(
                (best - d.boundary_distance(&x).unwrap()).abs() <= 1e-4,
                "{}",
                d.name()
            );
        }
    }
}
