mod common;

use rand::Rng;
use trimetric::metrics::{
    j_metric, p_quantity, rho_ball, rho_half_space, s_ball_lower_radial, s_ball_lower_symmetrized,
    s_half_space, sinh_half_rho_ball, tanh_half_rho_ball, tanh_half_rho_ball_inversion,
    tanh_half_rho_half_space,
};
use trimetric::solver::s_unit_disk;
use trimetric::{Domain, Point, SolverConfig};

#[test]
fn half_plane_s_p_and_rho_agree() {
    let hp = Domain::half_plane();
    let mut rng = common::rng(10);
    for _ in 0..10_000 {
        let (x, y) = (
            common::in_half_plane(&mut rng),
            common::in_half_plane(&mut rng),
        );
        let s = s_half_space(&x, &y).unwrap();
        let p = p_quantity(&hp, &x, &y).unwrap();
        let t = (rho_half_space(&x, &y).unwrap() / 2.0).tanh();
        assert!((s - p).abs() <= 1e-12, "{x:?} {y:?}");
        assert!((s - t).abs() <= 1e-12, "{x:?} {y:?}");
        assert!((s - tanh_half_rho_half_space(&x, &y).unwrap()).abs() <= 1e-12);
    }
}

#[test]
fn sinh_and_tanh_forms_of_rho_ball_agree() {
    let mut rng = common::rng(11);
    for _ in 0..10_000 {
        let (x, y) = (
            common::in_disk(&mut rng, 0.999),
            common::in_disk(&mut rng, 0.999),
        );
        let sh = sinh_half_rho_ball(&x, &y).unwrap();
        let th = tanh_half_rho_ball(&x, &y).unwrap();
        let from_sinh = sh / (1.0 + sh * sh).sqrt();
        assert!((from_sinh - th).abs() <= 1e-10);
        assert!((tanh_half_rho_ball_inversion(&x, &y).unwrap() - th).abs() <= 1e-10);
        assert!(((rho_ball(&x, &y).unwrap() / 2.0).tanh() - th).abs() <= 1e-10);
    }
}

#[test]
fn metrics_are_symmetric_and_vanish_on_the_diagonal() {
    let disk = Domain::unit_disk();
    let mut rng = common::rng(12);
    for _ in 0..1000 {
        let (x, y) = (
            common::in_disk(&mut rng, 0.99),
            common::in_disk(&mut rng, 0.99),
        );
        assert_eq!(
            j_metric(&disk, &x, &y).unwrap(),
            j_metric(&disk, &y, &x).unwrap()
        );
        assert_eq!(rho_ball(&x, &y).unwrap(), rho_ball(&y, &x).unwrap());
        assert_eq!(j_metric(&disk, &x, &x).unwrap(), 0.0);
        assert_eq!(rho_ball(&x, &x).unwrap(), 0.0);
        let (u, v) = (
            common::in_half_plane(&mut rng),
            common::in_half_plane(&mut rng),
        );
        assert_eq!(
            rho_half_space(&u, &v).unwrap(),
            rho_half_space(&v, &u).unwrap()
        );
        assert_eq!(rho_half_space(&u, &u).unwrap(), 0.0);
    }
}

#[test]
fn p_fails_the_triangle_inequality_for_small_t() {
    let disk = Domain::unit_disk();
    let p = |x: &Point, y: &Point| p_quantity(&disk, x, y).unwrap();
    let t = 0.1;
    let (a, o, b) = (Point::xy(t, 0.0), Point::origin(2), Point::xy(-t, 0.0));
    assert!(p(&a, &o) + p(&o, &b) < p(&a, &b));
    let t = 0.9;
    let (a, b) = (Point::xy(t, 0.0), Point::xy(-t, 0.0));
    assert!(p(&a, &o) + p(&o, &b) >= p(&a, &b));
}

#[test]
fn j_rho_two_j_on_ball_and_half_space() {
    let disk = Domain::unit_disk();
    let ball3 = Domain::unit_ball(3).unwrap();
    let hp = Domain::half_plane();
    let mut rng = common::rng(13);
    for _ in 0..100_000 {
        let (x, y) = (
            common::in_disk(&mut rng, 0.999),
            common::in_disk(&mut rng, 0.999),
        );
        let j = j_metric(&disk, &x, &y).unwrap();
        let rho = rho_ball(&x, &y).unwrap();
        assert!(j <= rho + 1e-12 && rho <= 2.0 * j + 1e-12, "{x:?} {y:?}");
        let (u, v) = (
            common::in_half_plane(&mut rng),
            common::in_half_plane(&mut rng),
        );
        let j = j_metric(&hp, &u, &v).unwrap();
        let rho = rho_half_space(&u, &v).unwrap();
        assert!(j <= rho + 1e-12 && rho <= 2.0 * j + 1e-12, "{u:?} {v:?}");
    }
    for _ in 0..10_000 {
        let mut c = || loop {
            let p = Point::new((0..3).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
            if p.norm() < 0.999 {
                return p;
            }
        };
        let (x, y) = (c(), c());
        let j = j_metric(&ball3, &x, &y).unwrap();
        let rho = rho_ball(&x, &y).unwrap();
        assert!(j <= rho + 1e-12 && rho <= 2.0 * j + 1e-12);
    }
}

#[test]
fn disk_lower_bounds_stay_below_the_solver() {
    let cfg = SolverConfig::default();
    let mut rng = common::rng(14);
    for _ in 0..10_000 {
        let (x, y) = (
            common::in_disk(&mut rng, 0.999),
            common::in_disk(&mut rng, 0.999),
        );
        let s = s_unit_disk(&x, &y, &cfg).unwrap().value;
        assert!(
            s_ball_lower_symmetrized(&x, &y).unwrap() <= s + 1e-9,
            "{x:?} {y:?}"
        );
        assert!(
            s_ball_lower_radial(&x, &y).unwrap() <= s + 1e-9,
            "{x:?} {y:?}"
        );
    }
}
