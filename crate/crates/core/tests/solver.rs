mod common;

use rand::Rng;
use trimetric::geometry::angle_at;
use trimetric::metrics::{j_metric, p_quantity};
use trimetric::solver::{s_metric, s_oracle, s_sector, s_unit_disk, sector_flag_check, v_numeric};
use trimetric::{Domain, Point, SimilarityTransform, SolverConfig};

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn closed_form_domains() -> Vec<Domain> {
    vec![
        Domain::half_plane(),
        Domain::rectangle(2.0, 1.0).unwrap(),
        Domain::TriangleT,
        common::pentagon(),
        Domain::sector(std::f64::consts::FRAC_PI_2).unwrap(),
        Domain::sector(2.5).unwrap(),
    ]
}

fn sample(rng: &mut rand_chacha::ChaCha8Rng, d: &Domain) -> Point {
    match d {
        Domain::HalfSpace { .. } => common::in_half_plane(rng),
        _ => common::in_domain(rng, d),
    }
}

#[test]
fn closed_forms_match_the_oracle() {
    let mut rng = common::rng(20);
    let cfg = SolverConfig::with_m(200).unwrap();
    for d in closed_form_domains() {
        let mut worst: f64 = 0.0;
        for _ in 0..2_000 {
            let (x, y) = (sample(&mut rng, &d), sample(&mut rng, &d));
            let closed = s_metric(&d, &x, &y, &cfg).unwrap().value;
            let oracle = s_oracle(&d, &x, &y, &cfg).unwrap().value;
            worst = worst.max((closed - oracle).abs());
        }
        assert!(worst <= 1e-6, "{} {worst:e}", d.name());
    }
    let punct = Domain::punctured(Point::xy(0.3, -0.2));
    for _ in 0..10_000 {
        let (x, y) = (
            common::in_disk(&mut rng, 3.0),
            common::in_disk(&mut rng, 3.0),
        );
        let s = s_metric(&punct, &x, &y, &cfg).unwrap().value;
        let expected = x.dist(&y) / (x.dist(&Point::xy(0.3, -0.2)) + y.dist(&Point::xy(0.3, -0.2)));
        assert!((s - expected).abs() <= 1e-12);
    }
}

#[test]
fn sector_flag_check_stays_quiet() {
    let mut rng = common::rng(21);
    for alpha in [0.5, std::f64::consts::FRAC_PI_2, 2.0, 3.0] {
        let d = Domain::sector(alpha).unwrap();
        for _ in 0..100 {
            let (x, y) = (sample(&mut rng, &d), sample(&mut rng, &d));
            let chk = sector_flag_check(alpha, &x, &y, &cfg()).unwrap();
            assert!(!chk.flagged, "{alpha} {x:?} {y:?} {:e}", chk.discrepancy);
        }
    }
}

#[test]
fn witnesses_reproduce_values() {
    let mut rng = common::rng(22);
    let mut domains = closed_form_domains();
    domains.push(Domain::unit_disk());
    domains.push(common::l_shape());
    for d in domains {
        for _ in 0..500 {
            let (x, y) = (sample(&mut rng, &d), sample(&mut rng, &d));
            let r = s_metric(&d, &x, &y, &cfg()).unwrap();
            let from_witness = x.dist(&y) / (x.dist(&r.witness) + r.witness.dist(&y));
            assert!((r.value - from_witness).abs() <= 1e-9, "{}", d.name());
            assert!((0.0..=1.0).contains(&r.value));
            assert!(
                d.boundary_distance(&r.witness).unwrap() <= 1e-9,
                "{}",
                d.name()
            );
        }
    }
}

#[test]
fn s_is_monotone_in_the_domain() {
    let mut rng = common::rng(23);
    let small = Domain::rectangle(1.0, 0.5).unwrap();
    let big = Domain::rectangle(2.0, 1.0).unwrap();
    for _ in 0..10_000 {
        let (x, y) = (
            common::in_domain(&mut rng, &small),
            common::in_domain(&mut rng, &small),
        );
        let a = s_metric(&small, &x, &y, &cfg()).unwrap().value;
        let b = s_metric(&big, &x, &y, &cfg()).unwrap().value;
        assert!(a >= b - 1e-9);
    }
    // the disk of radius 1/2 centred at (0, 1/2) inside the upper half-plane
    let hp = Domain::half_plane();
    for _ in 0..2_000 {
        let (u, v) = (
            common::in_disk(&mut rng, 0.499),
            common::in_disk(&mut rng, 0.499),
        );
        let a = s_unit_disk(&u.scale(2.0), &v.scale(2.0), &cfg())
            .unwrap()
            .value;
        let (x, y) = (u.add(&Point::xy(0.0, 0.5)), v.add(&Point::xy(0.0, 0.5)));
        let b = s_metric(&hp, &x, &y, &cfg()).unwrap().value;
        assert!(a >= b - 1e-9);
    }
}

#[test]
fn metrics_are_similarity_invariant() {
    let mut rng = common::rng(24);
    let domains = vec![
        Domain::TriangleT,
        common::l_shape(),
        Domain::punctured(Point::xy(0.5, 0.5)),
    ];
    for d in domains {
        for _ in 0..100 {
            let t = SimilarityTransform::planar(
                rng.gen_range(0.2..5.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
                rng.gen_bool(0.5),
                [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)],
            )
            .unwrap();
            let td = t.apply_domain(&d).unwrap();
            let (x, y) = match &d {
                Domain::PuncturedSpace { .. } => (
                    common::in_disk(&mut rng, 2.0),
                    common::in_disk(&mut rng, 2.0),
                ),
                _ => (
                    common::in_domain(&mut rng, &d),
                    common::in_domain(&mut rng, &d),
                ),
            };
            let (tx, ty) = (t.apply(&x).unwrap(), t.apply(&y).unwrap());
            let s0 = s_metric(&d, &x, &y, &cfg()).unwrap().value;
            let s1 = s_metric(&td, &tx, &ty, &cfg()).unwrap().value;
            assert!((s0 - s1).abs() <= 1e-9, "{} s {s0} {s1}", d.name());
            let j0 = j_metric(&d, &x, &y).unwrap();
            let j1 = j_metric(&td, &tx, &ty).unwrap();
            assert!((j0 - j1).abs() <= 1e-9, "{} j", d.name());
            let p0 = p_quantity(&d, &x, &y).unwrap();
            let p1 = p_quantity(&td, &tx, &ty).unwrap();
            assert!((p0 - p1).abs() <= 1e-9, "{} p", d.name());
            let v0 = v_numeric(&d, &x, &y, &cfg()).unwrap();
            let v1 = v_numeric(&td, &tx, &ty, &cfg()).unwrap();
            assert!((v0 - v1).abs() <= 1e-9, "{} v {v0} {v1}", d.name());
            assert!((0.0..=std::f64::consts::PI).contains(&v0));
        }
    }
}

#[test]
fn disk_and_half_plane_symmetries_preserve_metrics() {
    let mut rng = common::rng(27);
    let disk = Domain::unit_disk();
    let hp = Domain::half_plane();
    for _ in 0..200 {
        let rot = SimilarityTransform::planar(
            1.0,
            rng.gen_range(0.0..std::f64::consts::TAU),
            rng.gen_bool(0.5),
            [0.0, 0.0],
        )
        .unwrap();
        let (x, y) = (
            common::in_disk(&mut rng, 0.99),
            common::in_disk(&mut rng, 0.99),
        );
        let (tx, ty) = (rot.apply(&x).unwrap(), rot.apply(&y).unwrap());
        for f in [
            |d: &Domain, a: &Point, b: &Point| s_metric(d, a, b, &cfg()).unwrap().value,
            |d: &Domain, a: &Point, b: &Point| j_metric(d, a, b).unwrap(),
            |d: &Domain, a: &Point, b: &Point| p_quantity(d, a, b).unwrap(),
            |d: &Domain, a: &Point, b: &Point| v_numeric(d, a, b, &cfg()).unwrap(),
        ] {
            assert!((f(&disk, &x, &y) - f(&disk, &tx, &ty)).abs() <= 1e-9);
        }
        let k = rng.gen_range(0.2..5.0);
        let sim = SimilarityTransform::new(
            k,
            vec![
                vec![if rng.gen_bool(0.5) { -1.0 } else { 1.0 }, 0.0],
                vec![0.0, 1.0],
            ],
            Point::xy(rng.gen_range(-3.0..3.0), 0.0),
        )
        .unwrap();
        let (u, v) = (
            common::in_half_plane(&mut rng),
            common::in_half_plane(&mut rng),
        );
        let (tu, tv) = (sim.apply(&u).unwrap(), sim.apply(&v).unwrap());
        for f in [
            |d: &Domain, a: &Point, b: &Point| s_metric(d, a, b, &cfg()).unwrap().value,
            |d: &Domain, a: &Point, b: &Point| j_metric(d, a, b).unwrap(),
            |d: &Domain, a: &Point, b: &Point| p_quantity(d, a, b).unwrap(),
            |d: &Domain, a: &Point, b: &Point| v_numeric(d, a, b, &cfg()).unwrap(),
        ] {
            assert!((f(&hp, &u, &v) - f(&hp, &tu, &tv)).abs() <= 1e-9);
        }
    }
}

#[test]
fn s_satisfies_the_triangle_inequality() {
    let mut rng = common::rng(25);
    let cheap = vec![
        Domain::half_plane(),
        Domain::rectangle(2.0, 1.0).unwrap(),
        Domain::TriangleT,
        common::pentagon(),
        Domain::sector(1.0).unwrap(),
        Domain::punctured(Point::xy(0.0, 0.0)),
    ];
    for d in cheap {
        for _ in 0..100_000 {
            let (x, y, z) = match &d {
                Domain::PuncturedSpace { .. } => (
                    common::in_disk(&mut rng, 2.0),
                    common::in_disk(&mut rng, 2.0),
                    common::in_disk(&mut rng, 2.0),
                ),
                _ => (
                    sample(&mut rng, &d),
                    sample(&mut rng, &d),
                    sample(&mut rng, &d),
                ),
            };
            let s = |a: &Point, b: &Point| s_metric(&d, a, b, &cfg()).unwrap().value;
            assert!(
                s(&x, &z) <= s(&x, &y) + s(&y, &z) + 1e-9,
                "{} {x:?} {y:?} {z:?}",
                d.name()
            );
        }
    }
    let cfg = SolverConfig::with_m(200).unwrap();
    for d in [Domain::unit_disk(), common::l_shape()] {
        for _ in 0..10_000 {
            let (x, y, z) = (
                sample(&mut rng, &d),
                sample(&mut rng, &d),
                sample(&mut rng, &d),
            );
            let s = |a: &Point, b: &Point| s_metric(&d, a, b, &cfg).unwrap().value;
            assert!(
                s(&x, &z) <= s(&x, &y) + s(&y, &z) + 1e-9,
                "{} {x:?} {y:?} {z:?}",
                d.name()
            );
        }
    }
}

#[test]
fn v_is_exact_in_punctured_space() {
    let d = Domain::punctured(Point::xy(1.0, 0.0));
    let (x, y) = (Point::xy(0.5, 0.0), Point::xy(-0.5, 0.0));
    assert_eq!(v_numeric(&d, &x, &y, &cfg()).unwrap(), 0.0);
    let y = Point::xy(0.2, 0.7);
    assert_eq!(
        v_numeric(&d, &x, &y, &cfg()).unwrap(),
        angle_at(&x, &Point::xy(1.0, 0.0), &y).unwrap()
    );
}

#[test]
fn sector_closed_form_is_symmetric() {
    let mut rng = common::rng(26);
    let d = Domain::sector(2.0).unwrap();
    for _ in 0..1000 {
        let (x, y) = (sample(&mut rng, &d), sample(&mut rng, &d));
        assert!(
            (s_sector(2.0, &x, &y).unwrap().value - s_sector(2.0, &y, &x).unwrap().value).abs()
                <= 1e-12
        );
    }
}
