//! Registry of inequality suites S1 to S13.
//!
//! Each suite returns one [`ComparisonReport`] per named check (and per
//! locality parameter where one applies). Checks that mix several domains
//! visit them round-robin by sample index. Every sample draws from its own
//! counter-based stream, so a report depends only on the suite, the seed and
//! the sample count.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, SQRT_2};
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;
use trimetric::metrics::{j_metric, p_quantity, s_half_space, tanh_half_rho_ball};
use trimetric::moebius::DiskAutomorphism;
use trimetric::qc::{radial_stretch, thm1_bound, thm2_check, QcParams};
use trimetric::solver::{s_metric, s_punctured, s_unit_disk, v_numeric};
use trimetric::{Domain, Point, SolverConfig};

use crate::parse::domain_label;
use crate::report::{ComparisonReport, Tally, Witness};
use crate::sampling::{
    boundary_biased_radius, in_ball, local_pair, outside_ball, rng_for, uniform_in,
};

/// Tolerance for checks whose values are all closed-form.
pub const CLOSED_TOL: f64 = 1e-9;
/// Tolerance for checks that involve the tabulation solver.
pub const SOLVER_TOL: f64 = 1e-6;
/// Tolerance for exact equalities under similarities.
pub const EQUALITY_TOL: f64 = 1e-12;
/// Tabulation count used by the suites.
pub const SUITE_SOLVER_M: usize = 200;

pub const SUITE_IDS: [&str; 13] = [
    "S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8", "S9", "S10", "S11", "S12", "S13",
];
pub const DEFAULT_LAMBDAS: [f64; 3] = [0.1, 0.5, 0.9];
pub const DEFAULT_TS: [f64; 3] = [0.1, 0.5, 0.9];
const QC_KS: [f64; 3] = [1.0, 1.5, 2.0];

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (expected S1..S13 or all)")]
    UnknownSuite(String),
    #[error("suite {suite} does not accept domain {domain}")]
    IncompatibleDomain { suite: String, domain: String },
    #[error("invalid suite parameters: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Core(#[from] trimetric::Error),
}

pub type SuiteResult<T> = Result<T, SuiteError>;

/// What to run.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteSpec {
    /// `S1` to `S13`, or `all`.
    pub suite_id: String,
    pub samples: u64,
    pub seed: u64,
    /// Replaces the default domain list of suites that accept one.
    pub domain: Option<Domain>,
    /// Replaces the default locality parameters.
    pub lambda: Option<f64>,
    /// Replaces the default `t` parameters.
    pub t: Option<f64>,
    /// Replaces every default tolerance.
    pub tolerance: Option<f64>,
}

impl SuiteSpec {
    pub fn new(suite_id: impl Into<String>, samples: u64, seed: u64) -> Self {
        SuiteSpec {
            suite_id: suite_id.into(),
            samples,
            seed,
            domain: None,
            lambda: None,
            t: None,
            tolerance: None,
        }
    }

    fn validate(&self) -> SuiteResult<()> {
        if self.samples == 0 {
            return Err(SuiteError::InvalidSpec("samples must be >= 1".into()));
        }
        for (name, v) in [("lambda", self.lambda), ("t", self.t)] {
            if let Some(v) = v {
                if !(v > 0.0 && v < 1.0) {
                    return Err(SuiteError::InvalidSpec(format!(
                        "{name} = {v} outside (0, 1)"
                    )));
                }
            }
        }
        if let Some(tol) = self.tolerance {
            if !(tol >= 0.0 && tol.is_finite()) {
                return Err(SuiteError::InvalidSpec(format!(
                    "tolerance {tol} must be finite and >= 0"
                )));
            }
        }
        Ok(())
    }
}

/// Runs one suite, or all of them in registry order for `all`.
pub fn run_suite(spec: &SuiteSpec) -> SuiteResult<Vec<ComparisonReport>> {
    spec.validate()?;
    if spec.suite_id.eq_ignore_ascii_case("all") {
        let mut out = Vec::new();
        for id in SUITE_IDS {
            let mut s = spec.clone();
            s.suite_id = id.into();
            out.extend(run_one(&s)?);
        }
        return Ok(out);
    }
    run_one(spec)
}

fn run_one(spec: &SuiteSpec) -> SuiteResult<Vec<ComparisonReport>> {
    let id = SUITE_IDS
        .iter()
        .find(|s| s.eq_ignore_ascii_case(&spec.suite_id))
        .ok_or_else(|| SuiteError::UnknownSuite(spec.suite_id.clone()))?;
    let ctx = Ctx::new(id, spec)?;
    match *id {
        "S1" => s1(&ctx),
        "S2" => s2(&ctx),
        "S3" => s3(&ctx),
        "S4" => s4(&ctx),
        "S5" => s5(&ctx),
        "S6" => s6(&ctx),
        "S7" => s7(&ctx),
        "S8" => s8(&ctx),
        "S9" => s9(&ctx),
        "S10" => s10(&ctx),
        "S11" => s11(&ctx),
        "S12" => s12(&ctx),
        _ => s13(&ctx),
    }
}

/// Regular pentagon used by the generic suites.
pub fn pentagon() -> Domain {
    let vs = (0..5)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / 5.0 + 0.3;
            Point::xy(1.5 * t.cos() + 0.2, 1.5 * t.sin() - 0.1)
        })
        .collect();
    Domain::polygon(vs).expect("valid pentagon")
}

pub fn l_shape() -> Domain {
    let vs = [
        (0.0, 0.0),
        (2.0, 0.0),
        (2.0, 1.0),
        (1.0, 1.0),
        (1.0, 2.0),
        (0.0, 2.0),
    ];
    Domain::polygon(vs.iter().map(|&(x, y)| Point::xy(x, y)).collect()).expect("valid L-shape")
}

/// Domains whose `s` has a closed form.
pub fn closed_form_domains() -> Vec<Domain> {
    vec![
        Domain::punctured(Point::origin(2)),
        Domain::half_plane(),
        Domain::rectangle(2.0, 1.0).expect("valid rectangle"),
        Domain::TriangleT,
        pentagon(),
        Domain::sector(FRAC_PI_3).expect("valid sector"),
    ]
}

/// Domains whose `s` needs the tabulation solver.
pub fn solver_domains() -> Vec<Domain> {
    vec![Domain::unit_disk(), l_shape()]
}

/// True when `s` on `domain` is computed by tabulation.
pub fn needs_solver(domain: &Domain) -> bool {
    match domain {
        Domain::UnitBall { .. } => true,
        Domain::Polygon(p) => !p.is_convex(),
        _ => false,
    }
}

struct Ctx<'a> {
    id: &'static str,
    spec: &'a SuiteSpec,
    cfg: SolverConfig,
}

impl<'a> Ctx<'a> {
    fn new(id: &'static str, spec: &'a SuiteSpec) -> SuiteResult<Self> {
        Ok(Ctx {
            id,
            spec,
            cfg: SolverConfig::with_m(SUITE_SOLVER_M)?,
        })
    }

    fn n(&self) -> u64 {
        self.spec.samples
    }

    fn rng(&self, stream: &str, i: u64) -> ChaCha8Rng {
        rng_for(self.spec.seed, &format!("{}/{stream}", self.id), i)
    }

    fn tol(&self, default: f64) -> f64 {
        self.spec.tolerance.unwrap_or(default)
    }

    fn lambdas(&self) -> Vec<f64> {
        self.spec
            .lambda
            .map_or(DEFAULT_LAMBDAS.to_vec(), |l| vec![l])
    }

    fn ts(&self) -> Vec<f64> {
        self.spec.t.map_or(DEFAULT_TS.to_vec(), |t| vec![t])
    }

    /// The override domain split by solver use, or the given defaults.
    fn domains(&self, closed: Vec<Domain>, solver: Vec<Domain>) -> (Vec<Domain>, Vec<Domain>) {
        match &self.spec.domain {
            Some(d) if needs_solver(d) => (vec![], vec![d.clone()]),
            Some(d) => (vec![d.clone()], vec![]),
            None => (closed, solver),
        }
    }

    /// Rejects a domain override on suites with a fixed domain.
    fn fixed_domain(&self, native: Option<&Domain>) -> SuiteResult<()> {
        match &self.spec.domain {
            Some(d) if Some(d) != native => Err(SuiteError::IncompatibleDomain {
                suite: self.id.into(),
                domain: domain_label(d),
            }),
            _ => Ok(()),
        }
    }

    fn finish(&self, tallies: Vec<Tally>, start: Instant) -> Vec<ComparisonReport> {
        let elapsed = start.elapsed().as_secs_f64();
        tallies
            .into_iter()
            .map(|t| t.finish(self.id, self.spec.seed, elapsed))
            .collect()
    }
}

fn s_of(domain: &Domain, x: &Point, y: &Point, cfg: &SolverConfig) -> trimetric::Result<f64> {
    Ok(s_metric(domain, x, y, cfg)?.value)
}

fn witness(domain: &Domain, pts: &[&Point]) -> Witness {
    Witness::new(domain_label(domain), pts)
}

/// Runs `f` on sample pairs drawn uniformly from `domains[i % len]`.
/// `f` returns `(lhs, rhs)` pairs, one per tally.
fn pairwise<F>(
    ctx: &Ctx,
    stream: &str,
    domains: &[Domain],
    tallies: &mut [Tally],
    mut f: F,
) -> SuiteResult<()>
where
    F: FnMut(u64, &Domain, &Point, &Point) -> trimetric::Result<Vec<Option<(f64, f64)>>>,
{
    if domains.is_empty() {
        return Ok(());
    }
    for i in 0..ctx.n() {
        let d = &domains[(i % domains.len() as u64) as usize];
        let mut rng = ctx.rng(stream, i);
        let x = uniform_in(&mut rng, d);
        let y = uniform_in(&mut rng, d);
        for (t, v) in tallies.iter_mut().zip(f(i, d, &x, &y)?) {
            if let Some((lhs, rhs)) = v {
                t.le(lhs, rhs, || witness(d, &[&x, &y]));
            }
        }
    }
    Ok(())
}

fn s1(ctx: &Ctx) -> SuiteResult<Vec<ComparisonReport>> {
    let start = Instant::now();
    let ln3 = 3f64.ln();
    let (closed, solver) = ctx.domains(closed_form_domains(), solver_domains());
    let mut out = Vec::new();
    for (domains, tol, stream) in [
        (closed, CLOSED_TOL, "closed"),
        (solver, SOLVER_TOL, "solver"),
    ] {
        if domains.is_empty() {
            continue;
        }
        let mut t = [Tally::new(format!("s <= j/ln 3 ({stream})"), ctx.tol(tol))];
        let cfg = ctx.cfg;
        let forced = stream == "closed" && matches!(domains[0], Domain::PuncturedSpace { .. });
        for i in 0..ctx.n() {
            let d = &domains[(i % domains.len() as u64) as usize];
            let mut rng = ctx.rng(stream, i);
            let (x, y) = if forced && i == 0 {
                // the pair (x, -x) around the puncture is extremal
                let Domain::PuncturedSpace { puncture } = d else {
                    unreachable!()
                };
                let u = in_ball(&mut rng, &Point::origin(2), 1.0);
                (puncture.add(&u), puncture.sub(&u))
            } else {
                (uniform_in(&mut rng, d), uniform_in(&mut rng, d))
            };
            let s = s_of(d, &x, &y, &cfg)?;
            let j = j_metric(d, &x, &y)?;
            t[0].le(s, j / ln3, || witness(d, &[&x, &y]));
        }
        out.extend(ctx.finish(t.into(), start));
    }
    Ok(out)
}

fn all_domains() -> (Vec<Domain>, Vec<Domain>) {
    let mut closed = closed_form_domains();
    closed.push(Domain::half_space(3).expect("valid half-space"));
    let mut solver = solver_domains();
    solver.push(Domain::unit_ball(3).expect("valid ball"));
    (closed, solver)
}

fn s2(ctx: &Ctx) -> SuiteResult<Vec<ComparisonReport>> {
    let start = Instant::now();
    let (closed, solver) = all_domains();
    let domains: Vec<Domain> = match &ctx.spec.domain {
        Some(d) => vec![d.clone()],
        None => closed.into_iter().chain(solver).collect(),
    };
    let mut t = [Tally::new("p <= j/sqrt 2", ctx.tol(CLOSED_TOL))];
    pairwise(ctx, "pairs", &domains, &mut t, |_, d, x, y| {
        Ok(vec![Some((
            p_quantity(d, x, y)?,
            j_metric(d, x, y)? / SQRT_2,
        ))])
    })?;
    Ok(ctx.finish(t.into(), start))
}

fn s3(ctx: &Ctx) -> SuiteResult<Vec<ComparisonReport>> {
    let start = Instant::now();
    let (closed, solver) = ctx.domains(all_domains().0, all_domains().1);
    let cfg = ctx.cfg;
    let mut out = Vec::new();
    for (domains, tol, stream) in [
        (closed, CLOSED_TOL, "closed"),
        (solver, SOLVER_TOL, "solver"),
    ] {
        if domains.is_empty() {
            continue;
        }
        let mut t = [
            Tally::new(format!("s <= p on convex G ({stream})"), ctx.tol(tol)),
            Tally::new(format!("p <= sqrt 2 s ({stream})"), ctx.tol(tol)),
        ];
        pairwise(ctx, stream, &domains, &mut t, |_, d, x, y| {
            let s = s_of(d, x, y, &cfg)?;
            let p = p_quantity(d, x, y)?;
            let convex = d.is_convex().then_some((s, p));
            Ok(vec![convex, Some((p, SQRT_2 * s))])
        })?;
        out.extend(ctx.finish(t.into(), start));
    }
    Ok(out)
}

fn balls(ctx: &Ctx) -> SuiteResult<Vec<Domain>> {
    let disk = Domain::unit_disk();
    let ball3 = Domain::unit_ball(3)?;
    match &ctx.spec.domain {
        Some(d) if *d == disk || *d == ball3 => Ok(vec![d.clone()]),
        Some(d) => Err(SuiteError::IncompatibleDomain {
            suite: ctx.id.into(),
            domain: domain_label(d),
        }),
        None => Ok(vec![disk, ball3]),
    }
}

fn s4(ctx: &Ctx) -> SuiteResult<Vec<ComparisonReport>> {
    let start = Instant::now();
    let domains = balls(ctx)?;
    let mut t = [
        Tally::new("p <= tanh(rho/2)", ctx.tol(CLOSED_TOL)),
        Tally::new("tanh(rho/2) <= 2p", ctx.tol(CLOSED_TOL)),
    ];
    pairwise(ctx, "pairs", &domains, &mut t, |_, d, x, y| {
        let p = p_quantity(d, x, y)?;
        let th = tanh_half_rho_ball(x, y)?;
        Ok(vec![Some((p, th)), Some((th, 2.0 * p))])
    })?;
    Ok(ctx.finish(t.into(), start))
}

fn s5(ctx: &Ctx) -> SuiteResult<Vec<ComparisonReport>> {
    let start = Instant::now();
    let domains = balls(ctx)?;
    let cfg = ctx.cfg;
    let mut t = [Tally::new("tanh(rho/2) <= 2s", ctx.tol(SOLVER_TOL))];
    for i in 0..ctx.n() {
        let d = &domains[(i % domains.len() as u64) as usize];
        let mut rng = ctx.rng("pairs", i);
        // every fourth pair starts at the centre
        let x = if i % 4 == 0 {
            Point::origin(d.dim())
        } else {
            uniform_in(&mut rng, d)
        };
        let y = uniform_in(&mut rng, d);
        let th = tanh_half_rho_ball(&x, &y)?;
        let s = s_of(d, &x, &y, &cfg)?;
        t[0].le(th, 2.0 * s, || witness(d, &[&x, &y]));
    }
    Ok(ctx.finish(t.into(), start))
}

fn s6(ctx: &Ctx) -> SuiteResult<Vec<ComparisonReport>> {
    let start = Instant::now();
    let disk = Domain::unit_disk();
    let closed = match &ctx.spec.domain {
        Some(d) if needs_solver(d) => {
            return Err(SuiteError::IncompatibleDomain {
                suite: ctx.id.into(),
                domain: domain_label(d),
            })
        }
        Some(d) => vec![d.clone()],
        None => closed_form_domains(),
    };
    let cfg = ctx.cfg;
    let origin = Point::origin(2);
    let mut out = Vec::new();
    for lambda in ctx.lambdas() {
        let c_sj = (1.0 + 2.0 * lambda) / (2.0 * (1.0 - lambda));
        let c_printed = 2.0 * (1.0 - lambda) / (1.0 + 2.0 * lambda);
        let c_js = 2.0 * (1.0 + lambda) / (1.0 - lambda);
        let mut disk_t = [
            Tally::new("s <= (1+2l)/(2(1-l)) j in B(0,l)", ctx.tol(SOLVER_TOL)).lambda(lambda),
            Tally::new(
                "s <= 2(1-l)/(1+2l) j in B(0,l), as printed",
                ctx.tol(SOLVER_TOL),
            )
            .lambda(lambda)
            .informational(),
            Tally::new("j <= 2(1+l)/(1-l) s in B(0,l)", ctx.tol(SOLVER_TOL)).lambda(lambda),
        ];
        for i in 0..ctx.n() {
            let mut rng = ctx.rng(&format!("disk/{lambda}"), i);
            let x = in_ball(&mut rng, &origin, lambda);
            let y = in_ball(&mut rng, &origin, lambda);
            assert!(x.norm() <= lambda && y.norm() <= lambda);
            let s = s_of(&disk, &x, &y, &cfg)?;
            let j = j_metric(&disk, &x, &y)?;
            let w = || witness(&disk, &[&x, &y]);
            disk_t[0].le(s, c_sj * j, w);
            disk_t[1].le(s, c_printed * j, w);
            disk_t[2].le(j, c_js * s, w);
        }
        out.extend(ctx.finish(disk_t.into(), start));

        let mut local_t = [
            Tally::new("j <= 2/(1-l) p in B(z,l d(z))", ctx.tol(CLOSED_TOL)).lambda(lambda),
            Tally::new("s <= (1+l)/(1-l) p in B(z,l d(z))", ctx.tol(CLOSED_TOL)).lambda(lambda),
        ];
        for i in 0..ctx.n() {
            let d = &closed[(i % closed.len() as u64) as usize];
            let mut rng = ctx.rng(&format!("local/{lambda}"), i);
            let (z, x, y) = local_pair(&mut rng, d, lambda);
            let dz = d.boundary_distance(&z)?;
            assert!(x.dist(&z) <= lambda * dz && y.dist(&z) <= lambda * dz);
            let p = p_quantity(d, &x, &y)?;
            let j = j_metric(d, &x, &y)?;
            let s = s_of(d, &x, &y, &cfg)?;
            let w = || witness(d, &[&x, &y, &z]);
            local_t[0].le(j, 2.0 / (1.0 - lambda) * p, w);
            local_t[1].le(s, (1.0 + lambda) / (1.0 - lambda) * p, w);
        }
        out.extend(ctx.finish(local_t.into(), start));
    }
    Ok(out)
}

fn s7(ctx: &Ctx) -> SuiteResult<Vec<ComparisonReport>> {
    let start = Instant::now();
    let disk = Domain::unit_disk();
    ctx.fixed_domain(Some(&disk))?;
    let cfg = ctx.cfg;
    let origin = Point::origin(2);
    let mut t = [
        Tally::new("v <= 2j", ctx.tol(SOLVER_TOL)),
        Tally::new("p <= v when v < pi/2", ctx.tol(SOLVER_TOL)),
    ];
    pairwise(
        ctx,
        "pairs",
        std::slice::from_ref(&disk),
        &mut t,
        |_, d, x, y| {
            let v = v_numeric(d, x, y, &cfg)?;
            let j = j_metric(d, x, y)?;
            let p = p_quantity(d, x, y)?;
            let acute = (v > 0.0 && v < FRAC_PI_2).then_some((p, v));
            Ok(vec![Some((v, 2.0 * j)), acute])
        },
    )?;
    let mut out = ctx.finish(t.into(), start);
    for lambda in ctx.lambdas() {
        let l2 = lambda * lambda;
        let c_jv = 3.0 * (1.0 - l2) / (2.0 * (3.0 + l2));
        let c_sv = 4.0 * (3.0 + l2) / (3.0 * (1.0 + 2.0 * lambda) * (1.0 + lambda));
        let c_vs = 4.0 * (1.0 + lambda) / (1.0 - lambda);
        let mut t = [
            Tally::new("3(1-l^2)/(2(3+l^2)) j <= v in B(0,l)", ctx.tol(SOLVER_TOL)).lambda(lambda),
            Tally::new(
                "s <= 4(3+l^2)/(3(1+2l)(1+l)) v in B(0,l)",
                ctx.tol(SOLVER_TOL),
            )
            .lambda(lambda),
            Tally::new("v <= 4(1+l)/(1-l) s in B(0,l)", ctx.tol(SOLVER_TOL)).lambda(lambda),
            Tally::new("v <= 4(1+l)/(1-l) p in B(0,l)", ctx.tol(SOLVER_TOL)).lambda(lambda),
        ];
        for i in 0..ctx.n() {
            let mut rng = ctx.rng(&format!("local/{lambda}"), i);
            let x = in_ball(&mut rng, &origin, lambda);
            let y = in_ball(&mut rng, &origin, lambda);
            assert!(x.norm() <= lambda && y.norm() <= lambda);
            let v = v_numeric(&disk, &x, &y, &cfg)?;
            let s = s_of(&disk, &x, &y, &cfg)?;
            let j = j_metric(&disk, &x, &y)?;
            let p = p_quantity(&disk, &x, &y)?;
            let w = || witness(&disk, &[&x, &y]);
            t[0].le(c_jv * j, v, w);
            t[1].le(s, c_sv * v, w);
            t[2].le(v, c_vs * s, w);
            t[3].le(v, c_vs * p, w);
        }
        out.extend(ctx.finish(t.into(), start));
    }
    Ok(out)
}

fn to_c(p: &Point) -> Complex64 {
    Complex64::new(p.x(), p.y())
}

fn from_c(z: Complex64) -> Point {
    Point::xy(z.re, z.im)
}

/// Cayley map of the upper half-plane onto the disk.
pub fn cayley(z: Complex64) -> Complex64 {
    (z - Complex64::i()) / (z + Complex64::i())
}

pub fn cayley_inv(w: Complex64) -> Complex64 {
    Complex64::i() * (1.0 + w) / (1.0 - w)
}

fn random_automorphism(rng: &mut ChaCha8Rng) -> trimetric::Result<DiskAutomorphism> {
    let a = rng.gen_range(-0.95..0.95);
    DiskAutomorphism::new(
        a,
        rng.gen_range(0.0..std::f64::consts::TAU),
        rng.gen_range(0.0..std::f64::consts::TAU),
    )
}

/// Random self-map of the upper half-plane built from `kz + b`, the
/// reflection `x -> -x` and `z -> -1/z`.
fn random_half_plane_map(rng: &mut ChaCha8Rng) -> impl Fn(Complex64) -> Complex64 {
    let k = 10f64.powf(rng.gen_range(-1.0..1.0));
    let b = rng.gen_range(-2.0..2.0);
    let reflect = rng.gen_bool(0.5);
    let invert = rng.gen_bool(0.5);
    move |z: Complex64| {
        let z = if reflect { -z.conj() } else { z };
        let z = if invert { -1.0 / z } else { z };
        k * z + b
    }
}

fn apply_map(f: impl Fn(Complex64) -> Complex64, domain: &Domain, x: &Point) -> SuiteResult<Point> {
    let y = from_c(f(to_c(x)));
    if !domain.contains(&y) {
        return Err(trimetric::Error::OutsideDomain.into());
    }
    Ok(y)
}

fn s8(ctx: &Ctx) -> SuiteResult<Vec<ComparisonReport>> {
    let start = Instant::now();
    ctx.fixed_domain(None)?;
    let cfg = ctx.cfg;
    let disk = Domain::unit_disk();
    let hp = Domain::half_plane();
    let tol = ctx.tol(SOLVER_TOL);
    let mut t = [
        Tally::new("(1-|a|)/(1+|a|) s <= s(hx,hy)", tol),
        Tally::new("s(hx,hy) <= (1+|a|)/(1-|a|) s", tol),
        Tally::new("s_H(fx,fy) = s_H(x,y), f: H -> H", ctx.tol(CLOSED_TOL)),
        Tally::new("s_B(fx,fy) <= s_H(x,y), f: H -> B", tol),
        Tally::new("s_H(fx,fy) <= 2 s_B(x,y), f: B -> H", tol),
        Tally::new("s_B(fx,fy) <= 2 s_B(x,y), f: B -> B", tol),
    ];
    for i in 0..ctx.n() {
        let mut rng = ctx.rng("disk", i);
        let h = random_automorphism(&mut rng)?;
        let x = uniform_in(&mut rng, &disk);
        let y = uniform_in(&mut rng, &disk);
        let w = || witness(&disk, &[&x, &y]).param("a", h.a());
        let s = s_unit_disk(&x, &y, &cfg)?.value;
        let (hx, hy) = (h.apply(&x)?, h.apply(&y)?);
        let sh = s_unit_disk(&hx, &hy, &cfg)?.value;
        let k = (1.0 + h.a().abs()) / (1.0 - h.a().abs());
        t[0].le(s / k, sh, w);
        t[1].le(sh, k * s, w);
        t[5].le(sh, 2.0 * s, w);
        let f = |z| cayley_inv(to_c(&h.apply_closed(&from_c(z)).expect("planar point")));
        let (fx, fy) = (apply_map(f, &hp, &x)?, apply_map(f, &hp, &y)?);
        t[4].le(s_half_space(&fx, &fy)?, 2.0 * s, w);

        let mut rng = ctx.rng("half-plane", i);
        let f = random_half_plane_map(&mut rng);
        let x = uniform_in(&mut rng, &hp);
        let y = uniform_in(&mut rng, &hp);
        let w = || witness(&hp, &[&x, &y]);
        let s = s_half_space(&x, &y)?;
        let (fx, fy) = (apply_map(&f, &hp, &x)?, apply_map(&f, &hp, &y)?);
        t[2].eq(s_half_space(&fx, &fy)?, s, w);
        let h = random_automorphism(&mut rng)?;
        let g = |z| to_c(&h.apply_closed(&from_c(cayley(z))).expect("planar point"));
        let (gx, gy) = (apply_map(g, &disk, &x)?, apply_map(g, &disk, &y)?);
        t[3].le(s_unit_disk(&gx, &gy, &cfg)?.value, s, w);
    }
    Ok(ctx.finish(t.into(), start))
}

fn s9(ctx: &Ctx) -> SuiteResult<Vec<ComparisonReport>> {
    let start = Instant::now();
    let disk = Domain::unit_disk();
    ctx.fixed_domain(Some(&disk))?;
    let e1 = Point::basis(2, 0);
    let punctured = Domain::punctured(e1.clone());
    let cfg = ctx.cfg;
    let mut out = Vec::new();
    for t in ctx.ts() {
        let c_j = (1.0 + t) / (1.0 - t);
        let c_p = ((2.0 * t * t + 2.0 * t + 1.0) / (t * t - 2.0 * t + 1.0)).sqrt();
        let c_s = (1.0 + t) / (1.0 - t);
        let mut tl = [
            Tally::new("j_B <= (1+t)/(1-t) j_{R2-e1}", ctx.tol(CLOSED_TOL)).t(t),
            Tally::new("p_B <= c_p p_{R2-e1}", ctx.tol(CLOSED_TOL)).t(t),
            Tally::new("s_B <= (1+t)/(1-t) s_{R2-e1}", ctx.tol(SOLVER_TOL)).t(t),
        ];
        for i in 0..ctx.n() {
            let mut rng = ctx.rng(&format!("{t}"), i);
            let draw = |rng: &mut ChaCha8Rng| {
                let r = boundary_biased_radius(rng, t);
                let a = rng.gen_range(0.0..std::f64::consts::TAU);
                Point::xy(r * a.cos(), r * a.sin())
            };
            let x = draw(&mut rng);
            let y = draw(&mut rng);
            assert!(x.norm() < t && y.norm() < t);
            let w = || witness(&disk, &[&x, &y]);
            tl[0].le(
                j_metric(&disk, &x, &y)?,
                c_j * j_metric(&punctured, &x, &y)?,
                w,
            );
            tl[1].le(
                p_quantity(&disk, &x, &y)?,
                c_p * p_quantity(&punctured, &x, &y)?,
                w,
            );
            tl[2].le(
                s_of(&disk, &x, &y, &cfg)?,
                c_s * s_punctured(&x, &y, &e1)?,
                w,
            );
        }
        out.extend(ctx.finish(tl.into(), start));
    }
    Ok(out)
}

/// `j`, `p` and `s` of `G` minus the interior point `x`, given the values
/// `d_G(y)`, `d_G(z)` and `s_G(y, z)`.
pub fn punctured_metrics(
    x: &Point,
    y: &Point,
    z: &Point,
    dy: f64,
    dz: f64,
    s_g: f64,
) -> (f64, f64, f64) {
    let dy = dy.min(y.dist(x));
    let dz = dz.min(z.dist(x));
    let d = y.dist(z);
    let j = (d / dy.min(dz)).ln_1p();
    let p = d / (d * d + 4.0 * dy * dz).sqrt();
    let s = s_g.max(d / (y.dist(x) + x.dist(z)));
    (j, p, s)
}

fn s10(ctx: &Ctx) -> SuiteResult<Vec<ComparisonReport>> {
    let start = Instant::now();
    let domains = match &ctx.spec.domain {
        Some(d) if needs_solver(d) || matches!(d, Domain::PuncturedSpace { .. }) => {
            return Err(SuiteError::IncompatibleDomain {
                suite: ctx.id.into(),
                domain: domain_label(d),
            })
        }
        Some(d) => vec![d.clone()],
        None => vec![
            Domain::half_plane(),
            Domain::rectangle(2.0, 1.0)?,
            Domain::TriangleT,
            pentagon(),
            Domain::sector(FRAC_PI_3)?,
        ],
    };
    let cfg = ctx.cfg;
    let mut out = Vec::new();
    for t in ctx.ts() {
        let mut tl = [
            Tally::new("j_{G-x} <= 2/t j_G", ctx.tol(CLOSED_TOL)).t(t),
            Tally::new("p_{G-x} <= (t+1)/t p_G", ctx.tol(CLOSED_TOL)).t(t),
            Tally::new("s_{G-x} <= (1+1/t) s_G", ctx.tol(CLOSED_TOL)).t(t),
        ];
        for i in 0..ctx.n() {
            let d = &domains[(i % domains.len() as u64) as usize];
            let mut rng = ctx.rng(&format!("{t}"), i);
            let x = uniform_in(&mut rng, d);
            let y = outside_ball(&mut rng, d, &x, t);
            let z = outside_ball(&mut rng, d, &x, t);
            let dx = d.boundary_distance(&x)?;
            assert!(y.dist(&x) >= t * dx && z.dist(&x) >= t * dx);
            let s_g = s_of(d, &y, &z, &cfg)?;
            let (dy, dz) = (d.boundary_distance(&y)?, d.boundary_distance(&z)?);
            let (j2, p2, s2) = punctured_metrics(&x, &y, &z, dy, dz, s_g);
            let w = || witness(d, &[&x, &y, &z]);
            tl[0].le(j2, 2.0 / t * j_metric(d, &y, &z)?, w);
            tl[1].le(p2, (t + 1.0) / t * p_quantity(d, &y, &z)?, w);
            tl[2].le(s2, (1.0 + 1.0 / t) * s_g, w);
        }
        out.extend(ctx.finish(tl.into(), start));

        // families on R^2 minus the origin with x = e1, where the constants
        // are approached as t -> 1
        let g = Domain::punctured(Point::origin(2));
        let x = Point::basis(2, 0);
        let mut fam = [
            Tally::new("j family (1+t)e1, (1+t+a)e1", ctx.tol(CLOSED_TOL))
                .t(t)
                .informational(),
            Tally::new("p family on S(e1,t)", ctx.tol(CLOSED_TOL))
                .t(t)
                .informational(),
            Tally::new("s family on S(e1,t)", ctx.tol(CLOSED_TOL))
                .t(t)
                .informational(),
        ];
        let mut sup = [0f64; 3];
        let steps = ctx.n().min(200);
        for k in 0..steps {
            // a from t 10^-8 up to t/2
            let a =
                t * 10f64.powf(-8.0 + (8.0 - 2f64.log10()) * k as f64 / (steps.max(2) - 1) as f64);
            let yj = Point::xy(1.0 + t, 0.0);
            let zj = Point::xy(1.0 + t + a, 0.0);
            let h = (t * t - a * a).sqrt();
            let yp = Point::xy(1.0 + h, a);
            let zp = Point::xy(1.0 + h, -a);
            for (m, (y, z)) in [(&yj, &zj), (&yp, &zp), (&yp, &zp)].into_iter().enumerate() {
                let (dy, dz) = (y.norm(), z.norm());
                let s_g = s_punctured(y, z, &Point::origin(2))?;
                let (j2, p2, s2) = punctured_metrics(&x, y, z, dy, dz, s_g);
                let (lhs, base, c) = match m {
                    0 => (j2, j_metric(&g, y, z)?, 2.0 / t),
                    1 => (p2, p_quantity(&g, y, z)?, (t + 1.0) / t),
                    _ => (s2, s_g, 1.0 + 1.0 / t),
                };
                sup[m] = sup[m].max(lhs / base);
                fam[m].le(lhs, c * base, || witness(&g, &[&x, y, z]).param("a", a));
            }
        }
        for (m, f) in fam.iter_mut().enumerate() {
            f.note("ratio_sup", sup[m]);
        }
        out.extend(ctx.finish(fam.into(), start));
    }
    Ok(out)
}

/// `log(1 + a x) / log(1 + b x)`.
pub fn log_ratio(a: f64, b: f64, x: f64) -> f64 {
    (a * x).ln_1p() / (b * x).ln_1p()
}

fn s11(ctx: &Ctx) -> SuiteResult<Vec<ComparisonReport>> {
    let start = Instant::now();
    ctx.fixed_domain(None)?;
    const GRID: usize = 64;
    let xs: Vec<f64> = (0..GRID)
        .map(|k| 10f64.powf(-3.0 + 6.0 * k as f64 / (GRID - 1) as f64))
        .collect();
    let mut t = [Tally::new(
        "log(1+ax)/log(1+bx) decreasing, b <= a",
        ctx.tol(CLOSED_TOL),
    )];
    for i in 0..ctx.n() {
        let mut rng = ctx.rng("ab", i);
        let u = 10f64.powf(rng.gen_range(-3.0..3.0));
        let v = 10f64.powf(rng.gen_range(-3.0..3.0));
        let (a, b) = (u.max(v), u.min(v));
        let (mut worst, mut at) = (f64::INFINITY, 0.0);
        for w in xs.windows(2) {
            let m = log_ratio(a, b, w[0]) - log_ratio(a, b, w[1]);
            if m < worst {
                (worst, at) = (m, w[0]);
            }
        }
        t[0].margin(worst, || {
            Witness::new("reals", &[])
                .param("a", a)
                .param("b", b)
                .param("x", at)
        });
    }
    Ok(ctx.finish(t.into(), start))
}

/// `p(t e1, -t e1) - p(t e1, 0) - p(0, -t e1)` in the unit disk; positive
/// where the triangle inequality fails.
pub fn p_triangle_defect(t: f64) -> trimetric::Result<f64> {
    let disk = Domain::unit_disk();
    let (x, o, y) = (Point::xy(t, 0.0), Point::origin(2), Point::xy(-t, 0.0));
    Ok(p_quantity(&disk, &x, &y)? - p_quantity(&disk, &x, &o)? - p_quantity(&disk, &o, &y)?)
}

fn s12(ctx: &Ctx) -> SuiteResult<Vec<ComparisonReport>> {
    let start = Instant::now();
    ctx.fixed_domain(None)?;
    let disk = Domain::unit_disk();
    let o = Point::origin(2);
    let mut t = [Tally::new(
        "p(t,0) + p(0,-t) <= p(t,-t) for t <= 1/2",
        ctx.tol(CLOSED_TOL),
    )];
    for i in 0..ctx.n() {
        let mut rng = ctx.rng("t", i);
        let s: f64 = 0.5 * (1.0 - rng.gen::<f64>());
        let (x, y) = (Point::xy(s, 0.0), Point::xy(-s, 0.0));
        let lhs = p_quantity(&disk, &x, &o)? + p_quantity(&disk, &o, &y)?;
        t[0].le(lhs, p_quantity(&disk, &x, &y)?, || {
            witness(&disk, &[&x, &o, &y]).param("t", s)
        });
    }
    // sign change of the defect on (0, 1)
    let (mut lo, mut hi) = (0.01, 0.99);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if p_triangle_defect(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    t[0].note("crossover_t", 0.5 * (lo + hi));
    Ok(ctx.finish(t.into(), start))
}

fn s13(ctx: &Ctx) -> SuiteResult<Vec<ComparisonReport>> {
    let start = Instant::now();
    ctx.fixed_domain(None)?;
    let cfg = ctx.cfg;
    let disk = Domain::unit_disk();
    let hp = Domain::half_plane();
    let tol = ctx.tol(SOLVER_TOL);
    let p1 = QcParams::new(1.0, 2)?;
    let bound = |case, p: &QcParams, s| thm1_bound(case, p, s).map(|b| b.value);
    let mut t = vec![
        Tally::new(
            "case 1 equality, H -> H similarity, K=1",
            ctx.tol(EQUALITY_TOL),
        ),
        Tally::new("case 2, B -> B automorphism, K=1", tol),
        Tally::new("case 3, B -> H Moebius, K=1", tol),
        Tally::new("case 4, H -> B Moebius, K=1", tol),
    ];
    for i in 0..ctx.n() {
        let mut rng = ctx.rng("moebius", i);
        // similarities of H: kz + b, optionally composed with x -> -x
        let k = 10f64.powf(rng.gen_range(-1.0..1.0));
        let b = rng.gen_range(-2.0..2.0);
        let reflect = rng.gen_bool(0.5);
        let f = move |z: Complex64| k * if reflect { -z.conj() } else { z } + b;
        let x = uniform_in(&mut rng, &hp);
        let y = uniform_in(&mut rng, &hp);
        let w = || witness(&hp, &[&x, &y]);
        let s = s_half_space(&x, &y)?;
        let (fx, fy) = (apply_map(f, &hp, &x)?, apply_map(f, &hp, &y)?);
        t[0].eq(s_half_space(&fx, &fy)?, bound(1, &p1, s)?, w);
        let h = random_automorphism(&mut rng)?;
        let g = |z| to_c(&h.apply_closed(&from_c(cayley(z))).expect("planar point"));
        let (gx, gy) = (apply_map(g, &disk, &x)?, apply_map(g, &disk, &y)?);
        t[3].le(s_unit_disk(&gx, &gy, &cfg)?.value, bound(4, &p1, s)?, w);

        let x = uniform_in(&mut rng, &disk);
        let y = uniform_in(&mut rng, &disk);
        let w = || witness(&disk, &[&x, &y]).param("a", h.a());
        let s = s_unit_disk(&x, &y, &cfg)?.value;
        let sh = s_unit_disk(&h.apply(&x)?, &h.apply(&y)?, &cfg)?.value;
        t[1].le(sh, bound(2, &p1, s)?, w);
        let f = |z| cayley_inv(to_c(&h.apply_closed(&from_c(z)).expect("planar point")));
        let (fx, fy) = (apply_map(f, &hp, &x)?, apply_map(f, &hp, &y)?);
        t[2].le(s_half_space(&fx, &fy)?, bound(3, &p1, s)?, w);
    }
    let mut out = ctx.finish(t, start);

    for k in [1.5, 2.0] {
        let p = QcParams::new(k, 2)?;
        let mut t = [Tally::new(format!("case 2, radial stretch K={k}"), tol)];
        for i in 0..ctx.n() {
            let mut rng = ctx.rng(&format!("stretch/{k}"), i);
            let x = uniform_in(&mut rng, &disk);
            let y = uniform_in(&mut rng, &disk);
            let (fx, fy) = (radial_stretch(k, &x)?, radial_stretch(k, &y)?);
            let s = s_unit_disk(&x, &y, &cfg)?.value;
            let sf = s_unit_disk(&fx, &fy, &cfg)?.value;
            t[0].le(sf, bound(2, &p, s)?, || {
                witness(&disk, &[&x, &y]).param("K", k)
            });
        }
        out.extend(ctx.finish(t.into(), start));
    }

    let punctured = Domain::punctured(Point::origin(2));
    for k in QC_KS {
        let mut t = vec![Tally::new(
            format!("radial stretch bound in R2-0, K={k}"),
            ctx.tol(CLOSED_TOL),
        )];
        if k == 1.0 {
            t.push(Tally::new(
                "radial stretch equality, K=1",
                ctx.tol(EQUALITY_TOL),
            ));
        }
        for i in 0..ctx.n() {
            let mut rng = ctx.rng(&format!("thm2/{k}"), i);
            let z = uniform_in(&mut rng, &punctured);
            let w = uniform_in(&mut rng, &punctured);
            let c = thm2_check(k, &z, &w)?;
            let wit = || witness(&punctured, &[&z, &w]).param("K", k);
            t[0].le(c.lhs, c.rhs, wit);
            if let Some(eq) = t.get_mut(1) {
                eq.eq(c.lhs, c.rhs, wit);
            }
        }
        out.extend(ctx.finish(t, start));
    }
    Ok(out)
}
