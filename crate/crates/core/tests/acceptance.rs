//! Acceptance run. Prints one detail line per check and one PASS/FAIL line
//! per criterion; exits non-zero if any criterion fails.
//!
//! Tolerances are fixed constants below and must not be loosened to make a
//! run pass.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num::bigint::BigInt;
use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wordgeom::asymptotics::{
    coprimality_demo, default_window, growth_series, leading_coefficient, measure_convergence_report,
    simple_spelling_density, sphere_ball_factor_check, standard_plane_ball_mean, Functional,
    SIX_OVER_PI_SQUARED,
};
use wordgeom::counting::{ehrhart_fit, picks_identity};
use wordgeom::hull::{build_hull, LimitShape};
use wordgeom::measure::cone_measure;
use wordgeom::metric::{
    bfs_ball, compute_k, hausdorff_gap, tiling_check, verify_norm_bounds, MetricTable, OracleResult, SpellingOracle,
};
use wordgeom::presets::{preset, PRESET_NAMES};
use wordgeom::sprawl::{sprawl_empirical, sprawl_mc};
use wordgeom::{GeneratorSet, LatticeVector, Rational, DEFAULT_SEED};

const DENSITY_TOL: f64 = 0.01;
const GROWTH_REL_TOL: f64 = 0.02;
const CONVERGENCE_TOL: f64 = 0.02;
const FACTOR_REL_TOL: f64 = 0.01;
const SPRAWL_SIGMAS: f64 = 3.0;
const SPRAWL_CEILING: f64 = 1.95;
const MC_SAMPLES: u64 = 1_000_000;
const PAIR_SAMPLES: u64 = 1_000_000;
const SPRAWL_RADIUS: u32 = 60;
const COPRIME_TOL: f64 = 0.01;
const PARITY_GAP: f64 = 0.05;
const ORACLE_RADIUS: u32 = 6;

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn f64_of(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

struct Preset {
    name: &'static str,
    gens: GeneratorSet,
    shape: LimitShape,
    table: MetricTable,
    k: u32,
    volume: Rational,
}

struct Fixtures {
    presets: BTreeMap<&'static str, Preset>,
    coprime_table: MetricTable,
}

fn radius_for(name: &str) -> u32 {
    if name.ends_with("d3") {
        80
    } else {
        300
    }
}

fn fixtures() -> Fixtures {
    let presets = PRESET_NAMES
        .iter()
        .map(|&name| {
            let gens = preset(name).unwrap();
            let shape = build_hull(&gens).unwrap();
            let table = bfs_ball(&gens, radius_for(name)).unwrap();
            let k = compute_k(&gens, &shape).unwrap();
            let volume = shape.volume().clone();
            (
                name,
                Preset {
                    name,
                    gens,
                    shape,
                    table,
                    k,
                    volume,
                },
            )
        })
        .collect();
    Fixtures {
        presets,
        coprime_table: bfs_ball(&preset("std-d2").unwrap(), 1000).unwrap(),
    }
}

/// Collects sub-check lines for one criterion.
struct Checks {
    lines: Vec<String>,
    ok: bool,
}

impl Checks {
    fn new() -> Self {
        Self {
            lines: Vec::new(),
            ok: true,
        }
    }

    fn check(&mut self, ok: bool, msg: impl Into<String>) {
        self.ok &= ok;
        self.lines.push(format!("    {} {}", if ok { "ok  " } else { "FAIL" }, msg.into()));
    }
}

fn run(id: u32, title: &str, body: impl FnOnce(&mut Checks)) -> bool {
    let start = Instant::now();
    let mut c = Checks::new();
    body(&mut c);
    for l in &c.lines {
        println!("{l}");
    }
    println!(
        "{} criterion {id}: {title} ({:.1}s)",
        if c.ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    c.ok
}

fn criterion_1(fx: &Fixtures, c: &mut Checks) {
    let knight = &fx.presets["chess-knight"];
    c.check(knight.k == 3, format!("K(chess-knight) = {}", knight.k));

    let fw = cone_measure(&knight.shape).facet_weights();
    let mut distinct = fw.clone();
    distinct.sort();
    distinct.dedup();
    let ratio_ok = distinct.len() == 2 && &distinct[1] / &distinct[0] == rat(4, 3);
    c.check(
        ratio_ok,
        format!(
            "chess-knight facet weights {}, side ratio 4:3",
            distinct.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
        ),
    );

    for (name, target) in [("chess-knight", rat(2, 7)), ("six-one-d2", rat(1, 36))] {
        let p = &fx.presets[name];
        let r = simple_spelling_density(&p.table, &p.shape, 300).unwrap();
        let t = f64_of(&target);
        c.check(
            r.target.as_ref() == Some(&target) && (r.sphere_density() - t).abs() <= DENSITY_TOL,
            format!(
                "{name} simple-spelling density at n=300: sphere {:.5}, ball {:.5}, target {target}",
                r.sphere_density(),
                r.ball_density()
            ),
        );
        c.check(
            (r.ball_density() - t).abs() <= DENSITY_TOL,
            format!("{name} ball density within {DENSITY_TOL} of {target}"),
        );
    }
}

fn criterion_2(fx: &Fixtures, c: &mut Checks) {
    for name in ["std-d2", "chess-knight", "std-d3", "cube-d3"] {
        let p = &fx.presets[name];
        let d = p.gens.dim() as u32;
        let g = growth_series(&p.table);
        let w = default_window(p.table.radius());
        let v = f64_of(&p.volume);
        let beta = leading_coefficient(&g.beta, d, w.clone()).unwrap();
        let sigma = leading_coefficient(&g.sigma, d - 1, w.clone()).unwrap();
        let rb = (beta.constant / v - 1.0).abs();
        let rs = (sigma.constant / (d as f64 * v) - 1.0).abs();
        c.check(
            rb <= GROWTH_REL_TOL,
            format!("{name} beta/n^{d} -> {:.4} vs V = {} (rel {:.2e}) over {w:?}", beta.constant, p.volume, rb),
        );
        c.check(
            rs <= GROWTH_REL_TOL,
            format!("{name} sigma/n^{} -> {:.4} vs dV = {:.4} (rel {:.2e})", d - 1, sigma.constant, d as f64 * v, rs),
        );
    }
}

fn criterion_3(fx: &Fixtures, c: &mut Checks) {
    for name in ["std-d2", "chess-knight", "std-d3", "cube-d3"] {
        let p = &fx.presets[name];
        let r = verify_norm_bounds(&p.table, &p.shape, p.k).unwrap();
        c.check(
            r.holds(),
            format!(
                "{name}: {} points of B_{}, {} violations, K = {}, max |w| - ||w|| = {}",
                r.checked,
                p.table.radius(),
                r.violations.len(),
                p.k,
                r.max_gap
            ),
        );
    }
    let p = &fx.presets["chess-knight"];
    let len = p.table.length(&[2, 2]);
    let norm = p.shape.minkowski_norm(&LatticeVector::from(vec![2, 2])).unwrap();
    c.check(
        len == Some(4) && norm == rat(4, 3),
        format!("chess-knight |(2,2)| = {len:?}, ||(2,2)||_L = {norm}"),
    );
}

fn criterion_4(fx: &Fixtures, c: &mut Checks) {
    for p in fx.presets.values() {
        let n_max = p.table.radius();
        let step = n_max / 30;
        let radii: Vec<u32> = (1..=30).map(|i| i * step).collect();
        let r = measure_convergence_report(&p.table, &p.shape, &radii).unwrap();
        c.check(
            r.trend_ok(),
            format!(
                "{}: median D first quartile {:.4}, last quartile {:.4}",
                p.name, r.first_quartile_median, r.last_quartile_median
            ),
        );
        if matches!(p.name, "chess-knight" | "six-one-d2") {
            let r200 = measure_convergence_report(&p.table, &p.shape, &[200]).unwrap();
            let d = r200.facet_deviations[0];
            c.check(d <= CONVERGENCE_TOL, format!("{}: facet D(200) = {d:.5}", p.name));
        }
    }
}

fn criterion_5(fx: &Fixtures, c: &mut Checks) {
    for name in ["std-d2", "chess-knight"] {
        let p = &fx.presets[name];
        for pw in [1u32, 2] {
            let f = Functional::WordLengthPower(pw);
            let r = sphere_ball_factor_check(&p.table, &p.shape, &f, 200).unwrap();
            c.check(
                r.relative_deviation() <= FACTOR_REL_TOL,
                format!(
                    "{name} |x|^{pw} at n=200: ball/sphere {:.5} vs {} (rel {:.2e})",
                    r.ratio,
                    r.target,
                    r.relative_deviation()
                ),
            );
        }
    }
    let p = &fx.presets["std-d2"];
    let f = Functional::WordLengthPower(1);
    let prof = wordgeom::asymptotics::average_profile(&p.table, &p.shape, &f, 50).unwrap();
    let bad: Vec<usize> = prof
        .iter()
        .enumerate()
        .filter(|(n, (_, b))| b.exact() != Some(&standard_plane_ball_mean(*n as u64)))
        .map(|(n, _)| n)
        .collect();
    c.check(
        bad.is_empty(),
        format!("std-d2 ball mean = (4n^3+6n^2+2n)/(6n^2+6n+3) exactly for n <= 50 (mismatches: {bad:?})"),
    );
}

fn criterion_6(fx: &Fixtures, c: &mut Checks) {
    for (name, target) in [("std-d3", rat(7, 5)), ("cube-d3", rat(64, 45))] {
        let p = &fx.presets[name];
        let m = cone_measure(&p.shape);
        let mc = sprawl_mc(&p.shape, &m, MC_SAMPLES, DEFAULT_SEED).unwrap();
        let t = f64_of(&target);
        let z = (mc.value - t).abs() / mc.stderr;
        c.check(
            z <= SPRAWL_SIGMAS,
            format!("{name} MC sprawl {:.5} ± {:.1e} vs {target} = {t:.5} ({z:.2}σ)", mc.value, mc.stderr),
        );
        let emp = sprawl_empirical(&p.table, &p.shape, SPRAWL_RADIUS, PAIR_SAMPLES, DEFAULT_SEED).unwrap();
        let sigma = emp.stderr.hypot(mc.stderr);
        let allowance = SPRAWL_SIGMAS * sigma + p.k as f64 / SPRAWL_RADIUS as f64;
        let diff = (emp.value - mc.value).abs();
        c.check(
            diff <= allowance,
            format!(
                "{name} empirical n={SPRAWL_RADIUS}: {:.5} ± {:.1e} ({} of {} pairs via norm), |diff| {:.4} <= {:.4}",
                emp.value, emp.stderr, emp.approximated_pairs, PAIR_SAMPLES, diff, allowance
            ),
        );
        c.check(
            mc.value < SPRAWL_CEILING && emp.value < SPRAWL_CEILING,
            format!("{name} estimates below {SPRAWL_CEILING}"),
        );
    }
}

fn criterion_7(fx: &Fixtures, c: &mut Checks) {
    let ball = coprimality_demo(&fx.coprime_table, &[1000]).unwrap();
    let b = f64_of(&ball.rows[0].ball);
    c.check(
        (b - SIX_OVER_PI_SQUARED).abs() <= COPRIME_TOL,
        format!("std-d2 coprime ball average at n=1000: {b:.5} vs 6/π² = {SIX_OVER_PI_SQUARED:.5}"),
    );
    let radii: Vec<u32> = (100..=120).collect();
    let r = coprimality_demo(&fx.coprime_table, &radii).unwrap();
    let gap = r.min_even_gap.unwrap();
    let even_max = r
        .rows
        .iter()
        .filter(|row| row.radius % 2 == 0)
        .map(|row| f64_of(&row.sphere))
        .fold(0.0, f64::max);
    c.check(
        gap > PARITY_GAP,
        format!(
            "n in [100,120]: odd sphere mean {:.4}, largest even {:.4}, min gap {:.4}",
            r.odd_mean.unwrap(),
            even_max,
            gap
        ),
    );
}

/// Random full-rank generating sets of `Z^3`, drawn from a fixed seed.
fn random_sets(seed: u64, count: usize) -> Vec<GeneratorSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let r = rng.random_range(3..=5);
        let vs: Vec<LatticeVector> = (0..r)
            .map(|_| LatticeVector::new((0..3).map(|_| rng.random_range(-2..=2)).collect()))
            .collect();
        if let Ok(g) = GeneratorSet::symmetrized(3, vs) {
            out.push(g);
        }
    }
    out
}

fn criterion_8(fx: &Fixtures, c: &mut Checks) {
    let mut sets: Vec<(String, GeneratorSet)> = ["chess-knight", "std-d3"]
        .iter()
        .map(|n| (n.to_string(), fx.presets[n].gens.clone()))
        .collect();
    for g in random_sets(DEFAULT_SEED, 2) {
        let desc = g.pair_representatives().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        sets.push((format!("random ±{{{desc}}}"), g));
    }
    for (name, g) in &sets {
        let t = bfs_ball(g, ORACLE_RADIUS).unwrap();
        let o = SpellingOracle::new(g).unwrap();
        let mismatches = t
            .iter()
            .filter(|(p, n)| o.word_length(p, ORACLE_RADIUS) != OracleResult::Length(*n))
            .count();
        c.check(
            mismatches == 0,
            format!("{name}: {} points of B_{ORACLE_RADIUS}, {mismatches} oracle mismatches", t.ball_len(ORACLE_RADIUS)),
        );
    }
    for p in fx.presets.values() {
        let d = p.gens.dim();
        if d == 2 {
            let pick = picks_identity(&p.shape).unwrap();
            c.check(
                pick.holds,
                format!("{}: Pick i={} b={} A={}", p.name, pick.interior, pick.boundary, pick.area),
            );
        }
        match ehrhart_fit(&p.shape, d as u32 + 4) {
            Ok(e) => c.check(
                e.leading() == &p.volume,
                format!(
                    "{}: Ehrhart fit exact through n={}, leading {} = vol {}",
                    p.name,
                    d + 4,
                    e.leading(),
                    p.volume
                ),
            ),
            Err(err) => c.check(false, format!("{}: Ehrhart fit failed: {err}", p.name)),
        }
    }
}

fn criterion_9(fx: &Fixtures, c: &mut Checks) {
    for p in fx.presets.values() {
        let n_max = p.table.radius();
        let mut worst: Option<(u32, Rational)> = None;
        let mut ok = true;
        for n in 1..=n_max {
            let gap = hausdorff_gap(&p.table, &p.shape, n).unwrap();
            let bound = rat(p.k as i64, n as i64);
            ok &= gap < bound;
            let scaled = &gap * Rational::from_integer(BigInt::from(n));
            if worst.as_ref().is_none_or(|(_, w)| scaled > *w) {
                worst = Some((n, scaled));
            }
        }
        let (wn, w) = worst.unwrap();
        c.check(
            ok,
            format!("{}: n * gap(n) < K = {} for n <= {n_max} (max {w} at n={wn})", p.name, p.k),
        );
        let tiles = (2..=10).all(|n| tiling_check(&p.shape, &p.gens, n).unwrap());
        c.check(tiles, format!("{}: (n-1)Q + S covers nQ for n = 2..10", p.name));
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let fx = fixtures();
    println!("fixtures built in {:.1}s", start.elapsed().as_secs_f64());
    let results = [
        run(1, "exact constants", |c| criterion_1(&fx, c)),
        run(2, "growth leading coefficients", |c| criterion_2(&fx, c)),
        run(3, "bounded difference", |c| criterion_3(&fx, c)),
        run(4, "convergence to cone measure", |c| criterion_4(&fx, c)),
        run(5, "sphere versus ball factor", |c| criterion_5(&fx, c)),
        run(6, "sprawl", |c| criterion_6(&fx, c)),
        run(7, "coprimality", |c| criterion_7(&fx, c)),
        run(8, "oracle equivalence, Pick and Ehrhart", |c| criterion_8(&fx, c)),
        run(9, "limit shape", |c| criterion_9(&fx, c)),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!(
        "acceptance: {passed}/{} criteria passed in {:.1}s",
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
