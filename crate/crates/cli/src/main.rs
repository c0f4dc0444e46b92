use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wordgeom::asymptotics::{
    average_profile, coprimality_demo, default_window, growth_series, leading_coefficient, limit_integral,
    measure_convergence_report, simple_spelling_density, sphere_ball_factor_check, Functional, SIX_OVER_PI_SQUARED,
};
use wordgeom::config::load_generators;
use wordgeom::export::{
    hull_report, rational_string, write_averages_csv, write_convergence_csv, write_growth_csv, write_json,
    write_polygon_csv, write_sphere_points_csv, AverageRow,
};
use wordgeom::hull::{build_hull, LimitShape};
use wordgeom::measure::{cone_measure, rational_to_f64};
use wordgeom::metric::cache::{cache_path, load_or_build};
use wordgeom::metric::{bfs_ball_with, MetricConfig, MetricTable};
use wordgeom::presets::{preset, PRESET_NAMES};
use wordgeom::sprawl::{sprawl_empirical, sprawl_mc, sprawl_report, SprawlConfig, SprawlEstimate};
use wordgeom::{Error, GeneratorSet, Rational, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "wordgeom", version, about = "Geometry of word metrics on Z^d")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// JSON generating-set file: {"dim": d, "generators": [[..], ..], "symmetrize": bool}
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "preset")]
    gens: Option<PathBuf>,
    /// Named generating set
    #[arg(long, global = true, value_name = "NAME")]
    preset: Option<String>,
    /// Ball radius N
    #[arg(long, global = true, default_value_t = 50)]
    radius: u32,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write files into this directory instead of printing to stdout
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Reuse and store metric tables here
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Refuse to build tables with more points than this
    #[arg(long, global = true, default_value_t = MetricConfig::default().max_points)]
    max_points: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Empirical,
    Mc,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Limit shape, cone measure and Pick check as JSON
    Hull,
    /// Growth series CSV and fitted leading coefficients
    Growth,
    /// Sector histograms and their distance to cone measure, one row per radius
    Measure {
        /// Radius step between rows
        #[arg(long, default_value_t = 1)]
        step: u32,
    },
    /// Sphere and ball averages of a functional, one row per radius
    Average {
        /// word-length[:p], norm[:p], euclidean[:p], monomial:e1,..,ed, coprime, one
        #[arg(long, default_value = "word-length:1")]
        functional: Functional,
        /// Monte Carlo samples for the limit integral
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Sprawl statistic as JSON
    Sprawl {
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1_000_000)]
        pair_budget: u64,
        /// Radius of the distance table; defaults to --radius. Pairs whose
        /// difference falls outside it use the norm instead.
        #[arg(long)]
        table_radius: Option<u32>,
    },
    /// Density of words with a simple spelling
    Density,
    /// Coprime points on planar spheres and balls
    DemoCoprime {
        #[arg(long, default_value_t = 100)]
        parity_from: u32,
        #[arg(long, default_value_t = 120)]
        parity_to: u32,
    },
    /// Build the metric table into --cache-dir, or reuse a cached one
    Cache,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

type CliResult<T = ()> = Result<T, Failure>;

struct Context {
    global: Global,
    gens: GeneratorSet,
    source: String,
}

impl Context {
    fn table(&self, radius: u32) -> CliResult<MetricTable> {
        let cfg = MetricConfig {
            max_points: self.global.max_points,
            ..MetricConfig::default()
        };
        Ok(match &self.global.cache_dir {
            Some(dir) => load_or_build(dir, &self.gens, radius, &cfg)?,
            None => bfs_ball_with(&self.gens, radius, &cfg)?,
        })
    }

    /// Opens `name` under `--out`, or stdout when no directory was given.
    fn output(&self, name: &str) -> CliResult<Box<dyn Write>> {
        Ok(match &self.global.out {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                Box::new(io::BufWriter::new(fs::File::create(dir.join(name))?))
            }
            None => Box::new(io::stdout().lock()),
        })
    }

    fn has_out(&self) -> bool {
        self.global.out.is_some()
    }
}

fn load(global: &Global) -> CliResult<(GeneratorSet, String)> {
    match (&global.gens, &global.preset) {
        (Some(path), None) => Ok((load_generators(path)?, path.display().to_string())),
        (None, Some(name)) => Ok((preset(name)?, name.clone())),
        _ => Err(Failure::Usage(format!(
            "one of --gens FILE or --preset NAME is required (presets: {})",
            PRESET_NAMES.join(", ")
        ))),
    }
}

fn hull(ctx: &Context) -> CliResult {
    let shape = build_hull(&ctx.gens)?;
    let measure = cone_measure(&shape);
    let report = hull_report(&ctx.gens, &shape, &measure)?;
    write_json(ctx.output("hull.json")?, &report)?;
    if ctx.has_out() && shape.dim() == 2 {
        write_polygon_csv(ctx.output("polygon.csv")?, &shape)?;
    }
    if measure.total() != Rational::from_integer(1.into()) {
        return Err(Failure::Check(format!("cone measure has total {}", measure.total())));
    }
    if report.pick.as_ref().is_some_and(|p| !p.holds) {
        return Err(Failure::Check("Pick's identity fails".into()));
    }
    Ok(())
}

#[derive(Serialize)]
struct GrowthFit {
    window: (u32, u32),
    volume: String,
    beta_coefficient: f64,
    beta_residual: f64,
    sigma_coefficient: f64,
    sigma_residual: f64,
}

fn growth(ctx: &Context) -> CliResult {
    let shape = build_hull(&ctx.gens)?;
    let table = ctx.table(ctx.global.radius)?;
    let series = growth_series(&table);
    write_growth_csv(ctx.output("growth.csv")?, &series)?;
    let d = ctx.gens.dim() as u32;
    let w = default_window(table.radius());
    let fit = match (
        leading_coefficient(&series.beta, d, w.clone()),
        leading_coefficient(&series.sigma, d - 1, w.clone()),
    ) {
        (Ok(b), Ok(s)) => GrowthFit {
            window: (*w.start(), *w.end()),
            volume: rational_string(shape.volume()),
            beta_coefficient: b.constant,
            beta_residual: b.max_residual,
            sigma_coefficient: s.constant,
            sigma_residual: s.max_residual,
        },
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("no coefficient fit: {e}");
            return Ok(());
        }
    };
    if ctx.has_out() {
        write_json(ctx.output("growth_fit.json")?, &fit)?;
    } else {
        eprintln!("{}", serde_json::to_string(&fit).map_err(Error::from)?);
    }
    Ok(())
}

fn measure(ctx: &Context, step: u32) -> CliResult {
    if step == 0 {
        return Err(Failure::Usage("--step must be positive".into()));
    }
    let shape = build_hull(&ctx.gens)?;
    let table = ctx.table(ctx.global.radius)?;
    let radii: Vec<u32> = (1..=table.radius()).filter(|n| n % step == 0 || *n == 1).collect();
    if radii.is_empty() {
        return Err(Failure::Usage("--radius must be positive".into()));
    }
    let report = measure_convergence_report(&table, &shape, &radii)?;
    write_convergence_csv(ctx.output("convergence.csv")?, &report)?;
    if ctx.has_out() {
        write_sphere_points_csv(ctx.output("sphere_points.csv")?, &table, table.radius())?;
    }
    eprintln!(
        "median D: first quartile {:.6}, last quartile {:.6}",
        report.first_quartile_median, report.last_quartile_median
    );
    Ok(())
}

fn average(ctx: &Context, f: &Functional, samples: u64) -> CliResult {
    if let Functional::CoordinateMonomial(e) = f {
        if e.len() != ctx.gens.dim() {
            return Err(Error::DimensionMismatch {
                expected: ctx.gens.dim(),
                got: e.len(),
            }
            .into());
        }
    }
    let shape: LimitShape = build_hull(&ctx.gens)?;
    let table = ctx.table(ctx.global.radius)?;
    let profile = average_profile(&table, &shape, f, table.radius())?;
    let mut rows = Vec::with_capacity(profile.len());
    for (n, (sphere, ball)) in profile.into_iter().enumerate() {
        let n = n as u32;
        let factor = if f.is_homogeneous() && n > 0 {
            Some(sphere_ball_factor_check(&table, &shape, f, n)?)
        } else {
            None
        };
        rows.push(AverageRow {
            radius: n,
            sphere,
            ball,
            factor,
        });
    }
    write_averages_csv(ctx.output("averages.csv")?, &rows)?;
    if f.is_homogeneous() {
        let v = limit_integral(f, &shape, &cone_measure(&shape), samples, ctx.global.seed)?;
        eprintln!("limit integral of {f}: {} ± {}", v.value, v.stderr);
    }
    Ok(())
}

#[derive(Serialize)]
struct SprawlOutput<'a> {
    generators: &'a str,
    radius: u32,
    table_radius: u32,
    seed: u64,
    method: Method,
    samples: u64,
    pair_budget: u64,
    empirical: Option<SprawlEstimate>,
    monte_carlo: Option<SprawlEstimate>,
    difference: Option<f64>,
    combined_stderr: Option<f64>,
    bias_allowance: Option<f64>,
    consistent: Option<bool>,
    below_two: bool,
}

fn sprawl(ctx: &Context, method: Method, samples: u64, pair_budget: u64, table_radius: Option<u32>) -> CliResult {
    let n = ctx.global.radius;
    let table_radius = table_radius.unwrap_or(n);
    if table_radius < n {
        return Err(Failure::Usage("--table-radius must be at least --radius".into()));
    }
    let shape = build_hull(&ctx.gens)?;
    let measure = cone_measure(&shape);
    let cfg = SprawlConfig {
        radius: n,
        pair_budget,
        samples,
        seed: ctx.global.seed,
        ..SprawlConfig::default()
    };
    let bound = 2.0 - cfg.delta;
    let mut out = SprawlOutput {
        generators: &ctx.source,
        radius: n,
        table_radius,
        seed: cfg.seed,
        method,
        samples,
        pair_budget,
        empirical: None,
        monte_carlo: None,
        difference: None,
        combined_stderr: None,
        bias_allowance: None,
        consistent: None,
        below_two: true,
    };
    match method {
        Method::Mc => {
            let e = sprawl_mc(&shape, &measure, samples, cfg.seed)?;
            out.below_two = e.value < bound;
            out.monte_carlo = Some(e);
        }
        Method::Empirical => {
            let table = ctx.table(table_radius)?;
            let e = sprawl_empirical(&table, &shape, n, pair_budget, cfg.seed)?;
            out.below_two = e.value < bound;
            out.empirical = Some(e);
        }
        Method::Both => {
            let table = ctx.table(table_radius)?;
            let r = sprawl_report(&shape, &measure, &table, &cfg)?;
            out.difference = Some(r.difference);
            out.combined_stderr = Some(r.combined_stderr);
            out.bias_allowance = Some(r.bias_allowance);
            out.consistent = Some(r.consistent());
            out.below_two = r.below_two;
            out.empirical = Some(r.empirical);
            out.monte_carlo = Some(r.monte_carlo);
        }
    }
    write_json(ctx.output("sprawl.json")?, &out)?;
    Ok(())
}

#[derive(Serialize)]
struct DensityOutput {
    radius: u32,
    sphere_simple: u64,
    sphere_total: u64,
    sphere_density: f64,
    ball_simple: u64,
    ball_total: u64,
    ball_density: f64,
    target: Option<String>,
}

fn density(ctx: &Context) -> CliResult {
    let shape = build_hull(&ctx.gens)?;
    let table = ctx.table(ctx.global.radius)?;
    let r = simple_spelling_density(&table, &shape, table.radius())?;
    let out = DensityOutput {
        radius: r.radius,
        sphere_simple: r.sphere_simple,
        sphere_total: r.sphere_total,
        sphere_density: r.sphere_density(),
        ball_simple: r.ball_simple,
        ball_total: r.ball_total,
        ball_density: r.ball_density(),
        target: r.target.as_ref().map(rational_string),
    };
    write_json(ctx.output("density.json")?, &out)?;
    Ok(())
}

#[derive(Serialize)]
struct SphereRow {
    n: u32,
    sphere: String,
    value: f64,
}

#[derive(Serialize)]
struct CoprimeOutput {
    ball_radius: u32,
    ball_average: String,
    ball_value: f64,
    six_over_pi_squared: f64,
    spheres: Vec<SphereRow>,
    odd_mean: Option<f64>,
    min_even_gap: Option<f64>,
}

fn demo_coprime(ctx: &Context, from: u32, to: u32) -> CliResult {
    if ctx.gens.dim() != 2 {
        return Err(Error::DimensionUnsupported {
            supported: 2,
            got: ctx.gens.dim(),
        }
        .into());
    }
    if from == 0 || from > to {
        return Err(Failure::Usage("need 0 < --parity-from <= --parity-to".into()));
    }
    let n = ctx.global.radius.max(1);
    let table = ctx.table(n.max(to))?;
    let ball = coprimality_demo(&table, &[n])?;
    let radii: Vec<u32> = (from..=to).collect();
    let parity = coprimality_demo(&table, &radii)?;
    let b = &ball.rows[0].ball;
    let out = CoprimeOutput {
        ball_radius: n,
        ball_average: rational_string(b),
        ball_value: rational_to_f64(b),
        six_over_pi_squared: SIX_OVER_PI_SQUARED,
        spheres: parity
            .rows
            .iter()
            .map(|r| SphereRow {
                n: r.radius,
                sphere: rational_string(&r.sphere),
                value: rational_to_f64(&r.sphere),
            })
            .collect(),
        odd_mean: parity.odd_mean,
        min_even_gap: parity.min_even_gap,
    };
    write_json(ctx.output("coprime.json")?, &out)?;
    Ok(())
}

#[derive(Serialize)]
struct CacheOutput {
    path: String,
    radius: u32,
    points: usize,
    generator_hash: String,
}

fn cache(ctx: &Context) -> CliResult {
    let Some(dir) = &ctx.global.cache_dir else {
        return Err(Failure::Usage("cache needs --cache-dir".into()));
    };
    let table = ctx.table(ctx.global.radius)?;
    let out = CacheOutput {
        path: cache_path(dir, &ctx.gens).display().to_string(),
        radius: table.radius(),
        points: table.ball_len(table.radius()),
        generator_hash: ctx.gens.content_hash(),
    };
    write_json(ctx.output("cache.json")?, &out)?;
    Ok(())
}

fn dispatch(cli: Cli) -> CliResult {
    if let Some(t) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let (gens, source) = load(&cli.global)?;
    let ctx = Context {
        global: cli.global,
        gens,
        source,
    };
    match cli.command {
        Command::Hull => hull(&ctx),
        Command::Growth => growth(&ctx),
        Command::Measure { step } => measure(&ctx, step),
        Command::Average { functional, samples } => average(&ctx, &functional, samples),
        Command::Sprawl {
            method,
            samples,
            pair_budget,
            table_radius,
        } => sprawl(&ctx, method, samples, pair_budget, table_radius),
        Command::Density => density(&ctx),
        Command::DemoCoprime { parity_from, parity_to } => demo_coprime(&ctx, parity_from, parity_to),
        Command::Cache => cache(&ctx),
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Usage(_) => 1,
        Failure::Check(_) => 3,
        Failure::Lib(Error::CapacityExceeded { .. }) => 2,
        Failure::Lib(Error::Internal(_)) => 3,
        Failure::Lib(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let msg = match &f {
                Failure::Lib(e) => e.to_string(),
                Failure::Usage(m) => m.clone(),
                Failure::Check(m) => format!("check failed: {m}"),
            };
            eprintln!("wordgeom: {msg}");
            ExitCode::from(exit_code(&f))
        }
    }
}
