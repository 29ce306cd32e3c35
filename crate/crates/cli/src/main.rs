use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use plycover::harness::{
    gen_instance, render_svg, run_bench, run_cover, write_csv, BenchConfig, CoverDocument, GenKind,
    GenParams, Instance, ShapeSpec,
};
use plycover::oracle::{default_limit, opt_1ply_box_cover};
use plycover::{ply_report, ConvexPolygon, Error};

/// Minimum-ply geometric covers.
#[derive(Parser)]
#[command(name = "plycover", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point instance.
    Gen(GenArgs),
    /// Build a cover of an instance.
    Cover(CoverArgs),
    /// Check coverage and ply of a cover.
    Verify(VerifyArgs),
    /// Exact minimum 1-ply box cover for a small instance.
    Oracle(OracleArgs),
    /// Run a benchmark campaign and write CSV.
    Bench(BenchArgs),
    /// Render an instance, optionally with a cover, as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct GenArgs {
    /// uniform, clustered, grid or boundary-adversarial.
    #[arg(long, default_value = "uniform")]
    kind: String,
    #[arg(short, long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, env = "PLYCOVER_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.0)]
    lo: f64,
    #[arg(long, default_value_t = 10.0)]
    hi: f64,
    #[arg(long, default_value_t = 1.0)]
    spacing: f64,
    #[arg(long, default_value_t = 4)]
    clusters: usize,
    #[arg(long, default_value_t = 0.75)]
    spread: f64,
    #[arg(long, default_value_t = 1.0 / 1024.0)]
    epsilon: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CoverArgs {
    #[arg(long, alias = "instance")]
    input: PathBuf,
    /// square, rect:a,b, cube, hyperbox:l1,..., disk, tile-square:s,
    /// tile-hex:rho or polygon.
    #[arg(long)]
    shape: String,
    #[arg(long)]
    polygon_file: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, alias = "instance")]
    input: PathBuf,
    #[arg(long)]
    cover: PathBuf,
    /// Fail unless the exact ply is at most K.
    #[arg(long, value_name = "K")]
    assert_ply: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, alias = "instance")]
    input: PathBuf,
    /// square, rect:a,b, cube or hyperbox:l1,...
    #[arg(long, default_value = "square")]
    shape: String,
    /// Largest instance accepted; defaults depend on the dimension.
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "uniform")]
    generators: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "1024,2048,4096")]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    dims: Vec<usize>,
    /// Shapes separated by `;`, e.g. `square;disk;rect:2,1`.
    #[arg(long, value_delimiter = ';', default_value = "square")]
    shapes: Vec<String>,
    #[arg(long)]
    polygon_file: Option<PathBuf>,
    /// First seed; rows use `seed .. seed + seeds`.
    #[arg(long, env = "PLYCOVER_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long, alias = "instance")]
    input: PathBuf,
    #[arg(long)]
    cover: Option<PathBuf>,
    /// Destination; `--output` is accepted as well.
    #[arg(long, alias = "output")]
    svg: Option<PathBuf>,
}

/// Failure classes mapped to exit codes.
enum Failure {
    Validation(anyhow::Error),
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let usage = matches!(
            e.downcast_ref::<Error>(),
            Some(
                Error::UnsupportedShape(_)
                    | Error::UnknownGenerator(_)
                    | Error::UnsupportedDimension(_)
                    | Error::InstanceTooLarge { .. }
            )
        );
        if usage {
            Failure::Usage(e)
        } else {
            Failure::Validation(e)
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

type Outcome = Result<(), Failure>;

fn write_out(path: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn to_json<T: serde::Serialize>(value: &T) -> anyhow::Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn read_polygon(path: Option<&Path>) -> anyhow::Result<Option<ConvexPolygon>> {
    path.map(read_json::<ConvexPolygon>).transpose()
}

fn parse_shape(s: &str, polygon_file: Option<&Path>) -> Result<ShapeSpec, Failure> {
    let polygon = read_polygon(polygon_file).map_err(Failure::Validation)?;
    Ok(ShapeSpec::parse(s, polygon)?)
}

fn cmd_gen(a: GenArgs) -> Outcome {
    let kind: GenKind = a.kind.parse()?;
    let params = GenParams {
        range: (a.lo, a.hi),
        spacing: a.spacing,
        clusters: a.clusters,
        spread: a.spread,
        epsilon: a.epsilon,
    };
    if a.lo.partial_cmp(&a.hi) != Some(std::cmp::Ordering::Less) {
        return Err(Failure::Usage(anyhow::anyhow!("--lo must be below --hi")));
    }
    let instance = gen_instance(kind, a.n, a.dim, a.seed, &params)?;
    write_out(a.output.as_deref(), &to_json(&instance)?)?;
    Ok(())
}

fn cmd_cover(a: CoverArgs) -> Outcome {
    let spec = parse_shape(&a.shape, a.polygon_file.as_deref())?;
    let instance: Instance = read_json(&a.input)?;
    let doc = run_cover(&instance, &spec)?;
    write_out(a.output.as_deref(), &to_json(&doc)?)?;
    if let Some(svg) = a.svg {
        let cover = doc.to_cover()?;
        let text = render_svg(&instance.point_set()?, Some(&cover))?;
        write_out(Some(&svg), text.as_bytes())?;
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let instance: Instance = read_json(&a.input)?;
    let doc: CoverDocument = read_json(&a.cover)?;
    let report = ply_report(&instance.point_set()?, &doc.to_cover()?)?;
    write_out(a.output.as_deref(), &to_json(&report)?)?;
    if !report.is_valid_cover() {
        return Err(Failure::Validation(anyhow::anyhow!(
            "{} point(s) are not covered",
            report.uncovered.len()
        )));
    }
    if let Some(k) = a.assert_ply {
        if report.ply > k {
            return Err(Failure::Validation(anyhow::anyhow!(
                "ply {} exceeds the asserted bound {k}",
                report.ply
            )));
        }
    }
    Ok(())
}

fn cmd_oracle(a: OracleArgs) -> Outcome {
    let instance: Instance = read_json(&a.input)?;
    let points = instance.point_set()?;
    let spec = ShapeSpec::parse(&a.shape, None)?;
    let lengths = match spec {
        ShapeSpec::Square
        | ShapeSpec::Rect { .. }
        | ShapeSpec::Cube
        | ShapeSpec::Hyperbox { .. } => spec.box_lengths(points.dim()).unwrap(),
        _ => {
            return Err(Failure::Usage(anyhow::anyhow!(
                "the oracle supports square, rect, cube and hyperbox shapes"
            )))
        }
    };
    let limit = a.limit.unwrap_or_else(|| default_limit(points.dim()));
    let solution = opt_1ply_box_cover(&points, &lengths, limit)?;
    write_out(a.output.as_deref(), &to_json(&solution)?)?;
    Ok(())
}

fn cmd_bench(a: BenchArgs) -> Outcome {
    let generators = a
        .generators
        .iter()
        .map(|g| g.parse::<GenKind>())
        .collect::<Result<Vec<_>, _>>()?;
    let polygon = read_polygon(a.polygon_file.as_deref()).map_err(Failure::Validation)?;
    let shapes = a
        .shapes
        .iter()
        .map(|s| ShapeSpec::parse(s, polygon.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    if a.jobs == 0 {
        return Err(Failure::Usage(anyhow::anyhow!("--jobs must be at least 1")));
    }
    let config = BenchConfig {
        generators,
        sizes: a.sizes,
        dims: a.dims,
        shapes,
        seeds: (a.seed..a.seed + a.seeds).collect(),
        repeats: a.repeats,
        jobs: Some(a.jobs),
        params: GenParams::default(),
    };
    let rows = run_bench(&config)?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf)?;
    write_out(a.output.as_deref(), &buf)?;
    Ok(())
}

fn cmd_render(a: RenderArgs) -> Outcome {
    let instance: Instance = read_json(&a.input)?;
    let cover = match &a.cover {
        Some(path) => Some(read_json::<CoverDocument>(path)?.to_cover()?),
        None => None,
    };
    let text = render_svg(&instance.point_set()?, cover.as_ref())?;
    write_out(a.svg.as_deref(), text.as_bytes())?;
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Cover(a) => cmd_cover(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Render(a) => cmd_render(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    // Single-threaded unless `bench --jobs` asks for more.
    let result = plycover::par::with_threads(1, || run(cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("usage error: {e:#}");
            ExitCode::from(2)
        }
    }
}
