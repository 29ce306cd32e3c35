//! Benchmark campaigns writing one CSV row per (generator, n, d, shape, seed).

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};
use crate::oracle::{default_limit, far_independent_set_lb, opt_1ply_box_cover_size, Metric};
use crate::verify::{exact_ply, membership};

use super::doc::{run_cover_on, ShapeSpec};
use super::gen::{gen_instance, GenKind, GenParams};

/// Largest instance for which the independent-set lower bound is computed.
const LB_LIMIT: usize = 20;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub generators: Vec<GenKind>,
    pub sizes: Vec<usize>,
    pub dims: Vec<usize>,
    pub shapes: Vec<ShapeSpec>,
    pub seeds: Vec<u64>,
    /// Timed runs per row; the reported time is their median.
    pub repeats: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub params: GenParams,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            generators: vec![GenKind::Uniform],
            sizes: vec![1 << 10],
            dims: vec![2],
            shapes: vec![ShapeSpec::Square],
            seeds: vec![0],
            repeats: 5,
            jobs: None,
            params: GenParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub generator: String,
    pub n: usize,
    pub d: usize,
    pub algorithm: String,
    pub seed: u64,
    pub size: usize,
    pub oracle: Option<usize>,
    pub lb: Option<usize>,
    pub ply: usize,
    pub membership: usize,
    pub time_ms: f64,
    /// `time_ms` divided by the time of the same row at `n / 2`.
    pub doubling_ratio: Option<f64>,
}

fn supports(shape: &ShapeSpec, dim: usize) -> bool {
    match shape {
        ShapeSpec::Cube => dim >= 1,
        ShapeSpec::Hyperbox { lengths } => lengths.len() == dim,
        _ => dim == 2,
    }
}

fn scaled(points: &PointSet, lengths: &[f64]) -> Result<PointSet> {
    PointSet::new(
        points.dim(),
        points
            .iter()
            .map(|p| Point(p.coords().iter().zip(lengths).map(|(c, l)| c / l).collect()))
            .collect(),
    )
}

fn lower_bound(points: &PointSet, shape: &ShapeSpec) -> Result<Option<usize>> {
    if points.len() > LB_LIMIT {
        return Ok(None);
    }
    if let Some(lengths) = shape.box_lengths(points.dim()) {
        let unit = scaled(points, &lengths)?;
        return far_independent_set_lb(&unit, Metric::Linf, 1.0).map(Some);
    }
    match shape {
        ShapeSpec::Disk => far_independent_set_lb(points, Metric::L2, 1.0).map(Some),
        _ => Ok(None),
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

fn run_row(
    kind: GenKind,
    n: usize,
    dim: usize,
    shape: &ShapeSpec,
    seed: u64,
    config: &BenchConfig,
) -> Result<BenchRecord> {
    let instance = gen_instance(kind, n, dim, seed, &config.params)?;
    let points = instance.point_set()?;
    let doc = run_cover_on(&points, shape, &instance)?;
    let mut times = Vec::with_capacity(config.repeats.max(1));
    for _ in 0..config.repeats.max(1) {
        let start = Instant::now();
        let again = run_cover_on(&points, shape, &instance)?;
        times.push(start.elapsed().as_secs_f64() * 1e3);
        debug_assert_eq!(again.len(), doc.len());
    }
    let cover = doc.to_cover()?;
    let oracle = match shape.box_lengths(dim) {
        Some(lengths) if dim <= 3 && points.len() <= default_limit(dim) => {
            Some(opt_1ply_box_cover_size(&points, &lengths)?)
        }
        _ => None,
    };
    Ok(BenchRecord {
        generator: kind.name().to_string(),
        n,
        d: dim,
        algorithm: format!("{}:{}", doc.provenance.algorithm, shape.name()),
        seed,
        size: doc.len(),
        oracle,
        lb: lower_bound(&points, shape)?,
        ply: exact_ply(&cover).depth,
        membership: membership(&points, &cover)?.depth,
        time_ms: median(times),
        doubling_ratio: None,
    })
}

fn campaign(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    let mut rows: Vec<BenchRecord> = Vec::new();
    for &kind in &config.generators {
        for &dim in &config.dims {
            for shape in config.shapes.iter().filter(|s| supports(s, dim)) {
                for &seed in &config.seeds {
                    for &n in &config.sizes {
                        let mut row = run_row(kind, n, dim, shape, seed, config)?;
                        row.doubling_ratio = rows
                            .iter()
                            .rev()
                            .find(|r| {
                                r.generator == row.generator
                                    && r.d == row.d
                                    && r.algorithm == row.algorithm
                                    && r.seed == row.seed
                                    && 2 * r.n == row.n
                            })
                            .filter(|r| r.time_ms > 0.0)
                            .map(|r| row.time_ms / r.time_ms);
                        rows.push(row);
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// Runs every supported combination in `config`, one warm-up per row.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    match config.jobs {
        Some(jobs) => crate::par::with_threads(jobs, || campaign(config)),
        None => campaign(config),
    }
}

pub const CSV_HEADER: [&str; 12] = [
    "generator",
    "n",
    "d",
    "algorithm",
    "seed",
    "size",
    "oracle",
    "lb",
    "ply",
    "membership",
    "time_ms",
    "doubling_ratio",
];

/// Writes `records` as CSV; an empty slice still writes the header.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Output(e.to_string());
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in records {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Output(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_campaign_writes_header() {
        let config = BenchConfig {
            generators: vec![],
            ..BenchConfig::default()
        };
        let rows = run_bench(&config).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "generator,n,d,algorithm,seed,size,oracle,lb,ply,membership,time_ms,doubling_ratio\n"
        );
    }

    #[test]
    fn small_campaign() {
        let config = BenchConfig {
            generators: vec![GenKind::Uniform, GenKind::BoundaryAdversarial],
            sizes: vec![2, 4],
            dims: vec![2, 3],
            shapes: vec![ShapeSpec::Square, ShapeSpec::Cube, ShapeSpec::Disk],
            seeds: vec![1],
            repeats: 1,
            jobs: Some(2),
            params: GenParams::default(),
        };
        let rows = run_bench(&config).unwrap();
        // square and disk in d=2, cube in both.
        assert_eq!(rows.len(), 2 * 2 * (3 + 1));
        for r in &rows {
            assert!(r.oracle.is_some() || r.algorithm.contains("disk"));
            if let Some(opt) = r.oracle {
                assert!(r.size >= opt);
                assert!(r.lb.unwrap() <= opt);
                assert_eq!(r.ply, 1);
            }
            assert!(r.ply <= 2);
            assert_eq!(r.doubling_ratio.is_some(), r.n == 4);
        }
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap().lines().count(),
            rows.len() + 1
        );
    }
}
