//! Deterministic instance generators.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    Uniform,
    Clustered,
    Grid,
    /// Chains of points whose consecutive axis distances are exactly
    /// `1 − ε`, `1` or `1 + ε`.
    BoundaryAdversarial,
}

impl GenKind {
    pub fn name(self) -> &'static str {
        match self {
            GenKind::Uniform => "uniform",
            GenKind::Clustered => "clustered",
            GenKind::Grid => "grid",
            GenKind::BoundaryAdversarial => "boundary-adversarial",
        }
    }
}

impl FromStr for GenKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(GenKind::Uniform),
            "clustered" => Ok(GenKind::Clustered),
            "grid" => Ok(GenKind::Grid),
            "boundary-adversarial" | "adversarial" => Ok(GenKind::BoundaryAdversarial),
            other => Err(Error::UnknownGenerator(other.to_string())),
        }
    }
}

impl std::fmt::Display for GenKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    /// Coordinate range `[lo, hi)` per axis for uniform and cluster centers.
    pub range: (f64, f64),
    /// Lattice spacing for `grid`.
    pub spacing: f64,
    pub clusters: usize,
    /// Cluster radius (per-axis half width).
    pub spread: f64,
    /// Perturbation of the unit step in `boundary-adversarial`; a power of
    /// two keeps the distances exact.
    pub epsilon: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            range: (0.0, 10.0),
            spacing: 1.0,
            clusters: 4,
            spread: 0.75,
            epsilon: 1.0 / 1024.0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

/// A point set as stored on disk: `{"dim": d, "points": [[...]], "meta": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    #[serde(default)]
    pub meta: Meta,
}

impl Instance {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Self {
        Instance {
            dim,
            points,
            meta: Meta::default(),
        }
    }

    pub fn point_set(&self) -> Result<PointSet> {
        PointSet::new(self.dim, self.points.iter().cloned().map(Point).collect())
    }

    pub fn from_point_set(points: &PointSet) -> Self {
        Instance::new(
            points.dim(),
            points.iter().map(|p| p.coords().to_vec()).collect(),
        )
    }
}

pub fn gen_instance(
    kind: GenKind,
    n: usize,
    dim: usize,
    seed: u64,
    params: &GenParams,
) -> Result<Instance> {
    if dim == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = params.range;
    let points: Vec<Vec<f64>> = match kind {
        GenKind::Uniform => (0..n)
            .map(|_| (0..dim).map(|_| rng.gen_range(lo..hi)).collect())
            .collect(),
        GenKind::Clustered => {
            let k = params.clusters.max(1);
            let centers: Vec<Vec<f64>> = (0..k)
                .map(|_| (0..dim).map(|_| rng.gen_range(lo..hi)).collect())
                .collect();
            (0..n)
                .map(|_| {
                    let c = &centers[rng.gen_range(0..k)];
                    c.iter()
                        .map(|&x| x + rng.gen_range(-params.spread..=params.spread))
                        .collect()
                })
                .collect()
        }
        GenKind::Grid => {
            let side = (1..).find(|s: &usize| s.pow(dim as u32) >= n).unwrap_or(1);
            (0..n)
                .map(|mut i| {
                    (0..dim)
                        .map(|_| {
                            let c = (i % side) as f64 * params.spacing;
                            i /= side;
                            c
                        })
                        .collect()
                })
                .collect()
        }
        GenKind::BoundaryAdversarial => {
            let steps = [1.0 - params.epsilon, 1.0, 1.0 + params.epsilon];
            let mut out: Vec<Vec<f64>> = Vec::with_capacity(n);
            let mut cur: Vec<f64> = Vec::new();
            for i in 0..n {
                // Start a fresh chain every few points so instances are not
                // just one line.
                if i % 4 == 0 {
                    cur = (0..dim)
                        .map(|_| (rng.gen_range(lo..hi) * 8.0).round() / 8.0)
                        .collect();
                } else {
                    let axis = rng.gen_range(0..dim);
                    let step = steps[rng.gen_range(0..3)];
                    if rng.gen_bool(0.5) {
                        cur[axis] += step;
                    } else {
                        cur[axis] -= step;
                    }
                }
                out.push(cur.clone());
            }
            out
        }
    };
    Ok(Instance {
        dim,
        points,
        meta: Meta {
            name: Some(format!("{kind}-{n}-d{dim}-s{seed}")),
            seed: Some(seed),
            generator: Some(kind.name().to_string()),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = GenParams::default();
        assert!(gen_instance(GenKind::Uniform, 0, 2, 1, &p)
            .unwrap()
            .points
            .is_empty());

        let g = gen_instance(
            GenKind::Grid,
            9,
            2,
            0,
            &GenParams {
                spacing: 0.9,
                ..GenParams::default()
            },
        )
        .unwrap();
        assert_eq!(g.points.len(), 9);
        let mut xs: Vec<f64> = g.points.iter().map(|q| q[0]).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        assert_eq!(xs, vec![0.0, 0.9, 1.8]);

        let a = gen_instance(GenKind::Uniform, 100, 2, 7, &p).unwrap();
        let b = gen_instance(GenKind::Uniform, 100, 2, 7, &p).unwrap();
        assert_eq!(a, b);
        assert!(a.points.iter().flatten().all(|&c| (0.0..10.0).contains(&c)));
    }

    #[test]
    fn adversarial_steps_are_exact() {
        let p = GenParams::default();
        let inst = gen_instance(GenKind::BoundaryAdversarial, 40, 2, 3, &p).unwrap();
        let allowed = [1.0 - p.epsilon, 1.0, 1.0 + p.epsilon];
        for chunk in inst.points.chunks(4) {
            for w in chunk.windows(2) {
                let d: Vec<f64> = (0..2).map(|k| (w[1][k] - w[0][k]).abs()).collect();
                let moved: Vec<f64> = d.into_iter().filter(|&x| x != 0.0).collect();
                assert_eq!(moved.len(), 1);
                assert!(allowed.contains(&moved[0]), "{moved:?}");
            }
        }
    }

    #[test]
    fn unknown_kind() {
        assert_eq!(
            "spiral".parse::<GenKind>(),
            Err(Error::UnknownGenerator("spiral".into()))
        );
    }
}
