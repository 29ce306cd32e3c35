//! 1-ply covers by translates of a fixed axis-aligned box.
//!
//! The points are first split into walls by a greedy interval cover along
//! the outermost axis, and every wall is covered recursively in one fewer
//! dimension. Axes are processed in the order `d-1, d-2, …, 2`, then `x`,
//! then `y`; in the plane this is the vertical-strip / horizontal-split
//! square cover. Because consecutive walls along each axis are separated by a
//! strict gap, boxes from different walls never touch, and the result is
//! 1-ply.
//!
//! Sizes are within `2^(d-1)` of the minimum 1-ply cover (factor 2 in the
//! plane).

use serde::{Deserialize, Serialize};

use crate::cover1d::{separate_sorted, IntervalCover};
use crate::error::{Error, Result};
use crate::geom::{check_length, HyperBox, Interval, Point, PointSet};
use crate::par;

/// Output of the box covers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxCover {
    pub dim: usize,
    pub lengths: Vec<f64>,
    /// Lower corners, in strip-tree order.
    pub placements: Vec<Point>,
    /// Recursion record; `None` only for an empty cover.
    pub strip_tree: Option<StripTree>,
}

/// One level of the recursion: the interval cover along `axis` and the walls
/// it induces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StripTree {
    pub axis: usize,
    pub intervals: IntervalCover,
    pub walls: Vec<Wall>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Wall {
    pub interval: Interval,
    /// Indices into the canonical point order of the input [`PointSet`].
    pub points: Vec<usize>,
    /// Cover of this wall in the remaining axes; `None` at the last axis,
    /// where the wall is a single box.
    pub child: Option<Box<StripTree>>,
}

impl BoxCover {
    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    pub fn boxes(&self) -> Vec<HyperBox> {
        self.placements
            .iter()
            .map(|lower| HyperBox {
                lower: lower.clone(),
                lengths: self.lengths.clone(),
            })
            .collect()
    }
}

/// Order in which axes are separated for a `dim`-dimensional input.
pub fn axis_order(dim: usize) -> Vec<usize> {
    match dim {
        0 => vec![],
        1 => vec![0],
        _ => (2..dim).rev().chain([0, 1]).collect(),
    }
}

/// 1-ply unit-square cover of a planar point set.
pub fn square_cover(points: &PointSet) -> Result<BoxCover> {
    rect_cover(points, 1.0, 1.0)
}

/// 1-ply cover by `width × height` rectangles: width-`a` vertical strips
/// first, then height-`b` splits inside each strip.
pub fn rect_cover(points: &PointSet, width: f64, height: f64) -> Result<BoxCover> {
    points.require_dim(2)?;
    hyperbox_cover(points, &[width, height])
}

/// 1-ply cover by boxes with side `lengths[i]` along axis `i`.
pub fn hyperbox_cover(points: &PointSet, lengths: &[f64]) -> Result<BoxCover> {
    build_cover(points, lengths, par::PARALLEL)
}

/// Same as [`hyperbox_cover`] but never uses the thread pool.
pub fn hyperbox_cover_sequential(points: &PointSet, lengths: &[f64]) -> Result<BoxCover> {
    build_cover(points, lengths, false)
}

fn build_cover(points: &PointSet, lengths: &[f64], parallel: bool) -> Result<BoxCover> {
    let dim = points.dim();
    if lengths.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: lengths.len(),
        });
    }
    for &l in lengths {
        check_length(l)?;
    }
    if points.is_empty() {
        return Ok(BoxCover {
            dim,
            lengths: lengths.to_vec(),
            placements: Vec::new(),
            strip_tree: None,
        });
    }
    let order = axis_order(dim);
    let all: Vec<usize> = (0..points.len()).collect();
    let (tree, placements) = cover_level(points.points(), all, &order, lengths, parallel);
    Ok(BoxCover {
        dim,
        lengths: lengths.to_vec(),
        placements,
        strip_tree: Some(tree),
    })
}

// Walls below this size are covered on the current thread.
const PARALLEL_WALL_POINTS: usize = 4096;

fn cover_level(
    points: &[Point],
    mut idx: Vec<usize>,
    order: &[usize],
    lengths: &[f64],
    parallel: bool,
) -> (StripTree, Vec<Point>) {
    let axis = order[0];
    let length = lengths[axis];
    idx.sort_by(|&a, &b| points[a].0[axis].total_cmp(&points[b].0[axis]));
    let mut coords: Vec<f64> = idx.iter().map(|&i| points[i].0[axis]).collect();
    coords.dedup();
    let intervals = separate_sorted(&coords, length);

    // Group sorted indices by wall.
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); intervals.len()];
    let mut w = 0;
    for &i in &idx {
        let x = points[i].0[axis];
        while x > intervals.lefts[w] + length {
            w += 1;
        }
        groups[w].push(i);
    }
    debug_assert!(groups.iter().all(|g| !g.is_empty()));

    let dim = lengths.len();
    let rest = &order[1..];
    let build = |(k, group): &(usize, Vec<usize>)| -> (Wall, Vec<Point>) {
        let interval = Interval {
            left: intervals.lefts[*k],
            length,
        };
        if rest.is_empty() {
            let mut lower = vec![0.0; dim];
            lower[axis] = interval.left;
            let wall = Wall {
                interval,
                points: group.clone(),
                child: None,
            };
            return (wall, vec![Point(lower)]);
        }
        let par_child = parallel && group.len() >= PARALLEL_WALL_POINTS;
        let (child, mut placements) = cover_level(points, group.clone(), rest, lengths, par_child);
        for p in &mut placements {
            p.0[axis] = interval.left;
        }
        let wall = Wall {
            interval,
            points: group.clone(),
            child: Some(Box::new(child)),
        };
        (wall, placements)
    };

    let jobs: Vec<(usize, Vec<usize>)> = groups.into_iter().enumerate().collect();
    let results = if parallel && idx.len() >= PARALLEL_WALL_POINTS {
        par::map(&jobs, build)
    } else {
        par::seq::map(&jobs, build)
    };

    let mut walls = Vec::with_capacity(results.len());
    let mut placements = Vec::new();
    for (wall, p) in results {
        walls.push(wall);
        placements.extend(p);
    }
    (
        StripTree {
            axis,
            intervals,
            walls,
        },
        placements,
    )
}
