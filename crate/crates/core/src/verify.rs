//! Ground-truth checks for covers: coverage, membership and exact ply.
//!
//! Ply is the maximum number of cover objects containing a single point of
//! space; membership restricts that maximum to the input points. Both use
//! closed containment. Exact ply is computed over a finite candidate set
//! that provably contains a deepest point:
//!
//! * boxes: the deepest region is an intersection of boxes, whose lower
//!   corner has every coordinate equal to some box's lower coordinate;
//! * disks: the deepest region is either a whole disk (its center) or has
//!   a vertex where two circles cross;
//! * convex polygons: the deepest region is a convex polygon whose vertices
//!   are polygon vertices or boundary crossings.
//!
//! Witness ties are broken lexicographically.

use serde::{Deserialize, Serialize};

use crate::boxcover::BoxCover;
use crate::diskcover::DiskCover;
use crate::error::{Error, Result};
use crate::geom::{
    bbox, convex_polygons_intersection_points, dist, in_box, lex_cmp, point_in_convex_polygon,
    point_in_disk, ConvexPolygon, Disk, Point, PointSet, Xy, TAU_GEOM,
};
use crate::grid::{median_extent, BucketGrid};
use crate::par;
use crate::polycover::PolygonCover;
use crate::tilecover::TileCover;

/// A set of congruent closed objects.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Cover {
    Boxes {
        lengths: Vec<f64>,
        lowers: Vec<Point>,
    },
    Disks {
        disks: Vec<Disk>,
    },
    Polygons {
        polygons: Vec<ConvexPolygon>,
    },
}

impl Cover {
    pub fn len(&self) -> usize {
        match self {
            Cover::Boxes { lowers, .. } => lowers.len(),
            Cover::Disks { disks } => disks.len(),
            Cover::Polygons { polygons } => polygons.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        match self {
            Cover::Boxes { lengths, .. } => lengths.len(),
            _ => 2,
        }
    }

    /// Whether object `i` contains `p` (closed).
    pub fn contains(&self, i: usize, p: &[f64]) -> bool {
        match self {
            Cover::Boxes { lengths, lowers } => in_box(p, lowers[i].coords(), lengths),
            Cover::Disks { disks } => point_in_disk([p[0], p[1]], &disks[i]),
            Cover::Polygons { polygons } => point_in_convex_polygon([p[0], p[1]], &polygons[i]),
        }
    }

    fn planar_bboxes(&self) -> Vec<(Xy, Xy)> {
        match self {
            Cover::Boxes { lengths, lowers } => lowers
                .iter()
                .map(|l| {
                    let c = l.coords();
                    let (x, w) = (c[0], lengths[0]);
                    let (y, h) = if c.len() > 1 {
                        (c[1], lengths[1])
                    } else {
                        (0.0, 0.0)
                    };
                    ([x, y], [x + w, y + h])
                })
                .collect(),
            Cover::Disks { disks } => disks
                .iter()
                .map(|d| {
                    let r = d.radius;
                    (
                        [d.center[0] - r, d.center[1] - r],
                        [d.center[0] + r, d.center[1] + r],
                    )
                })
                .collect(),
            Cover::Polygons { polygons } => polygons.iter().map(|p| bbox(p.vertices())).collect(),
        }
    }
}

impl From<&BoxCover> for Cover {
    fn from(c: &BoxCover) -> Self {
        Cover::Boxes {
            lengths: c.lengths.clone(),
            lowers: c.placements.clone(),
        }
    }
}

impl From<&DiskCover> for Cover {
    fn from(c: &DiskCover) -> Self {
        Cover::Disks {
            disks: c.disks.clone(),
        }
    }
}

impl From<&TileCover> for Cover {
    fn from(c: &TileCover) -> Self {
        match c.square_lowers() {
            Some((lowers, side)) => Cover::Boxes {
                lengths: vec![side, side],
                lowers: lowers.into_iter().map(Point::from).collect(),
            },
            None => Cover::Polygons {
                polygons: c.placements.clone(),
            },
        }
    }
}

impl From<&PolygonCover> for Cover {
    fn from(c: &PolygonCover) -> Self {
        Cover::Polygons {
            polygons: c.placed(),
        }
    }
}

/// Maximum depth and a point attaining it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Depth {
    pub depth: usize,
    pub witness: Option<Point>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlyReport {
    pub ply: usize,
    pub witness: Option<Point>,
    pub membership: usize,
    pub membership_witness: Option<Point>,
    pub uncovered: Vec<Point>,
}

impl PlyReport {
    pub fn is_valid_cover(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// Spatial index answering "which objects may contain this point".
struct Index<'a> {
    cover: &'a Cover,
    grid: BucketGrid,
}

impl<'a> Index<'a> {
    fn new(cover: &'a Cover) -> Self {
        let boxes = cover.planar_bboxes();
        let grid = BucketGrid::new(&boxes, median_extent(&boxes));
        Index { cover, grid }
    }

    fn depth(&self, p: &[f64]) -> usize {
        let q = [p[0], p.get(1).copied().unwrap_or(0.0)];
        self.grid
            .near(q)
            .iter()
            .filter(|&&i| self.cover.contains(i, p))
            .count()
    }
}

fn check_dim(points: &PointSet, cover: &Cover) -> Result<()> {
    if !cover.is_empty() && points.dim() != cover.dim() {
        return Err(Error::DimensionMismatch {
            expected: cover.dim(),
            got: points.dim(),
        });
    }
    Ok(())
}

/// Input points not contained in any object.
pub fn check_coverage(points: &PointSet, cover: &Cover) -> Result<Vec<Point>> {
    check_dim(points, cover)?;
    if cover.is_empty() {
        return Ok(points.points().to_vec());
    }
    let index = Index::new(cover);
    let covered = par::map(points.points(), |p| index.depth(p.coords()) > 0);
    Ok(points
        .iter()
        .zip(covered)
        .filter(|(_, c)| !c)
        .map(|(p, _)| p.clone())
        .collect())
}

/// Maximum number of objects containing a single input point.
pub fn membership(points: &PointSet, cover: &Cover) -> Result<Depth> {
    check_dim(points, cover)?;
    if cover.is_empty() || points.is_empty() {
        return Ok(Depth {
            depth: 0,
            witness: None,
        });
    }
    let index = Index::new(cover);
    let depths = par::map(points.points(), |p| index.depth(p.coords()));
    Ok(best_of(points.points().iter().cloned().zip(depths)))
}

/// Picks the maximum depth, smallest witness first.
fn best_of(items: impl Iterator<Item = (Point, usize)>) -> Depth {
    let mut best: Option<(Point, usize)> = None;
    for (p, d) in items {
        let better = match &best {
            None => true,
            Some((bp, bd)) => d > *bd || (d == *bd && lex_cmp(&p.0, &bp.0).is_lt()),
        };
        if better {
            best = Some((p, d));
        }
    }
    match best {
        Some((p, d)) if d > 0 => Depth {
            depth: d,
            witness: Some(p),
        },
        _ => Depth {
            depth: 0,
            witness: None,
        },
    }
}

/// Exact maximum depth of the arrangement over all of space.
pub fn exact_ply(cover: &Cover) -> Depth {
    match cover {
        Cover::Boxes { lengths, lowers } => box_depth(lowers, lengths),
        Cover::Disks { disks } => disk_depth(cover, disks),
        Cover::Polygons { polygons } => polygon_depth(cover, polygons),
    }
}

pub fn ply_report(points: &PointSet, cover: &Cover) -> Result<PlyReport> {
    let uncovered = check_coverage(points, cover)?;
    let m = membership(points, cover)?;
    let ply = exact_ply(cover);
    Ok(PlyReport {
        ply: ply.depth,
        witness: ply.witness,
        membership: m.depth,
        membership_witness: m.witness,
        uncovered,
    })
}

/// Box depth by nested sweeps over lower coordinates, one axis at a time.
///
/// At each axis only boxes whose closed range contains the current lower
/// coordinate stay active, and the next axis is swept over those alone.
pub fn box_depth(lowers: &[Point], lengths: &[f64]) -> Depth {
    if lowers.is_empty() {
        return Depth {
            depth: 0,
            witness: None,
        };
    }
    let all: Vec<usize> = (0..lowers.len()).collect();
    let mut prefix = Vec::with_capacity(lengths.len());
    let (depth, coords) = sweep_axis(lowers, lengths, &all, 0, &mut prefix, 0);
    Depth {
        depth,
        witness: coords.map(Point),
    }
}

fn sweep_axis(
    lowers: &[Point],
    lengths: &[f64],
    active_in: &[usize],
    axis: usize,
    prefix: &mut Vec<f64>,
    mut best: usize,
) -> (usize, Option<Vec<f64>>) {
    let len = lengths[axis];
    let mut order: Vec<usize> = active_in.to_vec();
    order.sort_by(|&a, &b| lowers[a].0[axis].total_cmp(&lowers[b].0[axis]));
    let mut found: Option<Vec<f64>> = None;
    let mut active: Vec<usize> = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let x = lowers[order[k]].0[axis];
        while k < order.len() && lowers[order[k]].0[axis] == x {
            active.push(order[k]);
            k += 1;
        }
        active.retain(|&i| x <= lowers[i].0[axis] + len);
        if active.len() <= best {
            continue;
        }
        prefix.push(x);
        if axis + 1 == lengths.len() {
            best = active.len();
            found = Some(prefix.clone());
        } else {
            let (d, w) = sweep_axis(lowers, lengths, &active, axis + 1, prefix, best);
            if d > best {
                best = d;
                found = w;
            }
        }
        prefix.pop();
    }
    (best, found)
}

/// Planar box depth by a sweep over x with a max/add segment tree over y.
pub fn box_depth_sweep(lowers: &[Xy], size: Xy) -> Depth {
    if lowers.is_empty() {
        return Depth {
            depth: 0,
            witness: None,
        };
    }
    let mut ys: Vec<f64> = lowers.iter().flat_map(|l| [l[1], l[1] + size[1]]).collect();
    ys.sort_by(f64::total_cmp);
    ys.dedup();
    let yi = |y: f64| ys.partition_point(|&v| v < y);

    // (x, kind, box); adds (kind 0) precede removals (kind 1) at equal x.
    let mut events: Vec<(f64, u8, usize)> = Vec::with_capacity(2 * lowers.len());
    for (i, l) in lowers.iter().enumerate() {
        events.push((l[0], 0, i));
        events.push((l[0] + size[0], 1, i));
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut tree = MaxAddTree::new(ys.len());
    let mut best = 0;
    let mut witness = None;
    let mut k = 0;
    while k < events.len() {
        let x = events[k].0;
        let mut added = false;
        while k < events.len() && events[k].0 == x && events[k].1 == 0 {
            let l = lowers[events[k].2];
            tree.add(yi(l[1]), yi(l[1] + size[1]), 1);
            added = true;
            k += 1;
        }
        if added {
            let (m, at) = tree.max();
            if m as usize > best {
                best = m as usize;
                witness = Some(Point(vec![x, ys[at]]));
            }
        }
        while k < events.len() && events[k].0 == x && events[k].1 == 1 {
            let l = lowers[events[k].2];
            tree.add(yi(l[1]), yi(l[1] + size[1]), -1);
            k += 1;
        }
    }
    Depth {
        depth: best,
        witness,
    }
}

/// Range add, global max (leftmost position) over `n` slots.
struct MaxAddTree {
    n: usize,
    max: Vec<i64>,
    lazy: Vec<i64>,
}

impl MaxAddTree {
    fn new(n: usize) -> Self {
        MaxAddTree {
            n,
            max: vec![0; 4 * n],
            lazy: vec![0; 4 * n],
        }
    }

    /// Adds `v` on the inclusive slot range `[l, r]`.
    fn add(&mut self, l: usize, r: usize, v: i64) {
        self.add_rec(1, 0, self.n - 1, l, r, v);
    }

    fn add_rec(&mut self, node: usize, lo: usize, hi: usize, l: usize, r: usize, v: i64) {
        if r < lo || hi < l {
            return;
        }
        if l <= lo && hi <= r {
            self.max[node] += v;
            self.lazy[node] += v;
            return;
        }
        let mid = (lo + hi) / 2;
        self.add_rec(2 * node, lo, mid, l, r, v);
        self.add_rec(2 * node + 1, mid + 1, hi, l, r, v);
        self.max[node] = self.lazy[node] + self.max[2 * node].max(self.max[2 * node + 1]);
    }

    fn max(&self) -> (i64, usize) {
        let (mut node, mut lo, mut hi) = (1, 0, self.n - 1);
        let total = self.max[1];
        let mut acc = 0;
        while lo < hi {
            acc += self.lazy[node];
            let mid = (lo + hi) / 2;
            if acc + self.max[2 * node] == total {
                node *= 2;
                hi = mid;
            } else {
                node = 2 * node + 1;
                lo = mid + 1;
            }
        }
        (total, lo)
    }
}

/// Intersection points of two circles; a single point when tangent.
pub fn circle_intersections(a: &Disk, b: &Disk) -> Vec<Xy> {
    let d = dist(a.center, b.center);
    if d > a.radius + b.radius + TAU_GEOM || d < (a.radius - b.radius).abs() - TAU_GEOM || d == 0.0
    {
        return Vec::new();
    }
    let along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    let h = (a.radius * a.radius - along * along).max(0.0).sqrt();
    let u = [
        (b.center[0] - a.center[0]) / d,
        (b.center[1] - a.center[1]) / d,
    ];
    let m = [a.center[0] + along * u[0], a.center[1] + along * u[1]];
    if h <= TAU_GEOM {
        return vec![m];
    }
    vec![
        [m[0] - h * u[1], m[1] + h * u[0]],
        [m[0] + h * u[1], m[1] - h * u[0]],
    ]
}

fn candidate_depth(cover: &Cover, candidates: Vec<Xy>) -> Depth {
    let index = Index::new(cover);
    let depths = par::map(&candidates, |c| index.depth(c));
    best_of(candidates.into_iter().map(Point::from).zip(depths))
}

/// Pairs of objects whose padded bounding boxes overlap.
fn overlapping_pairs(cover: &Cover) -> Vec<(usize, usize)> {
    let boxes = cover.planar_bboxes();
    let grid = BucketGrid::new(&boxes, median_extent(&boxes));
    let pad = TAU_GEOM;
    let mut pairs = Vec::new();
    for (i, &(lo, hi)) in boxes.iter().enumerate() {
        for j in grid.near_box(lo, hi) {
            if j <= i {
                continue;
            }
            let (blo, bhi) = boxes[j];
            if (0..2).all(|k| lo[k] <= bhi[k] + pad && blo[k] <= hi[k] + pad) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

fn disk_depth(cover: &Cover, disks: &[Disk]) -> Depth {
    let mut candidates: Vec<Xy> = disks.iter().map(|d| d.center).collect();
    for (i, j) in overlapping_pairs(cover) {
        candidates.extend(circle_intersections(&disks[i], &disks[j]));
    }
    candidate_depth(cover, candidates)
}

fn polygon_depth(cover: &Cover, polygons: &[ConvexPolygon]) -> Depth {
    let mut candidates: Vec<Xy> = polygons
        .iter()
        .flat_map(|p| p.vertices().iter().copied())
        .collect();
    let pairs = overlapping_pairs(cover);
    let crossings = par::map(&pairs, |&(i, j)| {
        convex_polygons_intersection_points(&polygons[i], &polygons[j])
    });
    candidates.extend(crossings.into_iter().flatten());
    candidate_depth(cover, candidates)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squares(lowers: &[Xy]) -> Cover {
        Cover::Boxes {
            lengths: vec![1.0, 1.0],
            lowers: lowers.iter().map(|&l| Point::from(l)).collect(),
        }
    }

    #[test]
    fn membership_examples() {
        let p = PointSet::from_xy(&[[0.5, 0.5]]).unwrap();
        assert_eq!(
            membership(&p, &squares(&[[0.0, 0.0], [0.4, 0.4]]))
                .unwrap()
                .depth,
            2
        );
        assert_eq!(membership(&p, &squares(&[])).unwrap().depth, 0);
        let p = PointSet::from_xy(&[[1.0, 1.0]]).unwrap();
        let c = squares(&[[0.0, 0.0], [0.5, 0.5], [1.0, 1.0]]);
        assert_eq!(membership(&p, &c).unwrap().depth, 3);
    }

    #[test]
    fn ply_examples() {
        assert_eq!(exact_ply(&squares(&[[0.0, 0.0], [2.0, 0.0]])).depth, 1);

        let c = squares(&[[0.0, 0.0], [0.5, 0.5], [1.0, 1.0]]);
        let d = exact_ply(&c);
        assert_eq!(d.depth, 3);
        assert_eq!(d.witness, Some(Point(vec![1.0, 1.0])));
        let s = box_depth_sweep(&[[0.0, 0.0], [0.5, 0.5], [1.0, 1.0]], [1.0, 1.0]);
        assert_eq!(s, d);

        let disks = Cover::Disks {
            disks: vec![Disk::unit([0.0, 0.0]), Disk::unit([1.0, 0.0])],
        };
        let d = exact_ply(&disks);
        assert_eq!(d.depth, 2);
        let w = d.witness.unwrap();
        assert!(dist(w.xy(), [0.5, 0.0]) < 1e-9);
    }

    #[test]
    fn coverage_examples() {
        let c = squares(&[[0.0, 0.0]]);
        let p = PointSet::from_xy(&[[0.5, 0.5]]).unwrap();
        assert!(check_coverage(&p, &c).unwrap().is_empty());
        let p = PointSet::from_xy(&[[1.5, 0.5]]).unwrap();
        assert_eq!(check_coverage(&p, &c).unwrap(), vec![Point(vec![1.5, 0.5])]);
        let p3 = PointSet::from_rows(3, &[vec![0.0, 0.0, 0.0]]).unwrap();
        assert!(check_coverage(&p3, &c).is_err());
    }

    #[test]
    fn polygon_ply() {
        let sq = ConvexPolygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap();
        let tri = ConvexPolygon::new(vec![[0.5, -1.0], [2.0, 0.5], [0.5, 0.5]]).unwrap();
        let c = Cover::Polygons {
            polygons: vec![sq.clone(), sq.translate([0.5, 0.5]), tri],
        };
        assert_eq!(exact_ply(&c).depth, 3);
        let c = Cover::Polygons {
            polygons: vec![sq.clone(), sq.translate([1.5, 0.0])],
        };
        assert_eq!(exact_ply(&c).depth, 1);
    }

    #[test]
    fn disk_nested_in_others() {
        let c = Cover::Disks {
            disks: vec![
                Disk::new([0.0, 0.0], 3.0).unwrap(),
                Disk::new([0.1, 0.0], 0.5).unwrap(),
                Disk::new([5.0, 0.0], 0.5).unwrap(),
            ],
        };
        assert_eq!(exact_ply(&c).depth, 2);
    }

    #[test]
    fn segment_tree_max_is_leftmost() {
        let mut t = MaxAddTree::new(6);
        t.add(1, 3, 1);
        t.add(2, 5, 1);
        assert_eq!(t.max(), (2, 2));
        t.add(2, 2, -1);
        assert_eq!(t.max(), (2, 3));
    }

    #[test]
    fn three_dimensional_boxes() {
        let lowers = vec![
            Point(vec![0.0, 0.0, 0.0]),
            Point(vec![0.5, 0.5, 0.5]),
            Point(vec![0.9, 0.2, 0.9]),
            Point(vec![3.0, 3.0, 3.0]),
        ];
        let d = box_depth(&lowers, &[1.0, 1.0, 1.0]);
        assert_eq!(d.depth, 3);
        assert_eq!(d.witness, Some(Point(vec![0.9, 0.5, 0.9])));
    }
}
