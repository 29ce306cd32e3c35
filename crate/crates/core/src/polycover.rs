//! Ply-4 covers by translates of a convex polygon.
//!
//! A convex polygon `C` is sandwiched between two homothetic rectangles
//! `inner ⊆ C ⊆ outer` whose side ratio is at most two. The points are
//! covered 1-ply by copies of the inner rectangle (in the frame where the
//! rectangles are axis-parallel), and each copy is replaced by the translate
//! of `C` that carries the original inner rectangle onto it.
//!
//! Inner copies in one vertical strip are separated vertically, so outer
//! copies there overlap only between neighbours (ply ≤ 2 per strip), and
//! strips two apart are separated horizontally by more than the outer
//! overhang. Together this gives ply at most 4.
//!
//! The rectangle pair is found by trying a set of orientations (the diameter
//! direction and every edge direction, with a fine angular sweep as a
//! fallback). For each orientation the outer rectangle is the bounding box
//! and the inner one is the largest scaled copy that fits inside `C`, found
//! by bisection on the scale with a half-plane intersection test.

use serde::{Deserialize, Serialize};

use crate::boxcover::{rect_cover, BoxCover};
use crate::error::{Error, Result};
use crate::geom::{add, dist, rotate, sub, ConvexPolygon, Point, PointSet, Xy};

/// Maximum admissible side ratio, plus slack for rounding.
pub const MAX_RATIO: f64 = 2.0 + 1e-9;
/// Bisection steps on the inner scale.
pub const BISECTION_STEPS: usize = 60;
/// Orientations tried by the fallback sweep.
const SWEEP_ANGLES: usize = 720;

/// Rectangle with center, half side lengths and rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub center: Xy,
    pub half: Xy,
    /// Counter-clockwise rotation of the rectangle's x side, in radians.
    pub angle: f64,
}

impl Rect {
    /// Corners counter-clockwise, starting from the rotated lower-left.
    pub fn corners(&self) -> [Xy; 4] {
        let [hx, hy] = self.half;
        [[-hx, -hy], [hx, -hy], [hx, hy], [-hx, hy]]
            .map(|c| add(self.center, rotate(c, self.angle)))
    }

    pub fn polygon(&self) -> ConvexPolygon {
        ConvexPolygon::new(self.corners().to_vec()).expect("rectangle sides are positive")
    }

    pub fn translate(&self, t: Xy) -> Rect {
        Rect {
            center: add(self.center, t),
            ..*self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximatingPair {
    pub inner: Rect,
    pub outer: Rect,
    /// Outer side length over inner side length.
    pub ratio: f64,
    /// Inner rectangle's rotated-frame lower corner relative to the
    /// polygon's first vertex (also in the rotated frame).
    pub inner_offset: Xy,
}

impl ApproximatingPair {
    pub fn angle(&self) -> f64 {
        self.inner.angle
    }

    /// The outer rectangle moved to share the inner rectangle's center.
    ///
    /// Moving every outer copy by the same vector leaves the ply of the
    /// copies unchanged, so ply arguments may assume concentric pairs.
    pub fn concentric_outer(&self) -> Rect {
        Rect {
            center: self.inner.center,
            ..self.outer
        }
    }
}

/// Bounding rectangle and maximal inscribed homothet at orientation `angle`.
pub fn pair_at_angle(polygon: &ConvexPolygon, angle: f64) -> ApproximatingPair {
    let rotated = polygon.rotate(-angle);
    let (lo, hi) = rotated.bbox();
    let size = [hi[0] - lo[0], hi[1] - lo[1]];
    let fit =
        |scale: f64| feasible_centers(&rotated, [scale * size[0] / 2.0, scale * size[1] / 2.0]);

    let (scale, region) = match fit(1.0) {
        Some(r) => (1.0, r),
        None => {
            let (mut lo_s, mut hi_s) = (0.0, 1.0);
            let mut region = fit(0.0).expect("a convex polygon contains its own points");
            for _ in 0..BISECTION_STEPS {
                let mid = 0.5 * (lo_s + hi_s);
                match fit(mid) {
                    Some(r) => {
                        lo_s = mid;
                        region = r;
                    }
                    None => hi_s = mid,
                }
                if hi_s - lo_s <= 1e-9 * hi_s {
                    break;
                }
            }
            (lo_s, region)
        }
    };
    let center_rot = centroid(&region);
    let half = [scale * size[0] / 2.0, scale * size[1] / 2.0];
    let outer_center_rot = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
    let first = rotated.vertices()[0];
    ApproximatingPair {
        inner: Rect {
            center: rotate(center_rot, angle),
            half,
            angle,
        },
        outer: Rect {
            center: rotate(outer_center_rot, angle),
            half: [size[0] / 2.0, size[1] / 2.0],
            angle,
        },
        ratio: 1.0 / scale,
        inner_offset: sub(sub(center_rot, half), first),
    }
}

/// Centers `c` for which the axis-parallel rectangle `c ± half` lies in the
/// (already rotated) polygon, as a convex polygon; `None` if empty.
fn feasible_centers(polygon: &ConvexPolygon, half: Xy) -> Option<Vec<Xy>> {
    let (lo, hi) = polygon.bbox();
    let mut region = vec![
        [lo[0], lo[1]],
        [hi[0], lo[1]],
        [hi[0], hi[1]],
        [lo[0], hi[1]],
    ];
    let scale = dist(lo, hi);
    for (a, b) in polygon.edges() {
        // Outward normal of a counter-clockwise edge.
        let e = sub(b, a);
        let len = e[0].hypot(e[1]);
        let n = [e[1] / len, -e[0] / len];
        let reach = n[0].abs() * half[0] + n[1].abs() * half[1];
        let limit = n[0] * a[0] + n[1] * a[1] - reach;
        region = clip_halfplane(&region, n, limit, 1e-12 * scale);
        if region.is_empty() {
            return None;
        }
    }
    Some(region)
}

/// Keeps the part of a convex polygon with `n · x ≤ limit + slack`.
pub(crate) fn clip_halfplane(poly: &[Xy], n: Xy, limit: f64, slack: f64) -> Vec<Xy> {
    let value = |p: Xy| n[0] * p[0] + n[1] * p[1] - limit;
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let (vp, vq) = (value(p), value(q));
        let (p_in, q_in) = (vp <= slack, vq <= slack);
        if p_in {
            out.push(p);
        }
        if p_in != q_in {
            let t = vp / (vp - vq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    out
}

fn centroid(pts: &[Xy]) -> Xy {
    let n = pts.len() as f64;
    let s = pts.iter().fold([0.0, 0.0], |acc, &p| add(acc, p));
    [s[0] / n, s[1] / n]
}

/// Orientations tried first: the diameter direction, then every edge.
pub fn candidate_angles(polygon: &ConvexPolygon) -> Vec<f64> {
    let vs = polygon.vertices();
    let mut best = (0.0, 0, 1);
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let d = dist(vs[i], vs[j]);
            if d > best.0 {
                best = (d, i, j);
            }
        }
    }
    let dir = sub(vs[best.2], vs[best.1]);
    let mut angles = vec![dir[1].atan2(dir[0])];
    angles.extend(polygon.edges().map(|(a, b)| {
        let e = sub(b, a);
        e[1].atan2(e[0])
    }));
    angles
}

/// Approximating rectangle pair with the smallest side ratio found.
pub fn approximating_pair(polygon: &ConvexPolygon) -> Result<ApproximatingPair> {
    let pick = |angles: &mut dyn Iterator<Item = f64>| {
        angles
            .map(|a| pair_at_angle(polygon, a))
            .fold(None::<ApproximatingPair>, |best, p| match best {
                Some(b) if b.ratio <= p.ratio => Some(b),
                _ => Some(p),
            })
            .expect("at least one orientation")
    };
    let best = pick(&mut candidate_angles(polygon).into_iter());
    if best.ratio <= MAX_RATIO {
        return Ok(best);
    }
    let swept =
        pick(&mut (0..SWEEP_ANGLES).map(|k| std::f64::consts::PI * k as f64 / SWEEP_ANGLES as f64));
    let best = if swept.ratio < best.ratio {
        swept
    } else {
        best
    };
    if best.ratio <= MAX_RATIO {
        Ok(best)
    } else {
        Err(Error::PairRatioExceeded {
            ratio: best.ratio,
            angle: best.inner.angle,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonCover {
    pub polygon: ConvexPolygon,
    pub pair: ApproximatingPair,
    /// One translation of `polygon` per inner rectangle, in inner-cover order.
    pub translations: Vec<Xy>,
    /// Cover of the rotated points by inner rectangles.
    pub inner_cover: BoxCover,
}

impl PolygonCover {
    pub fn len(&self) -> usize {
        self.translations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.translations.is_empty()
    }

    pub fn placed(&self) -> Vec<ConvexPolygon> {
        self.translations
            .iter()
            .map(|&t| self.polygon.translate(t))
            .collect()
    }

    pub fn inner_rects(&self) -> Vec<Rect> {
        self.translations
            .iter()
            .map(|&t| self.pair.inner.translate(t))
            .collect()
    }

    pub fn outer_rects(&self) -> Vec<Rect> {
        self.translations
            .iter()
            .map(|&t| self.pair.outer.translate(t))
            .collect()
    }

    /// Ranges of translation indices belonging to each vertical strip of
    /// the inner cover.
    pub fn strips(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        if let Some(tree) = &self.inner_cover.strip_tree {
            for wall in &tree.walls {
                let boxes = wall.child.as_ref().map_or(1, |c| c.walls.len());
                out.push(start..start + boxes);
                start += boxes;
            }
        }
        out
    }
}

/// Covers `points` by translates of `polygon` with ply at most 4.
pub fn polygon_cover(points: &PointSet, polygon: &ConvexPolygon) -> Result<PolygonCover> {
    points.require_dim(2)?;
    let pair = approximating_pair(polygon)?;
    Ok(cover_with_pair(points, polygon, pair))
}

/// [`polygon_cover`] with a precomputed rectangle pair.
pub fn cover_with_pair(
    points: &PointSet,
    polygon: &ConvexPolygon,
    pair: ApproximatingPair,
) -> PolygonCover {
    let angle = pair.angle();
    let rotated: Vec<Point> = points
        .iter()
        .map(|p| Point::from(rotate(p.xy(), -angle)))
        .collect();
    let rotated = PointSet::new(2, rotated).expect("rotation keeps points finite");
    let [hx, hy] = pair.inner.half;
    let inner_cover = rect_cover(&rotated, 2.0 * hx, 2.0 * hy).expect("inner sides are positive");
    let inner_lower = sub(rotate(pair.inner.center, -angle), pair.inner.half);
    let translations = inner_cover
        .placements
        .iter()
        .map(|l| rotate(sub(l.xy(), inner_lower), angle))
        .collect();
    PolygonCover {
        polygon: polygon.clone(),
        pair,
        translations,
        inner_cover,
    }
}

/// Whether every corner of `r` lies in `polygon` and every vertex of
/// `polygon` lies in `outer`.
pub fn pair_is_nested(polygon: &ConvexPolygon, pair: &ApproximatingPair) -> bool {
    let outer = pair.outer.polygon();
    pair.inner.corners().iter().all(|&c| polygon.contains(c))
        && polygon.vertices().iter().all(|&v| outer.contains(v))
}
