//! Geometric primitives and closed-set predicates shared by every cover.
//!
//! All objects are closed: a point on a boundary is inside, and two objects
//! that touch share a point. Box predicates compare coordinates exactly;
//! disk and polygon predicates use the absolute tolerances below. Inputs are
//! expected to be well scaled (coordinates with magnitude at most `1e6`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on signed point-to-line distances.
pub const TAU_ORIENT: f64 = 1e-9;
/// Tolerance on coordinate and distance comparisons.
pub const TAU_GEOM: f64 = 1e-9;

/// A planar point.
pub type Xy = [f64; 2];

/// A point in `d`-dimensional space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn xy(&self) -> Xy {
        [self.0[0], self.0[1]]
    }
}

impl From<Xy> for Point {
    fn from(p: Xy) -> Self {
        Point(p.to_vec())
    }
}

impl From<&[f64]> for Point {
    fn from(p: &[f64]) -> Self {
        Point(p.to_vec())
    }
}

/// A validated set of distinct points sharing one dimension.
///
/// Construction sorts the points lexicographically and drops exact
/// duplicates, so every algorithm sees the same canonical order regardless
/// of how the input was permuted.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::UnsupportedDimension(0));
        }
        for (index, p) in points.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            if let Some(&value) = p.0.iter().find(|c| !c.is_finite()) {
                return Err(Error::NonFiniteCoordinate { index, value });
            }
        }
        let mut points = points;
        points.sort_by(|a, b| lex_cmp(&a.0, &b.0));
        points.dedup();
        Ok(PointSet { dim, points })
    }

    pub fn from_xy(points: &[Xy]) -> Result<Self> {
        PointSet::new(2, points.iter().map(|&p| Point::from(p)).collect())
    }

    pub fn from_rows(dim: usize, rows: &[Vec<f64>]) -> Result<Self> {
        PointSet::new(dim, rows.iter().cloned().map(Point).collect())
    }

    pub fn empty(dim: usize) -> Self {
        PointSet {
            dim,
            points: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    /// Coordinates of every point along `axis`, in point order.
    pub fn axis(&self, axis: usize) -> Vec<f64> {
        self.points.iter().map(|p| p.0[axis]).collect()
    }

    pub fn xy(&self) -> Vec<Xy> {
        self.points.iter().map(Point::xy).collect()
    }

    pub(crate) fn require_dim(&self, dim: usize) -> Result<()> {
        if self.dim != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: self.dim,
            });
        }
        Ok(())
    }
}

pub(crate) fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

pub(crate) fn check_length(length: f64) -> Result<()> {
    if length > 0.0 && length.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveLength(length))
    }
}

/// Closed interval `[left, left + length]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub left: f64,
    pub length: f64,
}

impl Interval {
    pub fn new(left: f64, length: f64) -> Result<Self> {
        check_length(length)?;
        Ok(Interval { left, length })
    }

    pub fn right(&self) -> f64 {
        self.left + self.length
    }

    pub fn contains(&self, x: f64) -> bool {
        self.left <= x && x <= self.right()
    }
}

/// Closed axis-aligned box `Π [lowerᵢ, lowerᵢ + lengthᵢ]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperBox {
    pub lower: Point,
    pub lengths: Vec<f64>,
}

impl HyperBox {
    pub fn new(lower: Point, lengths: Vec<f64>) -> Result<Self> {
        if lower.dim() != lengths.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.dim(),
                got: lengths.len(),
            });
        }
        for &l in &lengths {
            check_length(l)?;
        }
        Ok(HyperBox { lower, lengths })
    }

    pub fn dim(&self) -> usize {
        self.lengths.len()
    }

    pub fn upper(&self, axis: usize) -> f64 {
        self.lower.0[axis] + self.lengths[axis]
    }
}

pub fn point_in_box(p: &Point, b: &HyperBox) -> Result<bool> {
    if p.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            got: p.dim(),
        });
    }
    Ok(in_box(p.coords(), b.lower.coords(), &b.lengths))
}

/// Closed containment of `p` in the box with lower corner `lower`.
#[inline]
pub(crate) fn in_box(p: &[f64], lower: &[f64], lengths: &[f64]) -> bool {
    p.iter()
        .zip(lower)
        .zip(lengths)
        .all(|((&x, &lo), &len)| lo <= x && x <= lo + len)
}

/// True iff the closed boxes share no point.
pub fn boxes_disjoint(a: &HyperBox, b: &HyperBox) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(lowers_disjoint(
        a.lower.coords(),
        &a.lengths,
        b.lower.coords(),
        &b.lengths,
    ))
}

#[inline]
pub(crate) fn lowers_disjoint(a: &[f64], la: &[f64], b: &[f64], lb: &[f64]) -> bool {
    (0..a.len()).any(|i| a[i] + la[i] < b[i] || b[i] + lb[i] < a[i])
}

/// Closed disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Xy,
    pub radius: f64,
}

impl Disk {
    /// Radius of a disk with diameter one.
    pub const UNIT_RADIUS: f64 = 0.5;

    pub fn new(center: Xy, radius: f64) -> Result<Self> {
        check_length(radius)?;
        Ok(Disk { center, radius })
    }

    pub fn unit(center: Xy) -> Self {
        Disk {
            center,
            radius: Self::UNIT_RADIUS,
        }
    }
}

pub fn point_in_disk(p: Xy, d: &Disk) -> bool {
    dist(p, d.center) <= d.radius + TAU_GEOM
}

/// Closed intersection test: tangent disks intersect.
pub fn disks_intersect(a: &Disk, b: &Disk) -> bool {
    dist(a.center, b.center) <= a.radius + b.radius + TAU_GEOM
}

#[inline]
pub fn dist(a: Xy, b: Xy) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

#[inline]
pub fn sub(a: Xy, b: Xy) -> Xy {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub fn add(a: Xy, b: Xy) -> Xy {
    [a[0] + b[0], a[1] + b[1]]
}

#[inline]
pub fn cross(a: Xy, b: Xy) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
pub fn dot(a: Xy, b: Xy) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Twice the signed area of triangle `abc`; positive when counter-clockwise.
#[inline]
pub fn orient(a: Xy, b: Xy, c: Xy) -> f64 {
    cross(sub(b, a), sub(c, a))
}

/// Signed distance of `p` from the directed line `a → b`, positive on the left.
#[inline]
pub fn side_distance(a: Xy, b: Xy, p: Xy) -> f64 {
    let len = dist(a, b);
    orient(a, b, p) / len
}

/// Rotate `p` counter-clockwise about the origin by `angle` radians.
#[inline]
pub fn rotate(p: Xy, angle: f64) -> Xy {
    let (s, c) = angle.sin_cos();
    [c * p[0] - s * p[1], s * p[0] + c * p[1]]
}

/// Strictly convex polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonFile", into = "PolygonFile")]
pub struct ConvexPolygon {
    vertices: Vec<Xy>,
}

/// On-disk polygon representation: `{"vertices": [[x, y], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonFile {
    pub vertices: Vec<Xy>,
}

impl TryFrom<PolygonFile> for ConvexPolygon {
    type Error = Error;
    fn try_from(f: PolygonFile) -> Result<Self> {
        ConvexPolygon::new(f.vertices)
    }
}

impl From<ConvexPolygon> for PolygonFile {
    fn from(c: ConvexPolygon) -> Self {
        PolygonFile {
            vertices: c.vertices,
        }
    }
}

impl ConvexPolygon {
    /// Validates and normalizes a vertex list.
    ///
    /// Repeated and collinear vertices are removed and clockwise input is
    /// reversed. Anything that is not strictly convex afterwards is rejected.
    pub fn new(vertices: Vec<Xy>) -> Result<Self> {
        if let Some(v) = vertices.iter().flatten().find(|c| !c.is_finite()) {
            return Err(Error::InvalidPolygon(format!("non-finite coordinate {v}")));
        }
        let mut vs: Vec<Xy> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if vs.last().is_none_or(|&l| dist(l, v) > TAU_GEOM) {
                vs.push(v);
            }
        }
        while vs.len() > 1 && dist(vs[0], *vs.last().unwrap()) <= TAU_GEOM {
            vs.pop();
        }
        if signed_area(&vs) < 0.0 {
            vs.reverse();
        }
        // Drop collinear vertices until none remain.
        loop {
            let m = vs.len();
            if m < 3 {
                break;
            }
            let drop = (0..m).find(|&i| {
                let (a, b, c) = (vs[(i + m - 1) % m], vs[i], vs[(i + 1) % m]);
                side_distance(a, c, b).abs() <= TAU_ORIENT
            });
            match drop {
                Some(i) => {
                    vs.remove(i);
                }
                None => break,
            }
        }
        let m = vs.len();
        if m < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need at least 3 non-collinear vertices, got {m}"
            )));
        }
        for i in 0..m {
            let (a, b, c) = (vs[i], vs[(i + 1) % m], vs[(i + 2) % m]);
            if orient(a, b, c) <= 0.0 {
                return Err(Error::InvalidPolygon(format!(
                    "reflex or clockwise turn at vertex {}",
                    (i + 1) % m
                )));
            }
        }
        // Strict convexity per consecutive triple does not rule out a
        // self-overlapping star; the total turning must be exactly 2π.
        let turning: f64 = (0..m)
            .map(|i| {
                let e0 = sub(vs[(i + 1) % m], vs[i]);
                let e1 = sub(vs[(i + 2) % m], vs[(i + 1) % m]);
                cross(e0, e1).atan2(dot(e0, e1))
            })
            .sum();
        if (turning - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(Error::InvalidPolygon("polygon winds more than once".into()));
        }
        Ok(ConvexPolygon { vertices: vs })
    }

    /// Axis-aligned rectangle `[x0, x0 + w] × [y0, y0 + h]`.
    pub fn rectangle(x0: f64, y0: f64, w: f64, h: f64) -> Result<Self> {
        ConvexPolygon::new(vec![[x0, y0], [x0 + w, y0], [x0 + w, y0 + h], [x0, y0 + h]])
    }

    /// Regular `k`-gon with the given circumradius, one vertex on the +x axis.
    pub fn regular(k: usize, circumradius: f64, center: Xy) -> Result<Self> {
        let vs = (0..k)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / k as f64;
                [
                    center[0] + circumradius * a.cos(),
                    center[1] + circumradius * a.sin(),
                ]
            })
            .collect();
        ConvexPolygon::new(vs)
    }

    pub fn vertices(&self) -> &[Xy] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Xy, Xy)> + '_ {
        let m = self.vertices.len();
        (0..m).map(move |i| (self.vertices[i], self.vertices[(i + 1) % m]))
    }

    pub fn translate(&self, t: Xy) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| add(v, t)).collect(),
        }
    }

    /// Rotation about the origin; convexity and orientation are preserved.
    pub fn rotate(&self, angle: f64) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|&v| rotate(v, angle)).collect(),
        }
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// `(min, max)` corners of the axis-aligned bounding box.
    pub fn bbox(&self) -> (Xy, Xy) {
        bbox(&self.vertices)
    }

    pub fn contains(&self, p: Xy) -> bool {
        point_in_convex_polygon(p, self)
    }
}

pub(crate) fn signed_area(vs: &[Xy]) -> f64 {
    let m = vs.len();
    (0..m).map(|i| cross(vs[i], vs[(i + 1) % m])).sum::<f64>() / 2.0
}

pub(crate) fn bbox(vs: &[Xy]) -> (Xy, Xy) {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for v in vs {
        for k in 0..2 {
            lo[k] = lo[k].min(v[k]);
            hi[k] = hi[k].max(v[k]);
        }
    }
    (lo, hi)
}

/// Closed containment: `p` is left of or on every directed edge.
pub fn point_in_convex_polygon(p: Xy, c: &ConvexPolygon) -> bool {
    c.edges()
        .all(|(a, b)| side_distance(a, b, p) >= -TAU_ORIENT)
}

fn on_segment(a: Xy, b: Xy, p: Xy) -> bool {
    let len = dist(a, b);
    if len <= TAU_GEOM {
        return dist(a, p) <= TAU_GEOM;
    }
    if side_distance(a, b, p).abs() > TAU_ORIENT {
        return false;
    }
    let t = dot(sub(p, a), sub(b, a)) / (len * len);
    let slack = TAU_GEOM / len;
    (-slack..=1.0 + slack).contains(&t)
}

/// Intersection points of closed segments `a0a1` and `b0b1`.
///
/// Collinear overlaps report the endpoints of either segment that lie on
/// the other one.
pub fn segment_intersections(a0: Xy, a1: Xy, b0: Xy, b1: Xy) -> Vec<Xy> {
    let da = sub(a1, a0);
    let db = sub(b1, b0);
    let denom = cross(da, db);
    let la = dist(a0, a1);
    let lb = dist(b0, b1);
    if denom.abs() <= TAU_ORIENT * la * lb {
        let mut out = Vec::new();
        for (p, (s0, s1)) in [
            (a0, (b0, b1)),
            (a1, (b0, b1)),
            (b0, (a0, a1)),
            (b1, (a0, a1)),
        ] {
            if on_segment(s0, s1, p) && !out.iter().any(|&q| dist(q, p) <= TAU_GEOM) {
                out.push(p);
            }
        }
        return out;
    }
    let w = sub(b0, a0);
    let t = cross(w, db) / denom;
    let u = cross(w, da) / denom;
    let ta = TAU_GEOM / la;
    let tb = TAU_GEOM / lb;
    if t < -ta || t > 1.0 + ta || u < -tb || u > 1.0 + tb {
        return Vec::new();
    }
    let t = t.clamp(0.0, 1.0);
    vec![[a0[0] + t * da[0], a0[1] + t * da[1]]]
}

/// Every point where the boundaries of `a` and `b` meet.
pub fn convex_polygons_intersection_points(a: &ConvexPolygon, b: &ConvexPolygon) -> Vec<Xy> {
    let (alo, ahi) = a.bbox();
    let (blo, bhi) = b.bbox();
    if (0..2).any(|k| ahi[k] + TAU_GEOM < blo[k] || bhi[k] + TAU_GEOM < alo[k]) {
        return Vec::new();
    }
    let mut out: Vec<Xy> = Vec::new();
    for (a0, a1) in a.edges() {
        for (b0, b1) in b.edges() {
            for p in segment_intersections(a0, a1, b0, b1) {
                if !out.iter().any(|&q| dist(q, p) <= TAU_GEOM) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Closed intersection test by separating axes.
pub fn convex_polygons_intersect(a: &ConvexPolygon, b: &ConvexPolygon) -> bool {
    fn separated(by: &ConvexPolygon, other: &ConvexPolygon) -> bool {
        by.edges().any(|(p, q)| {
            other
                .vertices()
                .iter()
                .all(|&v| side_distance(p, q, v) < -TAU_ORIENT)
        })
    }
    !separated(a, b) && !separated(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_box(lower: &[f64]) -> HyperBox {
        HyperBox::new(Point::from(lower), vec![1.0; lower.len()]).unwrap()
    }

    #[test]
    fn box_containment_is_closed() {
        let b = unit_box(&[0.0, 0.0]);
        assert!(point_in_box(&Point(vec![1.0, 1.0]), &b).unwrap());
        assert!(!point_in_box(&Point(vec![1.0 + 1e-6, 0.5]), &b).unwrap());
        assert!(point_in_box(&Point(vec![0.5, 0.5]), &b).unwrap());
        assert_eq!(
            point_in_box(&Point(vec![0.5]), &b),
            Err(Error::DimensionMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn disk_containment() {
        let d = Disk::unit([0.0, 0.0]);
        assert!(point_in_disk([0.5, 0.0], &d));
        assert!(!point_in_disk([0.51, 0.0], &d));
        assert!(point_in_disk([0.3, 0.4], &d));
    }

    #[test]
    fn polygon_containment() {
        let t = ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert!(point_in_convex_polygon([0.25, 0.25], &t));
        assert!(point_in_convex_polygon([0.5, 0.5], &t));
        assert!(!point_in_convex_polygon([0.6, 0.6], &t));
    }

    #[test]
    fn touching_boxes_are_not_disjoint() {
        assert!(!boxes_disjoint(&unit_box(&[0.0, 0.0]), &unit_box(&[1.0, 0.0])).unwrap());
        assert!(boxes_disjoint(&unit_box(&[0.0, 0.0]), &unit_box(&[1.01, 0.0])).unwrap());
        assert!(boxes_disjoint(&unit_box(&[0.0, 0.0, 0.0]), &unit_box(&[0.5, 0.5, 1.2])).unwrap());
        assert!(boxes_disjoint(&unit_box(&[0.0]), &unit_box(&[0.0, 0.0])).is_err());
    }

    #[test]
    fn tangent_disks_intersect() {
        let a = Disk::unit([0.0, 0.0]);
        assert!(disks_intersect(&a, &Disk::unit([1.0, 0.0])));
        assert!(!disks_intersect(&a, &Disk::unit([1.001, 0.0])));
        assert!(disks_intersect(&a, &Disk::unit([0.9, 0.0])));
    }

    #[test]
    fn square_boundary_crossings() {
        let sq = ConvexPolygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap();
        assert!(convex_polygons_intersection_points(&sq, &sq.translate([2.0, 0.0])).is_empty());

        let mut pts = convex_polygons_intersection_points(&sq, &sq.translate([0.5, 0.5]));
        pts.sort_by(|a, b| lex_cmp(a, b));
        assert_eq!(pts.len(), 2);
        assert!(dist(pts[0], [0.5, 1.0]) < 1e-12);
        assert!(dist(pts[1], [1.0, 0.5]) < 1e-12);

        let same = convex_polygons_intersection_points(&sq, &sq);
        assert_eq!(same.len(), 4);
        for v in sq.vertices() {
            assert!(same.iter().any(|&q| dist(q, *v) < 1e-12));
        }
    }

    #[test]
    fn polygon_normalization() {
        // Clockwise with a collinear midpoint and a repeated vertex.
        let p = ConvexPolygon::new(vec![
            [0.0, 0.0],
            [0.0, 1.0],
            [1.0, 1.0],
            [1.0, 1.0],
            [1.0, 0.5],
            [1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.area() > 0.0);
        assert!(ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]).is_err());
        assert!(ConvexPolygon::new(vec![
            [0.0, 0.0],
            [2.0, 0.0],
            [1.0, 0.5],
            [2.0, 2.0],
            [0.0, 2.0]
        ])
        .is_err());
    }

    #[test]
    fn pointset_dedups_and_sorts() {
        let ps = PointSet::from_xy(&[[1.0, 0.0], [0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(ps.xy(), vec![[0.0, 1.0], [1.0, 0.0]]);
        assert!(PointSet::from_xy(&[[f64::NAN, 0.0]]).is_err());
    }

    #[test]
    fn polygon_sat_is_closed() {
        let sq = ConvexPolygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap();
        assert!(convex_polygons_intersect(&sq, &sq.translate([1.0, 0.0])));
        assert!(convex_polygons_intersect(&sq, &sq.translate([1.0, 1.0])));
        assert!(!convex_polygons_intersect(
            &sq,
            &sq.translate([1.0 + 1e-6, 0.0])
        ));
    }
}
