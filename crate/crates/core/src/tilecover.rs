//! 1-ply covers from square and hexagonal tilings.
//!
//! The occupied cells of a shifted tiling form a cover. Closed tiles of a
//! tiling share their edges, so the lattice offset is chosen such that every
//! point stays at least `margin` away from every cell boundary; in strict
//! mode each emitted tile is then shrunk by `margin / 2`, which keeps all
//! points covered and makes the tiles pairwise disjoint as closed sets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{check_length, convex_polygons_intersect, ConvexPolygon, PointSet, Xy};

/// Number of lattice offsets tried before giving up.
pub const OFFSET_ATTEMPTS: usize = 1000;
/// Boundary margin as a fraction of the tile size.
pub const MARGIN_FRACTION: f64 = 1e-6;

const GOLDEN: f64 = 1.618_033_988_749_895;
const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Tile {
    /// Axis-aligned square of the given side.
    Square { side: f64 },
    /// Flat-top regular hexagon of the given circumradius.
    Hexagon { circumradius: f64 },
}

impl Tile {
    fn size(&self) -> f64 {
        match *self {
            Tile::Square { side } => side,
            Tile::Hexagon { circumradius } => circumradius,
        }
    }

    /// Translation periods of the lattice along x and y.
    fn periods(&self) -> Xy {
        match *self {
            Tile::Square { side } => [side, side],
            Tile::Hexagon { circumradius: r } => [3.0 * r, SQRT3 * r],
        }
    }

    pub fn margin(&self) -> f64 {
        MARGIN_FRACTION * self.size()
    }

    /// Lattice cell containing `p` (shifted by `offset`) and the distance of
    /// `p` to that cell's boundary.
    pub fn locate(&self, p: Xy, offset: Xy) -> ((i64, i64), f64) {
        let (x, y) = (p[0] - offset[0], p[1] - offset[1]);
        match *self {
            Tile::Square { side } => {
                let i = (x / side).floor();
                let j = (y / side).floor();
                let u = x - i * side;
                let v = y - j * side;
                let d = u.min(side - u).min(v).min(side - v);
                ((i as i64, j as i64), d)
            }
            Tile::Hexagon { circumradius: r } => {
                let (q, rr) = hex_round(2.0 / 3.0 * x / r, (-x / 3.0 + SQRT3 / 3.0 * y) / r);
                // Rounding can land on a neighbour for points near an edge.
                let mut best = ((q, rr), f64::NEG_INFINITY);
                for (dq, dr) in [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)] {
                    let cell = (q + dq, rr + dr);
                    let c = hex_center(r, cell);
                    let d = hex_boundary_distance(r, [x - c[0], y - c[1]]);
                    if d > best.1 {
                        best = (cell, d);
                    }
                }
                best
            }
        }
    }

    /// The tile of `cell`, shrunk inward by `shrink`.
    pub fn polygon(&self, cell: (i64, i64), offset: Xy, shrink: f64) -> ConvexPolygon {
        match *self {
            Tile::Square { side } => {
                let lo = [
                    offset[0] + cell.0 as f64 * side + shrink,
                    offset[1] + cell.1 as f64 * side + shrink,
                ];
                ConvexPolygon::rectangle(lo[0], lo[1], side - 2.0 * shrink, side - 2.0 * shrink)
                    .expect("shrink is far below the side")
            }
            Tile::Hexagon { circumradius: r } => {
                let c = hex_center(r, cell);
                let rho = r - shrink * 2.0 / SQRT3;
                ConvexPolygon::regular(6, rho, [c[0] + offset[0], c[1] + offset[1]])
                    .expect("shrink is far below the radius")
            }
        }
    }

    /// The full tile translated so that its reference point is at `at`
    /// (lower-left corner for squares, center for hexagons).
    pub fn placed(&self, at: Xy) -> ConvexPolygon {
        match *self {
            Tile::Square { side } => ConvexPolygon::rectangle(at[0], at[1], side, side).unwrap(),
            Tile::Hexagon { circumradius } => ConvexPolygon::regular(6, circumradius, at).unwrap(),
        }
    }
}

fn hex_center(r: f64, (q, rr): (i64, i64)) -> Xy {
    let (q, rr) = (q as f64, rr as f64);
    [1.5 * r * q, SQRT3 * r * (rr + q / 2.0)]
}

/// Signed distance from `d` (relative to the center) to the hexagon boundary.
fn hex_boundary_distance(r: f64, d: Xy) -> f64 {
    let apothem = SQRT3 / 2.0 * r;
    let proj = [30f64, 90.0, 150.0]
        .iter()
        .map(|deg| {
            let (s, c) = deg.to_radians().sin_cos();
            (c * d[0] + s * d[1]).abs()
        })
        .fold(0.0, f64::max);
    apothem - proj
}

fn hex_round(q: f64, r: f64) -> (i64, i64) {
    let s = -q - r;
    let (mut rq, mut rr, rs) = (q.round(), r.round(), s.round());
    let (dq, dr, ds) = ((rq - q).abs(), (rr - r).abs(), (rs - s).abs());
    if dq > dr && dq > ds {
        rq = -rr - rs;
    } else if dr > ds {
        rr = -rq - rs;
    }
    (rq as i64, rr as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TileMode {
    /// Emit tiles shrunk by half the margin; closed tiles are disjoint.
    #[default]
    Strict,
    /// Emit the original tiles; neighbours share edges.
    Plain,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileCover {
    pub tile: Tile,
    pub mode: TileMode,
    pub offset: Xy,
    /// Minimum distance every point keeps from the lattice boundaries.
    pub margin: f64,
    /// Occupied cells, sorted.
    pub cells: Vec<(i64, i64)>,
    pub placements: Vec<ConvexPolygon>,
}

impl TileCover {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Lower corners of the emitted squares, or `None` for hexagons.
    pub fn square_lowers(&self) -> Option<(Vec<Xy>, f64)> {
        match self.tile {
            Tile::Square { side } => {
                let shrink = self.shrink();
                let lowers = self
                    .cells
                    .iter()
                    .map(|&(i, j)| {
                        [
                            self.offset[0] + i as f64 * side + shrink,
                            self.offset[1] + j as f64 * side + shrink,
                        ]
                    })
                    .collect();
                Some((lowers, side - 2.0 * shrink))
            }
            Tile::Hexagon { .. } => None,
        }
    }

    /// Reference point of every emitted tile: lower-left corner for squares,
    /// center for hexagons.
    pub fn anchors(&self) -> Vec<Xy> {
        match self.tile {
            Tile::Square { .. } => self.square_lowers().unwrap().0,
            Tile::Hexagon { circumradius } => self
                .cells
                .iter()
                .map(|&c| {
                    let h = hex_center(circumradius, c);
                    [h[0] + self.offset[0], h[1] + self.offset[1]]
                })
                .collect(),
        }
    }

    /// Side (squares) or circumradius (hexagons) of the emitted tiles.
    pub fn emitted_size(&self) -> f64 {
        match self.tile {
            Tile::Square { side } => side - 2.0 * self.shrink(),
            Tile::Hexagon { circumradius } => circumradius - self.shrink() * 2.0 / SQRT3,
        }
    }

    fn shrink(&self) -> f64 {
        match self.mode {
            TileMode::Strict => self.margin / 2.0,
            TileMode::Plain => 0.0,
        }
    }

    /// Number of emitted tiles met by a full tile placed at `at`.
    pub fn probe(&self, at: Xy) -> usize {
        let probe = self.tile.placed(at);
        let (lo, hi) = probe.bbox();
        self.placements
            .iter()
            .filter(|t| {
                let (tlo, thi) = t.bbox();
                (0..2).all(|k| tlo[k] <= hi[k] + 1e-9 && lo[k] <= thi[k] + 1e-9)
            })
            .filter(|t| convex_polygons_intersect(&probe, t))
            .count()
    }
}

/// Offset tried at step `k` of the deterministic search.
pub fn offset_candidate(tile: &Tile, k: usize) -> Xy {
    let [px, py] = tile.periods();
    let k = k as f64;
    [
        (k * GOLDEN).rem_euclid(px),
        (k * GOLDEN * GOLDEN).rem_euclid(py),
    ]
}

pub fn tiling_cover(points: &PointSet, tile: Tile) -> Result<TileCover> {
    tiling_cover_with(points, tile, TileMode::Strict)
}

pub fn tiling_cover_with(points: &PointSet, tile: Tile, mode: TileMode) -> Result<TileCover> {
    points.require_dim(2)?;
    check_length(tile.size())?;
    let margin = tile.margin();
    let xy = points.xy();
    for k in 0..OFFSET_ATTEMPTS {
        let offset = offset_candidate(&tile, k);
        let mut cells = BTreeMap::new();
        let ok = xy.iter().all(|&p| {
            let (cell, d) = tile.locate(p, offset);
            cells.insert(cell, ());
            d > margin
        });
        if !ok {
            continue;
        }
        let cells: Vec<(i64, i64)> = cells.into_keys().collect();
        let mut cover = TileCover {
            tile,
            mode,
            offset,
            margin,
            cells,
            placements: Vec::new(),
        };
        let shrink = cover.shrink();
        cover.placements = cover
            .cells
            .iter()
            .map(|&c| tile.polygon(c, offset, shrink))
            .collect();
        return Ok(cover);
    }
    Err(Error::OffsetSearchFailed {
        attempts: OFFSET_ATTEMPTS,
        margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::point_in_convex_polygon;

    #[test]
    fn square_examples() {
        let p = PointSet::from_xy(&[[0.5, 0.5], [3.2, 0.5]]).unwrap();
        let c = tiling_cover(&p, Tile::Square { side: 1.0 }).unwrap();
        assert_eq!(c.offset, [0.0, 0.0]);
        assert_eq!(c.cells, vec![(0, 0), (3, 0)]);

        let p = PointSet::from_xy(&[[1.0, 0.5]]).unwrap();
        let c = tiling_cover(&p, Tile::Square { side: 1.0 }).unwrap();
        assert_eq!(c.len(), 1);
        assert_ne!(c.offset, [0.0, 0.0]);
        let (_, d) = c.tile.locate([1.0, 0.5], c.offset);
        assert!(d > c.margin);
        assert!(point_in_convex_polygon([1.0, 0.5], &c.placements[0]));
    }

    #[test]
    fn hexagon_example() {
        let p = PointSet::from_xy(&[[0.0, 0.0]]).unwrap();
        let c = tiling_cover(&p, Tile::Hexagon { circumradius: 1.0 }).unwrap();
        assert_eq!(c.len(), 1);
        assert!(point_in_convex_polygon([0.0, 0.0], &c.placements[0]));
    }

    #[test]
    fn hex_locate_agrees_with_polygons() {
        let tile = Tile::Hexagon { circumradius: 0.7 };
        for k in 0..2000 {
            let p = [
                ((k as f64) * 0.377).sin() * 5.0,
                ((k as f64) * 0.911).cos() * 5.0,
            ];
            let (cell, d) = tile.locate(p, [0.0, 0.0]);
            let poly = tile.polygon(cell, [0.0, 0.0], 0.0);
            assert!(d >= -1e-12);
            assert!(point_in_convex_polygon(p, &poly));
        }
    }

    #[test]
    fn offsets_are_deterministic_and_in_range() {
        let t = Tile::Square { side: 2.0 };
        assert_eq!(offset_candidate(&t, 0), [0.0, 0.0]);
        for k in 0..100 {
            let o = offset_candidate(&t, k);
            assert_eq!(o, offset_candidate(&t, k));
            assert!((0.0..2.0).contains(&o[0]) && (0.0..2.0).contains(&o[1]));
        }
    }

    #[test]
    fn plain_mode_keeps_full_tiles() {
        let p = PointSet::from_xy(&[[0.5, 0.5], [1.5, 0.5]]).unwrap();
        let c = tiling_cover_with(&p, Tile::Square { side: 1.0 }, TileMode::Plain).unwrap();
        let (lowers, side) = c.square_lowers().unwrap();
        assert_eq!(side, 1.0);
        assert_eq!(lowers, vec![[0.0, 0.0], [1.0, 0.0]]);
        let s = tiling_cover(&p, Tile::Square { side: 1.0 }).unwrap();
        assert!(s.square_lowers().unwrap().1 < 1.0);
    }

    #[test]
    fn rejects_bad_tiles() {
        let p = PointSet::from_xy(&[[0.0, 0.0]]).unwrap();
        assert!(tiling_cover(&p, Tile::Square { side: 0.0 }).is_err());
        assert!(tiling_cover(&p, Tile::Hexagon { circumradius: -1.0 }).is_err());
    }
}
