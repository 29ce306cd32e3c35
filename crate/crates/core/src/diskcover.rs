//! 2-ply cover by disks of diameter one.
//!
//! Separating the x-coordinates and, globally, the y-coordinates with
//! interval length `1/√2` puts every point in a cell of a square grid whose
//! columns and rows are pairwise separated. The circumcircle of a cell has
//! radius exactly `1/2`. Disks of diagonally adjacent cells are more than one
//! unit apart, so only row or column neighbours can meet, which bounds the
//! ply by two.

use std::collections::BTreeSet;
use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::cover1d::{separate, IntervalCover};
use crate::error::Result;
use crate::geom::{Disk, PointSet, Xy};

/// Side of the grid cells.
pub const CELL_SIDE: f64 = FRAC_1_SQRT_2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskCover {
    pub disks: Vec<Disk>,
    /// Vertical strips (x) and horizontal strips (y).
    pub columns: IntervalCover,
    pub rows: IntervalCover,
    /// `(row, column)` of the cell each disk circumscribes.
    pub cells: Vec<(usize, usize)>,
}

impl DiskCover {
    pub fn len(&self) -> usize {
        self.disks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }
}

pub fn disk_cover(points: &PointSet) -> Result<DiskCover> {
    points.require_dim(2)?;
    let columns = separate(&points.axis(0), CELL_SIDE)?;
    let rows = separate(&points.axis(1), CELL_SIDE)?;
    let occupied: BTreeSet<(usize, usize)> = points
        .iter()
        .map(|p| {
            let col = columns.locate(p.0[0]).expect("x-strips cover every point");
            let row = rows.locate(p.0[1]).expect("y-strips cover every point");
            (row, col)
        })
        .collect();
    let cells: Vec<(usize, usize)> = occupied.into_iter().collect();
    let disks = cells
        .iter()
        .map(|&(row, col)| Disk::unit(cell_center(&columns, &rows, row, col)))
        .collect();
    Ok(DiskCover {
        disks,
        columns,
        rows,
        cells,
    })
}

fn cell_center(columns: &IntervalCover, rows: &IntervalCover, row: usize, col: usize) -> Xy {
    let half = CELL_SIDE / 2.0;
    [columns.lefts[col] + half, rows.lefts[row] + half]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{disks_intersect, point_in_disk};

    #[test]
    fn examples() {
        assert!(disk_cover(&PointSet::empty(2)).unwrap().is_empty());

        let c = disk_cover(&PointSet::from_xy(&[[0.0, 0.0], [0.6, 0.1]]).unwrap()).unwrap();
        assert_eq!(c.len(), 1);
        let d = c.disks[0];
        assert!((d.center[0] - 0.353_553_39).abs() < 1e-8);
        assert!((d.center[1] - 0.353_553_39).abs() < 1e-8);
        assert_eq!(d.radius, 0.5);
        assert!(point_in_disk([0.6, 0.1], &d));

        let c = disk_cover(&PointSet::from_xy(&[[0.0, 0.0], [1.0, 0.0]]).unwrap()).unwrap();
        assert_eq!(c.len(), 2);
        assert!((c.disks[1].center[0] - 1.353_553_39).abs() < 1e-8);
        assert!((c.disks[1].center[1] - 0.353_553_39).abs() < 1e-8);
        assert!(disks_intersect(&c.disks[0], &c.disks[1]));
    }

    #[test]
    fn cell_corners_lie_on_the_circle() {
        let c = disk_cover(&PointSet::from_xy(&[[0.0, 0.0]]).unwrap()).unwrap();
        let d = c.disks[0];
        for corner in [
            [0.0, 0.0],
            [CELL_SIDE, 0.0],
            [0.0, CELL_SIDE],
            [CELL_SIDE, CELL_SIDE],
        ] {
            assert!((crate::geom::dist(corner, d.center) - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn rows_are_global() {
        // Two columns whose points sit at different heights still share one
        // row partition.
        let p = PointSet::from_xy(&[[0.0, 0.0], [0.0, 0.6], [2.0, 0.3], [2.0, 1.0]]).unwrap();
        let c = disk_cover(&p).unwrap();
        assert_eq!(c.rows.lefts, vec![0.0, 1.0]);
        assert_eq!(c.cells, vec![(0, 0), (0, 1), (1, 1)]);
    }
}
