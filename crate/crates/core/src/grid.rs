//! Uniform bucket grid over planar bounding boxes.

use std::collections::HashMap;

use crate::geom::Xy;

pub(crate) struct BucketGrid {
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<usize>>,
}

impl BucketGrid {
    /// Indexes `boxes` (min, max corners, padded by the geometric tolerance)
    /// with the given cell size.
    pub fn new(boxes: &[(Xy, Xy)], cell: f64) -> Self {
        let cell = if cell > 0.0 && cell.is_finite() {
            cell
        } else {
            1.0
        };
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, &(lo, hi)) in boxes.iter().enumerate() {
            let pad = crate::geom::TAU_GEOM;
            let a = key([lo[0] - pad, lo[1] - pad], cell);
            let b = key([hi[0] + pad, hi[1] + pad], cell);
            for x in a.0..=b.0 {
                for y in a.1..=b.1 {
                    buckets.entry((x, y)).or_default().push(i);
                }
            }
        }
        BucketGrid { cell, buckets }
    }

    /// Sorted indices whose boxes may meet the box `[lo, hi]`.
    pub fn near_box(&self, lo: Xy, hi: Xy) -> Vec<usize> {
        let pad = crate::geom::TAU_GEOM;
        let a = key([lo[0] - pad, lo[1] - pad], self.cell);
        let b = key([hi[0] + pad, hi[1] + pad], self.cell);
        let mut out = Vec::new();
        for x in a.0..=b.0 {
            for y in a.1..=b.1 {
                if let Some(v) = self.buckets.get(&(x, y)) {
                    out.extend_from_slice(v);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Indices whose boxes may contain `p`.
    pub fn near(&self, p: Xy) -> &[usize] {
        self.buckets
            .get(&key(p, self.cell))
            .map_or(&[], |v| v.as_slice())
    }
}

/// Typical extent of the boxes, a reasonable cell size.
pub(crate) fn median_extent(boxes: &[(Xy, Xy)]) -> f64 {
    if boxes.is_empty() {
        return 1.0;
    }
    let mut ext: Vec<f64> = boxes
        .iter()
        .map(|(lo, hi)| (hi[0] - lo[0]).max(hi[1] - lo[1]))
        .collect();
    ext.sort_by(f64::total_cmp);
    ext[ext.len() / 2].max(1e-6)
}

fn key(p: Xy, cell: f64) -> (i64, i64) {
    ((p[0] / cell).floor() as i64, (p[1] / cell).floor() as i64)
}
