//! Minimum 1-ply interval cover by a left-to-right greedy sweep.
//!
//! Sorting the coordinates and opening a new interval anchored at each
//! uncovered coordinate yields pairwise disjoint intervals, and the number of
//! intervals is the minimum over all 1-ply covers with the given length.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{check_length, Interval};

/// Ordered set of disjoint closed intervals of a common length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalCover {
    pub length: f64,
    /// Strictly increasing, with `lefts[i + 1] > lefts[i] + length`.
    pub lefts: Vec<f64>,
}

impl IntervalCover {
    pub fn len(&self) -> usize {
        self.lefts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lefts.is_empty()
    }

    pub fn intervals(&self) -> impl Iterator<Item = Interval> + '_ {
        self.lefts.iter().map(move |&left| Interval {
            left,
            length: self.length,
        })
    }

    /// Index of the interval containing `x`, if any.
    pub fn locate(&self, x: f64) -> Option<usize> {
        // Last interval whose left endpoint is at most x.
        let idx = self.lefts.partition_point(|&l| l <= x).checked_sub(1)?;
        (x <= self.lefts[idx] + self.length).then_some(idx)
    }
}

/// Greedy minimum 1-ply cover of `coords` by closed intervals of `length`.
pub fn separate(coords: &[f64], length: f64) -> Result<IntervalCover> {
    check_length(length)?;
    if let Some((index, &value)) = coords.iter().enumerate().find(|(_, c)| !c.is_finite()) {
        return Err(Error::NonFiniteCoordinate { index, value });
    }
    let mut sorted = coords.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    Ok(separate_sorted(&sorted, length))
}

/// [`separate`] on coordinates already sorted ascending and finite.
pub(crate) fn separate_sorted(sorted: &[f64], length: f64) -> IntervalCover {
    let mut lefts = Vec::new();
    let mut right = f64::NEG_INFINITY;
    for &c in sorted {
        if c > right {
            lefts.push(c);
            right = c + length;
        }
    }
    IntervalCover { length, lefts }
}
