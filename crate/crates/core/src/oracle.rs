//! Exact optima and lower bounds for small instances.
//!
//! [`opt_1ply_box_cover_size`] finds the minimum number of pairwise disjoint
//! closed boxes covering a point set. It enumerates partitions of the points
//! into `k` groups for increasing `k`; a partition is feasible when every
//! group fits in one box and the boxes can be placed pairwise disjoint. Each
//! pair of boxes must be separated along some axis in some direction, and a
//! choice of separations for all pairs is a system of difference
//! constraints. Separation is strict (closed boxes that touch overlap), so
//! constraint edges carry a strictness flag and a zero-weight cycle through
//! a strict edge counts as infeasible.
//!
//! Constraint weights are converted to fixed point with [`FIXED_SCALE`]
//! fractional bits and summed in `i128`, so zero-weight cycles are detected
//! exactly for inputs whose coordinates need no more than that many bits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{check_length, Point, PointSet};
use crate::par;

/// Fractional bits of the fixed-point constraint weights.
pub const FIXED_SCALE: i32 = 60;

fn to_fixed(x: f64) -> i128 {
    (x * (FIXED_SCALE as f64).exp2()).round() as i128
}

fn from_fixed(x: i128) -> f64 {
    x as f64 / (FIXED_SCALE as f64).exp2()
}

/// Constraint weight `w − s·ε` for an infinitesimal `ε > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Weight {
    value: i128,
    strict: i64,
}

impl Weight {
    const ZERO: Weight = Weight {
        value: 0,
        strict: 0,
    };

    fn plus(self, o: Weight) -> Weight {
        Weight {
            value: self.value + o.value,
            strict: self.strict + o.strict,
        }
    }

    fn less(self, o: Weight) -> bool {
        self.value < o.value || (self.value == o.value && self.strict > o.strict)
    }
}

/// A system of constraints `x[to] − x[from] ≤ w` (or `< w` when strict).
#[derive(Debug, Clone, Default)]
pub struct DifferenceSystem {
    vars: usize,
    edges: Vec<(usize, usize, Weight)>,
}

impl DifferenceSystem {
    pub fn new(vars: usize) -> Self {
        DifferenceSystem {
            vars,
            edges: Vec::new(),
        }
    }

    /// `x[to] − x[from] ≤ bound`.
    pub fn at_most(&mut self, to: usize, from: usize, bound: f64) {
        self.push(to, from, to_fixed(bound), false);
    }

    /// `x[to] − x[from] < bound`.
    pub fn less_than(&mut self, to: usize, from: usize, bound: f64) {
        self.push(to, from, to_fixed(bound), true);
    }

    fn push(&mut self, to: usize, from: usize, value: i128, strict: bool) {
        self.edges.push((
            from,
            to,
            Weight {
                value,
                strict: strict as i64,
            },
        ));
    }

    fn pop(&mut self) {
        self.edges.pop();
    }

    /// Bellman–Ford from a virtual source joined to every variable.
    fn potentials(&self) -> Option<Vec<Weight>> {
        let mut d = vec![Weight::ZERO; self.vars];
        for round in 0..=self.vars {
            let mut changed = false;
            for &(from, to, w) in &self.edges {
                let cand = d[from].plus(w);
                if cand.less(d[to]) {
                    d[to] = cand;
                    changed = true;
                }
            }
            if !changed {
                return Some(d);
            }
            if round == self.vars {
                break;
            }
        }
        None
    }

    pub fn is_feasible(&self) -> bool {
        self.potentials().is_some()
    }

    /// A satisfying assignment, if one exists.
    pub fn solve(&self) -> Option<Vec<f64>> {
        Some(self.solve_fixed()?.into_iter().map(from_fixed).collect())
    }

    fn solve_fixed(&self) -> Option<Vec<i128>> {
        let d = self.potentials()?;
        // Realize the infinitesimal with a concrete epsilon small enough to
        // satisfy every constraint.
        let mut eps: i128 = 1 << FIXED_SCALE;
        loop {
            let x: Vec<i128> = d.iter().map(|w| w.value - w.strict as i128 * eps).collect();
            let ok = self.edges.iter().all(|&(from, to, w)| {
                let diff = x[to] - x[from];
                if w.strict > 0 {
                    diff < w.value
                } else {
                    diff <= w.value
                }
            });
            if ok {
                return Some(x);
            }
            if eps <= 1 {
                return None;
            }
            eps /= 2;
        }
    }
}

/// Exact minimum 1-ply box cover with one witness placement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSolution {
    pub size: usize,
    /// Point indices (canonical order) covered by each box.
    pub groups: Vec<Vec<usize>>,
    /// Lower corner of each box.
    pub lowers: Vec<Point>,
}

/// Default instance-size limit for [`opt_1ply_box_cover_size`].
pub fn default_limit(dim: usize) -> usize {
    match dim {
        1 => 12,
        2 => 7,
        _ => 5,
    }
}

/// Minimum number of pairwise disjoint `lengths`-boxes covering `points`.
pub fn opt_1ply_box_cover_size(points: &PointSet, lengths: &[f64]) -> Result<usize> {
    Ok(opt_1ply_box_cover(points, lengths, default_limit(points.dim()))?.size)
}

/// Exact solver with witness, refusing instances larger than `limit`.
pub fn opt_1ply_box_cover(
    points: &PointSet,
    lengths: &[f64],
    limit: usize,
) -> Result<OracleSolution> {
    let dim = points.dim();
    if !(1..=3).contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    if lengths.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: lengths.len(),
        });
    }
    for &l in lengths {
        check_length(l)?;
    }
    let n = points.len();
    if n > limit {
        return Err(Error::InstanceTooLarge { n, limit });
    }
    if n == 0 {
        return Ok(OracleSolution {
            size: 0,
            groups: Vec::new(),
            lowers: Vec::new(),
        });
    }
    let problem = Problem::new(points, lengths);
    for k in 1..=n {
        let partitions = partitions_with_blocks(n, k);
        let found = par::map(&partitions, |labels| problem.solve_partition(labels, k));
        if let Some(sol) = found.into_iter().flatten().next() {
            return Ok(sol);
        }
    }
    unreachable!("singleton boxes can always be pulled apart")
}

struct Problem {
    dim: usize,
    coords: Vec<Vec<i128>>,
    lengths: Vec<i128>,
    points: Vec<Vec<f64>>,
    lengths_f: Vec<f64>,
}

impl Problem {
    fn new(points: &PointSet, lengths: &[f64]) -> Self {
        Problem {
            dim: points.dim(),
            coords: points
                .iter()
                .map(|p| p.coords().iter().map(|&c| to_fixed(c)).collect())
                .collect(),
            lengths: lengths.iter().map(|&l| to_fixed(l)).collect(),
            points: points.iter().map(|p| p.coords().to_vec()).collect(),
            lengths_f: lengths.to_vec(),
        }
    }

    fn solve_partition(&self, labels: &[usize], k: usize) -> Option<OracleSolution> {
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (i, &g) in labels.iter().enumerate() {
            groups[g].push(i);
        }
        // Window of feasible lower corners per group and axis: [lo, hi].
        let mut windows = vec![vec![(0i128, 0i128); self.dim]; k];
        for (g, members) in groups.iter().enumerate() {
            for (a, w) in windows[g].iter_mut().enumerate() {
                let min = members.iter().map(|&i| self.coords[i][a]).min().unwrap();
                let max = members.iter().map(|&i| self.coords[i][a]).max().unwrap();
                if max - min > self.lengths[a] {
                    return None;
                }
                *w = (max - self.lengths[a], min);
            }
        }
        // Variable k is the zero reference.
        let mut systems: Vec<DifferenceSystem> = (0..self.dim)
            .map(|a| {
                let mut s = DifferenceSystem::new(k + 1);
                for (g, w) in windows.iter().enumerate() {
                    s.push(g, k, w[a].1, false);
                    s.push(k, g, -w[a].0, false);
                }
                s
            })
            .collect();

        // Separation alternatives per pair: (axis, first, second) meaning
        // lower[second] − lower[first] > length along axis.
        let mut choices: Vec<Vec<(usize, usize, usize)>> = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let mut alts = Vec::new();
                let mut forced = false;
                for (a, (&wi, &wj)) in windows[i].iter().zip(&windows[j]).enumerate() {
                    let l = self.lengths[a];
                    if wj.0 - wi.1 > l || wi.0 - wj.1 > l {
                        forced = true;
                        break;
                    }
                    if wj.1 - wi.0 > l {
                        alts.push((a, i, j));
                    }
                    if wi.1 - wj.0 > l {
                        alts.push((a, j, i));
                    }
                }
                if forced {
                    continue;
                }
                if alts.is_empty() {
                    return None;
                }
                choices.push(alts);
            }
        }
        choices.sort_by_key(|c| c.len());
        if !self.search(&choices, &mut systems) {
            return None;
        }
        let per_axis: Vec<Vec<i128>> = systems.iter().map(|s| s.solve_fixed().unwrap()).collect();
        let lowers = (0..k)
            .map(|g| {
                Point(
                    (0..self.dim)
                        .map(|a| self.float_lower(&groups[g], a, per_axis[a][g] - per_axis[a][k]))
                        .collect(),
                )
            })
            .collect();
        Some(OracleSolution {
            size: k,
            groups,
            lowers,
        })
    }

    /// Converts a fixed-point lower corner to `f64`, stepping by ulps until
    /// the float box contains every member again.
    fn float_lower(&self, members: &[usize], axis: usize, fixed: i128) -> f64 {
        let len = self.lengths_f[axis];
        let mut lower = from_fixed(fixed);
        for _ in 0..8 {
            if members.iter().any(|&i| self.points[i][axis] > lower + len) {
                lower = lower.next_up();
            } else if members.iter().any(|&i| self.points[i][axis] < lower) {
                lower = lower.next_down();
            } else {
                break;
            }
        }
        lower
    }

    fn search(
        &self,
        choices: &[Vec<(usize, usize, usize)>],
        systems: &mut [DifferenceSystem],
    ) -> bool {
        let Some((alts, rest)) = choices.split_first() else {
            return true;
        };
        for &(a, first, second) in alts {
            // lower[first] − lower[second] < −length
            systems[a].push(first, second, -self.lengths[a], true);
            if systems[a].is_feasible() && self.search(rest, systems) {
                return true;
            }
            systems[a].pop();
        }
        false
    }
}

/// All labelings of `n` items into exactly `k` nonempty blocks, as
/// restricted-growth strings.
pub fn partitions_with_blocks(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(
        i: usize,
        n: usize,
        k: usize,
        used: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if n - i < k - used {
            return;
        }
        if i == n {
            if used == k {
                out.push(cur.clone());
            }
            return;
        }
        for b in 0..=used.min(k - 1) {
            cur.push(b);
            rec(i + 1, n, k, used.max(b + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    rec(0, n, k, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Minimum number of disjoint closed intervals of `length` covering
/// `coords`, by exhaustive search over subsets of the coordinates as left
/// endpoints.
pub fn opt_interval_cover_size(coords: &[f64], length: f64) -> Result<usize> {
    check_length(length)?;
    let mut c = coords.to_vec();
    c.sort_by(f64::total_cmp);
    c.dedup();
    let n = c.len();
    if n > 12 {
        return Err(Error::InstanceTooLarge { n, limit: 12 });
    }
    let mut best = n;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let lefts: Vec<f64> = (0..n)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| c[i])
            .collect();
        let disjoint = lefts.windows(2).all(|w| w[1] > w[0] + length);
        let covers = c
            .iter()
            .all(|&x| lefts.iter().any(|&l| l <= x && x <= l + length));
        if disjoint && covers {
            best = size;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Linf,
    L2,
}

impl Metric {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        let it = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        match self {
            Metric::Linf => it.fold(0.0, f64::max),
            Metric::L2 => it.map(|d| d * d).sum::<f64>().sqrt(),
        }
    }
}

/// Largest set of points pairwise farther apart than `threshold`.
///
/// Points within `threshold` of each other may share an object; points
/// farther apart cannot, so this lower-bounds the size of any cover by
/// objects of that diameter.
pub fn far_independent_set_lb(points: &PointSet, metric: Metric, threshold: f64) -> Result<usize> {
    let n = points.len();
    if n > 20 {
        return Err(Error::InstanceTooLarge { n, limit: 20 });
    }
    let pts = points.points();
    let adj: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| {
                    j != i && metric.distance(pts[i].coords(), pts[j].coords()) <= threshold
                })
                .fold(0u32, |m, j| m | 1 << j)
        })
        .collect();
    fn mis(cand: u32, adj: &[u32]) -> usize {
        if cand == 0 {
            return 0;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !(1 << v);
        let with = 1 + mis(rest & !adj[v], adj);
        if adj[v] & rest == 0 {
            return with;
        }
        with.max(mis(rest, adj))
    }
    Ok(mis(if n == 0 { 0 } else { (1u32 << n) - 1 }, &adj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::boxes_disjoint;
    use crate::geom::HyperBox;

    fn unit(points: &[[f64; 2]]) -> usize {
        opt_1ply_box_cover_size(&PointSet::from_xy(points).unwrap(), &[1.0, 1.0]).unwrap()
    }

    #[test]
    fn box_examples() {
        assert_eq!(unit(&[[0.0, 0.0], [0.5, 0.5]]), 1);
        assert_eq!(unit(&[[0.0, 0.0], [1.8, 0.0]]), 2);
        assert_eq!(unit(&[[0.0, 0.0], [0.9, 0.9], [1.8, 0.0]]), 2);
        assert_eq!(unit(&[]), 0);
    }

    #[test]
    fn witness_is_a_valid_cover() {
        let p = PointSet::from_xy(&[[0.0, 0.0], [0.9, 0.9], [1.8, 0.0], [0.5, 2.1], [2.2, 1.7]])
            .unwrap();
        let sol = opt_1ply_box_cover(&p, &[1.0, 1.0], 7).unwrap();
        let boxes: Vec<HyperBox> = sol
            .lowers
            .iter()
            .map(|l| HyperBox::new(l.clone(), vec![1.0, 1.0]).unwrap())
            .collect();
        for (g, members) in sol.groups.iter().enumerate() {
            for &i in members {
                assert!(crate::geom::point_in_box(&p.points()[i], &boxes[g]).unwrap());
            }
        }
        for i in 0..boxes.len() {
            for j in i + 1..boxes.len() {
                assert!(boxes_disjoint(&boxes[i], &boxes[j]).unwrap());
            }
        }
    }

    #[test]
    fn strict_separation_is_symbolic() {
        // Two lower corners pinned at 0 and 1: separation by exactly the
        // length is touching, not disjoint.
        let mut s = DifferenceSystem::new(3);
        s.at_most(0, 2, 0.0);
        s.at_most(2, 0, 0.0);
        s.at_most(1, 2, 1.0);
        s.at_most(2, 1, -1.0);
        assert!(s.is_feasible());
        s.less_than(0, 1, -1.0);
        assert!(!s.is_feasible());

        // A hair more room makes it feasible, and the witness is strict.
        let mut s = DifferenceSystem::new(3);
        s.at_most(0, 2, 0.0);
        s.at_most(2, 0, 0.0);
        s.at_most(1, 2, 1.0 + 2e-9);
        s.less_than(0, 1, -1.0);
        let x = s.solve().unwrap();
        assert!(x[1] - x[0] > 1.0);

        let tau = crate::geom::TAU_GEOM;
        assert_eq!(unit(&[[0.0, 0.0], [1.0 + 2.0 * tau, 0.0]]), 2);
        assert_eq!(unit(&[[0.0, 0.0], [1.0, 0.0]]), 1);
    }

    #[test]
    fn refuses_large_instances() {
        let rows: Vec<[f64; 2]> = (0..8).map(|i| [i as f64 * 3.0, 0.0]).collect();
        let p = PointSet::from_xy(&rows).unwrap();
        assert_eq!(
            opt_1ply_box_cover_size(&p, &[1.0, 1.0]),
            Err(Error::InstanceTooLarge { n: 8, limit: 7 })
        );
        let p4 = PointSet::from_rows(4, &[vec![0.0; 4]]).unwrap();
        assert_eq!(
            opt_1ply_box_cover_size(&p4, &[1.0; 4]),
            Err(Error::UnsupportedDimension(4))
        );
    }

    #[test]
    fn interval_examples() {
        assert_eq!(opt_interval_cover_size(&[], 1.0).unwrap(), 0);
        assert_eq!(opt_interval_cover_size(&[0.0, 0.5, 1.2], 1.0).unwrap(), 2);
        assert_eq!(opt_interval_cover_size(&[0.0, 1.0], 1.0).unwrap(), 1);
        assert!(opt_interval_cover_size(&[0.0; 1], 0.0).is_err());
        let many: Vec<f64> = (0..13).map(|i| i as f64).collect();
        assert!(opt_interval_cover_size(&many, 1.0).is_err());
    }

    #[test]
    fn one_dimension_agrees_with_interval_oracle() {
        for seed in 0..40u64 {
            let coords: Vec<f64> = (0..6)
                .map(|i| ((seed * 31 + i * 17) % 23) as f64 * 0.37)
                .collect();
            let rows: Vec<Vec<f64>> = coords.iter().map(|&c| vec![c]).collect();
            let p = PointSet::from_rows(1, &rows).unwrap();
            assert_eq!(
                opt_1ply_box_cover_size(&p, &[1.0]).unwrap(),
                opt_interval_cover_size(&coords, 1.0).unwrap()
            );
        }
    }

    #[test]
    fn far_set_examples() {
        let p = PointSet::from_xy(&[[0.0, 0.0], [1.8, 0.0]]).unwrap();
        assert_eq!(far_independent_set_lb(&p, Metric::Linf, 1.0).unwrap(), 2);
        let p = PointSet::from_xy(&[[0.0, 0.0], [0.5, 0.0]]).unwrap();
        assert_eq!(far_independent_set_lb(&p, Metric::Linf, 1.0).unwrap(), 1);
        let p = PointSet::from_xy(&[[0.0, 0.0], [2.0, 0.0], [4.0, 0.0], [0.0, 2.0], [2.0, 2.0]])
            .unwrap();
        assert_eq!(far_independent_set_lb(&p, Metric::L2, 1.0).unwrap(), 5);
        assert_eq!(
            far_independent_set_lb(&PointSet::empty(2), Metric::L2, 1.0).unwrap(),
            0
        );
    }

    #[test]
    fn restricted_growth_counts() {
        // Stirling numbers of the second kind S(5, k).
        let counts: Vec<usize> = (1..=5)
            .map(|k| partitions_with_blocks(5, k).len())
            .collect();
        assert_eq!(counts, vec![1, 15, 25, 10, 1]);
    }
}
