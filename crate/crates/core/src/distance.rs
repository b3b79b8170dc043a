//! Bottleneck and Wasserstein distances between persistence diagrams.
//!
//! The ground metric is the sup-norm on the plane; a point may also be
//! matched to the diagonal at cost `(death − birth) / 2`. Essential points
//! are only matched to essential points, at cost `|Δ birth|`; diagrams with
//! different numbers of essential points are infinitely far apart.

use crate::error::{Error, Result};
use crate::persistence::PersistenceDiagram;

/// One edge of an optimal matching. Indices refer to `points()` of the
/// first (`left`) and second (`right`) diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    Points { left: usize, right: usize },
    LeftToDiagonal(usize),
    DiagonalToRight(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagramDistanceReport {
    pub value: f64,
    /// Absent when the distance is infinite.
    pub matching: Option<Vec<Pairing>>,
}

fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn to_diagonal(a: (f64, f64)) -> f64 {
    (a.1 - a.0) / 2.0
}

/// Finite and essential parts of a diagram, as indices into `points()`.
fn split(d: &PersistenceDiagram) -> (Vec<usize>, Vec<usize>) {
    (0..d.len()).partition(|&i| d.points()[i].1.is_finite())
}

/// Diagonal-augmented cost matrix between the finite parts: rows are the
/// left points followed by one diagonal slot per right point, columns are
/// the right points followed by one diagonal slot per left point. `None`
/// marks a forbidden pairing.
struct Augmented {
    left: Vec<(f64, f64)>,
    right: Vec<(f64, f64)>,
}

impl Augmented {
    fn size(&self) -> usize {
        self.left.len() + self.right.len()
    }

    fn cost(&self, i: usize, j: usize) -> Option<f64> {
        let (n, m) = (self.left.len(), self.right.len());
        match (i < n, j < m) {
            (true, true) => Some(linf(self.left[i], self.right[j])),
            (true, false) => (j - m == i).then(|| to_diagonal(self.left[i])),
            (false, true) => (i - n == j).then(|| to_diagonal(self.right[j])),
            (false, false) => Some(0.0),
        }
    }

    fn pairings(&self, assignment: &[usize], left_idx: &[usize], right_idx: &[usize]) -> Vec<Pairing> {
        let (n, m) = (self.left.len(), self.right.len());
        assignment
            .iter()
            .enumerate()
            .filter_map(|(i, &j)| match (i < n, j < m) {
                (true, true) => Some(Pairing::Points {
                    left: left_idx[i],
                    right: right_idx[j],
                }),
                (true, false) => Some(Pairing::LeftToDiagonal(left_idx[i])),
                (false, true) => Some(Pairing::DiagonalToRight(right_idx[j])),
                (false, false) => None,
            })
            .collect()
    }
}

struct Prepared {
    aug: Augmented,
    left_idx: Vec<usize>,
    right_idx: Vec<usize>,
    /// Costs of the sorted essential-to-essential matching, with the pairs.
    essential: Vec<(f64, Pairing)>,
}

fn prepare(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Result<Option<Prepared>> {
    if d1.degree() != d2.degree() {
        return Err(Error::DegreeMismatch(d1.degree(), d2.degree()));
    }
    let (f1, e1) = split(d1);
    let (f2, e2) = split(d2);
    if e1.len() != e2.len() {
        return Ok(None);
    }
    // points() is sorted by birth, so the essential parts are already in
    // birth order; matching them in order is optimal for any convex cost
    let essential = e1
        .iter()
        .zip(&e2)
        .map(|(&i, &j)| {
            let c = (d1.points()[i].0 - d2.points()[j].0).abs();
            (c, Pairing::Points { left: i, right: j })
        })
        .collect();
    Ok(Some(Prepared {
        aug: Augmented {
            left: f1.iter().map(|&i| d1.points()[i]).collect(),
            right: f2.iter().map(|&j| d2.points()[j]).collect(),
        },
        left_idx: f1,
        right_idx: f2,
        essential,
    }))
}

/// Exact bottleneck distance: binary search over the finite set of
/// candidate costs, checking for a perfect matching at each threshold.
pub fn bottleneck(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Result<DiagramDistanceReport> {
    let Some(prep) = prepare(d1, d2)? else {
        return Ok(DiagramDistanceReport {
            value: f64::INFINITY,
            matching: None,
        });
    };
    let aug = &prep.aug;
    let size = aug.size();
    let mut candidates: Vec<f64> = vec![0.0];
    for i in 0..size {
        for j in 0..size {
            if let Some(c) = aug.cost(i, j) {
                candidates.push(c);
            }
        }
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let (mut lo, mut hi) = (0, candidates.len() - 1);
    let mut best = perfect_matching(aug, candidates[hi]).expect("the largest candidate admits every edge");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match perfect_matching(aug, candidates[mid]) {
            Some(m) => {
                best = m;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let finite = candidates[lo];
    let ess = prep.essential.iter().map(|e| e.0).fold(0.0, f64::max);
    let mut matching = aug.pairings(&best, &prep.left_idx, &prep.right_idx);
    matching.extend(prep.essential.iter().map(|e| e.1));
    Ok(DiagramDistanceReport {
        value: finite.max(ess),
        matching: Some(matching),
    })
}

/// Perfect matching using only edges of cost `≤ threshold` (Kuhn's
/// augmenting paths). Returns the column assigned to each row.
fn perfect_matching(aug: &Augmented, threshold: f64) -> Option<Vec<usize>> {
    let size = aug.size();
    let adj: Vec<Vec<usize>> = (0..size)
        .map(|i| {
            (0..size)
                .filter(|&j| aug.cost(i, j).is_some_and(|c| c <= threshold))
                .collect()
        })
        .collect();
    let mut row_of = vec![usize::MAX; size];
    for i in 0..size {
        let mut seen = vec![false; size];
        if !augment(i, &adj, &mut row_of, &mut seen) {
            return None;
        }
    }
    let mut col_of = vec![0; size];
    for (j, &i) in row_of.iter().enumerate() {
        col_of[i] = j;
    }
    Some(col_of)
}

fn augment(i: usize, adj: &[Vec<usize>], row_of: &mut [usize], seen: &mut [bool]) -> bool {
    for &j in &adj[i] {
        if seen[j] {
            continue;
        }
        seen[j] = true;
        if row_of[j] == usize::MAX || augment(row_of[j], adj, row_of, seen) {
            row_of[j] = i;
            return true;
        }
    }
    false
}

/// Exact p-Wasserstein distance: minimum-cost perfect matching (Hungarian
/// algorithm) on the diagonal-augmented cost matrix with costs `‖·‖_∞^p`.
pub fn wasserstein(d1: &PersistenceDiagram, d2: &PersistenceDiagram, p: f64) -> Result<DiagramDistanceReport> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidArgument(format!("p must be a finite value ≥ 1, got {p}")));
    }
    let Some(prep) = prepare(d1, d2)? else {
        return Ok(DiagramDistanceReport {
            value: f64::INFINITY,
            matching: None,
        });
    };
    let aug = &prep.aug;
    let size = aug.size();
    let mut finite_total = 0.0;
    let mut cost = vec![vec![0.0; size]; size];
    let mut forbidden = Vec::new();
    for (i, row) in cost.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            match aug.cost(i, j) {
                Some(c) => {
                    *slot = c.powf(p);
                    finite_total += *slot;
                }
                None => forbidden.push((i, j)),
            }
        }
    }
    // larger than any assignment that avoids forbidden cells
    let big = 2.0 * finite_total + 1.0;
    for (i, j) in forbidden {
        cost[i][j] = big;
    }
    let assignment = hungarian(&cost);
    let total: f64 = assignment.iter().enumerate().map(|(i, &j)| cost[i][j]).sum::<f64>()
        + prep.essential.iter().map(|e| e.0.powf(p)).sum::<f64>();
    let mut matching = aug.pairings(&assignment, &prep.left_idx, &prep.right_idx);
    matching.extend(prep.essential.iter().map(|e| e.1));
    Ok(DiagramDistanceReport {
        value: total.powf(1.0 / p),
        matching: Some(matching),
    })
}

/// Minimum-cost assignment for a square matrix (shortest augmenting path
/// with potentials, O(n³)). Returns the column assigned to each row.
fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    // 1-based: row_of[j] is the row matched to column j, 0 = free
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut col_of = vec![0; n];
    for j in 1..=n {
        col_of[row_of[j] - 1] = j - 1;
    }
    col_of
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: f64 = f64::INFINITY;

    fn dgm(points: &[(f64, f64)]) -> PersistenceDiagram {
        PersistenceDiagram::new(0, points.to_vec()).unwrap()
    }

    #[test]
    fn identical_diagrams() {
        let d = dgm(&[(0.0, 2.0), (1.0, 4.0), (0.5, INF)]);
        assert_eq!(bottleneck(&d, &d).unwrap().value, 0.0);
        assert_eq!(wasserstein(&d, &d, 2.0).unwrap().value, 0.0);
    }

    #[test]
    fn single_point_against_empty() {
        let a = dgm(&[(0.0, 2.0)]);
        let e = dgm(&[]);
        let r = bottleneck(&a, &e).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.matching.unwrap(), vec![Pairing::LeftToDiagonal(0)]);
        assert_eq!(wasserstein(&a, &e, 1.0).unwrap().value, 1.0);
    }

    #[test]
    fn essential_mismatch_is_infinite() {
        let a = dgm(&[(0.0, INF)]);
        let b = dgm(&[(0.0, INF), (1.0, INF)]);
        let r = bottleneck(&a, &b).unwrap();
        assert_eq!(r.value, INF);
        assert!(r.matching.is_none());
        assert_eq!(wasserstein(&a, &b, 1.0).unwrap().value, INF);
    }

    #[test]
    fn essential_births_are_matched_in_order() {
        let a = dgm(&[(0.0, INF), (5.0, INF)]);
        let b = dgm(&[(1.0, INF), (5.5, INF)]);
        assert_eq!(bottleneck(&a, &b).unwrap().value, 1.0);
        assert!((wasserstein(&a, &b, 1.0).unwrap().value - 1.5).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        let a = dgm(&[]);
        let b = PersistenceDiagram::empty(1);
        assert!(matches!(bottleneck(&a, &b), Err(Error::DegreeMismatch(0, 1))));
        assert!(wasserstein(&a, &a, 0.5).is_err());
        assert!(wasserstein(&a, &b, 1.0).is_err());
    }

    #[test]
    fn hungarian_small() {
        let c = vec![vec![4.0, 1.0, 3.0], vec![2.0, 0.0, 5.0], vec![3.0, 2.0, 2.0]];
        let a = hungarian(&c);
        let total: f64 = a.iter().enumerate().map(|(i, &j)| c[i][j]).sum();
        assert_eq!(total, 5.0);
    }
}
