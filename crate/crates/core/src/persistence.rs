//! Persistence diagrams of lower-star filtrations.
//!
//! Two routes are provided. [`pd0_union_find`] handles degree 0 with a
//! union–find pass over vertices and edges in filtration order, which is
//! near-linear in the size of the 1-skeleton. [`pd_reduction`] reduces the
//! Z/2 boundary matrix column by column (with clearing) and handles every
//! degree; its degree-0 output is identical to the union–find route.

use crate::complex::{xor_sorted, FiltrationValues, Shape};
use crate::error::{Error, Result};

/// Multiset of `(birth, death)` pairs in one homological degree; essential
/// classes have `death = +∞`. Points are kept sorted by `(birth, death)` and
/// zero-persistence pairs are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    degree: usize,
    points: Vec<(f64, f64)>,
}

impl PersistenceDiagram {
    /// Builds a diagram, dropping pairs with `death == birth`.
    pub fn new(degree: usize, points: Vec<(f64, f64)>) -> Result<Self> {
        for &(b, d) in &points {
            if !b.is_finite() || d.is_nan() || d < b {
                return Err(Error::InvalidArgument(format!("invalid diagram point ({b}, {d})")));
            }
        }
        Ok(Self::from_pairs(degree, points))
    }

    pub fn empty(degree: usize) -> Self {
        PersistenceDiagram {
            degree,
            points: Vec::new(),
        }
    }

    fn from_pairs(degree: usize, mut points: Vec<(f64, f64)>) -> Self {
        points.retain(|&(b, d)| d > b);
        points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        PersistenceDiagram { degree, points }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn essential_count(&self) -> usize {
        self.points.iter().filter(|p| p.1 == f64::INFINITY).count()
    }

    /// Shifts every birth and death by `offset`.
    pub fn translated(&self, offset: f64) -> Self {
        PersistenceDiagram {
            degree: self.degree,
            points: self.points.iter().map(|&(b, d)| (b + offset, d + offset)).collect(),
        }
    }
}

/// Union–find over vertex ids; each root remembers the filtration position
/// of the oldest vertex of its component.
struct Components {
    parent: Vec<u32>,
    rank: Vec<u8>,
    oldest: Vec<u32>,
}

impl Components {
    fn new(n: usize) -> Self {
        Components {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
            oldest: vec![u32::MAX; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    /// Merges two roots, returns the oldest position of the younger one.
    fn merge(&mut self, a: u32, b: u32) -> u32 {
        let (oa, ob) = (self.oldest[a as usize], self.oldest[b as usize]);
        let (survivor_age, younger_age) = if oa < ob { (oa, ob) } else { (ob, oa) };
        let (hi, lo) = if self.rank[a as usize] >= self.rank[b as usize] { (a, b) } else { (b, a) };
        self.parent[lo as usize] = hi;
        if self.rank[hi as usize] == self.rank[lo as usize] {
            self.rank[hi as usize] += 1;
        }
        self.oldest[hi as usize] = survivor_age;
        younger_age
    }
}

/// Degree-0 diagram by union–find with the elder rule: when an edge joins
/// two components, the one whose first vertex comes later in the filtration
/// order dies. Ties in value are broken by the `(dimension, id)` order.
pub fn pd0_union_find(shape: &Shape, filt: &FiltrationValues) -> PersistenceDiagram {
    let nv = shape.vertex_count();
    let order = filt.order();
    let mut uf = Components::new(nv);
    let mut pairs = Vec::new();
    for (pos, &cell) in order.iter().enumerate() {
        let cell = cell as usize;
        match shape.cell_dim(cell) {
            0 => uf.oldest[cell] = pos as u32,
            1 => {
                let vs = shape.cell_vertices(cell);
                let (ra, rb) = (uf.find(vs[0]), uf.find(vs[1]));
                if ra != rb {
                    let dying = uf.merge(ra, rb);
                    let birth = filt.value(order[dying as usize] as usize);
                    pairs.push((birth, filt.value(cell)));
                }
            }
            _ => {}
        }
    }
    for v in 0..nv as u32 {
        if uf.find(v) == v {
            let birth = filt.value(order[uf.oldest[v as usize] as usize] as usize);
            pairs.push((birth, f64::INFINITY));
        }
    }
    PersistenceDiagram::from_pairs(0, pairs)
}

/// Diagrams in degrees `0..=max_degree` by reduction of the boundary matrix
/// in filtration order. Dimensions are reduced from the top down so that
/// columns of cells already known to create a class can be skipped.
pub fn pd_reduction(
    shape: &Shape,
    filt: &FiltrationValues,
    max_degree: usize,
) -> Result<Vec<PersistenceDiagram>> {
    if shape.ambient_dim() > 0 && max_degree >= shape.ambient_dim() {
        return Err(Error::InvalidArgument(format!(
            "max_degree {max_degree} must be below the ambient dimension {}",
            shape.ambient_dim()
        )));
    }
    let order = filt.order();
    let n = order.len();
    let mut pos = vec![0u32; n];
    for (p, &c) in order.iter().enumerate() {
        pos[c as usize] = p as u32;
    }

    // pivot_column[row] = reduced column whose lowest entry is `row`
    let mut pivot_column: Vec<Option<Vec<u32>>> = vec![None; n];
    let mut creator = vec![false; n];
    let mut destroyer = vec![false; n];
    let mut pairs: Vec<Vec<(f64, f64)>> = vec![Vec::new(); max_degree + 1];

    for dim in (1..=max_degree + 1).rev() {
        for p in 0..n {
            let cell = order[p] as usize;
            if shape.cell_dim(cell) != dim || creator[p] {
                continue;
            }
            let mut col: Vec<u32> = shape.facets(cell).iter().map(|&f| pos[f as usize]).collect();
            col.sort_unstable();
            while let Some(&low) = col.last() {
                match &pivot_column[low as usize] {
                    Some(other) => col = xor_sorted(&col, other),
                    None => break,
                }
            }
            if let Some(&low) = col.last() {
                creator[low as usize] = true;
                destroyer[p] = true;
                let birth = filt.value(order[low as usize] as usize);
                pairs[dim - 1].push((birth, filt.value(cell)));
                pivot_column[low as usize] = Some(col);
            }
        }
    }
    for p in 0..n {
        let cell = order[p] as usize;
        let d = shape.cell_dim(cell);
        if d <= max_degree && !creator[p] && !destroyer[p] {
            pairs[d].push((filt.value(cell), f64::INFINITY));
        }
    }
    Ok(pairs
        .into_iter()
        .enumerate()
        .map(|(d, ps)| PersistenceDiagram::from_pairs(d, ps))
        .collect())
}
