//! Finite cell complexes with vertex coordinates.
//!
//! Cells are numbered dimension-major: ids `0..vertex_count` are the
//! vertices (cell `i` is vertex `i`), followed by edges, then squares or
//! triangles, then cubes. Each cell stores its vertex ids and the ids of its
//! codimension-one faces.
//!
//! Voxel grids become cubical complexes of closed unit cells, so two pixels
//! touching at a corner share that vertex. Triangle meshes become simplicial
//! complexes.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::grassmann::Flat;
use crate::linalg::norm;

/// Slack added to the slice threshold so that vertices at exactly `epsilon`
/// (pixel corners seen from the pixel centre) are not lost to rounding.
pub const SLICE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    Cubical,
    Simplicial,
}

/// Placement of the unit lattice a cubical complex was built on.
#[derive(Debug, Clone, PartialEq)]
struct Lattice {
    /// Grid extents in header order (`[H, W]` or `[D, H, W]`).
    dims: Vec<usize>,
    /// Coordinate of lattice point `0` on each axis `(x, y, z)`.
    origin: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct Shape {
    kind: CellKind,
    ambient_dim: usize,
    vertices: Vec<Vec<f64>>,
    dims: Vec<u8>,
    cell_vertices: Vec<Vec<u32>>,
    facets: Vec<Vec<u32>>,
    bounding_radius: f64,
    max_cell_diameter: f64,
    lattice: Option<Lattice>,
}

impl Shape {
    fn assemble(
        kind: CellKind,
        ambient_dim: usize,
        vertices: Vec<Vec<f64>>,
        dims: Vec<u8>,
        cell_vertices: Vec<Vec<u32>>,
        facets: Vec<Vec<u32>>,
        lattice: Option<Lattice>,
    ) -> Shape {
        let bounding_radius = vertices.iter().map(|v| norm(v)).fold(0.0, f64::max);
        let mut max_cell_diameter: f64 = 0.0;
        for cv in cell_vertices.iter().filter(|cv| cv.len() > 1) {
            for (i, &a) in cv.iter().enumerate() {
                for &b in &cv[i + 1..] {
                    let d = dist(&vertices[a as usize], &vertices[b as usize]);
                    max_cell_diameter = max_cell_diameter.max(d);
                }
            }
        }
        Shape {
            kind,
            ambient_dim,
            vertices,
            dims,
            cell_vertices,
            facets,
            bounding_radius,
            max_cell_diameter,
            lattice,
        }
    }

    /// Simplicial complex generated by the given simplices (all faces are
    /// added). Every vertex becomes a 0-cell even if no simplex uses it.
    pub fn from_simplices(vertices: Vec<Vec<f64>>, simplices: &[Vec<usize>]) -> Result<Shape> {
        let ambient_dim = vertices.first().map_or(0, Vec::len);
        if vertices.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::InvalidDimensions("vertices of mixed dimension".into()));
        }
        let nv = vertices.len();
        let mut faces: BTreeSet<(usize, Vec<u32>)> = BTreeSet::new();
        for s in simplices {
            let mut s: Vec<u32> = s.iter().map(|&i| i as u32).collect();
            s.sort_unstable();
            s.dedup();
            if s.iter().any(|&i| i as usize >= nv) {
                return Err(Error::InvalidArgument("simplex vertex out of range".into()));
            }
            let k = s.len();
            if k > ambient_dim + 1 {
                return Err(Error::InvalidDimensions(format!(
                    "{}-simplex in R^{ambient_dim}",
                    k - 1
                )));
            }
            for mask in 1u32..(1 << k) {
                let face: Vec<u32> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| s[b]).collect();
                if face.len() > 1 {
                    faces.insert((face.len() - 1, face));
                }
            }
        }
        let mut dims: Vec<u8> = vec![0; nv];
        let mut cell_vertices: Vec<Vec<u32>> = (0..nv as u32).map(|i| vec![i]).collect();
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        for (i, cv) in cell_vertices.iter().enumerate() {
            index.insert(cv.clone(), i as u32);
        }
        for (d, face) in faces {
            index.insert(face.clone(), cell_vertices.len() as u32);
            dims.push(d as u8);
            cell_vertices.push(face);
        }
        let facets = cell_vertices
            .iter()
            .map(|cv| {
                if cv.len() == 1 {
                    return Vec::new();
                }
                let mut f: Vec<u32> = (0..cv.len())
                    .map(|skip| {
                        let sub: Vec<u32> = cv
                            .iter()
                            .enumerate()
                            .filter(|&(j, _)| j != skip)
                            .map(|(_, &v)| v)
                            .collect();
                        index[&sub]
                    })
                    .collect();
                f.sort_unstable();
                f
            })
            .collect();
        Ok(Shape::assemble(
            CellKind::Simplicial,
            ambient_dim,
            vertices,
            dims,
            cell_vertices,
            facets,
            None,
        ))
    }

    pub fn kind(&self) -> CellKind {
        self.kind
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn cell_count(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn cell_dim(&self, cell: usize) -> usize {
        self.dims[cell] as usize
    }

    pub fn cell_vertices(&self, cell: usize) -> &[u32] {
        &self.cell_vertices[cell]
    }

    /// Codimension-one faces of a cell, as cell ids.
    pub fn facets(&self, cell: usize) -> &[u32] {
        &self.facets[cell]
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.dims.last().map(|&d| d as usize)
    }

    pub fn bounding_radius(&self) -> f64 {
        self.bounding_radius
    }

    pub fn max_cell_diameter(&self) -> f64 {
        self.max_cell_diameter
    }

    /// Number of cells of each dimension `0..=top_dim`.
    pub fn cell_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.top_dim().map_or(0, |d| d + 1)];
        for &d in &self.dims {
            counts[d as usize] += 1;
        }
        counts
    }

    /// Subcomplex of the cells flagged in `keep`, which must be closed under
    /// taking faces. Ids are renumbered but keep their relative order.
    pub fn subcomplex(&self, keep: &[bool]) -> Shape {
        assert_eq!(keep.len(), self.cell_count());
        let mut new_id = vec![u32::MAX; self.cell_count()];
        let mut next = 0u32;
        for (i, &k) in keep.iter().enumerate() {
            if k {
                new_id[i] = next;
                next += 1;
            }
        }
        let remap = |ids: &[u32]| -> Vec<u32> {
            ids.iter()
                .map(|&c| {
                    let n = new_id[c as usize];
                    debug_assert!(n != u32::MAX, "subcomplex is not closed");
                    n
                })
                .collect()
        };
        let mut vertices = Vec::new();
        let mut dims = Vec::new();
        let mut cell_vertices = Vec::new();
        let mut facets = Vec::new();
        for (i, &k) in keep.iter().enumerate() {
            if !k {
                continue;
            }
            if self.dims[i] == 0 {
                vertices.push(self.vertices[i].clone());
            }
            dims.push(self.dims[i]);
            cell_vertices.push(remap(&self.cell_vertices[i]));
            facets.push(remap(&self.facets[i]));
        }
        Shape::assemble(
            self.kind,
            self.ambient_dim,
            vertices,
            dims,
            cell_vertices,
            facets,
            self.lattice.clone(),
        )
    }

    /// True when every face of every cell is present and consistent.
    pub fn is_closed(&self) -> bool {
        (0..self.cell_count()).all(|c| {
            let d = self.dims[c];
            let expected_facets = match (d, self.kind) {
                (0, _) => 0,
                (_, CellKind::Cubical) => 2 * d as usize,
                (_, CellKind::Simplicial) => d as usize + 1,
            };
            let expected_vertices = match self.kind {
                CellKind::Cubical => 1usize << d,
                CellKind::Simplicial => d as usize + 1,
            };
            self.facets[c].len() == expected_facets
                && self.cell_vertices[c].len() == expected_vertices
                && (d as usize) <= self.ambient_dim
                && self.facets[c].iter().all(|&f| {
                    let f = f as usize;
                    f < c
                        && self.dims[f] + 1 == d
                        && self.cell_vertices[f]
                            .iter()
                            .all(|v| self.cell_vertices[c].contains(v))
                })
        })
    }

    /// Occupancy grid of a cubical complex built from a grid: the top cells
    /// present in this complex. `None` for simplicial complexes.
    pub fn to_grid(&self) -> Option<Grid> {
        let lattice = self.lattice.as_ref()?;
        let d = self.ambient_dim;
        let mut grid = Grid::empty(lattice.dims.clone()).ok()?;
        for c in 0..self.cell_count() {
            if self.dims[c] as usize != d {
                continue;
            }
            let corner: Vec<usize> = (0..d)
                .map(|axis| {
                    self.cell_vertices[c]
                        .iter()
                        .map(|&v| self.vertices[v as usize][axis])
                        .fold(f64::INFINITY, f64::min)
                })
                .zip(&lattice.origin)
                .map(|(x, o)| (x - o).round() as usize)
                .collect();
            // corner is (x, y[, z]); grid index is ([z,] y, x)
            let idx: Vec<usize> = corner.iter().rev().copied().collect();
            grid.set(&idx, true);
        }
        Some(grid)
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Binary occupancy grid in 2D (`[H, W]`) or 3D (`[D, H, W]`), row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    dims: Vec<usize>,
    cells: Vec<bool>,
}

impl Grid {
    pub fn empty(dims: Vec<usize>) -> Result<Grid> {
        if !(dims.len() == 2 || dims.len() == 3) || dims.contains(&0) {
            return Err(Error::InvalidDimensions(format!("bad grid extents {dims:?}")));
        }
        let len = dims.iter().product();
        Ok(Grid {
            dims,
            cells: vec![false; len],
        })
    }

    pub fn from_fn(dims: Vec<usize>, mut occupied: impl FnMut(&[usize]) -> bool) -> Result<Grid> {
        let mut g = Grid::empty(dims)?;
        for lin in 0..g.cells.len() {
            let idx = g.unflatten(lin);
            g.cells[lin] = occupied(&idx);
        }
        Ok(g)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn occupied_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    fn flatten(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i)
    }

    fn unflatten(&self, mut lin: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dims.len()];
        for (slot, &d) in idx.iter_mut().zip(&self.dims).rev() {
            *slot = lin % d;
            lin /= d;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> bool {
        self.cells[self.flatten(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: bool) {
        let lin = self.flatten(idx);
        self.cells[lin] = value;
    }

    /// Parses `grid H W` / `grid3 D H W` followed by rows of `0`/`1` tokens.
    /// A row may also be written as one unbroken token such as `0110`.
    pub fn parse(text: &str) -> Result<Grid> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing grid header".into(),
        })?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let expected_extents = match toks.first() {
            Some(&"grid") => 2,
            Some(&"grid3") => 3,
            _ => {
                return Err(Error::Parse {
                    line: hline,
                    message: format!("expected `grid H W` or `grid3 D H W`, got `{header}`"),
                })
            }
        };
        if toks.len() != expected_extents + 1 {
            return Err(Error::Parse {
                line: hline,
                message: format!("header needs {expected_extents} extents"),
            });
        }
        let dims: Vec<usize> = toks[1..]
            .iter()
            .map(|t| match t.parse::<usize>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(Error::Parse {
                    line: hline,
                    message: format!("bad extent `{t}`"),
                }),
            })
            .collect::<Result<_>>()?;
        let width = *dims.last().expect("extents");
        let rows = dims.iter().product::<usize>() / width;
        let mut cells = Vec::with_capacity(rows * width);
        let mut seen_rows = 0;
        for (line, row) in lines {
            let mut tokens: Vec<&str> = row.split_whitespace().collect();
            if tokens.len() == 1 && tokens[0].len() > 1 {
                tokens = (0..tokens[0].len()).map(|i| &row[i..i + 1]).collect();
            }
            if tokens.len() != width {
                return Err(Error::Parse {
                    line,
                    message: format!("row has {} entries, expected {width}", tokens.len()),
                });
            }
            if seen_rows == rows {
                return Err(Error::Parse {
                    line,
                    message: format!("more than {rows} rows"),
                });
            }
            for t in tokens {
                cells.push(match t {
                    "0" => false,
                    "1" => true,
                    other => {
                        return Err(Error::Parse {
                            line,
                            message: format!("expected 0 or 1, got `{other}`"),
                        })
                    }
                });
            }
            seen_rows += 1;
        }
        if seen_rows != rows {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("expected {rows} rows, found {seen_rows}"),
            });
        }
        Ok(Grid { dims, cells })
    }

    /// Cubical complex of the closed occupied cells, centred so that the
    /// centre of the grid's bounding box is the origin.
    pub fn to_shape(&self) -> Shape {
        let d = self.dims.len();
        // axis order (x, y, z) = (col, row, depth)
        let extent: Vec<usize> = self.dims.iter().rev().copied().collect();
        let kdims: Vec<usize> = extent.iter().map(|&s| 2 * s + 1).collect();
        let ktotal: usize = kdims.iter().product();
        let klin = |k: &[usize]| -> usize {
            (0..d).rev().fold(0, |acc, a| acc * kdims[a] + k[a])
        };
        let mut marked = vec![false; ktotal];
        for lin in 0..self.cells.len() {
            if !self.cells[lin] {
                continue;
            }
            let idx = self.unflatten(lin);
            let base: Vec<usize> = idx.iter().rev().map(|&i| 2 * i).collect();
            for offs in 0..3usize.pow(d as u32) {
                let mut k = base.clone();
                let mut o = offs;
                for slot in k.iter_mut() {
                    *slot += o % 3;
                    o /= 3;
                }
                marked[klin(&k)] = true;
            }
        }

        let kcoord = |mut lin: usize| -> Vec<usize> {
            let mut k = vec![0; d];
            for (a, slot) in k.iter_mut().enumerate() {
                *slot = lin % kdims[a];
                lin /= kdims[a];
            }
            k
        };
        let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); d + 1];
        for (lin, _) in marked.iter().enumerate().filter(|(_, &m)| m) {
            let k = kcoord(lin);
            let cd = k.iter().filter(|&&c| c % 2 == 1).count();
            by_dim[cd].push(lin);
        }
        let mut id_of = vec![u32::MAX; ktotal];
        let mut next = 0u32;
        for lins in &by_dim {
            for &lin in lins {
                id_of[lin] = next;
                next += 1;
            }
        }

        let origin: Vec<f64> = extent.iter().map(|&s| -(s as f64) / 2.0).collect();
        let mut vertices = Vec::with_capacity(by_dim[0].len());
        for &lin in &by_dim[0] {
            let k = kcoord(lin);
            vertices.push((0..d).map(|a| (k[a] / 2) as f64 + origin[a]).collect());
        }
        let mut dims = Vec::with_capacity(next as usize);
        let mut cell_vertices = Vec::with_capacity(next as usize);
        let mut facets = Vec::with_capacity(next as usize);
        for (cd, lins) in by_dim.iter().enumerate() {
            for &lin in lins {
                let k = kcoord(lin);
                let odd: Vec<usize> = (0..d).filter(|&a| k[a] % 2 == 1).collect();
                let mut cv = Vec::with_capacity(1 << cd);
                for mask in 0..(1usize << cd) {
                    let mut v = k.clone();
                    for (b, &a) in odd.iter().enumerate() {
                        if mask >> b & 1 == 1 {
                            v[a] += 1;
                        } else {
                            v[a] -= 1;
                        }
                    }
                    cv.push(id_of[klin(&v)]);
                }
                cv.sort_unstable();
                let mut fs = Vec::with_capacity(2 * cd);
                for &a in &odd {
                    for step in [-1isize, 1] {
                        let mut f = k.clone();
                        f[a] = (f[a] as isize + step) as usize;
                        fs.push(id_of[klin(&f)]);
                    }
                }
                fs.sort_unstable();
                dims.push(cd as u8);
                cell_vertices.push(cv);
                facets.push(fs);
            }
        }
        Shape::assemble(
            CellKind::Cubical,
            d,
            vertices,
            dims,
            cell_vertices,
            facets,
            Some(Lattice {
                dims: self.dims.clone(),
                origin,
            }),
        )
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.len() == 2 {
            writeln!(f, "grid {} {}", self.dims[0], self.dims[1])?;
        } else {
            writeln!(f, "grid3 {} {} {}", self.dims[0], self.dims[1], self.dims[2])?;
        }
        let width = self.dims[self.dims.len() - 1];
        for row in self.cells.chunks(width) {
            let tokens: Vec<&str> = row.iter().map(|&c| if c { "1" } else { "0" }).collect();
            writeln!(f, "{}", tokens.join(" "))?;
        }
        Ok(())
    }
}

pub fn load_grid(text: &str) -> Result<Shape> {
    Ok(Grid::parse(text)?.to_shape())
}

/// Triangle mesh in the OFF subset: `OFF`, `V F E`, vertex lines, `3 i j k`
/// face lines. Coordinates are recentred on the vertex centroid.
pub fn load_off(text: &str) -> Result<Shape> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing OFF header".into(),
    })?;
    let mut header_rest: Vec<&str> = header.split_whitespace().collect();
    if header_rest.first() != Some(&"OFF") {
        return Err(Error::Parse {
            line: hline,
            message: "expected `OFF`".into(),
        });
    }
    header_rest.remove(0);
    let (cline, counts) = if header_rest.is_empty() {
        let (l, c) = lines.next().ok_or(Error::Parse {
            line: hline + 1,
            message: "missing counts line".into(),
        })?;
        (l, c.split_whitespace().collect::<Vec<_>>())
    } else {
        (hline, header_rest)
    };
    let parse_count = |t: Option<&&str>| -> Result<usize> {
        t.and_then(|t| t.parse().ok()).ok_or(Error::Parse {
            line: cline,
            message: "bad counts line".into(),
        })
    };
    let nv = parse_count(counts.first())?;
    let nf = parse_count(counts.get(1))?;

    let mut vertices: Vec<Vec<f64>> = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (line, l) = lines.next().ok_or(Error::Parse {
            line: cline,
            message: "missing vertex lines".into(),
        })?;
        let coords: Vec<f64> = l
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse {
                line,
                message: format!("bad vertex `{l}`"),
            })?;
        if coords.len() != 3 || coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Parse {
                line,
                message: "vertex needs three finite coordinates".into(),
            });
        }
        vertices.push(coords);
    }
    let mut triangles = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (line, l) = lines.next().ok_or(Error::Parse {
            line: cline,
            message: "missing face lines".into(),
        })?;
        let toks: Vec<usize> = l
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse {
                line,
                message: format!("bad face `{l}`"),
            })?;
        if toks.first() != Some(&3) || toks.len() < 4 {
            return Err(Error::Parse {
                line,
                message: "only triangular faces are supported".into(),
            });
        }
        let tri = toks[1..4].to_vec();
        if tri.iter().any(|&i| i >= nv) {
            return Err(Error::Parse {
                line,
                message: format!("face index out of range (V = {nv})"),
            });
        }
        triangles.push(tri);
    }
    if nv > 0 {
        let mut c = [0.0; 3];
        for v in &vertices {
            for a in 0..3 {
                c[a] += v[a] / nv as f64;
            }
        }
        for v in &mut vertices {
            for a in 0..3 {
                v[a] -= c[a];
            }
        }
    }
    Shape::from_simplices(vertices, &triangles)
}

/// Cell values and the filtration order sorted by `(value, dimension, id)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiltrationValues {
    values: Vec<f64>,
    order: Vec<u32>,
}

impl FiltrationValues {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, cell: usize) -> f64 {
        self.values[cell]
    }

    /// Cell ids in filtration order.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    /// Flags for the cells with value `≤ r`.
    pub fn sublevel(&self, r: f64) -> Vec<bool> {
        self.values.iter().map(|&v| v <= r).collect()
    }
}

/// Extends vertex values to cells by the maximum over each cell's vertices.
pub fn lower_star(shape: &Shape, vertex_values: &[f64]) -> Result<FiltrationValues> {
    if vertex_values.len() != shape.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: shape.vertex_count(),
            got: vertex_values.len(),
        });
    }
    if vertex_values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("vertex values must be finite".into()));
    }
    let values: Vec<f64> = shape
        .cell_vertices
        .iter()
        .map(|cv| {
            cv.iter()
                .map(|&v| vertex_values[v as usize])
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    // ids are dimension-major, so (value, id) already orders by (value, dim, id)
    let mut order: Vec<u32> = (0..values.len() as u32).collect();
    order.sort_by(|&a, &b| values[a as usize].total_cmp(&values[b as usize]).then(a.cmp(&b)));
    Ok(FiltrationValues { values, order })
}

pub fn lower_star_with(shape: &Shape, f: impl Fn(&[f64]) -> f64) -> Result<FiltrationValues> {
    let vals: Vec<f64> = shape.vertices.iter().map(|v| f(v)).collect();
    lower_star(shape, &vals)
}

fn check_flat(shape: &Shape, flat: &Flat) -> Result<()> {
    if flat.ambient_dim() != shape.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: shape.ambient_dim(),
            got: flat.ambient_dim(),
        });
    }
    Ok(())
}

pub fn flat_distances(shape: &Shape, flat: &Flat) -> Result<Vec<f64>> {
    check_flat(shape, flat)?;
    Ok(shape.vertices.iter().map(|v| flat.distance_to(v)).collect())
}

/// Lower-star filtration of the distance to `flat`.
pub fn flat_filtration(shape: &Shape, flat: &Flat) -> Result<FiltrationValues> {
    lower_star(shape, &flat_distances(shape, flat)?)
}

/// Half the largest cell diameter: the default slice thickness.
pub fn default_epsilon(shape: &Shape) -> f64 {
    shape.max_cell_diameter() / 2.0
}

/// Cells of the `epsilon`-sublevel complex of the distance to `flat`, the
/// combinatorial stand-in for `shape ∩ flat`.
pub fn slice_mask(shape: &Shape, flat: &Flat, epsilon: f64) -> Result<Vec<bool>> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    let d = flat_distances(shape, flat)?;
    Ok(shape
        .cell_vertices
        .iter()
        .map(|cv| cv.iter().all(|&v| d[v as usize] <= epsilon + SLICE_TOL))
        .collect())
}

pub fn slice(shape: &Shape, flat: &Flat, epsilon: f64) -> Result<Shape> {
    Ok(shape.subcomplex(&slice_mask(shape, flat, epsilon)?))
}

pub fn euler_characteristic(shape: &Shape) -> i64 {
    shape
        .dims
        .iter()
        .map(|&d| if d % 2 == 0 { 1 } else { -1 })
        .sum()
}

/// Betti numbers `β_0..=β_max_degree` over the two-element field, from the
/// ranks of the boundary matrices.
pub fn betti(shape: &Shape, max_degree: usize) -> Vec<usize> {
    let counts = shape.cell_counts();
    let count = |k: usize| counts.get(k).copied().unwrap_or(0);
    let ranks: Vec<usize> = (0..=max_degree + 1)
        .map(|k| if k == 0 { 0 } else { boundary_rank(shape, k) })
        .collect();
    (0..=max_degree)
        .map(|k| count(k) - ranks[k] - ranks[k + 1])
        .collect()
}

/// Rank over Z/2 of the boundary map from k-cells to (k−1)-cells.
fn boundary_rank(shape: &Shape, k: usize) -> usize {
    let mut owner: HashMap<u32, Vec<u32>> = HashMap::new();
    let mut rank = 0;
    for c in (0..shape.cell_count()).filter(|&c| shape.cell_dim(c) == k) {
        let mut col = shape.facets[c].clone();
        while let Some(&low) = col.last() {
            match owner.get(&low) {
                Some(other) => col = xor_sorted(&col, other),
                None => {
                    owner.insert(low, col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Symmetric difference of two ascending id lists.
pub(crate) fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
