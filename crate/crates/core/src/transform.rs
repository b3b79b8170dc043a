//! The distance-from-flat transform and the checks built on top of it.
//!
//! A scan evaluates, for every flat `P` in a list, the persistence diagrams
//! of the lower-star filtration of `x ↦ dist(x, P)` in degrees `0..=K`
//! (by default `K = m − 1` for m-flats), together with the Euler curve of
//! that filtration and the Euler characteristic of the thin slice around
//! `P`.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complex::{
    betti, default_epsilon, euler_characteristic, flat_distances, flat_filtration, lower_star, slice,
    FiltrationValues, Grid, Shape, SLICE_TOL,
};
use crate::distance::bottleneck;
use crate::error::{Error, Result};
use crate::grassmann::{affine_distance, canonicalize, plane_rotation, Flat};
use crate::linalg::{dot, norm};
use crate::persistence::{pd0_union_find, pd_reduction, PersistenceDiagram};

// ---------------------------------------------------------------------------
// Euler characteristics of Grassmannians

fn binomial(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn check_k_n(k: usize, n: usize) -> Result<()> {
    if k > n {
        return Err(Error::InvalidDimensions(format!("need 0 ≤ k ≤ n, got k={k}, n={n}")));
    }
    Ok(())
}

/// Euler characteristic of `Gr(k, n)`: zero when `n` is even and `k` odd,
/// otherwise `C(⌊n/2⌋, ⌊k/2⌋)`.
pub fn chi_grassmannian(k: usize, n: usize) -> Result<i64> {
    check_k_n(k, n)?;
    if n.is_multiple_of(2) && k % 2 == 1 {
        return Ok(0);
    }
    Ok(binomial((n / 2) as u64, (k / 2) as u64))
}

/// Same quantity from the cell recursion
/// `χ(Gr(k,n)) = χ(Gr(k−1,n−1)) + (−1)^k χ(Gr(k,n−1))`,
/// with `χ(Gr(0,n)) = χ(Gr(n,n)) = 1`.
pub fn chi_grassmannian_recursive(k: usize, n: usize) -> Result<i64> {
    check_k_n(k, n)?;
    let mut row = vec![1i64];
    for nn in 1..=n {
        let mut next = vec![1i64; nn + 1];
        for kk in 1..nn {
            let sign = if kk % 2 == 0 { 1 } else { -1 };
            next[kk] = row[kk - 1] + sign * row[kk];
        }
        row = next;
    }
    Ok(row[k])
}

/// Parity case of the pair `(m, n)` in the injectivity argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiCase {
    /// `m = 0`: flats are points.
    Points,
    /// `n` even, `m` odd.
    EvenOdd,
    /// `n` odd, `m` even.
    OddEven,
    /// both even.
    EvenEven,
    /// both odd: `χ₁ = χ₂`, settled by slicing with hyperplanes instead.
    OddOdd,
}

impl ChiCase {
    pub fn tag(self) -> &'static str {
        match self {
            ChiCase::Points => "m0",
            ChiCase::EvenOdd => "2.1",
            ChiCase::OddEven => "2.2",
            ChiCase::EvenEven => "2.3",
            ChiCase::OddOdd => "2.4",
        }
    }
}

/// `χ₁` is the Euler characteristic of the flats through one point,
/// `χ₂` of the flats through two distinct points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChiPair {
    pub m: usize,
    pub n: usize,
    pub chi1: i64,
    pub chi2: i64,
    pub case: ChiCase,
}

impl ChiPair {
    /// For both-even pairs, `χ₁ = (n/2)/(m/2) · χ₂`; trivially true otherwise.
    pub fn ratio_identity_holds(&self) -> bool {
        match self.case {
            ChiCase::EvenEven => self.chi1 * (self.m / 2) as i64 == (self.n / 2) as i64 * self.chi2,
            _ => true,
        }
    }
}

pub fn chi_pair(m: usize, n: usize) -> Result<ChiPair> {
    if m >= n {
        return Err(Error::InvalidDimensions(format!("need 0 ≤ m < n, got m={m}, n={n}")));
    }
    let chi1 = chi_grassmannian(m, n)?;
    let (chi2, case) = if m == 0 {
        (0, ChiCase::Points)
    } else {
        let case = match (n % 2, m % 2) {
            (0, 1) => ChiCase::EvenOdd,
            (1, 0) => ChiCase::OddEven,
            (0, 0) => ChiCase::EvenEven,
            _ => ChiCase::OddOdd,
        };
        (chi_grassmannian(m - 1, n - 1)?, case)
    };
    let pair = ChiPair {
        m,
        n,
        chi1,
        chi2,
        case,
    };
    debug_assert!(pair.ratio_identity_holds());
    Ok(pair)
}

// ---------------------------------------------------------------------------
// Scans

/// Euler characteristic of each sublevel complex, as a right-continuous
/// step function: `(r, χ)` at every distinct filtration value `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerCurve(pub Vec<(f64, i64)>);

impl EulerCurve {
    pub fn breakpoints(&self) -> &[(f64, i64)] {
        &self.0
    }

    /// χ of the sublevel set at `r` (0 below the first breakpoint).
    pub fn value_at(&self, r: f64) -> i64 {
        match self.0.partition_point(|&(x, _)| x <= r) {
            0 => 0,
            i => self.0[i - 1].1,
        }
    }

    pub fn final_value(&self) -> i64 {
        self.0.last().map_or(0, |p| p.1)
    }
}

pub fn euler_curve(shape: &Shape, filt: &FiltrationValues) -> EulerCurve {
    let order = filt.order();
    let mut chi = 0i64;
    let mut points = Vec::new();
    for (i, &c) in order.iter().enumerate() {
        let c = c as usize;
        chi += if shape.cell_dim(c).is_multiple_of(2) { 1 } else { -1 };
        let v = filt.value(c);
        let last_at_value = order.get(i + 1).is_none_or(|&next| filt.value(next as usize) != v);
        if last_at_value {
            points.push((v, chi));
        }
    }
    EulerCurve(points)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlatRecord {
    pub flat: Flat,
    /// Degrees `0..=K`.
    pub diagrams: Vec<PersistenceDiagram>,
    pub euler_curve: Option<EulerCurve>,
    pub slice_chi: Option<i64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DphtResult {
    pub shape_id: String,
    pub m: usize,
    pub records: Vec<FlatRecord>,
}

impl DphtResult {
    pub fn flats(&self) -> impl Iterator<Item = &Flat> {
        self.records.iter().map(|r| &r.flat)
    }

    pub fn total_points(&self) -> usize {
        self.records
            .iter()
            .flat_map(|r| &r.diagrams)
            .map(PersistenceDiagram::len)
            .sum()
    }
}

/// Highest degree computed by default for m-flats: `m − 1`, or 0 for points.
pub fn default_max_degree(m: usize) -> usize {
    m.saturating_sub(1)
}

/// Scans `shape` with every flat in `flats` (all of dimension `m`).
///
/// `max_degree` defaults to `m − 1`; `epsilon` is the slice thickness used
/// for `slice_chi` and defaults to half the largest cell diameter. Flats are
/// processed in parallel and the output keeps the input order.
pub fn dpht_scan(
    shape: &Shape,
    m: usize,
    flats: &[Flat],
    max_degree: Option<usize>,
    epsilon: Option<f64>,
) -> Result<DphtResult> {
    let n = shape.ambient_dim();
    if m >= n {
        return Err(Error::InvalidDimensions(format!("m = {m} must be below n = {n}")));
    }
    for f in flats {
        if f.ambient_dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: f.ambient_dim(),
            });
        }
        if f.flat_dim() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: f.flat_dim(),
            });
        }
    }
    let k = match max_degree {
        Some(k) => k,
        None => {
            if m == 0 {
                log::warn!("point flats have no truncation degree; computing degree 0");
            }
            default_max_degree(m)
        }
    };
    if k >= n {
        return Err(Error::InvalidArgument(format!("max degree {k} must be below {n}")));
    }
    let eps = epsilon.unwrap_or_else(|| default_epsilon(shape));
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
    }

    let records = flats
        .par_iter()
        .map(|flat| -> Result<FlatRecord> {
            let filt = flat_filtration(shape, flat)?;
            let diagrams = if k == 0 {
                vec![pd0_union_find(shape, &filt)]
            } else {
                pd_reduction(shape, &filt, k)?
            };
            let slice_chi = (0..shape.cell_count())
                .filter(|&c| filt.value(c) <= eps + SLICE_TOL)
                .map(|c| if shape.cell_dim(c).is_multiple_of(2) { 1 } else { -1 })
                .sum();
            Ok(FlatRecord {
                flat: flat.clone(),
                diagrams,
                euler_curve: Some(euler_curve(shape, &filt)),
                slice_chi: Some(slice_chi),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DphtResult {
        shape_id: String::new(),
        m,
        records,
    })
}

/// `χ(X ∩ P)` approximated by the Euler characteristic of the slice.
pub fn radon_chi(shape: &Shape, flat: &Flat, epsilon: f64) -> Result<i64> {
    Ok(euler_characteristic(&slice(shape, flat, epsilon)?))
}

/// `Σ_{k<m} (−1)^k β_k` of the slice: the slice Euler characteristic
/// rebuilt from degrees below the flat dimension only.
pub fn betti_slice_euler(shape: &Shape, flat: &Flat, m: usize, epsilon: f64) -> Result<i64> {
    if m == 0 {
        return Ok(0);
    }
    let s = slice(shape, flat, epsilon)?;
    Ok(betti(&s, m - 1)
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum())
}

// ---------------------------------------------------------------------------
// Injectivity probe

/// All distinct lines through two distinct pixel centres of a `size × size`
/// grid, in the centred coordinates used by [`Grid::to_shape`].
pub fn pixel_center_lines(size: usize) -> Vec<Flat> {
    let centre = |i: usize| i as f64 + 0.5 - size as f64 / 2.0;
    let pixels: Vec<(i64, i64)> = (0..size as i64)
        .flat_map(|r| (0..size as i64).map(move |c| (c, r)))
        .collect();
    let mut keys = std::collections::BTreeSet::new();
    let mut lines = Vec::new();
    for (a, &(x1, y1)) in pixels.iter().enumerate() {
        for &(x2, y2) in &pixels[a + 1..] {
            let (mut dx, mut dy) = (x2 - x1, y2 - y1);
            let g = gcd(dx.abs(), dy.abs());
            dx /= g;
            dy /= g;
            if dx < 0 || (dx == 0 && dy < 0) {
                dx = -dx;
                dy = -dy;
            }
            // line: dy·x − dx·y = c
            let c = dy * x1 - dx * y1;
            if keys.insert((dx, dy, c)) {
                let p = [centre(x1 as usize), centre(y1 as usize)];
                lines.push(Flat::line(&[dx as f64, dy as f64], &p).expect("non-zero direction"));
            }
        }
    }
    lines
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Slice Euler characteristics of `shape` along each flat.
pub fn slice_chi_vector(shape: &Shape, flats: &[Flat], epsilon: f64) -> Result<Vec<i64>> {
    flats
        .iter()
        .map(|f| {
            let d = flat_distances(shape, f)?;
            Ok((0..shape.cell_count())
                .filter(|&c| shape.cell_vertices(c).iter().all(|&v| d[v as usize] <= epsilon + SLICE_TOL))
                .map(|c| if shape.cell_dim(c).is_multiple_of(2) { 1i64 } else { -1 })
                .sum())
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct InjectivityReport {
    pub grid_size: usize,
    pub line_count: usize,
    pub pairs: usize,
    pub distinguished: usize,
}

impl InjectivityReport {
    pub fn fraction(&self) -> f64 {
        self.distinguished as f64 / self.pairs as f64
    }
}

/// Slice thickness for pixel grids: half the pixel diagonal.
pub fn pixel_epsilon() -> f64 {
    2f64.sqrt() / 2.0
}

/// True when some line through two pixel centres sees different slice
/// Euler characteristics in the two grids.
pub fn distinguishes(a: &Grid, b: &Grid, lines: &[Flat]) -> Result<bool> {
    let va = slice_chi_vector(&a.to_shape(), lines, pixel_epsilon())?;
    let vb = slice_chi_vector(&b.to_shape(), lines, pixel_epsilon())?;
    Ok(va != vb)
}

pub fn random_grid<R: Rng>(rng: &mut R, size: usize) -> Grid {
    Grid::from_fn(vec![size, size], |_| rng.random_bool(0.5)).expect("positive size")
}

/// Draws `pair_count` pairs of distinct random binary grids and counts the
/// pairs whose slice-χ vectors over [`pixel_center_lines`] differ.
pub fn injectivity_probe(grid_size: usize, pair_count: usize, seed: u64) -> Result<InjectivityReport> {
    if grid_size == 0 || grid_size > 6 {
        return Err(Error::InvalidArgument(format!("grid_size must be in 1..=6, got {grid_size}")));
    }
    if pair_count == 0 {
        return Err(Error::InvalidArgument("pair_count must be ≥ 1".into()));
    }
    let lines = pixel_center_lines(grid_size);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(Grid, Grid)> = (0..pair_count)
        .map(|_| {
            let a = random_grid(&mut rng, grid_size);
            let mut b = random_grid(&mut rng, grid_size);
            while b == a {
                b = random_grid(&mut rng, grid_size);
            }
            (a, b)
        })
        .collect();
    let results = pairs
        .par_iter()
        .map(|(a, b)| distinguishes(a, b, &lines))
        .collect::<Result<Vec<bool>>>()?;
    Ok(InjectivityReport {
        grid_size,
        line_count: lines.len(),
        pairs: pair_count,
        distinguished: results.iter().filter(|&&d| d).count(),
    })
}

// ---------------------------------------------------------------------------
// Continuity and stability probes

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityStep {
    pub affine_distance: f64,
    /// `max_v |f_Q(v) − f_P(v)|` over the vertices of the shape.
    pub sup_gap: f64,
    /// Bottleneck distance between the degree-0 diagrams.
    pub bottleneck: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityReport {
    pub steps: Vec<ContinuityStep>,
    /// Steps where `bottleneck > sup_gap + 1e-9`.
    pub stability_violations: usize,
    pub tolerance: f64,
}

impl ContinuityReport {
    pub fn final_bottleneck(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.bottleneck)
    }

    pub fn converged(&self) -> bool {
        self.final_bottleneck() < self.tolerance
    }

    pub fn bottleneck_non_increasing(&self) -> bool {
        self.steps.windows(2).all(|w| w[1].bottleneck <= w[0].bottleneck)
    }
}

/// Compares the degree-0 diagram of `P` with that of each flat in
/// `schedule`, reporting the flat distance, the sup-norm gap of the two
/// distance functions and the bottleneck distance.
pub fn continuity_probe(shape: &Shape, p: &Flat, schedule: &[Flat], tolerance: f64) -> Result<ContinuityReport> {
    let fp = flat_distances(shape, p)?;
    let dp = pd0_union_find(shape, &lower_star(shape, &fp)?);
    let steps = schedule
        .par_iter()
        .map(|q| -> Result<ContinuityStep> {
            let fq = flat_distances(shape, q)?;
            let dq = pd0_union_find(shape, &lower_star(shape, &fq)?);
            Ok(ContinuityStep {
                affine_distance: affine_distance(q, p)?,
                sup_gap: fp.iter().zip(&fq).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max),
                bottleneck: bottleneck(&dq, &dp)?.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let stability_violations = steps.iter().filter(|s| s.bottleneck > s.sup_gap + 1e-9).count();
    Ok(ContinuityReport {
        steps,
        stability_violations,
        tolerance,
    })
}

/// `P` rotated about `pivot` in the first coordinate plane by
/// `π/2 · 2^{−k}` for `k = 1..=steps`.
pub fn rotation_schedule(p: &Flat, pivot: &[f64], steps: u32) -> Result<Vec<Flat>> {
    let n = p.ambient_dim();
    if n < 2 {
        return Err(Error::InvalidDimensions("rotation needs n ≥ 2".into()));
    }
    (1..=steps)
        .map(|k| p.rotated_about(&plane_rotation(n, 0, 1, FRAC_PI_2 / 2f64.powi(k as i32)), pivot))
        .collect()
}

/// `P` translated by `2^{−k}` along the unit vector `direction`, `k = 1..=steps`.
pub fn translation_schedule(p: &Flat, direction: &[f64], steps: u32) -> Result<Vec<Flat>> {
    let dn = norm(direction);
    if dn == 0.0 {
        return Err(Error::InvalidArgument("zero translation direction".into()));
    }
    (1..=steps)
        .map(|k| {
            let s = 0.5f64.powi(k as i32) / dn;
            let offset: Vec<f64> = direction.iter().map(|d| d * s).collect();
            p.translated(&offset)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstabilityReport {
    /// Bottleneck distance in each degree `0..n`.
    pub bottleneck: Vec<f64>,
    pub essential_a: Vec<usize>,
    pub essential_b: Vec<usize>,
}

/// Bottleneck distances between the diagrams of two shapes filtered by the
/// same flat, in every degree below the ambient dimension.
pub fn instability_demo(a: &Shape, b: &Shape, p: &Flat) -> Result<InstabilityReport> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            got: b.ambient_dim(),
        });
    }
    let top = a.ambient_dim() - 1;
    let da = pd_reduction(a, &flat_filtration(a, p)?, top)?;
    let db = pd_reduction(b, &flat_filtration(b, p)?, top)?;
    let bottleneck = da
        .iter()
        .zip(&db)
        .map(|(x, y)| super::distance::bottleneck(x, y).map(|r| r.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(InstabilityReport {
        bottleneck,
        essential_a: da.iter().map(PersistenceDiagram::essential_count).collect(),
        essential_b: db.iter().map(PersistenceDiagram::essential_count).collect(),
    })
}

/// Lower-star filtration of the height `x ↦ v·x`.
pub fn height_filtration(shape: &Shape, v: &[f64]) -> Result<FiltrationValues> {
    if v.len() != shape.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: shape.ambient_dim(),
            got: v.len(),
        });
    }
    let vals: Vec<f64> = shape.vertices().iter().map(|x| dot(v, x)).collect();
    lower_star(shape, &vals)
}

/// Hyperplane with unit normal `v` at signed offset `offset` (the points
/// with `v·x = offset`).
pub fn hyperplane(v: &[f64], offset: f64) -> Result<Flat> {
    let n = v.len();
    let vn = norm(v);
    if vn == 0.0 {
        return Err(Error::InvalidArgument("zero normal".into()));
    }
    let unit: Vec<f64> = v.iter().map(|x| x / vn).collect();
    // complete the normal to a basis and keep the complement
    let mut basis = Vec::with_capacity(n - 1);
    for axis in 0..n {
        if basis.len() == n - 1 {
            break;
        }
        let mut e = vec![0.0; n];
        e[axis] = 1.0;
        let mut w = e.clone();
        for q in std::iter::once(&unit).chain(basis.iter()) {
            let c = dot(&w, q);
            for (wi, qi) in w.iter_mut().zip(q) {
                *wi -= c * qi;
            }
        }
        let wn = norm(&w);
        if wn > 1e-6 {
            basis.push(w.iter().map(|x| x / wn).collect::<Vec<f64>>());
        }
    }
    let point: Vec<f64> = unit.iter().map(|x| x * offset).collect();
    canonicalize(&basis, &point)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeightComparison {
    /// Offset `M` (the bounding radius) of the tangent hyperplane.
    pub offset: f64,
    pub height: PersistenceDiagram,
    pub tangent: PersistenceDiagram,
    /// Bottleneck distance between `height` shifted by `M` and `tangent`.
    pub shift_error: f64,
    /// Degree-0 point count for the hyperplane through the origin normal to `v`.
    pub central_count: usize,
}

/// Compares the height filtration along `v` with the distance to the
/// hyperplane normal to `v` lying below the shape at offset `M`, and with
/// the distance to the parallel hyperplane through the origin.
pub fn hpht_vs_cpht_demo(shape: &Shape, v: &[f64]) -> Result<HeightComparison> {
    let vn = norm(v);
    let unit: Vec<f64> = v.iter().map(|x| x / vn).collect();
    let m_off = shape.bounding_radius();
    let height = pd0_union_find(shape, &height_filtration(shape, &unit)?);
    let tangent_plane = hyperplane(&unit, -m_off)?;
    let tangent = pd0_union_find(shape, &flat_filtration(shape, &tangent_plane)?);
    let central = pd0_union_find(shape, &flat_filtration(shape, &hyperplane(&unit, 0.0)?)?);
    let shift_error = bottleneck(&height.translated(m_off), &tangent)?.value;
    Ok(HeightComparison {
        offset: m_off,
        height,
        tangent,
        shift_error,
        central_count: central.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::load_grid;

    #[test]
    fn chi_examples() {
        assert_eq!(chi_grassmannian(1, 2).unwrap(), 0);
        for n in 0..8 {
            assert_eq!(chi_grassmannian(0, n).unwrap(), 1);
            assert_eq!(chi_grassmannian(n, n).unwrap(), 1);
        }
        assert_eq!(chi_grassmannian(2, 4).unwrap(), 2);
        assert_eq!(chi_grassmannian_recursive(2, 4).unwrap(), 2);
        assert!(chi_grassmannian(3, 2).is_err());
        assert!(chi_grassmannian_recursive(3, 2).is_err());
    }

    #[test]
    fn chi_pair_examples() {
        let p = chi_pair(1, 2).unwrap();
        assert_eq!((p.chi1, p.chi2, p.case.tag()), (0, 1, "2.1"));
        let p = chi_pair(2, 3).unwrap();
        assert_eq!((p.chi1, p.chi2, p.case.tag()), (1, 0, "2.2"));
        let p = chi_pair(1, 3).unwrap();
        assert_eq!((p.chi1, p.chi2, p.case.tag()), (1, 1, "2.4"));
        let p = chi_pair(0, 5).unwrap();
        assert_eq!((p.chi1, p.chi2, p.case.tag()), (1, 0, "m0"));
        let p = chi_pair(2, 6).unwrap();
        assert_eq!((p.chi1, p.chi2, p.case.tag()), (3, 1, "2.3"));
        assert!(chi_pair(3, 3).is_err());
    }

    #[test]
    fn euler_curve_of_two_squares_ends_at_two() {
        let s = load_grid("grid 1 3\n1 0 1\n").unwrap();
        let flat = Flat::line(&[0.3, 1.0], &[0.2, 0.0]).unwrap();
        let curve = euler_curve(&s, &flat_filtration(&s, &flat).unwrap());
        assert_eq!(curve.final_value(), 2);
        assert!(curve.breakpoints().windows(2).all(|w| w[0].0 < w[1].0));
        assert_eq!(curve.value_at(-1.0), 0);
    }

    #[test]
    fn empty_flat_list() {
        let s = load_grid("grid 1 1\n1\n").unwrap();
        let r = dpht_scan(&s, 1, &[], None, None).unwrap();
        assert!(r.records.is_empty());
    }

    #[test]
    fn scan_validates_flats() {
        let s = load_grid("grid 1 1\n1\n").unwrap();
        let pt = Flat::point(&[0.0, 0.0]).unwrap();
        assert!(dpht_scan(&s, 1, std::slice::from_ref(&pt), None, None).is_err());
        assert!(dpht_scan(&s, 2, &[], None, None).is_err());
        assert!(dpht_scan(&s, 0, std::slice::from_ref(&pt), Some(2), None).is_err());
        let r = dpht_scan(&s, 0, &[pt], None, None).unwrap();
        assert_eq!(r.records[0].diagrams.len(), 1);
    }

    #[test]
    fn pixel_center_lines_are_deduplicated() {
        // 2×2: two rows, two columns, two diagonals
        assert_eq!(pixel_center_lines(2).len(), 6);
        // 3×3: 3 rows + 3 cols + 2 main diagonals + 4 short diagonals + 8 knight lines
        assert_eq!(pixel_center_lines(3).len(), 20);
    }

    #[test]
    fn hyperplane_normal_form() {
        let h = hyperplane(&[0.0, 0.0, 2.0], 3.0).unwrap();
        assert_eq!(h.flat_dim(), 2);
        assert!((h.distance_to(&[5.0, -1.0, 0.0]) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn probe_rejects_large_grids() {
        assert!(injectivity_probe(7, 1, 0).is_err());
        assert!(injectivity_probe(3, 0, 0).is_err());
    }
}
