//! Affine flats, principal angles and the affine Grassmannian metric.
//!
//! A [`Flat`] is kept in normal form: an orthonormal basis of its direction
//! space plus the displacement of the flat from the origin, which is
//! orthogonal to that basis. Constructors either go through [`canonicalize`]
//! or check the invariants, so the rest of the crate may rely on the normal
//! form.
//!
//! The metric on m-flats of `R^n` is the Grassmann distance between their
//! images under the embedding into (m+1)-planes of `R^{n+1}`, see [`embed`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{axpy, dot, norm, scaled, Matrix};

/// Residual norm below which a Gram–Schmidt step declares the input dependent.
pub const DEGENERACY_TOL: f64 = 1e-12;
/// Tolerance for the orthonormality and orthogonal-displacement invariants.
pub const NORMAL_FORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Flat {
    basis: Vec<Vec<f64>>,
    displacement: Vec<f64>,
}

/// Principal angles between two subspaces, ascending, each in `[0, π/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalAngles(Vec<f64>);

impl PrincipalAngles {
    pub fn angles(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn from_unsorted(mut angles: Vec<f64>) -> Self {
        for a in &mut angles {
            *a = a.clamp(0.0, std::f64::consts::FRAC_PI_2);
        }
        angles.sort_by(f64::total_cmp);
        PrincipalAngles(angles)
    }
}

impl Flat {
    /// The 0-flat `{point}`.
    pub fn point(point: &[f64]) -> Result<Flat> {
        canonicalize(&[], point)
    }

    /// The line through `point` with the given direction.
    pub fn line(direction: &[f64], point: &[f64]) -> Result<Flat> {
        canonicalize(&[direction.to_vec()], point)
    }

    /// A linear subspace (zero displacement) spanned by `basis`.
    pub fn linear(basis: &[Vec<f64>], ambient_dim: usize) -> Result<Flat> {
        canonicalize(basis, &vec![0.0; ambient_dim])
    }

    pub fn ambient_dim(&self) -> usize {
        self.displacement.len()
    }

    pub fn flat_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn displacement(&self) -> &[f64] {
        &self.displacement
    }

    pub fn is_linear(&self) -> bool {
        self.displacement.iter().all(|&v| v == 0.0)
    }

    /// n×m matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim(), &self.basis)
            .expect("basis vectors have the ambient dimension")
    }

    /// Orthogonal projection of `x` onto the flat.
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        let mut p = self.displacement.clone();
        for v in &self.basis {
            axpy(dot(x, v), v, &mut p);
        }
        p
    }

    /// Euclidean distance from `x` to the flat: `‖x − b − Σ (x·v_i) v_i‖`.
    pub fn distance_to(&self, x: &[f64]) -> f64 {
        let mut r: Vec<f64> = x.iter().zip(&self.displacement).map(|(a, b)| a - b).collect();
        for v in &self.basis {
            axpy(-dot(x, v), v, &mut r);
        }
        norm(&r)
    }

    /// Image of the flat under the affine map `x ↦ R (x − pivot) + pivot`.
    pub fn rotated_about(&self, rotation: &Matrix, pivot: &[f64]) -> Result<Flat> {
        let n = self.ambient_dim();
        if rotation.rows() != n || rotation.cols() != n || pivot.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: rotation.rows(),
            });
        }
        let apply = |v: &[f64]| -> Vec<f64> {
            (0..n)
                .map(|i| (0..n).map(|j| rotation[(i, j)] * v[j]).sum())
                .collect()
        };
        let basis: Vec<Vec<f64>> = self.basis.iter().map(|v| apply(v)).collect();
        let rel: Vec<f64> = self.displacement.iter().zip(pivot).map(|(b, c)| b - c).collect();
        let moved: Vec<f64> = apply(&rel).iter().zip(pivot).map(|(x, c)| x + c).collect();
        canonicalize(&basis, &moved)
    }

    /// Image under the rotation `x ↦ R x`.
    pub fn rotated(&self, rotation: &Matrix) -> Result<Flat> {
        self.rotated_about(rotation, &vec![0.0; self.ambient_dim()])
    }

    pub fn translated(&self, offset: &[f64]) -> Result<Flat> {
        if offset.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: offset.len(),
            });
        }
        let point: Vec<f64> = self.displacement.iter().zip(offset).map(|(a, b)| a + b).collect();
        canonicalize(&self.basis, &point)
    }

    /// Largest deviation from the normal-form invariants.
    pub fn normal_form_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, u) in self.basis.iter().enumerate() {
            worst = worst.max((dot(u, u) - 1.0).abs());
            for v in &self.basis[i + 1..] {
                worst = worst.max(dot(u, v).abs());
            }
            worst = worst.max(dot(u, &self.displacement).abs());
        }
        worst
    }

    /// Takes an already normalised pair as is, checking the invariants to
    /// within [`NORMAL_FORM_TOL`] instead of re-orthogonalising.
    pub fn from_normal_form(basis: Vec<Vec<f64>>, displacement: Vec<f64>) -> Result<Flat> {
        let n = displacement.len();
        if n == 0 || basis.len() >= n {
            return Err(Error::InvalidDimensions(format!(
                "a flat of dimension {} does not fit in R^{n}",
                basis.len()
            )));
        }
        if let Some(v) = basis.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        if displacement.iter().chain(basis.iter().flatten()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        let flat = Flat {
            basis,
            displacement,
        };
        if flat.normal_form_error() > NORMAL_FORM_TOL {
            return Err(Error::InvalidArgument("flat is not in normal form".into()));
        }
        Ok(flat)
    }
}

/// Brings `(raw_basis, raw_point)` to normal form: the basis is orthonormalised
/// by Gram–Schmidt with one re-orthogonalisation pass, and the displacement
/// is `raw_point` minus its projection onto the span.
pub fn canonicalize(raw_basis: &[Vec<f64>], raw_point: &[f64]) -> Result<Flat> {
    let n = raw_point.len();
    if n == 0 {
        return Err(Error::InvalidDimensions("ambient dimension must be ≥ 1".into()));
    }
    if raw_basis.len() >= n {
        return Err(Error::InvalidDimensions(format!(
            "a flat of dimension {} does not fit in R^{n}",
            raw_basis.len()
        )));
    }
    if let Some(v) = raw_basis.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: v.len(),
        });
    }
    if raw_point.iter().chain(raw_basis.iter().flatten()).any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite coordinate".into()));
    }

    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(raw_basis.len());
    for raw in raw_basis {
        let mut w = raw.clone();
        for _ in 0..2 {
            for q in &basis {
                axpy(-dot(&w, q), q, &mut w);
            }
        }
        let r = norm(&w);
        if r < DEGENERACY_TOL {
            return Err(Error::DegenerateBasis);
        }
        basis.push(scaled(&w, 1.0 / r));
    }

    let mut displacement = raw_point.to_vec();
    for _ in 0..2 {
        for q in &basis {
            axpy(-dot(&displacement, q), q, &mut displacement);
        }
    }
    Ok(Flat {
        basis,
        displacement,
    })
}

/// The underlying linear subspace of a flat.
pub fn deaffine(p: &Flat) -> Flat {
    Flat {
        basis: p.basis.clone(),
        displacement: vec![0.0; p.ambient_dim()],
    }
}

/// Sends an m-flat of `R^n` to the (m+1)-dimensional linear subspace of
/// `R^{n+1}` spanned by the lifted basis and `(b + e_{n+1}) / √(1+‖b‖²)`.
pub fn embed(p: &Flat) -> Flat {
    let n = p.ambient_dim();
    let mut basis: Vec<Vec<f64>> = p
        .basis
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.push(0.0);
            w
        })
        .collect();
    let scale = 1.0 / (1.0 + dot(&p.displacement, &p.displacement)).sqrt();
    let mut lifted = scaled(&p.displacement, scale);
    lifted.push(scale);
    basis.push(lifted);
    Flat {
        basis,
        displacement: vec![0.0; n + 1],
    }
}

fn check_ambient(a: &Flat, b: &Flat) -> Result<()> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            got: b.ambient_dim(),
        });
    }
    Ok(())
}

/// Principal angles between the direction spaces of `a` and `b`
/// (displacements are ignored).
///
/// Cosines are the singular values of `M_Aᵀ M_B`. For angles below π/4 the
/// sine route is used instead, i.e. the singular values of the component of
/// the smaller basis orthogonal to the larger space, which keeps tiny angles
/// accurate where `arccos` near 1 is not.
pub fn principal_angles(a: &Flat, b: &Flat) -> Result<PrincipalAngles> {
    check_ambient(a, b)?;
    let (small, large) = if a.flat_dim() <= b.flat_dim() { (a, b) } else { (b, a) };
    let k = small.flat_dim();
    if k == 0 {
        return Ok(PrincipalAngles(Vec::new()));
    }
    let ms = small.basis_matrix();
    let ml = large.basis_matrix();
    let cross = ml.transpose().matmul(&ms)?;
    let cosines = cross.singular_values();
    let residual = ms.sub(&ml.matmul(&cross)?)?;
    let mut sines = residual.singular_values();
    sines.reverse();

    let angles = cosines
        .iter()
        .zip(&sines)
        .map(|(&c, &s)| {
            let c = c.clamp(0.0, 1.0);
            if c * c >= 0.5 {
                s.clamp(0.0, 1.0).asin()
            } else {
                c.acos()
            }
        })
        .collect();
    Ok(PrincipalAngles::from_unsorted(angles))
}

/// Principal angles by the constrained-maximisation recursion: at each step
/// find unit vectors `a ∈ A`, `b ∈ B` orthogonal to the previously chosen
/// ones that maximise `a·b`, record the angle between them, and deflate.
///
/// Each step is solved numerically (repeated squaring followed by power
/// iteration on the Gram matrix of the remaining subspaces), independently
/// of the Jacobi path in [`principal_angles`]. Intended as a cross-check.
pub fn principal_angles_recursive(a: &Flat, b: &Flat) -> Result<PrincipalAngles> {
    check_ambient(a, b)?;
    let n = a.ambient_dim();
    let k = a.flat_dim().min(b.flat_dim());
    let mut qa = a.basis.clone();
    let mut qb = b.basis.clone();
    let mut angles = Vec::with_capacity(k);
    for _ in 0..k {
        let cross = Matrix::from_columns(n, &qa)?.transpose().matmul(&Matrix::from_columns(n, &qb)?)?;
        let gram = cross.transpose().matmul(&cross)?;
        let y = dominant_eigenvector(&gram);
        let mut bv = vec![0.0; n];
        for (coef, q) in y.iter().zip(&qb) {
            axpy(*coef, q, &mut bv);
        }
        let bv = scaled(&bv, 1.0 / norm(&bv));
        let mut av = vec![0.0; n];
        for q in &qa {
            axpy(dot(&bv, q), q, &mut av);
        }
        let an = norm(&av);
        let (av, theta) = if an < 1e-300 {
            (qa[0].clone(), std::f64::consts::FRAC_PI_2)
        } else {
            let av = scaled(&av, 1.0 / an);
            let gap: Vec<f64> = av.iter().zip(&bv).map(|(x, y)| x - y).collect();
            let theta = 2.0 * (norm(&gap) / 2.0).min(1.0).asin();
            (av, theta)
        };
        angles.push(theta);
        qa = deflate(&qa, &av);
        qb = deflate(&qb, &bv);
    }
    Ok(PrincipalAngles::from_unsorted(angles))
}

/// Unit eigenvector for the largest eigenvalue of a symmetric PSD matrix.
fn dominant_eigenvector(g: &Matrix) -> Vec<f64> {
    let r = g.rows();
    let fro = g.frobenius_norm();
    if fro == 0.0 {
        let mut e = vec![0.0; r];
        e[0] = 1.0;
        return e;
    }
    let mut p = g.clone();
    for _ in 0..64 {
        let sq = p.matmul(&p).expect("square");
        let f = sq.frobenius_norm();
        if f == 0.0 || !f.is_finite() {
            break;
        }
        p = Matrix::from_vec(r, r, (0..r * r).map(|i| sq[(i / r, i % r)] / f).collect())
            .expect("finite");
    }
    let mut y = (0..r)
        .map(|j| p.column(j))
        .max_by(|x, z| norm(x).total_cmp(&norm(z)))
        .expect("non-empty");
    let ny = norm(&y);
    y = scaled(&y, 1.0 / ny);
    for _ in 0..50 {
        let mut next = vec![0.0; r];
        for i in 0..r {
            next[i] = (0..r).map(|j| g[(i, j)] * y[j]).sum();
        }
        let nn = norm(&next);
        if nn == 0.0 {
            break;
        }
        y = scaled(&next, 1.0 / nn);
    }
    y
}

/// Orthonormal basis of `span(basis) ∩ v^⊥` for a unit `v` in the span.
/// Pivoted Gram–Schmidt seeded with `v`, which is then dropped.
fn deflate(basis: &[Vec<f64>], v: &[f64]) -> Vec<Vec<f64>> {
    let target = basis.len().saturating_sub(1);
    let mut chosen: Vec<Vec<f64>> = vec![v.to_vec()];
    let mut pool: Vec<Vec<f64>> = basis.to_vec();
    while chosen.len() <= target {
        let residuals: Vec<Vec<f64>> = pool
            .iter()
            .map(|w| {
                let mut r = w.clone();
                for _ in 0..2 {
                    for q in &chosen {
                        axpy(-dot(&r, q), q, &mut r);
                    }
                }
                r
            })
            .collect();
        let (idx, best) = residuals
            .into_iter()
            .enumerate()
            .max_by(|(_, x), (_, y)| norm(x).total_cmp(&norm(y)))
            .expect("pool not exhausted");
        pool.swap_remove(idx);
        let nb = norm(&best);
        chosen.push(scaled(&best, 1.0 / nb));
    }
    chosen.remove(0);
    chosen
}

/// `(Σ θ_i²)^{1/2}` over the principal angles of two equal-dimensional
/// subspaces. Displacements are ignored.
pub fn grassmann_distance(a: &Flat, b: &Flat) -> Result<f64> {
    check_ambient(a, b)?;
    if a.flat_dim() != b.flat_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.flat_dim(),
            got: b.flat_dim(),
        });
    }
    let angles = principal_angles(a, b)?;
    Ok(angles.angles().iter().map(|t| t * t).sum::<f64>().sqrt())
}

/// Metric on m-flats: Grassmann distance of the embedded (m+1)-planes.
pub fn affine_distance(p: &Flat, q: &Flat) -> Result<f64> {
    check_ambient(p, q)?;
    if p.flat_dim() != q.flat_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.flat_dim(),
            got: q.flat_dim(),
        });
    }
    grassmann_distance(&embed(p), &embed(q))
}

pub fn distance_to_flat(p: &Flat, x: &[f64]) -> f64 {
    p.distance_to(x)
}

/// `(max_i |σ_i(A) − σ_i(B)|, ‖A − B‖₂)` for square matrices of equal size.
pub fn weyl_gap(a: &Matrix, b: &Matrix) -> Result<(f64, f64)> {
    a.check_same_shape(b)?;
    if !a.is_square() {
        return Err(Error::InvalidDimensions(format!(
            "expected square matrices, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let sa = a.singular_values();
    let sb = b.singular_values();
    let gap = sa
        .iter()
        .zip(&sb)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    Ok((gap, a.sub(b)?.spectral_norm()))
}

/// Cosine of the angle between the lifted points `(p, 1)` and `(x, 1)`:
/// `(1 + p·x) / √((1+‖p‖²)(1+‖x‖²))`.
pub fn lifted_cosine(p: &[f64], x: &[f64]) -> f64 {
    (1.0 + dot(p, x)) / ((1.0 + dot(p, p)) * (1.0 + dot(x, x))).sqrt()
}

/// Uniform bound `B < 1` on `|lifted_cosine(p, x)|` over all `x` with
/// `‖x − p‖ ≥ delta`.
///
/// For `p = 0` this is `1/√(1+Δ²)`. Otherwise `Δ` is first reduced below
/// `‖p‖` (which only enlarges the admissible set), and the bound is the
/// largest of the far-field value `‖p‖/√(1+‖p‖²)` and the two values
/// `a/√(a² + Δ²)`, `a = 1 ± Δ‖p‖ + ‖p‖²`, attained on `‖x‖ = ‖p‖ ± Δ`.
pub fn lifted_cosine_bound(p: &[f64], delta: f64) -> Result<f64> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidArgument(format!("delta must be positive, got {delta}")));
    }
    let pn = norm(p);
    if pn == 0.0 {
        return Ok(1.0 / (1.0 + delta * delta).sqrt());
    }
    let d = delta.min(pn * (1.0 - 1e-12));
    let far = pn / (1.0 + pn * pn).sqrt();
    let outer = 1.0 + d * pn + pn * pn;
    let inner = 1.0 - d * pn + pn * pn;
    let at_outer = outer / (outer * outer + d * d).sqrt();
    let at_inner = inner / (inner * inner + d * d).sqrt();
    Ok(far.max(at_outer).max(at_inner))
}

/// Reproducible random m-flats of `R^n`.
///
/// Directions come from orthonormalised standard Gaussian frames; the
/// displacement is drawn uniformly from the ball of the given radius and
/// then projected orthogonally to the direction space.
pub fn sample_flats(m: usize, n: usize, count: usize, radius: f64, seed: u64) -> Result<Vec<Flat>> {
    if n == 0 || m >= n {
        return Err(Error::InvalidDimensions(format!("need 0 ≤ m < n, got m={m}, n={n}")));
    }
    if count == 0 {
        return Err(Error::InvalidArgument("count must be ≥ 1".into()));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let frame: Vec<Vec<f64>> = (0..m).map(|_| gaussian_vector(&mut rng, n)).collect();
        let dir = gaussian_vector(&mut rng, n);
        let dn = norm(&dir);
        let u: f64 = rng.random();
        if dn == 0.0 {
            continue;
        }
        let point = scaled(&dir, radius * u.powf(1.0 / n as f64) / dn);
        match canonicalize(&frame, &point) {
            Ok(flat) => out.push(flat),
            Err(Error::DegenerateBasis) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

pub(crate) fn gaussian_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the
/// sign convention fixed by Gram–Schmidt).
pub fn random_rotation(n: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let cols: Vec<Vec<f64>> = (0..n).map(|_| gaussian_vector(&mut rng, n)).collect();
        let mut q: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut ok = true;
        for c in cols {
            let mut w = c;
            for _ in 0..2 {
                for e in &q {
                    axpy(-dot(&w, e), e, &mut w);
                }
            }
            let r = norm(&w);
            if r < DEGENERACY_TOL {
                ok = false;
                break;
            }
            q.push(scaled(&w, 1.0 / r));
        }
        if ok {
            return Matrix::from_columns(n, &q).expect("square");
        }
    }
}

/// Rotation by `theta` in the coordinate plane `(i, j)` of `R^n`.
pub fn plane_rotation(n: usize, i: usize, j: usize, theta: f64) -> Matrix {
    let mut r = Matrix::identity(n);
    let (s, c) = theta.sin_cos();
    r[(i, i)] = c;
    r[(j, j)] = c;
    r[(i, j)] = -s;
    r[(j, i)] = s;
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn canonicalize_projects_point() {
        let f = canonicalize(&[vec![2.0, 0.0]], &[3.0, 5.0]).unwrap();
        assert!(close(&f.basis()[0], &[1.0, 0.0], 1e-15));
        assert!(close(f.displacement(), &[0.0, 5.0], 1e-15));
    }

    #[test]
    fn canonicalize_point_flat() {
        let f = canonicalize(&[], &[1.0, 2.0]).unwrap();
        assert_eq!(f.flat_dim(), 0);
        assert_eq!(f.displacement(), &[1.0, 2.0]);
    }

    #[test]
    fn canonicalize_rejects_dependent_basis() {
        let err = canonicalize(&[vec![1.0, 1.0, 0.0], vec![2.0, 2.0, 0.0]], &[0.0; 3]).unwrap_err();
        assert_eq!(err, Error::DegenerateBasis);
        assert_eq!(err.to_string(), "degenerate basis");
        assert_eq!(canonicalize(&[vec![0.0, 0.0]], &[0.0, 0.0]).unwrap_err(), Error::DegenerateBasis);
    }

    #[test]
    fn canonicalize_rejects_bad_dims() {
        assert!(canonicalize(&[vec![1.0, 0.0], vec![0.0, 1.0]], &[0.0, 0.0]).is_err());
        assert!(canonicalize(&[vec![1.0, 0.0, 0.0]], &[0.0, 0.0]).is_err());
        assert!(canonicalize(&[], &[]).is_err());
    }

    #[test]
    fn deaffine_examples() {
        let line = Flat::line(&[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(deaffine(&line), Flat::line(&[1.0, 0.0], &[0.0, 0.0]).unwrap());
        let pt = Flat::point(&[1.0, 2.0]).unwrap();
        assert_eq!(deaffine(&pt).displacement(), &[0.0, 0.0]);
        let plane = canonicalize(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]], &[0.0, 0.0, 3.0]).unwrap();
        assert_eq!(deaffine(&plane).displacement(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn embed_point() {
        let (x, y) = (0.3, -1.7);
        let e = embed(&Flat::point(&[x, y]).unwrap());
        let s = (1.0 + x * x + y * y).sqrt();
        assert_eq!(e.flat_dim(), 1);
        assert!(close(&e.basis()[0], &[x / s, y / s, 1.0 / s], 1e-15));
        let origin = embed(&Flat::point(&[0.0; 4]).unwrap());
        assert!(close(&origin.basis()[0], &[0.0, 0.0, 0.0, 0.0, 1.0], 0.0));
    }

    #[test]
    fn embed_horizontal_line() {
        let r = 2.5;
        let e = embed(&Flat::line(&[1.0, 0.0], &[0.0, r]).unwrap());
        let s = (1.0f64 + r * r).sqrt();
        assert!(close(&e.basis()[0], &[1.0, 0.0, 0.0], 0.0));
        assert!(close(&e.basis()[1], &[0.0, r / s, 1.0 / s], 1e-15));
        assert!(e.normal_form_error() < 1e-15);
    }

    #[test]
    fn principal_angles_in_plane() {
        let e1 = Flat::linear(&[vec![1.0, 0.0]], 2).unwrap();
        for &t in &[0.0, 0.1, FRAC_PI_4, 1.3, FRAC_PI_2] {
            let l = Flat::linear(&[vec![t.cos(), t.sin()]], 2).unwrap();
            let a = principal_angles(&e1, &l).unwrap();
            assert!((a.angles()[0] - t).abs() < 1e-14, "{t}");
        }
    }

    #[test]
    fn principal_angles_mixed_dimensions_and_points() {
        let plane = Flat::linear(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]], 3).unwrap();
        let line = Flat::linear(&[vec![0.0, 1.0, 1.0]], 3).unwrap();
        let a = principal_angles(&plane, &line).unwrap();
        assert_eq!(a.len(), 1);
        assert!((a.angles()[0] - FRAC_PI_4).abs() < 1e-14);
        let origin = Flat::point(&[0.0; 3]).unwrap();
        assert!(principal_angles(&plane, &origin).unwrap().is_empty());
    }

    #[test]
    fn recursive_on_identical_and_orthogonal() {
        let a = Flat::linear(&[vec![1.0, 2.0, 0.0, 1.0], vec![0.0, 1.0, 1.0, 0.0]], 4).unwrap();
        let r = principal_angles_recursive(&a, &a).unwrap();
        assert!(r.angles().iter().all(|&t| t < 1e-12));
        let e1 = Flat::linear(&[vec![1.0, 0.0]], 2).unwrap();
        let e2 = Flat::linear(&[vec![0.0, 1.0]], 2).unwrap();
        let r = principal_angles_recursive(&e1, &e2).unwrap();
        assert!((r.angles()[0] - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn grassmann_distance_examples() {
        let e1 = Flat::linear(&[vec![1.0, 0.0]], 2).unwrap();
        let e2 = Flat::linear(&[vec![0.0, 1.0]], 2).unwrap();
        assert!((grassmann_distance(&e1, &e2).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(grassmann_distance(&e1, &e1).unwrap(), 0.0);
        let p = Flat::linear(&[vec![1.0, 0.0, 0.0]], 3).unwrap();
        let q = Flat::linear(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]], 3).unwrap();
        assert!(matches!(grassmann_distance(&p, &q), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn affine_distance_horizontal_lines() {
        let l0 = Flat::line(&[1.0, 0.0], &[0.0, 0.0]).unwrap();
        let l1 = Flat::line(&[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert!((affine_distance(&l0, &l1).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert!(affine_distance(&l1, &l1).unwrap() < 1e-15);
        let pt = Flat::point(&[0.0, 0.0]).unwrap();
        assert!(affine_distance(&l0, &pt).is_err());
    }

    #[test]
    fn distance_to_flat_examples() {
        let xaxis = Flat::line(&[1.0, 0.0], &[0.0, 0.0]).unwrap();
        assert_eq!(distance_to_flat(&xaxis, &[3.0, 4.0]), 4.0);
        let y1 = Flat::line(&[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(distance_to_flat(&y1, &[3.0, 4.0]), 3.0);
        let z0 = Flat::linear(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]], 3).unwrap();
        assert_eq!(distance_to_flat(&z0, &[1.0, 2.0, -5.0]), 5.0);
    }

    #[test]
    fn weyl_gap_examples() {
        let i2 = Matrix::identity(2);
        let z2 = Matrix::zeros(2, 2);
        let (g, s) = weyl_gap(&i2, &z2).unwrap();
        assert!((g - 1.0).abs() < 1e-15 && (s - 1.0).abs() < 1e-15);
        assert_eq!(weyl_gap(&i2, &i2).unwrap(), (0.0, 0.0));
        assert!(weyl_gap(&i2, &Matrix::zeros(2, 3)).is_err());
        assert!(weyl_gap(&Matrix::zeros(2, 3), &Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn lifted_cosine_bound_at_origin() {
        assert!((lifted_cosine_bound(&[0.0, 0.0], 1.0).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((lifted_cosine_bound(&[0.0, 0.0], 3.0).unwrap() - 1.0 / 10f64.sqrt()).abs() < 1e-15);
        assert!(lifted_cosine_bound(&[1.0], 0.0).is_err());
        assert!(lifted_cosine_bound(&[1.0], -1.0).is_err());
    }

    #[test]
    fn sample_flats_is_reproducible_and_canonical() {
        let a = sample_flats(0, 2, 3, 5.0, 7).unwrap();
        let b = sample_flats(0, 2, 3, 5.0, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|f| norm(f.displacement()) <= 5.0));
        let lines = sample_flats(1, 2, 64, 10.0, 1).unwrap();
        assert_eq!(lines.len(), 64);
        for l in &lines {
            assert_eq!(l.flat_dim(), 1);
            assert!(l.normal_form_error() < NORMAL_FORM_TOL);
            assert!(norm(l.displacement()) <= 10.0 + 1e-12);
        }
        assert_ne!(sample_flats(1, 2, 4, 1.0, 1).unwrap(), sample_flats(1, 2, 4, 1.0, 2).unwrap());
        assert!(sample_flats(2, 2, 1, 1.0, 0).is_err());
        assert!(sample_flats(0, 2, 0, 1.0, 0).is_err());
        assert!(sample_flats(0, 2, 1, 0.0, 0).is_err());
    }
}
