//! Dense real operators, spectra, entire functions of operators and the
//! kernel formulas for `sinh(A)/A` and `cosh(A)`.
//!
//! Operators are real. Every entire function used here has real Taylor
//! coefficients, so `f(A)` stays real; complex numbers only appear in
//! spectra and in spectral calculus.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::{Error, Result, Tolerance};

pub type Matrix = DMatrix<f64>;
pub type CMatrix = DMatrix<Complex<f64>>;

const MAX_TERMS: usize = 80;
const MAX_SCALINGS: u32 = 200;

/// A square real matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    entries: Matrix,
}

impl Operator {
    pub fn new(entries: Matrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::NotSquare { rows: entries.nrows(), cols: entries.ncols() });
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Operator { entries })
    }

    /// Row-major constructor.
    pub fn from_rows(n: usize, data: &[f64]) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Dimension { expected: n * n, got: data.len() });
        }
        Operator::new(Matrix::from_row_slice(n, n, data))
    }

    pub fn identity(n: usize) -> Self {
        Operator { entries: Matrix::identity(n, n) }
    }

    pub fn zero(n: usize) -> Self {
        Operator { entries: Matrix::zeros(n, n) }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Operator { entries: Matrix::from_diagonal(&DVector::from_column_slice(values)) }
    }

    pub(crate) fn wrap(entries: Matrix) -> Self {
        debug_assert_eq!(entries.nrows(), entries.ncols());
        Operator { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.entries
    }

    pub fn into_matrix(self) -> Matrix {
        self.entries
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries.norm()
    }
}

/// One eigenvalue cluster.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

impl Eigenvalue {
    pub fn value(&self) -> Complex<f64> {
        Complex::new(self.re, self.im)
    }
}

/// Clustered eigenvalues with algebraic multiplicities.
///
/// `borderline` is set when two clusters sit closer than the loose grouping
/// distance used for the diagonalizability test, so that the flag may
/// depend on the tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<Eigenvalue>,
    pub diagonalizable: bool,
    pub borderline: bool,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.multiplicity).sum()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|e| e.value().norm()).fold(0.0, f64::max)
    }

    pub fn imag_spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|e| e.im.abs()).fold(0.0, f64::max)
    }

    pub fn max_real(&self) -> f64 {
        self.eigenvalues.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Eigenvalues with repetition, in solver order.
pub fn eigenvalues(a: &Operator) -> Result<Vec<Complex<f64>>> {
    raw_eigenvalues(a.matrix())
}

pub(crate) fn raw_eigenvalues(m: &Matrix) -> Result<Vec<Complex<f64>>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    // The deflation test is relative to the diagonal, so a spectrum
    // clustered at zero can stall; a shift by the matrix scale avoids that.
    let shift = 1.0 + m.amax();
    let ev: Vec<Complex<f64>> = match nalgebra::linalg::Schur::try_new(m.clone(), f64::EPSILON, 10_000 * n) {
        Some(schur) => schur.complex_eigenvalues().iter().copied().collect(),
        None => {
            let shifted = m + Matrix::identity(n, n) * shift;
            let schur = nalgebra::linalg::Schur::try_new(shifted, f64::EPSILON, 10_000 * n).ok_or(Error::EigenSolver)?;
            schur.complex_eigenvalues().iter().map(|z| z - shift).collect()
        }
    };
    if ev.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::EigenSolver);
    }
    Ok(ev)
}

/// Single-linkage clusters of `values` at distance `tol`, sorted by
/// (real, imaginary) part of the cluster mean.
fn cluster(values: &[Complex<f64>], tol: f64) -> Vec<(Complex<f64>, usize)> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Complex<f64>, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += values[i];
                g.2 += 1;
            }
            None => groups.push((r, values[i], 1)),
        }
    }
    let mut out: Vec<(Complex<f64>, usize)> =
        groups.into_iter().map(|(_, s, m)| (s / m as f64, m)).collect();
    out.sort_by(|a, b| {
        a.0.re.partial_cmp(&b.0.re).unwrap().then(a.0.im.partial_cmp(&b.0.im).unwrap())
    });
    out
}

fn to_complex(m: &Matrix) -> CMatrix {
    m.map(|v| Complex::new(v, 0.0))
}

/// Orthonormal basis (columns) of the null space of a complex matrix.
fn complex_null_space(m: &CMatrix, thr: f64) -> CMatrix {
    let n = m.ncols();
    let padded = if m.nrows() < n {
        let mut p = CMatrix::zeros(n, n);
        p.rows_mut(0, m.nrows()).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested V");
    let cols: Vec<DVector<Complex<f64>>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= thr)
        .map(|(i, _)| vt.row(i).adjoint())
        .collect();
    if cols.is_empty() {
        CMatrix::zeros(n, 0)
    } else {
        CMatrix::from_columns(&cols)
    }
}

fn complex_nullity(m: &CMatrix, thr: f64) -> usize {
    complex_null_space(m, thr).ncols()
}

/// Spectrum with clustering and the diagonalizability decision.
pub fn spectrum(a: &Operator, tol: &Tolerance) -> Result<Spectrum> {
    let n = a.dim();
    let values = raw_eigenvalues(a.matrix())?;
    let scale = a.norm().max(1.0);
    let tight = tol.at(scale);
    let loose = tol.rel.sqrt() * scale;
    let clusters = cluster(&values, tight);
    let groups = cluster(&values, loose);
    let ac = to_complex(a.matrix());
    let eye = CMatrix::identity(n, n);
    let rank_thr = tol.at(scale);
    let geometric_ok = |cl: &[(Complex<f64>, usize)]| {
        cl.iter()
            .all(|(lam, m)| complex_nullity(&(&ac - &eye * *lam), rank_thr) >= *m)
    };
    let borderline = groups.len() != clusters.len();
    let diagonalizable = if borderline { geometric_ok(&groups) } else { geometric_ok(&clusters) };
    Ok(Spectrum {
        eigenvalues: clusters
            .into_iter()
            .map(|(z, m)| Eigenvalue { re: z.re, im: z.im, multiplicity: m })
            .collect(),
        diagonalizable,
        borderline,
    })
}

/// max |λ| over the spectrum.
pub fn spectral_radius(a: &Operator) -> Result<f64> {
    Ok(raw_eigenvalues(a.matrix())?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// max |Im λ| over the spectrum.
pub fn imag_spectral_radius(a: &Operator) -> Result<f64> {
    Ok(raw_eigenvalues(a.matrix())?.iter().map(|z| z.im.abs()).fold(0.0, f64::max))
}

/// The entire functions available to [`apply_entire`].
///
/// `C` and `S` are the even-square series `C(z) = Σ (-1)^k z^k/(2k)!` and
/// `S(z) = Σ (-1)^k z^k/(2k+1)!`, so `cos z = C(z²)` and `sin z = z S(z²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntireFn {
    Exp,
    Cosh,
    Sinh,
    Sinhc,
    C,
    S,
}

impl EntireFn {
    pub const ALL: [EntireFn; 6] =
        [EntireFn::Exp, EntireFn::Cosh, EntireFn::Sinh, EntireFn::Sinhc, EntireFn::C, EntireFn::S];

    /// Evaluate at a complex scalar.
    pub fn eval(self, z: Complex<f64>) -> Complex<f64> {
        let one = Complex::new(1.0, 0.0);
        match self {
            EntireFn::Exp => z.exp(),
            EntireFn::Cosh => z.cosh(),
            EntireFn::Sinh => z.sinh(),
            EntireFn::Sinhc => {
                if z.norm() < 1e-3 {
                    let z2 = z * z;
                    one + z2 / 6.0 + z2 * z2 / 120.0 + z2 * z2 * z2 / 5040.0
                } else {
                    z.sinh() / z
                }
            }
            EntireFn::C => {
                if z.norm() < 1e-3 {
                    one - z / 2.0 + z * z / 24.0 - z * z * z / 720.0
                } else {
                    z.sqrt().cos()
                }
            }
            EntireFn::S => {
                if z.norm() < 1e-3 {
                    one - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0
                } else {
                    let w = z.sqrt();
                    w.sin() / w
                }
            }
        }
    }
}

/// `C` at a real argument: `cos √x` for `x ≥ 0`, `cosh √-x` otherwise.
pub fn c_real(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        1.0 - x / 2.0 + x * x / 24.0 - x * x * x / 720.0
    } else if x > 0.0 {
        x.sqrt().cos()
    } else {
        (-x).sqrt().cosh()
    }
}

/// `S` at a real argument: `sin √x / √x` for `x ≥ 0`, `sinh √-x / √-x` otherwise.
pub fn s_real(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        1.0 - x / 6.0 + x * x / 120.0 - x * x * x / 5040.0
    } else if x > 0.0 {
        let w = x.sqrt();
        w.sin() / w
    } else {
        let w = (-x).sqrt();
        w.sinh() / w
    }
}

/// `Σ_k coeff(k) B^k` with the tail bounded by `Σ_{j>k} ‖B‖^j / j!`,
/// which dominates every series used here since `|coeff(j)| ≤ 1/j!`.
fn power_series(b: &Matrix, coeff: impl Fn(usize) -> f64) -> Result<Matrix> {
    let n = b.nrows();
    let nb = b.norm();
    let mut term = Matrix::identity(n, n);
    let mut sum = &term * coeff(0);
    let mut bound = 1.0;
    for k in 1..=MAX_TERMS {
        term = &term * b;
        let c = coeff(k);
        if c != 0.0 {
            sum += &term * c;
        }
        bound *= nb / k as f64;
        let next = bound * nb / (k + 1) as f64;
        let ratio = nb / (k + 2) as f64;
        if ratio < 1.0 && next / (1.0 - ratio) <= 1e-18 * sum.norm().max(1.0) {
            return Ok(sum);
        }
    }
    Err(Error::SeriesBudget { terms: MAX_TERMS })
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * j as f64)
}

fn scalings(norm: f64, base: f64) -> Result<u32> {
    if !norm.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut s = 0;
    let mut v = norm;
    while v > 0.5 {
        v /= base;
        s += 1;
        if s > MAX_SCALINGS {
            return Err(Error::SeriesBudget { terms: MAX_TERMS });
        }
    }
    Ok(s)
}

fn cosh_sinh_series(b: &Matrix) -> Result<(Matrix, Matrix)> {
    let ch = power_series(b, |k| if k % 2 == 0 { 1.0 / factorial(k) } else { 0.0 })?;
    let sh = power_series(b, |k| if k % 2 == 1 { 1.0 / factorial(k) } else { 0.0 })?;
    Ok((ch, sh))
}

/// `f(A)` by scaled power series with doubling identities.
pub fn apply_entire(f: EntireFn, a: &Operator) -> Result<Operator> {
    let m = a.matrix();
    let n = a.dim();
    let eye = Matrix::identity(n, n);
    let out = match f {
        EntireFn::Exp => {
            let s = scalings(m.norm(), 2.0)?;
            let b = m / 2f64.powi(s as i32);
            let mut e = power_series(&b, |k| 1.0 / factorial(k))?;
            for _ in 0..s {
                e = &e * &e;
            }
            e
        }
        EntireFn::Cosh | EntireFn::Sinh => {
            let s = scalings(m.norm(), 2.0)?;
            let b = m / 2f64.powi(s as i32);
            let (mut ch, mut sh) = cosh_sinh_series(&b)?;
            for _ in 0..s {
                let c2 = &ch * &ch + &sh * &sh;
                let s2 = (&sh * &ch) * 2.0;
                ch = c2;
                sh = s2;
            }
            if f == EntireFn::Cosh {
                ch
            } else {
                sh
            }
        }
        EntireFn::Sinhc => {
            let s = scalings(m.norm(), 2.0)?;
            let b = m / 2f64.powi(s as i32);
            let mut sc = power_series(&b, |k| if k % 2 == 0 { 1.0 / factorial(k + 1) } else { 0.0 })?;
            let mut ch = power_series(&b, |k| if k % 2 == 0 { 1.0 / factorial(k) } else { 0.0 })?;
            for _ in 0..s {
                sc = &sc * &ch;
                ch = (&ch * &ch) * 2.0 - &eye;
            }
            sc
        }
        EntireFn::C | EntireFn::S => {
            let s = scalings(m.norm(), 4.0)?;
            let w = m / 4f64.powi(s as i32);
            let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
            let mut c = power_series(&w, |k| sign(k) / factorial(2 * k))?;
            let mut sv = power_series(&w, |k| sign(k) / factorial(2 * k + 1))?;
            for _ in 0..s {
                sv = &sv * &c;
                c = (&c * &c) * 2.0 - &eye;
            }
            if f == EntireFn::C {
                c
            } else {
                sv
            }
        }
    };
    Operator::new(out)
}

/// `f(A)` by spectral calculus `V f(D) V⁻¹`; requires a diagonalizable `A`.
pub fn apply_entire_spectral(f: EntireFn, a: &Operator, tol: &Tolerance) -> Result<Operator> {
    let n = a.dim();
    let spec = spectrum(a, tol)?;
    if !spec.diagonalizable {
        return Err(Error::NotDiagonalizable);
    }
    let ac = to_complex(a.matrix());
    let eye = CMatrix::identity(n, n);
    let scale = a.norm().max(1.0);
    let mut cols = Vec::with_capacity(n);
    let mut vals = Vec::with_capacity(n);
    for ev in &spec.eigenvalues {
        let lam = ev.value();
        let shifted = &ac - &eye * lam;
        let padded = shifted.svd(false, true);
        let vt = padded.v_t.expect("requested V");
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&i, &j| {
            padded.singular_values[i].partial_cmp(&padded.singular_values[j]).unwrap()
        });
        for &i in idx.iter().take(ev.multiplicity) {
            cols.push(vt.row(i).adjoint());
            vals.push(f.eval(lam));
        }
    }
    let v = CMatrix::from_columns(&cols);
    let vinv = v.clone().try_inverse().ok_or(Error::NotDiagonalizable)?;
    let d = CMatrix::from_diagonal(&DVector::from_vec(vals));
    let out = v * d * vinv;
    let imag = out.map(|z| z.im).norm();
    let real = out.map(|z| z.re);
    if imag > 1e-6 * real.norm().max(scale) {
        return Err(Error::CriteriaDisagree(format!(
            "spectral calculus produced imaginary part {imag:e} for a real operator"
        )));
    }
    Operator::new(real)
}

/// A subspace of `ℝⁿ` stored by an orthonormal basis (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { basis: Matrix::zeros(n, 0) }
    }

    pub fn full(n: usize) -> Self {
        Subspace { basis: Matrix::identity(n, n) }
    }

    /// Column span of `spanning`, rank decided at `tol`.
    pub fn span(spanning: &Matrix, tol: &Tolerance) -> Self {
        let n = spanning.nrows();
        if spanning.ncols() == 0 {
            return Subspace::zero(n);
        }
        let svd = spanning.clone().svd(true, false);
        let u = svd.u.expect("requested U");
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let thr = tol.at(smax);
        let cols: Vec<DVector<f64>> = svd
            .singular_values
            .iter()
            .enumerate()
            .filter(|(_, s)| **s > thr)
            .map(|(i, _)| u.column(i).into_owned())
            .collect();
        Subspace::from_orthonormal(n, cols)
    }

    pub fn span_of(vectors: &[DVector<f64>], n: usize, tol: &Tolerance) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(n);
        }
        Subspace::span(&Matrix::from_columns(vectors), tol)
    }

    fn from_orthonormal(n: usize, cols: Vec<DVector<f64>>) -> Self {
        if cols.is_empty() {
            Subspace::zero(n)
        } else {
            Subspace { basis: Matrix::from_columns(&cols) }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<DVector<f64>> {
        self.basis.column_iter().map(|c| c.into_owned()).collect()
    }

    pub fn projector(&self) -> Matrix {
        &self.basis * self.basis.transpose()
    }

    /// Distance from `v` to the subspace.
    pub fn residual(&self, v: &DVector<f64>) -> f64 {
        (v - &self.basis * (self.basis.transpose() * v)).norm()
    }

    /// Sine of the largest principal angle of `other` relative to `self`.
    fn sin_gap(&self, other: &Subspace) -> f64 {
        if other.dim() == 0 {
            return 0.0;
        }
        let r = &other.basis - &self.basis * (self.basis.transpose() * &other.basis);
        let s = r.svd(false, false).singular_values;
        s.iter().cloned().fold(0.0, f64::max).min(1.0)
    }

    /// Largest principal angle; `π/2` when dimensions differ.
    pub fn max_principal_angle(&self, other: &Subspace) -> f64 {
        if self.dim() != other.dim() || self.ambient_dim() != other.ambient_dim() {
            return PI / 2.0;
        }
        self.sin_gap(other).max(other.sin_gap(self)).asin()
    }

    pub fn same_as(&self, other: &Subspace, tol: &Tolerance) -> bool {
        self.max_principal_angle(other) < tol.angle
    }

    /// `other ⊆ self` up to the angle tolerance.
    pub fn contains(&self, other: &Subspace, tol: &Tolerance) -> bool {
        other.ambient_dim() == self.ambient_dim() && self.sin_gap(other).asin() < tol.angle
    }

    pub fn sum(&self, other: &Subspace, tol: &Tolerance) -> Subspace {
        let mut cols = self.vectors();
        cols.extend(other.vectors());
        Subspace::span_of(&cols, self.ambient_dim(), tol)
    }

    /// Image under a linear map.
    pub fn image(&self, m: &Matrix, tol: &Tolerance) -> Subspace {
        Subspace::span(&(m * &self.basis), tol)
    }

    pub fn intersection(&self, other: &Subspace, tol: &Tolerance) -> Subspace {
        let n = self.ambient_dim();
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(n);
        }
        // x = U a = V b  ⇔  [U, -V] (a; b) = 0
        let mut m = Matrix::zeros(n, self.dim() + other.dim());
        m.columns_mut(0, self.dim()).copy_from(&self.basis);
        m.columns_mut(self.dim(), other.dim()).copy_from(&(-&other.basis));
        let ns = null_space(&m, tol);
        let vecs: Vec<DVector<f64>> =
            ns.vectors().iter().map(|c| &self.basis * c.rows(0, self.dim())).collect();
        Subspace::span_of(&vecs, n, tol)
    }
}

fn null_space_impl(m: &Matrix, tol: &Tolerance, strict: bool) -> Result<Subspace> {
    let n = m.ncols();
    if n == 0 {
        return Ok(Subspace::zero(0));
    }
    let padded = if m.nrows() < n {
        let mut p = Matrix::zeros(n, n);
        p.rows_mut(0, m.nrows()).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested V");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let thr = tol.at(smax);
    let mut cols = Vec::new();
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s <= thr {
            cols.push(vt.row(i).transpose());
        } else if strict && *s <= 1e3 * thr {
            return Err(Error::IllConditioned { residual: *s });
        }
    }
    Ok(Subspace::from_orthonormal(n, cols))
}

/// Null space with the rank decided at `tol` relative to the largest
/// singular value.
pub fn null_space(m: &Matrix, tol: &Tolerance) -> Subspace {
    null_space_impl(m, tol, false).expect("non-strict null space cannot fail")
}

/// As [`null_space`], but a singular value within three decades above the
/// threshold is reported as ill-conditioned instead of being classified.
pub fn null_space_strict(m: &Matrix, tol: &Tolerance) -> Result<Subspace> {
    null_space_impl(m, tol, true)
}

fn kernel_by_shifts(a: &Operator, shifts: impl Iterator<Item = f64>, tol: &Tolerance) -> Result<Subspace> {
    let n = a.dim();
    let a2 = a.matrix() * a.matrix();
    let eye = Matrix::identity(n, n);
    let mut cols = Vec::new();
    for c in shifts {
        let k = null_space_strict(&(&a2 + &eye * (c * c)), tol)?;
        cols.extend(k.vectors());
    }
    Ok(Subspace::span_of(&cols, n, tol))
}

fn frequency_bound(a: &Operator) -> Result<usize> {
    Ok((imag_spectral_radius(a)? / PI + 0.5).floor() as usize + 1)
}

/// `⊕_{n≠0} ker(A² + n²π²)`, the kernel of `sinh(A)/A`, assembled from
/// the eigenspace formula.
pub fn kernel_sinhc(a: &Operator, tol: &Tolerance) -> Result<Subspace> {
    let nmax = frequency_bound(a)?;
    kernel_by_shifts(a, (1..=nmax).map(|k| k as f64 * PI), tol)
}

/// `⊕_{n≥0} ker(A² + (n+½)²π²)`, the kernel of `cosh(A)`.
pub fn kernel_cosh(a: &Operator, tol: &Tolerance) -> Result<Subspace> {
    let nmax = frequency_bound(a)?;
    kernel_by_shifts(a, (0..=nmax).map(|k| (k as f64 + 0.5) * PI), tol)
}

/// A kernel computed by its eigenspace formula next to the numerical
/// kernel of the evaluated function.
#[derive(Debug, Clone)]
pub struct KernelComparison {
    pub formula: Subspace,
    pub numerical: Subspace,
    pub max_angle: f64,
}

impl KernelComparison {
    pub fn agrees(&self, tol: &Tolerance) -> bool {
        self.formula.dim() == self.numerical.dim() && self.max_angle < tol.angle
    }
}

fn compare_kernels(formula: Subspace, f: EntireFn, a: &Operator, tol: &Tolerance) -> Result<KernelComparison> {
    let fa = apply_entire(f, a)?;
    let numerical = null_space_strict(fa.matrix(), tol)?;
    let max_angle = formula.max_principal_angle(&numerical);
    Ok(KernelComparison { formula, numerical, max_angle })
}

/// [`kernel_sinhc`] together with the numerical kernel of `sinhc(A)`.
pub fn kernel_sinhc_checked(a: &Operator, tol: &Tolerance) -> Result<KernelComparison> {
    compare_kernels(kernel_sinhc(a, tol)?, EntireFn::Sinhc, a, tol)
}

/// [`kernel_cosh`] together with the numerical kernel of `cosh(A)`.
pub fn kernel_cosh_checked(a: &Operator, tol: &Tolerance) -> Result<KernelComparison> {
    compare_kernels(kernel_cosh(a, tol)?, EntireFn::Cosh, a, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn rot(w: f64) -> Operator {
        Operator::from_rows(2, &[0.0, w, -w, 0.0]).unwrap()
    }

    #[test]
    fn identity_spectrum() {
        let s = spectrum(&Operator::identity(3), &tol()).unwrap();
        assert_eq!(s.eigenvalues.len(), 1);
        assert_eq!(s.eigenvalues[0].multiplicity, 3);
        assert!((s.eigenvalues[0].re - 1.0).abs() < 1e-14);
        assert!(s.diagonalizable);
    }

    #[test]
    fn rotation_spectrum() {
        let s = spectrum(&rot(FRAC_PI_2), &tol()).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.diagonalizable);
        let mut ims: Vec<f64> = s.eigenvalues.iter().map(|e| e.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ims[0] + FRAC_PI_2).abs() < 1e-12 && (ims[1] - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn jordan_block_not_diagonalizable() {
        let a = Operator::from_rows(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let s = spectrum(&a, &tol()).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(!s.diagonalizable);
    }

    #[test]
    fn rejects_bad_operators() {
        assert!(matches!(Operator::new(Matrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
        assert!(matches!(Operator::from_rows(1, &[f64::NAN]), Err(Error::NonFinite)));
    }

    #[test]
    fn radii() {
        assert_eq!(spectral_radius(&Operator::zero(2)).unwrap(), 0.0);
        assert_eq!(imag_spectral_radius(&Operator::zero(2)).unwrap(), 0.0);
        let r = rot(FRAC_PI_2);
        assert!((spectral_radius(&r).unwrap() - FRAC_PI_2).abs() < 1e-12);
        assert!((imag_spectral_radius(&r).unwrap() - FRAC_PI_2).abs() < 1e-12);
        let d = Operator::diagonal(&[3.0, -1.0]);
        assert!((spectral_radius(&d).unwrap() - 3.0).abs() < 1e-14);
        assert_eq!(imag_spectral_radius(&d).unwrap(), 0.0);
    }

    #[test]
    fn entire_examples() {
        let e = apply_entire(EntireFn::Exp, &Operator::zero(3)).unwrap();
        assert_eq!(e, Operator::identity(3));
        let s = apply_entire(EntireFn::Sinhc, &rot(PI)).unwrap();
        assert!(s.norm() < 1e-14, "{}", s.norm());
        let c = apply_entire(EntireFn::Cosh, &Operator::diagonal(&[1.0, -1.0])).unwrap();
        let want = Operator::diagonal(&[1f64.cosh(), 1f64.cosh()]);
        assert!((c.matrix() - want.matrix()).norm() < 1e-14);
    }

    #[test]
    fn scalar_c_and_s() {
        for i in 0..=60 {
            let z = -3.0 + 0.1 * i as f64;
            let one = Operator::diagonal(&[z * z]);
            let c = apply_entire(EntireFn::C, &one).unwrap().matrix()[(0, 0)];
            let s = apply_entire(EntireFn::S, &one).unwrap().matrix()[(0, 0)];
            assert!((c - z.cos()).abs() < 1e-13);
            assert!((z * s - z.sin()).abs() < 1e-13);
            assert!((c_real(z * z) - z.cos()).abs() < 1e-13);
            assert!((c_real(-z * z) - z.cosh()).abs() < 1e-12);
        }
    }

    #[test]
    fn kernel_examples() {
        let t = tol();
        assert_eq!(kernel_sinhc(&Operator::diagonal(&[1.0, 2.0]), &t).unwrap().dim(), 0);
        assert_eq!(kernel_sinhc(&rot(PI), &t).unwrap().dim(), 2);
        assert_eq!(kernel_sinhc(&rot(FRAC_PI_2), &t).unwrap().dim(), 0);
        assert_eq!(kernel_cosh(&Operator::zero(2), &t).unwrap().dim(), 0);
        assert_eq!(kernel_cosh(&rot(FRAC_PI_2), &t).unwrap().dim(), 2);
        assert_eq!(kernel_cosh(&Operator::diagonal(&[5.0]), &t).unwrap().dim(), 0);
    }

    #[test]
    fn higher_frequency_kernel() {
        // eigenvalues ±3πi lie in the kernel of sinhc, ±(5/2)πi in that of cosh
        let a = Operator::from_rows(
            4,
            &[0.0, 3.0 * PI, 0.0, 0.0, -3.0 * PI, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2.5 * PI, 0.0, 0.0, -2.5 * PI, 0.0],
        )
        .unwrap();
        let t = tol();
        let ks = kernel_sinhc_checked(&a, &t).unwrap();
        assert_eq!(ks.formula.dim(), 2);
        assert!(ks.agrees(&t));
        let kc = kernel_cosh_checked(&a, &t).unwrap();
        assert_eq!(kc.formula.dim(), 2);
        assert!(kc.agrees(&t));
    }

    #[test]
    fn subspace_operations() {
        let t = tol();
        let e1 = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        let e2 = DVector::from_vec(vec![0.0, 1.0, 0.0]);
        let e12 = DVector::from_vec(vec![1.0, 1.0, 0.0]);
        let a = Subspace::span_of(&[e1.clone(), e2.clone()], 3, &t);
        let b = Subspace::span_of(&[e12.clone(), e2.clone()], 3, &t);
        assert!(a.same_as(&b, &t));
        let c = Subspace::span_of(std::slice::from_ref(&e1), 3, &t);
        assert!(a.contains(&c, &t));
        assert!(!c.contains(&a, &t));
        assert_eq!(a.intersection(&Subspace::span_of(&[e12], 3, &t), &t).dim(), 1);
        assert!((c.max_principal_angle(&Subspace::span_of(&[e2], 3, &t)) - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_calculus_matches_series() {
        let a = Operator::from_rows(3, &[0.3, 1.2, -0.4, -0.7, 0.1, 0.9, 0.5, -1.1, -0.2]).unwrap();
        for f in EntireFn::ALL {
            let s = apply_entire(f, &a).unwrap();
            let d = apply_entire_spectral(f, &a, &tol()).unwrap();
            assert!((s.matrix() - d.matrix()).norm() < 1e-10, "{f:?}");
        }
    }
}
