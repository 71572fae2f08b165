//! Quadrics as symmetric spaces, de Sitter space, Minkowski wedges, boosts
//! with complex time and the tube domain.
//!
//! Coordinates on `V = ℝ^{1,d}` are `(x₀, x₁, …, x_d)` with
//! `[x, y] = x₀y₀ − x₁y₁ − … − x_d y_d`. The modular flow is the boost
//! `h` in the `(x₀, x₁)` plane; the right wedge is `x₁ > |x₀|` and de
//! Sitter space is `[x, x] = −1`, with base point `e₂`.

use std::f64::consts::PI;

use nalgebra::DVector;
use rand::Rng;

use crate::exec::Exec;
use crate::linop::{self, Matrix};
use crate::report::{EqualityReport, SampleClass, SampleOutcome, BAND};
use crate::sampling::{self, LowDiscrepancy};
use crate::{Complex, Error, Result};

pub type Vector = DVector<f64>;
pub type CVector = DVector<Complex<f64>>;

/// Absolute tolerance for on-quadric and fixed-point residuals.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Number of Chebyshev points used for the KMS strip.
pub const KMS_POINTS: usize = 33;

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Dimension { expected: a, got: b });
    }
    if a < 3 {
        return Err(Error::Dimension { expected: 3, got: a });
    }
    Ok(())
}

/// `[x, y] = x₀y₀ − Σ xᵢyᵢ`.
pub fn lorentz_form(x: &Vector, y: &Vector) -> Result<f64> {
    check_dims(x.len(), y.len())?;
    Ok(x[0] * y[0] - x.rows(1, x.len() - 1).dot(&y.rows(1, y.len() - 1)))
}

/// Complex bilinear extension of [`lorentz_form`].
pub fn lorentz_form_c(z: &CVector, w: &CVector) -> Result<Complex<f64>> {
    check_dims(z.len(), w.len())?;
    let mut s = z[0] * w[0];
    for i in 1..z.len() {
        s -= z[i] * w[i];
    }
    Ok(s)
}

fn spatial_norm(x: &Vector) -> f64 {
    x.rows(1, x.len() - 1).norm()
}

/// `x₀ − |𝐱|`: positive exactly on the open future cone `V₊`.
pub fn future_margin(x: &Vector) -> f64 {
    x[0] - spatial_norm(x)
}

/// `x₁ − |x₀|`: positive exactly on the right wedge `W_R`.
pub fn wedge_margin(x: &Vector) -> f64 {
    x[1] - x[0].abs()
}

pub fn in_future_cone(x: &Vector, margin: f64) -> bool {
    future_margin(x) > margin
}

pub fn in_right_wedge(x: &Vector, margin: f64) -> bool {
    wedge_margin(x) > margin
}

/// Minkowski metric `diag(1, −1, …, −1)` on `ℝ^{1,d}`.
pub fn minkowski_metric(d: usize) -> Matrix {
    let mut m = -Matrix::identity(d + 1, d + 1);
    m[(0, 0)] = 1.0;
    m
}

/// The boost generator `h`: `e₀ ↦ e₁`, `e₁ ↦ e₀`.
pub fn boost_generator(d: usize) -> Matrix {
    let mut m = Matrix::zeros(d + 1, d + 1);
    m[(0, 1)] = 1.0;
    m[(1, 0)] = 1.0;
    m
}

/// `e^{sh}` for real `s`.
pub fn boost_matrix(d: usize, s: f64) -> Matrix {
    let mut m = Matrix::identity(d + 1, d + 1);
    m[(0, 0)] = s.cosh();
    m[(1, 1)] = s.cosh();
    m[(0, 1)] = s.sinh();
    m[(1, 0)] = s.sinh();
    m
}

/// `α_z(x) = e^{zh}x` for complex time `z`.
pub fn boost_flow(x: &CVector, z: Complex<f64>) -> CVector {
    let (c, s) = (z.cosh(), z.sinh());
    let mut out = x.clone();
    out[0] = c * x[0] + s * x[1];
    out[1] = s * x[0] + c * x[1];
    out
}

pub fn complexify(x: &Vector) -> CVector {
    x.map(|v| Complex::new(v, 0.0))
}

pub fn real_part(z: &CVector) -> Vector {
    z.map(|v| v.re)
}

pub fn imag_part(z: &CVector) -> Vector {
    z.map(|v| v.im)
}

/// `τ_h(x) = e^{πih}x = (−x₀, −x₁, x₂, …)`.
pub fn tau_h(x: &CVector) -> CVector {
    let mut out = x.clone();
    out[0] = -out[0];
    out[1] = -out[1];
    out
}

/// `τ̄_h(z) = τ_h(z̄)`.
pub fn tau_bar_h(z: &CVector) -> CVector {
    tau_h(&z.map(|v| v.conj()))
}

/// Wick rotation `κ_h = e^{−(πi/2)h}`: `x ↦ (−ix₁, −ix₀, x₂, …)`.
pub fn wick(z: &CVector) -> CVector {
    boost_flow(z, Complex::new(0.0, -PI / 2.0))
}

/// `κ_h⁻¹ = e^{(πi/2)h}`: `x ↦ (ix₁, ix₀, x₂, …)`.
pub fn wick_preimage(z: &CVector) -> CVector {
    boost_flow(z, Complex::new(0.0, PI / 2.0))
}

/// Margin of `Im z` in the future cone.
pub fn tube_margin(z: &CVector) -> f64 {
    future_margin(&imag_part(z))
}

/// `Im z ∈ V₊`, and `[z, z] = −1` when `on_quadric`.
pub fn in_tube(z: &CVector, on_quadric: bool) -> bool {
    if tube_margin(z) <= 0.0 {
        return false;
    }
    if on_quadric {
        return match lorentz_form_c(z, z) {
            Ok(q) => (q + 1.0).norm() < RESIDUAL_TOL * (1.0 + z.norm_squared()),
            Err(_) => false,
        };
    }
    true
}

/// The KMS strip grid: Chebyshev points in `(0, π)`.
pub fn kms_grid() -> Vec<f64> {
    sampling::chebyshev_grid(0.0, PI, KMS_POINTS)
}

/// `α_{it}(x)` lies in the tube for every `t` in the grid.
pub fn kms_membership_ds(x: &Vector, t_grid: &[f64]) -> bool {
    let z = complexify(x);
    !t_grid.is_empty() && t_grid.iter().all(|&t| in_tube(&boost_flow(&z, Complex::new(0.0, t)), true))
}

/// Flat version of [`kms_membership_ds`] on `V + iV₊`.
pub fn kms_membership_flat(x: &Vector, t_grid: &[f64]) -> bool {
    let z = complexify(x);
    !t_grid.is_empty() && t_grid.iter().all(|&t| in_tube(&boost_flow(&z, Complex::new(0.0, t)), false))
}

/// `‖τ̄_h(z) − z‖`.
pub fn tau_bar_residual(z: &CVector) -> f64 {
    (tau_bar_h(z) - z).norm()
}

/// `x ∈ κ_h(T^{τ̄_h})`: the Wick preimage is `τ̄_h`-fixed and in the tube.
pub fn in_wick_image(x: &Vector, on_quadric: bool) -> bool {
    let z = wick_preimage(&complexify(x));
    tau_bar_residual(&z) < RESIDUAL_TOL * (1.0 + x.norm()) && in_tube(&z, on_quadric)
}

/// The quadric `Q_c = {x : β(x, x) = c}` of a symmetric form `β`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadric {
    form: Matrix,
    c: f64,
}

/// `C(z) = Σ (−1)^k z^k/(2k)!` and `S(z) = Σ (−1)^k z^k/(2k+1)!`
/// truncated after `terms` terms.
pub fn cs_series(z: f64, terms: usize) -> (f64, f64) {
    let (mut c, mut s) = (0.0, 0.0);
    let mut term_c = 1.0;
    let mut term_s = 1.0;
    for k in 0..terms {
        c += term_c;
        s += term_s;
        let k = k as f64;
        term_c *= -z / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
        term_s *= -z / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    (c, s)
}

impl Quadric {
    pub fn new(form: Matrix, c: f64) -> Result<Self> {
        if form.nrows() != form.ncols() {
            return Err(Error::NotSquare { rows: form.nrows(), cols: form.ncols() });
        }
        if (&form - form.transpose()).amax() > 0.0 {
            return Err(Error::Domain("quadric form is not symmetric".into()));
        }
        if c == 0.0 || !c.is_finite() {
            return Err(Error::Domain("quadric level must be finite and nonzero".into()));
        }
        Ok(Quadric { form, c })
    }

    /// `dS^d = {[x, x] = −1} ⊆ ℝ^{1,d}`.
    pub fn de_sitter(d: usize) -> Self {
        Quadric { form: minkowski_metric(d), c: -1.0 }
    }

    pub fn dim(&self) -> usize {
        self.form.nrows()
    }

    pub fn level(&self) -> f64 {
        self.c
    }

    pub fn beta(&self, x: &Vector, y: &Vector) -> f64 {
        (x.transpose() * &self.form * y)[(0, 0)]
    }

    /// `|β(x, x) − c|`.
    pub fn residual(&self, x: &Vector) -> f64 {
        (self.beta(x, x) - self.c).abs()
    }

    /// `s_x(y) = −y + 2 (β(x, y)/β(x, x)) x`.
    pub fn point_symmetry(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        let bxx = self.beta(x, x);
        if bxx.abs() < 1e-12 {
            return Err(Error::Domain("point symmetry at an isotropic vector".into()));
        }
        Ok(-y + x * (2.0 * self.beta(x, y) / bxx))
    }

    /// Project `v` onto the tangent space `p^⊥`.
    pub fn tangent_part(&self, p: &Vector, v: &Vector) -> Vector {
        v - p * (self.beta(p, v) / self.beta(p, p))
    }

    /// `Exp_p(v) = C(β(v,v)/β(p,p)) p + S(β(v,v)/β(p,p)) v`, evaluated by
    /// the closed form on each branch of the sign of the ratio.
    pub fn exp(&self, p: &Vector, v: &Vector) -> Result<Vector> {
        let bpp = self.beta(p, p);
        let scale = 1.0 + p.norm() * v.norm();
        if self.beta(p, v).abs() > 1e-9 * scale {
            return Err(Error::Domain("exponential of a non-tangent vector".into()));
        }
        let eps = self.beta(v, v) / bpp;
        let (c, s) = (linop::c_real(eps), linop::s_real(eps));
        let out = p * c + v * s;
        let res = self.residual(&out);
        if res > 1e-9 * (1.0 + out.norm_squared()) {
            return Err(Error::Domain(format!("exponential left the quadric (residual {res:e})")));
        }
        Ok(out)
    }

    /// Same as [`Quadric::exp`] with `C`, `S` from a truncated series.
    pub fn exp_series(&self, p: &Vector, v: &Vector, terms: usize) -> Vector {
        let eps = self.beta(v, v) / self.beta(p, p);
        let (c, s) = cs_series(eps, terms);
        p * c + v * s
    }

    /// `‖γ(2t − s) − s_{γ(t)}(γ(s))‖` for `γ(u) = Exp_p(uv)`.
    pub fn geodesic_residual(&self, p: &Vector, v: &Vector, t: f64, s: f64) -> Result<f64> {
        let g = |u: f64| self.exp(p, &(v * u));
        let lhs = g(2.0 * t - s)?;
        let rhs = self.point_symmetry(&g(t)?, &g(s)?)?;
        Ok((lhs - rhs).norm())
    }
}

/// Coordinates of the polar chart `x = (sin r sinh s, sin r cosh s, cos r·ω)`
/// on the right wedge of `dS^d`: boost parameter `s`, geodesic parameter
/// `r ∈ (0, π)` and a unit direction `ω` in the `(x₂, …, x_d)` block.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarChartPoint {
    pub s: f64,
    pub r: f64,
    pub omega: Vector,
}

/// Point of `dS^d` at chart coordinates `(s, r, ω)`.
pub fn ds_polar_point(s: f64, r: f64, omega: &Vector) -> Vector {
    let d = omega.len() + 1;
    let mut x = Vector::zeros(d + 1);
    x[0] = r.sin() * s.sinh();
    x[1] = r.sin() * s.cosh();
    x.rows_mut(2, d - 1).copy_from(&(omega * r.cos()));
    x
}

/// The same point assembled as `e^{sh} R_ω Exp_{e₂}(r e₁)`, where `R_ω`
/// rotates `e₂` to `ω` inside the `(x₂, …, x_d)` block.
pub fn ds_polar_point_via_group(s: f64, r: f64, omega: &Vector) -> Result<Vector> {
    let d = omega.len() + 1;
    let q = Quadric::de_sitter(d);
    let mut e1 = Vector::zeros(d + 1);
    e1[1] = 1.0;
    let mut e2 = Vector::zeros(d + 1);
    e2[2] = 1.0;
    let y = q.exp(&e2, &(e1 * r))?;
    let mut w = Vector::zeros(d + 1);
    w.rows_mut(2, d - 1).copy_from(omega);
    // the rotation fixing span(e₀, e₁) and sending e₂ to ω acts on y = a e₁ + b e₂ as a e₁ + b ω
    let rotated = {
        let mut z = Vector::zeros(d + 1);
        z[1] = y[1];
        z += &w * y[2];
        z
    };
    Ok(boost_matrix(d, s) * rotated)
}

/// Why a point is outside the polar chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartFailure {
    /// `x₁ ≤ |x₀|`: no boost parameter.
    Boost,
    /// The spatial block does not have the norm `|cos r|` required by the quadric.
    Quadric,
}

/// Invert the polar chart: direction of the spatial block, then the boost
/// by `atanh(x₀/x₁)`, then `r` by `atan2`.
pub fn invert_polar_chart(x: &Vector) -> std::result::Result<PolarChartPoint, ChartFailure> {
    let d = x.len() - 1;
    let block = x.rows(2, d - 1).into_owned();
    let n = block.norm();
    let (omega, cos_r) = if d == 2 {
        (Vector::from_element(1, 1.0), block[0])
    } else if n > 0.0 {
        (&block / n, n)
    } else {
        let mut e = Vector::zeros(d - 1);
        e[0] = 1.0;
        (e, 0.0)
    };
    if !(x[1] > x[0].abs()) {
        return Err(ChartFailure::Boost);
    }
    let s = (x[0] / x[1]).atanh();
    let sin_r = (x[1] * x[1] - x[0] * x[0]).sqrt();
    if ((sin_r * sin_r + cos_r * cos_r) - 1.0).abs() > 1e-8 {
        return Err(ChartFailure::Quadric);
    }
    Ok(PolarChartPoint { s, r: sin_r.atan2(cos_r), omega })
}

/// Polar-wedge membership in `dS^d`: the chart inverts, the tangent vector
/// `r e₁ = (r/2)(e₁ + e₀) + (r/2)(e₁ − e₀)` has both cone components in
/// the open rays `C_±°`, its size `r` is below `π`, and the group-built
/// point reproduces `x`.
pub fn in_polar_wedge_ds(x: &Vector) -> bool {
    let Ok(c) = invert_polar_chart(x) else { return false };
    let (a, b) = (c.r / 2.0, c.r / 2.0);
    if !(a > 0.0 && b > 0.0 && 2.0 * (a * b).sqrt() < PI) {
        return false;
    }
    match ds_polar_point_via_group(c.s, c.r, &c.omega) {
        Ok(y) => (y - x).norm() < 1e-8 * (1.0 + x.norm()),
        Err(_) => false,
    }
}

/// Positivity: `X_h(x) = hx` lies in `V₊(x) = V₊ ∩ x^⊥`.
pub fn in_positivity_ds(x: &Vector) -> bool {
    let d = x.len() - 1;
    let hx = boost_generator(d) * x;
    let tangent = lorentz_form(x, &hx).map(|v| v.abs() < RESIDUAL_TOL * (1.0 + x.norm_squared())).unwrap_or(false);
    tangent && in_future_cone(&hx, 0.0)
}

/// Names of the five de Sitter tests in report order.
pub const DS_DOMAINS: [&str; 5] = ["wedge", "positivity", "kms", "wick", "polar"];
/// Names of the four flat Minkowski tests in report order.
pub const MINKOWSKI_DOMAINS: [&str; 4] = ["wedge", "positivity", "kms", "wick"];

/// The five de Sitter membership tests.
pub fn desitter_verdicts(x: &Vector, grid: &[f64]) -> Vec<bool> {
    vec![
        in_right_wedge(x, 0.0),
        in_positivity_ds(x),
        kms_membership_ds(x, grid),
        in_wick_image(x, true),
        in_polar_wedge_ds(x),
    ]
}

/// The four flat Minkowski membership tests.
pub fn minkowski_verdicts(x: &Vector, grid: &[f64]) -> Vec<bool> {
    let hx = boost_generator(x.len() - 1) * x;
    vec![in_right_wedge(x, 0.0), in_future_cone(&hx, 0.0), kms_membership_flat(x, grid), in_wick_image(x, false)]
}

const BOOST_CUTOFF: f64 = 3.0;

fn sphere(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> Vector {
    Vector::from_vec(sampling::unit_vector(rng, n))
}

/// Class of the `index`-th sample: two polar, two box, one band in every five.
pub fn sample_class(index: usize) -> SampleClass {
    match index % 5 {
        0 | 1 => SampleClass::Polar,
        2 | 3 => SampleClass::Box,
        _ => SampleClass::Band,
    }
}

/// Exponent range of band offsets: `10^{−9}` to `10^{−5}`.
pub fn band_offset(u: f64, sign: f64) -> f64 {
    sign * 10f64.powf(-5.0 - 4.0 * u)
}

/// The `index`-th de Sitter sample.
pub fn sample_ds(d: usize, seed: u64, index: usize, ld: &LowDiscrepancy) -> (SampleClass, Vector) {
    let class = sample_class(index);
    let u = ld.point(index);
    let mut rng = sampling::rng_for(seed, d as u64, index as u64);
    let x = match class {
        SampleClass::Polar => {
            let s = 4.0 * u[0] - 2.0;
            let r = PI * u[1];
            let omega = if d == 2 { Vector::from_element(1, 1.0) } else { sphere(&mut rng, d - 1) };
            ds_polar_point(s, r.max(f64::MIN_POSITIVE), &omega)
        }
        SampleClass::Box => {
            let beta = sampling::truncated_normal(&mut rng, BOOST_CUTOFF);
            let dir = sphere(&mut rng, d);
            let mut x = Vector::zeros(d + 1);
            x[0] = beta.sinh();
            x.rows_mut(1, d).copy_from(&(dir * beta.cosh()));
            x
        }
        _ => {
            let x0 = (2.0 * u[0] - 1.0).sinh();
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let x1 = x0.abs() + band_offset(u[1], sign);
            let rest = (1.0 + x0 * x0 - x1 * x1).max(0.0).sqrt();
            let omega = sphere(&mut rng, d - 1);
            let mut x = Vector::zeros(d + 1);
            x[0] = x0;
            x[1] = x1;
            x.rows_mut(2, d - 1).copy_from(&(omega * rest));
            x
        }
    };
    (class, x)
}


/// Evaluate the five de Sitter tests on `n` samples.
pub fn desitter_outcomes(d: usize, n: usize, seed: u64, exec: Exec) -> Result<Vec<SampleOutcome>> {
    if !(2..=4).contains(&d) {
        return Err(Error::Unsupported(format!("de Sitter dimension {d}")));
    }
    let ld = LowDiscrepancy::new(2, seed);
    let grid = kms_grid();
    Ok(exec.map_indexed(n, |i| {
        let (class, x) = sample_ds(d, seed, i, &ld);
        SampleOutcome {
            index: i,
            class,
            verdicts: desitter_verdicts(&x, &grid),
            margin: wedge_margin(&x),
            point: x.iter().copied().collect(),
        }
    }))
}

/// Five-way de Sitter wedge equality on `n` samples.
pub fn desitter_wedge_equalities(d: usize, n: usize, seed: u64, exec: Exec) -> Result<EqualityReport> {
    let outcomes = desitter_outcomes(d, n, seed, exec)?;
    Ok(EqualityReport::from_outcomes(&format!("dS{d}"), seed, &DS_DOMAINS, &outcomes, BAND))
}

/// Evaluate the four Minkowski tests on `n` samples: uniform in
/// `[−1, 1]^{d+1}` and, every fifth sample, within the boundary band.
pub fn minkowski_outcomes(d: usize, n: usize, seed: u64, exec: Exec) -> Result<Vec<SampleOutcome>> {
    if d < 2 {
        return Err(Error::Unsupported(format!("Minkowski dimension {d}")));
    }
    let ld = LowDiscrepancy::new(d + 1, seed);
    let grid = kms_grid();
    Ok(exec.map_indexed(n, |i| {
        let u = ld.point(i);
        let mut x = Vector::from_iterator(d + 1, u.iter().map(|v| 2.0 * v - 1.0));
        let class = if i % 5 == 4 {
            let mut rng = sampling::rng_for(seed, 100 + d as u64, i as u64);
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            x[1] = x[0].abs() + band_offset(rng.gen::<f64>(), sign);
            SampleClass::Band
        } else {
            SampleClass::Box
        };
        SampleOutcome {
            index: i,
            class,
            verdicts: minkowski_verdicts(&x, &grid),
            margin: wedge_margin(&x),
            point: x.iter().copied().collect(),
        }
    }))
}

/// Four-way flat wedge equality on `n` samples.
pub fn minkowski_wedge_equalities(d: usize, n: usize, seed: u64, exec: Exec) -> Result<EqualityReport> {
    let outcomes = minkowski_outcomes(d, n, seed, exec)?;
    Ok(EqualityReport::from_outcomes(&format!("R1,{d}"), seed, &MINKOWSKI_DOMAINS, &outcomes, BAND))
}

/// Tube fixed point `e^{sh} R_ω Exp_{e₂}(it e₀) = (i sin t cosh s, i sin t sinh s, cos t·ω)`.
pub fn tube_fixed_point(s: f64, t: f64, omega: &Vector) -> CVector {
    let d = omega.len() + 1;
    let mut z = CVector::from_element(d + 1, Complex::new(0.0, 0.0));
    z[0] = Complex::new(0.0, t.sin() * s.cosh());
    z[1] = Complex::new(0.0, t.sin() * s.sinh());
    for k in 0..d - 1 {
        z[2 + k] = Complex::new(t.cos() * omega[k], 0.0);
    }
    z
}

/// Recover `(s, t, ω)` from a `τ̄_h`-fixed tube point.
pub fn invert_tube_fixed_point(z: &CVector) -> Option<(f64, f64, Vector)> {
    let (a, b) = (z[0].im, z[1].im);
    if !(a > b.abs()) {
        return None;
    }
    let d = z.len() - 1;
    let block = Vector::from_iterator(d - 1, (2..=d).map(|k| z[k].re));
    let (omega, cos_t) = if d == 2 {
        (Vector::from_element(1, 1.0), block[0])
    } else {
        let n = block.norm();
        if n > 0.0 {
            (&block / n, n)
        } else {
            let mut e = Vector::zeros(d - 1);
            e[0] = 1.0;
            (e, 0.0)
        }
    };
    let sin_t = (a * a - b * b).sqrt();
    Some(((b / a).atanh(), sin_t.atan2(cos_t), omega))
}

/// Wick-rotation bridge on `dS^d`, both directions.
///
/// Forward: wedge samples `x` have `κ_h⁻¹(x)` in the `τ̄_h`-fixed tube.
/// Reverse: tube fixed points `z` built from the boost and rotation chart
/// satisfy `κ_h(z) ∈ W_R ∩ dS^d` and are reproduced by the chart.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CayleyFixedPointReport {
    pub d: usize,
    pub n: usize,
    pub seed: u64,
    pub forward_failures: Vec<usize>,
    pub reverse_failures: Vec<usize>,
    pub max_reconstruction: f64,
    pub base_point_excluded: bool,
}

impl CayleyFixedPointReport {
    pub fn passed(&self) -> bool {
        self.forward_failures.is_empty() && self.reverse_failures.is_empty() && self.base_point_excluded
    }
}

pub fn cayley_fixedpoint_check(d: usize, n: usize, seed: u64, exec: Exec) -> Result<CayleyFixedPointReport> {
    if !(2..=4).contains(&d) {
        return Err(Error::Unsupported(format!("de Sitter dimension {d}")));
    }
    let ld = LowDiscrepancy::new(2, seed);
    let rows = exec.map_indexed(n, |i| {
        let u = ld.point(i);
        let mut rng = sampling::rng_for(seed, 200 + d as u64, i as u64);
        let s = 4.0 * u[0] - 2.0;
        let t = PI * u[1];
        let omega = if d == 2 { Vector::from_element(1, 1.0) } else { sphere(&mut rng, d - 1) };
        // forward
        let x = ds_polar_point(s, t, &omega);
        let z = wick_preimage(&complexify(&x));
        let forward = !in_right_wedge(&x, BAND) || (in_tube(&z, true) && tau_bar_residual(&z) < RESIDUAL_TOL);
        // reverse
        let zf = tube_fixed_point(s, t, &omega);
        let back = wick(&zf);
        let mut reverse = in_tube(&zf, true) && tau_bar_residual(&zf) < RESIDUAL_TOL;
        let is_real = imag_part(&back).amax() < RESIDUAL_TOL;
        let xr = real_part(&back);
        reverse &= is_real && in_right_wedge(&xr, 0.0) && Quadric::de_sitter(d).residual(&xr) < RESIDUAL_TOL;
        let recon = match invert_tube_fixed_point(&zf) {
            Some((s2, t2, w2)) => (tube_fixed_point(s2, t2, &w2) - &zf).norm(),
            None => f64::INFINITY,
        };
        (forward, reverse && recon < 1e-8, recon)
    });
    let mut e2 = Vector::zeros(d + 1);
    e2[2] = 1.0;
    let z2 = wick_preimage(&complexify(&e2));
    Ok(CayleyFixedPointReport {
        d,
        n,
        seed,
        forward_failures: rows.iter().enumerate().filter(|(_, r)| !r.0).map(|(i, _)| i).collect(),
        reverse_failures: rows.iter().enumerate().filter(|(_, r)| !r.1).map(|(i, _)| i).collect(),
        max_reconstruction: rows.iter().map(|r| r.2).fold(0.0, f64::max),
        base_point_excluded: !in_tube(&z2, true),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn lorentz_form_examples() {
        assert_eq!(lorentz_form(&v(&[1.0, 0.0, 0.0]), &v(&[1.0, 0.0, 0.0])).unwrap(), 1.0);
        assert_eq!(lorentz_form(&v(&[0.0, 1.0, 0.0]), &v(&[0.0, 1.0, 0.0])).unwrap(), -1.0);
        assert_eq!(lorentz_form(&v(&[1.0, 1.0, 0.0]), &v(&[1.0, -1.0, 0.0])).unwrap(), 2.0);
        assert!(matches!(lorentz_form(&v(&[1.0, 1.0, 0.0]), &v(&[1.0, 0.0])), Err(Error::Dimension { .. })));
    }

    #[test]
    fn cone_and_wedge_examples() {
        assert!(in_future_cone(&v(&[1.0, 0.0, 0.0]), 0.0));
        assert!(in_right_wedge(&v(&[0.0, 1.0, 0.0]), 0.0));
        assert!(!in_future_cone(&v(&[0.0, 1.0, 0.0]), 0.0));
        assert!(!in_future_cone(&v(&[1.0, 1.0, 0.0]), 0.0));
    }

    #[test]
    fn point_symmetry_examples() {
        let q = Quadric::de_sitter(2);
        let (e1, e2) = (v(&[0.0, 1.0, 0.0]), v(&[0.0, 0.0, 1.0]));
        assert_eq!(q.point_symmetry(&e1, &e1).unwrap(), e1);
        assert_eq!(q.point_symmetry(&e1, &e2).unwrap(), -&e2);
        let y = v(&[0.3, -1.2, 2.0]);
        let back = q.point_symmetry(&e1, &q.point_symmetry(&e1, &y).unwrap()).unwrap();
        assert!((back - y).norm() < 1e-15);
        assert!(q.point_symmetry(&v(&[1.0, 1.0, 0.0]), &e1).is_err());
    }

    #[test]
    fn exp_examples() {
        let q = Quadric::de_sitter(2);
        let (e0, e1, e2) = (v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0]), v(&[0.0, 0.0, 1.0]));
        assert_eq!(q.exp(&e1, &Vector::zeros(3)).unwrap(), e1);
        let t = 0.8;
        let y = q.exp(&e1, &(&e0 * t)).unwrap();
        assert!((y - v(&[t.sinh(), t.cosh(), 0.0])).norm() < 1e-15);
        assert!((q.exp(&e1, &(&e2 * PI)).unwrap() + &e1).norm() < 1e-15);
        assert!(q.exp(&e1, &e1).is_err());
    }

    #[test]
    fn geodesic_null_branch() {
        let q = Quadric::de_sitter(2);
        let p = v(&[0.0, 1.0, 0.0]);
        let null = v(&[1.0, 0.0, 1.0]);
        assert_eq!(q.beta(&null, &null), 0.0);
        assert!(q.geodesic_residual(&p, &null, 0.7, -1.3).unwrap() < 1e-12);
        assert_eq!(q.geodesic_residual(&p, &Vector::zeros(3), 0.7, -1.3).unwrap(), 0.0);
    }

    #[test]
    fn boost_examples() {
        let x = complexify(&v(&[0.3, -0.2, 0.9]));
        assert_eq!(boost_flow(&x, Complex::new(0.0, 0.0)), x);
        assert!((boost_flow(&x, Complex::new(0.0, PI)) - tau_h(&x)).norm() < 1e-15);
        let y = boost_flow(&complexify(&v(&[0.0, 1.0, 0.0])), Complex::new(0.0, PI / 2.0));
        assert!((y[0] - Complex::new(0.0, 1.0)).norm() < 1e-15);
        assert!(y[1].norm() < 1e-15 && y[2].norm() == 0.0);
    }

    #[test]
    fn tube_examples() {
        for t in [0.1f64, 1.0, 3.0] {
            let z = CVector::from_vec(vec![Complex::new(0.0, t.sin()), Complex::new(t.cos(), 0.0), Complex::new(0.0, 0.0)]);
            assert!(in_tube(&z, true));
        }
        assert!(!in_tube(&complexify(&v(&[0.0, 1.0, 0.0])), true));
        let past = CVector::from_vec(vec![Complex::new(0.0, -1.0), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)]);
        assert!(!in_tube(&past, false));
    }

    #[test]
    fn kms_examples() {
        let g = kms_grid();
        assert!(kms_membership_ds(&v(&[0.0, 1.0, 0.0]), &g));
        assert!(!kms_membership_ds(&v(&[0.0, -1.0, 0.0]), &g));
        assert!(!kms_membership_ds(&v(&[0.0, 0.0, 1.0]), &g));
    }

    #[test]
    fn five_tests_on_fixed_points() {
        let g = kms_grid();
        assert_eq!(desitter_verdicts(&v(&[0.0, 1.0, 0.0]), &g), vec![true; 5]);
        assert_eq!(desitter_verdicts(&v(&[0.0, 0.0, 1.0]), &g), vec![false; 5]);
        assert_eq!(minkowski_verdicts(&v(&[0.0, 1.0, 0.0]), &g), vec![true; 4]);
        assert_eq!(minkowski_verdicts(&v(&[1.0, 0.0, 0.0]), &g), vec![false; 4]);
        assert_eq!(wedge_margin(&v(&[0.5, 0.5, 0.0])), 0.0);
    }

    #[test]
    fn chart_round_trip() {
        for d in 2..=4 {
            let omega = {
                let mut w = Vector::from_element(d - 1, 1.0);
                w /= w.norm();
                w
            };
            for (s, r) in [(0.3, 0.4), (-1.5, 1.2), (2.0, 1.5)] {
                let x = ds_polar_point(s, r, &omega);
                let y = ds_polar_point_via_group(s, r, &omega).unwrap();
                assert!((&x - &y).norm() < 1e-14);
                assert!(Quadric::de_sitter(d).residual(&x) < 1e-14);
                let c = invert_polar_chart(&x).unwrap();
                assert!((c.s - s).abs() < 1e-12 && (c.r - r).abs() < 1e-12);
            }
        }
        assert_eq!(invert_polar_chart(&v(&[0.0, -1.0, 0.0])), Err(ChartFailure::Boost));
    }

    #[test]
    fn series_matches_closed_form() {
        for z in [-9.0, -1.0, 0.0, 0.5, 4.0, 9.0] {
            let (c, s) = cs_series(z, 40);
            assert!((c - linop::c_real(z)).abs() < 1e-10);
            assert!((s - linop::s_real(z)).abs() < 1e-10);
        }
    }

    #[test]
    fn small_harness_runs() {
        let r = desitter_wedge_equalities(3, 200, 5, Exec::Sequential).unwrap();
        assert!(r.passed(), "{:?}", r.witnesses);
        assert_eq!(r.tallies.total(), 200);
        let m = minkowski_wedge_equalities(2, 200, 5, Exec::Parallel).unwrap();
        assert!(m.passed());
        assert!(cayley_fixedpoint_check(2, 100, 1, Exec::Sequential).unwrap().passed());
    }
}
