//! Regularity of the exponential and polar maps of a symmetric space,
//! the tangent map of `(g, x) ↦ g·Exp(x)` and the `σ_x`, `ζ_x`
//! automorphisms.
//!
//! Every regularity flag is decided twice: spectrally on `𝔮_L = 𝔮 + [𝔮, 𝔮]`
//! and by invertibility of the relevant entire function of `ad x`. Outside
//! a narrow band around the singular set the two must agree.

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::exec::Exec;
use crate::liealg::{Element, InvolutionMap, LieAlgebraRealization};
use crate::linop::{self, EntireFn, Matrix, Operator, Subspace};
use crate::sampling;
use crate::wedge::CausalSymmetricSpec;
use crate::{Complex, Error, Result, Tolerance};

/// Spectral distances inside `[SINGULAR_BAND, BORDERLINE_BAND]` are too
/// close to call; the invertibility cross-check is skipped there.
pub const BORDERLINE_BAND: f64 = 1e-5;
pub const SINGULAR_BAND: f64 = 1e-10;
/// Relative smallest singular value below which a map counts as singular.
pub const INVERTIBLE_TOL: f64 = 1e-8;
/// Grid size of the ray scans.
pub const SCAN_POINTS: usize = 64;

/// A symmetric Lie algebra `(𝔤, τ)` with a second involution `σ`
/// commuting with `τ`.
#[derive(Debug, Clone)]
pub struct PolarContext {
    pub g: LieAlgebraRealization,
    pub sigma: InvolutionMap,
    pub tau: InvolutionMap,
    pub h: Subspace,
    pub q: Subspace,
    /// `𝔮 + [𝔮, 𝔮]`.
    pub q_l: Subspace,
    /// `𝔤^σ`, the `a`-slot of the tangent map.
    pub g_sigma: Subspace,
    /// `𝔮^σ`.
    pub q_sigma: Subspace,
    /// `𝔮^{−σ}`, where the polar parameter lives.
    pub q_anti: Subspace,
    tol: Tolerance,
}

impl PolarContext {
    pub fn new(g: &LieAlgebraRealization, sigma: InvolutionMap, tau: InvolutionMap, tol: &Tolerance) -> Result<Self> {
        if !sigma.commutes_with(&tau, tol) {
            return Err(Error::InvalidSpec(format!(
                "sigma and tau do not commute (residual {:e})",
                sigma.commutator_residual(&tau)
            )));
        }
        let h = tau.fixed(tol);
        let q = tau.anti_fixed(tol);
        let q_l = q.sum(&g.bracket_span(&q, &q, tol), tol);
        let g_sigma = sigma.fixed(tol);
        let q_sigma = q.intersection(&g_sigma, tol);
        let q_anti = q.intersection(&sigma.anti_fixed(tol), tol);
        let ctx = PolarContext { g: g.clone(), sigma, tau, h, q, q_l, g_sigma, q_sigma, q_anti, tol: *tol };
        let r = ctx.span_stability_residual();
        if r > 1e3 * tol.at(1.0) {
            return Err(Error::InvalidRealization(format!("q + [q, q] is not bracket-stable (residual {r:e})")));
        }
        Ok(ctx)
    }

    /// `σ = τθ` on a causal symmetric spec.
    pub fn for_spec(spec: &CausalSymmetricSpec) -> Result<Self> {
        let tol = Tolerance::default();
        let sigma = InvolutionMap::new(&spec.g, spec.tau.compose(&spec.theta), &tol)?;
        Self::new(&spec.g, sigma, spec.tau.clone(), &tol)
    }

    /// How far `[𝔮, 𝔮_L]` leaves `𝔮_L`.
    pub fn span_stability_residual(&self) -> f64 {
        let qv = self.q.vectors();
        let lv = self.q_l.vectors();
        let mut worst: f64 = 0.0;
        for a in &qv {
            for b in &lv {
                worst = worst.max(self.q_l.residual(&self.g.bracket(a, b)));
            }
        }
        worst
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    fn require_in(&self, x: &Element, s: &Subspace, what: &str) -> Result<()> {
        if s.residual(x) > 1e-9 * (1.0 + x.amax()) {
            return Err(Error::Domain(format!("x is not in {what}")));
        }
        Ok(())
    }
}

/// `σ_x = e^{−2 ad x}`.
pub fn sigma_x(g: &LieAlgebraRealization, x: &Element) -> Result<Matrix> {
    g.exp_ad(x, -2.0)
}

/// `ζ_x = e^{−ad x}`, a square root of `σ_x`.
pub fn zeta_x(g: &LieAlgebraRealization, x: &Element) -> Result<Matrix> {
    g.exp_ad(x, -1.0)
}

/// A regularity verdict with both criteria.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Regularity {
    pub regular: bool,
    /// Distance of the `ad x|_{𝔮_L}` spectrum to the forbidden lattice.
    pub spectral_distance: f64,
    /// Smallest singular value of the cross-check map, relative to the
    /// norm of the entire function of `ad x`.
    pub min_singular: f64,
    /// True when the distance is in the band where neither criterion is trusted.
    pub borderline: bool,
}

/// Distance from `z` to `{(n + offset)πi : n ∈ ℤ}`, skipping `0`.
fn lattice_distance(z: Complex<f64>, offset: f64) -> f64 {
    let k = (z.im / PI - offset).round();
    (-1..=1)
        .map(|d| k + d as f64 + offset)
        .filter(|m| *m != 0.0)
        .map(|m| (z.re * z.re + (z.im - m * PI).powi(2)).sqrt())
        .fold(f64::INFINITY, f64::min)
}

fn restrict(m: &Matrix, s: &Subspace) -> Matrix {
    s.basis().transpose() * m * s.basis()
}

/// Smallest singular value of `f(ad x)` restricted to `s`, relative to
/// `max(1, ‖f(ad x)‖₂)`.
fn restricted_min_singular(full: &Matrix, s: &Subspace) -> f64 {
    if s.dim() == 0 {
        return 1.0;
    }
    let scale = full.clone().svd(false, false).singular_values.max().max(1.0);
    restrict(full, s).svd(false, false).singular_values.min() / scale
}

fn spectral_distance(ctx: &PolarContext, x: &Element, offset: f64) -> Result<f64> {
    let restricted = Operator::new(restrict(ctx.g.ad(x).matrix(), &ctx.q_l))?;
    let ev = linop::eigenvalues(&restricted)?;
    Ok(ev.iter().map(|z| lattice_distance(*z, offset)).fold(f64::INFINITY, f64::min))
}

fn decide(distance: f64, min_singular: f64, what: &str) -> Result<Regularity> {
    let borderline = (SINGULAR_BAND..=BORDERLINE_BAND).contains(&distance);
    let spectral = distance > BORDERLINE_BAND;
    let invertible = min_singular > INVERTIBLE_TOL;
    if !borderline && spectral != invertible {
        return Err(Error::CriteriaDisagree(format!(
            "{what}: spectral distance {distance:e} but relative singular value {min_singular:e}"
        )));
    }
    Ok(Regularity { regular: if borderline { distance > 1e-7 } else { spectral }, spectral_distance: distance, min_singular, borderline })
}

/// `Spec(ad x|_{𝔮_L}) ∩ ℤπi ⊆ {0}`, cross-checked against invertibility of
/// `sinh(ad x)/ad x` on `𝔮`. Requires `x ∈ 𝔮`.
pub fn exp_regular(ctx: &PolarContext, x: &Element) -> Result<Regularity> {
    ctx.require_in(x, &ctx.q, "q")?;
    let distance = spectral_distance(ctx, x, 0.0)?;
    let sinhc = linop::apply_entire(EntireFn::Sinhc, &ctx.g.ad(x))?;
    decide(distance, restricted_min_singular(sinhc.matrix(), &ctx.q), "exp regularity")
}

/// `Spec(ad x|_{𝔮_L}) ∩ (π/2 + ℤπ)i = ∅`, cross-checked against
/// invertibility of `cosh(ad x)` on `𝔮^σ`. Requires `x ∈ 𝔮^{−σ}` with
/// `x` exp-regular.
pub fn polar_regular(ctx: &PolarContext, x: &Element) -> Result<Regularity> {
    ctx.require_in(x, &ctx.q_anti, "q^{-sigma}")?;
    if !exp_regular(ctx, x)?.regular {
        return Err(Error::Domain("polar regularity presumes an exp-regular parameter".into()));
    }
    let distance = spectral_distance(ctx, x, 0.5)?;
    let cosh = linop::apply_entire(EntireFn::Cosh, &ctx.g.ad(x))?;
    decide(distance, restricted_min_singular(cosh.matrix(), &ctx.q_sigma), "polar regularity")
}

/// `cosh(ad x)a_𝔮 + (sinh(ad x)/ad x)b − sinh(ad x)a_𝔥` for `a ∈ 𝔤^σ`,
/// `b ∈ 𝔮^{−σ}`.
pub fn tangent_polar(ctx: &PolarContext, x: &Element, a: &Element, b: &Element) -> Result<Element> {
    ctx.require_in(x, &ctx.q_anti, "q^{-sigma}")?;
    ctx.require_in(a, &ctx.g_sigma, "g^sigma")?;
    ctx.require_in(b, &ctx.q_anti, "q^{-sigma}")?;
    let ad = ctx.g.ad(x);
    let a_q = ctx.q.projector() * a;
    let a_h = a - &a_q;
    let cosh = linop::apply_entire(EntireFn::Cosh, &ad)?;
    let sinhc = linop::apply_entire(EntireFn::Sinhc, &ad)?;
    let sinh = linop::apply_entire(EntireFn::Sinh, &ad)?;
    Ok(cosh.matrix() * a_q + sinhc.matrix() * b - sinh.matrix() * a_h)
}

/// The tangent map assembled on bases of `𝔤^σ ⊕ 𝔮^{−σ}`, as a matrix
/// into `𝔮` coordinates.
pub fn tangent_polar_matrix(ctx: &PolarContext, x: &Element) -> Result<Matrix> {
    let zero = Element::zeros(ctx.g.dim());
    let mut cols = Vec::new();
    for a in ctx.g_sigma.vectors() {
        cols.push(ctx.q.basis().transpose() * tangent_polar(ctx, x, &a, &zero)?);
    }
    for b in ctx.q_anti.vectors() {
        cols.push(ctx.q.basis().transpose() * tangent_polar(ctx, x, &zero, &b)?);
    }
    Ok(Matrix::from_columns(&cols))
}

/// Rank of [`tangent_polar_matrix`]; full rank is `dim 𝔮`.
pub fn tangent_rank(ctx: &PolarContext, x: &Element) -> Result<usize> {
    let m = tangent_polar_matrix(ctx, x)?;
    let sv = m.svd(false, false).singular_values;
    let max = sv.max();
    Ok(sv.iter().filter(|s| **s > INVERTIBLE_TOL * max).count())
}

/// `𝔤_m = 𝔤^{τσ_x}` and the decomposition of its `σ_x²`-fixed part.
#[derive(Debug, Clone)]
pub struct StabilizerReport {
    pub algebra: Subspace,
    /// `𝔤^{σ_x}`; its dimension jumps where `ad x` meets `πiℤ ∖ {0}`.
    pub sigma_fixed: Subspace,
    /// `𝔤_m^{σ_x²}`.
    pub fixed_square: Subspace,
    /// `𝔥^{σ_x} ⊕ 𝔮^{−σ_x}`.
    pub split: Subspace,
    pub max_angle: f64,
}

impl StabilizerReport {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn decomposes(&self, tol: &Tolerance) -> bool {
        self.fixed_square.dim() == self.split.dim() && self.max_angle < tol.angle
    }
}

pub fn stabilizer_algebra(ctx: &PolarContext, x: &Element) -> Result<StabilizerReport> {
    ctx.require_in(x, &ctx.q, "q")?;
    let tol = &ctx.tol;
    let d = ctx.g.dim();
    let eye = Matrix::identity(d, d);
    let s = sigma_x(&ctx.g, x)?;
    let algebra = linop::null_space(&(ctx.tau.matrix() * &s - &eye), tol);
    let fixed_square = algebra.intersection(&linop::null_space(&(&s * &s - &eye), tol), tol);
    let sigma_fixed = linop::null_space(&(&s - &eye), tol);
    let h_fixed = ctx.h.intersection(&sigma_fixed, tol);
    let q_anti = ctx.q.intersection(&linop::null_space(&(&s + &eye), tol), tol);
    let split = h_fixed.sum(&q_anti, tol);
    let max_angle = fixed_square.max_principal_angle(&split);
    Ok(StabilizerReport { algebra, sigma_fixed, fixed_square, split, max_angle })
}

/// `exp(x) = exp(y)` implies `x − y` central, for `ρ_i(ad x), ρ_i(ad y) < π`.
/// Returns whether the implication held.
pub fn exp_fiber_central(g: &LieAlgebraRealization, x: &Element, y: &Element) -> Result<bool> {
    for v in [x, y] {
        let r = linop::imag_spectral_radius(&g.ad(v))?;
        if !(r < PI) {
            return Err(Error::Domain(format!("imaginary spectral radius {r} is not below pi")));
        }
    }
    let ex = g.exp_matrix(x)?;
    let ey = g.exp_matrix(y)?;
    let scale = 1.0 + ex.amax();
    if (ex - ey).amax() >= 1e-9 * scale {
        return Ok(true);
    }
    Ok(g.ad(&(x - y)).matrix().amax() < 1e-7 * (1.0 + x.amax() + y.amax()))
}

/// Which map a ray scan probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanKind {
    /// `sinh(ad x)/ad x` on `𝔮`.
    Exp,
    /// `cosh(ad x)` on `𝔮^σ`.
    Polar,
}

/// Singular parameters found along `t ↦ t·direction`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RayScan {
    pub kind: ScanKind,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub singular_t: Vec<f64>,
}

fn scan_value(ctx: &PolarContext, kind: ScanKind, x: &Element) -> Result<f64> {
    let ad = ctx.g.ad(x);
    Ok(match kind {
        ScanKind::Exp => {
            restricted_min_singular(linop::apply_entire(EntireFn::Sinhc, &ad)?.matrix(), &ctx.q)
        }
        ScanKind::Polar => {
            restricted_min_singular(linop::apply_entire(EntireFn::Cosh, &ad)?.matrix(), &ctx.q_sigma)
        }
    })
}

/// Golden-section minimization of `f` on `[a, b]`.
fn golden_min(mut a: f64, mut b: f64, f: impl Fn(f64) -> Result<f64>) -> Result<(f64, f64)> {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > 1e-12 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    let t = 0.5 * (a + b);
    Ok((t, f(t)?))
}

/// Scan `SCAN_POINTS` parameters in `[t0, t1]`, refine each grid-local
/// minimum by golden section, and keep the minima where the map is singular.
pub fn scan_ray(ctx: &PolarContext, kind: ScanKind, direction: &Element, t0: f64, t1: f64) -> Result<RayScan> {
    let grid: Vec<f64> =
        (0..SCAN_POINTS).map(|i| t0 + (t1 - t0) * i as f64 / (SCAN_POINTS - 1) as f64).collect();
    let values = grid.iter().map(|t| scan_value(ctx, kind, &(direction * *t))).collect::<Result<Vec<_>>>()?;
    let mut singular_t = Vec::new();
    for i in 1..SCAN_POINTS - 1 {
        if values[i] <= values[i - 1] && values[i] < values[i + 1] {
            let (t, v) = golden_min(grid[i - 1], grid[i + 1], |t| scan_value(ctx, kind, &(direction * t)))?;
            if v < 1e-6 {
                singular_t.push(t);
            }
        }
    }
    Ok(RayScan { kind, grid, values, singular_t })
}

/// Agreement of the two regularity criteria on random parameters.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RegularityTally {
    pub samples: usize,
    pub exp_singular: usize,
    pub polar_singular: usize,
    pub borderline: usize,
    /// Samples on which the tangent-map rank contradicts the polar flag.
    pub rank_mismatches: usize,
    pub disagreements: Vec<String>,
}

impl RegularityTally {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.rank_mismatches == 0
    }

    pub fn merge(&mut self, other: RegularityTally) {
        self.samples += other.samples;
        self.exp_singular += other.exp_singular;
        self.polar_singular += other.polar_singular;
        self.borderline += other.borderline;
        self.rank_mismatches += other.rank_mismatches;
        self.disagreements.extend(other.disagreements);
    }
}

fn random_in<R: Rng>(s: &Subspace, rng: &mut R) -> Element {
    let c = nalgebra::DVector::from_fn(s.dim(), |_, _| sampling::truncated_normal(rng, 4.0));
    s.basis() * c
}

/// Sample `n` parameters `x ∈ 𝔮^{−σ}` (a quarter of them rescaled onto
/// the singular sets) and compare both criteria of both maps.
pub fn regularity_agreement(ctx: &PolarContext, n: usize, seed: u64, exec: Exec) -> Result<RegularityTally> {
    if ctx.q_anti.dim() == 0 {
        return Err(Error::Unsupported("q^{-sigma} is zero".into()));
    }
    let rows = exec.map_indexed(n, |i| -> Result<RegularityTally> {
        let mut rng = sampling::rng_for(seed, 600, i as u64);
        let mut x = random_in(&ctx.q_anti, &mut rng);
        let rho = linop::imag_spectral_radius(&ctx.g.ad(&x))?;
        if rho > 1e-9 {
            x *= match i % 4 {
                0 => PI / 2.0 / rho,
                1 => PI / rho,
                _ => rng.gen_range(0.05..2.5) * PI / 2.0 / rho,
            };
        }
        let mut t = RegularityTally { samples: 1, ..Default::default() };
        match exp_regular(ctx, &x) {
            Ok(r) if r.borderline => t.borderline += 1,
            Ok(r) if !r.regular => t.exp_singular += 1,
            Ok(_) => match polar_regular(ctx, &x) {
                Ok(p) => {
                    if p.borderline {
                        t.borderline += 1;
                    } else {
                        if !p.regular {
                            t.polar_singular += 1;
                        }
                        let full = tangent_rank(ctx, &x)? == ctx.q.dim();
                        if full != p.regular {
                            t.rank_mismatches += 1;
                        }
                    }
                }
                Err(Error::CriteriaDisagree(m)) => t.disagreements.push(format!("sample {i}: {m}")),
                Err(e) => return Err(e),
            },
            Err(Error::CriteriaDisagree(m)) => t.disagreements.push(format!("sample {i}: {m}")),
            Err(e) => return Err(e),
        }
        Ok(t)
    });
    let mut total = RegularityTally::default();
    for r in rows {
        total.merge(r?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::Sl2Basis;

    fn ctx() -> PolarContext {
        PolarContext::for_spec(&CausalSymmetricSpec::sl2_cayley().unwrap()).unwrap()
    }

    fn ray(t: f64) -> Element {
        Element::from_vec(vec![0.0, t, -t])
    }

    #[test]
    fn context_dimensions() {
        let c = ctx();
        assert_eq!((c.q.dim(), c.q_l.dim(), c.q_sigma.dim(), c.q_anti.dim()), (2, 3, 1, 1));
        assert!(c.q_anti.residual(&ray(1.0)) < 1e-12);
        assert!(c.span_stability_residual() < 1e-12);
    }

    #[test]
    fn sigma_zeta() {
        let c = ctx();
        let zero = Element::zeros(3);
        assert!((sigma_x(&c.g, &zero).unwrap() - Matrix::identity(3, 3)).amax() < 1e-15);
        let x = Element::from_vec(vec![0.3, -0.2, 0.7]);
        let z = zeta_x(&c.g, &x).unwrap();
        let s = sigma_x(&c.g, &x).unwrap();
        assert!((&z * &z - &s).amax() < 1e-12);
        assert!(c.g.automorphism_residual(&s) < 1e-12);
        // −1 eigenspace of σ_x is the kernel of cosh(ad x)
        let x = ray(PI / 4.0);
        let s = sigma_x(&c.g, &x).unwrap();
        let minus = linop::null_space(&(&s + Matrix::identity(3, 3)), c.tolerance());
        let k = linop::kernel_cosh(&c.g.ad(&x), c.tolerance()).unwrap();
        assert_eq!(minus.dim(), 2);
        assert!(minus.same_as(&k, c.tolerance()));
    }

    #[test]
    fn regularity_examples() {
        let c = ctx();
        let r = exp_regular(&c, &ray(0.3)).unwrap();
        assert!(r.regular && !r.borderline);
        assert!(!exp_regular(&c, &ray(PI / 2.0)).unwrap().regular);
        let b = Sl2Basis::new(&c.g).unwrap();
        assert!(exp_regular(&c, &(&b.e0 + &b.f0)).unwrap().regular);
        assert!(polar_regular(&c, &ray(0.3)).unwrap().regular);
        assert!(!polar_regular(&c, &ray(PI / 4.0)).unwrap().regular);
        assert!(polar_regular(&c, &Element::zeros(3)).unwrap().regular);
        assert!(matches!(polar_regular(&c, &ray(PI / 2.0)), Err(Error::Domain(_))));
        assert!(matches!(exp_regular(&c, &b.h0), Err(Error::Domain(_))));
    }

    #[test]
    fn tangent_map() {
        let c = ctx();
        let a = Element::from_vec(vec![0.0, 0.5, 0.5]);
        let b = ray(0.25);
        let out = tangent_polar(&c, &Element::zeros(3), &a, &b).unwrap();
        assert!((out - (&a + &b)).amax() < 1e-15);
        assert_eq!(tangent_rank(&c, &ray(0.3)).unwrap(), 2);
        assert_eq!(tangent_rank(&c, &ray(PI / 4.0)).unwrap(), 1);
        // cos(2t) on the e + f direction
        let t = 0.3;
        let out = tangent_polar(&c, &ray(t), &a, &Element::zeros(3)).unwrap();
        assert!((out - &a * (2.0 * t).cos()).amax() < 1e-12);
    }

    #[test]
    fn ray_scans_locate_singular_parameters() {
        let c = ctx();
        let polar = scan_ray(&c, ScanKind::Polar, &ray(1.0), 0.01, 1.5).unwrap();
        assert_eq!(polar.singular_t.len(), 1);
        assert!((polar.singular_t[0] - PI / 4.0).abs() < 1e-3);
        let exp = scan_ray(&c, ScanKind::Exp, &ray(1.0), 0.01, 2.2).unwrap();
        assert_eq!(exp.singular_t.len(), 1);
        assert!((exp.singular_t[0] - PI / 2.0).abs() < 1e-3);
    }

    #[test]
    fn stabilizers() {
        let c = ctx();
        let s0 = stabilizer_algebra(&c, &Element::zeros(3)).unwrap();
        assert!(s0.algebra.same_as(&c.h, c.tolerance()));
        let reports: Vec<StabilizerReport> =
            [0.2, 0.5, 1.0, 1.3].iter().map(|t| stabilizer_algebra(&c, &ray(*t)).unwrap()).collect();
        assert!(reports.iter().all(|r| r.dim() == 1 && r.sigma_fixed.dim() == 1));
        let jump = stabilizer_algebra(&c, &ray(PI / 2.0)).unwrap();
        assert_eq!((jump.dim(), jump.sigma_fixed.dim()), (1, 3));
        for t in [0.3, PI / 4.0, PI / 2.0] {
            assert!(stabilizer_algebra(&c, &ray(t)).unwrap().decomposes(c.tolerance()));
        }
    }

    #[test]
    fn exp_fibers() {
        let c = ctx();
        let x = Element::from_vec(vec![0.2, 0.4, -0.1]);
        assert!(exp_fiber_central(&c.g, &x, &x).unwrap());
        assert!(matches!(exp_fiber_central(&c.g, &ray(2.0), &x), Err(Error::Domain(_))));
        let gl = crate::liealg::gl(2).unwrap();
        let y = gl.coords(&Matrix::from_row_slice(2, 2, &[0.1, 0.3, -0.2, 0.0])).unwrap();
        let one = gl.coords(&Matrix::identity(2, 2)).unwrap();
        for z in [0.0, 1e-3, 0.5] {
            let same = (gl.exp_matrix(&y).unwrap() - gl.exp_matrix(&(&y + &one * z)).unwrap()).amax() < 1e-9;
            assert_eq!(same, z == 0.0);
            assert!(exp_fiber_central(&gl, &y, &(&y + &one * z)).unwrap());
        }
    }

    #[test]
    fn criteria_agree_on_samples() {
        for name in ["sl2-cayley", "sl2xsl2", "dS3"] {
            let c = PolarContext::for_spec(&CausalSymmetricSpec::by_name(name).unwrap()).unwrap();
            let t = regularity_agreement(&c, 100, 5, Exec::Parallel).unwrap();
            assert!(t.passed(), "{name}: {t:?}");
            assert!(t.exp_singular > 0 && t.polar_singular > 0, "{name}: {t:?}");
        }
    }
}
