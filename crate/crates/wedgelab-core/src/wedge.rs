//! Causal symmetric data `(𝔤, τ, θ, C, h, h_c)`, the positivity domain,
//! the polar wedge and the KMS wedge, and the harness that compares them.
//!
//! KMS membership is decided natively only on de Sitter space. The
//! `sl(2)` specs reach it through `sl(2, ℝ) ≅ so(1, 2)`: the coordinates
//! `(h⁰, e, f)` map to `e₂`, `−(e₀ + e₁)` and `e₀ − e₁`, which turns the
//! Killing form into `−2[·,·]` and sends `C = {xe + yf : x, y ≥ 0}` onto
//! the closed future cone in `T_{e₂} dS²`. A point `gH` becomes
//! `Φ(Ad(g) h⁰) ∈ dS²`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use nalgebra::DVector;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::exec::Exec;
use crate::liealg::{
    self, cartan_theta, tau_from_euler, Element, GradedSplit, InvolutionMap, LieAlgebraRealization, SymmetricPairSplit,
};
use crate::linop::{self, Matrix};
use crate::quadric::{self, Vector};
use crate::report::{EqualityReport, SampleClass, SampleOutcome, BAND};
use crate::roots::{CartanSubspaceData, RootSystemData};
use crate::sampling::{self, LowDiscrepancy};
use crate::{Error, Result, Tolerance};

/// Realization-specific membership test for the cone `C ⊆ 𝔮`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ConeOracle {
    /// `{Σ xₖeₖ + yₖfₖ : xₖ, yₖ ≥ 0}`; each pair holds the coordinate
    /// indices of `eₖ` and `fₖ`.
    Sl2Product { pairs: Vec<(usize, usize)> },
    /// `X ∈ 𝔮` with `X e₂` in the closed future cone.
    LightCone { d: usize },
    /// `x₁x₋₁ − m x₀² ≥ 0`, `x_{±1} ≥ 0` on `z·1 + x₁E₁₂ + x₋₁E₂₁`.
    Lorentzian { m: f64 },
    /// Both symmetric off-diagonal blocks of `sp(2n)` positive semidefinite.
    SymBlocks { n: usize },
}

fn min_sym_eigenvalue(m: Matrix) -> f64 {
    let s = (&m + m.transpose()) * 0.5;
    s.symmetric_eigen().eigenvalues.min()
}

impl ConeOracle {
    pub fn tag(&self) -> &'static str {
        match self {
            ConeOracle::Sl2Product { .. } => "sl2-product",
            ConeOracle::LightCone { .. } => "light-cone",
            ConeOracle::Lorentzian { .. } => "lorentzian",
            ConeOracle::SymBlocks { .. } => "sym-blocks",
        }
    }

    /// Positive exactly on the interior `C°`; `y` is a `𝔮`-element.
    pub fn margin(&self, g: &LieAlgebraRealization, y: &Element) -> f64 {
        match self {
            ConeOracle::Sl2Product { pairs } => {
                pairs.iter().map(|&(a, b)| y[a].min(y[b])).fold(f64::INFINITY, f64::min)
            }
            ConeOracle::LightCone { .. } => quadric::future_margin(&g.to_matrix(y).column(2).into_owned()),
            ConeOracle::Lorentzian { m } => {
                let a = g.to_matrix(y);
                let (z, x, w) = (a[(0, 0)], a[(0, 1)], a[(1, 0)]);
                x.min(w).min((x * w).max(0.0).sqrt() - m.sqrt() * z.abs())
            }
            ConeOracle::SymBlocks { n } => {
                let a = g.to_matrix(y);
                let b = a.view((0, *n), (*n, *n)).into_owned();
                let c = a.view((*n, 0), (*n, *n)).into_owned();
                min_sym_eigenvalue(b).min(min_sym_eigenvalue(c))
            }
        }
    }

    /// Positive exactly on the relative interior of `C ∩ 𝔮_{±1}(h)` for
    /// `y ∈ 𝔮_{±1}(h)`.
    pub fn ray_margin(&self, g: &LieAlgebraRealization, y: &Element) -> f64 {
        match self {
            ConeOracle::Sl2Product { pairs } => {
                pairs.iter().map(|&(a, b)| y[a] + y[b]).fold(f64::INFINITY, f64::min)
            }
            ConeOracle::LightCone { .. } => g.to_matrix(y)[(0, 2)],
            ConeOracle::Lorentzian { .. } => {
                let a = g.to_matrix(y);
                a[(0, 1)] + a[(1, 0)]
            }
            ConeOracle::SymBlocks { n } => {
                let a = g.to_matrix(y);
                let b = a.view((0, *n), (*n, *n)).into_owned();
                let c = a.view((*n, 0), (*n, *n)).into_owned();
                min_sym_eigenvalue(b + c)
            }
        }
    }
}

/// How a spec reaches the de Sitter KMS test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Transport {
    None,
    /// Natively de Sitter space `dS^d`.
    DeSitter { d: usize },
    /// A product of `factors` copies of `sl(2)` in Cayley position.
    Sl2Factors { factors: usize },
}

/// The configuration unit for all wedge tests.
#[derive(Debug, Clone)]
pub struct CausalSymmetricSpec {
    pub name: String,
    pub g: LieAlgebraRealization,
    pub tau: InvolutionMap,
    pub theta: InvolutionMap,
    /// Euler element in `𝔥`.
    pub h: Element,
    /// Causal Euler element in `𝔮_𝔭 ∩ C°`.
    pub h_c: Option<Element>,
    /// Basis of `𝔞 ⊆ 𝔮_𝔭` containing `h_c` in its span.
    pub cartan: Vec<Element>,
    pub oracle: Option<ConeOracle>,
    pub transport: Transport,
    pub split: SymmetricPairSplit,
    pub grading: GradedSplit,
    roots: OnceLock<Result<RootSystemData>>,
}

/// Names accepted by [`CausalSymmetricSpec::by_name`].
pub const SPEC_NAMES: [&str; 9] = ["sl2-cayley", "sl2xsl2", "dS2", "dS3", "dS4", "gl2", "sp4", "sp6", "sl4"];

fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = 1.0;
    m
}

fn diag(d: &[f64]) -> Matrix {
    Matrix::from_diagonal(&DVector::from_column_slice(d))
}

impl CausalSymmetricSpec {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        name: &str,
        g: LieAlgebraRealization,
        tau: InvolutionMap,
        theta: InvolutionMap,
        h: Element,
        h_c: Option<Element>,
        cartan: Vec<Element>,
        oracle: Option<ConeOracle>,
        transport: Transport,
    ) -> Result<Self> {
        let tol = Tolerance::default();
        let eps = 1e-9;
        if (tau.apply(&h) - &h).amax() > eps {
            return Err(Error::InvalidSpec(format!("{name}: tau does not fix h")));
        }
        if !liealg::theta_flips(&theta, &h, &tol) {
            return Err(Error::InvalidSpec(format!("{name}: theta(h) != -h")));
        }
        if !tau.commutes_with(&theta, &tol) {
            return Err(Error::InvalidSpec(format!("{name}: tau and theta do not commute")));
        }
        let grading = liealg::is_euler(&g, &h)?.ok_or(Error::NotEuler)?;
        if let Some(hc) = &h_c {
            if (tau.apply(hc) + hc).amax() > eps || (theta.apply(hc) + hc).amax() > eps {
                return Err(Error::InvalidSpec(format!("{name}: h_c is not in q_p")));
            }
            if liealg::is_euler(&g, hc)?.is_none() {
                return Err(Error::InvalidSpec(format!("{name}: h_c is not an Euler element")));
            }
            if let Some(o) = &oracle {
                if o.margin(&g, hc) <= 0.0 {
                    return Err(Error::InvalidSpec(format!("{name}: h_c is not interior to C")));
                }
            }
        }
        let split = SymmetricPairSplit::new(&tau, Some(&theta), &tol);
        Ok(CausalSymmetricSpec {
            name: name.into(),
            g,
            tau,
            theta,
            h,
            h_c,
            cartan,
            oracle,
            transport,
            split,
            grading,
            roots: OnceLock::new(),
        })
    }

    /// `sl(2, ℝ)` with `h = h⁰`, `τ = τ_h`, `C = {xe⁰ + yf⁰ : x, y ≥ 0}`.
    pub fn sl2_cayley() -> Result<Self> {
        Self::sl2_power(1)
    }

    /// `sl(2, ℝ) ⊕ sl(2, ℝ)` with the product data.
    pub fn sl2_squared() -> Result<Self> {
        Self::sl2_power(2)
    }

    fn sl2_power(k: usize) -> Result<Self> {
        let tol = Tolerance::default();
        let s = liealg::sl(2)?;
        let g = if k == 1 { s.clone() } else { liealg::product(&vec![&s; k])? };
        let b = liealg::Sl2Basis::new(&s)?;
        let rep = |x: &Element| liealg::concat(&vec![x.clone(); k]);
        let h = rep(&b.h0);
        let h_c = rep(&b.h1);
        let cartan = (0..k)
            .map(|i| {
                let mut v = Element::zeros(3 * k);
                v.rows_mut(3 * i, 3).copy_from(&b.h1);
                v
            })
            .collect();
        let tau = tau_from_euler(&g, &h, &tol)?;
        let theta = cartan_theta(&g, &tol)?;
        let pairs = (0..k).map(|i| (3 * i + 1, 3 * i + 2)).collect();
        let name = if k == 1 { "sl2-cayley".to_string() } else { "sl2xsl2".to_string() };
        Self::assemble(
            &name,
            g,
            tau,
            theta,
            h,
            Some(h_c),
            cartan,
            Some(ConeOracle::Sl2Product { pairs }),
            Transport::Sl2Factors { factors: k },
        )
    }

    /// `so(1, d)` acting on `ℝ^{1,d}`, `𝔥` the stabilizer of `e₂`, `h` the
    /// `(x₀, x₁)` boost and `C` the light cone in `𝔮 ≅ e₂^⊥`.
    pub fn de_sitter(d: usize) -> Result<Self> {
        if !(2..=4).contains(&d) {
            return Err(Error::Unsupported(format!("de Sitter dimension {d}")));
        }
        let tol = Tolerance::default();
        let g = liealg::so(1, d)?;
        let n = d + 1;
        let mut sigma = Matrix::identity(n, n);
        sigma[(2, 2)] = -1.0;
        let tau = InvolutionMap::from_matrix_map(&g, |x| &sigma * x * &sigma, &tol)?;
        let theta = cartan_theta(&g, &tol)?;
        let h = g.coords(&quadric::boost_generator(d))?;
        let h_c = g.coords(&(unit(n, 0, 2) + unit(n, 2, 0)))?;
        Self::assemble(
            &format!("dS{d}"),
            g,
            tau,
            theta,
            h,
            Some(h_c.clone()),
            vec![h_c],
            Some(ConeOracle::LightCone { d }),
            Transport::DeSitter { d },
        )
    }

    /// `gl(2, ℝ)` with `h = diag(½, −½)`, `τ(a b; c d) = (−d −b; −c −a)` and
    /// the Lorentzian cone `C^m`.
    pub fn gl2(m: f64) -> Result<Self> {
        if !(m > 0.0) {
            return Err(Error::InvalidSpec("the Lorentzian parameter m must be positive".into()));
        }
        let tol = Tolerance::default();
        let g = liealg::gl(2)?;
        let tau = InvolutionMap::from_matrix_map(
            &g,
            |x| Matrix::from_row_slice(2, 2, &[-x[(1, 1)], -x[(0, 1)], -x[(1, 0)], -x[(0, 0)]]),
            &tol,
        )?;
        let theta = cartan_theta(&g, &tol)?;
        let h = g.coords(&diag(&[0.5, -0.5]))?;
        let h_c = g.coords(&((unit(2, 0, 1) + unit(2, 1, 0)) * 0.5))?;
        let one = g.coords(&Matrix::identity(2, 2))?;
        Self::assemble(
            "gl2",
            g,
            tau,
            theta,
            h,
            Some(h_c.clone()),
            vec![one, h_c],
            Some(ConeOracle::Lorentzian { m }),
            Transport::None,
        )
    }

    /// `sp(2n, ℝ)` in Cayley position: `h = ½ diag(1_n, −1_n)`, `τ = τ_h`,
    /// `C` = both symmetric blocks positive semidefinite.
    pub fn sp_cayley(n: usize) -> Result<Self> {
        let tol = Tolerance::default();
        let g = liealg::sp(n)?;
        let m = 2 * n;
        let mut hd = vec![0.5; n];
        hd.extend(vec![-0.5; n]);
        let h = g.coords(&diag(&hd))?;
        let off = |i: usize| unit(m, i, n + i) + unit(m, n + i, i);
        let h_c = g.coords(&((0..n).map(off).fold(Matrix::zeros(m, m), |a, b| a + b) * 0.5))?;
        let cartan = (0..n).map(|i| g.coords(&off(i))).collect::<Result<Vec<_>>>()?;
        let tau = tau_from_euler(&g, &h, &tol)?;
        let theta = cartan_theta(&g, &tol)?;
        Self::assemble(
            &format!("sp{m}"),
            g,
            tau,
            theta,
            h,
            Some(h_c),
            cartan,
            Some(ConeOracle::SymBlocks { n }),
            Transport::None,
        )
    }

    /// `sl(4, ℝ)` with `τ(x) = −I₂,₂ xᵀ I₂,₂`, `𝔞` the traceless diagonal and
    /// `h_c = ½ diag(1, 1, −1, −1)`. Only the root data is used; no cone
    /// oracle ships.
    pub fn sl4_model() -> Result<Self> {
        let tol = Tolerance::default();
        let g = liealg::sl(4)?;
        let i22 = diag(&[1.0, 1.0, -1.0, -1.0]);
        let tau = InvolutionMap::from_matrix_map(&g, |x| -(&i22 * x.transpose() * &i22), &tol)?;
        let theta = cartan_theta(&g, &tol)?;
        let h = g.coords(&((unit(4, 0, 2) + unit(4, 2, 0) + unit(4, 1, 3) + unit(4, 3, 1)) * 0.5))?;
        let h_c = g.coords(&diag(&[0.5, 0.5, -0.5, -0.5]))?;
        let cartan = [[1.0, -1.0, 0.0, 0.0], [0.0, 1.0, -1.0, 0.0], [0.0, 0.0, 1.0, -1.0]]
            .iter()
            .map(|d| g.coords(&diag(d)))
            .collect::<Result<Vec<_>>>()?;
        Self::assemble("sl4", g, tau, theta, h, Some(h_c), cartan, None, Transport::None)
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "sl2-cayley" => Self::sl2_cayley(),
            "sl2xsl2" => Self::sl2_squared(),
            "ds2" => Self::de_sitter(2),
            "ds3" => Self::de_sitter(3),
            "ds4" => Self::de_sitter(4),
            "gl2" => Self::gl2(1.0),
            "sp4" => Self::sp_cayley(2),
            "sp6" => Self::sp_cayley(3),
            "sl4" => Self::sl4_model(),
            other => Err(Error::Unsupported(format!("unknown spec {other:?}"))),
        }
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn q_project(&self, x: &Element) -> Element {
        &self.split.p_q * x
    }

    /// `𝔮_j(h)` component of `x`.
    pub fn graded_q_project(&self, x: &Element, j: i32) -> Element {
        self.grading.project(&self.q_project(x), j)
    }

    fn oracle(&self) -> Result<&ConeOracle> {
        self.oracle.as_ref().ok_or_else(|| Error::Unsupported(format!("{}: no cone oracle", self.name)))
    }

    /// Interior margin of the `𝔮`-part of `y` in `C`.
    pub fn cone_margin(&self, y: &Element) -> Result<f64> {
        Ok(self.oracle()?.margin(&self.g, &self.q_project(y)))
    }

    /// Relative interior margin of `j·y_j` in `C ∩ 𝔮_j(h)`, so positive
    /// margins mean `y_1 ∈ C_+°` for `j = 1` and `y_{−1} ∈ C_−°` for `j = −1`.
    pub fn graded_margin(&self, y: &Element, j: i32) -> Result<f64> {
        let yj = self.graded_q_project(y, j) * j as f64;
        Ok(self.oracle()?.ray_margin(&self.g, &yj))
    }

    /// Restricted roots, classification and the compact Weyl group.
    pub fn root_system(&self) -> Result<RootSystemData> {
        self.roots
            .get_or_init(|| {
                let tol = Tolerance::default();
                let hc = self.h_c.clone().ok_or_else(|| Error::Unsupported("no causal Euler element".into()))?;
                let a = CartanSubspaceData::new(&self.g, self.cartan.clone(), &tol)?;
                RootSystemData::compute(&self.g, a, &self.tau, &self.theta, &hc, &tol)
            })
            .clone()
    }

    /// `s(y)` for `y` conjugate into `𝔞`. Without compact roots this is the
    /// spectral radius of `ad y`.
    pub fn s_value(&self, y: &Element) -> Result<f64> {
        let rs = self.root_system()?;
        if rs.roots.iter().any(|r| r.compact) {
            return Err(Error::Unsupported(format!("{}: s off the Cartan subspace needs compact-root data", self.name)));
        }
        linop::spectral_radius(&self.g.ad(y))
    }

    /// Generators of `C_+` and `C_−` as rays, when both are polyhedral.
    pub fn cone_rays(&self) -> Result<(Vec<Element>, Vec<Element>)> {
        let d = self.dim();
        let basis_of = |j: i32| self.grading.subspace(j, &Tolerance::default());
        match self.oracle()? {
            ConeOracle::Sl2Product { pairs } => {
                let mut plus = Vec::new();
                let mut minus = Vec::new();
                for &(a, b) in pairs {
                    let mut e = Element::zeros(d);
                    e[a] = 1.0;
                    let mut f = Element::zeros(d);
                    f[b] = -1.0;
                    plus.push(e);
                    minus.push(f);
                }
                Ok((plus, minus))
            }
            ConeOracle::LightCone { .. } | ConeOracle::Lorentzian { .. } => {
                let mut out = Vec::new();
                for j in [1, -1] {
                    let qj = basis_of(j).intersection(&self.split.q, &Tolerance::default());
                    if qj.dim() != 1 {
                        return Err(Error::Unsupported("graded cone pieces are not rays".into()));
                    }
                    let v = qj.vectors().remove(0);
                    let v = if self.graded_margin(&v, j)? > 0.0 { v } else { -v };
                    out.push(vec![v]);
                }
                let minus = out.pop().unwrap();
                Ok((out.pop().unwrap(), minus))
            }
            ConeOracle::SymBlocks { .. } => Err(Error::Unsupported("C_+ is not polyhedral".into())),
        }
    }
}

/// A group element `g = exp(t₁x₁)⋯exp(tₖxₖ)` with `Ad(g)` and `Ad(g)⁻¹`.
#[derive(Debug, Clone)]
pub struct PointRep {
    pub word: Vec<(Element, f64)>,
    ad: Matrix,
    ad_inv: Matrix,
}

impl PointRep {
    pub fn identity(dim: usize) -> Self {
        PointRep { word: Vec::new(), ad: Matrix::identity(dim, dim), ad_inv: Matrix::identity(dim, dim) }
    }

    pub fn from_word(g: &LieAlgebraRealization, word: Vec<(Element, f64)>) -> Result<Self> {
        let mut p = PointRep::identity(g.dim());
        for (x, t) in word {
            p = p.then(g, &x, t)?;
        }
        Ok(p)
    }

    /// `g·exp(t x)`.
    pub fn then(&self, g: &LieAlgebraRealization, x: &Element, t: f64) -> Result<Self> {
        let mut word = self.word.clone();
        word.push((x.clone(), t));
        Ok(PointRep { word, ad: &self.ad * g.exp_ad(x, t)?, ad_inv: g.exp_ad(x, -t)? * &self.ad_inv })
    }

    /// `exp(t x)·g`.
    pub fn after(&self, g: &LieAlgebraRealization, x: &Element, t: f64) -> Result<Self> {
        let mut word = vec![(x.clone(), t)];
        word.extend(self.word.iter().cloned());
        Ok(PointRep { word, ad: g.exp_ad(x, t)? * &self.ad, ad_inv: &self.ad_inv * g.exp_ad(x, -t)? })
    }

    /// The image under an automorphism `φ` lifted to the group:
    /// `Ad(φ(g)) = φ Ad(g) φ⁻¹` for involutive `φ`.
    pub fn twisted(&self, phi: &InvolutionMap) -> Self {
        let t = phi.matrix();
        PointRep {
            word: self.word.iter().map(|(x, s)| (phi.apply(x), *s)).collect(),
            ad: t * &self.ad * t,
            ad_inv: t * &self.ad_inv * t,
        }
    }

    pub fn ad(&self) -> &Matrix {
        &self.ad
    }

    pub fn ad_inv(&self) -> &Matrix {
        &self.ad_inv
    }

    /// Bracket-preservation residual of `Ad(g)` plus `‖Ad(g)Ad(g)⁻¹ − 1‖`.
    pub fn automorphism_residual(&self, g: &LieAlgebraRealization) -> f64 {
        let d = g.dim();
        g.automorphism_residual(&self.ad) + (&self.ad * &self.ad_inv - Matrix::identity(d, d)).amax()
    }
}

/// `X_h(gH) ~ p_𝔮(Ad(g)⁻¹ h)` in coordinates.
pub fn modular_vector_field(spec: &CausalSymmetricSpec, p: &PointRep) -> Element {
    spec.q_project(&(p.ad_inv() * &spec.h))
}

pub fn positivity_margin(spec: &CausalSymmetricSpec, p: &PointRep) -> Result<f64> {
    spec.cone_margin(&modular_vector_field(spec, p))
}

/// `Ad(g)⁻¹h ∈ 𝔥 + C°` with interior margin `margin`.
pub fn in_positivity_domain(spec: &CausalSymmetricSpec, p: &PointRep, margin: f64) -> Result<bool> {
    Ok(positivity_margin(spec, p)? > margin)
}

/// Positive exactly when `x ∈ (C_+ + C_−)^π`: `x = x_+ + x_−` with
/// `x_± ∈ C_±°` and `s(x_+ − x_−) < π`.
pub fn polar_margin(spec: &CausalSymmetricSpec, x: &Element) -> Result<f64> {
    let xp = spec.graded_q_project(x, 1);
    let xm = spec.graded_q_project(x, -1);
    let rest = (x - &xp - &xm).amax();
    if rest > 1e-9 * (1.0 + x.amax()) {
        return Ok(-rest);
    }
    let s = spec.s_value(&(&xp - &xm))?;
    Ok(spec.graded_margin(x, 1)?.min(spec.graded_margin(x, -1)?).min(PI - s))
}

/// `(G^h)_e`-factor times `exp(x)` for `x ∈ (C_+ + C_−)^π`. Each `k` in
/// `g_h` must commute with `h` and lie in `𝔥`.
pub fn polar_wedge_sample(spec: &CausalSymmetricSpec, g_h: &[(Element, f64)], x: &Element) -> Result<PointRep> {
    for (k, _) in g_h {
        let scale = 1.0 + k.amax();
        if spec.g.bracket(&spec.h, k).amax() > 1e-9 * scale || (spec.tau.apply(k) - k).amax() > 1e-9 * scale {
            return Err(Error::Domain("group factor is not in the centralizer of h in h-subalgebra".into()));
        }
    }
    let m = polar_margin(spec, x)?;
    if !(m > 0.0) {
        return Err(Error::Domain(format!("x is outside (C_+ + C_-)^pi (margin {m:e})")));
    }
    let mut word: Vec<(Element, f64)> = g_h.to_vec();
    word.push((x.clone(), 1.0));
    PointRep::from_word(&spec.g, word)
}

/// Polar parameters from uniforms `u ∈ [0, 1)²` and ray weights drawn from
/// `rng`: returns `(s, x)` with `x ∈ (C_+ + C_−)^π`.
pub fn polar_parameters<R: Rng>(spec: &CausalSymmetricSpec, u: &[f64], rng: &mut R) -> Result<(f64, Element)> {
    let (plus, minus) = spec.cone_rays()?;
    let mut xp = Element::zeros(spec.dim());
    let mut xm = Element::zeros(spec.dim());
    for r in &plus {
        xp += r * rng.gen_range(0.05..1.0);
    }
    for r in &minus {
        xm += r * rng.gen_range(0.05..1.0);
    }
    let s0 = spec.s_value(&(&xp - &xm))?;
    let lambda = PI * u[1].clamp(1e-6, 1.0 - 1e-6) / s0;
    Ok((4.0 * u[0] - 2.0, (xp + xm) * lambda))
}

/// Outcome of checking that polar-wedge samples lie in the positivity domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InclusionReport {
    pub spec: String,
    pub seed: u64,
    pub n: usize,
    pub failures: Vec<usize>,
    pub min_margin: Option<f64>,
}

impl InclusionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sample `n` polar-wedge points and test each for positivity.
pub fn polar_implies_positive(spec: &CausalSymmetricSpec, n: usize, seed: u64, exec: Exec) -> Result<InclusionReport> {
    let ld = LowDiscrepancy::new(2, seed);
    spec.root_system()?;
    let rows = exec.map_indexed(n, |i| -> Result<f64> {
        let mut rng = sampling::rng_for(seed, 300, i as u64);
        let (s, x) = polar_parameters(spec, &ld.point(i), &mut rng)?;
        let p = polar_wedge_sample(spec, &[(spec.h.clone(), s)], &x)?;
        positivity_margin(spec, &p)
    });
    let mut failures = Vec::new();
    let mut min_margin: Option<f64> = None;
    for (i, r) in rows.into_iter().enumerate() {
        let m = r?;
        if !(m > 0.0) {
            failures.push(i);
        }
        min_margin = Some(min_margin.map_or(m, |a: f64| a.min(m)));
    }
    Ok(InclusionReport { spec: spec.name.clone(), seed, n, failures, min_margin })
}

/// `Φ: sl(2) → ℝ^{1,2}` on the coordinates `(h⁰, e, f)`.
pub fn sl2_to_minkowski() -> Matrix {
    Matrix::from_row_slice(3, 3, &[0.0, -1.0, 1.0, 0.0, -1.0, -1.0, 1.0, 0.0, 0.0])
}

fn factor_count(spec: &CausalSymmetricSpec) -> Result<usize> {
    match spec.transport {
        Transport::Sl2Factors { factors } => Ok(factors),
        _ => Err(Error::Unsupported(format!("{}: no sl(2) transport", spec.name))),
    }
}

/// The de Sitter points `Φ(Ad(g)h⁰)` of each `sl(2)` factor.
pub fn transported_points(spec: &CausalSymmetricSpec, p: &PointRep) -> Result<Vec<Vector>> {
    let k = factor_count(spec)?;
    let phi = sl2_to_minkowski();
    Ok((0..k).map(|i| &phi * p.ad().view((3 * i, 3 * i), (3, 3)).column(0)).collect())
}

/// Transported `ρ(g) = Φ Ad(g) Φ⁻¹` of each factor; each is in `SO(1, 2)`.
pub fn transported_lorentz(spec: &CausalSymmetricSpec, p: &PointRep) -> Result<Vec<Matrix>> {
    let k = factor_count(spec)?;
    let phi = sl2_to_minkowski();
    let phi_inv = phi.clone().try_inverse().expect("Phi is invertible");
    Ok((0..k).map(|i| &phi * p.ad().view((3 * i, 3 * i), (3, 3)) * &phi_inv).collect())
}

/// The `sl(2)`-factor element `hₖ` (zero outside factor `k`).
fn factor_element(spec: &CausalSymmetricSpec, k: usize, local: &Element) -> Element {
    let mut v = Element::zeros(spec.dim());
    v.rows_mut(3 * k, 3).copy_from(local);
    v
}

/// Polar-wedge test for `sl(2)` specs: invert the de Sitter chart of each
/// transported point, pull the geodesic parameter back to
/// `x = Σ (rₖ/2)(eₖ − fₖ) ∈ 𝔮`, test `x ∈ (C_+ + C_−)^π` natively and
/// confirm that `Π exp(sₖhₖ)·exp(x)` reproduces the point.
pub fn polar_member_sl2(spec: &CausalSymmetricSpec, points: &[Vector]) -> Result<bool> {
    let mut x = Element::zeros(spec.dim());
    let mut word = Vec::new();
    for (k, pt) in points.iter().enumerate() {
        let Ok(c) = quadric::invert_polar_chart(pt) else { return Ok(false) };
        x += factor_element(spec, k, &Element::from_vec(vec![0.0, c.r / 2.0, -c.r / 2.0]));
        word.push((factor_element(spec, k, &Element::from_vec(vec![1.0, 0.0, 0.0])), c.s));
    }
    if !(polar_margin(spec, &x)? > 0.0) {
        return Ok(false);
    }
    let p = polar_wedge_sample(spec, &word, &x)?;
    let back = transported_points(spec, &p)?;
    Ok(back.iter().zip(points).all(|(a, b)| (a - b).norm() < 1e-8 * (1.0 + b.norm())))
}

/// Which membership test a sample command evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Positivity,
    Polar,
    Kms,
    Tube,
}

impl Domain {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "positivity" => Ok(Domain::Positivity),
            "polar" => Ok(Domain::Polar),
            "kms" => Ok(Domain::Kms),
            "tube" => Ok(Domain::Tube),
            other => Err(Error::Unsupported(format!("unknown domain {other:?}"))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Domain::Positivity => "positivity",
            Domain::Polar => "polar",
            Domain::Kms => "kms",
            Domain::Tube => "tube",
        }
    }
}

/// Verdicts of all four tests on one `sl(2)`-family point, in the order
/// polar, positivity, kms, tube.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Evaluation {
    pub points: Vec<Vector>,
    pub verdicts: [bool; 4],
    pub margin: f64,
}

pub fn evaluate_sl2(spec: &CausalSymmetricSpec, p: &PointRep, grid: &[f64]) -> Result<Sl2Evaluation> {
    let points = transported_points(spec, p)?;
    let polar = polar_member_sl2(spec, &points)?;
    let positive = positivity_margin(spec, p)? > 0.0;
    let kms = points.iter().all(|x| quadric::kms_membership_ds(x, grid));
    let tube = points.iter().all(|x| quadric::in_wick_image(x, true));
    let margin = points.iter().map(quadric::wedge_margin).fold(f64::INFINITY, f64::min);
    Ok(Sl2Evaluation { points, verdicts: [polar, positive, kms, tube], margin })
}

/// The `index`-th group element for an `sl(2)`-family spec.
pub fn sample_sl2_point(spec: &CausalSymmetricSpec, seed: u64, index: usize, ld: &LowDiscrepancy) -> Result<(SampleClass, PointRep)> {
    let k = factor_count(spec)?;
    let class = quadric::sample_class(index);
    let u = ld.point(index);
    let mut rng = sampling::rng_for(seed, 400 + k as u64, index as u64);
    let mut word = Vec::new();
    let mut x = Element::zeros(spec.dim());
    for f in 0..k {
        let fclass = if class == SampleClass::Band && f > 0 { SampleClass::Polar } else { class };
        let (uf0, uf1) = if f == 0 { (u[0], u[1]) } else { (rng.gen::<f64>(), rng.gen::<f64>()) };
        let s = 4.0 * rng.gen::<f64>() - 2.0;
        let (a, b) = match fclass {
            SampleClass::Polar => {
                let r = (PI / 2.0) * uf0.max(1e-9);
                let w = 3.0 * uf1 - 1.5;
                (r * w.exp(), -r * (-w).exp())
            }
            SampleClass::Box => (4.0 * uf0 - 2.0, 4.0 * uf1 - 2.0),
            _ => {
                let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                let eta = quadric::band_offset(uf1, sign);
                if rng.gen_bool(0.5) {
                    let r = (PI / 2.0) * (1.0 + eta);
                    let w = 3.0 * uf0 - 1.5;
                    (r * w.exp(), -r * (-w).exp())
                } else {
                    (eta, -(0.1 + 1.4 * uf0))
                }
            }
        };
        x += factor_element(spec, f, &Element::from_vec(vec![0.0, a, b]));
        word.push((factor_element(spec, f, &Element::from_vec(vec![1.0, 0.0, 0.0])), s));
    }
    word.push((x, 1.0));
    Ok((class, PointRep::from_word(&spec.g, word)?))
}

/// Names of the three wedge tests compared by [`verify_wedge_equalities`].
pub const WEDGE_DOMAINS: [&str; 3] = ["polar", "positivity", "kms"];

fn sl2_outcomes(spec: &CausalSymmetricSpec, n: usize, seed: u64, exec: Exec) -> Result<Vec<(SampleOutcome, [bool; 4])>> {
    spec.root_system()?;
    let ld = LowDiscrepancy::new(2, seed);
    let grid = quadric::kms_grid();
    exec.map_indexed(n, |i| -> Result<(SampleOutcome, [bool; 4])> {
        let (class, p) = sample_sl2_point(spec, seed, i, &ld)?;
        let ev = evaluate_sl2(spec, &p, &grid)?;
        let point = ev.points.iter().flat_map(|x| x.iter().copied()).collect();
        Ok((
            SampleOutcome { index: i, class, point, verdicts: ev.verdicts[..3].to_vec(), margin: ev.margin },
            ev.verdicts,
        ))
    })
    .into_iter()
    .collect()
}

/// Verdicts of the three wedge tests, in the order of [`WEDGE_DOMAINS`].
pub fn wedge_outcomes(spec: &CausalSymmetricSpec, n: usize, seed: u64, exec: Exec) -> Result<Vec<SampleOutcome>> {
    match spec.transport {
        Transport::DeSitter { d } => Ok(quadric::desitter_outcomes(d, n, seed, exec)?
            .into_iter()
            .map(|mut o| {
                // wedge, positivity, kms, wick, polar → polar, positivity, kms
                o.verdicts = vec![o.verdicts[4], o.verdicts[1], o.verdicts[2]];
                o
            })
            .collect()),
        Transport::Sl2Factors { .. } => Ok(sl2_outcomes(spec, n, seed, exec)?.into_iter().map(|r| r.0).collect()),
        Transport::None => Err(Error::Unsupported(format!("{}: no KMS test", spec.name))),
    }
}

/// Polar wedge, positivity domain and KMS wedge agree on `n` samples.
pub fn verify_wedge_equalities(spec: &CausalSymmetricSpec, n: usize, seed: u64, exec: Exec) -> Result<EqualityReport> {
    let outcomes = wedge_outcomes(spec, n, seed, exec)?;
    Ok(EqualityReport::from_outcomes(&spec.name, seed, &WEDGE_DOMAINS, &outcomes, BAND))
}

/// Sampled points with one membership column, for plotting.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleTable {
    pub coord_names: Vec<String>,
    pub domain: Domain,
    pub outcomes: Vec<SampleOutcome>,
}

fn coord_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Evaluate one domain on `n` deterministic samples.
pub fn sample_domain(spec: &CausalSymmetricSpec, domain: Domain, n: usize, seed: u64, exec: Exec) -> Result<SampleTable> {
    match spec.transport {
        Transport::DeSitter { d } => {
            let col = match domain {
                Domain::Positivity => 1,
                Domain::Kms => 2,
                Domain::Tube => 3,
                Domain::Polar => 4,
            };
            let outcomes = quadric::desitter_outcomes(d, n, seed, exec)?
                .into_iter()
                .map(|mut o| {
                    o.verdicts = vec![o.verdicts[col]];
                    o
                })
                .collect();
            Ok(SampleTable { coord_names: coord_names("x", d + 1), domain, outcomes })
        }
        Transport::Sl2Factors { factors } => {
            let col = match domain {
                Domain::Polar => 0,
                Domain::Positivity => 1,
                Domain::Kms => 2,
                Domain::Tube => 3,
            };
            let outcomes = sl2_outcomes(spec, n, seed, exec)?
                .into_iter()
                .map(|(mut o, all)| {
                    o.verdicts = vec![all[col]];
                    o
                })
                .collect();
            let mut names = Vec::new();
            for f in 0..factors {
                names.extend((0..3).map(|i| format!("f{f}_x{i}")));
            }
            Ok(SampleTable { coord_names: names, domain, outcomes })
        }
        Transport::None => {
            if domain != Domain::Positivity {
                return Err(Error::Unsupported(format!("{}: domain {} needs a KMS or polar chart", spec.name, domain.label())));
            }
            spec.oracle()?;
            let q = spec.split.q.clone();
            let ld = LowDiscrepancy::new(q.dim(), seed);
            let rows = exec.map_indexed(n, |i| -> Result<SampleOutcome> {
                let u = ld.point(i);
                let c = DVector::from_iterator(q.dim(), u.iter().map(|v| 2.0 * v - 1.0));
                let x = q.basis() * c;
                let p = PointRep::from_word(&spec.g, vec![(x.clone(), 1.0)])?;
                let m = positivity_margin(spec, &p)?;
                Ok(SampleOutcome {
                    index: i,
                    class: SampleClass::Box,
                    point: x.iter().copied().collect(),
                    verdicts: vec![m > 0.0],
                    margin: m,
                })
            });
            let outcomes = rows.into_iter().collect::<Result<Vec<_>>>()?;
            Ok(SampleTable { coord_names: coord_names("c", spec.dim()), domain, outcomes })
        }
    }
}

/// Sample `n` points of the closed cone `C` by rejection from a box around
/// `h_c` in `𝔮`.
pub fn sample_cone_points(spec: &CausalSymmetricSpec, n: usize, seed: u64) -> Result<Vec<Element>> {
    let hc = spec.h_c.clone().ok_or_else(|| Error::Unsupported("no causal Euler element".into()))?;
    let q = spec.split.q.clone();
    let mut out = Vec::with_capacity(n);
    let mut rng = sampling::rng_for(seed, 500, 0);
    let mut tries = 0usize;
    while out.len() < n {
        tries += 1;
        if tries > 1000 * (n + 1) {
            return Err(Error::Domain("cone rejection sampling did not converge".into()));
        }
        let c = DVector::from_fn(q.dim(), |_, _| rng.gen_range(-1.0..1.0));
        let y = q.basis() * c + &hc * rng.gen_range(0.0..3.0);
        if spec.cone_margin(&y)? >= 0.0 {
            out.push(y);
        }
    }
    Ok(out)
}

/// The two constructions of `C_±`: intersection `±C ∩ 𝔮_{±1}(h)` and
/// projection `p_{𝔮_{±1}(h)}(C) = ±C_±`, compared on cone samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConePmReport {
    pub samples: usize,
    /// Samples whose `𝔮_{±1}` projection leaves `±C_±`.
    pub projection_failures: usize,
    /// Samples whose projection, though in `±C_±`, is not in `C` itself.
    pub intersection_failures: usize,
    pub pointed: bool,
    pub generating: bool,
    /// `θ C_+ = C_−` on samples, when `−θC = C`.
    pub theta_swaps: Option<bool>,
}

impl ConePmReport {
    pub fn passed(&self) -> bool {
        self.projection_failures == 0
            && self.intersection_failures == 0
            && self.pointed
            && self.generating
            && self.theta_swaps != Some(false)
    }
}

pub fn cones_c_pm(spec: &CausalSymmetricSpec, n: usize, seed: u64) -> Result<ConePmReport> {
    let tol = 1e-9;
    let pts = sample_cone_points(spec, n, seed)?;
    let mut projection_failures = 0;
    let mut intersection_failures = 0;
    for y in &pts {
        for j in [1, -1] {
            let yj = spec.graded_q_project(y, j);
            // the projection lies in C ∩ 𝔮_j = ±C_±
            if spec.oracle()?.ray_margin(&spec.g, &yj) < -tol * (1.0 + y.amax()) {
                projection_failures += 1;
            }
            // the projection also lies in C, so it lies in ±C ∩ 𝔮_{±1}
            if spec.cone_margin(&yj)? < -tol * (1.0 + y.amax()) {
                intersection_failures += 1;
            }
        }
    }
    let hc = spec.h_c.clone().unwrap();
    let mut pointed = true;
    let mut generating = true;
    for j in [1, -1] {
        let p = spec.graded_q_project(&hc, j);
        let o = spec.oracle()?;
        generating &= o.ray_margin(&spec.g, &p) > 0.0;
        pointed &= o.ray_margin(&spec.g, &-&p) < 0.0;
    }
    let minus_theta_invariant = pts.iter().all(|y| spec.cone_margin(&-spec.theta.apply(y)).map(|m| m >= -tol).unwrap_or(false));
    let theta_swaps = if minus_theta_invariant {
        let mut ok = true;
        for y in &pts {
            let yp = spec.graded_q_project(y, 1);
            let t = spec.theta.apply(&yp);
            ok &= spec.graded_margin(&t, -1)? >= -tol * (1.0 + y.amax());
            ok &= (spec.graded_q_project(&t, -1) - &t).amax() < 1e-9 * (1.0 + t.amax());
        }
        Some(ok)
    } else {
        None
    };
    Ok(ConePmReport { samples: pts.len(), projection_failures, intersection_failures, pointed, generating, theta_swaps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2_elem(h: f64, e: f64, f: f64) -> Element {
        Element::from_vec(vec![h, e, f])
    }

    #[test]
    fn shipped_specs_build() {
        for name in SPEC_NAMES {
            let s = CausalSymmetricSpec::by_name(name).unwrap();
            let rs = s.root_system().unwrap_or_else(|e| panic!("{name}: {e}"));
            let (cmin, cmax) = rs.cone_min_max();
            assert!(cmax.includes(&cmin).unwrap(), "{name}");
        }
        assert!(CausalSymmetricSpec::by_name("e8").is_err());
    }

    #[test]
    fn zero_set_at_base_point() {
        for name in ["sl2-cayley", "sl2xsl2", "dS2", "dS4", "gl2", "sp4"] {
            let s = CausalSymmetricSpec::by_name(name).unwrap();
            let id = PointRep::identity(s.dim());
            assert!(modular_vector_field(&s, &id).amax() < 1e-15);
            assert!(!in_positivity_domain(&s, &id, 0.0).unwrap());
            let flow = PointRep::from_word(&s.g, vec![(s.h.clone(), 0.7)]).unwrap();
            assert!(modular_vector_field(&s, &flow).amax() < 1e-12);
        }
        let sl4 = CausalSymmetricSpec::sl4_model().unwrap();
        assert!(matches!(in_positivity_domain(&sl4, &PointRep::identity(15), 0.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn cayley_sl2_positivity_matches_sinh_formula() {
        let s = CausalSymmetricSpec::sl2_cayley().unwrap();
        let x = sl2_elem(0.0, PI / 4.0, -PI / 4.0);
        let p = PointRep::from_word(&s.g, vec![(x.clone(), 1.0)]).unwrap();
        let sinh = linop::apply_entire(linop::EntireFn::Sinh, &s.g.ad(&x)).unwrap();
        let want = -(sinh.matrix() * &s.h);
        assert!((modular_vector_field(&s, &p) - &want).amax() < 1e-12);
        assert!(want[1] > 0.0 && want[2] > 0.0);
        assert!(in_positivity_domain(&s, &p, 0.0).unwrap());
    }

    #[test]
    fn cayley_slice_bounds() {
        let s = CausalSymmetricSpec::sl2_cayley().unwrap();
        let ray = |t: f64| sl2_elem(0.0, t, -t);
        assert!(polar_margin(&s, &ray(1.0)).unwrap() > 0.0);
        assert!(polar_margin(&s, &ray(PI / 2.0)).unwrap() <= 1e-12);
        assert!(polar_margin(&s, &ray(-0.3)).unwrap() < 0.0);
        assert!(polar_wedge_sample(&s, &[], &ray(PI / 2.0)).is_err());
        let p = polar_wedge_sample(&s, &[(s.h.clone(), 1.5)], &ray(1.2)).unwrap();
        assert!(p.automorphism_residual(&s.g) < 1e-9);
        for k in 0..=8 {
            let t = -2.0 + 0.5 * k as f64;
            let q = p.after(&s.g, &s.h, t).unwrap();
            assert!(in_positivity_domain(&s, &q, 0.0).unwrap());
        }
    }

    #[test]
    fn de_sitter_positivity_at_right_point() {
        let s = CausalSymmetricSpec::de_sitter(2).unwrap();
        // rotation in the (e₁, e₂) plane carrying e₂ to e₁
        let mut r = Matrix::zeros(3, 3);
        r[(1, 2)] = 1.0;
        r[(2, 1)] = -1.0;
        let x = s.g.coords(&r).unwrap();
        let p = PointRep::from_word(&s.g, vec![(x.clone(), PI / 2.0)]).unwrap();
        let m = s.g.exp_matrix(&(&x * (PI / 2.0))).unwrap();
        assert!((m.column(2) - DVector::from_vec(vec![0.0, 1.0, 0.0])).amax() < 1e-12);
        assert!(in_positivity_domain(&s, &p, 0.0).unwrap());
        let back = PointRep::from_word(&s.g, vec![(x, -PI / 2.0)]).unwrap();
        assert!(!in_positivity_domain(&s, &back, 0.0).unwrap());
    }

    #[test]
    fn transport_is_lorentz_and_equivariant() {
        let s = CausalSymmetricSpec::sl2_cayley().unwrap();
        let p = PointRep::from_word(&s.g, vec![(s.h.clone(), 0.4), (sl2_elem(0.2, 0.7, -0.3), 1.0)]).unwrap();
        let eta = quadric::minkowski_metric(2);
        for l in transported_lorentz(&s, &p).unwrap() {
            assert!((l.transpose() * &eta * &l - &eta).amax() < 1e-12);
            assert!(l[(0, 0)] > 0.0 && l.determinant() > 0.0);
        }
        let flow = PointRep::from_word(&s.g, vec![(s.h.clone(), 0.9)]).unwrap();
        let boost = &transported_lorentz(&s, &flow).unwrap()[0];
        assert!((boost - quadric::boost_matrix(2, 0.9)).amax() < 1e-12);
        let x = &transported_points(&s, &PointRep::identity(3)).unwrap()[0];
        assert_eq!(x, &DVector::from_vec(vec![0.0, 0.0, 1.0]));
    }

    #[test]
    fn cone_rays_and_pm() {
        let s = CausalSymmetricSpec::sl2_cayley().unwrap();
        let (plus, minus) = s.cone_rays().unwrap();
        assert_eq!(plus, vec![sl2_elem(0.0, 1.0, 0.0)]);
        assert_eq!(minus, vec![sl2_elem(0.0, 0.0, -1.0)]);
        let ds = CausalSymmetricSpec::de_sitter(2).unwrap();
        let (dp, dm) = ds.cone_rays().unwrap();
        let v = |x: &Element| ds.g.to_matrix(x).column(2).into_owned();
        let (a, b) = (v(&dp[0]), v(&dm[0]));
        // e₁ ± e₀ directions up to positive scale
        assert!(a[0] > 0.0 && (a[0] - a[1]).abs() < 1e-12);
        assert!(b[0] < 0.0 && (b[0] + b[1]).abs() < 1e-12);
        for name in ["sl2-cayley", "sl2xsl2", "dS3", "gl2", "sp4"] {
            let r = cones_c_pm(&CausalSymmetricSpec::by_name(name).unwrap(), 100, 3).unwrap();
            assert!(r.passed(), "{name}: {r:?}");
        }
        let r = cones_c_pm(&s, 50, 1).unwrap();
        assert_eq!(r.theta_swaps, Some(true));
    }

    #[test]
    fn small_equality_runs() {
        for name in ["sl2-cayley", "sl2xsl2", "dS2"] {
            let s = CausalSymmetricSpec::by_name(name).unwrap();
            let r = verify_wedge_equalities(&s, 200, 11, Exec::Parallel).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.witnesses);
        }
        let s = CausalSymmetricSpec::sl2_cayley().unwrap();
        assert!(polar_implies_positive(&s, 100, 2, Exec::Sequential).unwrap().passed());
        let sp = CausalSymmetricSpec::sp_cayley(2).unwrap();
        assert!(matches!(sample_domain(&sp, Domain::Kms, 5, 1, Exec::Sequential), Err(Error::Unsupported(_))));
        assert_eq!(sample_domain(&sp, Domain::Positivity, 5, 1, Exec::Sequential).unwrap().outcomes.len(), 5);
    }
}
