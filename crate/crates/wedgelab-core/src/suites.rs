//! Invariant suites behind `wedgelab verify`. Every check records the
//! claim it tests, its residual and its tolerance.

use std::f64::consts::PI;

use nalgebra::DVector;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::exec::Exec;
use crate::liealg::{self, ComplexElement, Element, LieAlgebraRealization};
use crate::linop::{self, EntireFn, Matrix, Operator};
use crate::polar::{self, PolarContext, ScanKind};
use crate::quadric::{self, CVector, Quadric, Vector};
use crate::report::{Check, EqualityReport, SuiteReport};
use crate::roots::RootClass;
use crate::sampling::{self, LowDiscrepancy};
use crate::wedge::{self, CausalSymmetricSpec, PointRep, Transport, SPEC_NAMES, WEDGE_DOMAINS};
use crate::{Complex, Error, Result, Tolerance};

pub const SUITES: [&str; 7] = ["linop", "liealg", "roots", "polar", "quadric", "wedge", "all"];

/// Seed, sample-count override and tolerances for a verification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Replaces every per-check sample count when set.
    pub n: Option<usize>,
    pub exec: Exec,
    /// Residual tolerance of identity checks.
    pub residual_tol: f64,
    /// Principal-angle tolerance of subspace comparisons.
    pub angle_tol: f64,
    /// Width of the boundary band in the wedge comparisons.
    pub band: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 1, n: None, exec: Exec::Parallel, residual_tol: 1e-9, angle_tol: 1e-7, band: crate::report::BAND }
    }
}

impl SuiteConfig {
    fn count(&self, default: usize) -> usize {
        self.n.unwrap_or(default)
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance { angle: self.angle_tol, ..Tolerance::default() }
    }
}

/// Run one suite, or all six for `"all"`.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    Ok(match name {
        "linop" => vec![linop_suite(cfg)],
        "liealg" => vec![liealg_suite(cfg)],
        "roots" => vec![roots_suite(cfg)],
        "polar" => vec![polar_suite(cfg)],
        "quadric" => vec![quadric_suite(cfg)],
        "wedge" => vec![wedge_suite(cfg)],
        "all" => vec![
            linop_suite(cfg),
            liealg_suite(cfg),
            roots_suite(cfg),
            polar_suite(cfg),
            quadric_suite(cfg),
            wedge_suite(cfg),
        ],
        other => return Err(Error::Unsupported(format!("unknown suite {other:?}"))),
    })
}

/// Run `f`, turning an error into a failed check.
fn guarded(name: &str, claim: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::error(name, claim, &e))
}

fn rng(cfg: &SuiteConfig, stream: u64) -> ChaCha8Rng {
    sampling::rng_for(cfg.seed, stream, 0)
}

fn gaussian_matrix(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Matrix {
    Matrix::from_fn(n, n, |_, _| scale * sampling::truncated_normal(rng, 4.0))
}

fn rotation_block(w: f64) -> Matrix {
    Matrix::from_row_slice(2, 2, &[0.0, -w, w, 0.0])
}

/// `P (rot(ω₁) ⊕ … ⊕ diag) P⁻¹` with eigenvalues `±iωₖ` planted.
fn planted_operator(rng: &mut ChaCha8Rng, freqs: &[f64], n: usize) -> Matrix {
    let mut b = Matrix::zeros(n, n);
    let mut k = 0;
    for w in freqs {
        b.view_mut((k, k), (2, 2)).copy_from(&rotation_block(*w));
        k += 2;
    }
    for i in k..n {
        b[(i, i)] = rng.gen_range(-1.0..1.0);
    }
    let p = Matrix::identity(n, n) + gaussian_matrix(rng, n, 0.3);
    let pinv = p.clone().try_inverse().expect("perturbed identity is invertible");
    p * b * pinv
}

pub fn linop_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("linop", cfg.seed, cfg.count(200));
    let tol = cfg.tolerance();

    let claim = "kernels of sinh(A)/A and cosh(A) from the eigenspace formula equal the numerical kernels";
    r.push(guarded("kernel_formulas", claim, || {
        let mut rng = rng(cfg, 1);
        let mut worst: f64 = 0.0;
        let mut failures = Vec::new();
        let mut ops: Vec<(String, Matrix)> =
            (0..cfg.count(200)).map(|i| (format!("random {i}"), gaussian_matrix(&mut rng, 6, 0.8))).collect();
        let planted: [&[f64]; 4] = [&[PI], &[PI / 2.0], &[PI, PI / 2.0], &[PI, 2.0 * PI]];
        for (k, freqs) in planted.iter().enumerate() {
            for j in 0..cfg.count(5).min(5) {
                ops.push((format!("planted {k}.{j}"), planted_operator(&mut rng, freqs, 6)));
            }
        }
        let mut planted_dims = Vec::new();
        for (label, m) in &ops {
            let a = Operator::new(m.clone())?;
            for (which, cmp) in [("sinhc", linop::kernel_sinhc_checked(&a, &tol)?), ("cosh", linop::kernel_cosh_checked(&a, &tol)?)] {
                if cmp.formula.dim() > 0 {
                    worst = worst.max(cmp.max_angle);
                }
                if label.starts_with("planted") {
                    planted_dims.push(cmp.formula.dim());
                }
                if !cmp.agrees(&tol) {
                    failures.push(format!("{label} {which}: dims {} vs {}, angle {:e}", cmp.formula.dim(), cmp.numerical.dim(), cmp.max_angle));
                }
            }
        }
        let nontrivial = planted_dims.iter().filter(|d| **d > 0).count();
        let ok = failures.is_empty() && (ops.is_empty() || nontrivial > 0);
        Ok(Check::flag("kernel_formulas", claim, ok).with_detail(serde_json::json!({
            "operators": ops.len(), "max_angle": worst, "angle_tol": tol.angle,
            "nontrivial_planted_kernels": nontrivial, "failures": failures,
        })))
    }));

    let claim = "cosh(A)^2 - sinh(A)^2 = 1 for random A with norm at most 5";
    r.push(guarded("cosh_sinh_identity", claim, || {
        let mut rng = rng(cfg, 2);
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.count(200) {
            let m = gaussian_matrix(&mut rng, 5, 1.0);
            let m = &m * (rng.gen_range(0.0..5.0) / m.norm().max(1e-12));
            let a = Operator::new(m)?;
            let c = linop::apply_entire(EntireFn::Cosh, &a)?.into_matrix();
            let s = linop::apply_entire(EntireFn::Sinh, &a)?.into_matrix();
            let res = (&c * &c - &s * &s - Matrix::identity(5, 5)).amax() / (1.0 + c.amax().powi(2));
            worst = worst.max(res);
        }
        Ok(Check::residual("cosh_sinh_identity", claim, worst, cfg.residual_tol))
    }));

    let claim = "C(z^2) = cos z and z S(z^2) = sin z on scalar operators";
    r.push(guarded("c_s_scalar", claim, || {
        let mut worst: f64 = 0.0;
        for k in 0..=600 {
            let z = -3.0 + 6.0 * k as f64 / 600.0;
            let a = Operator::new(Matrix::from_element(1, 1, z * z))?;
            let c = linop::apply_entire(EntireFn::C, &a)?.matrix()[(0, 0)];
            let s = linop::apply_entire(EntireFn::S, &a)?.matrix()[(0, 0)];
            worst = worst.max((c - z.cos()).abs()).max((z * s - z.sin()).abs());
        }
        Ok(Check::residual("c_s_scalar", claim, worst, cfg.residual_tol))
    }));

    let claim = "spectral radius of exp(A) equals exp(max Re Spec A)";
    r.push(guarded("exp_spectral_radius", claim, || {
        let mut rng = rng(cfg, 3);
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.count(200) {
            let a = Operator::new(gaussian_matrix(&mut rng, 5, 0.7))?;
            let max_re = linop::eigenvalues(&a)?.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
            let rho = linop::spectral_radius(&linop::apply_entire(EntireFn::Exp, &a)?)?;
            worst = worst.max((rho - max_re.exp()).abs() / max_re.exp());
        }
        Ok(Check::residual("exp_spectral_radius", claim, worst, 1e-8))
    }));
    r
}

const REALIZATIONS: [&str; 13] = [
    "sl(2)", "sl(3)", "sl(4)", "gl(2)", "sp(2)", "sp(4)", "sp(6)", "so(1,2)", "so(1,3)", "so(2,3)", "su(1,1)", "su(2,2)",
    "sl(2)xsl(2)",
];

fn all_specs() -> Result<Vec<CausalSymmetricSpec>> {
    SPEC_NAMES.iter().map(|n| CausalSymmetricSpec::by_name(n)).collect()
}

/// `e^{πi ad h}` through `cos(π ad h) + i sin(π ad h)` with both parts
/// from the `C` and `S` series.
fn exp_pi_i_ad(g: &LieAlgebraRealization, h: &Element) -> Result<(Matrix, Matrix)> {
    let a = g.ad(h).into_matrix() * PI;
    let a2 = Operator::new(&a * &a)?;
    let cos = linop::apply_entire(EntireFn::C, &a2)?.into_matrix();
    let sin = &a * linop::apply_entire(EntireFn::S, &a2)?.matrix();
    Ok((cos, sin))
}

pub fn liealg_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("liealg", cfg.seed, cfg.count(200));
    let tol = cfg.tolerance();

    let claim = "every shipped realization is closed under brackets and satisfies the Jacobi identity";
    r.push(guarded("jacobi", claim, || {
        let mut worst: f64 = 0.0;
        for name in REALIZATIONS {
            let g = liealg::make_realization(name)?;
            worst = worst.max(g.jacobi_residual()).max(g.closure_residual());
        }
        Ok(Check::residual("jacobi", claim, worst, cfg.residual_tol))
    }));

    let claim = "the sl(2) identities hold: Ad(g0)h1 = h0, the turn formula on 64 values, the sin(ad y)h closed form on a 32x32 grid";
    r.push(guarded("sl2_identities", claim, || {
        let rep = liealg::check_sl2_identities(64, 32)?;
        let offenders = rep.offenders(cfg.residual_tol);
        Ok(Check::residual("sl2_identities", claim, rep.max_residual(), cfg.residual_tol)
            .with_detail(serde_json::json!({ "offenders": offenders })))
    }));

    let specs = match all_specs() {
        Ok(s) => s,
        Err(e) => {
            r.push(Check::error("specs", "all shipped specs construct", &e));
            return r;
        }
    };

    let claim = "exp(pi i ad h) is real and equals the grading involution for every Euler element";
    r.push(guarded("euler_involution", claim, || {
        let mut worst: f64 = 0.0;
        for s in &specs {
            for h in std::iter::once(&s.h).chain(s.h_c.iter()) {
                let (cos, sin) = exp_pi_i_ad(&s.g, h)?;
                let tau_h = liealg::tau_from_euler(&s.g, h, &tol)?;
                worst = worst.max((cos - tau_h.matrix()).amax()).max(sin.amax());
            }
        }
        Ok(Check::residual("euler_involution", claim, worst, cfg.residual_tol))
    }));

    let claim = "tau_h commutes with the Cartan involution for the standard Euler elements of sl(2), gl(2) and sp(2n)";
    r.push(guarded("tau_theta_commute", claim, || {
        let mut worst: f64 = 0.0;
        let mut cases: Vec<(LieAlgebraRealization, Matrix)> = vec![
            (liealg::sl(2)?, Matrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, -0.5])),
            (liealg::gl(2)?, Matrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, -0.5])),
        ];
        for n in 1..=3 {
            let mut d = vec![0.5; n];
            d.extend(vec![-0.5; n]);
            cases.push((liealg::sp(n)?, Matrix::from_diagonal(&DVector::from_vec(d))));
        }
        for (g, h) in cases {
            let t = liealg::tau_from_euler(&g, &g.coords(&h)?, &tol)?;
            worst = worst.max(t.commutator_residual(&liealg::cartan_theta(&g, &tol)?));
        }
        Ok(Check::residual("tau_theta_commute", claim, worst, cfg.residual_tol))
    }));

    let claim = "the limit e^{-t} e^{t ad h} x at t = 40 reproduces the eigenprojections onto g_{+1} and g_{-1}";
    r.push(guarded("limit_projection", claim, || {
        let mut rng = rng(cfg, 10);
        let mut worst: f64 = 0.0;
        for s in &specs {
            for _ in 0..cfg.count(200) {
                let x = DVector::from_fn(s.dim(), |_, _| rng.gen_range(-1.0..1.0));
                for j in [1, -1] {
                    let lim = liealg::grading_limit(&s.g, &x, j, &s.h, 40.0)?;
                    worst = worst.max((lim - s.grading.project(&x, j)).amax());
                }
            }
        }
        Ok(Check::residual("limit_projection", claim, worst, 1e-8))
    }));

    let claim = "h = [q, q] in the sl(2) and de Sitter realizations";
    r.push(guarded("h_is_q_bracket", claim, || {
        let mut worst: f64 = 0.0;
        let mut dims = Vec::new();
        for s in specs.iter().filter(|s| s.transport != Transport::None) {
            let qq = s.g.bracket_span(&s.split.q, &s.split.q, &tol);
            dims.push((s.name.clone(), s.split.h.dim(), qq.dim()));
            worst = worst.max(if qq.dim() == s.split.h.dim() { qq.max_principal_angle(&s.split.h) } else { f64::INFINITY });
        }
        Ok(Check::residual("h_is_q_bracket", claim, worst, tol.angle).with_serialized(&dims))
    }));

    let claim = "kappa_h^{-1}(x+ - x-) = i(x+ + x-) for x+- in g_{+-1}, on a 32-point ray";
    r.push(guarded("kappa_cayley_relation", claim, || {
        let mut worst: f64 = 0.0;
        for s in &specs {
            let Some(hc) = &s.h_c else { continue };
            let (xp, xm) = (s.grading.project(hc, 1), s.grading.project(hc, -1));
            let k = liealg::kappa_operator(&s.g, &s.h)?;
            for i in 0..32 {
                let t = 0.1 + 3.0 * i as f64 / 31.0;
                let diff = ComplexElement::real((&xp - &xm) * t);
                let want = ComplexElement { re: Element::zeros(s.dim()), im: (&xp + &xm) * t };
                let got = liealg::kappa_inverse(&s.g, &s.h, &diff)?;
                worst = worst.max(got.distance(&want));
                // κ_h computed by the matrix exponential maps it back
                let back = ComplexElement::from_stacked(&(&k * want.stacked()));
                worst = worst.max(back.distance(&diff));
            }
        }
        Ok(Check::residual("kappa_cayley_relation", claim, worst, cfg.residual_tol))
    }));

    let claim = "recomputed dim g_1(h) and real rank match the catalog on every realized row";
    r.push(guarded("catalog_rows", claim, || {
        let rep = catalog::catalog_report(None)?;
        Ok(Check::flag("catalog_rows", claim, rep.passed).with_serialized(&rep.checks))
    }));
    r
}

pub fn roots_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("roots", cfg.seed, cfg.count(100));
    let specs = match all_specs() {
        Ok(s) => s,
        Err(e) => {
            r.push(Check::error("specs", "all shipped specs construct", &e));
            return r;
        }
    };
    for s in &specs {
        let name = |what: &str| format!("{}:{what}", s.name);
        let rs = match s.root_system() {
            Ok(rs) => rs,
            Err(e) => {
                r.push(Check::error(&name("decomposition"), "root spaces and centralizer span g; criteria agree", &e));
                continue;
            }
        };
        let total = rs.centralizer.dim() + rs.roots.iter().map(|x| x.multiplicity()).sum::<usize>();
        r.push(Check::flag(
            &name("decomposition"),
            "dim g = dim z(a) + sum of root multiplicities, and both compactness criteria agree on every root",
            total == s.dim(),
        )
        .with_detail(serde_json::json!({ "roots": rs.roots.len(), "centralizer": rs.centralizer.dim(), "dim": s.dim() })));

        let hc = rs.a.coords(s.h_c.as_ref().unwrap());
        r.push(guarded(&name("compact_iff_vanishing"), "a root is compact iff it vanishes on h_c", || {
            let hc = hc.clone()?;
            let ok = rs.roots.iter().all(|x| x.compact == (x.eval(&hc).abs() < 1e-7));
            Ok(Check::flag(&name("compact_iff_vanishing"), "a root is compact iff it vanishes on h_c", ok))
        }));

        let (cmin, cmax) = rs.cone_min_max();
        let claim = "C_min is contained in C_max, certified by exact LP";
        r.push(guarded(&name("cmin_in_cmax"), claim, || Ok(Check::flag(&name("cmin_in_cmax"), claim, cmax.includes(&cmin)?))));

        if s.oracle.is_some() {
            let claim = "C_min generators lie in C, and sampled points of C on a lie in C_max";
            r.push(guarded(&name("cone_sandwich"), claim, || {
                let mut ok = true;
                for i in rs.indices(RootClass::Positive) {
                    let c = rs.a.element(&rs.roots[i].coroot);
                    ok &= s.cone_margin(&c)? >= -1e-9;
                }
                let mut rng = rng(cfg, 20);
                let mut inside = 0;
                for _ in 0..cfg.count(100) {
                    let c = DVector::from_fn(rs.a.dim(), |_, _| rng.gen_range(-1.0..1.0));
                    if s.cone_margin(&rs.a.element(&c))? >= 0.0 {
                        inside += 1;
                        ok &= cmax.contains(&c);
                    }
                }
                Ok(Check::flag(&name("cone_sandwich"), claim, ok).with_detail(serde_json::json!({ "inside_samples": inside })))
            }));
        }

        let claim = "W_k preserves s and permutes the generators of C_min";
        r.push(guarded(&name("weyl_invariance"), claim, || {
            let mut rng = rng(cfg, 21);
            let mut worst: f64 = 0.0;
            let mut permutes = true;
            for w in &rs.weyl_k.elements {
                permutes &= cmin.invariant_under(w);
                for _ in 0..cfg.count(100) {
                    let x = DVector::from_fn(rs.a.dim(), |_, _| rng.gen_range(-2.0..2.0));
                    worst = worst.max((rs.s_of(&(w * &x)) - rs.s_of(&x)).abs());
                }
            }
            Ok(Check::residual(&name("weyl_invariance"), claim, if permutes { worst } else { f64::INFINITY }, cfg.residual_tol)
                .with_detail(serde_json::json!({ "order": rs.weyl_k.order(), "capped": rs.weyl_k.capped })))
        }));

        let claim = "the returned Gamma is -tau-stable and strongly orthogonal by exhaustive pair checks; its sl(2)^s subalgebra closes";
        r.push(guarded(&name("strongly_orthogonal"), claim, || {
            let so = rs.strongly_orthogonal_set()?;
            let mut ok = true;
            for (k, &i) in so.gamma.iter().enumerate() {
                for &j in &so.gamma[k + 1..] {
                    ok &= rs.strongly_orthogonal_pair(i, j);
                }
            }
            let (dim, res) = rs.gamma_subalgebra(&s.g, &s.theta, &so.gamma, &Tolerance::default())?;
            ok &= res < 1e-9;
            Ok(Check::flag(&name("strongly_orthogonal"), claim, ok).with_detail(serde_json::json!({
                "gamma": so.gamma.len(), "r0": so.r0, "r1": so.r1, "subalgebra_dim": dim, "closure_residual": res,
            })))
        }));
    }

    let claim = "sl(4) model: 12 roots, W_k of order 4, diag(2,2,1,-5) in C_max but not C_min, compact roots are exactly those vanishing on h_c";
    r.push(guarded("sl4_worked_example", claim, || {
        let s = CausalSymmetricSpec::sl4_model()?;
        let rs = s.root_system()?;
        let (cmin, cmax) = rs.cone_min_max();
        let x = rs.a.coords(&s.g.coords(&Matrix::from_diagonal(&DVector::from_vec(vec![2.0, 2.0, 1.0, -5.0])))?)?;
        let compact = rs.roots.iter().filter(|r| r.compact).count();
        let ok = rs.roots.len() == 12 && rs.weyl_k.order() == 4 && cmax.contains(&x) && !cmin.contains(&x) && compact == 4;
        Ok(Check::flag("sl4_worked_example", claim, ok).with_detail(serde_json::json!({
            "roots": rs.roots.len(), "compact": compact, "weyl_order": rs.weyl_k.order(),
        })))
    }));
    r
}

pub fn polar_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("polar", cfg.seed, cfg.count(500));
    let tol = cfg.tolerance();
    let contexts: Vec<(String, Result<PolarContext>)> = ["sl2-cayley", "sl2xsl2", "dS3"]
        .iter()
        .map(|n| (n.to_string(), CausalSymmetricSpec::by_name(n).and_then(|s| PolarContext::for_spec(&s))))
        .collect();

    for (name, ctx) in &contexts {
        let claim = "spectral regularity criteria agree with invertibility, and the tangent map has full rank exactly when polar-regular";
        r.push(guarded(&format!("{name}:regularity"), claim, || {
            let ctx = ctx.as_ref().map_err(Clone::clone)?;
            let t = polar::regularity_agreement(ctx, cfg.count(500), cfg.seed, cfg.exec)?;
            Ok(Check::flag(&format!("{name}:regularity"), claim, t.passed()).with_serialized(&t))
        }));

        let claim = "ker cosh(ad x) is the -1 eigenspace of sigma_x, and zeta_x maps h^{-sigma_x} onto q^{-sigma_x}";
        r.push(guarded(&format!("{name}:sigma_zeta"), claim, || {
            let ctx = ctx.as_ref().map_err(Clone::clone)?;
            let mut rng = rng(cfg, 30);
            let d = ctx.g.dim();
            let eye = Matrix::identity(d, d);
            let mut worst: f64 = 0.0;
            let mut nontrivial = 0;
            let mut skipped = 0;
            for i in 0..cfg.count(50) {
                let c = DVector::from_fn(ctx.q.dim(), |_, _| sampling::truncated_normal(&mut rng, 4.0));
                let mut x = ctx.q.basis() * c;
                let rho = linop::imag_spectral_radius(&ctx.g.ad(&x))?;
                if i % 2 == 0 && rho > 1e-9 {
                    x *= PI / 2.0 / rho;
                }
                // e^{-2 ad x} grows like e^{2|Re λ|}; past this the -1
                // eigenspace is below the resolution of an absolute null space
                let re = linop::eigenvalues(&ctx.g.ad(&x))?.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
                if re > 3.0 {
                    skipped += 1;
                    continue;
                }
                let s = polar::sigma_x(&ctx.g, &x)?;
                let minus = linop::null_space(&(&s + &eye), &tol);
                let k = linop::kernel_cosh(&ctx.g.ad(&x), &tol)?;
                worst = worst.max(if minus.dim() == k.dim() { minus.max_principal_angle(&k) } else { f64::INFINITY });
                let h_minus = ctx.h.intersection(&minus, &tol);
                let q_minus = ctx.q.intersection(&minus, &tol);
                if minus.dim() > 0 {
                    nontrivial += 1;
                    let image = h_minus.image(&polar::zeta_x(&ctx.g, &x)?, &tol);
                    worst = worst.max(if image.dim() == q_minus.dim() { image.max_principal_angle(&q_minus) } else { f64::INFINITY });
                }
            }
            Ok(Check::residual(&format!("{name}:sigma_zeta"), claim, worst, tol.angle)
                .with_detail(serde_json::json!({ "nontrivial_samples": nontrivial, "skipped_large_real_part": skipped })))
        }));
    }

    let sl2 = contexts[0].1.as_ref().map_err(Clone::clone);
    let ray = Element::from_vec(vec![0.0, 1.0, -1.0]);
    let claim = "the (e - f)-ray scan finds the singular polar parameter at pi/4 and the singular exp parameter at pi/2";
    r.push(guarded("ray_scans", claim, || {
        let c = sl2.clone()?;
        let p = polar::scan_ray(c, ScanKind::Polar, &ray, 0.01, 1.5)?;
        let e = polar::scan_ray(c, ScanKind::Exp, &ray, 0.01, 2.2)?;
        let ok = p.singular_t.len() == 1
            && (p.singular_t[0] - PI / 4.0).abs() < 1e-3
            && e.singular_t.len() == 1
            && (e.singular_t[0] - PI / 2.0).abs() < 1e-3;
        Ok(Check::flag("ray_scans", claim, ok)
            .with_detail(serde_json::json!({ "polar": p.singular_t, "exp": e.singular_t })))
    }));

    let claim = "g_m decomposes as h^{sigma_x} + q^{-sigma_x} on its sigma_x^2-fixed part; dim g^{sigma_x} jumps only where ad x meets pi i Z";
    r.push(guarded("stabilizers", claim, || {
        let c = sl2.clone()?;
        let mut ok = true;
        let mut dims = Vec::new();
        for k in 1..64 {
            let t = PI * 0.75 * k as f64 / 64.0;
            let rep = polar::stabilizer_algebra(c, &(&ray * t))?;
            ok &= rep.decomposes(&tol);
            let jump = (t - PI / 2.0).abs() < 1e-12;
            ok &= rep.dim() == 1 && (rep.sigma_fixed.dim() == 1 || jump);
            dims.push(rep.sigma_fixed.dim());
        }
        let at = polar::stabilizer_algebra(c, &(&ray * (PI / 2.0)))?;
        ok &= at.sigma_fixed.dim() == 3 && at.decomposes(&tol);
        Ok(Check::flag("stabilizers", claim, ok))
    }));

    let claim = "exp(x) = exp(y) with imaginary spectral radii below pi forces x - y central";
    r.push(guarded("exp_fibers", claim, || {
        let g = liealg::sl(2)?;
        let mut rng = rng(cfg, 31);
        let mut trials = 0;
        let mut held = true;
        let mut hits = 0;
        for _ in 0..cfg.count(100_000) {
            let x = DVector::from_fn(3, |_, _| rng.gen_range(-1.5..1.5));
            let y = DVector::from_fn(3, |_, _| rng.gen_range(-1.5..1.5));
            match polar::exp_fiber_central(&g, &x, &y) {
                Ok(v) => {
                    trials += 1;
                    held &= v;
                    let close = (g.exp_matrix(&x)? - g.exp_matrix(&y)?).amax() < 1e-9;
                    hits += usize::from(close && (&x - &y).amax() > 1e-9);
                }
                Err(Error::Domain(_)) => {}
                Err(e) => return Err(e),
            }
        }
        let gl = liealg::gl(2)?;
        let one = gl.coords(&Matrix::identity(2, 2))?;
        for z in [0.0, 0.25, -1.0] {
            let x = DVector::from_fn(4, |_, _| rng.gen_range(-1.0..1.0));
            held &= polar::exp_fiber_central(&gl, &x, &(&x + &one * z))?;
        }
        Ok(Check::flag("exp_fibers", claim, held && hits == 0)
            .with_detail(serde_json::json!({ "trials": trials, "counterexamples": hits })))
    }));
    r
}

/// A random point of `dS^d` with an orthonormal tangent frame
/// `(timelike, spacelike…)`, moved from `e₂` by a random Lorentz map.
fn random_frame(d: usize, rng: &mut ChaCha8Rng) -> Result<(Vector, Vec<Vector>)> {
    let g = liealg::so(1, d)?;
    let x = DVector::from_fn(g.dim(), |_, _| rng.gen_range(-0.8..0.8));
    let l = g.exp_matrix(&x)?;
    let p = l.column(2).into_owned();
    let frame = (0..=d).filter(|&i| i != 2).map(|i| l.column(i).into_owned()).collect();
    Ok((p, frame))
}

fn geodesic_checks(cfg: &SuiteConfig, r: &mut SuiteReport) {
    let claim = "gamma(2t - s) = s_{gamma(t)} gamma(s) on timelike, spacelike and lightlike geodesics";
    r.push(guarded("geodesic_law", claim, || {
        let q = Quadric::de_sitter(2);
        let mut rng = rng(cfg, 40);
        let mut worst = [0.0f64; 3];
        let (p, frame) = random_frame(2, &mut rng)?;
        let branches = [frame[0].clone(), frame[1].clone(), &frame[0] + &frame[1]];
        for (b, v) in branches.iter().enumerate() {
            for k in 0..cfg.count(1000) {
                let t = -1.5 + 3.0 * (k % 32) as f64 / 31.0;
                let s = -1.5 + 3.0 * (k / 32 % 32) as f64 / 31.0;
                let scale = rng.gen_range(0.2..1.0);
                let g = q.exp(&p, &(v * ((2.0 * t - s) * scale)))?;
                worst[b] = worst[b].max(q.geodesic_residual(&p, &(v * scale), t, s)? / (1.0 + g.norm()));
            }
        }
        let m = worst.iter().copied().fold(0.0, f64::max);
        Ok(Check::residual("geodesic_law", claim, m, cfg.residual_tol)
            .with_detail(serde_json::json!({ "timelike": worst[0], "spacelike": worst[1], "lightlike": worst[2] })))
    }));

    let claim = "Exp stays on the quadric for random tangent vectors of all three causal types";
    r.push(guarded("quadric_closure", claim, || {
        let mut rng = rng(cfg, 41);
        let mut worst: f64 = 0.0;
        let mut counts = [0usize; 3];
        for k in 0..cfg.count(10_000) {
            let d = 2 + k % 3;
            let q = Quadric::de_sitter(d);
            let (p, frame) = random_frame(d, &mut rng)?;
            let kind = (k / 3) % 3;
            counts[kind] += 1;
            let a = rng.gen_range(-2.0..2.0);
            let v = match kind {
                0 => &frame[0] * a + &frame[1] * (0.3 * a),
                1 => &frame[1] * a + &frame[0] * (0.3 * a),
                _ => (&frame[0] + &frame[1]) * a,
            };
            let out = q.exp(&p, &v)?;
            worst = worst.max(q.residual(&out) / (1.0 + out.norm_squared()));
        }
        Ok(Check::residual("quadric_closure", claim, worst, cfg.residual_tol).with_serialized(&counts))
    }));

    let claim = "s_x(y . z) = s_x(y) . s_x(z) with y . z = s_y(z) on dS^2";
    r.push(guarded("symmetric_space_axiom", claim, || {
        let q = Quadric::de_sitter(2);
        let mut rng = rng(cfg, 42);
        let mut worst: f64 = 0.0;
        for _ in 0..cfg.count(1000) {
            let (x, _) = random_frame(2, &mut rng)?;
            let (y, _) = random_frame(2, &mut rng)?;
            let (z, _) = random_frame(2, &mut rng)?;
            let lhs = q.point_symmetry(&x, &q.point_symmetry(&y, &z)?)?;
            let rhs = q.point_symmetry(&q.point_symmetry(&x, &y)?, &q.point_symmetry(&x, &z)?)?;
            worst = worst.max((&lhs - &rhs).norm() / (1.0 + lhs.norm()));
        }
        Ok(Check::residual("symmetric_space_axiom", claim, worst, cfg.residual_tol))
    }));

    let claim = "alpha_z(alpha_w(x)) = alpha_{z+w}(x) on a complex grid";
    r.push(guarded("boost_group_law", claim, || {
        let mut rng = rng(cfg, 43);
        let x = CVector::from_fn(3, |_, _| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let mut worst: f64 = 0.0;
        let vals: Vec<f64> = (0..9).map(|k| -2.0 + 0.5 * k as f64).collect();
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    let z = Complex::new(a, b * 0.75);
                    let w = Complex::new(c, -a * 0.5);
                    let lhs = quadric::boost_flow(&quadric::boost_flow(&x, w), z);
                    let rhs = quadric::boost_flow(&x, z + w);
                    worst = worst.max((&lhs - &rhs).norm() / (1.0 + rhs.norm()));
                }
            }
        }
        Ok(Check::residual("boost_group_law", claim, worst, cfg.residual_tol))
    }));

    let claim = "the branch formulas of Exp agree with a 40-term series";
    r.push(guarded("exp_series", claim, || {
        let mut rng = rng(cfg, 44);
        let mut worst: f64 = 0.0;
        for k in 0..cfg.count(1000) {
            let d = 2 + k % 3;
            let q = Quadric::de_sitter(d);
            let (p, frame) = random_frame(d, &mut rng)?;
            let v = &frame[0] * rng.gen_range(-1.5..1.5) + &frame[1] * rng.gen_range(-1.5..1.5);
            let a = q.exp(&p, &v)?;
            let b = q.exp_series(&p, &v, 40);
            worst = worst.max((&a - &b).norm() / (1.0 + a.norm()));
        }
        Ok(Check::residual("exp_series", claim, worst, 1e-10))
    }));
}

fn equality_check(name: &str, claim: &str, cfg: &SuiteConfig, domains: &[&str], run: impl FnOnce() -> Result<(String, Vec<crate::report::SampleOutcome>)>) -> Check {
    guarded(name, claim, || {
        let (spec, outcomes) = run()?;
        let rep = EqualityReport::from_outcomes(&spec, cfg.seed, domains, &outcomes, cfg.band);
        Ok(Check::flag(name, claim, rep.passed()).with_detail(serde_json::json!({
            "n": rep.n,
            "tallies": rep.tallies,
            "members": rep.members,
            "class_counts": rep.class_counts,
            "agreement": rep.agreement,
            "interior_witnesses": rep.witnesses.iter().filter(|w| !w.indeterminate).collect::<Vec<_>>(),
            "band_witnesses": rep.witnesses.iter().filter(|w| w.indeterminate).count(),
        })))
    })
}

pub fn quadric_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("quadric", cfg.seed, cfg.count(2000));
    geodesic_checks(cfg, &mut r);

    for d in [2, 4] {
        let claim = "the four flat wedge tests agree outside the boundary band";
        r.push(equality_check(&format!("minkowski_R1{d}"), claim, cfg, &quadric::MINKOWSKI_DOMAINS, || {
            Ok((format!("R^(1,{d})"), quadric::minkowski_outcomes(d, cfg.count(5000), cfg.seed, cfg.exec)?))
        }));
    }
    for d in 2..=4 {
        let claim = "the five de Sitter wedge tests agree outside the boundary band";
        r.push(equality_check(&format!("desitter_dS{d}"), claim, cfg, &quadric::DS_DOMAINS, || {
            Ok((format!("dS{d}"), quadric::desitter_outcomes(d, cfg.count(2000), cfg.seed, cfg.exec)?))
        }));
        let claim = "the flow fixed point e2 is excluded by all five tests";
        r.push(guarded(&format!("dS{d}:base_point"), claim, || {
            let mut e2 = Vector::zeros(d + 1);
            e2[2] = 1.0;
            let v = quadric::desitter_verdicts(&e2, &quadric::kms_grid());
            Ok(Check::flag(&format!("dS{d}:base_point"), claim, v.iter().all(|b| !b)).with_serialized(&v))
        }));
        let claim = "tau-bar-fixed tube points are boost . Exp(i t e0) images and Wick-rotate onto the wedge";
        r.push(guarded(&format!("dS{d}:tube_fixed_points"), claim, || {
            let rep = quadric::cayley_fixedpoint_check(d, cfg.count(1000), cfg.seed, cfg.exec)?;
            Ok(Check::flag(&format!("dS{d}:tube_fixed_points"), claim, rep.passed()).with_serialized(&rep))
        }));
    }
    r
}

fn box_point(spec: &CausalSymmetricSpec, rng: &mut ChaCha8Rng) -> Result<PointRep> {
    let q = &spec.split.q;
    let c = DVector::from_fn(q.dim(), |_, _| rng.gen_range(-1.5..1.5));
    PointRep::from_word(&spec.g, vec![(q.basis() * c, 1.0)])
}

pub fn wedge_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("wedge", cfg.seed, cfg.count(2000));
    let tol = cfg.tolerance();
    let specs = match all_specs() {
        Ok(s) => s,
        Err(e) => {
            r.push(Check::error("specs", "all shipped specs construct", &e));
            return r;
        }
    };

    for name in ["sl2-cayley", "sl2xsl2"] {
        let claim = "polar wedge, positivity domain and KMS wedge agree outside the boundary band";
        r.push(equality_check(&format!("{name}:equality"), claim, cfg, &WEDGE_DOMAINS, || {
            let s = CausalSymmetricSpec::by_name(name)?;
            Ok((name.to_string(), wedge::wedge_outcomes(&s, cfg.count(2000), cfg.seed, cfg.exec)?))
        }));
    }

    for s in specs.iter().filter(|s| s.cone_rays().is_ok()) {
        let claim = "every polar-wedge sample lies in the positivity domain";
        r.push(guarded(&format!("{}:polar_in_positivity", s.name), claim, || {
            let rep = wedge::polar_implies_positive(s, cfg.count(1000), cfg.seed, cfg.exec)?;
            Ok(Check::flag(&format!("{}:polar_in_positivity", s.name), claim, rep.passed()).with_serialized(&rep))
        }));
    }

    for s in &specs {
        let name = |what: &str| format!("{}:{what}", s.name);
        if s.oracle.is_none() {
            let claim = "positivity is reported unsupported without a cone oracle";
            let ok = matches!(wedge::in_positivity_domain(s, &PointRep::identity(s.dim()), 0.0), Err(Error::Unsupported(_)));
            r.push(Check::flag(&name("unsupported"), claim, ok));
            continue;
        }
        let claim = "the base point is outside the positivity domain and the modular field vanishes there";
        r.push(guarded(&name("zero_set"), claim, || {
            let id = PointRep::identity(s.dim());
            let ok = wedge::modular_vector_field(s, &id).amax() < 1e-15 && !wedge::in_positivity_domain(s, &id, 0.0)?;
            Ok(Check::flag(&name("zero_set"), claim, ok))
        }));

        let claim = "left translation by exp(s h), s in [-2, 2], preserves membership in every wedge test";
        r.push(guarded(&name("gh_invariance"), claim, || {
            let mut rng = rng(cfg, 50);
            let grid = quadric::kms_grid();
            let ld = LowDiscrepancy::new(2, cfg.seed);
            let mut changed = Vec::new();
            let mut tested = 0;
            for i in 0..cfg.count(200) {
                let t = rng.gen_range(-2.0..2.0);
                if let Transport::Sl2Factors { .. } = s.transport {
                    let (_, p) = wedge::sample_sl2_point(s, cfg.seed, i, &ld)?;
                    let a = wedge::evaluate_sl2(s, &p, &grid)?;
                    let b = wedge::evaluate_sl2(s, &p.after(&s.g, &s.h, t)?, &grid)?;
                    if a.margin.abs() >= cfg.band {
                        tested += 1;
                        if a.verdicts != b.verdicts {
                            changed.push(i);
                        }
                    }
                } else {
                    let p = box_point(s, &mut rng)?;
                    let m = wedge::positivity_margin(s, &p)?;
                    let m2 = wedge::positivity_margin(s, &p.after(&s.g, &s.h, t)?)?;
                    if m.abs() >= cfg.band {
                        tested += 1;
                        if (m > 0.0) != (m2 > 0.0) {
                            changed.push(i);
                        }
                    }
                }
            }
            Ok(Check::flag(&name("gh_invariance"), claim, changed.is_empty())
                .with_detail(serde_json::json!({ "tested": tested, "changed": changed })))
        }));

        let claim = "the lifted tau_h sends positivity points to points whose modular field lies in -C";
        r.push(guarded(&name("tau_h_flip"), claim, || {
            let tau_h = liealg::tau_from_euler(&s.g, &s.h, &tol)?;
            let mut rng = rng(cfg, 51);
            let mut positive = 0;
            let mut failures = 0;
            for _ in 0..cfg.count(200) {
                let p = box_point(s, &mut rng)?;
                if wedge::positivity_margin(s, &p)? > cfg.band {
                    positive += 1;
                    let y = wedge::modular_vector_field(s, &p.twisted(&tau_h));
                    if !(s.cone_margin(&-y)? > 0.0) {
                        failures += 1;
                    }
                }
            }
            Ok(Check::flag(&name("tau_h_flip"), claim, failures == 0)
                .with_detail(serde_json::json!({ "positive_samples": positive, "failures": failures })))
        }));

        if s.cone_rays().is_ok() || matches!(s.oracle, Some(wedge::ConeOracle::SymBlocks { .. })) {
            let claim = "projections of C onto q_{+1} and q_{-1} land in C_+ and -C_-, which are pointed and generating";
            r.push(guarded(&name("c_pm_projections"), claim, || {
                let rep = wedge::cones_c_pm(s, cfg.count(200), cfg.seed)?;
                Ok(Check::flag(&name("c_pm_projections"), claim, rep.passed()).with_serialized(&rep))
            }));
        }
    }

    let claim = "membership in C_min^pi implies membership in C_max^pi on sampled Cartan points";
    r.push(guarded("cone_nesting", claim, || {
        let mut rng = rng(cfg, 52);
        let mut violations = Vec::new();
        for s in &specs {
            let rs = s.root_system()?;
            let (cmin, cmax) = rs.cone_min_max();
            for _ in 0..cfg.count(200) {
                let x = DVector::from_fn(rs.a.dim(), |_, _| rng.gen_range(-2.0..2.0));
                if rs.in_c_pi(&x, &cmin) && !rs.in_c_pi(&x, &cmax) {
                    violations.push(s.name.clone());
                }
            }
        }
        Ok(Check::flag("cone_nesting", claim, violations.is_empty()).with_serialized(&violations))
    }));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig { n: Some(20), ..SuiteConfig::default() }
    }

    #[test]
    fn every_suite_passes_at_small_n() {
        for name in &SUITES[..6] {
            for rep in run_suite(name, &small()).unwrap() {
                let failed: Vec<_> = rep.failures().into_iter().map(|c| (&c.name, &c.detail)).collect();
                assert!(rep.passed, "{name}: {failed:?}");
            }
        }
    }

    #[test]
    fn zero_samples_pass() {
        let cfg = SuiteConfig { n: Some(0), ..SuiteConfig::default() };
        for rep in run_suite("all", &cfg).unwrap() {
            let failed: Vec<_> = rep.failures().into_iter().map(|c| (&c.name, &c.detail)).collect();
            assert!(rep.passed, "{}: {failed:?}", rep.suite);
        }
        assert!(run_suite("nope", &cfg).is_err());
    }
}
