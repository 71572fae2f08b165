//! The irreducible non-compactly causal symmetric Lie algebras `(𝔤, τ)`
//! whose Euler elements meet `𝔥`, as catalog data. Rows with a shipped
//! matrix realization recompute `dim 𝔤₁(h)` and the real rank.

use serde::{Deserialize, Serialize};

use crate::liealg::{self, cartan_theta, Element, LieAlgebraRealization};
use crate::linop::Matrix;
use crate::sampling;
use crate::{Error, Result, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Complex,
    Cayley,
    Split,
    Nonsplit,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Complex, Family::Cayley, Family::Split, Family::Nonsplit];

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "complex" => Ok(Family::Complex),
            "cayley" => Ok(Family::Cayley),
            "split" => Ok(Family::Split),
            "nonsplit" => Ok(Family::Nonsplit),
            other => Err(Error::Unsupported(format!("unknown family {other:?}"))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Family::Complex => "complex",
            Family::Cayley => "cayley",
            Family::Split => "split",
            Family::Nonsplit => "nonsplit",
        }
    }
}

/// One row of the classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub g_label: String,
    /// The c-dual `𝔤^c = 𝔥 + i𝔮`.
    pub g_c_label: String,
    pub h_label: String,
    /// Type of the restricted root system `Δ(𝔤, 𝔞)`.
    pub root_type: String,
    pub euler_label: String,
    pub g1_label: String,
    pub family: Family,
    /// True iff a matrix realization ships for some parameters of the row.
    pub realized: bool,
}

fn entry(g: &str, gc: &str, h: &str, roots: &str, euler: &str, g1: &str, family: Family, realized: bool) -> CatalogEntry {
    CatalogEntry {
        g_label: g.into(),
        g_c_label: gc.into(),
        h_label: h.into(),
        root_type: roots.into(),
        euler_label: euler.into(),
        g1_label: g1.into(),
        family,
        realized,
    }
}

/// All rows, grouped by family.
pub fn entries() -> Vec<CatalogEntry> {
    use Family::*;
    vec![
        entry("sl_{2r}(C)", "su_{r,r}(C)^2", "su_{r,r}(C)", "A_{2r-1}", "h_r", "M_r(C)", Complex, false),
        entry("sp_{2r}(C)", "sp_{2r}(R)^2", "sp_{2r}(R)", "C_r", "h_r", "Sym_r(C)", Complex, false),
        entry("so_{2k}(C), k>2", "so_{2,2k-2}(R)^2", "so_{2,2k-2}(R)", "D_k", "h_1", "C^{2k-2}", Complex, false),
        entry("so_{2k+1}(C), k>1", "so_{2,2k-1}(R)^2", "so_{2,2k-1}(R)", "B_k", "h_1", "C^{2k-1}", Complex, false),
        entry("so_{4r}(C)", "so*(4r)^2", "so*(4r)", "D_{2r}", "h_{2r-1}, h_{2r}", "Skew_{2r}(C)", Complex, false),
        entry("e_7(C)", "e_{7(-25)}^2", "e_{7(-25)}", "E_7", "h_7", "Herm_3(O)_C", Complex, false),
        entry("su_{r,r}(C)", "su_{r,r}(C)", "R + sl_r(C)", "C_r", "h_r", "Herm_r(C)", Cayley, true),
        entry("sp_{2r}(R)", "sp_{2r}(R)", "R + sl_r(R)", "C_r", "h_r", "Sym_r(R)", Cayley, true),
        entry("so_{2,d}(R), d>2", "so_{2,d}(R)", "R + so_{1,d-1}(R)", "C_2", "h_2", "R^{1,d-1}", Cayley, true),
        entry("so*(4r)", "so*(4r)", "R + sl_r(H)", "C_r", "h_r", "Herm_r(H)", Cayley, false),
        entry("e_{7(-25)}", "e_{7(-25)}", "R + e_{6(-26)}", "C_3", "h_3", "Herm_3(O)", Cayley, false),
        entry("sl_{2r}(R)", "su_{r,r}(C)", "so_{r,r}(R)", "A_{2r-1}", "h_r", "M_r(R)", Split, true),
        entry("so_{2r,2r}(R)", "so*(4r)", "so_{2r}(C)", "D_{2r}", "h_{2r-1}, h_{2r}", "Skew_{2r}(R)", Split, false),
        entry("e_7(R)", "e_{7(-25)}", "sl_4(H)", "E_7", "h_7", "Herm_3(O_split)", Split, false),
        entry("so_{p+1,q+1}(R), p,q>1", "so_{2,p+q}(R)", "so_{1,p}(R) + so_{1,q}(R)", "B_{p+1} (p<q), D_{p+1} (p=q)", "h_1", "R^{p,q}", Split, true),
        entry("sl_{2s}(H)", "su_{2s,2s}(C)", "u_{s,s}(H)", "A_{2s-1}", "h_s", "M_s(H)", Nonsplit, false),
        entry("u_{s,s}(H)", "sp_{4s}(R)", "sp_{2s}(C)", "C_s", "h_s", "Aherm_s(H)", Nonsplit, false),
        entry("so_{1,d+1}(R)", "so_{2,d}(R)", "so_{1,d}(R)", "A_1", "h_1", "R^d", Nonsplit, true),
    ]
}

pub fn filtered(family: Option<Family>) -> Vec<CatalogEntry> {
    entries().into_iter().filter(|e| family.is_none_or(|f| e.family == f)).collect()
}

/// A concrete member of a realized row with the catalog's values and the
/// recomputed ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizedCheck {
    pub row: String,
    pub realization: String,
    pub family: Family,
    pub g1_label: String,
    pub expected_g1_dim: usize,
    pub computed_g1_dim: usize,
    pub expected_rank: usize,
    pub computed_rank: usize,
    /// Closure and Jacobi residuals of the realization.
    pub structure_residual: f64,
}

impl RealizedCheck {
    pub fn matches(&self) -> bool {
        self.expected_g1_dim == self.computed_g1_dim && self.expected_rank == self.computed_rank
    }
}

fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = 1.0;
    m
}

/// `½ diag(1_r, −1_r)`.
fn half_split(r: usize) -> Matrix {
    let mut m = Matrix::zeros(2 * r, 2 * r);
    for i in 0..r {
        m[(i, i)] = 0.5;
        m[(r + i, r + i)] = -0.5;
    }
    m
}

/// `E_{ab} + E_{ba}`, a boost generator in `so(p, q)` for `a < p ≤ b`.
fn boost(n: usize, a: usize, b: usize) -> Matrix {
    unit(n, a, b) + unit(n, b, a)
}

/// Real rank: the dimension of the centralizer in `𝔭` of a generic `𝔭`-element.
pub fn real_rank(g: &LieAlgebraRealization, seed: u64) -> Result<usize> {
    let tol = Tolerance::default();
    let theta = cartan_theta(g, &tol)?;
    let p = theta.anti_fixed(&tol);
    let mut rng = sampling::rng_for(seed, 700, 0);
    let c = nalgebra::DVector::from_fn(p.dim(), |_, _| sampling::truncated_normal(&mut rng, 4.0));
    let x: Element = p.basis() * c;
    Ok(g.centralizer(&[x], &p, &tol).dim())
}

fn check(row: &str, family: Family, g1_label: &str, g: LieAlgebraRealization, h: Matrix, g1: usize, rank: usize) -> Result<RealizedCheck> {
    let hx = g.coords(&h)?;
    let grading = liealg::is_euler(&g, &hx)?.ok_or(Error::NotEuler)?;
    let [_, _, plus] = grading.dims(&Tolerance::default());
    Ok(RealizedCheck {
        row: row.into(),
        realization: g.name().to_string(),
        family,
        g1_label: g1_label.into(),
        expected_g1_dim: g1,
        computed_g1_dim: plus,
        expected_rank: rank,
        computed_rank: real_rank(&g, 1)?,
        structure_residual: g.closure_residual().max(g.jacobi_residual()),
    })
}

/// Recompute the realized rows: `sl(2r, ℝ)` and `sp(2r, ℝ)` for `r ≤ 3`,
/// `so(2, d)` for `d ∈ {3, 4}`, `su(r, r)` for `r ≤ 2`, `so(3, 3)`,
/// `so(3, 4)` and `so(1, d+1)` for `d ∈ {2, 3}`.
pub fn realized_checks() -> Result<Vec<RealizedCheck>> {
    let mut out = Vec::new();
    for r in 1..=3 {
        out.push(check("sl_{2r}(R)", Family::Split, "M_r(R)", liealg::sl(2 * r)?, half_split(r), r * r, 2 * r - 1)?);
    }
    for r in 1..=3 {
        out.push(check("sp_{2r}(R)", Family::Cayley, "Sym_r(R)", liealg::sp(r)?, half_split(r), r * (r + 1) / 2, r)?);
    }
    for d in 3..=4 {
        // η = diag(1, 1, −1, …): the boost mixes e₁ with e₂
        out.push(check("so_{2,d}(R), d>2", Family::Cayley, "R^{1,d-1}", liealg::so(2, d)?, boost(d + 2, 1, 2), d, 2)?);
    }
    for r in 1..=2 {
        let n = 2 * r;
        let mut h = Matrix::zeros(n, n);
        for i in 0..r {
            h[(i, r + i)] = 0.5;
            h[(r + i, i)] = 0.5;
        }
        let hr = liealg::realify(&h, &Matrix::zeros(n, n));
        out.push(check("su_{r,r}(C)", Family::Cayley, "Herm_r(C)", liealg::su(r, r)?, hr, r * r, r)?);
    }
    for (p, q) in [(2, 2), (2, 3)] {
        let n = p + q + 2;
        let row = "so_{p+1,q+1}(R), p,q>1";
        out.push(check(row, Family::Split, "R^{p,q}", liealg::so(p + 1, q + 1)?, boost(n, 0, p + 1), p + q, p + 1)?);
    }
    for d in 2..=3 {
        out.push(check("so_{1,d+1}(R)", Family::Nonsplit, "R^d", liealg::so(1, d + 1)?, boost(d + 2, 0, 1), d, 1)?);
    }
    Ok(out)
}

/// Catalog rows with the realized checks that belong to them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub entries: Vec<CatalogEntry>,
    pub checks: Vec<RealizedCheck>,
    pub passed: bool,
}

pub fn catalog_report(family: Option<Family>) -> Result<CatalogReport> {
    let entries = filtered(family);
    let checks: Vec<RealizedCheck> =
        realized_checks()?.into_iter().filter(|c| family.is_none_or(|f| c.family == f)).collect();
    let passed = checks.iter().all(|c| c.matches() && c.structure_residual < 1e-12);
    Ok(CatalogReport { entries, checks, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_and_filters() {
        assert_eq!(entries().len(), 18);
        assert_eq!(filtered(Some(Family::Cayley)).len(), 5);
        assert!(filtered(Some(Family::Complex)).iter().all(|e| !e.realized));
        assert!(Family::parse("SPLIT").is_ok() && Family::parse("other").is_err());
    }

    #[test]
    fn realized_rows_match() {
        let checks = realized_checks().unwrap();
        for c in &checks {
            assert!(c.matches(), "{c:?}");
        }
        let sp4 = checks.iter().find(|c| c.realization == "sp(4)").unwrap();
        assert_eq!(sp4.computed_g1_dim, 3);
        let so23 = checks.iter().find(|c| c.realization == "so(2,3)").unwrap();
        assert_eq!(so23.computed_g1_dim, 3);
    }

    #[test]
    fn wrong_euler_candidate_is_rejected() {
        let g = liealg::sl(3).unwrap();
        let h = Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 0.0, -1.0]));
        assert!(matches!(check("x", Family::Split, "-", g, h, 0, 0), Err(Error::NotEuler)));
    }
}
