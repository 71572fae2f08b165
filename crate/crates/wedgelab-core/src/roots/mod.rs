//! Restricted roots of `(𝔤, 𝔞)`, compact/non-compact classification,
//! coroots, the compact Weyl group, minimal and maximal cones in `𝔞`, the
//! function `s`, the set `C^π` and strongly orthogonal roots.

pub mod lp;

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::f64::consts::PI;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::liealg::{Element, InvolutionMap, LieAlgebraRealization};
use crate::linop::{self, Matrix, Subspace};
use crate::{Error, Result, Tolerance};

/// Relative tolerance for comparing root functionals.
pub const ROOT_TOL: f64 = 1e-7;
/// Eigenvalue clusters closer than this abort the decomposition.
pub const CLUSTER_GAP: f64 = 1e-6;
/// Cap on the enumerated compact Weyl group.
pub const WEYL_CAP: usize = 10_000;
/// Interior margin for `C^π` tests.
pub const INTERIOR_MARGIN: f64 = 1e-9;

/// A basis of a commutative subspace `𝔞 ⊆ 𝔮_𝔭` of hyperbolic elements.
#[derive(Debug, Clone)]
pub struct CartanSubspaceData {
    pub basis: Vec<Element>,
    pub commutativity_residual: f64,
    stacked: Matrix,
}

impl CartanSubspaceData {
    pub fn new(g: &LieAlgebraRealization, basis: Vec<Element>, tol: &Tolerance) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidSpec("empty Cartan subspace".into()));
        }
        let mut res: f64 = 0.0;
        for x in &basis {
            for y in &basis {
                res = res.max(g.bracket(x, y).amax());
            }
            let ev = linop::eigenvalues(&g.ad(x))?;
            let scale = 1.0 + x.amax();
            if ev.iter().any(|z| z.im.abs() > 1e-7 * scale) {
                return Err(Error::InvalidSpec("Cartan basis element is not hyperbolic".into()));
            }
        }
        if res > tol.at(1.0) * 1e3 {
            return Err(Error::InvalidSpec(format!("Cartan basis does not commute (residual {res:e})")));
        }
        let stacked = Matrix::from_columns(&basis);
        if Subspace::span(&stacked, tol).dim() != basis.len() {
            return Err(Error::InvalidSpec("Cartan basis is linearly dependent".into()));
        }
        Ok(CartanSubspaceData { basis, commutativity_residual: res, stacked })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ cᵢ aᵢ`.
    pub fn element(&self, c: &DVector<f64>) -> Element {
        &self.stacked * c
    }

    /// `𝔞`-coordinates of an element of `𝔞`.
    pub fn coords(&self, x: &Element) -> Result<DVector<f64>> {
        let svd = self.stacked.clone().svd(true, true);
        let c = svd.solve(x, 1e-12).map_err(|e| Error::Domain(e.to_string()))?;
        let res = (self.element(&c) - x).norm();
        if res > 1e-8 * (1.0 + x.norm()) {
            return Err(Error::Domain(format!("element not in the Cartan subspace (residual {res:e})")));
        }
        Ok(c)
    }

    pub fn subspace(&self, tol: &Tolerance) -> Subspace {
        Subspace::span(&self.stacked, tol)
    }
}

/// A restricted root with its root space, type and coroot.
#[derive(Debug, Clone)]
pub struct Root {
    /// Values `α(aᵢ)` on the `𝔞`-basis.
    pub functional: DVector<f64>,
    pub root_space: Subspace,
    pub compact: bool,
    /// `α^∨` in `𝔞`-coordinates.
    pub coroot: DVector<f64>,
}

impl Root {
    pub fn eval(&self, x: &DVector<f64>) -> f64 {
        self.functional.dot(x)
    }

    pub fn multiplicity(&self) -> usize {
        self.root_space.dim()
    }

    /// `s_α(x) = x − α(x) α^∨` as a matrix on `𝔞`-coordinates.
    pub fn reflection(&self) -> Matrix {
        let r = self.functional.len();
        Matrix::identity(r, r) - &self.coroot * self.functional.transpose()
    }
}

/// Output of [`restricted_roots`].
#[derive(Debug, Clone)]
pub struct RootDecomposition {
    pub roots: Vec<(DVector<f64>, Subspace)>,
    /// `𝔷_𝔤(𝔞)`.
    pub centralizer: Subspace,
}

fn same_functional(a: &DVector<f64>, b: &DVector<f64>) -> bool {
    (a - b).amax() <= ROOT_TOL * (1.0 + a.amax().max(b.amax()))
}

/// Simultaneous eigenspace decomposition of `ad 𝔞`.
pub fn restricted_roots(g: &LieAlgebraRealization, a: &CartanSubspaceData, tol: &Tolerance) -> Result<RootDecomposition> {
    let d = g.dim();
    let mut pieces: Vec<(Matrix, Vec<f64>)> = vec![(Matrix::identity(d, d), Vec::new())];
    for ai in &a.basis {
        let ad = g.ad(ai).into_matrix();
        let scale = 1.0 + ad.amax();
        let mut next = Vec::new();
        for (v, vals) in pieces {
            let m = v.transpose() * &ad * &v;
            let ev = linop::raw_eigenvalues(&m)?;
            if ev.iter().any(|z| z.im.abs() > 1e-7 * scale) {
                return Err(Error::InvalidSpec("ad of a Cartan element has non-real spectrum".into()));
            }
            let mut re: Vec<f64> = ev.iter().map(|z| z.re).collect();
            re.sort_by(|x, y| x.partial_cmp(y).unwrap());
            let mut clusters: Vec<Vec<f64>> = Vec::new();
            for x in re {
                match clusters.last_mut() {
                    Some(c) if (x - c[c.len() - 1]).abs() <= ROOT_TOL * scale => c.push(x),
                    _ => clusters.push(vec![x]),
                }
            }
            for w in clusters.windows(2) {
                let gap = w[1][0] - w[0][w[0].len() - 1];
                if gap < CLUSTER_GAP * scale {
                    return Err(Error::ClusterAmbiguity { gap });
                }
            }
            let k = m.nrows();
            let mut found = 0;
            for c in clusters {
                let lam = c.iter().sum::<f64>() / c.len() as f64;
                let ns = linop::null_space(&(&m - Matrix::identity(k, k) * lam), tol);
                if ns.dim() != c.len() {
                    return Err(Error::InvalidSpec("ad of a Cartan element is not semisimple".into()));
                }
                found += ns.dim();
                let mut vals2 = vals.clone();
                vals2.push(lam);
                next.push((&v * ns.basis(), vals2));
            }
            debug_assert_eq!(found, k);
        }
        pieces = next;
    }
    let mut roots = Vec::new();
    let mut central = Vec::new();
    for (v, vals) in pieces {
        let f = DVector::from_vec(vals);
        if f.amax() <= ROOT_TOL {
            central.extend(v.column_iter().map(|c| c.into_owned()));
        } else {
            roots.push((f, Subspace::span(&v, tol)));
        }
    }
    roots.sort_by(|x, y| {
        for i in 0..x.0.len() {
            match x.0[i].partial_cmp(&y.0[i]).unwrap() {
                std::cmp::Ordering::Equal => continue,
                o => return o,
            }
        }
        std::cmp::Ordering::Equal
    });
    Ok(RootDecomposition { roots, centralizer: Subspace::span_of(&central, d, tol) })
}

/// `𝔷(𝔮_𝔭)`, the center of `𝔮_𝔭` under the bracket.
pub fn center_of_qp(g: &LieAlgebraRealization, tau: &InvolutionMap, theta: &InvolutionMap, tol: &Tolerance) -> Subspace {
    let d = g.dim();
    let eye = Matrix::identity(d, d);
    let qp = Subspace::span(&(((&eye - tau.matrix()) * 0.5) * ((&eye - theta.matrix()) * 0.5)), tol);
    g.centralizer(&qp.vectors(), &qp, tol)
}

/// Compact iff the root space is fixed by `τθ`; cross-checked against the
/// vanishing of `α` on `𝔷(𝔮_𝔭)`.
pub fn classify_root(
    g: &LieAlgebraRealization,
    a: &CartanSubspaceData,
    functional: &DVector<f64>,
    root_space: &Subspace,
    tau: &InvolutionMap,
    theta: &InvolutionMap,
    tol: &Tolerance,
) -> Result<bool> {
    let tt = tau.compose(theta);
    let mut plus: f64 = 0.0;
    let mut minus: f64 = 0.0;
    for y in root_space.vectors() {
        let ty = &tt * &y;
        plus = plus.max((&ty - &y).norm());
        minus = minus.max((&ty + &y).norm());
    }
    let eps = 1e-7;
    let compact = if plus < eps {
        true
    } else if minus < eps {
        false
    } else {
        return Err(Error::CriteriaDisagree("root space is not an eigenspace of tau-theta".into()));
    };
    let z = center_of_qp(g, tau, theta, tol);
    let mut vanishes = true;
    for v in z.vectors() {
        let c = a.coords(&v)?;
        if functional.dot(&c).abs() > ROOT_TOL * (1.0 + functional.amax()) {
            vanishes = false;
        }
    }
    if vanishes != compact {
        return Err(Error::CriteriaDisagree(format!(
            "tau-theta test says compact={compact} but center-of-q_p test says compact={vanishes}"
        )));
    }
    Ok(compact)
}

/// `α^∨ ∝ [x_α, θx_α]` normalized by `α(α^∨) = 2`; every basis vector of
/// the root space must give the same coroot.
pub fn coroot(
    g: &LieAlgebraRealization,
    a: &CartanSubspaceData,
    functional: &DVector<f64>,
    root_space: &Subspace,
    theta: &InvolutionMap,
) -> Result<DVector<f64>> {
    let mut out: Option<DVector<f64>> = None;
    for x in root_space.vectors() {
        let y = g.bracket(&x, &theta.apply(&x));
        let c = a.coords(&y).map_err(|_| Error::InvalidSpec("[x, theta x] is not in the Cartan subspace".into()))?;
        let val = functional.dot(&c);
        if val.abs() < 1e-9 {
            return Err(Error::InvalidSpec("[x, theta x] is degenerate against the root".into()));
        }
        let cv = c * (2.0 / val);
        match &out {
            None => out = Some(cv),
            Some(prev) => {
                if (prev - &cv).amax() > 1e-7 * (1.0 + prev.amax()) {
                    return Err(Error::CriteriaDisagree("root space basis vectors give different coroots".into()));
                }
            }
        }
    }
    out.ok_or_else(|| Error::InvalidSpec("empty root space".into()))
}

/// The compact Weyl group as matrices on `𝔞`-coordinates.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub generators: Vec<Matrix>,
    pub elements: Vec<Matrix>,
    /// True when enumeration stopped at [`WEYL_CAP`].
    pub capped: bool,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

fn matrix_key(m: &Matrix) -> Vec<i64> {
    m.iter().map(|v| (v * 1e6).round() as i64).collect()
}

/// Closure of the reflections in compact roots.
pub fn weyl_group_k(roots: &[Root]) -> WeylGroup {
    let r = roots.first().map_or(0, |x| x.functional.len());
    let mut generators: Vec<Matrix> = Vec::new();
    let mut gen_keys = HashSet::new();
    for root in roots.iter().filter(|x| x.compact) {
        let s = root.reflection();
        if gen_keys.insert(matrix_key(&s)) {
            generators.push(s);
        }
    }
    let id = Matrix::identity(r, r);
    let mut seen = HashSet::new();
    seen.insert(matrix_key(&id));
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    let mut capped = false;
    'outer: while let Some(w) = queue.pop_front() {
        for s in &generators {
            let ws = s * &w;
            if seen.insert(matrix_key(&ws)) {
                if elements.len() >= WEYL_CAP {
                    capped = true;
                    break 'outer;
                }
                elements.push(ws.clone());
                queue.push_back(ws);
            }
        }
    }
    WeylGroup { generators, elements, capped }
}

/// Which side of a positive system a root is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootClass {
    Positive,
    Negative,
    Compact,
}

/// Polyhedral cone in `𝔞`-coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyCone {
    /// `cone(generators)`.
    Generators(Vec<Vec<f64>>),
    /// `{x : f·x ≥ 0 for every f}`.
    Inequalities(Vec<Vec<f64>>),
}

/// A cone in `𝔞` with an optional tag naming the realization-specific
/// membership oracle in `𝔮`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub name: String,
    pub dim: usize,
    pub cone: PolyCone,
    pub oracle: Option<String>,
}

fn dotf(a: &[f64], b: &DVector<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

impl ConeSpec {
    pub fn generators(name: &str, gens: Vec<DVector<f64>>, dim: usize) -> Self {
        ConeSpec {
            name: name.into(),
            dim,
            cone: PolyCone::Generators(gens.iter().map(|g| g.iter().copied().collect()).collect()),
            oracle: None,
        }
    }

    pub fn inequalities(name: &str, ineqs: Vec<DVector<f64>>, dim: usize) -> Self {
        ConeSpec {
            name: name.into(),
            dim,
            cone: PolyCone::Inequalities(ineqs.iter().map(|g| g.iter().copied().collect()).collect()),
            oracle: None,
        }
    }

    fn exact_rows(rows: &[Vec<f64>]) -> Vec<Vec<lp::Q>> {
        rows.iter().map(|r| lp::rationalize_vec(r)).collect()
    }

    /// Closed-cone membership (exact LP for generator form).
    pub fn contains(&self, x: &DVector<f64>) -> bool {
        match &self.cone {
            PolyCone::Generators(gens) => {
                let xs: Vec<f64> = x.iter().copied().collect();
                lp::in_cone(&Self::exact_rows(gens), &lp::rationalize_vec(&xs))
            }
            PolyCone::Inequalities(fs) => {
                fs.iter().all(|f| dotf(f, x) >= -1e-12 * (1.0 + x.amax()))
            }
        }
    }

    /// Facet inequalities of a full-dimensional generator cone, by
    /// brute-force enumeration of `(dim−1)`-subsets of generators.
    pub fn facets(&self) -> Option<Vec<Vec<f64>>> {
        match &self.cone {
            PolyCone::Inequalities(fs) => Some(fs.clone()),
            PolyCone::Generators(gens) => {
                let r = self.dim;
                let vs: Vec<DVector<f64>> = gens.iter().map(|g| DVector::from_column_slice(g)).collect();
                if Subspace::span_of(&vs, r, &Tolerance::default()).dim() != r {
                    return None;
                }
                if r == 1 {
                    return Some(vec![vec![vs[0][0].signum()]]);
                }
                let mut out: Vec<Vec<f64>> = Vec::new();
                let mut idx: Vec<usize> = (0..r - 1).collect();
                loop {
                    let sub: Vec<DVector<f64>> = idx.iter().map(|&i| vs[i].clone()).collect();
                    let m = Matrix::from_columns(&sub).transpose();
                    let ns = linop::null_space(&m, &Tolerance::default());
                    if ns.dim() == 1 {
                        let mut n = ns.basis().column(0).into_owned();
                        let vals: Vec<f64> = vs.iter().map(|v| n.dot(v)).collect();
                        let eps = 1e-9;
                        let pos = vals.iter().all(|v| *v >= -eps);
                        let neg = vals.iter().all(|v| *v <= eps);
                        if pos || neg {
                            if neg && !pos {
                                n = -n;
                            }
                            let nv: Vec<f64> = n.iter().copied().collect();
                            if !out.iter().any(|f| f.iter().zip(&nv).all(|(a, b)| (a - b).abs() < 1e-9)) {
                                out.push(nv);
                            }
                        }
                    }
                    // next combination
                    let k = r - 1;
                    let n = vs.len();
                    let mut i = k;
                    while i > 0 && idx[i - 1] == n - k + i - 1 {
                        i -= 1;
                    }
                    if i == 0 {
                        break;
                    }
                    idx[i - 1] += 1;
                    for j in i..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                }
                Some(out)
            }
        }
    }

    /// Interior membership with margin `δ` on normalized facet functionals.
    pub fn interior(&self, x: &DVector<f64>, margin: f64) -> bool {
        match self.facets() {
            None => false,
            Some(fs) => fs.iter().all(|f| {
                let n = f.iter().map(|v| v * v).sum::<f64>().sqrt();
                dotf(f, x) > margin * n
            }),
        }
    }

    pub fn pointed(&self) -> bool {
        match &self.cone {
            PolyCone::Generators(g) => lp::generators_pointed(&Self::exact_rows(g), self.dim),
            PolyCone::Inequalities(f) => lp::inequalities_pointed(&Self::exact_rows(f), self.dim),
        }
    }

    pub fn generating(&self) -> bool {
        match &self.cone {
            PolyCone::Generators(g) => lp::generators_generating(&Self::exact_rows(g), self.dim),
            PolyCone::Inequalities(f) => lp::inequalities_generating(&Self::exact_rows(f), self.dim),
        }
    }

    /// Certify `other ⊆ self`. Supported when `other` is in generator
    /// form: each generator is tested exactly against `self`.
    pub fn includes(&self, other: &ConeSpec) -> Result<bool> {
        let PolyCone::Generators(gens) = &other.cone else {
            return Err(Error::Unsupported("inclusion of an inequality cone".into()));
        };
        Ok(match &self.cone {
            PolyCone::Generators(mine) => {
                let mine = Self::exact_rows(mine);
                gens.iter().all(|g| lp::in_cone(&mine, &lp::rationalize_vec(g)))
            }
            PolyCone::Inequalities(fs) => {
                let fs = Self::exact_rows(fs);
                gens.iter().all(|g| {
                    let gq = lp::rationalize_vec(g);
                    fs.iter().all(|f| !num_traits::Signed::is_negative(&lp::dot(f, &gq)))
                })
            }
        })
    }

    /// `w·C = C` for a generator cone: `w` permutes the normalized rays.
    pub fn invariant_under(&self, w: &Matrix) -> bool {
        let rays = |gs: &[Vec<f64>]| -> Vec<DVector<f64>> {
            gs.iter()
                .map(|g| {
                    let v = DVector::from_column_slice(g);
                    let n = v.norm();
                    v / n
                })
                .collect()
        };
        match &self.cone {
            PolyCone::Generators(gs) => {
                let r = rays(gs);
                r.iter().all(|v| {
                    let wv = w * v;
                    let wv = &wv / wv.norm();
                    r.iter().any(|u| (u - &wv).amax() < 1e-9)
                })
            }
            PolyCone::Inequalities(fs) => {
                // w·C = C iff the facet set is permuted by w^{-T}
                let Some(wi) = w.clone().try_inverse() else { return false };
                let wt = wi.transpose();
                let r = rays(fs);
                r.iter().all(|v| {
                    let wv = &wt * v;
                    let wv = &wv / wv.norm();
                    r.iter().any(|u| (u - &wv).amax() < 1e-9)
                })
            }
        }
    }
}

/// Restricted roots with classification, positive system and compact Weyl
/// group.
#[derive(Debug, Clone)]
pub struct RootSystemData {
    pub roots: Vec<Root>,
    pub centralizer: Subspace,
    pub classes: Vec<RootClass>,
    pub weyl_k: WeylGroup,
    /// `τ` restricted to `𝔞`, in `𝔞`-coordinates.
    pub tau_on_a: Matrix,
    pub a: CartanSubspaceData,
}

/// Partition by the value `α(h_c) ∈ {1, −1, 0}`.
pub fn positive_system_from(roots: &[Root], a: &CartanSubspaceData, h_c: &Element) -> Result<Vec<RootClass>> {
    let hc = a.coords(h_c)?;
    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        let v = r.eval(&hc);
        let class = if (v - 1.0).abs() < ROOT_TOL {
            RootClass::Positive
        } else if (v + 1.0).abs() < ROOT_TOL {
            RootClass::Negative
        } else if v.abs() < ROOT_TOL {
            RootClass::Compact
        } else {
            return Err(Error::InvalidSpec(format!("root value {v} at h_c is not in {{-1, 0, 1}}")));
        };
        if (class == RootClass::Compact) != r.compact {
            return Err(Error::CriteriaDisagree("roots vanishing on h_c differ from the compact roots".into()));
        }
        out.push(class);
    }
    Ok(out)
}

/// Strongly orthogonal set with its split into `−τ`-fixed and swapped roots.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StronglyOrthogonal {
    /// Indices into the root list.
    pub gamma: Vec<usize>,
    pub gamma0: Vec<usize>,
    pub gamma1: Vec<usize>,
    pub r0: usize,
    pub r1: usize,
    pub s: usize,
}

impl RootSystemData {
    /// Decompose, classify, compute coroots, split by `h_c` and enumerate
    /// the compact Weyl group.
    pub fn compute(
        g: &LieAlgebraRealization,
        a: CartanSubspaceData,
        tau: &InvolutionMap,
        theta: &InvolutionMap,
        h_c: &Element,
        tol: &Tolerance,
    ) -> Result<Self> {
        let dec = restricted_roots(g, &a, tol)?;
        let total: usize = dec.centralizer.dim() + dec.roots.iter().map(|r| r.1.dim()).sum::<usize>();
        if total != g.dim() {
            return Err(Error::InvalidSpec(format!("root spaces and centralizer span {total} of {}", g.dim())));
        }
        let mut roots = Vec::new();
        for (f, space) in dec.roots {
            let compact = classify_root(g, &a, &f, &space, tau, theta, tol)?;
            let cr = coroot(g, &a, &f, &space, theta)?;
            roots.push(Root { functional: f, root_space: space, compact, coroot: cr });
        }
        let classes = positive_system_from(&roots, &a, h_c)?;
        let weyl_k = weyl_group_k(&roots);
        let r = a.dim();
        let mut tau_on_a = Matrix::zeros(r, r);
        for (i, ai) in a.basis.iter().enumerate() {
            tau_on_a.set_column(i, &a.coords(&tau.apply(ai))?);
        }
        Ok(RootSystemData { roots, centralizer: dec.centralizer, classes, weyl_k, tau_on_a, a })
    }

    pub fn indices(&self, class: RootClass) -> Vec<usize> {
        (0..self.roots.len()).filter(|&i| self.classes[i] == class).collect()
    }

    /// Index of the root with the given functional.
    pub fn find(&self, f: &DVector<f64>) -> Option<usize> {
        self.roots.iter().position(|r| same_functional(&r.functional, f))
    }

    /// `s(x) = max{|α(x)|, 2|β(x)| : α ∈ Δ_p^+, β ∈ Δ_k}`.
    pub fn s_of(&self, x: &DVector<f64>) -> f64 {
        self.roots
            .iter()
            .zip(&self.classes)
            .map(|(r, c)| match c {
                RootClass::Positive => r.eval(x).abs(),
                RootClass::Compact => 2.0 * r.eval(x).abs(),
                RootClass::Negative => 0.0,
            })
            .fold(0.0, f64::max)
    }

    /// `x ∈ C°` (margin [`INTERIOR_MARGIN`]) and `s(x) < π`.
    pub fn in_c_pi(&self, x: &DVector<f64>, cone: &ConeSpec) -> bool {
        cone.interior(x, INTERIOR_MARGIN) && self.s_of(x) < PI
    }

    /// `C_min = cone{α^∨ : α ∈ Δ_p^+}` and `C_max = (Δ_p^+)^*`.
    pub fn cone_min_max(&self) -> (ConeSpec, ConeSpec) {
        let r = self.a.dim();
        let pos = self.indices(RootClass::Positive);
        let mut gens: Vec<DVector<f64>> = Vec::new();
        for &i in &pos {
            let c = &self.roots[i].coroot;
            if !gens.iter().any(|g| (g - c).amax() < 1e-9) {
                gens.push(c.clone());
            }
        }
        let ineqs = pos.iter().map(|&i| self.roots[i].functional.clone()).collect();
        (ConeSpec::generators("C_min", gens, r), ConeSpec::inequalities("C_max", ineqs, r))
    }

    /// Does `w` map the index set `set` onto itself?
    pub fn weyl_preserves(&self, w: &Matrix, set: &[usize]) -> bool {
        // (w·α)(x) = α(w⁻¹x): functional transforms by w^{-T}
        let Some(wi) = w.clone().try_inverse() else { return false };
        let wt = wi.transpose();
        set.iter().all(|&i| {
            let f = &wt * &self.roots[i].functional;
            self.find(&f).is_some_and(|j| set.contains(&j))
        })
    }

    /// Permutation induced by `−τ` on the roots.
    pub fn minus_tau_permutation(&self) -> Result<Vec<usize>> {
        let t = self.tau_on_a.transpose();
        self.roots
            .iter()
            .map(|r| {
                let f = -(&t * &r.functional);
                self.find(&f).ok_or_else(|| Error::InvalidSpec("-tau does not permute the roots".into()))
            })
            .collect()
    }

    fn is_root_or_zero(&self, f: &DVector<f64>) -> bool {
        f.amax() <= ROOT_TOL || self.find(f).is_some()
    }

    pub fn strongly_orthogonal_pair(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.roots[i].functional, &self.roots[j].functional);
        !self.is_root_or_zero(&(a + b)) && !self.is_root_or_zero(&(a - b))
    }

    /// Greedy `−τ`-stable strongly orthogonal subset of `Δ_p^+`, trying
    /// every root as the first seed and keeping the largest result.
    pub fn strongly_orthogonal_set(&self) -> Result<StronglyOrthogonal> {
        let perm = self.minus_tau_permutation()?;
        let mut order = self.indices(RootClass::Positive);
        let support = |i: usize| self.roots[i].functional.iter().filter(|v| v.abs() > ROOT_TOL).count();
        order.sort_by(|&x, &y| support(y).cmp(&support(x)).then(x.cmp(&y)));
        let positive: HashSet<usize> = order.iter().copied().collect();
        let fits = |set: &[usize], c: usize| set.iter().all(|&k| k != c && self.strongly_orthogonal_pair(k, c));
        let mut best: Vec<usize> = Vec::new();
        for seed in 0..order.len() {
            let mut set: Vec<usize> = Vec::new();
            let rotated = order[seed..].iter().chain(order[..seed].iter());
            for &c in rotated {
                if set.contains(&c) {
                    continue;
                }
                let partner = perm[c];
                if !positive.contains(&partner) || !fits(&set, c) {
                    continue;
                }
                if partner == c {
                    set.push(c);
                } else if fits(&set, partner) && self.strongly_orthogonal_pair(c, partner) {
                    set.push(c);
                    set.push(partner);
                }
            }
            if set.len() > best.len() {
                best = set;
            }
        }
        if best.iter().any(|&i| !best.contains(&perm[i])) {
            return Err(Error::CriteriaDisagree("strongly orthogonal set is not -tau-stable".into()));
        }
        best.sort();
        let gamma0: Vec<usize> = best.iter().copied().filter(|&i| perm[i] == i).collect();
        let gamma1: Vec<usize> = best.iter().copied().filter(|&i| perm[i] != i).collect();
        let (r0, r1) = (gamma0.len(), gamma1.len() / 2);
        Ok(StronglyOrthogonal { gamma: best, gamma0, gamma1, r0, r1, s: r0 + r1 })
    }

    /// `span{𝔤^{±γ}, γ^∨ : γ ∈ Γ}`: returns its dimension and the bracket
    /// closure residual.
    /// Span of one triple `(E, θE, [E, θE])` per root of `gamma`, with its
    /// dimension and bracket-closure residual. Taking one root vector per
    /// root keeps the span an `sl(2)` even for multiplicity above one.
    pub fn gamma_subalgebra(
        &self,
        g: &LieAlgebraRealization,
        theta: &InvolutionMap,
        gamma: &[usize],
        tol: &Tolerance,
    ) -> Result<(usize, f64)> {
        let mut vecs = Vec::new();
        for &i in gamma {
            let e = self.roots[i]
                .root_space
                .vectors()
                .into_iter()
                .next()
                .ok_or_else(|| Error::InvalidSpec("empty root space".into()))?;
            let f = theta.apply(&e);
            vecs.push(g.bracket(&e, &f));
            vecs.push(e);
            vecs.push(f);
        }
        let span = Subspace::span_of(&vecs, g.dim(), tol);
        let mut res: f64 = 0.0;
        for x in span.vectors() {
            for y in span.vectors() {
                res = res.max(span.residual(&g.bracket(&x, &y)));
            }
        }
        Ok((span.dim(), res))
    }

    pub fn to_doc(&self) -> RootSystemDoc {
        let (cmin, cmax) = self.cone_min_max();
        RootSystemDoc {
            roots: self
                .roots
                .iter()
                .zip(&self.classes)
                .map(|(r, c)| RootDoc {
                    functional: r.functional.iter().copied().collect(),
                    multiplicity: r.multiplicity(),
                    compact: r.compact,
                    class: *c,
                    coroot: r.coroot.iter().copied().collect(),
                })
                .collect(),
            weyl_k_order: self.weyl_k.order(),
            cones: BTreeMap::from([("min".to_string(), cmin), ("max".to_string(), cmax)]),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootDoc {
    pub functional: Vec<f64>,
    pub multiplicity: usize,
    pub compact: bool,
    pub class: RootClass,
    pub coroot: Vec<f64>,
}

/// JSON dump of a root system.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootSystemDoc {
    pub roots: Vec<RootDoc>,
    pub weyl_k_order: usize,
    pub cones: BTreeMap<String, ConeSpec>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wedge::CausalSymmetricSpec;

    fn diag(g: &LieAlgebraRealization, d: &[f64]) -> Element {
        g.coords(&Matrix::from_diagonal(&DVector::from_column_slice(d))).unwrap()
    }

    #[test]
    fn sl2_roots() {
        let spec = CausalSymmetricSpec::sl2_cayley().unwrap();
        let rs = spec.root_system().unwrap();
        assert_eq!(rs.roots.len(), 2);
        assert!(rs.roots.iter().all(|r| !r.compact && r.multiplicity() == 1));
        let pos = rs.indices(RootClass::Positive);
        assert_eq!(pos.len(), 1);
        let alpha = &rs.roots[pos[0]];
        assert!((alpha.functional[0] - 1.0).abs() < 1e-12);
        assert!((alpha.eval(&alpha.coroot) - 2.0).abs() < 1e-12);
        assert!((alpha.reflection() * &alpha.coroot + &alpha.coroot).amax() < 1e-12);
        assert_eq!(rs.weyl_k.order(), 1);
        let one = DVector::from_vec(vec![1.0]);
        assert!((rs.s_of(&(&one * 0.7)) - 0.7).abs() < 1e-12);
        assert_eq!(rs.s_of(&(&one * 0.0)), 0.0);
        let (cmin, cmax) = rs.cone_min_max();
        assert!(cmax.includes(&cmin).unwrap());
        assert!(rs.in_c_pi(&one, &cmax));
        assert!(!rs.in_c_pi(&(&one * PI), &cmax));
        assert!(!rs.in_c_pi(&(&one * -1.0), &cmax));
        assert!(!rs.in_c_pi(&(&one * 0.0), &cmax));
        let so = rs.strongly_orthogonal_set().unwrap();
        assert_eq!((so.gamma.len(), so.r0, so.r1), (1, 1, 0));
    }

    #[test]
    fn sl2_squared_roots() {
        let spec = CausalSymmetricSpec::sl2_squared().unwrap();
        let rs = spec.root_system().unwrap();
        assert_eq!(rs.roots.len(), 4);
        let so = rs.strongly_orthogonal_set().unwrap();
        assert_eq!(so.gamma.len(), 2);
        let (dim, res) = rs.gamma_subalgebra(&spec.g, &spec.theta, &so.gamma, &Tolerance::default()).unwrap();
        assert_eq!(dim, 6);
        assert!(res < 1e-9);
    }

    #[test]
    fn sl4_model_worked_example() {
        let spec = CausalSymmetricSpec::sl4_model().unwrap();
        let g = &spec.g;
        let rs = spec.root_system().unwrap();
        assert_eq!(rs.roots.len(), 12);
        assert!(rs.roots.iter().all(|r| r.multiplicity() == 1));
        let a = &rs.a;
        let val = |r: &Root, d: &[f64]| r.eval(&a.coords(&diag(g, d)).unwrap());
        // ε₁ − ε₂ compact, ε₁ − ε₃ non-compact
        let e12 = rs.roots.iter().find(|r| (val(r, &[1.0, -1.0, 0.0, 0.0]) - 2.0).abs() < 1e-9 && val(r, &[0.0, 0.0, 1.0, -1.0]).abs() < 1e-9 && val(r, &[1.0, 1.0, -1.0, -1.0]).abs() < 1e-9).unwrap();
        assert!(e12.compact);
        let e13 = rs.find(&rs.roots.iter().find(|r| (val(r, &[1.0, 0.0, -1.0, 0.0]) - 2.0).abs() < 1e-9 && (val(r, &[1.0, -1.0, 0.0, 0.0]) - 1.0).abs() < 1e-9 && (val(r, &[0.0, 0.0, 1.0, -1.0]) + 1.0).abs() < 1e-9).unwrap().functional).unwrap();
        assert!(!rs.roots[e13].compact);
        assert_eq!(rs.classes[e13], RootClass::Positive);
        // coroot of ε₁ − ε₃ is E₁₁ − E₃₃
        let want = a.coords(&diag(g, &[1.0, 0.0, -1.0, 0.0])).unwrap();
        assert!((&rs.roots[e13].coroot - want).amax() < 1e-9);
        assert_eq!(rs.indices(RootClass::Compact).len(), 4);
        assert_eq!(rs.indices(RootClass::Positive).len(), 4);
        assert_eq!(rs.weyl_k.order(), 4);
        assert!(!rs.weyl_k.capped);
        let pos = rs.indices(RootClass::Positive);
        for w in &rs.weyl_k.elements {
            assert!(rs.weyl_preserves(w, &pos));
        }
        let hc = a.coords(&diag(g, &[1.0, 1.0, -1.0, -1.0])).unwrap();
        assert!((rs.s_of(&hc) - 2.0).abs() < 1e-12);
        let (cmin, cmax) = rs.cone_min_max();
        let z = a.coords(&diag(g, &[2.0, 2.0, 1.0, -5.0])).unwrap();
        assert!(cmax.contains(&z));
        assert!(!cmin.contains(&z));
        assert!(cmax.includes(&cmin).unwrap());
        assert!(cmin.pointed() && cmin.generating());
        assert!(cmax.pointed() && cmax.generating());
        for w in &rs.weyl_k.elements {
            assert!(cmin.invariant_under(w));
            assert!(cmax.invariant_under(w));
        }
        let so = rs.strongly_orthogonal_set().unwrap();
        assert_eq!(so.gamma.len(), 2);
        for &i in &so.gamma {
            for &j in &so.gamma {
                if i != j {
                    assert!(rs.strongly_orthogonal_pair(i, j));
                }
            }
        }
        let (dim, res) = rs.gamma_subalgebra(g, &spec.theta, &so.gamma, &Tolerance::default()).unwrap();
        assert_eq!(dim, 6);
        assert!(res < 1e-9);
    }

    #[test]
    fn facets_of_quadrant() {
        let c = ConeSpec::generators(
            "q",
            vec![DVector::from_vec(vec![1.0, 0.0]), DVector::from_vec(vec![1.0, 1.0])],
            2,
        );
        let f = c.facets().unwrap();
        assert_eq!(f.len(), 2);
        assert!(c.interior(&DVector::from_vec(vec![2.0, 1.0]), 1e-9));
        assert!(!c.interior(&DVector::from_vec(vec![1.0, 0.0]), 1e-9));
    }
}
