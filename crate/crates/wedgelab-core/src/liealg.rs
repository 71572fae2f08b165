//! Matrix Lie algebras with involutions, Euler elements, 3-gradings and the
//! Wick rotation on the complexification.
//!
//! Elements are coordinate vectors on the realization's basis. Complex
//! matrix algebras are stored as real algebras through
//! `X + iY ↦ [[X, -Y], [Y, X]]`; the complexification `𝔤_ℂ` is the doubled
//! real space of [`ComplexElement`]s, where multiplication by `i` is the
//! complex structure `(re, im) ↦ (-im, re)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::linop::{self, EntireFn, Matrix, Operator, Subspace};
use crate::{Error, Result, Tolerance};

/// Coordinates of an algebra element on the realization basis.
pub type Element = DVector<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalarField {
    Real,
    ComplexAsReal,
}

/// A Lie algebra spanned by real matrices, closed under the commutator.
#[derive(Debug, Clone)]
pub struct LieAlgebraRealization {
    name: String,
    field: ScalarField,
    basis: Vec<Matrix>,
    solver: Matrix,
    ad_basis: Vec<Matrix>,
    closure_residual: f64,
    jacobi_residual: f64,
}

fn vec_of(m: &Matrix) -> DVector<f64> {
    DVector::from_iterator(m.len(), m.iter().copied())
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    a * b - b * a
}

fn max_abs(m: &Matrix) -> f64 {
    m.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

impl LieAlgebraRealization {
    /// Validates linear independence, bracket closure and the Jacobi identity.
    pub fn new(name: impl Into<String>, field: ScalarField, basis: Vec<Matrix>) -> Result<Self> {
        let name = name.into();
        let d = basis.len();
        if d == 0 {
            return Err(Error::InvalidRealization(format!("{name}: empty basis")));
        }
        let m = basis[0].nrows();
        if basis.iter().any(|b| b.nrows() != m || b.ncols() != m) {
            return Err(Error::InvalidRealization(format!("{name}: basis matrices differ in size")));
        }
        let stacked = Matrix::from_columns(&basis.iter().map(vec_of).collect::<Vec<_>>());
        let svd = stacked.clone().svd(true, true);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if smin <= 1e-9 * smax {
            return Err(Error::InvalidRealization(format!("{name}: basis is linearly dependent")));
        }
        let solver = svd.pseudo_inverse(0.0).map_err(|e| Error::InvalidRealization(e.to_string()))?;
        let mut g = LieAlgebraRealization {
            name,
            field,
            basis,
            solver,
            ad_basis: Vec::new(),
            closure_residual: 0.0,
            jacobi_residual: 0.0,
        };
        let mut ad_basis = vec![Matrix::zeros(d, d); d];
        let mut closure: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let br = commutator(&g.basis[i], &g.basis[j]);
                let (c, res) = g.solve(&br);
                closure = closure.max(res / (1.0 + br.norm()));
                ad_basis[i].set_column(j, &c);
            }
        }
        if closure > 1e-9 {
            return Err(Error::InvalidRealization(format!(
                "{}: bracket not closed (residual {closure:e})",
                g.name
            )));
        }
        g.ad_basis = ad_basis;
        g.closure_residual = closure;
        let mut jacobi: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let lhs = commutator(&g.ad_basis[i], &g.ad_basis[j]);
                let br = g.ad_basis[i].column(j).into_owned();
                let rhs = g.ad_raw(&br);
                jacobi = jacobi.max(max_abs(&(lhs - rhs)));
            }
        }
        if jacobi > 1e-9 {
            return Err(Error::InvalidRealization(format!(
                "{}: Jacobi residual {jacobi:e}",
                g.name
            )));
        }
        g.jacobi_residual = jacobi;
        Ok(g)
    }

    fn solve(&self, m: &Matrix) -> (Element, f64) {
        let v = vec_of(m);
        let c = &self.solver * &v;
        let back: DVector<f64> = self
            .basis
            .iter()
            .zip(c.iter())
            .fold(DVector::zeros(v.len()), |acc, (b, ci)| acc + vec_of(b) * *ci);
        let res = (back - v).norm();
        (c, res)
    }

    fn ad_raw(&self, x: &Element) -> Matrix {
        let d = self.dim();
        self.ad_basis.iter().zip(x.iter()).fold(Matrix::zeros(d, d), |acc, (a, xi)| acc + a * *xi)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.basis[0].nrows()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = Element::zeros(self.dim());
        e[i] = 1.0;
        e
    }

    pub fn closure_residual(&self) -> f64 {
        self.closure_residual
    }

    pub fn jacobi_residual(&self) -> f64 {
        self.jacobi_residual
    }

    pub fn zero(&self) -> Element {
        Element::zeros(self.dim())
    }

    /// The matrix `Σ xᵢ bᵢ`.
    pub fn to_matrix(&self, x: &Element) -> Matrix {
        let m = self.matrix_size();
        self.basis.iter().zip(x.iter()).fold(Matrix::zeros(m, m), |acc, (b, xi)| acc + b * *xi)
    }

    /// Coordinates of a matrix lying in the span of the basis.
    pub fn coords(&self, m: &Matrix) -> Result<Element> {
        if m.nrows() != self.matrix_size() || m.ncols() != self.matrix_size() {
            return Err(Error::Dimension { expected: self.matrix_size(), got: m.nrows() });
        }
        let (c, res) = self.solve(m);
        if res > 1e-9 * (1.0 + m.norm()) {
            return Err(Error::Domain(format!("matrix not in {} (residual {res:e})", self.name)));
        }
        Ok(c)
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        self.ad_raw(x) * y
    }

    /// Matrix of `y ↦ [x, y]` in basis coordinates.
    pub fn ad(&self, x: &Element) -> Operator {
        Operator::wrap(self.ad_raw(x))
    }

    /// `e^{t ad x}` as a coordinate matrix.
    pub fn exp_ad(&self, x: &Element, t: f64) -> Result<Matrix> {
        Ok(linop::apply_entire(EntireFn::Exp, &Operator::wrap(self.ad_raw(x) * t))?.into_matrix())
    }

    /// Matrix exponential of the realizing matrix of `x`.
    pub fn exp_matrix(&self, x: &Element) -> Result<Matrix> {
        Ok(linop::apply_entire(EntireFn::Exp, &Operator::new(self.to_matrix(x))?)?.into_matrix())
    }

    /// `tr(ad x ad y)`.
    pub fn killing_form(&self, x: &Element, y: &Element) -> f64 {
        (self.ad_raw(x) * self.ad_raw(y)).trace()
    }

    /// Coordinate matrix of a linear map given on realizing matrices.
    pub fn linear_map(&self, f: impl Fn(&Matrix) -> Matrix) -> Result<Matrix> {
        let d = self.dim();
        let mut t = Matrix::zeros(d, d);
        for (i, b) in self.basis.iter().enumerate() {
            t.set_column(i, &self.coords(&f(b))?);
        }
        Ok(t)
    }

    /// Largest `‖T[bᵢ, bⱼ] − [T bᵢ, T bⱼ]‖` over basis pairs.
    pub fn automorphism_residual(&self, t: &Matrix) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            let ti = t.column(i).into_owned();
            let ad_ti = self.ad_raw(&ti);
            for j in 0..d {
                let lhs = t * self.ad_basis[i].column(j);
                let rhs = &ad_ti * t.column(j);
                worst = worst.max((lhs - rhs).amax());
            }
        }
        worst
    }

    /// Elements `x` with `[x, y] = 0` for all `y` in `s`.
    pub fn centralizer(&self, s: &[Element], within: &Subspace, tol: &Tolerance) -> Subspace {
        let d = self.dim();
        let b = within.basis();
        if b.ncols() == 0 || s.is_empty() {
            return within.clone();
        }
        // [Σ cₖ bₖ, y] = -ad(y) B c
        let mut m = Matrix::zeros(d * s.len(), b.ncols());
        for (k, y) in s.iter().enumerate() {
            m.rows_mut(k * d, d).copy_from(&(self.ad_raw(y) * b));
        }
        let ns = linop::null_space(&m, tol);
        Subspace::span(&(b * ns.basis()), tol)
    }

    /// Span of all brackets `[x, y]` with `x ∈ a`, `y ∈ b`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace, tol: &Tolerance) -> Subspace {
        let mut cols = Vec::new();
        for x in a.vectors() {
            for y in b.vectors() {
                cols.push(self.bracket(&x, &y));
            }
        }
        Subspace::span_of(&cols, self.dim(), tol)
    }

    pub fn to_doc(&self, involutions: &[(&str, &InvolutionMap)]) -> RealizationDoc {
        let rows = |m: &Matrix| -> Vec<Vec<f64>> {
            (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
        };
        RealizationDoc {
            name: self.name.clone(),
            field: self.field,
            dim: self.dim(),
            matrix_size: self.matrix_size(),
            basis: self.basis.iter().map(|b| b.transpose().iter().copied().collect()).collect(),
            involutions: involutions.iter().map(|(k, v)| (k.to_string(), rows(&v.t))).collect(),
        }
    }
}

/// JSON form of a realization: basis matrices row-major, involutions as
/// coordinate matrices (rows).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationDoc {
    pub name: String,
    pub field: ScalarField,
    pub dim: usize,
    pub matrix_size: usize,
    pub basis: Vec<Vec<f64>>,
    pub involutions: BTreeMap<String, Vec<Vec<f64>>>,
}

impl RealizationDoc {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Serde(e.to_string()))
    }

    /// Rebuild and revalidate the realization and its involutions.
    pub fn build(&self) -> Result<(LieAlgebraRealization, BTreeMap<String, InvolutionMap>)> {
        let m = self.matrix_size;
        if self.basis.len() != self.dim || self.basis.iter().any(|b| b.len() != m * m) {
            return Err(Error::Serde("basis shape does not match dim/matrix_size".into()));
        }
        let basis = self.basis.iter().map(|b| Matrix::from_row_slice(m, m, b)).collect();
        let g = LieAlgebraRealization::new(self.name.clone(), self.field, basis)?;
        let mut inv = BTreeMap::new();
        for (k, rows) in &self.involutions {
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return Err(Error::Serde(format!("involution {k} has wrong shape")));
            }
            let flat: Vec<f64> = rows.iter().flatten().copied().collect();
            let t = Matrix::from_row_slice(self.dim, self.dim, &flat);
            inv.insert(k.clone(), InvolutionMap::new(&g, t, &Tolerance::default())?);
        }
        Ok((g, inv))
    }
}

fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = 1.0;
    m
}

/// `X + iY ↦ [[X, -Y], [Y, X]]`.
pub fn realify(re: &Matrix, im: &Matrix) -> Matrix {
    let n = re.nrows();
    let mut m = Matrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(re);
    m.view_mut((0, n), (n, n)).copy_from(&(-im));
    m.view_mut((n, 0), (n, n)).copy_from(im);
    m.view_mut((n, n), (n, n)).copy_from(re);
    m
}

/// `sl(n, ℝ)`: diagonal generators `Eᵢᵢ − Eᵢ₊₁ᵢ₊₁` then `Eᵢⱼ` row-major.
/// For `n = 2` the basis is `h⁰ = ½diag(1,−1)`, `e⁰ = E₁₂`, `f⁰ = E₂₁`.
pub fn sl(n: usize) -> Result<LieAlgebraRealization> {
    if n < 2 {
        return Err(Error::Unsupported(format!("sl({n})")));
    }
    let diag_scale = if n == 2 { 0.5 } else { 1.0 };
    let mut basis: Vec<Matrix> =
        (0..n - 1).map(|i| (unit(n, i, i) - unit(n, i + 1, i + 1)) * diag_scale).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(unit(n, i, j));
            }
        }
    }
    LieAlgebraRealization::new(format!("sl({n})"), ScalarField::Real, basis)
}

/// `gl(n, ℝ)` with basis `Eᵢⱼ` row-major.
pub fn gl(n: usize) -> Result<LieAlgebraRealization> {
    if n < 1 {
        return Err(Error::Unsupported(format!("gl({n})")));
    }
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            basis.push(unit(n, i, j));
        }
    }
    LieAlgebraRealization::new(format!("gl({n})"), ScalarField::Real, basis)
}

/// `sp(2n, ℝ)` as `[[A, B], [C, −Aᵀ]]` with `B, C` symmetric.
pub fn sp(n: usize) -> Result<LieAlgebraRealization> {
    if n < 1 {
        return Err(Error::Unsupported(format!("sp({})", 2 * n)));
    }
    let m = 2 * n;
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            basis.push(unit(m, i, j) - unit(m, n + j, n + i));
        }
    }
    for i in 0..n {
        for j in i..n {
            basis.push(if i == j { unit(m, i, n + i) } else { unit(m, i, n + j) + unit(m, j, n + i) });
        }
    }
    for i in 0..n {
        for j in i..n {
            basis.push(if i == j { unit(m, n + i, i) } else { unit(m, n + i, j) + unit(m, n + j, i) });
        }
    }
    LieAlgebraRealization::new(format!("sp({m})"), ScalarField::Real, basis)
}

/// Metric `diag(1_p, −1_q)`.
pub fn metric(p: usize, q: usize) -> Matrix {
    let mut d = vec![1.0; p];
    d.extend(std::iter::repeat_n(-1.0, q));
    Matrix::from_diagonal(&DVector::from_vec(d))
}

/// `so(p, q)`: `Xᵀη + ηX = 0` for `η = diag(1_p, −1_q)`.
pub fn so(p: usize, q: usize) -> Result<LieAlgebraRealization> {
    let n = p + q;
    if n < 2 {
        return Err(Error::Unsupported(format!("so({p},{q})")));
    }
    let sign = |i: usize| if i < p { 1.0 } else { -1.0 };
    let mut basis = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            basis.push(if sign(i) == sign(j) {
                unit(n, i, j) - unit(n, j, i)
            } else {
                unit(n, i, j) + unit(n, j, i)
            });
        }
    }
    LieAlgebraRealization::new(format!("so({p},{q})"), ScalarField::Real, basis)
}

/// `su(p, q)` stored as a real algebra of `2(p+q)`-square matrices.
pub fn su(p: usize, q: usize) -> Result<LieAlgebraRealization> {
    let n = p + q;
    if n < 2 {
        return Err(Error::Unsupported(format!("su({p},{q})")));
    }
    let sign = |i: usize| if i < p { 1.0 } else { -1.0 };
    let z = Matrix::zeros(n, n);
    let mut basis = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if sign(i) == sign(j) {
                basis.push(realify(&(unit(n, i, j) - unit(n, j, i)), &z));
                basis.push(realify(&z, &(unit(n, i, j) + unit(n, j, i))));
            } else {
                basis.push(realify(&(unit(n, i, j) + unit(n, j, i)), &z));
                basis.push(realify(&z, &(unit(n, i, j) - unit(n, j, i))));
            }
        }
    }
    for k in 0..n - 1 {
        basis.push(realify(&z, &(unit(n, k, k) - unit(n, k + 1, k + 1))));
    }
    LieAlgebraRealization::new(format!("su({p},{q})"), ScalarField::ComplexAsReal, basis)
}

/// Direct sum with block-diagonal basis; coordinates concatenate.
pub fn product(factors: &[&LieAlgebraRealization]) -> Result<LieAlgebraRealization> {
    if factors.is_empty() {
        return Err(Error::Unsupported("empty product".into()));
    }
    let total: usize = factors.iter().map(|f| f.matrix_size()).sum();
    let mut basis = Vec::new();
    let mut offset = 0;
    for f in factors {
        let s = f.matrix_size();
        for b in f.basis() {
            let mut m = Matrix::zeros(total, total);
            m.view_mut((offset, offset), (s, s)).copy_from(b);
            basis.push(m);
        }
        offset += s;
    }
    let field = if factors.iter().all(|f| f.field() == ScalarField::Real) {
        ScalarField::Real
    } else {
        ScalarField::ComplexAsReal
    };
    let name = factors.iter().map(|f| f.name().to_string()).collect::<Vec<_>>().join("x");
    LieAlgebraRealization::new(name, field, basis)
}

/// Concatenate factor coordinates into product coordinates.
pub fn concat(parts: &[Element]) -> Element {
    Element::from_iterator(parts.iter().map(|p| p.len()).sum(), parts.iter().flat_map(|p| p.iter().copied()))
}

/// Block-diagonal assembly of per-factor coordinate maps.
pub fn block_diag(parts: &[Matrix]) -> Matrix {
    let n: usize = parts.iter().map(|p| p.nrows()).sum();
    let mut m = Matrix::zeros(n, n);
    let mut o = 0;
    for p in parts {
        m.view_mut((o, o), (p.nrows(), p.ncols())).copy_from(p);
        o += p.nrows();
    }
    m
}

fn parse_args(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Unsupported(format!("parameter {t:?}"))))
        .collect()
}

/// Build a realization from a name such as `sl(3)`, `gl(2)`, `sp(4)`,
/// `so(1,2)`, `su(2,2)` or a product `sl(2)xsl(2)`.
pub fn make_realization(name: &str) -> Result<LieAlgebraRealization> {
    let name = name.trim();
    if name.contains(")x") {
        let parts: Vec<&str> = name.split_inclusive(')').map(|p| p.trim_start_matches('x')).collect();
        let factors = parts.iter().map(|p| make_realization(p)).collect::<Result<Vec<_>>>()?;
        return product(&factors.iter().collect::<Vec<_>>());
    }
    let open = name.find('(').ok_or_else(|| Error::Unsupported(name.to_string()))?;
    if !name.ends_with(')') {
        return Err(Error::Unsupported(name.to_string()));
    }
    let args = parse_args(&name[open + 1..name.len() - 1])?;
    match (&name[..open], args.as_slice()) {
        ("sl", [n]) => sl(*n),
        ("gl", [n]) => gl(*n),
        ("sp", [m]) if m % 2 == 0 && *m >= 2 => sp(m / 2),
        ("so", [p, q]) => so(*p, *q),
        ("su", [p, q]) => su(*p, *q),
        _ => Err(Error::Unsupported(name.to_string())),
    }
}

/// An involutive automorphism, stored as a coordinate matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct InvolutionMap {
    t: Matrix,
}

impl InvolutionMap {
    pub fn new(g: &LieAlgebraRealization, t: Matrix, tol: &Tolerance) -> Result<Self> {
        let d = g.dim();
        if t.nrows() != d || t.ncols() != d {
            return Err(Error::Dimension { expected: d, got: t.nrows() });
        }
        let inv = (&t * &t - Matrix::identity(d, d)).amax();
        if inv > tol.at(1.0) * 1e3 {
            return Err(Error::NotInvolution { residual: inv });
        }
        let aut = g.automorphism_residual(&t);
        if aut > tol.at(1.0) * 1e3 {
            return Err(Error::NotAutomorphism { residual: aut });
        }
        Ok(InvolutionMap { t })
    }

    pub fn from_matrix_map(
        g: &LieAlgebraRealization,
        f: impl Fn(&Matrix) -> Matrix,
        tol: &Tolerance,
    ) -> Result<Self> {
        InvolutionMap::new(g, g.linear_map(f)?, tol)
    }

    pub fn identity(d: usize) -> Self {
        InvolutionMap { t: Matrix::identity(d, d) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.t
    }

    pub fn apply(&self, x: &Element) -> Element {
        &self.t * x
    }

    pub fn compose(&self, other: &InvolutionMap) -> Matrix {
        &self.t * &other.t
    }

    /// The `+1` eigenspace.
    pub fn fixed(&self, tol: &Tolerance) -> Subspace {
        let d = self.t.nrows();
        Subspace::span(&((&self.t + Matrix::identity(d, d)) * 0.5), tol)
    }

    /// The `−1` eigenspace.
    pub fn anti_fixed(&self, tol: &Tolerance) -> Subspace {
        let d = self.t.nrows();
        Subspace::span(&((Matrix::identity(d, d) - &self.t) * 0.5), tol)
    }

    pub fn commutator_residual(&self, other: &InvolutionMap) -> f64 {
        (&self.t * &other.t - &other.t * &self.t).amax()
    }

    pub fn commutes_with(&self, other: &InvolutionMap, tol: &Tolerance) -> bool {
        self.commutator_residual(other) <= tol.at(1.0) * 1e3
    }
}

/// The Cartan involution `x ↦ −xᵀ` (equivalently `−x*` on complex-as-real
/// matrices).
pub fn cartan_theta(g: &LieAlgebraRealization, tol: &Tolerance) -> Result<InvolutionMap> {
    InvolutionMap::from_matrix_map(g, |m| -m.transpose(), tol)
}

/// `θ(h) = −h`.
pub fn theta_flips(theta: &InvolutionMap, h: &Element, tol: &Tolerance) -> bool {
    (theta.apply(h) + h).amax() <= tol.at(h.amax()) * 1e3
}

/// Projections onto `𝔤₋₁(h)`, `𝔤₀(h)`, `𝔤₁(h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedSplit {
    pub minus: Matrix,
    pub zero: Matrix,
    pub plus: Matrix,
}

impl GradedSplit {
    pub fn projector(&self, j: i32) -> &Matrix {
        match j {
            -1 => &self.minus,
            0 => &self.zero,
            1 => &self.plus,
            _ => panic!("grading degree {j} outside {{-1, 0, 1}}"),
        }
    }

    pub fn project(&self, x: &Element, j: i32) -> Element {
        self.projector(j) * x
    }

    pub fn subspace(&self, j: i32, tol: &Tolerance) -> Subspace {
        Subspace::span(self.projector(j), tol)
    }

    /// Dimensions of `(𝔤₋₁, 𝔤₀, 𝔤₁)`.
    pub fn dims(&self, tol: &Tolerance) -> [usize; 3] {
        [self.subspace(-1, tol).dim(), self.subspace(0, tol).dim(), self.subspace(1, tol).dim()]
    }
}

const EULER_TOL: f64 = 1e-7;

/// Decide whether `h` is an Euler element; on success return the grading.
///
/// The spectrum must lie within `1e-7` of `{−1, 0, 1}` and
/// `ad h (ad h − 1)(ad h + 1)` must vanish, which certifies
/// diagonalizability. The projections are the Lagrange polynomials in
/// `ad h`.
pub fn is_euler(g: &LieAlgebraRealization, h: &Element) -> Result<Option<GradedSplit>> {
    let a = g.ad(h).into_matrix();
    let d = g.dim();
    let eye = Matrix::identity(d, d);
    let ev = linop::raw_eigenvalues(&a)?;
    let near = |z: &nalgebra::Complex<f64>| {
        [-1.0, 0.0, 1.0].iter().any(|c| (z - nalgebra::Complex::new(*c, 0.0)).norm() <= EULER_TOL)
    };
    if !ev.iter().all(near) {
        return Ok(None);
    }
    let a2 = &a * &a;
    let minimal = &a * (&a2 - &eye);
    if minimal.amax() > EULER_TOL * (1.0 + a.amax().powi(3)) {
        return Ok(None);
    }
    Ok(Some(GradedSplit {
        minus: (&a2 - &a) * 0.5,
        zero: &eye - &a2,
        plus: (&a2 + &a) * 0.5,
    }))
}

fn require_euler(g: &LieAlgebraRealization, h: &Element) -> Result<GradedSplit> {
    is_euler(g, h)?.ok_or(Error::NotEuler)
}

/// `τ_h = e^{πi ad h}`: `+1` on `𝔤₀(h)`, `−1` on `𝔤_{±1}(h)`.
pub fn tau_from_euler(g: &LieAlgebraRealization, h: &Element, tol: &Tolerance) -> Result<InvolutionMap> {
    let s = require_euler(g, h)?;
    InvolutionMap::new(g, &s.zero - &s.plus - &s.minus, tol)
}

/// Grading component `x_j`.
pub fn grading_projection(g: &LieAlgebraRealization, x: &Element, j: i32, h: &Element) -> Result<Element> {
    Ok(require_euler(g, h)?.project(x, j))
}

/// Limit form of the grading projection: `e^{−t} e^{t ad h} x` for `j = 1`,
/// `e^{t} e^{−t ad h} x` for `j = −1`, evaluated at finite `t`.
pub fn grading_limit(g: &LieAlgebraRealization, x: &Element, j: i32, h: &Element, t: f64) -> Result<Element> {
    match j {
        1 => Ok(g.exp_ad(h, t)? * x * (-t).exp()),
        -1 => Ok(g.exp_ad(h, -t)? * x * (-t).exp()),
        _ => Err(Error::Domain(format!("limit formula only for degree ±1, got {j}"))),
    }
}

/// Projections for the symmetric pair `𝔤 = 𝔥 ⊕ 𝔮` and, with `θ`, the
/// four-fold refinement.
#[derive(Debug, Clone)]
pub struct SymmetricPairSplit {
    pub h: Subspace,
    pub q: Subspace,
    pub p_h: Matrix,
    pub p_q: Matrix,
    pub hk: Option<Subspace>,
    pub hp: Option<Subspace>,
    pub qk: Option<Subspace>,
    pub qp: Option<Subspace>,
}

impl SymmetricPairSplit {
    pub fn new(tau: &InvolutionMap, theta: Option<&InvolutionMap>, tol: &Tolerance) -> Self {
        let d = tau.matrix().nrows();
        let eye = Matrix::identity(d, d);
        let p_h = (&eye + tau.matrix()) * 0.5;
        let p_q = (&eye - tau.matrix()) * 0.5;
        let part = |a: &Matrix, b: &Matrix| Subspace::span(&(a * b), tol);
        let (hk, hp, qk, qp) = match theta {
            Some(th) => {
                let k = (&eye + th.matrix()) * 0.5;
                let p = (&eye - th.matrix()) * 0.5;
                (Some(part(&p_h, &k)), Some(part(&p_h, &p)), Some(part(&p_q, &k)), Some(part(&p_q, &p)))
            }
            None => (None, None, None, None),
        };
        SymmetricPairSplit { h: Subspace::span(&p_h, tol), q: Subspace::span(&p_q, tol), p_h, p_q, hk, hp, qk, qp }
    }

    /// Largest bracket-relation residual among `[𝔥,𝔥] ⊆ 𝔥`, `[𝔥,𝔮] ⊆ 𝔮`,
    /// `[𝔮,𝔮] ⊆ 𝔥`.
    pub fn bracket_residual(&self, g: &LieAlgebraRealization) -> f64 {
        let mut worst: f64 = 0.0;
        let hv = self.h.vectors();
        let qv = self.q.vectors();
        for x in &hv {
            for y in &hv {
                worst = worst.max((self.q.basis().transpose() * g.bracket(x, y)).amax());
            }
            for y in &qv {
                worst = worst.max((self.h.basis().transpose() * g.bracket(x, y)).amax());
            }
        }
        for x in &qv {
            for y in &qv {
                worst = worst.max((self.q.basis().transpose() * g.bracket(x, y)).amax());
            }
        }
        worst
    }
}

/// An element of `𝔤_ℂ = 𝔤 ⊕ i𝔤`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexElement {
    pub re: Element,
    pub im: Element,
}

impl ComplexElement {
    pub fn real(x: Element) -> Self {
        let d = x.len();
        ComplexElement { re: x, im: Element::zeros(d) }
    }

    pub fn stacked(&self) -> DVector<f64> {
        crate::liealg::concat(&[self.re.clone(), self.im.clone()])
    }

    pub fn from_stacked(v: &DVector<f64>) -> Self {
        let d = v.len() / 2;
        ComplexElement { re: v.rows(0, d).into_owned(), im: v.rows(d, d).into_owned() }
    }

    pub fn distance(&self, other: &ComplexElement) -> f64 {
        ((&self.re - &other.re).norm_squared() + (&self.im - &other.im).norm_squared()).sqrt()
    }
}

/// `κ_h^{±1}`: multiplies the `𝔤_{±1}(h)` components by `∓i` (sign `+1`)
/// or `±i` (sign `−1`, the inverse), fixing `𝔤₀(h)`.
fn kappa_power(s: &GradedSplit, z: &ComplexElement, sign: f64) -> ComplexElement {
    // (−i·sign)(a + ib) = sign·b − i·sign·a on 𝔤₁; the conjugate factor on 𝔤₋₁
    let p1re = s.plus.clone() * &z.re;
    let p1im = s.plus.clone() * &z.im;
    let m1re = s.minus.clone() * &z.re;
    let m1im = s.minus.clone() * &z.im;
    ComplexElement {
        re: &s.zero * &z.re + &p1im * sign - &m1im * sign,
        im: &s.zero * &z.im - &p1re * sign + &m1re * sign,
    }
}

/// `κ_h = e^{−(πi/2) ad h}` applied to `z ∈ 𝔤_ℂ`.
pub fn kappa_apply(g: &LieAlgebraRealization, h: &Element, z: &ComplexElement) -> Result<ComplexElement> {
    Ok(kappa_power(&require_euler(g, h)?, z, 1.0))
}

/// `κ_h⁻¹ = e^{(πi/2) ad h}`.
pub fn kappa_inverse(g: &LieAlgebraRealization, h: &Element, z: &ComplexElement) -> Result<ComplexElement> {
    Ok(kappa_power(&require_euler(g, h)?, z, -1.0))
}

/// `κ_h` on the stacked `(re, im)` space, computed as the exponential of
/// the real form of `−(πi/2) ad h`.
pub fn kappa_operator(g: &LieAlgebraRealization, h: &Element) -> Result<Matrix> {
    let a = g.ad(h).into_matrix() * (PI / 2.0);
    let d = g.dim();
    let mut m = Matrix::zeros(2 * d, 2 * d);
    m.view_mut((0, d), (d, d)).copy_from(&a);
    m.view_mut((d, 0), (d, d)).copy_from(&(-a));
    Ok(linop::apply_entire(EntireFn::Exp, &Operator::new(m)?)?.into_matrix())
}

/// Residuals of the three closed-form `sl(2)` identities.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sl2IdentityReport {
    /// `e^{ad x₀} h¹ = h⁰` for `x₀ = (π/4)(e − f)`.
    pub conjugation: f64,
    /// `(t, residual)` for `e^{t ad(e−f)} h¹ = cos(2t) h¹ + sin(2t) h⁰`.
    pub turn: Vec<(f64, f64)>,
    /// `(λ, μ, residual)` for `sin(ad y) h = S(4λμ)(−λe + μf)`, `y = λe + μf`.
    pub sine: Vec<(f64, f64, f64)>,
}

impl Sl2IdentityReport {
    pub fn max_residual(&self) -> f64 {
        self.turn
            .iter()
            .map(|p| p.1)
            .chain(self.sine.iter().map(|p| p.2))
            .fold(self.conjugation, f64::max)
    }

    /// Parameters whose residual exceeds `eps`.
    pub fn offenders(&self, eps: f64) -> Vec<String> {
        let mut out = Vec::new();
        if self.conjugation > eps {
            out.push(format!("conjugation residual {:e}", self.conjugation));
        }
        out.extend(self.turn.iter().filter(|p| p.1 > eps).map(|p| format!("turn t={} residual {:e}", p.0, p.1)));
        out.extend(
            self.sine
                .iter()
                .filter(|p| p.2 > eps)
                .map(|p| format!("sine lambda={} mu={} residual {:e}", p.0, p.1, p.2)),
        );
        out
    }
}

/// The `sl(2)` elements `h⁰, e⁰, f⁰, h¹, e¹, f¹` in coordinates of [`sl`]`(2)`.
pub struct Sl2Basis {
    pub h0: Element,
    pub e0: Element,
    pub f0: Element,
    pub h1: Element,
    pub e1: Element,
    pub f1: Element,
}

impl Sl2Basis {
    pub fn new(g: &LieAlgebraRealization) -> Result<Self> {
        let m = |r: [f64; 4]| g.coords(&Matrix::from_row_slice(2, 2, &r));
        Ok(Sl2Basis {
            h0: m([0.5, 0.0, 0.0, -0.5])?,
            e0: m([0.0, 1.0, 0.0, 0.0])?,
            f0: m([0.0, 0.0, 1.0, 0.0])?,
            h1: m([0.0, 0.5, 0.5, 0.0])?,
            e1: m([-0.5, 0.5, -0.5, 0.5])?,
            f1: m([-0.5, -0.5, 0.5, 0.5])?,
        })
    }
}

/// Evaluate the three `sl(2)` identities on `turn_points` values of `t`
/// in `[0, π]` and a `grid × grid` lattice of `(λ, μ)` with `0 < 4λμ < π²`.
pub fn check_sl2_identities(turn_points: usize, grid: usize) -> Result<Sl2IdentityReport> {
    let g = sl(2)?;
    let b = Sl2Basis::new(&g)?;
    let emf = &b.e0 - &b.f0;
    let x0 = &emf * (PI / 4.0);
    let conjugation = (g.exp_ad(&x0, 1.0)? * &b.h1 - &b.h0).amax();
    let mut turn = Vec::with_capacity(turn_points);
    for k in 0..turn_points {
        let t = if turn_points > 1 { PI * k as f64 / (turn_points - 1) as f64 } else { 0.0 };
        let lhs = g.exp_ad(&emf, t)? * &b.h1;
        let rhs = &b.h1 * (2.0 * t).cos() + &b.h0 * (2.0 * t).sin();
        turn.push((t, (lhs - rhs).amax()));
    }
    // λ, μ on a square lattice inside the hyperbola 4λμ < π²
    let side = PI / 2.0;
    let mut sine = Vec::with_capacity(grid * grid);
    for i in 0..grid {
        for j in 0..grid {
            let lam = side * (i as f64 + 0.5) / grid as f64;
            let mu = side * (j as f64 + 0.5) / grid as f64 * 0.999;
            let y = &b.e0 * lam + &b.f0 * mu;
            let a = g.ad(&y).into_matrix();
            let s_op = linop::apply_entire(EntireFn::S, &Operator::new(&a * &a)?)?;
            let lhs = &a * s_op.matrix() * &b.h0;
            let rhs = (&b.e0 * (-lam) + &b.f0 * mu) * linop::s_real(4.0 * lam * mu);
            sine.push((lam, mu, (lhs - rhs).amax()));
        }
    }
    Ok(Sl2IdentityReport { conjugation, turn, sine })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn dimensions() {
        assert_eq!(sl(2).unwrap().dim(), 3);
        assert_eq!(gl(2).unwrap().dim(), 4);
        assert_eq!(sl(4).unwrap().dim(), 15);
        assert_eq!(sp(2).unwrap().dim(), 10);
        assert_eq!(so(1, 2).unwrap().dim(), 3);
        assert_eq!(su(2, 2).unwrap().dim(), 15);
        let s = sl(2).unwrap();
        assert_eq!(product(&[&s, &s]).unwrap().dim(), 6);
        assert_eq!(make_realization("sl(2)xsl(2)").unwrap().dim(), 6);
        assert_eq!(make_realization("sp(6)").unwrap().dim(), 21);
        assert!(matches!(make_realization("e(7)"), Err(Error::Unsupported(_))));
        assert!(matches!(make_realization("sl(1)"), Err(Error::Unsupported(_))));
    }

    #[test]
    fn sl2_basis_matches_standard_triple() {
        let g = sl(2).unwrap();
        assert_eq!(g.basis()[0], Matrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, -0.5]));
        assert_eq!(g.basis()[1], Matrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]));
        assert_eq!(g.basis()[2], Matrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]));
    }

    #[test]
    fn ad_examples() {
        let g = sl(2).unwrap();
        let b = Sl2Basis::new(&g).unwrap();
        let mut ev: Vec<f64> = linop::eigenvalues(&g.ad(&b.h0)).unwrap().iter().map(|z| z.re).collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ev[0] + 1.0).abs() < 1e-12 && ev[1].abs() < 1e-12 && (ev[2] - 1.0).abs() < 1e-12);
        assert_eq!(g.ad(&g.zero()).norm(), 0.0);
        let ade = g.ad(&b.e0).into_matrix();
        assert!((&ade * &ade * &ade).amax() < 1e-13);
    }

    #[test]
    fn euler_examples() {
        let g = sl(2).unwrap();
        let b = Sl2Basis::new(&g).unwrap();
        let s = is_euler(&g, &b.h0).unwrap().unwrap();
        assert_eq!(s.dims(&tol()), [1, 1, 1]);
        assert!(is_euler(&g, &b.e0).unwrap().is_none());
        // h_p = (1/n) diag(q 1_p, −p 1_q) in sl(5), p = 2, q = 3
        let g5 = sl(5).unwrap();
        let hp = g5
            .coords(&Matrix::from_diagonal(&DVector::from_vec(vec![0.6, 0.6, -0.4, -0.4, -0.4])))
            .unwrap();
        let s5 = is_euler(&g5, &hp).unwrap().unwrap();
        assert_eq!(s5.dims(&tol()), [6, 12, 6]);
    }

    #[test]
    fn tau_of_h0_is_offdiagonal_sign_flip() {
        let g = sl(2).unwrap();
        let b = Sl2Basis::new(&g).unwrap();
        let tau = tau_from_euler(&g, &b.h0, &tol()).unwrap();
        let want = InvolutionMap::from_matrix_map(
            &g,
            |m| Matrix::from_row_slice(2, 2, &[m[(0, 0)], -m[(0, 1)], -m[(1, 0)], m[(1, 1)]]),
            &tol(),
        )
        .unwrap();
        assert!((tau.matrix() - want.matrix()).amax() < 1e-14);
        assert!((tau.apply(&b.h0) - &b.h0).amax() < 1e-14);
        assert!((tau.apply(&b.e0) + &b.e0).amax() < 1e-14);
        assert!(matches!(tau_from_euler(&g, &b.e0, &tol()), Err(Error::NotEuler)));
    }

    #[test]
    fn kappa_examples() {
        let g = sl(2).unwrap();
        let b = Sl2Basis::new(&g).unwrap();
        let z = ComplexElement::real(&b.e0 - &b.f0);
        let w = kappa_inverse(&g, &b.h0, &z).unwrap();
        let want = ComplexElement { re: g.zero(), im: &b.e0 + &b.f0 };
        assert!(w.distance(&want) < 1e-14);
        let kh = kappa_apply(&g, &b.h0, &ComplexElement::real(b.h0.clone())).unwrap();
        assert!(kh.distance(&ComplexElement::real(b.h0.clone())) < 1e-14);
        let op = kappa_operator(&g, &b.h0).unwrap();
        let by_exp = ComplexElement::from_stacked(&(op * z.stacked()));
        assert!(by_exp.distance(&kappa_apply(&g, &b.h0, &z).unwrap()) < 1e-12);
    }

    #[test]
    fn grading_examples() {
        let g = sl(2).unwrap();
        let b = Sl2Basis::new(&g).unwrap();
        let x = &b.e0 + &b.h0 + &b.f0;
        assert!((grading_projection(&g, &x, 1, &b.h0).unwrap() - &b.e0).amax() < 1e-14);
        assert!(grading_projection(&g, &b.h0, 1, &b.h0).unwrap().amax() < 1e-14);
        let lim = grading_limit(&g, &x, 1, &b.h0, 40.0).unwrap();
        assert!((lim - &b.e0).amax() < 1e-9);
        let lim = grading_limit(&g, &x, -1, &b.h0, 40.0).unwrap();
        assert!((lim - &b.f0).amax() < 1e-9);
    }

    #[test]
    fn killing_examples() {
        let g = sl(2).unwrap();
        let b = Sl2Basis::new(&g).unwrap();
        assert!((g.killing_form(&b.h0, &b.h0) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn theta_examples() {
        let g = sl(2).unwrap();
        let b = Sl2Basis::new(&g).unwrap();
        let th = cartan_theta(&g, &tol()).unwrap();
        assert!(theta_flips(&th, &b.h0, &tol()));
        assert!((th.apply(&b.e0) + &b.f0).amax() < 1e-14);
        assert!((th.apply(&b.e1) + &b.f1).amax() < 1e-14);
        let k = th.fixed(&tol());
        assert_eq!(k.dim(), 1);
        assert!(k.residual(&(&b.e0 - &b.f0)) < 1e-14);
    }

    #[test]
    fn sl2_identities_small_grid() {
        let r = check_sl2_identities(8, 4).unwrap();
        assert!(r.max_residual() < 1e-9, "{:?}", r.offenders(1e-9));
        assert_eq!(r.turn[0].1, 0.0);
    }

    #[test]
    fn doc_roundtrip() {
        let g = sl(2).unwrap();
        let th = cartan_theta(&g, &tol()).unwrap();
        let doc = g.to_doc(&[("theta", &th)]);
        let back = RealizationDoc::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let (g2, inv) = back.build().unwrap();
        assert_eq!(g2.dim(), 3);
        assert_eq!(inv["theta"], th);
    }

    #[test]
    fn rejects_non_closed_basis() {
        let b = vec![Matrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]), Matrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0])];
        assert!(matches!(
            LieAlgebraRealization::new("bad", ScalarField::Real, b),
            Err(Error::InvalidRealization(_))
        ));
    }
}
