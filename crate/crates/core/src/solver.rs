//! Assembly and solution of the spectral schemes.
//!
//! Both discretizations expand the solution in the weighted trial basis
//! `phi_n = (1-x)^sigma (1+x)^sigma* P_n^{sigma,sigma*}` and test the equation
//! `L u + mu u = f` against:
//!
//! * the trial basis itself (`galerkin`), giving a dense fractional stiffness
//!   `S_{k,n} = lambda_n integral w^{sigma,sigma*} P_n^{sigma*,sigma}
//!   P_k^{sigma,sigma*} dx` and a symmetric mass matrix with weight
//!   `w^{2 sigma, 2 sigma*}`;
//! * the mirrored basis `psi_k = (1-x)^sigma* (1+x)^sigma P_k^{sigma*,sigma}`
//!   (`petrov-galerkin`), which diagonalizes the stiffness
//!   (`S_kk = lambda_k h_k^{sigma*,sigma}`) and couples modes only through the
//!   `(1-x^2)^alpha`-weighted mass matrix.
//!
//! All assembly integrals have polynomial integrands of degree at most `2N`
//! under their combined Jacobi weight, so the `(N+1)`-point rules used here
//! are exact. Right-hand sides are projected with a finer, separately chosen
//! rule whose weight absorbs the boundary factors of `f`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{lu_solve, DenseMatrix};
use crate::operator::{eigenvalue, OperatorParams};
use crate::quadrature::gauss_jacobi;
use crate::rhs::RhsSpec;
use crate::special::{jacobi_eval_all, jacobi_norm, WeightExponents};

/// Discretization tag; the trial space is shared, the test space differs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Galerkin,
    PetrovGalerkin,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Galerkin => "galerkin",
            Method::PetrovGalerkin => "petrov-galerkin",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "galerkin" => Some(Method::Galerkin),
            "pg" | "petrov-galerkin" => Some(Method::PetrovGalerkin),
            _ => None,
        }
    }

    pub fn scheme(self) -> Arc<dyn Scheme> {
        match self {
            Method::Galerkin => Arc::new(GalerkinScheme),
            Method::PetrovGalerkin => Arc::new(PetrovGalerkinScheme),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Stiffness storage; the Petrov-Galerkin stiffness is diagonal.
#[derive(Debug, Clone, PartialEq)]
pub enum Stiffness {
    Dense(DenseMatrix),
    Diagonal(Vec<f64>),
}

impl Stiffness {
    pub fn dimension(&self) -> usize {
        match self {
            Stiffness::Dense(m) => m.rows(),
            Stiffness::Diagonal(d) => d.len(),
        }
    }

    /// Entry view that treats the diagonal case as a sparse matrix.
    pub fn entry(&self, r: usize, c: usize) -> f64 {
        match self {
            Stiffness::Dense(m) => m.get(r, c),
            Stiffness::Diagonal(d) => {
                if r == c {
                    d[r]
                } else {
                    0.0
                }
            }
        }
    }
}

/// Assembled linear system `(S + mu M) u = f`.
#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub params: OperatorParams,
    pub stiffness: Stiffness,
    pub mass: DenseMatrix,
    pub rhs: Option<Vec<f64>>,
}

impl AssembledSystem {
    pub fn dimension(&self) -> usize {
        self.stiffness.dimension()
    }

    pub fn structure(&self) -> &'static str {
        match self.stiffness {
            Stiffness::Dense(_) => "dense",
            Stiffness::Diagonal(_) => "stiffness-diagonal",
        }
    }

    /// `(S + mu M) v` without forming the combined matrix.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mu = self.params.mu();
        let mut out = self.mass.matvec(v);
        for o in out.iter_mut() {
            *o *= mu;
        }
        match &self.stiffness {
            Stiffness::Diagonal(d) => {
                for (o, (&di, &vi)) in out.iter_mut().zip(d.iter().zip(v)) {
                    *o += di * vi;
                }
            }
            Stiffness::Dense(s) => {
                for (o, sv) in out.iter_mut().zip(s.matvec(v)) {
                    *o += sv;
                }
            }
        }
        out
    }
}

/// One spectral discretization of the problem, selectable by name.
pub trait Scheme: Send + Sync {
    fn name(&self) -> &'static str;

    fn aliases(&self) -> &'static [&'static str] {
        &[]
    }

    fn method(&self) -> Method;

    /// Weight exponents of the test basis; the test polynomials belong to the
    /// same exponent pair.
    fn test_weight(&self, p: &OperatorParams) -> WeightExponents;

    /// Builds stiffness and mass matrices for trial degrees `0..=max_degree`
    /// (the right-hand side is projected separately).
    fn assemble(&self, max_degree: usize, p: &OperatorParams) -> Result<AssembledSystem>;
}

/// Galerkin scheme: test space equals the trial space.
pub struct GalerkinScheme;

impl Scheme for GalerkinScheme {
    fn name(&self) -> &'static str {
        "galerkin"
    }

    fn method(&self) -> Method {
        Method::Galerkin
    }

    fn test_weight(&self, p: &OperatorParams) -> WeightExponents {
        p.trial_weight()
    }

    fn assemble(&self, max_degree: usize, p: &OperatorParams) -> Result<AssembledSystem> {
        assemble_galerkin(max_degree, p)
    }
}

/// Petrov-Galerkin scheme: mirrored test space, diagonal stiffness.
pub struct PetrovGalerkinScheme;

impl Scheme for PetrovGalerkinScheme {
    fn name(&self) -> &'static str {
        "petrov-galerkin"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["pg"]
    }

    fn method(&self) -> Method {
        Method::PetrovGalerkin
    }

    fn test_weight(&self, p: &OperatorParams) -> WeightExponents {
        p.image_weight()
    }

    fn assemble(&self, max_degree: usize, p: &OperatorParams) -> Result<AssembledSystem> {
        assemble_petrov_galerkin(max_degree, p)
    }
}

/// Name-keyed registry of schemes. The two built-ins are always present;
/// additional implementations can be registered and shadow earlier entries
/// with the same name.
pub struct SchemeRegistry {
    entries: Vec<Arc<dyn Scheme>>,
}

impl SchemeRegistry {
    pub fn with_builtins() -> Self {
        Self {
            entries: vec![Arc::new(GalerkinScheme), Arc::new(PetrovGalerkinScheme)],
        }
    }

    pub fn register(&mut self, scheme: Arc<dyn Scheme>) {
        self.entries.push(scheme);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn Scheme>> {
        self.entries
            .iter()
            .rev()
            .find(|s| s.name() == name || s.aliases().contains(&name))
            .cloned()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|s| s.name()).collect()
    }
}

impl Default for SchemeRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

/// Values of `P_0..P_max_degree` of family `w` at the given nodes, row per
/// degree, contiguous over nodes.
fn eval_matrix(max_degree: usize, w: WeightExponents, nodes: &[f64]) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(max_degree + 1, nodes.len());
    for (j, &x) in nodes.iter().enumerate() {
        for (k, v) in jacobi_eval_all(max_degree, w, x).into_iter().enumerate() {
            m.set(k, j, v);
        }
    }
    m
}

/// Galerkin stiffness and mass for degrees `0..=max_degree`.
///
/// Stiffness entries carry the eigenvalue factor of the trial (column) index:
/// row `k` tests the residual against `phi_k`, and `L phi_n` contributes
/// `lambda_n P_n^{sigma*,sigma}`.
pub fn assemble_galerkin(max_degree: usize, p: &OperatorParams) -> Result<AssembledSystem> {
    let n1 = max_degree + 1;
    let trial = p.trial_weight();
    let image = p.image_weight();
    let lambda: Vec<f64> = (0..n1).map(|k| eigenvalue(k, p)).collect();

    // Stiffness: weight w^{sigma,sigma*}, polynomial degree n+k <= 2N.
    let rule_s = gauss_jacobi(n1, trial)?;
    let vals_image = eval_matrix(max_degree, image, rule_s.nodes());
    let vals_trial = eval_matrix(max_degree, trial, rule_s.nodes());
    let mut weighted = vals_image.clone();
    for n in 0..n1 {
        let row = weighted.row_mut(n);
        for (v, &w) in row.iter_mut().zip(rule_s.weights()) {
            *v *= w;
        }
    }
    let mut s = DenseMatrix::zeros(n1, n1);
    for k in 0..n1 {
        let test_row = vals_trial.row(k);
        for n in 0..n1 {
            let dot: f64 = weighted
                .row(n)
                .iter()
                .zip(test_row)
                .map(|(a, b)| a * b)
                .sum();
            s.set(k, n, lambda[n] * dot);
        }
    }

    // Mass: weight w^{2 sigma, 2 sigma*}; symmetric, fill the upper triangle.
    let doubled = WeightExponents::new(2.0 * p.sigma(), 2.0 * p.sigma_star())?;
    let rule_m = gauss_jacobi(n1, doubled)?;
    let vals_m = eval_matrix(max_degree, trial, rule_m.nodes());
    let mass = symmetric_product(&vals_m, rule_m.weights());

    Ok(AssembledSystem {
        params: *p,
        stiffness: Stiffness::Dense(s),
        mass,
        rhs: None,
    })
}

/// Petrov-Galerkin system: diagonal stiffness `lambda_k h_k^{sigma*,sigma}`,
/// mass with weight `(1-x^2)^alpha`.
pub fn assemble_petrov_galerkin(max_degree: usize, p: &OperatorParams) -> Result<AssembledSystem> {
    let n1 = max_degree + 1;
    let trial = p.trial_weight();
    let image = p.image_weight();

    let diag: Vec<f64> = (0..n1)
        .map(|k| eigenvalue(k, p) * jacobi_norm(k, image))
        .collect();

    let w_alpha = WeightExponents::new(p.alpha(), p.alpha())?;
    let rule = gauss_jacobi(n1, w_alpha)?;
    let vals_trial = eval_matrix(max_degree, trial, rule.nodes());
    let vals_test = eval_matrix(max_degree, image, rule.nodes());
    let mut mass = DenseMatrix::zeros(n1, n1);
    for k in 0..n1 {
        let test_row = vals_test.row(k);
        for n in 0..n1 {
            let dot: f64 = vals_trial
                .row(n)
                .iter()
                .zip(test_row)
                .zip(rule.weights())
                .map(|((a, b), w)| w * a * b)
                .sum();
            mass.set(k, n, dot);
        }
    }

    Ok(AssembledSystem {
        params: *p,
        stiffness: Stiffness::Diagonal(diag),
        mass,
        rhs: None,
    })
}

/// `M_{k,n} = sum_j w_j vals[n][j] vals[k][j]`, mirrored so the result is
/// exactly symmetric.
fn symmetric_product(vals: &DenseMatrix, weights: &[f64]) -> DenseMatrix {
    let n1 = vals.rows();
    let mut m = DenseMatrix::zeros(n1, n1);
    for k in 0..n1 {
        for n in k..n1 {
            let dot: f64 = vals
                .row(n)
                .iter()
                .zip(vals.row(k))
                .zip(weights)
                .map(|((a, b), w)| w * a * b)
                .sum();
            m.set(k, n, dot);
            m.set(n, k, dot);
        }
    }
    m
}

/// Projects `f` onto the test basis of weight/family `test_w`:
/// `f_k = integral f(x) w_test(x) P_k^{test}(x) dx` for `k = 0..=max_degree`.
///
/// The boundary factors of `f` are absorbed into the quadrature weight, so
/// only the bounded factor is sampled. With interior kinks the integral is
/// split; each subinterval keeps the weight exponent of the endpoint it
/// retains and treats the opposite boundary factor as a smooth integrand.
pub fn project_rhs(
    f: &RhsSpec,
    max_degree: usize,
    test_w: WeightExponents,
    quad_points: usize,
) -> Result<Vec<f64>> {
    if quad_points <= max_degree {
        return Err(Error::InvalidInput(format!(
            "rhs quadrature needs more than {max_degree} points, got {quad_points}"
        )));
    }
    let a = test_w.gamma() + f.left_exponent();
    let b = test_w.beta() + f.right_exponent();
    if !(a > -1.0) || !(b > -1.0) {
        return Err(Error::ExponentOutOfRange(format!(
            "combined test/rhs exponents ({a}, {b}) are not integrable"
        )));
    }

    let mut out = vec![0.0; max_degree + 1];
    if f.kinks().is_empty() {
        let rule = gauss_jacobi(quad_points, WeightExponents::new(a, b)?)?;
        for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
            let gx = w * f.smooth_part(x);
            if gx == 0.0 {
                continue;
            }
            for (k, v) in jacobi_eval_all(max_degree, test_w, x)
                .into_iter()
                .enumerate()
            {
                out[k] += gx * v;
            }
        }
        return Ok(out);
    }

    let mut boundaries = Vec::with_capacity(f.kinks().len() + 2);
    boundaries.push(-1.0);
    boundaries.extend_from_slice(f.kinks());
    boundaries.push(1.0);

    for piece in boundaries.windows(2) {
        let (lo, hi) = (piece[0], piece[1]);
        let mid = 0.5 * (hi + lo);
        let half = 0.5 * (hi - lo);
        // Exponents of the retained endpoints of this piece.
        let (ga, gb) = (
            if hi == 1.0 { a } else { 0.0 },
            if lo == -1.0 { b } else { 0.0 },
        );
        let rule = gauss_jacobi(quad_points, WeightExponents::new(ga, gb)?)?;
        // Affine map pulls half^(1 + retained exponents) out of the integral.
        let scale = half.powf(1.0 + ga + gb);
        for (&y, &w) in rule.nodes().iter().zip(rule.weights()) {
            let x: f64 = mid + half * y;
            let mut gx = w * scale * f.smooth_part(x);
            if hi != 1.0 {
                gx *= (1.0 - x).powf(a);
            }
            if lo != -1.0 {
                gx *= (1.0 + x).powf(b);
            }
            if gx == 0.0 {
                continue;
            }
            for (k, v) in jacobi_eval_all(max_degree, test_w, x)
                .into_iter()
                .enumerate()
            {
                out[k] += gx * v;
            }
        }
    }
    Ok(out)
}

/// Solves the assembled system, returning coefficients and the relative
/// residual `|(S + mu M) u - f|_inf / |f|_inf`.
pub fn solve_system_detailed(sys: &AssembledSystem) -> Result<(Vec<f64>, f64)> {
    let rhs = sys
        .rhs
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("system has no right-hand side".into()))?;
    let n = sys.dimension();
    assert_eq!(rhs.len(), n);
    let mu = sys.params.mu();

    let coeffs = match (&sys.stiffness, mu == 0.0) {
        (Stiffness::Diagonal(d), true) => {
            // Pure division path for the diagonal-stiffness scheme.
            d.iter()
                .zip(rhs)
                .map(|(&di, &fi)| {
                    if di == 0.0 {
                        Err(Error::Singular("zero diagonal stiffness entry".into()))
                    } else {
                        Ok(fi / di)
                    }
                })
                .collect::<Result<Vec<f64>>>()?
        }
        _ => {
            let mut full = match &sys.stiffness {
                Stiffness::Dense(s) => s.clone(),
                Stiffness::Diagonal(d) => {
                    let mut m = DenseMatrix::zeros(n, n);
                    for (i, &di) in d.iter().enumerate() {
                        m.set(i, i, di);
                    }
                    m
                }
            };
            if mu != 0.0 {
                for r in 0..n {
                    for c in 0..n {
                        let v = full.get(r, c) + mu * sys.mass.get(r, c);
                        full.set(r, c, v);
                    }
                }
            }
            lu_solve(&full, rhs)?
        }
    };

    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Singular("non-finite solution coefficients".into()));
    }
    let applied = sys.apply(&coeffs);
    let err = applied
        .iter()
        .zip(rhs)
        .map(|(a, f)| (a - f).abs())
        .fold(0.0f64, f64::max);
    let scale = rhs.iter().map(|f| f.abs()).fold(0.0f64, f64::max);
    let residual = if scale == 0.0 { err } else { err / scale };
    if residual >= 1e-10 {
        return Err(Error::Singular(format!(
            "solve left relative residual {residual:.3e}; mu may sit near a discrete eigenvalue"
        )));
    }
    Ok((coeffs, residual))
}

/// Solves the assembled system (see [`solve_system_detailed`]).
pub fn solve_system(sys: &AssembledSystem) -> Result<Vec<f64>> {
    solve_system_detailed(sys).map(|(c, _)| c)
}

/// Discrete solution `u_N = sum_n c_n (1-x)^sigma (1+x)^sigma* P_n^{sigma,sigma*}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSolution {
    params: OperatorParams,
    method: Method,
    coefficients: Vec<f64>,
}

impl SpectralSolution {
    pub fn new(params: OperatorParams, method: Method, coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidInput("empty coefficient vector".into()));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite coefficient".into()));
        }
        Ok(Self {
            params,
            method,
            coefficients,
        })
    }

    pub fn params(&self) -> &OperatorParams {
        &self.params
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Polynomial degree `N` (the coefficient vector has `N + 1` entries).
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Evaluates `u_N(x)`; exactly zero at the boundary, where every basis
    /// function vanishes.
    pub fn evaluate(&self, x: f64) -> f64 {
        if x == 1.0 || x == -1.0 {
            return 0.0;
        }
        let w = self.params.trial_weight();
        let sum: f64 = jacobi_eval_all(self.degree(), w, x)
            .into_iter()
            .zip(&self.coefficients)
            .map(|(v, &c)| c * v)
            .sum();
        w.weight(x) * sum
    }

    /// Deterministic JSON record; reals carry 17 significant digits so the
    /// file reloads to bit-identical values.
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        s.push_str("{\n");
        s.push_str(&format!("  \"method\": \"{}\",\n", self.method.tag()));
        s.push_str(&format!("  \"alpha\": {},\n", fmt17(self.params.alpha())));
        s.push_str(&format!("  \"theta\": {},\n", fmt17(self.params.theta())));
        s.push_str(&format!("  \"mu\": {},\n", fmt17(self.params.mu())));
        s.push_str(&format!("  \"sigma\": {},\n", fmt17(self.params.sigma())));
        s.push_str(&format!(
            "  \"sigma_star\": {},\n",
            fmt17(self.params.sigma_star())
        ));
        s.push_str(&format!("  \"N\": {},\n", self.degree()));
        s.push_str("  \"coefficients\": [\n");
        for (i, c) in self.coefficients.iter().enumerate() {
            let sep = if i + 1 == self.coefficients.len() {
                ""
            } else {
                ","
            };
            s.push_str(&format!("    {}{}\n", fmt17(*c), sep));
        }
        s.push_str("  ]\n}\n");
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct SolutionFile {
            method: String,
            alpha: f64,
            theta: f64,
            mu: f64,
            sigma: f64,
            sigma_star: f64,
            #[serde(rename = "N")]
            n: usize,
            coefficients: Vec<f64>,
        }
        let file: SolutionFile = serde_json::from_str(text)?;
        let method = Method::parse(&file.method)
            .ok_or_else(|| Error::InvalidInput(format!("unknown method {:?}", file.method)))?;
        let params = OperatorParams::new(file.alpha, file.theta, file.mu)?;
        if (params.sigma() - file.sigma).abs() > 1e-10
            || (params.sigma_star() - file.sigma_star).abs() > 1e-10
        {
            return Err(Error::ParameterMismatch(format!(
                "stored exponents ({}, {}) disagree with alpha={}, theta={}",
                file.sigma, file.sigma_star, file.alpha, file.theta
            )));
        }
        if file.coefficients.len() != file.n + 1 {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients, found {}",
                file.n + 1,
                file.coefficients.len()
            )));
        }
        Self::new(params, method, file.coefficients)
    }

    pub fn write_to(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn read_from(&path: &&std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// End-to-end pipeline: assemble, project the right-hand side, solve.
/// Returns the solution together with the linear-system residual.
pub fn solve_detailed(
    max_degree: usize,
    p: &OperatorParams,
    f: &RhsSpec,
    scheme: &dyn Scheme,
    quad_points: usize,
) -> Result<(SpectralSolution, f64)> {
    let mut sys = scheme.assemble(max_degree, p)?;
    sys.rhs = Some(project_rhs(
        f,
        max_degree,
        scheme.test_weight(p),
        quad_points,
    )?);
    let (coefficients, residual) = solve_system_detailed(&sys)?;
    let solution = SpectralSolution::new(*p, scheme.method(), coefficients)?;
    Ok((solution, residual))
}

/// End-to-end pipeline (see [`solve_detailed`]).
pub fn solve(
    max_degree: usize,
    p: &OperatorParams,
    f: &RhsSpec,
    scheme: &dyn Scheme,
    quad_points: usize,
) -> Result<SpectralSolution> {
    solve_detailed(max_degree, p, f, scheme, quad_points).map(|(s, _)| s)
}

/// Default right-hand-side quadrature size for degree `n`: over-resolve so the
/// measured convergence order is the scheme's own.
pub fn default_quad_points(n: usize) -> usize {
    (2 * n).max(128)
}
