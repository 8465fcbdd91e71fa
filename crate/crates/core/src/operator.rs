//! Spectral data of the two-sided fractional operator
//! `L = -[theta D_L^alpha + (1-theta) D_R^alpha]`.
//!
//! The operator maps the weighted Jacobi function
//! `w^{sigma,sigma*}(x) P_n^{sigma,sigma*}(x)` to
//! `lambda_n P_n^{sigma*,sigma}(x)`, where `sigma + sigma* = alpha` and
//! `sigma` solves
//!
//! ```text
//!   theta = sin(pi sigma*) / (sin(pi sigma*) + sin(pi sigma)).
//! ```
//!
//! The eigenvalue-like factors are
//! `lambda_n = -sin(pi alpha) / (sin(pi sigma) + sin(pi sigma*)) * G(alpha+n+1)/n!`.
//!
//! For `theta` in `{0, 1}` the operator reduces to a single one-sided
//! Riemann-Liouville derivative, and the weighted basis functions become a
//! single endpoint weight times a polynomial. There the term-by-term monomial
//! rule `D_L^alpha (1+x)^q = G(q+1)/G(q+1-alpha) (1+x)^{q-alpha}` is exact and
//! serves as an independent validation oracle for the whole spectral setup.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::special::{jacobi_eval, lgamma_raw, WeightExponents};

/// Complete parameterization of the problem: order `alpha` in `(1,2)`,
/// side weight `theta` in `[0,1]`, reaction coefficient `mu`, and the derived
/// boundary-singularity exponents `(sigma, sigma_star)` with
/// `sigma + sigma_star = alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorParams {
    alpha: f64,
    theta: f64,
    mu: f64,
    sigma: f64,
    sigma_star: f64,
}

impl OperatorParams {
    pub fn new(alpha: f64, theta: f64, mu: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::Domain(format!("mu must be finite, got {mu}")));
        }
        let (sigma, sigma_star) = solve_sigma(alpha, theta)?;
        Ok(Self {
            alpha,
            theta,
            mu,
            sigma,
            sigma_star,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn sigma_star(&self) -> f64 {
        self.sigma_star
    }

    pub fn with_mu(&self, mu: f64) -> Self {
        Self { mu, ..*self }
    }

    /// Weight `(sigma, sigma_star)` of the trial space.
    pub fn trial_weight(&self) -> WeightExponents {
        WeightExponents::new(self.sigma, self.sigma_star).expect("sigma exponents valid")
    }

    /// Mirrored weight `(sigma_star, sigma)` carried by the operator images.
    pub fn image_weight(&self) -> WeightExponents {
        self.trial_weight().swapped()
    }
}

/// Solves for the boundary exponents `(sigma, sigma_star)` of the operator.
///
/// `sigma` is restricted to `(alpha-1, 1]` so that both exponents stay in
/// `(0, 1]`; the endpoint cases `theta = 0, 0.5, 1` short-circuit to closed
/// forms, everything else runs Newton from `alpha/2` with a bisection
/// safeguard on the bracket.
pub fn solve_sigma(alpha: f64, theta: f64) -> Result<(f64, f64)> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(Error::Domain(format!(
            "alpha must lie in (1, 2), got {alpha}"
        )));
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::Domain(format!(
            "theta must lie in [0, 1], got {theta}"
        )));
    }
    if theta == 1.0 {
        return Ok((1.0, alpha - 1.0));
    }
    if theta == 0.0 {
        return Ok((alpha - 1.0, 1.0));
    }
    if theta == 0.5 {
        return Ok((0.5 * alpha, 0.5 * alpha));
    }

    let g = |s: f64| {
        let s_star = alpha - s;
        theta * ((PI * s_star).sin() + (PI * s).sin()) - (PI * s_star).sin()
    };
    let dg = |s: f64| {
        let s_star = alpha - s;
        PI * (theta * ((PI * s).cos() - (PI * s_star).cos()) + (PI * s_star).cos())
    };

    // g decreases from theta*sin(pi(alpha-1)) >= 0 at sigma = alpha-1 to
    // (theta-1)*sin(pi(alpha-1)) <= 0 at sigma = 1.
    let mut lo = alpha - 1.0;
    let mut hi = 1.0;
    let mut s = 0.5 * alpha;
    for _ in 0..200 {
        let gs = g(s);
        if gs.abs() < 1e-16 {
            break;
        }
        if gs > 0.0 {
            lo = s;
        } else {
            hi = s;
        }
        let d = dg(s);
        let newton = s - gs / d;
        s = if d != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < f64::EPSILON {
            break;
        }
    }
    if g(s).abs() > 1e-14 {
        return Err(Error::NonConvergence(format!(
            "sigma iteration left residual {} for alpha={alpha}, theta={theta}",
            g(s)
        )));
    }
    Ok((s, alpha - s))
}

/// The factor `lambda_n` carrying the operator's action on the `n`-th
/// weighted basis function; strictly positive and increasing in `n`.
pub fn eigenvalue(n: usize, p: &OperatorParams) -> f64 {
    let prefactor = if p.theta == 0.0 || p.theta == 1.0 {
        // Closed form: the sin ratio is exactly 1 at the one-sided endpoints,
        // where sin(pi sigma) vanishes and cancellation would bite.
        1.0
    } else {
        -(PI * p.alpha).sin() / ((PI * p.sigma).sin() + (PI * p.sigma_star).sin())
    };
    let nf = n as f64;
    prefactor * (lgamma_raw(p.alpha + nf + 1.0) - lgamma_raw(nf + 1.0)).exp()
}

/// The `n`-th weighted basis function
/// `(1-x)^sigma (1+x)^sigma_star P_n^{sigma,sigma_star}(x)`.
pub fn pseudo_eigenfunction(n: usize, p: &OperatorParams, x: f64) -> f64 {
    let w = p.trial_weight();
    w.weight(x) * jacobi_eval(n, w, x)
}

/// Which one-sided derivative an oracle computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Left derivative, differentiation from `x = -1` (`theta = 1` case).
    Left,
    /// Right derivative, differentiation from `x = +1` (`theta = 0` case).
    Right,
}

/// `G(q+1) / G(q+1-alpha)`, the factor in the fractional monomial rule, with
/// the convention that it vanishes when `q+1-alpha` hits a gamma pole
/// (nonpositive integer).
fn frac_monomial_factor(q: f64, alpha: f64) -> f64 {
    let z = q + 1.0 - alpha;
    let zr = z.round();
    if zr <= 0.0 && (z - zr).abs() < 1e-9 {
        return 0.0;
    }
    // Reflect nonpositive z into the positive domain: G(z) = G(z+m)/(z (z+1) ...).
    let mut shift = 1.0;
    let mut zz = z;
    while zz <= 0.0 {
        shift *= zz;
        zz += 1.0;
    }
    shift * (lgamma_raw(q + 1.0) - lgamma_raw(zz)).exp()
}

/// Exact Riemann-Liouville derivative of order `alpha` of
/// `sum_k poly[k] (1+x)^{p_exponent + k}` (left side) or of the mirrored
/// `sum_k poly[k] (1-x)^{p_exponent + k}` (right side), evaluated at `x`.
///
/// Terms whose exponent sits on a gamma pole are annihilated, matching the
/// kernel of the one-sided derivative.
pub fn rl_derivative_oracle(
    side: Side,
    p_exponent: f64,
    poly: &[f64],
    alpha: f64,
    x: f64,
) -> Result<f64> {
    if !(p_exponent > -1.0) {
        return Err(Error::Domain(format!(
            "base exponent must exceed -1, got {p_exponent}"
        )));
    }
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(Error::Domain(format!(
            "alpha must lie in (1, 2), got {alpha}"
        )));
    }
    let base = match side {
        Side::Left => 1.0 + x,
        Side::Right => 1.0 - x,
    };
    let mut total = 0.0;
    for (k, &c) in poly.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let q = p_exponent + k as f64;
        let factor = frac_monomial_factor(q, alpha);
        if factor != 0.0 {
            total += c * factor * base.powf(q - alpha);
        }
    }
    Ok(total)
}

/// Monomial coefficients (powers of `x`) of `P_n^{gamma,beta}` built by the
/// three-term recurrence on coefficient vectors. Intended for the small
/// degrees used by the oracle checks.
pub fn jacobi_monomial_coeffs(n: usize, w: WeightExponents) -> Vec<f64> {
    let mut prev = vec![1.0];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0.5 * (w.gamma() - w.beta()), 0.5 * (w.sum() + 2.0)];
    if n == 1 {
        return cur;
    }
    let s = w.sum();
    for j in 1..n {
        let jf = j as f64;
        let t = 2.0 * jf + s;
        let a1 = 2.0 * (jf + 1.0) * (jf + s + 1.0) * t;
        let a2 = (t + 1.0) * (w.gamma() - w.beta()) * (w.gamma() + w.beta());
        let a3 = t * (t + 1.0) * (t + 2.0);
        let a4 = 2.0 * (jf + w.gamma()) * (jf + w.beta()) * (t + 2.0);
        let mut next = vec![0.0; j + 2];
        for (i, &c) in cur.iter().enumerate() {
            next[i] += a2 / a1 * c;
            next[i + 1] += a3 / a1 * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= a4 / a1 * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Multiplies a monomial-coefficient polynomial by `(a + b x)`.
pub fn poly_mul_linear(coeffs: &[f64], a: f64, b: f64) -> Vec<f64> {
    let mut out = vec![0.0; coeffs.len() + 1];
    for (i, &c) in coeffs.iter().enumerate() {
        out[i] += a * c;
        out[i + 1] += b * c;
    }
    out
}

/// Coefficients `c_k` of `P_n^{gamma,beta}(x) = sum_k c_k (1+x)^k`
/// (`Side::Left`) or `= sum_k c_k (1-x)^k` (`Side::Right`).
///
/// Built from the binomial endpoint expansion through the term ratio
/// `c_{k+1}/c_k = -(n-k)(n+g+b+1+k) / (2 (e+1+k)(k+1))` (with `e` the
/// exponent at the expansion endpoint), so each coefficient is a product of
/// signed rationals with no cancellation; this keeps the derivative oracle
/// accurate near the far endpoint where the terms grow before cancelling.
pub fn jacobi_endpoint_coeffs(n: usize, w: WeightExponents, side: Side) -> Vec<f64> {
    let s = w.sum();
    let endpoint_exp = match side {
        Side::Left => w.beta(),
        Side::Right => w.gamma(),
    };
    // |P_n| at the expansion endpoint: binom(n + e, n).
    let nf = n as f64;
    let mut c = (lgamma_raw(nf + endpoint_exp + 1.0)
        - lgamma_raw(endpoint_exp + 1.0)
        - lgamma_raw(nf + 1.0))
    .exp();
    if side == Side::Left && n % 2 == 1 {
        c = -c;
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(c);
    for k in 0..n {
        let kf = k as f64;
        c *= -(nf - kf) * (nf + s + 1.0 + kf) / (2.0 * (endpoint_exp + 1.0 + kf) * (kf + 1.0));
        coeffs.push(c);
    }
    coeffs
}

/// Rewrites monomial coefficients as coefficients in powers of `(1+x)`
/// (`Side::Left`) or `(1-x)` (`Side::Right`) by exact synthetic shifting.
pub fn to_endpoint_powers(coeffs: &[f64], side: Side) -> Vec<f64> {
    let mut a = coeffs.to_vec();
    if side == Side::Right {
        // p(x) = q(1-x): substitute through t -> -t first.
        for (i, c) in a.iter_mut().enumerate() {
            if i % 2 == 1 {
                *c = -*c;
            }
        }
    }
    // Taylor shift: coefficients of p(y - 1) in y.
    let deg = a.len().saturating_sub(1);
    for i in 0..deg {
        for j in (i..deg).rev() {
            a[j] = a[j] - a[j + 1];
        }
    }
    a
}

/// Compensated double-double value; the oracle's endpoint series cancels by
/// five to six orders of magnitude near the far endpoint, so its coefficient
/// products and the final sum are carried in roughly 31 digits.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Dd { hi: s, lo: err }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        Dd {
            hi: s,
            lo: lo - (s - hi),
        }
    }

    fn add(self, o: Self) -> Self {
        let s = Self::two_sum(self.hi, o.hi);
        Self::renorm(s.hi, s.lo + self.lo + o.lo)
    }

    fn neg(self) -> Self {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let err = self.hi.mul_add(o.hi, -p);
        Self::renorm(p, err + self.hi * o.lo + self.lo * o.hi)
    }

    fn div(self, o: Self) -> Self {
        let q0 = self.hi / o.hi;
        let r = self.add(o.mul(Self::from(q0)).neg());
        Self::renorm(q0, r.value() / o.hi)
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// Maximum pointwise deviation, over `samples` interior points, between the
/// monomial-rule evaluation of `L[w^{sigma,sigma*} P_n^{sigma,sigma*}]` and
/// `lambda_scale * lambda_n * P_n^{sigma*,sigma}` for the one-sided cases.
///
/// `Side::Left` checks `theta = 1`, `Side::Right` checks `theta = 0`;
/// `lambda_scale` exists so self-tests can inject a fault and watch the check
/// fire. Only the one-sided cases admit this exact elementary oracle.
pub fn pseudo_eigen_oracle_residual(
    side: Side,
    n: usize,
    alpha: f64,
    samples: usize,
    lambda_scale: f64,
) -> Result<f64> {
    let theta = match side {
        Side::Left => 1.0,
        Side::Right => 0.0,
    };
    let p = OperatorParams::new(alpha, theta, 0.0)?;
    let trial = p.trial_weight();
    let image = p.image_weight();
    let lambda = lambda_scale * eigenvalue(n, &p);

    // Endpoint expansion of P_n over the weaker-exponent endpoint; the
    // exponent there is alpha - 1 for both sides.
    let endpoint_exp = alpha - 1.0;
    let s = trial.sum();
    let nf = n as f64;

    // c_0 = +-binom(n + (alpha-1), n); the single gamma-based factor is common
    // to every term, so its rounding cannot be amplified by cancellation.
    let mut c0 = (lgamma_raw(nf + endpoint_exp + 1.0)
        - lgamma_raw(endpoint_exp + 1.0)
        - lgamma_raw(nf + 1.0))
    .exp();
    if side == Side::Left && n % 2 == 1 {
        c0 = -c0;
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut c = Dd::from(c0);
    coeffs.push(c);
    for k in 0..n {
        let kf = k as f64;
        let num = Dd::from(-(nf - kf)).mul(Dd::two_sum(s, nf + 1.0 + kf));
        let den = Dd::two_sum(endpoint_exp, 1.0 + kf).mul(Dd::from(2.0 * (kf + 1.0)));
        c = c.mul(num).div(den);
        coeffs.push(c);
    }

    // Multiply by the unit-exponent weight factor, (1 -+ x) = 2 - (1 +- x).
    let mut series = vec![Dd::from(0.0); coeffs.len() + 1];
    for (k, &ck) in coeffs.iter().enumerate() {
        series[k] = series[k].add(ck.mul(Dd::from(2.0)));
        series[k + 1] = series[k + 1].add(ck.neg());
    }

    // Fractional factors G(alpha+k)/G(k) = G(alpha+1) prod_{i<k} (alpha+i)/i;
    // the k = 0 term dies on a gamma pole.
    let gamma_alpha1 = lgamma_raw(alpha + 1.0).exp();
    let mut factors = vec![Dd::from(0.0); series.len()];
    if series.len() > 1 {
        factors[1] = Dd::from(gamma_alpha1);
        for k in 2..series.len() {
            let kf = (k - 1) as f64;
            factors[k] = factors[k - 1].mul(Dd::two_sum(alpha, kf)).div(Dd::from(kf));
        }
    }

    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let x = -1.0 + 2.0 * (i as f64 + 0.5) / samples as f64;
        let base = match side {
            Side::Left => Dd::two_sum(1.0, x),
            Side::Right => Dd::two_sum(1.0, -x),
        };
        // sum_k series[k] G(alpha+k)/G(k) base^{k-1}
        let mut power = Dd::from(1.0);
        let mut total = Dd::from(0.0);
        for k in 1..series.len() {
            total = total.add(series[k].mul(factors[k]).mul(power));
            power = power.mul(base);
        }
        let applied = -total.value();
        let expected = lambda * jacobi_eval(n, image, x);
        worst = worst.max((applied - expected).abs());
    }
    Ok(worst)
}

/// Maximum absolute value of the oracle applied to the kernel function
/// `w^{sigma-1,sigma*-1}` for the one-sided cases; exactly zero by the
/// gamma-pole convention.
pub fn kernel_oracle_residual(side: Side, alpha: f64, samples: usize) -> Result<f64> {
    // At theta in {0,1} the kernel is a pure endpoint power with exponent
    // alpha-2; both it and exponent alpha-1 must be annihilated.
    let mut worst: f64 = 0.0;
    for &exponent in &[alpha - 2.0, alpha - 1.0] {
        for i in 0..samples {
            let x = -1.0 + 2.0 * (i as f64 + 0.5) / samples as f64;
            let v = rl_derivative_oracle(side, exponent, &[1.0], alpha, x)?;
            worst = worst.max(v.abs());
        }
    }
    Ok(worst)
}
