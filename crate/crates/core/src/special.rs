//! Gamma-function utilities and the Jacobi polynomial toolkit.
//!
//! Jacobi polynomials `P_n^{gamma,beta}` are orthogonal on `(-1, 1)` under the
//! weight `w(x) = (1-x)^gamma (1+x)^beta` with `gamma, beta > -1`:
//!
//! ```text
//!   integral P_m^{g,b} P_n^{g,b} w dx = h_n^{g,b} delta_{mn},
//!   h_n^{g,b} = 2^{g+b+1}/(2n+g+b+1) * G(n+g+1) G(n+b+1) / (G(n+g+b+1) n!),
//! ```
//!
//! with `G` the gamma function. Every gamma-dependent constant in this crate
//! goes through [`ln_gamma`] differences; direct gamma products overflow near
//! `n = 170` while the harness routinely needs degree 512 and beyond.

use crate::error::{Error, Result};

/// Exponent pair `(gamma, beta)` identifying the Jacobi weight
/// `(1-x)^gamma (1+x)^beta` and its polynomial family.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct WeightExponents {
    gamma: f64,
    beta: f64,
}

impl WeightExponents {
    /// Both exponents must exceed `-1` for the weight to be integrable.
    pub fn new(gamma: f64, beta: f64) -> Result<Self> {
        if !(gamma > -1.0) || !(beta > -1.0) || !gamma.is_finite() || !beta.is_finite() {
            return Err(Error::Domain(format!(
                "weight exponents must be finite and > -1, got ({gamma}, {beta})"
            )));
        }
        Ok(Self { gamma, beta })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `gamma + beta`, formed once so that symmetry-sensitive formulas
    /// evaluate bit-identically under `gamma <-> beta`.
    pub fn sum(&self) -> f64 {
        self.gamma + self.beta
    }

    /// The mirrored pair `(beta, gamma)`; `P_n^{g,b}(-x) = (-1)^n P_n^{b,g}(x)`.
    pub fn swapped(&self) -> Self {
        Self {
            gamma: self.beta,
            beta: self.gamma,
        }
    }

    /// Both exponents shifted by `l` (the weight of the `l`-th derivative family).
    pub fn shifted(&self, l: f64) -> Self {
        Self {
            gamma: self.gamma + l,
            beta: self.beta + l,
        }
    }

    /// Weight value `(1-x)^gamma (1+x)^beta` at `x`.
    pub fn weight(&self, x: f64) -> f64 {
        (1.0 - x).powf(self.gamma) * (1.0 + x).powf(self.beta)
    }
}

/// Connection coefficients of the index raise
/// `P_n^{g,b} = a_n P_{n-2}^{g+1,b+1} + b_n P_{n-1}^{g+1,b+1} + c_n P_n^{g+1,b+1}`,
/// with the conventions `a_0 = a_1 = b_0 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

// Stirling series coefficients B_{2k} / (2k (2k-1)).
const STIRLING: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_74;

/// `ln Gamma(x)` for `x` already in the Stirling regime (`x >= 13`).
fn stirling_ln_gamma(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for &c in STIRLING.iter().rev() {
        series = series * inv2 + c;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + series * inv
}

pub(crate) fn lgamma_raw(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x >= 13.0 {
        return stirling_ln_gamma(x);
    }
    // Shift into the Stirling regime; Gamma(x) = Gamma(x + k) / (x (x+1) ... (x+k-1)).
    let mut prod = 1.0;
    let mut z = x;
    while z < 13.0 {
        prod *= z;
        z += 1.0;
    }
    stirling_ln_gamma(z) - prod.ln()
}

/// Natural log of the gamma function for positive arguments.
///
/// Exact at the zeros `x = 1` and `x = 2`; elsewhere accurate to better than
/// `1e-13` relative (Stirling series with a product shift below `x = 13`).
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(lgamma_raw(x))
}

/// `Gamma(a) / Gamma(b)` via a log-gamma difference.
///
/// For large nearly-equal arguments the ratio behaves like
/// `a^{a-b}` and stays representable long after the individual
/// gamma values have overflowed.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::Domain(format!(
            "gamma_ratio requires positive arguments, got ({a}, {b})"
        )));
    }
    let value = (lgamma_raw(a) - lgamma_raw(b)).exp();
    if !value.is_finite() {
        return Err(Error::Overflow(format!(
            "gamma ratio Gamma({a})/Gamma({b}) is not representable"
        )));
    }
    Ok(value)
}

/// Degree-1 Jacobi polynomial, the closed form used as the recurrence base.
fn jacobi_p1(w: WeightExponents, x: f64) -> f64 {
    0.5 * (w.sum() + 2.0) * x + 0.5 * (w.gamma() - w.beta())
}

/// Advances the three-term recurrence one degree: given `P_{j-1}` and `P_j`
/// returns `P_{j+1}` (valid for `j >= 1`; the `j = 0` step is degenerate when
/// `gamma + beta = -1`, which is why degrees 0 and 1 use closed forms).
#[inline]
fn jacobi_step(j: usize, w: WeightExponents, x: f64, p_prev: f64, p: f64) -> f64 {
    let jf = j as f64;
    let s = w.sum();
    let t = 2.0 * jf + s;
    let a1 = 2.0 * (jf + 1.0) * (jf + s + 1.0) * t;
    let a2 = (t + 1.0) * (w.gamma() - w.beta()) * (w.gamma() + w.beta());
    let a3 = t * (t + 1.0) * (t + 2.0);
    let a4 = 2.0 * (jf + w.gamma()) * (jf + w.beta()) * (t + 2.0);
    ((a2 + a3 * x) * p - a4 * p_prev) / a1
}

/// Evaluates `P_n^{gamma,beta}(x)` by the ascending three-term recurrence.
pub fn jacobi_eval(n: usize, w: WeightExponents, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p_prev = 1.0;
    let mut p = jacobi_p1(w, x);
    for j in 1..n {
        let p_next = jacobi_step(j, w, x, p_prev, p);
        p_prev = p;
        p = p_next;
    }
    p
}

/// Evaluates all degrees `0..=n_max` at a single point in one recurrence pass.
pub fn jacobi_eval_all(n_max: usize, w: WeightExponents, x: f64) -> Vec<f64> {
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(1.0);
    if n_max == 0 {
        return values;
    }
    values.push(jacobi_p1(w, x));
    for j in 1..n_max {
        let p_next = jacobi_step(j, w, x, values[j - 1], values[j]);
        values.push(p_next);
    }
    values
}

/// `l`-th derivative of `P_n^{gamma,beta}` via the index-shift identity
/// `d^l/dx^l P_n^{g,b} = d_{n,l} P_{n-l}^{g+l,b+l}` with
/// `d_{n,l} = G(n+g+b+l+1) / (2^l G(n+g+b+1))`. Zero for `n < l`.
pub fn jacobi_deriv(n: usize, w: WeightExponents, x: f64, l: usize) -> f64 {
    assert!(l >= 1, "jacobi_deriv requires l >= 1");
    if n < l {
        return 0.0;
    }
    let nf = n as f64;
    let s = w.sum();
    let d = if l <= 20 {
        let mut prod = 1.0;
        for i in 1..=l {
            prod *= 0.5 * (nf + s + i as f64);
        }
        prod
    } else {
        let lf = l as f64;
        ((lgamma_raw(nf + s + lf + 1.0) - lgamma_raw(nf + s + 1.0)) - lf * std::f64::consts::LN_2)
            .exp()
    };
    d * jacobi_eval(n - l, w.shifted(l as f64), x)
}

/// Squared weighted norm `h_n^{gamma,beta}` of `P_n^{gamma,beta}`.
///
/// The swap symmetry `h_n^{g,b} = h_n^{b,g}` holds bit-exactly: every
/// appearance of the exponents is either a commutative sum or a symmetric
/// pair of log-gamma terms.
pub fn jacobi_norm(n: usize, w: WeightExponents) -> f64 {
    let s = w.sum();
    let nf = n as f64;
    let scale = (s + 1.0).exp2() / (2.0 * nf + s + 1.0);
    if n == 0 {
        // Rewrite with G(g+b+2) so the formula stays in the positive-argument
        // domain when g+b+1 <= 0.
        let ln = lgamma_raw(w.gamma() + 1.0) + lgamma_raw(w.beta() + 1.0) - lgamma_raw(s + 2.0);
        return (s + 1.0).exp2() * ln.exp();
    }
    let ln = lgamma_raw(nf + w.gamma() + 1.0) + lgamma_raw(nf + w.beta() + 1.0)
        - lgamma_raw(nf + s + 1.0)
        - lgamma_raw(nf + 1.0);
    scale * ln.exp()
}

/// Coefficients of `P_n^{g,b}` in the raised family `P^{g+1,b+1}`.
pub fn connection_coeffs(n: usize, w: WeightExponents) -> ConnectionCoefficients {
    let s = w.sum();
    if n == 0 {
        return ConnectionCoefficients {
            a: 0.0,
            b: 0.0,
            c: 1.0,
        };
    }
    let nf = n as f64;
    let t = 2.0 * nf + s;
    let diff = w.gamma() - w.beta();
    let a = if n == 1 {
        0.0
    } else {
        -(nf + w.gamma()) * (nf + w.beta()) / (t * (t + 1.0))
    };
    ConnectionCoefficients {
        a,
        b: diff * (nf + s + 1.0) / (t * (t + 2.0)),
        c: (nf + s + 1.0) * (nf + s + 2.0) / ((t + 1.0) * (t + 2.0)),
    }
}

/// Coefficients `(A, B, C)` of the derivative relation
/// `P_n^{g,b} = A d/dx P_{n-1}^{g,b} + B d/dx P_n^{g,b} + C d/dx P_{n+1}^{g,b}`.
pub fn derivative_relation_coeffs(n: usize, w: WeightExponents) -> (f64, f64, f64) {
    let s = w.sum();
    if n == 0 {
        return (0.0, 0.0, 2.0 / (s + 2.0));
    }
    let nf = n as f64;
    let t = 2.0 * nf + s;
    // A multiplies d/dx P_{n-1}, which vanishes when n = 1; any finite value
    // works there, and the formula's (n+s) factor can hit zero at n = 1.
    let a = if nf + s == 0.0 {
        0.0
    } else {
        -2.0 * (nf + w.gamma()) * (nf + w.beta()) / ((nf + s) * t * (t + 1.0))
    };
    let b = 2.0 * (w.gamma() - w.beta()) / (t * (t + 2.0));
    let c = 2.0 * (nf + s + 1.0) / ((t + 1.0) * (t + 2.0));
    (a, b, c)
}

/// The normalized projections `X_k^n = (P_k^{g+1,b+1}, P_n^{g,b})_w / h_n^{g,b}`
/// for `k = n ..= k_max`, generated by the two-step recurrence
/// `X_n^n = 1/c_n`, `X_{n+1}^n = -(b_{n+1}/c_{n+1}) X_n^n`,
/// `X_{k+2}^n = -(b_{k+2}/c_{k+2}) X_{k+1}^n - (a_{k+2}/c_{k+2}) X_k^n`.
///
/// The whole sequence stays bounded by `max(|X_n^n|, |X_{n+1}^n|)`.
pub fn xkn_sequence(n: usize, w: WeightExponents, k_max: usize) -> Vec<f64> {
    assert!(k_max >= n, "xkn_sequence requires k_max >= n");
    let mut xs = Vec::with_capacity(k_max - n + 1);
    xs.push(1.0 / connection_coeffs(n, w).c);
    if k_max == n {
        return xs;
    }
    let cc = connection_coeffs(n + 1, w);
    xs.push(-(cc.b / cc.c) * xs[0]);
    for k in n..=k_max - 2 {
        let cc = connection_coeffs(k + 2, w);
        let p = -cc.b / cc.c;
        let q = -cc.a / cc.c;
        let next = p * xs[k + 1 - n] + q * xs[k - n];
        xs.push(next);
    }
    xs
}
