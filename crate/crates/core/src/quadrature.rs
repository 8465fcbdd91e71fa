//! Gauss-Jacobi quadrature rules for arbitrary weight exponents.
//!
//! An `m`-point rule integrates `p(x) (1-x)^gamma (1+x)^beta` exactly for
//! every polynomial `p` of degree at most `2m - 1`. Nodes are the zeros of
//! `P_m^{gamma,beta}`, obtained as eigenvalues of the symmetric tridiagonal
//! recurrence (Jacobi) matrix; weights come from the squared first components
//! of the normalized eigenvectors scaled by the total weight mass `h_0`
//! (Golub-Welsch). The implicit-QL iteration below tracks only those first
//! components, so building a rule is `O(m^2)` rather than `O(m^3)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::special::{jacobi_norm, WeightExponents};

/// Nodes and weights of a Gauss-Jacobi rule, sorted by ascending node.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    exponents: WeightExponents,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn exponents(&self) -> WeightExponents {
        self.exponents
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn points(&self) -> usize {
        self.nodes.len()
    }

    /// Approximates `integral f(x) (1-x)^gamma (1+x)^beta dx` over `(-1, 1)`
    /// by the weighted node sum; exact when `f` is a polynomial of degree
    /// `<= 2 points - 1`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Implicit-QL eigenvalue iteration for a symmetric tridiagonal matrix,
/// accumulating only the first component of each eigenvector in `z`.
///
/// `d` holds the diagonal, `e[i]` the coupling between rows `i` and `i+1`
/// (`e[n-1]` is workspace). On success `d` contains the eigenvalues (unsorted)
/// and `z[i]` the first component of the corresponding unit eigenvector.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 64 {
                return Err(Error::NonConvergence(format!(
                    "QL iteration stalled at eigenvalue {l} of {n}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Rotation underflow: deflate and restart this eigenvalue.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Recurrence (Jacobi) matrix of the orthonormal Jacobi polynomial family:
/// diagonal entries and squared off-diagonal couplings.
fn recurrence_matrix(n: usize, w: WeightExponents) -> (Vec<f64>, Vec<f64>) {
    let (g, b) = (w.gamma(), w.beta());
    let s = w.sum();
    let mut diag = Vec::with_capacity(n);
    diag.push((b - g) / (s + 2.0));
    for j in 1..n {
        let t = 2.0 * j as f64 + s;
        diag.push((b * b - g * g) / (t * (t + 2.0)));
    }
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for j in 1..n {
        let jf = j as f64;
        let t = 2.0 * jf + s;
        let sq = if j == 1 {
            // The generic formula has a removable 0/0 at gamma+beta = -1;
            // the (j+s) and (2j+s-1) factors cancel at j = 1.
            4.0 * (1.0 + g) * (1.0 + b) / ((s + 2.0) * (s + 2.0) * (s + 3.0))
        } else {
            4.0 * jf * (jf + g) * (jf + b) * (jf + s) / (t * t * (t + 1.0) * (t - 1.0))
        };
        off.push(sq.sqrt());
    }
    (diag, off)
}

fn build_rule(points: usize, w: WeightExponents) -> Result<QuadratureRule> {
    let (mut d, off) = recurrence_matrix(points, w);
    let mut e = vec![0.0; points];
    e[..points - 1].copy_from_slice(&off);
    let mut z = vec![0.0; points];
    z[0] = 1.0;
    tridiagonal_ql(&mut d, &mut e, &mut z)?;

    let h0 = jacobi_norm(0, w);
    let mut pairs: Vec<(f64, f64)> = d
        .iter()
        .zip(&z)
        .map(|(&x, &zi)| (x, h0 * zi * zi))
        .collect();
    pairs.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).expect("non-NaN nodes"));

    for pair in &pairs {
        if !(pair.0 > -1.0 && pair.0 < 1.0) || !(pair.1 > 0.0) {
            return Err(Error::NonConvergence(format!(
                "degenerate node/weight ({}, {}) for {points}-point rule with exponents ({}, {})",
                pair.0,
                pair.1,
                w.gamma(),
                w.beta()
            )));
        }
    }
    Ok(QuadratureRule {
        exponents: w,
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    })
}

/// Key with exponents rounded to 15 significant digits, so that values that
/// print identically share a cache slot.
fn cache_key(points: usize, w: WeightExponents) -> (usize, u64, u64) {
    fn round15(x: f64) -> u64 {
        let r: f64 = format!("{x:.14e}").parse().expect("roundtrip");
        r.to_bits()
    }
    (points, round15(w.gamma()), round15(w.beta()))
}

fn cache() -> &'static RwLock<HashMap<(usize, u64, u64), Arc<QuadratureRule>>> {
    static CACHE: OnceLock<RwLock<HashMap<(usize, u64, u64), Arc<QuadratureRule>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Returns the `points`-point Gauss-Jacobi rule for the weight `w`.
///
/// Rules are cached; concurrent callers may race to build the same rule but
/// all observe one coherent stored copy.
pub fn gauss_jacobi(points: usize, w: WeightExponents) -> Result<Arc<QuadratureRule>> {
    if points == 0 {
        return Err(Error::InvalidInput(
            "a quadrature rule needs at least one point".into(),
        ));
    }
    let key = cache_key(points, w);
    if let Some(rule) = cache().read().expect("cache lock").get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(build_rule(points, w)?);
    let mut map = cache().write().expect("cache lock");
    Ok(map.entry(key).or_insert(rule).clone())
}
