//! Error metrics, reference solutions, empirical convergence rates, and the
//! theory-predicted orders attached to reports.
//!
//! Errors are measured against a fine reference solution of the same scheme
//! (no exact solutions exist for generic data):
//!
//! ```text
//!   E1(N) = | u_ref - u_N |_{w^{-2 sigma, -2 sigma*}},
//!   E2(N) = | u_ref - u_N |_{w^{-sigma, -sigma*}}.
//! ```
//!
//! Since `u = w^{sigma,sigma*} sum c_n P_n^{sigma,sigma*}`, the negative
//! weights cancel: the `E2` integrand reduces to the plain `w^{sigma,sigma*}`
//! norm of the coefficient-difference polynomial (a diagonal sum over
//! `h_n^{sigma,sigma*}`), and the `E1` integrand is the unweighted square of
//! that polynomial, integrated exactly by Gauss-Legendre. Rates are
//! `log2(e_{i-1}/e_i)` along a doubling degree sequence.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::operator::OperatorParams;
use crate::quadrature::gauss_jacobi;
use crate::rhs::{Regularity, RhsSpec};
use crate::solver::{default_quad_points, solve, Method, SpectralSolution};
use crate::special::{jacobi_eval_all, jacobi_norm, WeightExponents};

/// Which weighted norm a report measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorMetric {
    E1,
    E2,
}

impl ErrorMetric {
    pub fn tag(self) -> &'static str {
        match self {
            ErrorMetric::E1 => "E1",
            ErrorMetric::E2 => "E2",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "E1" | "e1" => Some(ErrorMetric::E1),
            "E2" | "e2" => Some(ErrorMetric::E2),
            _ => None,
        }
    }
}

fn check_compatible(sol: &SpectralSolution, reference: &SpectralSolution) -> Result<()> {
    let (a, b) = (sol.params(), reference.params());
    if a.alpha() != b.alpha() || a.theta() != b.theta() || a.mu() != b.mu() {
        return Err(Error::ParameterMismatch(format!(
            "solutions solve different problems: (alpha, theta, mu) = ({}, {}, {}) vs ({}, {}, {})",
            a.alpha(),
            a.theta(),
            a.mu(),
            b.alpha(),
            b.theta(),
            b.mu()
        )));
    }
    if reference.degree() < sol.degree() {
        return Err(Error::ParameterMismatch(format!(
            "reference degree {} is below solution degree {}",
            reference.degree(),
            sol.degree()
        )));
    }
    Ok(())
}

fn coefficient_difference(sol: &SpectralSolution, reference: &SpectralSolution) -> Vec<f64> {
    let mut diff = reference.coefficients().to_vec();
    for (d, c) in diff.iter_mut().zip(sol.coefficients()) {
        *d -= c;
    }
    diff
}

/// `E2`: the `w^{-sigma,-sigma*}` norm of the error, evaluated exactly as a
/// diagonal coefficient sum by orthogonality.
pub fn error_e2(sol: &SpectralSolution, reference: &SpectralSolution) -> Result<f64> {
    check_compatible(sol, reference)?;
    let w = sol.params().trial_weight();
    let total: f64 = coefficient_difference(sol, reference)
        .iter()
        .enumerate()
        .map(|(n, d)| d * d * jacobi_norm(n, w))
        .sum();
    Ok(total.sqrt())
}

/// `E2` through direct quadrature of the weighted integral; an independent
/// path used to cross-check the coefficient formula.
pub fn error_e2_quadrature(sol: &SpectralSolution, reference: &SpectralSolution) -> Result<f64> {
    check_compatible(sol, reference)?;
    let w = sol.params().trial_weight();
    let diff = coefficient_difference(sol, reference);
    let rule = gauss_jacobi(reference.degree() + 1, w)?;
    let total = rule.integrate(|x| {
        let p: f64 = jacobi_eval_all(reference.degree(), w, x)
            .into_iter()
            .zip(&diff)
            .map(|(v, &d)| d * v)
            .sum();
        p * p
    });
    Ok(total.max(0.0).sqrt())
}

/// `E1`: the `w^{-2 sigma,-2 sigma*}` norm of the error; the weight cancels
/// completely, leaving the plain L2 norm of the coefficient-difference
/// polynomial, integrated exactly by a Gauss-Legendre rule.
pub fn error_e1(sol: &SpectralSolution, reference: &SpectralSolution) -> Result<f64> {
    check_compatible(sol, reference)?;
    let w = sol.params().trial_weight();
    let diff = coefficient_difference(sol, reference);
    let legendre = gauss_jacobi(reference.degree() + 1, WeightExponents::new(0.0, 0.0)?)?;
    let total = legendre.integrate(|x| {
        let p: f64 = jacobi_eval_all(reference.degree(), w, x)
            .into_iter()
            .zip(&diff)
            .map(|(v, &d)| d * v)
            .sum();
        p * p
    });
    Ok(total.max(0.0).sqrt())
}

/// `log2` error-reduction rates along a doubling degree sequence.
pub fn rates(errors: &[(usize, f64)]) -> Vec<f64> {
    errors
        .windows(2)
        .map(|pair| (pair[0].1 / pair[1].1).log2())
        .collect()
}

/// Which regularity scale a predicted order refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FSpace {
    /// Data measured in the endpoint-shifted weighted scale.
    WeightedShifted,
    /// Data measured in the plain weighted scale.
    Weighted,
}

/// Theory-predicted convergence exponent for data of regularity `r` in the
/// given scale (pass `f64::INFINITY` for analytic data). Report metadata
/// only; nothing in the solvers depends on it.
pub fn predicted_order(r: f64, alpha: f64, theta: f64, method: Method, space: FSpace) -> f64 {
    let base = match space {
        FSpace::WeightedShifted => (alpha + 1.0).min(r),
        FSpace::Weighted => alpha.min(r),
    };
    match method {
        Method::PetrovGalerkin => base + alpha,
        Method::Galerkin if theta == 0.5 => base + alpha,
        Method::Galerkin => base,
    }
}

/// Trims a label number like `2*beta + 1 = 0.19999999999999996` to `0.2`.
fn fmt_label_number(v: f64) -> String {
    let rounded = (v * 1e6).round() / 1e6;
    format!("{rounded}")
}

/// The predicted-order rows a report carries, mirroring the rate tables:
/// the sharper theory bound, plus (for the non-optimal Galerkin case and for
/// boundary-weighted data) the reference rows the observations track.
pub fn predicted_rows(rhs: &RhsSpec, method: Method, p: &OperatorParams) -> Vec<(String, f64)> {
    let alpha = p.alpha();
    let theta = p.theta();
    let optimal = method == Method::PetrovGalerkin || theta == 0.5;
    let s_min = p.sigma().min(p.sigma_star());

    let theory = |shifted: f64, weighted: f64, method: Method| -> (String, f64) {
        let v_s = predicted_order(shifted, alpha, theta, method, FSpace::WeightedShifted);
        let v_w = predicted_order(weighted, alpha, theta, method, FSpace::Weighted);
        let best = v_s.max(v_w);
        let optimal_here = method == Method::PetrovGalerkin || theta == 0.5;
        let label = if shifted.is_infinite() && weighted.is_infinite() {
            if optimal_here {
                "2alpha+1".into()
            } else {
                "alpha+1".into()
            }
        } else if optimal_here {
            format!("alpha+{}", fmt_label_number(best - alpha))
        } else {
            fmt_label_number(best)
        };
        (label, best)
    };

    match rhs.regularity() {
        Regularity::Fixed { shifted, weighted } => {
            let own = theory(shifted, weighted, method);
            if optimal {
                vec![own]
            } else {
                // Non-optimal Galerkin tables also print the optimal-rate row
                // the observations are compared against.
                let reference = theory(shifted, weighted, Method::PetrovGalerkin);
                vec![reference, own]
            }
        }
        Regularity::BoundaryWeighted { beta } => {
            let r_shifted = s_min + 2.0 * beta;
            let r_weighted = s_min + 2.0 * beta + 1.0;
            let observed = (
                format!(
                    "alpha+min(sigma,sigma*)+{}",
                    fmt_label_number(2.0 * beta + 1.0)
                ),
                alpha + s_min + 2.0 * beta + 1.0,
            );
            let v_s = predicted_order(r_shifted, alpha, theta, method, FSpace::WeightedShifted);
            let v_w = predicted_order(r_weighted, alpha, theta, method, FSpace::Weighted);
            let best = v_s.max(v_w);
            let label = if optimal {
                format!(
                    "alpha+min(sigma,sigma*)+{}",
                    fmt_label_number(best - alpha - s_min)
                )
            } else {
                format!("min(sigma,sigma*)+{}", fmt_label_number(best - s_min))
            };
            let mut rows = vec![observed];
            if (best - rows[0].1).abs() > 1e-12 {
                rows.push((label, best));
            }
            rows
        }
        Regularity::Unknown => vec![],
    }
}

/// One convergence study: a single `(method, alpha, theta, mu, rhs)` cell
/// measured over a doubling list of degrees against one reference degree.
#[derive(Debug, Clone)]
pub struct StudySpec {
    pub method: Method,
    pub alpha: f64,
    pub theta: f64,
    pub mu: f64,
    pub rhs: RhsSpec,
    pub degrees: Vec<usize>,
    pub ref_degree: usize,
    pub metric: ErrorMetric,
    /// Override for the right-hand-side quadrature size; the default
    /// over-resolves with `max(2N, 128)` points.
    pub quad_points: Option<usize>,
}

impl StudySpec {
    pub fn validate(&self) -> Result<()> {
        if self.degrees.is_empty() {
            return Err(Error::InvalidInput("empty degree list".into()));
        }
        for pair in self.degrees.windows(2) {
            if pair[1] != 2 * pair[0] {
                return Err(Error::InvalidInput(format!(
                    "degree list must double at every step, got {} after {}",
                    pair[1], pair[0]
                )));
            }
        }
        let max = *self.degrees.last().unwrap();
        if self.ref_degree < 2 * max {
            return Err(Error::InvalidInput(format!(
                "reference degree {} must be at least twice the largest study degree {max}",
                self.ref_degree
            )));
        }
        Ok(())
    }

    fn quad_for(&self, degree: usize) -> usize {
        match self.quad_points {
            Some(q) => q.max(degree + 1),
            None => default_quad_points(degree),
        }
    }
}

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ReportRow {
    #[serde(rename = "N")]
    pub degree: usize,
    pub error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
}

/// Study outcome: per-degree errors and rates plus summary metadata.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub method: Method,
    pub alpha: f64,
    pub theta: f64,
    pub mu: f64,
    pub rhs_id: String,
    pub metric: ErrorMetric,
    pub ref_degree: usize,
    pub rows: Vec<ReportRow>,
    pub averaged_order: Option<f64>,
    pub predicted_orders: Vec<(String, f64)>,
}

fn fmt_sig6(x: f64) -> String {
    format!("{x:.5e}")
}

impl ConvergenceReport {
    /// CSV with one row per degree and trailing summary rows; all numbers at
    /// six significant digits (full precision lives in the JSON mirror).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,alpha,theta,mu,rhs,N,error_metric,error,rate\n");
        let prefix = format!(
            "{},{},{},{},{}",
            self.method.tag(),
            fmt_sig6(self.alpha),
            fmt_sig6(self.theta),
            fmt_sig6(self.mu),
            self.rhs_id
        );
        for row in &self.rows {
            let rate = row.rate.map(fmt_sig6).unwrap_or_default();
            out.push_str(&format!(
                "{prefix},{},{},{},{rate}\n",
                row.degree,
                self.metric.tag(),
                fmt_sig6(row.error)
            ));
        }
        if let Some(avg) = self.averaged_order {
            out.push_str(&format!("{prefix},,averaged_order,{},\n", fmt_sig6(avg)));
        }
        for (label, value) in &self.predicted_orders {
            out.push_str(&format!(
                "{prefix},,predicted:{label},{},\n",
                fmt_sig6(*value)
            ));
        }
        out
    }

    /// JSON mirror with full-precision numbers.
    pub fn to_json(&self) -> String {
        #[derive(serde::Serialize)]
        struct Pred<'a> {
            label: &'a str,
            value: f64,
        }
        #[derive(serde::Serialize)]
        struct Mirror<'a> {
            method: &'a str,
            alpha: f64,
            theta: f64,
            mu: f64,
            rhs: &'a str,
            error_metric: &'a str,
            #[serde(rename = "ref_N")]
            ref_degree: usize,
            rows: &'a [ReportRow],
            #[serde(skip_serializing_if = "Option::is_none")]
            averaged_order: Option<f64>,
            predicted_orders: Vec<Pred<'a>>,
        }
        let mirror = Mirror {
            method: self.method.tag(),
            alpha: self.alpha,
            theta: self.theta,
            mu: self.mu,
            rhs: &self.rhs_id,
            error_metric: self.metric.tag(),
            ref_degree: self.ref_degree,
            rows: &self.rows,
            averaged_order: self.averaged_order,
            predicted_orders: self
                .predicted_orders
                .iter()
                .map(|(label, value)| Pred {
                    label,
                    value: *value,
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&mirror).expect("report serializes");
        text.push('\n');
        text
    }

    /// Plain-text table the CLI prints: errors with three significant digits
    /// and rates with two decimals.
    pub fn to_display(&self) -> String {
        let mut out = format!(
            "{} alpha={} theta={} mu={} rhs={} metric={} ref_N={}\n",
            self.method.tag(),
            self.alpha,
            self.theta,
            self.mu,
            self.rhs_id,
            self.metric.tag(),
            self.ref_degree
        );
        out.push_str("     N      error   rate\n");
        for row in &self.rows {
            let rate = row
                .rate
                .map(|r| format!("{r:7.2}"))
                .unwrap_or_else(|| "      -".into());
            out.push_str(&format!("{:6}   {:8.2e}{rate}\n", row.degree, row.error));
        }
        if let Some(avg) = self.averaged_order {
            out.push_str(&format!("averaged order: {avg:.2}\n"));
        }
        for (label, value) in &self.predicted_orders {
            out.push_str(&format!("predicted {label}: {value:.2}\n"));
        }
        out
    }
}

type SolutionKey = (Method, u64, u64, u64, String, usize, usize);

/// Runs studies and caches every computed solution keyed by
/// `(method, alpha, theta, mu, rhs, N, quadrature points)`, so reference
/// solutions are shared across metrics and repeated cells.
#[derive(Default)]
pub struct StudyRunner {
    cache: RwLock<HashMap<SolutionKey, Arc<SpectralSolution>>>,
}

impl StudyRunner {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the cached solution for the cell, solving on a miss.
    pub fn solution(
        &self,
        method: Method,
        alpha: f64,
        theta: f64,
        mu: f64,
        rhs: &RhsSpec,
        degree: usize,
        quad_points: usize,
    ) -> Result<Arc<SpectralSolution>> {
        let key = (
            method,
            alpha.to_bits(),
            theta.to_bits(),
            mu.to_bits(),
            rhs.id().to_string(),
            degree,
            quad_points,
        );
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let params = OperatorParams::new(alpha, theta, mu)?;
        let solution = Arc::new(solve(degree, &params, rhs, &*method.scheme(), quad_points)?);
        let mut map = self.cache.write().expect("cache lock");
        Ok(map.entry(key).or_insert(solution).clone())
    }

    /// Computes the reference solution once, then each study degree, the
    /// errors, rates, averaged order, and predicted-order annotations.
    pub fn run_study(&self, spec: &StudySpec) -> Result<ConvergenceReport> {
        spec.validate()?;
        let reference = self.solution(
            spec.method,
            spec.alpha,
            spec.theta,
            spec.mu,
            &spec.rhs,
            spec.ref_degree,
            spec.quad_for(spec.ref_degree),
        )?;

        let mut errors = Vec::with_capacity(spec.degrees.len());
        for &n in &spec.degrees {
            let sol = self.solution(
                spec.method,
                spec.alpha,
                spec.theta,
                spec.mu,
                &spec.rhs,
                n,
                spec.quad_for(n),
            )?;
            let error = match spec.metric {
                ErrorMetric::E1 => error_e1(&sol, &reference)?,
                ErrorMetric::E2 => error_e2(&sol, &reference)?,
            };
            errors.push((n, error));
        }

        let rate_list = rates(&errors);
        let rows: Vec<ReportRow> = errors
            .iter()
            .enumerate()
            .map(|(i, &(degree, error))| ReportRow {
                degree,
                error,
                rate: if i == 0 { None } else { Some(rate_list[i - 1]) },
            })
            .collect();
        let averaged_order = if rate_list.is_empty() {
            None
        } else {
            Some(rate_list.iter().sum::<f64>() / rate_list.len() as f64)
        };

        let params = OperatorParams::new(spec.alpha, spec.theta, spec.mu)?;
        Ok(ConvergenceReport {
            method: spec.method,
            alpha: spec.alpha,
            theta: spec.theta,
            mu: spec.mu,
            rhs_id: spec.rhs.id().to_string(),
            metric: spec.metric,
            ref_degree: spec.ref_degree,
            rows,
            averaged_order,
            predicted_orders: predicted_rows(&spec.rhs, spec.method, &params),
        })
    }
}
