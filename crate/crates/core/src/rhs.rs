//! Right-hand sides `f(x) = (1-x)^p (1+x)^q g(x)` and the registry of named
//! forcing terms used by the harness.
//!
//! The boundary factors are never sampled: projection absorbs them into the
//! quadrature weight, so only the bounded factor `g` is evaluated. Interior
//! points where `g` loses smoothness (the kink of `|sin x|`) are declared up
//! front so the projection can split the integral there.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Smoothness information attached to a forcing term, used only to annotate
/// convergence reports with theory-predicted orders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regularity {
    /// Indices independent of the operator: `shifted` in the endpoint-shifted
    /// weighted scale, `weighted` in the plain weighted scale. Infinity for
    /// analytic data.
    Fixed { shifted: f64, weighted: f64 },
    /// `(1-x^2)^beta`-weighted data: indices `min(sigma, sigma*) + 2 beta`
    /// (shifted scale) and one more in the weighted scale.
    BoundaryWeighted { beta: f64 },
    /// No annotation possible.
    Unknown,
}

/// A forcing term `f(x) = (1-x)^p (1+x)^q g(x)` with `g` bounded on `[-1,1]`
/// and smooth away from the listed interior kinks.
#[derive(Clone)]
pub struct RhsSpec {
    id: String,
    left_exponent: f64,
    right_exponent: f64,
    kinks: Vec<f64>,
    smooth: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    regularity: Regularity,
}

impl fmt::Debug for RhsSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RhsSpec")
            .field("id", &self.id)
            .field("left_exponent", &self.left_exponent)
            .field("right_exponent", &self.right_exponent)
            .field("kinks", &self.kinks)
            .field("regularity", &self.regularity)
            .finish()
    }
}

impl RhsSpec {
    pub fn new(
        id: impl Into<String>,
        left_exponent: f64,
        right_exponent: f64,
        kinks: Vec<f64>,
        regularity: Regularity,
        smooth: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(left_exponent > -1.0) || !(right_exponent > -1.0) {
            return Err(Error::Domain(format!(
                "rhs boundary exponents must exceed -1, got ({left_exponent}, {right_exponent})"
            )));
        }
        for pair in kinks.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::InvalidInput(
                    "kinks must be strictly increasing".into(),
                ));
            }
        }
        if kinks.iter().any(|&t| t <= -1.0 || t >= 1.0) {
            return Err(Error::InvalidInput(
                "kinks must lie strictly inside (-1, 1)".into(),
            ));
        }
        Ok(Self {
            id: id.into(),
            left_exponent,
            right_exponent,
            kinks,
            smooth: Arc::new(smooth),
            regularity,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// Exponent `p` of the `(1-x)` boundary factor.
    pub fn left_exponent(&self) -> f64 {
        self.left_exponent
    }

    /// Exponent `q` of the `(1+x)` boundary factor.
    pub fn right_exponent(&self) -> f64 {
        self.right_exponent
    }

    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    pub fn regularity(&self) -> Regularity {
        self.regularity
    }

    /// The bounded factor `g(x)`.
    pub fn smooth_part(&self, x: f64) -> f64 {
        (self.smooth)(x)
    }

    /// Full value `f(x)`; mostly for diagnostics, projection never samples the
    /// boundary factors directly.
    pub fn value(&self, x: f64) -> f64 {
        (1.0 - x).powf(self.left_exponent) * (1.0 + x).powf(self.right_exponent) * (self.smooth)(x)
    }
}

/// Expression forms accepted for custom forcing terms.
#[derive(Debug, Clone, PartialEq)]
enum SmoothExpr {
    Sin,
    Cos,
    Exp,
    Poly(Vec<f64>),
}

impl SmoothExpr {
    fn parse(text: &str) -> Result<Self> {
        match text {
            "sin" => Ok(Self::Sin),
            "cos" => Ok(Self::Cos),
            "exp" => Ok(Self::Exp),
            _ => {
                if let Some(body) = text.strip_prefix("poly:") {
                    let coeffs = body
                        .split(';')
                        .map(|c| {
                            c.trim().parse::<f64>().map_err(|_| {
                                Error::InvalidInput(format!("bad polynomial coefficient {c:?}"))
                            })
                        })
                        .collect::<Result<Vec<f64>>>()?;
                    if coeffs.is_empty() {
                        return Err(Error::InvalidInput("empty polynomial".into()));
                    }
                    Ok(Self::Poly(coeffs))
                } else {
                    Err(Error::InvalidInput(format!(
                        "unknown expression {text:?}; expected sin, cos, exp or poly:c0;c1;..."
                    )))
                }
            }
        }
    }

    fn eval(&self, x: f64) -> f64 {
        match self {
            Self::Sin => x.sin(),
            Self::Cos => x.cos(),
            Self::Exp => x.exp(),
            Self::Poly(coeffs) => coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c),
        }
    }
}

/// Identifiers accepted by [`by_id`].
pub const BUILTIN_IDS: [&str; 3] = ["sin", "abs-sin", "jacobi-weighted:<beta>"];

/// Resolves a forcing-term identifier:
///
/// * `sin` — `f = sin x`, analytic;
/// * `abs-sin` — `f = |sin x|`, one interior kink at `x = 0`;
/// * `jacobi-weighted:<beta>` — `f = (1-x^2)^beta sin x` with `beta > -1`;
/// * `custom:p=<v>,q=<v>,expr=<sin|cos|exp|poly:c0;c1;...>[,kinks=t1;t2;...]`.
pub fn by_id(id: &str) -> Result<RhsSpec> {
    match id {
        "sin" => RhsSpec::new(
            "sin",
            0.0,
            0.0,
            vec![],
            Regularity::Fixed {
                shifted: f64::INFINITY,
                weighted: f64::INFINITY,
            },
            f64::sin,
        ),
        "abs-sin" => RhsSpec::new(
            "abs-sin",
            0.0,
            0.0,
            vec![0.0],
            Regularity::Fixed {
                shifted: 1.5,
                weighted: 1.5,
            },
            |x: f64| x.sin().abs(),
        ),
        _ => {
            if let Some(beta_text) = id.strip_prefix("jacobi-weighted:") {
                let beta: f64 = beta_text
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad beta in {id:?}")))?;
                return RhsSpec::new(
                    id,
                    beta,
                    beta,
                    vec![],
                    Regularity::BoundaryWeighted { beta },
                    f64::sin,
                );
            }
            if let Some(body) = id.strip_prefix("custom:") {
                return parse_custom(id, body);
            }
            Err(Error::InvalidInput(format!(
                "unknown rhs id {id:?}; expected one of {BUILTIN_IDS:?} or custom:..."
            )))
        }
    }
}

fn parse_custom(id: &str, body: &str) -> Result<RhsSpec> {
    let mut p = None;
    let mut q = None;
    let mut expr = None;
    let mut kinks = Vec::new();
    for field in body.split(',') {
        let (key, value) = field.split_once('=').ok_or_else(|| {
            Error::InvalidInput(format!("custom rhs field {field:?} is not key=value"))
        })?;
        match key.trim() {
            "p" => {
                p = Some(
                    value
                        .trim()
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidInput(format!("bad exponent p={value:?}")))?,
                )
            }
            "q" => {
                q = Some(
                    value
                        .trim()
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidInput(format!("bad exponent q={value:?}")))?,
                )
            }
            "expr" => expr = Some(SmoothExpr::parse(value.trim())?),
            "kinks" => {
                kinks = value
                    .split(';')
                    .map(|t| {
                        t.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::InvalidInput(format!("bad kink {t:?}")))
                    })
                    .collect::<Result<Vec<f64>>>()?;
            }
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown custom rhs field {other:?}"
                )))
            }
        }
    }
    let expr = expr.ok_or_else(|| Error::InvalidInput("custom rhs needs expr=".into()))?;
    RhsSpec::new(
        id,
        p.unwrap_or(0.0),
        q.unwrap_or(0.0),
        kinks,
        Regularity::Unknown,
        move |x| expr.eval(x),
    )
}
