//! Target functions, the sample grid, and the least-squares index `J`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::circuit::{fhat, CircuitParams};
use crate::error::{Error, Result};

/// A function to approximate on `[-x₀, x₀]`.
#[derive(Clone)]
pub enum TargetFunction {
    /// `x²`
    Quadratic,
    /// `exp(-x²)`
    Gaussian,
    /// `tanh(x)`
    Sigmoid,
    /// `Σ c_k x^k`, coefficients in ascending order.
    Polynomial(Vec<f64>),
    /// Arbitrary in-process function, e.g. for self-fit checks.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl TargetFunction {
    pub fn custom(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        TargetFunction::Custom(Arc::new(f))
    }

    /// The stable identifier used on the command line.
    pub fn id(&self) -> String {
        match self {
            TargetFunction::Quadratic => "quadratic".into(),
            TargetFunction::Gaussian => "gaussian".into(),
            TargetFunction::Sigmoid => "sigmoid".into(),
            TargetFunction::Polynomial(c) => {
                let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("poly:{}", parts.join(","))
            }
            TargetFunction::Custom(_) => "custom".into(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            TargetFunction::Quadratic => x * x,
            TargetFunction::Gaussian => (-x * x).exp(),
            TargetFunction::Sigmoid => x.tanh(),
            TargetFunction::Polynomial(c) => c.iter().rev().fold(0.0, |acc, &c| acc * x + c),
            TargetFunction::Custom(f) => f(x),
        }
    }
}

impl fmt::Debug for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TargetFunction({})", self.id())
    }
}

impl FromStr for TargetFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "quadratic" => Ok(TargetFunction::Quadratic),
            "gaussian" => Ok(TargetFunction::Gaussian),
            "sigmoid" => Ok(TargetFunction::Sigmoid),
            other => {
                let coeffs = other
                    .strip_prefix("poly:")
                    .ok_or_else(|| Error::UnknownTarget(other.into()))?;
                let parsed: Result<Vec<f64>> = coeffs
                    .split(',')
                    .map(|c| match c.trim().parse::<f64>() {
                        Ok(v) if v.is_finite() => Ok(v),
                        _ => Err(Error::UnknownTarget(other.into())),
                    })
                    .collect();
                Ok(TargetFunction::Polynomial(parsed?))
            }
        }
    }
}

/// Uniform, endpoint-inclusive sample points on `[-x₀, x₀]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleGrid {
    points: Vec<f64>,
    x0: f64,
}

impl SampleGrid {
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }
}

pub fn make_grid(n: usize, x0: f64) -> Result<SampleGrid> {
    if n < 2 {
        return Err(Error::GridTooSmall(n));
    }
    if !(x0.is_finite() && x0 > 0.0) {
        return Err(Error::GridHalfWidth(x0));
    }
    let step = 2.0 * x0 / (n - 1) as f64;
    let mut points: Vec<f64> = (0..n).map(|k| -x0 + k as f64 * step).collect();
    // pin the endpoints exactly
    points[n - 1] = x0;
    Ok(SampleGrid { points, x0 })
}

fn residuals<'a>(
    params: &'a CircuitParams,
    target: &'a TargetFunction,
    grid: &'a SampleGrid,
) -> impl Iterator<Item = f64> + 'a {
    grid.points
        .iter()
        .map(move |&x| target.eval(x) - fhat(params, x))
}

/// `J = Σ_k (f(x_k) - f̂(x_k))²`, unnormalized.
pub fn performance_index(
    params: &CircuitParams,
    target: &TargetFunction,
    grid: &SampleGrid,
) -> f64 {
    residuals(params, target, grid).map(|r| r * r).sum()
}

/// `ε = max_k |f(x_k) - f̂(x_k)|`.
pub fn max_pointwise_error(
    params: &CircuitParams,
    target: &TargetFunction,
    grid: &SampleGrid,
) -> f64 {
    residuals(params, target, grid)
        .map(f64::abs)
        .fold(0.0, f64::max)
}
