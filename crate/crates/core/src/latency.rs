//! Polynomial latency functions and their closed-form calculus.
//!
//! A latency `l(x) = a_0 + a_1 x + ... + a_k x^k` with all `a_j >= 0` is
//! non-negative, non-decreasing, convex and continuously differentiable on
//! `x >= 0`, and its derivative, marginal-cost transform and antiderivative
//! are again polynomials with closed-form coefficients.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Highest polynomial degree accepted for a latency.
pub const MAX_DEGREE: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatencyError {
    #[error("latency needs at least one coefficient")]
    Empty,
    #[error("negative coefficient a_{index} = {value}")]
    NegativeCoefficient { index: usize, value: f64 },
    #[error("non-finite coefficient a_{index}")]
    NonFiniteCoefficient { index: usize },
    #[error("degree {degree} exceeds the maximum of {MAX_DEGREE}")]
    DegreeTooHigh { degree: usize },
    #[error("latency evaluated at negative load {0}")]
    NegativeArgument(f64),
}

/// Polynomial latency with non-negative coefficients, `coeffs[j]` multiplying `x^j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLatency", into = "RawLatency")]
pub struct LatencyFunction {
    coeffs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawLatency {
    coeffs: Vec<f64>,
}

impl TryFrom<RawLatency> for LatencyFunction {
    type Error = LatencyError;

    fn try_from(raw: RawLatency) -> Result<Self, Self::Error> {
        LatencyFunction::new(raw.coeffs)
    }
}

impl From<LatencyFunction> for RawLatency {
    fn from(f: LatencyFunction) -> Self {
        RawLatency { coeffs: f.coeffs }
    }
}

/// Returns the first violated coefficient rule, if any.
pub fn check_coefficients(coeffs: &[f64]) -> Result<(), LatencyError> {
    if coeffs.is_empty() {
        return Err(LatencyError::Empty);
    }
    if coeffs.len() > MAX_DEGREE + 1 {
        return Err(LatencyError::DegreeTooHigh {
            degree: coeffs.len() - 1,
        });
    }
    for (index, &value) in coeffs.iter().enumerate() {
        if !value.is_finite() {
            return Err(LatencyError::NonFiniteCoefficient { index });
        }
        if value < 0.0 {
            return Err(LatencyError::NegativeCoefficient { index, value });
        }
    }
    Ok(())
}

fn check_argument(x: f64) -> Result<(), LatencyError> {
    // NaN fails the comparison as well
    if x >= 0.0 {
        Ok(())
    } else {
        Err(LatencyError::NegativeArgument(x))
    }
}

impl LatencyFunction {
    pub fn new(coeffs: Vec<f64>) -> Result<Self, LatencyError> {
        check_coefficients(&coeffs)?;
        Ok(LatencyFunction { coeffs })
    }

    /// `l(x) = c`.
    pub fn constant(c: f64) -> Result<Self, LatencyError> {
        Self::new(vec![c])
    }

    /// `l(x) = slope * x`.
    pub fn linear(slope: f64) -> Result<Self, LatencyError> {
        Self::new(vec![0.0, slope])
    }

    /// BPR volume-delay function `t0 * (1 + alpha * (x / capacity)^beta)` with integer `beta`.
    pub fn bpr(free_flow_time: f64, alpha: f64, capacity: f64, beta: usize) -> Result<Self, LatencyError> {
        let mut coeffs = vec![0.0; beta + 1];
        coeffs[0] = free_flow_time;
        coeffs[beta] += free_flow_time * alpha / capacity.powi(beta as i32);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// True when the latency does not depend on the load.
    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(|&a| a == 0.0)
    }

    pub fn eval(&self, x: f64) -> Result<f64, LatencyError> {
        check_argument(x)?;
        Ok(self.value(x))
    }

    pub fn derivative(&self, x: f64) -> Result<f64, LatencyError> {
        check_argument(x)?;
        Ok(self.slope(x))
    }

    /// Exact `∫_0^x l(z) dz`.
    pub fn integral(&self, x: f64) -> Result<f64, LatencyError> {
        check_argument(x)?;
        Ok(self.area(x))
    }

    /// The marginal-cost latency `l(x) + l'(x) x`, whose coefficients are `(j + 1) a_j`.
    pub fn marginal(&self) -> LatencyFunction {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &a)| (j + 1) as f64 * a)
            .collect();
        LatencyFunction { coeffs }
    }

    // Unchecked variants for loads that are non-negative by construction.

    pub(crate) fn value(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &a| acc * x + a)
    }

    pub(crate) fn slope(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (j, &a)| acc * x + j as f64 * a)
    }

    pub(crate) fn area(&self, x: f64) -> f64 {
        let inner = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .fold(0.0, |acc, (j, &a)| acc * x + a / (j + 1) as f64);
        inner * x
    }
}
