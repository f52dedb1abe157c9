//! Generalized ellipsoids `B(t) = {x in R^d : sum_j a_j |x_j|^{e_j} <= t}`.
//!
//! Volumes are computed in log space from `ln Gamma` and only exponentiated
//! on request, so `d` in the hundreds is fine even though the linear value
//! may over- or underflow.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::SequencePair;

fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

fn check_exponents(e: &[f64]) -> Result<()> {
    if e.is_empty() {
        return Err(Error::Domain("empty exponent vector".into()));
    }
    if let Some(bad) = e.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::Domain(format!("exponent {bad} is not a positive finite number")));
    }
    Ok(())
}

fn exp_checked(log_v: f64, what: &str) -> Result<f64> {
    let v = log_v.exp();
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Range(format!("{what} = exp({log_v}) is not representable")))
    }
}

/// `ln vol{x : sum |x_j|^{e_j} <= 1} = d ln 2 + sum ln G(1 + 1/e_j) - ln G(1 + sum 1/e_j)`.
pub fn log_volume_unit_ball(e: &[f64]) -> Result<f64> {
    check_exponents(e)?;
    let inv_sum: f64 = e.iter().map(|v| v.recip()).sum();
    let num: f64 = e.iter().map(|v| ln_gamma(1.0 + v.recip())).sum();
    let log_v = e.len() as f64 * std::f64::consts::LN_2 + num - ln_gamma(1.0 + inv_sum);
    if !log_v.is_finite() {
        return Err(Error::Range(format!("log-Gamma overflow for exponent sum {inv_sum}")));
    }
    Ok(log_v)
}

pub fn volume_unit_ball(e: &[f64]) -> Result<f64> {
    exp_checked(log_volume_unit_ball(e)?, "unit ball volume")
}

/// A generalized ellipsoid with weights `a_j`, exponents `e_j` and radius
/// parameter `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipsoidSpec {
    pub weights: Vec<f64>,
    pub exponents: Vec<f64>,
    pub t: f64,
}

impl EllipsoidSpec {
    pub fn new(weights: Vec<f64>, exponents: Vec<f64>, t: f64) -> Result<Self> {
        if weights.len() != exponents.len() {
            return Err(Error::DimensionMismatch { expected: exponents.len(), got: weights.len() });
        }
        check_exponents(&exponents)?;
        if let Some(bad) = weights.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::Domain(format!("weight {bad} is not a positive finite number")));
        }
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::Domain(format!("radius parameter t = {t} must be positive")));
        }
        Ok(EllipsoidSpec { weights, exponents, t })
    }

    /// `B^d_{a,b}(t)`.
    pub fn from_seq(seq: &SequencePair, t: f64) -> Result<Self> {
        EllipsoidSpec::new(seq.a().to_vec(), seq.b().to_vec(), t)
    }

    /// `B^d_{a,2b}(t)`, the body whose volume fixes the sharp constant.
    pub fn doubled(seq: &SequencePair, t: f64) -> Result<Self> {
        EllipsoidSpec::new(seq.a().to_vec(), seq.b().iter().map(|b| 2.0 * b).collect(), t)
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    /// `ln vol = (sum 1/e_j) ln t - sum (1/e_j) ln a_j + ln vol(unit ball)`.
    pub fn log_volume(&self) -> Result<f64> {
        let inv_sum: f64 = self.exponents.iter().map(|e| e.recip()).sum();
        let jac: f64 = self.weights.iter().zip(&self.exponents).map(|(a, e)| a.ln() / e).sum();
        Ok(inv_sum * self.t.ln() - jac + log_volume_unit_ball(&self.exponents)?)
    }

    pub fn volume(&self) -> Result<f64> {
        exp_checked(self.log_volume()?, "ellipsoid volume")
    }

    /// Half side lengths of the axis-aligned bounding box.
    pub fn half_widths(&self) -> Vec<f64> {
        self.weights.iter().zip(&self.exponents).map(|(a, e)| (self.t / a).powf(e.recip())).collect()
    }

    pub fn gauge(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(self.weights.iter().zip(&self.exponents).zip(x).map(|((a, e), xi)| a * xi.abs().powf(*e)).sum())
    }

    /// Exact comparison of the computed sum against `t`.
    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        self.contains_with_tolerance(x, 0.0)
    }

    /// Accepts points whose gauge exceeds `t` by at most `tol * t`.
    pub fn contains_with_tolerance(&self, x: &[f64], tol: f64) -> Result<bool> {
        Ok(self.gauge(x)? <= self.t + tol * self.t)
    }
}

/// Both sides of the quasi-triangle inequality
/// `(sum a_j |x_j + y_j|^{2b_j})^{1/p} <= (sum a_j |x_j|^{2b_j})^{1/p} + (sum a_j |y_j|^{2b_j})^{1/p}`
/// with `p = p_d`.
pub fn quasi_norm_combine(seq: &SequencePair, x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    let d = seq.dim();
    for v in [x, y] {
        if v.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: v.len() });
        }
    }
    let p_inv = seq.p_d().recip();
    let gauge = |v: &mut dyn Iterator<Item = f64>| -> f64 {
        seq.a().iter().zip(seq.b()).zip(v).map(|((a, b), vi)| a * vi.abs().powf(2.0 * b)).sum::<f64>().powf(p_inv)
    };
    let lhs = gauge(&mut x.iter().zip(y).map(|(a, b)| a + b));
    let rhs = gauge(&mut x.iter().copied()) + gauge(&mut y.iter().copied());
    Ok((lhs, rhs))
}
