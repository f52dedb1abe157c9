//! Approximation numbers of the embedding, Korobov eigenvalues, and the
//! diagnostics for the asymptotic constant `lim n^{g_d(b)} a_n`.
//!
//! Both spectra are read off the same ordered weights `w_1 <= w_2 <= ...`:
//! `a_n = (1 + w_n)^{-1/2}` and `lambda_{d,n} = omega^{w_n}`.

use serde::{Deserialize, Serialize};

use crate::ellipsoid::EllipsoidSpec;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, WeightValue};
use crate::params::SequencePair;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub n: u64,
    /// `w_n`, as `f64`.
    pub weight: f64,
    pub a_n: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_n: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
}

pub(crate) fn check_omega(omega: f64) -> Result<()> {
    if omega > 0.0 && omega < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("omega = {omega} must lie in (0, 1)")))
    }
}

fn width_from_weight(w: f64) -> f64 {
    (1.0 + w).sqrt().recip()
}

fn eigenvalue_from_weight(omega: f64, w: f64) -> f64 {
    (w * omega.ln()).exp()
}

/// `a_n(I_d) = (1 + w_n)^{-1/2}`.
pub fn approx_number(lattice: &Lattice, n: u64) -> Result<f64> {
    Ok(width_from_weight(lattice.kth_smallest_weight(n)?.to_f64()))
}

/// `lambda_{d,n} = omega^{w_n}`.
pub fn korobov_eigenvalue(lattice: &Lattice, omega: f64, n: u64) -> Result<f64> {
    check_omega(omega)?;
    Ok(eigenvalue_from_weight(omega, lattice.kth_smallest_weight(n)?.to_f64()))
}

/// `w_n` for every `n` in `ns` (any order), enumerating once when the
/// largest `n` is within the heap limit and bisecting otherwise.
pub fn ordered_weights(lattice: &Lattice, ns: &[u64]) -> Result<Vec<WeightValue>> {
    if ns.contains(&0) {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let Some(&n_max) = ns.iter().max() else {
        return Ok(Vec::new());
    };
    if n_max > lattice.config().heap_limit {
        return ns.iter().map(|&n| lattice.kth_smallest_weight(n)).collect();
    }
    let mut idx: Vec<usize> = (0..ns.len()).collect();
    idx.sort_by_key(|&i| ns[i]);
    let mut out = vec![WeightValue::Float(0.0); ns.len()];
    let mut pending = idx.into_iter().peekable();
    let mut cum = 0u64;
    for item in lattice.increasing() {
        let (w, m) = item?;
        cum += m;
        while let Some(&i) = pending.peek() {
            if ns[i] > cum {
                break;
            }
            out[i] = w.clone();
            pending.next();
        }
        if pending.peek().is_none() {
            break;
        }
    }
    Ok(out)
}

/// `a_n` (and `lambda_n` when `omega` is given) over a grid of `n`.
pub fn spectrum(lattice: &Lattice, ns: &[u64], omega: Option<f64>) -> Result<Vec<SpectrumResult>> {
    if let Some(o) = omega {
        check_omega(o)?;
    }
    let weights = ordered_weights(lattice, ns)?;
    Ok(ns
        .iter()
        .zip(weights)
        .map(|(&n, w)| {
            let w = w.to_f64();
            SpectrumResult {
                n,
                weight: w,
                a_n: width_from_weight(w),
                lambda_n: omega.map(|o| eigenvalue_from_weight(o, w)),
                omega,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticRow {
    pub n: u64,
    pub a_n: f64,
    /// `n^{g_d(b)} a_n / vol(B_{a,2b})^{g_d(b)}`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceDiagnostic {
    pub g_d: f64,
    /// `g_d(b) ln vol(B^d_{a,2b})`.
    pub log_constant: f64,
    /// `exp(log_constant)`; zero or infinite when out of `f64` range.
    pub constant: f64,
    pub rows: Vec<DiagnosticRow>,
}

/// `vol(B^d_{a,2b})^{g_d(b)}` in natural log.
pub fn log_sharp_constant(seq: &SequencePair) -> Result<f64> {
    Ok(seq.g_d() * EllipsoidSpec::doubled(seq, 1.0)?.log_volume()?)
}

/// Powers of two `1, 2, 4, ...` up to `n_max`.
pub fn geometric_grid(n_max: u64) -> Vec<u64> {
    std::iter::successors(Some(1u64), |&n| n.checked_mul(2)).take_while(|&n| n <= n_max).collect()
}

/// Ratios `n^{g_d(b)} a_n / vol(B_{a,2b})^{g_d(b)}` on an increasing grid.
/// They tend to 1; nothing is claimed about monotonicity.
pub fn equivalence_diagnostic(lattice: &Lattice, n_grid: &[u64]) -> Result<EquivalenceDiagnostic> {
    if n_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("n grid must be strictly increasing".into()));
    }
    let seq = lattice.seq();
    let g = seq.g_d();
    let log_constant = log_sharp_constant(seq)?;
    let weights = ordered_weights(lattice, n_grid)?;
    let rows = n_grid
        .iter()
        .zip(weights)
        .map(|(&n, w)| {
            let a_n = width_from_weight(w.to_f64());
            let ratio = (g * (n as f64).ln() + a_n.ln() - log_constant).exp();
            DiagnosticRow { n, a_n, ratio }
        })
        .collect();
    Ok(EquivalenceDiagnostic { g_d: g, log_constant, constant: log_constant.exp(), rows })
}

/// Relative slack granted to the bound evaluation (a `pow`, a `ln` and an
/// `exp`) when comparing against the integer count.
pub const SANDWICH_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SandwichRow {
    pub m: u64,
    pub lower: f64,
    pub count: u64,
    pub upper: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub shift_constant: f64,
    pub exponent: f64,
    pub volume: f64,
    pub rows: Vec<SandwichRow>,
    pub violations: usize,
}

/// Checks `(m - C)_+^{p/(2g)} V <= C(m) <= (m + C)^{p/(2g)} V` with
/// `C = shift_constant`, `p = p_d`, `g = g_d(b)`, `V = vol(B^d_{a,2b})`.
///
/// The volume factor appears on both sides: the upper bound is the volume
/// of the dilated ellipsoid that contains the union of unit cubes centred at
/// the counted points.
pub fn sandwich_check(lattice: &Lattice, ms: &[u64]) -> Result<SandwichReport> {
    let seq = lattice.seq();
    let c = seq.shift_constant();
    let exponent = seq.p_d() / (2.0 * seq.g_d());
    let log_vol = EllipsoidSpec::doubled(seq, 1.0)?.log_volume()?;
    let bound = |r: f64| if r > 0.0 { (exponent * r.ln() + log_vol).exp() } else { 0.0 };
    let mut rows = Vec::with_capacity(ms.len());
    for &m in ms {
        let count = lattice.count_c_m(m)?;
        let lower = bound(m as f64 - c);
        let upper = bound(m as f64 + c);
        let n = count as f64;
        let holds = lower <= n * (1.0 + SANDWICH_SLACK) && n <= upper * (1.0 + SANDWICH_SLACK);
        rows.push(SandwichRow { m, lower, count, upper, holds });
    }
    let violations = rows.iter().filter(|r| !r.holds).count();
    Ok(SandwichReport { shift_constant: c, exponent, volume: log_vol.exp(), rows, violations })
}
