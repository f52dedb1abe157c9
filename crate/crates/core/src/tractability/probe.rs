//! Heuristic illustration of `(s,t)`-weak tractability: the ratios
//! `ln n(eps, I_d) / (eps^{-s} + d^t)` on a finite grid.
//!
//! A finite table cannot decide a limit, so nothing here feeds the
//! classifier. Cells are counted in parallel; the table keeps grid order
//! (`d` outer, `eps` inner).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::complexity::complexity_i;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeConfig, Mode};
use crate::params::SequencePair;

pub const PROBE_LABEL: &str = "heuristic: finite-grid ratios, not a tractability decision";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeCell {
    pub d: usize,
    pub epsilon: f64,
    /// `n(eps, I_d)`, absent when the cell could not be counted.
    pub n: Option<u64>,
    pub ratio: Option<f64>,
    /// Why the cell is unavailable; empty otherwise.
    pub note: String,
}

fn cell(seq: &SequencePair, s: f64, t: f64, d: usize, eps: f64, mode: Mode, config: &LatticeConfig) -> ProbeCell {
    let n = seq
        .with_dim(d)
        .and_then(|sd| Lattice::with_config(&sd, mode, *config))
        .and_then(|l| complexity_i(&l, eps));
    match n {
        Ok(n) => ProbeCell {
            d,
            epsilon: eps,
            n: Some(n),
            ratio: Some((n as f64).ln() / (eps.powf(-s) + (d as f64).powf(t))),
            note: String::new(),
        },
        Err(e) => ProbeCell { d, epsilon: eps, n: None, ratio: None, note: e.to_string() },
    }
}

/// The ratio table. Per-cell failures (capacity, a list too short for `d`)
/// mark the cell unavailable instead of aborting the table.
pub fn empirical_probe(
    seq: &SequencePair,
    s: f64,
    t: f64,
    eps_grid: &[f64],
    d_grid: &[usize],
    mode: Mode,
    config: &LatticeConfig,
) -> Result<Vec<ProbeCell>> {
    if !(s > 0.0 && t > 0.0) {
        return Err(Error::Domain(format!("(s,t) = ({s},{t}) must be positive")));
    }
    if let Some(e) = eps_grid.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
        return Err(Error::Domain(format!("epsilon = {e} must lie in (0, 1)")));
    }
    if d_grid.contains(&0) {
        return Err(Error::Domain("d must be at least 1".into()));
    }
    let grid: Vec<(usize, f64)> = d_grid.iter().flat_map(|&d| eps_grid.iter().map(move |&e| (d, e))).collect();
    Ok(grid.par_iter().map(|&(d, e)| cell(seq, s, t, d, e, mode, config)).collect())
}
