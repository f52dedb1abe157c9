//! Information complexities `n(eps, S_d) = min{n : e(n, S_d) <= eps}` with
//! `e(n, S_d) = a_{n+1}(S_d)`, evaluated as strict lattice counts, and the
//! two identities linking the embedding to the Korobov problem.
//!
//! Korobov tolerances are handled through `ln eps`: mapping an embedding
//! tolerance `eps` to `omega^{(eps^{-2} - 1)/2}` underflows `f64` already
//! for moderate `eps`, while its logarithm does not.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Comparison, Lattice, Mode, WeightValue};
use crate::spectra::check_omega;

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("epsilon = {eps} must lie in (0, 1)")))
    }
}

/// `n(eps, I_d) = #{k : w(k) < eps^{-2} - 1}`. In exact mode the threshold
/// is formed exactly from the rational value of `eps`.
pub fn complexity_i(lattice: &Lattice, eps: f64) -> Result<u64> {
    check_eps(eps)?;
    let t = match lattice.mode() {
        Mode::Float => WeightValue::Float(eps.powi(-2) - 1.0),
        Mode::Exact => {
            let e = WeightValue::exact_from_f64(eps).and_then(|v| v.as_exact().cloned()).expect("finite");
            let one = num_rational::BigRational::from_integer(1.into());
            WeightValue::Exact((&e * &e).recip() - one)
        }
    };
    lattice.count(&t, Comparison::Strict)
}

/// `n(eps, APP_d) = #{k : w(k) < ln(eps^{-2}) / ln(omega^{-1})}`.
pub fn complexity_app(lattice: &Lattice, omega: f64, eps: f64) -> Result<u64> {
    check_eps(eps)?;
    complexity_app_ln(lattice, omega, eps.ln())
}

/// As [`complexity_app`], taking `ln eps < 0`.
pub fn complexity_app_ln(lattice: &Lattice, omega: f64, ln_eps: f64) -> Result<u64> {
    check_omega(omega)?;
    if !(ln_eps < 0.0) || ln_eps.is_infinite() {
        return Err(Error::Domain(format!("ln epsilon = {ln_eps} must be finite and negative")));
    }
    let t = (-2.0 * ln_eps) / (-omega.ln());
    lattice.count_f64(t, Comparison::Strict)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BridgeDirection {
    /// `n(eps, APP_d) = n(eps_I, I_d)`, `eps_I = (ln eps^{-2} / ln omega^{-1} + 1)^{-1/2}`.
    KorobovToEmbedding,
    /// `n(eps, I_d) = n(eps_APP, APP_d)`, `eps_APP = omega^{(eps^{-2} - 1)/2}`.
    EmbeddingToKorobov,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BridgeReport {
    pub direction: BridgeDirection,
    pub omega: f64,
    pub epsilon: f64,
    /// The mapped tolerance; may underflow to 0 for the Korobov side.
    pub epsilon_mapped: f64,
    pub ln_epsilon_mapped: f64,
    /// Complexity of the problem `epsilon` belongs to.
    pub n_source: u64,
    /// Complexity of the other problem at `epsilon_mapped`.
    pub n_target: u64,
    pub equal_counts: bool,
}

/// `eps_I = (ln(eps^{-2}) / ln(omega^{-1}) + 1)^{-1/2}`.
pub fn korobov_to_embedding_eps(omega: f64, eps: f64) -> f64 {
    ((-2.0 * eps.ln()) / (-omega.ln()) + 1.0).sqrt().recip()
}

/// `ln eps_APP = ((eps^{-2} - 1) / 2) ln omega`.
pub fn embedding_to_korobov_ln_eps(omega: f64, eps: f64) -> f64 {
    0.5 * (eps.powi(-2) - 1.0) * omega.ln()
}

pub fn bridge_app_to_i(lattice: &Lattice, omega: f64, eps: f64) -> Result<BridgeReport> {
    check_omega(omega)?;
    check_eps(eps)?;
    let mapped = korobov_to_embedding_eps(omega, eps);
    let n_source = complexity_app(lattice, omega, eps)?;
    let n_target = complexity_i(lattice, mapped)?;
    Ok(BridgeReport {
        direction: BridgeDirection::KorobovToEmbedding,
        omega,
        epsilon: eps,
        epsilon_mapped: mapped,
        ln_epsilon_mapped: mapped.ln(),
        n_source,
        n_target,
        equal_counts: n_source == n_target,
    })
}

pub fn bridge_i_to_app(lattice: &Lattice, omega: f64, eps: f64) -> Result<BridgeReport> {
    check_omega(omega)?;
    check_eps(eps)?;
    let ln_mapped = embedding_to_korobov_ln_eps(omega, eps);
    let n_source = complexity_i(lattice, eps)?;
    let n_target = complexity_app_ln(lattice, omega, ln_mapped)?;
    Ok(BridgeReport {
        direction: BridgeDirection::EmbeddingToKorobov,
        omega,
        epsilon: eps,
        epsilon_mapped: ln_mapped.exp(),
        ln_epsilon_mapped: ln_mapped,
        n_source,
        n_target,
        equal_counts: n_source == n_target,
    })
}
