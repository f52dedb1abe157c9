//! Information complexity, the identities between the embedding and the
//! Korobov problem, and tractability classification.

pub mod classify;
pub mod complexity;
pub mod probe;

pub use classify::{classify, classify_b_only, Evidence, Limit, NotionVerdict, TractabilityVerdict};
pub use complexity::{
    bridge_app_to_i, bridge_i_to_app, complexity_app, complexity_app_ln, complexity_i, BridgeDirection,
    BridgeReport,
};
pub use probe::{empirical_probe, ProbeCell, PROBE_LABEL};
