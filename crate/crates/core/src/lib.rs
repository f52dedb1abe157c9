//! Approximation numbers, information complexity and tractability of the
//! weighted anisotropic Sobolev embeddings `W_2^{a,b}([0,1]^d) -> L_2` and of
//! the analytic Korobov approximation problem.
//!
//! Both operators are diagonal in the Fourier basis, so everything reduces to
//! the multiset of lattice weights `w(k) = sum_j a_j |k_j|^{2 b_j}`:
//! `a_n = (1 + w_n)^{-1/2}` and `lambda_{d,n} = omega^{w_n}`, with `w_n` the
//! `n`-th smallest weight.

pub mod ellipsoid;
pub mod error;
pub mod lattice;
pub mod params;
pub mod spectra;
pub mod tractability;

pub use error::{Error, Result};
pub use lattice::{Comparison, Lattice, LatticeConfig, Mode, WeightValue};
pub use params::{ClosedForm, Family, SequencePair, SequenceSpec};
