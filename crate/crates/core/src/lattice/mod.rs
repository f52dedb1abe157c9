//! Counting and ordered enumeration of lattice points `k in Z^d` under the
//! anisotropic weight `w(k) = sum_j a_j |k_j|^{2 b_j}`.
//!
//! Two arithmetic modes are offered. Float mode sums the `f64` terms in
//! coordinate index order and compares the raw result against thresholds;
//! no tolerance is applied unless the caller asks for one. Exact mode uses
//! big rationals and is available when every `2 b_j` is an integer.

mod arith;
mod count;
mod enumerate;

use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use self::arith::{Arith, ExactArith, FloatArith};
use crate::error::{Error, Result};
use crate::params::SequencePair;

pub(crate) use self::arith::float_term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Float,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `w(k) < T`
    Strict,
    /// `w(k) <= T`
    NonStrict,
}

/// A weight value in either representation.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightValue {
    Float(f64),
    Exact(BigRational),
}

impl WeightValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            WeightValue::Float(x) => *x,
            WeightValue::Exact(r) => r.to_f64().unwrap_or(f64::INFINITY),
        }
    }

    /// The exact rational denoted by a finite `f64`.
    pub fn exact_from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(WeightValue::Exact)
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            WeightValue::Exact(r) => Some(r),
            WeightValue::Float(_) => None,
        }
    }
}

impl From<f64> for WeightValue {
    fn from(x: f64) -> Self {
        WeightValue::Float(x)
    }
}

impl fmt::Display for WeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightValue::Float(x) => write!(f, "{x}"),
            WeightValue::Exact(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeConfig {
    /// Largest admissible `|k_j|` in any coordinate.
    pub range_cap: u64,
    /// Largest admissible enumeration frontier.
    pub heap_cap: usize,
    /// `kth_smallest_weight` enumerates up to this `n` and bisects beyond it.
    pub heap_limit: u64,
    /// Float-mode sensitivity knob: non-strict counts use `T + tolerance`,
    /// strict counts use `T - tolerance`. Zero by default.
    pub tolerance: f64,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        LatticeConfig { range_cap: 1 << 31, heap_cap: 100_000_000, heap_limit: 10_000_000, tolerance: 0.0 }
    }
}

enum Model {
    Float(FloatArith),
    Exact(ExactArith),
}

macro_rules! with_arith {
    ($self:expr, $ar:ident => $body:expr) => {
        match &$self.model {
            Model::Float($ar) => $body,
            Model::Exact($ar) => $body,
        }
    };
}

/// The weighted lattice `Z^d` of one sequence pair.
pub struct Lattice {
    seq: SequencePair,
    mode: Mode,
    config: LatticeConfig,
    model: Model,
}

/// The canonical float weight of a lattice point: terms `a_j * |k_j|^{2 b_j}`
/// summed in coordinate order.
pub fn weight(seq: &SequencePair, k: &[i64]) -> Result<f64> {
    if k.len() != seq.dim() {
        return Err(Error::DimensionMismatch { expected: seq.dim(), got: k.len() });
    }
    Ok(seq
        .a()
        .iter()
        .zip(seq.b())
        .zip(k)
        .fold(0.0, |s, ((&a, &b), &kj)| s + float_term(a, 2.0 * b, kj.unsigned_abs())))
}

impl Lattice {
    pub fn new(seq: &SequencePair, mode: Mode) -> Result<Self> {
        Lattice::with_config(seq, mode, LatticeConfig::default())
    }

    pub fn with_config(seq: &SequencePair, mode: Mode, config: LatticeConfig) -> Result<Self> {
        let model = match mode {
            Mode::Float => Model::Float(FloatArith::new(seq)),
            Mode::Exact => Model::Exact(ExactArith::new(seq)?),
        };
        Ok(Lattice { seq: seq.clone(), mode, config, model })
    }

    /// Exact mode when every `2 b_j` is integral, float otherwise.
    pub fn exact_if_possible(seq: &SequencePair) -> Self {
        Lattice::new(seq, Mode::Exact)
            .or_else(|_| Lattice::new(seq, Mode::Float))
            .expect("float mode always available")
    }

    pub fn seq(&self) -> &SequencePair {
        &self.seq
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn config(&self) -> &LatticeConfig {
        &self.config
    }

    /// `#{k in Z^d : w(k) < T}` or `<= T`.
    pub fn count(&self, threshold: &WeightValue, cmp: Comparison) -> Result<u64> {
        let t = threshold.to_f64();
        if t.is_nan() || t < 0.0 {
            return Err(Error::Domain(format!("threshold {t} must be non-negative")));
        }
        match &self.model {
            Model::Float(ar) => {
                let tol = self.config.tolerance;
                let adj = match cmp {
                    Comparison::NonStrict => t + tol,
                    Comparison::Strict => t - tol,
                };
                count::count(ar, &ar.from_f64(adj), cmp, &self.config)
            }
            Model::Exact(ar) => {
                count::check_capacity(ar, t, self.config.range_cap)?;
                count::count(ar, &ar.from_value(threshold), cmp, &self.config)
            }
        }
    }

    pub fn count_f64(&self, threshold: f64, cmp: Comparison) -> Result<u64> {
        self.count(&WeightValue::Float(threshold), cmp)
    }

    /// `C(m, a, b, d) = #{k : w(k) <= m^{p_d}}`.
    pub fn count_c_m(&self, m: u64) -> Result<u64> {
        if m == 0 {
            return Err(Error::Domain("m must be at least 1".into()));
        }
        let p = self.seq.p_d();
        let m_f = m as f64;
        let t = match &self.model {
            // p_d is an integer in exact mode, so m^{p_d} is an exact integer.
            Model::Exact(_) => WeightValue::Exact(BigRational::from_integer(num_bigint::BigInt::from(m).pow(p as u32))),
            Model::Float(_) => WeightValue::Float(m_f.powf(p)),
        };
        self.count(&t, Comparison::NonStrict)
    }

    /// Distinct weights in strictly increasing order, each with the number of
    /// lattice points attaining it. Unbounded; callers decide when to stop.
    pub fn increasing(&self) -> Box<dyn Iterator<Item = Result<(WeightValue, u64)>> + '_> {
        with_arith!(self, ar => Box::new(
            enumerate::Increasing::new(ar, self.config.heap_cap).map(move |r| r.map(|(w, m)| (ar.to_value(w), m)))
        ))
    }

    /// Prefix of [`Lattice::increasing`] until the cumulative multiplicity
    /// reaches `limit_n`.
    pub fn enumerate_increasing(&self, limit_n: u64) -> Result<Vec<(WeightValue, u64)>> {
        if limit_n == 0 {
            return Err(Error::Domain("limit_n must be at least 1".into()));
        }
        let mut out = Vec::new();
        let mut cum = 0u64;
        for item in self.increasing() {
            let (w, m) = item?;
            cum += m;
            out.push((w, m));
            if cum >= limit_n {
                break;
            }
        }
        Ok(out)
    }

    /// The `n`-th smallest weight counted with multiplicity (`n >= 1`).
    /// Enumerates for `n <= heap_limit`, bisects on counts beyond.
    pub fn kth_smallest_weight(&self, n: u64) -> Result<WeightValue> {
        if n <= self.config.heap_limit {
            self.kth_by_heap(n)
        } else {
            self.kth_by_bisection(n)
        }
    }

    pub fn kth_by_heap(&self, n: u64) -> Result<WeightValue> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        let mut cum = 0u64;
        for item in self.increasing() {
            let (w, m) = item?;
            cum += m;
            if cum >= n {
                return Ok(w);
            }
        }
        unreachable!("the weight stream is infinite")
    }

    /// Bisection over the bit patterns of non-negative `f64` thresholds:
    /// finds adjacent floats `lo < hi` with `count(<= lo) < n <= count(<= hi)`
    /// and resolves the achieved values in `(lo, hi]` exactly.
    pub fn kth_by_bisection(&self, n: u64) -> Result<WeightValue> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        with_arith!(self, ar => self.bisect(ar, n))
    }

    fn bisect<A: Arith>(&self, ar: &A, n: u64) -> Result<WeightValue> {
        let cfg = LatticeConfig { tolerance: 0.0, ..self.config };
        let count_le = |x: f64| count::count(ar, &ar.from_f64(x), Comparison::NonStrict, &cfg);
        if count_le(0.0)? >= n {
            return Ok(ar.to_value(ar.zero()));
        }
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        while count_le(hi)? < n {
            lo = hi;
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(Error::Capacity("bisection bracket overflowed".into()));
            }
        }
        let (mut lo_b, mut hi_b) = (lo.to_bits(), hi.to_bits());
        while hi_b - lo_b > 1 {
            let mid_b = lo_b + (hi_b - lo_b) / 2;
            if count_le(f64::from_bits(mid_b))? >= n {
                hi_b = mid_b;
            } else {
                lo_b = mid_b;
            }
        }
        let (lo, hi) = (f64::from_bits(lo_b), f64::from_bits(hi_b));
        let mut cum = count_le(lo)?;
        for (w, m) in count::shell(ar, &ar.from_f64(lo), &ar.from_f64(hi), &cfg)? {
            cum += m;
            if cum >= n {
                return Ok(ar.to_value(w));
            }
        }
        unreachable!("count(<= hi) >= n implies the shell reaches n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(a: &[f64], b: &[f64]) -> SequencePair {
        SequencePair::explicit(a, b).unwrap()
    }

    #[test]
    fn count_examples() {
        for mode in [Mode::Float, Mode::Exact] {
            let l = Lattice::new(&seq(&[1.0], &[1.0]), mode).unwrap();
            assert_eq!(l.count_f64(4.5, Comparison::NonStrict).unwrap(), 5);
            let l = Lattice::new(&seq(&[1.0, 1.0], &[1.0, 1.0]), mode).unwrap();
            assert_eq!(l.count_f64(2.0, Comparison::NonStrict).unwrap(), 9);
            assert_eq!(l.count_f64(2.0, Comparison::Strict).unwrap(), 5);
            assert_eq!(l.count_f64(0.0, Comparison::Strict).unwrap(), 0);
            assert_eq!(l.count_f64(0.0, Comparison::NonStrict).unwrap(), 1);
        }
    }

    #[test]
    fn count_c_m_examples() {
        for mode in [Mode::Float, Mode::Exact] {
            let l = Lattice::new(&seq(&[1.0], &[1.0]), mode).unwrap();
            assert_eq!(l.count_c_m(2).unwrap(), 5);
            assert_eq!(l.count_c_m(3).unwrap(), 7);
            let l = Lattice::new(&seq(&[1.0, 1.0], &[1.0, 1.0]), mode).unwrap();
            assert_eq!(l.count_c_m(2).unwrap(), 13);
        }
    }

    #[test]
    fn tolerance_widens_the_tie_band() {
        let cfg = LatticeConfig { tolerance: 1e-9, ..Default::default() };
        let l = Lattice::with_config(&seq(&[1.0, 1.0], &[1.0, 1.0]), Mode::Float, cfg).unwrap();
        assert_eq!(l.count_f64(2.0 - 1e-12, Comparison::NonStrict).unwrap(), 9);
        assert_eq!(l.count_f64(2.0 + 1e-12, Comparison::Strict).unwrap(), 5);
        let raw = Lattice::new(&seq(&[1.0, 1.0], &[1.0, 1.0]), Mode::Float).unwrap();
        assert_eq!(raw.count_f64(2.0 - 1e-12, Comparison::NonStrict).unwrap(), 5);
    }

    #[test]
    fn capacity_and_domain_errors() {
        let l = Lattice::new(&seq(&[1.0], &[0.5]), Mode::Float).unwrap();
        assert!(matches!(l.count_f64(1e12, Comparison::NonStrict), Err(Error::Capacity(_))));
        assert!(matches!(l.count_f64(f64::INFINITY, Comparison::NonStrict), Err(Error::Capacity(_))));
        assert!(matches!(l.count_f64(-1.0, Comparison::NonStrict), Err(Error::Domain(_))));
        assert!(matches!(l.count_f64(f64::NAN, Comparison::NonStrict), Err(Error::Domain(_))));
        let cfg = LatticeConfig { heap_cap: 10, ..Default::default() };
        let l = Lattice::with_config(&seq(&[1.0; 4], &[1.0; 4]), Mode::Float, cfg).unwrap();
        assert!(matches!(l.kth_by_heap(1000), Err(Error::Capacity(_))));
    }

    #[test]
    fn exact_mode_eligibility() {
        assert!(Lattice::new(&seq(&[1.0], &[0.7]), Mode::Exact).is_err());
        assert!(Lattice::new(&seq(&[0.3], &[1.5]), Mode::Exact).is_ok());
        assert_eq!(Lattice::exact_if_possible(&seq(&[1.0], &[0.7])).mode(), Mode::Float);
    }

    #[test]
    fn enumerate_examples() {
        let l = Lattice::new(&seq(&[1.0], &[1.0]), Mode::Float).unwrap();
        let got: Vec<(f64, u64)> = l.enumerate_increasing(7).unwrap().iter().map(|(w, m)| (w.to_f64(), *m)).collect();
        assert_eq!(got, vec![(0.0, 1), (1.0, 2), (4.0, 2), (9.0, 2)]);
        let l = Lattice::new(&seq(&[1.0, 1.0], &[1.0, 1.0]), Mode::Exact).unwrap();
        let got: Vec<(f64, u64)> =
            l.enumerate_increasing(21).unwrap().iter().map(|(w, m)| (w.to_f64(), *m)).collect();
        assert_eq!(got, vec![(0.0, 1), (1.0, 4), (2.0, 4), (4.0, 4), (5.0, 8)]);
        let l = Lattice::new(&seq(&[2.0], &[2.0]), Mode::Float).unwrap();
        let got: Vec<(f64, u64)> = l.enumerate_increasing(5).unwrap().iter().map(|(w, m)| (w.to_f64(), *m)).collect();
        assert_eq!(got, vec![(0.0, 1), (2.0, 2), (32.0, 2)]);
    }

    #[test]
    fn kth_examples() {
        let l = Lattice::new(&seq(&[1.0], &[1.0]), Mode::Float).unwrap();
        assert_eq!(l.kth_smallest_weight(1).unwrap(), WeightValue::Float(0.0));
        assert_eq!(l.kth_smallest_weight(4).unwrap(), WeightValue::Float(4.0));
        assert_eq!(l.kth_by_bisection(4).unwrap(), WeightValue::Float(4.0));
        let l = Lattice::new(&seq(&[1.0, 1.0], &[1.0, 1.0]), Mode::Float).unwrap();
        assert_eq!(l.kth_smallest_weight(10).unwrap(), WeightValue::Float(4.0));
        assert_eq!(l.kth_by_bisection(10).unwrap(), WeightValue::Float(4.0));
    }

    #[test]
    fn exact_bisection_resolves_close_values() {
        // 1/3 and the f64 nearest to it sit far below one ulp apart only in
        // exact arithmetic; the shell step has to separate them.
        let third = 1.0 / 3.0;
        let l = Lattice::new(&seq(&[third, 1.0], &[1.0, 1.0]), Mode::Exact).unwrap();
        for n in [1, 2, 3, 4, 5, 10, 40, 97] {
            assert_eq!(l.kth_by_heap(n).unwrap(), l.kth_by_bisection(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn weight_is_the_canonical_sum() {
        let s = seq(&[1.0, 2.0], &[1.0, 0.5]);
        assert_eq!(weight(&s, &[-3, 2]).unwrap(), 9.0 + 4.0);
        assert!(weight(&s, &[1]).is_err());
    }
}
