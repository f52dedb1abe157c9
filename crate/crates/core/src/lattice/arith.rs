use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::WeightValue;
use crate::error::{Error, Result};
use crate::params::SequencePair;

/// Weight arithmetic over one coordinate system. `sum` must be monotone in
/// each argument, and `term` monotone in `k`; the counting and enumeration
/// code relies on both.
pub(crate) trait Arith: Sync {
    type W: Clone + Ord + Send + Sync + Debug;

    fn dim(&self) -> usize;
    fn scale(&self, j: usize) -> f64;
    fn exponent(&self, j: usize) -> f64;
    fn zero(&self) -> Self::W;
    fn term(&self, j: usize, k: u64) -> Self::W;
    /// Sum in coordinate index order. Every routine that compares a weight
    /// against a threshold goes through here.
    fn sum(&self, terms: &[Self::W]) -> Self::W;
    fn to_f64(&self, w: &Self::W) -> f64;
    fn from_f64(&self, x: f64) -> Self::W;
    fn to_value(&self, w: Self::W) -> WeightValue;
    fn from_value(&self, v: &WeightValue) -> Self::W;
}

/// `f64` ordered by `total_cmp`; weights are never NaN.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Fw(pub f64);

impl PartialEq for Fw {
    fn eq(&self, other: &Self) -> bool {
        self.0.total_cmp(&other.0) == Ordering::Equal
    }
}
impl Eq for Fw {}
impl PartialOrd for Fw {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Fw {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

pub(crate) struct FloatArith {
    a: Vec<f64>,
    e: Vec<f64>,
}

impl FloatArith {
    pub fn new(seq: &SequencePair) -> Self {
        FloatArith { a: seq.a().to_vec(), e: seq.b().iter().map(|b| 2.0 * b).collect() }
    }
}

/// `a * k^e` as computed everywhere in float mode.
#[inline]
pub(crate) fn float_term(a: f64, e: f64, k: u64) -> f64 {
    a * (k as f64).powf(e)
}

impl Arith for FloatArith {
    type W = Fw;

    fn dim(&self) -> usize {
        self.a.len()
    }
    fn scale(&self, j: usize) -> f64 {
        self.a[j]
    }
    fn exponent(&self, j: usize) -> f64 {
        self.e[j]
    }
    fn zero(&self) -> Fw {
        Fw(0.0)
    }
    fn term(&self, j: usize, k: u64) -> Fw {
        Fw(float_term(self.a[j], self.e[j], k))
    }
    fn sum(&self, terms: &[Fw]) -> Fw {
        Fw(terms.iter().fold(0.0, |s, t| s + t.0))
    }
    fn to_f64(&self, w: &Fw) -> f64 {
        w.0
    }
    fn from_f64(&self, x: f64) -> Fw {
        Fw(x)
    }
    fn to_value(&self, w: Fw) -> WeightValue {
        WeightValue::Float(w.0)
    }
    fn from_value(&self, v: &WeightValue) -> Fw {
        Fw(v.to_f64())
    }
}

/// Exact rational weights. Requires every `2 b_j` to be a positive integer;
/// the `a_j` are taken as the exact rationals their `f64` values denote.
pub(crate) struct ExactArith {
    a: Vec<BigRational>,
    a_f: Vec<f64>,
    e: Vec<u32>,
}

pub(crate) fn exact_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite value")
}

impl ExactArith {
    pub fn new(seq: &SequencePair) -> Result<Self> {
        let mut e = Vec::with_capacity(seq.dim());
        for (j, b) in seq.b().iter().enumerate() {
            let twice = 2.0 * b;
            if twice.fract() != 0.0 || !(1.0..=64.0).contains(&twice) {
                return Err(Error::ExactUnavailable(format!(
                    "2 b_{} = {twice} is not an integer in [1, 64]",
                    j + 1
                )));
            }
            e.push(twice as u32);
        }
        Ok(ExactArith { a: seq.a().iter().map(|&a| exact_from_f64(a)).collect(), a_f: seq.a().to_vec(), e })
    }
}

impl Arith for ExactArith {
    type W = BigRational;

    fn dim(&self) -> usize {
        self.a.len()
    }
    fn scale(&self, j: usize) -> f64 {
        self.a_f[j]
    }
    fn exponent(&self, j: usize) -> f64 {
        self.e[j] as f64
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn term(&self, j: usize, k: u64) -> BigRational {
        if k == 0 {
            return BigRational::zero();
        }
        &self.a[j] * BigRational::from_integer(BigInt::from(k).pow(self.e[j]))
    }
    fn sum(&self, terms: &[BigRational]) -> BigRational {
        terms.iter().fold(BigRational::zero(), |s, t| s + t)
    }
    fn to_f64(&self, w: &BigRational) -> f64 {
        w.to_f64().unwrap_or(f64::INFINITY)
    }
    fn from_f64(&self, x: f64) -> BigRational {
        exact_from_f64(x)
    }
    fn to_value(&self, w: BigRational) -> WeightValue {
        WeightValue::Exact(w)
    }
    fn from_value(&self, v: &WeightValue) -> BigRational {
        match v {
            WeightValue::Float(x) => exact_from_f64(*x),
            WeightValue::Exact(r) => r.clone(),
        }
    }
}
