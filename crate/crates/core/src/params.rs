//! Parameter sequences `a = (a_j)` (scaling) and `b = (b_j)` (smoothness).
//!
//! A sequence is either an explicit finite list or one of a small closed
//! catalog of parametrized families. The catalog is closed on purpose: the
//! tractability classifier reads limits such as `lim a_j / j` off the family
//! descriptor, which cannot be done from finitely many samples.
//!
//! All indices are 1-based, `j >= 1`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn one() -> f64 {
    1.0
}

/// Closed-form sequence families.
///
/// JSON form: `{"kind": "power", "c": 1.0, "alpha": 2.0}`; `c` defaults to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ClosedForm {
    /// `c`
    Constant {
        #[serde(default = "one")]
        c: f64,
    },
    /// `c * j^alpha`
    Power {
        #[serde(default = "one")]
        c: f64,
        alpha: f64,
    },
    /// `c * (ln(j + 1))^alpha`
    Logarithmic {
        #[serde(default = "one")]
        c: f64,
        alpha: f64,
    },
    /// `c * rho^j`
    Exponential {
        #[serde(default = "one")]
        c: f64,
        rho: f64,
    },
    /// `c * (2 pi)^(2 b_j)`, only meaningful in the `a` slot where it refers
    /// to the companion smoothness sequence.
    DoubleScale {
        #[serde(default = "one")]
        c: f64,
    },
}

/// A parameter sequence: an explicit list or a closed-form family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Family {
    Explicit(Vec<f64>),
    Closed(ClosedForm),
}

impl From<ClosedForm> for Family {
    fn from(c: ClosedForm) -> Self {
        Family::Closed(c)
    }
}

impl From<Vec<f64>> for Family {
    fn from(v: Vec<f64>) -> Self {
        Family::Explicit(v)
    }
}

fn positive_finite(v: f64, what: &str, j: usize) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidFamily(format!("{what} evaluates to {v} at j = {j}")))
    }
}

impl ClosedForm {
    /// Evaluates the family at `j`. `companion` supplies `b_j` for the
    /// double-scale kind.
    pub fn eval(&self, j: usize, companion: Option<f64>) -> Result<f64> {
        let x = j as f64;
        let v = match *self {
            ClosedForm::Constant { c } => c,
            ClosedForm::Power { c, alpha } => c * x.powf(alpha),
            ClosedForm::Logarithmic { c, alpha } => c * (x + 1.0).ln().powf(alpha),
            ClosedForm::Exponential { c, rho } => c * rho.powf(x),
            ClosedForm::DoubleScale { c } => {
                let b = companion.ok_or_else(|| {
                    Error::InvalidFamily("double_scale needs a companion smoothness sequence".into())
                })?;
                c * (2.0 * PI).powf(2.0 * b)
            }
        };
        positive_finite(v, "family", j)
    }

    pub fn scale(&self) -> f64 {
        match *self {
            ClosedForm::Constant { c }
            | ClosedForm::Power { c, .. }
            | ClosedForm::Logarithmic { c, .. }
            | ClosedForm::Exponential { c, .. }
            | ClosedForm::DoubleScale { c } => c,
        }
    }
}

impl Family {
    pub fn eval(&self, j: usize, companion: Option<f64>) -> Result<f64> {
        if j == 0 {
            return Err(Error::Domain("sequence indices start at 1".into()));
        }
        match self {
            Family::Explicit(v) => {
                let x = *v.get(j - 1).ok_or(Error::IndexBeyondList { index: j, len: v.len() })?;
                positive_finite(x, "explicit list", j)
            }
            Family::Closed(c) => c.eval(j, companion),
        }
    }

    fn explicit_len(&self) -> Option<usize> {
        match self {
            Family::Explicit(v) => Some(v.len()),
            Family::Closed(_) => None,
        }
    }

    fn is_double_scale(&self) -> bool {
        matches!(self, Family::Closed(ClosedForm::DoubleScale { .. }))
    }
}

/// JSON shape shared with the CLI: `{"a": ..., "b": ..., "d": 3}`.
/// `d` may be omitted when at least one side is an explicit list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceSpec {
    pub a: Family,
    pub b: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
}

/// The pair `(a, b)` restricted to an active dimension `d`, with the first
/// `d` values of each sequence materialized and checked positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SequenceSpec", into = "SequenceSpec")]
pub struct SequencePair {
    a_family: Family,
    b_family: Family,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl TryFrom<SequenceSpec> for SequencePair {
    type Error = Error;

    fn try_from(spec: SequenceSpec) -> Result<Self> {
        let d = match spec.d {
            Some(d) => d,
            None => match (spec.a.explicit_len(), spec.b.explicit_len()) {
                (Some(x), Some(y)) => x.min(y),
                (Some(x), None) | (None, Some(x)) => x,
                (None, None) => {
                    return Err(Error::Domain("dimension d is required for closed-form families".into()))
                }
            },
        };
        SequencePair::new(spec.a, spec.b, d)
    }
}

impl From<SequencePair> for SequenceSpec {
    fn from(p: SequencePair) -> Self {
        let d = p.dim();
        SequenceSpec { a: p.a_family, b: p.b_family, d: Some(d) }
    }
}

impl SequencePair {
    pub fn new(a: impl Into<Family>, b: impl Into<Family>, d: usize) -> Result<Self> {
        let (a_family, b_family) = (a.into(), b.into());
        if d == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        if b_family.is_double_scale() {
            return Err(Error::InvalidFamily("double_scale is only valid for the a sequence".into()));
        }
        let b = (1..=d).map(|j| b_family.eval(j, None)).collect::<Result<Vec<_>>>()?;
        let a = (1..=d)
            .map(|j| a_family.eval(j, Some(b[j - 1])))
            .collect::<Result<Vec<_>>>()?;
        Ok(SequencePair { a_family, b_family, a, b })
    }

    /// Explicit lists of equal length; `d` is that length.
    pub fn explicit(a: &[f64], b: &[f64]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
        }
        SequencePair::new(a.to_vec(), b.to_vec(), a.len())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: SequenceSpec =
            serde_json::from_str(s).map_err(|e| Error::InvalidFamily(format!("bad sequence spec: {e}")))?;
        SequencePair::try_from(spec)
    }

    /// Same families, different active dimension.
    pub fn with_dim(&self, d: usize) -> Result<Self> {
        SequencePair::new(self.a_family.clone(), self.b_family.clone(), d)
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn a_family(&self) -> &Family {
        &self.a_family
    }

    pub fn b_family(&self) -> &Family {
        &self.b_family
    }

    /// Active scaling parameters `a_1..a_d`.
    pub fn a(&self) -> &[f64] {
        &self.a
    }

    /// Active smoothness parameters `b_1..b_d`.
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// `a_j` for any `j >= 1`, not only the active prefix.
    pub fn eval_a(&self, j: usize) -> Result<f64> {
        let bj = self.eval_b(j)?;
        self.a_family.eval(j, Some(bj))
    }

    pub fn eval_b(&self, j: usize) -> Result<f64> {
        self.b_family.eval(j, None)
    }

    /// `sum_{j <= d} 1 / b_j`.
    pub fn inv_b_sum(&self) -> f64 {
        self.b.iter().map(|b| b.recip()).sum()
    }

    /// Harmonic aggregate `g_d(b) = 1 / sum_{j <= d} b_j^{-1}`.
    pub fn g_d(&self) -> f64 {
        self.inv_b_sum().recip()
    }

    /// `p_d = max(1, 2 b_1, ..., 2 b_d)`.
    pub fn p_d(&self) -> f64 {
        self.b.iter().fold(1.0_f64, |m, &b| m.max(2.0 * b))
    }

    /// `(sum_j a_j 2^{-2 b_j})^{1 / p_d}`, the shift in the cube-covering
    /// inclusions.
    pub fn shift_constant(&self) -> f64 {
        let s: f64 = self.a.iter().zip(&self.b).map(|(&a, &b)| a * 2f64.powf(-2.0 * b)).sum();
        s.powf(self.p_d().recip())
    }

    /// Checks `a_1 <= ... <= a_d` on the active prefix. `inf b_j > 0` holds
    /// on any finite prefix by construction.
    pub fn check_regulated_prefix(&self) -> Result<()> {
        if let Some(j) = self.a.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::NotRegulated(format!(
                "a is decreasing at j = {}: {} > {}",
                j + 1,
                self.a[j],
                self.a[j + 1]
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(x: f64, y: f64) -> bool {
        (x - y).abs() <= 1e-12 * y.abs().max(1.0)
    }

    #[test]
    fn eval_examples() {
        let p = ClosedForm::Power { c: 1.0, alpha: 1.0 };
        assert_eq!(p.eval(5, None).unwrap(), 5.0);
        let e = ClosedForm::Exponential { c: 1.0, rho: 2.0 };
        assert_eq!(e.eval(3, None).unwrap(), 8.0);
        let l = Family::Explicit(vec![3.0, 1.0, 4.0]);
        assert_eq!(l.eval(2, None).unwrap(), 1.0);
    }

    #[test]
    fn explicit_list_does_not_extrapolate() {
        let seq = SequencePair::explicit(&[3.0, 1.0, 4.0], &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(seq.eval_a(3).unwrap(), 4.0);
        assert_eq!(seq.eval_a(4), Err(Error::IndexBeyondList { index: 4, len: 3 }));
        assert!(matches!(seq.eval_a(0), Err(Error::Domain(_))));
    }

    #[test]
    fn rejects_non_positive() {
        assert!(matches!(SequencePair::explicit(&[1.0, 0.0], &[1.0, 1.0]), Err(Error::InvalidFamily(_))));
        assert!(matches!(SequencePair::explicit(&[1.0], &[-1.0]), Err(Error::InvalidFamily(_))));
        let neg = ClosedForm::Power { c: -1.0, alpha: 1.0 };
        assert!(matches!(neg.eval(1, None), Err(Error::InvalidFamily(_))));
        // (2 pi)^(2 j^2) overflows well before j = 20
        let seq = SequencePair::new(
            ClosedForm::DoubleScale { c: 1.0 },
            ClosedForm::Power { c: 1.0, alpha: 2.0 },
            3,
        )
        .unwrap();
        assert!(matches!(seq.eval_a(20), Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn g_d_examples() {
        let s = SequencePair::explicit(&[1.0], &[1.0]).unwrap();
        assert_eq!(s.g_d(), 1.0);
        let s = SequencePair::explicit(&[1.0, 1.0], &[1.0, 2.0]).unwrap();
        assert!(approx(s.g_d(), 2.0 / 3.0));
        let s = SequencePair::new(ClosedForm::Constant { c: 1.0 }, ClosedForm::Constant { c: 2.5 }, 5).unwrap();
        assert!(approx(s.g_d(), 0.5));
    }

    #[test]
    fn p_d_examples() {
        let s = SequencePair::explicit(&[1.0; 3], &[0.3, 1.0, 2.0]).unwrap();
        assert_eq!(s.p_d(), 4.0);
        let s = SequencePair::explicit(&[1.0], &[0.25]).unwrap();
        assert_eq!(s.p_d(), 1.0);
        let s = SequencePair::explicit(&[1.0, 1.0], &[1.0, 1.0]).unwrap();
        assert_eq!(s.p_d(), 2.0);
    }

    #[test]
    fn shift_constant_examples() {
        let s = SequencePair::explicit(&[1.0], &[1.0]).unwrap();
        assert!(approx(s.shift_constant(), 0.5));
        let s = SequencePair::explicit(&[4.0], &[1.0]).unwrap();
        assert!(approx(s.shift_constant(), 1.0));
        let s = SequencePair::explicit(&[1.0, 1.0], &[1.0, 1.0]).unwrap();
        assert!(approx(s.shift_constant(), 0.5f64.sqrt()));
    }

    #[test]
    fn monotone_in_dimension() {
        let seq = SequencePair::new(
            ClosedForm::Power { c: 1.0, alpha: 1.0 },
            ClosedForm::Logarithmic { c: 0.7, alpha: 1.3 },
            1,
        )
        .unwrap();
        let mut prev = seq.clone();
        for d in 2..30 {
            let cur = seq.with_dim(d).unwrap();
            assert!(cur.g_d() < prev.g_d());
            assert!(cur.p_d() >= prev.p_d());
            prev = cur;
        }
    }

    #[test]
    fn json_shapes() {
        let s = SequencePair::from_json(r#"{"a":[1],"b":[1]}"#).unwrap();
        assert_eq!(s.dim(), 1);
        let s = SequencePair::from_json(
            r#"{"a":{"kind":"power","c":1.0,"alpha":2.0},"b":{"kind":"constant","c":1.5},"d":4}"#,
        )
        .unwrap();
        assert_eq!(s.a(), &[1.0, 4.0, 9.0, 16.0]);
        assert_eq!(s.b(), &[1.5; 4]);
        let s = SequencePair::from_json(r#"{"a":{"kind":"double_scale"},"b":[1, 2]}"#).unwrap();
        assert!(approx(s.a()[1], (2.0 * PI).powi(4)));
        assert!(SequencePair::from_json(r#"{"a":{"kind":"power"},"b":[1]}"#).is_err());
        assert!(SequencePair::from_json(r#"{"a":{"kind":"power","alpha":1},"b":{"kind":"constant"}}"#).is_err());
        assert!(SequencePair::from_json(r#"{"a":[1],"b":{"kind":"double_scale"}}"#).is_err());
        assert!(SequencePair::from_json(r#"{"a":{"kind":"constant","q":1},"b":[1]}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = SequencePair::from_json(r#"{"a":{"kind":"exponential","c":0.5,"rho":2.0},"b":[1, 2, 3]}"#).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: SequencePair = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn regulated_prefix() {
        assert!(SequencePair::explicit(&[1.0, 2.0, 2.0], &[1.0; 3]).unwrap().check_regulated_prefix().is_ok());
        assert!(matches!(
            SequencePair::explicit(&[3.0, 1.0], &[1.0; 2]).unwrap().check_regulated_prefix(),
            Err(Error::NotRegulated(_))
        ));
    }
}
