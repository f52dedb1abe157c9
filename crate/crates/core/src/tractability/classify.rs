//! Analytic tractability classification over the closed-form family
//! catalog.
//!
//! Every condition is a limit of the sequences, so it is read from closed
//! forms and never estimated from samples. An explicit list says nothing
//! about its tail, and any condition that depends on it is reported as
//! unknown. Three-valued logic keeps a known failure on one side decisive:
//! `sum 1/b_j = inf` rules out SPT whatever `a` is.
//!
//! With `kappa = 2 ln(2 pi)` the double-scale family has
//! `ln a_j = ln c + kappa b_j`, so its functionals follow from those of `b`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use serde::ser::Serializer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{ClosedForm, Family};

/// A limit or limit inferior: a finite value, `+inf`, or not decidable.
/// Serialized as a number, `"inf"` or `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Limit {
    Finite(f64),
    Infinite,
    Unknown,
}

impl Limit {
    fn positive(self) -> Option<bool> {
        match self {
            Limit::Finite(x) => Some(x > 0.0),
            Limit::Infinite => Some(true),
            Limit::Unknown => None,
        }
    }

    fn infinite(self) -> Option<bool> {
        match self {
            Limit::Finite(_) => Some(false),
            Limit::Infinite => Some(true),
            Limit::Unknown => None,
        }
    }
}

impl Serialize for Limit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Limit::Finite(x) => s.serialize_f64(x),
            Limit::Infinite => s.serialize_str("inf"),
            Limit::Unknown => s.serialize_none(),
        }
    }
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Finite(x) => write!(f, "{x}"),
            Limit::Infinite => f.write_str("inf"),
            Limit::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Evidence {
    Flag(Option<bool>),
    Limit(Limit),
}

fn and(x: Option<bool>, y: Option<bool>) -> Option<bool> {
    match (x, y) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

/// `lim x_j` for `x_j = c j^e` (`e` may be any real).
fn power_limit(c: f64, e: f64) -> Limit {
    if e > 0.0 {
        Limit::Infinite
    } else if e == 0.0 {
        Limit::Finite(c)
    } else {
        Limit::Finite(0.0)
    }
}

fn kappa() -> f64 {
    2.0 * (2.0 * PI).ln()
}

/// Asymptotic functionals of a scaling sequence `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AFunctionals {
    /// `liminf ln a_j / j`
    pub liminf_ln_a_over_j: Limit,
    /// `liminf (1 + ln j) ln a_j / j`
    pub liminf_log_ln_a_over_j: Limit,
    /// `lim ln a_j / ln j`
    pub lim_ln_a_over_ln_j: Limit,
    /// `lim a_j / j`
    pub lim_a_over_j: Limit,
    /// `lim a_j`
    pub lim_a: Limit,
    /// `lim a_j / ln j`
    pub lim_a_over_ln_j: Limit,
    /// `a_j` is non-decreasing, when decidable.
    pub non_decreasing: Option<bool>,
    #[serde(skip)]
    shape: AShape,
}

/// Enough of the growth of `a` to answer `lim a_j / j^gamma` for any `gamma > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
enum AShape {
    /// `a_j ~ c j^e` with `e >= 0`.
    Power { c: f64, e: f64 },
    /// Grows slower than any positive power of `j`.
    SubPower,
    /// Grows faster than any power of `j`.
    SuperPower,
    Unknown,
}

impl AFunctionals {
    /// `lim a_j / j^gamma`.
    pub fn lim_a_over_power(&self, gamma: f64) -> Limit {
        match self.shape {
            AShape::Power { c, e } => power_limit(c, e - gamma),
            AShape::SubPower => Limit::Finite(0.0),
            AShape::SuperPower => Limit::Infinite,
            AShape::Unknown => Limit::Unknown,
        }
    }

    fn unknown(non_decreasing: Option<bool>) -> Self {
        AFunctionals {
            liminf_ln_a_over_j: Limit::Unknown,
            liminf_log_ln_a_over_j: Limit::Unknown,
            lim_ln_a_over_ln_j: Limit::Unknown,
            lim_a_over_j: Limit::Unknown,
            lim_a: Limit::Unknown,
            lim_a_over_ln_j: Limit::Unknown,
            non_decreasing,
            shape: AShape::Unknown,
        }
    }

    /// `a_j = c j^alpha`, `alpha >= 0`.
    fn power(c: f64, alpha: f64) -> Self {
        AFunctionals {
            liminf_ln_a_over_j: Limit::Finite(0.0),
            liminf_log_ln_a_over_j: Limit::Finite(0.0),
            lim_ln_a_over_ln_j: Limit::Finite(alpha),
            lim_a_over_j: power_limit(c, alpha - 1.0),
            lim_a: power_limit(c, alpha),
            lim_a_over_ln_j: if alpha > 0.0 { Limit::Infinite } else { Limit::Finite(0.0) },
            non_decreasing: Some(alpha >= 0.0),
            shape: AShape::Power { c, e: alpha },
        }
    }

    /// Grows faster than every power; `l1`, `l2` are the two liminf values.
    fn super_power(l1: Limit, l2: Limit) -> Self {
        AFunctionals {
            liminf_ln_a_over_j: l1,
            liminf_log_ln_a_over_j: l2,
            lim_ln_a_over_ln_j: Limit::Infinite,
            lim_a_over_j: Limit::Infinite,
            lim_a: Limit::Infinite,
            lim_a_over_ln_j: Limit::Infinite,
            non_decreasing: Some(true),
            shape: AShape::SuperPower,
        }
    }

    pub fn of(a: &Family, b: &Family) -> Self {
        let Family::Closed(form) = a else {
            return AFunctionals::unknown(None);
        };
        match *form {
            ClosedForm::Constant { c } => AFunctionals::power(c, 0.0),
            ClosedForm::Power { c, alpha } => {
                let mut f = AFunctionals::power(c, alpha.max(0.0));
                f.non_decreasing = Some(alpha >= 0.0);
                f
            }
            ClosedForm::Logarithmic { c, alpha } if alpha <= 0.0 => {
                let mut f = AFunctionals::power(c, 0.0);
                if alpha < 0.0 {
                    f.lim_a = Limit::Finite(0.0);
                    f.shape = AShape::Power { c: 0.0, e: 0.0 };
                }
                f.non_decreasing = Some(alpha == 0.0);
                f
            }
            ClosedForm::Logarithmic { c, alpha } => AFunctionals {
                liminf_ln_a_over_j: Limit::Finite(0.0),
                liminf_log_ln_a_over_j: Limit::Finite(0.0),
                lim_ln_a_over_ln_j: Limit::Finite(0.0),
                lim_a_over_j: Limit::Finite(0.0),
                lim_a: Limit::Infinite,
                // ln(j + 1) / ln j -> 1
                lim_a_over_ln_j: power_limit(c, alpha - 1.0),
                non_decreasing: Some(true),
                shape: AShape::SubPower,
            },
            ClosedForm::Exponential { c, rho } if rho == 1.0 => AFunctionals::power(c, 0.0),
            ClosedForm::Exponential { rho, .. } if rho > 1.0 => {
                AFunctionals::super_power(Limit::Finite(rho.ln()), Limit::Infinite)
            }
            ClosedForm::Exponential { .. } => {
                let mut f = AFunctionals::power(0.0, 0.0);
                f.liminf_ln_a_over_j = Limit::Finite(f64::NEG_INFINITY);
                f.non_decreasing = Some(false);
                f
            }
            ClosedForm::DoubleScale { c } => double_scale(c, b),
        }
    }
}

/// `a_j = c (2 pi)^{2 b_j}` from the closed form of `b`.
fn double_scale(c: f64, b: &Family) -> AFunctionals {
    let k = kappa();
    let Family::Closed(form) = b else {
        return AFunctionals::unknown(None);
    };
    let constant = |beta: f64| AFunctionals::power(c * (2.0 * PI).powf(2.0 * beta), 0.0);
    match *form {
        ClosedForm::Constant { c: beta } => constant(beta),
        ClosedForm::Power { c: cb, alpha } if alpha == 0.0 => constant(cb),
        ClosedForm::Power { c: cb, alpha } if alpha > 0.0 => {
            // ln a_j ~ kappa cb j^alpha
            let l1 = power_limit(k * cb, alpha - 1.0);
            let l2 = if alpha >= 1.0 { Limit::Infinite } else { Limit::Finite(0.0) };
            AFunctionals::super_power(l1, l2)
        }
        ClosedForm::Logarithmic { c: cb, alpha } if alpha == 0.0 => constant(cb),
        ClosedForm::Logarithmic { c: cb, alpha } if alpha > 0.0 => {
            // ln a_j = ln c + kappa cb (ln(j + 1))^alpha
            let m = k * cb;
            if alpha > 1.0 {
                let mut f = AFunctionals::super_power(Limit::Finite(0.0), Limit::Finite(0.0));
                f.lim_ln_a_over_ln_j = Limit::Infinite;
                f
            } else if alpha == 1.0 {
                // a_j = c (j + 1)^m
                let mut f = AFunctionals::power(c, m);
                f.lim_ln_a_over_ln_j = Limit::Finite(m);
                f
            } else {
                AFunctionals {
                    liminf_ln_a_over_j: Limit::Finite(0.0),
                    liminf_log_ln_a_over_j: Limit::Finite(0.0),
                    lim_ln_a_over_ln_j: Limit::Finite(0.0),
                    lim_a_over_j: Limit::Finite(0.0),
                    lim_a: Limit::Infinite,
                    // kappa cb L^alpha - ln L -> inf with L = ln j
                    lim_a_over_ln_j: Limit::Infinite,
                    non_decreasing: Some(true),
                    shape: AShape::SubPower,
                }
            }
        }
        ClosedForm::Exponential { c: cb, rho } if rho == 1.0 => constant(cb),
        ClosedForm::Exponential { rho, .. } if rho > 1.0 => {
            AFunctionals::super_power(Limit::Infinite, Limit::Infinite)
        }
        // decreasing b, or negative exponents: a decreases to c
        ClosedForm::Power { .. } | ClosedForm::Logarithmic { .. } | ClosedForm::Exponential { .. } => {
            let mut f = AFunctionals::power(c, 0.0);
            f.non_decreasing = Some(false);
            f
        }
        ClosedForm::DoubleScale { .. } => AFunctionals::unknown(None),
    }
}

/// Asymptotic functionals of a smoothness sequence `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BFunctionals {
    /// `sum_j 1/b_j < inf`
    pub inv_sum_finite: Option<bool>,
    /// `sup_d (sum_{j<=d} 1/b_j) / (1 + ln d) < inf`
    pub inv_sum_log_bounded: Option<bool>,
    /// `liminf b_j / j`
    pub liminf_b_over_j: Limit,
    /// `liminf (1 + ln j) b_j / j`
    pub liminf_log_b_over_j: Limit,
    /// `inf_j b_j > 0`, when decidable.
    pub bounded_below: Option<bool>,
    pub non_decreasing: Option<bool>,
}

impl BFunctionals {
    pub fn of(b: &Family) -> Self {
        let constant = BFunctionals {
            inv_sum_finite: Some(false),
            inv_sum_log_bounded: Some(false),
            liminf_b_over_j: Limit::Finite(0.0),
            liminf_log_b_over_j: Limit::Finite(0.0),
            bounded_below: Some(true),
            non_decreasing: Some(true),
        };
        let Family::Closed(form) = b else {
            return BFunctionals {
                inv_sum_finite: None,
                inv_sum_log_bounded: None,
                liminf_b_over_j: Limit::Unknown,
                liminf_log_b_over_j: Limit::Unknown,
                bounded_below: None,
                non_decreasing: None,
            };
        };
        match *form {
            ClosedForm::Constant { .. } => constant,
            ClosedForm::Power { c, alpha } if alpha >= 0.0 => BFunctionals {
                inv_sum_finite: Some(alpha > 1.0),
                inv_sum_log_bounded: Some(alpha >= 1.0),
                liminf_b_over_j: power_limit(c, alpha - 1.0),
                liminf_log_b_over_j: if alpha >= 1.0 { Limit::Infinite } else { Limit::Finite(0.0) },
                bounded_below: Some(true),
                non_decreasing: Some(true),
            },
            ClosedForm::Logarithmic { alpha, .. } if alpha >= 0.0 => constant,
            ClosedForm::Exponential { rho, .. } if rho > 1.0 => BFunctionals {
                inv_sum_finite: Some(true),
                inv_sum_log_bounded: Some(true),
                liminf_b_over_j: Limit::Infinite,
                liminf_log_b_over_j: Limit::Infinite,
                bounded_below: Some(true),
                non_decreasing: Some(true),
            },
            ClosedForm::Exponential { rho, .. } if rho == 1.0 => constant,
            ClosedForm::DoubleScale { .. } => BFunctionals::of(&Family::Explicit(Vec::new())),
            // b_j -> 0
            _ => BFunctionals {
                bounded_below: Some(false),
                non_decreasing: Some(false),
                ..constant
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NotionVerdict {
    pub notion: String,
    /// `None` when the catalog cannot decide the condition.
    pub holds: Option<bool>,
    pub rule: String,
    pub evidence: BTreeMap<String, Evidence>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TractabilityVerdict {
    pub notions: Vec<NotionVerdict>,
    pub ec_notions: Vec<NotionVerdict>,
    pub a_functionals: AFunctionals,
    pub b_functionals: BFunctionals,
}

pub const HIERARCHY: [&str; 5] = ["SPT", "PT", "QPT", "UWT", "WT"];

impl TractabilityVerdict {
    pub fn get(&self, notion: &str) -> Option<&NotionVerdict> {
        self.notions.iter().chain(&self.ec_notions).find(|v| v.notion == notion)
    }

    pub fn holds(&self, notion: &str) -> Option<bool> {
        self.get(notion).and_then(|v| v.holds)
    }

    /// No stronger notion holds while a weaker one fails, for `I` and for
    /// the EC notions of `APP`.
    pub fn hierarchy_consistent(&self) -> bool {
        ["", "EC-"].iter().all(|prefix| {
            HIERARCHY.windows(2).all(|w| {
                let strong = self.holds(&format!("{prefix}{}", w[0]));
                let weak = self.holds(&format!("{prefix}{}", w[1]));
                !(strong == Some(true) && weak == Some(false))
            })
        })
    }
}

/// `(s,t)-WT` label with the shortest round-trip formatting of `s`, `t`.
pub fn st_label(s: f64, t: f64) -> String {
    format!("({s},{t})-WT")
}

fn verdict(notion: impl Into<String>, holds: Option<bool>, rule: &str, ev: &[(&str, Evidence)]) -> NotionVerdict {
    NotionVerdict {
        notion: notion.into(),
        holds,
        rule: rule.into(),
        evidence: ev.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    }
}

fn st_verdict(af: &AFunctionals, s: f64, t: f64) -> Result<NotionVerdict> {
    if !(s > 0.0 && t > 0.0 && s.is_finite() && t.is_finite()) {
        return Err(Error::Domain(format!("(s,t) = ({s},{t}) must be positive and finite")));
    }
    let label = st_label(s, t);
    let v = if (s / 2.0).max(t) > 1.0 {
        verdict(label, Some(true), "max(s/2, t) > 1: always holds", &[])
    } else if s == 2.0 && t == 1.0 {
        verdict(label, af.lim_a.infinite(), "lim a_j = inf", &[("lim a_j", Evidence::Limit(af.lim_a))])
    } else if s == 2.0 {
        let l = af.lim_a_over_ln_j;
        verdict(label, l.infinite(), "lim a_j / ln j = inf", &[("lim a_j / ln j", Evidence::Limit(l))])
    } else {
        let gamma = (2.0 - s) / s;
        let l = af.lim_a_over_power(gamma);
        let mut v =
            verdict(label, l.infinite(), "lim a_j / j^((2-s)/s) = inf", &[("lim a_j / j^((2-s)/s)", Evidence::Limit(l))]);
        v.evidence.insert("(2-s)/s".into(), Evidence::Limit(Limit::Finite(gamma)));
        v
    };
    Ok(v)
}

fn check_family(f: &Family, what: &str) -> Result<()> {
    match f {
        Family::Explicit(v) => {
            if let Some(x) = v.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
                return Err(Error::InvalidFamily(format!("{what} contains non-positive entry {x}")));
            }
            Ok(())
        }
        Family::Closed(form) => {
            let params: Vec<f64> = match *form {
                ClosedForm::Constant { c } | ClosedForm::DoubleScale { c } => vec![c],
                ClosedForm::Power { c, alpha } | ClosedForm::Logarithmic { c, alpha } => vec![c, alpha],
                ClosedForm::Exponential { c, rho } => vec![c, rho],
            };
            if params.iter().any(|p| !p.is_finite()) || form.scale() <= 0.0 {
                return Err(Error::InvalidFamily(format!("{what}: {form:?} needs finite parameters and c > 0")));
            }
            if let ClosedForm::Exponential { rho, .. } = *form {
                if rho <= 0.0 {
                    return Err(Error::InvalidFamily(format!("{what}: rho = {rho} must be positive")));
                }
            }
            Ok(())
        }
    }
}

/// Checks the analytic flags and, for explicit lists, the available prefix.
fn check_regulated(a: &Family, b: &Family, af: &AFunctionals, bf: &BFunctionals) -> Result<()> {
    if af.non_decreasing == Some(false) {
        return Err(Error::NotRegulated("the scaling sequence a is not non-decreasing".into()));
    }
    if bf.bounded_below == Some(false) {
        return Err(Error::NotRegulated("inf b_j = 0".into()));
    }
    let prefix_ok = |v: &[f64]| v.windows(2).all(|w| w[0] <= w[1]);
    if let Family::Explicit(v) = a {
        if !prefix_ok(v) {
            return Err(Error::NotRegulated("the explicit list a is not non-decreasing".into()));
        }
    }
    if let (Family::Closed(ClosedForm::DoubleScale { .. }), Family::Explicit(v)) = (a, b) {
        if !prefix_ok(v) {
            return Err(Error::NotRegulated("double-scale a needs non-decreasing b".into()));
        }
    }
    Ok(())
}

/// Classifies `I` (and, through the exponential-convergence
/// correspondence, `APP`) for the sequences described by `a` and `b`.
///
/// `st_list` adds `(s,t)-WT` entries for `I` and `EC-(s,t)-WT` entries for
/// `APP`; the latter are decided by `(2s,t)-WT` of `I`. `EC-WT` is reported
/// as `EC-(1,1)-WT`, i.e. through `(2,1)-WT` of `I`.
pub fn classify(a: &Family, b: &Family, st_list: &[(f64, f64)]) -> Result<TractabilityVerdict> {
    check_family(a, "a")?;
    check_family(b, "b")?;
    if matches!(b, Family::Closed(ClosedForm::DoubleScale { .. })) {
        return Err(Error::InvalidFamily("double_scale is only valid for a".into()));
    }
    let af = AFunctionals::of(a, b);
    let bf = BFunctionals::of(b);
    check_regulated(a, b, &af, &bf)?;

    let inv_sum = Evidence::Flag(bf.inv_sum_finite);
    let inv_log = Evidence::Flag(bf.inv_sum_log_bounded);
    let l1 = af.liminf_ln_a_over_j;
    let l2 = af.liminf_log_ln_a_over_j;
    let l3 = af.lim_ln_a_over_ln_j;
    let l4 = af.lim_a_over_j;

    let pt = and(bf.inv_sum_finite, l1.positive());
    let pt_ev = [("sum 1/b_j < inf", inv_sum), ("liminf ln a_j / j", Evidence::Limit(l1))];
    let pt_rule = "sum 1/b_j < inf and liminf ln a_j / j > 0";
    let mut notions = vec![
        verdict("SPT", pt, pt_rule, &pt_ev),
        verdict("PT", pt, pt_rule, &pt_ev),
        verdict(
            "QPT",
            and(bf.inv_sum_log_bounded, l2.positive()),
            "sup_d sum_{j<=d} 1/b_j / (1 + ln d) < inf and liminf (1 + ln j) ln a_j / j > 0",
            &[("sup_d sum 1/b_j / (1 + ln d) < inf", inv_log), ("liminf (1 + ln j) ln a_j / j", Evidence::Limit(l2))],
        ),
        verdict("UWT", l3.infinite(), "lim ln a_j / ln j = inf", &[("lim ln a_j / ln j", Evidence::Limit(l3))]),
        verdict("WT", l4.infinite(), "lim a_j / j = inf", &[("lim a_j / j", Evidence::Limit(l4))]),
    ];
    for &(s, t) in st_list {
        notions.push(st_verdict(&af, s, t)?);
    }

    let mut ec_notions: Vec<NotionVerdict> = notions[..4]
        .iter()
        .map(|v| NotionVerdict {
            notion: format!("EC-{}", v.notion),
            rule: format!("I is {}", v.notion),
            ..v.clone()
        })
        .collect();
    let ec_from_st = |s: f64, t: f64, name: String| -> Result<NotionVerdict> {
        let base = st_verdict(&af, 2.0 * s, t)?;
        Ok(NotionVerdict { notion: name, rule: format!("I is {}: {}", base.notion, base.rule), ..base })
    };
    ec_notions.push(ec_from_st(1.0, 1.0, "EC-WT".into())?);
    for &(s, t) in st_list {
        ec_notions.push(ec_from_st(s, t, format!("EC-{}", st_label(s, t)))?);
    }

    let out = TractabilityVerdict { notions, ec_notions, a_functionals: af, b_functionals: bf };
    debug_assert!(out.hierarchy_consistent());
    Ok(out)
}

/// Classification of the unweighted space with smoothness `b`, which
/// coincides with the weighted one for `a_j = (2 pi)^{2 b_j}`.
pub fn classify_b_only(b: &Family, st_list: &[(f64, f64)]) -> Result<TractabilityVerdict> {
    classify(&Family::Closed(ClosedForm::DoubleScale { c: 1.0 }), b, st_list)
}
