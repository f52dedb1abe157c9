//! Independent oracles: arithmetic closed forms for counts, quadrature for
//! volumes, sampled sequences for the classifier's limits.

mod common;

use num_rational::BigRational;
use sobolev_widths::ellipsoid::EllipsoidSpec;
use sobolev_widths::spectra::approx_number;
use sobolev_widths::tractability::classify::{AFunctionals, BFunctionals};
use sobolev_widths::tractability::{complexity_app, complexity_i, empirical_probe, Limit};
use sobolev_widths::{ClosedForm, Comparison, Family, Lattice, LatticeConfig, Mode, SequencePair, WeightValue};

/// `r_2(n) = 4 (d_1(n) - d_3(n))`, the number of ways to write `n` as a sum
/// of two squares.
fn r2(n: u64) -> u64 {
    let (mut d1, mut d3) = (0i64, 0i64);
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            for d in [k, n / k] {
                match d % 4 {
                    1 => d1 += 1,
                    3 => d3 += 1,
                    _ => {}
                }
            }
            if k * k == n {
                match k % 4 {
                    1 => d1 -= 1,
                    3 => d3 -= 1,
                    _ => {}
                }
            }
        }
        k += 1;
    }
    (4 * (d1 - d3)) as u64
}

#[test]
fn circle_counts_match_divisor_sums() {
    let l = Lattice::new(&SequencePair::explicit(&[1.0, 1.0], &[1.0, 1.0]).unwrap(), Mode::Float).unwrap();
    let mut cum = 1u64;
    for n in 1..=5000u64 {
        cum += r2(n);
        if n % 37 == 0 || n == 5000 {
            assert_eq!(l.count_f64(n as f64, Comparison::NonStrict).unwrap(), cum, "n = {n}");
            assert_eq!(l.count_f64(n as f64 + 0.5, Comparison::Strict).unwrap(), cum);
        }
    }
}

#[test]
fn one_dimensional_counts_and_widths() {
    // #{k : k^2 <= T} = 2 floor(sqrt T) + 1, and the n-th weight is ceil((n-1)/2)^2
    let l = Lattice::new(&SequencePair::explicit(&[1.0], &[1.0]).unwrap(), Mode::Float).unwrap();
    for t in [0.0f64, 0.5, 1.0, 7.9, 100.0, 12345.6] {
        let want = 2 * t.sqrt().floor() as u64 + 1;
        assert_eq!(l.count_f64(t, Comparison::NonStrict).unwrap(), want);
    }
    for n in [1u64, 2, 3, 10, 11, 2001, 50_000] {
        let k = n / 2;
        let want = ((1 + k * k) as f64).sqrt().recip();
        assert_eq!(approx_number(&l, n).unwrap(), want);
    }
}

#[test]
fn exact_counts_with_thirds() {
    // a = (1/3, 1/3) rounds in f64; exact mode treats the stored doubles
    // as exact rationals and must match a rational box scan
    let third = 1.0 / 3.0;
    let seq = SequencePair::explicit(&[third, third], &[1.0, 1.0]).unwrap();
    let l = Lattice::new(&seq, Mode::Exact).unwrap();
    let a = BigRational::from_float(third).unwrap();
    for t in [1, 3, 5, 12] {
        let tr = BigRational::from_integer(t.into());
        let mut want = 0;
        for x in -8i64..=8 {
            for y in -8i64..=8 {
                let w = &a * BigRational::from_integer((x * x).into()) + &a * BigRational::from_integer((y * y).into());
                if w <= tr {
                    want += 1;
                }
            }
        }
        assert_eq!(l.count(&WeightValue::Exact(tr), Comparison::NonStrict).unwrap(), want, "t = {t}");
    }
}

/// Composite Simpson rule on `[lo, hi]` with `n` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
    let h = (hi - lo) / n as f64;
    let mut s = f(lo) + f(hi);
    for i in 1..n {
        s += f(lo + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn planar_volumes_match_quadrature() {
    // vol = int_{-X}^{X} 2 ((t - a1 |x|^e1) / a2)^{1/e2} dx; substituting
    // x = X (1 - u^4) removes the endpoint singularity
    for &(a1, a2, e1, e2, t) in
        &[(1.0f64, 1.0f64, 2.0f64, 2.0f64, 1.0f64), (0.7, 2.5, 1.0, 3.0, 2.0), (3.0, 0.4, 0.8, 1.5, 0.6), (1.2, 1.9, 4.0, 0.7, 1.3)]
    {
        let x_max = (t / a1).powf(1.0 / e1);
        let g = |u: f64| {
            let x = x_max * (1.0 - u.powi(4));
            let dx = 4.0 * x_max * u.powi(3);
            let r = ((t - a1 * x.powf(e1)).max(0.0) / a2).powf(1.0 / e2);
            2.0 * 2.0 * r * dx
        };
        let quad = simpson(g, 0.0, 1.0, 200_000);
        let v = EllipsoidSpec::new(vec![a1, a2], vec![e1, e2], t).unwrap().volume().unwrap();
        assert!(((v - quad) / quad).abs() < 1e-8, "{v} vs {quad}");
    }
}

#[test]
fn small_monte_carlo_volume() {
    let (w, e, t) = (vec![1.5, 0.5, 2.0], vec![1.0, 2.5, 0.7], 1.7);
    let v = EllipsoidSpec::new(w.clone(), e.clone(), t).unwrap().volume().unwrap();
    let (est, se) = common::mc_volume(&w, &e, t, 1_000_000, 11);
    assert!((v - est).abs() < 4.0 * se, "{v} vs {est} +- {se}");
}

#[test]
fn korobov_complexity_by_hand() {
    // w < 2 ln(1/eps) / ln(1/omega); with omega = 1/2, eps = 1/8 the
    // threshold is 6 and k1^2 + 2 k2^2 < 6 has 11 solutions
    let seq = SequencePair::explicit(&[1.0, 2.0], &[1.0, 1.0]).unwrap();
    let l = Lattice::new(&seq, Mode::Float).unwrap();
    let t = 2.0 * 8f64.ln() / 2f64.ln();
    let brute = (-3i64..=3).flat_map(|x| (-2i64..=2).map(move |y| x * x + 2 * y * y)).filter(|&w| w < 6).count();
    assert!((t - 6.0).abs() < 1e-12);
    assert_eq!(complexity_app(&l, 0.5, 0.125 + 1e-12).unwrap(), brute as u64);
    assert_eq!(complexity_i(&l, 0.5).unwrap(), 5);
}

#[test]
fn probe_matches_closed_form_counts() {
    let seq = SequencePair::explicit(&[1.0], &[1.0]).unwrap();
    let eps = [0.3, 0.05, 0.011];
    let rows = empirical_probe(&seq, 2.0, 1.0, &eps, &[1], Mode::Float, &LatticeConfig::default()).unwrap();
    for r in rows {
        let t: f64 = r.epsilon.powi(-2) - 1.0;
        let want = 2 * (t.sqrt().ceil() as u64) - 1;
        assert_eq!(r.n, Some(want));
        let ratio = (want as f64).ln() / (r.epsilon.powf(-2.0) + 1.0);
        assert_eq!(r.ratio, Some(ratio));
    }
}

/// Samples `x_j` at `j = 10^4, 10^5, 10^6` and checks it is consistent with
/// the claimed limit: approaching a finite value (logarithmic rates allow
/// only a loose final gap), or growing past any finite value.
fn consistent(limit: Limit, x: impl Fn(f64) -> f64, what: &str) {
    let s: Vec<f64> = [1e4, 1e5, 1e6].iter().map(|&j| x(j)).collect();
    match limit {
        Limit::Infinite => assert!(s[2] > s[1] && s[1] > s[0] && s[2] > 5.0, "{what}: {s:?} should diverge"),
        Limit::Finite(v) => {
            let err: Vec<f64> = s.iter().map(|y| (y - v).abs()).collect();
            let shrinking = err[2] <= err[1] + 1e-12 && err[1] <= err[0] + 1e-12;
            assert!(shrinking && err[2] < 0.6 * v.abs().max(1.0), "{what}: {s:?} should approach {v}");
        }
        Limit::Unknown => panic!("{what}: closed forms must decide"),
    }
}

#[test]
fn closed_form_limits_match_samples() {
    use ClosedForm::*;
    let a_forms = [
        Constant { c: 2.0 },
        Power { c: 1.5, alpha: 0.5 },
        Power { c: 0.5, alpha: 1.0 },
        Power { c: 1.0, alpha: 2.0 },
        Logarithmic { c: 1.0, alpha: 1.0 },
        Logarithmic { c: 2.0, alpha: 0.5 },
        Logarithmic { c: 1.0, alpha: 2.0 },
    ];
    let b = Family::Closed(Constant { c: 1.0 });
    for form in a_forms {
        let a = Family::Closed(form);
        let f = AFunctionals::of(&a, &b);
        let at = |j: f64| form.eval(j as usize, None).unwrap();
        let name = format!("{form:?}");
        consistent(f.lim_a, at, &name);
        consistent(f.lim_a_over_j, |j| at(j) / j, &name);
        consistent(f.lim_a_over_ln_j, |j| at(j) / j.ln(), &name);
        consistent(f.lim_ln_a_over_ln_j, |j| at(j).ln() / j.ln(), &name);
        consistent(f.liminf_ln_a_over_j, |j| at(j).ln() / j, &name);
    }
    let b_forms = [Power { c: 2.0, alpha: 1.0 }, Power { c: 1.0, alpha: 0.5 }, Exponential { c: 1.0, rho: 1.0005 }];
    for form in b_forms {
        let f = BFunctionals::of(&Family::Closed(form));
        let at = |j: f64| form.eval(j as usize, None).unwrap();
        let name = format!("{form:?}");
        consistent(f.liminf_b_over_j, |j| at(j) / j, &name);
    }
}
