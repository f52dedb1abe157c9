//! Independent oracles shared by the integration tests. Nothing here calls
//! the counting or enumeration code under test.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sobolev_widths::SequencePair;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random `(a, b)` with `d` in `1..=d_max`, `a_j` in `a_range`, `b_j` in
/// `b_range`. With `regulated`, `a` is sorted non-decreasing.
pub fn random_pair(
    rng: &mut ChaCha8Rng,
    d_max: usize,
    a_range: (f64, f64),
    b_range: (f64, f64),
    regulated: bool,
) -> SequencePair {
    let d = rng.random_range(1..=d_max);
    let mut a: Vec<f64> = (0..d).map(|_| rng.random_range(a_range.0..=a_range.1)).collect();
    let b: Vec<f64> = (0..d).map(|_| rng.random_range(b_range.0..=b_range.1)).collect();
    if regulated {
        a.sort_by(f64::total_cmp);
    }
    SequencePair::explicit(&a, &b).unwrap()
}

/// `sum_j a_j |k_j|^{2 b_j}`, accumulated left to right from zero. This is
/// the defining formula of the weight, restated here.
pub fn oracle_weight(a: &[f64], b: &[f64], k: &[i64]) -> f64 {
    let mut s = 0.0;
    for j in 0..a.len() {
        s += a[j] * (k[j].unsigned_abs() as f64).powf(2.0 * b[j]);
    }
    s
}

/// Every weight `<= t` of the full box `|k_j| <= (t / a_j)^{1/(2 b_j)}`,
/// sorted ascending. The box bound is padded by one so that rounding in the
/// bound itself never drops a point.
pub fn box_weights(seq: &SequencePair, t: f64) -> Vec<f64> {
    let (a, b) = (seq.a(), seq.b());
    let r: Vec<i64> = a.iter().zip(b).map(|(a, b)| (t / a).powf(0.5 / b).floor() as i64 + 1).collect();
    fn scan(a: &[f64], b: &[f64], r: &[i64], t: f64, k: &mut Vec<i64>, acc: &mut Vec<f64>) {
        let j = k.len();
        if j == a.len() {
            let w = oracle_weight(a, b, k);
            if w <= t {
                acc.push(w);
            }
            return;
        }
        for kj in -r[j]..=r[j] {
            k.push(kj);
            scan(a, b, r, t, k, acc);
            k.pop();
        }
    }
    let mut out: Vec<f64> = (-r[0]..=r[0])
        .into_par_iter()
        .flat_map_iter(|k0| {
            let mut acc = Vec::new();
            scan(a, b, &r, t, &mut vec![k0], &mut acc);
            acc
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// `#{w in sorted : w < t}` or `<= t`.
pub fn count_sorted(sorted: &[f64], t: f64, strict: bool) -> u64 {
    (if strict { sorted.partition_point(|&w| w < t) } else { sorted.partition_point(|&w| w <= t) }) as u64
}

/// The first `n` weights with multiplicity, from a full sort of a box that
/// is grown until it holds at least `n` points.
pub fn sorted_prefix(seq: &SequencePair, n: usize) -> Vec<f64> {
    let mut t = 1.0;
    loop {
        let w = box_weights(seq, t);
        if w.len() >= n {
            return w[..n].to_vec();
        }
        t *= 2.0;
    }
}

/// `Gamma(1 + d/2)` by the product formula.
pub fn gamma_one_plus_half(d: u32) -> f64 {
    let mut x = 1.0 + d as f64 / 2.0;
    let mut g = 1.0;
    while x > 1.5 {
        x -= 1.0;
        g *= x;
    }
    if (x - 1.5).abs() < 1e-12 {
        g * 0.5 * std::f64::consts::PI.sqrt()
    } else {
        g
    }
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Hit-ratio estimate of `vol{x : sum a_j |x_j|^{e_j} <= t}` from `n`
/// uniform draws in the bounding box, with its standard error. Chunks use
/// independent seeds so the estimate does not depend on the thread count.
pub fn mc_volume(weights: &[f64], exps: &[f64], t: f64, n: u64, seed: u64) -> (f64, f64) {
    let h: Vec<f64> = weights.iter().zip(exps).map(|(a, e)| (t / a).powf(e.recip())).collect();
    let box_vol: f64 = h.iter().map(|x| 2.0 * x).product();
    const CHUNK: u64 = 1 << 16;
    let chunks = n.div_ceil(CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut r = ChaCha8Rng::seed_from_u64(seed ^ (c.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
            let m = CHUNK.min(n - c * CHUNK);
            let mut hits = 0u64;
            for _ in 0..m {
                let mut s = 0.0;
                for j in 0..h.len() {
                    let x: f64 = r.random_range(-h[j]..h[j]);
                    s += weights[j] * x.abs().powf(exps[j]);
                }
                if s <= t {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let p = hits as f64 / n as f64;
    (box_vol * p, box_vol * (p * (1.0 - p) / n as f64).sqrt())
}
