//! Recursive lattice counting over the non-negative orthant with symmetry
//! factors. Every accept/reject decision evaluates the full weight through
//! `Arith::sum`, so the result matches a brute-force box scan bit for bit;
//! the floating estimates below only choose where to start looking.

use rayon::prelude::*;

use super::arith::Arith;
use super::{Comparison, LatticeConfig};
use crate::error::{Error, Result};

struct Ctx<'a, A: Arith> {
    ar: &'a A,
    t: &'a A::W,
    t_f: f64,
    cmp: Comparison,
    order: Vec<usize>,
    cap: u64,
}

impl<A: Arith> Ctx<'_, A> {
    #[inline]
    fn accepts(&self, w: &A::W) -> bool {
        match self.cmp {
            Comparison::Strict => w < self.t,
            Comparison::NonStrict => w <= self.t,
        }
    }

    fn accepts_with(&self, terms: &mut [A::W], j: usize, k: u64) -> bool {
        terms[j] = self.ar.term(j, k);
        self.accepts(&self.ar.sum(terms))
    }

    /// Largest `k` such that setting coordinate `j` to `k` (others as in
    /// `terms`) is accepted, or `None` if even `k = 0` is rejected.
    fn max_k(&self, terms: &mut [A::W], j: usize) -> Option<u64> {
        terms[j] = self.ar.zero();
        let rem = self.t_f - self.ar.to_f64(&self.ar.sum(terms));
        let mut k = if rem > 0.0 {
            ((rem / self.ar.scale(j)).powf(self.ar.exponent(j).recip()).floor() as u64).min(self.cap)
        } else {
            0
        };
        let found = if self.accepts_with(terms, j, k) {
            while k < self.cap && self.accepts_with(terms, j, k + 1) {
                k += 1;
            }
            Some(k)
        } else {
            loop {
                if k == 0 {
                    break None;
                }
                k -= 1;
                if self.accepts_with(terms, j, k) {
                    break Some(k);
                }
            }
        };
        terms[j] = self.ar.zero();
        found
    }

    fn recurse(&self, level: usize, terms: &mut [A::W]) -> u64 {
        let j = self.order[level];
        if level + 1 == self.order.len() {
            return self.max_k(terms, j).map_or(0, |k| 2 * k + 1);
        }
        let mut total = 0;
        let mut k = 0;
        while k <= self.cap && self.accepts_with(terms, j, k) {
            let sub = self.recurse(level + 1, terms);
            total += if k == 0 { sub } else { 2 * sub };
            k += 1;
        }
        terms[j] = self.ar.zero();
        total
    }
}

/// Largest per-coordinate range `(T / a_j)^{1 / (2 b_j)}`.
pub(crate) fn check_capacity<A: Arith>(ar: &A, t_f: f64, cap: u64) -> Result<()> {
    if t_f.is_nan() {
        return Err(Error::Domain("threshold is NaN".into()));
    }
    for j in 0..ar.dim() {
        let range = (t_f.max(0.0) / ar.scale(j)).powf(ar.exponent(j).recip());
        if !(range <= cap as f64) {
            return Err(Error::Capacity(format!(
                "coordinate {} would range over |k| <= {range:.3e}, cap is {cap}",
                j + 1
            )));
        }
    }
    Ok(())
}

/// Coordinates by decreasing `a_j` (ties by index): smallest ranges first.
pub(crate) fn pruning_order<A: Arith>(ar: &A) -> Vec<usize> {
    let mut order: Vec<usize> = (0..ar.dim()).collect();
    order.sort_by(|&i, &j| ar.scale(j).total_cmp(&ar.scale(i)).then(i.cmp(&j)));
    order
}

pub(crate) fn count<A: Arith>(ar: &A, t: &A::W, cmp: Comparison, cfg: &LatticeConfig) -> Result<u64> {
    let t_f = ar.to_f64(t);
    check_capacity(ar, t_f, cfg.range_cap)?;
    let ctx = Ctx { ar, t, t_f, cmp, order: pruning_order(ar), cap: cfg.range_cap };
    let d = ar.dim();
    let mut terms = vec![ar.zero(); d];
    let first = ctx.order[0];
    let Some(kmax) = ctx.max_k(&mut terms, first) else {
        return Ok(0);
    };
    if d == 1 {
        return Ok(2 * kmax + 1);
    }
    // Partition the outermost coordinate; integer partial sums make the
    // result independent of how the range is split.
    let total = (0..=kmax)
        .into_par_iter()
        .map(|k| {
            let mut terms = vec![ar.zero(); d];
            terms[first] = ar.term(first, k);
            let sub = ctx.recurse(1, &mut terms);
            if k == 0 {
                sub
            } else {
                2 * sub
            }
        })
        .sum();
    Ok(total)
}

/// Distinct weights `w` with `lo < w <= hi` and the number of lattice points
/// attaining each, sorted increasingly.
pub(crate) fn shell<A: Arith>(ar: &A, lo: &A::W, hi: &A::W, cfg: &LatticeConfig) -> Result<Vec<(A::W, u64)>> {
    let t_f = ar.to_f64(hi);
    check_capacity(ar, t_f, cfg.range_cap)?;
    let ctx = Ctx { ar, t: hi, t_f, cmp: Comparison::NonStrict, order: pruning_order(ar), cap: cfg.range_cap };
    let mut out = Vec::new();
    let mut terms = vec![ar.zero(); ar.dim()];
    collect(&ctx, lo, 0, &mut terms, 1, &mut out);
    out.sort();
    let mut merged: Vec<(A::W, u64)> = Vec::new();
    for (w, m) in out {
        match merged.last_mut() {
            Some((last, lm)) if *last == w => *lm += m,
            _ => merged.push((w, m)),
        }
    }
    Ok(merged)
}

fn collect<A: Arith>(
    ctx: &Ctx<'_, A>,
    lo: &A::W,
    level: usize,
    terms: &mut [A::W],
    mult: u64,
    out: &mut Vec<(A::W, u64)>,
) {
    let ar = ctx.ar;
    let j = ctx.order[level];
    if level + 1 == ctx.order.len() {
        let Some(kmax) = ctx.max_k(terms, j) else { return };
        let mut k = kmax;
        loop {
            terms[j] = ar.term(j, k);
            let w = ar.sum(terms);
            if w <= *lo {
                break;
            }
            out.push((w, if k == 0 { mult } else { 2 * mult }));
            if k == 0 {
                break;
            }
            k -= 1;
        }
        terms[j] = ar.zero();
        return;
    }
    let mut k = 0;
    while k <= ctx.cap && ctx.accepts_with(terms, j, k) {
        collect(ctx, lo, level + 1, terms, if k == 0 { mult } else { 2 * mult }, out);
        k += 1;
    }
    terms[j] = ar.zero();
}
