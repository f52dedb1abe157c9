//! Best-first enumeration of the weights `w(k)` in increasing order.
//!
//! Only the non-negative orthant is walked; a point with `m` nonzero
//! coordinates stands for `2^m` lattice points. Each orthant point has a
//! unique parent (decrement its last nonzero coordinate), so a point spawns
//! children only at indices at or beyond its last nonzero coordinate and no
//! visited set is needed. Children never weigh less than their parent, which
//! keeps the heap order consistent with the output order.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::arith::Arith;
use crate::error::{Error, Result};

pub(crate) struct Increasing<'a, A: Arith> {
    ar: &'a A,
    heap: BinaryHeap<Reverse<(A::W, Vec<u32>)>>,
    heap_cap: usize,
    failed: bool,
}

impl<'a, A: Arith> Increasing<'a, A> {
    pub fn new(ar: &'a A, heap_cap: usize) -> Self {
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((ar.zero(), vec![0u32; ar.dim()])));
        Increasing { ar, heap, heap_cap, failed: false }
    }

    fn weight(&self, p: &[u32]) -> A::W {
        let terms: Vec<A::W> = p.iter().enumerate().map(|(j, &k)| self.ar.term(j, k as u64)).collect();
        self.ar.sum(&terms)
    }

    fn expand(&mut self, p: &[u32]) {
        let start = p.iter().rposition(|&k| k > 0).unwrap_or(0);
        for i in start..p.len() {
            let mut q = p.to_vec();
            q[i] += 1;
            let w = self.weight(&q);
            self.heap.push(Reverse((w, q)));
        }
    }
}

impl<A: Arith> Iterator for Increasing<'_, A> {
    type Item = Result<(A::W, u64)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let Reverse((w, p)) = self.heap.pop()?;
        let mut mult = 1u64 << p.iter().filter(|&&k| k > 0).count();
        self.expand(&p);
        while matches!(self.heap.peek(), Some(Reverse((top, _))) if *top == w) {
            let Reverse((_, q)) = self.heap.pop().expect("peeked");
            mult += 1u64 << q.iter().filter(|&&k| k > 0).count();
            self.expand(&q);
        }
        if self.heap.len() > self.heap_cap {
            self.failed = true;
            return Some(Err(Error::Capacity(format!(
                "enumeration frontier exceeds {} heap entries",
                self.heap_cap
            ))));
        }
        Some(Ok((w, mult)))
    }
}
