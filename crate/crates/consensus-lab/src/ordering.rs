//! Exact optimization over total orders of a small ground set.
//!
//! Kemeny scoring, Slater scoring, and minimum feedback arc sets are all the
//! same problem: given an additive cost `c[i][j]` incurred whenever `i` is
//! placed before `j`, find the orders minimizing the total pairwise cost.
//! The engine solves it by dynamic programming over vertex subsets:
//!
//!   suf[R] = min cost of ordering the set R on its own
//!          = min over first elements v of R of
//!              sum_{d in R - v} c[v][d]  +  suf[R - v]
//!
//! Row sums over subsets are answered in O(1) from two precomputed
//! half-mask tables, so the DP runs in O(2^n * n) after O(n * 2^(n/2))
//! setup. Optimal orders are then enumerated lexicographically by walking
//! the DP's tight transitions from the full set downward.
//!
//! The factorial brute-force oracle used by tests lives elsewhere (it works
//! from elections directly); this module is the production path.

use crate::error::{Error, Result};

/// Hard cap: one u64 per subset (2^24 entries = 128 MiB) is the most this
/// desk-scale tool will ever allocate.
const MAX_GROUND_SET: usize = 24;

/// Pairwise placement costs: `get(i, j)` is paid when `i` precedes `j`.
/// The diagonal stays zero.
#[derive(Debug, Clone)]
pub(crate) struct PairCosts {
    n: usize,
    cost: Vec<u64>,
}

impl PairCosts {
    pub fn new(n: usize) -> Self {
        PairCosts {
            n,
            cost: vec![0; n * n],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(i != j);
        self.cost[i * self.n + j] += v;
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.cost[i * self.n + j]
    }
}

/// Total pairwise cost of one explicit order.
#[cfg(test)]
fn order_cost(costs: &PairCosts, order: &[usize]) -> u64 {
    let mut total = 0;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            total += costs.get(order[i], order[j]);
        }
    }
    total
}

pub(crate) struct OrderingDp {
    n: usize,
    lo_bits: usize,
    lo: Vec<u64>, // per vertex: row sums over subsets of the low half
    hi: Vec<u64>, // per vertex: row sums over subsets of the high half
    suf: Vec<u64>,
}

impl OrderingDp {
    pub fn build(costs: &PairCosts) -> Result<Self> {
        let n = costs.len();
        if n > MAX_GROUND_SET {
            return Err(Error::SizeLimit {
                what: "ordering DP ground set",
                actual: n,
                limit: MAX_GROUND_SET,
            });
        }
        let lo_bits = n / 2;
        let hi_bits = n - lo_bits;
        let mut lo = vec![0u64; n << lo_bits];
        let mut hi = vec![0u64; n << hi_bits];
        for v in 0..n {
            let base = v << lo_bits;
            for m in 1usize..1 << lo_bits {
                let b = m.trailing_zeros() as usize;
                lo[base + m] = lo[base + (m & (m - 1))] + costs.get(v, b);
            }
            let base = v << hi_bits;
            for m in 1usize..1 << hi_bits {
                let b = m.trailing_zeros() as usize;
                hi[base + m] = hi[base + (m & (m - 1))] + costs.get(v, lo_bits + b);
            }
        }
        let mut dp = OrderingDp {
            n,
            lo_bits,
            lo,
            hi,
            suf: Vec::new(),
        };
        let mut suf = vec![0u64; 1usize << n];
        for set in 1usize..1 << n {
            let mut best = u64::MAX;
            let mut rest = set;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let without = set & !(1 << v);
                let cand = dp.row_sum(v, without) + suf[without];
                if cand < best {
                    best = cand;
                }
            }
            suf[set] = best;
        }
        dp.suf = suf;
        Ok(dp)
    }

    /// Sum of `cost[v][d]` over all `d` in `subset`.
    fn row_sum(&self, v: usize, subset: usize) -> u64 {
        let lo_mask = (1usize << self.lo_bits) - 1;
        self.lo[(v << self.lo_bits) + (subset & lo_mask)]
            + self.hi[(v << (self.n - self.lo_bits)) + (subset >> self.lo_bits)]
    }

    fn full(&self) -> usize {
        (1usize << self.n) - 1
    }

    /// The optimal total cost.
    pub fn minimum(&self) -> u64 {
        self.suf[self.full()]
    }

    /// The optimal total cost among orders starting with `v`.
    pub fn minimum_with_first(&self, v: usize) -> u64 {
        let rest = self.full() & !(1 << v);
        self.row_sum(v, rest) + self.suf[rest]
    }

    /// The lexicographically smallest (by vertex index) optimal order.
    pub fn first_minimum_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n);
        let mut set = self.full();
        while set != 0 {
            let mut rest = set;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let without = set & !(1 << v);
                if self.row_sum(v, without) + self.suf[without] == self.suf[set] {
                    order.push(v);
                    set = without;
                    break;
                }
            }
        }
        order
    }

    /// Every optimal order, lexicographically sorted by vertex index.
    /// Errors when more than `cap` orders exist.
    pub fn all_minimum_orders(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.n);
        self.enumerate(self.full(), &mut prefix, &mut out, cap)?;
        Ok(out)
    }

    fn enumerate(
        &self,
        set: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if set == 0 {
            if out.len() >= cap {
                return Err(Error::SizeLimit {
                    what: "optimal order count",
                    actual: cap + 1,
                    limit: cap,
                });
            }
            out.push(prefix.clone());
            return Ok(());
        }
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = set & !(1 << v);
            if self.row_sum(v, without) + self.suf[without] == self.suf[set] {
                prefix.push(v);
                self.enumerate(without, prefix, out, cap)?;
                prefix.pop();
            }
        }
        Ok(())
    }
}
