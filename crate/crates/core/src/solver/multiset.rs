//! Stars-and-bars ranking of sorted cop multisets.
//!
//! A sorted multiset `p_0 <= ... <= p_{c-1}` over `0..n` maps to the strictly
//! increasing sequence `q_i = p_i + i` over `0..n+c-1`, which is ranked in the
//! combinatorial number system: `rank = sum_i C(q_i, i + 1)`.

use crate::error::SolveError;

/// Largest cop count the solver accepts.
pub const MAX_COPS: usize = 8;

#[derive(Clone, Debug)]
pub struct MultisetIndexer {
    n: usize,
    c: usize,
    /// `binom[i * stride + q] = C(q, i + 1)`
    binom: Vec<usize>,
    stride: usize,
    count: usize,
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// `C(n + c - 1, c)`: number of size-`c` multisets over `n` elements.
pub fn multiset_count(n: usize, c: usize) -> u128 {
    if n == 0 {
        return if c == 0 { 1 } else { 0 };
    }
    binomial((n + c - 1) as u128, c as u128)
}

impl MultisetIndexer {
    pub fn new(n: usize, c: usize) -> Result<Self, SolveError> {
        if c == 0 {
            return Err(SolveError::NoCops);
        }
        if c > MAX_COPS {
            return Err(SolveError::BudgetExceeded {
                required: multiset_count(n, c),
                budget: multiset_count(n, MAX_COPS),
            });
        }
        let count = multiset_count(n, c);
        let count = usize::try_from(count).map_err(|_| SolveError::BudgetExceeded {
            required: count,
            budget: usize::MAX as u128,
        })?;
        let stride = n + c;
        let mut binom = vec![0usize; c * stride];
        for i in 0..c {
            for q in 0..stride {
                binom[i * stride + q] = binomial(q as u128, (i + 1) as u128) as usize;
            }
        }
        Ok(MultisetIndexer {
            n,
            c,
            binom,
            stride,
            count,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cops(&self) -> usize {
        self.c
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Rank of a sorted multiset.
    #[inline]
    pub fn rank(&self, sorted: &[u16]) -> usize {
        debug_assert_eq!(sorted.len(), self.c);
        debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
        let mut r = 0;
        for (i, &p) in sorted.iter().enumerate() {
            r += self.binom[i * self.stride + p as usize + i];
        }
        r
    }

    /// Inverse of [`rank`](Self::rank).
    pub fn unrank(&self, mut rank: usize, out: &mut [u16]) {
        debug_assert!(rank < self.count);
        for i in (0..self.c).rev() {
            // Largest q with C(q, i+1) <= rank.
            let row = &self.binom[i * self.stride..(i + 1) * self.stride];
            let q = row.partition_point(|&b| b <= rank) - 1;
            rank -= row[q];
            out[i] = (q - i) as u16;
        }
    }

    /// All multisets, flattened, in rank order.
    pub fn enumerate(&self) -> Vec<u16> {
        let mut out = vec![0u16; self.count * self.c];
        for (r, chunk) in out.chunks_exact_mut(self.c).enumerate() {
            self.unrank(r, chunk);
        }
        out
    }
}

#[inline]
pub(crate) fn sort_small(buf: &mut [u16]) {
    for i in 1..buf.len() {
        let x = buf[i];
        let mut j = i;
        while j > 0 && buf[j - 1] > x {
            buf[j] = buf[j - 1];
            j -= 1;
        }
        buf[j] = x;
    }
}
