//! Layered retrograde propagation over (cop multiset, robber vertex) states.
//!
//! Robber positions for a fixed cop multiset are packed into a bitmask, so the
//! existential cop side is relaxed a word at a time: when robber-to-move
//! states `(P', R)` become won, every joint predecessor `P` of `P'` gains the
//! cop-to-move states `(P, R)` in one OR. The universal robber side keeps one
//! counter per state (the number of robber moves not yet known to lose) and is
//! relaxed edge by edge.

use std::time::Instant;

use super::multiset::{sort_small, MultisetIndexer, MAX_COPS};

pub(crate) const UNKNOWN: u16 = u16::MAX;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Mask<const W: usize>(pub [u64; W]);

impl<const W: usize> Mask<W> {
    pub const ZERO: Self = Mask([0; W]);

    #[inline]
    pub fn full(n: usize) -> Self {
        let mut m = Self::ZERO;
        for v in 0..n {
            m.set(v);
        }
        m
    }

    #[inline]
    pub fn set(&mut self, v: usize) {
        self.0[v >> 6] |= 1 << (v & 63);
    }

    #[inline]
    pub fn get(&self, v: usize) -> bool {
        self.0[v >> 6] >> (v & 63) & 1 == 1
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn and_not(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..W {
            out.0[i] &= !other.0[i];
        }
        out
    }

    #[inline]
    pub fn or_assign(&mut self, other: &Self) {
        for i in 0..W {
            self.0[i] |= other.0[i];
        }
    }

    #[inline]
    pub fn for_each(&self, mut f: impl FnMut(usize)) {
        for (i, &word) in self.0.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                f(i * 64 + b);
                w &= w - 1;
            }
        }
    }
}

/// Per-state counters, 8-bit unless some closed neighborhood is too large.
pub(crate) enum Counters {
    Narrow(Vec<u8>),
    Wide(Vec<u16>),
}

impl Counters {
    fn new(len: usize, max_closed: usize) -> Self {
        if max_closed < u8::MAX as usize {
            Counters::Narrow(vec![0; len])
        } else {
            Counters::Wide(vec![0; len])
        }
    }

    #[inline]
    fn set(&mut self, i: usize, v: usize) {
        match self {
            Counters::Narrow(c) => c[i] = v as u8,
            Counters::Wide(c) => c[i] = v as u16,
        }
    }

    /// Decrements and reports whether the counter reached zero.
    #[inline]
    fn decrement(&mut self, i: usize) -> bool {
        match self {
            Counters::Narrow(c) => {
                c[i] -= 1;
                c[i] == 0
            }
            Counters::Wide(c) => {
                c[i] -= 1;
                c[i] == 0
            }
        }
    }

    fn bytes(&self) -> usize {
        match self {
            Counters::Narrow(c) => c.len(),
            Counters::Wide(c) => 2 * c.len(),
        }
    }
}

pub(crate) struct EngineInput<'a> {
    pub closed: &'a [Vec<u16>],
    pub indexer: &'a MultisetIndexer,
    pub record_distances: bool,
    pub stop_at_witness: bool,
}

pub(crate) struct EngineOutput<const W: usize> {
    pub robber_won: Vec<Mask<W>>,
    pub cop_won: Vec<Mask<W>>,
    pub dist_robber: Vec<u16>,
    pub dist_cop: Vec<u16>,
    /// Placement that becomes fully winning at the earliest layer, smallest
    /// rank among ties, with that layer.
    pub witness: Option<(usize, u16)>,
    pub layers: u32,
    pub peak_bytes: u64,
    pub millis: u128,
}

pub(crate) fn run<const W: usize>(input: EngineInput<'_>) -> EngineOutput<W> {
    let start = Instant::now();
    let closed = input.closed;
    let idx = input.indexer;
    let n = idx.n();
    let c = idx.cops();
    let m = idx.count();
    let sets = idx.enumerate();
    let full = Mask::<W>::full(n);

    let cop_mask: Vec<Mask<W>> = sets
        .chunks_exact(c)
        .map(|s| {
            let mut mk = Mask::ZERO;
            for &p in s {
                mk.set(p as usize);
            }
            mk
        })
        .collect();

    let max_closed = closed.iter().map(Vec::len).max().unwrap_or(0);
    let mut counters = Counters::new(m * n, max_closed);
    for (p, set_mask) in cop_mask.iter().enumerate() {
        for (r, nbhd) in closed.iter().enumerate() {
            if !set_mask.get(r) {
                let free = nbhd
                    .iter()
                    .filter(|&&x| !set_mask.get(x as usize))
                    .count();
                counters.set(p * n + r, free);
            }
        }
    }

    let mut robber_won = cop_mask.clone();
    let mut cop_won = vec![Mask::<W>::ZERO; m];
    let (mut dist_robber, mut dist_cop) = if input.record_distances {
        (vec![UNKNOWN; m * n], vec![UNKNOWN; m * n])
    } else {
        (Vec::new(), Vec::new())
    };
    if input.record_distances {
        for (p, mk) in cop_mask.iter().enumerate() {
            mk.for_each(|r| dist_robber[p * n + r] = 0);
        }
    }

    let mut delta_robber: Vec<Mask<W>> = cop_mask.clone();
    let mut robber_frontier: Vec<u32> = (0..m as u32).collect();
    let mut delta_cop = vec![Mask::<W>::ZERO; m];
    let mut cop_frontier: Vec<u32> = Vec::new();

    let mut witness = robber_won
        .iter()
        .position(|w| *w == full)
        .map(|p| (p, 0u16));
    let mut layer: u32 = 0;
    let mut buf = [0u16; MAX_COPS];
    let mut choice = [0usize; MAX_COPS];

    while !robber_frontier.is_empty() && !(input.stop_at_witness && witness.is_some()) {
        let next_dist = (layer + 1).min(UNKNOWN as u32 - 1) as u16;

        // Existential cop side: predecessors of newly won robber-to-move states.
        for &pp in &robber_frontier {
            let pp = pp as usize;
            let delta = delta_robber[pp];
            delta_robber[pp] = Mask::ZERO;
            let set = &sets[pp * c..pp * c + c];
            choice[..c].fill(0);
            'odometer: loop {
                for i in 0..c {
                    buf[i] = closed[set[i] as usize][choice[i]];
                }
                sort_small(&mut buf[..c]);
                let p = idx.rank(&buf[..c]);
                let fresh = delta.and_not(&cop_won[p]).and_not(&cop_mask[p]);
                if !fresh.is_zero() {
                    cop_won[p].or_assign(&fresh);
                    if delta_cop[p].is_zero() {
                        cop_frontier.push(p as u32);
                    }
                    delta_cop[p].or_assign(&fresh);
                    if input.record_distances {
                        fresh.for_each(|r| dist_cop[p * n + r] = next_dist);
                    }
                }
                let mut i = 0;
                loop {
                    choice[i] += 1;
                    if choice[i] < closed[set[i] as usize].len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                    if i == c {
                        break 'odometer;
                    }
                }
            }
        }
        robber_frontier.clear();

        // Universal robber side: a robber-to-move state is lost once every
        // non-capturing robber move leads to a won cop-to-move state.
        for &p in &cop_frontier {
            let p = p as usize;
            let delta = delta_cop[p];
            delta_cop[p] = Mask::ZERO;
            let occupied = cop_mask[p];
            delta.for_each(|moved_to| {
                for &from in &closed[moved_to] {
                    let from = from as usize;
                    if occupied.get(from) || robber_won[p].get(from) {
                        continue;
                    }
                    if counters.decrement(p * n + from) {
                        robber_won[p].set(from);
                        if delta_robber[p].is_zero() {
                            robber_frontier.push(p as u32);
                        }
                        delta_robber[p].set(from);
                        if input.record_distances {
                            dist_robber[p * n + from] = next_dist;
                        }
                    }
                }
            });
        }
        cop_frontier.clear();
        layer += 1;

        if witness.is_none() {
            robber_frontier.sort_unstable();
            witness = robber_frontier
                .iter()
                .find(|&&p| robber_won[p as usize] == full)
                .map(|&p| (p as usize, next_dist));
        }
    }

    let mask_bytes = 5 * m * std::mem::size_of::<Mask<W>>();
    let peak_bytes =
        (sets.len() * 2 + mask_bytes + counters.bytes() + 2 * (dist_robber.len() + dist_cop.len()))
            as u64;

    EngineOutput {
        robber_won,
        cop_won,
        dist_robber,
        dist_cop,
        witness,
        layers: layer,
        peak_bytes,
        millis: start.elapsed().as_millis(),
    }
}
