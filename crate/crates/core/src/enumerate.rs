//! Deterministic first-hit search over index tuples.
//!
//! A search space is split into fixed-size blocks of consecutive ranks.
//! Blocks may be scanned in parallel, but the reported hit is always the
//! one with the smallest rank, so results do not depend on the thread count.

use rayon::prelude::*;

/// An ordered finite set of index tuples.
pub(crate) trait TupleSpace: Sync {
    fn len(&self) -> u64;
    /// The tuple of rank `r` (`r < len`).
    fn unrank(&self, r: u64) -> Vec<usize>;
    /// Steps to the next tuple; `false` after the last one.
    fn advance(&self, t: &mut [usize]) -> bool;
}

/// All tuples in `{0..base}^width`, last position varying fastest.
pub(crate) struct Odometer {
    base: usize,
    width: usize,
    len: u64,
}

impl Odometer {
    /// `None` when the number of tuples does not fit in a `u64`.
    pub(crate) fn new(base: usize, width: usize) -> Option<Self> {
        let len = (base as u64).checked_pow(u32::try_from(width).ok()?)?;
        Some(Odometer { base, width, len })
    }
}

impl TupleSpace for Odometer {
    fn len(&self) -> u64 {
        self.len
    }

    fn unrank(&self, mut r: u64) -> Vec<usize> {
        let mut t = vec![0; self.width];
        for slot in t.iter_mut().rev() {
            *slot = (r % self.base as u64) as usize;
            r /= self.base as u64;
        }
        t
    }

    fn advance(&self, t: &mut [usize]) -> bool {
        for slot in t.iter_mut().rev() {
            *slot += 1;
            if *slot < self.base {
                return true;
            }
            *slot = 0;
        }
        false
    }
}

/// Strictly increasing tuples of length `k` from `0..n`, in lexicographic order.
pub(crate) struct Combinations {
    n: usize,
    k: usize,
    len: u64,
}

pub(crate) fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Option<Self> {
        Some(Combinations {
            n,
            k,
            len: binomial(n, k)?,
        })
    }
}

impl TupleSpace for Combinations {
    fn len(&self) -> u64 {
        self.len
    }

    fn unrank(&self, mut r: u64) -> Vec<usize> {
        let mut t = Vec::with_capacity(self.k);
        let mut c = 0;
        for i in 0..self.k {
            loop {
                // Tuples starting (at position i) with c.
                let count = binomial(self.n - c - 1, self.k - i - 1).expect("bounded by len");
                if r < count {
                    break;
                }
                r -= count;
                c += 1;
            }
            t.push(c);
            c += 1;
        }
        t
    }

    fn advance(&self, t: &mut [usize]) -> bool {
        let k = self.k;
        for i in (0..k).rev() {
            if t[i] < self.n - k + i {
                t[i] += 1;
                for j in i + 1..k {
                    t[j] = t[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

const BLOCK: u64 = 512;

fn scan_block<S: TupleSpace + ?Sized, St, T>(
    space: &S,
    block: u64,
    state: &mut St,
    test: &(impl Fn(&mut St, &[usize]) -> Option<T> + Sync),
) -> Option<T> {
    let start = block * BLOCK;
    let end = (start + BLOCK).min(space.len());
    let mut t = space.unrank(start);
    for r in start..end {
        if let Some(hit) = test(state, &t) {
            return Some(hit);
        }
        if r + 1 < end {
            space.advance(&mut t);
        }
    }
    None
}

/// The lowest-ranked tuple for which `test` returns `Some`. `init` builds a
/// per-worker scratch state. `threads <= 1` scans sequentially.
pub(crate) fn find_first<S, St, T>(
    space: &S,
    threads: usize,
    init: impl Fn() -> St + Sync,
    test: impl Fn(&mut St, &[usize]) -> Option<T> + Sync,
) -> Option<T>
where
    S: TupleSpace,
    T: Send,
{
    let blocks = space.len().div_ceil(BLOCK);
    if threads <= 1 {
        let mut state = init();
        return (0..blocks).find_map(|b| scan_block(space, b, &mut state, &test));
    }
    let parallel = || {
        (0..blocks)
            .into_par_iter()
            .find_map_first(|b| scan_block(space, b, &mut init(), &test))
    };
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(parallel),
        Err(_) => {
            let mut state = init();
            (0..blocks).find_map(|b| scan_block(space, b, &mut state, &test))
        }
    }
}
