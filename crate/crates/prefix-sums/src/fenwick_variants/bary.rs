//! Digit-decomposition Fenwick tree.
//!
//! The cell array `F[0..=n]` generalizes the binary Fenwick invariant: let
//! `d * b^k` be the value of the lowest nonzero base-`b` digit of `q`; then
//! `F[q]` stores the sum of the `d * b^k` elements ending at `q`, i.e.
//! `A[q - d*b^k..q)`. It is built by partitioning `A[0..n)` at the
//! endpoints `m * b^j` and recursing into each sub-range.
//!
//! A `sum(i)` query then adds one cell per nonzero digit of `i + 1`,
//! clearing the lowest nonzero digit between reads. An `update(i, delta)`
//! must touch every cell whose span covers `i`: at level `j` with digit
//! `d_j` these are the cells `P_j + k * b^j` for `k` in `(d_j, b-1]`, where
//! `P_j` is `i` with digits `0..=j` cleared — at most `b - 1` cells per
//! level, which is why large fanouts pay for updates.
//!
//! Cells are stored grouped into blocks of `b` consecutive entries, block
//! `j` holding cells `j*b..(j+1)*b` as a prefix-summed [`PrefixBlock`] (the
//! block is built from consecutive cell differences so that `block.sum(t)`
//! returns cell `j*b + t` unchanged). The payoff is at level 0: the cells
//! an update touches there form a suffix of one block, one masked suffix
//! add. Higher-level cells are lone entries of their blocks; those adds are
//! paired with a cancelling add so later cells in the block stay intact.

use crate::node::{Backend, PrefixBlock};
use crate::PrefixSum;

#[derive(Clone)]
pub struct BaryFenwickTree<N: PrefixBlock> {
    blocks: Vec<N>,
    n: usize,
    backend: Backend,
}

impl<N: PrefixBlock> BaryFenwickTree<N> {
    pub fn new(values: &[i64]) -> Self {
        Self::with_backend(values, Backend::auto())
    }

    pub fn with_backend(values: &[i64], backend: Backend) -> Self {
        assert!(!values.is_empty(), "n must be at least 1");
        let b = N::FANOUT;
        let n = values.len();
        let cells = build_cells(values, b);
        let blocks = cells
            .chunks(b)
            .map(|chunk| {
                // first differences, so block prefix sums reproduce the cells
                let mut local = vec![0i64; chunk.len()];
                local[0] = chunk[0];
                for t in 1..chunk.len() {
                    local[t] = chunk[t].wrapping_sub(chunk[t - 1]);
                }
                N::build(&local)
            })
            .collect();
        Self { blocks, n, backend }
    }

    /// Value of cell `q` (0 for the dummy cell 0).
    pub fn cell(&self, q: usize) -> i64 {
        debug_assert!(q <= self.n);
        self.blocks[q / N::FANOUT].sum(q % N::FANOUT)
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// `sum` reporting every cell index read; one read per nonzero digit of
    /// `i + 1`.
    pub fn sum_traced(&self, i: usize, mut touch: impl FnMut(usize)) -> i64 {
        debug_assert!(i < self.n, "index {i} out of range");
        let b = N::FANOUT;
        let beta = b.trailing_zeros();
        let mut p = i + 1;
        let mut acc = 0i64;
        while p > 0 {
            touch(p);
            acc = acc.wrapping_add(self.blocks[p / b].sum(p % b));
            // clear the lowest nonzero digit
            let shift = p.trailing_zeros() / beta * beta;
            let digit = (p >> shift) & (b - 1);
            p -= digit << shift;
        }
        acc
    }

    /// `update` reporting every covering cell it adjusts (positions `<= n`).
    pub fn update_traced(&mut self, i: usize, delta: i64, mut touch: impl FnMut(usize)) {
        debug_assert!(i < self.n, "index {i} out of range");
        let b = N::FANOUT;
        let backend = self.backend;

        // level 0: the covering cells form a suffix of block i / b
        let d0 = i % b;
        if d0 + 1 < b {
            self.blocks[i / b].update(d0 + 1, delta, backend);
        }
        for k in d0 + 1..b {
            let q = i - d0 + k;
            if q <= self.n {
                touch(q);
            }
        }

        // higher levels: lone cells, one per digit value above d_j
        let mut stride = b;
        while stride <= self.n {
            let dj = (i / stride) % b;
            let base = i / (stride * b) * (stride * b);
            for k in dj + 1..b {
                let q = base + k * stride;
                if q > self.n {
                    break;
                }
                touch(q);
                self.cell_add(q, delta);
            }
            stride *= b;
        }
    }

    /// Adds `delta` to cell `q` alone: a suffix add from its offset plus a
    /// cancelling add right after it, so the rest of the block is unchanged.
    fn cell_add(&mut self, q: usize, delta: i64) {
        let b = N::FANOUT;
        let backend = self.backend;
        let block = &mut self.blocks[q / b];
        let t = q % b;
        block.update(t, delta, backend);
        if t + 1 < b {
            block.update(t + 1, delta.wrapping_neg(), backend);
        }
    }
}

/// Endpoint-partition construction of the cell array.
fn build_cells(values: &[i64], b: usize) -> Vec<i64> {
    let n = values.len();
    let mut pfx = vec![0i64; n + 1];
    for (k, &v) in values.iter().enumerate() {
        pfx[k + 1] = pfx[k].wrapping_add(v);
    }
    let mut cells = vec![0i64; n + 1];
    fill(&mut cells, &pfx, b, 0, usize::MAX);
    cells
}

/// Writes every cell in `(base, base + max_len]`: endpoints `m * b^j`
/// relative to `base` get the prefix sum from `base`, then each endpoint
/// with `b^j > 1` owns the open range before the next endpoint and is
/// recursed into.
fn fill(cells: &mut [i64], pfx: &[i64], b: usize, base: usize, max_len: usize) {
    let n = pfx.len() - 1;
    let mut stride = 1usize;
    while stride <= max_len && base + stride <= n {
        for m in 1..b {
            let end = m * stride;
            if end > max_len || base + end > n {
                break;
            }
            cells[base + end] = pfx[base + end].wrapping_sub(pfx[base]);
            if stride > 1 {
                fill(cells, pfx, b, base + end, stride - 1);
            }
        }
        stride *= b;
    }
}

impl<N: PrefixBlock> PrefixSum for BaryFenwickTree<N> {
    fn len(&self) -> usize {
        self.n
    }

    fn sum(&self, i: usize) -> i64 {
        self.sum_traced(i, |_| {})
    }

    fn update(&mut self, i: usize, delta: i64) {
        self.update_traced(i, delta, |_| {});
    }
}
