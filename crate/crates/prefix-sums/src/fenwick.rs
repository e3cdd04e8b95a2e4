//! The classic Fenwick tree and a cache-conflict-free "holed" layout.
//!
//! Cell `q >= 1` of the `n + 1`-word array covers the `lsb(q)` elements
//! ending at `q`, i.e. it stores the sum of `A[q - lsb(q)..q)`. Queries
//! clear the lowest set bit until the index reaches 0; updates add the
//! lowest set bit until the index passes `n`. Position 0 is a dummy and is
//! never read as data.
//!
//! Because every cell on the top levels sits at an index that is a large
//! power of two, the classic array maps those cells to the same set of a
//! set-associative cache (see [`crate::cachemodel`]). The holed layout
//! relocates logical cell `q` to physical position `q + q / d`, spreading
//! power-of-two strides across sets at the cost of `n / d` extra words.
//! With the default `d = 2^14` the overhead is 0.006%.

use crate::PrefixSum;

/// Clears the lowest set bit: `p & (p - 1)`.
#[inline]
pub fn lsb_clear(p: usize) -> usize {
    debug_assert!(p >= 1);
    p & (p - 1)
}

/// Isolates the lowest set bit: `p & -p`.
#[inline]
pub fn lsb_isolate(p: usize) -> usize {
    debug_assert!(p >= 1);
    p & p.wrapping_neg()
}

/// Physical position of logical cell `i` under hole spacing `d`.
#[inline]
pub fn remap(i: usize, d: usize) -> usize {
    debug_assert!(d >= 1 && d.is_power_of_two());
    i + i / d
}

/// Default hole spacing for [`HoledFenwickTree`].
pub const DEFAULT_HOLE_SPACING: usize = 1 << 14;

/// Fills `tree[base + i] = sum of a[base..base + i)` for `i = 1, 2, 4, ...`
/// bounded by `max_step`, recursing into each sub-range. `pfx[k]` is the
/// wrapping sum of `a[..k]`.
fn fill_cells(tree: &mut [i64], pfx: &[i64], base: usize, max_step: usize) {
    let n = pfx.len() - 1;
    let mut step = 1usize;
    while step <= max_step && base + step <= n {
        tree[base + step] = pfx[base + step].wrapping_sub(pfx[base]);
        if step > 1 {
            fill_cells(tree, pfx, base + step, step - 1);
        }
        step <<= 1;
    }
}

fn build_cells(values: &[i64]) -> Vec<i64> {
    let n = values.len();
    let mut pfx = vec![0i64; n + 1];
    for (k, &v) in values.iter().enumerate() {
        pfx[k + 1] = pfx[k].wrapping_add(v);
    }
    let mut tree = vec![0i64; n + 1];
    fill_cells(&mut tree, &pfx, 0, usize::MAX);
    tree
}

#[derive(Debug, Clone)]
pub struct FenwickTree {
    /// `n + 1` cells; `tree[0]` is never read.
    tree: Vec<i64>,
}

impl FenwickTree {
    pub fn new(values: &[i64]) -> Self {
        assert!(!values.is_empty(), "n must be at least 1");
        Self {
            tree: build_cells(values),
        }
    }

    pub fn storage_words(&self) -> usize {
        self.tree.len()
    }

    /// Raw cell value; exposed for layout tests and cross-checks.
    pub fn cell(&self, q: usize) -> i64 {
        self.tree[q]
    }

    #[cfg(test)]
    pub(crate) fn corrupt_cell(&mut self, q: usize) {
        self.tree[q] = self.tree[q].wrapping_add(1);
    }

    /// `sum` that also reports each cell index it reads, in traversal order.
    pub fn sum_traced(&self, i: usize, mut touch: impl FnMut(usize)) -> i64 {
        debug_assert!(i < self.len(), "index {i} out of range");
        let mut p = i + 1;
        let mut acc = 0i64;
        while p > 0 {
            touch(p);
            acc = acc.wrapping_add(self.tree[p]);
            p = lsb_clear(p);
        }
        acc
    }

    /// `update` that also reports each cell index it writes.
    pub fn update_traced(&mut self, i: usize, delta: i64, mut touch: impl FnMut(usize)) {
        debug_assert!(i < self.len(), "index {i} out of range");
        let n = self.len();
        let mut p = i + 1;
        while p <= n {
            touch(p);
            self.tree[p] = self.tree[p].wrapping_add(delta);
            p += lsb_isolate(p);
        }
    }
}

impl PrefixSum for FenwickTree {
    fn len(&self) -> usize {
        self.tree.len() - 1
    }

    fn sum(&self, i: usize) -> i64 {
        debug_assert!(i < self.len(), "index {i} out of range");
        let mut p = i + 1;
        let mut acc = 0i64;
        while p > 0 {
            acc = acc.wrapping_add(self.tree[p]);
            p = lsb_clear(p);
        }
        acc
    }

    fn update(&mut self, i: usize, delta: i64) {
        debug_assert!(i < self.len(), "index {i} out of range");
        let n = self.len();
        let mut p = i + 1;
        while p <= n {
            self.tree[p] = self.tree[p].wrapping_add(delta);
            p += lsb_isolate(p);
        }
    }
}

/// Fenwick tree with logical cell `i` stored at `i + i / d`.
#[derive(Debug, Clone)]
pub struct HoledFenwickTree {
    tree: Vec<i64>,
    n: usize,
    d: usize,
}

impl HoledFenwickTree {
    pub fn new(values: &[i64]) -> Self {
        Self::with_spacing(values, DEFAULT_HOLE_SPACING)
    }

    pub fn with_spacing(values: &[i64], d: usize) -> Self {
        assert!(!values.is_empty(), "n must be at least 1");
        assert!(d >= 1 && d.is_power_of_two(), "spacing must be a power of two");
        let n = values.len();
        let cells = build_cells(values);
        let mut tree = vec![0i64; remap(n, d) + 1];
        for (q, &v) in cells.iter().enumerate() {
            tree[remap(q, d)] = v;
        }
        Self { tree, n, d }
    }

    pub fn storage_words(&self) -> usize {
        self.tree.len()
    }

    pub fn spacing(&self) -> usize {
        self.d
    }

    /// `sum` reporting the physical position of every cell read.
    pub fn sum_traced(&self, i: usize, mut touch: impl FnMut(usize)) -> i64 {
        debug_assert!(i < self.n, "index {i} out of range");
        let mut p = i + 1;
        let mut acc = 0i64;
        while p > 0 {
            let phys = remap(p, self.d);
            touch(phys);
            acc = acc.wrapping_add(self.tree[phys]);
            p = lsb_clear(p);
        }
        acc
    }
}

impl PrefixSum for HoledFenwickTree {
    fn len(&self) -> usize {
        self.n
    }

    fn sum(&self, i: usize) -> i64 {
        debug_assert!(i < self.n, "index {i} out of range");
        let mut p = i + 1;
        let mut acc = 0i64;
        while p > 0 {
            acc = acc.wrapping_add(self.tree[remap(p, self.d)]);
            p = lsb_clear(p);
        }
        acc
    }

    fn update(&mut self, i: usize, delta: i64) {
        debug_assert!(i < self.n, "index {i} out of range");
        let mut p = i + 1;
        while p <= self.n {
            let phys = remap(p, self.d);
            self.tree[phys] = self.tree[phys].wrapping_add(delta);
            p += lsb_isolate(p);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{prefix, random_values, A16};

    #[test]
    fn lsb_helpers() {
        assert_eq!(lsb_clear(11), 10);
        assert_eq!(lsb_clear(8), 0);
        assert_eq!(lsb_clear(12), 8);
        assert_eq!(lsb_isolate(12), 4);
        assert_eq!(lsb_isolate(11), 1);
        assert_eq!(lsb_isolate(16), 16);
    }

    #[test]
    fn remap_examples() {
        assert_eq!(remap(5, 1 << 14), 5);
        assert_eq!(remap(16384, 16384), 16385);
        assert_eq!(remap(40000, 16384), 40002);
    }

    #[test]
    fn build_produces_the_expected_cells() {
        let t = FenwickTree::new(&A16);
        assert_eq!(t.cell(8), 282);
        assert_eq!(t.cell(10), -86);
        assert_eq!(t.cell(11), -52);
        assert_eq!(t.storage_words(), 17);

        let single = FenwickTree::new(&[9]);
        assert_eq!(single.cell(0), 0);
        assert_eq!(single.cell(1), 9);
        assert_eq!(single.storage_words(), 2);
    }

    #[test]
    fn build_satisfies_the_cell_invariant() {
        for n in [1usize, 2, 3, 15, 16, 17, 100, 1000] {
            let values = random_values(n, n as u64);
            let t = FenwickTree::new(&values);
            for q in 1..=n {
                let span = lsb_isolate(q);
                let expected = values[q - span..q]
                    .iter()
                    .fold(0i64, |a, &v| a.wrapping_add(v));
                assert_eq!(t.cell(q), expected, "cell {q} at n={n}");
            }
        }
    }

    #[test]
    fn recursive_build_matches_the_iterative_one() {
        // classic O(n) pass: seed each cell with its value, push into parent
        for n in [1usize, 2, 7, 64, 100, 1000, 10_000] {
            let values = random_values(n, n as u64 ^ 0xF00D);
            let t = FenwickTree::new(&values);
            let mut iterative = vec![0i64; n + 1];
            for (i, &v) in values.iter().enumerate() {
                iterative[i + 1] = v;
            }
            for q in 1..=n {
                let parent = q + lsb_isolate(q);
                if parent <= n {
                    iterative[parent] = iterative[parent].wrapping_add(iterative[q]);
                }
            }
            for q in 0..=n {
                assert_eq!(t.cell(q), iterative[q], "cell {q} at n={n}");
            }
        }
    }

    #[test]
    fn sum_visits_the_documented_path() {
        let t = FenwickTree::new(&A16);
        let mut visited = Vec::new();
        let s = t.sum_traced(10, |p| visited.push(p));
        assert_eq!(s, 144);
        assert_eq!(visited, [11, 10, 8]);

        assert_eq!(t.sum(0), 13); // single cell tree[1]
        assert_eq!(t.sum(7), 282); // one iteration, tree[8]

        // trace length is the popcount of i + 1
        for i in 0..16 {
            let mut count = 0usize;
            t.sum_traced(i, |_| count += 1);
            assert_eq!(count, (i + 1).count_ones() as usize);
        }
    }

    #[test]
    fn update_visits_the_documented_path() {
        let mut t = FenwickTree::new(&A16);
        let mut visited = Vec::new();
        t.update_traced(10, -37, |p| visited.push(p));
        assert_eq!(visited, [11, 12, 16]);
        assert_eq!(t.sum(10), 107);
        assert_eq!(t.sum(9), 196);

        let before: Vec<i64> = (0..16).map(|i| t.sum(i)).collect();
        t.update(3, 0);
        let after: Vec<i64> = (0..16).map(|i| t.sum(i)).collect();
        assert_eq!(before, after);
    }

    #[test]
    fn holed_tree_is_observationally_identical() {
        for d in [1usize, 2, 16, DEFAULT_HOLE_SPACING] {
            let values = random_values(300, 21);
            let mut classic = FenwickTree::new(&values);
            let mut holed = HoledFenwickTree::with_spacing(&values, d);
            assert_eq!(holed.storage_words(), 300 + 1 + 300 / d);
            let mut rng = crate::harness::workload::SplitMix64::new(5);
            for _ in 0..500 {
                let i = rng.index(300);
                let delta = rng.next_u64() as i64;
                classic.update(i, delta);
                holed.update(i, delta);
                let probe = rng.index(300);
                assert_eq!(classic.sum(probe), holed.sum(probe), "d={d}");
            }
        }
    }

    #[test]
    fn holed_worked_example() {
        let holed = HoledFenwickTree::new(&A16);
        assert_eq!(holed.sum(10), 144);
        assert_eq!(holed.storage_words(), 17); // n < d, no holes yet
    }

    #[test]
    fn random_ops_match_shadow() {
        for n in [1usize, 2, 3, 63, 64, 65, 1000] {
            let values = random_values(n, n as u64 + 1);
            let mut shadow = values.clone();
            let mut t = FenwickTree::new(&values);
            let mut rng = crate::harness::workload::SplitMix64::new(6);
            for _ in 0..300 {
                let i = rng.index(n);
                let d = rng.next_u64() as i64;
                t.update(i, d);
                shadow[i] = shadow[i].wrapping_add(d);
                let probe = rng.index(n);
                assert_eq!(t.sum(probe), prefix(&shadow, probe));
            }
        }
    }

    #[test]
    fn average_sum_iterations_track_half_the_bits() {
        // over uniform queries the traversal reads popcount(i + 1) cells,
        // one per set bit, about half the index width on average
        let n = 1 << 16;
        let t = FenwickTree::new(&vec![0i64; n]);
        let mut rng = crate::harness::workload::SplitMix64::new(1);
        let mut reads = 0usize;
        let samples = 10_000;
        for _ in 0..samples {
            let i = rng.index(n);
            t.sum_traced(i, |_| reads += 1);
        }
        let mean = reads as f64 / samples as f64;
        assert!((7.5..8.5).contains(&mean), "mean reads {mean}");
    }
}
