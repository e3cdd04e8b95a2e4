//! Fenwick-tree generalizations built on [`PrefixBlock`](crate::node::PrefixBlock) nodes:
//!
//! * [`BaryFenwickTree`] re-bases the index decomposition from 2 to `b`, so
//!   a query touches one cell per nonzero base-`b` digit but an update has
//!   to touch up to `b - 1` cells per level.
//! * [`BlockedFenwickTree`] keeps the binary decomposition and blocks `b`
//!   keys into each node, shortening the tree by `log2 b` levels.
//! * [`TruncatedFenwickTree`] keeps a plain Fenwick tree over block totals
//!   and a flat array of blocks below it, one block op per operation.

mod bary;
mod blocked;
mod truncated;

pub use bary::BaryFenwickTree;
pub use blocked::BlockedFenwickTree;
pub use truncated::TruncatedFenwickTree;

/// Base-`b` digits of `p`, least significant first. `b` must be a power of
/// two, so digit `k` is bit field `k` of width `log2 b`.
pub fn digits(p: usize, b: usize) -> Vec<usize> {
    assert!(p >= 1, "p must be positive");
    assert!(b >= 2 && b.is_power_of_two(), "base must be a power of two");
    let mut out = Vec::new();
    let mut rest = p;
    while rest > 0 {
        out.push(rest % b);
        rest /= b;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_examples() {
        assert_eq!(digits(38, 4), vec![2, 1, 2]);
        assert_eq!(digits(1, 2), vec![1]);
        assert_eq!(digits(1, 256), vec![1]);
        assert_eq!(digits(256, 256), vec![0, 1]);
    }

    #[test]
    fn digits_recompose() {
        for b in [2usize, 4, 16, 64, 256] {
            for p in 1..2000 {
                let ds = digits(p, b);
                let mut acc = 0usize;
                let mut pow = 1usize;
                for &d in &ds {
                    assert!(d < b);
                    acc += d * pow;
                    pow *= b;
                }
                assert_eq!(acc, p);
                assert_ne!(*ds.last().unwrap(), 0);
            }
        }
    }

    #[test]
    fn digit_count_matches_the_bit_width() {
        for b in [2usize, 4, 16, 64, 256] {
            let beta = b.trailing_zeros();
            for n in [1usize, 2, 3, 63, 64, 65, 255, 256, 1000, 4096] {
                let max_digits = (1..=n).map(|p| digits(p, b).len()).max().unwrap();
                let bits = usize::BITS - n.leading_zeros(); // ceil(log2(n + 1))
                let expected = bits.div_ceil(beta) as usize;
                assert_eq!(max_digits, expected, "n={n} b={b}");
            }
        }
    }
}
