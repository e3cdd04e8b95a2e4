//! Brute-force reference structure: the array is left as given, so updates
//! are a single positional add and queries scan the prefix. Every other
//! structure is checked against this one.

use crate::PrefixSum;

#[derive(Debug, Clone)]
pub struct NaiveOracle {
    values: Vec<i64>,
}

impl NaiveOracle {
    pub fn new(values: &[i64]) -> Self {
        assert!(!values.is_empty(), "n must be at least 1");
        Self {
            values: values.to_vec(),
        }
    }

    /// The current logical array.
    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

impl PrefixSum for NaiveOracle {
    fn len(&self) -> usize {
        self.values.len()
    }

    fn sum(&self, i: usize) -> i64 {
        debug_assert!(i < self.values.len(), "index {i} out of range");
        self.values[..=i].iter().fold(0i64, |a, &v| a.wrapping_add(v))
    }

    fn update(&mut self, i: usize, delta: i64) {
        let v = &mut self.values[i];
        *v = v.wrapping_add(delta);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::A16;
    use crate::PrefixSum;

    #[test]
    fn sums_on_the_worked_example() {
        let o = NaiveOracle::new(&A16);
        assert_eq!(o.sum(10), 144);
        assert_eq!(o.sum(15), 229);
        let single = NaiveOracle::new(&[42]);
        assert_eq!(single.sum(0), 42);
    }

    #[test]
    fn access_is_sum_difference() {
        let o = NaiveOracle::new(&A16);
        assert_eq!(o.access(0), 13);
        assert_eq!(o.access(5), 231);
        assert_eq!(o.access(10), -52);
        for i in 0..A16.len() {
            assert_eq!(o.access(i), A16[i]);
        }
    }

    #[test]
    fn range_sums() {
        let o = NaiveOracle::new(&A16);
        assert_eq!(o.range_sum(0, 15), 229);
        assert_eq!(o.range_sum(10, 10), -52);
        assert_eq!(o.range_sum(8, 10), -138);
    }

    #[test]
    fn update_is_positional() {
        let mut o = NaiveOracle::new(&A16);
        o.update(10, -37);
        assert_eq!(o.sum(10), 107);
        assert_eq!(o.sum(9), 196);
    }

    #[test]
    fn wrapping_arithmetic_never_traps() {
        let mut o = NaiveOracle::new(&[i64::MAX, 1]);
        assert_eq!(o.sum(1), i64::MIN);
        o.update(0, 1);
        assert_eq!(o.sum(0), i64::MIN);
    }

    #[test]
    fn access_telescopes_to_total() {
        let o = NaiveOracle::new(&A16);
        let total = (0..16).fold(0i64, |a, i| a.wrapping_add(o.access(i)));
        assert_eq!(total, o.sum(15));
    }

    #[test]
    #[should_panic]
    fn empty_build_is_rejected() {
        NaiveOracle::new(&[]);
    }
}
