//! Oracle cross-checking and the structure registry.
//!
//! Every structure configuration the harness knows is listed in
//! [`all_structures`], as a name plus a boxed builder. [`check_against_oracle`]
//! drives one structure and a [`NaiveOracle`] with the same random
//! interleaving of updates and sums and reports the first divergence.

use anyhow::{bail, Result};

use super::workload::{DeltaWidth, SplitMix64};
use crate::bary_segtree::BarySegmentTree;
use crate::fenwick::{FenwickTree, HoledFenwickTree};
use crate::fenwick_variants::{BaryFenwickTree, BlockedFenwickTree, TruncatedFenwickTree};
use crate::node::{
    FlatBlock, Node16, Node256, Node64, RestrictedNode16, RestrictedNode256, RestrictedNode64,
};
use crate::oracle::NaiveOracle;
use crate::segtree::{BottomUpSegmentTree, Mode, Policy, TopDownSegmentTree};
use crate::PrefixSum;

type Builder = Box<dyn Fn(&[i64]) -> Box<dyn PrefixSum> + Send + Sync>;

/// One verifiable configuration: a display label plus a builder.
pub struct StructureEntry {
    /// Registry label, e.g. `st-bary[b=64,delta=8]`.
    pub label: String,
    /// Base structure name as used by the CLI.
    pub name: &'static str,
    pub delta_width: DeltaWidth,
    pub build: Builder,
}

fn entry(
    label: impl Into<String>,
    name: &'static str,
    delta_width: DeltaWidth,
    build: impl Fn(&[i64]) -> Box<dyn PrefixSum> + Send + Sync + 'static,
) -> StructureEntry {
    StructureEntry {
        label: label.into(),
        name,
        delta_width,
        build: Box::new(build),
    }
}

/// Every structure/configuration pair the harness verifies and benches.
pub fn all_structures() -> Vec<StructureEntry> {
    use DeltaWidth::*;
    let mut out = Vec::new();

    for policy in [Policy::Branchy, Policy::BranchFree] {
        out.push(entry(
            format!("st-topdown[{policy}]"),
            "st-topdown",
            Bits64,
            move |v| Box::new(TopDownSegmentTree::new(v, policy)),
        ));
    }
    for mode in [Mode::Regular, Mode::LeftSum] {
        for policy in [Policy::Branchy, Policy::BranchFree, Policy::TwoLoop] {
            let name = match mode {
                Mode::Regular => "st",
                Mode::LeftSum => "st-leftsum",
            };
            out.push(entry(
                format!("{name}[{policy}]"),
                name,
                Bits64,
                move |v| Box::new(BottomUpSegmentTree::new(v, mode, policy)),
            ));
        }
    }
    out.push(entry("ft", "ft", Bits64, |v| Box::new(FenwickTree::new(v))));
    out.push(entry("ft-holed", "ft-holed", Bits64, |v| {
        Box::new(HoledFenwickTree::new(v))
    }));
    out.push(entry("st-bary[b=16,delta=64]", "st-bary", Bits64, |v| {
        Box::new(BarySegmentTree::<Node16>::new(v))
    }));
    out.push(entry("st-bary[b=64,delta=64]", "st-bary", Bits64, |v| {
        Box::new(BarySegmentTree::<Node64>::new(v))
    }));
    out.push(entry("st-bary[b=256,delta=64]", "st-bary", Bits64, |v| {
        Box::new(BarySegmentTree::<Node256>::new(v))
    }));
    out.push(entry("st-bary[b=16,delta=8]", "st-bary", Bits8, |v| {
        Box::new(BarySegmentTree::<RestrictedNode16>::new(v))
    }));
    out.push(entry("st-bary[b=64,delta=8]", "st-bary", Bits8, |v| {
        Box::new(BarySegmentTree::<RestrictedNode64>::new(v))
    }));
    out.push(entry("st-bary[b=256,delta=8]", "st-bary", Bits8, |v| {
        Box::new(BarySegmentTree::<RestrictedNode256>::new(v))
    }));
    out.push(entry("ft-bary[b=2]", "ft-bary", Bits64, |v| {
        Box::new(BaryFenwickTree::<FlatBlock<2>>::new(v))
    }));
    out.push(entry("ft-bary[b=4]", "ft-bary", Bits64, |v| {
        Box::new(BaryFenwickTree::<FlatBlock<4>>::new(v))
    }));
    out.push(entry("ft-bary[b=64]", "ft-bary", Bits64, |v| {
        Box::new(BaryFenwickTree::<Node64>::new(v))
    }));
    out.push(entry("ft-blocked[b=64]", "ft-blocked", Bits64, |v| {
        Box::new(BlockedFenwickTree::<Node64>::new(v))
    }));
    out.push(entry("ft-truncated[b=64]", "ft-truncated", Bits64, |v| {
        Box::new(TruncatedFenwickTree::<Node64>::new(v))
    }));
    out
}

/// Builds the structure selected by CLI flags.
pub fn build_structure(
    name: &str,
    b: Option<usize>,
    delta_width: DeltaWidth,
    policy: Option<Policy>,
    values: &[i64],
) -> Result<Box<dyn PrefixSum>> {
    let b_or = |default: usize| b.unwrap_or(default);
    Ok(match name {
        "st-topdown" => {
            let policy = policy.unwrap_or(Policy::BranchFree);
            if policy == Policy::TwoLoop {
                bail!("st-topdown supports only branchy and branchfree");
            }
            Box::new(TopDownSegmentTree::new(values, policy))
        }
        "st" => Box::new(BottomUpSegmentTree::new(
            values,
            Mode::Regular,
            policy.unwrap_or(Policy::TwoLoop),
        )),
        "st-leftsum" => Box::new(BottomUpSegmentTree::new(
            values,
            Mode::LeftSum,
            policy.unwrap_or(Policy::TwoLoop),
        )),
        "ft" => Box::new(FenwickTree::new(values)),
        "ft-holed" => Box::new(HoledFenwickTree::new(values)),
        "st-bary" => match (b_or(64), delta_width) {
            (16, DeltaWidth::Bits64) => Box::new(BarySegmentTree::<Node16>::new(values)),
            (64, DeltaWidth::Bits64) => Box::new(BarySegmentTree::<Node64>::new(values)),
            (256, DeltaWidth::Bits64) => Box::new(BarySegmentTree::<Node256>::new(values)),
            (16, DeltaWidth::Bits8) => Box::new(BarySegmentTree::<RestrictedNode16>::new(values)),
            (64, DeltaWidth::Bits8) => Box::new(BarySegmentTree::<RestrictedNode64>::new(values)),
            (256, DeltaWidth::Bits8) => {
                Box::new(BarySegmentTree::<RestrictedNode256>::new(values))
            }
            (other, _) => bail!("st-bary supports b in {{16, 64, 256}}, got {other}"),
        },
        "ft-bary" => match b_or(64) {
            2 => Box::new(BaryFenwickTree::<FlatBlock<2>>::new(values)),
            4 => Box::new(BaryFenwickTree::<FlatBlock<4>>::new(values)),
            16 => Box::new(BaryFenwickTree::<Node16>::new(values)),
            64 => Box::new(BaryFenwickTree::<Node64>::new(values)),
            256 => Box::new(BaryFenwickTree::<Node256>::new(values)),
            other => bail!("ft-bary supports b in {{2, 4, 16, 64, 256}}, got {other}"),
        },
        "ft-blocked" => match b_or(64) {
            16 => Box::new(BlockedFenwickTree::<Node16>::new(values)),
            64 => Box::new(BlockedFenwickTree::<Node64>::new(values)),
            256 => Box::new(BlockedFenwickTree::<Node256>::new(values)),
            other => bail!("ft-blocked supports b in {{16, 64, 256}}, got {other}"),
        },
        "ft-truncated" => match b_or(64) {
            16 => Box::new(TruncatedFenwickTree::<Node16>::new(values)),
            64 => Box::new(TruncatedFenwickTree::<Node64>::new(values)),
            256 => Box::new(TruncatedFenwickTree::<Node256>::new(values)),
            other => bail!("ft-truncated supports b in {{16, 64, 256}}, got {other}"),
        },
        other => bail!(
            "unknown structure '{other}' (expected one of st-topdown, st, st-leftsum, ft, \
             ft-holed, st-bary, ft-bary, ft-blocked, ft-truncated)"
        ),
    })
}

/// First divergence between a structure and the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub op: String,
    pub index: usize,
    pub expected: i64,
    pub got: i64,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}({}) expected {} got {}",
            self.op, self.index, self.expected, self.got
        )
    }
}

/// Runs `ops` random updates and sums against both the structure and a
/// [`NaiveOracle`] built from the same values, probing a random prefix after
/// every operation and sweeping a sample of indexes at the end.
pub fn check_against_oracle(
    structure: &mut dyn PrefixSum,
    values: &[i64],
    ops: usize,
    seed: u64,
    delta_width: DeltaWidth,
) -> Result<(), Mismatch> {
    let n = values.len();
    let mut oracle = NaiveOracle::new(values);
    let mut rng = SplitMix64::new(seed);
    let probe = |structure: &dyn PrefixSum, oracle: &NaiveOracle, i: usize, op: &str| {
        let expected = oracle.sum(i);
        let got = structure.sum(i);
        if expected != got {
            Err(Mismatch {
                op: format!("sum after {op}"),
                index: i,
                expected,
                got,
            })
        } else {
            Ok(())
        }
    };
    for _ in 0..ops {
        let i = rng.index(n);
        if rng.next_u64() & 1 == 0 {
            let delta = match delta_width {
                DeltaWidth::Bits64 => rng.next_u64() as i64,
                DeltaWidth::Bits8 => (rng.next_u64() % 256) as i64 - 128,
            };
            structure.update(i, delta);
            oracle.update(i, delta);
            probe(structure, &oracle, rng.index(n), "update")?;
        } else {
            probe(structure, &oracle, i, "sum")?;
        }
    }
    // final sweep: everything for small n, a sample plus both ends otherwise
    if n <= 512 {
        for i in 0..n {
            probe(structure, &oracle, i, "sweep")?;
        }
    } else {
        for _ in 0..64 {
            probe(structure, &oracle, rng.index(n), "sweep")?;
        }
        probe(structure, &oracle, 0, "sweep")?;
        probe(structure, &oracle, n - 1, "sweep")?;
    }
    Ok(())
}

/// Default `n` set exercised by the `verify` subcommand.
pub fn default_verify_sizes() -> Vec<usize> {
    vec![
        1, 2, 3, 15, 16, 17, 63, 64, 65, 255, 256, 257, 1000, 4096, 100_000,
    ]
}

/// Verification report line.
pub struct VerifyLine {
    pub label: String,
    pub n: usize,
    pub result: Result<(), Mismatch>,
}

/// Cross-checks every registered structure on every `n`; all lines are
/// returned so the CLI can print and exit-code on failures.
pub fn run_verify(sizes: &[usize], ops: usize, seed: u64) -> Vec<VerifyLine> {
    let mut lines = Vec::new();
    for (k, entry) in all_structures().into_iter().enumerate() {
        for (j, &n) in sizes.iter().enumerate() {
            let mut rng = SplitMix64::new(seed ^ ((k as u64) << 32) ^ j as u64);
            let values: Vec<i64> = (0..n).map(|_| rng.next_u64() as i64).collect();
            let mut structure = (entry.build)(&values);
            let result = check_against_oracle(
                structure.as_mut(),
                &values,
                ops,
                rng.next_u64(),
                entry.delta_width,
            );
            lines.push(VerifyLine {
                label: entry.label.clone(),
                n,
                result,
            });
        }
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_covers_every_family() {
        let entries = all_structures();
        assert_eq!(entries.len(), 21);
        for name in [
            "st-topdown",
            "st",
            "st-leftsum",
            "ft",
            "ft-holed",
            "st-bary",
            "ft-bary",
            "ft-blocked",
            "ft-truncated",
        ] {
            assert!(
                entries.iter().any(|e| e.name == name),
                "missing {name} in registry"
            );
        }
    }

    #[test]
    fn every_registered_structure_passes_a_quick_check() {
        let mut rng = SplitMix64::new(404);
        let values: Vec<i64> = (0..100).map(|_| rng.next_u64() as i64).collect();
        for entry in all_structures() {
            let mut s = (entry.build)(&values);
            let r = check_against_oracle(s.as_mut(), &values, 150, 5, entry.delta_width);
            assert!(r.is_ok(), "{}: {:?}", entry.label, r.err());
        }
    }

    #[test]
    fn corruption_is_reported_with_a_location() {
        let values: Vec<i64> = (0..64).map(|v| v as i64).collect();
        let mut t = crate::fenwick::FenwickTree::new(&values);
        t.corrupt_cell(32);
        let r = check_against_oracle(&mut t, &values, 50, 6, DeltaWidth::Bits64);
        let mismatch = r.expect_err("corruption must be detected");
        assert_ne!(mismatch.expected, mismatch.got);
        assert!(mismatch.index < 64);
    }

    #[test]
    fn cli_builders_accept_their_configs() {
        let values: Vec<i64> = (1..=50).collect();
        for (name, b) in [
            ("st", None),
            ("ft", None),
            ("st-bary", Some(64)),
            ("ft-bary", Some(4)),
            ("ft-blocked", Some(16)),
            ("ft-truncated", Some(256)),
        ] {
            let s = build_structure(name, b, DeltaWidth::Bits64, None, &values).unwrap();
            assert_eq!(s.sum(49), (1..=50).sum::<i64>());
        }
        assert!(build_structure("bogus", None, DeltaWidth::Bits64, None, &values).is_err());
        assert!(build_structure("st-bary", Some(7), DeltaWidth::Bits64, None, &values).is_err());
    }
}
