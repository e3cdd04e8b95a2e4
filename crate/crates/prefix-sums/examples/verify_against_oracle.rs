//! Cross-checks every registered structure against the brute-force oracle
//! on random interleavings of updates and sums. The same machinery backs
//! the `prefix-sums verify` subcommand.
//!
//! Run with: `cargo run --release --example verify_against_oracle`

use prefix_sums::harness::{check_against_oracle, all_structures, SplitMix64};

fn main() {
    let sizes = [1usize, 16, 17, 256, 1000, 4096];
    let ops = 500;
    let mut failures = 0usize;
    for entry in all_structures() {
        for &n in &sizes {
            let mut rng = SplitMix64::new(0xDEAD ^ n as u64);
            let values: Vec<i64> = (0..n).map(|_| rng.next_u64() as i64).collect();
            let mut structure = (entry.build)(&values);
            match check_against_oracle(
                structure.as_mut(),
                &values,
                ops,
                rng.next_u64(),
                entry.delta_width,
            ) {
                Ok(()) => println!("ok   {:<28} n={n}", entry.label),
                Err(m) => {
                    failures += 1;
                    println!("FAIL {:<28} n={n}: {m}", entry.label);
                }
            }
        }
    }
    if failures == 0 {
        println!("\nall structures agree with the oracle bit for bit");
    } else {
        println!("\n{failures} failures");
        std::process::exit(1);
    }
}
