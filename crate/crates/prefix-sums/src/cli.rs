//! Subcommand driver behind the `prefix-sums` binary.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use crate::cachemodel::{trace_histogram, CacheConfig, TracedKind};
use crate::harness::{
    self, bench::RecordMeta, parse_csv, run_verify, space_report, DeltaWidth, Op, Workload,
};
use crate::segtree::Policy;

#[derive(Parser)]
#[command(
    name = "prefix-sums",
    about = "Verify, benchmark and inspect prefix-sum data structures",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cross-check every structure against the brute-force oracle.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Skip sizes above this bound.
        #[arg(long = "max-n", default_value_t = 100_000)]
        max_n: usize,
        /// Random operations per (structure, n) cell.
        #[arg(long, default_value_t = 1000)]
        ops: usize,
    },
    /// Time sum/update streams over a grid of array sizes, writing CSV.
    Bench {
        #[arg(long)]
        structure: String,
        #[arg(long)]
        op: Op,
        /// Node fanout for the wide structures.
        #[arg(long)]
        b: Option<usize>,
        /// Update-delta width in bits (8 selects the restricted layouts).
        #[arg(long = "delta-bits", default_value_t = 64)]
        delta_bits: u32,
        /// Traversal policy for the binary segment trees.
        #[arg(long)]
        policy: Option<Policy>,
        #[arg(long = "min-n", default_value_t = 256)]
        min_n: usize,
        #[arg(long = "max-n", default_value_t = 100_000_000)]
        max_n: usize,
        #[arg(long, default_value_t = harness::DEFAULT_QUERIES)]
        queries: usize,
        #[arg(long, default_value_t = 5)]
        reps: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output CSV path; `-` writes to stdout.
        #[arg(long)]
        out: String,
    },
    /// Cache-set histogram of the cells touched by random sum queries.
    Cachehist {
        /// ft, ft-holed or st.
        #[arg(long)]
        structure: TracedKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = harness::DEFAULT_QUERIES)]
        queries: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Exact storage of a structure at a given size, from the formulas.
    Space {
        #[arg(long)]
        structure: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long = "delta-bits", default_value_t = 64)]
        delta_bits: u32,
    },
    /// Per-bucket geometric-mean speedups of one CSV over another.
    Speedup {
        #[arg(long)]
        baseline: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
    },
}

/// Parses `args` (excluding the binary name is fine for tests) and runs.
/// Returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    }
}

fn delta_width(bits: u32) -> Result<DeltaWidth> {
    DeltaWidth::from_bits(bits).with_context(|| format!("delta-bits must be 8 or 64, got {bits}"))
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Verify { seed, max_n, ops } => {
            let sizes: Vec<usize> = harness::verify::default_verify_sizes()
                .into_iter()
                .filter(|&n| n <= max_n)
                .collect();
            if sizes.is_empty() {
                bail!("max-n {max_n} leaves nothing to verify");
            }
            let lines = run_verify(&sizes, ops, seed);
            let mut failures = 0usize;
            for line in &lines {
                match &line.result {
                    Ok(()) => println!("ok   {:<28} n={}", line.label, line.n),
                    Err(m) => {
                        failures += 1;
                        println!("FAIL {:<28} n={}: {}", line.label, line.n, m);
                    }
                }
            }
            println!(
                "{} checks, {} failed (seed {seed})",
                lines.len(),
                failures
            );
            Ok(if failures == 0 { 0 } else { 1 })
        }
        Command::Bench {
            structure,
            op,
            b,
            delta_bits,
            policy,
            min_n,
            max_n,
            queries,
            reps,
            seed,
            out,
        } => {
            let width = delta_width(delta_bits)?;
            if min_n < 1 || min_n > max_n {
                bail!("need 1 <= min-n <= max-n");
            }
            let mut records = Vec::new();
            for n in harness::n_grid(min_n, max_n) {
                let workload = Workload::generate(n, queries, seed, width);
                let mut built =
                    harness::build_structure(&structure, b, width, policy, &workload.values)?;
                let meta = RecordMeta {
                    structure: structure.clone(),
                    b,
                    policy: policy.map(|p| p.to_string()),
                };
                let outcome = harness::run_bench(built.as_mut(), op, &workload, reps, meta);
                eprintln!(
                    "# n={n} ns/op avg {:.3} (checksum {:#018x})",
                    outcome.record.ns_avg, outcome.checksum
                );
                records.push(outcome.record);
            }
            let csv = harness::emit_csv(&records);
            if out == "-" {
                print!("{csv}");
            } else {
                fs::write(&out, csv).with_context(|| format!("writing {out}"))?;
                eprintln!("# wrote {out}");
            }
            Ok(0)
        }
        Command::Cachehist {
            structure,
            n,
            queries,
            seed,
        } => {
            if n < 1 {
                bail!("n must be at least 1");
            }
            let histogram = trace_histogram(structure, n, queries, seed, &CacheConfig::default());
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(histogram.to_csv().as_bytes())?;
            Ok(0)
        }
        Command::Space {
            structure,
            n,
            b,
            delta_bits,
        } => {
            let report = space_report(&structure, n, b, delta_width(delta_bits)?)?;
            print!("{report}");
            Ok(0)
        }
        Command::Speedup {
            baseline,
            candidate,
        } => {
            let base = parse_csv(
                &fs::read_to_string(&baseline)
                    .with_context(|| format!("reading {}", baseline.display()))?,
            )?;
            let cand = parse_csv(
                &fs::read_to_string(&candidate)
                    .with_context(|| format!("reading {}", candidate.display()))?,
            )?;
            print!("{}", harness::emit_speedup_table(&base, &cand)?);
            Ok(0)
        }
    }
}
