//! Measurement and verification harness: reproducible workloads, oracle
//! cross-checks, a nanosecond benchmark runner, and CSV/speedup reporting.
//! The `prefix-sums` binary is a thin wrapper over this module.

pub mod bench;
pub mod csv;
pub mod space;
pub mod speedup;
pub mod verify;
pub mod workload;

pub use bench::{oracle_checksum, run_bench, BenchOutcome, BenchRecord, Op, RecordMeta};
pub use csv::{emit_csv, parse_csv, CSV_HEADER};
pub use space::space_report;
pub use speedup::emit_speedup_table;
pub use verify::{all_structures, build_structure, check_against_oracle, run_verify};
pub use workload::{n_grid, DeltaWidth, SplitMix64, Workload, DEFAULT_QUERIES};
