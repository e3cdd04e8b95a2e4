//! Why the classic Fenwick layout thrashes one cache set at large n, and
//! how the holed layout fixes it: distinct-lines-per-set histograms under
//! an identical random query load.
//!
//! Run with: `cargo run --release --example cache_sets`

use prefix_sums::cachemodel::{set_of, trace_histogram, CacheConfig, TracedKind};

fn main() {
    let cfg = CacheConfig::default();
    println!(
        "modeled cache: {} bytes, {}-way, {}-byte lines -> {} sets",
        cfg.total_bytes,
        cfg.ways,
        cfg.line_bytes,
        cfg.sets()
    );
    println!(
        "addresses one page (4096 B) apart share a set: set_of(0)={}, set_of(4096)={}",
        set_of(0, &cfg),
        set_of(4096, &cfg)
    );

    let n = 10_000_000;
    let queries = 10_000;
    let seed = 7;
    for kind in [
        TracedKind::Fenwick,
        TracedKind::HoledFenwick,
        TracedKind::BottomUpSegTree,
    ] {
        let h = trace_histogram(kind, n, queries, seed, &cfg);
        let mut worst: Vec<(usize, u64)> = h.counts().iter().copied().enumerate().collect();
        worst.sort_by_key(|&(_, c)| std::cmp::Reverse(c));
        println!(
            "\n{kind:?}: {} distinct lines, heaviest sets (set: share):",
            h.total_lines()
        );
        for &(set, _) in worst.iter().take(4) {
            println!("  set {set:>2}: {:>6.2}%", h.share(set) * 100.0);
        }
    }
    println!("\n(the classic tree piles its top levels onto set 0; the holed layout is flat)");
}
