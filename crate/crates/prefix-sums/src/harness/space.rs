//! Exact storage accounting, computed from the size formulas without
//! building anything, so it works for arbitrarily large `n`.

use anyhow::{bail, Result};

use super::workload::DeltaWidth;
use crate::bary_segtree::TreePlan;
use crate::fenwick::DEFAULT_HOLE_SPACING;
use crate::node::{
    Node16, Node256, Node64, PrefixBlock, RestrictedNode16, RestrictedNode256, RestrictedNode64,
};

fn node_sizes(b: usize, delta_width: DeltaWidth) -> Result<(usize, usize)> {
    // (padded, unpadded) bytes per node
    Ok(match (b, delta_width) {
        (16, DeltaWidth::Bits64) => (Node16::size_bytes(), Node16::unpadded_size_bytes()),
        (64, DeltaWidth::Bits64) => (Node64::size_bytes(), Node64::unpadded_size_bytes()),
        (256, DeltaWidth::Bits64) => (Node256::size_bytes(), Node256::unpadded_size_bytes()),
        (16, DeltaWidth::Bits8) => (
            RestrictedNode16::size_bytes(),
            RestrictedNode16::unpadded_size_bytes(),
        ),
        (64, DeltaWidth::Bits8) => (
            RestrictedNode64::size_bytes(),
            RestrictedNode64::unpadded_size_bytes(),
        ),
        (256, DeltaWidth::Bits8) => (
            RestrictedNode256::size_bytes(),
            RestrictedNode256::unpadded_size_bytes(),
        ),
        (other, _) => bail!("no node layout for b = {other}"),
    })
}

/// Storage of `structure` at size `n`, as human-readable lines.
pub fn space_report(
    structure: &str,
    n: usize,
    b: Option<usize>,
    delta_width: DeltaWidth,
) -> Result<String> {
    if n == 0 {
        bail!("n must be at least 1");
    }
    let words = |w: usize| format!("{w} words, {} bytes", w * 8);
    let b_or = |default: usize| b.unwrap_or(default);
    let mut out = format!("structure={structure} n={n}\n");
    match structure {
        "st-topdown" => {
            let pad = n.next_power_of_two();
            out.push_str(&format!("  tree: {}\n", words(2 * pad - 1)));
        }
        "st" | "st-leftsum" => {
            out.push_str(&format!("  tree: {}\n", words(2 * n - 1)));
        }
        "ft" => {
            out.push_str(&format!("  tree: {}\n", words(n + 1)));
        }
        "ft-holed" => {
            let d = DEFAULT_HOLE_SPACING;
            out.push_str(&format!(
                "  tree: {} (spacing d=2^{})\n",
                words(n + 1 + n / d),
                d.trailing_zeros()
            ));
        }
        "st-bary" => {
            let b = b_or(64);
            let (padded, unpadded) = node_sizes(b, delta_width)?;
            let plan = TreePlan::new(n, b);
            out.push_str(&format!(
                "  height {} levels {:?}\n",
                plan.height(),
                plan.nodes_per_level()
            ));
            out.push_str(&format!(
                "  nodes: {} x {padded} bytes = {} bytes ({unpadded} bytes unpadded each)\n",
                plan.total_nodes(),
                plan.total_bytes(padded)
            ));
        }
        "ft-bary" => {
            let b = b_or(64);
            let (padded, unpadded) = node_sizes(b, delta_width)?;
            let blocks = (n + 1).div_ceil(b);
            out.push_str(&format!(
                "  cells: {} in {blocks} blocks x {padded} bytes = {} bytes ({unpadded} bytes unpadded each)\n",
                n + 1,
                blocks * padded
            ));
        }
        "ft-blocked" => {
            let b = b_or(64);
            let (padded, unpadded) = node_sizes(b, delta_width)?;
            let blocks = n.div_ceil(b);
            out.push_str(&format!(
                "  blocks: {blocks} x {padded} bytes = {} bytes ({unpadded} bytes unpadded each)\n",
                blocks * padded
            ));
        }
        "ft-truncated" => {
            let b = b_or(64);
            let (padded, unpadded) = node_sizes(b, delta_width)?;
            let blocks = n.div_ceil(b);
            out.push_str(&format!("  upper: {}\n", words(blocks + 1)));
            out.push_str(&format!(
                "  blocks: {blocks} x {padded} bytes = {} bytes ({unpadded} bytes unpadded each)\n",
                blocks * padded
            ));
        }
        other => bail!("unknown structure '{other}'"),
    }
    Ok(out)
}
