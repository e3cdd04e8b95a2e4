//! CSV emission and parsing for benchmark records. The schema is fixed and
//! the fields never need quoting, so this is a plain `format!`/`split`
//! affair; absent optional fields are written as `-`.

use anyhow::{bail, Context, Result};

use super::bench::{BenchRecord, Op};

pub const CSV_HEADER: &str = "structure,op,n,b,delta_bits,policy,reps,ns_min,ns_avg,ns_max,seed";

/// Serializes records sorted by `(structure, op, n)`.
pub fn emit_csv(records: &[BenchRecord]) -> String {
    let mut sorted: Vec<&BenchRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        (&a.structure, a.op, a.n).cmp(&(&b.structure, b.op, b.n))
    });
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in sorted {
        let b = r.b.map_or_else(|| "-".to_string(), |v| v.to_string());
        let policy = r.policy.clone().unwrap_or_else(|| "-".to_string());
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{:.3},{:.3},{:.3},{}\n",
            r.structure,
            r.op,
            r.n,
            b,
            r.delta_bits,
            policy,
            r.reps,
            r.ns_min,
            r.ns_avg,
            r.ns_max,
            r.seed
        ));
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<BenchRecord>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header == CSV_HEADER => {}
        Some(other) => bail!("unexpected CSV header: {other}"),
        None => bail!("empty CSV"),
    }
    let mut records = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 11 {
            bail!("row {}: expected 11 fields, got {}", idx + 2, fields.len());
        }
        let ctx = |what: &str| format!("row {}: bad {what}", idx + 2);
        records.push(BenchRecord {
            structure: fields[0].to_string(),
            op: fields[1].parse::<Op>().map_err(anyhow::Error::msg)?,
            n: fields[2].parse().with_context(|| ctx("n"))?,
            b: match fields[3] {
                "-" => None,
                v => Some(v.parse().with_context(|| ctx("b"))?),
            },
            delta_bits: fields[4].parse().with_context(|| ctx("delta_bits"))?,
            policy: match fields[5] {
                "-" => None,
                v => Some(v.to_string()),
            },
            reps: fields[6].parse().with_context(|| ctx("reps"))?,
            ns_min: fields[7].parse().with_context(|| ctx("ns_min"))?,
            ns_avg: fields[8].parse().with_context(|| ctx("ns_avg"))?,
            ns_max: fields[9].parse().with_context(|| ctx("ns_max"))?,
            seed: fields[10].parse().with_context(|| ctx("seed"))?,
        });
    }
    Ok(records)
}
