//! Sweep, density and reproduction reports, in text and JSON form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::exec::Execution;
use crate::search::{
    linear_sweep_summary, run, trivial_seed, Provenance, Scan, SearchConfig, SearchContext,
    Strategy, SweepSummary,
};
use crate::verify::reference::{linear_sweep_claim, max_intersection_claim, reference_row};
use crate::verify::{size_bounds, verify, DensityLedger, SizeBounds, Status};

/// Claimed sizes versus achieved sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimComparison {
    pub claimed: Vec<usize>,
    pub missing: Vec<usize>,
    pub unclaimed: Vec<usize>,
}

impl ClaimComparison {
    pub fn new(
        claimed: impl IntoIterator<Item = usize>,
        achieved: impl IntoIterator<Item = usize>,
    ) -> Self {
        let claimed: Vec<usize> = claimed.into_iter().collect();
        let achieved: Vec<usize> = achieved.into_iter().collect();
        ClaimComparison {
            missing: claimed
                .iter()
                .filter(|s| !achieved.contains(s))
                .copied()
                .collect(),
            unclaimed: achieved
                .iter()
                .filter(|s| !claimed.contains(s))
                .copied()
                .collect(),
            claimed,
        }
    }

    pub fn matches(&self) -> bool {
        self.missing.is_empty() && self.unclaimed.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub q: u32,
    pub starts: (u32, u32),
    pub scan: Scan,
    pub runs: usize,
    pub min_size: Option<usize>,
    pub max_size: Option<usize>,
    pub histogram: BTreeMap<usize, usize>,
    pub first_start: BTreeMap<usize, u32>,
    pub claim: Option<ClaimComparison>,
    pub elapsed_ms: u128,
}

impl SweepReport {
    pub fn new(summary: SweepSummary, elapsed_ms: u128) -> Self {
        let claim = linear_sweep_claim(summary.q).map(|c| {
            ClaimComparison::new(c.sizes().into_iter().map(|s| s as usize), summary.sizes())
        });
        SweepReport {
            q: summary.q,
            starts: summary.starts,
            scan: summary.scan,
            runs: summary.runs,
            min_size: summary.min_size(),
            max_size: summary.histogram.keys().last().copied(),
            histogram: summary.histogram,
            first_start: summary.first_start,
            claim,
            elapsed_ms,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "linear sweep q = {}, starts {}..{}, {} scan: {} records in {} ms",
            self.q, self.starts.0, self.starts.1, self.scan, self.runs, self.elapsed_ms
        );
        let peak = self.histogram.values().copied().max().unwrap_or(1).max(1);
        for (size, count) in &self.histogram {
            let bar = "#".repeat((count * 50).div_ceil(peak));
            let _ = writeln!(
                out,
                "{size:>5} {count:>7}  first start {:>7}  {bar}",
                self.first_start[size]
            );
        }
        if let Some(c) = &self.claim {
            render_claim(&mut out, "reference sizes", c);
        }
        out
    }
}

fn render_claim(out: &mut String, label: &str, c: &ClaimComparison) {
    if c.matches() {
        let _ = writeln!(
            out,
            "{label}: all {} reproduced, nothing extra",
            c.claimed.len()
        );
    } else {
        let _ = writeln!(
            out,
            "{label}: missing {:?}; not in reference {:?}",
            c.missing, c.unclaimed
        );
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub q: u32,
    pub runs: usize,
    pub rejected: usize,
    pub sizes: Vec<usize>,
    pub covered_intervals: Vec<(usize, usize)>,
    pub target: Option<(usize, usize)>,
    pub target_covered: usize,
    pub target_total: usize,
    pub missing: Vec<usize>,
    pub witnesses: BTreeMap<usize, Provenance>,
    pub elapsed_ms: u128,
}

/// The interval a density campaign aims at: the reference density interval
/// adjacent to the reported minimum when there is one, else
/// `[bound, q^2 - q + 2]`.
pub fn default_density_target(q: u32) -> (usize, usize) {
    match reference_row(q).and_then(|r| r.density.first()) {
        Some(&(lo, hi)) => (lo as usize, hi as usize),
        None => {
            let b = size_bounds(q);
            (b.min_target.max(1) as usize, b.density_ceiling as usize)
        }
    }
}

impl DensityReport {
    pub fn new(ledger: &DensityLedger, target: Option<(usize, usize)>, elapsed_ms: u128) -> Self {
        let (target_covered, target_total, missing) = match target {
            Some((lo, hi)) => {
                let (c, t) = ledger.coverage(lo, hi);
                (c, t, ledger.missing(lo, hi))
            }
            None => (0, 0, Vec::new()),
        };
        DensityReport {
            q: ledger.q,
            runs: ledger.runs,
            rejected: ledger.rejected,
            sizes: ledger.sizes.keys().copied().collect(),
            covered_intervals: ledger.covered_intervals(),
            target,
            target_covered,
            target_total,
            missing,
            witnesses: ledger
                .sizes
                .iter()
                .map(|(s, r)| (*s, r.provenance.clone()))
                .collect(),
            elapsed_ms,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "density campaign q = {}: {} runs ({} rejected) in {} ms",
            self.q, self.runs, self.rejected, self.elapsed_ms
        );
        if self.sizes.is_empty() {
            out.push_str("no sizes witnessed\n");
            return out;
        }
        let spans: Vec<String> = self
            .covered_intervals
            .iter()
            .map(|(a, b)| {
                if a == b {
                    a.to_string()
                } else {
                    format!("{a}-{b}")
                }
            })
            .collect();
        let _ = writeln!(out, "sizes witnessed: {:?}", self.sizes);
        let _ = writeln!(out, "covered runs up to q^2-q+2: {}", spans.join(", "));
        if let Some((lo, hi)) = self.target {
            let _ = writeln!(
                out,
                "target {lo}-{hi}: {}/{} covered; missing {:?}",
                self.target_covered, self.target_total, self.missing
            );
        }
        out
    }
}

/// Desk-scale comparison against the published numbers for one q.
#[derive(Clone, Debug, Serialize)]
pub struct ReproductionEntry {
    pub q: u32,
    pub bounds: SizeBounds,
    pub max_intersection_size: usize,
    pub max_intersection_status: Status,
    pub max_intersection_reference: Option<u32>,
    pub below_bound: bool,
    pub sweeps: Vec<SweepReport>,
    pub elapsed_ms: u128,
}

impl ReproductionEntry {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let b = &self.bounds;
        let _ = writeln!(
            out,
            "q = {}: size bound {} ({}), density ceiling {}",
            self.q,
            b.min_target,
            if b.in_range {
                "in stated range"
            } else {
                "outside stated range 5..101"
            },
            b.density_ceiling
        );
        let _ = writeln!(
            out,
            "  max-intersection from (0,0,0,0,0,1): {} ({}){}; below bound: {}",
            self.max_intersection_size,
            self.max_intersection_status.describe(),
            self.max_intersection_reference
                .map(|r| format!(", reference {r}"))
                .unwrap_or_default(),
            self.below_bound
        );
        for s in &self.sweeps {
            for line in s.render().lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        out
    }
}

/// Runs the max-intersection program from the trivial seed and, optionally,
/// the linear sweep over `sweep_range` (defaults to the whole table) under
/// both scan orders.
pub fn reproduce(
    ctx: &SearchContext,
    sweep: bool,
    sweep_range: Option<(u32, u32)>,
    exec: Execution,
) -> Result<ReproductionEntry> {
    let started = std::time::Instant::now();
    let table = ctx.table();
    let q = table.q();
    let cfg = SearchConfig::new(Strategy::MaxIntersection).with_seed(trivial_seed());
    let rec = run(ctx, &cfg, exec)?;
    let verdict = verify(&rec, table, exec)?;
    let bounds = size_bounds(q);
    let (lo, hi) = sweep_range.unwrap_or((0, table.len() as u32));
    let scans: &[Scan] = if sweep {
        &[Scan::FromZero, Scan::Cyclic]
    } else {
        &[]
    };
    let sweeps = scans
        .iter()
        .map(|&scan| {
            let t = std::time::Instant::now();
            let summary = linear_sweep_summary(ctx, lo..hi, scan, exec);
            SweepReport::new(summary, t.elapsed().as_millis())
        })
        .collect();
    Ok(ReproductionEntry {
        q,
        bounds,
        max_intersection_size: rec.size(),
        max_intersection_status: verdict.status,
        max_intersection_reference: max_intersection_claim(q),
        below_bound: (rec.size() as i64) < bounds.min_target,
        sweeps,
        elapsed_ms: started.elapsed().as_millis(),
    })
}
