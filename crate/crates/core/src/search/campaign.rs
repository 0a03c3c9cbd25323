//! Multi-start drivers: the linear sweep over start lines, and density
//! campaigns that collect one verified witness per achieved size.
//!
//! Runs are independent and share only the immutable [`SearchContext`];
//! results are merged in run order, so output never depends on thread count.

use std::collections::BTreeMap;
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    run, trivial_seed, Provenance, Scan, SearchConfig, SearchContext, SpreadRecord, Strategy,
};
use crate::enumeration::LineId;
use crate::exec::{self, Execution};
use crate::verify::{verify, DensityLedger};

/// One linear-program record per start index in `starts`.
pub fn linear_sweep(
    ctx: &SearchContext,
    starts: Range<LineId>,
    scan: Scan,
    exec: Execution,
) -> Vec<SpreadRecord> {
    let lo = starts.start;
    exec::map_indices(exec, starts.len(), |k| {
        let cfg = SearchConfig::new(Strategy::Linear)
            .with_start(lo + k as LineId)
            .with_scan(scan);
        run(ctx, &cfg, Execution::Sequential).expect("empty seed accepts every start")
    })
}

/// Size histogram of a linear sweep, without keeping the records.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub q: u32,
    pub starts: (LineId, LineId),
    pub scan: Scan,
    pub runs: usize,
    pub histogram: BTreeMap<usize, usize>,
    /// Smallest start index producing each size.
    pub first_start: BTreeMap<usize, LineId>,
}

impl SweepSummary {
    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.histogram.keys().copied()
    }

    pub fn min_size(&self) -> Option<usize> {
        self.histogram.keys().next().copied()
    }
}

pub fn linear_sweep_summary(
    ctx: &SearchContext,
    starts: Range<LineId>,
    scan: Scan,
    exec: Execution,
) -> SweepSummary {
    let lo = starts.start;
    let sizes = exec::map_indices(exec, starts.len(), |k| {
        let cfg = SearchConfig::new(Strategy::Linear)
            .with_start(lo + k as LineId)
            .with_scan(scan);
        run(ctx, &cfg, Execution::Sequential)
            .expect("empty seed accepts every start")
            .size()
    });
    let mut histogram = BTreeMap::new();
    let mut first_start = BTreeMap::new();
    for (k, s) in sizes.iter().enumerate() {
        *histogram.entry(*s).or_insert(0) += 1;
        first_start.entry(*s).or_insert(lo + k as LineId);
    }
    SweepSummary {
        q: ctx.table().q(),
        starts: (starts.start, starts.end),
        scan,
        runs: sizes.len(),
        histogram,
        first_start,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    /// Upper bound on the number of greedy runs.
    pub budget: usize,
    /// Cycled through run by run.
    pub strategies: Vec<Strategy>,
    /// Master seed; run `k` draws from ChaCha stream `k`.
    pub seed: u64,
    /// Random lines added on top of `(0,0,0,0,0,1)` are drawn uniformly
    /// from `0..=max_random_lines`.
    pub max_random_lines: usize,
    /// Stop after the batch in which every size in this range is witnessed.
    pub target: Option<(usize, usize)>,
    pub batch: usize,
}

impl CampaignConfig {
    pub fn new(q: u32, budget: usize) -> Self {
        CampaignConfig {
            budget,
            strategies: Strategy::ALL.to_vec(),
            seed: 0x5eed,
            max_random_lines: (q as usize).pow(2) / 2,
            target: None,
            batch: 256,
        }
    }
}

/// The initial spread of campaign run `stream`: `(0,0,0,0,0,1)` plus a random
/// number of random lines, each drawn uniformly from the lines still skew to
/// everything chosen so far.
pub fn random_initial_spread(
    ctx: &SearchContext,
    cfg: &CampaignConfig,
    stream: u64,
) -> Vec<LineId> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let table = ctx.table();
    let n = table.len();
    let first = table
        .encode(&trivial_seed()[0])
        .expect("trivial seed is a line");
    let mut alive = vec![true; n];
    let mut remaining = n;
    let kill = |id: LineId, alive: &mut Vec<bool>, remaining: &mut usize| {
        if std::mem::replace(&mut alive[id as usize], false) {
            *remaining -= 1;
        }
        ctx.for_each_neighbor(id, |m| {
            if std::mem::replace(&mut alive[m as usize], false) {
                *remaining -= 1;
            }
        });
    };
    kill(first, &mut alive, &mut remaining);
    let want = rng.gen_range(0..=cfg.max_random_lines);
    let mut chosen = vec![first];
    while chosen.len() <= want && remaining > 0 {
        let k = rng.gen_range(0..remaining);
        let pick = alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .nth(k)
            .map(|(i, _)| i as LineId)
            .unwrap();
        kill(pick, &mut alive, &mut remaining);
        chosen.push(pick);
    }
    chosen
}

/// Campaign run `k`: a random initial spread from stream `k` completed by the
/// `k`-th strategy in the cycle.
pub fn campaign_run(ctx: &SearchContext, cfg: &CampaignConfig, k: usize) -> SpreadRecord {
    let strategy = cfg.strategies[k % cfg.strategies.len()];
    let table = ctx.table();
    let seed: Vec<_> = random_initial_spread(ctx, cfg, k as u64)
        .into_iter()
        .map(|i| table.line(i))
        .collect();
    let config = SearchConfig::new(strategy).with_seed(seed);
    let mut rec =
        run(ctx, &config, Execution::Sequential).expect("random seed is a partial spread");
    rec.provenance = Provenance {
        stream: Some(k as u64),
        ..rec.provenance
    };
    rec
}

/// Collects one re-verified witness per achieved size.
pub fn density_campaign(
    ctx: &SearchContext,
    cfg: &CampaignConfig,
    exec: Execution,
) -> DensityLedger {
    let table = ctx.table();
    let mut ledger = DensityLedger::new(table.q());
    if cfg.strategies.is_empty() {
        return ledger;
    }
    let batch = cfg.batch.max(1);
    let mut next = 0;
    while next < cfg.budget {
        let len = batch.min(cfg.budget - next);
        let results = exec::map_indices(exec, len, |k| {
            let rec = campaign_run(ctx, cfg, next + k);
            let ok = verify(&rec, table, Execution::Sequential)
                .map(|v| v.status.is_maximal())
                .unwrap_or(false);
            (rec, ok)
        });
        for (rec, ok) in results {
            ledger.runs += 1;
            if ok {
                ledger.insert(rec);
            } else {
                ledger.rejected += 1;
            }
        }
        next += len;
        if let Some((lo, hi)) = cfg.target {
            if ledger.missing(lo, hi).is_empty() {
                break;
            }
        }
    }
    ledger
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::LineTable;
    use crate::geometry::meets;

    #[test]
    fn q2_sweep_has_35_records() {
        let ctx = SearchContext::new(LineTable::for_order(2).unwrap(), Execution::default());
        let recs = linear_sweep(&ctx, 0..35, Scan::FromZero, Execution::default());
        assert_eq!(recs.len(), 35);
        let summary = linear_sweep_summary(&ctx, 0..35, Scan::FromZero, Execution::Sequential);
        assert_eq!(summary.runs, 35);
        assert_eq!(summary.histogram.values().sum::<usize>(), 35);
        for (r, start) in recs.iter().zip(0..) {
            assert_eq!(r.added[0], start);
        }
    }

    #[test]
    fn random_initial_spreads_are_skew_and_reproducible() {
        let ctx = SearchContext::new(LineTable::for_order(5).unwrap(), Execution::default());
        let cfg = CampaignConfig::new(5, 10);
        let f = ctx.table().field();
        for stream in 0..20 {
            let a = random_initial_spread(&ctx, &cfg, stream);
            assert_eq!(a, random_initial_spread(&ctx, &cfg, stream));
            assert!(a.len() <= cfg.max_random_lines + 1);
            for (i, x) in a.iter().enumerate() {
                for y in &a[..i] {
                    assert!(!meets(f, &ctx.table().line(*x), &ctx.table().line(*y)));
                }
            }
        }
    }

    #[test]
    fn zero_budget_gives_empty_ledger() {
        let ctx = SearchContext::new(LineTable::for_order(3).unwrap(), Execution::default());
        let ledger = density_campaign(&ctx, &CampaignConfig::new(3, 0), Execution::default());
        assert!(ledger.is_empty());
        assert_eq!(ledger.runs, 0);
    }

    #[test]
    fn campaigns_are_deterministic_across_modes() {
        let ctx = SearchContext::new(LineTable::for_order(4).unwrap(), Execution::default());
        let cfg = CampaignConfig {
            batch: 7,
            ..CampaignConfig::new(4, 40)
        };
        let a = density_campaign(&ctx, &cfg, Execution::Sequential);
        let b = density_campaign(&ctx, &cfg, Execution::default());
        assert_eq!(a.sizes, b.sizes);
        assert_eq!(a.rejected, 0);
        assert_eq!(a.runs, 40);
    }
}
