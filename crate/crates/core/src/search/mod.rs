//! Greedy construction of maximal partial spreads.
//!
//! Every strategy starts from an initial partial spread, discards the lines
//! meeting it, and repeatedly moves one surviving candidate into the spread
//! until no candidate is left:
//!
//! * `MaxIntersection` picks the candidate meeting the most other candidates,
//! * `MinIntersection` the one meeting the fewest,
//! * `MiddleIntersection` the one whose count is closest to the mean count,
//! * `Linear` the first candidate in the order of construction.
//!
//! Ties go to the smallest index. The linear scan either restarts at index 0
//! after the start line or continues cyclically from it (`Scan`).

mod adjacency;
pub mod campaign;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use adjacency::{meet_degree, SearchContext, CACHE_MAX_ENTRIES};
pub use campaign::{
    campaign_run, density_campaign, linear_sweep, linear_sweep_summary, random_initial_spread,
    CampaignConfig, SweepSummary,
};

use crate::enumeration::{LineId, LineTable};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::geometry::{dot, meets, Line};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    MaxIntersection,
    MinIntersection,
    MiddleIntersection,
    Linear,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::MaxIntersection,
        Strategy::MinIntersection,
        Strategy::MiddleIntersection,
        Strategy::Linear,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::MaxIntersection => "max",
            Strategy::MinIntersection => "min",
            Strategy::MiddleIntersection => "middle",
            Strategy::Linear => "linear",
        }
    }

    fn uses_degrees(self) -> bool {
        self != Strategy::Linear
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Strategy::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown strategy {s:?} (expected max, min, middle or linear)"))
    }
}

/// Tie policy among equally ranked candidates. Only one policy exists; it is
/// still recorded in every record so outputs are auditable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TieBreak {
    #[default]
    #[serde(rename = "smallest-index")]
    SmallestIndex,
}

impl TieBreak {
    pub fn id(self) -> &'static str {
        "smallest-index"
    }
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for TieBreak {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "smallest-index" => Ok(TieBreak::SmallestIndex),
            _ => Err(format!("unknown tie policy {s:?}")),
        }
    }
}

/// Where the linear strategy looks for the next surviving line.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scan {
    /// From index 0 upward.
    #[default]
    FromZero,
    /// From the start line upward, wrapping around to index 0.
    Cyclic,
}

impl Scan {
    pub fn id(self) -> &'static str {
        match self {
            Scan::FromZero => "from-zero",
            Scan::Cyclic => "cyclic",
        }
    }
}

impl fmt::Display for Scan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Scan {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "from-zero" => Ok(Scan::FromZero),
            "cyclic" => Ok(Scan::Cyclic),
            _ => Err(format!("unknown scan {s:?} (expected from-zero or cyclic)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub strategy: Strategy,
    /// The initial partial spread.
    pub seed_lines: Vec<Line>,
    /// A line forced in first, right after the seed.
    pub start_index: Option<LineId>,
    pub tie_break: TieBreak,
    /// Linear strategy only.
    pub scan: Scan,
}

impl SearchConfig {
    pub fn new(strategy: Strategy) -> Self {
        SearchConfig {
            strategy,
            seed_lines: Vec::new(),
            start_index: None,
            tie_break: TieBreak::SmallestIndex,
            scan: Scan::FromZero,
        }
    }

    pub fn with_seed(mut self, seed: Vec<Line>) -> Self {
        self.seed_lines = seed;
        self
    }

    pub fn with_start(mut self, start: LineId) -> Self {
        self.start_index = Some(start);
        self
    }

    pub fn with_scan(mut self, scan: Scan) -> Self {
        self.scan = scan;
        self
    }
}

/// How a record was produced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub strategy: Option<Strategy>,
    pub tie_break: Option<TieBreak>,
    pub start: Option<LineId>,
    /// Campaign stream that generated a random initial spread, if any.
    pub stream: Option<u64>,
    /// Recorded only when it differs from the default.
    pub scan: Option<Scan>,
}

/// A partial spread as initial lines followed by added line indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadRecord {
    pub q: u32,
    pub modulus: String,
    pub seed_lines: Vec<Line>,
    pub added: Vec<LineId>,
    pub provenance: Provenance,
}

impl SpreadRecord {
    pub fn size(&self) -> usize {
        self.seed_lines.len() + self.added.len()
    }

    /// Seed lines followed by the decoded added lines.
    pub fn lines(&self, table: &LineTable) -> Result<Vec<Line>> {
        let mut out = self.seed_lines.clone();
        for &i in &self.added {
            out.push(table.decode(i as u64)?);
        }
        Ok(out)
    }
}

/// Indices of all lines skew to every member of `spread` (and not in it).
/// Decided with the polar form over the whole table.
pub fn candidate_set(table: &LineTable, spread: &[Line], exec: Execution) -> Vec<LineId> {
    let f = table.field();
    let polars: Vec<[u8; 6]> = spread.iter().map(|l| l.polar(f)).collect();
    let keep = exec::map_indices(exec, table.len(), |i| {
        let c = table.line(i as LineId).coords();
        polars.iter().all(|p| dot(f, &c, p) != 0)
    });
    keep.iter()
        .enumerate()
        .filter_map(|(i, &k)| k.then_some(i as LineId))
        .collect()
}

/// Picks the next line among `(index, meet-degree)` pairs, given in
/// increasing index order.
pub fn select<I>(strategy: Strategy, _tie: TieBreak, candidates: I) -> Option<LineId>
where
    I: Iterator<Item = (LineId, u32)> + Clone,
{
    // strict comparisons keep the first (smallest) index on ties
    match strategy {
        Strategy::Linear => candidates.map(|(i, _)| i).next(),
        Strategy::MaxIntersection => candidates
            .fold(None, |best: Option<(LineId, u32)>, (i, d)| match best {
                Some((_, bd)) if bd >= d => best,
                _ => Some((i, d)),
            })
            .map(|(i, _)| i),
        Strategy::MinIntersection => candidates
            .fold(None, |best: Option<(LineId, u32)>, (i, d)| match best {
                Some((_, bd)) if bd <= d => best,
                _ => Some((i, d)),
            })
            .map(|(i, _)| i),
        Strategy::MiddleIntersection => {
            let (count, sum) = candidates
                .clone()
                .fold((0u64, 0u64), |(n, s), (_, d)| (n + 1, s + d as u64));
            // |d - sum/count| compared as |d*count - sum|
            candidates
                .fold(None, |best: Option<(LineId, u64)>, (i, d)| {
                    let dist = (d as u64 * count).abs_diff(sum);
                    match best {
                        Some((_, bd)) if bd <= dist => best,
                        _ => Some((i, dist)),
                    }
                })
                .map(|(i, _)| i)
        }
    }
}

/// One greedy choice over an explicit candidate set, with meet-degrees
/// recomputed from scratch (restricted to `candidates`).
pub fn greedy_step(
    ctx: &SearchContext,
    candidates: &[LineId],
    strategy: Strategy,
    tie: TieBreak,
) -> Result<LineId> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let mut sorted = candidates.to_vec();
    sorted.sort_unstable();
    let mut member = vec![false; ctx.table().len()];
    for &c in &sorted {
        member[c as usize] = true;
    }
    let degrees: Vec<u32> = sorted
        .iter()
        .map(|&c| {
            let mut d = 0;
            ctx.for_each_neighbor(c, |n| d += member[n as usize] as u32);
            d
        })
        .collect();
    select(
        strategy,
        tie,
        sorted.iter().copied().zip(degrees.iter().copied()),
    )
    .ok_or(Error::EmptyCandidates)
}

/// Mutable state of one greedy run.
struct RunState<'a> {
    ctx: &'a SearchContext,
    alive: Vec<bool>,
    remaining: usize,
    degree: Vec<u32>,
    track_degrees: bool,
    exec: Execution,
}

impl<'a> RunState<'a> {
    fn new(ctx: &'a SearchContext, exec: Execution) -> Self {
        let n = ctx.table().len();
        RunState {
            ctx,
            alive: vec![true; n],
            remaining: n,
            degree: Vec::new(),
            track_degrees: false,
            exec,
        }
    }

    /// Removes `id` and its alive neighbors; returns the removed neighbors.
    fn eliminate(&mut self, id: LineId) -> Vec<LineId> {
        let mut removed = Vec::new();
        if std::mem::replace(&mut self.alive[id as usize], false) {
            self.remaining -= 1;
        }
        let alive = &mut self.alive;
        self.ctx.for_each_neighbor(id, |n| {
            if std::mem::replace(&mut alive[n as usize], false) {
                removed.push(n);
            }
        });
        self.remaining -= removed.len();
        removed
    }

    fn init_degrees(&mut self) {
        let mut degree = vec![0u32; self.alive.len()];
        let (ctx, alive) = (self.ctx, &self.alive);
        exec::fill(self.exec, &mut degree, |i| {
            if !alive[i] {
                return 0;
            }
            let mut d = 0;
            ctx.for_each_neighbor(i as LineId, |n| d += alive[n as usize] as u32);
            d
        });
        self.degree = degree;
        self.track_degrees = true;
    }

    /// Adds `id` to the spread, updating candidate degrees.
    fn take(&mut self, id: LineId) {
        let removed = self.eliminate(id);
        if !self.track_degrees {
            return;
        }
        // survivors are skew to `id`, so only the removed lines change degrees
        if self.ctx.is_cached() || !self.exec.is_parallel() {
            for r in removed {
                let (alive, degree) = (&self.alive, &mut self.degree);
                self.ctx.for_each_neighbor(r, |n| {
                    if alive[n as usize] {
                        degree[n as usize] -= 1;
                    }
                });
            }
        } else {
            let ctx = self.ctx;
            let lists = exec::map_indices(self.exec, removed.len(), |k| ctx.neighbors(removed[k]));
            for n in lists.into_iter().flatten() {
                if self.alive[n as usize] {
                    self.degree[n as usize] -= 1;
                }
            }
        }
    }

    fn candidates(&self) -> impl Iterator<Item = (LineId, u32)> + Clone + '_ {
        let degree = &self.degree;
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(move |(i, _)| (i as LineId, degree.get(i).copied().unwrap_or(0)))
    }
}

/// Runs one strategy to completion. The result is deterministic in
/// `(table, config)` and independent of `exec`.
pub fn run(ctx: &SearchContext, config: &SearchConfig, exec: Execution) -> Result<SpreadRecord> {
    let table = ctx.table();
    let f = table.field();
    let mut seed_ids = Vec::with_capacity(config.seed_lines.len());
    for (k, l) in config.seed_lines.iter().enumerate() {
        seed_ids.push(table.encode(l)?);
        if let Some(m) = config.seed_lines[..k].iter().find(|m| meets(f, l, m)) {
            return Err(Error::SeedLinesMeet {
                a: m.to_string(),
                b: l.to_string(),
            });
        }
    }

    let mut state = RunState::new(ctx, exec);
    for &s in &seed_ids {
        state.eliminate(s);
    }
    let mut added = Vec::new();
    if let Some(start) = config.start_index {
        if start as usize >= table.len() {
            return Err(Error::IndexOutOfRange {
                index: start as u64,
                len: table.len() as u64,
            });
        }
        if !state.alive[start as usize] {
            return Err(Error::StartMeetsSeed(start as u64));
        }
        state.eliminate(start);
        added.push(start);
    }

    if config.strategy.uses_degrees() {
        state.init_degrees();
        while state.remaining > 0 {
            let next = select(config.strategy, config.tie_break, state.candidates())
                .expect("remaining > 0");
            state.take(next);
            added.push(next);
        }
    } else {
        let n = table.len();
        let origin = match (config.scan, config.start_index) {
            (Scan::Cyclic, Some(s)) => s as usize,
            _ => 0,
        };
        let mut k = 0usize;
        while state.remaining > 0 {
            while !state.alive[(origin + k) % n] {
                k += 1;
            }
            let next = ((origin + k) % n) as LineId;
            state.take(next);
            added.push(next);
        }
    }

    Ok(SpreadRecord {
        q: f.order(),
        modulus: f.modulus_id(),
        seed_lines: config.seed_lines.clone(),
        added,
        provenance: Provenance {
            strategy: Some(config.strategy),
            tie_break: Some(config.tie_break),
            start: config.start_index,
            stream: None,
            scan: (config.strategy == Strategy::Linear && config.scan != Scan::FromZero)
                .then_some(config.scan),
        },
    })
}

/// The single line `(0,0,0,0,0,1)` used as the default initial spread.
pub fn trivial_seed() -> Vec<Line> {
    vec![Line::from_canonical([0, 0, 0, 0, 0, 1])]
}
