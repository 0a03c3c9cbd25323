//! Certificate verification, bound formulas and reference data.
//!
//! Verification never trusts the search code: skewness and maximality are
//! decided with the polar form, and maximality is checked against every
//! line of the table.

mod ledger;
pub mod oracle;
pub mod reference;

use serde::{Deserialize, Serialize};

pub use ledger::DensityLedger;
pub use oracle::{brute_force_oracle, OracleResult};

use crate::enumeration::{line_count, theta, LineId, LineTable};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::geometry::{dot, meets, point_count, points_on, Line};
use crate::gf::FieldTable;
use crate::search::SpreadRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Spread,
    MaximalPartialSpread,
    ExtendablePartialSpread,
    Invalid,
}

impl Status {
    /// Spreads and maximal partial spreads.
    pub fn is_maximal(self) -> bool {
        matches!(self, Status::Spread | Status::MaximalPartialSpread)
    }

    pub fn describe(self) -> &'static str {
        match self {
            Status::Spread => "spread",
            Status::MaximalPartialSpread => "maximal partial spread",
            Status::ExtendablePartialSpread => "extendable partial spread",
            Status::Invalid => "invalid (lines meet)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Positions (0-based, seeds first) of two lines of the record that meet.
    MeetingPair {
        first: usize,
        second: usize,
        first_line: Line,
        second_line: Line,
    },
    /// A table line skew to every line of the record.
    Extension { index: LineId, line: Line },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub size: usize,
    pub witness: Option<Witness>,
}

/// Decodes and verifies a record.
pub fn verify(record: &SpreadRecord, table: &LineTable, exec: Execution) -> Result<Verdict> {
    let f = table.field();
    let mut lines = Vec::with_capacity(record.size());
    for l in &record.seed_lines {
        // reject seeds that are not canonical lines of this field
        table.encode(l)?;
        lines.push(*l);
    }
    for &i in &record.added {
        lines.push(table.decode(i as u64)?);
    }
    debug_assert_eq!(f.order(), record.q);
    Ok(verify_lines(&lines, table, exec))
}

/// Classifies a set of canonical lines of `table`.
pub fn verify_lines(lines: &[Line], table: &LineTable, exec: Execution) -> Verdict {
    let f = table.field();
    let q = f.order() as usize;
    let size = lines.len();
    for (j, b) in lines.iter().enumerate() {
        if let Some(i) = lines[..j].iter().position(|a| meets(f, a, b)) {
            return Verdict {
                status: Status::Invalid,
                size,
                witness: Some(Witness::MeetingPair {
                    first: i,
                    second: j,
                    first_line: lines[i],
                    second_line: *b,
                }),
            };
        }
    }
    if size == q * q + 1 {
        return Verdict {
            status: Status::Spread,
            size,
            witness: None,
        };
    }
    match find_extension(lines, table, exec) {
        None => Verdict {
            status: Status::MaximalPartialSpread,
            size,
            witness: None,
        },
        Some(index) => Verdict {
            status: Status::ExtendablePartialSpread,
            size,
            witness: Some(Witness::Extension {
                index,
                line: table.line(index),
            }),
        },
    }
}

/// First table line skew to all of `lines`, scanning by streaming decode.
pub fn find_extension(lines: &[Line], table: &LineTable, exec: Execution) -> Option<LineId> {
    let f = table.field();
    let polars: Vec<[u8; 6]> = lines.iter().map(|l| l.polar(f)).collect();
    let streaming = LineTable::streaming(f.clone());
    exec::find_first(exec, table.len(), |i| {
        let c = streaming.line(i as LineId).coords();
        polars.iter().all(|p| dot(f, &c, p) != 0)
    })
    .map(|i| i as LineId)
}

/// For `q^2+1` pairwise skew lines: whether their points cover all of
/// PG(3,q), found by listing each line's points explicitly.
pub fn point_cover_check(lines: &[Line], f: &FieldTable) -> Result<bool> {
    let q = f.order();
    let expected = (q as usize).pow(2) + 1;
    if lines.len() != expected {
        return Err(Error::SizeMismatch {
            size: lines.len(),
            q,
            expected,
        });
    }
    let mut hit = vec![false; point_count(q)];
    let mut distinct = 0usize;
    for l in lines {
        for p in points_on(f, l) {
            let slot = &mut hit[p.index(q)];
            if !*slot {
                *slot = true;
                distinct += 1;
            }
        }
    }
    debug_assert_eq!(point_count(q) as u64, theta(q, 3));
    Ok(distinct == point_count(q))
}

/// Smallest `k` with `q^2 <= 2^k`, i.e. the ceiling of `2 log2 q`.
pub fn ceil_two_log2(q: u32) -> u32 {
    let sq = (q as u64) * (q as u64);
    (0..64).find(|&k| sq <= 1u64 << k).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeBounds {
    /// `(ceil(2 log2 q) + 1) q + 1 - 3q`; the small-size results are strict
    /// inequalities below this value.
    pub min_target: i64,
    /// `q^2 - q + 2`.
    pub density_ceiling: u64,
    /// Whether `5 <= q <= 101`, the range the size results are stated for.
    pub in_range: bool,
}

pub fn size_bounds(q: u32) -> SizeBounds {
    let qi = q as i64;
    SizeBounds {
        min_target: (ceil_two_log2(q) as i64 + 1) * qi + 1 - 3 * qi,
        density_ceiling: (q as u64) * (q as u64) - q as u64 + 2,
        in_range: (5..=101).contains(&q),
    }
}

/// Total number of lines, as a sanity helper for reports.
pub fn table_size(q: u32) -> u64 {
    line_count(q)
}
