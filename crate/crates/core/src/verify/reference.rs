//! Published reference values for maximal partial spread sizes in PG(3,q).

use serde::Serialize;

/// Closed integer interval `(lo, hi)`.
pub type Interval = (u32, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceRow {
    pub q: u32,
    /// New minimum size, when one was reported.
    pub min: Option<u32>,
    pub previous_min: u32,
    pub density: &'static [Interval],
    pub previous_density: &'static [Interval],
}

const fn row(
    q: u32,
    min: Option<u32>,
    previous_min: u32,
    density: &'static [Interval],
    previous_density: &'static [Interval],
) -> ReferenceRow {
    ReferenceRow {
        q,
        min,
        previous_min,
        density,
        previous_density,
    }
}

pub const TABLE: &[ReferenceRow] = &[
    row(8, Some(30), 41, &[(31, 55)], &[(56, 58)]),
    row(9, Some(36), 46, &[(37, 45)], &[(46, 74)]),
    row(16, Some(87), 145, &[(88, 221), (225, 231)], &[(240, 242)]),
    row(19, None, 114, &[(147, 181)], &[(115, 146), (182, 344)]),
    row(23, None, 148, &[(149, 149)], &[(150, 508)]),
    row(25, Some(173), 276, &[(174, 313)], &[(314, 602)]),
    row(27, Some(193), 298, &[(194, 367)], &[(368, 704)]),
    row(29, Some(210), 320, &[], &[]),
    row(31, Some(231), 342, &[], &[]),
    row(32, Some(238), 545, &[], &[]),
    row(37, Some(306), 445, &[], &[]),
    row(41, Some(345), 493, &[], &[]),
    row(43, Some(372), 517, &[], &[]),
    row(47, Some(417), 612, &[], &[]),
    row(49, Some(474), 638, &[], &[]),
    row(53, Some(488), 690, &[], &[]),
    row(59, Some(569), 768, &[], &[]),
    row(61, Some(600), 794, &[], &[]),
    row(64, Some(623), 1665, &[], &[]),
    row(67, Some(672), 939, &[], &[]),
    row(71, Some(732), 995, &[], &[]),
    row(73, Some(761), 1023, &[], &[]),
    row(79, Some(848), 1107, &[], &[]),
    row(81, Some(873), 1135, &[], &[]),
    row(83, Some(903), 1163, &[], &[]),
    row(89, Some(968), 1247, &[], &[]),
    row(97, Some(1102), 1456, &[], &[]),
    row(101, Some(1160), 1516, &[], &[]),
];

pub fn reference_row(q: u32) -> Option<&'static ReferenceRow> {
    TABLE.iter().find(|r| r.q == q)
}

/// Sizes reported for a full run of the linear program.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSweepClaim {
    pub q: u32,
    /// Number of constructed records, when stated.
    pub records: Option<u32>,
    pub interval: Interval,
    pub extra: &'static [u32],
}

pub const LINEAR_SWEEP_CLAIMS: &[LinearSweepClaim] = &[
    LinearSweepClaim {
        q: 7,
        records: None,
        interval: (27, 45),
        extra: &[],
    },
    LinearSweepClaim {
        q: 8,
        records: Some(4096),
        interval: (33, 52),
        extra: &[54, 56, 57, 65],
    },
    LinearSweepClaim {
        q: 9,
        records: Some(7462),
        interval: (41, 69),
        extra: &[71, 72, 82],
    },
];

pub fn linear_sweep_claim(q: u32) -> Option<&'static LinearSweepClaim> {
    LINEAR_SWEEP_CLAIMS.iter().find(|c| c.q == q)
}

/// Sizes reported for the max-intersection program from `(0,0,0,0,0,1)`.
pub const MAX_INTERSECTION_CLAIMS: &[(u32, u32)] =
    &[(8, 30), (9, 36), (16, 87), (32, 238), (71, 732)];

pub fn max_intersection_claim(q: u32) -> Option<u32> {
    MAX_INTERSECTION_CLAIMS
        .iter()
        .find(|(k, _)| *k == q)
        .map(|&(_, s)| s)
}

impl LinearSweepClaim {
    pub fn sizes(&self) -> Vec<u32> {
        (self.interval.0..=self.interval.1)
            .chain(self.extra.iter().copied())
            .collect()
    }
}
