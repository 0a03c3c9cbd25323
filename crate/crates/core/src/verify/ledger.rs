use std::collections::BTreeMap;

use serde::Serialize;

use super::reference::{reference_row, ReferenceRow};
use super::size_bounds;
use crate::search::SpreadRecord;

/// Achieved sizes for one q, one witness record per size.
#[derive(Clone, Debug, Serialize)]
pub struct DensityLedger {
    pub q: u32,
    pub runs: usize,
    /// Runs whose output failed re-verification.
    pub rejected: usize,
    pub sizes: BTreeMap<usize, SpreadRecord>,
    pub reference: Option<&'static ReferenceRow>,
}

impl DensityLedger {
    pub fn new(q: u32) -> Self {
        DensityLedger {
            q,
            runs: 0,
            rejected: 0,
            sizes: BTreeMap::new(),
            reference: reference_row(q),
        }
    }

    /// Keeps the first witness per size. Callers verify before inserting.
    pub fn insert(&mut self, record: SpreadRecord) -> bool {
        use std::collections::btree_map::Entry;
        match self.sizes.entry(record.size()) {
            Entry::Vacant(v) => {
                v.insert(record);
                true
            }
            Entry::Occupied(_) => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn min_size(&self) -> Option<usize> {
        self.sizes.keys().next().copied()
    }

    pub fn contains(&self, size: usize) -> bool {
        self.sizes.contains_key(&size)
    }

    /// `(covered, total)` over the closed interval.
    pub fn coverage(&self, lo: usize, hi: usize) -> (usize, usize) {
        let covered = self.sizes.range(lo..=hi).count();
        (covered, hi + 1 - lo)
    }

    pub fn missing(&self, lo: usize, hi: usize) -> Vec<usize> {
        (lo..=hi).filter(|s| !self.contains(*s)).collect()
    }

    /// Maximal runs of consecutive witnessed sizes within
    /// `[observed min, q^2 - q + 2]`.
    pub fn covered_intervals(&self) -> Vec<(usize, usize)> {
        let ceiling = size_bounds(self.q).density_ceiling as usize;
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &s in self.sizes.keys().filter(|&&s| s <= ceiling) {
            match out.last_mut() {
                Some((_, hi)) if *hi + 1 == s => *hi = s,
                _ => out.push((s, s)),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Provenance;

    fn rec(size: usize) -> SpreadRecord {
        SpreadRecord {
            q: 8,
            modulus: "x^3+x+1".into(),
            seed_lines: vec![],
            added: (0..size as u32).collect(),
            provenance: Provenance::default(),
        }
    }

    #[test]
    fn intervals_and_coverage() {
        let mut l = DensityLedger::new(8);
        assert!(l.reference.is_some());
        for s in [31, 32, 33, 35, 36, 60, 65] {
            assert!(l.insert(rec(s)));
        }
        assert!(!l.insert(rec(33)));
        assert_eq!(l.covered_intervals(), vec![(31, 33), (35, 36)]);
        assert_eq!(l.coverage(31, 55), (5, 25));
        assert_eq!(l.missing(31, 35), vec![34]);
        assert_eq!(l.min_size(), Some(31));
        assert!(DensityLedger::new(8).covered_intervals().is_empty());
    }
}
