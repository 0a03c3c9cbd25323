//! The order of construction: a fixed bijection between `0..N` and the
//! `N = (q^2+1)(q^2+q+1)` lines of PG(3,q).
//!
//! Indices below `q^4` are lines with `p01 = 1`, decoded from the base-q
//! digits of the index (`p02` least significant). The remaining lines follow
//! in blocks by leading pattern:
//!
//! | block            | size | free coordinates (least significant first) |
//! |------------------|------|--------------------------------------------|
//! | `(1, ...)`       | q^4  | p02, p03, p12, p13; `p23 = p02*p13 - p03*p12` |
//! | `(0, 1, ...)`    | q^3  | p03, p12, p23; `p13 = p03*p12`             |
//! | `(0, 0, 1, ...)` | q^2  | p13, p23; `p12 = 0`                        |
//! | `(0, 0, 0, 1, ...)` | q^2 | p13, p23                                 |
//! | `(0, 0, 0, 0, 1, ...)` | q | p23                                     |
//! | `(0, 0, 0, 0, 0, 1)` | 1 |                                           |
//!
//! Field labels double as base-q digits.

use crate::error::{Error, Result};
use crate::geometry::{quadric, Line};
use crate::gf::{Elem, FieldTable};

/// Index of a line in the order of construction.
pub type LineId = u32;

/// Tables at or below this order are materialized by [`LineTable::build`].
pub const MATERIALIZE_MAX_Q: u32 = 32;

/// `(q^2+1)(q^2+q+1)`.
pub fn line_count(q: u32) -> u64 {
    let q = q as u64;
    (q * q + 1) * (q * q + q + 1)
}

/// `q^r + ... + q + 1`.
pub fn theta(q: u32, r: u32) -> u64 {
    (0..=r).map(|k| (q as u64).pow(k)).sum()
}

#[derive(Clone, Copy, Debug)]
struct Blocks {
    q: u64,
    b1: u64,
    b2: u64,
    b3: u64,
    b4: u64,
    b5: u64,
    len: u64,
}

impl Blocks {
    fn new(q: u32) -> Self {
        let q = q as u64;
        let b1 = q.pow(4);
        let b2 = b1 + q.pow(3);
        let b3 = b2 + q * q;
        let b4 = b3 + q * q;
        let b5 = b4 + q;
        Blocks {
            q,
            b1,
            b2,
            b3,
            b4,
            b5,
            len: b5 + 1,
        }
    }
}

/// The full ordered list of lines of PG(3,q) with index maps.
///
/// For `q <= 32` the lines are held in memory (six bytes each); above that
/// the table streams, decoding on demand.
#[derive(Clone, Debug)]
pub struct LineTable {
    field: FieldTable,
    blocks: Blocks,
    lines: Option<Vec<Line>>,
}

impl LineTable {
    /// Materializes for `q <= 32`, streams otherwise.
    pub fn build(field: FieldTable) -> Self {
        if field.order() <= MATERIALIZE_MAX_Q {
            Self::materialized(field)
        } else {
            Self::streaming(field)
        }
    }

    pub fn materialized(field: FieldTable) -> Self {
        let mut t = Self::streaming(field);
        let lines = (0..t.blocks.len)
            .map(|i| t.decode_unchecked(i as LineId))
            .collect();
        t.lines = Some(lines);
        t
    }

    pub fn streaming(field: FieldTable) -> Self {
        let blocks = Blocks::new(field.order());
        assert!(
            blocks.len <= LineId::MAX as u64,
            "q too large for 32-bit line ids"
        );
        LineTable {
            field,
            blocks,
            lines: None,
        }
    }

    /// Convenience: field with its default modulus, then [`LineTable::build`].
    pub fn for_order(q: u32) -> Result<Self> {
        Ok(Self::build(FieldTable::new(q)?))
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn len(&self) -> usize {
        self.blocks.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_materialized(&self) -> bool {
        self.lines.is_some()
    }

    /// The line at `index`; panics when out of range.
    #[inline]
    pub fn line(&self, index: LineId) -> Line {
        match &self.lines {
            Some(v) => v[index as usize],
            None => {
                assert!((index as u64) < self.blocks.len, "line index out of range");
                self.decode_unchecked(index)
            }
        }
    }

    /// Checked decode.
    pub fn decode(&self, index: u64) -> Result<Line> {
        if index >= self.blocks.len {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.blocks.len,
            });
        }
        Ok(self.line(index as LineId))
    }

    /// The index of a canonical line. Fails for tuples that are not
    /// canonical or not on the quadric.
    pub fn encode(&self, line: &Line) -> Result<LineId> {
        let f = &self.field;
        let c = line.coords();
        let bad = || Error::QuadricViolation(line.to_string());
        if c.iter().any(|&x| x as u32 >= f.order()) {
            return Err(bad());
        }
        if quadric(f, &c) != 0 {
            return Err(bad());
        }
        let lead = c.iter().position(|&x| x != 0).ok_or_else(bad)?;
        if c[lead] != 1 {
            return Err(bad());
        }
        Ok(self.encode_canonical(line))
    }

    /// [`LineTable::encode`] without validation, for lines built by this crate.
    #[inline]
    pub(crate) fn encode_canonical(&self, line: &Line) -> LineId {
        let b = &self.blocks;
        let q = b.q;
        let c = line.coords();
        let d = c.map(|x| x as u64);
        let idx = match c {
            [1, ..] => d[1] + d[2] * q + d[3] * q * q + d[4] * q * q * q,
            [0, 1, ..] => b.b1 + d[2] + d[3] * q + d[5] * q * q,
            [0, 0, 1, ..] => b.b2 + d[4] + d[5] * q,
            [0, 0, 0, 1, ..] => b.b3 + d[4] + d[5] * q,
            [0, 0, 0, 0, 1, _] => b.b4 + d[5],
            _ => b.b5,
        };
        idx as LineId
    }

    pub fn index_of(&self, line: &Line) -> Result<LineId> {
        self.encode(line)
    }

    pub fn iter(&self) -> impl Iterator<Item = Line> + '_ {
        (0..self.blocks.len as LineId).map(move |i| self.line(i))
    }

    /// Index range of the `p01 = 1` block, `0..q^4`.
    pub fn affine_block(&self) -> std::ops::Range<LineId> {
        0..self.blocks.b1 as LineId
    }

    fn decode_unchecked(&self, index: LineId) -> Line {
        let f = &self.field;
        let b = &self.blocks;
        let q = b.q;
        let i = index as u64;
        let digit = |x: u64, k: u32| ((x / q.pow(k)) % q) as Elem;
        let c: [Elem; 6] = if i < b.b1 {
            let (p02, p03, p12, p13) = (digit(i, 0), digit(i, 1), digit(i, 2), digit(i, 3));
            let p23 = f.sub(f.mul(p02, p13), f.mul(p03, p12));
            [1, p02, p03, p12, p13, p23]
        } else if i < b.b2 {
            let j = i - b.b1;
            let (p03, p12, p23) = (digit(j, 0), digit(j, 1), digit(j, 2));
            [0, 1, p03, p12, f.mul(p03, p12), p23]
        } else if i < b.b3 {
            let j = i - b.b2;
            [0, 0, 1, 0, digit(j, 0), digit(j, 1)]
        } else if i < b.b4 {
            let j = i - b.b3;
            [0, 0, 0, 1, digit(j, 0), digit(j, 1)]
        } else if i < b.b5 {
            [0, 0, 0, 0, 1, digit(i - b.b4, 0)]
        } else {
            [0, 0, 0, 0, 0, 1]
        };
        Line::from_canonical(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::canonicalize;

    #[test]
    fn counts() {
        assert_eq!(LineTable::for_order(2).unwrap().len(), 35);
        assert_eq!(LineTable::for_order(7).unwrap().len(), 2850);
        assert_eq!(LineTable::for_order(8).unwrap().len(), 4745);
        for q in [2, 3, 7, 29, 101] {
            assert_eq!(line_count(q), theta(q, 3) * theta(q, 2) / theta(q, 1));
        }
        assert_eq!(line_count(29), 733_382);
    }

    #[test]
    fn decode_examples() {
        let t = LineTable::for_order(8).unwrap();
        assert_eq!(t.line(24).coords(), [1, 0, 3, 0, 0, 0]);
        assert_eq!(t.line(0).coords(), [1, 0, 0, 0, 0, 0]);
        assert_eq!(t.encode(&t.line(24)).unwrap(), 24);
        let t2 = LineTable::for_order(2).unwrap();
        assert_eq!(t2.line(16).coords(), [0, 1, 0, 0, 0, 0]);
        let last = canonicalize(t2.field(), [0, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(t2.encode(&last).unwrap(), 34);
        assert!(matches!(
            t2.decode(35),
            Err(Error::IndexOutOfRange { index: 35, len: 35 })
        ));
    }

    #[test]
    fn block_sizes_and_bijection() {
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            let t = LineTable::for_order(q).unwrap();
            let f = t.field();
            let mut pattern_counts = [0usize; 6];
            let mut seen = std::collections::HashSet::new();
            for (i, l) in t.iter().enumerate() {
                let c = l.coords();
                let lead = c.iter().position(|&x| x != 0).unwrap();
                assert_eq!(c[lead], 1);
                assert_eq!(quadric(f, &c), 0);
                pattern_counts[lead] += 1;
                assert!(seen.insert(l));
                assert_eq!(t.encode(&l).unwrap() as usize, i);
            }
            let q = q as usize;
            assert_eq!(pattern_counts, [q.pow(4), q.pow(3), q * q, q * q, q, 1]);
        }
    }

    #[test]
    fn streaming_matches_materialized() {
        let f = FieldTable::new(5).unwrap();
        let a = LineTable::materialized(f.clone());
        let b = LineTable::streaming(f);
        assert!(a.iter().eq(b.iter()));
    }

    #[test]
    fn large_q_streams() {
        let t = LineTable::for_order(101).unwrap();
        assert!(!t.is_materialized());
        assert_eq!(t.len() as u64, line_count(101));
        let l = t.line(t.len() as LineId - 1);
        assert_eq!(l.coords(), [0, 0, 0, 0, 0, 1]);
        for i in [0u32, 12_345_678, 104_060_400, 105_000_000] {
            let l = t.line(i);
            assert_eq!(quadric(t.field(), &l.coords()), 0);
            assert_eq!(t.encode(&l).unwrap(), i);
        }
    }

    #[test]
    fn encode_rejects_off_quadric() {
        let t = LineTable::for_order(3).unwrap();
        let bogus = Line::from_canonical([1, 0, 0, 0, 0, 1]);
        assert!(t.encode(&bogus).is_err());
    }
}
