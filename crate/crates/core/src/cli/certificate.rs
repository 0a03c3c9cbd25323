//! The `.pg3q` certificate format.
//!
//! ```text
//! pg3q 8 x^3+x+1
//! # comments start with '#'
//! strategy: max
//! tie-break: smallest-index
//! start: 24
//! initial:
//! (0, 0, 0, 0, 0, 1)
//! (1, 4, 1, 0, 6, 5)
//! added:
//! 24, 2367, 231
//! ```
//!
//! The header gives q and the modulus id (`prime` for prime q, otherwise
//! the reduction polynomial, or `default`). Tuples may be unnormalized and
//! may contain negative entries; several tuples may share a line. Added
//! indices are separated by commas or whitespace and refer to the order of
//! construction. A block of added-index lines repeated verbatim right after
//! itself is read once, and the removal is noted.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::enumeration::{line_count, LineId};
use crate::error::{Error, Result};
use crate::geometry::{canonicalize_raw, RawTuple};
use crate::gf::FieldTable;
use crate::search::{Provenance, Scan, SpreadRecord, Strategy, TieBreak};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Metadata {
    pub strategy: Option<Strategy>,
    pub tie_break: Option<TieBreak>,
    pub start: Option<LineId>,
    pub stream: Option<u64>,
    pub scan: Option<Scan>,
    /// Seed count claimed by the source of the certificate.
    pub stated_seeds: Option<usize>,
    /// Total size claimed by the source of the certificate.
    pub stated_size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub q: u32,
    pub modulus_id: String,
    pub seeds: Vec<RawTuple>,
    pub added: Vec<u64>,
    pub meta: Metadata,
    /// Normalizations applied while parsing.
    pub notes: Vec<String>,
}

#[derive(PartialEq)]
enum Section {
    Header,
    Initial,
    Added,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

impl Certificate {
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(u32, String)> = None;
        let mut meta = Metadata::default();
        let mut seeds = Vec::new();
        // (line number, indices) per text line of the added section
        let mut groups: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut section = Section::Header;

        for (n, raw_line) in text.lines().enumerate() {
            let lineno = n + 1;
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let col_of = |s: &str| raw_line.find(s).map_or(1, |c| c + 1);
            if header.is_none() {
                let mut parts = line.split_whitespace();
                if parts.next() != Some("pg3q") {
                    return Err(parse_err(
                        lineno,
                        1,
                        "expected header `pg3q <q> <modulus-id>`",
                    ));
                }
                let q_tok = parts
                    .next()
                    .ok_or_else(|| parse_err(lineno, line.len() + 1, "missing q"))?;
                let q = q_tok
                    .parse()
                    .map_err(|_| parse_err(lineno, col_of(q_tok), format!("bad q {q_tok:?}")))?;
                let modulus = parts.next().unwrap_or("default").to_string();
                if let Some(extra) = parts.next() {
                    return Err(parse_err(lineno, col_of(extra), "trailing header tokens"));
                }
                header = Some((q, modulus));
                continue;
            }
            match line {
                "initial:" => {
                    section = Section::Initial;
                    continue;
                }
                "added:" => {
                    section = Section::Added;
                    continue;
                }
                _ => {}
            }
            match section {
                Section::Header => {
                    let (key, value) = line.split_once(':').ok_or_else(|| {
                        parse_err(lineno, 1, format!("expected `key: value`, got {line:?}"))
                    })?;
                    let value = value.trim();
                    let vcol = col_of(value);
                    let bad = |m: String| parse_err(lineno, vcol, m);
                    match key.trim() {
                        "strategy" => meta.strategy = Some(value.parse().map_err(bad)?),
                        "tie-break" => meta.tie_break = Some(value.parse().map_err(bad)?),
                        "start" => {
                            meta.start = Some(
                                value
                                    .parse()
                                    .map_err(|_| bad(format!("bad start {value:?}")))?,
                            )
                        }
                        "stream" => {
                            meta.stream = Some(
                                value
                                    .parse()
                                    .map_err(|_| bad(format!("bad stream {value:?}")))?,
                            )
                        }
                        "scan" => meta.scan = Some(value.parse().map_err(bad)?),
                        "stated-seeds" => {
                            meta.stated_seeds = Some(
                                value
                                    .parse()
                                    .map_err(|_| bad(format!("bad count {value:?}")))?,
                            )
                        }
                        "stated-size" => {
                            meta.stated_size = Some(
                                value
                                    .parse()
                                    .map_err(|_| bad(format!("bad count {value:?}")))?,
                            )
                        }
                        other => {
                            return Err(parse_err(lineno, 1, format!("unknown key {other:?}")))
                        }
                    }
                }
                Section::Initial => {
                    let mut rest = line;
                    let mut offset = raw_line.len() - raw_line.trim_start().len();
                    loop {
                        let trimmed = rest.trim_start_matches([' ', ',', '\t', '.']);
                        offset += rest.len() - trimmed.len();
                        rest = trimmed;
                        if rest.is_empty() {
                            break;
                        }
                        if !rest.starts_with('(') {
                            return Err(parse_err(lineno, offset + 1, "expected '('"));
                        }
                        let close = rest
                            .find(')')
                            .ok_or_else(|| parse_err(lineno, offset + 1, "unclosed tuple"))?;
                        let tuple: RawTuple = rest[..=close]
                            .parse()
                            .map_err(|m| parse_err(lineno, offset + 1, m))?;
                        seeds.push(tuple);
                        offset += close + 1;
                        rest = &rest[close + 1..];
                    }
                }
                Section::Added => {
                    let mut group = Vec::new();
                    for tok in line.split(|c: char| c == ',' || c.is_whitespace()) {
                        let tok = tok.trim_end_matches('.');
                        if tok.is_empty() {
                            continue;
                        }
                        let v = tok.parse::<u64>().map_err(|_| {
                            parse_err(lineno, col_of(tok), format!("bad index {tok:?}"))
                        })?;
                        group.push(v);
                    }
                    groups.push((lineno, group));
                }
            }
        }

        let (q, modulus_id) = header.ok_or_else(|| parse_err(1, 1, "empty certificate"))?;
        let mut notes = Vec::new();
        let groups = drop_repeated_blocks(groups, &mut notes);
        Ok(Certificate {
            q,
            modulus_id,
            seeds,
            added: groups.into_iter().flat_map(|(_, g)| g).collect(),
            meta,
            notes,
        })
    }

    pub fn field(&self) -> Result<FieldTable> {
        FieldTable::from_modulus_id(self.q, &self.modulus_id)
    }

    pub fn size(&self) -> usize {
        self.seeds.len() + self.added.len()
    }

    /// Discrepancies between parsed counts and the counts the certificate
    /// states for itself.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(s) = self.meta.stated_seeds {
            if s != self.seeds.len() {
                out.push(format!(
                    "certificate states {s} initial lines but lists {}",
                    self.seeds.len()
                ));
            }
        }
        if let Some(s) = self.meta.stated_size {
            if s != self.size() {
                out.push(format!(
                    "certificate states total size {s} but lists {} lines",
                    self.size()
                ));
            }
        }
        out
    }

    /// Canonicalizes seeds and range-checks indices.
    pub fn to_record(&self, field: &FieldTable) -> Result<SpreadRecord> {
        let seed_lines = self
            .seeds
            .iter()
            .map(|t| canonicalize_raw(field, t))
            .collect::<Result<Vec<_>>>()?;
        let len = line_count(self.q);
        let added = self
            .added
            .iter()
            .map(|&i| {
                if i >= len {
                    Err(Error::IndexOutOfRange { index: i, len })
                } else {
                    Ok(i as LineId)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SpreadRecord {
            q: self.q,
            modulus: field.modulus_id(),
            seed_lines,
            added,
            provenance: Provenance {
                strategy: self.meta.strategy,
                tie_break: self.meta.tie_break,
                start: self.meta.start,
                stream: self.meta.stream,
                scan: self.meta.scan,
            },
        })
    }
}

fn drop_repeated_blocks(
    mut groups: Vec<(usize, Vec<u64>)>,
    notes: &mut Vec<String>,
) -> Vec<(usize, Vec<u64>)> {
    groups.retain(|(_, g)| !g.is_empty());
    let same =
        |a: &[(usize, Vec<u64>)], b: &[(usize, Vec<u64>)]| a.iter().zip(b).all(|(x, y)| x.1 == y.1);
    let mut i = 0;
    while i < groups.len() {
        let longest = (1..=(groups.len() - i) / 2)
            .rev()
            .find(|&b| same(&groups[i..i + b], &groups[i + b..i + 2 * b]));
        match longest {
            Some(b) => {
                let first = groups[i + b].0;
                let count: usize = groups[i + b..i + 2 * b].iter().map(|g| g.1.len()).sum();
                notes.push(format!(
                    "dropped a verbatim repeat of {count} added indices starting at line {first}"
                ));
                groups.drain(i + b..i + 2 * b);
            }
            None => i += 1,
        }
    }
    groups
}

/// Renders a record in certificate form. Identical records give identical
/// bytes.
pub fn format_certificate(record: &SpreadRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "pg3q {} {}", record.q, record.modulus);
    let _ = writeln!(out, "# size {}", record.size());
    let p = &record.provenance;
    if let Some(s) = p.strategy {
        let _ = writeln!(out, "strategy: {s}");
    }
    if let Some(t) = p.tie_break {
        let _ = writeln!(out, "tie-break: {t}");
    }
    if let Some(s) = p.start {
        let _ = writeln!(out, "start: {s}");
    }
    if let Some(s) = p.stream {
        let _ = writeln!(out, "stream: {s}");
    }
    if let Some(s) = p.scan {
        let _ = writeln!(out, "scan: {s}");
    }
    out.push_str("initial:\n");
    for l in &record.seed_lines {
        let _ = writeln!(out, "{l}");
    }
    out.push_str("added:\n");
    for chunk in record.added.chunks(10) {
        let row: Vec<String> = chunk.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(", "));
    }
    out
}

/// SHA-256 over the canonical rendering of a record.
pub fn digest(record: &SpreadRecord) -> String {
    let mut canonical = record.clone();
    canonical.provenance = Provenance::default();
    let bytes = Sha256::digest(format_certificate(&canonical).as_bytes());
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
