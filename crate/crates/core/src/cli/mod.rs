//! Library side of the `pg3q` command line: certificate loading, the
//! verification report, and the text/JSON renderings used by each
//! subcommand.

pub mod certificate;
pub mod report;

use std::time::Instant;

use serde::Serialize;

pub use certificate::{digest, format_certificate, Certificate};

use crate::enumeration::{LineId, LineTable};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometry::Line;
use crate::search::{run, trivial_seed, Scan, SearchConfig, SearchContext, SpreadRecord, Strategy};
use crate::verify::{verify, Status, Verdict, Witness};

/// Exit status: valid certificate or successful command.
pub const EXIT_OK: i32 = 0;
/// Exit status: the certificate is not a maximal partial spread or spread.
pub const EXIT_INVALID: i32 = 1;
/// Exit status: bad flags or unreadable input.
pub const EXIT_USAGE: i32 = 2;

const BUILTINS: &[(&str, &str)] = &[
    ("q8-size30", include_str!("../../certs/q8-size30.pg3q")),
    ("q8-initial", include_str!("../../certs/q8-initial.pg3q")),
    ("q8-size29", include_str!("../../certs/q8-size29.pg3q")),
    ("q16-size87", include_str!("../../certs/q16-size87.pg3q")),
    ("q29-printed", include_str!("../../certs/q29-printed.pg3q")),
    ("q29-size210", include_str!("../../certs/q29-size210.pg3q")),
];

/// Bundled certificate texts by name.
pub fn builtin(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|(n, _)| *n)
}

/// Reads `builtin:<name>` or a file path.
pub fn load_text(source: &str) -> std::io::Result<String> {
    match source.strip_prefix("builtin:") {
        Some(name) => builtin(name).map(str::to_string).ok_or_else(|| {
            std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!("no bundled certificate {name:?}"),
            )
        }),
        None => std::fs::read_to_string(source),
    }
}

/// Seed lines for a search: `trivial` is `(0,0,0,0,0,1)`, `none` is empty,
/// anything else is a certificate whose lines (initial and added) form the
/// seed.
pub fn resolve_seed(spec: &str, table: &LineTable) -> std::result::Result<Vec<Line>, String> {
    match spec {
        "trivial" => Ok(trivial_seed()),
        "none" => Ok(Vec::new()),
        source => {
            let text = load_text(source).map_err(|e| format!("{source}: {e}"))?;
            let cert = Certificate::parse(&text).map_err(|e| format!("{source}: {e}"))?;
            if cert.q != table.q() {
                return Err(format!(
                    "{source}: seed is for q = {}, not {}",
                    cert.q,
                    table.q()
                ));
            }
            let field = cert.field().map_err(|e| e.to_string())?;
            if field != *table.field() {
                return Err(format!("{source}: seed uses modulus {}", cert.modulus_id));
            }
            cert.to_record(&field)
                .and_then(|r| r.lines(table))
                .map_err(|e| format!("{source}: {e}"))
        }
    }
}

/// Decoded lines of a certificate, in listing order.
pub fn decode_certificate(text: &str) -> Result<Vec<Line>> {
    let cert = Certificate::parse(text)?;
    let field = cert.field()?;
    let record = cert.to_record(&field)?;
    record.lines(&LineTable::streaming(field))
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub q: u32,
    pub modulus: String,
    pub status: Status,
    pub size: usize,
    pub initial_lines: usize,
    pub added_lines: usize,
    pub witness: Option<Witness>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
    pub digest: String,
    pub elapsed_ms: u128,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        if self.status.is_maximal() {
            EXIT_OK
        } else {
            EXIT_INVALID
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "q = {} (modulus {}), {} lines: {} initial + {} added\n{}, size {}\n",
            self.q,
            self.modulus,
            self.size,
            self.initial_lines,
            self.added_lines,
            self.status.describe(),
            self.size
        );
        match &self.witness {
            Some(Witness::MeetingPair {
                first,
                second,
                first_line,
                second_line,
            }) => out.push_str(&format!(
                "witness: line #{first} {first_line} meets line #{second} {second_line}\n"
            )),
            Some(Witness::Extension { index, line }) => out.push_str(&format!(
                "witness: line {index} {line} is skew to every line\n"
            )),
            None => {}
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(&format!("digest: {}\n", self.digest));
        out
    }
}

/// Parses, decodes and verifies a certificate against the full line table.
pub fn verify_certificate(text: &str, exec: Execution) -> Result<VerifyReport> {
    let started = Instant::now();
    let cert = Certificate::parse(text)?;
    let field = cert.field()?;
    let record = cert.to_record(&field)?;
    let table = LineTable::streaming(field);
    let verdict: Verdict = verify(&record, &table, exec)?;
    Ok(VerifyReport {
        q: cert.q,
        modulus: record.modulus.clone(),
        status: verdict.status,
        size: verdict.size,
        initial_lines: record.seed_lines.len(),
        added_lines: record.added.len(),
        witness: verdict.witness,
        warnings: cert.warnings(),
        notes: cert.notes.clone(),
        digest: digest(&record),
        elapsed_ms: started.elapsed().as_millis(),
    })
}

/// Runs one search and re-verifies the result.
pub fn search_record(
    ctx: &SearchContext,
    strategy: Strategy,
    seed: Vec<Line>,
    start: Option<LineId>,
    scan: Scan,
    exec: Execution,
) -> Result<(SpreadRecord, Verdict)> {
    let mut cfg = SearchConfig::new(strategy).with_seed(seed).with_scan(scan);
    cfg.start_index = start;
    let record = run(ctx, &cfg, exec)?;
    let verdict = verify(&record, ctx.table(), exec)?;
    Ok((record, verdict))
}

/// Parses `lo..hi` (half-open).
pub fn parse_range(text: &str) -> std::result::Result<(LineId, LineId), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("expected lo..hi, got {text:?}"))?;
    let lo = if lo.is_empty() { Ok(0) } else { lo.parse() };
    let lo: LineId = lo.map_err(|_| format!("bad range start in {text:?}"))?;
    let hi: LineId = hi
        .parse()
        .map_err(|_| format!("bad range end in {text:?}"))?;
    if lo > hi {
        return Err(format!("empty range {text:?}"));
    }
    Ok((lo, hi))
}

/// Maps library errors on certificates to exit codes.
pub fn certificate_error_code(e: &Error) -> i32 {
    match e {
        Error::NotPrimePower(_) | Error::MissingModulus(_) | Error::OrderOutOfRange(_) => {
            EXIT_USAGE
        }
        _ => EXIT_INVALID,
    }
}
