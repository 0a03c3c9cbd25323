use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use pg3q::cli::report::{default_density_target, reproduce, DensityReport, SweepReport};
use pg3q::cli::{
    self, format_certificate, load_text, parse_range, resolve_seed, search_record, EXIT_INVALID,
    EXIT_OK, EXIT_USAGE,
};
use pg3q::exec::with_jobs;
use pg3q::search::{
    density_campaign, linear_sweep_summary, run, CampaignConfig, Scan, SearchConfig,
};
use pg3q::{Execution, FieldTable, LineTable, SearchContext, Strategy};

#[derive(Parser)]
#[command(name = "pg3q", version, about = "Maximal partial spreads of PG(3,q)")]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every line of a certificate as a Plücker tuple
    Decode {
        /// Certificate path, or builtin:<name>
        source: String,
    },
    /// Verify that a certificate is a maximal partial spread or a spread
    Verify {
        source: String,
        #[arg(long)]
        json: bool,
    },
    /// Build one maximal partial spread and write its certificate
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long, value_parser = parse_strategy)]
        strategy: Strategy,
        /// `trivial`, `none`, a certificate path, or builtin:<name>
        #[arg(long, default_value = "trivial")]
        seed: String,
        /// Line index forced in right after the seed
        #[arg(long)]
        start: Option<u32>,
        /// Linear scan order: from-zero or cyclic (from the start line)
        #[arg(long, default_value = "from-zero")]
        scan: Scan,
        /// Directory for the certificate (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the linear program from every start line in a range
    Sweep {
        #[arg(long)]
        q: u32,
        /// Start indices lo..hi (default: every line)
        #[arg(long)]
        range: Option<String>,
        /// Scan order: from-zero or cyclic (from the start line)
        #[arg(long, default_value = "from-zero")]
        scan: Scan,
        /// Directory for one certificate per achieved size
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Collect verified witnesses for as many sizes as possible
    Density {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = 0x5eed)]
        rng_seed: u64,
        /// Strategies cycled through run by run
        #[arg(long, value_delimiter = ',', value_parser = parse_strategy,
              default_values = ["max", "min", "middle", "linear"])]
        strategies: Vec<Strategy>,
        /// Largest number of random lines added to (0,0,0,0,0,1)
        #[arg(long)]
        max_random_lines: Option<usize>,
        /// Directory for the ledger and witness certificates
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Compare desk-scale runs against the published sizes
    Report {
        #[arg(long, value_delimiter = ',', default_values_t = [7u32, 8, 9])]
        q: Vec<u32>,
        /// Skip the linear sweeps
        #[arg(long)]
        no_sweep: bool,
        #[arg(long)]
        json: bool,
    },
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

fn context(q: u32, exec: Execution) -> Result<SearchContext, String> {
    let field = FieldTable::new(q).map_err(|e| e.to_string())?;
    Ok(SearchContext::new(LineTable::build(field), exec))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(path)
}

fn usage(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs;
    let code = with_jobs(jobs, move || execute(cli.command));
    ExitCode::from(code as u8)
}

fn execute(command: Command) -> i32 {
    let exec = Execution::default();
    match command {
        Command::Decode { source } => {
            let text = match load_text(&source) {
                Ok(t) => t,
                Err(e) => return usage(format!("{source}: {e}")),
            };
            match cli::decode_certificate(&text) {
                Ok(lines) => {
                    for l in lines {
                        println!("{l}");
                    }
                    EXIT_OK
                }
                Err(e) => {
                    eprintln!("error: {source}: {e}");
                    cli::certificate_error_code(&e)
                }
            }
        }
        Command::Verify { source, json } => {
            let text = match load_text(&source) {
                Ok(t) => t,
                Err(e) => return usage(format!("{source}: {e}")),
            };
            match cli::verify_certificate(&text, exec) {
                Ok(report) => {
                    if json {
                        println!("{}", serde_json::to_string_pretty(&report).unwrap());
                    } else {
                        print!("{}", report.render());
                    }
                    report.exit_code()
                }
                Err(e) => {
                    eprintln!("error: {source}: {e}");
                    cli::certificate_error_code(&e)
                }
            }
        }
        Command::Search {
            q,
            strategy,
            seed,
            start,
            scan,
            out,
        } => {
            let ctx = match context(q, exec) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let seed = match resolve_seed(&seed, ctx.table()) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let started = Instant::now();
            let (record, verdict) = match search_record(&ctx, strategy, seed, start, scan, exec) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            eprintln!(
                "q = {q}, {strategy}: {} of size {} in {} ms",
                verdict.status.describe(),
                record.size(),
                started.elapsed().as_millis()
            );
            if !verdict.status.is_maximal() {
                eprintln!("error: search output failed verification");
                return EXIT_INVALID;
            }
            let cert = format_certificate(&record);
            match out {
                Some(dir) => {
                    let name = format!("q{q}-{strategy}-size{}.pg3q", record.size());
                    match write_file(&dir, &name, &cert) {
                        Ok(p) => println!("{}", p.display()),
                        Err(e) => return usage(e),
                    }
                }
                None => print!("{cert}"),
            }
            EXIT_OK
        }
        Command::Sweep {
            q,
            range,
            scan,
            out,
            json,
        } => {
            let ctx = match context(q, exec) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let n = ctx.table().len() as u32;
            let (lo, hi) = match range.as_deref().map(parse_range).unwrap_or(Ok((0, n))) {
                Ok((lo, hi)) if hi <= n => (lo, hi),
                Ok((_, hi)) => return usage(format!("range end {hi} exceeds {n} lines")),
                Err(e) => return usage(e),
            };
            let started = Instant::now();
            let summary = linear_sweep_summary(&ctx, lo..hi, scan, exec);
            let report = SweepReport::new(summary, started.elapsed().as_millis());
            if let Some(dir) = out {
                for (&size, &start) in &report.first_start {
                    let cfg = SearchConfig::new(Strategy::Linear)
                        .with_start(start)
                        .with_scan(scan);
                    let rec = run(&ctx, &cfg, Execution::Sequential).expect("valid start");
                    let name = format!("q{q}-linear-size{size}.pg3q");
                    if let Err(e) = write_file(&dir, &name, &format_certificate(&rec)) {
                        return usage(e);
                    }
                }
                let body = serde_json::to_string_pretty(&report).unwrap();
                if let Err(e) = write_file(&dir, &format!("sweep-q{q}.json"), &body) {
                    return usage(e);
                }
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                print!("{}", report.render());
            }
            EXIT_OK
        }
        Command::Density {
            q,
            budget,
            rng_seed,
            strategies,
            max_random_lines,
            out,
            json,
        } => {
            let ctx = match context(q, exec) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let target = default_density_target(q);
            let defaults = CampaignConfig::new(q, budget);
            let cfg = CampaignConfig {
                seed: rng_seed,
                strategies,
                max_random_lines: max_random_lines.unwrap_or(defaults.max_random_lines),
                target: Some(target),
                ..defaults
            };
            let started = Instant::now();
            let ledger = density_campaign(&ctx, &cfg, exec);
            let report = DensityReport::new(&ledger, Some(target), started.elapsed().as_millis());
            if let Some(dir) = out {
                for (size, rec) in &ledger.sizes {
                    let name = format!("q{q}-size{size}.pg3q");
                    if let Err(e) = write_file(&dir, &name, &format_certificate(rec)) {
                        return usage(e);
                    }
                }
                let body = serde_json::to_string_pretty(&ledger).unwrap();
                if let Err(e) = write_file(&dir, &format!("ledger-q{q}.json"), &body) {
                    return usage(e);
                }
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                print!("{}", report.render());
            }
            EXIT_OK
        }
        Command::Report { q, no_sweep, json } => {
            let mut entries = Vec::new();
            for q in q {
                let ctx = match context(q, exec) {
                    Ok(c) => c,
                    Err(e) => return usage(e),
                };
                match reproduce(&ctx, !no_sweep, None, exec) {
                    Ok(entry) => {
                        if !json {
                            print!("{}", entry.render());
                        }
                        entries.push(entry);
                    }
                    Err(e) => return usage(e),
                }
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&entries).unwrap());
            }
            EXIT_OK
        }
    }
}
