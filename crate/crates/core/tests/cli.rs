use std::path::Path;
use std::process::{Command, Output};

use pg3q::cli::{builtin, Certificate};
use pg3q::geometry::bilinear;
use pg3q::{Execution, Line, LineTable, SearchContext};

fn pg3q(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pg3q"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn decode_lists_every_line() {
    let o = pg3q(&["decode", "builtin:q8-size30"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 30);
    assert_eq!(lines[0], "(0, 0, 0, 0, 0, 1)");
    assert_eq!(lines[8], "(1, 0, 3, 0, 0, 0)");
}

#[test]
fn decode_single_seed() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "one.pg3q",
        "pg3q 5 prime\ninitial:\n(0, 0, 0, 0, 2, 3)\nadded:\n",
    );
    let o = pg3q(&["decode", &path]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(0, 0, 0, 0, 1, 4)\n");
}

#[test]
fn out_of_range_index_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "bad.pg3q",
        "pg3q 2 prime\ninitial:\nadded:\n3, 35\n",
    );
    for cmd in ["decode", "verify"] {
        let o = pg3q(&[cmd, &path]);
        assert_eq!(o.status.code(), Some(1));
        assert!(stderr(&o).contains("35"), "{}", stderr(&o));
    }
}

#[test]
fn verify_bundled_q8_certificate() {
    let o = pg3q(&["verify", "builtin:q8-size30"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("maximal partial spread, size 30"));
}

#[test]
fn verify_bundled_q29_certificates() {
    let o = pg3q(&["verify", "builtin:q29-size210"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("maximal partial spread, size 210"));
    assert!(out.contains("warning: certificate states 61 initial lines but lists 60"));

    let o = pg3q(&["verify", "builtin:q29-printed", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 209);
    assert_eq!(v["status"], "extendable-partial-spread");
    assert_eq!(v["witness"]["kind"], "extension");
    assert_eq!(v["witness"]["index"], 0);
    assert_eq!(v["notes"].as_array().unwrap().len(), 1);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 2);
}

#[test]
fn tampered_certificate_reports_a_meeting_pair() {
    let text = builtin("q8-size30").unwrap();
    let cert = Certificate::parse(text).unwrap();
    let field = cert.field().unwrap();
    let ctx = SearchContext::new(LineTable::build(field.clone()), Execution::default());
    let table = ctx.table();
    // replace the first added index by a line meeting the first seed line
    let seed = table
        .index_of(&cert.to_record(&field).unwrap().seed_lines[0])
        .unwrap();
    let bad = ctx.neighbors(seed)[0];
    let tampered = text.replacen("\n24, 2367,", &format!("\n{bad}, 2367,"), 1);
    assert_ne!(tampered, text);

    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "tampered.pg3q", &tampered);
    let o = pg3q(&["verify", &path, "--json"]);
    assert_ne!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "invalid");
    assert_eq!(v["witness"]["kind"], "meeting-pair");
    let a: Line = serde_json::from_value(v["witness"]["first_line"].clone()).unwrap();
    let b: Line = serde_json::from_value(v["witness"]["second_line"].clone()).unwrap();
    assert_ne!(a, b);
    assert_eq!(bilinear(&field, &a, &b), 0);
}

#[test]
fn search_reproduces_the_bundled_q8_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = pg3q(&[
        "search",
        "--q",
        "8",
        "--strategy",
        "max",
        "--seed",
        "builtin:q8-initial",
        "--start",
        "24",
        "--out",
        out,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let path = stdout(&o).trim().to_string();
    assert!(path.ends_with("q8-max-size30.pg3q"));
    let ours = Certificate::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let published = Certificate::parse(builtin("q8-size30").unwrap()).unwrap();
    assert_eq!(ours.added, published.added);
    assert_eq!(ours.seeds.len(), 8);
    assert_eq!(pg3q(&["verify", &path]).status.code(), Some(0));
}

#[test]
fn search_outputs_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let configs: [&[&str]; 4] = [
        &["--q", "2", "--strategy", "linear", "--start", "0"],
        &["--q", "7", "--strategy", "middle"],
        &["--q", "5", "--strategy", "min", "--seed", "none"],
        &[
            "--q",
            "4",
            "--strategy",
            "linear",
            "--start",
            "100",
            "--scan",
            "cyclic",
        ],
    ];
    for (k, flags) in configs.iter().enumerate() {
        let mut args = vec!["search"];
        args.extend_from_slice(flags);
        let o = pg3q(&args);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let path = write(dir.path(), &format!("{k}.pg3q"), &stdout(&o));
        let v = pg3q(&["verify", &path]);
        assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
        if k == 0 {
            assert!(stdout(&v).contains("spread, size 5"));
            assert!(!stdout(&v).contains("partial"));
        }
    }
}

#[test]
fn search_output_is_byte_stable() {
    let configs: [&[&str]; 3] = [
        &["search", "--q", "2", "--strategy", "linear", "--start", "0"],
        &["search", "--q", "7", "--strategy", "middle"],
        &[
            "search",
            "--q",
            "8",
            "--strategy",
            "max",
            "--seed",
            "builtin:q8-initial",
        ],
    ];
    for args in configs {
        let a = pg3q(args);
        let b = pg3q(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["search", "--q", "6", "--strategy", "max"][..],
        &["search", "--q", "7", "--strategy", "greedy"],
        &[
            "search",
            "--q",
            "2",
            "--strategy",
            "linear",
            "--start",
            "35",
        ],
        &["sweep", "--q", "2", "--range", "0..36"],
        &["verify", "builtin:missing"],
        &["frobnicate"],
    ] {
        let o = pg3q(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn sweep_q2_reports_35_records() {
    let o = pg3q(&["sweep", "--q", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["runs"], 35);
    assert_eq!(v["histogram"]["5"], 35);
}

#[test]
fn sweep_writes_one_certificate_per_size() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = pg3q(&["sweep", "--q", "4", "--scan", "cyclic", "--out", out]);
    assert_eq!(o.status.code(), Some(0));
    let certs: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "pg3q"))
        .collect();
    assert!(!certs.is_empty());
    for c in certs {
        let text = std::fs::read_to_string(&c).unwrap();
        assert!(text.contains("scan: cyclic"));
        assert_eq!(
            pg3q(&["verify", c.to_str().unwrap()]).status.code(),
            Some(0)
        );
    }
}

#[test]
fn zero_budget_density_is_clean() {
    let o = pg3q(&["density", "--q", "8", "--budget", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no sizes witnessed"));
    let o = pg3q(&["density", "--q", "8", "--budget", "0", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["runs"], 0);
    assert_eq!(v["missing"].as_array().unwrap().len(), 25);
}

#[test]
fn density_writes_verified_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = pg3q(&[
        "density", "--q", "5", "--budget", "64", "--out", out, "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rejected"], 0);
    for size in v["sizes"].as_array().unwrap() {
        let p = dir.path().join(format!("q5-size{size}.pg3q"));
        assert_eq!(
            pg3q(&["verify", p.to_str().unwrap()]).status.code(),
            Some(0)
        );
    }
    assert!(dir.path().join("ledger-q5.json").exists());
}

#[test]
fn report_without_sweeps() {
    let o = pg3q(&["report", "--q", "7", "--no-sweep", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["q"], 7);
    assert_eq!(v[0]["bounds"]["min_target"], 29);
}
