use std::path::Path;
use std::process::{Command, Output};

use freiman::report::read_csv;
use freiman::search::SearchResult;

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freiman"))
        .args(args)
        .env("FREIMAN_CACHE_DIR", dir.join("cache"))
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), args);
    (
        o.status.code().unwrap(),
        String::from_utf8(o.stdout).unwrap(),
        String::from_utf8(o.stderr).unwrap(),
    )
}

#[test]
fn documented_outputs() {
    assert_eq!(run(&["params", "11", "32", "1"]).1, "c=2 b=3 vol*=25\n");
    assert_eq!(run(&["vol", "0,3,4,5,6"]).1, "7 exact-1d\n");
    assert_eq!(run(&["classify", "0,1,2,3,4,5,6,7,8,12,24"]).1, "family=ii i=1 b=3\n");
    assert_eq!(run(&["dim", "0,1,3,7"]).1, "3\n");
    assert_eq!(run(&["doubling", "0,1,3"]).1, "6\n");
    assert_eq!(run(&["vol", "0,0;1,0;0,1;2,0"]).1, "4 exact-certified\n");
    let (code, out, _) = run(&["gen", "ii", "k=11", "b=3", "i=2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("0,1,2,3,4,5,6,7,12,13,24\ndim=1 doubling=32 vol=25"));
    assert_eq!(run(&["gen", "as", "k=10", "s=4"]).1.lines().nth(1), Some("dim=1 doubling=37 vol=49"));
}

#[test]
fn usage_errors_exit_1_with_token() {
    let (code, _, err) = run(&["vol", "0,x,3"]);
    assert_eq!(code, 1);
    assert!(err.contains("`x`"), "{err}");
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["params", "11", "32"]).0, 1);
    assert_eq!(run(&["params", "11", "100", "1"]).0, 1);
    assert_eq!(run(&["verify-conjecture", "--k", "8..=5"]).0, 1);
    assert_eq!(run(&["verify-conjecture", "--d", "2"]).0, 1);
    assert_eq!(run(&["gen", "ii", "k=11", "b=9", "i=2"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
}

#[test]
fn verification_exit_codes() {
    assert_eq!(run(&["verify-conjecture", "--k", "5..=6"]).0, 0);
    let (code, out, _) = run(&["verify-conjecture", "--k", "5", "--plant-fault"]);
    assert_eq!(code, 2);
    assert!(out.contains("verdict: falsified"));
    assert_eq!(run(&["verify-segment-bound", "--k", "4..=6", "--s", "2,3"]).0, 0);
    assert_eq!(run(&["verify-prop15", "--k", "6", "--s", "2", "--cap", "slack=1"]).0, 3);
    assert_eq!(run(&["audit", "--k", "2..=5", "--max-element", "9"]).0, 0);
    assert_eq!(run(&["audit", "--set", "0,3,4,5,6", "--plant-fault"]).0, 2);
    assert_eq!(run(&["search-extremal", "--k", "5", "--max-element", "8", "--plant-fault"]).0, 2);
}

#[test]
fn search_writes_equivalent_json_and_csv_and_caches() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("fig.cfg"), "mode = segments\nk = 11\ns = 3\nmax_gap = 27\nmax_span = 27\nt = 32\n").unwrap();
    let args = ["search-extremal", "--spec", "fig.cfg", "--json-out", "r.json", "--csv-out", "r.csv"];
    let o = run_in(p, &args);
    assert_eq!(o.status.code(), Some(0));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("(fresh)"), "{out}");
    assert!(out.contains("k=11 T=32 d=1 vol=25 vol*=25 classes=4 complete=true"), "{out}");
    let json: SearchResult = serde_json::from_str(&std::fs::read_to_string(p.join("r.json")).unwrap()).unwrap();
    let csv = read_csv(std::fs::File::open(p.join("r.csv")).unwrap()).unwrap();
    assert_eq!(json.classes, csv);

    let again = String::from_utf8(run_in(p, &args).stdout).unwrap();
    assert!(again.contains("(cached)"), "{again}");
    let mut forced = args.to_vec();
    forced.push("--force");
    assert!(String::from_utf8(run_in(p, &forced).stdout).unwrap().contains("(fresh)"));
    // A flag override changes the spec and misses the cache.
    let mut over = args.to_vec();
    over.extend(["--slack", "3"]);
    assert!(String::from_utf8(run_in(p, &over).stdout).unwrap().contains("(fresh)"));
}

#[test]
fn json_records_revalidate() {
    for args in [
        &["dim", "0,1,3,7"][..],
        &["vol", "0,3,4,5,6"],
        &["params", "11", "32", "1"],
        &["classify", "0,4,5,6,7,8,9,10,11,12,24"],
    ] {
        let mut a = vec!["--json"];
        a.extend_from_slice(args);
        let (code, out, _) = run(&a);
        assert_eq!(code, 0);
        let r: freiman::report::ReportRecord = serde_json::from_str(&out).unwrap();
        r.validate().unwrap();
    }
}
