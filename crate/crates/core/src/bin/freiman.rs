use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use freiman::conjecture::{gen_as, Family};
use freiman::report::{cached_search, parse_checks, parse_config, spec_from_config, write_csv, Cache, ReportRecord};
use freiman::search::{
    enumerate_normal_sets, verify_conjecture, verify_segment_volume_bound, AuditToggles, ClassStatus,
    ConjectureOptions, SearchSpec, Span, Verdict, VolCap,
};
use freiman::{AnySet, Error, IntSet};

/// Sumsets, dimension and volume of small-doubling sets, with exhaustive checks.
#[derive(Parser)]
#[command(name = "freiman", version)]
struct Cli {
    /// Cap the worker pool.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit JSON records instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Additive dimension, through both formulas when both apply.
    Dim { set: String },
    /// Volume with its certificate.
    Vol {
        set: String,
        /// Also search affine images with coefficients up to this radius.
        #[arg(long, default_value_t = 0)]
        search_radius: u32,
        /// Do not accept the lattice argument as a certificate.
        #[arg(long)]
        no_lattice_certificate: bool,
        /// A known lower bound on the volume, used as a certificate if met.
        #[arg(long)]
        stated_bound: Option<u64>,
    },
    /// Size of 2A.
    Doubling { set: String },
    /// (c, b) and the conjectured volume for (k, T, d).
    Params { k: u64, t: u64, d: u64 },
    /// Generate a family member, e.g. `gen ii k=11 b=3 i=2` or `gen as k=10 s=4`.
    Gen {
        family: String,
        params: Vec<String>,
    },
    /// Exhaustive extremal search from a config file.
    SearchExtremal(SearchArgs),
    /// Match a three-segment set against the extremal families.
    Classify { set: String },
    /// Compare class maxima with the conjectured formula on the proven ranges.
    VerifyConjecture {
        #[arg(long, default_value = "5..=8")]
        k: String,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, default_value_t = 2)]
        slack: u64,
        #[arg(long, default_value = "all")]
        audit: String,
        #[arg(long, hide = true)]
        plant_fault: bool,
    },
    /// Check the segment volume bound for s-segment sets.
    #[command(name = "verify-segment-bound", alias = "verify-prop15")]
    VerifySegmentBound {
        #[arg(long, default_value = "4..=9")]
        k: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        s: Vec<u64>,
        /// `full` scans every 1-dimensional set; `slack=N` stops N above the bound.
        #[arg(long, default_value = "full")]
        cap: String,
        #[arg(long, default_value = "all")]
        audit: String,
    },
    /// Run the inequality audits on one set or on all normal-form sets in range.
    Audit {
        /// A single set; otherwise every normal-form set with `--k` and `--max-element`.
        #[arg(long)]
        set: Option<String>,
        #[arg(long, default_value = "2..=7")]
        k: String,
        #[arg(long, default_value_t = 16)]
        max_element: u32,
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, hide = true)]
        plant_fault: bool,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Flat `key = value` config; flags below override it.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    max_element: Option<String>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    max_part: Option<String>,
    #[arg(long)]
    max_gap: Option<String>,
    #[arg(long)]
    max_span: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    slack: Option<String>,
    #[arg(long)]
    audit: Option<String>,
    /// Write the full result as JSON here.
    #[arg(long)]
    json_out: Option<PathBuf>,
    /// Write class records as CSV here.
    #[arg(long)]
    csv_out: Option<PathBuf>,
    /// Ignore the cache.
    #[arg(long)]
    force: bool,
    #[arg(long, hide = true)]
    plant_fault: bool,
}

/// A usage or input error, reported on stderr with exit code 1.
enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out = Result<u8, Failure>;

fn json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializes")
}

fn set_arg(s: &str) -> Result<AnySet, Failure> {
    Ok(s.parse::<AnySet>()?)
}

fn verdict_code(v: Verdict) -> u8 {
    v.exit_code() as u8
}

fn params_kv(params: &[String]) -> Result<Vec<(String, u32)>, Failure> {
    params
        .iter()
        .map(|p| {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("malformed parameter `{p}`, expected key=value")))?;
            let n = v
                .parse()
                .map_err(|_| Failure::Usage(format!("malformed parameter `{p}`: not an integer")))?;
            Ok((k.to_string(), n))
        })
        .collect()
}

fn run(cli: Cli) -> Out {
    let threads = cli.threads;
    match cli.cmd {
        Cmd::Dim { set } => {
            let r = ReportRecord::dim(&set_arg(&set)?)?;
            if cli.json {
                println!("{}", json(&r));
            } else {
                println!("{}", r.outputs["dim"]);
            }
        }
        Cmd::Vol {
            set,
            search_radius,
            no_lattice_certificate,
            stated_bound,
        } => {
            let a = set_arg(&set)?;
            let cfg = freiman::model::VolumeConfig {
                search_radius,
                lattice_certificate: !no_lattice_certificate,
                stated_lower_bound: stated_bound,
            };
            let v = freiman::model::volume_with(&a, &cfg)?;
            if cli.json && cfg == freiman::model::VolumeConfig::default() {
                println!("{}", json(&ReportRecord::vol(&a)?));
            } else if cli.json {
                // Non-default options: the record form would not re-validate.
                println!("{}", json(&v));
            } else {
                println!("{} {}", v.value, v.certificate);
            }
        }
        Cmd::Doubling { set } => {
            let r = ReportRecord::doubling(&set_arg(&set)?)?;
            if cli.json {
                println!("{}", json(&r));
            } else {
                println!("{}", r.outputs["doubling"]);
            }
        }
        Cmd::Params { k, t, d } => {
            let r = ReportRecord::params(k, t, d)?;
            if cli.json {
                println!("{}", json(&r));
            } else {
                println!("c={} b={} vol*={}", r.outputs["c"], r.outputs["b"], r.outputs["vol_conjectured"]);
            }
        }
        Cmd::Gen { family, params } => {
            let kv = params_kv(&params)?;
            if family == "as" {
                let get = |key: &str| {
                    kv.iter()
                        .find(|(k, _)| k == key)
                        .map(|x| x.1)
                        .ok_or_else(|| Failure::Usage(format!("gen as needs `{key}=`")))
                };
                let a = gen_as(get("k")?, get("s")?)?;
                let v = freiman::volume(&a)?;
                if cli.json {
                    println!("{}", json(&serde_json::json!({"set": a.to_string(), "vol": v.value, "dim": v.dim, "doubling": a.doubling()})));
                } else {
                    println!("{a}");
                    println!("dim={} doubling={} vol={}", v.dim, a.doubling(), v.value);
                }
                return Ok(0);
            }
            let text = std::iter::once(family).chain(params).collect::<Vec<_>>().join(" ");
            let f: Family = text.parse()?;
            let c = f.self_check()?;
            if cli.json {
                println!("{}", json(&c));
            } else {
                println!("{}", c.set);
                println!(
                    "dim={} doubling={} vol={} ({})",
                    c.observed.dim,
                    c.observed.doubling,
                    c.observed.vol,
                    if c.passed() { "matches the stated triple" } else { "differs from the stated triple" }
                );
            }
            if !c.passed() {
                return Ok(2);
            }
        }
        Cmd::SearchExtremal(args) => return search(args, threads, cli.json),
        Cmd::Classify { set } => {
            let r = ReportRecord::classification(&set_arg(&set)?)?;
            if cli.json {
                println!("{}", json(&r));
            } else {
                println!("{}", r.outputs["family"]);
                if !r.outputs["unmet_hypotheses"].is_empty() {
                    eprintln!("note: hypotheses not met: {}", r.outputs["unmet_hypotheses"]);
                }
            }
        }
        Cmd::VerifyConjecture {
            k,
            d,
            slack,
            audit,
            plant_fault,
        } => {
            if d != 1 {
                return Err(Failure::Usage(format!(
                    "verify-conjecture supports --d 1 only, got {d}"
                )));
            }
            let opts = ConjectureOptions {
                k: k.parse()?,
                slack,
                audit: AuditToggles {
                    checks: parse_checks(&audit)?,
                    plant_fault: false,
                },
                plant_fault,
                threads,
            };
            let r = verify_conjecture(&opts)?;
            if cli.json {
                println!("{}", json(&r));
            } else {
                for c in &r.checks {
                    println!(
                        "k={} T={} c={} b={} vol*={} found={} complete={} {}",
                        c.k,
                        c.t,
                        c.c,
                        c.b,
                        c.vol_conjectured,
                        c.vol_found.map_or("-".into(), |v| v.to_string()),
                        c.complete,
                        c.verdict
                    );
                }
                let nv: u64 = r.searches.iter().map(|s| s.n_violations).sum();
                println!("audit violations: {nv}");
                println!("verdict: {}", r.verdict);
            }
            return Ok(verdict_code(r.verdict));
        }
        Cmd::VerifySegmentBound { k, s, cap, audit } => {
            let cap = match cap.as_str() {
                "full" => VolCap::OneDimBound,
                c => match c.strip_prefix("slack=").and_then(|n| n.parse().ok()) {
                    Some(n) => VolCap::Slack(n),
                    None => return Err(Failure::Usage(format!("bad --cap `{c}`, expected full or slack=N"))),
                },
            };
            let toggles = AuditToggles {
                checks: parse_checks(&audit)?,
                plant_fault: false,
            };
            let r = verify_segment_volume_bound(k.parse()?, &s, cap, &toggles, threads)?;
            if cli.json {
                println!("{}", json(&r));
            } else {
                for c in &r.cases {
                    println!(
                        "k={} s={} bound={} cap={} configs={} one-dim={} max={} tight={} A_s tight={} above={} {}",
                        c.k,
                        c.s,
                        c.bound,
                        c.cap,
                        c.n_configs,
                        c.n_one_dim,
                        c.max_vol_one_dim.map_or("-".into(), |v| v.to_string()),
                        c.tight.len(),
                        c.a_s_tight.map_or("n/a".into(), |t| t.to_string()),
                        c.n_exceeding,
                        c.verdict
                    );
                }
                println!("audit violations: {}", r.n_violations);
                println!("verdict: {}", r.verdict);
            }
            return Ok(verdict_code(r.verdict));
        }
        Cmd::Audit {
            set,
            k,
            max_element,
            checks,
            plant_fault,
        } => {
            let toggles = AuditToggles {
                checks: parse_checks(&checks)?,
                plant_fault,
            };
            let corpus: Vec<IntSet> = match set {
                Some(s) => vec![s.parse::<IntSet>()?.normalize()?],
                None => {
                    let k: Span = k.parse()?;
                    (k.lo..=k.hi)
                        .flat_map(|k| (1..=max_element).flat_map(move |n| enumerate_normal_sets(k as usize, n)))
                        .collect()
                }
            };
            let mut total = 0;
            for a in &corpus {
                let r = ReportRecord::audit(a, &toggles)?;
                let n: usize = r.outputs["violations"].parse().unwrap();
                if n > 0 {
                    total += n;
                    if cli.json {
                        println!("{}", serde_json::to_string(&r).unwrap());
                    } else {
                        println!("{}: {}", a, r.outputs["details"]);
                    }
                }
            }
            if !cli.json {
                println!("{} sets audited, {} violations", corpus.len(), total);
            }
            return Ok(if total > 0 { 2 } else { 0 });
        }
    }
    Ok(0)
}

fn search(args: SearchArgs, threads: Option<usize>, as_json: bool) -> Out {
    let mut cfg = match &args.spec {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            parse_config(&text)?
        }
        None => Default::default(),
    };
    for (key, v) in [
        ("mode", &args.mode),
        ("k", &args.k),
        ("max_element", &args.max_element),
        ("s", &args.s),
        ("max_part", &args.max_part),
        ("max_gap", &args.max_gap),
        ("max_span", &args.max_span),
        ("t", &args.t),
        ("d", &args.d),
        ("slack", &args.slack),
        ("audit", &args.audit),
    ] {
        if let Some(v) = v {
            cfg.insert(key.to_string(), v.clone());
        }
    }
    if args.plant_fault {
        cfg.insert("plant_fault".into(), "true".into());
    }
    let threads = threads.or_else(|| cfg.get("threads").and_then(|t| t.parse().ok()));
    let spec: SearchSpec = spec_from_config(&cfg)?;
    let cache = Cache::from_env();
    let (r, hit) = cached_search(&cache, &spec, args.force, threads)?;
    if let Some(p) = &args.json_out {
        fs::write(p, json(&r)).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    }
    if let Some(p) = &args.csv_out {
        let f = fs::File::create(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
        write_csv(&r, f)?;
    }
    if as_json {
        println!("{}", json(&r));
    } else {
        println!(
            "spec {} ({}), {} sets scanned, {} classes",
            &r.spec_hash[..12],
            if hit { "cached" } else { "fresh" },
            r.n_scanned,
            r.classes.len()
        );
        for c in &r.classes {
            println!(
                "k={} T={} d={} vol={} vol*={} classes={} complete={} {}",
                c.k,
                c.t,
                c.d,
                c.vol_found,
                c.vol_conjectured.map_or("-".into(), |v| v.to_string()),
                c.n_extremal_classes,
                c.complete,
                c.representatives.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            );
        }
        println!("audit violations: {}", r.n_violations);
    }
    for w in &r.warnings {
        eprintln!("warning: {w}");
    }
    let falsified = r.n_violations > 0
        || r.classes.iter().any(|c| c.status == ClassStatus::Exceeds && c.complete);
    Ok(if falsified { 2 } else { 0 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
