//! Self-validating records, flat config files, the result cache and CSV output.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::conjecture::{conjectured_vol, params_from};
use crate::dimension::{dim_konyagin_lev, dim_segments};
use crate::error::{Error, Result};
use crate::grid::{doubling_of, AnySet};
use crate::intset::IntSet;
use crate::model::volume;
use crate::search::{
    audit_set, classify_3segment_extremal, AuditToggles, Check, ClassRecord, ClassStatus,
    SearchMode, SearchResult, SearchSpec, SetFacts, Span,
};
use crate::segments::decompose_segments;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordKind {
    Dim,
    Vol,
    Doubling,
    Params,
    ClassMax,
    Classification,
    Audit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub spec_hash: Option<String>,
    pub version: String,
}

/// One emitted result. Inputs and outputs are kept in canonical text form so
/// re-parsing the inputs and recomputing must give back the outputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub kind: RecordKind,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
    pub provenance: Provenance,
}

fn map<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn field<'a>(m: &'a BTreeMap<String, String>, key: &str) -> Result<&'a str> {
    m.get(key)
        .map(String::as_str)
        .ok_or_else(|| Error::InvalidInput(format!("record lacks `{key}`")))
}

fn num(m: &BTreeMap<String, String>, key: &str) -> Result<u64> {
    let v = field(m, key)?;
    v.parse().map_err(|_| Error::parse(v, format!("`{key}` must be an integer")))
}

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl ReportRecord {
    fn new(kind: RecordKind, inputs: BTreeMap<String, String>, outputs: BTreeMap<String, String>) -> Self {
        ReportRecord {
            kind,
            inputs,
            outputs,
            provenance: Provenance {
                spec_hash: None,
                version: env!("CARGO_PKG_VERSION").to_string(),
            },
        }
    }

    /// Dimension through the relation matrix, and through segment sums when
    /// the set has fewer segments than elements; the two must agree.
    pub fn dim(set: &AnySet) -> Result<Self> {
        let d = dim_konyagin_lev(set)?;
        let mut out = map([("dim", d.to_string())]);
        if let AnySet::Int(a) = set {
            let segs = decompose_segments(a)?;
            if segs.s() < segs.k() {
                let ds = dim_segments(&segs)?;
                if ds != d {
                    return Err(Error::InvalidInput(format!(
                        "dimension formulas disagree on {a}: {d} vs {ds}"
                    )));
                }
                out.insert("dim_segments".into(), ds.to_string());
            }
        }
        Ok(Self::new(RecordKind::Dim, map([("set", set.to_string())]), out))
    }

    pub fn vol(set: &AnySet) -> Result<Self> {
        let v = volume(set)?;
        Ok(Self::new(
            RecordKind::Vol,
            map([("set", set.to_string())]),
            map([
                ("vol", v.value.to_string()),
                ("dim", v.dim.to_string()),
                ("certificate", v.certificate.to_string()),
                ("witness", v.witness.map(|w| w.to_string()).unwrap_or_default()),
            ]),
        ))
    }

    pub fn doubling(set: &AnySet) -> Result<Self> {
        Ok(Self::new(
            RecordKind::Doubling,
            map([("set", set.to_string())]),
            map([("doubling", doubling_of(set).to_string())]),
        ))
    }

    pub fn params(k: u64, t: u64, d: u64) -> Result<Self> {
        let p = params_from(k, t, d)?;
        let v = conjectured_vol(&p)?;
        Ok(Self::new(
            RecordKind::Params,
            map([("k", k.to_string()), ("T", t.to_string()), ("d", d.to_string())]),
            map([("c", p.c.to_string()), ("b", p.b.to_string()), ("vol_conjectured", v.to_string())]),
        ))
    }

    pub fn classification(set: &AnySet) -> Result<Self> {
        let c = classify_3segment_extremal(set)?;
        Ok(Self::new(
            RecordKind::Classification,
            map([("set", set.to_string())]),
            map([
                ("family", c.tag()),
                ("unmet_hypotheses", c.unmet_hypotheses.join("; ")),
            ]),
        ))
    }

    pub fn audit(set: &IntSet, toggles: &AuditToggles) -> Result<Self> {
        let segs = decompose_segments(set)?;
        let facts = SetFacts {
            segments: &segs,
            doubling: set.doubling() as u64,
            dim: dim_konyagin_lev(set)?,
        };
        let v = audit_set(&facts, toggles);
        let checks: Vec<&str> = toggles.checks.iter().map(Check::name).collect();
        Ok(Self::new(
            RecordKind::Audit,
            map([
                ("set", set.to_string()),
                ("checks", checks.join(",")),
                ("plant_fault", toggles.plant_fault.to_string()),
            ]),
            map([
                ("violations", v.len().to_string()),
                ("details", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")),
            ]),
        ))
    }

    /// Record for one class of a search. Inputs carry the spec; the search
    /// itself is not re-run on validation, its representatives are re-checked.
    pub fn class_max(result: &SearchResult, class: &ClassRecord) -> Self {
        let reps: Vec<String> = class.representatives.iter().map(|r| r.to_string()).collect();
        let mut r = Self::new(
            RecordKind::ClassMax,
            map([
                ("spec", serde_json::to_string(&result.spec).expect("spec serializes")),
                ("k", class.k.to_string()),
                ("T", class.t.to_string()),
                ("d", class.d.to_string()),
            ]),
            map([
                ("c", opt(class.c)),
                ("b", opt(class.b)),
                ("vol_conjectured", opt(class.vol_conjectured)),
                ("vol_found", class.vol_found.to_string()),
                ("n_sets", class.n_sets.to_string()),
                ("n_extremal_classes", class.n_extremal_classes.to_string()),
                ("representatives", reps.join(" ")),
                ("complete", class.complete.to_string()),
                ("status", status_name(class.status).to_string()),
            ]),
        );
        r.provenance.spec_hash = Some(result.spec_hash.clone());
        r
    }

    /// Recomputes the outputs from the inputs and compares.
    pub fn validate(&self) -> Result<()> {
        let set = || -> Result<AnySet> { field(&self.inputs, "set")?.parse() };
        let expect = match self.kind {
            RecordKind::Dim => Self::dim(&set()?)?,
            RecordKind::Vol => Self::vol(&set()?)?,
            RecordKind::Doubling => Self::doubling(&set()?)?,
            RecordKind::Params => Self::params(
                num(&self.inputs, "k")?,
                num(&self.inputs, "T")?,
                num(&self.inputs, "d")?,
            )?,
            RecordKind::Classification => Self::classification(&set()?)?,
            RecordKind::Audit => {
                let a: IntSet = field(&self.inputs, "set")?.parse()?;
                let checks = field(&self.inputs, "checks")?;
                let toggles = AuditToggles {
                    checks: parse_checks(checks)?,
                    plant_fault: field(&self.inputs, "plant_fault")? == "true",
                };
                Self::audit(&a, &toggles)?
            }
            RecordKind::ClassMax => return self.validate_class_max(),
        };
        if expect.outputs != self.outputs {
            return Err(Error::InvalidInput(format!(
                "{:?} record does not reproduce: stored {:?}, recomputed {:?}",
                self.kind, self.outputs, expect.outputs
            )));
        }
        Ok(())
    }

    fn validate_class_max(&self) -> Result<()> {
        let spec: SearchSpec = serde_json::from_str(field(&self.inputs, "spec")?)
            .map_err(|e| Error::InvalidInput(format!("spec: {e}")))?;
        if self.provenance.spec_hash.as_deref() != Some(spec.hash().as_str()) {
            return Err(Error::InvalidInput("spec hash does not match the spec".into()));
        }
        let (k, t, d) = (num(&self.inputs, "k")?, num(&self.inputs, "T")?, num(&self.inputs, "d")?);
        let bad = |m: String| Err(Error::InvalidInput(m));
        let conj = params_from(k, t, d).ok();
        if opt(conj.map(|p| p.c)) != self.outputs["c"] || opt(conj.map(|p| p.b)) != self.outputs["b"] {
            return bad("stored (c, b) differ from the parametrization".into());
        }
        let cv = conj.and_then(|p| conjectured_vol(&p).ok());
        if opt(cv) != self.outputs["vol_conjectured"] {
            return bad("stored conjectured volume differs".into());
        }
        let found = num(&self.outputs, "vol_found")?;
        let reps = field(&self.outputs, "representatives")?;
        let mut n = 0;
        for lit in reps.split_whitespace() {
            n += 1;
            let a: IntSet = lit.parse()?;
            let v = volume(&a)?;
            if a.len() as u64 != k || a.doubling() as u64 != t || v.dim as u64 != d || v.value != found {
                return bad(format!("representative {a} is not in class ({k}, {t}, {d}) with vol {found}"));
            }
        }
        if n.to_string() != self.outputs["n_extremal_classes"] {
            return bad("representative count differs".into());
        }
        Ok(())
    }
}

fn status_name(s: ClassStatus) -> &'static str {
    match s {
        ClassStatus::Attains => "attains",
        ClassStatus::Below => "below",
        ClassStatus::Exceeds => "exceeds",
        ClassStatus::NoConjecture => "no-conjecture",
    }
}

fn parse_status(s: &str) -> Result<ClassStatus> {
    Ok(match s {
        "attains" => ClassStatus::Attains,
        "below" => ClassStatus::Below,
        "exceeds" => ClassStatus::Exceeds,
        "no-conjecture" => ClassStatus::NoConjecture,
        _ => return Err(Error::parse(s, "unknown class status")),
    })
}

/// `all`, `none`, or a comma-separated list of check names.
pub fn parse_checks(s: &str) -> Result<Vec<Check>> {
    match s.trim() {
        "all" => Ok(Check::ALL.to_vec()),
        "none" | "" => Ok(Vec::new()),
        list => list.split(',').map(str::parse).collect(),
    }
}

/// Parses flat `key = value` text. `#` starts a comment; duplicate keys are an error.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::parse(line, format!("line {}: expected `key = value`", n + 1)));
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(Error::parse(line, format!("line {}: empty key", n + 1)));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::parse(k, format!("line {}: duplicate key", n + 1)));
        }
    }
    Ok(out)
}

const SPEC_KEYS: [&str; 13] = [
    "mode", "k", "max_element", "s", "max_part", "max_gap", "max_span", "t", "d", "slack", "audit",
    "plant_fault", "threads",
];

/// Builds a search spec from config entries. `threads` is accepted and ignored
/// here since it does not change the result.
pub fn spec_from_config(cfg: &BTreeMap<String, String>) -> Result<SearchSpec> {
    if let Some(k) = cfg.keys().find(|k| !SPEC_KEYS.contains(&k.as_str())) {
        return Err(Error::parse(k, "unknown config key"));
    }
    fn get<T: std::str::FromStr>(cfg: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
        cfg.get(key)
            .map(|v| v.parse::<T>().map_err(|_| Error::parse(v, format!("bad value for `{key}`"))))
            .transpose()
    }
    let mode = match cfg.get("mode").map(String::as_str) {
        Some("normal-form") | None => SearchMode::NormalForm,
        Some("segments") => SearchMode::Segments,
        Some(m) => return Err(Error::parse(m, "mode must be normal-form or segments")),
    };
    let k: Span = get(cfg, "k")?.ok_or_else(|| Error::InvalidInput("config needs `k`".into()))?;
    let spec = SearchSpec {
        mode,
        k,
        max_element: get(cfg, "max_element")?,
        s: get(cfg, "s")?,
        max_part: get(cfg, "max_part")?,
        max_gap: get(cfg, "max_gap")?,
        max_span: get(cfg, "max_span")?,
        t: get(cfg, "t")?,
        d: get(cfg, "d")?,
        slack: get(cfg, "slack")?.unwrap_or(2),
        audit: AuditToggles {
            checks: parse_checks(cfg.get("audit").map_or("all", String::as_str))?,
            plant_fault: get(cfg, "plant_fault")?.unwrap_or(false),
        },
    };
    spec.validate()?;
    Ok(spec)
}

/// The nine class-max columns, then the remaining class fields.
pub const CSV_HEADER: [&str; 12] = [
    "k",
    "T",
    "d",
    "c",
    "b",
    "vol_conjectured",
    "vol_found",
    "n_extremal_classes",
    "complete",
    "status",
    "n_sets",
    "representatives",
];

pub fn write_csv<W: Write>(result: &SearchResult, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let err = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
    out.write_record(CSV_HEADER).map_err(err)?;
    for c in &result.classes {
        let reps: Vec<String> = c.representatives.iter().map(|r| r.to_string()).collect();
        out.write_record([
            c.k.to_string(),
            c.t.to_string(),
            c.d.to_string(),
            opt(c.c),
            opt(c.b),
            opt(c.vol_conjectured),
            c.vol_found.to_string(),
            c.n_extremal_classes.to_string(),
            c.complete.to_string(),
            status_name(c.status).to_string(),
            c.n_sets.to_string(),
            reps.join(" "),
        ])
        .map_err(err)?;
    }
    out.flush().map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    Ok(())
}

/// Parses the output of [`write_csv`] back into class records.
pub fn read_csv<R: Read>(r: R) -> Result<Vec<ClassRecord>> {
    let mut rd = csv::Reader::from_reader(r);
    let err = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
    let header = rd.headers().map_err(err)?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::InvalidInput("unexpected csv header".into()));
    }
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row.map_err(err)?;
        let m: BTreeMap<String, String> = CSV_HEADER
            .iter()
            .zip(row.iter())
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        let o = |key: &str| -> Result<Option<u64>> {
            if m[key].is_empty() {
                Ok(None)
            } else {
                num(&m, key).map(Some)
            }
        };
        let representatives = m["representatives"]
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<IntSet>>>()?;
        out.push(ClassRecord {
            k: num(&m, "k")?,
            t: num(&m, "T")?,
            d: num(&m, "d")?,
            c: o("c")?,
            b: o("b")?,
            vol_conjectured: o("vol_conjectured")?,
            vol_found: num(&m, "vol_found")?,
            n_sets: num(&m, "n_sets")?,
            n_extremal_classes: num(&m, "n_extremal_classes")? as usize,
            representatives,
            complete: match m["complete"].as_str() {
                "true" => true,
                "false" => false,
                v => return Err(Error::parse(v, "complete must be true or false")),
            },
            status: parse_status(&m["status"])?,
        });
    }
    Ok(out)
}

/// Search results cached as line-delimited JSON: a header line carrying the
/// spec hash and run summary, then one class per line.
#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheHeader {
    spec_hash: String,
    version: String,
    spec: SearchSpec,
    n_scanned: u64,
    n_high_dim: u64,
    n_violations: u64,
    violations: Vec<crate::search::Violation>,
    warnings: Vec<String>,
    wall_time_ms: u64,
    n_classes: usize,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$FREIMAN_CACHE_DIR`, or `.cache/`.
    pub fn from_env() -> Self {
        Cache::new(std::env::var_os("FREIMAN_CACHE_DIR").map_or_else(|| PathBuf::from(".cache"), PathBuf::from))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, spec: &SearchSpec) -> PathBuf {
        self.dir.join(format!("{}.jsonl", spec.hash()))
    }

    /// The cached result for `spec`, if present and intact.
    pub fn load(&self, spec: &SearchSpec) -> Option<SearchResult> {
        let f = fs::File::open(self.path_for(spec)).ok()?;
        let mut lines = BufReader::new(f).lines();
        let h: CacheHeader = serde_json::from_str(&lines.next()?.ok()?).ok()?;
        if h.spec_hash != spec.hash() || h.spec != *spec || h.version != env!("CARGO_PKG_VERSION") {
            return None;
        }
        let mut classes = Vec::with_capacity(h.n_classes);
        for line in lines {
            classes.push(serde_json::from_str(&line.ok()?).ok()?);
        }
        if classes.len() != h.n_classes {
            return None;
        }
        Some(SearchResult {
            spec: h.spec,
            spec_hash: h.spec_hash,
            version: h.version,
            classes,
            n_scanned: h.n_scanned,
            n_high_dim: h.n_high_dim,
            n_violations: h.n_violations,
            violations: h.violations,
            warnings: h.warnings,
            wall_time_ms: h.wall_time_ms,
        })
    }

    pub fn store(&self, r: &SearchResult) -> Result<PathBuf> {
        let io = |e: std::io::Error| Error::InvalidInput(format!("cache {}: {e}", self.dir.display()));
        fs::create_dir_all(&self.dir).map_err(io)?;
        let header = CacheHeader {
            spec_hash: r.spec_hash.clone(),
            version: r.version.clone(),
            spec: r.spec.clone(),
            n_scanned: r.n_scanned,
            n_high_dim: r.n_high_dim,
            n_violations: r.n_violations,
            violations: r.violations.clone(),
            warnings: r.warnings.clone(),
            wall_time_ms: r.wall_time_ms,
            n_classes: r.classes.len(),
        };
        let path = self.dir.join(format!("{}.jsonl", r.spec_hash));
        let tmp = path.with_extension("jsonl.tmp");
        let mut f = fs::File::create(&tmp).map_err(io)?;
        writeln!(f, "{}", serde_json::to_string(&header).expect("header serializes")).map_err(io)?;
        for c in &r.classes {
            writeln!(f, "{}", serde_json::to_string(c).expect("class serializes")).map_err(io)?;
        }
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)?;
        Ok(path)
    }
}

/// Runs the search unless a cached result exists; `force` always re-runs.
/// Returns the result and whether it came from the cache.
pub fn cached_search(
    cache: &Cache,
    spec: &SearchSpec,
    force: bool,
    threads: Option<usize>,
) -> Result<(SearchResult, bool)> {
    if !force {
        if let Some(r) = cache.load(spec) {
            return Ok((r, true));
        }
    }
    let r = crate::search::extremal_search_with(spec, threads)?;
    cache.store(&r)?;
    Ok((r, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_result() -> SearchResult {
        let mut spec = SearchSpec::normal_form(Span { lo: 4, hi: 5 }, 7);
        spec.d = Some(1);
        crate::search::extremal_search(&spec).unwrap()
    }

    #[test]
    fn records_validate() {
        let s = |x: &str| x.parse::<AnySet>().unwrap();
        let recs = [
            ReportRecord::dim(&s("0,1,3,7")).unwrap(),
            ReportRecord::vol(&s("0,3,4,5,6")).unwrap(),
            ReportRecord::vol(&s("0,0;1,0;2,0;0,1")).unwrap(),
            ReportRecord::doubling(&s("0,1,3")).unwrap(),
            ReportRecord::params(11, 32, 1).unwrap(),
            ReportRecord::classification(&s("0,1,2,3,4,5,6,7,8,12,24")).unwrap(),
            ReportRecord::audit(&"0,3,4,5,6".parse().unwrap(), &AuditToggles::default()).unwrap(),
        ];
        for r in &recs {
            r.validate().unwrap();
            let back: ReportRecord = serde_json::from_str(&serde_json::to_string(r).unwrap()).unwrap();
            assert_eq!(&back, r);
        }
        assert_eq!(recs[1].outputs["vol"], "7");
        assert_eq!(recs[4].outputs["vol_conjectured"], "25");
    }

    #[test]
    fn tampered_records_fail() {
        let mut r = ReportRecord::params(11, 32, 1).unwrap();
        r.outputs.insert("b".into(), "4".into());
        assert!(r.validate().is_err());
        let mut r = ReportRecord::vol(&"0,3,4,5,6".parse().unwrap()).unwrap();
        r.inputs.insert("set".into(), "0,1,2".into());
        assert!(r.validate().is_err());
    }

    #[test]
    fn class_records_validate() {
        let res = small_result();
        assert!(!res.classes.is_empty());
        for c in &res.classes {
            let r = ReportRecord::class_max(&res, c);
            r.validate().unwrap();
            let mut bad = r.clone();
            bad.outputs.insert("vol_found".into(), (c.vol_found + 1).to_string());
            assert!(bad.validate().is_err());
        }
    }

    #[test]
    fn config_parsing() {
        let cfg = parse_config("# k=11 figure\nmode = segments\nk = 11\ns = 3\nmax_gap = 27\nmax_span = 27\nt = 32 # T\n").unwrap();
        let spec = spec_from_config(&cfg).unwrap();
        assert_eq!(spec.mode, SearchMode::Segments);
        assert_eq!(spec.t, Some(Span::single(32)));
        assert_eq!(spec.audit, AuditToggles::default());
        assert!(parse_config("k = 1\nk = 2").is_err());
        assert!(parse_config("nonsense").is_err());
        let bad = parse_config("k = 5\nmax_element = 8\nbogus = 1").unwrap();
        assert!(matches!(spec_from_config(&bad), Err(Error::Parse { token, .. }) if token == "bogus"));
        let none = parse_config("k = 5..=6\nmax_element = 9\naudit = none").unwrap();
        assert!(spec_from_config(&none).unwrap().audit.is_empty());
    }

    #[test]
    fn csv_matches_json() {
        let res = small_result();
        let mut buf = Vec::new();
        write_csv(&res, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("k,T,d,c,b,vol_conjectured,vol_found,n_extremal_classes,complete,"));
        let back = read_csv(&buf[..]).unwrap();
        assert_eq!(back, res.classes);
        let json: SearchResult = serde_json::from_str(&serde_json::to_string(&res).unwrap()).unwrap();
        assert_eq!(json.classes, back);
    }

    #[test]
    fn cache_round_trip_and_force() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let mut spec = SearchSpec::normal_form(Span::single(5), 8);
        spec.d = Some(1);
        let (a, hit) = cached_search(&cache, &spec, false, None).unwrap();
        assert!(!hit);
        let (b, hit) = cached_search(&cache, &spec, false, None).unwrap();
        assert!(hit);
        assert_eq!(a, b);
        let (_, hit) = cached_search(&cache, &spec, true, None).unwrap();
        assert!(!hit);
        let header = fs::read_to_string(cache.path_for(&spec)).unwrap();
        assert!(header.lines().next().unwrap().contains(&spec.hash()));
        // A different spec misses.
        let mut other = spec.clone();
        other.slack = 3;
        assert!(cache.load(&other).is_none());
    }
}
