//! Exhaustive searches over normal-form sets and segment shapes.
//!
//! Work is split into independent units and run on a rayon pool; partial
//! results merge commutatively, so the outcome does not depend on the number
//! of workers or the order in which units finish.

pub mod audit;
pub mod classify;
pub mod enumerate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::conjecture::{
    conjectured_vol, gen_as, one_dim_vol_cap, params_from, segment_vol_bound, t_from_params,
};
use crate::dimension::{dim_konyagin_lev, dim_segments};
use crate::error::{Error, Result};
use crate::intset::IntSet;
use crate::model::{f2_isomorphic, volume};
use crate::segments::{decompose_segments, SegmentDecomposition};

pub use audit::{audit_set, AuditToggles, Check, SetFacts, Violation};
pub use classify::{classify_3segment_extremal, Classification};
pub use enumerate::{
    compositions, enumerate_normal_sets, enumerate_normal_sets_with_second,
    enumerate_segment_configs, SegmentCaps,
};

/// Violations kept verbatim in a result; the total is always counted.
pub const MAX_STORED_VIOLATIONS: usize = 100;

/// Inclusive range of non-negative integers, written `a` or `a..=b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    pub fn single(v: u64) -> Self {
        Span { lo: v, hi: v }
    }

    pub fn contains(&self, v: u64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl FromStr for Span {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let num = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::parse(t, "expected a non-negative integer"))
        };
        let (lo, hi) = match s.split_once("..=") {
            Some((a, b)) => (num(a)?, num(b)?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(Error::parse(s, "empty range"));
        }
        Ok(Span { lo, hi })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..={}", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Normal-form `k`-subsets of `[0, N]`.
    NormalForm,
    /// `s`-segment shapes inside per-parameter caps.
    Segments,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchSpec {
    pub mode: SearchMode,
    pub k: Span,
    /// `N` in normal-form mode.
    pub max_element: Option<u32>,
    /// Segment count in segment mode.
    pub s: Option<usize>,
    pub max_part: Option<u32>,
    pub max_gap: Option<u32>,
    /// Cap on the span `k + Σ ℓ_i` in segment mode.
    pub max_span: Option<u64>,
    pub t: Option<Span>,
    pub d: Option<usize>,
    /// Completeness requires the scan to reach `conjectured + slack`.
    pub slack: u64,
    pub audit: AuditToggles,
}

impl SearchSpec {
    pub fn normal_form(k: Span, max_element: u32) -> Self {
        SearchSpec {
            mode: SearchMode::NormalForm,
            k,
            max_element: Some(max_element),
            s: None,
            max_part: None,
            max_gap: None,
            max_span: None,
            t: None,
            d: None,
            slack: 2,
            audit: AuditToggles::default(),
        }
    }

    pub fn segments(k: Span, s: usize, max_gap: u32, max_span: u64) -> Self {
        SearchSpec {
            mode: SearchMode::Segments,
            k,
            max_element: None,
            s: Some(s),
            max_part: None,
            max_gap: Some(max_gap),
            max_span: Some(max_span),
            t: None,
            d: None,
            slack: 2,
            audit: AuditToggles::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidInput(m.to_string()));
        if self.k.lo < 2 {
            return bad("k must be at least 2");
        }
        if self.k.hi > 64 {
            return bad("k above 64 is out of scope");
        }
        match self.mode {
            SearchMode::NormalForm => match self.max_element {
                None => return bad("normal-form mode needs max_element"),
                Some(0) => return bad("max_element must be positive"),
                Some(n) if n > crate::intset::DEFAULT_ELEMENT_CAP => {
                    return bad("max_element exceeds the element cap")
                }
                _ => {}
            },
            SearchMode::Segments => {
                match self.s {
                    None => return bad("segment mode needs s"),
                    Some(s) if s < 1 || s as u64 > self.k.hi => return bad("s must lie in [1, k]"),
                    _ => {}
                }
                if self.max_gap.is_none() && self.max_span.is_none() {
                    return bad("segment mode needs max_gap or max_span");
                }
                if self.max_gap == Some(0) || self.max_span == Some(0) || self.max_part == Some(0) {
                    return bad("caps must be positive");
                }
            }
        }
        Ok(())
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("spec serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    fn caps(&self, k: u32) -> SegmentCaps {
        let max_span = self
            .max_span
            .unwrap_or(k as u64 + (self.s.unwrap_or(1) as u64).saturating_sub(1) * self.max_gap.unwrap() as u64);
        SegmentCaps {
            max_part: self.max_part.unwrap_or(k).min(k),
            max_gap: self.max_gap.unwrap_or(max_span.min(u32::MAX as u64) as u32),
            max_span,
        }
    }

    /// Largest span a scanned set can have, i.e. the largest 1-dimensional volume seen.
    fn coverage(&self, k: u32) -> u64 {
        match self.mode {
            SearchMode::NormalForm => self.max_element.unwrap() as u64 + 1,
            SearchMode::Segments => {
                let c = self.caps(k);
                let s = self.s.unwrap() as u64;
                c.max_span.min(k as u64 + (s - 1) * c.max_gap as u64)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassStatus {
    /// The class maximum equals the conjectured value.
    Attains,
    /// Below the conjectured value.
    Below,
    /// Above the conjectured value; a counterexample if the class is complete.
    Exceeds,
    /// `(k, T, d)` has no `(c, b)` parametrization.
    NoConjecture,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub k: u64,
    pub t: u64,
    pub d: u64,
    pub c: Option<u64>,
    pub b: Option<u64>,
    pub vol_conjectured: Option<u64>,
    pub vol_found: u64,
    /// Sets of this class seen by the scan.
    pub n_sets: u64,
    pub n_extremal_classes: usize,
    /// The lexicographically smallest scanned member of each maximizing
    /// isomorphism class.
    pub representatives: Vec<IntSet>,
    pub complete: bool,
    pub status: ClassStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub spec: SearchSpec,
    pub spec_hash: String,
    pub version: String,
    pub classes: Vec<ClassRecord>,
    pub n_scanned: u64,
    /// Sets of dimension above 3, whose volume is not computed.
    pub n_high_dim: u64,
    pub n_violations: u64,
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
    pub wall_time_ms: u64,
}

impl SearchResult {
    pub fn class(&self, k: u64, t: u64, d: u64) -> Option<&ClassRecord> {
        self.classes.iter().find(|c| (c.k, c.t, c.d) == (k, t, d))
    }

    /// Equal up to wall time.
    pub fn same_outcome(&self, other: &SearchResult) -> bool {
        let mut a = self.clone();
        a.wall_time_ms = other.wall_time_ms;
        a == *other
    }
}

#[derive(Debug, Clone)]
struct RepAcc {
    rep: IntSet,
    /// `canonical_1d` for 1-dimensional classes.
    key: Option<IntSet>,
    interior: bool,
}

#[derive(Debug, Clone, Default)]
struct ClassAcc {
    n_sets: u64,
    max_vol: u64,
    reps: Vec<RepAcc>,
}

impl ClassAcc {
    fn offer(&mut self, vol: u64, r: RepAcc) {
        self.n_sets += 1;
        if vol > self.max_vol {
            self.max_vol = vol;
            self.reps = vec![r];
        } else if vol == self.max_vol {
            self.insert(r);
        }
    }

    fn insert(&mut self, r: RepAcc) {
        let found = self.reps.iter_mut().find(|e| match (&e.key, &r.key) {
            (Some(a), Some(b)) => a == b,
            _ => f2_isomorphic(&e.rep, &r.rep),
        });
        match found {
            Some(e) => {
                if r.rep < e.rep {
                    e.rep = r.rep;
                }
                e.interior |= r.interior;
            }
            None => self.reps.push(r),
        }
    }

    fn merge(mut self, other: ClassAcc) -> ClassAcc {
        self.n_sets += other.n_sets;
        if other.max_vol > self.max_vol {
            let n = self.n_sets;
            self = other;
            self.n_sets = n;
        } else if other.max_vol == self.max_vol {
            for r in other.reps {
                self.insert(r);
            }
        }
        self
    }
}

#[derive(Debug, Default)]
struct Partial {
    classes: BTreeMap<(u64, u64, u64), ClassAcc>,
    n_scanned: u64,
    n_high_dim: u64,
    n_violations: u64,
    violations: Vec<Violation>,
}

impl Partial {
    fn add_violations(&mut self, v: Vec<Violation>) {
        self.n_violations += v.len() as u64;
        self.violations.extend(v);
        if self.violations.len() > 4 * MAX_STORED_VIOLATIONS {
            self.trim();
        }
    }

    fn trim(&mut self) {
        self.violations.sort();
        self.violations.truncate(MAX_STORED_VIOLATIONS);
    }

    fn merge(mut self, other: Partial) -> Partial {
        for (key, acc) in other.classes {
            match self.classes.remove(&key) {
                Some(mine) => self.classes.insert(key, mine.merge(acc)),
                None => self.classes.insert(key, acc),
            };
        }
        self.n_scanned += other.n_scanned;
        self.n_high_dim += other.n_high_dim;
        self.n_violations += other.n_violations;
        self.violations.extend(other.violations);
        self.trim();
        self
    }
}

enum Unit {
    Normal { k: u32, n: u32, second: Option<u32> },
    Segments { k: u32, parts: Vec<u32> },
}

fn units(spec: &SearchSpec) -> Vec<Unit> {
    let mut out = Vec::new();
    for k in spec.k.lo as u32..=spec.k.hi as u32 {
        match spec.mode {
            SearchMode::NormalForm => {
                let big_n = spec.max_element.unwrap();
                for n in (k - 1).max(1)..=big_n {
                    if k == 2 {
                        out.push(Unit::Normal { k, n, second: None });
                    } else {
                        for a1 in 1..n {
                            out.push(Unit::Normal { k, n, second: Some(a1) });
                        }
                    }
                }
            }
            SearchMode::Segments => {
                let s = spec.s.unwrap();
                let caps = spec.caps(k);
                for parts in compositions(k, s, caps.max_part) {
                    if enumerate::admissible_parts(&parts) {
                        out.push(Unit::Segments { k, parts });
                    }
                }
            }
        }
    }
    out
}

fn segment_dim(d: &SegmentDecomposition) -> Result<usize> {
    if d.s() < d.k() {
        dim_segments(d)
    } else {
        dim_konyagin_lev(&d.reconstruct())
    }
}

fn scan_one(
    spec: &SearchSpec,
    part: &mut Partial,
    set: IntSet,
    segs: &SegmentDecomposition,
    doubling: u64,
    at_cap: bool,
    dim_of: impl FnOnce(&IntSet) -> Result<usize>,
) -> Result<()> {
    part.n_scanned += 1;
    let k = set.len() as u64;
    let t_ok = spec.t.is_none_or(|t| t.contains(doubling));
    if !t_ok && spec.audit.is_empty() {
        return Ok(());
    }
    let dim = dim_of(&set)?;
    if !spec.audit.is_empty() {
        part.add_violations(audit_set(&SetFacts { segments: segs, doubling, dim }, &spec.audit));
    }
    if !t_ok || spec.d.is_some_and(|d| d != dim) {
        return Ok(());
    }
    let (vol, key) = match dim {
        1 => (IntSet::max(&set) as u64 + 1, Some(set.canonical_1d()?)),
        2 | 3 => (volume(&set)?.value, None),
        _ => {
            part.n_high_dim += 1;
            return Ok(());
        }
    };
    part.classes
        .entry((k, doubling, dim as u64))
        .or_default()
        .offer(
            vol,
            RepAcc {
                rep: set,
                key,
                interior: !at_cap,
            },
        );
    Ok(())
}

fn run_unit(spec: &SearchSpec, unit: &Unit) -> Result<Partial> {
    let mut part = Partial::default();
    match unit {
        Unit::Normal { k, n, second } => {
            let it = match second {
                Some(a1) => enumerate_normal_sets_with_second(*k as usize, *n, *a1),
                None => enumerate_normal_sets(*k as usize, *n),
            };
            let at_cap = Some(*n) == spec.max_element;
            for set in it {
                let doubling = set.doubling() as u64;
                let segs = decompose_segments(&set)?;
                let s = set.clone();
                scan_one(spec, &mut part, s, &segs, doubling, at_cap, |a| dim_konyagin_lev(a))?;
            }
        }
        Unit::Segments { k, parts } => {
            let caps = spec.caps(*k);
            let budget = caps.max_span.saturating_sub(*k as u64);
            for gaps in enumerate::gap_vectors(parts.len(), caps.max_gap, budget) {
                let segs = SegmentDecomposition::from_shape(parts, &gaps)?;
                let at_cap = segs.span() == caps.max_span || gaps.iter().any(|&g| g == caps.max_gap);
                let doubling = segs.doubling();
                let set = segs.reconstruct();
                scan_one(spec, &mut part, set, &segs, doubling, at_cap, |_| segment_dim(&segs))?;
            }
        }
    }
    Ok(part)
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

pub fn extremal_search(spec: &SearchSpec) -> Result<SearchResult> {
    extremal_search_with(spec, None)
}

/// Runs the search on a pool of `threads` workers (rayon's default if `None`).
pub fn extremal_search_with(spec: &SearchSpec, threads: Option<usize>) -> Result<SearchResult> {
    spec.validate()?;
    let start = Instant::now();
    let work = units(spec);
    let part = with_threads(threads, || {
        work.par_iter()
            .map(|u| run_unit(spec, u))
            .try_reduce(Partial::default, |a, b| Ok(a.merge(b)))
    })??;
    let mut part = part;
    part.trim();

    let mut warnings = Vec::new();
    let mut classes = Vec::with_capacity(part.classes.len());
    for ((k, t, d), acc) in part.classes {
        let params = params_from(k, t, d).ok();
        let conj = params.as_ref().and_then(|p| conjectured_vol(p).ok());
        let mut reps: Vec<IntSet> = acc.reps.iter().map(|r| r.rep.clone()).collect();
        reps.sort();
        let interior = acc.reps.iter().all(|r| r.interior);
        let reach = conj.is_none_or(|cv| spec.coverage(k as u32) >= cv + spec.slack);
        let complete = interior && reach;
        let status = match conj {
            None => ClassStatus::NoConjecture,
            Some(cv) if acc.max_vol == cv => ClassStatus::Attains,
            Some(cv) if acc.max_vol < cv => ClassStatus::Below,
            Some(_) => ClassStatus::Exceeds,
        };
        if !complete {
            warnings.push(format!(
                "class (k={k}, T={t}, d={d}) may be incomplete: {}",
                if interior { "caps below conjectured volume + slack" } else { "a maximizer touches a cap" }
            ));
        }
        if status == ClassStatus::Exceeds {
            warnings.push(format!(
                "class (k={k}, T={t}, d={d}) exceeds the conjectured volume: {} > {}",
                acc.max_vol,
                conj.unwrap()
            ));
        }
        classes.push(ClassRecord {
            k,
            t,
            d,
            c: params.map(|p| p.c),
            b: params.map(|p| p.b),
            vol_conjectured: conj,
            vol_found: acc.max_vol,
            n_sets: acc.n_sets,
            n_extremal_classes: reps.len(),
            representatives: reps,
            complete,
            status,
        });
    }
    if part.n_high_dim > 0 {
        warnings.push(format!(
            "{} sets of dimension above 3 were skipped",
            part.n_high_dim
        ));
    }
    Ok(SearchResult {
        spec: spec.clone(),
        spec_hash: spec.hash(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        classes,
        n_scanned: part.n_scanned,
        n_high_dim: part.n_high_dim,
        n_violations: part.n_violations,
        violations: part.violations,
        warnings,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// Outcome of a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    Falsified,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Confirmed => 0,
            Verdict::Falsified => 2,
            Verdict::Inconclusive => 3,
        }
    }

    fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Falsified, _) | (_, Falsified) => Falsified,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Confirmed,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "confirmed",
            Verdict::Falsified => "falsified",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureCheck {
    pub k: u64,
    pub t: u64,
    pub c: u64,
    pub b: u64,
    pub vol_conjectured: u64,
    pub vol_found: Option<u64>,
    pub complete: bool,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub checks: Vec<ConjectureCheck>,
    pub searches: Vec<SearchResult>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureOptions {
    pub k: Span,
    pub slack: u64,
    pub audit: AuditToggles,
    /// Report every observed maximum one above its true value.
    pub plant_fault: bool,
    pub threads: Option<usize>,
}

impl Default for ConjectureOptions {
    fn default() -> Self {
        ConjectureOptions {
            k: Span { lo: 5, hi: 8 },
            slack: 2,
            audit: AuditToggles::default(),
            plant_fault: false,
            threads: None,
        }
    }
}

/// The 1-dimensional classes whose extremal volume is known: `c = 1` with any
/// `b`, and `c = 2` with `b ≤ 1`.
pub fn proven_targets(k: u64) -> Vec<(u64, u64, u64)> {
    let mut out = BTreeMap::new();
    for b in 0..=k.saturating_sub(3) {
        if let Ok(t) = t_from_params(k, 1, 1, b) {
            out.entry(t).or_insert((1, b));
        }
    }
    for b in 0..=1 {
        if let Ok(t) = t_from_params(k, 1, 2, b) {
            out.entry(t).or_insert((2, b));
        }
    }
    out.into_iter().map(|(t, (c, b))| (t, c, b)).collect()
}

/// Class-by-class exhaustive comparison with the conjectured maximum on the
/// proven 1-dimensional ranges.
pub fn verify_conjecture(opts: &ConjectureOptions) -> Result<ConjectureReport> {
    if opts.k.lo < 4 {
        return Err(Error::InvalidInput("verify-conjecture needs k ≥ 4".into()));
    }
    let mut checks = Vec::new();
    let mut searches = Vec::new();
    for k in opts.k.lo..=opts.k.hi {
        let targets = proven_targets(k);
        let mut conj = Vec::new();
        for &(t, c, b) in &targets {
            conj.push(conjectured_vol(&params_from(k, t, 1)?)?);
            debug_assert_eq!(params_from(k, t, 1)?.c, c);
            let _ = b;
        }
        let top = *conj.iter().max().unwrap();
        let n = u32::try_from(top + opts.slack - 1)
            .map_err(|_| Error::InvalidInput("cap too large".into()))?;
        let mut spec = SearchSpec::normal_form(Span::single(k), n);
        spec.t = Some(Span {
            lo: targets.first().unwrap().0,
            hi: targets.last().unwrap().0,
        });
        spec.d = Some(1);
        spec.slack = opts.slack;
        spec.audit = opts.audit.clone();
        let res = extremal_search_with(&spec, opts.threads)?;
        for (&(t, _, _), &cv) in targets.iter().zip(&conj) {
            let p = params_from(k, t, 1)?;
            let class = res.class(k, t, 1);
            let found = class.map(|c| c.vol_found + u64::from(opts.plant_fault));
            let complete = class.is_some_and(|c| c.complete);
            let verdict = match found {
                Some(v) if v > cv => Verdict::Falsified,
                Some(v) if v == cv && complete => Verdict::Confirmed,
                Some(_) if complete => Verdict::Falsified,
                _ => Verdict::Inconclusive,
            };
            checks.push(ConjectureCheck {
                k,
                t,
                c: p.c,
                b: p.b,
                vol_conjectured: cv,
                vol_found: found,
                complete,
                verdict,
            });
        }
        searches.push(res);
    }
    let mut verdict = checks.iter().fold(Verdict::Confirmed, |v, c| v.combine(c.verdict));
    if searches.iter().any(|s| s.n_violations > 0) {
        verdict = Verdict::Falsified;
    }
    Ok(ConjectureReport {
        checks,
        searches,
        verdict,
    })
}

/// How far the segment-bound check scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum VolCap {
    /// Up to `2^{k−2} + 1`, beyond which no 1-dimensional set exists.
    OneDimBound,
    /// Up to the conjectured bound plus the given slack.
    Slack(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentBoundCase {
    pub k: u64,
    pub s: u64,
    pub bound: u64,
    pub cap: u64,
    pub n_configs: u64,
    pub n_one_dim: u64,
    pub max_vol_one_dim: Option<u64>,
    /// Canonical forms of the 1-dimensional sets attaining the bound.
    pub tight: Vec<IntSet>,
    /// Whether `A_s` is among them; `None` where `A_s` has fewer than `s` segments.
    pub a_s_tight: Option<bool>,
    pub n_exceeding: u64,
    pub exceeding: Vec<IntSet>,
    /// The cap covers every 1-dimensional set of cardinality `k`.
    pub conclusive: bool,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentBoundReport {
    pub cases: Vec<SegmentBoundCase>,
    pub n_violations: u64,
    pub violations: Vec<Violation>,
    pub verdict: Verdict,
    pub wall_time_ms: u64,
}

#[derive(Debug, Default)]
struct BoundAcc {
    n_configs: u64,
    n_one_dim: u64,
    max_vol: Option<u64>,
    tight: BTreeSet<IntSet>,
    n_exceeding: u64,
    exceeding: BTreeSet<IntSet>,
    n_violations: u64,
    violations: Vec<Violation>,
}

impl BoundAcc {
    fn merge(mut self, o: BoundAcc) -> BoundAcc {
        self.n_configs += o.n_configs;
        self.n_one_dim += o.n_one_dim;
        self.max_vol = self.max_vol.max(o.max_vol);
        self.tight.extend(o.tight);
        self.n_exceeding += o.n_exceeding;
        self.exceeding.extend(o.exceeding);
        while self.exceeding.len() > MAX_STORED_VIOLATIONS {
            self.exceeding.pop_last();
        }
        self.n_violations += o.n_violations;
        self.violations.extend(o.violations);
        self.violations.sort();
        self.violations.truncate(MAX_STORED_VIOLATIONS);
        self
    }
}

/// Checks `vol A ≤ 2^{s−1}(k − s) + 1` for every 1-dimensional `s`-segment
/// set of cardinality `k` up to the cap, with the chosen audits on the way.
pub fn verify_segment_volume_bound(
    k: Span,
    s_values: &[u64],
    cap: VolCap,
    audit: &AuditToggles,
    threads: Option<usize>,
) -> Result<SegmentBoundReport> {
    let start = Instant::now();
    let mut cases = Vec::new();
    let mut n_violations = 0;
    let mut violations = Vec::new();
    for kk in k.lo..=k.hi {
        for &s in s_values {
            if s < 2 || s + 1 > kk {
                continue;
            }
            let bound = segment_vol_bound(kk, s)?;
            let full = one_dim_vol_cap(kk)?;
            let cap_vol = match cap {
                VolCap::OneDimBound => full.max(bound),
                VolCap::Slack(x) => bound + x,
            };
            let caps = SegmentCaps {
                max_part: kk as u32,
                max_gap: u32::try_from(cap_vol).unwrap_or(u32::MAX),
                max_span: cap_vol,
            };
            let comps: Vec<Vec<u32>> = compositions(kk as u32, s as usize, kk as u32)
                .into_iter()
                .filter(|p| enumerate::admissible_parts(p))
                .collect();
            let acc = with_threads(threads, || {
                comps
                    .par_iter()
                    .map(|parts| bound_unit(parts, caps, bound, audit))
                    .try_reduce(BoundAcc::default, |a, b| Ok(a.merge(b)))
            })??;
            let a_s_tight = if kk >= s + 2 {
                let a_s = gen_as(kk as u32, s as u32)?.canonical_1d()?;
                Some(acc.tight.contains(&a_s))
            } else {
                None
            };
            let conclusive = cap_vol >= full;
            let verdict = if acc.n_exceeding > 0 || a_s_tight == Some(false) {
                Verdict::Falsified
            } else if !conclusive {
                Verdict::Inconclusive
            } else {
                Verdict::Confirmed
            };
            n_violations += acc.n_violations;
            violations.extend(acc.violations);
            cases.push(SegmentBoundCase {
                k: kk,
                s,
                bound,
                cap: cap_vol,
                n_configs: acc.n_configs,
                n_one_dim: acc.n_one_dim,
                max_vol_one_dim: acc.max_vol,
                tight: acc.tight.into_iter().collect(),
                a_s_tight,
                n_exceeding: acc.n_exceeding,
                exceeding: acc.exceeding.into_iter().collect(),
                conclusive,
                verdict,
            });
        }
    }
    violations.sort();
    violations.truncate(MAX_STORED_VIOLATIONS);
    let mut verdict = cases.iter().fold(Verdict::Confirmed, |v, c| v.combine(c.verdict));
    if n_violations > 0 {
        verdict = Verdict::Falsified;
    }
    Ok(SegmentBoundReport {
        cases,
        n_violations,
        violations,
        verdict,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

fn bound_unit(parts: &[u32], caps: SegmentCaps, bound: u64, audit: &AuditToggles) -> Result<BoundAcc> {
    let k: u64 = parts.iter().map(|&p| p as u64).sum();
    let mut acc = BoundAcc::default();
    let budget = caps.max_span - k;
    for gaps in enumerate::gap_vectors(parts.len(), caps.max_gap, budget) {
        let segs = SegmentDecomposition::from_shape(parts, &gaps)?;
        acc.n_configs += 1;
        let dim = dim_segments(&segs)?;
        if !audit.is_empty() {
            let v = audit_set(
                &SetFacts {
                    segments: &segs,
                    doubling: segs.doubling(),
                    dim,
                },
                audit,
            );
            acc.n_violations += v.len() as u64;
            if acc.violations.len() < MAX_STORED_VIOLATIONS {
                acc.violations.extend(v);
            }
        }
        if dim != 1 {
            continue;
        }
        acc.n_one_dim += 1;
        let vol = segs.span();
        acc.max_vol = acc.max_vol.max(Some(vol));
        if vol == bound {
            acc.tight.insert(segs.reconstruct().canonical_1d()?);
        } else if vol > bound {
            acc.n_exceeding += 1;
            if acc.exceeding.len() < MAX_STORED_VIOLATIONS {
                acc.exceeding.insert(segs.reconstruct());
            }
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimMismatch {
    pub set: IntSet,
    pub dim_relations: usize,
    pub dim_segments: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimCrossCheck {
    pub n_configs: u64,
    pub mismatches: Vec<DimMismatch>,
    pub n_violations: u64,
    pub violations: Vec<Violation>,
}

/// Compares the two dimension formulas on every shape with `s ≤ s_max`
/// segments (and `s ≤ k − 1`), `k ≤ k_max`, gaps at most `max_gap`.
pub fn cross_check_dimensions(
    k_max: u32,
    s_max: usize,
    max_gap: u32,
    audit: &AuditToggles,
    threads: Option<usize>,
) -> Result<DimCrossCheck> {
    let mut work = Vec::new();
    for k in 2..=k_max {
        for s in 1..=s_max.min(k as usize - 1) {
            for parts in compositions(k, s, k) {
                work.push(parts);
            }
        }
    }
    let parts_out = with_threads(threads, || {
        work.par_iter()
            .map(|parts| -> Result<DimCrossCheck> {
                let mut out = DimCrossCheck {
                    n_configs: 0,
                    mismatches: Vec::new(),
                    n_violations: 0,
                    violations: Vec::new(),
                };
                for gaps in enumerate::gap_vectors(parts.len(), max_gap, u64::MAX) {
                    let segs = SegmentDecomposition::from_shape(parts, &gaps)?;
                    let set = segs.reconstruct();
                    let a = dim_konyagin_lev(&set)?;
                    let b = dim_segments(&segs)?;
                    out.n_configs += 1;
                    if a != b {
                        out.mismatches.push(DimMismatch {
                            set: set.clone(),
                            dim_relations: a,
                            dim_segments: b,
                        });
                    }
                    if !audit.is_empty() {
                        let v = audit_set(
                            &SetFacts {
                                segments: &segs,
                                doubling: segs.doubling(),
                                dim: a,
                            },
                            audit,
                        );
                        out.n_violations += v.len() as u64;
                        out.violations.extend(v);
                        out.violations.truncate(MAX_STORED_VIOLATIONS);
                    }
                }
                Ok(out)
            })
            .try_reduce(
                || DimCrossCheck {
                    n_configs: 0,
                    mismatches: Vec::new(),
                    n_violations: 0,
                    violations: Vec::new(),
                },
                |mut a, b| {
                    a.n_configs += b.n_configs;
                    a.mismatches.extend(b.mismatches);
                    a.n_violations += b.n_violations;
                    a.violations.extend(b.violations);
                    Ok(a)
                },
            )
    })??;
    let mut r = parts_out;
    r.mismatches.sort_by(|x, y| x.set.cmp(&y.set));
    r.violations.sort();
    r.violations.truncate(MAX_STORED_VIOLATIONS);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_parsing() {
        assert_eq!("5..=8".parse::<Span>().unwrap(), Span { lo: 5, hi: 8 });
        assert_eq!("7".parse::<Span>().unwrap(), Span::single(7));
        assert!("8..=5".parse::<Span>().is_err());
        assert!("x".parse::<Span>().is_err());
        assert_eq!(Span { lo: 5, hi: 8 }.to_string(), "5..=8");
    }

    #[test]
    fn small_class_maximum() {
        // k=5, T=10, d=1 has c=1, b=1 and maximum volume 6.
        let mut spec = SearchSpec::normal_form(Span::single(5), 8);
        spec.t = Some(Span::single(10));
        spec.d = Some(1);
        let r = extremal_search(&spec).unwrap();
        let c = r.class(5, 10, 1).unwrap();
        assert_eq!((c.c, c.b), (Some(1), Some(1)));
        assert_eq!(c.vol_found, 6);
        assert_eq!(c.vol_conjectured, Some(6));
        assert!(c.complete);
        assert_eq!(c.status, ClassStatus::Attains);
        assert_eq!(r.n_violations, 0);
        // {0,2,3,4,5} and its reflection form the single maximizing class.
        assert_eq!(c.representatives, vec![IntSet::new(vec![0, 1, 2, 3, 5]).unwrap()]);
    }

    #[test]
    fn empty_class_beyond_bounds() {
        let mut spec = SearchSpec::normal_form(Span::single(5), 8);
        spec.t = Some(Span::single(13));
        spec.d = Some(1);
        let r = extremal_search(&spec).unwrap();
        assert!(r.classes.is_empty());
        assert!(crate::conjecture::t_bounds(5, 1).unwrap().1 < 13);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let mut spec = SearchSpec::segments(Span { lo: 6, hi: 7 }, 3, 6, 30);
        spec.t = None;
        let a = extremal_search_with(&spec, Some(1)).unwrap();
        let b = extremal_search_with(&spec, Some(3)).unwrap();
        assert!(a.same_outcome(&b));
        assert_eq!(a.spec_hash, b.spec_hash);
    }

    #[test]
    fn spec_hash_changes_with_spec() {
        let a = SearchSpec::normal_form(Span::single(5), 8);
        let mut b = a.clone();
        b.slack = 3;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }

    #[test]
    fn proven_target_list() {
        // c=1: b = 0..=k-3 gives T = 2k-1 .. 3k-4; c=2 adds T = 3k-3.
        let t: Vec<u64> = proven_targets(7).iter().map(|x| x.0).collect();
        assert_eq!(t, (13..=18).collect::<Vec<_>>());
    }

    #[test]
    fn conjecture_small_and_planted() {
        let opts = ConjectureOptions {
            k: Span { lo: 5, hi: 6 },
            ..ConjectureOptions::default()
        };
        let r = verify_conjecture(&opts).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed, "{:?}", r.checks);
        let planted = ConjectureOptions {
            plant_fault: true,
            ..opts
        };
        assert_eq!(verify_conjecture(&planted).unwrap().verdict, Verdict::Falsified);
    }

    #[test]
    fn segment_bound_small() {
        let r = verify_segment_volume_bound(
            Span { lo: 4, hi: 6 },
            &[2, 3],
            VolCap::OneDimBound,
            &AuditToggles::default(),
            None,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        let c = r.cases.iter().find(|c| (c.k, c.s) == (5, 2)).unwrap();
        assert_eq!(c.bound, 7);
        assert_eq!(c.a_s_tight, Some(true));
        let slack = verify_segment_volume_bound(
            Span::single(6),
            &[2],
            VolCap::Slack(1),
            &AuditToggles::none(),
            None,
        )
        .unwrap();
        assert_eq!(slack.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn dimension_formulas_agree_small() {
        let r = cross_check_dimensions(6, 3, 5, &AuditToggles::default(), None).unwrap();
        assert!(r.n_configs > 0);
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches.first());
        assert_eq!(r.n_violations, 0, "{:?}", r.violations.first());
    }
}
