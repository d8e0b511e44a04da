//! Inequalities every enumerated set must satisfy, checked one set at a time.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::conjecture::{segment_doubling_bound, segment_vol_bound, t_bounds};
use crate::error::{Error, Result};
use crate::intset::IntSet;
use crate::segments::{union_len, Interval, Segment, SegmentDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// `|2A| ≥ min(k + max A, 3k − 3)` for normal-form `A`.
    DiameterDoubling,
    /// `|A + B| ≥ min(|A| + 2|B| − 2, max A + |B|)` for normal-form `A, B`, `max A > max B`.
    LevSmeliansky,
    /// `(d+1)k − C(d+1, 2) ≤ |2A| ≤ C(k, 2) + d + 1`.
    DimensionBounds,
    /// `|2A| ≤ (s+1)k − C(s+1, 2)`, equality iff the segment sums are disjoint,
    /// and then `dim A = s`.
    SegmentDoubling,
    /// 1-dimensional `s`-segment sets above `2^{s−1}(k − s) + 1`: none for
    /// `s ≤ 4`, ordered sums and long gaps for `s = 5`.
    SegmentVolume,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::DiameterDoubling,
        Check::LevSmeliansky,
        Check::DimensionBounds,
        Check::SegmentDoubling,
        Check::SegmentVolume,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::DiameterDoubling => "diameter-doubling",
            Check::LevSmeliansky => "lev-smeliansky",
            Check::DimensionBounds => "dimension-bounds",
            Check::SegmentDoubling => "segment-doubling",
            Check::SegmentVolume => "segment-volume",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::parse(s, "unknown audit check"))
    }
}

/// Which checks run, and whether to corrupt the inputs on purpose.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AuditToggles {
    pub checks: Vec<Check>,
    /// Replace every doubling by `2k − 2` before checking; the auditor
    /// must then report violations.
    #[serde(default)]
    pub plant_fault: bool,
}

impl Default for AuditToggles {
    fn default() -> Self {
        AuditToggles {
            checks: Check::ALL.to_vec(),
            plant_fault: false,
        }
    }
}

impl AuditToggles {
    pub fn none() -> Self {
        AuditToggles {
            checks: Vec::new(),
            plant_fault: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    fn on(&self, c: Check) -> bool {
        self.checks.contains(&c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub check: Check,
    pub set: IntSet,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.check, self.set, self.detail)
    }
}

/// Precomputed data of one normal-form set.
#[derive(Debug, Clone, Copy)]
pub struct SetFacts<'a> {
    pub segments: &'a SegmentDecomposition,
    pub doubling: u64,
    pub dim: usize,
}

fn sum_len(a: &[Segment], b: &[Segment]) -> u64 {
    let mut ivs = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            ivs.push(Interval {
                lo: p.start as u64 + q.start as u64,
                hi: p.end() as u64 + q.end() as u64,
            });
        }
    }
    union_len(&ivs)
}

fn to_set(segs: &[Segment]) -> IntSet {
    IntSet::from_sorted_unchecked(segs.iter().flat_map(|p| p.start..=p.end()).collect())
}

/// `B` candidates paired with `A` in the asymmetric sumset check: the unions of
/// the first `j < s` segments and `A` minus its maximum, each with ≥ 2 elements.
fn lev_smeliansky_partners(segs: &[Segment]) -> Vec<Vec<Segment>> {
    let mut out: Vec<Vec<Segment>> = (1..segs.len()).map(|j| segs[..j].to_vec()).collect();
    let mut drop_max = segs.to_vec();
    let last = drop_max.last_mut().unwrap();
    if last.len > 1 {
        last.len -= 1;
    } else {
        drop_max.pop();
    }
    out.push(drop_max);
    out.retain(|b| b.iter().map(|p| p.len as u64).sum::<u64>() >= 2);
    out
}

fn check_lev_smeliansky(a: &[Segment], set: &dyn Fn() -> IntSet, out: &mut Vec<Violation>) {
    let ka = a.iter().map(|p| p.len as u64).sum::<u64>();
    let max_a = a.last().unwrap().end() as u64;
    for b in lev_smeliansky_partners(a) {
        let kb = b.iter().map(|p| p.len as u64).sum::<u64>();
        let (size, max_b) = if b.iter().any(|p| p.len > 1) {
            (sum_len(a, &b), b.last().unwrap().end() as u64)
        } else {
            // All singletons: normalize so that B has gcd 1.
            let nb = to_set(&b).normalize().expect("|B| ≥ 2");
            (set().sumset(&nb).len() as u64, IntSet::max(&nb) as u64)
        };
        if max_a <= max_b {
            continue;
        }
        let bound = (ka + 2 * kb - 2).min(max_a + kb);
        if size < bound {
            out.push(Violation {
                check: Check::LevSmeliansky,
                set: set(),
                detail: format!("B={} |A+B|={size} < {bound}", to_set(&b)),
            });
        }
    }
}

/// Runs the enabled checks on one normal-form set.
pub fn audit_set(facts: &SetFacts<'_>, toggles: &AuditToggles) -> Vec<Violation> {
    let mut out = Vec::new();
    if toggles.is_empty() {
        return out;
    }
    let d = facts.segments;
    let segs = d.segments();
    let k = d.k() as u64;
    let s = d.s() as u64;
    let dim = facts.dim as u64;
    let doubling = if toggles.plant_fault {
        2 * k - 2
    } else {
        facts.doubling
    };
    let max_a = d.span() - 1;
    let set = || d.reconstruct();
    let mut fail = |check: Check, detail: String| {
        out.push(Violation {
            check,
            set: set(),
            detail,
        })
    };

    if toggles.on(Check::DiameterDoubling) {
        let bound = (k + max_a).min(3 * k - 3);
        if doubling < bound {
            fail(Check::DiameterDoubling, format!("|2A|={doubling} < {bound}"));
        }
    }
    if toggles.on(Check::DimensionBounds) {
        if doubling < 2 * k - 1 || doubling > k * (k + 1) / 2 {
            fail(Check::DimensionBounds, format!("|2A|={doubling} outside [2k-1, k(k+1)/2]"));
        }
        match t_bounds(k, dim) {
            Ok((lo, hi)) if doubling < lo || doubling > hi => fail(
                Check::DimensionBounds,
                format!("|2A|={doubling} outside [{lo}, {hi}] for d={dim}"),
            ),
            Ok(_) => {}
            Err(e) => fail(Check::DimensionBounds, e.to_string()),
        }
    }
    if toggles.on(Check::SegmentDoubling) {
        let bound = segment_doubling_bound(k, s);
        let disjoint = d.sums_pairwise_disjoint();
        if doubling > bound {
            fail(Check::SegmentDoubling, format!("|2A|={doubling} > {bound}"));
        } else if (doubling == bound) != disjoint {
            fail(
                Check::SegmentDoubling,
                format!("|2A|={doubling}, bound {bound}, disjoint sums: {disjoint}"),
            );
        } else if disjoint && s < k && dim != s {
            fail(Check::SegmentDoubling, format!("disjoint sums but dim={dim} ≠ s={s}"));
        }
    }
    if toggles.on(Check::SegmentVolume) && dim == 1 && s < k {
        let bound = segment_vol_bound(k, s).expect("s < k");
        let vol = d.span();
        if vol > bound {
            if s <= 4 {
                fail(Check::SegmentVolume, format!("vol={vol} > {bound} with s={s}"));
            } else if s == 5 {
                let gaps_ok = d.gaps().iter().all(|&l| l as u64 >= k - s);
                let ordered = (0..segs.len()).all(|i| {
                    (0..segs.len() - 1).all(|j| {
                        segs[i].start as u64 + segs[j + 1].start as u64
                            > segs[i].end() as u64 + segs[j].end() as u64
                    })
                });
                if !gaps_ok || !ordered {
                    fail(
                        Check::SegmentVolume,
                        format!("vol={vol} > {bound} but gaps long: {gaps_ok}, sums ordered: {ordered}"),
                    );
                }
            }
        }
    }
    if toggles.on(Check::LevSmeliansky) {
        check_lev_smeliansky(segs, &set, &mut out);
    }
    out
}
