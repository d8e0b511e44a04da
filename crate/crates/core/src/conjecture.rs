//! The `(c, b)` parametrization of doubling, the conjectured volume formula,
//! classical bounds, and generators for the named extremal families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dimension::dim_konyagin_lev;
use crate::error::{Error, Result};
use crate::grid::{doubling_of, AnySet, GridSet};
use crate::intset::IntSet;
use crate::model::{volume_with, VolumeConfig, VolumeResult};

fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// A `(k, T, d)` class together with its doubling constant `c` and residual `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DoublingParams {
    pub k: u64,
    pub t: u64,
    pub d: u64,
    pub c: u64,
    pub b: u64,
}

fn check_kd(k: u64, d: u64) -> Result<()> {
    if k < 2 || d < 1 || d > k - 1 {
        return Err(Error::InvalidParams(format!(
            "need k ≥ 2 and 1 ≤ d ≤ k-1, got k={k}, d={d}"
        )));
    }
    Ok(())
}

/// `T = (d+c)k − C(d+c+1, 2) + d + b + 1` under `1 ≤ c ≤ k−d−1`, `0 ≤ b ≤ k−d−c−1`.
pub fn t_from_params(k: u64, d: u64, c: u64, b: u64) -> Result<u64> {
    check_kd(k, d)?;
    if c < 1 || c + d + 1 > k {
        return Err(Error::InvalidParams(format!(
            "c={c} outside [1, {}]",
            k as i64 - d as i64 - 1
        )));
    }
    if b + d + c + 1 > k {
        return Err(Error::InvalidParams(format!(
            "b={b} outside [0, {}]",
            k - d - c - 1
        )));
    }
    (d + c)
        .checked_mul(k)
        .and_then(|x| x.checked_sub(binom2(d + c + 1)))
        .and_then(|x| x.checked_add(d + b + 1))
        .ok_or_else(|| Error::Overflow("doubling from parameters".into()))
}

/// Every `(c, b)` in range with the given doubling, by increasing `c`.
///
/// The ranges of consecutive `c` share an endpoint: `(c, k−d−c−1)` and
/// `(c+1, 0)` give the same `T`, so boundary values have two solutions.
pub fn params_all(k: u64, t: u64, d: u64) -> Result<Vec<DoublingParams>> {
    check_kd(k, d)?;
    let mut out = Vec::new();
    for c in 1..k - d {
        let base = t_from_params(k, d, c, 0)?;
        if t >= base && t - base <= k - d - c - 1 {
            out.push(DoublingParams {
                k,
                t,
                d,
                c,
                b: t - base,
            });
        }
    }
    Ok(out)
}

/// The parametrization of `(k, T, d)`, with the smaller `c` at shared endpoints.
pub fn params_from(k: u64, t: u64, d: u64) -> Result<DoublingParams> {
    let all = params_all(k, t, d)?;
    let Some(first) = all.first().copied() else {
        return Err(Error::NoParametrization { k, t, d });
    };
    for w in all.windows(2) {
        let shared = w[1].c == w[0].c + 1 && w[1].b == 0 && w[0].b == k - d - w[0].c - 1;
        if !shared {
            return Err(Error::InvalidParams(format!(
                "ambiguous parametrization for k={k}, T={t}, d={d}: c={} and c={}",
                w[0].c, w[1].c
            )));
        }
    }
    Ok(first)
}

/// `2^{c−1}(k − c + b) + 1`.
pub fn conjectured_vol(p: &DoublingParams) -> Result<u64> {
    let t = t_from_params(p.k, p.d, p.c, p.b)?;
    if t != p.t {
        return Err(Error::InvalidParams(format!(
            "T={} does not match (c, b)=({}, {}), which gives {t}",
            p.t, p.c, p.b
        )));
    }
    let ovf = || Error::Overflow("conjectured volume".into());
    let pow = 1u64.checked_shl((p.c - 1) as u32).filter(|_| p.c <= 64).ok_or_else(ovf)?;
    pow.checked_mul(p.k - p.c + p.b)
        .and_then(|x| x.checked_add(1))
        .ok_or_else(ovf)
}

/// Doubling range of a `d`-dimensional `k`-set: `(d+1)k − C(d+1,2) ≤ T ≤ C(k,2) + d + 1`.
pub fn t_bounds(k: u64, d: u64) -> Result<(u64, u64)> {
    check_kd(k, d)?;
    Ok(((d + 1) * k - binom2(d + 1), binom2(k) + d + 1))
}

/// `2^{s−1}(k − s) + 1`, the conjectured volume cap of 1-dimensional `s`-segment sets.
pub fn segment_vol_bound(k: u64, s: u64) -> Result<u64> {
    if s < 1 || s >= k {
        return Err(Error::HypothesisViolation(format!(
            "segment volume bound needs 1 ≤ s ≤ k-1, got k={k}, s={s}"
        )));
    }
    1u64.checked_shl((s - 1) as u32)
        .filter(|_| s <= 64)
        .and_then(|x| x.checked_mul(k - s))
        .and_then(|x| x.checked_add(1))
        .ok_or_else(|| Error::Overflow("segment volume bound".into()))
}

/// `(s+1)k − C(s+1, 2)`, attained iff all segment sums are pairwise disjoint.
pub fn segment_doubling_bound(k: u64, s: u64) -> u64 {
    (s + 1) * k - binom2(s + 1)
}

/// `2^{k−2} + 1`, an unconditional volume cap for 1-dimensional `k`-sets.
pub fn one_dim_vol_cap(k: u64) -> Result<u64> {
    if k < 2 {
        return Err(Error::InvalidParams("k must be at least 2".into()));
    }
    1u64.checked_shl((k - 2) as u32)
        .filter(|_| k - 2 < 64)
        .map(|x| x + 1)
        .ok_or_else(|| Error::Overflow("one-dimensional volume cap".into()))
}

/// `{0, 1, …, k−s} ∪ {2^i (k−s) : 1 ≤ i < s}`.
pub fn gen_as(k: u32, s: u32) -> Result<IntSet> {
    if s < 1 || s >= k {
        return Err(Error::InvalidParams(format!(
            "A_s needs 1 ≤ s ≤ k-1, got k={k}, s={s}"
        )));
    }
    let base = (k - s) as u64;
    let mut elems: Vec<u64> = (0..=base).collect();
    for i in 1..s {
        let v = 1u64
            .checked_shl(i)
            .and_then(|p| p.checked_mul(base))
            .filter(|_| i < 64)
            .ok_or_else(|| Error::Overflow("A_s element".into()))?;
        elems.push(v);
    }
    let elems = elems
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| Error::ElementTooLarge { value: v, cap: u32::MAX }))
        .collect::<Result<Vec<u32>>>()?;
    IntSet::new(elems)
}

/// The extremal families of three-segment sets and of two-segment sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// `([0, k+b−2] \ [1, b]) ∪ {2(k+b−2)}`.
    I { k: u32, b: u32 },
    /// `([0, k+b+i−3] \ [k−i−1, k+b−3]) ∪ {2(k+b−2)}`.
    II { k: u32, b: u32, i: u32 },
    /// `([0, k+b−2] \ [1, b]) × {0} ∪ {(0, 1)}`.
    III { k: u32, b: u32 },
    /// Three parallel unit-spaced segments of lengths `k1, k2, k3` in `Z^3`.
    IV { k1: u32, k2: u32, k3: u32 },
    /// `[0, k+b−1] \ [1, b]`.
    TwoSegI { k: u32, b: u32 },
    /// `([0, k1−1] × {0}) ∪ ([0, k2−1] × {1})`.
    TwoSegII { k1: u32, k2: u32 },
}

/// The `(dim, |2A|, vol)` triple stated for a family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub dim: u64,
    pub doubling: u64,
    pub vol: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfCheck {
    pub family: Family,
    pub set: AnySet,
    pub expected: Triple,
    pub observed: Triple,
    pub volume: VolumeResult,
}

impl SelfCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.observed && self.volume.certificate.is_exact()
    }
}

fn bad(msg: String) -> Error {
    Error::InvalidParams(msg)
}

impl Family {
    pub fn k(&self) -> u32 {
        match *self {
            Family::I { k, .. }
            | Family::II { k, .. }
            | Family::III { k, .. }
            | Family::TwoSegI { k, .. } => k,
            Family::IV { k1, k2, k3 } => k1 + k2 + k3,
            Family::TwoSegII { k1, k2 } => k1 + k2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::I { .. } => "i",
            Family::II { .. } => "ii",
            Family::III { .. } => "iii",
            Family::IV { .. } => "iv",
            Family::TwoSegI { .. } => "2seg-i",
            Family::TwoSegII { .. } => "2seg-ii",
        }
    }

    pub fn is_three_segment(&self) -> bool {
        matches!(
            self,
            Family::I { .. } | Family::II { .. } | Family::III { .. } | Family::IV { .. }
        )
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::I { k, b } | Family::III { k, b } => {
                if k < 5 || b < 1 || b > k - 4 {
                    return Err(bad(format!("family {} needs 1 ≤ b ≤ k-4, got k={k}, b={b}", self.name())));
                }
            }
            Family::II { k, b, i } => {
                if i < 1 || i > k / 3 {
                    return Err(bad(format!("family ii needs 1 ≤ i ≤ k/3, got k={k}, i={i}")));
                }
                // At b = k-2i-1 the first two segments share no sums and the set is
                // 2-dimensional; b = 1 is extremal and not isomorphic to family i.
                if b < 1 || b + 2 * i + 2 > k {
                    return Err(bad(format!("family ii needs 1 ≤ b ≤ k-2i-2, got k={k}, b={b}, i={i}")));
                }
            }
            Family::IV { k1, k2, k3 } => {
                if k1 == 0 || k2 == 0 || k3 == 0 || k1 + k2 + k3 < 4 {
                    return Err(bad(format!(
                        "family iv needs k1, k2, k3 ≥ 1 and k ≥ 4, got ({k1}, {k2}, {k3})"
                    )));
                }
            }
            Family::TwoSegI { k, b } => {
                if k < 4 || b < 1 || b > k - 3 {
                    return Err(bad(format!("family 2seg-i needs 1 ≤ b ≤ k-3, got k={k}, b={b}")));
                }
            }
            Family::TwoSegII { k1, k2 } => {
                if k1 == 0 || k2 == 0 || k1 + k2 < 3 {
                    return Err(bad(format!(
                        "family 2seg-ii needs k1, k2 ≥ 1 and k ≥ 3, got ({k1}, {k2})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The representative exactly as stated, without renormalization.
    pub fn generate(&self) -> Result<AnySet> {
        self.validate()?;
        Ok(match *self {
            Family::I { k, b } => {
                let mut v = vec![0];
                v.extend(b + 1..=k + b - 2);
                v.push(2 * (k + b - 2));
                IntSet::new(v)?.into()
            }
            Family::II { k, b, i } => {
                let mut v: Vec<u32> = (0..=k - i - 2).collect();
                v.extend(k + b - 2..=k + b + i - 3);
                v.push(2 * (k + b - 2));
                IntSet::new(v)?.into()
            }
            Family::III { k, b } => {
                let mut rows = vec![vec![0, 0]];
                rows.extend((b + 1..=k + b - 2).map(|x| vec![x as i64, 0]));
                rows.push(vec![0, 1]);
                GridSet::from_rows(&rows)?.into()
            }
            Family::IV { k1, k2, k3 } => {
                let mut rows = Vec::new();
                rows.extend((0..k1).map(|x| vec![x as i64, 0, 0]));
                rows.extend((0..k2).map(|x| vec![x as i64, 0, 1]));
                rows.extend((0..k3).map(|x| vec![x as i64, 1, 0]));
                GridSet::from_rows(&rows)?.into()
            }
            Family::TwoSegI { k, b } => {
                let mut v = vec![0];
                v.extend(b + 1..=k + b - 1);
                IntSet::new(v)?.into()
            }
            Family::TwoSegII { k1, k2 } => {
                let mut rows = Vec::new();
                rows.extend((0..k1).map(|x| vec![x as i64, 0]));
                rows.extend((0..k2).map(|x| vec![x as i64, 1]));
                GridSet::from_rows(&rows)?.into()
            }
        })
    }

    pub fn expected(&self) -> Triple {
        let k = self.k() as u64;
        let (dim, doubling, vol) = match *self {
            Family::I { b, .. } | Family::II { b, .. } => {
                let b = b as u64;
                (1, 3 * k - 4 + b, 2 * k + 2 * b - 3)
            }
            Family::III { b, .. } => (2, 3 * k - 3 + b as u64, k + b as u64),
            Family::IV { .. } => (3, 4 * k - 6, k),
            Family::TwoSegI { b, .. } => (1, 2 * k - 1 + b as u64, k + b as u64),
            Family::TwoSegII { .. } => (2, 3 * k - 3, k),
        };
        Triple { dim, doubling, vol }
    }

    /// Recomputes the triple from the generated set.
    pub fn self_check(&self) -> Result<SelfCheck> {
        let set = self.generate()?;
        let expected = self.expected();
        let cfg = VolumeConfig {
            stated_lower_bound: Some(expected.vol),
            ..VolumeConfig::default()
        };
        let volume = volume_with(&set, &cfg)?;
        let observed = Triple {
            dim: dim_konyagin_lev(&set)? as u64,
            doubling: doubling_of(&set) as u64,
            vol: volume.value,
        };
        Ok(SelfCheck {
            family: *self,
            set,
            expected,
            observed,
            volume,
        })
    }

    /// Every admissible member of the three-segment families at cardinality `k`.
    /// Family iv is listed once per multiset `{k1, k2, k3}`, with `k1 ≥ k2 ≥ k3`.
    pub fn three_segment_members(k: u32) -> Vec<Family> {
        let mut out = Vec::new();
        for b in 1..=k.saturating_sub(4) {
            out.push(Family::I { k, b });
        }
        for i in 1..=k / 3 {
            for b in 1..=(k as i64 - 2 * i as i64 - 2).max(0) as u32 {
                out.push(Family::II { k, b, i });
            }
        }
        for b in 1..=k.saturating_sub(4) {
            out.push(Family::III { k, b });
        }
        if k >= 4 {
            for k1 in 1..=k {
                for k2 in 1..=k1 {
                    let Some(k3) = (k - k1).checked_sub(k2) else { continue };
                    if k3 >= 1 && k3 <= k2 {
                        out.push(Family::IV { k1, k2, k3 });
                    }
                }
            }
        }
        out.retain(|f| f.validate().is_ok());
        out
    }

    /// Every admissible member of the two-segment families at cardinality `k`,
    /// family 2seg-ii once per pair with `k1 ≥ k2`.
    pub fn two_segment_members(k: u32) -> Vec<Family> {
        let mut out: Vec<Family> = (1..=k.saturating_sub(3)).map(|b| Family::TwoSegI { k, b }).collect();
        out.extend((1..=k / 2).map(|k2| Family::TwoSegII { k1: k - k2, k2 }));
        out.retain(|f| f.validate().is_ok());
        out
    }

    /// Family iv with its lengths in non-increasing order; other families unchanged.
    pub fn sorted(self) -> Family {
        match self {
            Family::IV { k1, k2, k3 } => {
                let mut v = [k1, k2, k3];
                v.sort_unstable_by(|a, b| b.cmp(a));
                Family::IV { k1: v[0], k2: v[1], k3: v[2] }
            }
            Family::TwoSegII { k1, k2 } => Family::TwoSegII { k1: k1.max(k2), k2: k1.min(k2) },
            f => f,
        }
    }
}

/// `family=ii i=1 b=3`, `family=iv k1=3 k2=3 k3=2`, …
impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family={}", self.name())?;
        match *self {
            Family::I { b, .. } | Family::III { b, .. } | Family::TwoSegI { b, .. } => write!(f, " b={b}"),
            Family::II { b, i, .. } => write!(f, " i={i} b={b}"),
            Family::IV { k1, k2, k3 } => write!(f, " k1={k1} k2={k2} k3={k3}"),
            Family::TwoSegII { k1, k2 } => write!(f, " k1={k1} k2={k2}"),
        }
    }
}

/// Parses `<name> key=value …`, e.g. `ii k=11 b=3 i=2` or `iv k1=2 k2=2 k3=2`.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut toks = s.split_whitespace();
        let name = toks.next().ok_or_else(|| Error::parse(s, "missing family name"))?;
        let name = name.strip_prefix("family=").unwrap_or(name);
        let mut kv = std::collections::BTreeMap::new();
        for t in toks {
            let (key, val) = t
                .split_once('=')
                .ok_or_else(|| Error::parse(t, "expected key=value"))?;
            let v: u32 = val.parse().map_err(|_| Error::parse(t, "expected a non-negative integer"))?;
            if kv.insert(key.to_string(), v).is_some() {
                return Err(Error::parse(t, "duplicate key"));
            }
        }
        let allowed: &[&str] = match name {
            "i" | "iii" | "2seg-i" => &["k", "b"],
            "ii" => &["k", "b", "i"],
            "iv" => &["k1", "k2", "k3"],
            "2seg-ii" => &["k1", "k2"],
            _ => return Err(Error::parse(name, "unknown family (i, ii, iii, iv, 2seg-i, 2seg-ii)")),
        };
        if let Some(extra) = kv.keys().find(|key| !allowed.contains(&key.as_str())) {
            return Err(Error::parse(extra.clone(), format!("not a parameter of family {name}")));
        }
        let get = |key: &str| kv.get(key).copied().ok_or_else(|| Error::parse(s, format!("missing {key}=")));
        let fam = match name {
            "i" => Family::I { k: get("k")?, b: get("b")? },
            "ii" => Family::II { k: get("k")?, b: get("b")?, i: get("i")? },
            "iii" => Family::III { k: get("k")?, b: get("b")? },
            "iv" => Family::IV { k1: get("k1")?, k2: get("k2")?, k3: get("k3")? },
            "2seg-i" => Family::TwoSegI { k: get("k")?, b: get("b")? },
            _ => Family::TwoSegII { k1: get("k1")?, k2: get("k2")? },
        };
        fam.validate()?;
        Ok(fam)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: u64, t: u64, d: u64) -> (u64, u64) {
        let r = params_from(k, t, d).unwrap();
        (r.c, r.b)
    }

    #[test]
    fn params_examples() {
        assert_eq!(p(9, 17, 1), (1, 0));
        assert_eq!(p(11, 32, 1), (2, 3));
        assert_eq!(p(11, 32, 2), (1, 2));
        for (k, t, d) in [(9, 17, 1), (11, 32, 1), (11, 32, 2)] {
            let r = params_from(k, t, d).unwrap();
            assert_eq!(t_from_params(k, d, r.c, r.b).unwrap(), t);
        }
    }

    #[test]
    fn params_out_of_range() {
        assert!(matches!(params_from(5, 8, 1), Err(Error::NoParametrization { .. })));
        assert!(matches!(params_from(5, 13, 1), Err(Error::NoParametrization { .. })));
        assert!(params_from(5, 9, 5).is_err());
        // d = k-1 leaves no room for c ≥ 1.
        assert!(matches!(params_from(4, 10, 3), Err(Error::NoParametrization { .. })));
        assert!(t_from_params(11, 1, 0, 0).is_err());
        assert!(t_from_params(11, 1, 2, 8).is_err());
    }

    #[test]
    fn shared_endpoint_prefers_smaller_c() {
        // T(1, k-d-2) = T(2, 0)
        let k = 10;
        let t = t_from_params(k, 1, 1, k - 3).unwrap();
        assert_eq!(t, t_from_params(k, 1, 2, 0).unwrap());
        assert_eq!(params_all(k, t, 1).unwrap().len(), 2);
        assert_eq!(p(k, t, 1), (1, k - 3));
    }

    #[test]
    fn conjectured_vol_examples() {
        let v = |k, t, d| conjectured_vol(&params_from(k, t, d).unwrap()).unwrap();
        assert_eq!(v(9, 17, 1), 9);
        assert_eq!(v(11, 32, 1), 25);
        assert_eq!(v(11, 32, 2), 13);
        let bogus = DoublingParams { k: 11, t: 30, d: 1, c: 2, b: 3 };
        assert!(conjectured_vol(&bogus).is_err());
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(t_bounds(5, 1).unwrap(), (9, 12));
        assert_eq!(t_bounds(11, 1).unwrap(), (21, 57));
        let (lo, hi) = t_bounds(7, 6).unwrap();
        assert_eq!((lo, hi), (28, 28));
        assert!(t_bounds(5, 0).is_err());

        assert_eq!(segment_vol_bound(8, 1).unwrap(), 8);
        assert_eq!(segment_vol_bound(5, 2).unwrap(), 7);
        assert_eq!(segment_vol_bound(10, 4).unwrap(), 49);
        assert!(matches!(segment_vol_bound(4, 4), Err(Error::HypothesisViolation(_))));

        assert_eq!(segment_doubling_bound(6, 3), 18);
        assert_eq!(segment_doubling_bound(9, 1), 17);
        assert_eq!(segment_doubling_bound(5, 2), 12);

        assert_eq!(one_dim_vol_cap(9).unwrap(), 129);
    }

    #[test]
    fn as_sets() {
        assert_eq!(gen_as(5, 2).unwrap().to_string(), "0,1,2,3,6");
        assert_eq!(gen_as(6, 3).unwrap().to_string(), "0,1,2,3,6,12");
        assert_eq!(gen_as(6, 1).unwrap(), IntSet::interval(0, 5).unwrap());
        assert!(gen_as(5, 5).is_err());
    }

    #[test]
    fn generator_examples() {
        let s = |f: Family| f.generate().unwrap().to_string();
        assert_eq!(s(Family::I { k: 11, b: 3 }), "0,4,5,6,7,8,9,10,11,12,24");
        assert_eq!(s(Family::II { k: 11, b: 3, i: 1 }), "0,1,2,3,4,5,6,7,8,12,24");
        assert_eq!(s(Family::II { k: 11, b: 3, i: 2 }), "0,1,2,3,4,5,6,7,12,13,24");
        assert_eq!(s(Family::II { k: 11, b: 3, i: 3 }), "0,1,2,3,4,5,6,12,13,14,24");
        assert_eq!(s(Family::TwoSegI { k: 5, b: 2 }), "0,3,4,5,6");
        assert_eq!(s(Family::TwoSegI { k: 4, b: 1 }), "0,2,3,4");
        assert_eq!(Family::TwoSegII { k1: 2, k2: 3 }.generate().unwrap().as_grid().unwrap().len(), 5);
    }

    #[test]
    fn generators_reject_out_of_range() {
        assert!(Family::I { k: 11, b: 0 }.generate().is_err());
        assert!(Family::I { k: 11, b: 8 }.generate().is_err());
        assert!(Family::II { k: 11, b: 0, i: 1 }.generate().is_err());
        assert!(Family::II { k: 11, b: 5, i: 3 }.generate().is_err());
        assert!(Family::II { k: 11, b: 2, i: 4 }.generate().is_err());
        assert!(Family::II { k: 8, b: 5, i: 1 }.generate().is_err());
        assert!(Family::IV { k1: 0, k2: 5, k3: 5 }.generate().is_err());
        assert!(Family::TwoSegI { k: 5, b: 3 }.generate().is_err());
    }

    #[test]
    fn self_checks_small() {
        for f in [
            Family::I { k: 11, b: 3 },
            Family::II { k: 11, b: 3, i: 2 },
            Family::III { k: 11, b: 2 },
            Family::IV { k1: 2, k2: 2, k3: 2 },
            Family::TwoSegI { k: 5, b: 2 },
            Family::TwoSegII { k1: 2, k2: 3 },
        ] {
            let c = f.self_check().unwrap();
            assert!(c.passed(), "{f}: {:?} vs {:?}", c.expected, c.observed);
        }
    }

    #[test]
    fn family_ii_upper_endpoint_is_two_dimensional() {
        // b = k-2i-1 written out by hand; the only cross-segment relation is 2·11 = 0+22.
        let a = IntSet::new(vec![0, 1, 2, 3, 4, 5, 11, 22]).unwrap();
        assert_eq!(crate::dimension::dim_konyagin_lev(&a).unwrap(), 2);
        assert!(Family::II { k: 8, b: 4, i: 1 }.self_check().unwrap().passed());
    }

    #[test]
    fn family_text_round_trip() {
        let f: Family = "ii k=11 b=3 i=2".parse().unwrap();
        assert_eq!(f, Family::II { k: 11, b: 3, i: 2 });
        assert_eq!(f.to_string(), "family=ii i=2 b=3");
        assert!("iv k1=2 k2=2".parse::<Family>().is_err());
        assert!("v k=3".parse::<Family>().is_err());
        assert!("i k=11 b=x".parse::<Family>().is_err());
    }

    #[test]
    fn member_lists() {
        let m = Family::three_segment_members(11);
        assert!(m.contains(&Family::II { k: 11, b: 3, i: 3 }));
        assert!(m.contains(&Family::IV { k1: 3, k2: 3, k3: 5 }.sorted()));
        assert_eq!(Family::two_segment_members(6).len(), 3 + 3);
    }
}
