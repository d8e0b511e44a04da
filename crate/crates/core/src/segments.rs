//! Decomposition of an integer set into maximal runs of consecutive integers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intset::IntSet;

/// A run `[start, start + len - 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub start: u32,
    pub len: u32,
}

impl Segment {
    pub fn end(&self) -> u32 {
        self.start + self.len - 1
    }
}

/// Closed integer interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub lo: u64,
    pub hi: u64,
}

impl Interval {
    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn contains(&self, x: u64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Number of integers covered by a union of intervals.
pub fn union_len(intervals: &[Interval]) -> u64 {
    let mut v = intervals.to_vec();
    v.sort_unstable();
    let mut total = 0;
    let mut cur: Option<Interval> = None;
    for iv in v {
        match cur {
            Some(ref mut c) if iv.lo <= c.hi + 1 => c.hi = c.hi.max(iv.hi),
            Some(c) => {
                total += c.len();
                cur = Some(iv);
            }
            None => cur = Some(iv),
        }
    }
    total + cur.map_or(0, |c| c.len())
}

/// The `P_1 ∪ ⋯ ∪ P_s` view of a set: maximal segments separated by gaps of length ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SegmentDecomposition {
    segments: Vec<Segment>,
}

impl SegmentDecomposition {
    /// Builds the decomposition starting at 0 from segment lengths `k_i` and gap lengths `ℓ_i`.
    pub fn from_shape(lengths: &[u32], gaps: &[u32]) -> Result<Self> {
        if lengths.is_empty() || gaps.len() + 1 != lengths.len() {
            return Err(Error::InvalidInput(format!(
                "{} segment lengths need {} gaps, got {}",
                lengths.len(),
                lengths.len().saturating_sub(1),
                gaps.len()
            )));
        }
        if lengths.iter().any(|&k| k == 0) || gaps.iter().any(|&l| l == 0) {
            return Err(Error::InvalidInput(
                "segment lengths and gaps must be at least 1".into(),
            ));
        }
        let mut segments = Vec::with_capacity(lengths.len());
        let mut start: u64 = 0;
        for (i, &k) in lengths.iter().enumerate() {
            segments.push(Segment {
                start: start as u32,
                len: k,
            });
            start += k as u64 + gaps.get(i).copied().unwrap_or(0) as u64;
        }
        let end = segments.last().unwrap().end() as u64;
        if end > crate::intset::DEFAULT_ELEMENT_CAP as u64 {
            return Err(Error::ElementTooLarge {
                value: end,
                cap: crate::intset::DEFAULT_ELEMENT_CAP,
            });
        }
        Ok(SegmentDecomposition { segments })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Number of segments `s`.
    pub fn s(&self) -> usize {
        self.segments.len()
    }

    /// Cardinality `k = Σ k_i`.
    pub fn k(&self) -> usize {
        self.segments.iter().map(|p| p.len as usize).sum()
    }

    pub fn lengths(&self) -> Vec<u32> {
        self.segments.iter().map(|p| p.len).collect()
    }

    /// Gap lengths `ℓ_i = min P_{i+1} - max P_i - 1`.
    pub fn gaps(&self) -> Vec<u32> {
        self.segments
            .windows(2)
            .map(|w| w[1].start - w[0].end() - 1)
            .collect()
    }

    /// `ℓ = Σ ℓ_i`.
    pub fn total_gap(&self) -> u64 {
        self.gaps().iter().map(|&l| l as u64).sum()
    }

    /// `max - min + 1`, the volume of the set when it is 1-dimensional.
    pub fn span(&self) -> u64 {
        (self.segments.last().unwrap().end() - self.segments[0].start) as u64 + 1
    }

    pub fn reconstruct(&self) -> IntSet {
        IntSet::from_sorted_unchecked(
            self.segments
                .iter()
                .flat_map(|p| p.start..=p.end())
                .collect(),
        )
    }

    /// `[min P_i + min P_j, max P_i + max P_j]` for every `i ≤ j`, in lexicographic `(i, j)` order.
    pub fn pairwise_sum_intervals(&self) -> Vec<(usize, usize, Interval)> {
        let s = self.s();
        let mut out = Vec::with_capacity(s * (s + 1) / 2);
        for i in 0..s {
            for j in i..s {
                let (p, q) = (self.segments[i], self.segments[j]);
                out.push((
                    i,
                    j,
                    Interval {
                        lo: p.start as u64 + q.start as u64,
                        hi: p.end() as u64 + q.end() as u64,
                    },
                ));
            }
        }
        out
    }

    /// `|2A|` from interval arithmetic; `O(s²)` regardless of the gap sizes.
    pub fn doubling(&self) -> u64 {
        let ivs: Vec<Interval> = self
            .pairwise_sum_intervals()
            .into_iter()
            .map(|(_, _, iv)| iv)
            .collect();
        union_len(&ivs)
    }

    /// True when no two of the pairwise segment sums share an element.
    pub fn sums_pairwise_disjoint(&self) -> bool {
        let ivs = self.pairwise_sum_intervals();
        ivs.iter()
            .enumerate()
            .all(|(a, x)| ivs[a + 1..].iter().all(|y| !x.2.intersects(&y.2)))
    }
}

/// Splits `A` into maximal runs.
pub fn decompose_segments(a: &IntSet) -> Result<SegmentDecomposition> {
    a.require_analytic()?;
    let mut segments = Vec::new();
    let el = a.elements();
    let mut start = el[0];
    let mut prev = el[0];
    for &x in &el[1..] {
        if x != prev + 1 {
            segments.push(Segment {
                start,
                len: prev - start + 1,
            });
            start = x;
        }
        prev = x;
    }
    segments.push(Segment {
        start,
        len: prev - start + 1,
    });
    Ok(SegmentDecomposition { segments })
}

/// The six intervals `2P1, P1+P2, 2P2, P1+P3, P2+P3, 2P3` of a 3-segment set.
pub fn segment_sum_intervals(d: &SegmentDecomposition) -> Result<[Interval; 6]> {
    if d.s() != 3 {
        return Err(Error::UnsupportedShape(format!(
            "six-interval layout needs exactly 3 segments, got {}",
            d.s()
        )));
    }
    let k: Vec<u64> = d.lengths().iter().map(|&x| x as u64).collect();
    let l: Vec<u64> = d.gaps().iter().map(|&x| x as u64).collect();
    let o = d.segments()[0].start as u64;
    let at = |base: u64, width: u64| Interval {
        lo: 2 * o + base,
        hi: 2 * o + base + width,
    };
    Ok([
        at(0, 2 * k[0] - 2),
        at(k[0] + l[0], k[0] + k[1] - 2),
        at(2 * (k[0] + l[0]), 2 * k[1] - 2),
        at(k[0] + l[0] + k[1] + l[1], k[0] + k[2] - 2),
        at(2 * (k[0] + l[0]) + k[1] + l[1], k[1] + k[2] - 2),
        at(2 * (k[0] + l[0] + k[1] + l[1]), 2 * k[2] - 2),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intset::{doubling, sumset};

    fn set(v: &[u32]) -> IntSet {
        IntSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose_segments(&set(&[0, 1, 2, 5, 6])).unwrap();
        assert_eq!(
            d.segments(),
            &[Segment { start: 0, len: 3 }, Segment { start: 5, len: 2 }]
        );
        assert_eq!(d.gaps(), vec![2]);
        assert_eq!(d.s(), 2);

        let d = decompose_segments(&set(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 12, 24])).unwrap();
        assert_eq!(d.lengths(), vec![9, 1, 1]);
        assert_eq!(d.gaps(), vec![3, 11]);
        assert_eq!(d.segments()[1].start, 12);
        assert_eq!(d.segments()[2].start, 24);

        let d = decompose_segments(&set(&[0, 1, 2])).unwrap();
        assert_eq!(d.s(), 1);
        assert!(d.gaps().is_empty());
    }

    #[test]
    fn six_intervals_of_three_singletons() {
        let d = decompose_segments(&set(&[0, 2, 4])).unwrap();
        let iv = segment_sum_intervals(&d).unwrap();
        let pts: Vec<(u64, u64)> = iv.iter().map(|i| (i.lo, i.hi)).collect();
        assert_eq!(pts, vec![(0, 0), (2, 2), (4, 4), (4, 4), (6, 6), (8, 8)]);
    }

    #[test]
    fn six_intervals_cover_family_i() {
        let a = set(&[0, 4, 5, 6, 7, 8, 9, 10, 11, 12, 24]);
        let d = decompose_segments(&a).unwrap();
        let iv = segment_sum_intervals(&d).unwrap();
        assert_eq!(union_len(&iv), 32);
        let covered: Vec<u64> = sumset(&a, &a)
            .elements()
            .iter()
            .map(|&x| x as u64)
            .collect();
        for x in &covered {
            assert!(iv.iter().any(|i| i.contains(*x)));
        }
    }

    #[test]
    fn six_intervals_separated() {
        // Equal gaps make P1 + P3 and 2·P2 coincide; unequal ones separate all six.
        let d = SegmentDecomposition::from_shape(&[2, 2, 2], &[5, 5]).unwrap();
        let iv = segment_sum_intervals(&d).unwrap();
        assert_eq!(iv[2], iv[3]);
        assert!(!d.sums_pairwise_disjoint());

        let d = SegmentDecomposition::from_shape(&[2, 2, 2], &[5, 11]).unwrap();
        let iv = segment_sum_intervals(&d).unwrap();
        for a in 0..6 {
            for b in a + 1..6 {
                assert!(!iv[a].intersects(&iv[b]), "{a} {b}");
            }
        }
        assert!(d.sums_pairwise_disjoint());
    }

    #[test]
    fn six_intervals_reject_other_shapes() {
        let d = decompose_segments(&set(&[0, 1, 5])).unwrap();
        assert!(matches!(
            segment_sum_intervals(&d),
            Err(Error::UnsupportedShape(_))
        ));
    }

    #[test]
    fn interval_doubling_matches_bitset() {
        let d = SegmentDecomposition::from_shape(&[3, 1, 4, 2], &[2, 7, 1]).unwrap();
        assert_eq!(d.doubling() as usize, doubling(&d.reconstruct()));
    }

    #[test]
    fn from_shape_validates() {
        assert!(SegmentDecomposition::from_shape(&[1, 2], &[]).is_err());
        assert!(SegmentDecomposition::from_shape(&[1, 0], &[1]).is_err());
        assert!(SegmentDecomposition::from_shape(&[1, 2], &[0]).is_err());
    }
}
