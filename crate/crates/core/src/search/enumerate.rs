//! Deterministic enumerators for normal-form sets and segment shapes.

use num_integer::Integer;

use crate::intset::IntSet;
use crate::segments::SegmentDecomposition;

/// Every `k`-subset of `[0, n]` containing `0` and `n` with gcd 1, in
/// lexicographic order.
pub fn enumerate_normal_sets(k: usize, n: u32) -> NormalSets {
    NormalSets::new(k, n, None)
}

/// As [`enumerate_normal_sets`], restricted to sets whose second-smallest
/// element is `second`.
pub fn enumerate_normal_sets_with_second(k: usize, n: u32, second: u32) -> NormalSets {
    NormalSets::new(k, n, Some(second))
}

/// Iterator over normal-form sets with fixed maximum.
pub struct NormalSets {
    n: u32,
    /// Interior elements, strictly increasing in `[lo, n-1]`.
    inner: Vec<u32>,
    fixed_second: bool,
    done: bool,
}

impl NormalSets {
    fn new(k: usize, n: u32, second: Option<u32>) -> Self {
        let mut it = NormalSets {
            n,
            inner: Vec::new(),
            fixed_second: second.is_some(),
            done: false,
        };
        if k < 2 || (n as u64) + 1 < k as u64 {
            it.done = true;
            return it;
        }
        let m = k - 2;
        match second {
            Some(a1) if m == 0 || a1 == 0 || a1 >= n => it.done = true,
            Some(a1) => {
                it.inner = (0..m as u32).map(|t| a1 + t).collect();
                if a1 + m as u32 > n {
                    it.done = true;
                }
            }
            None => it.inner = (1..=m as u32).collect(),
        }
        if m == 0 && n == 0 {
            it.done = true;
        }
        it
    }

    fn advance(&mut self) {
        let m = self.inner.len();
        let first_free = usize::from(self.fixed_second);
        let mut j = m;
        while j > first_free {
            j -= 1;
            // Largest value position j may take is n - (m - j).
            if self.inner[j] < self.n - (m - j) as u32 {
                self.inner[j] += 1;
                for t in j + 1..m {
                    self.inner[t] = self.inner[t - 1] + 1;
                }
                return;
            }
        }
        self.done = true;
    }

    fn current(&self) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.inner.len() + 2);
        v.push(0);
        v.extend_from_slice(&self.inner);
        v.push(self.n);
        v
    }
}

impl Iterator for NormalSets {
    type Item = IntSet;

    fn next(&mut self) -> Option<IntSet> {
        while !self.done {
            let v = self.current();
            if self.inner.is_empty() {
                self.done = true;
            } else {
                self.advance();
            }
            let g = v.iter().fold(0u32, |g, &x| g.gcd(&x));
            if g == 1 {
                return Some(IntSet::from_sorted_unchecked(v));
            }
        }
        None
    }
}

/// Bounds on the segment shapes `(k_1, …, k_s; ℓ_1, …, ℓ_{s−1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentCaps {
    pub max_part: u32,
    pub max_gap: u32,
    /// Cap on `k + Σ ℓ_i`, the span of the set.
    pub max_span: u64,
}

/// All compositions of `k` into `s` parts in `[1, max_part]`, lexicographic.
pub fn compositions(k: u32, s: usize, max_part: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, left: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = 1.max(rest.saturating_sub(max * (left as u32 - 1)));
        let hi = max.min(rest.saturating_sub(left as u32 - 1));
        for p in lo..=hi {
            cur.push(p);
            rec(rest - p, left - 1, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if s == 0 || k < s as u32 {
        return out;
    }
    rec(k, s, max_part.max(1), &mut Vec::with_capacity(s), &mut out);
    out
}

/// True when a composition is a genuine segment shape: some part exceeds 1.
pub fn admissible_parts(parts: &[u32]) -> bool {
    parts.iter().any(|&p| p > 1)
}

/// Gap vectors in `[1, max_gap]^(s−1)` with `Σ ℓ_i ≤ budget`, lexicographic.
pub fn gap_vectors(s: usize, max_gap: u32, budget: u64) -> GapVectors {
    GapVectors::new(s.saturating_sub(1), max_gap, budget)
}

pub struct GapVectors {
    cur: Vec<u32>,
    max_gap: u32,
    budget: u64,
    sum: u64,
    done: bool,
}

impl GapVectors {
    fn new(len: usize, max_gap: u32, budget: u64) -> Self {
        let done = (max_gap == 0 && len > 0) || (len as u64) > budget;
        GapVectors {
            cur: vec![1; len],
            max_gap,
            budget,
            sum: len as u64,
            done,
        }
    }
}

impl Iterator for GapVectors {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        // Odometer, last coordinate fastest; reset coordinates to 1 on carry.
        let mut j = self.cur.len();
        loop {
            if j == 0 {
                self.done = true;
                break;
            }
            j -= 1;
            if self.cur[j] < self.max_gap && self.sum < self.budget {
                self.cur[j] += 1;
                self.sum += 1;
                break;
            }
            self.sum -= (self.cur[j] - 1) as u64;
            self.cur[j] = 1;
        }
        Some(out)
    }
}

/// Every segment shape of cardinality `k` with `s` segments inside the caps.
///
/// Shapes where every segment is a singleton are skipped; such sets are
/// not counted as `s`-segment sets.
pub fn enumerate_segment_configs(
    k: u32,
    s: usize,
    caps: SegmentCaps,
) -> impl Iterator<Item = SegmentDecomposition> {
    let budget = caps.max_span.saturating_sub(k as u64);
    compositions(k, s, caps.max_part)
        .into_iter()
        .filter(|p| admissible_parts(p))
        .flat_map(move |parts| {
            gap_vectors(parts.len(), caps.max_gap, budget).map(move |g| {
                SegmentDecomposition::from_shape(&parts, &g).expect("caps keep shapes valid")
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(it: impl Iterator<Item = IntSet>) -> Vec<String> {
        it.map(|a| a.to_string()).collect()
    }

    #[test]
    fn normal_examples() {
        assert_eq!(strs(enumerate_normal_sets(2, 1)), vec!["0,1"]);
        assert!(enumerate_normal_sets(2, 2).next().is_none());
        assert_eq!(strs(enumerate_normal_sets(3, 3)), vec!["0,1,3", "0,2,3"]);
        let v = strs(enumerate_normal_sets(4, 6));
        assert_eq!(v.len(), 9);
        assert!(!v.contains(&"0,2,4,6".to_string()));
        assert!(enumerate_normal_sets(5, 3).next().is_none());
    }

    #[test]
    fn normal_sets_match_filtered_subsets() {
        for k in 2..=6usize {
            for n in 1..=11u32 {
                let mut expect = Vec::new();
                for mask in 0u32..(1 << (n + 1)) {
                    if mask & 1 == 0 || mask >> n & 1 == 0 || mask.count_ones() as usize != k {
                        continue;
                    }
                    let v: Vec<u32> = (0..=n).filter(|&x| mask >> x & 1 == 1).collect();
                    if v.iter().fold(0u32, |g, &x| g.gcd(&x)) == 1 {
                        expect.push(IntSet::new(v).unwrap());
                    }
                }
                expect.sort();
                let got: Vec<IntSet> = enumerate_normal_sets(k, n).collect();
                assert_eq!(got, expect, "k={k} n={n}");
                let split: Vec<IntSet> = (1..n)
                    .flat_map(|a1| enumerate_normal_sets_with_second(k, n, a1))
                    .collect();
                if k > 2 {
                    assert_eq!(split, expect, "split k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn segment_examples() {
        let caps = SegmentCaps {
            max_part: 3,
            max_gap: 2,
            max_span: 100,
        };
        let v: Vec<_> = enumerate_segment_configs(3, 2, caps).collect();
        assert_eq!(v.len(), 4);
        let caps1 = SegmentCaps {
            max_part: 2,
            max_gap: 1,
            max_span: 100,
        };
        assert_eq!(enumerate_segment_configs(2, 2, caps1).count(), 0);
    }

    #[test]
    fn span_cap_counts() {
        // k=11, s=3, k + ℓ ≤ 25: compositions times gap pairs with ℓ1 + ℓ2 ≤ 14.
        let caps = SegmentCaps {
            max_part: 11,
            max_gap: 25,
            max_span: 25,
        };
        let got = enumerate_segment_configs(11, 3, caps).count();
        let comps = compositions(11, 3, 11).len();
        let pairs = (1..=14u32).map(|l1| 14 - l1).sum::<u32>() as usize;
        assert_eq!(comps, 45);
        assert_eq!(got, comps * pairs);
        for d in enumerate_segment_configs(11, 3, caps) {
            assert!(d.span() <= 25);
        }
    }

    #[test]
    fn gap_vectors_brute() {
        for len in 0..4usize {
            for max_gap in 1..4u32 {
                for budget in 0..9u64 {
                    let got: Vec<Vec<u32>> = GapVectors::new(len, max_gap, budget).collect();
                    let mut expect = Vec::new();
                    let total = (max_gap as usize).pow(len as u32);
                    for code in 0..total {
                        let mut c = code;
                        let mut v = vec![0; len];
                        for slot in v.iter_mut().rev() {
                            *slot = (c % max_gap as usize) as u32 + 1;
                            c /= max_gap as usize;
                        }
                        if v.iter().map(|&x| x as u64).sum::<u64>() <= budget {
                            expect.push(v);
                        }
                    }
                    if len == 0 {
                        expect = vec![vec![]];
                    }
                    assert_eq!(got, expect, "len={len} max_gap={max_gap} budget={budget}");
                }
            }
        }
    }
}
