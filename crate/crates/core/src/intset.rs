//! Finite sets of non-negative integers and their sumsets.
//!
//! An [`IntSet`] stores its elements strictly increasing. Sumsets are computed
//! with a shift-OR over a packed bit vector spanning `[min A + min B, max A + max B]`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest element accepted by [`IntSet::new`].
pub const DEFAULT_ELEMENT_CAP: u32 = 1 << 20;

/// A finite set of non-negative integers, elements strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct IntSet {
    elems: Vec<u32>,
}

impl IntSet {
    /// Builds a set from strictly increasing elements bounded by [`DEFAULT_ELEMENT_CAP`].
    pub fn new(elems: Vec<u32>) -> Result<Self> {
        Self::with_cap(elems, DEFAULT_ELEMENT_CAP)
    }

    pub fn with_cap(elems: Vec<u32>, cap: u32) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::InvalidInput("empty set".into()));
        }
        if let Some(w) = elems.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "elements must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        let max = *elems.last().unwrap();
        if max > cap {
            return Err(Error::ElementTooLarge {
                value: max as u64,
                cap,
            });
        }
        Ok(IntSet { elems })
    }

    /// Sorts and deduplicates before validating.
    pub fn from_unsorted(mut elems: Vec<u32>) -> Result<Self> {
        elems.sort_unstable();
        elems.dedup();
        Self::new(elems)
    }

    /// The segment `[lo, hi]`.
    pub fn interval(lo: u32, hi: u32) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!("empty interval [{lo}, {hi}]")));
        }
        Self::new((lo..=hi).collect())
    }

    // Callers guarantee the invariants.
    pub(crate) fn from_sorted_unchecked(elems: Vec<u32>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        IntSet { elems }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn into_elements(self) -> Vec<u32> {
        self.elems
    }

    /// Cardinality `k`.
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn min(&self) -> u32 {
        self.elems[0]
    }

    pub fn max(&self) -> u32 {
        *self.elems.last().unwrap()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    /// gcd of `A - min A`; zero for a singleton.
    pub fn difference_gcd(&self) -> u32 {
        let m = self.min();
        self.elems.iter().fold(0u32, |g, &x| g.gcd(&(x - m)))
    }

    /// `min A = 0` and `gcd A = 1`.
    pub fn is_normal_form(&self) -> bool {
        self.min() == 0 && self.difference_gcd() == 1
    }

    pub(crate) fn require_analytic(&self) -> Result<()> {
        if self.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "analytic operations need at least 2 elements, got {}",
                self.len()
            )));
        }
        Ok(())
    }

    /// `(A - min A) / gcd(A - min A)`.
    pub fn normalize(&self) -> Result<IntSet> {
        self.require_analytic()?;
        let m = self.min();
        let g = self.difference_gcd();
        Ok(IntSet::from_sorted_unchecked(
            self.elems.iter().map(|&x| (x - m) / g).collect(),
        ))
    }

    /// `-A + max A`; requires `min A = 0`.
    pub fn reflect(&self) -> Result<IntSet> {
        if self.min() != 0 {
            return Err(Error::InvalidInput(format!(
                "reflection needs min(A) = 0, got {}",
                self.min()
            )));
        }
        let a = self.max();
        Ok(IntSet::from_sorted_unchecked(
            self.elems.iter().rev().map(|&x| a - x).collect(),
        ))
    }

    /// Lexicographic minimum of the normalization and its reflection.
    ///
    /// Two 1-dimensional sets are F2-isomorphic exactly when these agree.
    pub fn canonical_1d(&self) -> Result<IntSet> {
        let n = self.normalize()?;
        let r = n.reflect()?;
        Ok(if r.elems < n.elems { r } else { n })
    }

    /// The set shifted by `t`.
    pub fn translate(&self, t: u32) -> Result<IntSet> {
        let elems = self
            .elems
            .iter()
            .map(|&x| x.checked_add(t).ok_or_else(|| Error::Overflow("translate".into())))
            .collect::<Result<Vec<_>>>()?;
        IntSet::new(elems)
    }

    pub fn sumset(&self, other: &IntSet) -> IntSet {
        sumset(self, other)
    }

    pub fn doubling(&self) -> usize {
        doubling(self)
    }
}

impl TryFrom<Vec<u32>> for IntSet {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        IntSet::new(v)
    }
}

impl From<IntSet> for Vec<u32> {
    fn from(s: IntSet) -> Self {
        s.elems
    }
}

/// Canonical text form: comma-separated increasing integers.
impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for IntSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse(s, "empty set literal"));
        }
        let mut elems = Vec::new();
        for tok in s.split(',') {
            let t = tok.trim();
            let v: u64 = t
                .parse()
                .map_err(|_| Error::parse(t, "expected a non-negative integer"))?;
            if v > DEFAULT_ELEMENT_CAP as u64 {
                return Err(Error::parse(t, format!("exceeds cap {DEFAULT_ELEMENT_CAP}")));
            }
            if let Some(&last) = elems.last() {
                if v as u32 <= last {
                    return Err(Error::parse(t, "elements must be strictly increasing"));
                }
            }
            elems.push(v as u32);
        }
        IntSet::new(elems)
    }
}

/// Packed bit vector used for sumsets.
#[derive(Debug, Clone)]
pub(crate) struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub(crate) fn zeros(len: usize) -> Self {
        BitRow {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub(crate) fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    /// `self |= other << shift`, truncated to `self.len`.
    pub(crate) fn or_shifted(&mut self, other: &BitRow, shift: usize) {
        let ws = shift / 64;
        let bs = shift % 64;
        let n = self.words.len();
        for (i, &w) in other.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let j = i + ws;
            if j >= n {
                break;
            }
            self.words[j] |= w << bs;
            if bs != 0 && j + 1 < n {
                self.words[j + 1] |= w >> (64 - bs);
            }
        }
    }

    pub(crate) fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }
}

fn offset_bits(a: &IntSet) -> BitRow {
    let base = a.min();
    let mut row = BitRow::zeros((a.max() - base) as usize + 1);
    for &x in a.elements() {
        row.set((x - base) as usize);
    }
    row
}

fn sum_bits(a: &IntSet, b: &IntSet) -> BitRow {
    let bb = offset_bits(b);
    let len = (a.max() - a.min()) as usize + bb.len();
    let mut out = BitRow::zeros(len);
    for &x in a.elements() {
        out.or_shifted(&bb, (x - a.min()) as usize);
    }
    out
}

/// Minkowski sum `A + B`.
pub fn sumset(a: &IntSet, b: &IntSet) -> IntSet {
    let base = a.min() + b.min();
    let bits = sum_bits(a, b);
    IntSet::from_sorted_unchecked(bits.ones().map(|i| base + i as u32).collect())
}

/// `|A + B|` without materializing the sumset.
pub fn sumset_len(a: &IntSet, b: &IntSet) -> usize {
    sum_bits(a, b).count_ones()
}

/// `|2A|`.
pub fn doubling(a: &IntSet) -> usize {
    sumset_len(a, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> IntSet {
        IntSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(set(&[3, 5, 7]).normalize().unwrap(), set(&[0, 1, 2]));
        assert_eq!(set(&[0, 1, 2]).normalize().unwrap(), set(&[0, 1, 2]));
        let fam_i = set(&[0, 4, 5, 6, 7, 8, 9, 10, 11, 12, 24]);
        assert_eq!(fam_i.normalize().unwrap(), fam_i);
        assert!(set(&[4]).normalize().is_err());
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(set(&[0, 1, 3]).reflect().unwrap(), set(&[0, 2, 3]));
        assert_eq!(set(&[0, 1, 2]).reflect().unwrap(), set(&[0, 1, 2]));
        assert_eq!(
            set(&[0, 3, 4, 5, 6]).reflect().unwrap(),
            set(&[0, 1, 2, 3, 6])
        );
        assert!(set(&[1, 2]).reflect().is_err());
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(sumset(&set(&[0, 1]), &set(&[0, 1])), set(&[0, 1, 2]));
        assert_eq!(
            sumset(&set(&[0, 1, 3]), &set(&[0, 1, 3])),
            set(&[0, 1, 2, 3, 4, 6])
        );
        let a = set(&[0, 3, 4, 5, 6]);
        let two_a = sumset(&a, &a);
        assert_eq!(two_a.len(), 11);
        assert_eq!(two_a, set(&[0, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]));
    }

    #[test]
    fn sumset_across_word_boundaries() {
        let a = set(&[3, 63, 64, 130]);
        let b = set(&[1, 65, 200]);
        let mut naive: Vec<u32> = a
            .elements()
            .iter()
            .flat_map(|x| b.elements().iter().map(move |y| x + y))
            .collect();
        naive.sort_unstable();
        naive.dedup();
        assert_eq!(sumset(&a, &b).into_elements(), naive);
    }

    #[test]
    fn doubling_examples() {
        assert_eq!(doubling(&IntSet::interval(0, 6).unwrap()), 13);
        assert_eq!(doubling(&set(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 12, 24])), 32);
    }

    #[test]
    fn text_form() {
        let a: IntSet = "0,3,4,5,6".parse().unwrap();
        assert_eq!(a.to_string(), "0,3,4,5,6");
        match "0,3,x".parse::<IntSet>() {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "x"),
            other => panic!("unexpected {other:?}"),
        }
        assert!("0,3,3".parse::<IntSet>().is_err());
        assert!("5,2".parse::<IntSet>().is_err());
        assert!("".parse::<IntSet>().is_err());
        assert!(IntSet::new(vec![0, DEFAULT_ELEMENT_CAP + 1]).is_err());
    }

    #[test]
    fn canonical_form_identifies_reflections() {
        let a = set(&[0, 3, 4, 5, 6]);
        let b = set(&[2, 4, 6, 8, 14]);
        assert_eq!(a.canonical_1d().unwrap(), b.canonical_1d().unwrap());
    }
}
