//! Additive dimension from relation-matrix ranks.
//!
//! For `A = {a_1, …, a_k}` the relation matrix has one row
//! `e_{i1} + e_{i2} - e_{i3} - e_{i4}` for every coincidence
//! `a_{i1} + a_{i2} = a_{i3} + a_{i4}`, and `dim A = k - 1 - rank`.
//! For a union of `s ≤ k - 1` segments the same dimension is `s - rank` of
//! the much smaller segment matrix built from overlapping segment sums.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{add, AdditiveSet, Point};
use crate::rank::{rank_exact, IntMatrix};
use crate::segments::SegmentDecomposition;

/// Index pairs `(i, j)`, `i ≤ j`, grouped by equal sums; only groups of size ≥ 2.
pub(crate) fn coincident_pairs(points: &[Point]) -> Vec<Vec<(usize, usize)>> {
    let k = points.len();
    let mut pairs: Vec<(Point, usize, usize)> = Vec::with_capacity(k * (k + 1) / 2);
    for i in 0..k {
        for j in i..k {
            pairs.push((add(&points[i], &points[j]), i, j));
        }
    }
    pairs.sort_unstable();
    let mut out = Vec::new();
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && pairs[end].0 == pairs[start].0 {
            end += 1;
        }
        if end - start >= 2 {
            out.push(pairs[start..end].iter().map(|p| (p.1, p.2)).collect());
        }
        start = end;
    }
    out
}

fn relation_row(k: usize, q: [usize; 4]) -> Vec<i64> {
    let mut row = vec![0i64; k];
    row[q[0]] += 1;
    row[q[1]] += 1;
    row[q[2]] -= 1;
    row[q[3]] -= 1;
    row
}

/// The full relation matrix, one row per canonical quadruple.
///
/// Quadruples are canonical: `i1 ≤ i2`, `i3 ≤ i4`, `(i1, i2) < (i3, i4)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationMatrix {
    k: usize,
    rows: Vec<Vec<i64>>,
    quadruples: Vec<[usize; 4]>,
}

impl RelationMatrix {
    pub fn build<S: AdditiveSet + ?Sized>(set: &S) -> Result<Self> {
        let points = set.points();
        let k = points.len();
        if k < 2 {
            return Err(Error::InvalidInput(format!(
                "relation matrix needs at least 2 points, got {k}"
            )));
        }
        let mut entries: Vec<(Vec<i64>, [usize; 4])> = Vec::new();
        for bucket in coincident_pairs(&points) {
            for (a, &(i1, i2)) in bucket.iter().enumerate() {
                for &(i3, i4) in &bucket[a + 1..] {
                    let q = [i1, i2, i3, i4];
                    let row = relation_row(k, q);
                    if row.iter().any(|&x| x != 0) {
                        entries.push((row, q));
                    }
                }
            }
        }
        entries.sort();
        entries.dedup_by(|a, b| a.0 == b.0);
        let (rows, quadruples) = entries.into_iter().unzip();
        Ok(RelationMatrix { k, rows, quadruples })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Source quadruple of each row.
    pub fn quadruples(&self) -> &[[usize; 4]] {
        &self.quadruples
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.k, &self.rows)
    }

    pub fn rank(&self) -> usize {
        rank_exact(&self.to_matrix())
    }
}

/// A row subset spanning the same space as the full relation matrix.
///
/// Within a group of pairs sharing a sum, differences against the first pair
/// generate all pairwise differences.
pub(crate) fn spanning_relations(points: &[Point]) -> IntMatrix {
    let k = points.len();
    let mut rows = Vec::new();
    for bucket in coincident_pairs(points) {
        let (i1, i2) = bucket[0];
        for &(i3, i4) in &bucket[1..] {
            rows.push(relation_row(k, [i1, i2, i3, i4]));
        }
    }
    rows.sort();
    rows.dedup();
    IntMatrix::from_rows(k, &rows)
}

/// `rank(M_A)` via the spanning subset.
pub fn relation_rank<S: AdditiveSet + ?Sized>(set: &S) -> usize {
    rank_exact(&spanning_relations(&set.points()))
}

/// `dim A = |A| - 1 - rank(M_A)`.
pub fn dim_konyagin_lev<S: AdditiveSet + ?Sized>(set: &S) -> Result<usize> {
    let k = set.cardinality();
    if k < 2 {
        return Err(Error::InvalidInput(format!(
            "dimension needs at least 2 points, got {k}"
        )));
    }
    Ok(k - 1 - relation_rank(set))
}

/// Segment matrix: `s` columns, one row per overlapping pair of segment sums.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentRelationMatrix {
    s: usize,
    rows: Vec<Vec<i64>>,
    /// `(j1, j2, j3, j4)` and an element of `(P_j1 + P_j2) ∩ (P_j3 + P_j4)`.
    witnesses: Vec<([usize; 4], u64)>,
}

impl SegmentRelationMatrix {
    pub fn build(d: &SegmentDecomposition) -> Result<Self> {
        let s = d.s();
        let k = d.k();
        if s == 0 || s + 1 > k {
            return Err(Error::HypothesisViolation(format!(
                "segment matrix needs 1 ≤ s ≤ |A| - 1, got s={s}, |A|={k}"
            )));
        }
        let sums = d.pairwise_sum_intervals();
        let mut entries: Vec<(Vec<i64>, [usize; 4], u64)> = Vec::new();
        for (a, &(j1, j2, x)) in sums.iter().enumerate() {
            for &(j3, j4, y) in &sums[a + 1..] {
                if !x.intersects(&y) {
                    continue;
                }
                let q = [j1, j2, j3, j4];
                let row = relation_row(s, q);
                if row.iter().all(|&v| v == 0) {
                    continue;
                }
                entries.push((row, q, x.lo.max(y.lo)));
            }
        }
        entries.sort();
        entries.dedup_by(|a, b| a.0 == b.0);
        let mut rows = Vec::with_capacity(entries.len());
        let mut witnesses = Vec::with_capacity(entries.len());
        for (r, q, w) in entries {
            rows.push(r);
            witnesses.push((q, w));
        }
        Ok(SegmentRelationMatrix { s, rows, witnesses })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn witnesses(&self) -> &[([usize; 4], u64)] {
        &self.witnesses
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.s, &self.rows)
    }

    pub fn rank(&self) -> usize {
        rank_exact(&self.to_matrix())
    }
}

/// `dim A = s - rank(S_A)`, valid for `1 ≤ s ≤ |A| - 1`.
pub fn dim_segments(d: &SegmentDecomposition) -> Result<usize> {
    let m = SegmentRelationMatrix::build(d)?;
    Ok(m.s() - m.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSet;
    use crate::intset::IntSet;
    use crate::segments::decompose_segments;

    fn set(v: &[u32]) -> IntSet {
        IntSet::new(v.to_vec()).unwrap()
    }

    /// Every ordered quadruple, filtered by the defining identity.
    fn brute_force_rows(a: &IntSet) -> Vec<Vec<i64>> {
        let el = a.elements();
        let k = el.len();
        let mut rows = Vec::new();
        for i1 in 0..k {
            for i2 in 0..k {
                for i3 in 0..k {
                    for i4 in 0..k {
                        if i1 == i2 && i2 == i3 && i3 == i4 {
                            continue;
                        }
                        if el[i1] + el[i2] == el[i3] + el[i4] {
                            let r = relation_row(k, [i1, i2, i3, i4]);
                            if r.iter().any(|&x| x != 0) {
                                rows.push(r);
                            }
                        }
                    }
                }
            }
        }
        rows
    }

    #[test]
    fn relation_matrix_examples() {
        let m = RelationMatrix::build(&set(&[0, 1, 3])).unwrap();
        assert!(m.rows().is_empty());
        assert!(brute_force_rows(&set(&[0, 1, 3])).is_empty());

        let m = RelationMatrix::build(&set(&[0, 1, 2])).unwrap();
        assert_eq!(m.rows(), &[vec![1, -2, 1]]);
        assert_eq!(m.quadruples(), &[[0, 2, 1, 1]]);

        let ap = set(&[0, 1, 2, 3]);
        let m = RelationMatrix::build(&ap).unwrap();
        assert_eq!(m.rank(), 2);
        let brute = IntMatrix::from_rows(4, &brute_force_rows(&ap));
        assert_eq!(rank_exact(&brute), 2);
    }

    #[test]
    fn relation_rows_are_verified_identities() {
        let a = set(&[0, 1, 2, 5, 6, 9, 13]);
        let m = RelationMatrix::build(&a).unwrap();
        let el = a.elements();
        for (row, q) in m.rows().iter().zip(m.quadruples()) {
            assert_eq!(row.iter().sum::<i64>(), 0);
            assert!(row.iter().any(|&x| x != 0));
            assert_eq!(el[q[0]] + el[q[1]], el[q[2]] + el[q[3]]);
        }
        assert_eq!(m.rank(), relation_rank(&a));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_konyagin_lev(&IntSet::interval(0, 6).unwrap()).unwrap(), 1);
        assert_eq!(dim_konyagin_lev(&set(&[0, 1, 3])).unwrap(), 2);
        let fam_iv: GridSet = "0,0,0;1,0,0;0,0,1;1,0,1;0,1,0;1,1,0".parse().unwrap();
        assert_eq!(dim_konyagin_lev(&fam_iv).unwrap(), 3);
        assert!(dim_konyagin_lev(&set(&[5])).is_err());
    }

    #[test]
    fn segment_matrix_examples() {
        let d = decompose_segments(&set(&[0, 1, 10, 11, 20, 21])).unwrap();
        let m = SegmentRelationMatrix::build(&d).unwrap();
        assert_eq!(m.rows(), &[vec![1, -2, 1]]);
        assert_eq!(m.witnesses()[0].1, 20);
        assert_eq!(dim_segments(&d).unwrap(), 2);

        let d = SegmentDecomposition::from_shape(&[2, 2, 2], &[5, 5]).unwrap();
        assert_eq!(SegmentRelationMatrix::build(&d).unwrap().rows(), &[vec![1, -2, 1]]);
        let d = SegmentDecomposition::from_shape(&[2, 2, 2], &[5, 11]).unwrap();
        assert!(SegmentRelationMatrix::build(&d).unwrap().rows().is_empty());
        assert_eq!(dim_segments(&d).unwrap(), 3);

        let d = decompose_segments(&set(&[3, 4, 5])).unwrap();
        assert!(SegmentRelationMatrix::build(&d).unwrap().rows().is_empty());
        assert_eq!(dim_segments(&d).unwrap(), 1);

        let d = decompose_segments(&set(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 12, 24])).unwrap();
        assert_eq!(dim_segments(&d).unwrap(), 1);
    }

    #[test]
    fn segment_matrix_rejects_all_singletons() {
        let d = decompose_segments(&set(&[0, 2, 4])).unwrap();
        assert!(matches!(
            SegmentRelationMatrix::build(&d),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn segment_witnesses_lie_in_both_sums() {
        let d = SegmentDecomposition::from_shape(&[3, 1, 2, 4], &[2, 3, 1]).unwrap();
        let m = SegmentRelationMatrix::build(&d).unwrap();
        let p = d.segments();
        let in_sum = |i: usize, j: usize, x: u64| {
            let lo = p[i].start as u64 + p[j].start as u64;
            let hi = p[i].end() as u64 + p[j].end() as u64;
            lo <= x && x <= hi
        };
        for (q, w) in m.witnesses() {
            assert!(in_sum(q[0], q[1], *w) && in_sum(q[2], q[3], *w));
        }
    }
}
