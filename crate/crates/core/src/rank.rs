//! Dense integer matrices and their exact rank.
//!
//! Rank is computed by fraction-free elimination: each update cross-multiplies
//! by the current pivot and divides exactly by the previous one, so every
//! intermediate value is a minor of the input. The fast path runs in checked
//! `i128` and falls back to arbitrary precision on overflow.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend_from_slice(r);
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[i64]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn rank(&self) -> usize {
        rank_exact(self)
    }
}

/// Debug dump: header `rows=<r> cols=<c>`, then one space-separated row per line.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rows={} cols={}", self.rows, self.cols)?;
        for r in self.iter_rows() {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Rank over the rationals.
pub fn rank_exact(m: &IntMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let data: Vec<i128> = m.data.iter().map(|&x| x as i128).collect();
    match bareiss_i128(data, m.rows, m.cols) {
        Some(r) => r,
        None => bareiss_bigint(m),
    }
}

fn bareiss_i128(mut a: Vec<i128>, rows: usize, cols: usize) -> Option<usize> {
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let piv = a[r * cols + c];
        for i in r + 1..rows {
            let f = a[i * cols + c];
            for j in c + 1..cols {
                let v = piv
                    .checked_mul(a[i * cols + j])?
                    .checked_sub(f.checked_mul(a[r * cols + j])?)?;
                debug_assert_eq!(v % prev, 0);
                a[i * cols + j] = v / prev;
            }
            a[i * cols + c] = 0;
        }
        prev = piv;
        r += 1;
    }
    Some(r)
}

fn bareiss_bigint(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<BigInt> = m.data.iter().map(|&x| BigInt::from(x)).collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let piv = a[r * cols + c].clone();
        for i in r + 1..rows {
            let f = a[i * cols + c].clone();
            for j in c + 1..cols {
                let v = &piv * &a[i * cols + j] - &f * &a[r * cols + j];
                a[i * cols + j] = v / &prev;
            }
            a[i * cols + c] = BigInt::zero();
        }
        prev = piv;
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank_exact(&IntMatrix::zeros(3, 4)), 0);
        assert_eq!(rank_exact(&IntMatrix::identity(3)), 3);
        let m = IntMatrix::from_rows(4, &[vec![1, -2, 1, 0], vec![0, 1, -2, 1]]);
        assert_eq!(rank_exact(&m), 2);
        let m = IntMatrix::from_rows(3, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 1]]);
        assert_eq!(rank_exact(&m), 2);
        assert_eq!(rank_exact(&IntMatrix::zeros(0, 5)), 0);
    }

    #[test]
    fn skipped_pivot_columns() {
        let m = IntMatrix::from_rows(4, &[vec![0, 0, 3, 1], vec![0, 0, 6, 2], vec![0, 5, 0, 0]]);
        assert_eq!(rank_exact(&m), 2);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let m = IntMatrix::from_rows(
            3,
            &[
                vec![big, 1, 7],
                vec![3, big, 5],
                vec![big, 7, big],
            ],
        );
        let data: Vec<i128> = m.data.iter().map(|&x| x as i128).collect();
        assert!(bareiss_i128(data, 3, 3).is_none());
        assert_eq!(rank_exact(&m), bareiss_bigint(&m));
        assert_eq!(rank_exact(&m), 3);
    }

    #[test]
    fn dump_format() {
        let m = IntMatrix::from_rows(3, &[vec![1, -2, 1]]);
        assert_eq!(m.to_string(), "rows=1 cols=3\n1 -2 1\n");
    }
}
