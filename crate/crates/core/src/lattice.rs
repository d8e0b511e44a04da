//! Integer kernels and small basis reduction.

use crate::error::{Error, Result};
use crate::rank::IntMatrix;

/// A Z-basis of `{v ∈ Z^n : M v = 0}`.
///
/// Unimodular column operations bring `M` to column echelon form while the
/// same operations are tracked on an identity matrix; the columns that end up
/// zero in `M·V` form a basis of the integer kernel, which is therefore
/// saturated (every integer kernel vector is an integer combination).
pub fn integer_kernel(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    let n = m.cols();
    let rows = m.rows();
    // Column-major working copies.
    let mut c: Vec<Vec<i128>> = (0..n)
        .map(|j| (0..rows).map(|i| m.get(i, j) as i128).collect())
        .collect();
    let mut v: Vec<Vec<i128>> = (0..n)
        .map(|j| (0..n).map(|i| (i == j) as i128).collect())
        .collect();
    let mut p = 0;
    for i in 0..rows {
        if p == n {
            break;
        }
        loop {
            let best = (p..n)
                .filter(|&j| c[j][i] != 0)
                .min_by_key(|&j| c[j][i].unsigned_abs());
            let Some(b) = best else { break };
            c.swap(p, b);
            v.swap(p, b);
            let piv = c[p][i];
            let mut done = true;
            for j in p + 1..n {
                if c[j][i] == 0 {
                    continue;
                }
                let q = c[j][i].div_euclid(piv);
                if q != 0 {
                    axpy(&mut c, j, p, q)?;
                    axpy(&mut v, j, p, q)?;
                }
                if c[j][i] != 0 {
                    done = false;
                }
            }
            if done {
                p += 1;
                break;
            }
        }
    }
    v[p..]
        .iter()
        .map(|col| {
            col.iter()
                .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("integer kernel".into())))
                .collect()
        })
        .collect()
}

/// `cols[dst] -= q * cols[src]`.
fn axpy(cols: &mut [Vec<i128>], dst: usize, src: usize, q: i128) -> Result<()> {
    let (d, s) = if dst > src {
        let (lo, hi) = cols.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    } else {
        let (lo, hi) = cols.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    };
    for (x, &y) in d.iter_mut().zip(s.iter()) {
        *x = q
            .checked_mul(y)
            .and_then(|t| x.checked_sub(t))
            .ok_or_else(|| Error::Overflow("integer kernel".into()))?;
    }
    Ok(())
}

/// Inner product after projecting both vectors orthogonally to the all-ones
/// vector, scaled by the length to stay integral.
fn centered_dot(u: &[i64], v: &[i64]) -> i128 {
    let n = u.len() as i128;
    let uv: i128 = u.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum();
    let su: i128 = u.iter().map(|&a| a as i128).sum();
    let sv: i128 = v.iter().map(|&b| b as i128).sum();
    n * uv - su * sv
}

fn round_div(n: i128, d: i128) -> i128 {
    debug_assert!(d > 0);
    (2 * n + d).div_euclid(2 * d)
}

/// Pairwise size reduction modulo the all-ones direction.
///
/// Only unimodular updates are applied, so the lattice spanned together with
/// the all-ones vector is unchanged; coordinate widths shrink.
pub fn reduce_basis(basis: &mut [Vec<i64>]) {
    let n = basis.len();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let bj = centered_dot(&basis[j], &basis[j]);
                if bj == 0 {
                    continue;
                }
                let q = round_div(centered_dot(&basis[i], &basis[j]), bj);
                if q == 0 {
                    continue;
                }
                let cand: Vec<i64> = basis[i]
                    .iter()
                    .zip(&basis[j])
                    .map(|(&a, &b)| a - (q as i64) * b)
                    .collect();
                if centered_dot(&cand, &cand) < centered_dot(&basis[i], &basis[i]) {
                    basis[i] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    basis.sort_by_key(|b| centered_dot(b, b));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
        m.iter_rows()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = IntMatrix::from_rows(4, &[vec![1, -2, 1, 0], vec![0, 1, -2, 1]]);
        let k = integer_kernel(&m).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mul(&m, v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn kernel_is_saturated() {
        // The kernel of (2, 4) over Z is spanned by (2, -1), not (4, -2).
        let m = IntMatrix::from_rows(2, &[vec![2, 4]]);
        let k = integer_kernel(&m).unwrap();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[0].abs(), 2);
        assert_eq!(v[1].abs(), 1);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        assert!(integer_kernel(&IntMatrix::identity(3)).unwrap().is_empty());
        assert_eq!(integer_kernel(&IntMatrix::zeros(0, 3)).unwrap().len(), 3);
    }

    #[test]
    fn reduction_shrinks_widths() {
        let mut b = vec![vec![0, 1, 3, 0], vec![0, 2, 7, 0]];
        reduce_basis(&mut b);
        let width = |v: &Vec<i64>| v.iter().max().unwrap() - v.iter().min().unwrap();
        assert!(b.iter().all(|v| width(v) <= 1));
    }
}
