//! Exact integer linear algebra on small dense matrices.
//!
//! Everything here works over `BigInt` with fraction-free elimination, so the
//! sign of every determinant is exact. Matrices are tiny (at most a few dozen
//! rows, dimension rarely above 4), so no effort is spent on speed.

use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Determinant of a square matrix by Bareiss elimination.
pub fn det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut m = to_big(rows);
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Rank of an arbitrary integer matrix.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m = to_big(rows);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            for j in c..cols {
                let v = &m[i][j] * &a - &m[r][j] * &b;
                m[i][j] = v;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

fn minor(rows: &[Vec<i64>], skip_row: Option<usize>, skip_col: usize) -> Vec<Vec<i64>> {
    rows.iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != skip_row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip_col)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// Generalized cross product of `d - 1` vectors in `Z^d`: the integer vector
/// orthogonal to all of them whose entries are the signed maximal minors.
/// Zero iff the rows are linearly dependent.
pub fn cross(rows: &[Vec<i64>], dim: usize) -> Vec<BigInt> {
    debug_assert_eq!(rows.len() + 1, dim);
    (0..dim)
        .map(|j| {
            let m = det(&minor(rows, None, j));
            if j % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect()
}

/// Adjugate of a square matrix: `m * adj(m) = det(m) * I`.
pub fn adjugate(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let n = rows.len();
    if n == 1 {
        return vec![vec![BigInt::one()]];
    }
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for (i, adj_row) in adj.iter_mut().enumerate() {
        for (j, entry) in adj_row.iter_mut().enumerate() {
            let c = det(&minor(rows, Some(j), i));
            *entry = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    adj
}

/// Divides out the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Index of the lattice spanned by `vectors` inside `Z^dim`, or `None` if the
/// vectors do not span `R^dim`. The index equals the gcd of all maximal minors.
pub fn lattice_index(vectors: &[Vec<i64>], dim: usize) -> Option<BigInt> {
    let mut m = to_big(vectors);
    let mut index = BigInt::one();
    let mut row = 0;
    for c in 0..dim {
        // Euclid on column c among the remaining rows.
        loop {
            let nonzero: Vec<usize> = (row..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nonzero.is_empty() {
                return None;
            }
            let p = *nonzero
                .iter()
                .min_by(|&&a, &&b| m[a][c].abs().cmp(&m[b][c].abs()))
                .expect("nonempty");
            m.swap(row, p);
            if nonzero.len() == 1 {
                break;
            }
            let pivot = m[row][c].clone();
            for i in row + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&pivot);
                for j in c..dim {
                    let v = &m[row][j] * &q;
                    m[i][j] -= v;
                }
            }
        }
        index *= m[row][c].abs();
        row += 1;
    }
    Some(index)
}

pub(crate) fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Internal(format!("integer {x} does not fit in 64 bits")))
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        assert_eq!(det(&[vec![2, 1], vec![1, 2]]), BigInt::from(3));
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(
            det(&[vec![1, 1, 1], vec![1, 1, -1], vec![1, -1, 1]]),
            BigInt::from(-4)
        );
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
    }

    #[test]
    fn rank_detects_dependence() {
        assert_eq!(rank(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]), 2);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![0, 3], vec![5, 0]]), 2);
    }

    #[test]
    fn cross_is_orthogonal() {
        let rows = vec![vec![1, 2, 3], vec![-2, 0, 5]];
        let n: Vec<i64> = cross(&rows, 3).iter().map(|x| to_i64(x).unwrap()).collect();
        assert_eq!(dot(&n, &rows[0]), 0);
        assert_eq!(dot(&n, &rows[1]), 0);
        assert_eq!(cross(&[], 1), vec![BigInt::one()]);
    }

    #[test]
    fn adjugate_inverts() {
        let m = vec![vec![2, -1, 0], vec![1, 3, 2], vec![0, 1, 1]];
        let d = det(&m);
        let adj = adjugate(&m);
        for i in 0..3 {
            for j in 0..3 {
                let s: BigInt = (0..3).map(|k| BigInt::from(m[i][k]) * &adj[k][j]).sum();
                let want = if i == j { d.clone() } else { BigInt::zero() };
                assert_eq!(s, want);
            }
        }
    }

    #[test]
    fn index_of_sublattices() {
        let std = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(lattice_index(&std, 2), Some(BigInt::one()));
        let knight = vec![vec![2, 1], vec![1, 2], vec![-1, 2], vec![2, -1]];
        assert_eq!(lattice_index(&knight, 2), Some(BigInt::one()));
        let cube = vec![vec![1, 1, 1], vec![1, 1, -1], vec![1, -1, 1], vec![1, -1, -1]];
        assert_eq!(lattice_index(&cube, 3), Some(BigInt::from(4)));
        assert_eq!(lattice_index(&[vec![1, 0], vec![2, 0]], 2), None);
        assert_eq!(lattice_index(&[vec![6], vec![4]], 1), Some(BigInt::from(2)));
    }
}
