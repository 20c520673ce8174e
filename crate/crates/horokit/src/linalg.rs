//! Exact linear algebra over the rationals: row reduction, kernels,
//! solving, inverses and determinants for small dense matrices.

use num::{One, Signed, Zero};

use crate::rational::{dot, Q, QVec};

pub type QMat = Vec<QVec>;

pub fn identity(n: usize) -> QMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

pub fn transpose(m: &[QVec]) -> QMat {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &[QVec], v: &[Q]) -> QVec {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &[QVec], b: &[QVec]) -> QMat {
    let bt = transpose(b);
    a.iter().map(|row| bt.iter().map(|col| dot(row, col)).collect()).collect()
}

/// Reduced row echelon form. Returns the reduced matrix and pivot columns.
/// Pivots are chosen as the first nonzero entry in each column, which makes
/// the output depend only on the row space.
pub fn rref(m: &[QVec]) -> (QMat, Vec<usize>) {
    let mut a: QMat = m.to_vec();
    let rows = a.len();
    if rows == 0 {
        return (a, Vec::new());
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Q::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(m: &[QVec]) -> usize {
    rref(m).1.len()
}

/// Canonical basis of the row space (nonzero rows of the RREF).
pub fn row_space_basis(m: &[QVec]) -> QMat {
    rref(m).0
}

/// Basis of {x : m x = 0}, one vector per free column.
pub fn nullspace(m: &[QVec], cols: usize) -> QMat {
    if m.is_empty() {
        return identity(cols);
    }
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b`, or `None` when the system is inconsistent.
/// When `m` has full column rank the solution is unique.
pub fn solve(m: &[QVec], b: &[Q]) -> Option<QVec> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let aug: QMat = m.iter().zip(b).map(|(row, bi)| {
        let mut r = row.clone();
        r.push(bi.clone());
        r
    }).collect();
    let (r, pivots) = rref(&aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[cols].clone();
    }
    Some(x)
}

pub fn inverse(m: &[QVec]) -> Option<QMat> {
    let n = m.len();
    let aug: QMat = m.iter().enumerate().map(|(i, row)| {
        let mut r = row.clone();
        r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
        r
    }).collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant by fraction-free style elimination over the rationals.
pub fn det(m: &[QVec]) -> Q {
    let n = m.len();
    let mut a: QMat = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Q::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let pivot_row = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    d
}

pub fn abs_det(m: &[QVec]) -> Q {
    det(m).abs()
}

/// Orthogonal complement of the span of `vs` inside `Q^n` for the standard
/// dot product.
pub fn orthogonal_complement(vs: &[QVec], n: usize) -> QMat {
    nullspace(vs, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr, qvec};

    #[test]
    fn solves_and_inverts() {
        let m = vec![qvec(&[2, 1]), qvec(&[1, 3])];
        let x = solve(&m, &qvec(&[3, 5])).unwrap();
        assert_eq!(x, vec![qr(4, 5), qr(7, 5)]);
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert_eq!(det(&m), q(5));
    }

    #[test]
    fn kernels_and_inconsistency() {
        let m = vec![qvec(&[1, 1, 1])];
        let k = nullspace(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&m, v).iter().all(|x| x.is_zero()));
        }
        let m2 = vec![qvec(&[1, 1]), qvec(&[2, 2])];
        assert!(solve(&m2, &qvec(&[1, 3])).is_none());
        assert_eq!(rank(&m2), 1);
        assert!(inverse(&m2).is_none());
    }
}
