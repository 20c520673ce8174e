//! Integer lattices given by rational generators: echelon bases, integer
//! kernels and covolumes. Sizes here are tiny (rank at most a handful), so
//! straightforward unimodular row reduction over `BigInt` is used.

use num::bigint::BigInt;
use num::{Integer, Signed, Zero};

use crate::error::{HoroError, Result};
use crate::linalg::{abs_det, rank};
use crate::rational::{common_denominator, Q, QVec};

/// Unimodular row reduction to an echelon form with positive pivots.
/// Returns the nonzero rows. The row space over Z is unchanged.
fn integer_echelon(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        loop {
            // pick the row (from r on) with smallest nonzero |entry| in column c
            let mut best: Option<usize> = None;
            for i in r..rows.len() {
                if !rows[i][c].is_zero()
                    && best.map_or(true, |b| rows[i][c].abs() < rows[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut done = true;
            for i in (r + 1)..rows.len() {
                if !rows[i][c].is_zero() {
                    let f = rows[i][c].div_floor(&rows[r][c]);
                    let pr = rows[r].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pr) {
                        *x -= &f * y;
                    }
                    if !rows[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                if rows[r][c].is_negative() {
                    for x in rows[r].iter_mut() {
                        *x = -x.clone();
                    }
                }
                // reduce entries above the pivot into [0, pivot)
                for i in 0..r {
                    if !rows[i][c].is_zero() {
                        let f = rows[i][c].div_floor(&rows[r][c]);
                        let pr = rows[r].clone();
                        for (x, y) in rows[i].iter_mut().zip(&pr) {
                            *x -= &f * y;
                        }
                    }
                }
                r += 1;
                break;
            }
        }
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}

/// A Z-basis of the lattice generated by `gens` (rational vectors).
pub fn lattice_basis(gens: &[QVec]) -> Vec<QVec> {
    if gens.is_empty() {
        return Vec::new();
    }
    let all: Vec<Q> = gens.iter().flatten().cloned().collect();
    let d = common_denominator(&all);
    let dq = Q::from_integer(d.clone());
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| g.iter().map(|x| (x * &dq).to_integer()).collect())
        .collect();
    integer_echelon(rows)
        .into_iter()
        .map(|row| row.into_iter().map(|x| Q::new(x, d.clone())).collect())
        .collect()
}

/// A Z-basis of {z in Z^k : sum_j z_j cols_j = 0} where `cols` are rational
/// vectors of equal length.
pub fn integer_kernel(cols: &[QVec]) -> Vec<Vec<BigInt>> {
    let k = cols.len();
    if k == 0 {
        return Vec::new();
    }
    let m = cols[0].len();
    let all: Vec<Q> = cols.iter().flatten().cloned().collect();
    let d = Q::from_integer(common_denominator(&all));
    let rows: Vec<Vec<BigInt>> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut row: Vec<BigInt> = c.iter().map(|x| (x * &d).to_integer()).collect();
            row.extend((0..k).map(|i| if i == j { BigInt::from(1) } else { BigInt::zero() }));
            row
        })
        .collect();
    integer_echelon(rows)
        .into_iter()
        .filter(|row| row[..m].iter().all(|x| x.is_zero()))
        .map(|row| row[m..].to_vec())
        .collect()
}

/// Covolume of a full-rank lattice given by a basis.
pub fn covolume(basis: &[QVec]) -> Result<Q> {
    let n = basis.first().map_or(0, |b| b.len());
    if basis.len() != n || rank(basis) != n {
        return Err(HoroError::Lattice(format!(
            "basis of {} vectors does not span dimension {}",
            basis.len(),
            n
        )));
    }
    if n == 0 {
        return Ok(Q::from_integer(BigInt::from(1)));
    }
    Ok(abs_det(basis))
}

/// Basis of the dual lattice {y : <y, b> in Z for all b in basis}.
pub fn dual_basis(basis: &[QVec]) -> Result<Vec<QVec>> {
    let n = basis.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let inv = crate::linalg::inverse(basis)
        .ok_or_else(|| HoroError::Lattice("basis is singular".into()))?;
    // columns of the inverse form the dual basis
    Ok(crate::linalg::transpose(&inv))
}

/// Coordinates of `v` in the given basis if they are all integers.
pub fn integer_coordinates(basis: &[QVec], v: &[Q]) -> Option<Vec<BigInt>> {
    let m = crate::linalg::transpose(basis);
    let c = crate::linalg::solve(&m, v)?;
    if crate::linalg::mat_vec(&m, &c) != v {
        return None;
    }
    c.into_iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr, qvec};

    #[test]
    fn basis_of_redundant_generators() {
        let gens = vec![qvec(&[2, 0]), qvec(&[0, 2]), qvec(&[2, 2]), qvec(&[4, -2])];
        let b = lattice_basis(&gens);
        assert_eq!(b.len(), 2);
        assert_eq!(covolume(&b).unwrap(), q(4));
    }

    #[test]
    fn half_integral_generators() {
        let gens = vec![vec![qr(1, 2), q(0)], vec![q(0), qr(1, 2)], vec![qr(1, 2), qr(-1, 2)]];
        let b = lattice_basis(&gens);
        assert_eq!(covolume(&b).unwrap(), qr(1, 4));
        let d = dual_basis(&b).unwrap();
        assert_eq!(covolume(&d).unwrap(), q(4));
    }

    #[test]
    fn kernel_is_saturated() {
        let cols = vec![qvec(&[2]), qvec(&[4]), qvec(&[6])];
        let k = integer_kernel(&cols);
        assert_eq!(k.len(), 2);
        for z in &k {
            let s: BigInt = z[0].clone() * 2 + z[1].clone() * 4 + z[2].clone() * 6;
            assert!(s.is_zero());
        }
        let basis: Vec<QVec> = k.iter().map(|z| z.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
        // (1,1,-1) lies in the kernel; it must have integer coordinates
        let target = vec![q(1), q(1), q(-1)];
        let m = crate::linalg::transpose(&basis);
        let c = crate::linalg::solve(&m, &target).unwrap();
        assert!(c.iter().all(|x| x.is_integer()));
    }
}
