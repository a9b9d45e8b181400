//! Smith normal form of integer matrices: invariant factors for the torsion
//! of integral homology. The reduction picks the remaining entry of smallest
//! magnitude as pivot, clears its row and column, and restores divisibility
//! by folding offending entries back in. Arithmetic runs in checked i128 and
//! escapes to arbitrary precision when a product would overflow, which at
//! desk scale never happens but costs nothing to guard.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Invariant factors `d_1 | d_2 | ...` (nonzero diagonal only, as
/// nonnegative values). The rank of the matrix equals their count.
pub fn invariant_factors(mut rows: Vec<Vec<i64>>) -> Vec<BigInt> {
    let m: Vec<Vec<i128>> = rows
        .drain(..)
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect();
    match snf_i128(m.clone()) {
        Some(d) => d.into_iter().map(BigInt::from).collect(),
        None => snf_bigint(
            m.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        ),
    }
}

fn snf_i128(mut m: Vec<Vec<i128>>) -> Option<Vec<i128>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry_i128(&m, k) else {
            break;
        };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        loop {
            // Clear column k by row operations, then row k by column
            // operations. Any nonzero remainder is strictly smaller in
            // magnitude than the pivot, so re-picking the minimum entry as
            // the new pivot makes progress.
            let mut dirty = false;
            for i in k + 1..rows {
                if m[i][k] == 0 {
                    continue;
                }
                let q = m[i][k] / m[k][k];
                for j in k..cols {
                    let t = q.checked_mul(m[k][j])?;
                    m[i][j] = m[i][j].checked_sub(t)?;
                }
                if m[i][k] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                for j in k + 1..cols {
                    if m[k][j] == 0 {
                        continue;
                    }
                    let q = m[k][j] / m[k][k];
                    for i in k..rows {
                        let t = q.checked_mul(m[i][k])?;
                        m[i][j] = m[i][j].checked_sub(t)?;
                    }
                    if m[k][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
            let (pi, pj) = min_abs_entry_i128(&m, k)?;
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
        }
        // Divisibility: every remaining entry must be a multiple of the pivot.
        let p = m[k][k];
        let offender = (k + 1..rows)
            .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| m[i][j] % p != 0);
        if let Some((i, _)) = offender {
            // Add the offending row to row k and redo this pivot.
            for j in k..cols {
                m[k][j] = m[k][j].checked_add(m[i][j])?;
            }
            continue;
        }
        diag.push(p.abs());
        k += 1;
    }
    Some(diag)
}

fn min_abs_entry_i128(m: &[Vec<i128>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i128, usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(k) {
        for (j, &v) in row.iter().enumerate().skip(k) {
            if v != 0 && best.is_none_or(|(b, _, _)| v.abs() < b) {
                best = Some((v.abs(), i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn snf_bigint(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry_big(&m, k) else {
            break;
        };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                if m[i][k].is_zero() {
                    continue;
                }
                let q = &m[i][k] / &m[k][k];
                for j in k..cols {
                    let t = &q * &m[k][j];
                    m[i][j] -= t;
                }
                if !m[i][k].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                for j in k + 1..cols {
                    if m[k][j].is_zero() {
                        continue;
                    }
                    let q = &m[k][j] / &m[k][k];
                    for i in k..rows {
                        let t = &q * &m[i][k];
                        m[i][j] -= t;
                    }
                    if !m[k][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
            let (pi, pj) = min_abs_entry_big(&m, k).expect("nonzero remainder");
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
        }
        let p = m[k][k].clone();
        let offender = (k + 1..rows)
            .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !(&m[i][j] % &p).is_zero());
        if let Some((i, _)) = offender {
            for j in k..cols {
                let t = m[i][j].clone();
                m[k][j] += t;
            }
            continue;
        }
        diag.push(p.abs());
        k += 1;
    }
    diag
}

fn min_abs_entry_big(m: &[Vec<BigInt>], k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(k) {
        for (j, v) in row.iter().enumerate().skip(k) {
            if !v.is_zero() && best.as_ref().is_none_or(|(b, _, _)| v.abs() < *b) {
                best = Some((v.abs(), i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}
