//! Exact linear algebra: reduced row echelon form over the constant field and
//! Hermite normal form over the integers.

use crate::constfield::Const;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// In-place reduced row echelon form; returns the pivot column of each
/// surviving row. Zero rows are dropped.
pub fn rref(rows: &mut Vec<Vec<Const>>) -> Vec<usize> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(sel) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, sel);
        let inv = rows[row][col].inv().expect("pivot is nonzero");
        for c in col..ncols {
            rows[row][c] = rows[row][c].mul(&inv);
        }
        for r in 0..rows.len() {
            if r != row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let t = rows[row][c].mul(&factor);
                    rows[r][c] = rows[r][c].sub(&t);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    rows.truncate(row);
    pivots
}

/// Row-style Hermite normal form of an integer matrix. Pivots are positive,
/// entries above a pivot are reduced into [0, pivot), zero rows are dropped.
pub fn hnf(rows: &mut Vec<Vec<BigInt>>) {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut row = 0;
    for col in 0..ncols {
        // eliminate below via the extended Euclidean process
        loop {
            let mut nonzero: Vec<usize> = (row..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .collect();
            if nonzero.is_empty() {
                break;
            }
            if nonzero.len() == 1 {
                rows.swap(row, nonzero[0]);
                break;
            }
            // pick the entry of least absolute value and reduce the others
            nonzero.sort_by_key(|&r| rows[r][col].abs());
            let base = nonzero[0];
            for &r in &nonzero[1..] {
                let q = rows[r][col].div_floor(&rows[base][col]);
                for c in 0..ncols {
                    let t = &rows[base][c] * &q;
                    rows[r][c] -= t;
                }
            }
        }
        if row >= rows.len() || rows[row][col].is_zero() {
            continue;
        }
        if rows[row][col].is_negative() {
            for c in 0..ncols {
                rows[row][c] = -rows[row][c].clone();
            }
        }
        // reduce entries above the pivot
        let pivot = rows[row][col].clone();
        for r in 0..row {
            if !rows[r][col].is_zero() {
                let q = rows[r][col].div_floor(&pivot);
                for c in 0..ncols {
                    let t = &rows[row][c] * &q;
                    rows[r][c] -= t;
                }
            }
        }
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
}
