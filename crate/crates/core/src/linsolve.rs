//! Exact linear solving over the Gaussian rationals, used to detect whether a
//! computed bracket lies in the span of a given set of elements.

use crate::scalar::GaussRat;

/// Solve `A x = b` exactly by Gauss-Jordan elimination. Returns one solution
/// with every free variable set to zero, or `None` when the system is
/// inconsistent.
pub(crate) fn solve_min(a: &[Vec<GaussRat>], b: &[GaussRat]) -> Option<Vec<GaussRat>> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "matrix and right-hand side disagree on row count");
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<GaussRat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(src) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, src);
        let inv = m[pivot_row][col].recip().expect("pivot is non-zero");
        for entry in &mut m[pivot_row] {
            *entry = entry.times(&inv);
        }
        let pivot = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (entry, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *entry = entry.minus(&factor.times(p));
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    // A fully eliminated row with a non-zero right-hand side has no solution.
    for row in m.iter().skip(pivot_row) {
        if !row[cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![GaussRat::zero(); cols];
    for (i, &col) in pivot_cols.iter().enumerate() {
        x[col] = m[i][cols].clone();
    }
    Some(x)
}
