//! Exact rank of integer matrices by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rank over `Q` of the matrix with the given rows. Rows must share a length.
pub fn rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[col];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for j in col + 1..ncols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = rows[r][col].clone();
        r += 1;
    }
    r
}

/// Rank of a small-integer matrix.
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    rank(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
}
