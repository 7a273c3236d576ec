//! Row reduction on rectangular row-major matrices over `F_p`.

use crate::field::PrimeModulus;

pub(crate) type Rows = Vec<Vec<u64>>;

/// In-place reduced row echelon form; returns pivot columns.
pub(crate) fn rref(m: PrimeModulus, rows: &mut Rows) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = m.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = m.mul(*x, inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let f = row[c];
            if i != r && f != 0 {
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = m.sub(*x, m.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// One solution `X` (free variables zero) of `A X = B`, or `None` when the
/// system is inconsistent. `A` is r×c, `B` is r×s, result is c×s.
pub(crate) fn solve(m: PrimeModulus, a: &Rows, b: &Rows) -> Option<Rows> {
    let r = a.len();
    let c = a.first().map_or(0, Vec::len);
    let s = b.first().map_or(0, Vec::len);
    let mut aug: Rows = (0..r)
        .map(|i| a[i].iter().chain(b[i].iter()).copied().collect())
        .collect();
    let pivots = rref(m, &mut aug);
    if pivots.iter().any(|&pc| pc >= c) {
        return None;
    }
    let mut x = vec![vec![0u64; s]; c];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc].copy_from_slice(&aug[row][c..c + s]);
    }
    Some(x)
}

/// Basis of `{x : A x = 0}`.
pub(crate) fn nullspace(m: PrimeModulus, a: &Rows, ncols: usize) -> Rows {
    let mut rows = a.clone();
    let pivots = rref(m, &mut rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = m.neg(rows[row][f]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
pub(crate) fn rank(m: PrimeModulus, a: &Rows) -> usize {
    let mut rows = a.clone();
    rref(m, &mut rows).len()
}

/// Columns given as vectors, turned into row-major rows.
pub(crate) fn columns_to_rows(cols: &[Vec<u64>], nrows: usize) -> Rows {
    (0..nrows)
        .map(|i| cols.iter().map(|c| c[i]).collect())
        .collect()
}
