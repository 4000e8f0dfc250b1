use num_complex::Complex64;

/// Rank of the row set by Gaussian elimination with complete pivoting.
/// Pivots at or below `tol` (relative to the largest entry) count as zero.
pub(crate) fn rank(mut rows: Vec<Vec<Complex64>>, tol: f64) -> usize {
    let n_cols = rows.first().map_or(0, Vec::len);
    let scale = rows.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let threshold = tol * scale;
    let mut cols: Vec<usize> = (0..n_cols).collect();
    let mut rank = 0;
    while rank < rows.len() && rank < n_cols {
        let mut pivot = (rank, rank, 0.0);
        for (r, row) in rows.iter().enumerate().skip(rank) {
            for (ci, &c) in cols.iter().enumerate().skip(rank) {
                let mag = row[c].norm();
                if mag > pivot.2 {
                    pivot = (r, ci, mag);
                }
            }
        }
        if pivot.2 <= threshold {
            break;
        }
        rows.swap(rank, pivot.0);
        cols.swap(rank, pivot.1);
        let pc = cols[rank];
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let inv = pivot_row[pc].inv();
        for row in tail.iter_mut() {
            let factor = row[pc] * inv;
            if factor == Complex64::ZERO {
                continue;
            }
            for &c in &cols[rank..] {
                row[c] -= factor * pivot_row[c];
            }
        }
        rank += 1;
    }
    rank
}
