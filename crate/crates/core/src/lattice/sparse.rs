use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::normal_form::invariant_factors;

/// A sparse integer row.
pub type SparseRow = BTreeMap<usize, BigInt>;

/// Nonzero invariant factors of a sparse matrix. Their count is the rank.
///
/// Unit pivots are eliminated first without fill control beyond picking the
/// sparsest column; whatever survives is handed to the dense Smith routine.
pub fn sparse_invariant_factors(rows: Vec<SparseRow>, ncols: usize) -> Vec<BigInt> {
    let mut rows: Vec<Option<SparseRow>> = rows.into_iter().map(|r| (!r.is_empty()).then_some(r)).collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        if let Some(r) = r {
            for &c in r.keys() {
                col_rows[c].insert(i);
            }
        }
    }
    let mut units = 0usize;
    loop {
        let mut progress = false;
        for i in 0..rows.len() {
            let Some(row) = rows[i].as_ref() else { continue };
            let pivot_col = row
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .map(|(&c, _)| c)
                .min_by_key(|&c| (col_rows[c].len(), c));
            let Some(c) = pivot_col else { continue };
            let prow = rows[i].take().unwrap();
            for &k in prow.keys() {
                col_rows[k].remove(&i);
            }
            let pv = prow[&c].clone();
            let targets: Vec<usize> = col_rows[c].iter().copied().collect();
            for t in targets {
                let mut trow = rows[t].take().unwrap();
                // pivot is a unit, so the quotient is exact
                let q = &trow[&c] * &pv;
                for (&k, v) in &prow {
                    let e = trow.entry(k).or_insert_with(BigInt::zero);
                    *e -= &q * v;
                    if e.is_zero() {
                        trow.remove(&k);
                        col_rows[k].remove(&t);
                    } else {
                        col_rows[k].insert(t);
                    }
                }
                if !trow.is_empty() {
                    rows[t] = Some(trow);
                }
            }
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let rest: Vec<SparseRow> = rows.into_iter().flatten().collect();
    let mut out = vec![BigInt::one(); units];
    if !rest.is_empty() {
        let cols: BTreeSet<usize> = rest.iter().flat_map(|r| r.keys().copied()).collect();
        let index: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dense = IntMatrix::zeros(rest.len(), cols.len());
        for (i, r) in rest.iter().enumerate() {
            for (c, v) in r {
                dense.set(i, index[c], v.clone());
            }
        }
        out.extend(invariant_factors(&dense).into_iter().filter(|d| !d.is_zero()));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, BigInt::from(v))).collect()
    }

    #[test]
    fn matches_dense() {
        let rows = vec![row(&[(0, 2), (1, 4), (2, 4)]), row(&[(0, -6), (1, 6), (2, 12)]), row(&[(0, 10), (1, -4), (2, -16)])];
        let f = sparse_invariant_factors(rows, 3);
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn unit_elimination() {
        let rows = vec![row(&[(0, 1), (1, 1)]), row(&[(1, 1), (2, 1)]), row(&[(0, 1), (2, -1)]), SparseRow::new()];
        // rank 2: third row = first - second
        let f = sparse_invariant_factors(rows, 3);
        assert_eq!(f, vec![BigInt::one(), BigInt::one()]);
    }
}
