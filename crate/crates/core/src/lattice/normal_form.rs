//! Hermite and Smith normal forms.
//!
//! Pivot convention (both forms): among the candidate entries, the one with the
//! smallest nonzero absolute value wins, ties broken by lowest row then lowest
//! column. Pivots are made positive.
//!
//! The Hermite form is row-style: `u * m = h` with `h` in row echelon form,
//! pivot columns strictly increasing, zero rows at the bottom, and every entry
//! above a pivot reduced into `[0, pivot)`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::{floor_div, IntMatrix};

/// Row-style Hermite normal form. Returns `(h, u)` with `u * m = h`, `u` unimodular.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    hnf_in_place(&mut h, Some(&mut u));
    (h, u)
}

/// Returns the pivot columns of `h` after reducing it to Hermite form.
pub(crate) fn hnf_in_place(h: &mut IntMatrix, mut u: Option<&mut IntMatrix>) -> Vec<usize> {
    let rows = h.rows();
    let cols = h.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let mut found = false;
        loop {
            let best = (r..rows)
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by(|&a, &b| h.get(a, col).abs().cmp(&h.get(b, col).abs()).then(a.cmp(&b)));
            let Some(p) = best else { break };
            found = true;
            h.swap_rows(r, p);
            if let Some(u) = u.as_deref_mut() {
                u.swap_rows(r, p);
            }
            let mut clean = true;
            for i in r + 1..rows {
                if h.get(i, col).is_zero() {
                    continue;
                }
                let q = -floor_div(h.get(i, col), h.get(r, col));
                h.add_row_multiple(i, r, &q);
                if let Some(u) = u.as_deref_mut() {
                    u.add_row_multiple(i, r, &q);
                }
                if !h.get(i, col).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h.get(r, col).is_negative() {
            h.negate_row(r);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(r);
            }
        }
        for i in 0..r {
            let q = -floor_div(h.get(i, col), h.get(r, col));
            h.add_row_multiple(i, r, &q);
            if let Some(u) = u.as_deref_mut() {
                u.add_row_multiple(i, r, &q);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Smith normal form: `(d, u, v)` with `u * m * v = d`, `d` diagonal,
/// `d[i] | d[i+1]`, all diagonal entries nonnegative.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = Smith::compute(m, true, true);
    let d = s.diagonal_matrix(m.rows(), m.cols());
    (d, s.left.unwrap(), s.right.unwrap())
}

/// Invariant factors (with zeros for the rank deficit up to `min(rows, cols)`).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    Smith::compute(m, false, false).diag
}

pub(crate) struct Smith {
    pub diag: Vec<BigInt>,
    pub left: Option<IntMatrix>,
    pub left_inv: Option<IntMatrix>,
    pub right: Option<IntMatrix>,
}

impl Smith {
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, x) in self.diag.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }

    pub fn compute(m: &IntMatrix, track_left: bool, track_right: bool) -> Smith {
        let rows = m.rows();
        let cols = m.cols();
        let mut a = m.clone();
        let mut left = track_left.then(|| IntMatrix::identity(rows));
        let mut left_inv = track_left.then(|| IntMatrix::identity(rows));
        let mut right = track_right.then(|| IntMatrix::identity(cols));
        let n = rows.min(cols);
        let mut diag = Vec::with_capacity(n);

        for t in 0..n {
            let mut done = false;
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        let x = a.get(i, j);
                        if x.is_zero() {
                            continue;
                        }
                        match best {
                            Some((bi, bj)) if a.get(bi, bj).abs() <= x.abs() => {}
                            _ => best = Some((i, j)),
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    done = true;
                    break;
                };
                a.swap_rows(t, pi);
                if let (Some(l), Some(li)) = (left.as_mut(), left_inv.as_mut()) {
                    l.swap_rows(t, pi);
                    li.swap_cols(t, pi);
                }
                a.swap_cols(t, pj);
                if let Some(r) = right.as_mut() {
                    r.swap_cols(t, pj);
                }

                let mut clean = true;
                for i in t + 1..rows {
                    if a.get(i, t).is_zero() {
                        continue;
                    }
                    let q = floor_div(a.get(i, t), a.get(t, t));
                    let nq = -&q;
                    a.add_row_multiple(i, t, &nq);
                    if let (Some(l), Some(li)) = (left.as_mut(), left_inv.as_mut()) {
                        l.add_row_multiple(i, t, &nq);
                        li.add_col_multiple(t, i, &q);
                    }
                    if !a.get(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..cols {
                    if a.get(t, j).is_zero() {
                        continue;
                    }
                    let q = -floor_div(a.get(t, j), a.get(t, t));
                    a.add_col_multiple(j, t, &q);
                    if let Some(r) = right.as_mut() {
                        r.add_col_multiple(j, t, &q);
                    }
                    if !a.get(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                let pivot = a.get(t, t).clone();
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(a.get(i, j) % &pivot).is_zero()));
                if let Some(i) = bad {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    if let (Some(l), Some(li)) = (left.as_mut(), left_inv.as_mut()) {
                        l.add_row_multiple(t, i, &one);
                        li.add_col_multiple(i, t, &-one);
                    }
                    continue;
                }
                break;
            }
            if done {
                diag.extend(std::iter::repeat_n(BigInt::zero(), n - t));
                break;
            }
            if a.get(t, t).is_negative() {
                a.negate_row(t);
                if let (Some(l), Some(li)) = (left.as_mut(), left_inv.as_mut()) {
                    l.negate_row(t);
                    li.negate_col(t);
                }
            }
            diag.push(a.get(t, t).clone());
        }
        Smith { diag, left, left_inv, right }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn hnf_identity_and_zero_are_fixed() {
        let id = IntMatrix::identity(2);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);

        let z = IntMatrix::zeros(2, 3);
        let (h, u) = hermite_normal_form(&z);
        assert_eq!(h, z);
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_small_example() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[1, 3]]);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(u.mul(&m), h);
        assert!(u.is_unimodular());
        // pivots 1 and 2; the entry above the second pivot is reduced into [0, 2)
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn hnf_empty() {
        let m = IntMatrix::zeros(0, 3);
        let (h, u) = hermite_normal_form(&m);
        assert_eq!(h.rows(), 0);
        assert_eq!(u.rows(), 0);
    }

    #[test]
    fn snf_examples() {
        let (d, u, v) = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(d, IntMatrix::identity(3));
        assert_eq!(u.mul(&IntMatrix::identity(3)).mul(&v), d);

        let m = IntMatrix::from_i64(&[&[4, 0], &[0, 6]]);
        let (d, u, v) = smith_normal_form(&m);
        assert_eq!(d, IntMatrix::from_i64(&[&[2, 0], &[0, 12]]));
        assert_eq!(u.mul(&m).mul(&v), d);
        assert!(u.is_unimodular() && v.is_unimodular());
        assert_eq!(d.determinant().abs(), m.determinant().abs());

        let (d, _, _) = smith_normal_form(&IntMatrix::from_i64(&[&[0]]));
        assert_eq!(d, IntMatrix::from_i64(&[&[0]]));
    }

    #[test]
    fn snf_tracks_left_inverse() {
        let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = Smith::compute(&m, true, true);
        let l = s.left.unwrap();
        let li = s.left_inv.unwrap();
        assert_eq!(l.mul(&li), IntMatrix::identity(3));
        assert_eq!(s.diag, vec![big(2), big(6), big(12)]);
    }
}
