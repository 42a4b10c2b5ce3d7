//! Integer matrix normal forms: row-style Hermite normal form (canonical
//! lattice bases) and the Smith decomposition U·A·V = D.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Int;

/// Row-style Hermite normal form. Rows generate the same lattice as the
/// input; zero rows are dropped. Pivots are positive, entries above a pivot
/// are reduced into [0, pivot), pivot columns strictly increase, so the
/// result is a canonical representative of the row lattice.
pub fn hnf(mut rows: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    let nrows = rows.len();
    if nrows == 0 {
        return rows;
    }
    let ncols = rows[0].len();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // Euclidean reduction of column c among rows r..
        loop {
            let mut best: Option<usize> = None;
            for i in r..nrows {
                if !rows[i][c].is_zero()
                    && best.map_or(true, |b| rows[i][c].abs() < rows[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut any = false;
            for i in r + 1..nrows {
                if !rows[i][c].is_zero() {
                    let q = rows[i][c].div_floor(&rows[r][c]);
                    for j in 0..ncols {
                        let d = &rows[r][j] * &q;
                        rows[i][j] = &rows[i][j] - &d;
                    }
                    if !rows[i][c].is_zero() {
                        any = true;
                    }
                }
            }
            if !any {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if !q.is_zero() {
                for j in 0..ncols {
                    let d = &rows[r][j] * &q;
                    rows[i][j] = &rows[i][j] - &d;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn identity(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect()
}

fn add_row(m: &mut [Vec<Int>], dst: usize, src: usize, f: &Int) {
    let srow = m[src].clone();
    for (x, s) in m[dst].iter_mut().zip(srow.iter()) {
        *x = &*x + &(s * f);
    }
}

fn add_col(m: &mut [Vec<Int>], dst: usize, src: usize, f: &Int) {
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] = &row[dst] + &(&s * f);
    }
}

fn swap_cols(m: &mut [Vec<Int>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Smith decomposition: returns (U, D, V) with U·A·V = D, D diagonal with
/// d_i | d_{i+1} and d_i >= 0, U and V unimodular.
pub fn smith(a: &[Vec<Int>]) -> (Vec<Vec<Int>>, Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let nrows = a.len();
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    let mut d: Vec<Vec<Int>> = a.to_vec();
    let mut u = identity(nrows);
    let mut v = identity(ncols);

    let mut t = 0;
    while t < nrows && t < ncols {
        // Find a nonzero pivot in the remaining submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !d[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);

        'reduce: loop {
            // Clear column t below the pivot.
            for i in t + 1..nrows {
                if !d[i][t].is_zero() {
                    let q = -d[i][t].div_floor(&d[t][t]);
                    add_row(&mut d, i, t, &q);
                    add_row(&mut u, i, t, &q);
                    if !d[i][t].is_zero() {
                        d.swap(t, i);
                        u.swap(t, i);
                        continue 'reduce;
                    }
                }
            }
            // Clear row t to the right of the pivot.
            for j in t + 1..ncols {
                if !d[t][j].is_zero() {
                    let q = -d[t][j].div_floor(&d[t][t]);
                    add_col(&mut d, j, t, &q);
                    add_col(&mut v, j, t, &q);
                    if !d[t][j].is_zero() {
                        swap_cols(&mut d, t, j);
                        swap_cols(&mut v, t, j);
                        continue 'reduce;
                    }
                }
            }
            // Enforce divisibility of the remaining submatrix by the pivot.
            let mut fixed = true;
            'scan: for i in t + 1..nrows {
                for j in t + 1..ncols {
                    if !(&d[i][j] % &d[t][t]).is_zero() {
                        add_row(&mut d, t, i, &Int::one());
                        add_row(&mut u, t, i, &Int::one());
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    (u, d, v)
}

pub fn mat_mul(a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let n = a.len();
    let k = if n == 0 { 0 } else { a[0].len() };
    let m = if b.is_empty() { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

pub fn det(a: &[Vec<Int>]) -> Int {
    // Fraction-free only needed for tiny matrices here; go through rationals.
    use super::Rat;
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Int::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det = &det * &m[c][c];
        let inv = m[c][c].clone().recip();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let d = &m[c][j] * &f;
                    m[i][j] = &m[i][j] - &d;
                }
            }
        }
    }
    debug_assert!(det.is_integer());
    det.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn hnf_is_canonical_across_bases() {
        // Two bases of the same lattice, related by a unimodular row change.
        let a = hnf(m(&[&[2, 2], &[0, 4]]));
        let b = hnf(m(&[&[2, 6], &[2, 10]]));
        assert_eq!(a, b);
        assert_eq!(a, m(&[&[2, 2], &[0, 4]]));
    }

    #[test]
    fn hnf_sign_normalization() {
        assert_eq!(hnf(m(&[&[-3, 2]])), m(&[&[3, -2]]));
    }

    #[test]
    fn smith_diag_3_5() {
        let a = m(&[&[3, 0], &[0, 5]]);
        let (u, d, v) = smith(&a);
        assert_eq!(d, m(&[&[1, 0], &[0, 15]]));
        assert_eq!(mat_mul(&mat_mul(&u, &a), &v), d);
        assert_eq!(det(&u).abs(), int(1));
        assert_eq!(det(&v).abs(), int(1));
    }

    #[test]
    fn smith_zero_matrix() {
        let a = m(&[&[0, 0], &[0, 0]]);
        let (u, d, v) = smith(&a);
        assert_eq!(d, a);
        assert_eq!(u, m(&[&[1, 0], &[0, 1]]));
        assert_eq!(v, m(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn smith_2468() {
        let a = m(&[&[2, 4], &[6, 8]]);
        let (u, d, v) = smith(&a);
        assert_eq!(d, m(&[&[2, 0], &[0, 4]]));
        assert_eq!(mat_mul(&mat_mul(&u, &a), &v), d);
    }
}
