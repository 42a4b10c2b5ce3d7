//! Small dense exact linear algebra over the rationals.

use num_traits::Zero;

use super::Rat;

/// Row-reduce in place, returning pivot column indices.
fn row_reduce(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = if nrows == 0 { 0 } else { rows[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = {
            let piv = rows[r][c].clone();
            piv.recip()
        };
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let d = &rows[r][j] * &f;
                    rows[i][j] = &rows[i][j] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Solve sum_i t_i * cols[i] = w. Returns None when inconsistent; free
/// coordinates (dependent columns) are set to zero.
pub fn solve_columns(cols: &[Vec<Rat>], w: &[Rat]) -> Option<Vec<Rat>> {
    let k = cols.len();
    let n = w.len();
    // Augmented system rows over variables t_0..t_{k-1}.
    let mut rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(w[i].clone());
            row
        })
        .collect();
    let pivots = row_reduce(&mut rows);
    if pivots.last() == Some(&k) {
        return None; // pivot in the augmented column
    }
    let mut t = vec![Rat::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        t[c] = rows[r][k].clone();
    }
    Some(t)
}

/// A basis of { x : rows · x = 0 } in Q^ncols.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let pivots = row_reduce(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::from_integer(1.into());
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -&m[r][free];
        }
        basis.push(v);
    }
    basis
}
