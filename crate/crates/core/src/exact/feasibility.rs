//! Exact strict-inequality feasibility by Fourier–Motzkin elimination,
//! with witness reconstruction. Used for cone disjointness and the 2D
//! arrangement angular-gap systems; instances are tiny by construction.

use num_traits::{One, Zero};

use super::{linalg, Rat};

/// Positive rescaling of a row to primitive integer coefficients.
fn normalize_row(row: Vec<Rat>) -> Vec<Rat> {
    use num_integer::Integer;
    let mut lcm = super::Int::one();
    for x in &row {
        lcm = lcm.lcm(x.denom());
    }
    let mut gcd = super::Int::zero();
    for x in &row {
        gcd = gcd.gcd(&(x.numer() * &lcm / x.denom()));
    }
    if gcd.is_zero() {
        return row;
    }
    let f = Rat::new(lcm, gcd);
    row.into_iter().map(|x| x * &f).collect()
}

/// Find y with row·y > 0 for every row, or None. Homogeneous strict system.
pub fn strict_positive(rows: &[Vec<Rat>], nvars: usize) -> Option<Vec<Rat>> {
    if rows.iter().any(|r| r.iter().all(|x| x.is_zero())) {
        return None; // 0 > 0
    }
    if nvars == 0 {
        return if rows.is_empty() { Some(Vec::new()) } else { None };
    }
    let k = nvars - 1;
    let mut lowers: Vec<Vec<Rat>> = Vec::new(); // coeff of y_k > 0: y_k > -rest/a
    let mut uppers: Vec<Vec<Rat>> = Vec::new();
    let mut rest: Vec<Vec<Rat>> = Vec::new();
    for row in rows {
        let a = &row[k];
        if a.is_zero() {
            rest.push(row[..k].to_vec());
        } else {
            // normalized bound expression b with: lower means y_k > b·y',
            // upper means y_k < b·y'.
            let b: Vec<Rat> = row[..k].iter().map(|x| -(x / a)).collect();
            if a > &Rat::zero() {
                lowers.push(b);
            } else {
                uppers.push(b);
            }
        }
    }
    let mut reduced = rest;
    for lo in &lowers {
        for up in &uppers {
            // up·y' - lo·y' > 0
            reduced.push(up.iter().zip(lo.iter()).map(|(u, l)| u - l).collect());
        }
    }
    // Scale each row to its primitive integer form and drop duplicates;
    // positive scaling preserves the solution set and keeps the quadratic
    // growth of elimination in check.
    let reduced: Vec<Vec<Rat>> = {
        let mut seen = std::collections::BTreeSet::new();
        reduced
            .into_iter()
            .map(normalize_row)
            .filter(|r| seen.insert(r.clone()))
            .collect()
    };
    let y_prime = strict_positive(&reduced, k)?;
    let eval = |b: &Vec<Rat>| -> Rat {
        b.iter()
            .zip(y_prime.iter())
            .map(|(c, y)| c * y)
            .fold(Rat::zero(), |a, x| a + x)
    };
    let lo_val = lowers.iter().map(&eval).max();
    let up_val = uppers.iter().map(&eval).min();
    let yk = match (lo_val, up_val) {
        (Some(l), Some(u)) => (&l + &u) / Rat::from_integer(2.into()),
        (Some(l), None) => l + Rat::one(),
        (None, Some(u)) => u - Rat::one(),
        (None, None) => Rat::zero(),
    };
    let mut y = y_prime;
    y.push(yk);
    Some(y)
}

/// Find x in Q^nvars with eq·x = 0 (every row) and strict·x > 0 (every row).
pub fn strict_feasible_with_equalities(
    eq: &[Vec<Rat>],
    strict: &[Vec<Rat>],
    nvars: usize,
) -> Option<Vec<Rat>> {
    let basis = linalg::nullspace(eq, nvars);
    if basis.is_empty() {
        return if strict.is_empty() { Some(vec![Rat::zero(); nvars]) } else { None };
    }
    let d = basis.len();
    let projected: Vec<Vec<Rat>> = strict
        .iter()
        .map(|row| {
            (0..d)
                .map(|j| {
                    row.iter()
                        .zip(basis[j].iter())
                        .map(|(a, b)| a * b)
                        .fold(Rat::zero(), |acc, x| acc + x)
                })
                .collect()
        })
        .collect();
    let y = strict_positive(&projected, d)?;
    let mut x = vec![Rat::zero(); nvars];
    for (j, b) in basis.iter().enumerate() {
        for i in 0..nvars {
            x[i] = &x[i] + &(&b[i] * &y[j]);
        }
    }
    Some(x)
}
