//! Polynomial vector fields with diagonal semisimple linear part, exact Lie
//! brackets, and truncated Poincaré–Dulac normalization.

use std::collections::BTreeMap;

use crate::exact::{GaussianRational, Rat};
use crate::{Error, Result};

/// Monomial term key: exponent vector and target component, ordered
/// lexicographically (the elimination order within a degree).
pub type TermKey = (Vec<u32>, usize);

/// A polynomial vector field X = X^(1) + X^(2) + ... whose linear part is
/// diagonal: X^(1) = sum_j gamma_j x_j d/dx_j. Nonlinear terms have total
/// degree >= 2 and nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVectorField {
    dim: usize,
    eigenvalues: Vec<GaussianRational>,
    terms: BTreeMap<TermKey, GaussianRational>,
}

impl PolyVectorField {
    pub fn linear(eigenvalues: Vec<GaussianRational>) -> Self {
        Self {
            dim: eigenvalues.len(),
            eigenvalues,
            terms: BTreeMap::new(),
        }
    }

    pub fn new(
        eigenvalues: Vec<GaussianRational>,
        terms: impl IntoIterator<Item = (Vec<u32>, usize, GaussianRational)>,
    ) -> Result<Self> {
        let mut field = Self::linear(eigenvalues);
        for (exps, comp, coeff) in terms {
            field.add_term(exps, comp, coeff)?;
        }
        Ok(field)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, comp: usize, coeff: GaussianRational) -> Result<()> {
        if exps.len() != self.dim || comp >= self.dim {
            return Err(Error::DimensionMismatch(format!(
                "term ({exps:?}, {comp}) does not fit dimension {}",
                self.dim
            )));
        }
        if exps.iter().sum::<u32>() < 2 {
            return Err(Error::InvalidArgument(
                "nonlinear terms must have total degree >= 2".into(),
            ));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let entry = self
            .terms
            .entry((exps, comp))
            .or_insert_with(GaussianRational::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            // re-fetch key to remove; easiest by retain
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eigenvalues(&self) -> &[GaussianRational] {
        &self.eigenvalues
    }

    pub fn terms(&self) -> &BTreeMap<TermKey, GaussianRational> {
        &self.terms
    }

    pub fn is_linear(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.eigenvalues.iter().all(|g| g.is_zero())
    }

    /// The diagonal semisimple part X^s (linear part alone).
    pub fn semisimple_part(&self) -> Self {
        Self::linear(self.eigenvalues.clone())
    }

    /// All terms including the linear diagonal ones, as (exponents, component,
    /// coefficient).
    fn all_terms(&self) -> Vec<(Vec<u32>, usize, GaussianRational)> {
        let mut out = Vec::with_capacity(self.terms.len() + self.dim);
        for (j, g) in self.eigenvalues.iter().enumerate() {
            if !g.is_zero() {
                let mut e = vec![0u32; self.dim];
                e[j] = 1;
                out.push((e, j, g.clone()));
            }
        }
        for ((e, c), v) in &self.terms {
            out.push((e.clone(), *c, v.clone()));
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let eigenvalues = self.eigenvalues.iter().map(|g| g.scale(r)).collect();
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), v.scale(r)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Self {
            dim: self.dim,
            eigenvalues,
            terms,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch("vector field addition".into()));
        }
        let eigenvalues = self
            .eigenvalues
            .iter()
            .zip(other.eigenvalues.iter())
            .map(|(a, b)| a + b)
            .collect();
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let entry = terms.entry(k.clone()).or_insert_with(GaussianRational::zero);
            *entry = &*entry + v;
        }
        terms.retain(|_, v| !v.is_zero());
        Ok(Self {
            dim: self.dim,
            eigenvalues,
            terms,
        })
    }

    /// The divisor <b, gamma> - gamma_l deciding resonance of the term (b, l).
    pub fn divisor(&self, exps: &[u32], comp: usize) -> GaussianRational {
        let mut s = GaussianRational::zero();
        for (b, g) in exps.iter().zip(self.eigenvalues.iter()) {
            s = &s + &g.scale(&Rat::from_integer((*b).into()));
        }
        &s - &self.eigenvalues[comp]
    }
}

/// Exact Lie bracket [X, Y] truncated to total degree <= n. The bracket of
/// two fields with diagonal linear parts has no linear part.
pub fn lie_bracket(x: &PolyVectorField, y: &PolyVectorField, n: u32) -> Result<PolyVectorField> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch("lie_bracket".into()));
    }
    let dim = x.dim();
    let mut acc: BTreeMap<TermKey, GaussianRational> = BTreeMap::new();
    let push = |acc: &mut BTreeMap<TermKey, GaussianRational>,
                e: Vec<u32>,
                c: usize,
                v: GaussianRational| {
        if v.is_zero() {
            return;
        }
        let entry = acc.entry((e, c)).or_insert_with(GaussianRational::zero);
        *entry = &*entry + &v;
    };
    // [f d_l, g d_k] = f (d_l g) d_k - g (d_k f) d_l on monomials.
    for (b, l, cx) in x.all_terms() {
        for (d, k, cy) in y.all_terms() {
            let deg = b.iter().sum::<u32>() + d.iter().sum::<u32>() - 1;
            if deg > n {
                continue;
            }
            let c = &cx * &cy;
            if d[l] > 0 {
                let mut e: Vec<u32> = b.iter().zip(d.iter()).map(|(p, q)| p + q).collect();
                e[l] -= 1;
                push(&mut acc, e, k, c.scale(&Rat::from_integer(d[l].into())));
            }
            if b[k] > 0 {
                let mut e: Vec<u32> = b.iter().zip(d.iter()).map(|(p, q)| p + q).collect();
                e[k] -= 1;
                push(
                    &mut acc,
                    e,
                    l,
                    (-&c).scale(&Rat::from_integer(b[k].into())),
                );
            }
        }
    }
    acc.retain(|_, v| !v.is_zero());
    // Linear terms cancel exactly for diagonal linear parts.
    debug_assert!(acc.keys().all(|(e, _)| e.iter().sum::<u32>() >= 2));
    Ok(PolyVectorField {
        dim,
        eigenvalues: vec![GaussianRational::zero(); dim],
        terms: acc,
    })
}

/// Record of one elimination step of the normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub exponents: Vec<u32>,
    pub component: usize,
    pub coefficient: GaussianRational,
    pub divisor: GaussianRational,
}

/// exp(ad_Y) X truncated at degree n: X + [Y,X] + [Y,[Y,X]]/2! + ...
fn exp_ad(y: &PolyVectorField, x: &PolyVectorField, n: u32) -> Result<PolyVectorField> {
    let mut acc = x.clone();
    let mut term = x.clone();
    let mut i: i64 = 1;
    loop {
        term = lie_bracket(y, &term, n)?.scale(&Rat::new(1.into(), i.into()));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term)?;
        i += 1;
        if i > n as i64 + 1 {
            break; // cannot happen: each bracket raises the minimum degree
        }
    }
    Ok(acc)
}

/// Truncated Poincaré–Dulac normalization: eliminates nonresonant monomial
/// terms degree by degree (lexicographic within a degree) by time-1 flows of
/// single-monomial fields, propagated as a truncated Lie series. Every
/// surviving term (b, l) with 2 <= |b| <= n satisfies <b,gamma> = gamma_l.
pub fn pd_normalize(x: &PolyVectorField, n: u32) -> Result<(PolyVectorField, Vec<Elimination>)> {
    if n < 2 {
        return Err(Error::InvalidArgument("degree bound must be >= 2".into()));
    }
    let mut cur = x.clone();
    let mut jets = Vec::new();
    for deg in 2..=n {
        loop {
            let next = cur.terms.iter().find_map(|((e, c), v)| {
                if e.iter().sum::<u32>() != deg {
                    return None;
                }
                let div = cur.divisor(e, *c);
                (!div.is_zero()).then(|| (e.clone(), *c, v.clone(), div))
            });
            let Some((exps, comp, coeff, div)) = next else { break };
            let mut gen = PolyVectorField::linear(vec![GaussianRational::zero(); cur.dim]);
            gen.add_term(exps.clone(), comp, &coeff / &div)?;
            cur = exp_ad(&gen, &cur, n)?;
            jets.push(Elimination {
                exponents: exps,
                component: comp,
                coefficient: coeff,
                divisor: div,
            });
        }
    }
    Ok((cur, jets))
}

/// X is in Poincaré–Birkhoff normal form up to degree n iff it commutes with
/// the diagonal part of its linear part.
pub fn is_pb_normal(x: &PolyVectorField, n: u32) -> Result<bool> {
    Ok(lie_bracket(x, &x.semisimple_part(), n)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn bracket_of_commuting_diagonals_vanishes() {
        let x = PolyVectorField::linear(vec![g(1), g(0)]);
        let y = PolyVectorField::linear(vec![g(0), g(1)]);
        assert!(lie_bracket(&x, &y, 5).unwrap().is_zero());
    }

    #[test]
    fn bracket_linear_with_quadratic() {
        // [x1 d1, x1^2 d1] = x1^2 d1 (hand expansion).
        let x = PolyVectorField::linear(vec![g(1)]);
        let y = PolyVectorField::new(vec![g(0)], [(vec![2], 0, g(1))]).unwrap();
        let b = lie_bracket(&x, &y, 3).unwrap();
        let expected = PolyVectorField::new(vec![g(0)], [(vec![2], 0, g(1))]).unwrap();
        assert_eq!(b.terms(), expected.terms());
    }

    #[test]
    fn bracket_antisymmetry_on_self() {
        let x = PolyVectorField::new(vec![g(1), g(2)], [(vec![1, 1], 1, g(3))]).unwrap();
        assert!(lie_bracket(&x, &x, 6).unwrap().is_zero());
    }

    #[test]
    fn normalize_single_variable() {
        // x d/dx + x^2 d/dx normalizes to its linear part.
        let x = PolyVectorField::new(vec![g(1)], [(vec![2], 0, g(1))]).unwrap();
        let (nf, jets) = pd_normalize(&x, 4).unwrap();
        assert!(nf.is_linear());
        assert_eq!(nf.eigenvalues(), &[g(1)]);
        assert_eq!(jets.len(), 1);
        assert_eq!(jets[0].divisor, g(1));
    }

    #[test]
    fn resonant_term_survives() {
        // x1 d1 + 2 x2 d2 + 5 x1^2 d2: divisor 2*1 - 2 = 0, resonant.
        let x = PolyVectorField::new(vec![g(1), g(2)], [(vec![2, 0], 1, g(5))]).unwrap();
        let (nf, jets) = pd_normalize(&x, 3).unwrap();
        assert_eq!(nf, x);
        assert!(jets.is_empty());
    }

    #[test]
    fn linear_field_unchanged() {
        let x = PolyVectorField::linear(vec![g(2), g(3)]);
        let (nf, jets) = pd_normalize(&x, 5).unwrap();
        assert_eq!(nf, x);
        assert!(jets.is_empty());
    }

    #[test]
    fn pb_normal_checks() {
        let bad = PolyVectorField::new(vec![g(1), g(2)], [(vec![1, 1], 1, g(1))]).unwrap();
        assert!(!is_pb_normal(&bad, 4).unwrap());
        let lin = PolyVectorField::linear(vec![g(1), g(2)]);
        assert!(is_pb_normal(&lin, 4).unwrap());
        let (nf, _) = pd_normalize(&bad, 4).unwrap();
        assert!(is_pb_normal(&nf, 4).unwrap());
    }
}
