//! Resonance analysis of eigenvalue tuples: resonance relations, the weight
//! lattice Q, toric degree, and the associated torus generators.

use num_traits::{One, Zero};

use crate::exact::{lattice, GaussianRational, Int, IntegerLattice, Rat};
use crate::vfield::PolyVectorField;
use crate::{Error, Result};

/// Eigenvalues of a diagonal linear part, or (in Hamiltonian mode) the
/// frequencies of an integrable Hamiltonian, over the Gaussian rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvalueTuple {
    pub gammas: Vec<GaussianRational>,
    pub hamiltonian: bool,
}

impl EigenvalueTuple {
    pub fn new(gammas: Vec<GaussianRational>) -> Self {
        Self {
            gammas,
            hamiltonian: false,
        }
    }

    pub fn hamiltonian(gammas: Vec<GaussianRational>) -> Self {
        Self {
            gammas,
            hamiltonian: true,
        }
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }
}

/// Result of resonance analysis.
///
/// `relations` holds the resonance relations found up to `degree_bound`
/// (in Hamiltonian mode: a basis of the full kernel, where no positivity
/// constraint applies). `q_lattice` is the saturated lattice of integer
/// weight vectors rho orthogonal to every stored relation and satisfying
/// rho_j = rho_k whenever gamma_j = gamma_k (the equality clause is dropped
/// in Hamiltonian mode). `toric_degree` is its rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResonanceReport {
    pub relations: Vec<Vec<Int>>,
    pub resonance_rank: usize,
    pub q_lattice: IntegerLattice,
    pub toric_degree: usize,
    pub generators: Vec<Vec<Int>>,
    pub degree_bound: u32,
    pub hamiltonian: bool,
}

fn dot_gamma(gammas: &[GaussianRational], c: &[i64]) -> GaussianRational {
    let mut s = GaussianRational::zero();
    for (g, k) in gammas.iter().zip(c.iter()) {
        if *k != 0 {
            s = &s + &g.scale(&Rat::from_integer((*k).into()));
        }
    }
    s
}

/// Enumerate all c in Z^m with c_j >= -1, 1 <= sum c_j <= bound, at most one
/// negative entry, and sum c_j gamma_j = 0.
fn enumerate_relations(gammas: &[GaussianRational], bound: u32) -> Vec<Vec<i64>> {
    let m = gammas.len();
    let bound = bound as i64;
    let mut out = Vec::new();
    let mut cur = vec![0i64; m];
    fn rec(
        gammas: &[GaussianRational],
        bound: i64,
        cur: &mut Vec<i64>,
        pos: usize,
        sum: i64,
        negs: u32,
        out: &mut Vec<Vec<i64>>,
    ) {
        let m = gammas.len();
        if pos == m {
            if sum >= 1 && dot_gamma(gammas, cur).is_zero() {
                out.push(cur.clone());
            }
            return;
        }
        // Remaining entries can add at most -1 apiece; prune on the total.
        let lo = if negs == 0 { -1 } else { 0 };
        let remaining_min: i64 = if negs == 0 { -1 } else { 0 };
        for v in lo..=(bound - sum + 1) {
            let future_min = if v < 0 { 0 } else { remaining_min };
            if sum + v + future_min * ((m - pos - 1) as i64) > bound && v > 0 {
                break;
            }
            cur[pos] = v;
            rec(
                gammas,
                bound,
                cur,
                pos + 1,
                sum + v,
                negs + u32::from(v < 0),
                out,
            );
        }
        cur[pos] = 0;
    }
    rec(gammas, bound, &mut cur, 0, 0, 0, &mut out);
    // Filter: total degree bound applies to the sum.
    out.retain(|c| c.iter().sum::<i64>() <= bound);
    out.sort();
    out
}

fn rational_rows_from_int(rows: &[Vec<Int>]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect()
}

/// Full resonance analysis at a degree bound.
pub fn resonance_report(eigs: &EigenvalueTuple, degree_bound: u32) -> Result<ResonanceReport> {
    if degree_bound < 2 {
        return Err(Error::InvalidArgument("degree bound must be >= 2".into()));
    }
    if eigs.is_empty() {
        return Err(Error::InvalidArgument("empty eigenvalue tuple".into()));
    }
    let m = eigs.len();
    let relations: Vec<Vec<Int>> = if eigs.hamiltonian {
        // Full kernel of the single linear condition, no positivity.
        let kernel = lattice::integer_kernel(&[eigs.gammas.clone()], m);
        kernel.basis().to_vec()
    } else {
        enumerate_relations(&eigs.gammas, degree_bound)
            .into_iter()
            .map(|c| c.into_iter().map(Int::from).collect())
            .collect()
    };
    let resonance_rank = IntegerLattice::from_generators(m, relations.clone())?.rank();

    // Q is the saturated orthogonal complement of the relation span, with the
    // equal-eigenvalue rows rho_j = rho_k adjoined outside Hamiltonian mode.
    let mut rows = rational_rows_from_int(&relations);
    if !eigs.hamiltonian {
        for j in 0..m {
            for k in (j + 1)..m {
                if eigs.gammas[j] == eigs.gammas[k] {
                    let mut row = vec![Rat::zero(); m];
                    row[j] = Rat::one();
                    row[k] = -Rat::one();
                    rows.push(row);
                }
            }
        }
    }
    let q_lattice = lattice::integer_kernel_rational(&rows, m);
    let toric_degree = q_lattice.rank();
    let generators = q_lattice.basis().to_vec();
    Ok(ResonanceReport {
        relations,
        resonance_rank,
        q_lattice,
        toric_degree,
        generators,
        degree_bound,
        hamiltonian: eigs.hamiltonian,
    })
}

/// The diagonal linear vector fields Z_k = sum_j rho^k_j x_j d/dx_j, one per
/// basis vector of Q. Their flows generate the associated torus action.
pub fn torus_generators(report: &ResonanceReport) -> Vec<PolyVectorField> {
    report
        .generators
        .iter()
        .map(|rho| {
            let eigs = rho
                .iter()
                .map(|k| GaussianRational::real(Rat::from_integer(k.clone())))
                .collect();
            PolyVectorField::linear(eigs)
        })
        .collect()
}
