//! Integer lattices stored via canonical Hermite bases, saturated integer
//! kernels, and primitivity tests.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gauss::GaussianRational;
use super::intmat::{hnf, smith};
use super::{Int, Rat};
use crate::{Error, Result};

/// A sublattice of Z^ambient_dim. The basis is kept in Hermite normal form,
/// so two bases of the same lattice compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    ambient_dim: usize,
    basis: Vec<Vec<Int>>,
}

impl IntegerLattice {
    pub fn from_generators(ambient_dim: usize, generators: Vec<Vec<Int>>) -> Result<Self> {
        for g in &generators {
            if g.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator has length {}, ambient dimension is {}",
                    g.len(),
                    ambient_dim
                )));
            }
        }
        Ok(Self {
            ambient_dim,
            basis: hnf(generators),
        })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                (0..ambient_dim)
                    .map(|j| if i == j { Int::one() } else { Int::zero() })
                    .collect()
            })
            .collect();
        Self { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    /// Coordinates of a rational vector in the basis, when it lies in the
    /// rational span. Uses the echelon structure of the Hermite form.
    pub fn span_coords(&self, w: &[Rat]) -> Option<Vec<Rat>> {
        if w.len() != self.ambient_dim {
            return None;
        }
        let mut rem: Vec<Rat> = w.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("HNF row nonzero");
            let c = &rem[p] / &Rat::from_integer(row[p].clone());
            for j in 0..self.ambient_dim {
                let d = &Rat::from_integer(row[j].clone()) * &c;
                rem[j] = &rem[j] - &d;
            }
            coords.push(c);
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// Integer coordinates of an integer vector in the basis, when the
    /// vector is a lattice member.
    pub fn coords(&self, w: &[Int]) -> Option<Vec<Int>> {
        let wr: Vec<Rat> = w.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let coords = self.span_coords(&wr)?;
        coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn contains(&self, w: &[Int]) -> bool {
        self.coords(w).is_some()
    }

    /// Membership of a rational vector (all basis coordinates integral).
    pub fn contains_rational(&self, w: &[Rat]) -> bool {
        self.span_coords(w)
            .map_or(false, |cs| cs.iter().all(|c| c.is_integer()))
    }

    /// w is primitive in the lattice: w != 0 and w is not k·u for any
    /// integer k >= 2 and u in the lattice. Errors when w is not a member.
    pub fn is_primitive(&self, w: &[Int]) -> Result<bool> {
        let coords = self.coords(w).ok_or_else(|| {
            Error::Membership("vector does not belong to the lattice".into())
        })?;
        if coords.iter().all(|c| c.is_zero()) {
            return Ok(false);
        }
        let g = coords
            .iter()
            .fold(Int::zero(), |acc, c| acc.gcd(c));
        Ok(g.abs() == Int::one())
    }
}

/// The saturated kernel lattice { c in Z^m : M·c = 0 } of a matrix of
/// Gaussian rationals; each row contributes its real and imaginary rational
/// parts. Basis returned in Hermite normal form.
pub fn integer_kernel(rows: &[Vec<GaussianRational>], ncols: usize) -> IntegerLattice {
    let mut rational_rows: Vec<Vec<Rat>> = Vec::new();
    for row in rows {
        assert_eq!(row.len(), ncols, "kernel row width mismatch");
        rational_rows.push(row.iter().map(|z| z.re.clone()).collect());
        rational_rows.push(row.iter().map(|z| z.im.clone()).collect());
    }
    integer_kernel_rational(&rational_rows, ncols)
}

/// Same as [`integer_kernel`] for rational rows.
pub fn integer_kernel_rational(rows: &[Vec<Rat>], ncols: usize) -> IntegerLattice {
    // Clear denominators row by row: the kernel is unchanged.
    let mut int_rows: Vec<Vec<Int>> = Vec::new();
    for row in rows {
        if row.iter().all(|x| x.is_zero()) {
            continue;
        }
        let lcm = row
            .iter()
            .fold(Int::one(), |acc, x| acc.lcm(x.denom()));
        int_rows.push(
            row.iter()
                .map(|x| {
                    let scaled = x * &Rat::from_integer(lcm.clone());
                    debug_assert!(scaled.is_integer());
                    scaled.to_integer()
                })
                .collect(),
        );
    }
    if int_rows.is_empty() {
        return IntegerLattice::full(ncols);
    }
    // U·A·V = D; kernel of A is spanned by the columns of V whose diagonal
    // entry is zero. V unimodular makes the basis saturated.
    let (_, d, v) = smith(&int_rows);
    let nrows = int_rows.len();
    let mut gens = Vec::new();
    for j in 0..ncols {
        let dj = if j < nrows { d[j][j].clone() } else { Int::zero() };
        if dj.is_zero() {
            gens.push((0..ncols).map(|i| v[i][j].clone()).collect());
        }
    }
    IntegerLattice::from_generators(ncols, gens).expect("kernel generators well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn zrow(xs: &[i64]) -> Vec<GaussianRational> {
        xs.iter().map(|&x| GaussianRational::from_int(x)).collect()
    }

    fn iv(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn kernel_symmetric_pair() {
        let l = integer_kernel(&[zrow(&[1, -1])], 2);
        assert_eq!(l.basis(), &[iv(&[1, 1])]);
    }

    #[test]
    fn kernel_2_3() {
        let l = integer_kernel(&[zrow(&[2, 3])], 2);
        assert_eq!(l.basis(), &[iv(&[3, -2])]);
        // Oracle: brute-force scan of small integer pairs with 2a + 3b = 0;
        // every solution must lie in the returned lattice.
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                if 2 * a + 3 * b == 0 {
                    assert!(l.contains(&iv(&[a, b])));
                }
            }
        }
    }

    #[test]
    fn kernel_identity_is_zero_lattice() {
        let l = integer_kernel(&[zrow(&[1, 0]), zrow(&[0, 1])], 2);
        assert_eq!(l.rank(), 0);
        assert_eq!(l, IntegerLattice::zero(2));
    }

    #[test]
    fn kernel_gaussian_entries() {
        // gamma = (i, -i): kernel of (i, -i) is spanned by (1, 1).
        let row = vec![
            GaussianRational::from_pair(0, 1),
            GaussianRational::from_pair(0, -1),
        ];
        let l = integer_kernel(&[row], 2);
        assert_eq!(l.basis(), &[iv(&[1, 1])]);
    }

    #[test]
    fn primitivity() {
        let full = IntegerLattice::full(2);
        assert!(full.is_primitive(&iv(&[0, 1])).unwrap());
        assert!(!full.is_primitive(&iv(&[0, 2])).unwrap());
        let l = IntegerLattice::from_generators(2, vec![iv(&[2, 2]), iv(&[0, 4])]).unwrap();
        assert!(l.is_primitive(&iv(&[2, 2])).unwrap());
        assert!(l.is_primitive(&iv(&[2, 6])).unwrap());
        assert!(!l.is_primitive(&iv(&[4, 4])).unwrap());
        assert!(l.is_primitive(&iv(&[1, 1])).is_err());
    }

    #[test]
    fn saturation() {
        // 2x + 2y = 0 has saturated kernel (1, -1), not (2, -2).
        let l = integer_kernel(&[zrow(&[2, 2])], 2);
        assert_eq!(l.basis(), &[iv(&[1, -1])]);
    }
}
