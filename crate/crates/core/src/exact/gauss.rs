use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Int, Rat};

/// A Gaussian rational re + im·i. Houses eigenvalues and frequencies; keeps
/// resonance kernels decidable while covering hyperbolic and elbolic spectra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: Rat,
    pub im: Rat,
}

impl GaussianRational {
    pub fn new(re: Rat, im: Rat) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rat) -> Self {
        Self { re, im: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rat::from_integer(Int::from(n)))
    }

    pub fn from_pair(re: i64, im: i64) -> Self {
        Self::new(
            Rat::from_integer(Int::from(re)),
            Rat::from_integer(Int::from(im)),
        )
    }

    pub fn zero() -> Self {
        Self::real(Rat::zero())
    }

    pub fn one() -> Self {
        Self::real(Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    /// |z|^2 = re^2 + im^2, a rational.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else {
            write!(f, "{}{}{}i", self.re, if self.im.is_negative() { "" } else { "+" }, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn field_ops() {
        let i = GaussianRational::from_pair(0, 1);
        let sq = &i * &i;
        assert_eq!(sq, GaussianRational::from_int(-1));
        let z = GaussianRational::from_pair(1, 1);
        let q = &z / &z;
        assert_eq!(q, GaussianRational::one());
        assert_eq!(z.norm_sq(), rat(2));
    }
}
