//! Exact rational and Gaussian-rational arithmetic with the integer-lattice
//! algorithms (Hermite and Smith normal forms, saturated kernels) used by
//! every other module.

pub mod feasibility;
pub mod gauss;
pub mod intmat;
pub mod lattice;
pub mod linalg;

pub use gauss::GaussianRational;
pub use lattice::IntegerLattice;

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Shorthand for p/q; panics on q = 0.
pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn int(n: i64) -> Int {
    Int::from(n)
}
