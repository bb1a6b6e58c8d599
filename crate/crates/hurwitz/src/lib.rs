//! Exact computation of double Hurwitz numbers and their chamber structure.
//!
//! A double Hurwitz number counts degree-d branched covers of the sphere with
//! prescribed ramification profiles η over 0 and ν over ∞, simple branching
//! over s = 2g − 2 + ℓ(η) + ℓ(ν) further fixed points, and each cover weighted
//! by the inverse order of its automorphism group. This crate computes them by
//! four independent routes and checks the routes against each other:
//!
//! * [`oracle`] — enumeration of monodromy tuples in the symmetric group,
//! * [`cutjoin`] — cut-and-join recursion on cycle-type distributions plus an
//!   inclusion–exclusion step extracting the connected count,
//! * [`monodromy`] — weighted sums over leveled monodromy graphs,
//! * [`tropical`] — the degree of the branch map on tropical covers, summed
//!   over combinatorial types.
//!
//! For genus 0 the dependence on (μ, ν) is piecewise polynomial; [`chambers`]
//! builds the wall-and-chamber decomposition, the chamber polynomials, and the
//! wall-crossing formulas (again by three routes that must agree).
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals
//! throughout, no floating point anywhere.

pub mod chambers;
pub mod cli;
pub mod cutjoin;
pub mod matrix;
pub mod monodromy;
pub mod oracle;
pub mod partition;
pub mod perm;
pub mod poly;
pub mod trees;
pub mod tropical;

pub use num::{BigInt, BigRational};
pub use partition::{HurwitzInput, Partition};

/// Exact rational number; always stored reduced with positive denominator.
pub type Rational = BigRational;

use num::{One, Zero};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("profile degrees differ: {0} vs {1}")]
    DegreeMismatch(u64, u64),
    #[error("negative number of simple branch points: s = {0}")]
    NegativeBranchCount(i64),
    #[error("degree {d} exceeds the search guard {limit}; raise the limit to proceed")]
    GuardExceeded { d: u64, limit: u64 },
    #[error("point lies on wall {0}")]
    OnWall(String),
    #[error("chambers are not adjacent across this wall in codimension one")]
    NotAdjacent,
    #[error("chamber signs do not differ exactly at the selected wall")]
    NotAWallPair,
    #[error("need k + l >= 3 ends, got {0}")]
    TooFewEnds(usize),
    #[error("point must have positive entries with equal totals")]
    NotOnSimplex,
    #[error("invalid combinatorial type: {0}")]
    InvalidType(String),
    #[error("substitution images must cover all {expected} variables, got {got}")]
    SubstitutionArity { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient C(n, k) as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Rational from an integer.
pub fn rat<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// Rational n/d.
pub fn ratio<T: Into<BigInt>, U: Into<BigInt>>(n: T, d: U) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Canonical display: "p/q", or just "p" for integers.
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
