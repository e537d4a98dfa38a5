//! Exact rational numbers, polynomials and rational functions in the
//! dimension symbol `N`, with large-`N` series expansion.

mod polynomial;
mod rational_function;
mod render;
mod series;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use polynomial::{LinearProduct, Polynomial};
pub use rational_function::RationalFunction;
pub use series::LaurentSeries;

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

/// `(2k-1)!!`, with `(-1)!! = 1`.
pub fn double_factorial_odd(k: usize) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, j| acc * (2 * j - 1))
}

pub fn rational(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn integer(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}
