use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::polynomial::Polynomial;
use super::rational_function::RationalFunction;
use crate::error::{Error, Result};

/// Truncated expansion `Σ_k c_k N^(e-k)`, `k = 0..order`, around `N = ∞`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentSeries {
    leading_exponent: i64,
    coefficients: Vec<BigRational>,
}

impl LaurentSeries {
    pub fn new(leading_exponent: i64, coefficients: Vec<BigRational>) -> Self {
        Self {
            leading_exponent,
            coefficients,
        }
    }

    pub(super) fn expand(f: &RationalFunction, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::domain("series order must be positive"));
        }
        if f.is_zero() {
            return Ok(Self::new(0, vec![BigRational::zero(); order]));
        }
        let (p, q) = (f.numerator(), f.denominator());
        let (dp, dq) = (p.degree().unwrap(), q.degree().unwrap());
        // In x = 1/N: p(N) = N^dp P(x), q(N) = N^dq Q(x), Q(0) != 0.
        let pc = |k: usize| if k <= dp { p.coeff(dp - k) } else { BigRational::zero() };
        let qc = |k: usize| if k <= dq { q.coeff(dq - k) } else { BigRational::zero() };
        let q0 = qc(0);
        let mut c: Vec<BigRational> = Vec::with_capacity(order);
        for k in 0..order {
            let mut acc = pc(k);
            for i in 1..=k.min(dq) {
                acc -= qc(i) * &c[k - i];
            }
            c.push(acc / &q0);
        }
        Ok(Self::new(dp as i64 - dq as i64, c))
    }

    pub fn leading_exponent(&self) -> i64 {
        self.leading_exponent
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    /// Coefficient of `N^exponent`, zero outside the retained window.
    pub fn coefficient(&self, exponent: i64) -> BigRational {
        let k = self.leading_exponent - exponent;
        if k < 0 {
            return BigRational::zero();
        }
        self.coefficients
            .get(k as usize)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Exponent of the first omitted term.
    pub fn error_exponent(&self) -> i64 {
        self.leading_exponent - self.coefficients.len() as i64
    }

    /// The retained terms as an exact rational function.
    pub fn resum(&self) -> RationalFunction {
        let lowest = self.error_exponent() + 1;
        let shift = (-lowest).max(0) as usize;
        let mut num = Polynomial::zero();
        for (k, c) in self.coefficients.iter().enumerate() {
            let e = self.leading_exponent - k as i64 + shift as i64;
            num = &num + &Polynomial::monomial(c.clone(), e as usize);
        }
        RationalFunction::new(num, Polynomial::monomial(BigRational::from_integer(1.into()), shift))
            .expect("monomial denominator")
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.leading_exponent - k as i64;
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let abs = c.abs();
            match e {
                0 => write!(f, "{abs}")?,
                _ => {
                    if abs != BigRational::from_integer(1.into()) {
                        write!(f, "{abs}*")?;
                    }
                    if e == 1 {
                        write!(f, "N")?;
                    } else {
                        write!(f, "N^{e}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "+O(N^{})", self.error_exponent())
    }
}
