use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::polynomial::{forward_owned_binop, LinearProduct, Polynomial};
use super::series::LaurentSeries;
use crate::error::{Error, Result};

/// Exact ratio of polynomials in `N`, kept canonical: the denominator is monic
/// and coprime to the numerator, and zero is `0/1`. Structural equality is
/// therefore equality of functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Reduces `num / den` to canonical form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.exact_div(&g), den.exact_div(&g))
            }
        };
        let lc = den.leading().unwrap().recip();
        Ok(Self {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn zero() -> Self {
        Self {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self {
            num: Polynomial::constant(c),
            den: Polynomial::one(),
        }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn n() -> Self {
        Self::from_polynomial(Polynomial::n())
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// `c / ∏ (N + shift)`
    pub fn over_linear(c: BigRational, den: &LinearProduct) -> Self {
        Self::new(Polynomial::constant(c), den.to_polynomial()).expect("nonzero product")
    }

    /// Sums `Σ c_k / ∏ (N + shift)` over a common least denominator and reduces
    /// once at the end, which is much cheaper than pairwise addition.
    pub fn sum_of_linear_fractions<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BigRational, &'a LinearProduct)>,
    {
        let terms: Vec<_> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        let common = terms
            .iter()
            .fold(LinearProduct::new(), |acc, (_, d)| acc.lcm(d));
        let num: Polynomial = terms
            .iter()
            .map(|(c, d)| d.cofactor_in(&common).to_polynomial().scale(c))
            .sum();
        Self::new(num, common.to_polynomial()).expect("nonzero product")
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Degree of numerator minus degree of denominator; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        Self::new(&self.num * p, self.den.clone()).unwrap()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// Exact value at a positive integer `N`.
    pub fn eval(&self, n: u64) -> Result<BigRational> {
        let x = BigRational::from_integer(n.into());
        let d = self.den.eval(&x);
        if d.is_zero() {
            return Err(Error::Pole(n));
        }
        Ok(self.num.eval(&x) / d)
    }

    /// Expansion in descending powers of `N` as `N → ∞`, `order` terms.
    pub fn series(&self, order: usize) -> Result<LaurentSeries> {
        LaurentSeries::expand(self, order)
    }

    /// Integer form `(p, q)` with `self = p / q`, all coefficients jointly coprime
    /// and `q` with positive leading coefficient. Coefficients are ascending.
    pub fn to_integer_form(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        if self.is_zero() {
            return (Vec::new(), vec![BigInt::one()]);
        }
        let (cn, pn) = self.num.content_primitive();
        let (cd, pd) = self.den.content_primitive();
        // self = (cn / cd) * pn / pd, cn/cd reduced as a rational
        let k = cn / cd;
        let scale = |v: Vec<BigInt>, c: &BigInt| v.into_iter().map(|x| x * c).collect::<Vec<_>>();
        (scale(pn, k.numer()), scale(pd, k.denom()))
    }

    pub fn from_integer_form(num: &[BigInt], den: &[BigInt]) -> Result<Self> {
        Self::new(
            Polynomial::from_int_coeffs(num.iter().cloned()),
            Polynomial::from_int_coeffs(den.iter().cloned()),
        )
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_polynomial(p)
    }
}

impl From<BigRational> for RationalFunction {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let g = self.den.gcd(&rhs.den);
        let a = rhs.den.exact_div(&g);
        let b = self.den.exact_div(&g);
        let num = &(&self.num * &a) + &(&rhs.num * &b);
        RationalFunction::new(num, &self.den * &a).unwrap()
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        -&self
    }
}

forward_owned_binop!(RationalFunction, Add, add);
forward_owned_binop!(RationalFunction, Sub, sub);
forward_owned_binop!(RationalFunction, Mul, mul);

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, f| &acc + &f)
    }
}
