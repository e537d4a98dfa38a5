use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Univariate polynomial in the dimension symbol `N` with exact rational
/// coefficients, stored in ascending degree. Trailing zeros are always trimmed,
/// so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// The monomial `N`.
    pub fn n() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// `N + c`
    pub fn linear(c: i64) -> Self {
        Self::from_coeffs(vec![BigRational::from_integer(c.into()), BigRational::one()])
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Ascending integer coefficients.
    pub fn from_int_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `N (N-1) ... (N-k+1)`; the empty product for `k = 0`.
    pub fn falling_factorial(k: usize) -> Self {
        (0..k as i64).map(|i| Self::linear(-i)).product()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `N^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Euclidean division over the rationals. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Splits `self = content * primitive` where `primitive` has coprime integer
    /// coefficients and a positive leading coefficient. Zero gives `(0, [])`.
    pub fn content_primitive(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::zero(), Vec::new());
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.into_iter().map(|c| c / &g).collect();
        (BigRational::new(g, den_lcm), prim)
    }

    /// Monic greatest common divisor over the rationals, computed with a
    /// primitive pseudo-remainder sequence over the integers. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (mut a, mut b) = (self.content_primitive().1, other.content_primitive().1);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.len() == 1 {
                return Self::one();
            }
            let r = pseudo_rem(&a, &b);
            if r.is_empty() {
                return Self::from_int_coeffs(b).monic();
            }
            a = b;
            b = primitive_int(r);
        }
    }
}

fn trim_int(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Remainder of `lc(b)^k * a` by `b` for a suitable `k`, with integer arithmetic.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim_int(&mut r);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        trim_int(&mut r);
    }
    r
}

fn primitive_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    write!(f, "N")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}
pub(crate) use forward_owned_binop;

forward_owned_binop!(Polynomial, Add, add);
forward_owned_binop!(Polynomial, Sub, sub);
forward_owned_binop!(Polynomial, Mul, mul);

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| &acc * &p)
    }
}

/// A product `∏ (N + c)^e` kept in factored form, keyed by the shift `c`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LinearProduct {
    factors: BTreeMap<i64, u32>,
}

impl LinearProduct {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, shift: i64) {
        *self.factors.entry(shift).or_insert(0) += 1;
    }

    pub fn factors(&self) -> &BTreeMap<i64, u32> {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.values().sum()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (&c, &e) in &other.factors {
            let slot = factors.entry(c).or_insert(0);
            *slot = (*slot).max(e);
        }
        Self { factors }
    }

    /// `multiple / self`, assuming `self` divides `multiple`.
    pub fn cofactor_in(&self, multiple: &Self) -> Self {
        let factors = multiple
            .factors
            .iter()
            .filter_map(|(&c, &e)| {
                let mine = self.factors.get(&c).copied().unwrap_or(0);
                debug_assert!(mine <= e);
                (e > mine).then_some((c, e - mine))
            })
            .collect();
        Self { factors }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        self.factors
            .iter()
            .map(|(&c, &e)| Polynomial::linear(c).pow(e))
            .product()
    }
}

impl FromIterator<i64> for LinearProduct {
    fn from_iter<T: IntoIterator<Item = i64>>(iter: T) -> Self {
        let mut p = Self::new();
        for c in iter {
            p.push(c);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_int_coeffs(c.iter().copied())
    }

    #[test]
    fn gcd_finds_common_linear_factor() {
        // (N+1)(N+3) and 2(N+1)
        let a = p(&[3, 4, 1]);
        let b = p(&[2, 2]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(a.gcd(&p(&[5])), Polynomial::one());
        assert_eq!(Polynomial::zero().gcd(&b), p(&[1, 1]));
    }

    #[test]
    fn gcd_of_high_degree_products() {
        let common = LinearProduct::from_iter([-3, -1, 0, 0, 2]).to_polynomial();
        let a = &common * &p(&[7, 0, 1]);
        let b = &common * &LinearProduct::from_iter([5, 6]).to_polynomial();
        assert_eq!(a.gcd(&b), common);
    }

    #[test]
    fn div_rem_and_eval() {
        let a = p(&[-1, 0, 1]);
        let (q, r) = a.div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[0, 2]));
        assert_eq!(q, Polynomial::from_coeffs(vec![BigRational::zero(), BigRational::new(1.into(), 2.into())]));
        assert_eq!(r, p(&[1]));
        assert_eq!(a.eval(&BigRational::from_integer(5.into())), BigRational::from_integer(24.into()));
    }

    #[test]
    fn content_primitive_is_signed_and_reduced() {
        let half = BigRational::new(1.into(), 2.into());
        let a = Polynomial::from_coeffs(vec![-half.clone(), BigRational::zero(), -half * BigRational::from_integer(3.into())]);
        let (c, prim) = a.content_primitive();
        assert_eq!(c, BigRational::new((-1).into(), 2.into()));
        assert_eq!(prim, vec![BigInt::from(1), BigInt::from(0), BigInt::from(3)]);
    }

    #[test]
    fn falling_factorial_and_display() {
        assert_eq!(Polynomial::falling_factorial(3), p(&[0, 2, -3, 1]));
        assert_eq!(Polynomial::falling_factorial(0), Polynomial::one());
        assert_eq!(p(&[6, 0, -8, 0, 1]).to_string(), "N^4-8*N^2+6");
        assert_eq!(p(&[-3, 0, 2]).to_string(), "2*N^2-3");
        assert_eq!(p(&[0, -1]).to_string(), "-N");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn linear_product_lcm() {
        let a = LinearProduct::from_iter([0, 1, 1]);
        let b = LinearProduct::from_iter([1, 2]);
        let l = a.lcm(&b);
        assert_eq!(l, LinearProduct::from_iter([0, 1, 1, 2]));
        assert_eq!(a.cofactor_in(&l), LinearProduct::from_iter([2]));
        assert_eq!(l.degree(), 4);
    }
}
