//! Canonical text and JSON renderings of rational functions.
//!
//! Text form factors numerator and denominator over integer roots, e.g.
//! `-5/(N*(N^2-1)*(N^2-4)*(N^2-9))`. Factor order: powers of `N` first, then
//! by increasing `|root|`; for a fixed `|root| = a` the paired `N^2-a^2`
//! comes before `N+a`, which comes before `N-a`. A cofactor without integer
//! roots goes last. The rendering is a pure function of the canonical form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::polynomial::Polynomial;
use super::rational_function::RationalFunction;

struct Factored {
    zero_mult: u32,
    /// root r -> multiplicity of (N - r)
    roots: BTreeMap<i64, u32>,
    rest: Vec<BigInt>,
}

fn horner(p: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

/// Divides by `N - r`; `r` must be a root.
fn deflate(p: &[BigInt], r: i64) -> Vec<BigInt> {
    let r = BigInt::from(r);
    let n = p.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (0..n).rev() {
        carry = &p[k + 1] + carry * &r;
        q[k] = carry.clone();
    }
    q
}

/// Integer-root factorization of a primitive integer polynomial.
fn factor(prim: &[BigInt]) -> Factored {
    let zero_mult = prim.iter().take_while(|c| c.is_zero()).count();
    let mut rest: Vec<BigInt> = prim[zero_mult..].to_vec();
    let mut roots = BTreeMap::new();
    let bound = 4 * rest.len() as i64 + 8;
    for a in 1..=bound {
        for r in [-a, a] {
            while rest.len() > 1 && rest[0].is_multiple_of(&BigInt::from(a)) && horner(&rest, r).is_zero()
            {
                rest = deflate(&rest, r);
                *roots.entry(r).or_insert(0) += 1;
            }
        }
    }
    Factored {
        zero_mult: zero_mult as u32,
        roots,
        rest,
    }
}

fn with_power(base: String, e: u32) -> String {
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

fn factor_items(f: &Factored) -> Vec<String> {
    let mut items = Vec::new();
    if f.zero_mult > 0 {
        items.push(if f.zero_mult == 1 {
            "N".to_string()
        } else {
            format!("N^{}", f.zero_mult)
        });
    }
    let max_abs = f.roots.keys().map(|r| r.abs()).max().unwrap_or(0);
    for a in 1..=max_abs {
        let plus = f.roots.get(&-a).copied().unwrap_or(0); // N + a
        let minus = f.roots.get(&a).copied().unwrap_or(0); // N - a
        let paired = plus.min(minus);
        if paired > 0 {
            items.push(with_power(format!("(N^2-{})", a * a), paired));
        }
        if plus > paired {
            items.push(with_power(format!("(N+{a})"), plus - paired));
        }
        if minus > paired {
            items.push(with_power(format!("(N-{a})"), minus - paired));
        }
    }
    if f.rest.len() > 1 {
        items.push(format!("({})", Polynomial::from_int_coeffs(f.rest.iter().cloned())));
    }
    items
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (cn, pn) = self.numerator().content_primitive();
        let (cd, pd) = self.denominator().content_primitive();
        let k: BigRational = cn / cd;
        let num_items = factor_items(&factor(&pn));
        let mut den_items = Vec::new();
        if !k.denom().is_one() {
            den_items.push(k.denom().to_string());
        }
        den_items.extend(factor_items(&factor(&pd)));

        let c = k.numer();
        if num_items.is_empty() {
            write!(f, "{c}")?;
        } else if c.is_one() {
            write!(f, "{}", num_items.join("*"))?;
        } else if (-c).is_one() {
            write!(f, "-{}", num_items.join("*"))?;
        } else {
            write!(f, "{c}*{}", num_items.join("*"))?;
        }
        match den_items.len() {
            0 => Ok(()),
            1 => write!(f, "/{}", den_items[0]),
            _ => write!(f, "/({})", den_items.join("*")),
        }
    }
}

/// JSON shape: `{"numerator": [...], "denominator": [...]}` with ascending
/// integer coefficient arrays, as produced by [`RationalFunction::to_integer_form`].
#[derive(Serialize, Deserialize)]
struct IntegerForm {
    numerator: Vec<serde_json::Number>,
    denominator: Vec<serde_json::Number>,
}

fn to_numbers(v: Vec<BigInt>) -> Vec<serde_json::Number> {
    v.into_iter()
        .map(|c| serde_json::from_str(&c.to_string()).expect("integer literal is a JSON number"))
        .collect()
}

fn from_numbers<E: serde::de::Error>(v: &[serde_json::Number]) -> Result<Vec<BigInt>, E> {
    v.iter()
        .map(|n| {
            n.to_string()
                .parse::<BigInt>()
                .map_err(|_| E::custom(format!("coefficient {n} is not an integer")))
        })
        .collect()
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (n, d) = self.to_integer_form();
        IntegerForm {
            numerator: to_numbers(n),
            denominator: to_numbers(d),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let form = IntegerForm::deserialize(deserializer)?;
        let n = from_numbers(&form.numerator)?;
        let d = from_numbers(&form.denominator)?;
        RationalFunction::from_integer_form(&n, &d).map_err(D::Error::custom)
    }
}
