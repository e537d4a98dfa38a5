//! Results that are either a rational function of `N` or a number at one `N`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::{BigRational, RationalFunction};

/// Where to evaluate: keep `N` formal, or substitute a positive integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Evaluation {
    Symbolic,
    At(u64),
}

impl Evaluation {
    pub fn concrete(self) -> Option<u64> {
        match self {
            Evaluation::Symbolic => None,
            Evaluation::At(n) => Some(n),
        }
    }
}

/// `Symbolic` values come from a rational function valid on the stated
/// range; `Truncated` values come from the per-`N` character sum restricted
/// to `ℓ(λ) ≤ N`, below that range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Symbolic,
    Truncated,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Symbolic => "symbolic",
            Regime::Truncated => "truncated",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exact {
    Function(RationalFunction),
    Number { value: BigRational, regime: Regime },
}

impl Exact {
    pub fn regime(&self) -> Regime {
        match self {
            Exact::Function(_) => Regime::Symbolic,
            Exact::Number { regime, .. } => *regime,
        }
    }

    pub fn function(&self) -> Option<&RationalFunction> {
        match self {
            Exact::Function(f) => Some(f),
            Exact::Number { .. } => None,
        }
    }

    pub fn number(&self) -> Option<&BigRational> {
        match self {
            Exact::Function(_) => None,
            Exact::Number { value, .. } => Some(value),
        }
    }

    pub fn into_function(self) -> Option<RationalFunction> {
        match self {
            Exact::Function(f) => Some(f),
            Exact::Number { .. } => None,
        }
    }

    pub fn into_number(self) -> Option<BigRational> {
        match self {
            Exact::Function(_) => None,
            Exact::Number { value, .. } => Some(value),
        }
    }

    /// A number for concrete results, or the function evaluated at `n`.
    pub fn value_at(&self, n: u64) -> Result<BigRational> {
        match self {
            Exact::Function(f) => f.eval(n),
            Exact::Number { value, .. } => Ok(value.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Exact::Function(f) => f.is_zero(),
            Exact::Number { value, .. } => value == &BigRational::from_integer(0.into()),
        }
    }

    /// Wraps a function result, evaluating it when `eval` is concrete.
    pub(crate) fn from_function(f: RationalFunction, eval: Evaluation) -> Result<Self> {
        Ok(match eval {
            Evaluation::Symbolic => Exact::Function(f),
            Evaluation::At(n) => Exact::Number {
                value: f.eval(n)?,
                regime: Regime::Symbolic,
            },
        })
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact::Function(r) => r.fmt(f),
            Exact::Number { value, .. } => value.fmt(f),
        }
    }
}
