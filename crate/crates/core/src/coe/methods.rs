//! Interchangeable routes to a COE moment, registered by name.

use crate::error::{Error, Result};
use crate::value::{Evaluation, Exact};

use super::{coe_diag_moment_closed, coe_joint_moment, coe_joint_moment_enumerated, coe_offdiag_moment, CoeMomentSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeQuery {
    /// `E[|v_11|^{2n}]`
    Diagonal { n: usize },
    /// `E[|v_12|^{2n}]`
    OffDiagonal { n: usize },
    Joint(CoeMomentSpec),
}

impl CoeQuery {
    pub fn spec(&self) -> Result<CoeMomentSpec> {
        match self {
            CoeQuery::Diagonal { n } => CoeMomentSpec::diagonal(*n, 1),
            CoeQuery::OffDiagonal { n } => CoeMomentSpec::power(*n, 1, 2),
            CoeQuery::Joint(spec) => Ok(spec.clone()),
        }
    }
}

pub trait CoeMomentMethod: Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn compute(&self, query: &CoeQuery, eval: Evaluation) -> Result<Exact>;
}

struct Closed;
struct Expansion;
struct Enumerate;

impl CoeMomentMethod for Closed {
    fn name(&self) -> &'static str {
        "closed"
    }

    fn description(&self) -> &'static str {
        "closed diagonal formula; W(mu,N) sum off the diagonal"
    }

    fn compute(&self, query: &CoeQuery, eval: Evaluation) -> Result<Exact> {
        match query {
            CoeQuery::Diagonal { n } => {
                if eval == Evaluation::At(0) {
                    return Err(Error::domain("N must be a positive integer"));
                }
                Exact::from_function(coe_diag_moment_closed(*n)?, eval)
            }
            CoeQuery::OffDiagonal { n } => coe_offdiag_moment(*n, eval),
            CoeQuery::Joint(_) => Err(Error::domain(
                "the closed method covers only diagonal and off-diagonal powers; use expansion",
            )),
        }
    }
}

impl CoeMomentMethod for Expansion {
    fn name(&self) -> &'static str {
        "expansion"
    }

    fn description(&self) -> &'static str {
        "v = U^T U expansion summed over set-partition patterns of k"
    }

    fn compute(&self, query: &CoeQuery, eval: Evaluation) -> Result<Exact> {
        coe_joint_moment(&query.spec()?, eval)
    }
}

impl CoeMomentMethod for Enumerate {
    fn name(&self) -> &'static str {
        "enumerate"
    }

    fn description(&self) -> &'static str {
        "literal sum over every k in [N]^n (concrete N only)"
    }

    fn compute(&self, query: &CoeQuery, eval: Evaluation) -> Result<Exact> {
        match eval {
            Evaluation::Symbolic => Err(Error::domain("the enumerate method needs a concrete N")),
            Evaluation::At(big_n) => coe_joint_moment_enumerated(&query.spec()?, big_n),
        }
    }
}

static METHODS: [&dyn CoeMomentMethod; 3] = [&Closed, &Expansion, &Enumerate];

pub fn coe_methods() -> &'static [&'static dyn CoeMomentMethod] {
    &METHODS
}

pub fn coe_method(name: &str) -> Result<&'static dyn CoeMomentMethod> {
    METHODS.iter().copied().find(|m| m.name() == name).ok_or_else(|| {
        let known: Vec<&str> = METHODS.iter().map(|m| m.name()).collect();
        Error::domain(format!("unknown method `{name}` (known: {})", known.join(", ")))
    })
}
