use std::sync::LazyLock;

use crate::combinatorics::{double_coset_class_counts, partitions, ClassCounts, Partition, Permutation, YoungSubgroup};
use crate::error::{Error, Result};
use crate::exact::{factorial, BigInt, BigRational, LaurentSeries, Polynomial, RationalFunction};
use crate::memo::Memo;
use crate::value::{Evaluation, Exact, Regime};
use crate::weingarten::{wg_class_sum_with_limit, wg_weighted_class_sum_with_limit};

/// Default cap on `n` for `W(μ, N)` with `μ ⊢ n`.
pub const DEFAULT_W_LIMIT: usize = 4;

/// Symbolic `W(μ, N)` keyed by `μ`.
pub(crate) static W_TABLE: LazyLock<Memo<Partition, RationalFunction>> = LazyLock::new(Memo::new);

fn guard(n: usize, limit: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if n > limit {
        return Err(Error::Resource {
            what: "W(μ,N) degree".into(),
            requested: n,
            limit,
            estimate: (factorial(2 * n) * factorial(n) * factorial(n)).to_string(),
        });
    }
    Ok(())
}

/// Cycle types of `στ` over `σ ∈ S_{2μ}` and `τ` in the stabilizer of the odd
/// and even positions of `[2n]`.
fn w_class_counts(mu: &Partition) -> Result<ClassCounts> {
    let m = 2 * mu.size();
    let left = YoungSubgroup::of_partition(&mu.doubled());
    let right = YoungSubgroup::new(vec![(0..m).step_by(2).collect(), (1..m).step_by(2).collect()], m)?;
    double_coset_class_counts(&left, &Permutation::identity(m), &right)
}

/// `W(μ, N) = Σ_{σ ∈ S_{2μ}} Σ_{τ ∈ S*_{2n}} Wg_{2n}(στ)`.
pub fn coe_offdiag_w(mu: &Partition, eval: Evaluation) -> Result<Exact> {
    coe_offdiag_w_with_limit(mu, eval, DEFAULT_W_LIMIT)
}

pub fn coe_offdiag_w_with_limit(mu: &Partition, eval: Evaluation, limit: usize) -> Result<Exact> {
    let n = mu.size();
    guard(n, limit)?;
    let symbolic = || -> Result<RationalFunction> {
        if let Some(f) = W_TABLE.get(mu) {
            return Ok(f);
        }
        let f = wg_class_sum_with_limit(2 * n, &w_class_counts(mu)?, Evaluation::Symbolic, 2 * limit)?
            .into_function()
            .expect("symbolic");
        W_TABLE.insert(mu.clone(), f.clone());
        Ok(f)
    };
    match eval {
        Evaluation::Symbolic => Ok(Exact::Function(symbolic()?)),
        Evaluation::At(big_n) if big_n as usize >= 2 * n => Ok(Exact::Number {
            value: symbolic()?.eval(big_n)?,
            regime: Regime::Symbolic,
        }),
        Evaluation::At(_) => wg_class_sum_with_limit(2 * n, &w_class_counts(mu)?, eval, 2 * limit),
    }
}

/// `E[|v_{ij}|^{2n}]` for `i ≠ j` as
/// `Σ_{μ⊢n} (n!)²/((μ!)² ∏_k m_k(μ)!) · N(N-1)⋯(N-ℓ(μ)+1) · W(μ, N)`.
pub fn coe_offdiag_moment(n: usize, eval: Evaluation) -> Result<Exact> {
    coe_offdiag_moment_with_limit(n, eval, DEFAULT_W_LIMIT)
}

pub fn coe_offdiag_moment_with_limit(n: usize, eval: Evaluation, limit: usize) -> Result<Exact> {
    guard(n, limit)?;
    if let Evaluation::At(big_n) = eval {
        if big_n < 2 {
            return Err(Error::domain("an off-diagonal entry needs N ≥ 2"));
        }
    }
    let nf2 = factorial(n) * factorial(n);
    let mut terms = Vec::new();
    for mu in partitions(n) {
        let mult: BigInt = mu.multiplicities().values().map(|&m| factorial(m)).product();
        let den = mu.factorial_product() * mu.factorial_product() * mult;
        let weight = Polynomial::falling_factorial(mu.len()).scale(&BigRational::new(nf2.clone(), den));
        terms.push((weight, w_class_counts(&mu)?));
    }
    wg_weighted_class_sum_with_limit(2 * n, &terms, eval, 2 * limit)
}

/// Which large-`N` regime `W(μ, N)` falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WOrderClass {
    /// `μ = (1^n)`: `N^{-2n} - n² N^{-2n-1} + ⋯`
    AllOnes,
    /// `μ = (2, 1^{n-2})`: `4 N^{-2n} + ⋯`
    OneDomino,
    /// `O(N^{-2n})`
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WAsymptotics {
    pub class: WOrderClass,
    pub series: LaurentSeries,
    pub leading_exponent: i64,
    pub holds: bool,
}

pub fn w_asymptotic_check(mu: &Partition) -> Result<WAsymptotics> {
    let n = mu.size();
    let f = coe_offdiag_w(mu, Evaluation::Symbolic)?.into_function().expect("symbolic");
    let series = f.series(3)?;
    let e = series.leading_exponent();
    let top = -2 * n as i64;
    let class = if *mu == Partition::column(n) {
        WOrderClass::AllOnes
    } else if n >= 2 && *mu == Partition::transposition(n) {
        WOrderClass::OneDomino
    } else {
        WOrderClass::Other
    };
    let int = |k: i64| BigRational::from_integer(k.into());
    let holds = match class {
        WOrderClass::AllOnes => {
            e == top && series.coefficient(top) == int(1) && series.coefficient(top - 1) == int(-(n as i64 * n as i64))
        }
        WOrderClass::OneDomino => e <= top && series.coefficient(top) == int(4),
        WOrderClass::Other => e <= top && !f.is_zero(),
    };
    Ok(WAsymptotics {
        class,
        series,
        leading_exponent: e,
        holds,
    })
}
