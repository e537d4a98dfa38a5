//! Self-checks of the combinatorial identities the engine rests on.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::coe::numerator_identity_check;
use crate::combinatorics::{dimension, irreducible_character, partitions, YoungSubgroup};
use crate::error::{Error, Result};
use crate::exact::{factorial, RationalFunction};
use crate::value::Evaluation;
use crate::weingarten::{wg_permutation, wg_young_subgroup_sum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub suite: &'static str,
    pub n: usize,
    pub passed: bool,
    pub detail: String,
}

/// Name and largest `n` of every suite.
pub const SUITES: [(&str, usize); 5] = [
    ("pairing-sum", 6),
    ("type-sum", 6),
    ("character-orthogonality", 8),
    ("dimension-squares", 12),
    ("young-subgroup-sum", 6),
];

fn pairing_sum(n: usize) -> Result<(bool, String)> {
    let id = numerator_identity_check(n)?;
    Ok((id.pairing_sum == id.product, format!("sum_m N^kappa(m) = {}", id.pairing_sum)))
}

fn type_sum(n: usize) -> Result<(bool, String)> {
    let id = numerator_identity_check(n)?;
    Ok((id.type_sum == id.product, format!("type sum = {}", id.type_sum)))
}

/// Row and column orthogonality of the character table of `S_n`.
fn character_orthogonality(n: usize) -> Result<(bool, String)> {
    let ps = partitions(n);
    let table: Vec<Vec<BigInt>> = ps
        .iter()
        .map(|l| ps.iter().map(|rho| irreducible_character(l, rho).map(BigInt::from)).collect())
        .collect::<Result<_>>()?;
    let nf = factorial(n);
    let mut bad = 0usize;
    for a in 0..ps.len() {
        for b in 0..ps.len() {
            let rows: BigInt = (0..ps.len()).map(|r| ps[r].class_size() * &table[a][r] * &table[b][r]).sum();
            let cols: BigInt = (0..ps.len()).map(|l| &table[l][a] * &table[l][b]).sum();
            let (want_rows, want_cols) = if a == b {
                (nf.clone(), ps[a].centralizer_order())
            } else {
                (BigInt::zero(), BigInt::zero())
            };
            bad += usize::from(rows != want_rows) + usize::from(cols != want_cols);
        }
    }
    Ok((bad == 0, format!("{} irreducibles, {bad} failing relations", ps.len())))
}

fn dimension_squares(n: usize) -> Result<(bool, String)> {
    let s: BigInt = partitions(n).iter().map(|l| BigInt::from(dimension(l)).pow(2)).sum();
    Ok((s == factorial(n), format!("sum (f^lambda)^2 = {s}")))
}

/// Kostka closed form against the literal sum of `Wg` over `S_μ`, for every `μ ⊢ n`.
fn young_subgroup_sum(n: usize) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for mu in partitions(n) {
        let closed = wg_young_subgroup_sum(&mu, Evaluation::Symbolic)?.into_function().expect("symbolic");
        let mut brute = RationalFunction::zero();
        for sigma in YoungSubgroup::of_partition(&mu).elements() {
            brute = &brute + &wg_permutation(&sigma, Evaluation::Symbolic)?.into_function().expect("symbolic");
        }
        if closed != brute {
            bad.push(mu.to_string());
        }
    }
    let detail = if bad.is_empty() {
        format!("{} partitions agree", partitions(n).len())
    } else {
        format!("mismatch at mu = {}", bad.join("; "))
    };
    Ok((bad.is_empty(), detail))
}

pub fn run_identity(suite: &str, n: usize) -> Result<IdentityCheck> {
    let (name, cap) = SUITES
        .iter()
        .copied()
        .find(|(s, _)| *s == suite)
        .ok_or_else(|| {
            let known: Vec<&str> = SUITES.iter().map(|s| s.0).collect();
            Error::domain(format!("unknown identity suite `{suite}` (known: {})", known.join(", ")))
        })?;
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if n > cap {
        return Err(Error::Resource {
            what: format!("identity suite {name}"),
            requested: n,
            limit: cap,
            estimate: factorial(n).to_string(),
        });
    }
    let (passed, detail) = match name {
        "pairing-sum" => pairing_sum(n),
        "type-sum" => type_sum(n),
        "character-orthogonality" => character_orthogonality(n),
        "dimension-squares" => dimension_squares(n),
        _ => young_subgroup_sum(n),
    }?;
    Ok(IdentityCheck {
        suite: name,
        n,
        passed,
        detail,
    })
}

/// Runs each suite for `n = 1..=min(max_n, cap)`; an empty `suites` means all.
pub fn run_identities(max_n: usize, suites: &[String]) -> Result<Vec<IdentityCheck>> {
    let selected: Vec<(&str, usize)> = if suites.is_empty() {
        SUITES.to_vec()
    } else {
        suites
            .iter()
            .map(|s| {
                SUITES
                    .iter()
                    .copied()
                    .find(|(name, _)| name == s)
                    .ok_or_else(|| Error::domain(format!("unknown identity suite `{s}`")))
            })
            .collect::<Result<_>>()?
    };
    let mut out = Vec::new();
    for (name, cap) in selected {
        for n in 1..=max_n.min(cap) {
            out.push(run_identity(name, n)?);
        }
    }
    Ok(out)
}
