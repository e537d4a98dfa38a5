//! The unitary Weingarten function `Wg_n^{U(N)}`, exact in `N`.

use std::sync::LazyLock;

use num_traits::{One, Zero};

use crate::combinatorics::{dimension, irreducible_character, kostka, partitions, ClassCounts, Partition, Permutation};
use crate::error::{Error, Result};
use crate::exact::{factorial, BigInt, BigRational, LaurentSeries, LinearProduct, Polynomial, RationalFunction};
use crate::memo::Memo;
use crate::value::{Evaluation, Exact, Regime};

/// Largest `n` accepted by default.
pub const DEFAULT_WG_LIMIT: usize = 10;

/// Symbolic `Wg_n(ρ)` keyed by `ρ ⊢ n`; every entry sums over all `λ ⊢ n`.
pub(crate) static WG: LazyLock<Memo<Partition, RationalFunction>> = LazyLock::new(Memo::new);

fn guard(n: usize, limit: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("Weingarten degree must be positive"));
    }
    if n > limit {
        return Err(Error::Resource {
            what: "Weingarten degree".into(),
            requested: n,
            limit,
            estimate: factorial(n).to_string(),
        });
    }
    Ok(())
}

fn check_class(n: usize, rho: &Partition) -> Result<()> {
    if rho.size() != n {
        return Err(Error::domain(format!("cycle type ({rho}) is not a partition of {n}")));
    }
    Ok(())
}

fn check_dimension(big_n: u64) -> Result<()> {
    if big_n == 0 {
        return Err(Error::domain("N must be a positive integer"));
    }
    Ok(())
}

fn content_denominator(lambda: &Partition) -> LinearProduct {
    lambda.contents().collect()
}

fn content_value(lambda: &Partition, big_n: u64) -> BigInt {
    lambda.contents().map(|c| BigInt::from(big_n as i64 + c)).product()
}

/// `Σ_λ P_λ(N) / ∏_{(i,j)∈λ} (N+j-i)`: over all `λ ⊢ n` when symbolic, over
/// `ℓ(λ) ≤ N` at a concrete `N`.
fn lambda_sum(n: usize, eval: Evaluation, numerator: impl Fn(&Partition) -> Result<Polynomial>) -> Result<Exact> {
    match eval {
        Evaluation::Symbolic => {
            let mut terms = Vec::new();
            for lambda in partitions(n) {
                let p = numerator(&lambda)?;
                if !p.is_zero() {
                    terms.push((p, content_denominator(&lambda)));
                }
            }
            let common = terms.iter().fold(LinearProduct::new(), |acc, (_, d)| acc.lcm(d));
            let num: Polynomial = terms
                .iter()
                .map(|(p, d)| p * &d.cofactor_in(&common).to_polynomial())
                .sum();
            Ok(Exact::Function(RationalFunction::new(num, common.to_polynomial())?))
        }
        Evaluation::At(big_n) => {
            check_dimension(big_n)?;
            let x = BigRational::from_integer(big_n.into());
            let mut value = BigRational::zero();
            for lambda in partitions(n).iter().filter(|l| l.len() as u64 <= big_n) {
                let p = numerator(lambda)?;
                if !p.is_zero() {
                    value += p.eval(&x) / BigRational::from_integer(content_value(lambda, big_n));
                }
            }
            let regime = if big_n as usize >= n { Regime::Symbolic } else { Regime::Truncated };
            Ok(Exact::Number { value, regime })
        }
    }
}

fn class_weight(n: usize, lambda: &Partition, counts: &ClassCounts) -> Result<BigRational> {
    let mut s = BigInt::zero();
    for (rho, k) in counts.iter() {
        s += k * irreducible_character(lambda, rho)?;
    }
    Ok(BigRational::new(s * dimension(lambda), factorial(n)))
}

/// `Wg_n(ρ)` as a reduced rational function, valid for integers `N ≥ n`.
pub fn wg_symbolic(n: usize, rho: &Partition) -> Result<RationalFunction> {
    wg_symbolic_with_limit(n, rho, DEFAULT_WG_LIMIT)
}

pub fn wg_symbolic_with_limit(n: usize, rho: &Partition, limit: usize) -> Result<RationalFunction> {
    guard(n, limit)?;
    check_class(n, rho)?;
    if let Some(f) = WG.get(rho) {
        return Ok(f);
    }
    let counts: ClassCounts = [(rho.clone(), BigInt::one())].into_iter().collect();
    let f = lambda_sum(n, Evaluation::Symbolic, |l| Ok(Polynomial::constant(class_weight(n, l, &counts)?)))?
        .into_function()
        .expect("symbolic");
    WG.insert(rho.clone(), f.clone());
    Ok(f)
}

/// `Wg_n(ρ)` at a concrete `N`, truncated to `ℓ(λ) ≤ N` when `N < n`.
pub fn wg_eval(n: usize, rho: &Partition, big_n: u64) -> Result<(BigRational, Regime)> {
    wg_eval_with_limit(n, rho, big_n, DEFAULT_WG_LIMIT)
}

pub fn wg_eval_with_limit(n: usize, rho: &Partition, big_n: u64, limit: usize) -> Result<(BigRational, Regime)> {
    guard(n, limit)?;
    check_class(n, rho)?;
    check_dimension(big_n)?;
    if big_n as usize >= n {
        return Ok((wg_symbolic_with_limit(n, rho, limit)?.eval(big_n)?, Regime::Symbolic));
    }
    let counts: ClassCounts = [(rho.clone(), BigInt::one())].into_iter().collect();
    match wg_class_sum_with_limit(n, &counts, Evaluation::At(big_n), limit)? {
        Exact::Number { value, regime } => Ok((value, regime)),
        Exact::Function(_) => unreachable!(),
    }
}

pub fn wg(n: usize, rho: &Partition, eval: Evaluation) -> Result<Exact> {
    match eval {
        Evaluation::Symbolic => Ok(Exact::Function(wg_symbolic(n, rho)?)),
        Evaluation::At(big_n) => {
            let (value, regime) = wg_eval(n, rho, big_n)?;
            Ok(Exact::Number { value, regime })
        }
    }
}

pub fn wg_permutation(sigma: &Permutation, eval: Evaluation) -> Result<Exact> {
    wg(sigma.degree(), &sigma.cycle_type(), eval)
}

/// `Σ_ρ c_ρ Wg_n(ρ)` for a multiset of classes, assembled in the character
/// basis so the result is normalized only once.
pub fn wg_class_sum(n: usize, counts: &ClassCounts, eval: Evaluation) -> Result<Exact> {
    wg_class_sum_with_limit(n, counts, eval, DEFAULT_WG_LIMIT)
}

pub fn wg_class_sum_with_limit(n: usize, counts: &ClassCounts, eval: Evaluation, limit: usize) -> Result<Exact> {
    wg_weighted_class_sum_with_limit(n, &[(Polynomial::one(), counts.clone())], eval, limit)
}

/// `Σ_t P_t(N) Σ_ρ c_{t,ρ} Wg_n(ρ)` with polynomial weights `P_t`.
pub fn wg_weighted_class_sum(n: usize, terms: &[(Polynomial, ClassCounts)], eval: Evaluation) -> Result<Exact> {
    wg_weighted_class_sum_with_limit(n, terms, eval, DEFAULT_WG_LIMIT)
}

pub fn wg_weighted_class_sum_with_limit(
    n: usize,
    terms: &[(Polynomial, ClassCounts)],
    eval: Evaluation,
    limit: usize,
) -> Result<Exact> {
    guard(n, limit)?;
    for (_, counts) in terms {
        for (rho, _) in counts.iter() {
            check_class(n, rho)?;
        }
    }
    lambda_sum(n, eval, |lambda| {
        let mut p = Polynomial::zero();
        for (weight, counts) in terms {
            let w = class_weight(n, lambda, counts)?;
            if !w.is_zero() {
                p = &p + &weight.scale(&w);
            }
        }
        Ok(p)
    })
}

/// `Σ_{σ ∈ S_μ} Wg_n(σ) = (μ!/n!) Σ_λ f^λ K_{λμ} / ∏(N+j-i)`.
pub fn wg_young_subgroup_sum(mu: &Partition, eval: Evaluation) -> Result<Exact> {
    wg_young_subgroup_sum_with_limit(mu, eval, DEFAULT_WG_LIMIT)
}

pub fn wg_young_subgroup_sum_with_limit(mu: &Partition, eval: Evaluation, limit: usize) -> Result<Exact> {
    let n = mu.size();
    guard(n, limit)?;
    let scale = BigRational::new(mu.factorial_product(), factorial(n));
    lambda_sum(n, eval, |lambda| {
        let k = kostka(lambda, mu)?;
        Ok(Polynomial::constant(&scale * BigInt::from(dimension(lambda) * k)))
    })
}

/// Which large-`N` regime a class falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WgOrderClass {
    /// `N^{-n} + O(N^{-n-2})`
    Identity,
    /// `-N^{-n-1} + O(N^{-n-3})`
    Transposition,
    /// `O(N^{-n-2})`
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WgAsymptotics {
    pub class: WgOrderClass,
    pub series: LaurentSeries,
    pub leading_exponent: i64,
    pub leading_coefficient: BigRational,
    pub holds: bool,
}

pub const ASYMPTOTIC_CHECK_LIMIT: usize = 8;

/// Expands `Wg_n(ρ)` in `1/N` and compares with the three-way classification
/// by the number of cycles of `ρ`.
pub fn wg_asymptotic_check(n: usize, rho: &Partition) -> Result<WgAsymptotics> {
    guard(n, ASYMPTOTIC_CHECK_LIMIT)?;
    check_class(n, rho)?;
    let series = wg_symbolic(n, rho)?.series(3)?;
    let e = series.leading_exponent();
    let c = series.coefficients()[0].clone();
    let n_i = n as i64;
    let class = if *rho == Partition::column(n) {
        WgOrderClass::Identity
    } else if n >= 2 && *rho == Partition::transposition(n) {
        WgOrderClass::Transposition
    } else {
        WgOrderClass::Other
    };
    let holds = match class {
        WgOrderClass::Identity => e == -n_i && c.is_one() && series.coefficient(-n_i - 1).is_zero(),
        WgOrderClass::Transposition => {
            e == -n_i - 1 && c == -BigRational::one() && series.coefficient(-n_i - 2).is_zero()
        }
        WgOrderClass::Other => e <= -n_i - 2,
    };
    Ok(WgAsymptotics {
        class,
        series,
        leading_exponent: e,
        leading_coefficient: c,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{all_permutations, YoungSubgroup};
    use crate::exact::{integer, rational};
    use proptest::prelude::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_int_coeffs(num.to_vec()), Polynomial::from_int_coeffs(den.to_vec())).unwrap()
    }

    /// `N(N^2-1)(N^2-4)(N^2-9)` times `N^extra`
    fn wg4_den(extra: usize) -> Polynomial {
        let mut p = Polynomial::n();
        for a in 1..=3 {
            p = &p * &(&Polynomial::monomial(integer(1), 2) - &Polynomial::from_int(a * a));
        }
        &p * &Polynomial::n().pow(extra as u32)
    }

    #[test]
    fn small_values() {
        assert_eq!(wg_symbolic(1, &part("1")).unwrap(), rf(&[1], &[0, 1]));
        assert_eq!(wg_symbolic(2, &part("1,1")).unwrap(), rf(&[1], &[-1, 0, 1]));
        assert_eq!(wg_symbolic(2, &part("2")).unwrap(), rf(&[-1], &[0, -1, 0, 1]));
    }

    #[test]
    fn degree_four_table() {
        let table = [
            ("4", Polynomial::from_int(-5), 0),
            ("3,1", Polynomial::from_int_coeffs([-3, 0, 2]), 1),
            ("2,2", Polynomial::from_int_coeffs([6, 0, 1]), 1),
            ("1,1,1,1", Polynomial::from_int_coeffs([6, 0, -8, 0, 1]), 1),
        ];
        for (rho, num, extra) in table {
            let expected = RationalFunction::new(num, wg4_den(extra)).unwrap();
            assert_eq!(wg_symbolic(4, &part(rho)).unwrap(), expected, "ρ = {rho}");
        }
        let den = &(&Polynomial::n() * &Polynomial::from_int_coeffs([-1, 0, 1])) * &Polynomial::from_int_coeffs([-9, 0, 1]);
        let expected = RationalFunction::new(Polynomial::from_int(-1), den).unwrap();
        assert_eq!(wg_symbolic(4, &part("2,1,1")).unwrap(), expected);
        assert_eq!(
            wg_symbolic(4, &part("4")).unwrap().to_string(),
            "-5/(N*(N^2-1)*(N^2-4)*(N^2-9))"
        );
    }

    #[test]
    fn concrete_values_and_truncation() {
        assert_eq!(wg_eval(2, &part("1,1"), 5).unwrap(), (rational(1, 24), Regime::Symbolic));
        // only λ = (2) survives: (1/2!)·1·1/(1·2)
        assert_eq!(wg_eval(2, &part("1,1"), 1).unwrap(), (rational(1, 4), Regime::Truncated));
        assert_eq!(wg_eval(4, &part("2,1,1"), 5).unwrap().0, rational(-1, 5 * 24 * 16));
        assert!(wg_eval(2, &part("1,1"), 0).is_err());
        // N = 1: the only unitary is a phase, so Σ_σ Wg_n(σ) = 1/n!
        for n in 1..=5 {
            let total: BigRational = partitions(n)
                .iter()
                .map(|rho| wg_eval(n, rho, 1).unwrap().0 * BigRational::from_integer(rho.class_size()))
                .sum();
            assert_eq!(total, BigRational::new(1.into(), factorial(n)));
        }
    }

    #[test]
    fn guards_and_domain() {
        assert!(matches!(wg_symbolic(11, &Partition::row(11)), Err(Error::Resource { .. })));
        assert!(wg_symbolic_with_limit(11, &Partition::column(11), 11).is_ok());
        assert!(matches!(wg_symbolic(3, &part("2,1,1")), Err(Error::Domain(_))));
        assert!(wg_symbolic(0, &part("1")).is_err());
    }

    /// `Σ_τ N^{#cycles(σ^{-1}τ)} Wg(τ^{-1}ρ) = δ_{σρ}`: the Weingarten matrix
    /// inverts the Gram matrix of the permutation action on `(C^N)^{⊗n}`.
    #[test]
    fn inverts_gram_matrix() {
        for n in 1..=4usize {
            let perms: Vec<Permutation> = all_permutations(n).collect();
            for rho in &perms {
                let mut counts_by_power = vec![ClassCounts::new(); n + 1];
                for tau in &perms {
                    let cycles = tau.cycle_type().len();
                    counts_by_power[cycles].add(tau.inverse().compose(rho).cycle_type(), BigInt::one());
                }
                let terms: Vec<(Polynomial, ClassCounts)> = counts_by_power
                    .into_iter()
                    .enumerate()
                    .map(|(k, c)| (Polynomial::monomial(integer(1), k), c))
                    .collect();
                let total = wg_weighted_class_sum(n, &terms, Evaluation::Symbolic).unwrap();
                let expected = if rho.is_identity() { RationalFunction::one() } else { RationalFunction::zero() };
                assert_eq!(total.into_function().unwrap(), expected, "n = {n}, ρ = {rho}");
            }
        }
    }

    #[test]
    fn full_group_sum() {
        for n in 1..=6usize {
            let total: RationalFunction = partitions(n)
                .iter()
                .map(|rho| wg_symbolic(n, rho).unwrap().scale(&BigRational::from_integer(rho.class_size())))
                .sum();
            let rising: LinearProduct = (0..n as i64).collect();
            assert_eq!(total, RationalFunction::over_linear(integer(1), &rising));
        }
    }

    #[test]
    fn young_subgroup_sums_match_enumeration() {
        for n in 1..=5usize {
            for mu in partitions(n) {
                let mut counts = ClassCounts::new();
                for sigma in YoungSubgroup::of_partition(&mu).elements() {
                    counts.add(sigma.cycle_type(), BigInt::one());
                }
                let brute = wg_class_sum(n, &counts, Evaluation::Symbolic).unwrap();
                let closed = wg_young_subgroup_sum(&mu, Evaluation::Symbolic).unwrap();
                assert_eq!(closed, brute, "μ = {mu}");
                for big_n in 1..=6 {
                    let b = wg_class_sum(n, &counts, Evaluation::At(big_n)).unwrap();
                    let c = wg_young_subgroup_sum(&mu, Evaluation::At(big_n)).unwrap();
                    assert_eq!(b, c, "μ = {mu}, N = {big_n}");
                }
            }
        }
        let rising: LinearProduct = (0..3).collect();
        assert_eq!(
            wg_young_subgroup_sum(&Partition::row(3), Evaluation::Symbolic).unwrap(),
            Exact::Function(RationalFunction::over_linear(integer(1), &rising))
        );
        assert_eq!(
            wg_young_subgroup_sum(&part("2"), Evaluation::Symbolic).unwrap(),
            Exact::Function(rf(&[1], &[0, 1, 1]))
        );
    }

    #[test]
    fn leading_orders() {
        for n in 1..=6usize {
            for rho in partitions(n) {
                let a = wg_asymptotic_check(n, &rho).unwrap();
                assert!(a.holds, "n = {n}, ρ = {rho}, series {}", a.series);
            }
        }
        let a = wg_asymptotic_check(3, &part("2,1")).unwrap();
        assert_eq!((a.leading_exponent, a.leading_coefficient), (-4, integer(-1)));
        assert_eq!(wg_asymptotic_check(3, &part("3")).unwrap().class, WgOrderClass::Other);
        assert!(wg_asymptotic_check(3, &part("3")).unwrap().leading_exponent <= -5);
    }

    fn random_perm(n: usize, seed: &[u32]) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            images.swap(i, seed[i] as usize % (i + 1));
        }
        Permutation::from_images(images).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn class_function_symmetries(
            n in 1usize..=4,
            a in proptest::collection::vec(any::<u32>(), 4),
            b in proptest::collection::vec(any::<u32>(), 4),
            big_n in 1u64..=6,
        ) {
            let s = random_perm(n, &a);
            let t = random_perm(n, &b);
            let at = Evaluation::At(big_n);
            prop_assert_eq!(wg_permutation(&s.compose(&t), at).unwrap(), wg_permutation(&t.compose(&s), at).unwrap());
            prop_assert_eq!(wg_permutation(&s.inverse(), at).unwrap(), wg_permutation(&s, at).unwrap());
            // definitional character sum at permutation level
            let direct: BigRational = partitions(n)
                .iter()
                .filter(|l| l.len() as u64 <= big_n)
                .map(|l| {
                    let chi = irreducible_character(l, &s.cycle_type()).unwrap();
                    BigRational::new(BigInt::from(dimension(l) as i64 * chi), factorial(n) * content_value(l, big_n))
                })
                .sum();
            prop_assert_eq!(wg_permutation(&s, at).unwrap().into_number().unwrap(), direct);
        }
    }
}
