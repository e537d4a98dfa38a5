//! Joint moments of Haar-unitary matrix entries,
//! `E[u_{i_1 j_1} ⋯ u_{i_n j_n} conj(u_{i'_1 j'_1} ⋯ u_{i'_m j'_m})]`.

use crate::combinatorics::{double_coset_class_counts, ClassCounts, IndexSequence, Partition, YoungSubgroup};
use crate::error::{Error, Result};
use crate::exact::{factorial, BigRational, LinearProduct, RationalFunction};
use crate::value::{Evaluation, Exact, Regime};
use crate::weingarten::{wg_class_sum_with_limit, wg_young_subgroup_sum_with_limit, DEFAULT_WG_LIMIT};

/// Default cap on the number of unconjugated factors.
pub const DEFAULT_CUE_LIMIT: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CueMomentSpec {
    pub i: IndexSequence,
    pub j: IndexSequence,
    pub i_prime: IndexSequence,
    pub j_prime: IndexSequence,
}

impl CueMomentSpec {
    pub fn new(i: IndexSequence, j: IndexSequence, i_prime: IndexSequence, j_prime: IndexSequence) -> Result<Self> {
        if i.len() != j.len() || i_prime.len() != j_prime.len() {
            return Err(Error::domain("row and column sequences must have equal lengths"));
        }
        if i.is_empty() && i_prime.is_empty() {
            return Err(Error::domain("empty monomial"));
        }
        Ok(Self { i, j, i_prime, j_prime })
    }

    /// `E[|u_{i_1 j_1} ⋯ u_{i_n j_n}|²]`
    pub fn absolute_square(i: IndexSequence, j: IndexSequence) -> Result<Self> {
        Self::new(i.clone(), j.clone(), i, j)
    }

    pub fn degree(&self) -> usize {
        self.i.len()
    }

    pub fn check_alphabet(&self, big_n: u64) -> Result<()> {
        for s in [&self.i, &self.j, &self.i_prime, &self.j_prime] {
            s.check_alphabet(big_n)?;
        }
        Ok(())
    }

    /// Swaps the plain and conjugated factors.
    pub fn conjugate(&self) -> Self {
        Self {
            i: self.i_prime.clone(),
            j: self.j_prime.clone(),
            i_prime: self.i.clone(),
            j_prime: self.j.clone(),
        }
    }
}

/// Cycle types of `στ^{-1}` over `σ` with `i^σ = i'` and `τ` with `j^τ = j'`,
/// or `None` when the moment vanishes.
///
/// The solutions are the cosets `Stab(i)∘σ_0` and `Stab(j)∘τ_0`, so the
/// products fill the double coset `Stab(i) σ_0 τ_0^{-1} Stab(j)`.
pub fn transport_class_counts(
    i: &IndexSequence,
    j: &IndexSequence,
    i_prime: &IndexSequence,
    j_prime: &IndexSequence,
) -> Result<Option<ClassCounts>> {
    if i.len() != i_prime.len() {
        return Ok(None);
    }
    let (Some(s0), Some(t0)) = (i.transporter_to(i_prime), j.transporter_to(j_prime)) else {
        return Ok(None);
    };
    let g = s0.compose(&t0.inverse());
    double_coset_class_counts(&YoungSubgroup::stabilizer(i), &g, &YoungSubgroup::stabilizer(j)).map(Some)
}

pub(crate) fn zero_in(eval: Evaluation, n: usize) -> Exact {
    match eval {
        Evaluation::Symbolic => Exact::Function(RationalFunction::zero()),
        Evaluation::At(big_n) => Exact::Number {
            value: BigRational::from_integer(0.into()),
            regime: if big_n as usize >= n { Regime::Symbolic } else { Regime::Truncated },
        },
    }
}

pub fn cue_joint_moment(spec: &CueMomentSpec, eval: Evaluation) -> Result<Exact> {
    cue_joint_moment_with_limit(spec, eval, DEFAULT_CUE_LIMIT)
}

pub fn cue_joint_moment_with_limit(spec: &CueMomentSpec, eval: Evaluation, limit: usize) -> Result<Exact> {
    let n = spec.degree().max(spec.i_prime.len());
    if let Evaluation::At(big_n) = eval {
        if big_n == 0 {
            return Err(Error::domain("N must be a positive integer"));
        }
        spec.check_alphabet(big_n)?;
    }
    if n > limit {
        return Err(Error::Resource {
            what: "unitary moment degree".into(),
            requested: n,
            limit,
            estimate: (factorial(n) * factorial(n)).to_string(),
        });
    }
    match transport_class_counts(&spec.i, &spec.j, &spec.i_prime, &spec.j_prime)? {
        None => Ok(zero_in(eval, n)),
        Some(counts) => wg_class_sum_with_limit(n, &counts, eval, limit.max(DEFAULT_WG_LIMIT)),
    }
}

fn check_size(mu: &Partition, limit: usize) -> Result<()> {
    if mu.size() > limit {
        return Err(Error::Resource {
            what: "moment degree".into(),
            requested: mu.size(),
            limit,
            estimate: factorial(mu.size()).to_string(),
        });
    }
    Ok(())
}

/// `μ!/(N(N+1)⋯(N+n-1))`, the moment `E[|u_{1 i_1} ⋯ u_{1 i_n}|²]` for a row
/// sequence of type `μ`.
pub fn cue_row_moment(mu: &Partition) -> Result<RationalFunction> {
    check_size(mu, 12)?;
    let rising: LinearProduct = (0..mu.size() as i64).collect();
    Ok(RationalFunction::over_linear(BigRational::from_integer(mu.factorial_product()), &rising))
}

/// `E[|u_{i_1 i_1} ⋯ u_{i_n i_n}|²]` for a diagonal sequence of type `μ`,
/// `((μ!)²/n!) Σ_λ f^λ K_{λμ} / ∏(N+j-i)`.
pub fn cue_diagonal_moment(mu: &Partition, eval: Evaluation) -> Result<Exact> {
    check_size(mu, DEFAULT_WG_LIMIT)?;
    let scale = BigRational::from_integer(mu.factorial_product());
    Ok(match wg_young_subgroup_sum_with_limit(mu, eval, DEFAULT_WG_LIMIT)? {
        Exact::Function(f) => Exact::Function(f.scale(&scale)),
        Exact::Number { value, regime } => Exact::Number { value: value * scale, regime },
    })
}

/// The sequences `(1^{μ_1}, 2^{μ_2}, ...)` used as canonical representatives.
pub fn canonical_sequence(mu: &Partition) -> IndexSequence {
    IndexSequence::new(mu.canonical_sequence()).expect("positive entries")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{all_permutations, partitions, Permutation};
    use crate::exact::integer;
    use crate::weingarten::wg_permutation;
    use proptest::prelude::*;

    fn seq(s: &str) -> IndexSequence {
        s.parse().unwrap()
    }

    fn spec(i: &str, j: &str, ip: &str, jp: &str) -> CueMomentSpec {
        CueMomentSpec::new(seq(i), seq(j), seq(ip), seq(jp)).unwrap()
    }

    fn symbolic(s: &CueMomentSpec) -> RationalFunction {
        cue_joint_moment(s, Evaluation::Symbolic).unwrap().into_function().unwrap()
    }

    /// The definitional double sum over all of `S_n × S_n`, filtered.
    fn literal(s: &CueMomentSpec, eval: Evaluation) -> Exact {
        let n = s.degree();
        let mut acc: Option<Exact> = None;
        let perms: Vec<Permutation> = all_permutations(n).collect();
        for sigma in perms.iter().filter(|p| s.i.act(p) == s.i_prime) {
            for tau in perms.iter().filter(|p| s.j.act(p) == s.j_prime) {
                let w = wg_permutation(&sigma.compose(&tau.inverse()), eval).unwrap();
                acc = Some(match (acc, w) {
                    (None, w) => w,
                    (Some(Exact::Function(a)), Exact::Function(b)) => Exact::Function(&a + &b),
                    (Some(Exact::Number { value: a, regime }), Exact::Number { value: b, .. }) => {
                        Exact::Number { value: a + b, regime }
                    }
                    _ => unreachable!(),
                });
            }
        }
        acc.unwrap_or_else(|| zero_in(eval, n))
    }

    #[test]
    fn documented_values() {
        assert_eq!(symbolic(&spec("1", "1", "1", "1")).to_string(), "1/N");
        let s = CueMomentSpec::new(seq("1"), seq("1"), seq("1,1"), seq("1,1")).unwrap();
        assert!(cue_joint_moment(&s, Evaluation::Symbolic).unwrap().is_zero());
        assert_eq!(symbolic(&spec("1,1", "1,2", "1,1", "1,2")).to_string(), "1/(N*(N+1))");
        assert_eq!(cue_row_moment(&"2".parse().unwrap()).unwrap().to_string(), "2/(N*(N+1))");
        assert_eq!(cue_row_moment(&"1".parse().unwrap()).unwrap().to_string(), "1/N");
        assert_eq!(cue_row_moment(&"1,1,1".parse().unwrap()).unwrap().to_string(), "1/(N*(N+1)*(N+2))");
        assert_eq!(
            cue_diagonal_moment(&"1,1".parse().unwrap(), Evaluation::Symbolic).unwrap().to_string(),
            "1/(N^2-1)"
        );
    }

    #[test]
    fn vanishing_conditions() {
        assert!(cue_joint_moment(&spec("1,1", "1,2", "1,2", "1,2"), Evaluation::Symbolic).unwrap().is_zero());
        assert!(cue_joint_moment(&spec("1,1", "1,2", "1,1", "2,2"), Evaluation::At(3)).unwrap().is_zero());
        assert!(cue_joint_moment(&spec("1,4", "1,2", "1,4", "1,2"), Evaluation::At(3)).is_err());
        assert!(matches!(
            cue_joint_moment(&spec("1,1,1,1,1,1", "1,1,1,1,1,1", "1,1,1,1,1,1", "1,1,1,1,1,1"), Evaluation::Symbolic),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn row_of_a_unitary_has_unit_norm() {
        for big_n in 1..=10u64 {
            let total: BigRational = (1..=big_n as usize)
                .map(|j| {
                    let s = spec("1", &j.to_string(), "1", &j.to_string());
                    cue_joint_moment(&s, Evaluation::At(big_n)).unwrap().into_number().unwrap()
                })
                .sum();
            assert_eq!(total, integer(1));
        }
    }

    #[test]
    fn row_and_diagonal_closed_forms_match_double_sums() {
        for n in 1..=4usize {
            for mu in partitions(n) {
                let canon = canonical_sequence(&mu);
                let ones = IndexSequence::new(vec![1; n]).unwrap();
                let row = CueMomentSpec::absolute_square(ones, canon.clone()).unwrap();
                let brute = literal(&row, Evaluation::Symbolic).into_function().unwrap();
                assert_eq!(cue_row_moment(&mu).unwrap(), brute, "row μ = {mu}");
                assert_eq!(symbolic(&row), brute);

                let diag = CueMomentSpec::absolute_square(canon.clone(), canon).unwrap();
                let brute = literal(&diag, Evaluation::Symbolic);
                assert_eq!(cue_diagonal_moment(&mu, Evaluation::Symbolic).unwrap(), brute, "diag μ = {mu}");
                assert_eq!(cue_joint_moment(&diag, Evaluation::Symbolic).unwrap(), brute);
            }
        }
        // (n)!: K_{λ,(n)} picks λ = (n) alone
        for n in 1..=5 {
            assert_eq!(
                cue_diagonal_moment(&Partition::row(n), Evaluation::Symbolic).unwrap(),
                Exact::Function(cue_row_moment(&Partition::row(n)).unwrap())
            );
        }
    }

    #[test]
    fn closed_forms_at_concrete_dimensions() {
        let mu: Partition = "2,1".parse().unwrap();
        let f = cue_diagonal_moment(&mu, Evaluation::Symbolic).unwrap().into_function().unwrap();
        for big_n in 3..=7 {
            let v = cue_diagonal_moment(&mu, Evaluation::At(big_n)).unwrap();
            assert_eq!(v.into_number().unwrap(), f.eval(big_n).unwrap());
        }
    }

    fn relabel(s: &IndexSequence, perm: &[usize]) -> IndexSequence {
        IndexSequence::new(s.entries().iter().map(|&e| perm[e - 1]).collect()).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn relabeling_and_conjugation(
            n in 1usize..=3,
            big_n in 1u64..=4,
            raw in proptest::collection::vec(0usize..4, 12),
            shuffle in proptest::collection::vec(any::<u32>(), 4),
        ) {
            let pick = |k: usize| {
                IndexSequence::new(raw[k * 3..k * 3 + n].iter().map(|&x| x % big_n as usize + 1).collect()).unwrap()
            };
            // make the primes rearrangements half of the time so the moment can be nonzero
            let (i, j) = (pick(0), pick(1));
            let (ip, jp) = if raw[0] % 2 == 0 {
                (IndexSequence::new(i.entries().iter().rev().copied().collect()).unwrap(),
                 IndexSequence::new(j.entries().iter().rev().copied().collect()).unwrap())
            } else {
                (pick(2), pick(3))
            };
            let s = CueMomentSpec::new(i, j, ip, jp).unwrap();
            let mut perm: Vec<usize> = (1..=big_n as usize).collect();
            for k in (1..perm.len()).rev() {
                perm.swap(k, shuffle[k] as usize % (k + 1));
            }
            let moved = CueMomentSpec::new(
                relabel(&s.i, &perm), relabel(&s.j, &perm), relabel(&s.i_prime, &perm), relabel(&s.j_prime, &perm),
            ).unwrap();
            let at = Evaluation::At(big_n);
            let base = cue_joint_moment(&s, at).unwrap();
            prop_assert_eq!(&base, &cue_joint_moment(&moved, at).unwrap());
            prop_assert_eq!(&base, &cue_joint_moment(&s.conjugate(), at).unwrap());
            prop_assert_eq!(&base, &literal(&s, at));
        }
    }
}
