//! Moments of entries of a COE matrix `V = UᵀU`.

mod methods;
pub(crate) mod offdiagonal;

use crate::combinatorics::{set_partition_patterns, ClassCounts, IndexSequence};
use crate::error::{Error, Result};
use crate::exact::{factorial, BigInt, BigRational, LaurentSeries, LinearProduct, Polynomial, RationalFunction};
use crate::unitary::{transport_class_counts, zero_in};
use crate::value::{Evaluation, Exact};
use crate::weingarten::{wg_class_sum_with_limit, wg_weighted_class_sum_with_limit};

pub use methods::{coe_method, coe_methods, CoeMomentMethod, CoeQuery};
pub use offdiagonal::{
    coe_offdiag_moment, coe_offdiag_moment_with_limit, coe_offdiag_w, coe_offdiag_w_with_limit, w_asymptotic_check,
    WAsymptotics, WOrderClass, DEFAULT_W_LIMIT,
};

/// Default cap on the Weingarten degree `2n` of a COE moment.
pub const DEFAULT_COE_LIMIT: usize = 8;

/// Cap on `N^n` for the literal enumeration route.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

/// `E[v_{j_1 j_2} v_{j_3 j_4} ⋯ conj(v_{j'_1 j'_2} ⋯)]`: consecutive pairs of
/// `j` index the plain factors, pairs of `j_prime` the conjugated ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeMomentSpec {
    pub j: IndexSequence,
    pub j_prime: IndexSequence,
}

impl CoeMomentSpec {
    pub fn new(j: IndexSequence, j_prime: IndexSequence) -> Result<Self> {
        if j.len() % 2 != 0 || j_prime.len() % 2 != 0 {
            return Err(Error::domain("COE index sequences must have even length"));
        }
        if j.is_empty() && j_prime.is_empty() {
            return Err(Error::domain("empty monomial"));
        }
        Ok(Self { j, j_prime })
    }

    /// `|v_{ii}|^{2n}`
    pub fn diagonal(n: usize, i: usize) -> Result<Self> {
        Self::power(n, i, i)
    }

    /// `|v_{ab}|^{2n}`
    pub fn power(n: usize, a: usize, b: usize) -> Result<Self> {
        let j = IndexSequence::new([a, b].repeat(n))?;
        Self::new(j.clone(), j)
    }

    /// Number of plain factors.
    pub fn degree(&self) -> usize {
        self.j.len() / 2
    }

    pub fn conjugate_degree(&self) -> usize {
        self.j_prime.len() / 2
    }

    pub fn check_alphabet(&self, big_n: u64) -> Result<()> {
        self.j.check_alphabet(big_n)?;
        self.j_prime.check_alphabet(big_n)
    }

    /// Lemma-level vanishing: unequal degrees or `j ≁ j'`.
    pub fn vanishes(&self) -> bool {
        self.degree() != self.conjugate_degree() || !self.j.equivalent(&self.j_prime)
    }
}

fn guard(n: usize, limit: usize) -> Result<()> {
    if 2 * n > limit {
        return Err(Error::Resource {
            what: "COE moment Weingarten degree 2n".into(),
            requested: 2 * n,
            limit,
            estimate: format!(
                "{} set-partition patterns times up to {} rearrangements",
                set_partition_count(n),
                factorial(n)
            ),
        });
    }
    Ok(())
}

fn set_partition_count(n: usize) -> BigInt {
    // Bell numbers by the triangle
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

fn check_concrete(spec: &CoeMomentSpec, eval: Evaluation) -> Result<()> {
    if let Evaluation::At(big_n) = eval {
        if big_n == 0 {
            return Err(Error::domain("N must be a positive integer"));
        }
        spec.check_alphabet(big_n)?;
    }
    Ok(())
}

/// Class counts of `Σ_{k' ∼ k} Σ_σ Σ_τ` for one fixed `k`.
fn rearrangement_counts(k: &IndexSequence, spec: &CoeMomentSpec) -> Result<ClassCounts> {
    let kt = k.doubled();
    let mut total = ClassCounts::new();
    for kp in k.rearrangements() {
        if let Some(c) = transport_class_counts(&kt, &spec.j, &kp.doubled(), &spec.j_prime)? {
            total.merge(&c);
        }
    }
    Ok(total)
}

/// The joint moment by expanding `v_{ab} = Σ_k u_{ka} u_{kb}`.
///
/// The integral for a given `k` only depends on which positions of `k` are
/// equal, so the sum over `k ∈ [N]^n` runs over set-partition patterns of the
/// positions, each weighted by the `N(N-1)⋯(N-b+1)` sequences realizing a
/// pattern with `b` blocks.
pub fn coe_joint_moment(spec: &CoeMomentSpec, eval: Evaluation) -> Result<Exact> {
    coe_joint_moment_with_limit(spec, eval, DEFAULT_COE_LIMIT)
}

pub fn coe_joint_moment_with_limit(spec: &CoeMomentSpec, eval: Evaluation, limit: usize) -> Result<Exact> {
    let n = spec.degree().max(spec.conjugate_degree());
    check_concrete(spec, eval)?;
    guard(n, limit)?;
    if spec.vanishes() {
        return Ok(zero_in(eval, 2 * n));
    }
    let mut by_blocks = vec![ClassCounts::new(); n + 1];
    for k in set_partition_patterns(n) {
        let b = k.max_entry();
        by_blocks[b].merge(&rearrangement_counts(&k, spec)?);
    }
    let terms: Vec<(Polynomial, ClassCounts)> = by_blocks
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(b, c)| (Polynomial::falling_factorial(b), c))
        .collect();
    wg_weighted_class_sum_with_limit(2 * n, &terms, eval, limit.max(2 * n))
}

/// The joint moment at a concrete `N` by literally summing over every
/// `k ∈ [N]^n` and every rearrangement `k' ∼ k`.
pub fn coe_joint_moment_enumerated(spec: &CoeMomentSpec, big_n: u64) -> Result<Exact> {
    let n = spec.degree().max(spec.conjugate_degree());
    let eval = Evaluation::At(big_n);
    check_concrete(spec, eval)?;
    guard(n, DEFAULT_COE_LIMIT)?;
    let terms = big_n.checked_pow(n as u32).filter(|&t| t <= ENUMERATION_LIMIT);
    let Some(terms) = terms else {
        return Err(Error::Resource {
            what: "enumerated index tuples N^n".into(),
            requested: n,
            limit: ENUMERATION_LIMIT as usize,
            estimate: BigInt::from(big_n).pow(n as u32).to_string(),
        });
    };
    if spec.vanishes() {
        return Ok(zero_in(eval, 2 * n));
    }
    let mut total = ClassCounts::new();
    for code in 0..terms {
        let k: Vec<usize> = (0..n)
            .map(|d| (code / big_n.pow(d as u32) % big_n) as usize + 1)
            .collect();
        total.merge(&rearrangement_counts(&IndexSequence::new(k)?, spec)?);
    }
    wg_class_sum_with_limit(2 * n, &total, eval, DEFAULT_COE_LIMIT.max(2 * n))
}

/// `E[|v_{ii}|^{2n}] = 2^n n! / ((N+1)(N+3)⋯(N+2n-1))`
pub fn coe_diag_moment_closed(n: usize) -> Result<RationalFunction> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let den: LinearProduct = (0..n as i64).map(|k| 2 * k + 1).collect();
    let c = BigInt::from(2).pow(n as u32) * factorial(n);
    Ok(RationalFunction::over_linear(BigRational::from_integer(c), &den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    Diagonal,
    OffDiagonal,
}

/// Two-term large-`N` expansions: `2^n n!(N^{-n} - n² N^{-n-1})` on the
/// diagonal, `n! N^{-n} - n!·n(n+1)/2·N^{-n-1}` off it.
pub fn coe_asymptotics(n: usize, which: Entry) -> Result<LaurentSeries> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let nf = BigRational::from_integer(factorial(n));
    let nn = BigRational::from_integer(BigInt::from(n));
    let coeffs = match which {
        Entry::Diagonal => {
            let lead = nf * BigRational::from_integer(BigInt::from(2).pow(n as u32));
            let next = -(&lead * &nn * &nn);
            vec![lead, next]
        }
        Entry::OffDiagonal => {
            let next = -(&nf * &nn * (&nn + BigRational::from_integer(1.into())) / BigRational::from_integer(2.into()));
            vec![nf, next]
        }
    };
    Ok(LaurentSeries::new(-(n as i64), coeffs))
}

/// Both sides of `Σ_{μ⊢n} #{k of type μ}·∏(2μ_j-1)!! = Σ_m N^{κ(m)} = N(N+2)⋯(N+2n-2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumeratorIdentity {
    pub type_sum: Polynomial,
    pub pairing_sum: Polynomial,
    pub product: Polynomial,
}

impl NumeratorIdentity {
    pub fn holds(&self) -> bool {
        self.type_sum == self.product && self.pairing_sum == self.product
    }
}

pub const NUMERATOR_IDENTITY_LIMIT: usize = 6;

pub fn numerator_identity_check(n: usize) -> Result<NumeratorIdentity> {
    use crate::combinatorics::{count_sequences_of_type_polynomial, pairings, partitions};
    use crate::exact::double_factorial_odd;
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if n > NUMERATOR_IDENTITY_LIMIT {
        return Err(Error::Resource {
            what: "pairing enumeration".into(),
            requested: n,
            limit: NUMERATOR_IDENTITY_LIMIT,
            estimate: double_factorial_odd(n).to_string(),
        });
    }
    let type_sum: Polynomial = partitions(n)
        .iter()
        .map(|mu| {
            let df: BigInt = mu.parts().iter().map(|&p| double_factorial_odd(p)).product();
            count_sequences_of_type_polynomial(mu).scale(&BigRational::from_integer(df))
        })
        .sum();
    let mut kappa_counts = vec![0u64; n + 1];
    let ground: Vec<usize> = (1..=n).collect();
    for m in pairings(&ground) {
        kappa_counts[m.kappa()] += 1;
    }
    let pairing_sum = Polynomial::from_int_coeffs(kappa_counts);
    let product: Polynomial = (0..n as i64).map(|k| Polynomial::linear(2 * k)).product();
    Ok(NumeratorIdentity {
        type_sum,
        pairing_sum,
        product,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceMoment {
    /// `E[|tr V|⁴]`
    Tr4,
    /// `E[|tr V²|²]`
    Tr2Sq,
    /// `E[tr(V²) conj((tr V)²)]`
    Mixed,
}

impl TraceMoment {
    pub const ALL: [TraceMoment; 3] = [TraceMoment::Tr4, TraceMoment::Tr2Sq, TraceMoment::Mixed];

    pub fn name(self) -> &'static str {
        match self {
            TraceMoment::Tr4 => "tr4",
            TraceMoment::Tr2Sq => "tr2sq",
            TraceMoment::Mixed => "mixed",
        }
    }
}

impl std::str::FromStr for TraceMoment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TraceMoment::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown trace moment `{s}` (tr4, tr2sq, mixed)")))
    }
}

/// Degree-two trace moments assembled from entry moments: the `a = b` terms
/// give `N·E[|v_11|⁴]`, the `a ≠ b` terms `2N(N-1)` times one off-diagonal
/// entry moment.
pub fn coe_trace_moments_degree2(which: TraceMoment) -> Result<RationalFunction> {
    let entry = |j: &str, jp: &str| -> Result<RationalFunction> {
        let spec = CoeMomentSpec::new(j.parse()?, jp.parse()?)?;
        Ok(coe_joint_moment(&spec, Evaluation::Symbolic)?.into_function().expect("symbolic"))
    };
    let diag = entry("1,1,1,1", "1,1,1,1")?;
    let off = match which {
        TraceMoment::Tr4 => entry("1,1,2,2", "1,1,2,2")?,
        TraceMoment::Tr2Sq => entry("1,2,1,2", "1,2,1,2")?,
        TraceMoment::Mixed => entry("1,2,1,2", "1,1,2,2")?,
    };
    let n = Polynomial::n();
    let pairs = Polynomial::falling_factorial(2).scale(&BigRational::from_integer(2.into()));
    Ok(&diag.mul_poly(&n) + &off.mul_poly(&pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::integer;
    use proptest::prelude::*;

    fn seq(s: &str) -> IndexSequence {
        s.parse().unwrap()
    }

    fn joint(j: &str, jp: &str) -> RationalFunction {
        let spec = CoeMomentSpec::new(seq(j), seq(jp)).unwrap();
        coe_joint_moment(&spec, Evaluation::Symbolic).unwrap().into_function().unwrap()
    }

    #[test]
    fn degree_one_and_two_values() {
        assert_eq!(joint("1,1", "1,1").to_string(), "2/(N+1)");
        assert_eq!(joint("1,2", "1,2").to_string(), "1/(N+1)");
        assert_eq!(joint("1,1,1,1", "1,1,1,1").to_string(), "8/((N+1)*(N+3))");
        assert_eq!(joint("1,2,1,2", "1,2,1,2").to_string(), "2/(N*(N+3))");
        assert_eq!(joint("1,1,2,2", "1,1,2,2").to_string(), "4*(N+2)/(N*(N+1)*(N+3))");
        assert_eq!(joint("1,2,1,2", "1,1,2,2").to_string(), "-4/(N*(N+1)*(N+3))");
        assert_eq!(joint("1,2,3,4", "1,2,3,4").to_string(), "(N+2)/(N*(N+1)*(N+3))");
        assert!(joint("1,1", "1,2").is_zero());
        assert!(joint("1,1", "1,1,1,1").is_zero());
    }

    #[test]
    fn spec_validation() {
        assert!(CoeMomentSpec::new(seq("1,2,3"), seq("1,2")).is_err());
        let spec = CoeMomentSpec::new(seq("1,5"), seq("1,5")).unwrap();
        assert!(coe_joint_moment(&spec, Evaluation::At(3)).is_err());
        assert!(matches!(
            coe_joint_moment(&CoeMomentSpec::diagonal(5, 1).unwrap(), Evaluation::Symbolic),
            Err(Error::Resource { .. })
        ));
        assert!(matches!(
            coe_joint_moment_enumerated(&CoeMomentSpec::diagonal(4, 1).unwrap(), 100),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn diagonal_closed_form() {
        assert_eq!(coe_diag_moment_closed(1).unwrap().to_string(), "2/(N+1)");
        assert_eq!(coe_diag_moment_closed(3).unwrap().to_string(), "48/((N+1)*(N+3)*(N+5))");
        for n in 1..=2 {
            let spec = CoeMomentSpec::diagonal(n, 1).unwrap();
            assert_eq!(
                coe_joint_moment(&spec, Evaluation::Symbolic).unwrap(),
                Exact::Function(coe_diag_moment_closed(n).unwrap())
            );
        }
        // every N, including the truncated regime below 2n
        let closed = coe_diag_moment_closed(3).unwrap();
        let spec = CoeMomentSpec::diagonal(3, 1).unwrap();
        for big_n in 1..=7 {
            let v = coe_joint_moment(&spec, Evaluation::At(big_n)).unwrap();
            assert_eq!(v.into_number().unwrap(), closed.eval(big_n).unwrap(), "N = {big_n}");
        }
        for big_n in [1, 2, 4] {
            let v = coe_joint_moment_enumerated(&spec, big_n).unwrap();
            assert_eq!(v.into_number().unwrap(), closed.eval(big_n).unwrap(), "N = {big_n}");
        }
    }

    #[test]
    fn enumeration_matches_expansion() {
        for (j, jp) in [("1,2,1,2", "1,1,2,2"), ("1,2,3,4", "1,2,3,4"), ("1,1,2,2", "1,1,2,2")] {
            let spec = CoeMomentSpec::new(seq(j), seq(jp)).unwrap();
            for big_n in 1..=5 {
                if spec.check_alphabet(big_n).is_err() {
                    continue;
                }
                assert_eq!(
                    coe_joint_moment_enumerated(&spec, big_n).unwrap(),
                    coe_joint_moment(&spec, Evaluation::At(big_n)).unwrap(),
                    "{j} | {jp} at N = {big_n}"
                );
            }
        }
    }

    #[test]
    fn one_by_one_coe_is_a_squared_phase() {
        // V = u², so every balanced monomial in v_11 has mean 1
        for n in 1..=4 {
            let v = coe_joint_moment(&CoeMomentSpec::diagonal(n, 1).unwrap(), Evaluation::At(1)).unwrap();
            assert_eq!(v.into_number().unwrap(), integer(1));
        }
    }

    #[test]
    fn asymptotic_expansions() {
        assert_eq!(coe_asymptotics(2, Entry::OffDiagonal).unwrap().to_string(), "2*N^-2-6*N^-3+O(N^-4)");
        assert_eq!(coe_asymptotics(2, Entry::Diagonal).unwrap().to_string(), "8*N^-2-32*N^-3+O(N^-4)");
        assert_eq!(coe_asymptotics(1, Entry::OffDiagonal).unwrap().to_string(), "N^-1-N^-2+O(N^-3)");
        for n in 1..=6 {
            assert_eq!(
                coe_diag_moment_closed(n).unwrap().series(2).unwrap(),
                coe_asymptotics(n, Entry::Diagonal).unwrap()
            );
        }
    }

    #[test]
    fn numerator_identity() {
        for n in 1..=6 {
            let r = numerator_identity_check(n).unwrap();
            assert!(r.holds(), "n = {n}: {r:?}");
        }
        assert_eq!(numerator_identity_check(2).unwrap().product, Polynomial::from_int_coeffs([0, 2, 1]));
    }

    #[test]
    fn trace_moments() {
        let tr = |w| coe_trace_moments_degree2(w).unwrap().to_string();
        assert_eq!(tr(TraceMoment::Tr4), "8*(N^2+2*N-2)/((N+1)*(N+3))");
        assert_eq!(tr(TraceMoment::Tr2Sq), "4*(N^2+2*N-1)/((N+1)*(N+3))");
        assert_eq!(tr(TraceMoment::Mixed), "8/((N+1)*(N+3))");
        assert!("tr3".parse::<TraceMoment>().is_err());
    }

    #[test]
    fn intermediate_unitary_integrals() {
        use crate::unitary::{cue_joint_moment, CueMomentSpec};
        let s = CueMomentSpec::new(seq("1,1,2,2"), seq("1,1,2,2"), seq("1,1,2,2"), seq("1,1,2,2")).unwrap();
        assert_eq!(cue_joint_moment(&s, Evaluation::Symbolic).unwrap().to_string(), "4/(N^2*(N-1)*(N+3))");
        let s = CueMomentSpec::new(seq("1,1,2,2"), seq("1,1,2,2"), seq("2,2,1,1"), seq("1,1,2,2")).unwrap();
        assert_eq!(
            cue_joint_moment(&s, Evaluation::Symbolic).unwrap().to_string(),
            "8/(N^2*(N^2-1)*(N+2)*(N+3))"
        );
    }

    fn relabel(s: &IndexSequence, perm: &[usize]) -> IndexSequence {
        IndexSequence::new(s.entries().iter().map(|&e| perm[e - 1]).collect()).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn vanishing_and_relabeling(
            n in 1usize..=2,
            big_n in 2u64..=5,
            raw in proptest::collection::vec(0usize..5, 8),
            shuffle in proptest::collection::vec(any::<u32>(), 5),
            rearrange in any::<bool>(),
        ) {
            let j: Vec<usize> = raw[..2 * n].iter().map(|&x| x % big_n as usize + 1).collect();
            let jp: Vec<usize> = if rearrange {
                j.iter().rev().copied().collect()
            } else {
                raw[4..4 + 2 * n].iter().map(|&x| x % big_n as usize + 1).collect()
            };
            let spec = CoeMomentSpec::new(IndexSequence::new(j).unwrap(), IndexSequence::new(jp).unwrap()).unwrap();
            let at = Evaluation::At(big_n);
            let v = coe_joint_moment(&spec, at).unwrap();
            if !spec.j.equivalent(&spec.j_prime) {
                prop_assert!(v.is_zero());
            }
            let mut perm: Vec<usize> = (1..=big_n as usize).collect();
            for k in (1..perm.len()).rev() {
                perm.swap(k, shuffle[k] as usize % (k + 1));
            }
            let moved = CoeMomentSpec::new(relabel(&spec.j, &perm), relabel(&spec.j_prime, &perm)).unwrap();
            prop_assert_eq!(&v, &coe_joint_moment(&moved, at).unwrap());
        }
    }
}
