use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{factorial, Polynomial};

use super::partition::Partition;
use super::permutation::{next_permutation, Permutation};

/// Default cap on the length of a sequence whose stabilizer is streamed.
pub const DEFAULT_STABILIZER_CAP: usize = 10;

/// A finite sequence of indices in `[N] = {1, ..., N}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IndexSequence {
    entries: Vec<usize>,
}

impl IndexSequence {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::domain("indices are 1-based"));
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<usize>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_entry(&self) -> usize {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    /// Errors unless every entry lies in `[n]`.
    pub fn check_alphabet(&self, n: u64) -> Result<()> {
        match self.entries.iter().find(|&&e| e as u64 > n) {
            Some(e) => Err(Error::domain(format!("index {e} outside [N] with N = {n}"))),
            None => Ok(()),
        }
    }

    /// Multiplicities of the distinct values, sorted decreasingly.
    pub fn seq_type(&self) -> Partition {
        let counts = self.value_counts();
        Partition::from_unsorted(counts.into_values().collect()).expect("counts are positive")
    }

    fn value_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &e in &self.entries {
            *m.entry(e).or_insert(0) += 1;
        }
        m
    }

    /// `a ∼ b`: equal as multisets.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.len() == other.len() && self.value_counts() == other.value_counts()
    }

    /// Right action by a permutation.
    pub fn act(&self, sigma: &Permutation) -> Self {
        Self {
            entries: sigma.act(&self.entries),
        }
    }

    /// `(k_1, k_1, k_2, k_2, ...)`
    pub fn doubled(&self) -> Self {
        Self {
            entries: self.entries.iter().flat_map(|&k| [k, k]).collect(),
        }
    }

    /// Some `σ` with `self^σ = target`, if the sequences are equivalent.
    pub fn transporter_to(&self, target: &Self) -> Option<Permutation> {
        if !self.equivalent(target) {
            return None;
        }
        let mut slots: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (p, &v) in self.entries.iter().enumerate().rev() {
            slots.entry(v).or_default().push(p);
        }
        let images = target
            .entries
            .iter()
            .map(|v| slots.get_mut(v).and_then(Vec::pop).expect("equivalent"))
            .collect();
        Some(Permutation::from_images_unchecked(images))
    }

    /// Position blocks of equal values; the stabilizer is the product of the
    /// symmetric groups on these blocks.
    pub fn position_blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (p, &v) in self.entries.iter().enumerate() {
            blocks.entry(v).or_default().push(p);
        }
        blocks.into_values().collect()
    }

    /// `|{σ : self^σ = self}| = ∏ m_v!`
    pub fn stabilizer_order(&self) -> BigInt {
        self.value_counts().values().map(|&m| factorial(m)).product()
    }

    /// Streams `{σ : self^σ = self}` with the default length cap.
    pub fn stabilizer_permutations(&self) -> Result<StabilizerIter> {
        self.stabilizer_permutations_capped(DEFAULT_STABILIZER_CAP)
    }

    pub fn stabilizer_permutations_capped(&self, cap: usize) -> Result<StabilizerIter> {
        if self.len() > cap {
            return Err(Error::Resource {
                what: "stabilizer enumeration".into(),
                requested: self.len(),
                limit: cap,
                estimate: self.stabilizer_order().to_string(),
            });
        }
        Ok(StabilizerIter::new(self.position_blocks(), self.len()))
    }
}

impl fmt::Display for IndexSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Comma or whitespace separated positive integers, optionally parenthesized.
impl FromStr for IndexSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&x| x >= 1)
                    .ok_or_else(|| Error::parse(format!("bad index `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { entries })
    }
}

/// Product of the symmetric groups on a family of disjoint position blocks,
/// visited as an odometer of lexicographic arrangements per block.
pub struct StabilizerIter {
    blocks: Vec<Vec<usize>>,
    arrangements: Vec<Vec<usize>>,
    degree: usize,
    done: bool,
}

impl StabilizerIter {
    pub(crate) fn new(blocks: Vec<Vec<usize>>, degree: usize) -> Self {
        let arrangements = blocks.clone();
        Self {
            blocks,
            arrangements,
            degree,
            done: false,
        }
    }
}

impl Iterator for StabilizerIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let mut images: Vec<usize> = (0..self.degree).collect();
        for (block, arr) in self.blocks.iter().zip(&self.arrangements) {
            for (&p, &q) in block.iter().zip(arr) {
                images[p] = q;
            }
        }
        // advance: first block is the fastest digit
        let mut k = 0;
        loop {
            if k == self.arrangements.len() {
                self.done = true;
                break;
            }
            if next_permutation(&mut self.arrangements[k]) {
                break;
            }
            self.arrangements[k] = self.blocks[k].clone();
            k += 1;
        }
        Some(Permutation::from_images_unchecked(images))
    }
}

impl IndexSequence {
    /// Every distinct sequence `b ∼ self`, in lexicographic order.
    pub fn rearrangements(&self) -> Vec<IndexSequence> {
        let mut cur = self.entries.clone();
        cur.sort_unstable();
        let mut out = vec![Self::from_vec_unchecked(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Self::from_vec_unchecked(cur.clone()));
        }
        out
    }
}

/// Restricted growth strings of length `n`: one representative
/// `(1, ...)` for each set partition of the positions, values labeling
/// blocks in order of first appearance.
pub fn set_partition_patterns(n: usize) -> Vec<IndexSequence> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<IndexSequence>) {
        if cur.len() == n {
            out.push(IndexSequence::from_vec_unchecked(cur.clone()));
            return;
        }
        for v in 1..=max + 1 {
            cur.push(v);
            rec(n, cur, max.max(v), out);
            cur.pop();
        }
    }
    rec(n, &mut cur, 0, &mut out);
    out
}

/// Number of sequences in `[n]^{|μ|}` of type `μ`:
/// `(|μ|!/μ!) · n! / (∏_k m_k(μ)! · (n-ℓ(μ))!)`, zero when `ℓ(μ) > n`.
pub fn count_sequences_of_type(mu: &Partition, n: u64) -> BigInt {
    let l = mu.len() as u64;
    if l > n {
        return BigInt::from(0);
    }
    let falling: BigInt = (0..l).map(|i| BigInt::from(n - i)).product();
    type_arrangements(mu) * falling
}

/// The same count as an exact polynomial in `N`.
pub fn count_sequences_of_type_polynomial(mu: &Partition) -> Polynomial {
    Polynomial::falling_factorial(mu.len()).scale(&BigRational::from_integer(type_arrangements(mu)))
}

/// `(|μ|!/μ!) / ∏ m_k(μ)!`: sequences of type μ over a fixed ordered alphabet
/// of `ℓ(μ)` letters, up to relabeling.
fn type_arrangements(mu: &Partition) -> BigInt {
    let mult: BigInt = mu.multiplicities().values().map(|&m| factorial(m)).product();
    factorial(mu.size()) / mu.factorial_product() / mult
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partitions;
    use crate::combinatorics::permutation::all_permutations;
    use std::collections::BTreeSet;

    fn seq(s: &str) -> IndexSequence {
        s.parse().unwrap()
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn sequence_types() {
        assert_eq!(seq("2,5,4,2,5,5,2").seq_type(), part("3,3,1"));
        assert_eq!(seq("7,7,7,2,2,2,3").seq_type(), part("3,3,1"));
        assert_eq!(seq("1,2,3").seq_type(), part("1,1,1"));
    }

    #[test]
    fn equivalence() {
        assert!(seq("2,3,2,1,3").equivalent(&seq("3,3,2,2,1")));
        assert!(!seq("1,1").equivalent(&seq("1,2")));
        let s = seq("4,1,4,2");
        assert!(s.equivalent(&s));
        assert!(s.act(&Permutation::identity(4)) == s);
    }

    #[test]
    fn transporter_maps_source_to_target() {
        let a = seq("2,3,2,1,3");
        let b = seq("3,3,2,2,1");
        let t = a.transporter_to(&b).unwrap();
        assert_eq!(a.act(&t), b);
        assert!(seq("1,1").transporter_to(&seq("1,2")).is_none());
    }

    #[test]
    fn stabilizers_match_filtered_symmetric_group() {
        for s in ["1,2", "1,1", "1,1,2,2", "3,1,3,3,2", "1,2,1,2,1,2"] {
            let s = seq(s);
            let streamed: BTreeSet<Permutation> = s.stabilizer_permutations().unwrap().collect();
            let filtered: BTreeSet<Permutation> =
                all_permutations(s.len()).filter(|p| s.act(p) == s).collect();
            assert_eq!(streamed, filtered);
            assert_eq!(BigInt::from(streamed.len()), s.stabilizer_order());
        }
        assert_eq!(seq("1,1,2,2").stabilizer_permutations().unwrap().count(), 4);
        let long = IndexSequence::new(vec![1; 11]).unwrap();
        assert!(matches!(long.stabilizer_permutations(), Err(Error::Resource { .. })));
        assert_eq!(long.stabilizer_permutations_capped(11).unwrap().take(3).count(), 3);
    }

    #[test]
    fn rearrangements_and_patterns() {
        let r = seq("2,1,2").rearrangements();
        assert_eq!(r, vec![seq("1,2,2"), seq("2,1,2"), seq("2,2,1")]);
        assert_eq!(seq("1,2,3,4").rearrangements().len(), 24);
        // Bell numbers
        let bell: Vec<usize> = (1..=6).map(|n| set_partition_patterns(n).len()).collect();
        assert_eq!(bell, vec![1, 2, 5, 15, 52, 203]);
        assert_eq!(set_partition_patterns(2), vec![seq("1,1"), seq("1,2")]);
    }

    #[test]
    fn rejects_zero_index() {
        assert!(IndexSequence::new(vec![1, 0]).is_err());
        assert!("1,0".parse::<IndexSequence>().is_err());
        assert!(seq("1,4").check_alphabet(3).is_err());
    }

    #[test]
    fn counts_sequences_of_type() {
        assert_eq!(count_sequences_of_type(&part("2"), 3), BigInt::from(3));
        assert_eq!(count_sequences_of_type(&part("1,1"), 3), BigInt::from(6));
        assert_eq!(count_sequences_of_type(&part("1,1,1,1"), 3), BigInt::from(0));
    }

    #[test]
    fn type_counts_partition_all_sequences() {
        for n in 1..=5usize {
            for big_n in 1..=8u64 {
                let total: BigInt = partitions(n)
                    .iter()
                    .map(|mu| count_sequences_of_type(mu, big_n))
                    .sum();
                assert_eq!(total, BigInt::from(big_n).pow(n as u32));
            }
        }
    }

    #[test]
    fn type_counts_match_enumeration() {
        // enumerate [4]^4 and tally types
        let mut tally: BTreeMap<Partition, u64> = BTreeMap::new();
        for code in 0..256usize {
            let s = IndexSequence::new((0..4).map(|d| (code >> (2 * d)) % 4 + 1).collect()).unwrap();
            *tally.entry(s.seq_type()).or_insert(0) += 1;
        }
        for (mu, count) in tally {
            assert_eq!(count_sequences_of_type(&mu, 4), BigInt::from(count));
            let poly = count_sequences_of_type_polynomial(&mu);
            assert_eq!(poly.eval(&BigRational::from_integer(4.into())), BigRational::from_integer(count.into()));
        }
    }
}
