use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::factorial;

use super::partition::Partition;
use super::permutation::{cycle_type_of, Permutation};
use super::sequence::{IndexSequence, StabilizerIter};

/// Largest degree handled by the coset walker.
pub const MAX_COSET_DEGREE: usize = 16;

/// A product of symmetric groups on disjoint blocks of 0-based positions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct YoungSubgroup {
    blocks: Vec<Vec<usize>>,
    degree: usize,
}

impl YoungSubgroup {
    pub fn new(blocks: Vec<Vec<usize>>, degree: usize) -> Result<Self> {
        let mut seen = vec![false; degree];
        for &p in blocks.iter().flatten() {
            if p >= degree || std::mem::replace(&mut seen[p], true) {
                return Err(Error::domain(format!("bad block point {p} for degree {degree}")));
            }
        }
        Ok(Self { blocks, degree })
    }

    pub fn trivial(degree: usize) -> Self {
        Self { blocks: Vec::new(), degree }
    }

    /// `{σ : seq^σ = seq}`
    pub fn stabilizer(seq: &IndexSequence) -> Self {
        Self {
            blocks: seq.position_blocks(),
            degree: seq.len(),
        }
    }

    /// `S_μ` on consecutive blocks of sizes `μ_1, μ_2, ...`.
    pub fn of_partition(mu: &Partition) -> Self {
        let mut start = 0;
        let blocks = mu
            .parts()
            .iter()
            .map(|&p| {
                let b = (start..start + p).collect();
                start += p;
                b
            })
            .collect();
        Self { blocks, degree: mu.size() }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> BigInt {
        self.blocks.iter().map(|b| factorial(b.len())).product()
    }

    pub fn elements(&self) -> StabilizerIter {
        StabilizerIter::new(self.blocks.clone(), self.degree)
    }

    /// Adjacent transpositions inside each block.
    fn generators(&self) -> Vec<(usize, usize)> {
        self.blocks
            .iter()
            .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])))
            .collect()
    }
}

/// Multiset of conjugacy classes of `S_m`, keyed by cycle type.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ClassCounts {
    counts: BTreeMap<Partition, BigInt>,
}

impl ClassCounts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, class: Partition, count: BigInt) {
        if count.is_zero() {
            return;
        }
        let slot = self.counts.entry(class).or_insert_with(BigInt::zero);
        *slot += count;
        if slot.is_zero() {
            self.counts.retain(|_, v| !v.is_zero());
        }
    }

    pub fn merge(&mut self, other: &ClassCounts) {
        for (c, k) in &other.counts {
            self.add(c.clone(), k.clone());
        }
    }

    pub fn scaled(&self, factor: &BigInt) -> ClassCounts {
        let mut out = ClassCounts::new();
        for (c, k) in &self.counts {
            out.add(c.clone(), k * factor);
        }
        out
    }

    pub fn get(&self, class: &Partition) -> BigInt {
        self.counts.get(class).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.counts.iter()
    }

    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

impl FromIterator<(Partition, BigInt)> for ClassCounts {
    fn from_iter<I: IntoIterator<Item = (Partition, BigInt)>>(iter: I) -> Self {
        let mut out = ClassCounts::new();
        for (c, k) in iter {
            out.add(c, k);
        }
        out
    }
}

/// Cycle types of `a ∘ g ∘ b` over all `(a, b) ∈ A × B`, with multiplicity.
///
/// The double coset `AgB` is walked breadth first from `g`; each of its
/// elements is hit exactly `|A||B|/|AgB|` times by the pairs.
pub fn double_coset_class_counts(left: &YoungSubgroup, g: &Permutation, right: &YoungSubgroup) -> Result<ClassCounts> {
    let m = g.degree();
    if left.degree != m || right.degree != m {
        return Err(Error::domain(format!(
            "subgroup degrees {} and {} do not match permutation degree {m}",
            left.degree, right.degree
        )));
    }
    if m > MAX_COSET_DEGREE {
        return Err(Error::Resource {
            what: "double coset degree".into(),
            requested: m,
            limit: MAX_COSET_DEGREE,
            estimate: format!("up to {} group elements", factorial(m)),
        });
    }
    // A full symmetric group on either side makes the double coset all of S_m.
    if [left, right].iter().any(|h| h.blocks.iter().any(|b| b.len() == m)) {
        let mult = left.order() * right.order() / factorial(m);
        return Ok(super::partition::partitions(m)
            .into_iter()
            .map(|c| {
                let k = c.class_size() * &mult;
                (c, k)
            })
            .collect());
    }
    let lgens = left.generators();
    let rgens = right.generators();
    let start: Vec<u8> = g.images().iter().map(|&x| x as u8).collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut frontier = vec![start.clone()];
    seen.insert(start);
    let mut tally: BTreeMap<Partition, u64> = BTreeMap::new();
    let mut scratch = vec![0usize; m];
    while let Some(x) = frontier.pop() {
        for (s, &v) in scratch.iter_mut().zip(&x) {
            *s = v as usize;
        }
        *tally.entry(cycle_type_of(&scratch)).or_insert(0) += 1;
        // t ∘ x swaps the values p and q
        for &(p, q) in &lgens {
            let (p, q) = (p as u8, q as u8);
            let y: Vec<u8> = x
                .iter()
                .map(|&v| if v == p { q } else if v == q { p } else { v })
                .collect();
            if !seen.contains(&y) {
                seen.insert(y.clone());
                frontier.push(y);
            }
        }
        // x ∘ t swaps the entries at p and q
        for &(p, q) in &rgens {
            let mut y = x.clone();
            y.swap(p, q);
            if !seen.contains(&y) {
                seen.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    let size = BigInt::from(seen.len());
    let mult = left.order() * right.order() / size;
    Ok(tally
        .into_iter()
        .map(|(c, k)| (c, BigInt::from(k) * &mult))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(left: &YoungSubgroup, g: &Permutation, right: &YoungSubgroup) -> ClassCounts {
        let mut out = ClassCounts::new();
        for a in left.elements() {
            for b in right.elements() {
                out.add(a.compose(g).compose(&b).cycle_type(), BigInt::from(1));
            }
        }
        out
    }

    #[test]
    fn odd_even_double_coset_of_identity() {
        // S_{(2,2)} on {1,2},{3,4} against the odd/even stabilizer
        let left = YoungSubgroup::of_partition(&"2,2".parse().unwrap());
        let right = YoungSubgroup::new(vec![vec![0, 2], vec![1, 3]], 4).unwrap();
        let counts = double_coset_class_counts(&left, &Permutation::identity(4), &right).unwrap();
        let get = |s: &str| counts.get(&s.parse().unwrap());
        assert_eq!(get("1,1,1,1"), 1.into());
        assert_eq!(get("2,1,1"), 4.into());
        assert_eq!(get("2,2"), 3.into());
        assert_eq!(get("3,1"), 4.into());
        assert_eq!(get("4"), 4.into());
        assert_eq!(counts.total(), 16.into());
    }

    #[test]
    fn full_group_side() {
        let left = YoungSubgroup::of_partition(&"2,1".parse().unwrap());
        let right = YoungSubgroup::of_partition(&"3".parse().unwrap());
        let g = Permutation::from_images(vec![2, 0, 1]).unwrap();
        let fast = double_coset_class_counts(&left, &g, &right).unwrap();
        assert_eq!(fast, brute(&left, &g, &right));
        assert_eq!(fast.total(), 12.into());
    }

    #[test]
    fn rejects_mismatched_degrees() {
        let left = YoungSubgroup::trivial(3);
        assert!(double_coset_class_counts(&left, &Permutation::identity(4), &left).is_err());
        assert!(YoungSubgroup::new(vec![vec![0, 0]], 2).is_err());
        assert!(YoungSubgroup::new(vec![vec![0, 5]], 2).is_err());
    }

    fn blocks_from_labels(labels: &[usize]) -> Vec<Vec<usize>> {
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (p, &l) in labels.iter().enumerate() {
            map.entry(l).or_default().push(p);
        }
        map.into_values().collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn walker_matches_pair_enumeration(
            la in proptest::collection::vec(0usize..3, 1..=6),
            lb_seed in proptest::collection::vec(0usize..3, 6),
            g_seed in proptest::collection::vec(any::<u32>(), 6),
        ) {
            let m = la.len();
            let lb = &lb_seed[..m];
            let mut images: Vec<usize> = (0..m).collect();
            for i in (1..m).rev() {
                images.swap(i, g_seed[i] as usize % (i + 1));
            }
            let g = Permutation::from_images(images).unwrap();
            let left = YoungSubgroup::new(blocks_from_labels(&la), m).unwrap();
            let right = YoungSubgroup::new(blocks_from_labels(lb), m).unwrap();
            let fast = double_coset_class_counts(&left, &g, &right).unwrap();
            prop_assert_eq!(fast.clone(), brute(&left, &g, &right));
            prop_assert_eq!(fast.total(), left.order() * right.order());
        }
    }
}
