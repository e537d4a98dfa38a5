use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::partition::Partition;

/// A permutation of `{1, ..., m}`, stored 0-based.
///
/// Composition is `(σ∘τ)(x) = σ(τ(x))`; the right action on sequences is
/// `(i^σ)_k = i_{σ(k)}`, so `(i^σ)^τ = i^{σ∘τ}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Self {
            images: (0..m).collect(),
        }
    }

    /// From 0-based images; rejects anything that is not a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x >= m || std::mem::replace(&mut seen[x], true) {
                return Err(Error::domain(format!("not a permutation: {images:?}")));
            }
        }
        Ok(Self { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Self { images }
    }

    /// Transposition of the 1-based points `a` and `b`.
    pub fn transposition(m: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..m).collect();
        images.swap(a - 1, b - 1);
        Self { images }
    }

    /// Parses cycle notation such as `(1 3)(2 4)` on `{1..m}`.
    pub fn from_cycles(s: &str, m: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut seen = vec![false; m];
        let s = s.trim();
        if !(s.is_empty() || s == "()" || s == "id") {
            for chunk in s.split(')') {
                let chunk = chunk.trim();
                if chunk.is_empty() {
                    continue;
                }
                let body = chunk
                    .strip_prefix('(')
                    .ok_or_else(|| Error::parse(format!("bad cycle notation `{s}`")))?;
                let cycle: Vec<usize> = body
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<usize>()
                            .ok()
                            .filter(|&x| x >= 1 && x <= m)
                            .ok_or_else(|| Error::parse(format!("bad point `{t}` in `{s}`")))
                    })
                    .collect::<Result<_>>()?;
                for (k, &x) in cycle.iter().enumerate() {
                    if std::mem::replace(&mut seen[x - 1], true) {
                        return Err(Error::parse(format!("point {x} repeated in `{s}`")));
                    }
                    images[x - 1] = cycle[(k + 1) % cycle.len()] - 1;
                }
            }
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the 0-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        Self {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Self { images }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        cycle_type_of(&self.images)
    }

    /// Right action `(seq^σ)_k = seq_{σ(k)}`.
    pub fn act<T: Clone>(&self, seq: &[T]) -> Vec<T> {
        assert_eq!(seq.len(), self.degree());
        self.images.iter().map(|&x| seq[x].clone()).collect()
    }
}

/// Cycle type of a 0-based image array, without allocating a `Permutation`.
pub(crate) fn cycle_type_of(images: &[usize]) -> Partition {
    let m = images.len();
    let mut seen = vec![false; m];
    let mut parts = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = images[x];
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::from_sorted_unchecked(parts)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let pts: Vec<String> = cycle.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Cycle notation; the degree is the largest point mentioned.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let m = s
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|t| t.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        Self::from_cycles(s, m)
    }
}

/// All permutations of `{0..m}` in lexicographic order of image arrays.
pub fn all_permutations(m: usize) -> impl Iterator<Item = Permutation> {
    let mut next = Some((0..m).collect::<Vec<usize>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut a = cur.clone();
        if next_permutation(&mut a) {
            next = Some(a);
        }
        Some(Permutation::from_images_unchecked(cur))
    })
}

/// Advances to the next lexicographic arrangement; false after the last one.
pub(crate) fn next_permutation<T: Ord>(a: &mut [T]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::from_cycles("(1 3)(2 4)", 4).unwrap();
        assert_eq!(p.images(), &[2, 3, 0, 1]);
        assert_eq!(p.to_string(), "(1 3)(2 4)");
        assert_eq!(p.cycle_type().parts(), &[2, 2]);
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!("(1,2,3)".parse::<Permutation>().unwrap().to_string(), "(1 2 3)");
        assert!(Permutation::from_cycles("(1 1)", 2).is_err());
        assert!(Permutation::from_cycles("(1 5)", 4).is_err());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn composition_convention() {
        // (1 2)∘(2 3) sends 2 -> 3 -> 3, 3 -> 2 -> 1
        let a = Permutation::transposition(3, 1, 2);
        let b = Permutation::transposition(3, 2, 3);
        let ab = a.compose(&b);
        assert_eq!(ab.apply(1), 2);
        assert_eq!(ab.apply(2), 0);
        assert_eq!(ab.to_string(), "(1 2 3)");
    }

    #[test]
    fn enumerates_symmetric_group() {
        assert_eq!(all_permutations(4).count(), 24);
        assert_eq!(all_permutations(0).count(), 1);
        let s3: Vec<Permutation> = all_permutations(3).collect();
        assert!(s3.windows(2).all(|w| w[0] < w[1]));
    }

    fn perm_strategy(m: usize) -> impl Strategy<Value = Permutation> {
        Just((0..m).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(Permutation::from_images_unchecked)
    }

    proptest! {
        #[test]
        fn right_action_composes(
            s in perm_strategy(6),
            t in perm_strategy(6),
            seq in proptest::collection::vec(1usize..4, 6),
        ) {
            prop_assert_eq!(t.act(&s.act(&seq)), s.compose(&t).act(&seq));
        }

        #[test]
        fn inverse_and_conjugate_invariance(s in perm_strategy(7), t in perm_strategy(7)) {
            prop_assert!(s.compose(&s.inverse()).is_identity());
            prop_assert_eq!(s.inverse().cycle_type(), s.cycle_type());
            prop_assert_eq!(s.compose(&t).cycle_type(), t.compose(&s).cycle_type());
        }
    }
}
