use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{factorial, Polynomial};

/// Weakly decreasing sequence of positive integers. Used both as a cycle type
/// and as the type of an index sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Self { parts })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Self { parts }
    }

    /// The single-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Self { parts: vec![n] }
    }

    /// The single-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    /// `(2, 1^(n-2))`, the cycle type of a transposition. Requires `n >= 2`.
    pub fn transposition(n: usize) -> Self {
        assert!(n >= 2);
        let mut parts = vec![2];
        parts.extend(std::iter::repeat_n(1, n - 2));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|λ|`
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `ℓ(λ)`
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ! = ∏ λ_i!`
    pub fn factorial_product(&self) -> BigInt {
        self.parts.iter().map(|&p| factorial(p)).product()
    }

    /// `m_k(λ)` for every part size `k` present.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `z_λ = ∏ k^{m_k} m_k!`, the centralizer order of the class.
    pub fn centralizer_order(&self) -> BigInt {
        self.multiplicities()
            .into_iter()
            .map(|(k, m)| BigInt::from(k).pow(m as u32) * factorial(m))
            .product()
    }

    /// Number of permutations of cycle type `λ`.
    pub fn class_size(&self) -> BigInt {
        factorial(self.size()) / self.centralizer_order()
    }

    /// `2λ = (2λ_1, 2λ_2, ...)`
    pub fn doubled(&self) -> Self {
        Self {
            parts: self.parts.iter().map(|p| 2 * p).collect(),
        }
    }

    pub fn conjugate(&self) -> Self {
        let first = self.parts.first().copied().unwrap_or(0);
        Self {
            parts: (1..=first)
                .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
                .collect(),
        }
    }

    /// `∏_{(i,j) ∈ λ} (N + j - i)`, 1-based cells.
    pub fn content_product(&self) -> Polynomial {
        self.contents().map(Polynomial::linear).product()
    }

    /// Contents `j - i` of every cell, row by row.
    pub fn contents(&self) -> impl Iterator<Item = i64> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (0..len).map(move |j| j as i64 - i as i64))
    }

    /// The canonical sequence `(1^λ_1, 2^λ_2, ...)` of this type.
    pub fn canonical_sequence(&self) -> Vec<usize> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(v, &len)| std::iter::repeat_n(v + 1, len))
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Accepts `3,3,1`, `(3,3,1)`, `3 3 1` and exponent shorthand such as `2,1^2`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e),
                None => (tok, "1"),
            };
            let base: usize = base
                .parse()
                .map_err(|_| Error::parse(format!("bad partition part `{tok}` in `{s}`")))?;
            let exp: usize = exp
                .parse()
                .map_err(|_| Error::parse(format!("bad exponent in `{tok}`")))?;
            parts.extend(std::iter::repeat_n(base, exp));
        }
        if parts.is_empty() {
            return Err(Error::parse(format!("empty partition `{s}`")));
        }
        Self::new(parts).map_err(|e| Error::parse(e.to_string()))
    }
}

/// All partitions of `n` in reverse lexicographic order: `(n)` first, `(1^n)` last.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::from_sorted_unchecked(cur.clone()));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn enumerates_in_reverse_lex_order() {
        assert_eq!(partitions(1), vec![part("1")]);
        let p4: Vec<String> = partitions(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(p4, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        assert!(partitions(6).windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn counts_match_brute_force() {
        // brute force: weakly decreasing tuples drawn from all compositions
        fn compositions(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            (1..=n)
                .flat_map(|first| {
                    compositions(n - first).into_iter().map(move |mut c| {
                        c.insert(0, first);
                        c
                    })
                })
                .collect()
        }
        for n in 1..=8 {
            let brute = compositions(n)
                .into_iter()
                .filter(|c| c.windows(2).all(|w| w[0] >= w[1]))
                .count();
            assert_eq!(partitions(n).len(), brute);
        }
        assert_eq!(partitions(6).len(), 11);
    }

    #[test]
    fn parses_and_renders() {
        assert_eq!(part("3,3,1").parts(), &[3, 3, 1]);
        assert_eq!(part("(2, 1^2)").parts(), &[2, 1, 1]);
        assert_eq!(part("1^4").to_string(), "1,1,1,1");
        assert!("1,2".parse::<Partition>().is_err());
        assert!("0".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn statistics() {
        let l = part("3,3,1");
        assert_eq!(l.size(), 7);
        assert_eq!(l.len(), 3);
        assert_eq!(l.factorial_product(), BigInt::from(36));
        assert_eq!(l.multiplicities(), BTreeMap::from([(1, 1), (3, 2)]));
        assert_eq!(l.conjugate(), part("3,2,2"));
        assert_eq!(part("2,1,1").class_size(), BigInt::from(6));
        assert_eq!(part("2,2").doubled(), part("4,4"));
        assert_eq!(part("2,1").canonical_sequence(), vec![1, 1, 2]);
    }

    #[test]
    fn content_products() {
        assert_eq!(part("1").content_product(), Polynomial::n());
        assert_eq!(part("2").content_product(), Polynomial::from_int_coeffs([0, 1, 1]));
        assert_eq!(part("1,1").content_product(), Polynomial::from_int_coeffs([0, -1, 1]));
    }
}
