use std::fmt;

use crate::error::{Error, Result};

use super::union_find::UnionFind;

/// A perfect matching on `⊔_{i ∈ I} {2i-1, 2i}`. Pairs are stored 1-based,
/// each as `(a, b)` with `a < b`, sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Pairing {
    pairs: Vec<(usize, usize)>,
}

impl Pairing {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        for p in pairs.iter_mut() {
            if p.0 == p.1 || p.0 == 0 || p.1 == 0 {
                return Err(Error::domain(format!("invalid pair {p:?}")));
            }
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        let mut pts: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        pts.sort_unstable();
        if pts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("pairs must be disjoint"));
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Points covered, ascending.
    pub fn ground_set(&self) -> Vec<usize> {
        let mut pts: Vec<usize> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        pts.sort_unstable();
        pts
    }

    /// Number of connected components of the graph on the ground set with
    /// edges `{2k-1, 2k}` together with the pairs.
    pub fn kappa(&self) -> usize {
        let pts = self.ground_set();
        let max = pts.last().copied().unwrap_or(0);
        let mut uf = UnionFind::new(max + 1);
        for k in (1..=max / 2).map(|k| (2 * k - 1, 2 * k)) {
            if pts.binary_search(&k.0).is_ok() && pts.binary_search(&k.1).is_ok() {
                uf.union(k.0, k.1);
            }
        }
        for &(a, b) in &self.pairs {
            uf.union(a, b);
        }
        // subtract isolated slots not in the ground set, including slot 0
        uf.components() - (max + 1 - pts.len())
    }

    /// `∏_{{p,q}} δ(seq_p, seq_q)`, positions 1-based.
    pub fn delta_product(&self, seq: &[usize]) -> Result<bool> {
        let max = self.pairs.iter().map(|p| p.1).max().unwrap_or(0);
        if max > seq.len() {
            return Err(Error::domain(format!(
                "pairing reaches position {max} but the sequence has length {}",
                seq.len()
            )));
        }
        Ok(self.pairs.iter().all(|&(a, b)| seq[a - 1] == seq[b - 1]))
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{{{a},{b}}}")).collect();
        write!(f, "{{{}}}", pairs.join(","))
    }
}

/// All `(2|I|-1)!!` pairings of `⊔_{i ∈ I} {2i-1, 2i}`.
pub fn pairings(index_set: &[usize]) -> Vec<Pairing> {
    let mut pts: Vec<usize> = index_set.iter().flat_map(|&i| [2 * i - 1, 2 * i]).collect();
    pts.sort_unstable();
    pts.dedup();
    let mut out = Vec::new();
    fn rec(rest: &[usize], cur: &mut Vec<(usize, usize)>, out: &mut Vec<Pairing>) {
        let Some((&first, tail)) = rest.split_first() else {
            let mut pairs = cur.clone();
            pairs.sort_unstable();
            out.push(Pairing { pairs });
            return;
        };
        for k in 0..tail.len() {
            let mut remaining = tail.to_vec();
            let partner = remaining.remove(k);
            cur.push((first, partner));
            rec(&remaining, cur, out);
            cur.pop();
        }
    }
    if !pts.is_empty() {
        rec(&pts, &mut Vec::new(), &mut out);
    }
    out
}
