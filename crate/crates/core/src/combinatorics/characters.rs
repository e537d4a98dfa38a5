//! Irreducible characters of the symmetric group, degrees and Kostka numbers.

use std::sync::LazyLock;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::factorial;
use crate::memo::Memo;

use super::partition::Partition;

pub(crate) static CHARACTERS: LazyLock<Memo<(Partition, Partition), i64>> = LazyLock::new(Memo::new);
pub(crate) static KOSTKA: LazyLock<Memo<(Partition, Partition), u64>> = LazyLock::new(Memo::new);

/// `χ^λ(ρ)` by the Murnaghan–Nakayama rule.
pub fn irreducible_character(lambda: &Partition, rho: &Partition) -> Result<i64> {
    if lambda.size() != rho.size() {
        return Err(Error::domain(format!(
            "character χ^({lambda}) needs a class of size {}, got ({rho})",
            lambda.size()
        )));
    }
    Ok(murnaghan_nakayama(lambda, rho))
}

/// Border strips are removed as bead moves on the beta-set
/// `β_i = λ_i + ℓ - 1 - i`: a strip of length `r` is a bead `b` with `b - r`
/// free, and its height is the number of beads strictly between.
fn murnaghan_nakayama(lambda: &Partition, rho: &Partition) -> i64 {
    if rho.is_empty() {
        return i64::from(lambda.is_empty());
    }
    let key = (lambda.clone(), rho.clone());
    CHARACTERS.get_or_compute(&key, || {
        let r = rho.parts()[0];
        let rest = Partition::from_sorted_unchecked(rho.parts()[1..].to_vec());
        let l = lambda.len();
        let beta: Vec<usize> = lambda
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &p)| p + l - 1 - i)
            .collect();
        let mut total = 0i64;
        for (idx, &b) in beta.iter().enumerate() {
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let target = b - r;
            let height = beta.iter().filter(|&&x| x > target && x < b).count();
            let mut moved = beta.clone();
            moved[idx] = target;
            moved.sort_unstable_by(|x, y| y.cmp(x));
            let parts: Vec<usize> = moved
                .iter()
                .enumerate()
                .map(|(i, &x)| x - (l - 1 - i))
                .filter(|&p| p > 0)
                .collect();
            let sign = if height % 2 == 0 { 1 } else { -1 };
            total += sign * murnaghan_nakayama(&Partition::from_sorted_unchecked(parts), &rest);
        }
        total
    })
}

/// `f^λ` by the hook length formula.
pub fn dimension(lambda: &Partition) -> u64 {
    let conj = lambda.conjugate();
    let hooks: BigInt = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &row)| {
            let conj = &conj;
            (0..row).map(move |j| BigInt::from(row - j + conj.parts()[j] - i - 1))
        })
        .product();
    (factorial(lambda.size()) / hooks)
        .to_u64()
        .expect("dimension fits in u64")
}

/// `K_{λμ}`: semistandard tableaux of shape `λ` and weight `μ`. The cells
/// holding the largest letter form a horizontal strip of size `μ_last`, so
/// tableaux are built by peeling such strips off, memoized on (shape, weight).
pub fn kostka(lambda: &Partition, mu: &Partition) -> Result<u64> {
    if lambda.size() != mu.size() {
        return Err(Error::domain(format!(
            "Kostka number needs |λ| = |μ|, got ({lambda}) and ({mu})"
        )));
    }
    Ok(kostka_rec(lambda.parts(), mu.parts()))
}

fn kostka_rec(shape: &[usize], weight: &[usize]) -> u64 {
    let Some((&last, prefix)) = weight.split_last() else {
        return u64::from(shape.is_empty());
    };
    // more rows than letters cannot be column-strict
    if shape.len() > weight.len() {
        return 0;
    }
    let key = (
        Partition::from_sorted_unchecked(shape.to_vec()),
        Partition::from_sorted_unchecked(weight.to_vec()),
    );
    KOSTKA.get_or_compute(&key, || {
        let mut total = 0;
        let mut inner = vec![0; shape.len()];
        strips(shape, 0, last, &mut inner, &mut |nu| {
            let nu: Vec<usize> = nu.iter().copied().filter(|&p| p > 0).collect();
            total += kostka_rec(&nu, prefix);
        });
        total
    })
}

/// Visits every `ν ⊆ λ` with `λ/ν` a horizontal strip of `remaining` cells:
/// `λ_{i+1} ≤ ν_i ≤ λ_i`.
fn strips(shape: &[usize], row: usize, remaining: usize, inner: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if row == shape.len() {
        if remaining == 0 {
            visit(inner);
        }
        return;
    }
    let lower = shape.get(row + 1).copied().unwrap_or(0);
    let max_take = (shape[row] - lower).min(remaining);
    for take in 0..=max_take {
        inner[row] = shape[row] - take;
        strips(shape, row + 1, remaining - take, inner, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partitions;
    use num_traits::Zero;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_character_values() {
        for n in 1..=6 {
            for rho in partitions(n) {
                assert_eq!(irreducible_character(&Partition::row(n), &rho).unwrap(), 1);
            }
        }
        assert_eq!(irreducible_character(&part("2,1"), &part("3")).unwrap(), -1);
        assert_eq!(irreducible_character(&part("2,1"), &part("1,1,1")).unwrap(), 2);
        assert_eq!(irreducible_character(&part("2,1"), &part("2,1")).unwrap(), 0);
        // sign character
        assert_eq!(irreducible_character(&part("1,1,1,1"), &part("2,1,1")).unwrap(), -1);
        assert!(irreducible_character(&part("2"), &part("1,1,1")).is_err());
    }

    /// Full S_4 table, rows λ and columns ρ both in reverse lex order.
    #[test]
    fn s4_character_table() {
        let expected = [
            [1, 1, 1, 1, 1],
            [-1, 0, -1, 1, 3],
            [0, -1, 2, 0, 2],
            [1, 0, -1, -1, 3],
            [-1, 1, 1, -1, 1],
        ];
        let ps = partitions(4);
        for (i, l) in ps.iter().enumerate() {
            for (j, r) in ps.iter().enumerate() {
                assert_eq!(irreducible_character(l, r).unwrap(), expected[i][j], "χ^{l}({r})");
            }
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(dimension(&part("5")), 1);
        assert_eq!(dimension(&part("2,2")), 2);
        assert_eq!(dimension(&part("2,1")), 2);
        assert_eq!(dimension(&part("3,2,1")), 16);
        for n in 1..=7 {
            for l in partitions(n) {
                let at_identity = irreducible_character(&l, &Partition::column(n)).unwrap();
                assert_eq!(dimension(&l) as i64, at_identity);
            }
        }
    }

    #[test]
    fn orthogonality_relations() {
        for n in 1..=6 {
            let ps = partitions(n);
            for l in &ps {
                for nu in &ps {
                    let s: BigInt = ps
                        .iter()
                        .map(|rho| {
                            rho.class_size()
                                * irreducible_character(l, rho).unwrap()
                                * irreducible_character(nu, rho).unwrap()
                        })
                        .sum();
                    let expected = if l == nu { factorial(n) } else { BigInt::zero() };
                    assert_eq!(s, expected);
                }
            }
        }
    }

    #[test]
    fn sum_of_squared_dimensions() {
        for n in 1..=8 {
            let s: BigInt = partitions(n).iter().map(|l| BigInt::from(dimension(l)).pow(2)).sum();
            assert_eq!(s, factorial(n));
        }
    }

    /// Literal enumeration: fill cells with letters 1..=ℓ(μ) and keep
    /// row-weak, column-strict fillings of the right weight.
    fn kostka_brute(lambda: &Partition, mu: &Partition) -> u64 {
        let cells: Vec<(usize, usize)> = lambda
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r).map(move |j| (i, j)))
            .collect();
        let letters = mu.len();
        let mut filling = vec![0usize; cells.len()];
        let mut count = 0;
        fn go(k: usize, cells: &[(usize, usize)], letters: usize, filling: &mut Vec<usize>, lambda: &Partition, mu: &Partition, count: &mut u64) {
            if k == cells.len() {
                let mut w = vec![0; letters];
                for &x in filling.iter() {
                    w[x] += 1;
                }
                if w == mu.parts() {
                    *count += 1;
                }
                return;
            }
            let (i, j) = cells[k];
            for x in 0..letters {
                if j > 0 {
                    let left = cells.iter().position(|&c| c == (i, j - 1)).unwrap();
                    if filling[left] > x {
                        continue;
                    }
                }
                if i > 0 {
                    let up = cells.iter().position(|&c| c == (i - 1, j)).unwrap();
                    if filling[up] >= x {
                        continue;
                    }
                }
                filling[k] = x;
                go(k + 1, cells, letters, filling, lambda, mu, count);
            }
        }
        go(0, &cells, letters, &mut filling, lambda, mu, &mut count);
        count
    }

    #[test]
    fn kostka_numbers() {
        assert_eq!(kostka(&part("2,1"), &part("1,1,1")).unwrap(), 2);
        assert_eq!(kostka(&part("1,1"), &part("2")).unwrap(), 0);
        for n in 1..=6 {
            for l in partitions(n) {
                let expected = u64::from(l == Partition::row(n));
                assert_eq!(kostka(&l, &Partition::row(n)).unwrap(), expected);
                assert_eq!(kostka(&l, &Partition::column(n)).unwrap(), dimension(&l));
            }
        }
        assert!(kostka(&part("2"), &part("1")).is_err());
    }

    #[test]
    fn kostka_matches_tableau_enumeration() {
        for n in 1..=5 {
            for l in partitions(n) {
                for mu in partitions(n) {
                    assert_eq!(kostka(&l, &mu).unwrap(), kostka_brute(&l, &mu), "K({l};{mu})");
                }
            }
        }
    }
}
