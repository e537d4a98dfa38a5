//! Export and import of the process-wide memo tables, for persistence.

use crate::coe::offdiagonal::W_TABLE;
use crate::combinatorics::{Partition, CHARACTERS, KOSTKA};
use crate::exact::RationalFunction;
use crate::weingarten::WG;

/// Contents of every memo table, sorted by key.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableSnapshot {
    /// `(λ, ρ, χ^λ(ρ))`
    pub characters: Vec<(Partition, Partition, i64)>,
    /// `(λ, μ, K_{λμ})`
    pub kostka: Vec<(Partition, Partition, u64)>,
    /// `(ρ, Wg_{|ρ|}(ρ))`
    pub wg: Vec<(Partition, RationalFunction)>,
    /// `(μ, W(μ, N))`
    pub w: Vec<(Partition, RationalFunction)>,
}

impl TableSnapshot {
    pub fn len(&self) -> usize {
        self.characters.len() + self.kostka.len() + self.wg.len() + self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn pairs<V: Clone>(mut v: Vec<((Partition, Partition), V)>) -> Vec<(Partition, Partition, V)> {
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v.into_iter().map(|((a, b), x)| (a, b, x)).collect()
}

fn singles<V: Clone>(mut v: Vec<(Partition, V)>) -> Vec<(Partition, V)> {
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

pub fn snapshot() -> TableSnapshot {
    TableSnapshot {
        characters: pairs(CHARACTERS.snapshot()),
        kostka: pairs(KOSTKA.snapshot()),
        wg: singles(WG.snapshot()),
        w: singles(W_TABLE.snapshot()),
    }
}

/// Seeds the tables. Entries are trusted as given.
pub fn import(tables: TableSnapshot) {
    for (a, b, v) in tables.characters {
        CHARACTERS.insert((a, b), v);
    }
    for (a, b, v) in tables.kostka {
        KOSTKA.insert((a, b), v);
    }
    for (k, v) in tables.wg {
        WG.insert(k, v);
    }
    for (k, v) in tables.w {
        W_TABLE.insert(k, v);
    }
}
