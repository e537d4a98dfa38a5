use std::collections::HashMap;
use std::hash::Hash;
use std::sync::RwLock;

/// Shared compute-if-absent table. The lock is never held while computing, so
/// recursive lookups are fine; concurrent misses may compute the same value
/// twice, which is harmless because every computation is deterministic.
pub struct Memo<K, V> {
    map: RwLock<HashMap<K, V>>,
}

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    pub fn new() -> Self {
        Self {
            map: RwLock::new(HashMap::new()),
        }
    }

    pub fn get(&self, key: &K) -> Option<V> {
        self.map.read().unwrap().get(key).cloned()
    }

    pub fn get_or_compute(&self, key: &K, compute: impl FnOnce() -> V) -> V {
        if let Some(v) = self.get(key) {
            return v;
        }
        let v = compute();
        self.map
            .write()
            .unwrap()
            .entry(key.clone())
            .or_insert(v)
            .clone()
    }

    pub fn insert(&self, key: K, value: V) {
        self.map.write().unwrap().insert(key, value);
    }

    pub fn snapshot(&self) -> Vec<(K, V)> {
        self.map
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }
}

impl<K: Eq + Hash + Clone, V: Clone> Default for Memo<K, V> {
    fn default() -> Self {
        Self::new()
    }
}
