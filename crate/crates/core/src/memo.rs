use std::collections::HashMap;
use std::hash::Hash;

use parking_lot::RwLock;

use crate::arith::Rational;

/// Thread-safe memo table. Values are computed outside the lock, so two
/// threads may race on the same key; both compute the same value.
pub(crate) struct Memo<K> {
    map: RwLock<HashMap<K, Rational>>,
}

impl<K: Hash + Eq + Clone> Memo<K> {
    pub fn new() -> Self {
        Memo { map: RwLock::new(HashMap::new()) }
    }

    pub fn get(&self, k: &K) -> Option<Rational> {
        self.map.read().get(k).cloned()
    }

    pub fn insert(&self, k: K, v: Rational) {
        self.map.write().insert(k, v);
    }

    pub fn len(&self) -> usize {
        self.map.read().len()
    }

    pub fn snapshot(&self) -> Vec<(K, Rational)> {
        self.map.read().iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    pub fn clear(&self) {
        self.map.write().clear();
    }
}
