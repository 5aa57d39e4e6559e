use std::collections::{BTreeMap, HashMap};

use super::mdp::{ActionId, AgentState};

/// Which of the two value tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table {
    Q1,
    Q2,
}

impl Table {
    pub fn other(self) -> Table {
        match self {
            Table::Q1 => Table::Q2,
            Table::Q2 => Table::Q1,
        }
    }

    fn slot(self) -> usize {
        match self {
            Table::Q1 => 0,
            Table::Q2 => 1,
        }
    }
}

/// Two lazily materialized value tables sharing the default `q0`.
#[derive(Debug, Clone)]
pub struct QTablePair {
    q0: f64,
    entries: HashMap<(AgentState, ActionId), [f64; 2]>,
}

/// Persisted form: `"state|action"` to `[q1, q2]`.
pub type QSnapshot = BTreeMap<String, [f64; 2]>;

impl QTablePair {
    pub fn new(q0: f64) -> Self {
        QTablePair {
            q0,
            entries: HashMap::new(),
        }
    }

    pub fn default_value(&self) -> f64 {
        self.q0
    }

    #[inline]
    pub fn get(&self, table: Table, s: &AgentState, a: &ActionId) -> f64 {
        self.entries
            .get(&(*s, *a))
            .map_or(self.q0, |v| v[table.slot()])
    }

    pub fn set(&mut self, table: Table, s: &AgentState, a: &ActionId, value: f64) {
        let q0 = self.q0;
        self.entries.entry((*s, *a)).or_insert([q0, q0])[table.slot()] = value;
    }

    pub fn q1(&self, s: &AgentState, a: &ActionId) -> f64 {
        self.get(Table::Q1, s, a)
    }

    pub fn q2(&self, s: &AgentState, a: &ActionId) -> f64 {
        self.get(Table::Q2, s, a)
    }

    /// `Q1(s, a) + Q2(s, a)`, the greedy score.
    #[inline]
    pub fn sum(&self, s: &AgentState, a: &ActionId) -> f64 {
        self.entries
            .get(&(*s, *a))
            .map_or(2.0 * self.q0, |v| v[0] + v[1])
    }

    /// Keys written so far.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, s: &AgentState, a: &ActionId) -> bool {
        self.entries.contains_key(&(*s, *a))
    }

    pub fn snapshot(&self) -> QSnapshot {
        self.entries
            .iter()
            .map(|((s, a), v)| (format!("{s}|{a}"), *v))
            .collect()
    }
}
