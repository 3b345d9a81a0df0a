use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::automaton::Dvpa;

use super::precedes::{PrecedesRelation, StatePair};

/// Height of every non-final pair in the order `≺`; minimal pairs have
/// height 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightFunction {
    pub ht: BTreeMap<StatePair, u32>,
    /// Largest height, 0 when there are no non-final states.
    pub h: u32,
}

impl HeightFunction {
    pub fn get(&self, pair: StatePair) -> Option<u32> {
        self.ht.get(&pair).copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("the precedence relation has a cycle, so the automaton has a forbidden pattern")]
pub struct CyclicPrecedes;

/// Longest `≺`-chain ending in each pair of non-final states.
pub fn heights(dvpa: &Dvpa, precedes: &PrecedesRelation) -> Result<HeightFunction, CyclicPrecedes> {
    let nonfinal: Vec<_> = dvpa.states().filter(|&q| !dvpa.is_accepting(q)).collect();
    let mut ht: BTreeMap<StatePair, u32> = BTreeMap::new();
    let mut indegree: BTreeMap<StatePair, usize> = BTreeMap::new();
    let mut above: BTreeMap<StatePair, Vec<StatePair>> = BTreeMap::new();
    for &a in &nonfinal {
        for &b in &nonfinal {
            indegree.insert((a, b), 0);
        }
    }
    for &(lower, upper) in precedes.pairs.keys() {
        *indegree.get_mut(&upper).expect("≺ relates non-final pairs") += 1;
        above.entry(lower).or_default().push(upper);
    }
    let mut ready: VecDeque<StatePair> = indegree
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&p, _)| p)
        .collect();
    for &p in &ready {
        ht.insert(p, 1);
    }
    while let Some(p) = ready.pop_front() {
        let level = ht[&p];
        for &up in above.get(&p).map(Vec::as_slice).unwrap_or(&[]) {
            let entry = ht.entry(up).or_insert(0);
            *entry = (*entry).max(level + 1);
            let d = indegree.get_mut(&up).expect("known pair");
            *d -= 1;
            if *d == 0 {
                ready.push_back(up);
            }
        }
    }
    if indegree.values().any(|&d| d > 0) {
        return Err(CyclicPrecedes);
    }
    let h = ht.values().copied().max().unwrap_or(0);
    Ok(HeightFunction { ht, h })
}
