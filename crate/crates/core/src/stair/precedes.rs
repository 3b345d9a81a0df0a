use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::automaton::{Dvpa, StateId};
use crate::flag::Flag;
use crate::summaries::{CoupledRelation, FlaggedRelation, Reachability};

/// An ordered pair of non-final states.
pub type StatePair = (StateId, StateId);

/// How `(p, p') ≺ (q, q')` was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecedesVia {
    /// The state `p''` reached from `p` by a well-matched run.
    pub via: StateId,
    /// Whether `p'` returns to `p` by a well-matched run (`σ' = ε`).
    pub flat_return: bool,
}

/// The relation `≺` on pairs of reachable non-final states.
#[derive(Clone, Debug, Default)]
pub struct PrecedesRelation {
    /// Keyed by `((p, p'), (q, q'))`, meaning `(p, p') ≺ (q, q')`.
    pub pairs: BTreeMap<(StatePair, StatePair), PrecedesVia>,
}

impl PrecedesRelation {
    pub fn contains(&self, lower: StatePair, upper: StatePair) -> bool {
        self.pairs.contains_key(&(lower, upper))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs related to themselves; each one is a forbidden pattern.
    pub fn reflexive(&self) -> impl Iterator<Item = StatePair> + '_ {
        self.pairs
            .keys()
            .filter(|(lower, upper)| lower == upper)
            .map(|&(pair, _)| pair)
    }

    /// Whether the relation equals its transitive closure.
    pub fn is_transitive(&self) -> bool {
        self.pairs.keys().all(|&(a, b)| {
            self.pairs
                .range((b, (StateId(0), StateId(0)))..=(b, (StateId(u32::MAX), StateId(u32::MAX))))
                .all(|(&(_, c), _)| self.contains(a, c))
        })
    }
}

/// `(p, p') ≺ (q, q')` iff all four states are reachable and non-final and
/// for some `p''`:
///
/// * an ascent from `q` to `p` that sees an accepting step, coupled with a
///   descent from `p''` to `q'` over the same stack;
/// * a well-matched run from `p` to `p'` avoiding accepting steps;
/// * a well-matched run from `p` to `p''`;
/// * a run from `p'` to `p` pushing some `σ'` and avoiding accepting steps,
///   coupled with a descent from `p''` to `p''` popping `σ'`; `σ' = ε`
///   degenerates to a well-matched avoiding run from `p'` to `p`.
pub fn precedes(
    dvpa: &Dvpa,
    reach: &Reachability,
    wm: &FlaggedRelation,
    coupled: &CoupledRelation,
) -> PrecedesRelation {
    let candidate = |s: StateId| reach.contains(s) && !dvpa.is_accepting(s);
    let candidates: Vec<StateId> = dvpa.states().filter(|&s| candidate(s)).collect();
    let mut pairs = BTreeMap::new();
    for quad in coupled.core.keys() {
        let (q, p, via, q1) = (quad.q, quad.p, quad.d, quad.d2);
        if quad.flag != Flag::Sees || !candidate(q) || !candidate(p) || !candidate(q1) {
            continue;
        }
        if !wm.reach(p, via) {
            continue;
        }
        for &p1 in &candidates {
            if !wm.avoids(p, p1) {
                continue;
            }
            let flat_return = wm.avoids(p1, p);
            if flat_return || coupled.full_contains(p1, p, via, via, Flag::Avoids) {
                pairs
                    .entry(((p, p1), (q, q1)))
                    .or_insert(PrecedesVia { via, flat_return });
            }
        }
    }
    PrecedesRelation { pairs }
}
