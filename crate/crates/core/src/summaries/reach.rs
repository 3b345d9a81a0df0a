use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::automaton::{Dvpa, StackSymbol, StateId};
use crate::summaries::wm::FlaggedRelation;

/// The stack symbol visible at a configuration; `None` is the bottom marker.
pub type Surface = Option<StackSymbol>;

/// States and `(state, top of stack)` pairs occurring in runs from the
/// initial configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reachability {
    pub states: BTreeSet<StateId>,
    pub surfaces: BTreeSet<(StateId, Surface)>,
}

impl Reachability {
    pub fn contains(&self, q: StateId) -> bool {
        self.states.contains(&q)
    }
}

/// Closure of `(q₀, ⊥)` under internal moves, calls, and well-matched
/// segments at an unchanged surface.
///
/// A return is only ever taken as the end of a `c·w·r` block, which the
/// well-matched summaries already cover, so the symbol below a popped one
/// never has to be remembered.
pub fn reachable(dvpa: &Dvpa, wm: &FlaggedRelation) -> Reachability {
    let mut surfaces = BTreeSet::new();
    let mut queue = vec![(dvpa.initial(), None)];
    let calls: Vec<_> = dvpa.call_transitions().collect();
    while let Some(item) = queue.pop() {
        if !surfaces.insert(item) {
            continue;
        }
        let (q, top) = item;
        for p in dvpa.states() {
            if wm.reach(q, p) {
                queue.push((p, top));
            }
        }
        for &(from, _, p, z) in &calls {
            if from == q {
                queue.push((p, Some(z)));
            }
        }
    }
    let states = surfaces.iter().map(|&(q, _)| q).collect();
    Reachability { states, surfaces }
}
