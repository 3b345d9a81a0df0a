use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::automaton::{Dvpa, StateId, SymbolId};
use crate::summaries::wm::FlaggedRelation;

/// What connects two successive steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepEdge {
    Internal(SymbolId),
    /// A `c·w·r` block at the height of the first step.
    Matched {
        call: SymbolId,
        inner: (StateId, StateId),
        ret: SymbolId,
    },
    /// A call whose matching return never comes.
    PendingCall(SymbolId),
}

/// Graph on states whose edges join states that occur on successive steps.
#[derive(Clone, Debug)]
pub struct StepGraph {
    pub initial: StateId,
    pub vertices: BTreeSet<StateId>,
    /// One witness per edge; internal edges are preferred over matched
    /// blocks, and those over pending calls.
    pub edges: BTreeMap<(StateId, StateId), StepEdge>,
    pub priority: BTreeMap<StateId, u32>,
}

impl StepGraph {
    pub fn successors(&self, q: StateId) -> impl Iterator<Item = StateId> + '_ {
        self.edges
            .range((q, StateId(0))..=(q, StateId(u32::MAX)))
            .map(|(&(_, p), _)| p)
    }

    pub fn edge_word(&self, edge: StepEdge, wm: &FlaggedRelation) -> Vec<SymbolId> {
        match edge {
            StepEdge::Internal(i) => alloc::vec![i],
            StepEdge::PendingCall(c) => alloc::vec![c],
            StepEdge::Matched { call, inner, ret } => {
                let mut word = alloc::vec![call];
                word.extend(
                    wm.reach_witness(inner.0, inner.1)
                        .expect("summarised interior"),
                );
                word.push(ret);
                word
            }
        }
    }

    /// A word leading from the initial state to `target` along step edges.
    ///
    /// Every piece of the word is a call, an internal symbol or a `c·w·r`
    /// block, so it can be read on top of any stack.
    pub fn access_word(&self, target: StateId, wm: &FlaggedRelation) -> Option<Vec<SymbolId>> {
        let mut parent: BTreeMap<StateId, (StateId, StepEdge)> = BTreeMap::new();
        let mut seen = BTreeSet::from([self.initial]);
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            if q == target {
                let mut pieces = Vec::new();
                let mut cur = q;
                while let Some(&(prev, edge)) = parent.get(&cur) {
                    pieces.push(edge);
                    cur = prev;
                }
                return Some(
                    pieces
                        .into_iter()
                        .rev()
                        .flat_map(|e| self.edge_word(e, wm))
                        .collect(),
                );
            }
            for p in self.successors(q) {
                if seen.insert(p) {
                    parent.insert(p, (q, self.edges[&(q, p)]));
                    queue.push_back(p);
                }
            }
        }
        None
    }
}

/// Builds the step graph, restricted to states occurring on steps of runs
/// from the initial configuration.
pub fn step_graph(dvpa: &Dvpa, wm: &FlaggedRelation) -> StepGraph {
    let mut all: BTreeMap<(StateId, StateId), StepEdge> = BTreeMap::new();
    for (q, i, p) in dvpa.internal_transitions() {
        all.entry((q, p)).or_insert(StepEdge::Internal(i));
    }
    let returns: Vec<_> = dvpa.return_transitions().collect();
    for (q, c, q1, z) in dvpa.call_transitions() {
        for &(p1, z1, r, p) in &returns {
            if z1 == z && wm.reach(q1, p1) {
                all.entry((q, p)).or_insert(StepEdge::Matched {
                    call: c,
                    inner: (q1, p1),
                    ret: r,
                });
            }
        }
    }
    for (q, c, q1, _) in dvpa.call_transitions() {
        all.entry((q, q1)).or_insert(StepEdge::PendingCall(c));
    }

    let mut vertices = BTreeSet::from([dvpa.initial()]);
    let mut stack = alloc::vec![dvpa.initial()];
    while let Some(q) = stack.pop() {
        for (&(_, p), _) in all.range((q, StateId(0))..=(q, StateId(u32::MAX))) {
            if vertices.insert(p) {
                stack.push(p);
            }
        }
    }
    all.retain(|(q, _), _| vertices.contains(q));
    let priority = vertices.iter().map(|&q| (q, dvpa.priority(q))).collect();
    StepGraph {
        initial: dvpa.initial(),
        vertices,
        edges: all,
        priority,
    }
}
