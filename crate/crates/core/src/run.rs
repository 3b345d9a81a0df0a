//! Exact simulation of finite runs and their steps.
//!
//! A position of a run is a *step* if no later position of the same run has
//! a smaller stack height. Within a finite trace "later" means later within
//! the trace.

use alloc::vec;
use alloc::vec::Vec;

use crate::automaton::{Dvpa, StackSymbol, StateId, SymbolId, SymbolKind};

/// A state together with its stack contents, bottom first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub state: StateId,
    pub stack: Vec<StackSymbol>,
}

impl Configuration {
    pub fn new(state: StateId, stack: Vec<StackSymbol>) -> Self {
        Configuration { state, stack }
    }

    pub fn empty(state: StateId) -> Self {
        Configuration {
            state,
            stack: Vec::new(),
        }
    }

    pub fn height(&self) -> usize {
        self.stack.len()
    }

    pub fn top(&self) -> Option<StackSymbol> {
        self.stack.last().copied()
    }

    /// Stack contents with the top first.
    pub fn stack_top_first(&self) -> impl Iterator<Item = StackSymbol> + '_ {
        self.stack.iter().rev().copied()
    }
}

const NIL: u32 = u32::MAX;

/// The configurations visited by [`run_word`].
///
/// Stacks are shared between positions through a persistent linked stack;
/// [`RunTrace::config`] materialises one configuration on demand.
#[derive(Clone, Debug)]
pub struct RunTrace {
    states: Vec<StateId>,
    heights: Vec<usize>,
    tops: Vec<u32>,
    cells: Vec<(StackSymbol, u32)>,
    consumed: Vec<SymbolId>,
    death: Option<usize>,
    step_flags: Vec<bool>,
    f_on_step_count: usize,
    accepting: Vec<bool>,
}

impl RunTrace {
    /// Number of configurations in the trace.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, pos: usize) -> StateId {
        self.states[pos]
    }

    pub fn states(&self) -> &[StateId] {
        &self.states
    }

    pub fn height(&self, pos: usize) -> usize {
        self.heights[pos]
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn config(&self, pos: usize) -> Configuration {
        let mut stack = Vec::with_capacity(self.heights[pos]);
        let mut cell = self.tops[pos];
        while cell != NIL {
            let (z, below) = self.cells[cell as usize];
            stack.push(z);
            cell = below;
        }
        stack.reverse();
        Configuration {
            state: self.states[pos],
            stack,
        }
    }

    pub fn last(&self) -> Configuration {
        self.config(self.len() - 1)
    }

    pub fn configs(&self) -> impl Iterator<Item = Configuration> + '_ {
        (0..self.len()).map(|i| self.config(i))
    }

    /// The input word the trace was asked to read.
    pub fn consumed(&self) -> &[SymbolId] {
        &self.consumed
    }

    /// Index of the symbol on which no transition applied.
    pub fn death(&self) -> Option<usize> {
        self.death
    }

    pub fn is_dead(&self) -> bool {
        self.death.is_some()
    }

    pub fn step_flags(&self) -> &[bool] {
        &self.step_flags
    }

    pub fn step_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.step_flags
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i)
    }

    /// Number of steps carrying an accepting state (final state, or even
    /// priority for parity kinds).
    pub fn f_on_step_count(&self) -> usize {
        self.f_on_step_count
    }

    /// Entry `t` is the accepting-step count of the trace cut after position `t`.
    pub fn prefix_f_on_step_counts(&self) -> Vec<usize> {
        // positions that are steps of the current prefix form a stack of
        // non-decreasing heights
        let mut open: Vec<usize> = Vec::new();
        let mut count = 0usize;
        let mut out = Vec::with_capacity(self.len());
        for pos in 0..self.len() {
            let h = self.heights[pos];
            while let Some(&top) = open.last() {
                if self.heights[top] > h {
                    open.pop();
                    if self.accepting[top] {
                        count -= 1;
                    }
                } else {
                    break;
                }
            }
            open.push(pos);
            if self.accepting[pos] {
                count += 1;
            }
            out.push(count);
        }
        out
    }
}

/// Simulates `dvpa` on `word` from `start`.
///
/// A missing transition or a return on the empty stack ends the trace and
/// sets [`RunTrace::death`]; that is data, not an error.
pub fn run_word(dvpa: &Dvpa, start: &Configuration, word: &[SymbolId]) -> RunTrace {
    let alphabet = dvpa.alphabet();
    let mut cells: Vec<(StackSymbol, u32)> = Vec::with_capacity(start.height() + word.len());
    let mut top = NIL;
    for &z in &start.stack {
        cells.push((z, top));
        top = (cells.len() - 1) as u32;
    }
    let mut states = vec![start.state];
    let mut heights = vec![start.height()];
    let mut tops = vec![top];
    let mut death = None;
    let mut q = start.state;
    let mut h = start.height();

    for (pos, &sym) in word.iter().enumerate() {
        let next = match alphabet.kind(sym) {
            SymbolKind::Call => dvpa.call(q, sym).map(|(p, z)| {
                cells.push((z, top));
                top = (cells.len() - 1) as u32;
                h += 1;
                p
            }),
            SymbolKind::Internal => dvpa.internal(q, sym),
            SymbolKind::Return => {
                if top == NIL {
                    None
                } else {
                    let (z, below) = cells[top as usize];
                    dvpa.ret(q, z, sym).inspect(|_| {
                        top = below;
                        h -= 1;
                    })
                }
            }
        };
        match next {
            Some(p) => {
                q = p;
                states.push(p);
                heights.push(h);
                tops.push(top);
            }
            None => {
                death = Some(pos);
                break;
            }
        }
    }

    let mut step_flags = vec![false; states.len()];
    let mut future_min = usize::MAX;
    for pos in (0..states.len()).rev() {
        future_min = future_min.min(heights[pos]);
        step_flags[pos] = heights[pos] <= future_min;
    }
    let accepting: Vec<bool> = states.iter().map(|&q| dvpa.is_accepting(q)).collect();
    let f_on_step_count = step_flags
        .iter()
        .zip(&accepting)
        .filter(|(s, a)| **s && **a)
        .count();

    RunTrace {
        states,
        heights,
        tops,
        cells,
        consumed: word.to_vec(),
        death,
        step_flags,
        f_on_step_count,
        accepting,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::fixtures::*;

    #[test]
    fn lsu_ccr_steps() {
        let a = lsu();
        let start = Configuration::empty(a.state("s_rej").unwrap());
        let w = a.alphabet().parse_word("c c r").unwrap();
        let t = run_word(&a, &start, &w);
        assert_eq!(t.heights(), &[0, 1, 2, 1]);
        assert_eq!(t.step_positions().collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(t.f_on_step_count(), 1);
        assert_eq!(t.state(1), a.state("s_acc").unwrap());
        assert!(!t.is_dead());
    }

    #[test]
    fn nested_pattern_cc_reaches_q_over_zz() {
        let a = nested_pattern();
        let q = a.state("q").unwrap();
        let z = a.stack_symbol("Z").unwrap();
        let w = a.alphabet().parse_word("c c").unwrap();
        let t = run_word(&a, &Configuration::empty(q), &w);
        assert_eq!(t.last(), Configuration::new(q, vec![z, z]));
        assert!(t.step_flags()[1]);
        assert_eq!(t.state(1), a.state("q''").unwrap());
        assert!(a.is_accepting(t.state(1)));
    }

    #[test]
    fn empty_word_is_a_single_step() {
        let a = nested_pattern();
        let t = run_word(&a, &Configuration::empty(a.initial()), &[]);
        assert_eq!(t.len(), 1);
        assert_eq!(t.step_flags(), &[true]);
    }

    #[test]
    fn return_on_empty_stack_dies() {
        let a = lsu();
        let w = a.alphabet().parse_word("c r r c").unwrap();
        let t = run_word(&a, &Configuration::empty(a.initial()), &w);
        assert_eq!(t.death(), Some(2));
        assert_eq!(t.len(), 3);
        assert_eq!(t.consumed().len(), 4);
    }

    #[test]
    fn missing_transition_dies() {
        let a = nested_pattern();
        // q has no return transitions
        let w = a.alphabet().parse_word("c c r2 r1").unwrap();
        let t = run_word(&a, &Configuration::empty(a.initial()), &w);
        assert_eq!(t.death(), Some(2));
    }

    #[test]
    fn configs_materialise_shared_stacks() {
        let a = lsu();
        let w = a.alphabet().parse_word("c c r c").unwrap();
        let z = a.stack_symbol("Z").unwrap();
        let start = Configuration::new(a.initial(), vec![z]);
        let t = run_word(&a, &start, &w);
        let hs: Vec<usize> = t.configs().map(|c| c.height()).collect();
        assert_eq!(hs, vec![1, 2, 3, 2, 3]);
        assert_eq!(t.config(3).stack, vec![z, z]);
    }

    #[test]
    fn prefix_counts_match_recomputed_traces() {
        let a = lsu();
        let w = a.alphabet().parse_word("c c r c r r c c c r").unwrap();
        let start = Configuration::empty(a.initial());
        let full = run_word(&a, &start, &w);
        let counts = full.prefix_f_on_step_counts();
        for t in 0..=w.len() {
            assert_eq!(counts[t], run_word(&a, &start, &w[..t]).f_on_step_count());
        }
    }
}
