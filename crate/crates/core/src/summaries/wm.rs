use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::automaton::{Dvpa, StateId, SymbolId};
use crate::flag::Flag;

/// A flagged summary entry `(from, to, flag)`.
pub type FlaggedPair = (StateId, StateId, Flag);

/// How an entry of [`FlaggedRelation`] was first derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WmDerivation {
    Empty,
    Internal {
        prev: FlaggedPair,
        symbol: SymbolId,
    },
    Surround {
        prev: FlaggedPair,
        call: SymbolId,
        inner: FlaggedPair,
        ret: SymbolId,
    },
}

/// Well-matched reachability between states with step flags.
///
/// `(q, q')` with flag `φ` means some well-matched word leads from `(q, ⊥)`
/// to `(q', ⊥)`, and φ tells whether an accepting state sits on a step of
/// that run (the base-height positions, both ends included).
#[derive(Clone, Debug)]
pub struct FlaggedRelation {
    n: usize,
    entries: Vec<Option<WmDerivation>>,
}

impl FlaggedRelation {
    fn slot(&self, from: StateId, to: StateId, flag: Flag) -> usize {
        (from.index() * self.n + to.index()) * 2 + flag.index()
    }

    pub fn state_count(&self) -> usize {
        self.n
    }

    pub fn contains(&self, from: StateId, to: StateId, flag: Flag) -> bool {
        self.entries[self.slot(from, to, flag)].is_some()
    }

    pub fn reach(&self, from: StateId, to: StateId) -> bool {
        self.contains(from, to, Flag::Sees) || self.contains(from, to, Flag::Avoids)
    }

    pub fn sees(&self, from: StateId, to: StateId) -> bool {
        self.contains(from, to, Flag::Sees)
    }

    pub fn avoids(&self, from: StateId, to: StateId) -> bool {
        self.contains(from, to, Flag::Avoids)
    }

    /// Some flag under which `(from, to)` is present.
    pub fn any_flag(&self, from: StateId, to: StateId) -> Option<Flag> {
        Flag::ALL.into_iter().find(|&f| self.contains(from, to, f))
    }

    pub fn derivation(&self, from: StateId, to: StateId, flag: Flag) -> Option<WmDerivation> {
        self.entries[self.slot(from, to, flag)]
    }

    pub fn entries(&self) -> impl Iterator<Item = FlaggedPair> + '_ {
        let n = self.n;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_some())
            .map(move |(i, _)| {
                let flag = if i % 2 == 0 { Flag::Sees } else { Flag::Avoids };
                let pair = i / 2;
                (StateId((pair / n) as u32), StateId((pair % n) as u32), flag)
            })
    }

    pub fn reach_pairs(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        let n = self.n as u32;
        (0..n)
            .flat_map(move |a| (0..n).map(move |b| (StateId(a), StateId(b))))
            .filter(|&(a, b)| self.reach(a, b))
    }

    /// Reconstructs a witness word for an entry from the stored derivations.
    pub fn witness(&self, from: StateId, to: StateId, flag: Flag) -> Option<Vec<SymbolId>> {
        self.derivation(from, to, flag)?;
        let mut out = Vec::new();
        self.write_witness((from, to, flag), &mut out);
        Some(out)
    }

    /// A witness word for `(from, to)` under any flag.
    pub fn reach_witness(&self, from: StateId, to: StateId) -> Option<Vec<SymbolId>> {
        self.witness(from, to, self.any_flag(from, to)?)
    }

    pub(crate) fn write_witness(&self, entry: FlaggedPair, out: &mut Vec<SymbolId>) {
        // derivations only point at entries added earlier, so this terminates
        match self.derivation(entry.0, entry.1, entry.2) {
            Some(WmDerivation::Empty) => {}
            Some(WmDerivation::Internal { prev, symbol }) => {
                self.write_witness(prev, out);
                out.push(symbol);
            }
            Some(WmDerivation::Surround {
                prev,
                call,
                inner,
                ret,
            }) => {
                self.write_witness(prev, out);
                out.push(call);
                self.write_witness(inner, out);
                out.push(ret);
            }
            None => unreachable!("dangling summary derivation"),
        }
    }
}

/// Saturates the flagged well-matched summaries of `dvpa`.
///
/// Entries grow by appending an internal symbol or a `c·w·r` block whose
/// interior `w` is itself summarised; interior positions of a block are
/// never steps of the enclosing segment.
pub fn wm_summaries(dvpa: &Dvpa) -> FlaggedRelation {
    let n = dvpa.state_count();
    let mut rel = FlaggedRelation {
        n,
        entries: vec![None; n * n * 2],
    };

    let mut internals: Vec<Vec<(SymbolId, StateId)>> = vec![Vec::new(); n];
    for (q, i, p) in dvpa.internal_transitions() {
        internals[q.index()].push((i, p));
    }
    // calls leaving q, and calls entering p
    let mut calls_from: Vec<Vec<(SymbolId, StateId, usize)>> = vec![Vec::new(); n];
    let mut calls_into: Vec<Vec<(StateId, SymbolId, usize)>> = vec![Vec::new(); n];
    for (q, c, p, z) in dvpa.call_transitions() {
        calls_from[q.index()].push((c, p, z.index()));
        calls_into[p.index()].push((q, c, z.index()));
    }
    // returns by (state, popped symbol)
    let gamma = dvpa.stack_count();
    let mut returns: Vec<Vec<(SymbolId, StateId)>> = vec![Vec::new(); n * gamma.max(1)];
    for (q, z, r, p) in dvpa.return_transitions() {
        returns[q.index() * gamma + z.index()].push((r, p));
    }

    let accepting: Vec<bool> = dvpa.states().map(|q| dvpa.is_accepting(q)).collect();
    let mut queue: VecDeque<(FlaggedPair, bool)> = VecDeque::new();

    let add = |rel: &mut FlaggedRelation,
               queue: &mut VecDeque<(FlaggedPair, bool)>,
               entry: FlaggedPair,
               how: WmDerivation| {
        let slot = rel.slot(entry.0, entry.1, entry.2);
        if rel.entries[slot].is_none() {
            let newly_reached = !rel.reach(entry.0, entry.1);
            rel.entries[slot] = Some(how);
            queue.push_back((entry, newly_reached));
        }
    };

    for q in dvpa.states() {
        let flag = Flag::of(accepting[q.index()]);
        add(&mut rel, &mut queue, (q, q, flag), WmDerivation::Empty);
    }

    while let Some((entry, newly_reached)) = queue.pop_front() {
        let (q, q1, flag) = entry;
        for &(i, q2) in &internals[q1.index()] {
            let f = flag.join(Flag::of(accepting[q2.index()]));
            add(
                &mut rel,
                &mut queue,
                (q, q2, f),
                WmDerivation::Internal {
                    prev: entry,
                    symbol: i,
                },
            );
        }
        // entry as the prefix before a c·w·r block
        for &(c, p, z) in &calls_from[q1.index()] {
            for p2 in dvpa.states() {
                let Some(inner_flag) = rel.any_flag(p, p2) else {
                    continue;
                };
                for &(r, q2) in &returns[p2.index() * gamma + z] {
                    let f = flag.join(Flag::of(accepting[q2.index()]));
                    add(
                        &mut rel,
                        &mut queue,
                        (q, q2, f),
                        WmDerivation::Surround {
                            prev: entry,
                            call: c,
                            inner: (p, p2, inner_flag),
                            ret: r,
                        },
                    );
                }
            }
        }
        // entry as the interior w of a c·w·r block
        if newly_reached {
            let (p, p2) = (q, q1);
            for &(x, c, z) in &calls_into[p.index()] {
                for &(r, q2) in &returns[p2.index() * gamma + z] {
                    for y in dvpa.states() {
                        for f0 in Flag::ALL {
                            if !rel.contains(y, x, f0) {
                                continue;
                            }
                            let f = f0.join(Flag::of(accepting[q2.index()]));
                            add(
                                &mut rel,
                                &mut queue,
                                (y, q2, f),
                                WmDerivation::Surround {
                                    prev: (y, x, f0),
                                    call: c,
                                    inner: entry,
                                    ret: r,
                                },
                            );
                        }
                    }
                }
            }
        }
    }
    rel
}
