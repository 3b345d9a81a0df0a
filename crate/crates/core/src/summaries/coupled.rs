use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::automaton::{Dvpa, StackSymbol, StateId, SymbolId};
use crate::flag::Flag;
use crate::summaries::wm::FlaggedRelation;

/// `(q, p, d, d')` under a flag: an ascent from `(q, ⊥)` to `(p, σ)` paired
/// with a descent from `(d, σ)` to `(d', ⊥)` over the same non-empty `σ`.
/// The flag describes accepting states on the steps of the ascent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quad {
    pub q: StateId,
    pub p: StateId,
    pub d: StateId,
    pub d2: StateId,
    pub flag: Flag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreDerivation {
    /// `σ = Z`: call, well-matched run to `p`; well-matched run from `d`, return.
    Base {
        call: SymbolId,
        push: StackSymbol,
        ascent: (StateId, StateId, Flag),
        descent: (StateId, StateId),
        ret: SymbolId,
    },
    /// `σ = Z·σ'`: call pushing `Z`, a full pair over `σ'`, return popping `Z`.
    Step {
        call: SymbolId,
        push: StackSymbol,
        inner: Quad,
        ret: SymbolId,
    },
}

/// A core pair with well-matched segments before the ascent and after the
/// descent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FullDerivation {
    pub lead: (StateId, StateId, Flag),
    pub core: Quad,
    pub trail: (StateId, StateId),
}

/// Ascent and descent words realising a coupled entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoupledWitness {
    pub ascent: Vec<SymbolId>,
    pub descent: Vec<SymbolId>,
    /// The shared stack contents, bottom first.
    pub stack: Vec<StackSymbol>,
}

/// Saturated ascent/descent pairs.
///
/// In a core entry the ascent starts with the call that pushes the bottom
/// symbol of `σ` and the descent ends with the return that pops it, so the
/// ascent followed by the descent is minimally well-matched.
#[derive(Clone, Debug, Default)]
pub struct CoupledRelation {
    pub core: BTreeMap<Quad, CoreDerivation>,
    pub full: BTreeMap<Quad, FullDerivation>,
}

impl CoupledRelation {
    pub fn core_contains(
        &self,
        q: StateId,
        p: StateId,
        d: StateId,
        d2: StateId,
        flag: Flag,
    ) -> bool {
        self.core.contains_key(&Quad { q, p, d, d2, flag })
    }

    pub fn full_contains(
        &self,
        q: StateId,
        p: StateId,
        d: StateId,
        d2: StateId,
        flag: Flag,
    ) -> bool {
        self.full.contains_key(&Quad { q, p, d, d2, flag })
    }

    pub fn core_witness(&self, quad: Quad, wm: &FlaggedRelation) -> Option<CoupledWitness> {
        let how = *self.core.get(&quad)?;
        Some(match how {
            CoreDerivation::Base {
                call,
                push,
                ascent,
                descent,
                ret,
            } => {
                let mut up = vec![call];
                wm.write_witness(ascent, &mut up);
                let mut down = wm.reach_witness(descent.0, descent.1)?;
                down.push(ret);
                CoupledWitness {
                    ascent: up,
                    descent: down,
                    stack: vec![push],
                }
            }
            CoreDerivation::Step {
                call,
                push,
                inner,
                ret,
            } => {
                let inner = self.full_witness(inner, wm)?;
                let mut up = vec![call];
                up.extend(inner.ascent);
                let mut down = inner.descent;
                down.push(ret);
                let mut stack = vec![push];
                stack.extend(inner.stack);
                CoupledWitness {
                    ascent: up,
                    descent: down,
                    stack,
                }
            }
        })
    }

    pub fn full_witness(&self, quad: Quad, wm: &FlaggedRelation) -> Option<CoupledWitness> {
        let how = *self.full.get(&quad)?;
        let core = self.core_witness(how.core, wm)?;
        let mut up = Vec::new();
        wm.write_witness(how.lead, &mut up);
        up.extend(core.ascent);
        let mut down = core.descent;
        down.extend(wm.reach_witness(how.trail.0, how.trail.1)?);
        Some(CoupledWitness {
            ascent: up,
            descent: down,
            stack: core.stack,
        })
    }
}

enum Item {
    Core(Quad),
    Full(Quad),
}

/// Least fixpoint of the core and full ascent/descent rules.
pub fn coupled_relations(dvpa: &Dvpa, wm: &FlaggedRelation) -> CoupledRelation {
    let n = dvpa.state_count();
    let gamma = dvpa.stack_count().max(1);
    let accepting: Vec<bool> = dvpa.states().map(|q| dvpa.is_accepting(q)).collect();
    let mut calls_into: Vec<Vec<(StateId, SymbolId, StackSymbol)>> = vec![Vec::new(); n];
    for (q, c, q2, z) in dvpa.call_transitions() {
        calls_into[q2.index()].push((q, c, z));
    }
    let mut returns_from: Vec<Vec<(SymbolId, StateId)>> = vec![Vec::new(); n * gamma];
    for (e, z, r, d2) in dvpa.return_transitions() {
        returns_from[e.index() * gamma + z.index()].push((r, d2));
    }

    let mut rel = CoupledRelation::default();
    let mut queue = VecDeque::new();

    for (q, c, q2, z) in dvpa.call_transitions() {
        let fq = Flag::of(accepting[q.index()]);
        for p in dvpa.states() {
            for phi in Flag::ALL {
                if !wm.contains(q2, p, phi) {
                    continue;
                }
                for (d, d1) in wm.reach_pairs() {
                    for &(r, d2) in &returns_from[d1.index() * gamma + z.index()] {
                        let quad = Quad {
                            q,
                            p,
                            d,
                            d2,
                            flag: phi.join(fq),
                        };
                        if let alloc::collections::btree_map::Entry::Vacant(slot) =
                            rel.core.entry(quad)
                        {
                            slot.insert(CoreDerivation::Base {
                                call: c,
                                push: z,
                                ascent: (q2, p, phi),
                                descent: (d, d1),
                                ret: r,
                            });
                            queue.push_back(Item::Core(quad));
                        }
                    }
                }
            }
        }
    }

    while let Some(item) = queue.pop_front() {
        match item {
            Item::Core(core) => {
                for q in dvpa.states() {
                    for phi0 in Flag::ALL {
                        if !wm.contains(q, core.q, phi0) {
                            continue;
                        }
                        for d2 in dvpa.states() {
                            if !wm.reach(core.d2, d2) {
                                continue;
                            }
                            let quad = Quad {
                                q,
                                p: core.p,
                                d: core.d,
                                d2,
                                flag: phi0.join(core.flag),
                            };
                            if let alloc::collections::btree_map::Entry::Vacant(slot) =
                                rel.full.entry(quad)
                            {
                                slot.insert(FullDerivation {
                                    lead: (q, core.q, phi0),
                                    core,
                                    trail: (core.d2, d2),
                                });
                                queue.push_back(Item::Full(quad));
                            }
                        }
                    }
                }
            }
            Item::Full(full) => {
                for &(q, c, z) in &calls_into[full.q.index()] {
                    for &(r, d2) in &returns_from[full.d2.index() * gamma + z.index()] {
                        let quad = Quad {
                            q,
                            p: full.p,
                            d: full.d,
                            d2,
                            flag: full.flag.join(Flag::of(accepting[q.index()])),
                        };
                        if let alloc::collections::btree_map::Entry::Vacant(slot) =
                            rel.core.entry(quad)
                        {
                            slot.insert(CoreDerivation::Step {
                                call: c,
                                push: z,
                                inner: full,
                                ret: r,
                            });
                            queue.push_back(Item::Core(quad));
                        }
                    }
                }
            }
        }
    }
    rel
}
