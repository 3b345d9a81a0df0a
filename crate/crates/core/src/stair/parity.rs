use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::automaton::{
    validate, AcceptanceKind, Description, Dvpa, StackSymbol, StateId, SymbolId,
};

use super::height::HeightFunction;

/// A state `(q, χ, f)` of the parity automaton: counters `χ(0..=h)` in
/// `0..=m` and flags `f(0..=h)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductState {
    pub state: StateId,
    pub counters: Vec<u32>,
    pub flags: Vec<bool>,
}

impl ProductState {
    /// `f(i) = 1` implies `f(j) = 1` and `χ(i) ≥ χ(j)` for all `j ≥ i`.
    pub fn is_monotone(&self) -> bool {
        (0..self.flags.len()).all(|i| {
            !self.flags[i]
                || (i..self.flags.len())
                    .all(|j| self.flags[j] && self.counters[i] >= self.counters[j])
        })
    }

    pub fn priority(&self, m: u32) -> u32 {
        match (0..self.counters.len())
            .rev()
            .find(|&i| self.counters[i] == m)
        {
            None => 0,
            Some(d) => 2 * d as u32 + 1 + u32::from(self.flags[d]),
        }
    }
}

/// A stack symbol `[Z, s]` of the parity automaton: the original symbol and
/// the product state the call was read in.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProductStackSymbol {
    pub symbol: StackSymbol,
    pub saved: usize,
}

/// The parity automaton together with the meaning of its states.
#[derive(Clone, Debug)]
pub struct ParityProduct {
    pub dvpa: Dvpa,
    /// Product state of each state id of `dvpa`.
    pub states: Vec<ProductState>,
    pub stack: Vec<ProductStackSymbol>,
    pub m: u32,
    pub h: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("more than {cap} reachable product states or (state, top) pairs")]
pub struct CapExceeded {
    pub cap: usize,
}

pub const DEFAULT_CAP: usize = 1_000_000;

struct Builder<'a> {
    dvpa: &'a Dvpa,
    m: u32,
    cap: usize,
    states: Vec<ProductState>,
    state_ids: BTreeMap<ProductState, usize>,
    syms: Vec<ProductStackSymbol>,
    sym_ids: BTreeMap<ProductStackSymbol, usize>,
}

impl Builder<'_> {
    fn state_id(&mut self, s: ProductState) -> Result<usize, CapExceeded> {
        if let Some(&id) = self.state_ids.get(&s) {
            return Ok(id);
        }
        if self.states.len() >= self.cap {
            return Err(CapExceeded { cap: self.cap });
        }
        let id = self.states.len();
        self.state_ids.insert(s.clone(), id);
        self.states.push(s);
        Ok(id)
    }

    fn sym_id(&mut self, z: StackSymbol, saved: usize) -> usize {
        let key = ProductStackSymbol { symbol: z, saved };
        if let Some(&id) = self.sym_ids.get(&key) {
            return id;
        }
        let id = self.syms.len();
        self.sym_ids.insert(key.clone(), id);
        self.syms.push(key);
        id
    }

    /// Successor of `base` entering `target`, incrementing counters `0..=bound`.
    fn advance(&self, base: &ProductState, target: StateId, bound: Option<u32>) -> ProductState {
        let width = base.counters.len();
        if self.dvpa.is_accepting(target) {
            return ProductState {
                state: target,
                counters: vec![0; width],
                flags: vec![true; width],
            };
        }
        let m = self.m;
        let counters = (0..width)
            .map(|i| {
                let kept = base.counters[i] % m;
                match bound {
                    Some(b) if i as u32 <= b => kept + 1,
                    _ => kept,
                }
            })
            .collect();
        let flags = (0..width)
            .map(|i| base.flags[i] && base.counters[i] < m)
            .collect();
        ProductState {
            state: target,
            counters,
            flags,
        }
    }
}

/// Builds the reachable part of the parity DVPA equivalent to a pattern-free
/// stair-Büchi DVPA.
///
/// Return transitions are generated only for `(state, top symbol)` pairs
/// that occur in some run from the initial configuration.
pub fn build_parity(
    dvpa: &Dvpa,
    heights: &HeightFunction,
    cap: usize,
) -> Result<ParityProduct, CapExceeded> {
    let n = dvpa.state_count() as u32;
    let m = n * n * n + 1;
    let width = heights.h as usize + 1;
    let mut b = Builder {
        dvpa,
        m,
        cap,
        states: Vec::new(),
        state_ids: BTreeMap::new(),
        syms: Vec::new(),
        sym_ids: BTreeMap::new(),
    };
    let initial = b.state_id(ProductState {
        state: dvpa.initial(),
        counters: vec![0; width],
        flags: vec![true; width],
    })?;

    let calls: Vec<_> = dvpa.call_transitions().collect();
    let internals: Vec<_> = dvpa.internal_transitions().collect();
    let returns: Vec<_> = dvpa.return_transitions().collect();

    let mut call_t: BTreeMap<(usize, SymbolId), (usize, usize)> = BTreeMap::new();
    let mut int_t: BTreeMap<(usize, SymbolId), usize> = BTreeMap::new();
    let mut ret_t: BTreeMap<(usize, usize, SymbolId), usize> = BTreeMap::new();

    // (state, top) pairs; `None` is the bottom marker
    let mut surfaces: BTreeSet<(usize, Option<usize>)> = BTreeSet::new();
    let mut queue: VecDeque<(usize, Option<usize>)> = VecDeque::new();
    let mut tops_of: Vec<Vec<Option<usize>>> = Vec::new();
    let mut syms_saving: Vec<Vec<usize>> = Vec::new();
    let mut ret_targets: Vec<BTreeSet<usize>> = Vec::new();

    // the cap bounds surfaces as well as states
    let push_surface = |surfaces: &mut BTreeSet<(usize, Option<usize>)>,
                        queue: &mut VecDeque<(usize, Option<usize>)>,
                        item: (usize, Option<usize>)|
     -> Result<(), CapExceeded> {
        if surfaces.insert(item) {
            if surfaces.len() > cap {
                return Err(CapExceeded { cap });
            }
            queue.push_back(item);
        }
        Ok(())
    };

    push_surface(&mut surfaces, &mut queue, (initial, None))?;
    while let Some((s, top)) = queue.pop_front() {
        tops_of.resize_with(b.states.len(), Vec::new);
        syms_saving.resize_with(b.states.len(), Vec::new);
        tops_of[s].push(top);
        // returns already known to leave calls read in s now also land on top
        for &k in &syms_saving[s].clone() {
            for &t in &ret_targets[k] {
                push_surface(&mut surfaces, &mut queue, (t, top))?;
            }
        }

        let cur = b.states[s].clone();
        for &(q, i, p) in &internals {
            if q == cur.state {
                let t = b.state_id(b.advance(&cur, p, Some(0)))?;
                int_t.insert((s, i), t);
                push_surface(&mut surfaces, &mut queue, (t, top))?;
            }
        }
        for &(q, c, p, z) in &calls {
            if q == cur.state {
                let t = b.state_id(b.advance(&cur, p, Some(0)))?;
                let k = b.sym_id(z, s);
                if ret_targets.len() <= k {
                    ret_targets.resize_with(k + 1, BTreeSet::new);
                    syms_saving.resize_with(b.states.len(), Vec::new);
                    syms_saving[s].push(k);
                }
                call_t.insert((s, c), (t, k));
                push_surface(&mut surfaces, &mut queue, (t, Some(k)))?;
            }
        }
        let Some(k) = top else { continue };
        let sym = b.syms[k].clone();
        let saved = b.states[sym.saved].clone();
        for &(q, z, r, p) in &returns {
            if q != cur.state || z != sym.symbol {
                continue;
            }
            let bound = if dvpa.is_accepting(saved.state) || dvpa.is_accepting(p) {
                None
            } else {
                Some(
                    heights
                        .get((saved.state, p))
                        .expect("height of a non-final pair"),
                )
            };
            let t = b.state_id(b.advance(&saved, p, bound))?;
            ret_t.insert((s, k, r), t);
            if ret_targets[k].insert(t) {
                tops_of.resize_with(b.states.len(), Vec::new);
                for &below in &tops_of[sym.saved].clone() {
                    push_surface(&mut surfaces, &mut queue, (t, below))?;
                }
            }
        }
    }

    let state_names: Vec<String> = b
        .states
        .iter()
        .map(|s| product_state_name(dvpa, s))
        .collect();
    let sym_names: Vec<String> = b
        .syms
        .iter()
        .map(|k| format!("[{}|{}]", dvpa.stack_name(k.symbol), state_names[k.saved]))
        .collect();
    let alphabet = dvpa.alphabet();
    let names = |kind| {
        alphabet
            .names_of_kind(kind)
            .into_iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
    };
    let mut desc = Description::new(AcceptanceKind::Parity);
    desc.calls = names(crate::automaton::SymbolKind::Call);
    desc.returns = names(crate::automaton::SymbolKind::Return);
    desc.internals = names(crate::automaton::SymbolKind::Internal);
    desc.stack = sym_names.clone();
    desc.states = state_names.clone();
    desc.initial = state_names[initial].clone();
    desc.priorities = Some(
        b.states
            .iter()
            .zip(&state_names)
            .map(|(s, name)| (name.clone(), s.priority(m)))
            .collect(),
    );
    for (&(s, c), &(t, k)) in &call_t {
        desc.call(
            &state_names[s],
            alphabet.name(c),
            &state_names[t],
            &sym_names[k],
        );
    }
    for (&(s, k, r), &t) in &ret_t {
        desc.ret(
            &state_names[s],
            &sym_names[k],
            alphabet.name(r),
            &state_names[t],
        );
    }
    for (&(s, i), &t) in &int_t {
        desc.internal(&state_names[s], alphabet.name(i), &state_names[t]);
    }
    let out = validate(&desc)
        .expect("product description is well-formed")
        .dvpa;

    let mut states = vec![b.states[initial].clone(); b.states.len()];
    for (s, name) in b.states.iter().zip(&state_names) {
        states[out.state(name).expect("declared").index()] = s.clone();
    }
    let mut stack = vec![b.syms.first().cloned(); b.syms.len()];
    for (k, name) in b.syms.iter().zip(&sym_names) {
        let id = out.stack_symbol(name).expect("declared");
        let saved_id = out.state(&state_names[k.saved]).expect("declared").index();
        stack[id.index()] = Some(ProductStackSymbol {
            symbol: k.symbol,
            saved: saved_id,
        });
    }
    Ok(ParityProduct {
        dvpa: out,
        states,
        stack: stack.into_iter().map(|k| k.expect("filled")).collect(),
        m,
        h: heights.h,
    })
}

/// `(q|χ0.χ1…|f0f1…)`; injective because counters and flags are digits.
fn product_state_name(dvpa: &Dvpa, s: &ProductState) -> String {
    let counters: Vec<String> = s.counters.iter().map(|c| c.to_string()).collect();
    let flags: String = s.flags.iter().map(|&f| if f { '1' } else { '0' }).collect();
    format!(
        "({}|{}|{})",
        dvpa.state_name(s.state),
        counters.join("."),
        flags
    )
}
