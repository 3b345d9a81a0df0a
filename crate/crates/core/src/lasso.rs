//! Exact acceptance of ultimately periodic words `u·v^ω`.
//!
//! The run is simulated period by period. With `W = max(1, |v|)` and a
//! non-negative net height change per period, the run never reads more than
//! `W` symbols below a period boundary, so the pair (state, top `W` stack
//! symbols) at a boundary determines everything that follows. The first
//! repeated boundary abstraction `(b1, b2)` therefore closes a cycle: the
//! block of positions between the two boundaries repeats forever, shifted
//! upwards by `net·(b2 - b1)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::automaton::{Dvpa, PartitionedAlphabet, StackSymbol, StateId, SymbolId, SymbolKind};

/// The ω-word `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LassoWord {
    pub prefix: Vec<SymbolId>,
    pub period: Vec<SymbolId>,
}

impl LassoWord {
    pub fn new(prefix: Vec<SymbolId>, period: Vec<SymbolId>) -> Result<Self, LassoError> {
        if period.is_empty() {
            return Err(LassoError::EmptyPeriod);
        }
        Ok(LassoWord { prefix, period })
    }

    /// Number of symbols in `u` and `v` together.
    pub fn symbol_count(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn format(&self, alphabet: &PartitionedAlphabet) -> String {
        let u = alphabet.format_word(&self.prefix);
        let v = alphabet.format_word(&self.period);
        if u.is_empty() {
            alloc::format!("; {v}")
        } else {
            alloc::format!("{u} ; {v}")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LassoError {
    #[error("the period of a lasso must not be empty")]
    EmptyPeriod,
    #[error("lasso syntax is `u ; v`, missing `;`")]
    MissingSeparator,
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("boundary count exceeded the pigeonhole bound {0}")]
    BoundExceeded(u128),
}

/// Parses `u ; v` (whitespace separated names, `u` may be empty).
pub fn parse_lasso(alphabet: &PartitionedAlphabet, text: &str) -> Result<LassoWord, LassoError> {
    let (u, v) = text.split_once(';').ok_or(LassoError::MissingSeparator)?;
    let parse = |s: &str| {
        alphabet
            .parse_word(s)
            .map_err(|e| LassoError::UnknownSymbol(e.0))
    };
    LassoWord::new(parse(u)?, parse(v)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoProfile {
    /// Calls minus returns in one period.
    pub net: i64,
    /// Largest height drop between two positions of one period.
    pub max_dip: usize,
    /// Length of the shortest prefix of `u·v·v` with more returns than calls.
    pub illegal_prefix: Option<usize>,
}

pub fn profile(alphabet: &PartitionedAlphabet, lasso: &LassoWord) -> LassoProfile {
    let mut h = 0i64;
    let mut peak = 0i64;
    let mut max_dip = 0i64;
    for &s in &lasso.period {
        h += alphabet.kind(s).delta();
        peak = peak.max(h);
        max_dip = max_dip.max(peak - h);
    }
    let net = h;

    let mut illegal_prefix = None;
    let mut surplus = 0i64;
    let unrolled = lasso
        .prefix
        .iter()
        .chain(&lasso.period)
        .chain(&lasso.period);
    for (i, &s) in unrolled.enumerate() {
        surplus += alphabet.kind(s).delta();
        if surplus < 0 {
            illegal_prefix = Some(i + 1);
            break;
        }
    }
    LassoProfile {
        net,
        max_dip: max_dip as usize,
        illegal_prefix,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictReason {
    Cycle,
    DeadRun,
}

impl VerdictReason {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictReason::Cycle => "cycle",
            VerdictReason::DeadRun => "dead-run",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoVerdict {
    pub accepted: bool,
    pub reason: VerdictReason,
    /// Index (in `u·v·v·…`) of the symbol the run died on.
    pub death_pos: Option<usize>,
    /// Period indices whose boundary abstractions coincide.
    pub boundary_pair: Option<(usize, usize)>,
    /// Priorities occurring infinitely often, on steps for stair kinds.
    pub recurring_priorities: BTreeSet<u32>,
}

impl LassoVerdict {
    fn dead(pos: usize) -> Self {
        LassoVerdict {
            accepted: false,
            reason: VerdictReason::DeadRun,
            death_pos: Some(pos),
            boundary_pair: None,
            recurring_priorities: BTreeSet::new(),
        }
    }
}

struct Sim<'a> {
    dvpa: &'a Dvpa,
    state: StateId,
    stack: Vec<StackSymbol>,
    states: Vec<StateId>,
    heights: Vec<usize>,
}

impl Sim<'_> {
    /// Reads one symbol; `false` if the run dies.
    fn step(&mut self, sym: SymbolId) -> bool {
        let dvpa = self.dvpa;
        let next = match dvpa.alphabet().kind(sym) {
            SymbolKind::Call => dvpa.call(self.state, sym).map(|(p, z)| {
                self.stack.push(z);
                p
            }),
            SymbolKind::Internal => dvpa.internal(self.state, sym),
            SymbolKind::Return => match self.stack.last() {
                None => None,
                Some(&z) => dvpa.ret(self.state, z, sym).inspect(|_| {
                    self.stack.pop();
                }),
            },
        };
        match next {
            Some(p) => {
                self.state = p;
                self.states.push(p);
                self.heights.push(self.stack.len());
                true
            }
            None => false,
        }
    }

    /// Reads a word; on death returns the index of the failing symbol
    /// counted from the start of the whole run.
    fn read(&mut self, word: &[SymbolId]) -> Result<(), usize> {
        for &s in word {
            if !self.step(s) {
                return Err(self.states.len() - 1);
            }
        }
        Ok(())
    }
}

/// Upper bound on the number of distinct boundary abstractions.
fn pigeonhole_bound(dvpa: &Dvpa, window: usize) -> u128 {
    let base = dvpa.stack_count() as u128 + 1;
    let mut windows: u128 = 1;
    for _ in 0..window {
        windows = windows.saturating_mul(base);
    }
    (dvpa.state_count() as u128)
        .saturating_mul(windows)
        .saturating_mul(2)
        .saturating_add(1)
}

/// Decides whether `dvpa` accepts `prefix · period^ω`.
///
/// Dead runs reject under every acceptance kind.
pub fn accepts(dvpa: &Dvpa, lasso: &LassoWord) -> Result<LassoVerdict, LassoError> {
    if lasso.period.is_empty() {
        return Err(LassoError::EmptyPeriod);
    }
    let alphabet = dvpa.alphabet();
    let net = alphabet.net(&lasso.period);
    let mut sim = Sim {
        dvpa,
        state: dvpa.initial(),
        stack: Vec::new(),
        states: alloc::vec![dvpa.initial()],
        heights: alloc::vec![0],
    };
    if let Err(pos) = sim.read(&lasso.prefix) {
        return Ok(LassoVerdict::dead(pos));
    }

    if net < 0 {
        // the period drains the stack: the run dies once it runs dry
        loop {
            if let Err(pos) = sim.read(&lasso.period) {
                return Ok(LassoVerdict::dead(pos));
            }
        }
    }

    let window = lasso.period.len().max(1);
    let bound = pigeonhole_bound(dvpa, window);
    let mut seen: BTreeMap<(StateId, Vec<StackSymbol>, bool), usize> = BTreeMap::new();
    let mut boundary_pos: Vec<usize> = Vec::new();
    let (b1, b2) = loop {
        let b = boundary_pos.len();
        let depth = sim.stack.len();
        let reaches_bottom = depth <= window;
        let key = (
            sim.state,
            sim.stack[depth.saturating_sub(window)..].to_vec(),
            reaches_bottom,
        );
        boundary_pos.push(sim.states.len() - 1);
        if let Some(&b1) = seen.get(&key) {
            break (b1, b);
        }
        if (b as u128) >= bound {
            return Err(LassoError::BoundExceeded(bound));
        }
        seen.insert(key, b);
        if let Err(pos) = sim.read(&lasso.period) {
            return Ok(LassoVerdict::dead(pos));
        }
    };

    let start = boundary_pos[b1];
    let end = boundary_pos[b2];
    let block = start..end;
    let acceptance = dvpa.acceptance();
    let mut recurring = BTreeSet::new();
    if dvpa.kind().is_stair() {
        let shift = if net > 0 { net as usize * (b2 - b1) } else { 0 };
        let block_min = sim.heights[block.clone()]
            .iter()
            .copied()
            .min()
            .unwrap_or(0);
        let beyond = block_min + shift;
        let mut suffix_min = usize::MAX;
        for i in block.rev() {
            let h = sim.heights[i];
            suffix_min = suffix_min.min(h);
            if h <= suffix_min && h <= beyond {
                recurring.insert(acceptance.priority(sim.states[i]));
            }
        }
    } else {
        for i in block {
            recurring.insert(acceptance.priority(sim.states[i]));
        }
    }
    let accepted = recurring.last().is_some_and(|p| p % 2 == 0);
    Ok(LassoVerdict {
        accepted,
        reason: VerdictReason::Cycle,
        death_pos: None,
        boundary_pair: Some((b1, b2)),
        recurring_priorities: recurring,
    })
}

impl core::fmt::Display for LassoVerdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "accepted={} reason={}",
            self.accepted,
            self.reason.as_str()
        )
    }
}
