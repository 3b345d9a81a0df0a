//! The DVPA data model and its validation.
//!
//! Names are interned: states, input symbols and stack symbols are referred
//! to by dense integer ids whose order follows the sorted names. A
//! [`Description`] is the name-level form produced by a parser or assembled
//! programmatically; [`validate`] turns it into a [`Dvpa`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Reserved name of the implicit bottom-of-stack marker.
pub const BOTTOM_MARKER: &str = "⊥";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StackSymbol(pub u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl SymbolId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl StackSymbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Call,
    Return,
    Internal,
}

impl SymbolKind {
    /// Change of stack height caused by a symbol of this kind.
    pub fn delta(self) -> i64 {
        match self {
            SymbolKind::Call => 1,
            SymbolKind::Return => -1,
            SymbolKind::Internal => 0,
        }
    }
}

/// Returns true if `name` can be used as a state, symbol or stack symbol name.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "->"
        && name != BOTTOM_MARKER
        && !name
            .chars()
            .any(|c| c.is_whitespace() || c == ';' || c == '#')
}

/// Input alphabet split into calls, returns and internals.
///
/// Symbol ids enumerate the calls first, then the returns, then the
/// internals; each group is sorted by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedAlphabet {
    names: Vec<String>,
    kinds: Vec<SymbolKind>,
    index: BTreeMap<String, SymbolId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("alphabet is empty")]
    Empty,
    #[error("invalid symbol name {0:?}")]
    InvalidName(String),
    #[error("symbol {0} is declared more than once")]
    Duplicate(String),
}

impl PartitionedAlphabet {
    pub fn new<S: AsRef<str>>(
        calls: &[S],
        returns: &[S],
        internals: &[S],
    ) -> Result<Self, AlphabetError> {
        let mut names = Vec::new();
        let mut kinds = Vec::new();
        let mut index = BTreeMap::new();
        for (group, kind) in [
            (calls, SymbolKind::Call),
            (returns, SymbolKind::Return),
            (internals, SymbolKind::Internal),
        ] {
            let mut sorted: Vec<&str> = group.iter().map(|s| s.as_ref()).collect();
            sorted.sort_unstable();
            for name in sorted {
                if !is_valid_name(name) {
                    return Err(AlphabetError::InvalidName(name.to_string()));
                }
                let id = SymbolId(names.len() as u32);
                if index.insert(name.to_string(), id).is_some() {
                    return Err(AlphabetError::Duplicate(name.to_string()));
                }
                names.push(name.to_string());
                kinds.push(kind);
            }
        }
        if names.is_empty() {
            return Err(AlphabetError::Empty);
        }
        Ok(PartitionedAlphabet {
            names,
            kinds,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = SymbolId> + '_ {
        (0..self.names.len() as u32).map(SymbolId)
    }

    pub fn of_kind(&self, kind: SymbolKind) -> impl Iterator<Item = SymbolId> + '_ {
        self.symbols().filter(move |&s| self.kind(s) == kind)
    }

    pub fn kind(&self, symbol: SymbolId) -> SymbolKind {
        self.kinds[symbol.index()]
    }

    pub fn name(&self, symbol: SymbolId) -> &str {
        &self.names[symbol.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        self.index.get(name).copied()
    }

    pub fn names_of_kind(&self, kind: SymbolKind) -> Vec<&str> {
        self.of_kind(kind).map(|s| self.name(s)).collect()
    }

    /// Parses a whitespace separated list of symbol names.
    pub fn parse_word(&self, text: &str) -> Result<Vec<SymbolId>, UnknownSymbol> {
        text.split_whitespace()
            .map(|tok| {
                self.lookup(tok)
                    .ok_or_else(|| UnknownSymbol(tok.to_string()))
            })
            .collect()
    }

    pub fn format_word(&self, word: &[SymbolId]) -> String {
        let mut out = String::new();
        for (i, &s) in word.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(self.name(s));
        }
        out
    }

    /// Stack height change of a word (calls minus returns).
    pub fn net(&self, word: &[SymbolId]) -> i64 {
        word.iter().map(|&s| self.kind(s).delta()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown symbol {0:?}")]
pub struct UnknownSymbol(pub String);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AcceptanceKind {
    Buchi,
    Parity,
    StairBuchi,
    StairParity,
}

impl AcceptanceKind {
    pub const ALL: [AcceptanceKind; 4] = [
        AcceptanceKind::Buchi,
        AcceptanceKind::Parity,
        AcceptanceKind::StairBuchi,
        AcceptanceKind::StairParity,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            AcceptanceKind::Buchi => "buchi",
            AcceptanceKind::Parity => "parity",
            AcceptanceKind::StairBuchi => "stair-buchi",
            AcceptanceKind::StairParity => "stair-parity",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.keyword() == word)
    }

    pub fn is_stair(self) -> bool {
        matches!(
            self,
            AcceptanceKind::StairBuchi | AcceptanceKind::StairParity
        )
    }

    pub fn uses_final_states(self) -> bool {
        matches!(self, AcceptanceKind::Buchi | AcceptanceKind::StairBuchi)
    }
}

impl fmt::Display for AcceptanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Final states (Büchi kinds) or a total priority map (parity kinds).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    Final(BTreeSet<StateId>),
    Priorities(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcceptanceSpec {
    kind: AcceptanceKind,
    condition: Condition,
}

impl AcceptanceSpec {
    /// Fails if the condition does not match the kind or the priorities are
    /// not total over `state_count` states.
    pub fn new(
        kind: AcceptanceKind,
        condition: Condition,
        state_count: usize,
    ) -> Result<Self, ValidationError> {
        match (&condition, kind.uses_final_states()) {
            (Condition::Final(set), true) => {
                if set.iter().any(|q| q.index() >= state_count) {
                    return Err(ValidationError::AcceptanceMismatch(
                        "final state out of range".into(),
                    ));
                }
            }
            (Condition::Priorities(p), false) => {
                if p.len() != state_count {
                    return Err(ValidationError::AcceptanceMismatch(format!(
                        "{} priorities for {} states",
                        p.len(),
                        state_count
                    )));
                }
            }
            (Condition::Final(_), false) => {
                return Err(ValidationError::AcceptanceMismatch(format!(
                    "{kind} acceptance needs priorities, not final states"
                )))
            }
            (Condition::Priorities(_), true) => {
                return Err(ValidationError::AcceptanceMismatch(format!(
                    "{kind} acceptance needs final states, not priorities"
                )))
            }
        }
        Ok(AcceptanceSpec { kind, condition })
    }

    pub fn kind(&self) -> AcceptanceKind {
        self.kind
    }

    pub fn condition(&self) -> &Condition {
        &self.condition
    }

    /// Priority of a state; Büchi kinds map final states to 2 and the rest to 1.
    pub fn priority(&self, q: StateId) -> u32 {
        match &self.condition {
            Condition::Final(set) => {
                if set.contains(&q) {
                    2
                } else {
                    1
                }
            }
            Condition::Priorities(p) => p[q.index()],
        }
    }

    /// Final state (Büchi kinds) or even priority (parity kinds).
    pub fn is_accepting(&self, q: StateId) -> bool {
        self.priority(q).is_multiple_of(2)
    }
}

/// A deterministic visibly pushdown automaton with acceptance condition.
///
/// The stack bottom is implicit: an empty stack stands for the bottom
/// marker alone, and no transition reads it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dvpa {
    alphabet: PartitionedAlphabet,
    state_names: Vec<String>,
    state_index: BTreeMap<String, StateId>,
    stack_names: Vec<String>,
    stack_index: BTreeMap<String, StackSymbol>,
    initial: StateId,
    call_trans: BTreeMap<(StateId, SymbolId), (StateId, StackSymbol)>,
    return_trans: BTreeMap<(StateId, StackSymbol, SymbolId), StateId>,
    internal_trans: BTreeMap<(StateId, SymbolId), StateId>,
    acceptance: AcceptanceSpec,
}

impl Dvpa {
    pub fn alphabet(&self) -> &PartitionedAlphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_names.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.state_names.len() as u32).map(StateId)
    }

    pub fn stack_count(&self) -> usize {
        self.stack_names.len()
    }

    pub fn stack_symbols(&self) -> impl Iterator<Item = StackSymbol> + '_ {
        (0..self.stack_names.len() as u32).map(StackSymbol)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn acceptance(&self) -> &AcceptanceSpec {
        &self.acceptance
    }

    pub fn kind(&self) -> AcceptanceKind {
        self.acceptance.kind
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.state_names[q.index()]
    }

    pub fn stack_name(&self, z: StackSymbol) -> &str {
        &self.stack_names[z.index()]
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.state_index.get(name).copied()
    }

    pub fn stack_symbol(&self, name: &str) -> Option<StackSymbol> {
        self.stack_index.get(name).copied()
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.acceptance.is_accepting(q)
    }

    pub fn priority(&self, q: StateId) -> u32 {
        self.acceptance.priority(q)
    }

    pub fn call(&self, q: StateId, c: SymbolId) -> Option<(StateId, StackSymbol)> {
        self.call_trans.get(&(q, c)).copied()
    }

    pub fn ret(&self, q: StateId, z: StackSymbol, r: SymbolId) -> Option<StateId> {
        self.return_trans.get(&(q, z, r)).copied()
    }

    pub fn internal(&self, q: StateId, i: SymbolId) -> Option<StateId> {
        self.internal_trans.get(&(q, i)).copied()
    }

    pub fn call_transitions(
        &self,
    ) -> impl Iterator<Item = (StateId, SymbolId, StateId, StackSymbol)> + '_ {
        self.call_trans
            .iter()
            .map(|(&(q, c), &(p, z))| (q, c, p, z))
    }

    pub fn return_transitions(
        &self,
    ) -> impl Iterator<Item = (StateId, StackSymbol, SymbolId, StateId)> + '_ {
        self.return_trans
            .iter()
            .map(|(&(q, z, r), &p)| (q, z, r, p))
    }

    pub fn internal_transitions(&self) -> impl Iterator<Item = (StateId, SymbolId, StateId)> + '_ {
        self.internal_trans.iter().map(|(&(q, i), &p)| (q, i, p))
    }

    /// Same automaton with a different acceptance condition.
    pub fn with_acceptance(&self, acceptance: AcceptanceSpec) -> Dvpa {
        Dvpa {
            acceptance,
            ..self.clone()
        }
    }

    /// Stair-Büchi automaton read as stair-parity (and Büchi as parity),
    /// with final states at priority 2 and the others at 1.
    pub fn buchi_as_parity(&self) -> Dvpa {
        let kind = match self.kind() {
            AcceptanceKind::Buchi => AcceptanceKind::Parity,
            AcceptanceKind::StairBuchi => AcceptanceKind::StairParity,
            k => k,
        };
        let priorities = self.states().map(|q| self.priority(q)).collect();
        self.with_acceptance(AcceptanceSpec {
            kind,
            condition: Condition::Priorities(priorities),
        })
    }

    /// Name-level description of this automaton.
    pub fn describe(&self) -> Description {
        let names = |k| {
            self.alphabet
                .names_of_kind(k)
                .into_iter()
                .map(String::from)
                .collect()
        };
        let sn = |q: StateId| self.state_name(q).to_string();
        let (final_states, priorities) = match &self.acceptance.condition {
            Condition::Final(set) => (Some(set.iter().map(|&q| sn(q)).collect()), None),
            Condition::Priorities(p) => (
                None,
                Some(self.states().map(|q| (sn(q), p[q.index()])).collect()),
            ),
        };
        Description {
            calls: names(SymbolKind::Call),
            returns: names(SymbolKind::Return),
            internals: names(SymbolKind::Internal),
            stack: self.stack_names.clone(),
            states: self.state_names.clone(),
            initial: sn(self.initial),
            kind: self.acceptance.kind,
            final_states,
            priorities,
            call_rules: self
                .call_transitions()
                .map(|(q, c, p, z)| CallRule {
                    from: sn(q),
                    symbol: self.alphabet.name(c).to_string(),
                    to: sn(p),
                    push: self.stack_name(z).to_string(),
                })
                .collect(),
            return_rules: self
                .return_transitions()
                .map(|(q, z, r, p)| ReturnRule {
                    from: sn(q),
                    pop: self.stack_name(z).to_string(),
                    symbol: self.alphabet.name(r).to_string(),
                    to: sn(p),
                })
                .collect(),
            internal_rules: self
                .internal_transitions()
                .map(|(q, i, p)| InternalRule {
                    from: sn(q),
                    symbol: self.alphabet.name(i).to_string(),
                    to: sn(p),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CallRule {
    pub from: String,
    pub symbol: String,
    pub to: String,
    pub push: String,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ReturnRule {
    pub from: String,
    pub pop: String,
    pub symbol: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct InternalRule {
    pub from: String,
    pub symbol: String,
    pub to: String,
}

/// Unvalidated, name-level automaton description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Description {
    pub calls: Vec<String>,
    pub returns: Vec<String>,
    pub internals: Vec<String>,
    pub stack: Vec<String>,
    pub states: Vec<String>,
    pub initial: String,
    pub kind: AcceptanceKind,
    pub final_states: Option<Vec<String>>,
    pub priorities: Option<Vec<(String, u32)>>,
    pub call_rules: Vec<CallRule>,
    pub return_rules: Vec<ReturnRule>,
    pub internal_rules: Vec<InternalRule>,
}

impl Description {
    /// Empty description of the given kind; fill in the fields before validating.
    pub fn new(kind: AcceptanceKind) -> Self {
        Description {
            calls: Vec::new(),
            returns: Vec::new(),
            internals: Vec::new(),
            stack: Vec::new(),
            states: Vec::new(),
            initial: String::new(),
            kind,
            final_states: if kind.uses_final_states() {
                Some(Vec::new())
            } else {
                None
            },
            priorities: if kind.uses_final_states() {
                None
            } else {
                Some(Vec::new())
            },
            call_rules: Vec::new(),
            return_rules: Vec::new(),
            internal_rules: Vec::new(),
        }
    }

    pub fn call(&mut self, from: &str, symbol: &str, to: &str, push: &str) -> &mut Self {
        self.call_rules.push(CallRule {
            from: from.into(),
            symbol: symbol.into(),
            to: to.into(),
            push: push.into(),
        });
        self
    }

    pub fn ret(&mut self, from: &str, pop: &str, symbol: &str, to: &str) -> &mut Self {
        self.return_rules.push(ReturnRule {
            from: from.into(),
            pop: pop.into(),
            symbol: symbol.into(),
            to: to.into(),
        });
        self
    }

    pub fn internal(&mut self, from: &str, symbol: &str, to: &str) -> &mut Self {
        self.internal_rules.push(InternalRule {
            from: from.into(),
            symbol: symbol.into(),
            to: to.into(),
        });
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("no states declared")]
    EmptyStateSet,
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("invalid {what} name {name:?}")]
    InvalidName { what: &'static str, name: String },
    #[error("{what} {name} is declared more than once")]
    DuplicateDeclaration { what: &'static str, name: String },
    #[error("undeclared state {0}")]
    UndeclaredState(String),
    #[error("undeclared stack symbol {0}")]
    UndeclaredStackSymbol(String),
    #[error("undeclared symbol {0}")]
    UndeclaredSymbol(String),
    #[error("symbol {name} is not a {expected:?} symbol")]
    WrongSymbolKind { name: String, expected: SymbolKind },
    #[error("nondeterminism: more than one transition for {0}")]
    DuplicateTransition(String),
    #[error("acceptance mismatch: {0}")]
    AcceptanceMismatch(String),
}

/// Non-fatal findings of [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    /// Some transition keys have no entry; runs reaching them die.
    Partial {
        missing_calls: usize,
        missing_returns: usize,
        missing_internals: usize,
    },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::Partial {
                missing_calls,
                missing_returns,
                missing_internals,
            } => {
                f.write_str("partial:")?;
                let mut first = true;
                for (n, what) in [
                    (missing_calls, "call"),
                    (missing_returns, "return"),
                    (missing_internals, "internal"),
                ] {
                    if *n == 0 {
                        continue;
                    }
                    if !first {
                        f.write_str(",")?;
                    }
                    first = false;
                    let s = if *n == 1 { "" } else { "s" };
                    write!(f, " {n} missing {what} transition{s}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validated {
    pub dvpa: Dvpa,
    pub warnings: Vec<Warning>,
}

fn intern(
    what: &'static str,
    names: &[String],
) -> Result<(Vec<String>, BTreeMap<String, u32>), ValidationError> {
    let mut sorted: Vec<String> = names.to_vec();
    sorted.sort_unstable();
    let mut index = BTreeMap::new();
    for (i, name) in sorted.iter().enumerate() {
        if !is_valid_name(name) {
            return Err(ValidationError::InvalidName {
                what,
                name: name.clone(),
            });
        }
        if index.insert(name.clone(), i as u32).is_some() {
            return Err(ValidationError::DuplicateDeclaration {
                what,
                name: name.clone(),
            });
        }
    }
    Ok((sorted, index))
}

/// Checks a description and builds the automaton.
pub fn validate(desc: &Description) -> Result<Validated, ValidationError> {
    if desc.states.is_empty() {
        return Err(ValidationError::EmptyStateSet);
    }
    let alphabet = PartitionedAlphabet::new(&desc.calls, &desc.returns, &desc.internals)?;
    let (state_names, state_raw) = intern("state", &desc.states)?;
    let (stack_names, stack_raw) = intern("stack symbol", &desc.stack)?;
    let state_index: BTreeMap<String, StateId> = state_raw
        .into_iter()
        .map(|(k, v)| (k, StateId(v)))
        .collect();
    let stack_index: BTreeMap<String, StackSymbol> = stack_raw
        .into_iter()
        .map(|(k, v)| (k, StackSymbol(v)))
        .collect();

    let state = |name: &str| {
        state_index
            .get(name)
            .copied()
            .ok_or_else(|| ValidationError::UndeclaredState(name.to_string()))
    };
    let stack = |name: &str| {
        stack_index
            .get(name)
            .copied()
            .ok_or_else(|| ValidationError::UndeclaredStackSymbol(name.to_string()))
    };
    let symbol = |name: &str, kind: SymbolKind| {
        let s = alphabet
            .lookup(name)
            .ok_or_else(|| ValidationError::UndeclaredSymbol(name.to_string()))?;
        if alphabet.kind(s) != kind {
            return Err(ValidationError::WrongSymbolKind {
                name: name.to_string(),
                expected: kind,
            });
        }
        Ok(s)
    };

    let initial = state(&desc.initial)?;

    let mut call_trans = BTreeMap::new();
    for rule in &desc.call_rules {
        let key = (state(&rule.from)?, symbol(&rule.symbol, SymbolKind::Call)?);
        let val = (state(&rule.to)?, stack(&rule.push)?);
        if call_trans.insert(key, val).is_some() {
            return Err(ValidationError::DuplicateTransition(format!(
                "call {} {}",
                rule.from, rule.symbol
            )));
        }
    }
    let mut return_trans = BTreeMap::new();
    for rule in &desc.return_rules {
        let key = (
            state(&rule.from)?,
            stack(&rule.pop)?,
            symbol(&rule.symbol, SymbolKind::Return)?,
        );
        if return_trans.insert(key, state(&rule.to)?).is_some() {
            return Err(ValidationError::DuplicateTransition(format!(
                "ret {} {} {}",
                rule.from, rule.pop, rule.symbol
            )));
        }
    }
    let mut internal_trans = BTreeMap::new();
    for rule in &desc.internal_rules {
        let key = (
            state(&rule.from)?,
            symbol(&rule.symbol, SymbolKind::Internal)?,
        );
        if internal_trans.insert(key, state(&rule.to)?).is_some() {
            return Err(ValidationError::DuplicateTransition(format!(
                "int {} {}",
                rule.from, rule.symbol
            )));
        }
    }

    let n = state_names.len();
    let condition = match (&desc.final_states, &desc.priorities) {
        (Some(finals), None) => {
            let mut set = BTreeSet::new();
            for name in finals {
                if !set.insert(state(name)?) {
                    return Err(ValidationError::DuplicateDeclaration {
                        what: "final state",
                        name: name.clone(),
                    });
                }
            }
            Condition::Final(set)
        }
        (None, Some(prios)) => {
            let mut table: Vec<Option<u32>> = alloc::vec![None; n];
            for (name, p) in prios {
                let q = state(name)?;
                if table[q.index()].replace(*p).is_some() {
                    return Err(ValidationError::DuplicateDeclaration {
                        what: "priority of state",
                        name: name.clone(),
                    });
                }
            }
            let mut total = Vec::with_capacity(n);
            for (i, p) in table.into_iter().enumerate() {
                match p {
                    Some(p) => total.push(p),
                    None => {
                        return Err(ValidationError::AcceptanceMismatch(format!(
                            "no priority for state {}",
                            state_names[i]
                        )))
                    }
                }
            }
            Condition::Priorities(total)
        }
        (Some(_), Some(_)) => {
            return Err(ValidationError::AcceptanceMismatch(
                "both final states and priorities given".into(),
            ))
        }
        (None, None) => {
            return Err(ValidationError::AcceptanceMismatch(
                "neither final states nor priorities given".into(),
            ))
        }
    };
    let acceptance = AcceptanceSpec::new(desc.kind, condition, n)?;

    let count = |kind| alphabet.of_kind(kind).count();
    let missing_calls = n * count(SymbolKind::Call) - call_trans.len();
    let missing_returns = n * stack_names.len() * count(SymbolKind::Return) - return_trans.len();
    let missing_internals = n * count(SymbolKind::Internal) - internal_trans.len();
    let mut warnings = Vec::new();
    if missing_calls + missing_returns + missing_internals > 0 {
        warnings.push(Warning::Partial {
            missing_calls,
            missing_returns,
            missing_internals,
        });
    }

    Ok(Validated {
        dvpa: Dvpa {
            alphabet,
            state_names,
            state_index,
            stack_names,
            stack_index,
            initial,
            call_trans,
            return_trans,
            internal_trans,
            acceptance,
        },
        warnings,
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    //! Small automata shared by the unit tests.
    use super::*;
    use alloc::vec;

    pub fn strings(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// Stair-Büchi automaton for the strictly unbounded words over {c, r}.
    pub fn lsu() -> Dvpa {
        let mut d = Description::new(AcceptanceKind::StairBuchi);
        d.calls = strings(&["c"]);
        d.returns = strings(&["r"]);
        d.stack = strings(&["Z"]);
        d.states = strings(&["s_rej", "s_acc"]);
        d.initial = "s_rej".into();
        d.final_states = Some(strings(&["s_acc"]));
        d.call("s_rej", "c", "s_acc", "Z")
            .call("s_acc", "c", "s_acc", "Z")
            .ret("s_rej", "Z", "r", "s_rej")
            .ret("s_acc", "Z", "r", "s_rej");
        validate(&d).unwrap().dvpa
    }

    /// Stair-Büchi automaton with q'' final, carrying a forbidden pattern
    /// that the single-state loop pattern misses.
    pub fn nested_pattern() -> Dvpa {
        let mut d = Description::new(AcceptanceKind::StairBuchi);
        d.calls = strings(&["c"]);
        d.returns = strings(&["r1", "r2"]);
        d.stack = strings(&["Z", "Z'"]);
        d.states = strings(&["q", "q'", "q''"]);
        d.initial = "q".into();
        d.final_states = Some(strings(&["q''"]));
        d.call("q", "c", "q''", "Z")
            .call("q''", "c", "q", "Z")
            .ret("q''", "Z", "r1", "q''")
            .ret("q''", "Z'", "r1", "q''")
            .ret("q''", "Z", "r2", "q'")
            .call("q'", "c", "q", "Z'");
        validate(&d).unwrap().dvpa
    }

    /// Parity DVPA whose state q1 sits on both loops but never on a matched step.
    pub fn two_priority(kind: AcceptanceKind, q1_priority: u32) -> Dvpa {
        let mut d = Description::new(kind);
        d.calls = strings(&["c1", "c2"]);
        d.returns = strings(&["r1", "r2"]);
        d.internals = strings(&["i1", "i2"]);
        d.stack = strings(&["Z1", "Z2"]);
        d.states = strings(&["q0", "q1", "q2", "q3", "q4"]);
        d.initial = "q0".into();
        d.priorities = Some(vec![
            ("q0".into(), 0),
            ("q1".into(), q1_priority),
            ("q2".into(), 1),
            ("q3".into(), 0),
            ("q4".into(), 3),
        ]);
        d.call("q0", "c1", "q1", "Z1")
            .call("q0", "c2", "q1", "Z2")
            .ret("q1", "Z1", "r1", "q2")
            .ret("q1", "Z2", "r2", "q4")
            .internal("q1", "i1", "q1")
            .internal("q2", "i1", "q3")
            .call("q2", "c1", "q1", "Z1")
            .internal("q3", "i2", "q3")
            .internal("q3", "i1", "q2")
            .call("q4", "c2", "q1", "Z2");
        validate(&d).unwrap().dvpa
    }

    pub fn internal_loop(accepting: bool) -> Dvpa {
        let mut d = Description::new(AcceptanceKind::StairBuchi);
        d.internals = strings(&["i"]);
        d.states = strings(&["s"]);
        d.initial = "s".into();
        d.final_states = Some(if accepting { strings(&["s"]) } else { vec![] });
        d.internal("s", "i", "s");
        validate(&d).unwrap().dvpa
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use alloc::vec;

    #[test]
    fn nested_pattern_validates_with_three_states() {
        let a = nested_pattern();
        assert_eq!(a.state_count(), 3);
        assert_eq!(a.stack_count(), 2);
        assert_eq!(a.alphabet().len(), 3);
        let q = a.state("q").unwrap();
        let qq = a.state("q''").unwrap();
        let c = a.alphabet().lookup("c").unwrap();
        assert_eq!(a.call(q, c), Some((qq, a.stack_symbol("Z").unwrap())));
        assert!(a.is_accepting(qq));
        assert!(!a.is_accepting(q));
    }

    #[test]
    fn duplicate_call_key_is_nondeterminism() {
        let mut d = nested_pattern().describe();
        d.call("q", "c", "q'", "Z");
        assert!(matches!(
            validate(&d),
            Err(ValidationError::DuplicateTransition(_))
        ));
    }

    #[test]
    fn one_missing_return_is_a_warning() {
        // Total over {s} x {Z, Y} x {r1, r2}, minus one return entry.
        let mut d = Description::new(AcceptanceKind::StairBuchi);
        d.calls = strings(&["c"]);
        d.returns = strings(&["r1", "r2"]);
        d.stack = strings(&["Y", "Z"]);
        d.states = strings(&["s"]);
        d.initial = "s".into();
        d.call("s", "c", "s", "Z");
        for z in ["Y", "Z"] {
            for r in ["r1", "r2"] {
                if (z, r) != ("Y", "r2") {
                    d.ret("s", z, r, "s");
                }
            }
        }
        let v = validate(&d).unwrap();
        assert_eq!(v.warnings.len(), 1);
        assert_eq!(
            alloc::format!("{}", v.warnings[0]),
            "partial: 1 missing return transition"
        );
    }

    #[test]
    fn rejects_undeclared_names_and_mismatched_acceptance() {
        let mut d = lsu().describe();
        d.call("nowhere", "c", "s_acc", "Z");
        assert_eq!(
            validate(&d),
            Err(ValidationError::UndeclaredState("nowhere".into()))
        );

        let mut d = lsu().describe();
        d.ret("s_acc", "W", "r", "s_rej");
        assert!(matches!(
            validate(&d),
            Err(ValidationError::UndeclaredStackSymbol(_))
        ));

        let mut d = lsu().describe();
        d.internal("s_acc", "c", "s_rej");
        assert!(matches!(
            validate(&d),
            Err(ValidationError::WrongSymbolKind { .. })
        ));

        let mut d = lsu().describe();
        d.kind = AcceptanceKind::Parity;
        assert!(matches!(
            validate(&d),
            Err(ValidationError::AcceptanceMismatch(_))
        ));

        let mut d = lsu().describe();
        d.states.clear();
        assert_eq!(validate(&d), Err(ValidationError::EmptyStateSet));
    }

    #[test]
    fn bottom_marker_cannot_be_declared() {
        let mut d = lsu().describe();
        d.stack.push(BOTTOM_MARKER.into());
        assert!(matches!(
            validate(&d),
            Err(ValidationError::InvalidName { .. })
        ));
    }

    #[test]
    fn alphabet_groups_must_be_disjoint() {
        assert_eq!(
            PartitionedAlphabet::new(&["a"], &["a"], &[]),
            Err(AlphabetError::Duplicate("a".into()))
        );
        let empty: [&str; 0] = [];
        assert_eq!(
            PartitionedAlphabet::new(&empty, &empty, &empty),
            Err(AlphabetError::Empty)
        );
        assert!(PartitionedAlphabet::new(&["a;b"], &[], &[]).is_err());
    }

    #[test]
    fn describe_then_validate_is_identity() {
        for a in [
            nested_pattern(),
            lsu(),
            two_priority(AcceptanceKind::Parity, 2),
        ] {
            assert_eq!(validate(&a.describe()).unwrap().dvpa, a);
        }
    }

    #[test]
    fn buchi_reads_as_parity_two_one() {
        let a = lsu().buchi_as_parity();
        assert_eq!(a.kind(), AcceptanceKind::StairParity);
        let pr: Vec<u32> = a.states().map(|q| a.priority(q)).collect();
        // states sorted by name: s_acc, s_rej
        assert_eq!(pr, vec![2, 1]);
    }
}
