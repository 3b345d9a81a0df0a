//! Fixtures and generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stairvpa::{validate, AcceptanceKind, Description, Dvpa, LassoWord, SymbolId};

pub fn strings(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

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

/// Shape of the random automata.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_states: usize,
    pub calls: usize,
    pub returns: usize,
    pub internals: usize,
    pub max_stack: usize,
    /// Probability that a transition key gets an entry.
    pub density: f64,
}

pub const SMALL: Shape = Shape {
    max_states: 4,
    calls: 1,
    returns: 2,
    internals: 1,
    max_stack: 2,
    density: 0.85,
};

/// A random DVPA over calls `c*`, returns `r*`, internals `i*`.
pub fn random_dvpa(seed: u64, shape: Shape, kind: AcceptanceKind) -> Dvpa {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=shape.max_states);
    let gamma = rng.gen_range(1..=shape.max_stack);
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let stack: Vec<String> = (0..gamma).map(|i| format!("Z{i}")).collect();
    let mut d = Description::new(kind);
    d.calls = (0..shape.calls).map(|i| format!("c{i}")).collect();
    d.returns = (0..shape.returns).map(|i| format!("r{i}")).collect();
    d.internals = (0..shape.internals).map(|i| format!("i{i}")).collect();
    d.stack = stack.clone();
    d.states = states.clone();
    d.initial = states[0].clone();
    if kind.uses_final_states() {
        d.final_states = Some(
            states
                .iter()
                .filter(|_| rng.gen_bool(0.4))
                .cloned()
                .collect(),
        );
    } else {
        d.priorities = Some(
            states
                .iter()
                .map(|s| (s.clone(), rng.gen_range(0..4)))
                .collect(),
        );
    }
    for q in &states {
        for c in d.calls.clone() {
            if rng.gen_bool(shape.density) {
                let to = states.choose(&mut rng).unwrap().clone();
                let z = stack.choose(&mut rng).unwrap().clone();
                d.call(q, &c, &to, &z);
            }
        }
        for z in &stack {
            for r in d.returns.clone() {
                if rng.gen_bool(shape.density) {
                    let to = states.choose(&mut rng).unwrap().clone();
                    d.ret(q, z, &r, &to);
                }
            }
        }
        for i in d.internals.clone() {
            if rng.gen_bool(shape.density) {
                let to = states.choose(&mut rng).unwrap().clone();
                d.internal(q, &i, &to);
            }
        }
    }
    validate(&d).unwrap().dvpa
}

/// A random lasso; with `live` the prefix never has excess returns and the
/// period does not drain the stack.
pub fn random_lasso(rng: &mut ChaCha8Rng, dvpa: &Dvpa, max_len: usize, live: bool) -> LassoWord {
    let alphabet = dvpa.alphabet();
    let symbols: Vec<SymbolId> = alphabet.symbols().collect();
    loop {
        let u: Vec<SymbolId> = (0..rng.gen_range(0..=max_len))
            .map(|_| *symbols.choose(rng).unwrap())
            .collect();
        let v: Vec<SymbolId> = (0..rng.gen_range(1..=max_len))
            .map(|_| *symbols.choose(rng).unwrap())
            .collect();
        let lasso = LassoWord::new(u, v).unwrap();
        if !live {
            return lasso;
        }
        let p = stairvpa::profile(alphabet, &lasso);
        if p.illegal_prefix.is_none() && p.net >= 0 {
            return lasso;
        }
    }
}

/// Every word over `symbols` of length at most `max_len`.
pub fn all_words(symbols: &[SymbolId], max_len: usize) -> Vec<Vec<SymbolId>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &s in symbols {
                let mut w2: Vec<SymbolId> = w.clone();
                w2.push(s);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
