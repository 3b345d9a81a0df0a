use alloc::vec::Vec;

use crate::automaton::{Dvpa, SymbolId};
use crate::run::{run_word, Configuration};

use super::pattern::PatternWitness;

/// A move of the player producing words over one call and one return.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuMove {
    Call,
    Return,
}

/// Memory after a move. `eta[0]` is the top; a 0 stands for a pushed `σ`,
/// a 1 for a pushed `σ'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducerState {
    pub eta: Vec<u8>,
    /// Length of the emission so far, access word excluded.
    pub emitted: usize,
    pub open_calls: usize,
    pub zero_count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReducerError {
    #[error("move {0} returns with no open call")]
    DomainViolation(usize),
    #[error("move {0} returns but the memory holds no 0")]
    NoZero(usize),
    #[error("state q' of the pattern is unreachable")]
    Unreachable,
}

/// The strategy mapping words over `{c, r}` to runs of the automaton: each
/// open call becomes a pushed `σ` sitting above an accepting step, each
/// return pops one.
#[derive(Clone, Debug)]
pub struct Reducer {
    pub witness: PatternWitness,
    /// Leads from the initial configuration to state `q'`.
    pub access: Vec<SymbolId>,
    /// Accepting steps on the run of `u` from `(q, ⊥)`.
    pub k: usize,
}

#[derive(Clone, Debug)]
pub struct Transduction {
    /// Emitted word after the access word.
    pub output: Vec<SymbolId>,
    /// Memory before the first move and after each move.
    pub states: Vec<ReducerState>,
}

impl Reducer {
    pub fn new(dvpa: &Dvpa, witness: PatternWitness, access: Vec<SymbolId>) -> Self {
        let k = run_word(dvpa, &Configuration::empty(witness.q), &witness.u).f_on_step_count();
        Reducer { witness, access, k }
    }

    pub fn transduce(&self, input: &[SuMove]) -> Result<Transduction, ReducerError> {
        let w = &self.witness;
        let mut eta: Vec<u8> = Vec::new();
        let mut output = Vec::new();
        let mut open = 0usize;
        let snapshot = |eta: &Vec<u8>, emitted, open| ReducerState {
            eta: eta.clone(),
            emitted,
            open_calls: open,
            zero_count: eta.iter().filter(|&&b| b == 0).count(),
        };
        let mut states = alloc::vec![snapshot(&eta, 0, 0)];
        for (pos, &mv) in input.iter().enumerate() {
            match mv {
                SuMove::Call => {
                    open += 1;
                    output.extend(w.w.iter().chain(&w.u).chain(&w.v));
                    eta.splice(0..0, [0, 1]);
                }
                SuMove::Return => {
                    if open == 0 {
                        return Err(ReducerError::DomainViolation(pos));
                    }
                    open -= 1;
                    let i = eta
                        .iter()
                        .position(|&b| b == 0)
                        .ok_or(ReducerError::NoZero(pos))?;
                    output.extend(w.w.iter().chain(&w.x).chain(&w.y));
                    for _ in 0..i {
                        output.extend(&w.y);
                    }
                    output.extend(&w.z);
                    eta.drain(..=i);
                }
            }
            states.push(snapshot(&eta, output.len(), open));
        }
        Ok(Transduction { output, states })
    }

    /// Configuration reached by the access word.
    pub fn start(&self, dvpa: &Dvpa) -> Configuration {
        run_word(dvpa, &Configuration::empty(dvpa.initial()), &self.access).last()
    }
}
