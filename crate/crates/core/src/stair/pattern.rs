use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::automaton::{Dvpa, StackSymbol, StateId, SymbolId};
use crate::flag::Flag;
use crate::run::{run_word, Configuration, RunTrace};
use crate::summaries::{CoupledRelation, FlaggedRelation, Quad};
use crate::word::{classify_word, WordClass};

use super::precedes::PrecedesRelation;

/// The six runs of a forbidden pattern on states `q`, `q'`, `q''`:
///
/// ```text
/// (q, ⊥)   --u-->  (q, σ)      accepting state on a step
/// (q, ⊥)   --v-->  (q', ⊥)     no accepting state on a step
/// (q', ⊥)  --w-->  (q, σ')     no accepting state on a step
/// (q, ⊥)   --x-->  (q'', ⊥)
/// (q'', σ') --y--> (q'', ⊥)
/// (q'', σ) --z-->  (q', ⊥)
/// ```
///
/// with `σ` non-empty and `u·v·w·x·y·z` minimally well-matched. Stacks are
/// bottom first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternWitness {
    pub q: StateId,
    pub q1: StateId,
    pub q2: StateId,
    pub u: Vec<SymbolId>,
    pub v: Vec<SymbolId>,
    pub w: Vec<SymbolId>,
    pub x: Vec<SymbolId>,
    pub y: Vec<SymbolId>,
    pub z: Vec<SymbolId>,
    pub sigma: Vec<StackSymbol>,
    pub sigma1: Vec<StackSymbol>,
}

/// Arrow, start state and stack, word, end state and stack, required flag.
type ArrowSpec<'a> = (
    Arrow,
    StateId,
    &'a Vec<StackSymbol>,
    &'a Vec<SymbolId>,
    StateId,
    &'a Vec<StackSymbol>,
    Option<Flag>,
);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arrow {
    U,
    V,
    W,
    X,
    Y,
    Z,
}

impl Arrow {
    pub fn name(self) -> &'static str {
        match self {
            Arrow::U => "u",
            Arrow::V => "v",
            Arrow::W => "w",
            Arrow::X => "x",
            Arrow::Y => "y",
            Arrow::Z => "z",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("run on {} dies at symbol {pos}", .arrow.name())]
    Dead { arrow: Arrow, pos: usize },
    #[error("run on {} ends in the wrong configuration", .arrow.name())]
    WrongEnd { arrow: Arrow },
    #[error("run on {} has the wrong accepting-step flag", .arrow.name())]
    WrongFlag { arrow: Arrow },
    #[error("the stack σ is empty")]
    EmptySigma,
    #[error("q or q' is accepting")]
    AcceptingEndpoint,
    #[error("u·v·w·x·y·z is {0:?}, not minimally well-matched")]
    NotMinimal(WordClass),
}

impl PatternWitness {
    pub fn word(&self) -> Vec<SymbolId> {
        [&self.u, &self.v, &self.w, &self.x, &self.y, &self.z]
            .into_iter()
            .flatten()
            .copied()
            .collect()
    }

    /// Replays all six runs with [`run_word`].
    pub fn validate(&self, dvpa: &Dvpa) -> Result<(), ReplayError> {
        if self.sigma.is_empty() {
            return Err(ReplayError::EmptySigma);
        }
        if dvpa.is_accepting(self.q) || dvpa.is_accepting(self.q1) {
            return Err(ReplayError::AcceptingEndpoint);
        }
        let empty = Vec::new();
        let arrows: [ArrowSpec<'_>; 6] = [
            (
                Arrow::U,
                self.q,
                &empty,
                &self.u,
                self.q,
                &self.sigma,
                Some(Flag::Sees),
            ),
            (
                Arrow::V,
                self.q,
                &empty,
                &self.v,
                self.q1,
                &empty,
                Some(Flag::Avoids),
            ),
            (
                Arrow::W,
                self.q1,
                &empty,
                &self.w,
                self.q,
                &self.sigma1,
                Some(Flag::Avoids),
            ),
            (Arrow::X, self.q, &empty, &self.x, self.q2, &empty, None),
            (
                Arrow::Y,
                self.q2,
                &self.sigma1,
                &self.y,
                self.q2,
                &empty,
                None,
            ),
            (
                Arrow::Z,
                self.q2,
                &self.sigma,
                &self.z,
                self.q1,
                &empty,
                None,
            ),
        ];
        for (arrow, from, from_stack, word, to, to_stack, flag) in arrows {
            let trace = run_word(dvpa, &Configuration::new(from, from_stack.clone()), word);
            check(
                arrow,
                &trace,
                Configuration::new(to, to_stack.clone()),
                flag,
            )?;
        }
        match classify_word(dvpa.alphabet(), &self.word()) {
            WordClass::MinimallyWellMatched => Ok(()),
            other => Err(ReplayError::NotMinimal(other)),
        }
    }

    /// Reconstructs the pattern behind a reflexive entry `(q, q') ≺ (q, q')`.
    pub(crate) fn reconstruct(
        pair: (StateId, StateId),
        precedes: &PrecedesRelation,
        wm: &FlaggedRelation,
        coupled: &CoupledRelation,
    ) -> Option<PatternWitness> {
        let (q, q1) = pair;
        let via = precedes.pairs.get(&(pair, pair))?;
        let q2 = via.via;
        let outer = coupled.core_witness(
            Quad {
                q,
                p: q,
                d: q2,
                d2: q1,
                flag: Flag::Sees,
            },
            wm,
        )?;
        let (w, y, sigma1) = if via.flat_return {
            (wm.witness(q1, q, Flag::Avoids)?, Vec::new(), Vec::new())
        } else {
            let inner = coupled.full_witness(
                Quad {
                    q: q1,
                    p: q,
                    d: q2,
                    d2: q2,
                    flag: Flag::Avoids,
                },
                wm,
            )?;
            (inner.ascent, inner.descent, inner.stack)
        };
        Some(PatternWitness {
            q,
            q1,
            q2,
            u: outer.ascent,
            v: wm.witness(q, q1, Flag::Avoids)?,
            w,
            x: wm.reach_witness(q, q2)?,
            y,
            z: outer.descent,
            sigma: outer.stack,
            sigma1,
        })
    }

    /// Human-readable listing, one component per line.
    pub fn display<'a>(&'a self, dvpa: &'a Dvpa) -> impl fmt::Display + 'a {
        WitnessDisplay {
            witness: self,
            dvpa,
        }
    }
}

fn check(
    arrow: Arrow,
    trace: &RunTrace,
    expected: Configuration,
    flag: Option<Flag>,
) -> Result<(), ReplayError> {
    if let Some(pos) = trace.death() {
        return Err(ReplayError::Dead { arrow, pos });
    }
    if trace.last() != expected {
        return Err(ReplayError::WrongEnd { arrow });
    }
    if let Some(flag) = flag {
        if Flag::of(trace.f_on_step_count() > 0) != flag {
            return Err(ReplayError::WrongFlag { arrow });
        }
    }
    Ok(())
}

struct WitnessDisplay<'a> {
    witness: &'a PatternWitness,
    dvpa: &'a Dvpa,
}

impl fmt::Display for WitnessDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (w, a) = (self.witness, self.dvpa);
        let word = |s: &[SymbolId]| -> String {
            if s.is_empty() {
                "ε".into()
            } else {
                a.alphabet().format_word(s)
            }
        };
        // stacks are listed top first
        let stack = |s: &[StackSymbol]| -> String {
            if s.is_empty() {
                "ε".into()
            } else {
                s.iter()
                    .rev()
                    .map(|&z| a.stack_name(z))
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        };
        writeln!(f, "q = {}", a.state_name(w.q))?;
        writeln!(f, "q' = {}", a.state_name(w.q1))?;
        writeln!(f, "q'' = {}", a.state_name(w.q2))?;
        for (name, part) in [
            ("u", &w.u),
            ("v", &w.v),
            ("w", &w.w),
            ("x", &w.x),
            ("y", &w.y),
            ("z", &w.z),
        ] {
            writeln!(f, "{name} = {}", word(part))?;
        }
        writeln!(f, "sigma = {}", stack(&w.sigma))?;
        write!(f, "sigma' = {}", stack(&w.sigma1))
    }
}
