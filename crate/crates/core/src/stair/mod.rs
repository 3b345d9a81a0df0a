//! Removing the stair condition from stair-Büchi DVPAs.
//!
//! A stair-Büchi DVPA has an equivalent parity DVPA exactly when it has no
//! forbidden pattern. [`analyze`] computes the shared summaries once;
//! [`StairAnalysis::check`] either finds a pattern or confirms there is
//! none, and [`StairAnalysis::remove`] then builds the parity automaton.

mod height;
mod parity;
mod pattern;
mod precedes;
mod reducer;

pub use height::{heights, CyclicPrecedes, HeightFunction};
pub use parity::{
    build_parity, CapExceeded, ParityProduct, ProductStackSymbol, ProductState, DEFAULT_CAP,
};
pub use pattern::{Arrow, PatternWitness, ReplayError};
pub use precedes::{precedes, PrecedesRelation, PrecedesVia, StatePair};
pub use reducer::{Reducer, ReducerError, ReducerState, SuMove, Transduction};

use crate::automaton::{AcceptanceKind, Dvpa};
use crate::summaries::{
    coupled_relations, reachable, step_graph, wm_summaries, CoupledRelation, FlaggedRelation,
    Reachability, StepGraph,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StairError {
    #[error("stair removal needs stair-buchi acceptance, found {0}")]
    NotStairBuchi(AcceptanceKind),
    #[error("the automaton has a forbidden pattern")]
    HasPattern,
    #[error("internal error: reconstructed pattern does not replay: {0}")]
    Replay(#[from] ReplayError),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error(transparent)]
    Reducer(#[from] ReducerError),
}

/// Summaries shared by the pattern check, the heights and the reducer.
#[derive(Clone, Debug)]
pub struct StairAnalysis {
    pub wm: FlaggedRelation,
    pub reach: Reachability,
    pub graph: StepGraph,
    pub coupled: CoupledRelation,
    pub precedes: PrecedesRelation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Removability {
    Removable,
    Pattern(PatternWitness),
}

pub fn analyze(dvpa: &Dvpa) -> Result<StairAnalysis, StairError> {
    if dvpa.kind() != AcceptanceKind::StairBuchi {
        return Err(StairError::NotStairBuchi(dvpa.kind()));
    }
    let wm = wm_summaries(dvpa);
    let reach = reachable(dvpa, &wm);
    let graph = step_graph(dvpa, &wm);
    let coupled = coupled_relations(dvpa, &wm);
    let precedes = precedes(dvpa, &reach, &wm, &coupled);
    Ok(StairAnalysis {
        wm,
        reach,
        graph,
        coupled,
        precedes,
    })
}

impl StairAnalysis {
    /// A forbidden pattern is a pair `(q, q')` with `(q, q') ≺ (q, q')`.
    /// The returned witness has been replayed.
    pub fn check(&self, dvpa: &Dvpa) -> Result<Removability, StairError> {
        let Some(pair) = self.precedes.reflexive().next() else {
            return Ok(Removability::Removable);
        };
        let witness = PatternWitness::reconstruct(pair, &self.precedes, &self.wm, &self.coupled)
            .expect("derivations of a reflexive entry are stored");
        witness.validate(dvpa)?;
        Ok(Removability::Pattern(witness))
    }

    pub fn heights(&self, dvpa: &Dvpa) -> Result<HeightFunction, StairError> {
        heights(dvpa, &self.precedes).map_err(|_| StairError::HasPattern)
    }

    /// The equivalent parity DVPA, or [`StairError::HasPattern`].
    pub fn remove(&self, dvpa: &Dvpa, cap: usize) -> Result<ParityProduct, StairError> {
        if self.precedes.reflexive().next().is_some() {
            return Err(StairError::HasPattern);
        }
        let ht = self.heights(dvpa)?;
        Ok(build_parity(dvpa, &ht, cap)?)
    }

    /// The strategy reducing strictly unbounded words to the automaton's
    /// language, built on a replayed pattern.
    pub fn reducer(&self, dvpa: &Dvpa, witness: PatternWitness) -> Result<Reducer, StairError> {
        witness.validate(dvpa)?;
        let access = self
            .graph
            .access_word(witness.q1, &self.wm)
            .ok_or(ReducerError::Unreachable)?;
        Ok(Reducer::new(dvpa, witness, access))
    }
}

/// Runs [`analyze`] and [`StairAnalysis::check`].
pub fn check_removable(dvpa: &Dvpa) -> Result<Removability, StairError> {
    analyze(dvpa)?.check(dvpa)
}

/// Runs [`analyze`] and [`StairAnalysis::remove`].
pub fn remove_stair(dvpa: &Dvpa, cap: usize) -> Result<ParityProduct, StairError> {
    analyze(dvpa)?.remove(dvpa, cap)
}

#[cfg(test)]
mod tests;
