//! Deterministic visibly pushdown automata (DVPAs) on infinite words.
//!
//! The crate covers three questions about a DVPA over a partitioned alphabet:
//!
//! * does it accept an ultimately periodic word `u·v^ω`, under Büchi, parity,
//!   stair-Büchi or stair-parity acceptance ([`lasso`]);
//! * how many priorities does a stair-parity DVPA really need
//!   ([`priority::stair_index`]);
//! * can a stair-Büchi DVPA be replaced by an ordinary parity DVPA, and if so
//!   what is that automaton ([`stair`]).
//!
//! Everything here is pure computation over immutable values and only needs
//! `alloc`. Text formats, random corpora and the command line live in the
//! `stairvpa-cli` crate.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod automaton;
pub mod lasso;
pub mod priority;
pub mod run;
pub mod stair;
pub mod summaries;
pub mod word;

mod flag;

pub use automaton::{
    validate, AcceptanceKind, AcceptanceSpec, Condition, Description, Dvpa, PartitionedAlphabet,
    StackSymbol, StateId, SymbolId, SymbolKind, Validated, ValidationError, Warning,
};
pub use flag::Flag;
pub use lasso::{accepts, parse_lasso, profile, LassoError, LassoProfile, LassoVerdict, LassoWord};
pub use run::{run_word, Configuration, RunTrace};
pub use word::{classify_word, WordClass};
