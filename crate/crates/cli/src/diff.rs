//! Differential testing of two automata over one alphabet.

use rayon::prelude::*;
use stairvpa::{accepts, Dvpa, LassoError, LassoWord, PartitionedAlphabet, SymbolId};

use crate::random::{LassoGenerator, Policy};

/// Alphabets up to this size also get the exhaustive sub-corpus.
pub const EXHAUSTIVE_ALPHABET: usize = 4;
pub const EXHAUSTIVE_PREFIX: usize = 2;
pub const EXHAUSTIVE_PERIOD: usize = 4;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DiffError {
    #[error("the automata have different alphabets")]
    AlphabetMismatch,
    #[error("lasso {lasso}: {source}")]
    Lasso { lasso: String, source: LassoError },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub lasso: LassoWord,
    pub a: bool,
    pub b: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffReport {
    pub samples: usize,
    pub seed: u64,
    /// Size of the exhaustive sub-corpus; 0 for larger alphabets.
    pub exhaustive: usize,
    /// Sorted by total length, then by symbols; no duplicates.
    pub mismatches: Vec<Mismatch>,
    pub first_mismatch_shrunk: Option<LassoWord>,
}

impl DiffReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Every lasso with `|u| ≤ 2` and `1 ≤ |v| ≤ 4`.
pub fn exhaustive_corpus(alphabet: &PartitionedAlphabet) -> Vec<LassoWord> {
    let symbols: Vec<SymbolId> = alphabet.symbols().collect();
    let words = |lo: usize, hi: usize| {
        let mut out: Vec<Vec<SymbolId>> = Vec::new();
        let mut layer = vec![Vec::new()];
        for len in 0..=hi {
            if len >= lo {
                out.extend(layer.iter().cloned());
            }
            layer = layer
                .iter()
                .flat_map(|w| {
                    symbols.iter().map(move |&s| {
                        let mut w2 = w.clone();
                        w2.push(s);
                        w2
                    })
                })
                .collect();
        }
        out
    };
    let prefixes = words(0, EXHAUSTIVE_PREFIX);
    let periods = words(1, EXHAUSTIVE_PERIOD);
    prefixes
        .iter()
        .flat_map(|u| {
            periods
                .iter()
                .map(move |v| LassoWord::new(u.clone(), v.clone()).expect("non-empty period"))
        })
        .collect()
}

/// `samples` seeded lassos alternating between the live and the any policy.
pub fn random_corpus(
    alphabet: &PartitionedAlphabet,
    samples: usize,
    seed: u64,
    max_len: usize,
) -> Vec<LassoWord> {
    let mut g = LassoGenerator::new(alphabet, seed, max_len);
    (0..samples)
        .map(|i| {
            let policy = if i % 2 == 0 {
                Policy::Live
            } else {
                Policy::Any
            };
            g.next_lasso(policy)
        })
        .collect()
}

fn verdicts(a: &Dvpa, b: &Dvpa, lasso: &LassoWord) -> Result<(bool, bool), DiffError> {
    let run = |x: &Dvpa| {
        accepts(x, lasso)
            .map(|v| v.accepted)
            .map_err(|source| DiffError::Lasso {
                lasso: lasso.format(x.alphabet()),
                source,
            })
    };
    Ok((run(a)?, run(b)?))
}

fn sort_key(l: &LassoWord) -> (usize, &[SymbolId], &[SymbolId]) {
    (l.prefix.len() + l.period.len(), &l.prefix, &l.period)
}

/// Compares `a` and `b` on a random corpus plus, for small alphabets, the
/// exhaustive sub-corpus.
pub fn diff(
    a: &Dvpa,
    b: &Dvpa,
    samples: usize,
    seed: u64,
    max_len: usize,
) -> Result<DiffReport, DiffError> {
    if a.alphabet() != b.alphabet() {
        return Err(DiffError::AlphabetMismatch);
    }
    let alphabet = a.alphabet();
    let mut corpus = random_corpus(alphabet, samples, seed, max_len);
    let exhaustive = if alphabet.len() <= EXHAUSTIVE_ALPHABET {
        let extra = exhaustive_corpus(alphabet);
        let n = extra.len();
        corpus.extend(extra);
        n
    } else {
        0
    };
    let results: Vec<Option<Mismatch>> = corpus
        .par_iter()
        .map(|l| {
            let (va, vb) = verdicts(a, b, l)?;
            Ok((va != vb).then(|| Mismatch {
                lasso: l.clone(),
                a: va,
                b: vb,
            }))
        })
        .collect::<Result<_, DiffError>>()?;
    let mut mismatches: Vec<Mismatch> = results.into_iter().flatten().collect();
    mismatches.sort_by(|x, y| sort_key(&x.lasso).cmp(&sort_key(&y.lasso)));
    mismatches.dedup_by(|x, y| x.lasso == y.lasso);
    let first_mismatch_shrunk = match mismatches.first() {
        Some(m) => Some(shrink(a, b, m.lasso.clone())?),
        None => None,
    };
    Ok(DiffReport {
        samples,
        seed,
        exhaustive,
        mismatches,
        first_mismatch_shrunk,
    })
}

/// Deletes single symbols while the automata still disagree; the period
/// keeps at least one symbol.
pub fn shrink(a: &Dvpa, b: &Dvpa, mut lasso: LassoWord) -> Result<LassoWord, DiffError> {
    let disagree = |l: &LassoWord| verdicts(a, b, l).map(|(x, y)| x != y);
    'outer: loop {
        for i in 0..lasso.prefix.len() {
            let mut u = lasso.prefix.clone();
            u.remove(i);
            let cand = LassoWord::new(u, lasso.period.clone()).expect("period unchanged");
            if disagree(&cand)? {
                lasso = cand;
                continue 'outer;
            }
        }
        for i in 0..lasso.period.len() {
            if lasso.period.len() == 1 {
                break;
            }
            let mut v = lasso.period.clone();
            v.remove(i);
            let cand = LassoWord::new(lasso.prefix.clone(), v).expect("period non-empty");
            if disagree(&cand)? {
                lasso = cand;
                continue 'outer;
            }
        }
        return Ok(lasso);
    }
}
