//! Classification of finite words by their call/return nesting.

use crate::automaton::{PartitionedAlphabet, SymbolId, SymbolKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordClass {
    /// Every call is matched by a later return and vice versa; includes the
    /// empty word. Not of the form `c·w·r` with `c` matched by the final `r`.
    WellMatched,
    /// `c·w·r` with `w` well-matched.
    MinimallyWellMatched,
    /// No prefix has excess returns, `pending` calls stay open at the end.
    Pending(usize),
    /// Index of the first symbol whose prefix has more returns than calls.
    Illegal(usize),
}

impl WordClass {
    pub fn is_well_matched(self) -> bool {
        matches!(
            self,
            WordClass::WellMatched | WordClass::MinimallyWellMatched
        )
    }
}

/// Classifies a word over `alphabet`. Symbols are ids of that alphabet.
pub fn classify_word(alphabet: &PartitionedAlphabet, word: &[SymbolId]) -> WordClass {
    let mut surplus = 0usize;
    // the first call stays open until the last symbol
    let mut first_call_open_until_end = !word.is_empty()
        && alphabet.kind(word[0]) == SymbolKind::Call
        && alphabet.kind(word[word.len() - 1]) == SymbolKind::Return;
    for (pos, &s) in word.iter().enumerate() {
        match alphabet.kind(s) {
            SymbolKind::Call => surplus += 1,
            SymbolKind::Return => {
                if surplus == 0 {
                    return WordClass::Illegal(pos);
                }
                surplus -= 1;
                if surplus == 0 && pos + 1 < word.len() {
                    first_call_open_until_end = false;
                }
            }
            SymbolKind::Internal => {}
        }
    }
    match surplus {
        0 if first_call_open_until_end => WordClass::MinimallyWellMatched,
        0 => WordClass::WellMatched,
        k => WordClass::Pending(k),
    }
}
