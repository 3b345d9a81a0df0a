//! Seeded random lassos.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stairvpa::{LassoWord, PartitionedAlphabet, SymbolId, SymbolKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    /// No prefix of `u·v·v` has excess returns and `net(v) ≥ 0`.
    Live,
    /// Uniform symbols; runs may die.
    Any,
}

/// Deterministic stream of lassos. Live periods alternate between a
/// balanced shape (net zero where the alphabet allows) and a call-heavy one.
pub struct LassoGenerator<'a> {
    alphabet: &'a PartitionedAlphabet,
    rng: ChaCha8Rng,
    max_len: usize,
    drawn: u64,
    calls: Vec<SymbolId>,
    returns: Vec<SymbolId>,
    internals: Vec<SymbolId>,
}

impl<'a> LassoGenerator<'a> {
    /// `max_len` is clamped to at least 1.
    pub fn new(alphabet: &'a PartitionedAlphabet, seed: u64, max_len: usize) -> Self {
        let of = |k| alphabet.of_kind(k).collect::<Vec<_>>();
        LassoGenerator {
            alphabet,
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_len: max_len.max(1),
            drawn: 0,
            calls: of(SymbolKind::Call),
            returns: of(SymbolKind::Return),
            internals: of(SymbolKind::Internal),
        }
    }

    /// With [`Policy::Live`] over an alphabet of returns only, no live lasso
    /// exists and an unconstrained one is returned.
    pub fn next_lasso(&mut self, policy: Policy) -> LassoWord {
        let balanced = self.drawn.is_multiple_of(2);
        self.drawn += 1;
        let ulen = self.rng.gen_range(0..=self.max_len);
        let vlen = self.rng.gen_range(1..=self.max_len);
        if policy == Policy::Any || (self.calls.is_empty() && self.internals.is_empty()) {
            let symbols: Vec<SymbolId> = self.alphabet.symbols().collect();
            let mut word = |n| -> Vec<SymbolId> {
                (0..n)
                    .map(|_| *symbols.choose(&mut self.rng).expect("non-empty alphabet"))
                    .collect()
            };
            let u = word(ulen);
            let v = word(vlen);
            return LassoWord::new(u, v).expect("non-empty period");
        }

        let mut height = 0i64;
        let mut u = Vec::with_capacity(ulen);
        for _ in 0..ulen {
            let kind = self.pick_kind(|k| height + k.delta() >= 0);
            u.push(self.symbol(kind));
            height += kind.delta();
        }
        let start = height;
        let mut v = Vec::with_capacity(vlen);
        for i in 0..vlen {
            let left = (vlen - i) as i64;
            let rel = height - start;
            let kind = if balanced {
                // keep a zero net reachable in the symbols that remain
                self.pick_kind(|k| height + k.delta() >= 0 && (rel + k.delta()).abs() < left)
            } else if self.rng.gen_bool(0.5) && !self.calls.is_empty() {
                SymbolKind::Call
            } else {
                self.pick_kind(|k| height + k.delta() >= 0 && rel + k.delta() >= 0)
            };
            v.push(self.symbol(kind));
            height += kind.delta();
        }
        LassoWord::new(u, v).expect("non-empty period")
    }

    /// A kind with symbols that satisfies `ok`; falls back to a call, then
    /// to an internal, which always keep a live lasso live.
    fn pick_kind(&mut self, ok: impl Fn(SymbolKind) -> bool) -> SymbolKind {
        let candidates: Vec<SymbolKind> =
            [SymbolKind::Call, SymbolKind::Return, SymbolKind::Internal]
                .into_iter()
                .filter(|&k| !self.pool(k).is_empty() && ok(k))
                .collect();
        match candidates.choose(&mut self.rng) {
            Some(&k) => k,
            None if !self.calls.is_empty() => SymbolKind::Call,
            None => SymbolKind::Internal,
        }
    }

    fn pool(&self, kind: SymbolKind) -> &[SymbolId] {
        match kind {
            SymbolKind::Call => &self.calls,
            SymbolKind::Return => &self.returns,
            SymbolKind::Internal => &self.internals,
        }
    }

    fn symbol(&mut self, kind: SymbolKind) -> SymbolId {
        let pool = match kind {
            SymbolKind::Call => &self.calls,
            SymbolKind::Return => &self.returns,
            SymbolKind::Internal => &self.internals,
        };
        *pool
            .choose(&mut self.rng)
            .expect("kind chosen among non-empty pools")
    }
}

/// One lasso from a fresh generator.
pub fn random_lasso(
    alphabet: &PartitionedAlphabet,
    seed: u64,
    max_len: usize,
    policy: Policy,
) -> LassoWord {
    LassoGenerator::new(alphabet, seed, max_len).next_lasso(policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use stairvpa::profile;

    fn alphabet(calls: &[&str], returns: &[&str], internals: &[&str]) -> PartitionedAlphabet {
        PartitionedAlphabet::new(calls, returns, internals).unwrap()
    }

    #[test]
    fn live_lassos_are_live() {
        for a in [
            alphabet(&["c"], &["r"], &[]),
            alphabet(&["c1", "c2"], &["r"], &["i"]),
            alphabet(&[], &["r"], &["i"]),
        ] {
            let mut g = LassoGenerator::new(&a, 9, 12);
            for _ in 0..500 {
                let l = g.next_lasso(Policy::Live);
                let p = profile(&a, &l);
                assert!(p.illegal_prefix.is_none() && p.net >= 0, "{}", l.format(&a));
            }
        }
    }

    #[test]
    fn same_seed_same_lasso() {
        let a = alphabet(&["c"], &["r1", "r2"], &["i"]);
        for policy in [Policy::Live, Policy::Any] {
            assert_eq!(
                random_lasso(&a, 42, 8, policy),
                random_lasso(&a, 42, 8, policy)
            );
        }
    }

    #[test]
    fn any_policy_hits_dead_and_live_lassos() {
        let a = alphabet(&["c"], &["r"], &[]);
        let mut g = LassoGenerator::new(&a, 1, 6);
        let (mut dead, mut live) = (0, 0);
        for _ in 0..1000 {
            let p = profile(&a, &g.next_lasso(Policy::Any));
            if p.illegal_prefix.is_some() {
                dead += 1;
            } else {
                live += 1;
            }
        }
        assert!(dead > 0 && live > 0);
    }

    #[test]
    fn both_period_shapes_occur() {
        let a = alphabet(&["c"], &["r"], &["i"]);
        let mut g = LassoGenerator::new(&a, 5, 12);
        let nets: Vec<i64> = (0..200)
            .map(|_| profile(&a, &g.next_lasso(Policy::Live)).net)
            .collect();
        assert!(nets.iter().step_by(2).all(|&n| n == 0));
        assert!(nets.iter().skip(1).step_by(2).any(|&n| n > 1));
    }
}
