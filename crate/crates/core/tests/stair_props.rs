//! Stair removal on random stair-Büchi automata.
mod common;

use common::{random_dvpa, random_lasso, Shape, SMALL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stairvpa::stair::{analyze, Removability, StairError, SuMove};
use stairvpa::summaries::Quad;
use stairvpa::{accepts, run_word, AcceptanceKind, Dvpa};

const TINY: Shape = Shape {
    max_states: 3,
    ..SMALL
};
const CAP: usize = 50_000;

fn automata() -> impl Iterator<Item = Dvpa> {
    (0..150).map(|seed| random_dvpa(seed, TINY, AcceptanceKind::StairBuchi))
}

#[test]
fn removable_automata_have_consistent_heights() {
    let mut removable = 0;
    for a in automata() {
        let analysis = analyze(&a).unwrap();
        if analysis.check(&a).unwrap() != Removability::Removable {
            continue;
        }
        removable += 1;
        let pairs: Vec<_> = analysis.precedes.pairs.keys().copied().collect();
        for &(x, y) in &pairs {
            for &(y2, z) in &pairs {
                if y == y2 {
                    assert!(analysis.precedes.contains(x, z));
                }
            }
        }
        let ht = analysis.heights(&a).unwrap();
        for &(x, y) in &pairs {
            assert!(ht.get(x).unwrap() < ht.get(y).unwrap());
        }
        let live = |q| analysis.reach.contains(q);
        for quad in analysis.coupled.core.keys() {
            let Quad { q, p, d, d2, .. } = *quad;
            if [q, p, d, d2].iter().any(|&s| a.is_accepting(s)) || !live(q) || !live(d2) {
                continue;
            }
            assert!(ht.get((q, d2)).unwrap() >= ht.get((p, d)).unwrap());
        }
        for q in a.states().filter(|&q| !a.is_accepting(q)) {
            for p in a.states().filter(|&p| !a.is_accepting(p)) {
                assert!((1..=ht.h).contains(&ht.get((q, p)).unwrap()));
            }
        }
    }
    assert!(removable > 30, "{removable}");
}

#[test]
fn parity_versions_agree_on_lassos() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut built = 0;
    for a in automata() {
        let analysis = analyze(&a).unwrap();
        let product = match analysis.remove(&a, CAP) {
            Ok(p) => p,
            Err(StairError::HasPattern | StairError::Cap(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        built += 1;
        assert_eq!(product.dvpa.kind(), AcceptanceKind::Parity);
        assert!(product.states.iter().all(|s| s.is_monotone()));
        let top = 2 * product.h + 2;
        assert!(product
            .dvpa
            .states()
            .all(|q| product.dvpa.priority(q) <= top));
        for _ in 0..100 {
            let l = random_lasso(&mut rng, &a, 6, true);
            let lb = stairvpa::LassoWord::new(
                translate(&a, &product.dvpa, &l.prefix),
                translate(&a, &product.dvpa, &l.period),
            )
            .unwrap();
            assert_eq!(
                accepts(&a, &l).unwrap().accepted,
                accepts(&product.dvpa, &lb).unwrap().accepted,
                "{}",
                l.format(a.alphabet())
            );
        }
    }
    assert!(built > 30, "{built}");
}

fn translate(from: &Dvpa, to: &Dvpa, word: &[stairvpa::SymbolId]) -> Vec<stairvpa::SymbolId> {
    word.iter()
        .map(|&s| to.alphabet().lookup(from.alphabet().name(s)).unwrap())
        .collect()
}

#[test]
fn patterns_replay_and_drive_the_reducer() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut patterns = 0;
    for a in automata() {
        let analysis = analyze(&a).unwrap();
        let Removability::Pattern(witness) = analysis.check(&a).unwrap() else {
            continue;
        };
        patterns += 1;
        witness.validate(&a).unwrap();
        assert_eq!(
            analysis.remove(&a, CAP).unwrap_err(),
            StairError::HasPattern
        );

        let reducer = analysis.reducer(&a, witness).unwrap();
        for _ in 0..20 {
            let mut open = 0usize;
            let moves: Vec<SuMove> = (0..rng.gen_range(0..12))
                .map(|_| {
                    if open > 0 && rng.gen_bool(0.4) {
                        open -= 1;
                        SuMove::Return
                    } else {
                        open += 1;
                        SuMove::Call
                    }
                })
                .collect();
            let t = reducer.transduce(&moves).unwrap();
            let trace = run_word(&a, &reducer.start(&a), &t.output);
            assert!(!trace.is_dead());
            let counts = trace.prefix_f_on_step_counts();
            for st in &t.states {
                assert_eq!(st.zero_count, st.open_calls);
                assert_eq!(counts[st.emitted], reducer.k * st.zero_count);
                assert_eq!(st.eta.iter().filter(|&&b| b == 0).count(), st.zero_count);
            }
        }
    }
    assert!(patterns > 10, "{patterns}");
}
