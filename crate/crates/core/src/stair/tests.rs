use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::automaton::fixtures::*;
use crate::automaton::{validate, Description};
use crate::lasso::{accepts, LassoWord};
use crate::run::{run_word, Configuration};

fn known_witness(a: &Dvpa) -> PatternWitness {
    let s = |n| a.state(n).unwrap();
    let w = |t| a.alphabet().parse_word(t).unwrap();
    let z = a.stack_symbol("Z").unwrap();
    PatternWitness {
        q: s("q"),
        q1: s("q'"),
        q2: s("q''"),
        u: w("c c"),
        v: w("c r2"),
        w: w("c"),
        x: w("c r1"),
        y: w("r1"),
        z: w("r1 r2"),
        sigma: vec![z, z],
        sigma1: vec![a.stack_symbol("Z'").unwrap()],
    }
}

#[test]
fn nested_pattern_has_a_pattern_and_the_known_witness_replays() {
    let a = nested_pattern();
    let s = |n| a.state(n).unwrap();
    let analysis = analyze(&a).unwrap();
    assert!(analysis
        .precedes
        .contains((s("q"), s("q'")), (s("q"), s("q'"))));
    match analysis.check(&a).unwrap() {
        Removability::Pattern(w) => w.validate(&a).unwrap(),
        Removability::Removable => panic!("pattern expected"),
    }
    known_witness(&a).validate(&a).unwrap();
}

#[test]
fn broken_witnesses_are_caught() {
    let a = nested_pattern();
    let mut w = known_witness(&a);
    w.v = a.alphabet().parse_word("c r1").unwrap();
    assert_eq!(
        w.validate(&a),
        Err(ReplayError::WrongEnd { arrow: Arrow::V })
    );
    let mut w = known_witness(&a);
    w.sigma.clear();
    assert_eq!(w.validate(&a), Err(ReplayError::EmptySigma));
}

#[test]
fn lsu_has_the_single_state_pattern() {
    let a = lsu();
    let rej = a.state("s_rej").unwrap();
    let analysis = analyze(&a).unwrap();
    assert!(analysis.precedes.contains((rej, rej), (rej, rej)));
    assert!(matches!(
        analysis.check(&a).unwrap(),
        Removability::Pattern(_)
    ));
    assert_eq!(
        analysis.remove(&a, DEFAULT_CAP).unwrap_err(),
        StairError::HasPattern
    );
}

#[test]
fn internal_only_automata_are_removable() {
    for accepting in [false, true] {
        let a = internal_loop(accepting);
        assert_eq!(check_removable(&a).unwrap(), Removability::Removable);
    }
}

#[test]
fn no_final_states_means_empty_precedence() {
    let mut d = Description::new(AcceptanceKind::StairBuchi);
    d.calls = strings(&["c"]);
    d.returns = strings(&["r"]);
    d.stack = strings(&["Z"]);
    d.states = strings(&["s"]);
    d.initial = "s".into();
    d.final_states = Some(vec![]);
    d.call("s", "c", "s", "Z").ret("s", "Z", "r", "s");
    let a = validate(&d).unwrap().dvpa;
    assert!(analyze(&a).unwrap().precedes.is_empty());
}

#[test]
fn height_examples() {
    let a = internal_loop(false);
    let s = a.initial();
    let ht = heights(&a, &PrecedesRelation::default()).unwrap();
    assert_eq!((ht.get((s, s)), ht.h), (Some(1), 1));

    let full = internal_loop(true);
    let ht = heights(&full, &PrecedesRelation::default()).unwrap();
    assert!(ht.ht.is_empty());
    assert_eq!(ht.h, 0);

    let mut d = Description::new(AcceptanceKind::StairBuchi);
    d.internals = strings(&["i"]);
    d.states = strings(&["a", "b"]);
    d.initial = "a".into();
    d.final_states = Some(vec![]);
    let two = validate(&d).unwrap().dvpa;
    let (pa, pb) = (two.state("a").unwrap(), two.state("b").unwrap());
    let mut chain = PrecedesRelation::default();
    chain.pairs.insert(
        ((pa, pb), (pb, pa)),
        PrecedesVia {
            via: pa,
            flat_return: true,
        },
    );
    let ht = heights(&two, &chain).unwrap();
    assert_eq!(
        (ht.get((pa, pb)), ht.get((pb, pa)), ht.h),
        (Some(1), Some(2), 2)
    );

    chain.pairs.insert(
        ((pb, pa), (pa, pb)),
        PrecedesVia {
            via: pa,
            flat_return: true,
        },
    );
    assert_eq!(heights(&two, &chain), Err(CyclicPrecedes));
}

fn lasso(a: &Dvpa, prefix: &str, period: &str) -> LassoWord {
    let p = a.alphabet();
    LassoWord::new(p.parse_word(prefix).unwrap(), p.parse_word(period).unwrap()).unwrap()
}

#[test]
fn empty_language_priority_stream() {
    let a = internal_loop(false);
    let product = remove_stair(&a, DEFAULT_CAP).unwrap();
    assert_eq!((product.m, product.h), (2, 1));
    let b = &product.dvpa;
    let i = b.alphabet().lookup("i").unwrap();
    let trace = run_word(b, &Configuration::empty(b.initial()), &[i; 6]);
    let stream: Vec<u32> = trace.states().iter().map(|&q| b.priority(q)).collect();
    assert_eq!(stream, vec![0, 0, 2, 0, 1, 0, 1]);
    assert!(!accepts(b, &lasso(b, "", "i")).unwrap().accepted);
}

#[test]
fn accepting_loop_keeps_priority_zero() {
    let a = internal_loop(true);
    let product = remove_stair(&a, DEFAULT_CAP).unwrap();
    let b = &product.dvpa;
    assert!(accepts(b, &lasso(b, "", "i")).unwrap().accepted);
    assert!(product.states.iter().all(|s| s.priority(product.m) == 0));
}

#[test]
fn product_states_are_monotone() {
    let a = matched_depth_fixture();
    let product = remove_stair(&a, DEFAULT_CAP).unwrap();
    assert!(product.states.iter().all(ProductState::is_monotone));
    let top = 2 * product.h + 2;
    assert!(product
        .dvpa
        .states()
        .all(|q| product.dvpa.priority(q) <= top));
}

#[test]
fn cap_is_enforced() {
    let a = internal_loop(false);
    assert_eq!(
        remove_stair(&a, 2).unwrap_err(),
        StairError::Cap(CapExceeded { cap: 2 })
    );
}

/// Accepting state reachable only inside a call/return block.
fn matched_depth_fixture() -> Dvpa {
    let mut d = Description::new(AcceptanceKind::StairBuchi);
    d.calls = strings(&["c"]);
    d.returns = strings(&["r"]);
    d.internals = strings(&["i"]);
    d.stack = strings(&["Z"]);
    d.states = strings(&["s", "t", "f"]);
    d.initial = "s".into();
    d.final_states = Some(strings(&["f"]));
    d.call("s", "c", "t", "Z")
        .internal("t", "i", "f")
        .internal("f", "i", "t")
        .ret("t", "Z", "r", "s")
        .ret("f", "Z", "r", "s")
        .internal("s", "i", "s");
    validate(&d).unwrap().dvpa
}

#[test]
fn matched_depth_fixture_agrees_with_its_parity_version() {
    let a = matched_depth_fixture();
    let product = remove_stair(&a, DEFAULT_CAP).unwrap();
    let b = &product.dvpa;
    for (u, v) in [
        ("", "c i r"),
        ("c", "i"),
        ("", "i"),
        ("c i r", "c r i"),
        ("c", "i i"),
        ("", "c"),
    ] {
        assert_eq!(
            accepts(&a, &lasso(&a, u, v)).unwrap().accepted,
            accepts(b, &lasso(b, u, v)).unwrap().accepted,
            "{u} ; {v}"
        );
    }
}

#[test]
fn reducer_examples() {
    let a = nested_pattern();
    let analysis = analyze(&a).unwrap();
    let reducer = analysis.reducer(&a, known_witness(&a)).unwrap();
    assert_eq!(reducer.k, 1);

    let t = reducer.transduce(&[SuMove::Call]).unwrap();
    assert_eq!(a.alphabet().format_word(&t.output), "c c c c r2");
    let last = t.states.last().unwrap();
    assert_eq!(
        (last.eta.clone(), last.open_calls, last.zero_count),
        (vec![0, 1], 1, 1)
    );

    let t = reducer.transduce(&[SuMove::Call, SuMove::Call]).unwrap();
    assert_eq!(t.states.last().unwrap().eta, vec![0, 1, 0, 1]);
    assert_eq!(t.states.last().unwrap().zero_count, 2);

    let t = reducer.transduce(&[SuMove::Call, SuMove::Return]).unwrap();
    let last = t.states.last().unwrap();
    assert_eq!((last.eta.clone(), last.zero_count), (vec![1], 0));
    let after_call = t.states[1].emitted;
    assert_eq!(
        a.alphabet().format_word(&t.output[after_call..]),
        "c c r1 r1 r1 r2"
    );

    assert_eq!(
        reducer.transduce(&[SuMove::Return]).unwrap_err(),
        ReducerError::DomainViolation(0)
    );
}

#[test]
fn reducer_counts_match_runs() {
    let a = nested_pattern();
    let analysis = analyze(&a).unwrap();
    let reducer = analysis.reducer(&a, known_witness(&a)).unwrap();
    let moves = [
        SuMove::Call,
        SuMove::Call,
        SuMove::Return,
        SuMove::Call,
        SuMove::Return,
        SuMove::Return,
        SuMove::Call,
    ];
    let t = reducer.transduce(&moves).unwrap();
    let trace = run_word(&a, &reducer.start(&a), &t.output);
    assert!(!trace.is_dead());
    let counts = trace.prefix_f_on_step_counts();
    for st in &t.states {
        assert_eq!(st.zero_count, st.open_calls);
        assert_eq!(counts[st.emitted], reducer.k * st.zero_count);
    }
}
