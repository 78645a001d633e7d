//! The unbounded explorer against explicit bounded languages on small,
//! loop-free programs.

use rgkernel::automaton::GuaranteeMode;
use rgkernel::gen::Gen;
use rgkernel::lang::{Bound, Lang};
use rgkernel::program::{denote, end_lang, Command};
use rgkernel::rg::{quintuple_outcome, Rely};
use rgkernel::state::StateSpace;
use rgkernel::verifier::{explore_quintuple, Quintuple, Spec};

fn loop_free(c: &Command) -> bool {
    match c {
        Command::While(..) | Command::Star(_) => false,
        Command::Seq(a, b) | Command::Choice(a, b) | Command::Par(a, b) | Command::If(_, a, b) => {
            loop_free(a) && loop_free(b)
        }
        _ => true,
    }
}

/// Upper bound on the letters one run emits before contraction.
fn letters(c: &Command) -> usize {
    match c {
        Command::Skip => 0,
        Command::Assign(..) => 2,
        Command::Test(_) | Command::Atomic(_) => 1,
        Command::Seq(a, b) | Command::Par(a, b) => letters(a) + letters(b),
        Command::Choice(a, b) => letters(a).max(letters(b)),
        Command::If(_, a, b) => 1 + letters(a).max(letters(b)),
        Command::While(..) | Command::Star(_) => unreachable!(),
    }
}

struct Case {
    space: StateSpace,
    q: Quintuple,
    bound: Bound,
    program: Lang,
}

fn cases(seed: u64, count: usize) -> Vec<Case> {
    let mut g = Gen::new(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let space = if g.chance(0.5) {
            StateSpace::new(&["a"], 2 + g.below(2) as u32).unwrap()
        } else {
            StateSpace::new(&["a", "b"], 2).unwrap()
        };
        let n = space.size();
        let prog = g.command(&space, 2);
        if !loop_free(&prog) || letters(&prog) > 6 {
            continue;
        }
        let bound = Bound::new(3).unwrap();
        // every contraction of a run fits in the wider bound
        let wide = Bound::new(letters(&prog).max(3)).unwrap();
        let program = denote(&space, &prog, wide).unwrap().with_bound(bound);
        let q = Quintuple {
            rely: g.relation(n).transitive_closure(),
            guar: g.relation(n).transitive_closure(),
            pre: Spec::end(g.state_set(n)),
            post: Spec::end(g.state_set(n)),
            prog,
        };
        out.push(Case { space, q, bound, program });
    }
    out
}

#[test]
fn post_verdicts_match_within_the_bound() {
    for (i, c) in cases(17, 300).into_iter().enumerate() {
        let ex = explore_quintuple(&c.space, &c.q, GuaranteeMode::Contextual).unwrap();
        let l = c.bound.get();
        let outcome = quintuple_outcome(
            &end_lang(&c.q.pre.states, c.bound),
            &Rely::new(c.q.rely.clone()),
            &c.program,
            &end_lang(&c.q.post.states, c.bound),
            &Rely::new(c.q.guar.clone()),
            c.bound,
        )
        .unwrap();
        let explorer_fails = ex.post.as_ref().is_some_and(|v| v.length <= l);
        assert_eq!(
            explorer_fails,
            outcome.post_witness.is_some(),
            "case {i}: {:?}\nexplorer {:?}\nexplicit {:?}",
            c.q.prog,
            ex.post,
            outcome.post_witness
        );
    }
}

#[test]
fn witnesses_are_consistent_runs_from_the_precondition() {
    for c in cases(23, 300) {
        let ex = explore_quintuple(&c.space, &c.q, GuaranteeMode::Contextual).unwrap();
        for v in [&ex.post, &ex.guarantee].into_iter().flatten() {
            let w = &v.witness;
            assert_eq!(w.len(), v.length);
            assert!(w.is_consistent(), "{w:?}");
            assert!(c.q.pre.states.contains(w.first().unwrap().pre));
        }
        if let Some(v) = &ex.post {
            assert!(!c.q.post.states.contains(v.witness.last().unwrap().post));
        }
        if let Some(v) = &ex.guarantee {
            let g = c.q.guar.transitive_closure();
            // the offending step may coincide with a rely step, so only
            // membership in the guarantee is checkable from the word
            assert!(v.witness.letters().iter().any(|l| !g.contains(l.pre, l.post)));
        }
    }
}

#[test]
fn literal_guarantee_implies_contextual() {
    for (i, c) in cases(29, 300).into_iter().enumerate() {
        let g = Rely::new(c.q.guar.clone());
        let literal = c.program.leq(&g.materialize(c.bound)).unwrap();
        let ex = explore_quintuple(&c.space, &c.q, GuaranteeMode::Contextual).unwrap();
        if literal {
            assert!(
                ex.guarantee.as_ref().is_none_or(|v| v.length > c.bound.get()),
                "case {i}: {:?} {:?}",
                c.q.prog,
                ex.guarantee
            );
        }
    }
}
