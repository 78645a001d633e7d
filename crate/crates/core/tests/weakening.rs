//! Verdicts move monotonically with the rely, guarantee, pre and post.

use rgkernel::automaton::GuaranteeMode;
use rgkernel::gen::Gen;
use rgkernel::lang::Bound;
use rgkernel::report::Verdict;
use rgkernel::state::StateSpace;
use rgkernel::verifier::{check_bruteforce, Quintuple, Spec};

fn verdict(s: &StateSpace, q: &Quintuple) -> Verdict {
    check_bruteforce(s, q, Bound::new(6).unwrap(), GuaranteeMode::Contextual)
        .unwrap()
        .verdict
}

#[test]
fn weaker_specs_keep_passes_and_stronger_keep_failures() {
    let s = StateSpace::new(&["a", "b"], 3).unwrap();
    let n = s.size();
    let mut g = Gen::new(4);
    let (mut passes, mut fails) = (0, 0);
    for _ in 0..300 {
        let q = Quintuple {
            rely: g.relation(n),
            guar: g.relation(n),
            pre: Spec::end(g.state_set(n)),
            post: Spec::end(g.state_set(n)),
            prog: g.command(&s, 2),
        };
        let v = verdict(&s, &q);
        let weaker = Quintuple {
            rely: g.sub_relation(&q.rely),
            guar: g.super_relation(&q.guar),
            pre: Spec::end(g.subset(&q.pre.states)),
            post: Spec::end(g.superset(&q.post.states)),
            prog: q.prog.clone(),
        };
        let stronger = Quintuple {
            rely: g.super_relation(&q.rely),
            guar: g.sub_relation(&q.guar),
            pre: Spec::end(g.superset(&q.pre.states)),
            post: Spec::end(g.subset(&q.post.states)),
            prog: q.prog.clone(),
        };
        if v == Verdict::Pass {
            passes += 1;
            assert_eq!(verdict(&s, &weaker), Verdict::Pass, "{q:?}");
        } else {
            fails += 1;
            assert_ne!(verdict(&s, &stronger), Verdict::Pass, "{q:?}");
        }
    }
    assert!(passes > 10 && fails > 10, "{passes} passes, {fails} fails");
}
