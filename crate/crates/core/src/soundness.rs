//! Randomized soundness regression for the inference rules: whenever the
//! premises and side conditions of a rule instance pass, its conclusion
//! must pass when decided directly.
//!
//! Premises are built to pass: posts are widened from the states a program
//! can finish in and guarantees from the steps it actually takes, so most
//! drawn instances are applicable.

use crate::automaton::{reach, GuaranteeMode, Nfa, Reach, SpecKind};
use crate::error::Result;
use crate::gen::Gen;
use crate::lang::Bound;
use crate::program::{preserves, unchanged, Command};
use crate::report::{Check, Verdict};
use crate::state::{Relation, StateSet, StateSpace};
use crate::verifier::{apply, check_bruteforce, ProofNode, Quintuple, Rule, SideCondition, Spec};

const BOUND: usize = 6;

pub const RULES: [Rule; 7] = [
    Rule::Skip,
    Rule::Weakening,
    Rule::Sequential,
    Rule::Parallel,
    Rule::Choice,
    Rule::Star,
    Rule::AssignAxiom,
];

struct Ctx {
    g: Gen,
    space: StateSpace,
}

impl Ctx {
    fn n(&self) -> usize {
        self.space.size()
    }

    fn spec(&mut self, kind: Option<SpecKind>) -> Spec {
        let states = self.g.state_set(self.n());
        let kind = kind.unwrap_or(if self.g.chance(0.7) { SpecKind::End } else { SpecKind::Test });
        Spec { kind, states }
    }

    fn command(&mut self) -> Command {
        self.g.command(&self.space, 2)
    }

    fn reach(&self, rely: &Relation, pre: &Spec, prog: &Command) -> Result<Reach> {
        let nfa = Nfa::compile(&self.space, prog)?;
        Ok(reach(&nfa, &self.space, &rely.transitive_closure(), &pre.states))
    }

    /// Widens the strongest end-post and the least guarantee a little.
    fn post_and_guar(&mut self, reached: &Reach) -> (Spec, Relation) {
        let post = if self.g.chance(0.5) {
            reached.finals.clone()
        } else {
            self.g.superset(&reached.finals)
        };
        let guar = self.g.super_relation(&reached.steps);
        (Spec::end(post), guar)
    }

    /// A premise over `prog` that holds by construction.
    fn premise(&mut self, rely: Relation, pre: Spec, prog: Command) -> Result<Quintuple> {
        let reached = self.reach(&rely, &pre, &prog)?;
        let (post, guar) = self.post_and_guar(&reached);
        Ok(Quintuple {
            rely,
            guar,
            pre,
            post,
            prog,
        })
    }
}

/// Outcome of one drawn rule instance.
enum Trial {
    /// Premises or side conditions failed; nothing to check.
    Inapplicable,
    Applicable { conclusion: Verdict },
}

fn decide(space: &StateSpace, q: &Quintuple) -> Result<Verdict> {
    Ok(check_bruteforce(space, q, Bound::new(BOUND)?, GuaranteeMode::Contextual)?.verdict)
}

fn sides_hold(sides: &[SideCondition]) -> bool {
    sides.iter().all(SideCondition::holds)
}

fn trial(space: &StateSpace, node: &ProofNode) -> Result<Trial> {
    if !sides_hold(&apply(space, node)?) {
        return Ok(Trial::Inapplicable);
    }
    for p in &node.premises {
        if decide(space, &p.conclusion)? != Verdict::Pass {
            return Ok(Trial::Inapplicable);
        }
    }
    Ok(Trial::Applicable {
        conclusion: decide(space, &node.conclusion)?,
    })
}

fn draw(cx: &mut Ctx, rule: Rule) -> Result<ProofNode> {
    let n = cx.n();
    Ok(match rule {
        Rule::Skip => {
            let pre = cx.spec(None);
            let rely = if cx.g.chance(0.6) {
                preserves(&pre.states).intersection(&cx.g.relation(n))
            } else {
                cx.g.relation(n)
            };
            let guar = cx.g.relation(n);
            ProofNode::leaf(
                Rule::Skip,
                Quintuple {
                    rely,
                    guar,
                    post: pre.clone(),
                    pre,
                    prog: Command::Skip,
                },
            )
        }
        Rule::Weakening => {
            let rely = cx.g.relation(n);
            let pre = cx.spec(None);
            let prog = cx.command();
            let inner = cx.premise(rely, pre, prog)?;
            let pre = Spec {
                kind: inner.pre.kind,
                states: cx.g.subset(&inner.pre.states),
            };
            let post = Spec {
                kind: inner.post.kind,
                states: cx.g.superset(&inner.post.states),
            };
            let outer = Quintuple {
                rely: cx.g.sub_relation(&inner.rely),
                guar: cx.g.super_relation(&inner.guar),
                pre,
                post,
                prog: inner.prog.clone(),
            };
            ProofNode::new(Rule::Weakening, outer, vec![ProofNode::brute_force(inner)])
        }
        Rule::Sequential => {
            let rely = cx.g.relation(n);
            let pre = cx.spec(None);
            let (x, y) = (cx.command(), cx.command());
            let first = cx.premise(rely.clone(), pre.clone(), x.clone())?;
            let second = cx.premise(rely.clone(), first.post.clone(), y.clone())?;
            let guar = first.guar.union(&second.guar);
            let first = Quintuple { guar: guar.clone(), ..first };
            let second = Quintuple { guar: guar.clone(), ..second };
            let concl = Quintuple {
                rely,
                guar,
                pre,
                post: second.post.clone(),
                prog: Command::seq(x, y),
            };
            ProofNode::new(
                Rule::Sequential,
                concl,
                vec![ProofNode::brute_force(first), ProofNode::brute_force(second)],
            )
        }
        Rule::Choice => {
            let rely = cx.g.relation(n);
            let pre = cx.spec(None);
            let (x, y) = (cx.command(), cx.command());
            let rx = cx.reach(&rely, &pre, &x)?;
            let ry = cx.reach(&rely, &pre, &y)?;
            let both = Reach {
                finals: rx.finals.union(&ry.finals),
                steps: rx.steps.union(&ry.steps),
            };
            let (post, guar) = cx.post_and_guar(&both);
            let q = |prog: Command| Quintuple {
                rely: rely.clone(),
                guar: guar.clone(),
                pre: pre.clone(),
                post: post.clone(),
                prog,
            };
            ProofNode::new(
                Rule::Choice,
                q(Command::choice(x.clone(), y.clone())),
                vec![ProofNode::brute_force(q(x)), ProofNode::brute_force(q(y))],
            )
        }
        Rule::Parallel => parallel_instance(cx)?,
        Rule::Star => {
            let body = cx.command();
            let extra = cx.g.relation(n);
            let mut inv = cx.g.state_set(n);
            let (rely, reached) = loop {
                let rely = extra.intersection(&preserves(&inv));
                let reached = cx.reach(&rely, &Spec::end(inv.clone()), &body)?;
                if reached.finals.is_subset(&inv) {
                    break (rely, reached);
                }
                inv = inv.union(&reached.finals);
            };
            let p = Spec::end(inv);
            let guar = cx.g.super_relation(&reached.steps);
            let q = |prog: Command| Quintuple {
                rely: rely.clone(),
                guar: guar.clone(),
                pre: p.clone(),
                post: p.clone(),
                prog,
            };
            ProofNode::new(
                Rule::Star,
                q(Command::star(body.clone())),
                vec![ProofNode::brute_force(q(body))],
            )
        }
        Rule::AssignAxiom => {
            let space = cx.space.clone();
            let x = cx.g.var(&space).to_string();
            let e = cx.g.expr(&space, 2);
            let post = Spec::end(cx.g.pred(&space, 2).denote(&space)?);
            let prog = Command::assign(&x, e.clone());
            let post_states = post.states.clone();
            let wp = StateSet::from_fn(n, |s| {
                e.eval(&space, s)
                    .map(|v| post_states.contains(space.with_value(s, space.var_index(&x).expect("drawn"), v)))
                    .unwrap_or(false)
            });
            let names: Vec<String> = e.vars().into_iter().collect();
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            let stated = unchanged(&space, &names)?
                .intersection(&preserves(&post.states))
                .intersection(&preserves(&wp));
            let others: Vec<&str> = space.variables().iter().map(String::as_str).filter(|v| *v != x).collect();
            let guar = cx.g.super_relation(&unchanged(&space, &others)?);
            ProofNode::leaf(
                Rule::AssignAxiom,
                Quintuple {
                    rely: cx.g.sub_relation(&stated),
                    guar,
                    pre: Spec::end(wp),
                    post,
                    prog,
                },
            )
        }
        Rule::BruteForce => unreachable!("brute force has no rule to test"),
    })
}

/// Relies and guarantees found by iterating `g1 = steps(x | r1)`,
/// `r1 = g2 ∪ e1` (and symmetrically) to a fixed point, so that the side
/// conditions `g1 ≤ r2`, `g2 ≤ r1` hold.
fn parallel_instance(cx: &mut Ctx) -> Result<ProofNode> {
    let n = cx.n();
    let (x, y) = (cx.command(), cx.command());
    let (p1, p2) = (cx.spec(Some(SpecKind::End)), cx.spec(Some(SpecKind::End)));
    let (e1, e2) = (cx.g.relation(n), cx.g.relation(n));
    let (mut g1, mut g2) = (Relation::empty(n), Relation::empty(n));
    let (rx, ry) = loop {
        let r1 = g2.union(&e1);
        let r2 = g1.union(&e2);
        let rx = cx.reach(&r1, &p1, &x)?;
        let ry = cx.reach(&r2, &p2, &y)?;
        if rx.steps.is_subset(&g1) && ry.steps.is_subset(&g2) {
            break (rx, ry);
        }
        g1 = g1.union(&rx.steps);
        g2 = g2.union(&ry.steps);
    };
    let (r1, r2) = (g2.union(&e1), g1.union(&e2));
    let left = Quintuple {
        rely: r1,
        guar: g1,
        pre: p1,
        post: Spec::end(cx.g.superset(&rx.finals)),
        prog: x,
    };
    let right = Quintuple {
        rely: r2,
        guar: g2,
        pre: p2,
        post: Spec::end(cx.g.superset(&ry.finals)),
        prog: y,
    };
    Ok(parallel_node(left, right))
}

/// The conclusion the parallel rule derives from two premises.
pub fn parallel_node(left: Quintuple, right: Quintuple) -> ProofNode {
    let concl = Quintuple {
        rely: left.rely.intersection(&right.rely),
        guar: left.guar.union(&right.guar),
        pre: left.pre.meet(&right.pre),
        post: left.post.meet(&right.post),
        prog: Command::par(left.prog.clone(), right.prog.clone()),
    };
    ProofNode::new(
        Rule::Parallel,
        concl,
        vec![ProofNode::brute_force(left), ProofNode::brute_force(right)],
    )
}

/// Draws instances of `rule` until `target` are applicable (or a budget of
/// draws runs out) and reports whether every applicable conclusion passed.
pub fn rule_soundness(rule: Rule, seed: u64, target: usize) -> Result<Check> {
    let space = StateSpace::new(&["a", "b"], 3)?;
    let mut cx = Ctx {
        g: Gen::new(seed ^ (rule as u64 * 0x9e37_79b9)),
        space,
    };
    let name = format!("{rule} is sound");
    let (mut drawn, mut applicable) = (0, 0);
    while applicable < target && drawn < target * 20 {
        drawn += 1;
        let node = draw(&mut cx, rule)?;
        match trial(&cx.space, &node)? {
            Trial::Inapplicable => {}
            Trial::Applicable { conclusion: Verdict::Pass } => applicable += 1,
            Trial::Applicable { conclusion } => {
                let witness = check_bruteforce(&cx.space, &node.conclusion, Bound::new(BOUND)?, GuaranteeMode::Contextual)?;
                return Ok(Check {
                    name,
                    verdict: Verdict::Fail,
                    witness: witness.post.witness.or(witness.guarantee.witness),
                    detail: Some(format!("instance {drawn}: premises pass, conclusion {conclusion}")),
                });
            }
        }
    }
    let detail = format!("{applicable} applicable of {drawn} drawn");
    Ok(Check::from_bool(name, applicable >= target).with_detail(detail))
}

/// Swapping the premises of a parallel instance changes neither the side
/// conditions' verdict nor the conclusion's.
pub fn parallel_symmetry(seed: u64, instances: usize) -> Result<Check> {
    let space = StateSpace::new(&["a", "b"], 3)?;
    let mut cx = Ctx {
        g: Gen::new(seed),
        space,
    };
    for i in 0..instances {
        let node = parallel_instance(&mut cx)?;
        let mut prem = node.premises.clone();
        let b = prem.pop().expect("two premises").conclusion;
        let a = prem.pop().expect("two premises").conclusion;
        let swapped = parallel_node(b, a);
        let s1 = sides_hold(&apply(&cx.space, &node)?);
        let s2 = sides_hold(&apply(&cx.space, &swapped)?);
        let v1 = decide(&cx.space, &node.conclusion)?;
        let v2 = decide(&cx.space, &swapped.conclusion)?;
        if s1 != s2 || v1 != v2 {
            return Ok(Check::from_bool("Parallel is symmetric", false)
                .with_detail(format!("instance {i}: sides {s1}/{s2}, conclusion {v1}/{v2}")));
        }
    }
    Ok(Check::pass("Parallel is symmetric").with_detail(format!("{instances} instances")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_rule_is_sound_on_a_few_instances() {
        for rule in RULES {
            let c = rule_soundness(rule, 11, 8).unwrap();
            assert!(c.passed(), "{c}");
        }
    }

    #[test]
    fn dropping_the_interference_conditions_is_caught() {
        // premises whose relies ignore the other side's guarantee: the
        // conclusion must fail on some instance
        let mut cx = Ctx {
            g: Gen::new(3),
            space: StateSpace::new(&["a", "b"], 3).unwrap(),
        };
        let n = cx.n();
        let mut caught = 0;
        for _ in 0..200 {
            let (x, y) = (cx.command(), cx.command());
            let (p1, p2) = (cx.spec(Some(SpecKind::End)), cx.spec(Some(SpecKind::End)));
            let r1 = cx.g.relation(n);
            let left = cx.premise(r1, p1, x).unwrap();
            let right = cx.premise(Relation::identity(n), p2, y).unwrap();
            let node = parallel_node(left, right);
            if decide(&cx.space, &node.conclusion).unwrap() != Verdict::Pass {
                caught += 1;
            }
        }
        assert!(caught > 0);
    }

    #[test]
    fn parallel_swaps_cleanly() {
        assert!(parallel_symmetry(5, 10).unwrap().passed());
    }
}
