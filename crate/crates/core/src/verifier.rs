//! Quintuples, proof outlines built from the rely-guarantee rules, and
//! their bounded discharge.
//!
//! Relies and guarantees are mumble closed, so a relation `R` stands for
//! `⟨R⁺⟩*`. Brute-force leaves are decided by the product explorer, which
//! looks past the bound: a violation that only shows up on longer traces
//! yields [`Verdict::BoundInsufficient`], never a pass.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automaton::{explore, Exploration, GuaranteeMode, Nfa, Problem, SpecKind, Violation};
use crate::error::{Error, Result};
use crate::lang::{Bound, Lang};
use crate::program::{end_lang, preserves, test_lang, unchanged, Command};
use crate::report::{overall, Check, Verdict};
use crate::state::{Relation, StateSet, StateSpace};

/// `test(P)` or `end(P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spec {
    pub kind: SpecKind,
    pub states: StateSet,
}

impl Spec {
    pub fn end(states: StateSet) -> Self {
        Spec {
            kind: SpecKind::End,
            states,
        }
    }

    pub fn test(states: StateSet) -> Self {
        Spec {
            kind: SpecKind::Test,
            states,
        }
    }

    /// `⊓`: `end(P) ⊓ end(Q) = end(P ∩ Q)`, and any meet with a test is a
    /// test.
    pub fn meet(&self, other: &Spec) -> Spec {
        let kind = if self.kind == SpecKind::End && other.kind == SpecKind::End {
            SpecKind::End
        } else {
            SpecKind::Test
        };
        Spec {
            kind,
            states: self.states.intersection(&other.states),
        }
    }

    /// Language inclusion, exact for bounds of at least two.
    pub fn leq(&self, other: &Spec) -> bool {
        match (self.kind, other.kind) {
            (SpecKind::End, SpecKind::Test) => self.states.is_empty(),
            _ => self.states.is_subset(&other.states),
        }
    }

    /// `p · ⟨R⟩* ≤π p`.
    pub fn absorbs(&self, rely: &Relation) -> bool {
        match self.kind {
            SpecKind::End => rely.image(&self.states).is_subset(&self.states),
            SpecKind::Test => self.states.iter().all(|s| rely.successors(s).next().is_none()),
        }
    }

    pub fn lang(&self, bound: Bound) -> Lang {
        match self.kind {
            SpecKind::End => end_lang(&self.states, bound),
            SpecKind::Test => test_lang(&self.states, bound),
        }
    }
}

impl fmt::Display for Spec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            SpecKind::End => "end",
            SpecKind::Test => "test",
        };
        write!(f, "{kind}({} states)", self.states.len())
    }
}

/// `r, g ⊢ {p} c {q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quintuple {
    pub rely: Relation,
    pub guar: Relation,
    pub pre: Spec,
    pub post: Spec,
    pub prog: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    Skip,
    Weakening,
    Sequential,
    Parallel,
    Choice,
    Star,
    AssignAxiom,
    BruteForce,
}

impl Rule {
    /// Number of quintuple premises.
    pub fn arity(self) -> usize {
        match self {
            Rule::Skip | Rule::AssignAxiom | Rule::BruteForce => 0,
            Rule::Weakening | Rule::Star => 1,
            Rule::Sequential | Rule::Parallel | Rule::Choice => 2,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone)]
pub struct ProofNode {
    pub rule: Rule,
    pub conclusion: Quintuple,
    pub premises: Vec<ProofNode>,
}

impl ProofNode {
    pub fn leaf(rule: Rule, conclusion: Quintuple) -> Self {
        ProofNode {
            rule,
            conclusion,
            premises: Vec::new(),
        }
    }

    pub fn new(rule: Rule, conclusion: Quintuple, premises: Vec<ProofNode>) -> Self {
        ProofNode {
            rule,
            conclusion,
            premises,
        }
    }

    pub fn brute_force(conclusion: Quintuple) -> Self {
        Self::leaf(Rule::BruteForce, conclusion)
    }
}

/// A checkable inequality emitted by a rule.
#[derive(Debug, Clone)]
pub enum SideCondition {
    /// `⟨A⟩* ≤ ⟨B⟩*` between mumble-closed constraints.
    ConstraintLeq { name: String, lhs: Relation, rhs: Relation },
    SpecLeq { name: String, lhs: Spec, rhs: Spec },
    /// `p · r ≤ p`.
    PreAbsorbsRely { name: String, pre: Spec, rely: Relation },
    SpecEq { name: String, lhs: Spec, rhs: Spec },
}

impl SideCondition {
    pub fn name(&self) -> &str {
        match self {
            SideCondition::ConstraintLeq { name, .. }
            | SideCondition::SpecLeq { name, .. }
            | SideCondition::PreAbsorbsRely { name, .. }
            | SideCondition::SpecEq { name, .. } => name,
        }
    }

    pub fn holds(&self) -> bool {
        match self {
            SideCondition::ConstraintLeq { lhs, rhs, .. } => {
                lhs.transitive_closure().is_subset(&rhs.transitive_closure())
            }
            SideCondition::SpecLeq { lhs, rhs, .. } => lhs.leq(rhs),
            SideCondition::PreAbsorbsRely { pre, rely, .. } => pre.absorbs(rely),
            SideCondition::SpecEq { lhs, rhs, .. } => lhs == rhs,
        }
    }

    pub fn check(&self) -> Check {
        Check::from_bool(format!("side: {}", self.name()), self.holds())
    }
}

fn mismatch(rule: &'static str, reason: impl Into<String>) -> Error {
    Error::RuleMismatch {
        rule,
        reason: reason.into(),
    }
}

fn arity(node: &ProofNode, rule: &'static str) -> Result<()> {
    if node.premises.len() == node.rule.arity() {
        Ok(())
    } else {
        Err(mismatch(
            rule,
            format!("expects {} premises, got {}", node.rule.arity(), node.premises.len()),
        ))
    }
}

fn same_constraints(node: &ProofNode, rule: &'static str) -> Result<()> {
    let c = &node.conclusion;
    for p in &node.premises {
        if p.conclusion.rely != c.rely || p.conclusion.guar != c.guar {
            return Err(mismatch(rule, "premise rely/guarantee differ from the conclusion"));
        }
    }
    Ok(())
}

pub fn apply_skip(node: &ProofNode) -> Result<Vec<SideCondition>> {
    arity(node, "Skip")?;
    let c = &node.conclusion;
    if c.prog != Command::Skip {
        return Err(mismatch("Skip", "program is not skip"));
    }
    if c.pre != c.post {
        return Err(mismatch("Skip", "pre and post differ"));
    }
    Ok(vec![SideCondition::PreAbsorbsRely {
        name: "p·r ≤ p".into(),
        pre: c.pre.clone(),
        rely: c.rely.clone(),
    }])
}

/// Premise `r′, g′ ⊢ {p′} x {q′}` yields `r, g ⊢ {p} x {q}` when
/// `r ≤ r′`, `g′ ≤ g`, `p ≤ p′` and `q′ ≤ q`.
pub fn apply_weakening(node: &ProofNode) -> Result<Vec<SideCondition>> {
    arity(node, "Weakening")?;
    let c = &node.conclusion;
    let p = &node.premises[0].conclusion;
    if p.prog != c.prog {
        return Err(mismatch("Weakening", "premise program differs"));
    }
    Ok(vec![
        SideCondition::ConstraintLeq {
            name: "r ≤ r′".into(),
            lhs: c.rely.clone(),
            rhs: p.rely.clone(),
        },
        SideCondition::ConstraintLeq {
            name: "g′ ≤ g".into(),
            lhs: p.guar.clone(),
            rhs: c.guar.clone(),
        },
        SideCondition::SpecLeq {
            name: "p ≤ p′".into(),
            lhs: c.pre.clone(),
            rhs: p.pre.clone(),
        },
        SideCondition::SpecLeq {
            name: "q′ ≤ q".into(),
            lhs: p.post.clone(),
            rhs: c.post.clone(),
        },
    ])
}

/// `{p} x {q}` and `{q} y {s}` give `{p} x·y {s}`.
pub fn apply_sequential(node: &ProofNode) -> Result<Vec<SideCondition>> {
    arity(node, "Sequential")?;
    same_constraints(node, "Sequential")?;
    let c = &node.conclusion;
    let Command::Seq(x, y) = &c.prog else {
        return Err(mismatch("Sequential", "program is not a sequence"));
    };
    let (a, b) = (&node.premises[0].conclusion, &node.premises[1].conclusion);
    if a.prog != **x || b.prog != **y {
        return Err(mismatch("Sequential", "premise programs do not match x and y"));
    }
    Ok(vec![
        SideCondition::SpecEq {
            name: "pre of x is p".into(),
            lhs: a.pre.clone(),
            rhs: c.pre.clone(),
        },
        SideCondition::SpecEq {
            name: "post of x is pre of y".into(),
            lhs: a.post.clone(),
            rhs: b.pre.clone(),
        },
        SideCondition::SpecEq {
            name: "post of y is s".into(),
            lhs: b.post.clone(),
            rhs: c.post.clone(),
        },
    ])
}

/// `r1, g1 ⊢ {p1} x {q1}` and `r2, g2 ⊢ {p2} y {q2}` with `g1 ≤ r2`,
/// `g2 ≤ r1` give `r1 ⊓ r2, g1 ∥ g2 ⊢ {p1 ⊓ p2} x ∥ y {q1 ⊓ q2}`.
pub fn apply_parallel(node: &ProofNode) -> Result<Vec<SideCondition>> {
    arity(node, "Parallel")?;
    let c = &node.conclusion;
    let Command::Par(x, y) = &c.prog else {
        return Err(mismatch("Parallel", "program is not a parallel composition"));
    };
    let (a, b) = (&node.premises[0].conclusion, &node.premises[1].conclusion);
    if a.prog != **x || b.prog != **y {
        return Err(mismatch("Parallel", "premise programs do not match x and y"));
    }
    if c.rely != a.rely.intersection(&b.rely) {
        return Err(mismatch("Parallel", "rely is not r1 ⊓ r2"));
    }
    if c.guar != a.guar.union(&b.guar) {
        return Err(mismatch("Parallel", "guarantee is not g1 ∥ g2"));
    }
    Ok(vec![
        SideCondition::ConstraintLeq {
            name: "g1 ≤ r2".into(),
            lhs: a.guar.clone(),
            rhs: b.rely.clone(),
        },
        SideCondition::ConstraintLeq {
            name: "g2 ≤ r1".into(),
            lhs: b.guar.clone(),
            rhs: a.rely.clone(),
        },
        SideCondition::SpecEq {
            name: "pre is p1 ⊓ p2".into(),
            lhs: c.pre.clone(),
            rhs: a.pre.meet(&b.pre),
        },
        SideCondition::SpecEq {
            name: "post is q1 ⊓ q2".into(),
            lhs: c.post.clone(),
            rhs: a.post.meet(&b.post),
        },
    ])
}

pub fn apply_choice(node: &ProofNode) -> Result<Vec<SideCondition>> {
    arity(node, "Choice")?;
    same_constraints(node, "Choice")?;
    let c = &node.conclusion;
    let Command::Choice(x, y) = &c.prog else {
        return Err(mismatch("Choice", "program is not a choice"));
    };
    let (a, b) = (&node.premises[0].conclusion, &node.premises[1].conclusion);
    if a.prog != **x || b.prog != **y {
        return Err(mismatch("Choice", "premise programs do not match x and y"));
    }
    let mut out = Vec::new();
    for (side, prem) in [("x", a), ("y", b)] {
        out.push(SideCondition::SpecEq {
            name: format!("pre of {side} is p"),
            lhs: prem.pre.clone(),
            rhs: c.pre.clone(),
        });
        out.push(SideCondition::SpecEq {
            name: format!("post of {side} is q"),
            lhs: prem.post.clone(),
            rhs: c.post.clone(),
        });
    }
    Ok(out)
}

pub fn apply_star(node: &ProofNode) -> Result<Vec<SideCondition>> {
    arity(node, "Star")?;
    same_constraints(node, "Star")?;
    let c = &node.conclusion;
    let Command::Star(x) = &c.prog else {
        return Err(mismatch("Star", "program is not a star"));
    };
    let a = &node.premises[0].conclusion;
    if a.prog != **x {
        return Err(mismatch("Star", "premise program does not match the body"));
    }
    Ok(vec![
        SideCondition::PreAbsorbsRely {
            name: "p·r ≤ p".into(),
            pre: c.pre.clone(),
            rely: c.rely.clone(),
        },
        SideCondition::SpecEq {
            name: "post is p".into(),
            lhs: c.post.clone(),
            rhs: c.pre.clone(),
        },
        SideCondition::SpecEq {
            name: "body pre is p".into(),
            lhs: a.pre.clone(),
            rhs: c.pre.clone(),
        },
        SideCondition::SpecEq {
            name: "body post is p".into(),
            lhs: a.post.clone(),
            rhs: c.pre.clone(),
        },
    ])
}

/// `unchanged(vars e) ∩ preserves(P) ∩ preserves(P[x/e]), unchanged(−{x})
/// ⊢ {end(P[x/e])} x := e {end(P)}`.
pub fn apply_assign(space: &StateSpace, node: &ProofNode) -> Result<Vec<SideCondition>> {
    arity(node, "AssignAxiom")?;
    let c = &node.conclusion;
    let Command::Assign(x, e) = &c.prog else {
        return Err(mismatch("AssignAxiom", "program is not an assignment"));
    };
    if c.post.kind != SpecKind::End {
        return Err(mismatch("AssignAxiom", "post is not an end condition"));
    }
    let var = space.var_index(x)?;
    let post = &c.post.states;
    let mut wp = StateSet::empty(space.size());
    for s in space.states() {
        if post.contains(space.with_value(s, var, e.eval(space, s)?)) {
            wp.insert(s);
        }
    }
    let vars: Vec<String> = e.vars().into_iter().collect();
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let rely = unchanged(space, &names)?
        .intersection(&preserves(post))
        .intersection(&preserves(&wp));
    let others: Vec<&str> = space.variables().iter().map(String::as_str).filter(|v| *v != x).collect();
    let guar = unchanged(space, &others)?;
    Ok(vec![
        SideCondition::SpecEq {
            name: "pre is end(P[x/e])".into(),
            lhs: c.pre.clone(),
            rhs: Spec::end(wp),
        },
        SideCondition::ConstraintLeq {
            name: "r ≤ unchanged(vars e) ⊓ preserves(P) ⊓ preserves(P[x/e])".into(),
            lhs: c.rely.clone(),
            rhs: rely,
        },
        SideCondition::ConstraintLeq {
            name: "unchanged(−{x}) ≤ g".into(),
            lhs: guar,
            rhs: c.guar.clone(),
        },
    ])
}

/// Side conditions of one rule application; structural mismatches are
/// errors.
pub fn apply(space: &StateSpace, node: &ProofNode) -> Result<Vec<SideCondition>> {
    match node.rule {
        Rule::Skip => apply_skip(node),
        Rule::Weakening => apply_weakening(node),
        Rule::Sequential => apply_sequential(node),
        Rule::Parallel => apply_parallel(node),
        Rule::Choice => apply_choice(node),
        Rule::Star => apply_star(node),
        Rule::AssignAxiom => apply_assign(space, node),
        Rule::BruteForce => {
            arity(node, "BruteForce")?;
            Ok(Vec::new())
        }
    }
}

/// Result of deciding one quintuple directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafReport {
    pub verdict: Verdict,
    pub post: Check,
    pub guarantee: Check,
    pub explored: usize,
}

impl LeafReport {
    pub fn checks(&self) -> Vec<Check> {
        vec![self.post.clone(), self.guarantee.clone()]
    }
}

fn classify(name: &str, v: &Option<Violation>, bound: Bound) -> Check {
    match v {
        None => Check::pass(name),
        Some(v) if v.length <= bound.get() => {
            Check::from_witness(name, Some(v.witness.clone())).with_detail(format!("{} letters", v.length))
        }
        Some(v) => {
            let mut c = Check::from_witness(name, Some(v.witness.clone())).with_detail(format!(
                "holds up to length {}; shortest violation has {} letters",
                bound.get(),
                v.length
            ));
            c.verdict = Verdict::BoundInsufficient;
            c
        }
    }
}

/// Explores the quintuple without a length limit.
pub fn explore_quintuple(space: &StateSpace, q: &Quintuple, mode: GuaranteeMode) -> Result<Exploration> {
    let nfa = Nfa::compile(space, &q.prog)?;
    for (what, n) in [("rely", q.rely.universe_size()), ("guarantee", q.guar.universe_size())] {
        if n != space.size() {
            return Err(Error::Config(format!("{what} relation is over {n} states, space has {}", space.size())));
        }
    }
    let rely = q.rely.transitive_closure();
    let guar = q.guar.transitive_closure();
    let pb = Problem {
        space,
        rely: &rely,
        guarantee: &guar,
        pre_kind: q.pre.kind,
        pre: &q.pre.states,
        post_kind: q.post.kind,
        post: &q.post.states,
        mode,
    };
    Ok(explore(&nfa, &pb))
}

/// Decides `p·(r∥c) ≤π q ∧ c ≤ g` at bound `L`.
pub fn check_bruteforce(space: &StateSpace, q: &Quintuple, bound: Bound, mode: GuaranteeMode) -> Result<LeafReport> {
    let ex = explore_quintuple(space, q, mode)?;
    let post = classify("post", &ex.post, bound);
    let guarantee = classify("guarantee", &ex.guarantee, bound);
    Ok(LeafReport {
        verdict: post.verdict.and(guarantee.verdict),
        post,
        guarantee,
        explored: ex.explored,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeReport {
    /// Position in the outline: `root`, `root.0`, `root.0.1`, ...
    pub path: String,
    pub rule: Rule,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutlineReport {
    pub verdict: Verdict,
    pub nodes: Vec<NodeReport>,
}

fn flatten<'a>(node: &'a ProofNode, path: String, out: &mut Vec<(String, &'a ProofNode)>) {
    for (i, p) in node.premises.iter().enumerate() {
        flatten(p, format!("{path}.{i}"), out);
    }
    out.push((path, node));
}

/// Checks every rule application and discharges the brute-force leaves in
/// parallel. Nodes are reported premises first.
pub fn check_outline(space: &StateSpace, root: &ProofNode, bound: Bound, mode: GuaranteeMode) -> Result<OutlineReport> {
    let mut nodes = Vec::new();
    flatten(root, "root".into(), &mut nodes);
    let side: Vec<Vec<SideCondition>> = nodes.iter().map(|(_, n)| apply(space, n)).collect::<Result<_>>()?;
    let leaves: Vec<Option<LeafReport>> = nodes
        .par_iter()
        .map(|(_, n)| {
            (n.rule == Rule::BruteForce)
                .then(|| check_bruteforce(space, &n.conclusion, bound, mode))
                .transpose()
        })
        .collect::<Result<_>>()?;
    let reports: Vec<NodeReport> = nodes
        .iter()
        .zip(side)
        .zip(leaves)
        .map(|(((path, n), side), leaf)| {
            let mut checks: Vec<Check> = side.iter().map(SideCondition::check).collect();
            if let Some(leaf) = leaf {
                checks.extend(leaf.checks());
            }
            NodeReport {
                path: path.clone(),
                rule: n.rule,
                verdict: overall(&checks),
                checks,
            }
        })
        .collect();
    let verdict = reports.iter().fold(Verdict::Pass, |acc, r| acc.and(r.verdict));
    Ok(OutlineReport { verdict, nodes: reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::{Expr, Pred};

    fn space() -> StateSpace {
        StateSpace::new(&["x", "y"], 4).unwrap()
    }

    fn set(s: &StateSpace, p: Pred) -> StateSet {
        p.denote(s).unwrap()
    }

    fn eq(v: &str, c: u32) -> Pred {
        Pred::Eq(Expr::var(v), Expr::Const(c))
    }

    fn b(n: usize) -> Bound {
        Bound::new(n).unwrap()
    }

    #[test]
    fn empty_program_meets_anything() {
        let s = space();
        let q = Quintuple {
            rely: Relation::top(s.size()),
            guar: Relation::empty(s.size()),
            pre: Spec::end(StateSet::full(s.size())),
            post: Spec::end(StateSet::empty(s.size())),
            prog: Command::Test(Pred::False),
        };
        let r = check_bruteforce(&s, &q, b(4), GuaranteeMode::Contextual).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn skip_leaf_and_rule_agree() {
        let s = space();
        let pre = Spec::end(set(&s, eq("x", 1)));
        let rely = unchanged(&s, &["x"]).unwrap();
        let q = Quintuple {
            rely,
            guar: Relation::identity(s.size()),
            pre: pre.clone(),
            post: pre,
            prog: Command::Skip,
        };
        let bf = check_bruteforce(&s, &q, b(3), GuaranteeMode::Contextual).unwrap();
        assert!(bf.verdict.is_pass());
        let side = apply_skip(&ProofNode::leaf(Rule::Skip, q)).unwrap();
        assert!(side.iter().all(SideCondition::holds));
    }

    #[test]
    fn assignment_under_its_rule() {
        let s = space();
        let e = Expr::add(Expr::var("x"), Expr::Const(2));
        let post = set(&s, eq("x", 3));
        let node = ProofNode::leaf(
            Rule::AssignAxiom,
            Quintuple {
                rely: unchanged(&s, &["x"]).unwrap(),
                guar: unchanged(&s, &["y"]).unwrap(),
                pre: Spec::end(set(&s, eq("x", 1))),
                post: Spec::end(post),
                prog: Command::assign("x", e),
            },
        );
        let side = apply_assign(&s, &node).unwrap();
        assert!(side.iter().all(SideCondition::holds), "{side:?}");
        let bf = check_bruteforce(&s, &node.conclusion, b(4), GuaranteeMode::Contextual).unwrap();
        assert!(bf.verdict.is_pass(), "{bf:?}");
    }

    #[test]
    fn wrong_post_gives_consistent_witness() {
        let s = space();
        let q = Quintuple {
            rely: Relation::identity(s.size()),
            guar: Relation::top(s.size()),
            pre: Spec::end(set(&s, eq("x", 1))),
            post: Spec::end(set(&s, eq("x", 2))),
            prog: Command::assign("x", Expr::Const(3)),
        };
        let r = check_bruteforce(&s, &q, b(4), GuaranteeMode::Contextual).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.post.witness.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn star_rule_surfaces_failed_side_condition() {
        let s = space();
        let pre = Spec::end(set(&s, eq("x", 0)));
        let q = |prog| Quintuple {
            rely: Relation::top(s.size()),
            guar: Relation::top(s.size()),
            pre: pre.clone(),
            post: pre.clone(),
            prog,
        };
        let body = Command::Skip;
        let node = ProofNode::new(Rule::Star, q(Command::star(body.clone())), vec![ProofNode::brute_force(q(body))]);
        let side = apply_star(&node).unwrap();
        let failed: Vec<_> = side.iter().filter(|c| !c.holds()).map(|c| c.name().to_owned()).collect();
        assert_eq!(failed, vec!["p·r ≤ p".to_owned()]);
    }

    #[test]
    fn choice_of_identical_branches() {
        let s = space();
        let pre = Spec::end(StateSet::full(s.size()));
        let q = |prog| Quintuple {
            rely: Relation::identity(s.size()),
            guar: Relation::top(s.size()),
            pre: pre.clone(),
            post: pre.clone(),
            prog,
        };
        let leaf = ProofNode::brute_force(q(Command::Skip));
        let node = ProofNode::new(
            Rule::Choice,
            q(Command::choice(Command::Skip, Command::Skip)),
            vec![leaf.clone(), leaf],
        );
        let rep = check_outline(&s, &node, b(3), GuaranteeMode::Contextual).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.nodes[0].checks, rep.nodes[1].checks);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let s = space();
        let q = Quintuple {
            rely: Relation::identity(s.size()),
            guar: Relation::top(s.size()),
            pre: Spec::end(StateSet::full(s.size())),
            post: Spec::end(StateSet::full(s.size())),
            prog: Command::Skip,
        };
        let node = ProofNode::new(Rule::Skip, q.clone(), vec![ProofNode::brute_force(q)]);
        assert!(matches!(check_outline(&s, &node, b(2), GuaranteeMode::Contextual), Err(Error::RuleMismatch { .. })));
    }

    #[test]
    fn violation_beyond_bound_is_not_a_pass() {
        let s = StateSpace::new(&["x"], 6).unwrap();
        let inc = Command::assign("x", Expr::add(Expr::var("x"), Expr::Const(1)));
        let prog = Command::seq(inc.clone(), Command::seq(inc.clone(), inc));
        let q = Quintuple {
            rely: Relation::identity(s.size()),
            guar: Relation::top(s.size()),
            pre: Spec::end(set(&s, eq("x", 0))),
            post: Spec::end(set(&s, eq("x", 0))),
            prog,
        };
        // the three increments contract to one letter, so two letters suffice
        let r = check_bruteforce(&s, &q, b(2), GuaranteeMode::Contextual).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let r1 = check_bruteforce(&s, &q, b(1), GuaranteeMode::Contextual).unwrap();
        assert_eq!(r1.verdict, Verdict::BoundInsufficient);
    }
}
