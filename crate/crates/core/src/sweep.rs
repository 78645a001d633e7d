//! Randomized law sweeps. Each sweep draws seeded instances, checks every
//! law on each, and folds the results into one [`Check`] per law carrying
//! the first counterexample found.

use std::collections::BTreeMap;

use crate::automaton::GuaranteeMode;
use crate::error::Result;
use crate::gen::Gen;
use crate::lang::{concat, shuffle, star, Alphabet, Bound, Lang};
use crate::program::{denote, end_lang, mumble_close, preserves, test_lang, unchanged, Command};
use crate::report::{Check, Verdict};
use crate::rg::{
    atomic_identities, check_con_axioms, check_rg_axioms, concat_consistent, derived_rely_facts, i_closure,
    leq_pi_witness, lift, pi, quintuple_holds, quintuple_holds_plain, quintuple_refine_holds, rely_interleave,
    Inclusion, Rely,
};
use crate::state::{Relation, StateSpace};
use crate::verifier::{apply_assign, check_bruteforce, ProofNode, Quintuple, Rule, Spec};

/// Size limits for a sweep. Language sweeps draw `|Σ|` from
/// `1..=max_states` and `L` from `1..=max_bound`; program sweeps read
/// `max_states` as the largest value domain.
#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub seed: u64,
    pub max_states: usize,
    pub max_bound: usize,
    pub instances: usize,
}

impl SweepConfig {
    pub fn new(seed: u64, max_states: usize, max_bound: usize, instances: usize) -> Self {
        SweepConfig {
            seed,
            max_states: max_states.max(1),
            max_bound: max_bound.max(1),
            instances,
        }
    }

    fn draw(&self, g: &mut Gen) -> (usize, Bound) {
        let states = 1 + g.below(self.max_states);
        let bound = Bound::new(1 + g.below(self.max_bound)).expect("positive");
        (states, bound)
    }
}

/// Folds per-instance checks by name, keeping the first failure.
#[derive(Default)]
pub struct Tally {
    order: Vec<String>,
    laws: BTreeMap<String, (usize, usize, Option<Check>)>,
}

impl Tally {
    pub fn record(&mut self, check: Check) {
        if !self.laws.contains_key(&check.name) {
            self.order.push(check.name.clone());
        }
        let entry = self.laws.entry(check.name.clone()).or_insert((0, 0, None));
        entry.0 += 1;
        if check.detail.as_deref() == Some("antecedent false") {
            entry.1 += 1;
        }
        if !check.passed() && entry.2.is_none() {
            entry.2 = Some(check);
        }
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.record(c);
        }
    }

    pub fn finish(mut self) -> Vec<Check> {
        self.order
            .iter()
            .map(|name| {
                let (n, vacuous, failure) = self.laws.remove(name).expect("recorded");
                let mut detail = format!("{n} instances");
                if vacuous > 0 {
                    detail += &format!(", {vacuous} with a false antecedent");
                }
                match failure {
                    Some(mut c) => {
                        let first = c.detail.take().map(|d| format!("; {d}")).unwrap_or_default();
                        c.with_detail(format!("{detail}{first}"))
                    }
                    None => Check::pass(name.clone()).with_detail(detail),
                }
            })
            .collect()
    }
}

fn eq(name: &str, a: &Lang, b: &Lang) -> Result<Check> {
    let w = match a.leq_witness(b)? {
        Some(w) => Some(w),
        None => b.leq_witness(a)?,
    };
    Ok(Check::from_witness(name, w))
}

fn leq(name: &str, a: &Lang, b: &Lang) -> Result<Check> {
    Ok(Check::from_witness(name, a.leq_witness(b)?))
}

/// Dioid laws for `(∪, ·)` and commutative-dioid laws for `(∪, ∥)` with
/// the shared unit `1 = {ε}` and zero `0 = ∅`.
pub fn trioid_laws(cfg: &SweepConfig) -> Result<Vec<Check>> {
    let mut g = Gen::new(cfg.seed);
    let mut t = Tally::default();
    for _ in 0..cfg.instances {
        let (n, b) = cfg.draw(&mut g);
        let (x, y, z) = (g.lang(n, b), g.lang(n, b), g.lang(n, b));
        let (zero, one) = (Lang::zero(b), Lang::one(b));
        let cat = |u: &Lang, v: &Lang| concat(u, v, b);
        let par = |u: &Lang, v: &Lang| shuffle(u, v, b);
        t.extend([
            eq("x ∪ (y ∪ z) = (x ∪ y) ∪ z", &x.union(&y.union(&z)?)?, &x.union(&y)?.union(&z)?)?,
            eq("x ∪ y = y ∪ x", &x.union(&y)?, &y.union(&x)?)?,
            eq("x ∪ x = x", &x.union(&x)?, &x)?,
            eq("x ∪ 0 = x", &x.union(&zero)?, &x)?,
            eq("x·(y·z) = (x·y)·z", &cat(&x, &cat(&y, &z)), &cat(&cat(&x, &y), &z))?,
            eq("1·x = x", &cat(&one, &x), &x)?,
            eq("x·1 = x", &cat(&x, &one), &x)?,
            eq("0·x = 0", &cat(&zero, &x), &zero)?,
            eq("x·0 = 0", &cat(&x, &zero), &zero)?,
            eq("x·(y ∪ z) = x·y ∪ x·z", &cat(&x, &y.union(&z)?), &cat(&x, &y).union(&cat(&x, &z))?)?,
            eq("(x ∪ y)·z = x·z ∪ y·z", &cat(&x.union(&y)?, &z), &cat(&x, &z).union(&cat(&y, &z))?)?,
            eq("x∥(y∥z) = (x∥y)∥z", &par(&x, &par(&y, &z)), &par(&par(&x, &y), &z))?,
            eq("x∥y = y∥x", &par(&x, &y), &par(&y, &x))?,
            eq("1∥x = x", &par(&one, &x), &x)?,
            eq("0∥x = 0", &par(&zero, &x), &zero)?,
            eq("x∥(y ∪ z) = x∥y ∪ x∥z", &par(&x, &y.union(&z)?), &par(&x, &y).union(&par(&x, &z))?)?,
        ]);
    }
    Ok(t.finish())
}

/// `(w∥x)·(y∥z) ≤ (w·y)∥(x·z)`.
pub fn interchange_law(cfg: &SweepConfig) -> Result<Vec<Check>> {
    let mut g = Gen::new(cfg.seed);
    let mut t = Tally::default();
    for _ in 0..cfg.instances {
        let (n, b) = cfg.draw(&mut g);
        let (w, x, y, z) = (g.lang(n, b), g.lang(n, b), g.lang(n, b), g.lang(n, b));
        let lhs = concat(&shuffle(&w, &x, b), &shuffle(&y, &z, b), b);
        let rhs = shuffle(&concat(&w, &y, b), &concat(&x, &z, b), b);
        t.record(leq("(w∥x)·(y∥z) ≤ (w·y)∥(x·z)", &lhs, &rhs)?);
    }
    Ok(t.finish())
}

/// Interference axioms, derived rely facts and closure of the rely set.
pub fn rely_axioms(cfg: &SweepConfig) -> Result<Vec<Check>> {
    let mut g = Gen::new(cfg.seed);
    let mut t = Tally::default();
    for _ in 0..cfg.instances {
        let (n, b) = cfg.draw(&mut g);
        let r = Rely::new(g.relation(n));
        let r2 = Rely::new(g.relation(n));
        let (x, y) = (g.lang(n, b), g.lang(n, b));
        t.extend(check_rg_axioms(&r, &r2, &x, &y, b)?);
        t.extend(derived_rely_facts(&r, b)?);
        t.extend(i_closure(&r, &r2, b)?);
    }
    Ok(t.finish())
}

/// π is a retraction, satisfies con1–con4, and its images are closed
/// under the Kleene operations.
pub fn pi_laws(cfg: &SweepConfig) -> Result<Vec<Check>> {
    let mut g = Gen::new(cfg.seed);
    let mut t = Tally::default();
    for _ in 0..cfg.instances {
        let (n, b) = cfg.draw(&mut g);
        let (x, y, z) = (g.lang(n, b), g.lang(n, b), g.lang(n, b));
        let (px, py) = (pi(&x), pi(&y));
        t.extend([
            eq("π(π(x)) = π(x)", &pi(&px), &px)?,
            leq("π(x) ≤ x", &px, &x)?,
            Check::from_witness("x ≤π π(x)", leq_pi_witness(&x, &px)?),
            eq("π(x ∪ y) = π(x) ∪ π(y)", &pi(&x.union(&y)?), &px.union(&py)?)?,
            eq("π(x·y) = π(π(x)·π(y))", &pi(&concat(&x, &y, b)), &pi(&concat(&px, &py, b)))?,
            eq("π(x*) = π(π(x)*)", &pi(&star(&x, b)), &pi(&star(&px, b)))?,
            eq("π(x·y) = consistent join of π(x), π(y)", &pi(&concat(&x, &y, b)), &concat_consistent(&x, &y, b))?,
        ]);
        t.extend(check_con_axioms(&x, &y, &z, b)?);
    }
    Ok(t.finish())
}

/// `⟨R⟩*∥⟨S⟩ = ⟨R⟩*;⟨S⟩;⟨R⟩*` and the star-star identity.
pub fn atomicity_laws(cfg: &SweepConfig) -> Result<Vec<Check>> {
    let mut g = Gen::new(cfg.seed);
    let mut t = Tally::default();
    for _ in 0..cfg.instances {
        let (n, b) = cfg.draw(&mut g);
        let (r, s) = (g.relation(n), g.relation(n));
        t.extend(atomic_identities(&r, &s, b)?);
    }
    Ok(t.finish())
}

/// The quintuple encoding `p·(r∥x) ≤π q ∧ x ≤ g` and the refinement
/// encoding `x ≤ r/(p → q) ⊓ g` decide the same instances, with and
/// without π.
pub fn encoding_agreement(cfg: &SweepConfig) -> Result<Vec<Check>> {
    let mut g = Gen::new(cfg.seed);
    let mut agree_pi = Check::pass("quintuple and refinement encodings agree (≤π)");
    let mut agree_plain = Check::pass("quintuple and refinement encodings agree (≤)");
    let (mut holds_pi, mut holds_plain) = (0, 0);
    for i in 0..cfg.instances {
        let n = 1 + g.below(cfg.max_states.min(3));
        // residuals scan the whole bounded universe
        let max_l = if n >= 3 { 2 } else { 3 }.min(cfg.max_bound);
        let b = Bound::new(1 + g.below(max_l))?;
        let alpha = Alphabet::full(n);
        let p = match g.below(3) {
            0 => g.lang(n, b),
            1 => end_lang(&g.state_set(n), b),
            _ => test_lang(&g.state_set(n), b),
        };
        let r = Rely::new(g.relation(n));
        let x = g.lang(n, b);
        let q = match g.below(3) {
            0 => g.lang(n, b),
            1 => end_lang(&g.state_set(n), b),
            _ => concat_consistent(&p, &rely_interleave(r.relation(), &x, b), b).union(&g.lang(n, b))?,
        };
        let gr = if g.chance(0.5) {
            Rely::new(Relation::top(n))
        } else {
            Rely::new(g.relation(n))
        };
        let e5 = quintuple_holds(&p, &r, &x, &q, &gr, b)?;
        let e6 = quintuple_refine_holds(&p, &r, &x, &q, &gr, &alpha, b, Inclusion::Pi)?;
        let e5p = quintuple_holds_plain(&p, &r, &x, &q, &gr, b)?;
        let e6p = quintuple_refine_holds(&p, &r, &x, &q, &gr, &alpha, b, Inclusion::Plain)?;
        holds_pi += e5 as usize;
        holds_plain += e5p as usize;
        if e5 != e6 && agree_pi.passed() {
            agree_pi = Check::from_bool(agree_pi.name.clone(), false)
                .with_detail(format!("instance {i}: quintuple {e5}, refinement {e6}"));
        }
        if e5p != e6p && agree_plain.passed() {
            agree_plain = Check::from_bool(agree_plain.name.clone(), false)
                .with_detail(format!("instance {i}: quintuple {e5p}, refinement {e6p}"));
        }
    }
    let note = |c: Check, holds: usize| {
        let d = format!("{} instances, {holds} hold", cfg.instances);
        match c.detail.clone() {
            Some(first) => c.with_detail(format!("{d}; {first}")),
            None => c.with_detail(d),
        }
    };
    Ok(vec![note(agree_pi, holds_pi), note(agree_plain, holds_plain)])
}

/// A space of one or two variables over a domain of at most
/// `min(max_domain, 4)` values, with a bound that keeps `end` enumerable.
fn small_space(g: &mut Gen, max_domain: usize) -> Result<(StateSpace, Bound)> {
    let vars = if g.chance(0.5) { vec!["a"] } else { vec!["a", "b"] };
    let top = max_domain.clamp(2, 4) as u32;
    let mut n = 2 + g.below(top as usize - 1) as u32;
    if vars.len() == 2 {
        n = n.min(3);
    }
    let space = StateSpace::new(&vars, n)?;
    let l = if space.size() <= 4 { 3 } else { 2 };
    Ok((space, Bound::new(l)?))
}

/// Test, end and stuttering laws over random predicates.
pub fn test_end_laws(cfg: &SweepConfig) -> Result<Vec<Check>> {
    let mut g = Gen::new(cfg.seed);
    let mut t = Tally::default();
    for _ in 0..cfg.instances {
        let (space, b) = small_space(&mut g, cfg.max_states)?;
        let n = space.size();
        let p = g.pred(&space, 2).denote(&space)?;
        let q = if g.chance(0.5) {
            g.superset(&p)
        } else {
            g.pred(&space, 2).denote(&space)?
        };
        let pq = p.intersection(&q);
        let (tp, tq, tpq) = (test_lang(&p, b), test_lang(&q, b), test_lang(&pq, b));
        let tptq = concat(&tp, &tq, b);
        t.record(Check::from_witness(
            "test(P ∩ Q) ≤π mumble(test(P);test(Q))",
            leq_pi_witness(&tpq, &mumble_close(&tptq))?,
        ));
        let id = Relation::identity(n);
        t.record(Check::from_witness(
            "⟨Id⟩*∥(test(P);test(Q)) ≤π ⟨Id⟩*∥test(P ∩ Q)",
            leq_pi_witness(&rely_interleave(&id, &tptq, b), &rely_interleave(&id, &tpq, b))?,
        ));
        let ep = end_lang(&p, b);
        t.record(Check::from_witness(
            "end(P);test(Q) ≤π end(P ∩ Q)",
            leq_pi_witness(&concat(&ep, &tq, b), &end_lang(&pq, b))?,
        ));
        let included = tp.leq(&end_lang(&q, b))?;
        t.record(
            Check::from_bool("test(P) ≤ end(Q) ⟺ P ⊆ Q", included == p.is_subset(&q))
                .with_detail(format!("P ⊆ Q is {}", p.is_subset(&q))),
        );
        let r = if g.chance(0.5) {
            preserves(&p).intersection(&g.relation(n))
        } else {
            g.relation(n)
        };
        let name = "range(Id_P∘R) ⊆ P ⟹ end(P);⟨R⟩* ≤π end(P)";
        if r.image(&p).is_subset(&p) {
            let lhs = concat(&ep, &star(&lift(&r, b), b), b);
            t.record(Check::from_witness(name, leq_pi_witness(&lhs, &ep)?));
        } else {
            t.record(Check::pass(name).with_detail("antecedent false"));
        }
    }
    Ok(t.finish())
}

/// `{end(P[x/e])} x := e {end(P)}` under the rule's own rely and
/// guarantee, decided by the explorer and, on small spaces, on explicit
/// languages.
pub fn assignment_rule(cfg: &SweepConfig) -> Result<Vec<Check>> {
    let mut g = Gen::new(cfg.seed);
    let mut t = Tally::default();
    for _ in 0..cfg.instances {
        let (space, _) = small_space(&mut g, cfg.max_states)?;
        let x = g.var(&space).to_string();
        let e = g.expr(&space, 2);
        let post = Spec::end(g.pred(&space, 2).denote(&space)?);
        let prog = Command::assign(&x, e.clone());
        // the side conditions compute wp and the stated rely; read them back
        let probe = Quintuple {
            rely: Relation::empty(space.size()),
            guar: Relation::top(space.size()),
            pre: post.clone(),
            post: post.clone(),
            prog: prog.clone(),
        };
        let (wp, rely) = stated_assignment_terms(&space, &probe)?;
        let others: Vec<&str> = space.variables().iter().map(String::as_str).filter(|v| *v != x).collect();
        let q = Quintuple {
            rely,
            guar: unchanged(&space, &others)?,
            pre: wp,
            post,
            prog,
        };
        let node = ProofNode::leaf(Rule::AssignAxiom, q.clone());
        let sides = apply_assign(&space, &node)?;
        t.record(Check::from_bool(
            "assignment side conditions hold for the stated rely and guarantee",
            sides.iter().all(|s| s.holds()),
        ));
        let leaf = check_bruteforce(&space, &q, Bound::new(4)?, GuaranteeMode::Contextual)?;
        t.record(Check {
            name: "{end(P[x/e])} x := e {end(P)} by exploration".into(),
            verdict: leaf.verdict,
            witness: leaf.post.witness.or(leaf.guarantee.witness),
            detail: None,
        });
        if space.size() <= 4 {
            let b = Bound::new(2)?;
            let lang = denote(&space, &q.prog, Bound::new(4)?)?.with_bound(b);
            let ok = quintuple_holds(
                &q.pre.lang(b),
                &Rely::new(q.rely.clone()),
                &lang,
                &q.post.lang(b),
                &Rely::new(q.guar.clone()),
                b,
            )?;
            t.record(Check::from_bool("{end(P[x/e])} x := e {end(P)} on explicit languages", ok));
        }
    }
    Ok(t.finish())
}

/// `end(P[x/e])` and `unchanged(vars e) ⊓ preserves(P) ⊓ preserves(P[x/e])`
/// for an assignment quintuple, as the rule computes them.
fn stated_assignment_terms(space: &StateSpace, q: &Quintuple) -> Result<(Spec, Relation)> {
    use crate::verifier::SideCondition;
    let sides = apply_assign(space, &ProofNode::leaf(Rule::AssignAxiom, q.clone()))?;
    let mut wp = None;
    let mut rely = None;
    for s in sides {
        match s {
            SideCondition::SpecEq { rhs, .. } => wp = Some(rhs),
            SideCondition::ConstraintLeq { name, rhs, .. } if name.starts_with("r ≤") => rely = Some(rhs),
            _ => {}
        }
    }
    Ok((wp.expect("assignment emits its precondition"), rely.expect("assignment emits its rely")))
}

/// Everything `--mode laws` runs.
pub fn language_laws(cfg: &SweepConfig) -> Result<Vec<Check>> {
    let mut out = trioid_laws(cfg)?;
    out.extend(interchange_law(cfg)?);
    Ok(out)
}

/// Everything `--mode axioms` runs; `instances` scales each sweep.
pub fn model_axioms(cfg: &SweepConfig) -> Result<Vec<Check>> {
    let mut out = rely_axioms(cfg)?;
    out.extend(pi_laws(cfg)?);
    out.extend(atomicity_laws(cfg)?);
    out.extend(encoding_agreement(cfg)?);
    out.extend(test_end_laws(cfg)?);
    out.extend(assignment_rule(cfg)?);
    Ok(out)
}

pub fn verdict(checks: &[Check]) -> Verdict {
    crate::report::overall(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(checks: &[Check]) {
        for c in checks {
            assert!(c.passed(), "{c}");
        }
    }

    #[test]
    fn small_sweeps_pass() {
        let cfg = SweepConfig::new(3, 3, 3, 30);
        all_pass(&language_laws(&cfg).unwrap());
        all_pass(&model_axioms(&cfg).unwrap());
    }

    #[test]
    fn tally_keeps_first_failure() {
        let mut t = Tally::default();
        t.record(Check::pass("law"));
        t.record(Check::from_bool("law", false).with_detail("first"));
        t.record(Check::from_bool("law", false).with_detail("second"));
        let out = t.finish();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].verdict, Verdict::Fail);
        assert_eq!(out[0].detail.as_deref(), Some("3 instances; first"));
    }
}
