//! The rely-guarantee layer over bounded languages: relation lifting,
//! consistency and the retraction π, relies as `⟨R⟩*`, the interference
//! axioms, and the two quintuple encodings.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::lang::{
    concat, plus, residual_par, residual_right, residual_right_with, shuffle, star, Alphabet,
    Bound, Lang, Letter, Word,
};
use crate::report::Check;
use crate::state::Relation;

/// `⟨R⟩`: one length-one word per pair.
pub fn lift(relation: &Relation, bound: Bound) -> Lang {
    Lang::letters(relation.pairs().map(|(a, b)| Letter::new(a, b)), bound)
}

pub fn consistent(w: &Word) -> bool {
    w.is_consistent()
}

/// `π = λX. X ∩ C`.
pub fn pi(x: &Lang) -> Lang {
    x.retain(|w| w.is_consistent())
}

pub fn leq_pi(x: &Lang, y: &Lang) -> Result<bool> {
    pi(x).leq(y)
}

/// A consistent word of `x` that `y` lacks.
pub fn leq_pi_witness(x: &Lang, y: &Lang) -> Result<Option<Word>> {
    pi(x).leq_witness(y)
}

/// An interference constraint `⟨R⟩*`, kept as its generating relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rely {
    relation: Relation,
}

impl Rely {
    pub fn new(relation: Relation) -> Self {
        Rely { relation }
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn materialize(&self, bound: Bound) -> Lang {
        star(&lift(&self.relation, bound), bound)
    }

    /// `⟨R⟩* ⊓ ⟨S⟩* = ⟨R ∩ S⟩*`.
    pub fn meet(&self, other: &Rely) -> Rely {
        Rely::new(self.relation.intersection(&other.relation))
    }

    /// `⟨R⟩* ∥ ⟨S⟩* = ⟨R ∪ S⟩*`.
    pub fn par(&self, other: &Rely) -> Rely {
        Rely::new(self.relation.union(&other.relation))
    }
}

/// `⟨R⟩* ∥ X`, computed by inserting `R`-steps into the gaps of each word
/// of `X` rather than by a general shuffle against the materialized star.
pub fn rely_interleave(relation: &Relation, x: &Lang, bound: Bound) -> Lang {
    let steps: Vec<Letter> = relation.pairs().map(|(a, b)| Letter::new(a, b)).collect();
    let l = bound.get();
    let mut out = BTreeSet::new();
    let mut buf = Vec::with_capacity(l);
    for w in x.iter().filter(|w| w.len() <= l) {
        insert_steps(w.letters(), &steps, l, &mut buf, &mut out);
    }
    Lang::new(out, bound)
}

fn insert_steps(
    rest: &[Letter],
    steps: &[Letter],
    limit: usize,
    buf: &mut Vec<Letter>,
    out: &mut BTreeSet<Word>,
) {
    if rest.is_empty() {
        out.insert(Word(buf.clone()));
    } else {
        buf.push(rest[0]);
        insert_steps(&rest[1..], steps, limit, buf, out);
        buf.pop();
    }
    if buf.len() + rest.len() < limit {
        for s in steps {
            buf.push(*s);
            insert_steps(rest, steps, limit, buf, out);
            buf.pop();
        }
    }
}

fn inclusion(name: &str, lhs: &Lang, rhs: &Lang) -> Result<Check> {
    Ok(Check::from_witness(name, lhs.leq_witness(rhs)?))
}

fn inclusion_pi(name: &str, lhs: &Lang, rhs: &Lang) -> Result<Check> {
    Ok(Check::from_witness(name, leq_pi_witness(lhs, rhs)?))
}

fn equality(name: &str, lhs: &Lang, rhs: &Lang) -> Result<Vec<Check>> {
    Ok(vec![
        inclusion(&format!("{name} (⊆)"), lhs, rhs)?,
        inclusion(&format!("{name} (⊇)"), rhs, lhs)?,
    ])
}

/// Interference axioms (1)–(4) for `r` (with `r2` as the second constraint
/// of axiom 2) against `x`, `y`.
pub fn check_rg_axioms(r: &Rely, r2: &Rely, x: &Lang, y: &Lang, bound: Bound) -> Result<Vec<Check>> {
    let rm = r.materialize(bound);
    let r2m = r2.materialize(bound);
    let rel = r.relation();
    let mut out = Vec::new();

    out.push(inclusion("axiom 1: r∥r ≤ r", &shuffle(&rm, &rm, bound), &rm)?);
    out.push(inclusion("axiom 2: r ≤ r∥r'", &rm, &shuffle(&rm, &r2m, bound))?);

    let lhs3 = rely_interleave(rel, &concat(x, y, bound), bound);
    let rhs3 = concat(
        &rely_interleave(rel, x, bound),
        &rely_interleave(rel, y, bound),
        bound,
    );
    out.extend(equality("axiom 3: r∥(x·y) = (r∥x)·(r∥y)", &lhs3, &rhs3)?);

    let lhs4 = rely_interleave(rel, &plus(x, bound), bound);
    let rhs4 = plus(&rely_interleave(rel, x, bound), bound);
    out.push(inclusion("axiom 4: r∥x⁺ ≤ (r∥x)⁺", &lhs4, &rhs4)?);
    out.push(inclusion("derived: (r∥x)⁺ ≤ r∥x⁺", &rhs4, &lhs4)?);
    Ok(out)
}

/// `1 ≤ r`, `r* = r`, `r·r = r`, `r∥r = r` at the bound.
pub fn derived_rely_facts(r: &Rely, bound: Bound) -> Result<Vec<Check>> {
    let rm = r.materialize(bound);
    let mut out = vec![inclusion("1 ≤ r", &Lang::one(bound), &rm)?];
    out.extend(equality("r* = r", &star(&rm, bound), &rm)?);
    out.extend(equality("r·r = r", &concat(&rm, &rm, bound), &rm)?);
    out.extend(equality("r∥r = r", &shuffle(&rm, &rm, bound), &rm)?);
    Ok(out)
}

/// The consistency axioms con1–con4 for π.
pub fn check_con_axioms(x: &Lang, y: &Lang, z: &Lang, bound: Bound) -> Result<Vec<Check>> {
    let mut out = vec![
        inclusion_pi("con1: x* ≤π π(x)*", &star(x, bound), &star(&pi(x), bound))?,
        inclusion_pi(
            "con2: x·y ≤π π(x)·π(y)",
            &concat(x, y, bound),
            &concat(&pi(x), &pi(y), bound),
        )?,
    ];

    let ante3 = leq_pi(&z.union(&concat(x, y, bound))?, y)?;
    let con3 = if ante3 {
        inclusion_pi("con3: z + x·y ≤π y ⟹ x*·z ≤π y", &concat(&star(x, bound), z, bound), y)?
    } else {
        Check::pass("con3: z + x·y ≤π y ⟹ x*·z ≤π y").with_detail("antecedent false")
    };
    out.push(con3);

    let ante4 = leq_pi(&z.union(&concat(y, x, bound))?, y)?;
    let con4 = if ante4 {
        inclusion_pi("con4: z + y·x ≤π y ⟹ z·x* ≤π y", &concat(z, &star(x, bound), bound), y)?
    } else {
        Check::pass("con4: z + y·x ≤π y ⟹ z·x* ≤π y").with_detail("antecedent false")
    };
    out.push(con4);
    Ok(out)
}

/// `⟨R⟩*∥⟨S⟩ = ⟨R⟩*;⟨S⟩;⟨R⟩*` and `⟨R⟩*∥⟨S⟩* = (⟨R⟩*;⟨S⟩*)*`.
pub fn atomic_identities(r: &Relation, s: &Relation, bound: Bound) -> Result<Vec<Check>> {
    let rs = star(&lift(r, bound), bound);
    let sl = lift(s, bound);
    let ss = star(&sl, bound);
    let mut out = equality(
        "⟨R⟩*∥⟨S⟩ = ⟨R⟩*;⟨S⟩;⟨R⟩*",
        &shuffle(&rs, &sl, bound),
        &concat(&concat(&rs, &sl, bound), &rs, bound),
    )?;
    out.extend(equality(
        "⟨R⟩*∥⟨S⟩* = (⟨R⟩*;⟨S⟩*)*",
        &shuffle(&rs, &ss, bound),
        &star(&concat(&rs, &ss, bound), bound),
    )?);
    Ok(out)
}

/// Closure of the interference constraints under `⊓` and `∥`.
pub fn i_closure(r: &Rely, s: &Rely, bound: Bound) -> Result<Vec<Check>> {
    let rm = r.materialize(bound);
    let sm = s.materialize(bound);
    let mut out = equality("r ⊓ s ∈ I", &rm.meet(&sm)?, &r.meet(s).materialize(bound))?;
    out.extend(equality("r ∥ s ∈ I", &shuffle(&rm, &sm, bound), &r.par(s).materialize(bound))?);
    Ok(out)
}

/// `π(X·Y)` computed without forming inconsistent products.
pub fn concat_consistent(x: &Lang, y: &Lang, bound: Bound) -> Lang {
    let l = bound.get();
    let px = pi(x);
    let py = pi(y);
    let mut words = BTreeSet::new();
    for a in px.iter() {
        for b in py.iter().filter(|b| a.len() + b.len() <= l) {
            let joins = match (a.last(), b.first()) {
                (Some(u), Some(v)) => u.chains(v),
                _ => true,
            };
            if joins {
                words.insert(a.concat(b));
            }
        }
    }
    Lang::new(words, bound)
}

/// Outcome of deciding a quintuple on explicit languages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuintupleOutcome {
    /// Consistent word of `p·(r∥x)` outside `q`.
    pub post_witness: Option<Word>,
    /// Word of `x` not in the guarantee.
    pub guar_witness: Option<Word>,
}

impl QuintupleOutcome {
    pub fn holds(&self) -> bool {
        self.post_witness.is_none() && self.guar_witness.is_none()
    }
}

/// `p·(r∥x) ≤π q ∧ x ≤ g`.
pub fn quintuple_outcome(
    p: &Lang,
    r: &Rely,
    x: &Lang,
    q: &Lang,
    g: &Rely,
    bound: Bound,
) -> Result<QuintupleOutcome> {
    let lhs = concat_consistent(p, &rely_interleave(r.relation(), x, bound), bound);
    let post_witness = lhs.leq_witness(&q.with_bound(bound))?;
    let guar_witness = x.with_bound(bound).leq_witness(&g.materialize(bound))?;
    Ok(QuintupleOutcome {
        post_witness,
        guar_witness,
    })
}

pub fn quintuple_holds(p: &Lang, r: &Rely, x: &Lang, q: &Lang, g: &Rely, bound: Bound) -> Result<bool> {
    Ok(quintuple_outcome(p, r, x, q, g, bound)?.holds())
}

/// Same encoding with a plain (non-π) inclusion on the postcondition.
pub fn quintuple_holds_plain(p: &Lang, r: &Rely, x: &Lang, q: &Lang, g: &Rely, bound: Bound) -> Result<bool> {
    let lhs = concat(p, &rely_interleave(r.relation(), x, bound), bound);
    Ok(lhs.leq(&q.with_bound(bound))? && x.with_bound(bound).leq(&g.materialize(bound))?)
}

/// How the outer inclusion of the refinement encoding is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inclusion {
    Plain,
    /// `≤π`: the postcondition is widened by every inconsistent word, so
    /// the residual computes the weakest program up to π.
    Pi,
}

/// `x ≤ r/(p → q) ⊓ g`.
#[allow(clippy::too_many_arguments)]
pub fn quintuple_refine_holds(
    p: &Lang,
    r: &Rely,
    x: &Lang,
    q: &Lang,
    g: &Rely,
    alphabet: &Alphabet,
    bound: Bound,
    mode: Inclusion,
) -> Result<bool> {
    let spec = refine_spec(p, r, q, g, alphabet, bound, mode)?;
    x.with_bound(bound).leq(&spec)
}

/// The generic specification `r/(p → q) ⊓ g`.
pub fn refine_spec(
    p: &Lang,
    r: &Rely,
    q: &Lang,
    g: &Rely,
    alphabet: &Alphabet,
    bound: Bound,
    mode: Inclusion,
) -> Result<Lang> {
    let q = q.with_bound(bound);
    let post = match mode {
        Inclusion::Plain => residual_right(p, &q, alphabet, bound),
        Inclusion::Pi => residual_right_with(p, |w| q.contains(w) || !w.is_consistent(), alphabet, bound),
    };
    let weakest = residual_par(&r.materialize(bound), &post, alphabet, bound);
    weakest.meet(&g.materialize(bound))
}
