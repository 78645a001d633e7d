//! Programs as trace languages: expressions, predicates, commands, and the
//! test/end/mumble vocabulary.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lang::{concat, shuffle, star, Alphabet, Bound, Lang, Letter, Word};
use crate::rg::{leq_pi, lift, rely_interleave};
use crate::state::{Relation, StateId, StateSet, StateSpace};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(String),
    Const(u32),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn var(name: &str) -> Self {
        Expr::Var(name.to_owned())
    }

    pub fn add(a: Expr, b: Expr) -> Self {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Self {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Self {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    /// Value in `0..N`, arithmetic mod `N`.
    pub fn eval(&self, space: &StateSpace, state: StateId) -> Result<u32> {
        let n = u64::from(space.domain());
        let v = match self {
            Expr::Var(x) => u64::from(space.value(state, space.var_index(x)?)),
            Expr::Const(c) => u64::from(*c) % n,
            Expr::Add(a, b) => (u64::from(a.eval(space, state)?) + u64::from(b.eval(space, state)?)) % n,
            Expr::Sub(a, b) => (u64::from(a.eval(space, state)?) + n - u64::from(b.eval(space, state)?)) % n,
            Expr::Mul(a, b) => (u64::from(a.eval(space, state)?) * u64::from(b.eval(space, state)?)) % n,
        };
        Ok(v as u32)
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Var(x) => {
                out.insert(x.clone());
            }
            Expr::Const(_) => {}
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn subst(&self, x: &str, e: &Expr) -> Expr {
        match self {
            Expr::Var(y) if y == x => e.clone(),
            Expr::Var(_) | Expr::Const(_) => self.clone(),
            Expr::Add(a, b) => Expr::add(a.subst(x, e), b.subst(x, e)),
            Expr::Sub(a, b) => Expr::sub(a.subst(x, e), b.subst(x, e)),
            Expr::Mul(a, b) => Expr::mul(a.subst(x, e), b.subst(x, e)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Pred {
    True,
    False,
    Eq(Expr, Expr),
    Lt(Expr, Expr),
    Le(Expr, Expr),
    And(Box<Pred>, Box<Pred>),
    Or(Box<Pred>, Box<Pred>),
    Not(Box<Pred>),
}

impl Pred {
    pub fn and(a: Pred, b: Pred) -> Self {
        Pred::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Pred, b: Pred) -> Self {
        Pred::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Pred) -> Self {
        Pred::Not(Box::new(a))
    }

    /// Conjunction of all items; `True` when empty.
    pub fn all(items: impl IntoIterator<Item = Pred>) -> Self {
        items.into_iter().reduce(Pred::and).unwrap_or(Pred::True)
    }

    /// Disjunction of all items; `False` when empty.
    pub fn any(items: impl IntoIterator<Item = Pred>) -> Self {
        items.into_iter().reduce(Pred::or).unwrap_or(Pred::False)
    }

    pub fn holds(&self, space: &StateSpace, state: StateId) -> Result<bool> {
        Ok(match self {
            Pred::True => true,
            Pred::False => false,
            Pred::Eq(a, b) => a.eval(space, state)? == b.eval(space, state)?,
            Pred::Lt(a, b) => a.eval(space, state)? < b.eval(space, state)?,
            Pred::Le(a, b) => a.eval(space, state)? <= b.eval(space, state)?,
            Pred::And(a, b) => a.holds(space, state)? && b.holds(space, state)?,
            Pred::Or(a, b) => a.holds(space, state)? || b.holds(space, state)?,
            Pred::Not(a) => !a.holds(space, state)?,
        })
    }

    /// The set of states satisfying the predicate.
    pub fn denote(&self, space: &StateSpace) -> Result<StateSet> {
        Ok(match self {
            Pred::True => StateSet::full(space.size()),
            Pred::False => StateSet::empty(space.size()),
            Pred::And(a, b) => a.denote(space)?.intersection(&b.denote(space)?),
            Pred::Or(a, b) => a.denote(space)?.union(&b.denote(space)?),
            Pred::Not(a) => a.denote(space)?.complement(),
            _ => {
                let mut set = StateSet::empty(space.size());
                for s in space.states() {
                    if self.holds(space, s)? {
                        set.insert(s);
                    }
                }
                set
            }
        })
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Pred::True | Pred::False => {}
            Pred::Eq(a, b) | Pred::Lt(a, b) | Pred::Le(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Pred::And(a, b) | Pred::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Pred::Not(a) => a.collect_vars(out),
        }
    }

    /// `P[x/e]`: every free occurrence of `x` replaced by `e`.
    pub fn subst(&self, x: &str, e: &Expr) -> Pred {
        match self {
            Pred::True | Pred::False => self.clone(),
            Pred::Eq(a, b) => Pred::Eq(a.subst(x, e), b.subst(x, e)),
            Pred::Lt(a, b) => Pred::Lt(a.subst(x, e), b.subst(x, e)),
            Pred::Le(a, b) => Pred::Le(a.subst(x, e), b.subst(x, e)),
            Pred::And(a, b) => Pred::and(a.subst(x, e), b.subst(x, e)),
            Pred::Or(a, b) => Pred::or(a.subst(x, e), b.subst(x, e)),
            Pred::Not(a) => Pred::not(a.subst(x, e)),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Command {
    Skip,
    Assign(String, Expr),
    Seq(Box<Command>, Box<Command>),
    Choice(Box<Command>, Box<Command>),
    If(Pred, Box<Command>, Box<Command>),
    While(Pred, Box<Command>),
    Par(Box<Command>, Box<Command>),
    /// `c*`: any number of sequential repetitions.
    Star(Box<Command>),
    Atomic(Relation),
    Test(Pred),
}

impl fmt::Debug for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Skip => f.write_str("Skip"),
            Command::Assign(x, e) => write!(f, "Assign({x}, {e:?})"),
            Command::Seq(a, b) => write!(f, "Seq({a:?}, {b:?})"),
            Command::Choice(a, b) => write!(f, "Choice({a:?}, {b:?})"),
            Command::If(p, a, b) => write!(f, "If({p:?}, {a:?}, {b:?})"),
            Command::While(p, a) => write!(f, "While({p:?}, {a:?})"),
            Command::Par(a, b) => write!(f, "Par({a:?}, {b:?})"),
            Command::Star(a) => write!(f, "Star({a:?})"),
            Command::Atomic(r) => write!(f, "Atomic(<{} pairs>)", r.len()),
            Command::Test(p) => write!(f, "Test({p:?})"),
        }
    }
}

impl Command {
    pub fn assign(x: &str, e: Expr) -> Self {
        Command::Assign(x.to_owned(), e)
    }

    pub fn seq(a: Command, b: Command) -> Self {
        Command::Seq(Box::new(a), Box::new(b))
    }

    pub fn choice(a: Command, b: Command) -> Self {
        Command::Choice(Box::new(a), Box::new(b))
    }

    pub fn if_else(p: Pred, a: Command, b: Command) -> Self {
        Command::If(p, Box::new(a), Box::new(b))
    }

    pub fn while_do(p: Pred, body: Command) -> Self {
        Command::While(p, Box::new(body))
    }

    pub fn par(a: Command, b: Command) -> Self {
        Command::Par(Box::new(a), Box::new(b))
    }

    pub fn star(body: Command) -> Self {
        Command::Star(Box::new(body))
    }

    /// Fails on the first variable the space does not know.
    pub fn validate(&self, space: &StateSpace) -> Result<()> {
        let check = |vars: BTreeSet<String>| -> Result<()> {
            for v in vars {
                space.var_index(&v)?;
            }
            Ok(())
        };
        match self {
            Command::Skip => Ok(()),
            Command::Assign(x, e) => {
                space.var_index(x)?;
                check(e.vars())
            }
            Command::Seq(a, b) | Command::Choice(a, b) | Command::Par(a, b) => {
                a.validate(space)?;
                b.validate(space)
            }
            Command::If(p, a, b) => {
                check(p.vars())?;
                a.validate(space)?;
                b.validate(space)
            }
            Command::While(p, a) => {
                check(p.vars())?;
                a.validate(space)
            }
            Command::Star(a) => a.validate(space),
            Command::Atomic(r) => {
                if r.universe_size() == space.size() {
                    Ok(())
                } else {
                    Err(Error::SpaceMismatch {
                        left: r.universe_size(),
                        right: space.size(),
                    })
                }
            }
            Command::Test(p) => check(p.vars()),
        }
    }
}

/// `test(P) = ⟨Id_P⟩`.
pub fn test_lang(p: &StateSet, bound: Bound) -> Lang {
    Lang::letters(p.iter().map(|s| Letter::new(s, s)), bound)
}

/// Every nonempty word of length `≤ L` whose last post-state lies in `p`.
pub fn end_lang(p: &StateSet, bound: Bound) -> Lang {
    let all = Alphabet::full(p.universe_size()).universe(bound);
    all.retain(|w| w.last().is_some_and(|l| p.contains(l.post)))
}

/// All contractions of `w` under `u(a,b)(b,c)v ↦ u(a,c)v`.
pub fn mumble_word(w: &Word) -> BTreeSet<Word> {
    let mut seen = BTreeSet::new();
    let mut todo = vec![w.clone()];
    seen.insert(w.clone());
    while let Some(cur) = todo.pop() {
        let ls = cur.letters();
        for i in 1..ls.len() {
            if ls[i - 1].chains(ls[i]) {
                let mut v = Vec::with_capacity(ls.len() - 1);
                v.extend_from_slice(&ls[..i - 1]);
                v.push(Letter::new(ls[i - 1].pre, ls[i].post));
                v.extend_from_slice(&ls[i + 1..]);
                let next = Word(v);
                if seen.insert(next.clone()) {
                    todo.push(next);
                }
            }
        }
    }
    seen
}

pub fn mumble_close(x: &Lang) -> Lang {
    let mut words = BTreeSet::new();
    for w in x.iter() {
        if words.contains(w) {
            continue;
        }
        words.extend(mumble_word(w));
    }
    Lang::new(words, x.bound())
}

/// `⟨Id⟩* ∥ X =π ⟨Id⟩* ∥ Y` over `n` states.
pub fn stutter_eq(x: &Lang, y: &Lang, states: usize, bound: Bound) -> Result<bool> {
    let id = Relation::identity(states);
    let sx = rely_interleave(&id, x, bound);
    let sy = rely_interleave(&id, y, bound);
    Ok(leq_pi(&sx, &sy)? && leq_pi(&sy, &sx)?)
}

/// The atomic update `x ← v` as a relation.
pub fn update_relation(space: &StateSpace, var: usize, value: u32) -> Relation {
    let n = space.size();
    Relation::from_pairs(n, space.states().map(|s| (s, space.with_value(s, var, value))))
}

/// `x := e = ⋃v. test{σ. eval(σ,e) = v} · x ← v`, mumble closed.
pub fn assign_lang(space: &StateSpace, x: &str, e: &Expr, bound: Bound) -> Result<Lang> {
    let var = space.var_index(x)?;
    // the test and update letters contract to one, so build them at length
    // two even under a bound of one
    let outer = bound;
    let bound = Bound::new(bound.get().max(2))?;
    let mut words = BTreeSet::new();
    for v in 0..space.domain() {
        let mut fiber = StateSet::empty(space.size());
        for s in space.states() {
            if e.eval(space, s)? == v {
                fiber.insert(s);
            }
        }
        if fiber.is_empty() {
            continue;
        }
        let part = concat(
            &test_lang(&fiber, bound),
            &lift(&update_relation(space, var, v), bound),
            bound,
        );
        words.extend(part.words().iter().cloned());
    }
    Ok(mumble_close(&Lang::new(words, bound)).with_bound(outer))
}

/// Compositional denotation, mumble closed at every node. Only usable for
/// small spaces and bounds: languages are materialized word by word.
pub fn denote(space: &StateSpace, c: &Command, bound: Bound) -> Result<Lang> {
    c.validate(space)?;
    let lang = match c {
        Command::Skip => Lang::one(bound),
        Command::Assign(x, e) => assign_lang(space, x, e, bound)?,
        Command::Seq(a, b) => concat(&denote(space, a, bound)?, &denote(space, b, bound)?, bound),
        Command::Choice(a, b) => denote(space, a, bound)?.union(&denote(space, b, bound)?)?,
        Command::If(p, a, b) => {
            let set = p.denote(space)?;
            let yes = concat(&test_lang(&set, bound), &denote(space, a, bound)?, bound);
            let no = concat(&test_lang(&set.complement(), bound), &denote(space, b, bound)?, bound);
            yes.union(&no)?
        }
        Command::While(p, body) => {
            let set = p.denote(space)?;
            let step = concat(&test_lang(&set, bound), &denote(space, body, bound)?, bound);
            concat(&star(&step, bound), &test_lang(&set.complement(), bound), bound)
        }
        Command::Par(a, b) => shuffle(&denote(space, a, bound)?, &denote(space, b, bound)?, bound),
        Command::Star(a) => star(&denote(space, a, bound)?, bound),
        Command::Atomic(r) => lift(r, bound),
        Command::Test(p) => test_lang(&p.denote(space)?, bound),
    };
    Ok(mumble_close(&lang))
}

fn var_indices(space: &StateSpace, vars: &[&str]) -> Result<Vec<usize>> {
    vars.iter().map(|v| space.var_index(v)).collect()
}

/// `{(σ,σ′). ∀v ∈ V. σ(v) = σ′(v)}`.
pub fn unchanged(space: &StateSpace, vars: &[&str]) -> Result<Relation> {
    let idx = var_indices(space, vars)?;
    Ok(Relation::from_fn(space.size(), |a, b| {
        idx.iter().all(|&i| space.value(a, i) == space.value(b, i))
    }))
}

/// `{(σ,σ′). P(σ) ⟹ P(σ′)}`.
pub fn preserves(p: &StateSet) -> Relation {
    Relation::from_fn(p.universe_size(), |a, b| !p.contains(a) || p.contains(b))
}

pub fn increasing(space: &StateSpace, var: &str) -> Result<Relation> {
    let i = space.var_index(var)?;
    Ok(Relation::from_fn(space.size(), |a, b| space.value(a, i) <= space.value(b, i)))
}

pub fn decreasing(space: &StateSpace, var: &str) -> Result<Relation> {
    let i = space.var_index(var)?;
    Ok(Relation::from_fn(space.size(), |a, b| space.value(a, i) >= space.value(b, i)))
}

/// Variables of the space not in `vars`.
pub fn complement_vars<'a>(space: &'a StateSpace, vars: &[&str]) -> Vec<&'a str> {
    space
        .variables()
        .iter()
        .map(String::as_str)
        .filter(|v| !vars.contains(v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: usize) -> Bound {
        Bound::new(n).unwrap()
    }

    fn xy(n: u32) -> StateSpace {
        StateSpace::new(&["x", "y"], n).unwrap()
    }

    fn w(pairs: &[(u32, u32)]) -> Word {
        Word::from_pairs(pairs)
    }

    fn eq(v: &str, c: u32) -> Pred {
        Pred::Eq(Expr::var(v), Expr::Const(c))
    }

    #[test]
    fn eval_examples() {
        let s = StateSpace::new(&["x"], 8).unwrap();
        let two = s.state_of(&[2]);
        assert_eq!(Expr::Const(11).eval(&s, two).unwrap(), 3);
        assert_eq!(Expr::var("x").eval(&s, two).unwrap(), 2);
        assert_eq!(Expr::add(Expr::var("x"), Expr::Const(2)).eval(&s, two).unwrap(), 4);
        assert_eq!(Expr::sub(Expr::Const(1), Expr::var("x")).eval(&s, two).unwrap(), 7);
        assert!(matches!(Expr::var("q").eval(&s, two), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn test_lang_examples() {
        let s = xy(2);
        let bound = b(2);
        let all = test_lang(&Pred::True.denote(&s).unwrap(), bound);
        assert_eq!(all, lift(&Relation::identity(4), bound));
        assert!(test_lang(&Pred::False.denote(&s).unwrap(), bound).is_empty());
        let p = eq("x", 1).denote(&s).unwrap();
        assert!(test_lang(&p, bound).leq(&all).unwrap());
    }

    #[test]
    fn end_lang_examples() {
        let s = xy(2);
        let bound = b(2);
        let p = eq("x", 1).denote(&s).unwrap();
        let q = eq("y", 0).denote(&s).unwrap();
        assert!(test_lang(&p, bound).leq(&end_lang(&p, bound)).unwrap());
        assert!(end_lang(&StateSet::empty(4), bound).is_empty());
        let lhs = concat(&end_lang(&p, bound), &test_lang(&q, bound), bound);
        assert!(leq_pi(&lhs, &end_lang(&p.intersection(&q), bound)).unwrap());
        assert!(!end_lang(&p, bound).contains_empty());
    }

    #[test]
    fn mumble_examples() {
        assert_eq!(mumble_word(&w(&[(1, 2)])).len(), 1);
        let m = mumble_word(&w(&[(1, 2), (2, 3)]));
        assert_eq!(m, [w(&[(1, 2), (2, 3)]), w(&[(1, 3)])].into_iter().collect());
        let x = Lang::new([w(&[(0, 1), (1, 0), (0, 0)])], b(3));
        let once = mumble_close(&x);
        assert_eq!(mumble_close(&once), once);
        assert!(mumble_close(&Lang::zero(b(3))).is_empty());
    }

    #[test]
    fn test_laws_under_mumble_and_stutter() {
        let s = xy(2);
        let bound = b(3);
        let p = eq("x", 1).denote(&s).unwrap();
        let q = eq("y", 1).denote(&s).unwrap();
        let pq = test_lang(&p.intersection(&q), bound);
        let seq = concat(&test_lang(&p, bound), &test_lang(&q, bound), bound);
        assert!(leq_pi(&pq, &mumble_close(&seq)).unwrap());
        assert!(!leq_pi(&pq, &seq).unwrap());
        let id = Relation::identity(4);
        let lhs = rely_interleave(&id, &seq, bound);
        let rhs = rely_interleave(&id, &pq, bound);
        assert!(leq_pi(&lhs, &rhs).unwrap());
    }

    #[test]
    fn stutter_examples() {
        let bound = b(3);
        let x = Lang::new([w(&[(0, 1)])], bound);
        assert!(stutter_eq(&x, &x, 2, bound).unwrap());
        // ⟨Id⟩*∥test(true) sits below ⟨Id⟩*∥1 and the two differ only in ε
        let id = Relation::identity(2);
        let one = rely_interleave(&id, &Lang::one(bound), bound);
        let t = rely_interleave(&id, &lift(&id, bound), bound);
        assert!(leq_pi(&t, &one).unwrap());
        assert_eq!(one.retain(|w| !w.is_empty()), t);
        assert!(!stutter_eq(&Lang::one(bound), &lift(&id, bound), 2, bound).unwrap());
    }

    #[test]
    fn assignment_examples() {
        let s = StateSpace::new(&["x"], 6).unwrap();
        let bound = b(3);
        let c = assign_lang(&s, "x", &Expr::Const(3), bound).unwrap();
        let three = s.state_of(&[3]);
        assert!(c.iter().filter(|w| w.is_consistent()).all(|w| w.last().unwrap().post == three));

        let inc = assign_lang(&s, "x", &Expr::add(Expr::var("x"), Expr::Const(2)), bound).unwrap();
        let from2 = s.state_of(&[2]);
        let four = s.state_of(&[4]);
        let reached: BTreeSet<_> = inc
            .iter()
            .filter(|w| w.is_consistent() && w.first().unwrap().pre == from2)
            .map(|w| w.last().unwrap().post)
            .collect();
        assert_eq!(reached, [four].into_iter().collect());
        assert!(inc.contains(&w(&[(from2, four)])));
    }

    #[test]
    fn assignment_guarantee_shape() {
        let s = xy(3);
        let bound = b(3);
        let c = assign_lang(&s, "x", &Expr::add(Expr::var("y"), Expr::Const(1)), bound).unwrap();
        let g = unchanged(&s, &complement_vars(&s, &["x"])).unwrap();
        assert!(c.iter().all(|w| w.letters().iter().all(|l| g.contains(l.pre, l.post))));
    }

    #[test]
    fn denote_examples() {
        let s = xy(2);
        let bound = b(3);
        assert_eq!(denote(&s, &Command::Skip, bound).unwrap(), Lang::one(bound));
        let body = Command::assign("x", Expr::Const(1));
        let lw = denote(&s, &Command::while_do(Pred::False, body.clone()), bound).unwrap();
        assert_eq!(lw, test_lang(&StateSet::full(4), bound));
        let a = denote(&s, &Command::If(Pred::True, Box::new(body.clone()), Box::new(Command::Skip)), bound).unwrap();
        let b2 = denote(&s, &Command::seq(Command::Test(Pred::True), body), bound).unwrap();
        assert!(stutter_eq(&a, &b2, 4, bound).unwrap());
    }

    #[test]
    fn vocabulary_examples() {
        let s = xy(3);
        let n = s.size();
        assert_eq!(unchanged(&s, &[]).unwrap(), Relation::top(n));
        assert_eq!(unchanged(&s, &["x", "y"]).unwrap(), Relation::identity(n));
        assert_eq!(preserves(&StateSet::full(n)), Relation::top(n));
        assert_eq!(preserves(&StateSet::empty(n)), Relation::top(n));
        let p = eq("x", 2).denote(&s).unwrap();
        assert!(Relation::identity(n).is_subset(&preserves(&p)));
        let ux = unchanged(&s, &["x"]).unwrap();
        let both = increasing(&s, "x").unwrap().intersection(&decreasing(&s, "x").unwrap());
        assert_eq!(both, ux);
    }

    #[test]
    fn substitution_examples() {
        let s = StateSpace::new(&["x", "y"], 6).unwrap();
        let post = eq("x", 4);
        let pre = post.subst("x", &Expr::add(Expr::var("x"), Expr::Const(2)));
        assert_eq!(pre.denote(&s).unwrap(), eq("x", 2).denote(&s).unwrap());
        assert_eq!(post.subst("x", &Expr::var("x")), post);
        assert_eq!(eq("y", 1).subst("x", &Expr::Const(3)), eq("y", 1));
    }
}
