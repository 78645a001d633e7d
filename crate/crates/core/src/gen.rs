//! Seeded random languages, relations, predicates and programs for the law
//! sweeps. The same seed always yields the same instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lang::{Bound, Lang, Letter, Word};
use crate::program::{Command, Expr, Pred};
use crate::state::{Relation, StateId, StateSet, StateSpace};

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn state(&mut self, states: usize) -> StateId {
        self.below(states) as StateId
    }

    pub fn letter(&mut self, states: usize) -> Letter {
        Letter::new(self.state(states), self.state(states))
    }

    /// A word of length `len`; consistent with probability one half.
    pub fn word(&mut self, states: usize, len: usize) -> Word {
        let chained = self.chance(0.5);
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        for _ in 0..len {
            let pre = match letters.last() {
                Some(l) if chained => l.post,
                _ => self.state(states),
            };
            letters.push(Letter::new(pre, self.state(states)));
        }
        Word(letters)
    }

    /// Up to six words of length `≤ L`, biased towards short ones.
    pub fn lang(&mut self, states: usize, bound: Bound) -> Lang {
        let count = self.below(7);
        let mut words = Vec::with_capacity(count);
        for _ in 0..count {
            let len = self.below(bound.get() + 1).min(self.below(bound.get() + 1) + 1);
            words.push(self.word(states, len));
        }
        Lang::new(words, bound)
    }

    /// Each pair present with a density drawn per relation.
    pub fn relation(&mut self, states: usize) -> Relation {
        let density = [0.0, 0.2, 0.4, 0.7, 1.0][self.below(5)];
        let mut r = Relation::empty(states);
        for a in 0..states as StateId {
            for b in 0..states as StateId {
                if self.rng.gen_bool(density) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    pub fn state_set(&mut self, states: usize) -> StateSet {
        let density = [0.25, 0.5, 0.75][self.below(3)];
        StateSet::from_fn(states, |_| self.rng.gen_bool(density))
    }

    pub fn superset(&mut self, set: &StateSet) -> StateSet {
        set.union(&self.state_set(set.universe_size()))
    }

    pub fn subset(&mut self, set: &StateSet) -> StateSet {
        set.intersection(&self.state_set(set.universe_size()))
    }

    pub fn super_relation(&mut self, r: &Relation) -> Relation {
        if self.chance(0.5) {
            r.clone()
        } else {
            r.union(&self.relation(r.universe_size()))
        }
    }

    pub fn sub_relation(&mut self, r: &Relation) -> Relation {
        if self.chance(0.5) {
            r.clone()
        } else {
            r.intersection(&self.relation(r.universe_size()))
        }
    }

    pub fn var<'a>(&mut self, space: &'a StateSpace) -> &'a str {
        space.variables().choose(&mut self.rng).expect("at least one variable")
    }

    pub fn expr(&mut self, space: &StateSpace, depth: usize) -> Expr {
        let leaf = depth == 0 || self.chance(0.5);
        if leaf {
            return if self.chance(0.5) {
                Expr::Const(self.rng.gen_range(0..space.domain()))
            } else {
                Expr::var(self.var(space))
            };
        }
        let a = self.expr(space, depth - 1);
        let b = self.expr(space, depth - 1);
        match self.below(3) {
            0 => Expr::add(a, b),
            1 => Expr::sub(a, b),
            _ => Expr::mul(a, b),
        }
    }

    pub fn pred(&mut self, space: &StateSpace, depth: usize) -> Pred {
        let leaf = depth == 0 || self.chance(0.4);
        if leaf {
            let a = self.expr(space, 1);
            let b = self.expr(space, 1);
            return match self.below(7) {
                0 => Pred::True,
                1 => Pred::False,
                2 | 3 => Pred::Eq(a, b),
                4 | 5 => Pred::Lt(a, b),
                _ => Pred::Le(a, b),
            };
        }
        match self.below(3) {
            0 => Pred::and(self.pred(space, depth - 1), self.pred(space, depth - 1)),
            1 => Pred::or(self.pred(space, depth - 1), self.pred(space, depth - 1)),
            _ => Pred::not(self.pred(space, depth - 1)),
        }
    }

    /// A small program; loops are rare and shallow.
    pub fn command(&mut self, space: &StateSpace, depth: usize) -> Command {
        if depth == 0 || self.chance(0.35) {
            return match self.below(6) {
                0 => Command::Skip,
                1 => Command::Test(self.pred(space, 1)),
                _ => Command::assign(self.var(space), self.expr(space, 1)),
            };
        }
        let d = depth - 1;
        match self.below(7) {
            0 | 1 => Command::seq(self.command(space, d), self.command(space, d)),
            2 => Command::choice(self.command(space, d), self.command(space, d)),
            3 => Command::if_else(self.pred(space, 1), self.command(space, d), self.command(space, d)),
            4 => Command::par(self.command(space, d), self.command(space, d)),
            5 => Command::star(self.command(space, d)),
            _ => Command::while_do(self.pred(space, 1), self.command(space, d)),
        }
    }
}
