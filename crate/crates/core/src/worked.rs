//! Packaged outlines: the parallel assignment `x := x + 2 ∥ y := z` and
//! the FINDP even/odd search.

use crate::automaton::GuaranteeMode;
use crate::error::{Error, Result};
use crate::lang::Bound;
use crate::program::{decreasing, unchanged, Command, Expr, Pred};
use crate::state::{Relation, StateSpace};
use crate::verifier::{check_outline, OutlineReport, ProofNode, Quintuple, Rule, Spec};

fn var(x: &str) -> Expr {
    Expr::var(x)
}

fn eq(x: &str, c: u32) -> Pred {
    Pred::Eq(var(x), Expr::Const(c))
}

fn lt(a: Expr, b: Expr) -> Pred {
    Pred::Lt(a, b)
}

pub fn parallel_assignment_space() -> Result<StateSpace> {
    StateSpace::new(&["x", "y", "z"], 8)
}

pub fn parallel_assignment_program() -> Command {
    Command::par(
        Command::assign("x", Expr::add(var("x"), Expr::Const(2))),
        Command::assign("y", var("z")),
    )
}

/// Weakening over Parallel over two brute-force leaves. `post_x` is the
/// value promised for `x`; 4 is correct.
pub fn parallel_assignment_outline(space: &StateSpace, post_x: u32) -> Result<ProofNode> {
    let n = space.size();
    let end = |p: Pred| -> Result<Spec> { Ok(Spec::end(p.denote(space)?)) };
    let ux = unchanged(space, &["x"])?;
    let uyz = unchanged(space, &["y", "z"])?;
    let (x, y) = match parallel_assignment_program() {
        Command::Par(a, b) => (*a, *b),
        _ => unreachable!(),
    };

    let left = Quintuple {
        rely: ux.clone(),
        guar: uyz.clone(),
        pre: end(eq("x", 2))?,
        post: end(eq("x", post_x))?,
        prog: x,
    };
    let right = Quintuple {
        rely: uyz.clone(),
        guar: ux.clone(),
        pre: end(Pred::and(eq("y", 2), eq("z", 5)))?,
        post: end(Pred::and(eq("y", 5), eq("z", 5)))?,
        prog: y,
    };
    let par = Quintuple {
        rely: ux.intersection(&uyz),
        guar: uyz.union(&ux),
        pre: left.pre.meet(&right.pre),
        post: left.post.meet(&right.post),
        prog: parallel_assignment_program(),
    };
    let top = Quintuple {
        rely: Relation::identity(n),
        guar: Relation::top(n),
        pre: par.pre.clone(),
        post: par.post.clone(),
        prog: parallel_assignment_program(),
    };
    Ok(ProofNode::new(
        Rule::Weakening,
        top,
        vec![ProofNode::new(
            Rule::Parallel,
            par,
            vec![ProofNode::brute_force(left), ProofNode::brute_force(right)],
        )],
    ))
}

pub const FINDP_VARS: [&str; 5] = ["fA", "fB", "iA", "iB", "f"];

/// `N = len + 2` keeps `i + 2` from wrapping while the loops run.
pub fn findp_default_domain(len: usize) -> u32 {
    (len as u32 + 2).max(2)
}

/// The FINDP instance for one predicate pattern: `hits[k]` says whether
/// `P(array[k])` holds.
pub struct Findp {
    pub hits: Vec<bool>,
    pub space: StateSpace,
}

impl Findp {
    pub fn new(hits: Vec<bool>, domain: u32) -> Result<Self> {
        if domain < hits.len() as u32 + 2 {
            return Err(Error::Config(format!(
                "domain {domain} is too small for an array of length {}; need at least {}",
                hits.len(),
                hits.len() + 2
            )));
        }
        let space = StateSpace::new(&FINDP_VARS, domain)?;
        Ok(Findp { hits, space })
    }

    pub fn len(&self) -> u32 {
        self.hits.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.hits.is_empty()
    }

    fn hit_indices(&self, parity: Option<u32>) -> Vec<u32> {
        (0..self.len())
            .filter(|&k| self.hits[k as usize] && parity.is_none_or(|p| k % 2 == p))
            .collect()
    }

    /// `P(array[e])`.
    fn hit(&self, e: &str) -> Pred {
        Pred::any(self.hit_indices(None).into_iter().map(|k| eq(e, k)))
    }

    /// No hit of the given parity strictly below `e`.
    fn none_below(&self, parity: Option<u32>, below: impl Fn(u32) -> Pred) -> Pred {
        Pred::all(self.hit_indices(parity).into_iter().map(|k| Pred::not(below(k))))
    }

    fn searcher(&self, i: &str, f: &str, start: u32) -> Command {
        let guard = Pred::and(lt(var(i), var("fA")), lt(var(i), var("fB")));
        let body = Command::if_else(
            self.hit(i),
            Command::assign(f, var(i)),
            Command::assign(i, Expr::add(var(i), Expr::Const(2))),
        );
        Command::seq(Command::assign(i, Expr::Const(start)), Command::while_do(guard, body))
    }

    fn init(&self) -> Command {
        Command::seq(
            Command::assign("fA", Expr::Const(self.len())),
            Command::assign("fB", Expr::Const(self.len())),
        )
    }

    fn finish(&self) -> Command {
        Command::if_else(
            lt(var("fA"), var("fB")),
            Command::assign("f", var("fA")),
            Command::assign("f", var("fB")),
        )
    }

    pub fn program(&self) -> Command {
        Command::seq(
            Command::seq(
                self.init(),
                Command::par(self.searcher("iA", "fA", 0), self.searcher("iB", "fB", 1)),
            ),
            self.finish(),
        )
    }

    /// What searcher `f` (parity `p`) establishes.
    fn searcher_post(&self, f: &str, p: u32) -> Pred {
        let own = Pred::or(
            eq(f, self.len()),
            Pred::and(self.hit(f), self.none_below(Some(p), |k| lt(Expr::Const(k), var(f)))),
        );
        let shared = self.none_below(Some(p), |k| {
            Pred::and(lt(Expr::Const(k), var("fA")), lt(Expr::Const(k), var("fB")))
        });
        Pred::and(own, shared)
    }

    /// `leastP(f) ∨ f = len`.
    pub fn goal(&self) -> Pred {
        let least = Pred::and(self.hit("f"), self.none_below(None, |k| lt(Expr::Const(k), var("f"))));
        Pred::or(least, eq("f", self.len()))
    }

    /// Sequential(Sequential(init, Weakening(Parallel(A, B))), finish),
    /// with every leaf discharged by brute force.
    pub fn outline(&self) -> Result<ProofNode> {
        let s = &self.space;
        let n = s.size();
        let end = |p: Pred| -> Result<Spec> { Ok(Spec::end(p.denote(s)?)) };
        let id = Relation::identity(n);
        let top = Relation::top(n);
        let q = |pre: Spec, post: Spec, prog: Command| Quintuple {
            rely: id.clone(),
            guar: top.clone(),
            pre,
            post,
            prog,
        };

        let start = end(Pred::True)?;
        let ready = end(Pred::and(eq("fA", self.len()), eq("fB", self.len())))?;
        let ga = unchanged(s, &["iB", "fB", "f"])?.intersection(&decreasing(s, "fA")?);
        let gb = unchanged(s, &["iA", "fA", "f"])?.intersection(&decreasing(s, "fB")?);
        let leaf_a = Quintuple {
            rely: gb.clone(),
            guar: ga.clone(),
            pre: ready.clone(),
            post: end(self.searcher_post("fA", 0))?,
            prog: self.searcher("iA", "fA", 0),
        };
        let leaf_b = Quintuple {
            rely: ga.clone(),
            guar: gb.clone(),
            pre: ready.clone(),
            post: end(self.searcher_post("fB", 1))?,
            prog: self.searcher("iB", "fB", 1),
        };
        let both = leaf_a.post.meet(&leaf_b.post);
        let par_prog = Command::par(leaf_a.prog.clone(), leaf_b.prog.clone());
        let par = Quintuple {
            rely: leaf_a.rely.intersection(&leaf_b.rely),
            guar: leaf_a.guar.union(&leaf_b.guar),
            pre: leaf_a.pre.meet(&leaf_b.pre),
            post: both.clone(),
            prog: par_prog.clone(),
        };
        let weakened = ProofNode::new(
            Rule::Weakening,
            q(ready.clone(), both.clone(), par_prog.clone()),
            vec![ProofNode::new(
                Rule::Parallel,
                par,
                vec![ProofNode::brute_force(leaf_a), ProofNode::brute_force(leaf_b)],
            )],
        );
        let init = ProofNode::brute_force(q(start.clone(), ready, self.init()));
        let front_prog = Command::seq(self.init(), par_prog);
        let front = ProofNode::new(
            Rule::Sequential,
            q(start.clone(), both.clone(), front_prog),
            vec![init, weakened],
        );
        let finish = ProofNode::brute_force(q(both, end(self.goal())?, self.finish()));
        Ok(ProofNode::new(
            Rule::Sequential,
            q(start, end(self.goal())?, self.program()),
            vec![front, finish],
        ))
    }

    pub fn check(&self, bound: Bound) -> Result<OutlineReport> {
        check_outline(&self.space, &self.outline()?, bound, GuaranteeMode::Contextual)
    }
}

/// FINDP over concrete array values and a predicate on a variable `v`.
pub fn findp_scaled(array: &[u32], pred: &Pred, bound: Bound, domain: Option<u32>) -> Result<OutlineReport> {
    if array.len() > 3 {
        return Err(Error::Config(format!("arrays longer than 3 are out of reach (got {})", array.len())));
    }
    let value_domain = array.iter().copied().max().map_or(2, |m| (m + 1).max(2));
    let values = StateSpace::new(&["v"], value_domain)?;
    let hits = array
        .iter()
        .map(|&a| pred.holds(&values, values.state_of(&[a])))
        .collect::<Result<Vec<_>>>()?;
    let n = domain.unwrap_or_else(|| findp_default_domain(array.len()));
    Findp::new(hits, n)?.check(bound)
}
