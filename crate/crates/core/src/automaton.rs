//! Finite automata for command languages and the product explorer that
//! decides quintuples over the consistent, rely-interleaved, mumbled traces
//! of a program without materializing any language.
//!
//! Explorer nodes are `(control, state, in_run)`. `in_run` records that the
//! previous letter came from the program, so the next program step may be
//! contracted into it at no cost. Distances therefore count letters of the
//! shortest mumbled word, and a 0-1 BFS finds them exactly.

use std::collections::VecDeque;

use crate::error::Result;
use crate::lang::{Letter, Word};
use crate::program::{Command, Expr};
use crate::state::{Relation, StateId, StateSet, StateSpace};

/// The letters one automaton edge may emit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// `(σ,σ)` for σ in the set.
    Test(StateSet),
    /// `x ← v`: `(σ, σ[x ↦ v])` for every σ.
    Update { var: usize, value: u32 },
    Atomic(Relation),
}

impl Step {
    pub fn for_each_successor(&self, space: &StateSpace, s: StateId, mut f: impl FnMut(StateId)) {
        match self {
            Step::Test(set) => {
                if set.contains(s) {
                    f(s)
                }
            }
            Step::Update { var, value } => f(space.with_value(s, *var, *value)),
            Step::Atomic(r) => r.successors(s).for_each(f),
        }
    }

    pub fn relation(&self, space: &StateSpace) -> Relation {
        match self {
            Step::Test(set) => Relation::identity_on(set),
            Step::Update { var, value } => crate::program::update_relation(space, *var, *value),
            Step::Atomic(r) => r.clone(),
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            Step::Test(set) => set.is_empty(),
            Step::Update { .. } => false,
            Step::Atomic(r) => r.is_empty(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    /// Index into the step table; `None` is an ε-move.
    pub step: Option<usize>,
    pub to: usize,
}

/// A Thompson-style automaton with one start and one accepting node. Its
/// language, mumble closed, is the denotation of the command it came from.
#[derive(Debug, Clone)]
pub struct Nfa {
    steps: Vec<Step>,
    edges: Vec<Vec<Edge>>,
    start: usize,
    accept: usize,
}

impl Nfa {
    pub fn compile(space: &StateSpace, c: &Command) -> Result<Nfa> {
        c.validate(space)?;
        build(space, c)
    }

    pub fn nodes(&self) -> usize {
        self.edges.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accept(&self) -> usize {
        self.accept
    }

    pub fn edges(&self, q: usize) -> &[Edge] {
        &self.edges[q]
    }

    pub fn step(&self, i: usize) -> &Step {
        &self.steps[i]
    }

    fn single() -> Nfa {
        Nfa {
            steps: Vec::new(),
            edges: vec![Vec::new()],
            start: 0,
            accept: 0,
        }
    }

    fn atom(step: Step) -> Nfa {
        Nfa {
            steps: vec![step],
            edges: vec![vec![Edge { step: Some(0), to: 1 }], Vec::new()],
            start: 0,
            accept: 1,
        }
    }

    /// Copies `other` in; returns the node offset.
    fn absorb(&mut self, other: Nfa) -> usize {
        let node_off = self.edges.len();
        let step_off = self.steps.len();
        self.steps.extend(other.steps);
        for es in other.edges {
            self.edges.push(
                es.into_iter()
                    .map(|e| Edge {
                        step: e.step.map(|s| s + step_off),
                        to: e.to + node_off,
                    })
                    .collect(),
            );
        }
        node_off
    }

    fn node(&mut self) -> usize {
        self.edges.push(Vec::new());
        self.edges.len() - 1
    }

    fn eps(&mut self, from: usize, to: usize) {
        self.edges[from].push(Edge { step: None, to });
    }

    fn seq(a: Nfa, b: Nfa) -> Nfa {
        let (sa, aa) = (a.start, a.accept);
        let (sb, ab) = (b.start, b.accept);
        let mut out = a;
        let off = out.absorb(b);
        out.eps(aa, sb + off);
        out.start = sa;
        out.accept = ab + off;
        out
    }

    fn choice(a: Nfa, b: Nfa) -> Nfa {
        let mut out = Nfa {
            steps: Vec::new(),
            edges: Vec::new(),
            start: 0,
            accept: 0,
        };
        let s = out.node();
        let f = out.node();
        for part in [a, b] {
            let (ps, pa) = (part.start, part.accept);
            let off = out.absorb(part);
            out.eps(s, ps + off);
            out.eps(pa + off, f);
        }
        out.start = s;
        out.accept = f;
        out
    }

    fn star(body: Nfa) -> Nfa {
        let mut out = Nfa {
            steps: Vec::new(),
            edges: Vec::new(),
            start: 0,
            accept: 0,
        };
        let h = out.node();
        let (bs, ba) = (body.start, body.accept);
        let off = out.absorb(body);
        out.eps(h, bs + off);
        out.eps(ba + off, h);
        out.start = h;
        out.accept = h;
        out
    }

    fn product(a: Nfa, b: Nfa) -> Nfa {
        let nb = b.nodes();
        let step_off = a.steps.len();
        let mut steps = a.steps;
        steps.extend(b.steps);
        let mut edges = vec![Vec::new(); a.edges.len() * nb];
        for (qa, ea) in a.edges.iter().enumerate() {
            for (qb, eb) in b.edges.iter().enumerate() {
                let here = &mut edges[qa * nb + qb];
                for e in ea {
                    here.push(Edge {
                        step: e.step,
                        to: e.to * nb + qb,
                    });
                }
                for e in eb {
                    here.push(Edge {
                        step: e.step.map(|s| s + step_off),
                        to: qa * nb + e.to,
                    });
                }
            }
        }
        Nfa {
            steps,
            edges,
            start: a.start * nb + b.start,
            accept: a.accept * nb + b.accept,
        }
    }
}

fn assign(space: &StateSpace, x: &str, e: &Expr) -> Result<Nfa> {
    let var = space.var_index(x)?;
    let mut fibers = vec![StateSet::empty(space.size()); space.domain() as usize];
    for s in space.states() {
        fibers[e.eval(space, s)? as usize].insert(s);
    }
    let mut out = Nfa {
        steps: Vec::new(),
        edges: Vec::new(),
        start: 0,
        accept: 0,
    };
    let s = out.node();
    let f = out.node();
    for (v, fiber) in fibers.into_iter().enumerate() {
        if fiber.is_empty() {
            continue;
        }
        let mid = out.node();
        out.steps.push(Step::Test(fiber));
        out.edges[s].push(Edge {
            step: Some(out.steps.len() - 1),
            to: mid,
        });
        out.steps.push(Step::Update {
            var,
            value: v as u32,
        });
        out.edges[mid].push(Edge {
            step: Some(out.steps.len() - 1),
            to: f,
        });
    }
    out.start = s;
    out.accept = f;
    Ok(out)
}

fn build(space: &StateSpace, c: &Command) -> Result<Nfa> {
    Ok(match c {
        Command::Skip => Nfa::single(),
        Command::Assign(x, e) => assign(space, x, e)?,
        Command::Seq(a, b) => Nfa::seq(build(space, a)?, build(space, b)?),
        Command::Choice(a, b) => Nfa::choice(build(space, a)?, build(space, b)?),
        Command::If(p, a, b) => {
            let set = p.denote(space)?;
            let yes = Nfa::seq(Nfa::atom(Step::Test(set.complement())), build(space, b)?);
            let no = Nfa::seq(Nfa::atom(Step::Test(set)), build(space, a)?);
            Nfa::choice(no, yes)
        }
        Command::While(p, body) => {
            let set = p.denote(space)?;
            let step = Nfa::seq(Nfa::atom(Step::Test(set.clone())), build(space, body)?);
            Nfa::seq(Nfa::star(step), Nfa::atom(Step::Test(set.complement())))
        }
        Command::Star(body) => Nfa::star(build(space, body)?),
        Command::Par(a, b) => Nfa::product(build(space, a)?, build(space, b)?),
        Command::Atomic(r) => Nfa::atom(Step::Atomic(r.clone())),
        Command::Test(p) => Nfa::atom(Step::Test(p.denote(space)?)),
    })
}

/// Whether the precondition is a test (`(σ,σ)` only) or an end language
/// (any letter ending in the set).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecKind {
    Test,
    End,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuaranteeMode {
    /// Only steps the program takes in some consistent run from the
    /// precondition under the rely.
    Contextual,
    /// Every letter of every word of the program language, as in `x ≤ g`.
    Literal,
}

/// A violation and the length of the shortest word exhibiting it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub witness: Word,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Exploration {
    pub post: Option<Violation>,
    pub guarantee: Option<Violation>,
    /// Product nodes touched, for reporting.
    pub explored: usize,
}

const INF: u32 = u32::MAX;

#[derive(Clone, Copy)]
enum Via {
    Rely,
    NewLetter,
    Extend,
    Eps,
}

/// Everything the explorer needs besides the automaton.
pub struct Problem<'a> {
    pub space: &'a StateSpace,
    pub rely: &'a Relation,
    /// Effective guarantee relation (already mumble closed by the caller).
    pub guarantee: &'a Relation,
    pub pre_kind: SpecKind,
    pub pre: &'a StateSet,
    pub post_kind: SpecKind,
    pub post: &'a StateSet,
    pub mode: GuaranteeMode,
}

struct Graph<'a> {
    nfa: &'a Nfa,
    space: &'a StateSpace,
    rely: &'a Relation,
    states: usize,
}

impl Graph<'_> {
    fn id(&self, q: usize, s: StateId, f: usize) -> usize {
        (q * self.states + s as usize) * 2 + f
    }

    fn decode(&self, n: usize) -> (usize, StateId, usize) {
        let f = n % 2;
        let rest = n / 2;
        (rest / self.states, (rest % self.states) as StateId, f)
    }

    fn size(&self) -> usize {
        self.nfa.nodes() * self.states * 2
    }

    fn for_each_edge(&self, n: usize, mut visit: impl FnMut(usize, u32, Via)) {
        let (q, s, f) = self.decode(n);
        for t in self.rely.successors(s) {
            visit(self.id(q, t, 0), 1, Via::Rely);
        }
        for e in self.nfa.edges(q) {
            match e.step {
                None => visit(self.id(e.to, s, f), 0, Via::Eps),
                Some(i) => {
                    let (cost, via) = if f == 1 { (0, Via::Extend) } else { (1, Via::NewLetter) };
                    self.nfa
                        .step(i)
                        .for_each_successor(self.space, s, |t| visit(self.id(e.to, t, 1), cost, via));
                }
            }
        }
    }
}

struct Search {
    dist: Vec<u32>,
    link: Vec<u32>,
    via: Vec<u8>,
}

fn via_code(v: Via) -> u8 {
    v as u8
}

fn code_via(c: u8) -> Via {
    match c {
        0 => Via::Rely,
        1 => Via::NewLetter,
        2 => Via::Extend,
        _ => Via::Eps,
    }
}

fn zero_one_bfs(
    size: usize,
    sources: impl IntoIterator<Item = usize>,
    mut edges: impl FnMut(usize, &mut dyn FnMut(usize, u32, Via)),
) -> Search {
    let mut dist = vec![INF; size];
    let mut link = vec![INF; size];
    let mut via = vec![u8::MAX; size];
    let mut dq = VecDeque::new();
    for s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            dq.push_back(s);
        }
    }
    while let Some(n) = dq.pop_front() {
        let d = dist[n];
        edges(n, &mut |m, cost, v| {
            let nd = d + cost;
            if nd < dist[m] {
                dist[m] = nd;
                link[m] = n as u32;
                via[m] = via_code(v);
                if cost == 0 {
                    dq.push_front(m);
                } else {
                    dq.push_back(m);
                }
            }
        });
    }
    Search { dist, link, via }
}

/// Letters along a forward path ending at `n`, plus its start state.
fn forward_letters(g: &Graph<'_>, fwd: &Search, n: usize) -> (StateId, Vec<Letter>) {
    let mut chain = Vec::new();
    let mut cur = n;
    while fwd.link[cur] != INF {
        chain.push(cur);
        cur = fwd.link[cur] as usize;
    }
    let (_, s0, _) = g.decode(cur);
    let mut letters: Vec<Letter> = Vec::new();
    let mut prev = s0;
    for &m in chain.iter().rev() {
        let (_, s, _) = g.decode(m);
        match code_via(fwd.via[m]) {
            Via::Rely | Via::NewLetter => letters.push(Letter::new(prev, s)),
            Via::Extend => letters.last_mut().expect("extension follows a letter").post = s,
            Via::Eps => {}
        }
        prev = s;
    }
    (s0, letters)
}

/// Letters along the backward-search path from `n` to acceptance.
fn backward_letters(g: &Graph<'_>, bwd: &Search, n: usize, out: &mut Vec<Letter>) {
    let mut cur = n;
    let (_, mut prev, _) = g.decode(cur);
    while bwd.link[cur] != INF {
        let next = bwd.link[cur] as usize;
        let (_, s, _) = g.decode(next);
        match code_via(bwd.via[cur]) {
            Via::Rely | Via::NewLetter => out.push(Letter::new(prev, s)),
            Via::Extend => out.last_mut().expect("extension follows a letter").post = s,
            Via::Eps => {}
        }
        prev = s;
        cur = next;
    }
}

/// Explores `pre · (rely ∥ prog†)` without a length limit and reports the
/// shortest post and guarantee violations.
pub fn explore(nfa: &Nfa, pb: &Problem<'_>) -> Exploration {
    let g = Graph {
        nfa,
        space: pb.space,
        rely: pb.rely,
        states: pb.space.size(),
    };
    let sources: Vec<usize> = pb.pre.iter().map(|s| g.id(nfa.start(), s, 0)).collect();
    let fwd = zero_one_bfs(g.size(), sources, |n, visit| g.for_each_edge(n, visit));
    let explored = fwd.dist.iter().filter(|d| **d != INF).count();

    let mut out = Exploration {
        explored,
        ..Default::default()
    };
    out.post = post_violation(&g, pb, &fwd);
    out.guarantee = match pb.mode {
        GuaranteeMode::Contextual => contextual_guarantee(&g, pb, &fwd),
        GuaranteeMode::Literal => literal_guarantee(nfa, pb),
    };
    out
}

fn post_violation(g: &Graph<'_>, pb: &Problem<'_>, fwd: &Search) -> Option<Violation> {
    let mut best: Option<(u32, usize, bool)> = None;
    let many_states = g.states >= 2;
    for s in 0..g.states as StateId {
        for f in 0..2 {
            let n = g.id(g.nfa.accept(), s, f);
            let d = fwd.dist[n];
            if d == INF {
                continue;
            }
            let (bad, shifted) = match pb.post_kind {
                SpecKind::End => (!pb.post.contains(s), false),
                SpecKind::Test => {
                    if d >= 1 || !pb.post.contains(s) {
                        (true, false)
                    } else {
                        // a prefix letter (σ′,σ) with σ′ ≠ σ is not a test
                        (pb.pre_kind == SpecKind::End && many_states, true)
                    }
                }
            };
            if bad && best.is_none_or(|(bd, _, _)| d < bd) {
                best = Some((d, n, shifted));
            }
        }
    }
    let (d, n, shifted) = best?;
    let (s0, v) = forward_letters(g, fwd, n);
    let first = if shifted {
        Letter::new(if s0 == 0 { 1 } else { 0 }, s0)
    } else {
        Letter::new(s0, s0)
    };
    let mut letters = vec![first];
    letters.extend(v);
    debug_assert_eq!(letters.len(), d as usize + 1);
    Some(Violation {
        length: letters.len(),
        witness: Word(letters),
    })
}

/// Backward distances to acceptance, over nodes whose `(q,σ)` was reached.
fn backward(g: &Graph<'_>, fwd: &Search) -> Search {
    let nfa = g.nfa;
    let reached: Vec<bool> = (0..g.size() / 2)
        .map(|qs| fwd.dist[qs * 2] != INF || fwd.dist[qs * 2 + 1] != INF)
        .collect();
    let mut rev: Vec<Vec<(u32, u32, u8)>> = vec![Vec::new(); g.size()];
    for n in 0..g.size() {
        if !reached[n / 2] {
            continue;
        }
        g.for_each_edge(n, |m, cost, v| rev[m].push((n as u32, cost, via_code(v))));
    }
    let accepting: Vec<usize> = (0..g.states as StateId)
        .flat_map(|s| [g.id(nfa.accept(), s, 0), g.id(nfa.accept(), s, 1)])
        .filter(|&n| reached[n / 2])
        .collect();
    zero_one_bfs(g.size(), accepting, |n, visit| {
        for &(p, cost, v) in &rev[n] {
            visit(p as usize, cost, code_via(v));
        }
    })
}

fn contextual_guarantee(g: &Graph<'_>, pb: &Problem<'_>, fwd: &Search) -> Option<Violation> {
    let nfa = g.nfa;
    let bwd = backward(g, fwd);

    // (cost, from node, letter target node)
    let mut best: Option<(u32, usize, usize)> = None;
    for q in 0..nfa.nodes() {
        for s in 0..g.states as StateId {
            let n0 = g.id(q, s, 0);
            let n1 = g.id(q, s, 1);
            let (d, from) = if fwd.dist[n0] <= fwd.dist[n1] {
                (fwd.dist[n0], n0)
            } else {
                (fwd.dist[n1], n1)
            };
            if d == INF {
                continue;
            }
            for e in nfa.edges(q) {
                let Some(i) = e.step else { continue };
                nfa.step(i).for_each_successor(pb.space, s, |t| {
                    if pb.guarantee.contains(s, t) {
                        return;
                    }
                    let target = g.id(e.to, t, 0);
                    let rest = bwd.dist[target];
                    if rest == INF {
                        return;
                    }
                    let total = d + 1 + rest;
                    if best.is_none_or(|(bt, _, _)| total < bt) {
                        best = Some((total, from, target));
                    }
                });
            }
        }
    }
    let (_, from, target) = best?;
    let (s0, mut letters) = forward_letters(g, fwd, from);
    let (_, s, _) = g.decode(from);
    let (_, t, _) = g.decode(target);
    letters.push(Letter::new(s, t));
    backward_letters(g, &bwd, target, &mut letters);
    letters.insert(0, Letter::new(s0, s0));
    Some(Violation {
        length: letters.len(),
        witness: Word(letters),
    })
}

/// What a program can do from `pre` under `rely`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reach {
    /// States in which some run finishes.
    pub finals: StateSet,
    /// Program steps taken on runs that go on to finish.
    pub steps: Relation,
}

/// The strongest end-postcondition and the least guarantee a program
/// meets from `pre` under `rely`.
pub fn reach(nfa: &Nfa, space: &StateSpace, rely: &Relation, pre: &StateSet) -> Reach {
    let g = Graph {
        nfa,
        space,
        rely,
        states: space.size(),
    };
    let fwd = zero_one_bfs(g.size(), pre.iter().map(|s| g.id(nfa.start(), s, 0)), |n, visit| {
        g.for_each_edge(n, visit)
    });
    let bwd = backward(&g, &fwd);
    let mut finals = StateSet::empty(g.states);
    let mut steps = Relation::empty(g.states);
    for q in 0..nfa.nodes() {
        for s in 0..g.states as StateId {
            if fwd.dist[g.id(q, s, 0)] == INF && fwd.dist[g.id(q, s, 1)] == INF {
                continue;
            }
            if q == nfa.accept() {
                finals.insert(s);
            }
            for e in nfa.edges(q) {
                let Some(i) = e.step else { continue };
                nfa.step(i).for_each_successor(space, s, |t| {
                    if bwd.dist[g.id(e.to, t, 0)] != INF {
                        steps.insert(s, t);
                    }
                });
            }
        }
    }
    Reach { finals, steps }
}

/// Control-level shortest word lengths, ignoring states; edges whose step
/// emits nothing are dropped.
fn control_distances(nfa: &Nfa, reverse: bool) -> Vec<u32> {
    let n = nfa.nodes();
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for q in 0..n {
        for e in nfa.edges(q) {
            let cost = match e.step {
                None => 0,
                Some(i) if nfa.step(i).is_empty() => continue,
                Some(_) => 1,
            };
            if reverse {
                adj[e.to].push((q, cost));
            } else {
                adj[q].push((e.to, cost));
            }
        }
    }
    let source = if reverse { nfa.accept() } else { nfa.start() };
    let s = zero_one_bfs(n, [source], |q, visit| {
        for &(t, c) in &adj[q] {
            visit(t, c, Via::Eps);
        }
    });
    s.dist
}

fn literal_guarantee(nfa: &Nfa, pb: &Problem<'_>) -> Option<Violation> {
    let before = control_distances(nfa, false);
    let after = control_distances(nfa, true);
    let mut best: Option<(u32, usize, usize)> = None;
    for (q, &reach) in before.iter().enumerate() {
        for (k, e) in nfa.edges(q).iter().enumerate() {
            let Some(i) = e.step else { continue };
            if reach == INF || after[e.to] == INF {
                continue;
            }
            let total = reach + 1 + after[e.to];
            let rel = nfa.step(i).relation(pb.space);
            if !rel.is_subset(pb.guarantee) && best.is_none_or(|(bt, _, _)| total < bt) {
                best = Some((total, q, k));
            }
        }
    }
    let (_, q, k) = best?;
    let e = nfa.edges(q)[k];
    let rel = nfa.step(e.step.expect("step edge")).relation(pb.space);
    let (a, b) = rel
        .pairs()
        .find(|&(a, b)| !pb.guarantee.contains(a, b))
        .expect("relation not below guarantee");
    let mut letters = control_path(nfa, pb.space, nfa.start(), q);
    letters.push(Letter::new(a, b));
    letters.extend(control_path(nfa, pb.space, e.to, nfa.accept()));
    Some(Violation {
        length: letters.len(),
        witness: Word(letters),
    })
}

/// Some letters along a shortest control path from `from` to `to`.
fn control_path(nfa: &Nfa, space: &StateSpace, from: usize, to: usize) -> Vec<Letter> {
    let n = nfa.nodes();
    let mut link: Vec<Option<(usize, Option<usize>)>> = vec![None; n];
    let mut dist = vec![INF; n];
    let mut dq = VecDeque::new();
    dist[from] = 0;
    dq.push_back(from);
    while let Some(q) = dq.pop_front() {
        for e in nfa.edges(q) {
            let cost = match e.step {
                None => 0,
                Some(i) if nfa.step(i).is_empty() => continue,
                Some(_) => 1,
            };
            if dist[q] + cost < dist[e.to] {
                dist[e.to] = dist[q] + cost;
                link[e.to] = Some((q, e.step));
                if cost == 0 {
                    dq.push_front(e.to);
                } else {
                    dq.push_back(e.to);
                }
            }
        }
    }
    let mut steps = Vec::new();
    let mut cur = to;
    while cur != from {
        let (p, st) = link[cur].expect("path exists");
        if let Some(i) = st {
            steps.push(i);
        }
        cur = p;
    }
    steps
        .iter()
        .rev()
        .map(|&i| {
            let (a, b) = nfa.step(i).relation(space).pairs().next().expect("nonempty step");
            Letter::new(a, b)
        })
        .collect()
}
