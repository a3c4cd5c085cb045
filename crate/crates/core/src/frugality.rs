//! Singleton-list elimination and the frugality profile.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::ReduceError;
use crate::graph::{Graph, VertexSet};
use crate::instance::{Color, ColorSet, Instance, MAX_K};
use crate::oracle::{self, Hypergraph};
use crate::trace::LiftStep;

/// Repeatedly deletes the smallest vertex whose list is a single color,
/// removing that color from its neighbors' lists.
///
/// Each removal yields one [`LiftStep::SingletonRemoval`] whose vertex id is
/// taken in the instance current at that moment.
pub fn kill_singletons(inst: &Instance) -> (Instance, Vec<LiftStep>) {
    let n = inst.n();
    let g = inst.graph();
    let mut lists = inst.lists().to_vec();
    let mut removed = VertexSet::new(n);
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n)
        .filter(|&v| lists[v].len() == 1)
        .map(Reverse)
        .collect();
    let mut order: Vec<(usize, Color)> = Vec::new();
    while let Some(Reverse(v)) = heap.pop() {
        if removed.contains(v) || lists[v].len() != 1 {
            continue;
        }
        let color = lists[v].min().expect("singleton");
        removed.insert(v);
        order.push((v, color));
        for &w in g.neighbors(v) {
            if !removed.contains(w) && lists[w].contains(color) {
                lists[w] = lists[w].without(color);
                if lists[w].len() == 1 {
                    heap.push(Reverse(w));
                }
            }
        }
    }
    if order.is_empty() {
        return (inst.clone(), Vec::new());
    }

    // position of each removed vertex among the vertices still present
    let mut earlier = Fenwick::new(n);
    let steps = order
        .iter()
        .map(|&(v, color)| {
            let vertex = v - earlier.prefix(v);
            earlier.add(v);
            LiftStep::SingletonRemoval { vertex, color }
        })
        .collect();

    let keep = VertexSet::from_ids(n, (0..n).filter(|&v| !removed.contains(v)));
    let (mut child, ids) = inst.induced(&keep);
    child = child.with_lists(ids.iter().map(|&v| lists[v]).collect());
    (child, steps)
}

struct Fenwick(Vec<usize>);

impl Fenwick {
    fn new(n: usize) -> Self {
        Self(vec![0; n + 1])
    }

    fn add(&mut self, i: usize) {
        let mut i = i + 1;
        while i < self.0.len() {
            self.0[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Number of marked positions below `i`.
    fn prefix(&self, i: usize) -> usize {
        let mut i = i;
        let mut acc = 0;
        while i > 0 {
            acc += self.0[i];
            i &= i - 1;
        }
        acc
    }
}

/// Whether unit propagation on `lists` empties some list.
pub(crate) fn propagation_wipes_out(g: &Graph, lists: &[ColorSet]) -> bool {
    let mut lists = lists.to_vec();
    let mut done = vec![false; lists.len()];
    let mut stack: Vec<usize> = (0..lists.len()).filter(|&v| lists[v].len() <= 1).collect();
    while let Some(v) = stack.pop() {
        if done[v] {
            continue;
        }
        let Some(c) = lists[v].min() else {
            return true;
        };
        done[v] = true;
        for &w in g.neighbors(v) {
            if !done[w] && lists[w].contains(c) {
                lists[w] = lists[w].without(c);
                if lists[w].len() <= 1 {
                    stack.push(w);
                }
            }
        }
    }
    false
}

/// The hypergraph on `A` (relabelled by rank) whose edges are the sets
/// `N(b) ∩ A` for `b` in `B`, in ascending order of `b`.
pub fn neighborhood_hypergraph(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<Hypergraph, ReduceError> {
    if !a.is_disjoint(b) {
        let v = a.iter().find(|&v| b.contains(v)).unwrap();
        return Err(ReduceError::Precondition(format!(
            "vertex {v} lies in both A and B"
        )));
    }
    for (set, name) in [(a, "A"), (b, "B")] {
        if let Some(v) = set
            .iter()
            .find(|&v| g.neighbors(v).iter().any(|&w| set.contains(w)))
        {
            return Err(ReduceError::Precondition(format!(
                "{name} is not stable at vertex {v}"
            )));
        }
    }
    let rank: Vec<Option<usize>> = {
        let mut rank = vec![None; g.n()];
        for (i, v) in a.iter().enumerate() {
            rank[v] = Some(i);
        }
        rank
    };
    let mut edges = Vec::new();
    for v in b.iter() {
        let members: Vec<usize> = g.neighbors(v).iter().filter_map(|&w| rank[w]).collect();
        if members.len() < 2 {
            return Err(ReduceError::Precondition(format!(
                "vertex {v} of B has fewer than two neighbors in A"
            )));
        }
        edges.push(VertexSet::from_ids(a.len(), members));
    }
    Ok(Hypergraph::new(a.len(), edges))
}

/// `min((k-1) η(r), n)`.
pub fn class_size_cap(k: u8, r: u64, n: usize) -> usize {
    oracle::eta(r)
        .ok()
        .and_then(|e| e.checked_mul(u128::from(k.saturating_sub(1))))
        .map_or(n, |cap| cap.min(n as u128) as usize)
}

/// A tuple `(S_1, .., S_k)` stored as its vertex-to-class assignment
/// (`0` for vertices outside every class).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProfileTuple {
    assignment: Vec<Color>,
}

impl ProfileTuple {
    pub fn assignment(&self) -> &[Color] {
        &self.assignment
    }

    /// `S_i`, ascending.
    pub fn class(&self, i: Color) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&v| self.assignment[v] == i)
            .collect()
    }

    /// `|S_1 ∪ .. ∪ S_k|`.
    pub fn size(&self) -> usize {
        self.assignment.iter().filter(|&&c| c != 0).count()
    }

    /// The lists `L_S`.
    pub fn lists(&self, inst: &Instance) -> Vec<ColorSet> {
        let g = inst.graph();
        (0..inst.n())
            .map(|v| match self.assignment[v] {
                0 => {
                    let blocked = ColorSet::from_colors(
                        g.neighbors(v)
                            .iter()
                            .map(|&w| self.assignment[w])
                            .filter(|&c| c != 0),
                    );
                    inst.list(v).difference(blocked)
                }
                i => ColorSet::single(i),
            })
            .collect()
    }
}

const UNTRIED: u8 = u8::MAX;

/// Lazy enumeration of the frugality profile; see [`frugal_profile`].
pub struct FrugalProfile {
    inst: Instance,
    cap: usize,
    prune: bool,
    target: usize,
    max_target: usize,
    assign: Vec<u8>,
    depth: usize,
    assigned: usize,
    class_count: [usize; MAX_K as usize + 1],
    /// `blocked[v]`: classes containing a neighbor of `v`, with multiplicity.
    blocked: Vec<[u16; MAX_K as usize + 1]>,
    exhausted: bool,
    resume: bool,
}

/// Every spanning refinement `(G, L_S)`: vertices of `S_i` get `{i}`, the
/// others lose the colors of classes they touch. Tuples are ordered by
/// `|∪ S_i|`, then lexicographically on the assignment vector, so the first
/// element is the instance itself.
pub fn frugal_profile(inst: &Instance, r: u64) -> FrugalProfile {
    let n = inst.n();
    let cap = class_size_cap(inst.k(), r, n);
    FrugalProfile {
        inst: inst.clone(),
        cap,
        prune: false,
        target: 0,
        max_target: n.min(cap.saturating_mul(inst.k() as usize)),
        assign: vec![UNTRIED; n],
        depth: 0,
        assigned: 0,
        class_count: [0; MAX_K as usize + 1],
        blocked: vec![[0; MAX_K as usize + 1]; n],
        exhausted: false,
        resume: false,
    }
}

impl FrugalProfile {
    /// Skips every tuple whose lists, after unit propagation, contain an
    /// empty list. Such elements have no coloring and neither has any
    /// refinement of them.
    pub fn pruned(mut self) -> Self {
        self.prune = true;
        self
    }

    fn residual(&self, v: usize) -> ColorSet {
        let blocked = &self.blocked[v];
        let mut list = self.inst.list(v);
        for c in list.iter() {
            if blocked[c as usize] > 0 {
                list = list.without(c);
            }
        }
        list
    }

    /// Current lists treating undecided vertices as unassigned.
    fn partial_lists(&self) -> Vec<ColorSet> {
        (0..self.inst.n())
            .map(|v| match self.assign[v] {
                c if c != 0 && c != UNTRIED && v < self.depth => ColorSet::single(c),
                _ => self.residual(v),
            })
            .collect()
    }

    fn admissible(&self, v: usize, value: u8) -> bool {
        if value == 0 {
            return self.inst.n() - v > self.target - self.assigned;
        }
        self.assigned < self.target
            && self.inst.list(v).contains(value)
            && self.class_count[value as usize] < self.cap
            && self.blocked[v][value as usize] == 0
    }

    fn apply(&mut self, v: usize, value: u8) {
        self.assign[v] = value;
        if value != 0 {
            self.assigned += 1;
            self.class_count[value as usize] += 1;
            for &w in self.inst.graph().neighbors(v) {
                self.blocked[w][value as usize] += 1;
            }
        }
    }

    fn undo(&mut self, v: usize) {
        let value = self.assign[v];
        if value != 0 && value != UNTRIED {
            self.assigned -= 1;
            self.class_count[value as usize] -= 1;
            for &w in self.inst.graph().neighbors(v) {
                self.blocked[w][value as usize] -= 1;
            }
        }
    }

    /// Advances the depth-first search to the next complete assignment of
    /// the current target size. Returns `false` when that size is used up.
    fn advance(&mut self) -> bool {
        let n = self.inst.n();
        if n == 0 {
            if self.resume {
                return false;
            }
            self.resume = true;
            return true;
        }
        if self.resume {
            self.depth = n - 1;
        }
        self.resume = false;
        loop {
            let d = self.depth;
            let start = if self.assign[d] == UNTRIED {
                0
            } else {
                self.assign[d] + 1
            };
            self.undo(d);
            self.assign[d] = UNTRIED;
            let mut chosen = None;
            for value in start..=self.inst.k() {
                if self.admissible(d, value) {
                    chosen = Some(value);
                    break;
                }
            }
            match chosen {
                Some(value) => {
                    self.apply(d, value);
                    if self.prune && self.dead_after(d) {
                        continue;
                    }
                    if d + 1 == n {
                        self.resume = true;
                        return true;
                    }
                    self.depth = d + 1;
                    self.assign[d + 1] = UNTRIED;
                }
                None => {
                    if d == 0 {
                        return false;
                    }
                    self.depth = d - 1;
                }
            }
        }
    }

    fn dead_after(&mut self, d: usize) -> bool {
        let saved = self.depth;
        self.depth = d + 1;
        let lists = self.partial_lists();
        self.depth = saved;
        propagation_wipes_out(self.inst.graph(), &lists)
    }
}

impl Iterator for FrugalProfile {
    type Item = (ProfileTuple, Instance);

    fn next(&mut self) -> Option<Self::Item> {
        while !self.exhausted {
            if self.advance() {
                let tuple = ProfileTuple {
                    assignment: self.assign.clone(),
                };
                let lists = tuple.lists(&self.inst);
                return Some((tuple, self.inst.with_lists(lists)));
            }
            if self.target >= self.max_target {
                self.exhausted = true;
            } else {
                self.target += 1;
                self.depth = 0;
                self.resume = false;
                if !self.assign.is_empty() {
                    self.assign[0] = UNTRIED;
                }
            }
        }
        None
    }
}
