//! Ground-truth engines: exhaustive (frugal) list coloring, exact hypergraph
//! statistics and the cover-bound constants.
//!
//! Everything here is deliberately naive and exact. The solvers are meant for
//! instances with up to about twenty vertices.

use crate::error::ReduceError;
use crate::graph::VertexSet;
use crate::instance::{Color, ColorSet, Coloring, Instance, MAX_K};

const SLOTS: usize = MAX_K as usize + 1;

struct Backtrack<'a> {
    inst: &'a Instance,
    frugal: bool,
    colors: Vec<Color>,
    /// `counts[v][c]`: neighbors of `v` currently colored `c`.
    counts: Vec<[u8; SLOTS]>,
}

impl<'a> Backtrack<'a> {
    fn new(inst: &'a Instance, frugal: bool) -> Self {
        Self {
            inst,
            frugal,
            colors: vec![0; inst.n()],
            counts: vec![[0; SLOTS]; inst.n()],
        }
    }

    fn available(&self, v: usize) -> ColorSet {
        let list = self.inst.list(v);
        let mut out = ColorSet::EMPTY;
        for c in list.iter() {
            if self.counts[v][c as usize] == 0 {
                out = out.with(c);
            }
        }
        out
    }

    fn fits(&self, v: usize, c: Color) -> bool {
        if self.counts[v][c as usize] != 0 {
            return false;
        }
        if self.frugal {
            let g = self.inst.graph();
            // `v` would become a second neighbor colored `c` of some `w` with `c` in L(w)
            if g.neighbors(v)
                .iter()
                .any(|&w| self.inst.list(w).contains(c) && self.counts[w][c as usize] >= 1)
            {
                return false;
            }
        }
        true
    }

    fn set(&mut self, v: usize, c: Color) {
        self.colors[v] = c;
        for &w in self.inst.graph().neighbors(v) {
            self.counts[w][c as usize] += 1;
        }
    }

    fn unset(&mut self, v: usize) {
        let c = self.colors[v];
        self.colors[v] = 0;
        for &w in self.inst.graph().neighbors(v) {
            self.counts[w][c as usize] -= 1;
        }
    }

    fn forward_ok(&self, v: usize) -> bool {
        self.inst
            .graph()
            .neighbors(v)
            .iter()
            .all(|&w| self.colors[w] != 0 || !self.available(w).is_empty())
    }

    fn run(&mut self, v: usize) -> bool {
        if v == self.inst.n() {
            return true;
        }
        for c in self.inst.list(v).iter() {
            if !self.fits(v, c) {
                continue;
            }
            self.set(v, c);
            if self.forward_ok(v) && self.run(v + 1) {
                return true;
            }
            self.unset(v);
        }
        false
    }
}

/// First L-coloring in vertex-ascending, color-ascending backtracking order.
pub fn solve_exact(inst: &Instance) -> Option<Coloring> {
    if inst.has_empty_list() {
        return None;
    }
    let mut search = Backtrack::new(inst, false);
    search.run(0).then_some(Coloring(search.colors))
}

/// First frugal L-coloring in the same order as [`solve_exact`].
pub fn solve_exact_frugal(inst: &Instance) -> Option<Coloring> {
    if inst.has_empty_list() {
        return None;
    }
    let mut search = Backtrack::new(inst, true);
    search.run(0).then_some(Coloring(search.colors))
}

/// Every L-coloring (frugal ones only when `frugal` is set), in the same
/// lexicographic order.
pub fn all_colorings(inst: &Instance, frugal: bool) -> Vec<Coloring> {
    fn walk(search: &mut Backtrack<'_>, v: usize, out: &mut Vec<Coloring>) {
        if v == search.inst.n() {
            out.push(Coloring(search.colors.clone()));
            return;
        }
        for c in search.inst.list(v).iter() {
            if !search.fits(v, c) {
                continue;
            }
            search.set(v, c);
            if search.forward_ok(v) {
                walk(search, v + 1, out);
            }
            search.unset(v);
        }
    }
    let mut out = Vec::new();
    let mut search = Backtrack::new(inst, frugal);
    walk(&mut search, 0, &mut out);
    out
}

/// Hypergraph on `0..n`; hyperedges are nonempty vertex sets and may repeat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
}

/// `(nu, tau, lambda)` of a hypergraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HypergraphStats {
    /// Largest matching.
    pub nu: usize,
    /// Smallest vertex cover.
    pub tau: usize,
    /// Largest family with pairwise private intersections (at least 2).
    pub lambda: usize,
}

impl Hypergraph {
    /// Panics on an empty hyperedge or one leaving `0..n`.
    pub fn new(n: usize, edges: Vec<VertexSet>) -> Self {
        for e in &edges {
            assert!(!e.is_empty(), "hyperedges are nonempty");
            assert!(e.iter().all(|v| v < n), "hyperedge leaves the vertex set");
        }
        Self { n, edges }
    }

    pub fn from_lists(n: usize, edges: &[&[usize]]) -> Self {
        Self::new(
            n,
            edges
                .iter()
                .map(|e| VertexSet::from_ids(n, e.iter().copied()))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    fn masks(&self) -> Vec<u64> {
        assert!(
            self.n <= 64,
            "exhaustive statistics need at most 64 vertices"
        );
        self.edges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, v| m | 1 << v))
            .collect()
    }

    /// Exact `nu`, `tau` and `lambda` by exhaustive search.
    pub fn stats(&self) -> HypergraphStats {
        let masks = self.masks();
        HypergraphStats {
            nu: max_matching(&masks),
            tau: min_cover(&masks),
            lambda: private_lambda(&masks),
        }
    }
}

fn max_matching(masks: &[u64]) -> usize {
    fn go(masks: &[u64], i: usize, used: u64, size: usize, best: &mut usize) {
        if size + (masks.len() - i) <= *best {
            return;
        }
        if i == masks.len() {
            *best = size;
            return;
        }
        if masks[i] & used == 0 {
            go(masks, i + 1, used | masks[i], size + 1, best);
        }
        go(masks, i + 1, used, size, best);
    }
    let mut best = 0;
    go(masks, 0, 0, 0, &mut best);
    best
}

fn min_cover(masks: &[u64]) -> usize {
    fn go(masks: &[u64], cover: u64, size: usize, best: &mut usize) {
        if size >= *best {
            return;
        }
        match masks.iter().find(|&&e| e & cover == 0) {
            None => *best = size,
            Some(&e) => {
                let mut rest = e;
                while rest != 0 {
                    let v = rest.trailing_zeros();
                    rest &= rest - 1;
                    go(masks, cover | 1 << v, size + 1, best);
                }
            }
        }
    }
    let mut best = usize::MAX;
    go(masks, 0, 0, &mut best);
    best
}

/// Whether every pair in `family` meets in a vertex outside all other members.
fn has_private_pairs(masks: &[u64], family: &[usize]) -> bool {
    family.iter().enumerate().all(|(a, &i)| {
        family[a + 1..].iter().all(|&j| {
            let others = family
                .iter()
                .filter(|&&l| l != i && l != j)
                .fold(0u64, |m, &l| m | masks[l]);
            masks[i] & masks[j] & !others != 0
        })
    })
}

fn private_lambda(masks: &[u64]) -> usize {
    fn go(masks: &[u64], start: usize, family: &mut Vec<usize>, best: &mut usize) {
        for i in start..masks.len() {
            family.push(i);
            // the pairwise condition is not monotone in the family, so every
            // subset is examined
            if family.len() >= 2 && family.len() > *best && has_private_pairs(masks, family) {
                *best = family.len();
            }
            go(masks, i + 1, family, best);
            family.pop();
        }
    }
    let mut best = 2;
    go(masks, 0, &mut Vec::new(), &mut best);
    best
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// `11 Λ² (Λ + ν + 3) C(Λ + ν, ν)²`.
pub fn dsw_bound(lambda: u64, nu: u64) -> Result<u128, ReduceError> {
    let overflow = || ReduceError::Overflow("dsw_bound");
    let l = lambda as u128;
    let v = nu as u128;
    let c = binomial(l + v, v).ok_or_else(overflow)?;
    11u128
        .checked_mul(l.checked_mul(l).ok_or_else(overflow)?)
        .and_then(|x| x.checked_mul(l + v + 3))
        .and_then(|x| x.checked_mul(c.checked_mul(c)?))
        .ok_or_else(overflow)
}

/// `η(r) = 11 (r+1)² (2r+3) C(2r, r-1)`.
pub fn eta(r: u64) -> Result<u128, ReduceError> {
    if r == 0 {
        return Err(ReduceError::Precondition("eta needs r >= 1".into()));
    }
    let overflow = || ReduceError::Overflow("eta");
    let r = r as u128;
    let c = binomial(2 * r, r - 1).ok_or_else(overflow)?;
    let r1 = r + 1;
    11u128
        .checked_mul(r1.checked_mul(r1).ok_or_else(overflow)?)
        .and_then(|x| x.checked_mul(2 * r + 3))
        .and_then(|x| x.checked_mul(c))
        .ok_or_else(overflow)
}
