//! Elimination of good induced P3s by pivot isolation.

use std::collections::HashMap;

use crate::error::ReduceError;
use crate::frugality::propagation_wipes_out;
use crate::graph::{max_anticomplete_family, InducedP3};
use crate::instance::{Color, ColorSet, GoodTriple, Instance, ListTriple, MAX_K};

/// Every good triple of subsets of `[k]`, heaviest first; equal weights are
/// ordered by the bit encodings `(I1, I2, I3)` ascending.
pub fn good_triples(k: u8) -> Vec<GoodTriple> {
    let subsets: Vec<ColorSet> = (0..1u16 << k)
        .map(|b| ColorSet::from_bits(b as u8))
        .filter(|s| s.len() >= 2)
        .collect();
    let mut out = Vec::new();
    for &a in &subsets {
        for &b in &subsets {
            for &c in &subsets {
                if let Some(t) = GoodTriple::new([a, b, c]) {
                    out.push(t);
                }
            }
        }
    }
    out.sort_by_key(|t| {
        let [a, b, c] = *t.sets();
        (std::cmp::Reverse(t.weight()), a.bits(), b.bits(), c.bits())
    });
    out
}

fn p3s_of_type<'a>(
    inst: &'a Instance,
    gamma: &'a ListTriple,
) -> impl Iterator<Item = InducedP3> + 'a {
    inst.graph()
        .induced_p3s()
        .filter(move |p| inst.l_type(p) == *gamma)
}

/// Largest number of pairwise anticomplete induced P3s of L-type `gamma`.
pub fn count_anticomplete_of_type(inst: &Instance, gamma: &GoodTriple) -> usize {
    let items: Vec<Vec<usize>> = p3s_of_type(inst, gamma.sets())
        .map(|p| p.vertices().to_vec())
        .collect();
    max_anticomplete_family(inst.graph(), &items)
}

/// Lexicographic `t`-subsets of `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    fresh: bool,
}

impl Combinations {
    fn new(n: usize, t: usize) -> Option<Self> {
        (t <= n).then(|| Self {
            n,
            idx: (0..t).collect(),
            fresh: true,
        })
    }

    fn next(&mut self) -> Option<&[usize]> {
        if self.fresh {
            self.fresh = false;
            return Some(&self.idx);
        }
        let t = self.idx.len();
        let mut i = t;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - t + i {
                self.idx[i] += 1;
                for j in i + 1..t {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
        None
    }
}

/// Lazy pivot-isolation profile; see [`upsilon1`].
pub struct Upsilon1 {
    inst: Instance,
    gamma: ListTriple,
    pivot: [usize; 3],
    /// `N[pivot]` minus the pivot, ascending.
    others: Vec<usize>,
    /// For each vertex, the bitmask of pivot positions it is adjacent to.
    touches: Vec<u8>,
    max_extra: usize,
    extra: usize,
    combos: Option<Combinations>,
    /// Current `S`, ascending, and the coloring search over it.
    set: Vec<usize>,
    in_set: Vec<bool>,
    psi: Vec<u8>,
    depth: usize,
    /// `seen[x][c]`: neighbors of pivot position `x` in `S` colored `c`.
    seen: [[u8; MAX_K as usize + 1]; 3],
    active: bool,
    resume: bool,
}

/// The spanning profile of pairs `(S, ψ)`: `S` grows the pivot inside its
/// closed neighborhood to at most `3k` vertices, `ψ` is a list coloring of
/// `G|S` that is frugal at the pivot. Vertices of `S` are pinned to `ψ`,
/// other neighbors of pivot vertex `x_j` lose `I_j`.
pub fn upsilon1(
    inst: &Instance,
    gamma: &GoodTriple,
    pivot: InducedP3,
) -> Result<Upsilon1, ReduceError> {
    if inst.l_type(&pivot) != *gamma.sets() {
        return Err(ReduceError::Precondition(format!(
            "pivot {:?} does not have the requested type",
            pivot.vertices()
        )));
    }
    let g = inst.graph();
    let pv = pivot.vertices();
    let mut touches = vec![0u8; inst.n()];
    for (j, &x) in pv.iter().enumerate() {
        for &w in g.neighbors(x) {
            touches[w] |= 1 << j;
        }
    }
    let others: Vec<usize> = (0..inst.n())
        .filter(|&v| touches[v] != 0 && !pv.contains(&v))
        .collect();
    let max_extra = (3 * inst.k() as usize - 3).min(others.len());
    Ok(Upsilon1 {
        inst: inst.clone(),
        gamma: *gamma.sets(),
        pivot: pv,
        combos: Combinations::new(others.len(), 0),
        others,
        touches,
        max_extra,
        extra: 0,
        set: Vec::new(),
        in_set: vec![false; inst.n()],
        psi: Vec::new(),
        depth: 0,
        seen: [[0; MAX_K as usize + 1]; 3],
        active: false,
        resume: false,
    })
}

const UNTRIED: u8 = u8::MAX;

impl Upsilon1 {
    fn load_set(&mut self, extra: &[usize]) {
        for &v in &self.set {
            self.in_set[v] = false;
        }
        self.set = self
            .pivot
            .iter()
            .copied()
            .chain(extra.iter().map(|&i| self.others[i]))
            .collect();
        self.set.sort_unstable();
        for &v in &self.set {
            self.in_set[v] = true;
        }
        self.psi = vec![UNTRIED; self.set.len()];
        self.depth = 0;
        self.seen = [[0; MAX_K as usize + 1]; 3];
    }

    fn next_set(&mut self) -> bool {
        loop {
            let Some(combos) = self.combos.as_mut() else {
                return false;
            };
            if let Some(extra) = combos.next().map(<[usize]>::to_vec) {
                self.load_set(&extra);
                return true;
            }
            if self.extra >= self.max_extra {
                self.combos = None;
                return false;
            }
            self.extra += 1;
            self.combos = Combinations::new(self.others.len(), self.extra);
        }
    }

    fn color_of(&self, v: usize) -> Option<u8> {
        let i = self.set.binary_search(&v).ok()?;
        (i < self.depth && self.psi[i] != UNTRIED).then_some(self.psi[i])
    }

    fn admissible(&self, d: usize, c: Color) -> bool {
        let v = self.set[d];
        if !self.inst.list(v).contains(c) {
            return false;
        }
        let g = self.inst.graph();
        if g.neighbors(v)
            .iter()
            .any(|&w| self.in_set[w] && w < v && self.color_of(w) == Some(c))
        {
            return false;
        }
        (0..3).all(|j| {
            self.touches[v] & (1 << j) == 0
                || !self.gamma[j].contains(c)
                || self.seen[j][c as usize] == 0
        })
    }

    fn apply(&mut self, d: usize, c: Color) {
        self.psi[d] = c;
        let v = self.set[d];
        for j in 0..3 {
            if self.touches[v] & (1 << j) != 0 {
                self.seen[j][c as usize] += 1;
            }
        }
    }

    fn undo(&mut self, d: usize) {
        let c = self.psi[d];
        if c == UNTRIED {
            return;
        }
        let v = self.set[d];
        for j in 0..3 {
            if self.touches[v] & (1 << j) != 0 {
                self.seen[j][c as usize] -= 1;
            }
        }
    }

    /// Next coloring of the current `S` in lexicographic order.
    fn next_psi(&mut self) -> bool {
        let len = self.set.len();
        if self.resume {
            self.depth = len - 1;
        }
        self.resume = false;
        loop {
            let d = self.depth;
            let start = if self.psi[d] == UNTRIED {
                1
            } else {
                self.psi[d] + 1
            };
            self.undo(d);
            self.psi[d] = UNTRIED;
            // `color_of` reads only positions below `depth`
            let chosen = (start..=self.inst.k()).find(|&c| self.admissible(d, c));
            match chosen {
                Some(c) => {
                    self.apply(d, c);
                    if d + 1 == len {
                        self.resume = true;
                        self.depth = len;
                        return true;
                    }
                    self.depth = d + 1;
                    self.psi[d + 1] = UNTRIED;
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

    fn current_lists(&self) -> Vec<ColorSet> {
        (0..self.inst.n())
            .map(|v| {
                if self.in_set[v] {
                    let i = self.set.binary_search(&v).unwrap();
                    ColorSet::single(self.psi[i])
                } else {
                    let mut list = self.inst.list(v);
                    for j in 0..3 {
                        if self.touches[v] & (1 << j) != 0 {
                            list = list.difference(self.gamma[j]);
                        }
                    }
                    list
                }
            })
            .collect()
    }
}

impl Iterator for Upsilon1 {
    type Item = Instance;

    fn next(&mut self) -> Option<Instance> {
        loop {
            if !self.active {
                if !self.next_set() {
                    return None;
                }
                self.active = true;
                self.resume = false;
            }
            if self.next_psi() {
                return Some(self.inst.with_lists(self.current_lists()));
            }
            self.active = false;
        }
    }
}

/// Depth-first composition of pivot-isolation profiles over an ordered set
/// of good triples.
pub struct UpsilonStream {
    triples: Vec<GoodTriple>,
    index: HashMap<ListTriple, usize>,
    stack: Vec<Upsilon1>,
    pending: Option<Instance>,
    prune: bool,
}

impl UpsilonStream {
    fn new(inst: &Instance, triples: Vec<GoodTriple>) -> Self {
        let index = triples
            .iter()
            .enumerate()
            .map(|(i, t)| (*t.sets(), i))
            .collect();
        Self {
            triples,
            index,
            stack: Vec::new(),
            pending: Some(inst.clone()),
            prune: false,
        }
    }

    /// Drops elements whose lists empty out under unit propagation,
    /// together with everything that would be derived from them.
    pub fn pruned(mut self) -> Self {
        self.prune = true;
        self
    }

    /// First P3 of the earliest listed type present in `inst`.
    fn first_pivot(&self, inst: &Instance) -> Option<(usize, InducedP3)> {
        let mut best: Option<(usize, InducedP3)> = None;
        for p in inst.graph().induced_p3s() {
            if let Some(&i) = self.index.get(&inst.l_type(&p)) {
                if best.is_none_or(|(b, _)| i < b) {
                    best = Some((i, p));
                }
            }
        }
        best
    }
}

impl Iterator for UpsilonStream {
    type Item = Instance;

    fn next(&mut self) -> Option<Instance> {
        loop {
            if let Some(inst) = self.pending.take() {
                if self.prune && propagation_wipes_out(inst.graph(), inst.lists()) {
                    continue;
                }
                match self.first_pivot(&inst) {
                    None => return Some(inst),
                    Some((i, pivot)) => {
                        let stream = upsilon1(&inst, &self.triples[i], pivot)
                            .expect("pivot has the triple's type");
                        self.stack.push(stream);
                    }
                }
                continue;
            }
            let top = self.stack.last_mut()?;
            match top.next() {
                Some(child) => self.pending = Some(child),
                None => {
                    self.stack.pop();
                }
            }
        }
    }
}

fn heaviest_good_weight(inst: &Instance) -> Option<usize> {
    inst.good_p3s().map(|p| inst.l_weight(&p)).max()
}

/// Recursively isolates pivots of type `gamma` until none remains.
pub fn upsilon2(inst: &Instance, gamma: &GoodTriple) -> Result<UpsilonStream, ReduceError> {
    if let Some(w) = heaviest_good_weight(inst) {
        if w > gamma.weight() {
            return Err(ReduceError::Precondition(format!(
                "a good P3 of weight {w} exceeds the triple's weight {}",
                gamma.weight()
            )));
        }
    }
    Ok(UpsilonStream::new(inst, vec![*gamma]))
}

/// Composition over all good triples of `[k]`; no output has a good P3.
pub fn upsilon(inst: &Instance) -> UpsilonStream {
    UpsilonStream::new(inst, good_triples(inst.k()))
}
