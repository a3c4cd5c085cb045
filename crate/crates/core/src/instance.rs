//! List assignments, instances and colorings.

use std::fmt;
use std::sync::Arc;

use crate::error::InstanceError;
use crate::graph::{Graph, InducedP3, VertexSet};

/// A color in `1..=k`.
pub type Color = u8;

/// Largest supported color count.
pub const MAX_K: u8 = 8;

/// Subset of `[k]`, bit `c - 1` standing for color `c`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(u8);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn full(k: u8) -> Self {
        if k >= 8 {
            ColorSet(u8::MAX)
        } else {
            ColorSet((1u8 << k) - 1)
        }
    }

    pub const fn from_bits(bits: u8) -> Self {
        ColorSet(bits)
    }

    pub const fn bits(self) -> u8 {
        self.0
    }

    pub fn single(c: Color) -> Self {
        debug_assert!((1..=MAX_K).contains(&c));
        ColorSet(1 << (c - 1))
    }

    pub fn from_colors(colors: impl IntoIterator<Item = Color>) -> Self {
        colors
            .into_iter()
            .fold(ColorSet::EMPTY, |acc, c| acc.with(c))
    }

    pub fn contains(self, c: Color) -> bool {
        (1..=MAX_K).contains(&c) && self.0 & (1 << (c - 1)) != 0
    }

    pub fn with(self, c: Color) -> Self {
        ColorSet(self.0 | (1 << (c - 1)))
    }

    pub fn without(self, c: Color) -> Self {
        if (1..=MAX_K).contains(&c) {
            ColorSet(self.0 & !(1 << (c - 1)))
        } else {
            self
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ColorSet) -> Self {
        ColorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ColorSet) -> Self {
        ColorSet(self.0 & other.0)
    }

    pub fn difference(self, other: ColorSet) -> Self {
        ColorSet(self.0 & !other.0)
    }

    pub fn intersects(self, other: ColorSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member.
    pub fn min(self) -> Option<Color> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Color + 1)
    }

    pub fn max(self) -> Option<Color> {
        (self.0 != 0).then(|| 8 - self.0.leading_zeros() as Color)
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Color> {
        (1..=MAX_K).filter(move |&c| self.contains(c))
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `(I1, I2, I3)`: the list triple of an induced P3.
pub type ListTriple = [ColorSet; 3];

/// A good triple: three color sets of size at least two whose pairwise
/// intersections are all nonempty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GoodTriple([ColorSet; 3]);

impl GoodTriple {
    pub fn new(sets: ListTriple) -> Option<Self> {
        is_good(&sets).then_some(GoodTriple(sets))
    }

    pub fn sets(&self) -> &ListTriple {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|s| s.len()).sum()
    }
}

pub fn is_good(sets: &ListTriple) -> bool {
    let [a, b, c] = *sets;
    a.len() >= 2
        && b.len() >= 2
        && c.len() >= 2
        && a.intersects(b)
        && a.intersects(c)
        && b.intersects(c)
}

/// A total map from vertices to colors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coloring(pub Vec<Color>);

impl Coloring {
    pub fn color(&self, v: usize) -> Color {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.0
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring{:?}", self.0)
    }
}

/// The first constraint a coloring breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringViolation {
    WrongLength {
        expected: usize,
        got: usize,
    },
    NotInList {
        v: usize,
        color: Color,
    },
    Monochromatic {
        u: usize,
        v: usize,
        color: Color,
    },
    NotFrugal {
        v: usize,
        color: Color,
        first: usize,
        second: usize,
    },
}

impl fmt::Display for ColoringViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongLength { expected, got } => {
                write!(f, "coloring covers {got} vertices, instance has {expected}")
            }
            Self::NotInList { v, color } => write!(f, "vertex {v} colored {color} outside its list"),
            Self::Monochromatic { u, v, color } => {
                write!(f, "edge {u}-{v} has both ends colored {color}")
            }
            Self::NotFrugal { v, color, first, second } => write!(
                f,
                "vertex {v} has neighbors {first} and {second} colored {color}, which is in its list"
            ),
        }
    }
}

/// Refinement relation between two instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefinementCheck {
    pub refinement: bool,
    pub spanning: bool,
}

/// A graph with a list assignment over `[k]`.
///
/// The graph sits behind an `Arc` so spanning refinements share it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    graph: Arc<Graph>,
    k: u8,
    lists: Vec<ColorSet>,
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Instance")
            .field("k", &self.k)
            .field("graph", &self.graph)
            .field("lists", &self.lists)
            .finish()
    }
}

impl Instance {
    pub fn new(graph: Graph, k: u8, lists: Vec<ColorSet>) -> Result<Self, InstanceError> {
        Self::from_shared(Arc::new(graph), k, lists)
    }

    pub fn from_shared(
        graph: Arc<Graph>,
        k: u8,
        lists: Vec<ColorSet>,
    ) -> Result<Self, InstanceError> {
        if k == 0 || k > MAX_K {
            return Err(InstanceError::BadK(k));
        }
        if lists.len() != graph.n() {
            return Err(InstanceError::ListCount {
                lists: lists.len(),
                n: graph.n(),
            });
        }
        let full = ColorSet::full(k);
        if let Some(v) = lists.iter().position(|l| !l.is_subset(full)) {
            return Err(InstanceError::ColorOutOfRange { v, k });
        }
        Ok(Self { graph, k, lists })
    }

    /// Every vertex gets the full list `[k]`.
    pub fn full_lists(graph: Graph, k: u8) -> Result<Self, InstanceError> {
        let n = graph.n();
        Self::new(graph, k, vec![ColorSet::full(k); n])
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn shared_graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn list(&self, v: usize) -> ColorSet {
        self.lists[v]
    }

    pub fn lists(&self) -> &[ColorSet] {
        &self.lists
    }

    /// Spanning sibling with new lists, sharing the graph.
    ///
    /// Panics when the length differs or a color exceeds `k`.
    pub fn with_lists(&self, lists: Vec<ColorSet>) -> Instance {
        assert_eq!(lists.len(), self.n(), "one list per vertex");
        debug_assert!(lists.iter().all(|l| l.is_subset(ColorSet::full(self.k))));
        Instance {
            graph: Arc::clone(&self.graph),
            k: self.k,
            lists,
        }
    }

    /// Restriction to `keep`; the id map sends new ids to old ids.
    pub fn induced(&self, keep: &VertexSet) -> (Instance, Vec<usize>) {
        let (graph, ids) = self.graph.induced_subgraph(keep);
        let lists = ids.iter().map(|&v| self.lists[v]).collect();
        (
            Instance {
                graph: Arc::new(graph),
                k: self.k,
                lists,
            },
            ids,
        )
    }

    /// `L^(i)`: the vertices whose list contains `i`.
    pub fn color_class(&self, i: Color) -> VertexSet {
        VertexSet::from_ids(
            self.n(),
            (0..self.n()).filter(|&v| self.lists[v].contains(i)),
        )
    }

    /// `G^L`: keeps the edges whose endpoint lists intersect.
    pub fn list_graph(&self) -> Graph {
        self.graph
            .filter_edges(|u, v| self.lists[u].intersects(self.lists[v]))
    }

    /// `p(G, L) = |V| + sum of list sizes`.
    pub fn p_value(&self) -> usize {
        self.n() + self.lists.iter().map(|l| l.len()).sum::<usize>()
    }

    pub fn has_empty_list(&self) -> bool {
        self.lists.iter().any(|l| l.is_empty())
    }

    /// Whether `self` is a refinement of `parent` along `mapping`, which
    /// sends each vertex of `self` to a vertex of `parent`.
    pub fn is_refinement_of(&self, parent: &Instance, mapping: &[usize]) -> RefinementCheck {
        let no = RefinementCheck {
            refinement: false,
            spanning: false,
        };
        if mapping.len() != self.n() || self.k != parent.k {
            return no;
        }
        let mut seen = VertexSet::new(parent.n());
        for &p in mapping {
            if p >= parent.n() || seen.contains(p) {
                return no;
            }
            seen.insert(p);
        }
        for v in 0..self.n() {
            if !self.lists[v].is_subset(parent.lists[mapping[v]]) {
                return no;
            }
            for u in v + 1..self.n() {
                if self.graph.has_edge(u, v) != parent.graph.has_edge(mapping[u], mapping[v]) {
                    return no;
                }
            }
        }
        RefinementCheck {
            refinement: true,
            spanning: self.n() == parent.n(),
        }
    }

    /// `(L(x1), L(x2), L(x3))`.
    pub fn l_type(&self, p: &InducedP3) -> ListTriple {
        [self.lists[p.x1], self.lists[p.x2], self.lists[p.x3]]
    }

    pub fn l_weight(&self, p: &InducedP3) -> usize {
        self.l_type(p).iter().map(|l| l.len()).sum()
    }

    /// Induced P3s whose L-type is good, in P3 stream order.
    pub fn good_p3s(&self) -> impl Iterator<Item = InducedP3> + '_ {
        self.graph
            .induced_p3s()
            .filter(move |p| is_good(&self.l_type(p)))
    }

    pub fn good_p3_find(&self) -> Option<InducedP3> {
        self.good_p3s().next()
    }

    /// Checks properness, list membership and, when `frugal` is set, that no
    /// vertex has two neighbors sharing a color from its own list.
    pub fn verify_coloring(
        &self,
        coloring: &Coloring,
        frugal: bool,
    ) -> Result<(), ColoringViolation> {
        if coloring.len() != self.n() {
            return Err(ColoringViolation::WrongLength {
                expected: self.n(),
                got: coloring.len(),
            });
        }
        for v in 0..self.n() {
            let c = coloring.color(v);
            if !self.lists[v].contains(c) {
                return Err(ColoringViolation::NotInList { v, color: c });
            }
        }
        for (u, v) in self.graph.edges() {
            if coloring.color(u) == coloring.color(v) {
                return Err(ColoringViolation::Monochromatic {
                    u,
                    v,
                    color: coloring.color(u),
                });
            }
        }
        if frugal {
            for v in 0..self.n() {
                let mut first_with = [usize::MAX; MAX_K as usize + 1];
                for &w in self.graph.neighbors(v) {
                    let c = coloring.color(w);
                    if !self.lists[v].contains(c) {
                        continue;
                    }
                    if first_with[c as usize] != usize::MAX {
                        return Err(ColoringViolation::NotFrugal {
                            v,
                            color: c,
                            first: first_with[c as usize],
                            second: w,
                        });
                    }
                    first_with[c as usize] = w;
                }
            }
        }
        Ok(())
    }

    pub fn is_coloring(&self, coloring: &Coloring) -> bool {
        self.verify_coloring(coloring, false).is_ok()
    }

    pub fn is_frugal_coloring(&self, coloring: &Coloring) -> bool {
        self.verify_coloring(coloring, true).is_ok()
    }
}
