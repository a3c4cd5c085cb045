//! Monotone NAE3SAT instances and their reduction to 5-COLORING on
//! 2P4-free graphs.
//!
//! NAE files:
//!
//! ```text
//! p nae <n> <m>
//! c <i1> <i2> <i3>     (m lines, 1-based variables, repeats allowed)
//! ```

use crate::error::ParseError;
use crate::format::{content_lines, parse_num};
use crate::graph::{Graph, VertexSet};
use crate::instance::Instance;
use crate::oracle::solve_exact;

/// A monotone NAE3SAT formula; variables are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaeInstance {
    n: usize,
    clauses: Vec<[usize; 3]>,
}

impl NaeInstance {
    /// `None` if some clause mentions a variable outside `1..=n`.
    pub fn new(n: usize, clauses: Vec<[usize; 3]>) -> Option<Self> {
        clauses
            .iter()
            .flatten()
            .all(|&i| (1..=n).contains(&i))
            .then_some(Self { n, clauses })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    /// Every clause has a true and a false literal. `assignment[i]` is
    /// the value of variable `i + 1`.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            let vals = c.map(|i| assignment[i - 1]);
            vals.contains(&true) && vals.contains(&false)
        })
    }
}

pub fn parse_nae(text: &str) -> Result<NaeInstance, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(0, "missing `p nae` header"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("p") || toks.next() != Some("nae") {
        return Err(ParseError::new(hline, "expected `p nae <n> <m>`"));
    }
    let n: usize = parse_num(toks.next(), hline, "variable count")?;
    let m: usize = parse_num(toks.next(), hline, "clause count")?;
    if toks.next().is_some() {
        return Err(ParseError::new(hline, "trailing tokens in header"));
    }
    let mut clauses = Vec::with_capacity(m);
    for (line, text) in lines {
        let mut toks = text.split_whitespace();
        if toks.next() != Some("c") {
            return Err(ParseError::new(line, "expected `c <i1> <i2> <i3>`"));
        }
        let mut clause = [0; 3];
        for slot in &mut clause {
            let i: usize = parse_num(toks.next(), line, "variable")?;
            if i == 0 || i > n {
                return Err(ParseError::new(
                    line,
                    format!("variable {i} outside 1..={n}"),
                ));
            }
            *slot = i;
        }
        if toks.next().is_some() {
            return Err(ParseError::new(line, "a clause has exactly three literals"));
        }
        clauses.push(clause);
    }
    if clauses.len() != m {
        return Err(ParseError::new(
            hline,
            format!("header promises {m} clauses, found {}", clauses.len()),
        ));
    }
    Ok(NaeInstance { n, clauses })
}

/// First satisfying assignment in binary counting order (variable 1 is the
/// least significant bit, set bit = true).
pub fn nae_brute(nae: &NaeInstance) -> Option<Vec<bool>> {
    assert!(nae.n < 64, "brute force needs fewer than 64 variables");
    (0u64..1 << nae.n)
        .map(|bits| (0..nae.n).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>())
        .find(|a| nae.is_satisfied_by(a))
}

/// Vertex ids of the gadget graph, all 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HardnessLayout {
    pub n: usize,
    pub m: usize,
}

impl HardnessLayout {
    pub fn vertex_count(&self) -> usize {
        5 + self.n + 8 * self.m
    }

    /// `c_i`, `i` in `1..=5`.
    pub fn c(&self, i: usize) -> usize {
        i - 1
    }

    /// `x_i`, `i` in `1..=n`.
    pub fn x(&self, i: usize) -> usize {
        4 + i
    }

    pub fn y(&self, j: usize) -> usize {
        5 + self.n + 2 * (j - 1)
    }

    pub fn z(&self, j: usize) -> usize {
        self.y(j) + 1
    }

    /// `u_j^k`, `k` in `1..=3`.
    pub fn u(&self, j: usize, k: usize) -> usize {
        5 + self.n + 2 * self.m + 6 * (j - 1) + (k - 1)
    }

    pub fn w(&self, j: usize, k: usize) -> usize {
        self.u(j, k) + 3
    }

    pub fn clique(&self) -> VertexSet {
        VertexSet::from_ids(self.vertex_count(), 0..5)
    }

    pub fn variables(&self) -> VertexSet {
        VertexSet::from_ids(self.vertex_count(), (1..=self.n).map(|i| self.x(i)))
    }

    pub fn clause_pairs(&self) -> VertexSet {
        VertexSet::from_ids(
            self.vertex_count(),
            (1..=self.m).flat_map(|j| [self.y(j), self.z(j)]),
        )
    }
}

pub fn hardness_layout(nae: &NaeInstance) -> HardnessLayout {
    HardnessLayout {
        n: nae.n,
        m: nae.clauses.len(),
    }
}

/// The 5-COLORING instance (full lists) that is colorable exactly when
/// `nae` is satisfiable.
pub fn build_hardness_graph(nae: &NaeInstance) -> Instance {
    let lay = hardness_layout(nae);
    let (n, m) = (lay.n, lay.m);
    let mut edges = Vec::new();
    for a in 1..=5 {
        for b in a + 1..=5 {
            edges.push((lay.c(a), lay.c(b)));
        }
    }
    for i in 1..=n {
        for c in 3..=5 {
            edges.push((lay.c(c), lay.x(i)));
        }
    }
    for j in 1..=m {
        for c in 1..=2 {
            edges.push((lay.c(c), lay.y(j)));
            edges.push((lay.c(c), lay.z(j)));
        }
    }
    for j in 1..=m {
        for k in 1..=3 {
            edges.push((lay.c(1), lay.u(j, k)));
            edges.push((lay.c(2), lay.w(j, k)));
        }
    }
    for j in 1..=m {
        for c in 3..=5 {
            for k in (1..=3).filter(|&k| c != k + 2) {
                edges.push((lay.c(c), lay.u(j, k)));
                edges.push((lay.c(c), lay.w(j, k)));
            }
        }
    }
    for i in 1..=n {
        for j in 1..=m {
            edges.push((lay.x(i), lay.y(j)));
            edges.push((lay.x(i), lay.z(j)));
        }
    }
    for j in 1..=m {
        for k in 1..=3 {
            edges.push((lay.y(j), lay.u(j, k)));
            edges.push((lay.z(j), lay.w(j, k)));
        }
    }
    for (j, clause) in (1..=m).zip(&nae.clauses) {
        for (k, &i) in (1..=3).zip(clause) {
            edges.push((lay.x(i), lay.u(j, k)));
            edges.push((lay.x(i), lay.w(j, k)));
        }
    }
    let g = Graph::new(lay.vertex_count(), &edges).expect("gadget ids are in range");
    Instance::full_lists(g, 5).expect("k = 5 is valid")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionReport {
    /// A `2P4` found in the graph, if any.
    pub packing: Option<Vec<Vec<usize>>>,
    pub satisfiable: bool,
    pub colorable: bool,
}

impl ConstructionReport {
    pub fn holds(&self) -> bool {
        self.packing.is_none() && self.satisfiable == self.colorable
    }
}

/// Checks 2P4-freeness and the satisfiability/colorability equivalence by
/// brute force on both sides.
pub fn check_construction(nae: &NaeInstance) -> ConstructionReport {
    let inst = build_hardness_graph(nae);
    ConstructionReport {
        packing: inst.graph().anticomplete_packing(2, 4),
        satisfiable: nae_brute(nae).is_some(),
        colorable: solve_exact(&inst).is_some(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        let nae = parse_nae("p nae 3 1\nc 1 2 3\n").unwrap();
        assert_eq!(nae.n(), 3);
        assert_eq!(nae.clauses(), &[[1, 2, 3]]);
        assert_eq!(parse_nae("p nae 3 1\nc 0 2 3\n").unwrap_err().line, 2);
        assert!(parse_nae("p nae 1 1\nc 1 1 1\n").is_ok());
        assert!(parse_nae("p nae 3 1\nc 1 2\n").is_err());
        assert!(parse_nae("p nae 3 2\nc 1 2 3\n").is_err());
    }

    #[test]
    fn brute_force() {
        let one = NaeInstance::new(3, vec![[1, 2, 3]]).unwrap();
        assert_eq!(nae_brute(&one), Some(vec![true, false, false]));
        assert_eq!(
            nae_brute(&NaeInstance::new(1, vec![[1, 1, 1]]).unwrap()),
            None
        );
        assert_eq!(
            nae_brute(&NaeInstance::new(2, vec![]).unwrap()),
            Some(vec![false, false])
        );
    }

    #[test]
    fn sizes() {
        let g = build_hardness_graph(&NaeInstance::new(3, vec![[1, 2, 3]]).unwrap());
        assert_eq!(g.n(), 16);
        assert_eq!(g.graph().edge_count(), 59);
        let k5 = build_hardness_graph(&NaeInstance::new(0, vec![]).unwrap());
        assert_eq!(k5.graph(), &Graph::complete(5));
    }

    #[test]
    fn structure() {
        let nae = NaeInstance::new(3, vec![[1, 2, 3], [3, 3, 1]]).unwrap();
        let inst = build_hardness_graph(&nae);
        let lay = hardness_layout(&nae);
        let g = inst.graph();
        assert!(g.is_clique(&lay.clique()));
        assert!(g.is_stable_set(&lay.variables()));
        assert!(g.is_stable_set(&lay.clause_pairs()));
    }

    #[test]
    fn small_reports() {
        for nae in [
            NaeInstance::new(3, vec![[1, 2, 3]]).unwrap(),
            NaeInstance::new(1, vec![[1, 1, 1]]).unwrap(),
            NaeInstance::new(0, vec![]).unwrap(),
        ] {
            let report = check_construction(&nae);
            assert!(report.holds(), "{nae:?}: {report:?}");
        }
        assert!(!check_construction(&NaeInstance::new(1, vec![[1, 1, 1]]).unwrap()).colorable);
    }
}
