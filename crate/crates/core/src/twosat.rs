//! Lists of size at most two: encoding as 2-SAT and solving via strongly
//! connected components of the implication graph.

use crate::error::ReduceError;
use crate::instance::{Coloring, Instance};

/// A possibly negated variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Self {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Self {
            var,
            positive: false,
        }
    }

    pub fn negated(self) -> Self {
        Self {
            var: self.var,
            positive: !self.positive,
        }
    }

    /// Implication-graph node: `2v + 1` for `x_v`, `2v` for its negation.
    fn node(self) -> usize {
        2 * self.var + usize::from(self.positive)
    }
}

/// Clause of one or two literals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    Unit(Lit),
    Pair(Lit, Lit),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CnfFormula {
    vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(vars: usize) -> Self {
        Self {
            vars,
            clauses: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Panics when a literal names a variable out of range.
    pub fn push(&mut self, clause: Clause) {
        let ok = |l: Lit| l.var < self.vars;
        let fits = match clause {
            Clause::Unit(a) => ok(a),
            Clause::Pair(a, b) => ok(a) && ok(b),
        };
        assert!(fits, "literal out of range");
        self.clauses.push(clause);
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        let val = |l: Lit| assignment[l.var] == l.positive;
        self.clauses.iter().all(|c| match *c {
            Clause::Unit(a) => val(a),
            Clause::Pair(a, b) => val(a) || val(b),
        })
    }
}

/// Variable `v` is true when vertex `v` takes the smaller color of its list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeMap {
    lists: Vec<crate::instance::ColorSet>,
}

impl DecodeMap {
    pub fn decode(&self, assignment: &[bool]) -> Coloring {
        Coloring(
            self.lists
                .iter()
                .zip(assignment)
                .map(|(&l, &smaller)| {
                    if smaller {
                        l.min().unwrap()
                    } else {
                        l.max().unwrap()
                    }
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Encoding {
    Formula(CnfFormula, DecodeMap),
    /// Some vertex has an empty list.
    ImmediateUnsat {
        vertex: usize,
    },
}

fn check_small_lists(inst: &Instance) -> Result<(), ReduceError> {
    match (0..inst.n()).find(|&v| inst.list(v).len() > 2) {
        Some(v) => Err(ReduceError::Precondition(format!(
            "vertex {v} has {} colors; at most two allowed",
            inst.list(v).len()
        ))),
        None => Ok(()),
    }
}

/// One variable per vertex; for every edge and shared color, a clause
/// forbidding both endpoints from taking it.
pub fn to_2sat(inst: &Instance) -> Result<Encoding, ReduceError> {
    check_small_lists(inst)?;
    if let Some(vertex) = (0..inst.n()).find(|&v| inst.list(v).is_empty()) {
        return Ok(Encoding::ImmediateUnsat { vertex });
    }
    let mut f = CnfFormula::new(inst.n());
    for v in 0..inst.n() {
        if inst.list(v).len() == 1 {
            f.push(Clause::Unit(Lit::pos(v)));
        }
    }
    let takes = |v: usize, c| Lit {
        var: v,
        positive: inst.list(v).min() == Some(c),
    };
    for (u, v) in inst.graph().edges() {
        for c in inst.list(u).intersection(inst.list(v)).iter() {
            f.push(Clause::Pair(takes(u, c).negated(), takes(v, c).negated()));
        }
    }
    Ok(Encoding::Formula(
        f,
        DecodeMap {
            lists: inst.lists().to_vec(),
        },
    ))
}

/// Satisfying assignment, if any. Variable `x` is set when its component
/// comes before that of `¬x` in Tarjan completion order.
pub fn solve_2sat(f: &CnfFormula) -> Option<Vec<bool>> {
    let nodes = 2 * f.vars;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for c in &f.clauses {
        match *c {
            Clause::Unit(a) => adj[a.negated().node()].push(a.node()),
            Clause::Pair(a, b) => {
                adj[a.negated().node()].push(b.node());
                adj[b.negated().node()].push(a.node());
            }
        }
    }
    let comp = tarjan(&adj);
    (0..f.vars)
        .map(|v| {
            let (t, fl) = (comp[2 * v + 1], comp[2 * v]);
            (t != fl).then_some(t < fl)
        })
        .collect()
}

/// Component index of every node; components are numbered in the order
/// Tarjan's algorithm completes them (sinks first).
fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&(v, edge)) = call.last() {
            if edge == 0 && index[v] == UNSEEN {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(edge) {
                call.last_mut().unwrap().1 += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("component members are stacked");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// Coloring of an instance whose lists have at most two colors, if any.
pub fn binary_list_color(inst: &Instance) -> Result<Option<Coloring>, ReduceError> {
    let (f, map) = match to_2sat(inst)? {
        Encoding::ImmediateUnsat { .. } => return Ok(None),
        Encoding::Formula(f, map) => (f, map),
    };
    let Some(assignment) = solve_2sat(&f) else {
        return Ok(None);
    };
    let coloring = map.decode(&assignment);
    inst.verify_coloring(&coloring, false).map_err(|v| {
        ReduceError::Invariant(format!("2-SAT decoding produced a bad coloring: {v}"))
    })?;
    Ok(Some(coloring))
}
