//! Reduction of instances without good P3s to lists of size at most two.

use std::sync::Arc;

use log::debug;

use crate::error::ReduceError;
use crate::frugality::kill_singletons;
use crate::graph::{Graph, VertexSet};
use crate::instance::{Color, ColorSet, Instance};
use crate::oracle;
use crate::trace::{
    ColorPermutation, ContractionContext, LiftStep, ReductionTrace, SpanningOrigin,
};

const FOUR: ColorSet = ColorSet::from_bits(0b01000);
const FIVE: ColorSet = ColorSet::from_bits(0b10000);
const FOUR_FIVE: ColorSet = ColorSet::from_bits(0b11000);
const LOW: ColorSet = ColorSet::from_bits(0b00111);

/// The sets around `u0` in the list graph `G^L`.
#[derive(Clone, Debug)]
pub struct AbhomoContext {
    pub u0: usize,
    /// `G^L`-neighbors of `u0` whose list contains 4.
    pub a: VertexSet,
    /// `G^L`-neighbors of `u0` whose list contains 5.
    pub b: VertexSet,
    /// Vertices at `G^L`-distance 2 from `u0` with a `G^L`-neighbor in `a`.
    pub a_prime: VertexSet,
    pub b_prime: VertexSet,
    pub list_graph: Graph,
    /// `N^2_{G^L}[u0]`.
    pub ball: VertexSet,
    /// `N^2_{G^L}(u0)`.
    pub second: VertexSet,
}

fn context_unchecked(inst: &Instance, list_graph: Graph, u0: usize) -> AbhomoContext {
    let n = inst.n();
    let ball = list_graph.dist_neighborhood(u0, 2, true);
    let second = list_graph.dist_neighborhood(u0, 2, false);
    let first = list_graph.neighbor_set(u0);
    let a = VertexSet::from_ids(n, first.iter().filter(|&v| inst.list(v).contains(4)));
    let b = VertexSet::from_ids(n, first.iter().filter(|&v| inst.list(v).contains(5)));
    let touching = |side: &VertexSet| {
        VertexSet::from_ids(
            n,
            second
                .iter()
                .filter(|&w| list_graph.neighbors(w).iter().any(|&x| side.contains(x))),
        )
    };
    let a_prime = touching(&a);
    let b_prime = touching(&b);
    AbhomoContext {
        u0,
        a,
        b,
        a_prime,
        b_prime,
        list_graph,
        ball,
        second,
    }
}

fn context_preconditions(inst: &Instance, u0: usize) -> Result<(), String> {
    if inst.k() != 5 {
        return Err(format!("k = {} but the structure check needs k = 5", inst.k()));
    }
    if u0 >= inst.n() {
        return Err(format!("vertex {u0} out of range"));
    }
    if inst.list(u0) != LOW {
        return Err(format!("L({u0}) = {:?}, expected {{1,2,3}}", inst.list(u0)));
    }
    if let Some(v) = (0..inst.n()).find(|&v| !matches!(inst.list(v).len(), 0 | 2 | 3)) {
        return Err(format!(
            "list of vertex {v} has size {}",
            inst.list(v).len()
        ));
    }
    if let Some(p) = inst.good_p3_find() {
        return Err(format!("good P3 {:?} present", p.vertices()));
    }
    Ok(())
}

/// Computes `A`, `B`, `A'` and `B'` for `u0`.
pub fn abhomo_context(inst: &Instance, u0: usize) -> Result<AbhomoContext, ReduceError> {
    context_preconditions(inst, u0).map_err(ReduceError::Precondition)?;
    Ok(context_unchecked(inst, inst.list_graph(), u0))
}

/// Outcome of checking the structure around `u0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbhomoReport {
    /// The instance does not meet the hypotheses; nothing was checked.
    Skipped(String),
    /// Descriptions of every property that failed; empty when all hold.
    Checked(Vec<String>),
}

impl AbhomoReport {
    pub fn is_clean(&self) -> bool {
        matches!(self, AbhomoReport::Checked(v) if v.is_empty())
    }
}

/// Checks every structural property of the neighborhood of `ctx.u0`.
pub fn abhomo_check(ctx: &AbhomoContext, inst: &Instance) -> AbhomoReport {
    if let Err(why) = context_preconditions(inst, ctx.u0) {
        return AbhomoReport::Skipped(why);
    }
    let gl = &ctx.list_graph;
    let g = inst.graph();
    let mut bad = Vec::new();

    if let Some(v) = ctx
        .ball
        .iter()
        .find(|&v| !matches!(inst.list(v).len(), 2 | 3))
    {
        bad.push(format!("ball-list-size: vertex {v}"));
    }
    if let Some(w) = ctx.second.iter().find(|&w| inst.list(w) != FOUR_FIVE) {
        bad.push(format!("second-layer-list: vertex {w}"));
    }
    let mut union = ctx.a_prime.clone();
    union.union_with(&ctx.b_prime);
    if union.to_vec() != ctx.second.to_vec() {
        bad.push("second-layer-cover".into());
    }
    if !gl.is_clique(&ctx.a) || !gl.is_clique(&ctx.b) {
        bad.push("first-layer-cliques".into());
    }
    for w in ctx.ball.iter() {
        for (side, name) in [(&ctx.a, "A"), (&ctx.b, "B")] {
            let others: Vec<usize> = side.iter().filter(|&x| x != w).collect();
            let hits = others.iter().filter(|&&x| gl.has_edge(w, x)).count();
            if hits != 0 && hits != others.len() {
                bad.push(format!("homogeneity: vertex {w} splits {name}"));
            }
        }
    }
    if !gl.is_clique(&ctx.a_prime) || !gl.is_clique(&ctx.b_prime) {
        bad.push("second-layer-cliques".into());
    }
    if ctx.second.len() >= 2 && ctx.a_prime.len() <= 1 && ctx.b_prime.len() <= 1 {
        if ctx.a_prime.len() != 1
            || ctx.b_prime.len() != 1
            || !ctx.a_prime.is_disjoint(&ctx.b_prime)
        {
            bad.push("separated: A' and B' are not distinct singletons".into());
        }
        if ctx.a.is_empty() || ctx.b.is_empty() || !ctx.a.is_disjoint(&ctx.b) {
            bad.push("separated: A and B not nonempty and disjoint".into());
        }
        if !g.anticomplete(&ctx.a_prime.to_vec(), &ctx.b.to_vec())
            || !g.anticomplete(&ctx.b_prime.to_vec(), &ctx.a.to_vec())
        {
            bad.push("separated: cross edges between layers".into());
        }
        let clash = ctx
            .a
            .iter()
            .any(|x| ctx.b.iter().any(|y| inst.list(x).intersects(inst.list(y))));
        if clash {
            bad.push("separated: lists of A and B meet".into());
        }
    }
    AbhomoReport::Checked(bad)
}

/// Result of one run of the large-list reduction.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub instance: Instance,
    pub lift: LiftStep,
    /// Which step (3 to 11) produced the output.
    pub fired: u8,
}

fn check_reducible(inst: &Instance) -> Result<(), ReduceError> {
    if inst.k() != 5 {
        return Err(ReduceError::UnsupportedK(inst.k()));
    }
    if let Some(v) = (0..inst.n()).find(|&v| inst.list(v).len() == 1) {
        return Err(ReduceError::Precondition(format!(
            "vertex {v} has a single-color list"
        )));
    }
    if let Some(p) = inst.good_p3_find() {
        return Err(ReduceError::Precondition(format!(
            "good P3 {:?} present",
            p.vertices()
        )));
    }
    Ok(())
}

/// Applies one round of the eleven-step reduction with center `u0`.
///
/// The output represents the input: `p` drops, frugal feasibility carries
/// forward and any coloring of the output lifts back through `lift`.
pub fn algorithm_a(inst: &Instance, u0: usize) -> Result<ReductionStep, ReduceError> {
    check_reducible(inst)?;
    if u0 >= inst.n() || inst.list(u0).len() < 3 {
        return Err(ReduceError::Precondition(format!(
            "center {u0} needs a list of at least three colors"
        )));
    }
    algorithm_a_unchecked(inst, u0)
}

fn algorithm_a_unchecked(inst: &Instance, u0: usize) -> Result<ReductionStep, ReduceError> {
    let leading = ColorSet::from_colors(inst.list(u0).iter().take(3));
    let perm = ColorPermutation::leading(leading, inst.k());
    let renamed = if perm.is_identity() {
        inst.clone()
    } else {
        inst.with_lists(inst.lists().iter().map(|&l| perm.apply_set(l)).collect())
    };
    let (out, inner, fired, witness) = run_steps(&renamed, u0)?;
    let (instance, lift) = if perm.is_identity() {
        (out, inner)
    } else {
        let inv = perm.inverse();
        let lists = out.lists().iter().map(|&l| inv.apply_set(l)).collect();
        (
            out.with_lists(lists),
            LiftStep::Permuted {
                permutation: perm,
                inner: Box::new(inner),
            },
        )
    };
    let (before, after) = (inst.p_value(), instance.p_value());
    debug!("step {fired} witness {witness} p {before} -> {after}");
    if after >= before {
        return Err(ReduceError::Invariant(format!(
            "step {fired} did not decrease p ({before} -> {after})"
        )));
    }
    if fired > 5 && inst.lists().iter().any(|l| l.len() >= 4) {
        return Err(ReduceError::Invariant(format!(
            "a list of size at least four survived to step {fired}"
        )));
    }
    Ok(ReductionStep {
        instance,
        lift,
        fired,
    })
}

fn spanning(inst: &Instance, lists: Vec<ColorSet>, step: u8) -> (Instance, LiftStep) {
    (
        inst.with_lists(lists),
        LiftStep::Spanning(SpanningOrigin::AlgorithmStep(step)),
    )
}

fn invariant(msg: &str) -> ReduceError {
    ReduceError::Invariant(format!("step 11: {msg}"))
}

/// Steps 3 to 11 on an instance whose colors are already renamed so that
/// `{1,2,3}` lies in `L(u0)`. Returns the output, its lift step, the step
/// number and the witness vertex.
fn run_steps(inst: &Instance, u0: usize) -> Result<(Instance, LiftStep, u8, usize), ReduceError> {
    let n = inst.n();
    let gl = inst.list_graph();

    if let Some(u) = (0..n).find(|&u| gl.degree(u) >= 5) {
        let (out, step) = spanning(inst, vec![ColorSet::EMPTY; n], 3);
        return Ok((out, step, 3, u));
    }

    if let Some(u) = (0..n).find(|&u| gl.degree(u) < inst.list(u).len()) {
        let keep = VertexSet::from_ids(n, (0..n).filter(|&v| v != u));
        let (out, _) = inst.induced(&keep);
        let step = LiftStep::FreeVertexRemoval {
            vertex: u,
            list: inst.list(u),
            list_neighbors: gl.neighbors(u).to_vec(),
        };
        return Ok((out, step, 4, u));
    }

    if let Some(u) = (0..n).find(|&u| gl.dist_neighborhood(u, 2, false).len() <= 1) {
        let ball = gl.dist_neighborhood(u, 2, true);
        let second = gl.dist_neighborhood(u, 2, false);
        let (local, local_ids) = inst.induced(&ball);
        let phis = oracle::all_colorings(&local, true);
        if phis.is_empty() {
            let (out, step) = spanning(inst, vec![ColorSet::EMPTY; n], 5);
            return Ok((out, step, 5, u));
        }
        let mut lists = inst.lists().to_vec();
        for w in second.iter() {
            let lw = local_ids
                .binary_search(&w)
                .expect("second layer lies in the ball");
            lists[w] = ColorSet::from_colors(phis.iter().map(|phi| phi.color(lw)));
        }
        let mut removed = gl.neighbor_set(u);
        removed.insert(u);
        let keep = VertexSet::from_ids(n, (0..n).filter(|&v| !removed.contains(v)));
        let (out, ids) = inst.with_lists(lists.clone()).induced(&keep);
        debug_assert!(ids.iter().all(|&v| !removed.contains(v)));
        let step = LiftStep::NeighborhoodRemoval {
            center: u,
            removed: removed.to_vec(),
            local: Box::new(local),
            local_ids,
            boundary: second.to_vec(),
        };
        return Ok((out, step, 5, u));
    }

    let ctx = context_unchecked(inst, gl, u0);
    let gl = &ctx.list_graph;
    let strip = |set: &VertexSet, colors: ColorSet| {
        let mut lists = inst.lists().to_vec();
        for v in set.iter() {
            lists[v] = lists[v].difference(colors);
        }
        lists
    };

    if ctx.a_prime.len() >= 2 {
        let (out, step) = spanning(inst, strip(&ctx.a, FOUR_FIVE), 6);
        return Ok((out, step, 6, u0));
    }
    if ctx.b_prime.len() >= 2 {
        let (out, step) = spanning(inst, strip(&ctx.b, FOUR_FIVE), 7);
        return Ok((out, step, 7, u0));
    }
    if let Some(w) = twin_pair(inst, &ctx.a) {
        let (out, step) = spanning(inst, strip(&ctx.a_prime, FOUR), 8);
        return Ok((out, step, 8, w));
    }
    if let Some(w) = twin_pair(inst, &ctx.b) {
        let (out, step) = spanning(inst, strip(&ctx.b_prime, FIVE), 9);
        return Ok((out, step, 9, w));
    }
    if gl.degree(u0) >= 4 {
        let mut lists = strip(&ctx.a_prime, FOUR);
        for v in ctx.b_prime.iter() {
            lists[v] = lists[v].difference(FIVE);
        }
        let (out, step) = spanning(inst, lists, 10);
        return Ok((out, step, 10, u0));
    }

    let lu0 = inst.list(u0);
    let pick = |side: &VertexSet| -> Option<(Color, usize)> {
        let mut best: Option<(Color, usize)> = None;
        for v in side.iter() {
            if let Some(c) = inst.list(v).intersection(lu0).min() {
                if best.is_none_or(|(bc, _)| c < bc) {
                    best = Some((c, v));
                }
            }
        }
        best
    };
    let (i, a) = pick(&ctx.a).ok_or_else(|| invariant("no color of L(u0) meets A"))?;
    let (j, b) = pick(&ctx.b).ok_or_else(|| invariant("no color of L(u0) meets B"))?;
    if i == j || a == b {
        return Err(invariant("A and B share a color or a vertex"));
    }
    let nbrs = gl.neighbors(u0);
    if nbrs.len() != 3 {
        return Err(invariant(
            "center does not have exactly three list-graph neighbors",
        ));
    }
    let c = *nbrs
        .iter()
        .find(|&&v| v != a && v != b)
        .ok_or_else(|| invariant("third neighbor missing"))?;
    if ctx.a_prime.len() != 1 || ctx.b_prime.len() != 1 {
        return Err(invariant("second layer is not two singletons"));
    }
    let a_prime = ctx.a_prime.iter().next().unwrap();
    let b_prime = ctx.b_prime.iter().next().unwrap();

    let mut lists = inst.lists().to_vec();
    lists[u0] = ColorSet::from_colors([i, j]);
    lists[a] = ColorSet::from_colors([i, 4]);
    lists[b] = ColorSet::from_colors([j, 5]);
    let keep = VertexSet::from_ids(n, (0..n).filter(|&v| v != c));
    let (out, _) = inst.with_lists(lists).induced(&keep);
    let step = LiftStep::Contraction(Box::new(ContractionContext {
        u0,
        a,
        b,
        c,
        a_prime,
        b_prime,
        i,
        j,
        list_a: inst.list(a),
        list_b: inst.list(b),
        list_c: inst.list(c),
    }));
    Ok((out, step, 11, u0))
}

/// First vertex of the lexicographically first pair in `side` sharing a
/// two-color list.
fn twin_pair(inst: &Instance, side: &VertexSet) -> Option<usize> {
    let members = side.to_vec();
    members.iter().enumerate().find_map(|(x, &v)| {
        let lv = inst.list(v);
        (lv.len() == 2 && members[x + 1..].iter().any(|&w| inst.list(w) == lv)).then_some(v)
    })
}

/// Applies the reduction at the smallest vertex with a list of three or
/// more colors, then removes singletons, until every list has size 0 or 2.
pub fn reduce_to_binary(inst: &Instance) -> Result<(Instance, ReductionTrace), ReduceError> {
    check_reducible(inst)?;
    let mut trace = ReductionTrace::new(Arc::new(inst.clone()));
    let mut current = inst.clone();
    while let Some(u0) = (0..current.n()).find(|&v| current.list(v).len() >= 3) {
        let step = algorithm_a_unchecked(&current, u0)?;
        trace.push(step.lift);
        let (next, removals) = kill_singletons(&step.instance);
        trace.extend(removals);
        current = next;
    }
    debug_assert!(current.lists().iter().all(|l| matches!(l.len(), 0 | 2)));
    Ok((current, trace))
}
