//! Lift steps: the record that turns a coloring of a reduced instance back
//! into a coloring of the instance it came from.

use std::sync::Arc;

use crate::error::ReduceError;
use crate::instance::{Color, ColorSet, Coloring, Instance, MAX_K};
use crate::oracle;

/// Where a spanning (list-only) refinement came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanningOrigin {
    FrugalProfile,
    GoodP3Profile,
    /// A list-only step of the large-list reduction (steps 3, 5b, 6-10).
    AlgorithmStep(u8),
}

/// Bijection of `[k]` onto itself; `forward[c]` is the image of `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColorPermutation {
    forward: [Color; MAX_K as usize + 1],
}

impl ColorPermutation {
    pub fn identity() -> Self {
        let mut forward = [0; MAX_K as usize + 1];
        for (c, slot) in forward.iter_mut().enumerate() {
            *slot = c as Color;
        }
        Self { forward }
    }

    /// Sends the members of `first` (ascending) to `1, 2, ..`, then the other
    /// colors of `[k]` (ascending) to the following values.
    pub fn leading(first: ColorSet, k: u8) -> Self {
        let mut perm = Self::identity();
        let rest = ColorSet::full(k).difference(first);
        for (target, c) in first.iter().chain(rest.iter()).enumerate() {
            perm.forward[c as usize] = target as Color + 1;
        }
        perm
    }

    pub fn apply(&self, c: Color) -> Color {
        self.forward[c as usize]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = Self::identity();
        for c in 1..=MAX_K {
            inv.forward[self.forward[c as usize] as usize] = c;
        }
        inv
    }

    pub fn apply_set(&self, set: ColorSet) -> ColorSet {
        ColorSet::from_colors(set.iter().map(|c| self.apply(c)))
    }

    pub fn apply_coloring(&self, coloring: &Coloring) -> Coloring {
        Coloring(coloring.as_slice().iter().map(|&c| self.apply(c)).collect())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

/// Everything needed to undo the contraction step of the large-list
/// reduction. Colors are in the permuted frame where `L(u0) = {1,2,3}`;
/// vertex ids are parent ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionContext {
    pub u0: usize,
    pub a: usize,
    pub b: usize,
    /// The third list-graph neighbor of `u0`; the only removed vertex.
    pub c: usize,
    pub a_prime: usize,
    pub b_prime: usize,
    pub i: Color,
    pub j: Color,
    pub list_a: ColorSet,
    pub list_b: ColorSet,
    pub list_c: ColorSet,
}

/// One reduction edge, recorded so a child coloring can be lifted to the
/// parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftStep {
    /// Spanning refinement: a child coloring is a parent coloring.
    Spanning(SpanningOrigin),
    /// `vertex` had the single color `color` and was deleted.
    SingletonRemoval {
        vertex: usize,
        color: Color,
    },
    /// `vertex` had more colors than list-graph neighbors and was deleted.
    FreeVertexRemoval {
        vertex: usize,
        list: ColorSet,
        list_neighbors: Vec<usize>,
    },
    /// The closed list-graph neighborhood of `center` was deleted. `local`
    /// is the parent restricted to the radius-2 ball, `local_ids` its parent
    /// ids, `boundary` the ball vertices that survive in the child.
    NeighborhoodRemoval {
        center: usize,
        removed: Vec<usize>,
        local: Box<Instance>,
        local_ids: Vec<usize>,
        boundary: Vec<usize>,
    },
    Contraction(Box<ContractionContext>),
    /// `inner` was computed on the parent with colors renamed by
    /// `permutation`.
    Permuted {
        permutation: ColorPermutation,
        inner: Box<LiftStep>,
    },
}

fn missing(what: &str) -> ReduceError {
    ReduceError::Invariant(format!("lift: {what}"))
}

/// Parent-sized vector with the child colors placed on the kept ids and `0`
/// on `removed` (sorted ascending).
fn spread(child: &Coloring, removed: &[usize]) -> Vec<Color> {
    let n = child.len() + removed.len();
    let mut out = Vec::with_capacity(n);
    let mut next_child = 0;
    let mut r = 0;
    for v in 0..n {
        if r < removed.len() && removed[r] == v {
            out.push(0);
            r += 1;
        } else {
            out.push(child.color(next_child));
            next_child += 1;
        }
    }
    out
}

const LOW: ColorSet = ColorSet::from_bits(0b00111);

impl LiftStep {
    /// Lifts a coloring of the child instance to one of the parent.
    pub fn lift(&self, child: &Coloring) -> Result<Coloring, ReduceError> {
        match self {
            LiftStep::Spanning(_) => Ok(child.clone()),
            LiftStep::SingletonRemoval { vertex, color } => {
                let mut out = spread(child, &[*vertex]);
                out[*vertex] = *color;
                Ok(Coloring(out))
            }
            LiftStep::FreeVertexRemoval {
                vertex,
                list,
                list_neighbors,
            } => {
                let mut out = spread(child, &[*vertex]);
                let used = ColorSet::from_colors(list_neighbors.iter().map(|&w| out[w]));
                out[*vertex] = list
                    .difference(used)
                    .min()
                    .ok_or_else(|| missing("no free color for a removed low-degree vertex"))?;
                Ok(Coloring(out))
            }
            LiftStep::NeighborhoodRemoval {
                removed,
                local,
                local_ids,
                boundary,
                ..
            } => {
                let mut out = spread(child, removed);
                let local_of = |v: usize| local_ids.iter().position(|&x| x == v);
                let pinned: Vec<(usize, Color)> = boundary
                    .iter()
                    .map(|&v| (local_of(v).expect("boundary lies in the ball"), out[v]))
                    .collect();
                let found = oracle::all_colorings(local, true)
                    .into_iter()
                    .find(|phi| pinned.iter().all(|&(lv, c)| phi.color(lv) == c))
                    .ok_or_else(|| missing("no local frugal coloring matches the boundary"))?;
                for &v in removed {
                    let lv = local_of(v).expect("removed vertices lie in the ball");
                    out[v] = found.color(lv);
                }
                Ok(Coloring(out))
            }
            LiftStep::Contraction(ctx) => lift_contraction(ctx, child),
            LiftStep::Permuted { permutation, inner } => {
                let renamed = permutation.apply_coloring(child);
                let lifted = inner.lift(&renamed)?;
                Ok(permutation.inverse().apply_coloring(&lifted))
            }
        }
    }
}

fn lift_contraction(ctx: &ContractionContext, child: &Coloring) -> Result<Coloring, ReduceError> {
    let mut out = spread(child, &[ctx.c]);
    let four = ColorSet::single(4);
    let five = ColorSet::single(5);
    let four_five = four.union(five);
    let (color_a, color_b, color_c) = match (out[ctx.a_prime], out[ctx.b_prime]) {
        (4, 4) => {
            let (k, l) = pick_pair(ctx.list_a, ctx.list_c, four_five, 4, 5)?;
            (k, 5, l)
        }
        (5, 5) => {
            let (k, l) = pick_pair(ctx.list_b, ctx.list_c, four_five, 5, 4)?;
            (4, k, l)
        }
        (5, 4) => {
            let k = ctx
                .list_c
                .difference(four_five)
                .min()
                .ok_or_else(|| missing("third neighbor has no color outside {4,5}"))?;
            (4, 5, k)
        }
        (x, y) => {
            return Err(missing(&format!(
                "contraction witnesses colored ({x}, {y}); the child coloring cannot be proper"
            )))
        }
    };
    let taken = ColorSet::from_colors([color_a, color_b, color_c]);
    let color_u0 = LOW
        .difference(taken)
        .min()
        .ok_or_else(|| missing("no color left for the contracted center"))?;
    out[ctx.a] = color_a;
    out[ctx.b] = color_b;
    out[ctx.c] = color_c;
    out[ctx.u0] = color_u0;
    Ok(Coloring(out))
}

/// Colors `k` for the witness on the side whose distance-2 vertex took
/// `shared`, and `l` for the third neighbor.
///
/// When the third neighbor also carries `shared` it is adjacent to the
/// witness and to the distance-2 vertex, so `l` avoids `shared` and `k`.
/// Otherwise it may sit on the opposite side and must avoid `other` too.
fn pick_pair(
    witness: ColorSet,
    third: ColorSet,
    four_five: ColorSet,
    shared: Color,
    other: Color,
) -> Result<(Color, Color), ReduceError> {
    let witness_free = witness.difference(four_five);
    if third.contains(shared) {
        for k in witness_free.iter() {
            if let Some(l) = third.without(shared).without(k).min() {
                return Ok((k, l));
            }
        }
        Err(missing(
            "witness and third neighbor share one two-color list",
        ))
    } else {
        let k = witness_free
            .min()
            .ok_or_else(|| missing("witness has no color outside {4,5}"))?;
        let l = third
            .without(k)
            .without(other)
            .min()
            .ok_or_else(|| missing("third neighbor has no free color"))?;
        Ok((k, l))
    }
}

/// Ordered lift steps from a source instance down to a reduced one.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    source: Arc<Instance>,
    steps: Vec<LiftStep>,
}

impl ReductionTrace {
    pub fn new(source: Arc<Instance>) -> Self {
        Self {
            source,
            steps: Vec::new(),
        }
    }

    pub fn source(&self) -> &Instance {
        &self.source
    }

    pub fn steps(&self) -> &[LiftStep] {
        &self.steps
    }

    pub fn push(&mut self, step: LiftStep) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, steps: impl IntoIterator<Item = LiftStep>) {
        self.steps.extend(steps);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the steps in reverse and checks the result against the
    /// source instance.
    pub fn lift(&self, coloring: &Coloring) -> Result<Coloring, ReduceError> {
        let mut current = coloring.clone();
        for step in self.steps.iter().rev() {
            current = step.lift(&current)?;
        }
        self.source
            .verify_coloring(&current, false)
            .map_err(|v| ReduceError::Invariant(format!("lifted coloring fails: {v}")))?;
        Ok(current)
    }
}
