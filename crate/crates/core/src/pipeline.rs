//! End-to-end solver: profile refinements, reduction to two-color lists,
//! 2-SAT, and certificate lifting.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use log::{debug, info};
use rayon::prelude::*;

use crate::error::ReduceError;
use crate::frugality::{frugal_profile, kill_singletons, FrugalProfile};
use crate::goodp3::{upsilon, UpsilonStream};
use crate::instance::{Coloring, Instance};
use crate::reducer::reduce_to_binary;
use crate::trace::{LiftStep, ReductionTrace, SpanningOrigin};
use crate::twosat::binary_list_color;

/// Progress counters reported on abort and in logs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Frugality-profile elements taken from the stream.
    pub profile_elements: u64,
    /// Leaves that went through the binary reduction and 2-SAT.
    pub leaves: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// A coloring verified against the input instance.
    Colorable(Coloring),
    NotColorable,
    /// `r` pairwise anticomplete induced P3s.
    NotRP3Free(Vec<Vec<usize>>),
    /// The leaf budget ran out before a decision.
    ScaleAbort(SearchStats),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub r: u64,
    /// Skip the freeness check. A `NotColorable` answer is then only
    /// trustworthy when the input really is free of the forbidden packing.
    pub force: bool,
    /// Worker threads; `1` runs the deterministic sequential search.
    pub jobs: usize,
    /// Maximum number of leaves to evaluate.
    pub budget: Option<u64>,
    /// Log every leaf at info level.
    pub trace: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            r: 2,
            force: false,
            jobs: 1,
            budget: None,
            trace: false,
        }
    }
}

/// Lazy stream of profile leaves: every good-P3-free refinement of every
/// frugality-profile element, with singletons removed.
pub struct XiStream {
    source: Arc<Instance>,
    profile: FrugalProfile,
    current: Option<UpsilonStream>,
    prune: bool,
    profile_elements: u64,
}

/// Leaves of the refinement tree for `inst`, depth first, each with the
/// trace back to `inst`. Every leaf has no good P3 and no one-color list.
pub fn xi_stream(inst: &Instance, r: u64) -> XiStream {
    XiStream {
        source: Arc::new(inst.clone()),
        profile: frugal_profile(inst, r),
        current: None,
        prune: false,
        profile_elements: 0,
    }
}

impl XiStream {
    /// Skips branches that unit propagation already refutes. Leaves that
    /// survive may still have empty lists.
    pub fn pruned(mut self) -> Self {
        self.prune = true;
        self.profile = self.profile.pruned();
        self
    }

    pub fn profile_elements(&self) -> u64 {
        self.profile_elements
    }
}

impl Iterator for XiStream {
    type Item = (Instance, ReductionTrace);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(stream) = self.current.as_mut() {
                if let Some(refined) = stream.next() {
                    return Some(make_leaf(&self.source, &refined));
                }
                self.current = None;
            }
            let (_, element) = self.profile.next()?;
            self.profile_elements += 1;
            let stream = upsilon(&element);
            self.current = Some(if self.prune { stream.pruned() } else { stream });
        }
    }
}

fn make_leaf(source: &Arc<Instance>, refined: &Instance) -> (Instance, ReductionTrace) {
    let mut trace = ReductionTrace::new(Arc::clone(source));
    trace.push(LiftStep::Spanning(SpanningOrigin::FrugalProfile));
    trace.push(LiftStep::Spanning(SpanningOrigin::GoodP3Profile));
    let (leaf, removals) = kill_singletons(refined);
    trace.extend(removals);
    (leaf, trace)
}

/// Tries one leaf; a coloring is lifted all the way to the source.
fn try_leaf(leaf: &Instance, mut trace: ReductionTrace) -> Result<Option<Coloring>, ReduceError> {
    if leaf.has_empty_list() {
        return Ok(None);
    }
    let (binary, reduction) = reduce_to_binary(leaf)?;
    let Some(phi) = binary_list_color(&binary)? else {
        return Ok(None);
    };
    trace.extend(reduction.steps().iter().cloned());
    trace.lift(&phi).map(Some)
}

/// Decides colorability of a 5-list instance.
pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<Verdict, ReduceError> {
    if inst.k() != 5 {
        return Err(ReduceError::UnsupportedK(inst.k()));
    }
    if opts.r == 0 {
        return Err(ReduceError::Precondition("r must be at least 1".into()));
    }
    if !opts.force {
        if let Some(packing) = inst.graph().anticomplete_packing(opts.r as usize, 3) {
            return Ok(Verdict::NotRP3Free(packing));
        }
    }
    if inst.has_empty_list() {
        return Ok(Verdict::NotColorable);
    }
    if opts.jobs <= 1 {
        solve_sequential(inst, opts)
    } else {
        solve_parallel(inst, opts)
    }
}

fn solve_sequential(inst: &Instance, opts: &SolveOptions) -> Result<Verdict, ReduceError> {
    let mut stream = xi_stream(inst, opts.r).pruned();
    let mut leaves = 0u64;
    while let Some((leaf, trace)) = stream.next() {
        if opts.budget.is_some_and(|b| leaves >= b) {
            return Ok(Verdict::ScaleAbort(SearchStats {
                profile_elements: stream.profile_elements(),
                leaves,
            }));
        }
        leaves += 1;
        if opts.trace {
            info!(
                "leaf {leaves}: {} vertices, p = {}",
                leaf.n(),
                leaf.p_value()
            );
        }
        if let Some(phi) = try_leaf(&leaf, trace)? {
            debug!("colorable after {leaves} leaves");
            return Ok(Verdict::Colorable(phi));
        }
    }
    debug!(
        "exhausted {} profile elements and {leaves} leaves",
        stream.profile_elements()
    );
    Ok(Verdict::NotColorable)
}

enum Branch {
    Found(Coloring),
    Failed(ReduceError),
}

fn solve_parallel(inst: &Instance, opts: &SolveOptions) -> Result<Verdict, ReduceError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| ReduceError::Invariant(format!("thread pool: {e}")))?;
    let source = Arc::new(inst.clone());
    let leaves = AtomicU64::new(0);
    let elements = AtomicU64::new(0);
    let out_of_budget = AtomicBool::new(false);
    let found = pool.install(|| {
        frugal_profile(inst, opts.r)
            .pruned()
            .par_bridge()
            .find_map_any(|(_, element)| {
                elements.fetch_add(1, Ordering::Relaxed);
                for refined in upsilon(&element).pruned() {
                    if out_of_budget.load(Ordering::Relaxed) {
                        return None;
                    }
                    let seen = leaves.fetch_add(1, Ordering::Relaxed);
                    if opts.budget.is_some_and(|b| seen >= b) {
                        out_of_budget.store(true, Ordering::Relaxed);
                        return None;
                    }
                    let (leaf, trace) = make_leaf(&source, &refined);
                    match try_leaf(&leaf, trace) {
                        Ok(Some(phi)) => return Some(Branch::Found(phi)),
                        Ok(None) => {}
                        Err(e) => return Some(Branch::Failed(e)),
                    }
                }
                None
            })
    });
    match found {
        Some(Branch::Found(phi)) => Ok(Verdict::Colorable(phi)),
        Some(Branch::Failed(e)) => Err(e),
        None if out_of_budget.load(Ordering::Relaxed) => Ok(Verdict::ScaleAbort(SearchStats {
            profile_elements: elements.load(Ordering::Relaxed),
            leaves: leaves
                .load(Ordering::Relaxed)
                .min(opts.budget.unwrap_or(u64::MAX)),
        })),
        None => Ok(Verdict::NotColorable),
    }
}

/// Lifts a coloring of the trace's final instance to its source.
pub fn lift(trace: &ReductionTrace, phi: &Coloring) -> Result<Coloring, ReduceError> {
    trace.lift(phi)
}
