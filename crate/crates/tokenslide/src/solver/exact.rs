//! Breadth-first search over the directed configuration graph. States are
//! independent token sets of fixed size; transitions slide one token along
//! an arc and are not symmetric. Witnesses are shortest.
//!
//! The `_undirected` entry points run the same search with slides allowed
//! against arc direction; instance transformations use them to score their
//! undirected inputs.

use std::collections::{HashSet, VecDeque};
use std::hash::Hash;

use crate::graph::{OrientedGraph, Vertex};
use crate::instance::{Configuration, Instance, Move, ReconfSequence};
use crate::solver::{
    AlgorithmTag, ApplyError, SearchLimits, SearchStats, SolveError, SolveResult,
};

/// Configuration encoding for the visited set. Token lists on at most 64
/// vertices pack into one word; larger graphs fall back to sorted boxes.
trait StateRepr: Clone + Eq + Hash {
    fn from_tokens(tokens: &[Vertex]) -> Self;
    fn occupied(&self, v: Vertex) -> bool;
    fn slide(&self, from: Vertex, to: Vertex) -> Self;
    fn tokens(&self) -> Vec<Vertex>;
}

impl StateRepr for u64 {
    fn from_tokens(tokens: &[Vertex]) -> Self {
        tokens.iter().fold(0u64, |m, &v| m | 1 << (v - 1))
    }

    fn occupied(&self, v: Vertex) -> bool {
        self >> (v - 1) & 1 == 1
    }

    fn slide(&self, from: Vertex, to: Vertex) -> Self {
        self & !(1u64 << (from - 1)) | 1 << (to - 1)
    }

    fn tokens(&self) -> Vec<Vertex> {
        (0u32..64).filter(|b| self >> b & 1 == 1).map(|b| b + 1).collect()
    }
}

impl StateRepr for Box<[Vertex]> {
    fn from_tokens(tokens: &[Vertex]) -> Self {
        let mut v = tokens.to_vec();
        v.sort_unstable();
        v.into()
    }

    fn occupied(&self, v: Vertex) -> bool {
        self.binary_search(&v).is_ok()
    }

    fn slide(&self, from: Vertex, to: Vertex) -> Self {
        let mut v: Vec<Vertex> = self.iter().copied().filter(|&t| t != from).collect();
        let pos = v.binary_search(&to).unwrap_err();
        v.insert(pos, to);
        v.into()
    }

    fn tokens(&self) -> Vec<Vertex> {
        self.to_vec()
    }
}

pub fn solve_exact(
    i: &Instance,
    limits: SearchLimits,
    want_witness: bool,
) -> Result<SolveResult, SolveError> {
    solve_semantics(i, limits, want_witness, false)
}

/// Slides may go against arc direction.
pub fn solve_exact_undirected(
    i: &Instance,
    limits: SearchLimits,
    want_witness: bool,
) -> Result<SolveResult, SolveError> {
    solve_semantics(i, limits, want_witness, true)
}

fn solve_semantics(
    i: &Instance,
    limits: SearchLimits,
    want_witness: bool,
    undirected: bool,
) -> Result<SolveResult, SolveError> {
    if i.graph().vertex_count() <= 64 {
        search::<u64>(i, limits, want_witness, undirected)
    } else {
        search::<Box<[Vertex]>>(i, limits, want_witness, undirected)
    }
}

fn search<R: StateRepr>(
    i: &Instance,
    limits: SearchLimits,
    want_witness: bool,
    undirected: bool,
) -> Result<SolveResult, SolveError> {
    let g = i.graph();
    let (source, target) = (i.source(), i.target());
    let mut stats = SearchStats { algorithm_tag: AlgorithmTag::Exact, ..Default::default() };
    if source.len() != target.len() || !g.is_independent(target.tokens()) {
        return Ok(SolveResult { answer: false, witness: None, stats });
    }
    if source == target {
        let witness = want_witness.then(ReconfSequence::default);
        return Ok(SolveResult { answer: true, witness, stats });
    }

    let start = R::from_tokens(source.tokens());
    let goal = R::from_tokens(target.tokens());
    let mut visited: HashSet<R> = HashSet::from([start.clone()]);
    // Parent arena for witness reconstruction; empty unless requested.
    let mut parents: Vec<(u32, Move)> = Vec::new();
    let mut queue: VecDeque<(R, u32, u32)> = VecDeque::from([(start, 0, u32::MAX)]);
    stats.frontier_peak = 1;
    let mut truncated = false;

    while let Some((state, depth, idx)) = queue.pop_front() {
        stats.states_expanded += 1;
        let at_bound = limits.max_moves.is_some_and(|b| depth >= b);
        for u in state.tokens() {
            let steps =
                if undirected { g.underlying_neighbors(u) } else { g.out_neighbors(u) };
            for &v in steps {
                if state.occupied(v) {
                    continue;
                }
                if g.underlying_neighbors(v).iter().any(|&w| w != u && state.occupied(w)) {
                    continue;
                }
                let next = state.slide(u, v);
                if next == goal {
                    if at_bound {
                        truncated = true;
                        continue;
                    }
                    let witness = want_witness.then(|| {
                        let mut moves = vec![Move { from: u, to: v }];
                        let mut cur = idx;
                        while cur != u32::MAX {
                            let (up, mv) = parents[cur as usize];
                            moves.push(mv);
                            cur = up;
                        }
                        moves.reverse();
                        ReconfSequence::new(moves)
                    });
                    return Ok(SolveResult { answer: true, witness, stats });
                }
                if visited.contains(&next) {
                    continue;
                }
                if at_bound {
                    truncated = true;
                    continue;
                }
                if visited.len() as u64 >= limits.max_states {
                    return Err(SolveError::StateLimitExceeded {
                        states_expanded: stats.states_expanded,
                    });
                }
                visited.insert(next.clone());
                let next_idx = if want_witness {
                    parents.push((idx, Move { from: u, to: v }));
                    (parents.len() - 1) as u32
                } else {
                    u32::MAX
                };
                queue.push_back((next, depth + 1, next_idx));
                stats.frontier_peak = stats.frontier_peak.max(queue.len() as u64);
            }
        }
    }
    if truncated {
        return Err(SolveError::StateLimitExceeded { states_expanded: stats.states_expanded });
    }
    Ok(SolveResult { answer: false, witness: None, stats })
}

pub fn apply_and_validate(
    i: &Instance,
    seq: &ReconfSequence,
) -> Result<Configuration, ApplyError> {
    apply_semantics(i.graph(), i.source(), seq, false)
}

/// Slides may go against arc direction.
pub fn apply_and_validate_undirected(
    i: &Instance,
    seq: &ReconfSequence,
) -> Result<Configuration, ApplyError> {
    apply_semantics(i.graph(), i.source(), seq, true)
}

pub(crate) fn apply_semantics(
    g: &OrientedGraph,
    start: &Configuration,
    seq: &ReconfSequence,
    undirected: bool,
) -> Result<Configuration, ApplyError> {
    let mut tokens = start.tokens().to_vec();
    for (step0, mv) in seq.moves.iter().enumerate() {
        let step = step0 + 1;
        let Some(pos) = tokens.iter().position(|&t| t == mv.from) else {
            return Err(ApplyError::NoTokenAtSource { step, vertex: mv.from });
        };
        // Occupancy before arc existence: an arc into an occupied vertex
        // implies a dependent current state, so checking arcs first would
        // make DestinationOccupied unreachable.
        if tokens.contains(&mv.to) {
            return Err(ApplyError::DestinationOccupied { step, vertex: mv.to });
        }
        if undirected {
            if !g.has_edge(mv.from, mv.to) {
                return Err(ApplyError::NotAnEdge { step, from: mv.from, to: mv.to });
            }
        } else if !g.has_arc(mv.from, mv.to) {
            return Err(ApplyError::NotAnArc { step, from: mv.from, to: mv.to });
        }
        tokens[pos] = mv.to;
        if !g.is_independent(&tokens) {
            return Err(ApplyError::ResultNotIndependent { step });
        }
    }
    Ok(Configuration::new(tokens).expect("destinations were unoccupied"))
}
