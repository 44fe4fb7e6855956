//! Bipartite reduction: every vertex gains a twin with an identical
//! neighborhood, and every undirected edge becomes a directed four-cycle
//! `u -> v -> u' -> v' -> u` over the two vertices and their twins.
//!
//! A token can then cross any original edge in either direction: with the
//! kept orientation directly, against it by detouring through the twins.
//! Token sets carry over unchanged, and no reachable configuration ever
//! holds both a vertex and its twin.

use crate::classify::classify;
use crate::graph::{OrientedGraph, Vertex};
use crate::instance::{Instance, Move, ReconfSequence};

use super::{
    build_instance, normalized_edges, ReductionArtifact, ReductionDetail,
    ReductionError, ReductionPolicy,
};

/// Twin of `v` on an `n`-vertex original: `v + n`, and back again.
fn twin(n: u32, v: Vertex) -> Vertex {
    if v > n {
        v - n
    } else {
        v + n
    }
}

/// Doubles the graph into directed four-cycles, one per edge, with a
/// policy-chosen surviving orientation. The input must be bipartite.
pub fn reduce_bipartite(
    i: &Instance,
    p: &ReductionPolicy,
) -> Result<(Instance, ReductionArtifact), ReductionError> {
    let g = i.graph();
    let n = g.vertex_count();
    if !classify(g).is_bipartite {
        return Err(ReductionError::NotBipartite);
    }
    let mut coins = p.coins();
    let mut kept = Vec::new();
    let mut trace = Vec::new();
    for (a, b) in normalized_edges(g) {
        let (u, v) = if coins.flip() { (b, a) } else { (a, b) };
        kept.push((u, v));
        trace.push(format!("edge {a}-{b}: kept {u} -> {v}"));
    }
    let mut arcs = Vec::with_capacity(kept.len() * 4);
    for &(u, v) in &kept {
        arcs.extend_from_slice(&[(u, v), (v, twin(n, u)), (twin(n, u), twin(n, v)), (twin(n, v), u)]);
    }
    let graph = OrientedGraph::new(2 * n, &arcs)?;
    let reduced = build_instance(
        graph,
        i.source().tokens().to_vec(),
        i.target().tokens().to_vec(),
    )?;
    let artifact = ReductionArtifact {
        original_vertex_count: n,
        forward_vertex_map: (1..=n).map(|v| (v, vec![v, v + n])).collect(),
        detail: ReductionDetail::Bipartite { kept },
        policy_trace: trace,
        warnings: Vec::new(),
    };
    Ok((reduced, artifact))
}

/// A move along the kept orientation survives; a move against it detours
/// through the two twins.
pub(super) fn lift(
    kept: &[(Vertex, Vertex)],
    n: u32,
    seq: &ReconfSequence,
) -> Result<ReconfSequence, ReductionError> {
    let mut out = Vec::new();
    for step in &seq.moves {
        let (u, v) = (step.from, step.to);
        if kept.contains(&(u, v)) {
            out.push(Move { from: u, to: v });
        } else if kept.contains(&(v, u)) {
            out.push(Move { from: u, to: twin(n, v) });
            out.push(Move { from: twin(n, v), to: twin(n, u) });
            out.push(Move { from: twin(n, u), to: v });
        } else {
            return Err(ReductionError::InternalLiftFailure(format!(
                "no kept orientation for the edge {u}-{v}"
            )));
        }
    }
    Ok(ReconfSequence::new(out))
}

/// Strips twins off both endpoints, then drops the redundant slides:
/// self-moves and immediate repeats of the same slide. The raw stripped
/// sequence is already valid; the simplification only shortens it.
pub(super) fn project(
    n: u32,
    original: &Instance,
    seq: &ReconfSequence,
) -> Result<ReconfSequence, ReductionError> {
    let strip = |v: Vertex| if v > n { v - n } else { v };
    let raw: Vec<Move> = seq
        .moves
        .iter()
        .map(|m| Move { from: strip(m.from), to: strip(m.to) })
        .collect();
    let raw = ReconfSequence::new(raw);
    crate::solver::apply_and_validate_undirected(original, &raw).map_err(|e| {
        ReductionError::InternalProjectFailure(format!(
            "raw stripped sequence is invalid: {e}"
        ))
    })?;
    let mut out: Vec<Move> = Vec::with_capacity(raw.len());
    for m in raw.moves {
        if m.from == m.to || out.last() == Some(&m) {
            continue;
        }
        out.push(m);
    }
    Ok(ReconfSequence::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;
    use crate::reduction::{lift_sequence, project_sequence};
    use crate::solver::{apply_and_validate, solve_exact, SearchLimits};

    fn inst(text: &str) -> Instance {
        parse_instance(text).expect("test instance")
    }

    #[test]
    fn single_edge_becomes_a_directed_four_cycle() {
        let i = inst("p tsd 2 1\na 1 2\ns 1 1\nt 1 2\n");
        let (red, art) = reduce_bipartite(&i, &ReductionPolicy::Lexicographic).unwrap();
        let g = red.graph();
        assert_eq!(g.vertex_count(), 4);
        let mut arcs = g.arcs().to_vec();
        arcs.sort_unstable();
        assert_eq!(arcs, vec![(1, 2), (2, 3), (3, 4), (4, 1)]);
        assert_eq!(red.source().tokens(), &[1]);
        assert_eq!(red.target().tokens(), &[2]);
        let ReductionDetail::Bipartite { kept } = &art.detail else {
            panic!("wrong detail");
        };
        assert_eq!(kept, &[(1, 2)]);
    }

    #[test]
    fn twins_share_their_neighborhood() {
        let path = inst("p tsd 3 2\na 1 2\na 2 3\ns 1 1\nt 1 3\n");
        for policy in [ReductionPolicy::Lexicographic, ReductionPolicy::Seeded(5)] {
            let (red, _) = reduce_bipartite(&path, &policy).unwrap();
            let g = red.graph();
            assert_eq!(g.vertex_count(), 6);
            assert_eq!(g.arc_count(), 8);
            for v in 1..=3 {
                assert_eq!(
                    g.underlying_neighbors(v),
                    g.underlying_neighbors(v + 3),
                    "vertex {v} and its twin disagree"
                );
            }
        }
    }

    #[test]
    fn odd_cycles_are_rejected() {
        let triangle = inst("p tsd 3 3\na 1 2\na 2 3\na 3 1\ns 1 1\nt 1 1\n");
        assert_eq!(
            reduce_bipartite(&triangle, &ReductionPolicy::Lexicographic).unwrap_err(),
            ReductionError::NotBipartite
        );
    }

    #[test]
    fn against_the_grain_moves_detour_through_twins() {
        let i = inst("p tsd 2 1\na 1 2\ns 1 2\nt 1 1\n");
        let (red, art) = reduce_bipartite(&i, &ReductionPolicy::Lexicographic).unwrap();
        // Kept orientation is (1, 2); the move 2 -> 1 runs against it.
        let seq = ReconfSequence::new(vec![Move { from: 2, to: 1 }]);
        let lifted = lift_sequence(&art, &i, &seq).unwrap();
        assert_eq!(
            lifted.moves,
            vec![
                Move { from: 2, to: 3 },
                Move { from: 3, to: 4 },
                Move { from: 4, to: 1 },
            ]
        );
        let end = apply_and_validate(&red, &lifted).unwrap();
        assert_eq!(&end, red.target());
        let back = project_sequence(&art, &red, &lifted).unwrap();
        // Raw strip is 2->1, 1->2, 2->1; nothing is null or repeated, and
        // the wandering is validly walkable, so it survives untouched.
        assert_eq!(back.len(), 3);
    }

    #[test]
    fn with_the_grain_moves_survive_verbatim() {
        let i = inst("p tsd 2 1\na 1 2\ns 1 1\nt 1 2\n");
        let (_, art) = reduce_bipartite(&i, &ReductionPolicy::Lexicographic).unwrap();
        let seq = ReconfSequence::new(vec![Move { from: 1, to: 2 }]);
        let lifted = lift_sequence(&art, &i, &seq).unwrap();
        assert_eq!(lifted.moves, vec![Move { from: 1, to: 2 }]);
    }

    #[test]
    fn oracle_witnesses_project_cleanly() {
        // Path 1-2-3-4 with two tokens swapping ends is a no; spread
        // targets are a yes.
        let i = inst("p tsd 4 3\na 1 2\na 2 3\na 3 4\ns 2 1 3\nt 2 2 4\n");
        for policy in [ReductionPolicy::Lexicographic, ReductionPolicy::Seeded(8)] {
            let (red, art) = reduce_bipartite(&i, &policy).unwrap();
            let r = solve_exact(&red, SearchLimits::default(), true).unwrap();
            assert!(r.answer);
            let projected = project_sequence(&art, &red, &r.witness.unwrap()).unwrap();
            assert!(!projected.is_empty());
        }
    }

    #[test]
    fn seeded_policies_differ_somewhere() {
        let grid = inst(
            "p tsd 6 7\na 1 2\na 2 3\na 4 5\na 5 6\na 1 4\na 2 5\na 3 6\n\
             s 2 1 6\nt 2 3 4\n",
        );
        let (_, lex) = reduce_bipartite(&grid, &ReductionPolicy::Lexicographic).unwrap();
        let mut saw_difference = false;
        for seed in 0..16 {
            let (_, s) = reduce_bipartite(&grid, &ReductionPolicy::Seeded(seed)).unwrap();
            if s.detail != lex.detail {
                saw_difference = true;
            }
        }
        assert!(saw_difference, "seeded policies never flipped any edge");
    }
}
