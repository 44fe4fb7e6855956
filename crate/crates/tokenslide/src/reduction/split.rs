//! Split-graph reduction: the clique side `K` is doubled into copies `K1`
//! and `K2` joined through two coupler vertices `c1`, `c2`, while the
//! independent side keeps its vertices and token placement verbatim.
//!
//! Fixed arcs: `(c1,c2)`; `(x,c1)` and `(c2,x)` for every copy `x`; for a
//! clique-to-independent edge `uv`, `(u1,v1)` and `(v1,u2)`. The four arcs
//! between copies of a clique edge and the arc between a vertex's two
//! copies are policy-oriented. At rest, tokens live on original indices;
//! any trip through the high indices is one original clique move.

use crate::classify::SplitPartition;
use crate::graph::{OrientedGraph, Vertex};
use crate::instance::{Instance, Move, ReconfSequence};

use super::{
    build_instance, ReductionArtifact, ReductionDetail, ReductionError,
    ReductionPolicy,
};

/// Copy index of clique vertex `v`: `n + (rank of v in the sorted clique) + 1`.
fn copy_of(clique: &[Vertex], n: u32, v: Vertex) -> Option<Vertex> {
    clique.binary_search(&v).ok().map(|idx| n + idx as u32 + 1)
}

/// Doubles the clique side behind two couplers. `split` must partition the
/// vertices into a clique and an independent set.
pub fn reduce_split(
    i: &Instance,
    split: &SplitPartition,
    p: &ReductionPolicy,
) -> Result<(Instance, ReductionArtifact), ReductionError> {
    let g = i.graph();
    let n = g.vertex_count();
    let mut clique = split.clique.clone();
    let mut indep = split.independent.clone();
    clique.sort_unstable();
    indep.sort_unstable();
    validate_partition(g, &clique, &indep)?;

    let kq = clique.len() as u32;
    let c1 = n + kq + 1;
    let c2 = n + kq + 2;
    let copies: Vec<Vertex> = (0..kq).map(|r| n + r + 1).collect();

    let mut arcs: Vec<(Vertex, Vertex)> = vec![(c1, c2)];
    for x in clique.iter().copied().chain(copies.iter().copied()) {
        arcs.push((x, c1));
        arcs.push((c2, x));
    }
    for &(u, v) in g.arcs() {
        let (cu, cv) = (copy_of(&clique, n, u), copy_of(&clique, n, v));
        match (cu, cv) {
            (Some(_), Some(_)) | (None, None) => {}
            (Some(u2), None) => {
                arcs.push((u, v));
                arcs.push((v, u2));
            }
            (None, Some(v2)) => {
                arcs.push((v, u));
                arcs.push((u, v2));
            }
        }
    }

    let mut coins = p.coins();
    let mut chosen = Vec::new();
    let mut trace = Vec::new();
    let mut choose = |a: Vertex, b: Vertex| {
        let (lo, hi) = (a.min(b), a.max(b));
        let arc = if coins.flip() { (hi, lo) } else { (lo, hi) };
        chosen.push(arc);
        trace.push(format!("pair {lo}-{hi}: arc {} -> {}", arc.0, arc.1));
        arc
    };
    for (idx, &u) in clique.iter().enumerate() {
        let u2 = copies[idx];
        for (jdx, &v) in clique.iter().enumerate().skip(idx + 1) {
            let v2 = copies[jdx];
            for (a, b) in [(u, v), (u, v2), (u2, v), (u2, v2)] {
                arcs.push(choose(a, b));
            }
        }
        arcs.push(choose(u, u2));
    }

    let graph = OrientedGraph::new(n + kq + 2, &arcs)?;
    let reduced = build_instance(
        graph,
        i.source().tokens().to_vec(),
        i.target().tokens().to_vec(),
    )?;
    let artifact = ReductionArtifact {
        original_vertex_count: n,
        forward_vertex_map: (1..=n)
            .map(|v| match copy_of(&clique, n, v) {
                Some(v2) => (v, vec![v, v2]),
                None => (v, vec![v]),
            })
            .collect(),
        detail: ReductionDetail::Split { clique, c1, c2, chosen_arcs: chosen },
        policy_trace: trace,
        warnings: Vec::new(),
    };
    Ok((reduced, artifact))
}

fn validate_partition(
    g: &OrientedGraph,
    clique: &[Vertex],
    indep: &[Vertex],
) -> Result<(), ReductionError> {
    let n = g.vertex_count();
    let bad = |msg: String| Err(ReductionError::InvalidSplitPartition(msg));
    let mut seen = vec![false; n as usize + 1];
    for &v in clique.iter().chain(indep) {
        if v == 0 || v > n {
            return bad(format!("vertex {v} out of range"));
        }
        if std::mem::replace(&mut seen[v as usize], true) {
            return bad(format!("vertex {v} listed twice"));
        }
    }
    if let Some(v) = (1..=n).find(|&v| !seen[v as usize]) {
        return bad(format!("vertex {v} is in neither side"));
    }
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            if !g.has_edge(u, v) {
                return bad(format!("clique side misses the edge {u}-{v}"));
            }
        }
    }
    if !g.is_independent(indep) {
        return bad("independent side contains an edge".into());
    }
    Ok(())
}

/// Rebuilds the reduced graph from the artifact plus the original's edges.
pub(super) fn rebuild_graph(
    original: &OrientedGraph,
    clique: &[Vertex],
    c1: Vertex,
    c2: Vertex,
    chosen_arcs: &[(Vertex, Vertex)],
) -> Result<OrientedGraph, ReductionError> {
    let n = original.vertex_count();
    let kq = clique.len() as u32;
    let mut arcs: Vec<(Vertex, Vertex)> = vec![(c1, c2)];
    for x in clique.iter().copied().chain((0..kq).map(|r| n + r + 1)) {
        arcs.push((x, c1));
        arcs.push((c2, x));
    }
    for &(u, v) in original.arcs() {
        let (cu, cv) = (copy_of(clique, n, u), copy_of(clique, n, v));
        match (cu, cv) {
            (Some(_), Some(_)) | (None, None) => {}
            (Some(u2), None) => {
                arcs.push((u, v));
                arcs.push((v, u2));
            }
            (None, Some(v2)) => {
                arcs.push((v, u));
                arcs.push((u, v2));
            }
        }
    }
    arcs.extend_from_slice(chosen_arcs);
    Ok(OrientedGraph::new(n + kq + 2, &arcs)?)
}

/// Clique-to-clique moves detour through the couplers; independent-to-clique
/// moves additionally enter through the destination's copy.
pub(super) fn lift(
    clique: &[Vertex],
    c1: Vertex,
    c2: Vertex,
    n: u32,
    seq: &ReconfSequence,
) -> ReconfSequence {
    let mut out = Vec::new();
    for step in &seq.moves {
        let (x, y) = (step.from, step.to);
        let in_k = |v| clique.binary_search(&v).is_ok();
        match (in_k(x), in_k(y)) {
            (true, true) => {
                out.push(Move { from: x, to: c1 });
                out.push(Move { from: c1, to: c2 });
                out.push(Move { from: c2, to: y });
            }
            (true, false) | (false, false) => {
                out.push(Move { from: x, to: y });
            }
            (false, true) => {
                let y2 = copy_of(clique, n, y).expect("y is in the clique");
                out.push(Move { from: x, to: y2 });
                out.push(Move { from: y2, to: c1 });
                out.push(Move { from: c1, to: c2 });
                out.push(Move { from: c2, to: y });
            }
        }
    }
    ReconfSequence::new(out)
}

/// Moves among original indices pass through; every excursion into the
/// copies collapses to the one or two original moves its entry and landing
/// determine.
pub(super) fn project(
    clique: &[Vertex],
    n: u32,
    seq: &ReconfSequence,
) -> Result<ReconfSequence, ReductionError> {
    let in_k = |v| clique.binary_search(&v).is_ok();
    let strip = |v: Vertex| -> Option<Vertex> {
        if v <= n {
            Some(v)
        } else {
            clique.get((v - n - 1) as usize).copied()
        }
    };
    let mut out = Vec::new();
    // An open excursion: (start vertex, clique vertex behind the first hop
    // when that hop was a copy).
    let mut open: Option<(Vertex, Option<Vertex>)> = None;
    for step in &seq.moves {
        let (x, y) = (step.from, step.to);
        match (&open, x <= n, y <= n) {
            (None, true, true) => out.push(Move { from: x, to: y }),
            (None, true, false) => open = Some((x, strip(y))),
            (None, false, _) => {
                return Err(ReductionError::InternalProjectFailure(format!(
                    "move from unoccupied copy space at {x}"
                )));
            }
            (Some(_), true, _) => {
                return Err(ReductionError::InternalProjectFailure(
                    "a second token moved during an excursion".into(),
                ));
            }
            (Some(_), false, false) => {}
            (Some((start, entry)), false, true) => {
                let (start, entry) = (*start, *entry);
                let w = y;
                if in_k(start) {
                    if start != w {
                        out.push(Move { from: start, to: w });
                    }
                } else {
                    let Some(entry) = entry else {
                        return Err(ReductionError::InternalProjectFailure(format!(
                            "excursion from independent vertex {start} skipped the copies"
                        )));
                    };
                    out.push(Move { from: start, to: entry });
                    if entry != w {
                        out.push(Move { from: entry, to: w });
                    }
                }
                open = None;
            }
        }
    }
    if open.is_some() {
        return Err(ReductionError::InternalProjectFailure(
            "sequence ends inside an excursion".into(),
        ));
    }
    Ok(ReconfSequence::new(out))
}
