//! Edge-gadget reduction: every undirected edge becomes a four-vertex
//! oriented gadget, and token sets must be maximum independent sets.
//!
//! An edge `{f, s}` led by `f` turns into the arcs
//! `(f,w1),(w1,w2),(w2,s),(s,w4),(w4,f),(w2,w3),(w3,w1),(f,w3)`.
//! Each gadget permanently hosts one internal token: on `w2` while `f` is
//! occupied, on `w1` otherwise. A slide across the original edge swaps the
//! hosted token between those two seats through `w3` or `w4`.
//!
//! The transformation is one-sided. Lifting is sound: a yes-instance always
//! maps to a yes-instance, constructively, via [`lift_sequence`]. The
//! converse fails: a token may enter a gadget interior (for example `s` to
//! `w4`) and wait there, leaving its origin vertex empty; re-aim slides in
//! the origin's other gadgets gate on that physical emptiness and unlock
//! early, admitting arrivals the original instance forbids. The smallest
//! known no-instance that turns into a reduced yes-instance has six
//! vertices and the edges {1,4},{2,4},{1,3},{2,3},{4,6},{5,6} with tokens
//! moving from {3,4,5} to {1,2,6}: the original is frozen, yet after both
//! the tokens on 3 and 4 park inside gadget interiors the reduced instance
//! finishes in twelve slides. The gadget direction choice does not close
//! the hole (most seeded policies still produce a reduced yes on that
//! input), so campaigns over this reduction are expected to report
//! mismatches; they verify the detector, not answer preservation.
//!
//! Parking also affects witnesses of instances whose answers do agree: a
//! reduced-side search may find a shorter schedule that parks, and such a
//! schedule corresponds to no original move order. [`project_sequence`]
//! validates its output and fails cleanly on those rather than returning an
//! invalid sequence.
//!
//! [`lift_sequence`]: super::lift_sequence
//! [`project_sequence`]: super::project_sequence

use std::collections::HashMap;

use crate::graph::{OrientedGraph, Vertex};
use crate::instance::{Instance, Move, ReconfSequence};
use crate::mis::max_independent_set;

use super::{
    build_instance, normalized_edges, PlanarGadget, ReductionArtifact,
    ReductionDetail, ReductionError, ReductionPolicy, TokenSide,
};

/// Replaces every edge with a policy-directed gadget. Both token sets must
/// be maximum independent sets of the input; vertices of degree above three
/// only produce a warning.
pub fn reduce_planar(
    i: &Instance,
    p: &ReductionPolicy,
) -> Result<(Instance, ReductionArtifact), ReductionError> {
    let g = i.graph();
    let n = g.vertex_count();
    let alpha = max_independent_set(g)?.alpha;
    for (side, cfg) in [(TokenSide::Source, i.source()), (TokenSide::Target, i.target())] {
        if cfg.len() != alpha as usize || !g.is_independent(cfg.tokens()) {
            return Err(ReductionError::NotMaximumIndependentSet { which: side, alpha });
        }
    }

    let mut warnings = Vec::new();
    if let Some(v) = g.vertices().find(|&v| g.underlying_degree(v) > 3) {
        warnings.push(format!(
            "vertex {v} has degree {}; the construction stays well-defined but loses its subcubic shape",
            g.underlying_degree(v)
        ));
    }

    let edges = normalized_edges(g);
    let mut coins = p.coins();
    let mut gadgets = Vec::with_capacity(edges.len());
    let mut trace = Vec::with_capacity(edges.len());
    for (j, &(a, b)) in edges.iter().enumerate() {
        let (first, second) = if coins.flip() { (b, a) } else { (a, b) };
        let base = n + 4 * j as u32;
        gadgets.push(PlanarGadget {
            first,
            second,
            w: [base + 1, base + 2, base + 3, base + 4],
        });
        trace.push(format!("edge {a}-{b}: first {first}"));
    }

    let mut arcs = Vec::with_capacity(gadgets.len() * 8);
    for gd in &gadgets {
        arcs.extend_from_slice(&gd.arcs());
    }
    let graph = OrientedGraph::new(n + 4 * gadgets.len() as u32, &arcs)?;
    let s = map_tokens(&gadgets, i.source().tokens());
    let t = map_tokens(&gadgets, i.target().tokens());
    let reduced = build_instance(graph, s, t)?;

    let artifact = ReductionArtifact {
        original_vertex_count: n,
        forward_vertex_map: (1..=n).map(|v| (v, vec![v])).collect(),
        detail: ReductionDetail::Planar { gadgets },
        policy_trace: trace,
        warnings,
    };
    Ok((reduced, artifact))
}

/// Original tokens plus one internal token per gadget: `w2` when the first
/// endpoint is occupied, `w1` otherwise.
pub(super) fn map_tokens(gadgets: &[PlanarGadget], tokens: &[Vertex]) -> Vec<Vertex> {
    let mut out = tokens.to_vec();
    for gd in gadgets {
        if tokens.contains(&gd.first) {
            out.push(gd.w2());
        } else {
            out.push(gd.w1());
        }
    }
    out
}

fn gadget_index(gadgets: &[PlanarGadget]) -> HashMap<(Vertex, Vertex), usize> {
    gadgets
        .iter()
        .enumerate()
        .map(|(j, gd)| {
            ((gd.first.min(gd.second), gd.first.max(gd.second)), j)
        })
        .collect()
}

/// Expands each original slide `u -> v` into gadget choreography:
/// seats around `v` move up to `w2` where `v` leads, the `{u,v}` gadget
/// swaps its seat while carrying the token across, and seats of the other
/// edges led by `u` retreat from `w2` back to `w1` through `w3`.
pub(super) fn lift(
    gadgets: &[PlanarGadget],
    original: &Instance,
    seq: &ReconfSequence,
) -> ReconfSequence {
    let index = gadget_index(gadgets);
    let g = original.graph();
    let mut out = Vec::new();
    let mut mv = |from, to| out.push(Move { from, to });
    for step in &seq.moves {
        let (u, v) = (step.from, step.to);
        for &x in g.underlying_neighbors(v) {
            if x == u {
                continue;
            }
            let gd = &gadgets[index[&(v.min(x), v.max(x))]];
            if gd.first == v {
                mv(gd.w1(), gd.w2());
            }
        }
        let gd = &gadgets[index[&(u.min(v), u.max(v))]];
        if gd.first == u {
            mv(gd.w2(), v);
            mv(u, gd.w1());
        } else {
            mv(u, gd.w4());
            mv(gd.w1(), gd.w2());
            mv(gd.w4(), v);
        }
        // u has left: every other gadget led by u must give up w2, or its
        // token would block a later arrival on that gadget's second
        // endpoint.
        for &x in g.underlying_neighbors(u) {
            if x == v {
                continue;
            }
            let gd = &gadgets[index[&(u.min(x), u.max(x))]];
            if gd.first == u {
                mv(gd.w2(), gd.w3());
                mv(gd.w3(), gd.w1());
            }
        }
    }
    ReconfSequence::new(out)
}

/// Keeps exactly the moves that land on an original vertex; each is emitted
/// as a slide from the gadget's other endpoint. Gadget-internal shuffling
/// disappears.
pub(super) fn project(
    gadgets: &[PlanarGadget],
    n: u32,
    seq: &ReconfSequence,
) -> Result<ReconfSequence, ReductionError> {
    let mut out = Vec::new();
    for step in &seq.moves {
        if step.to > n {
            continue;
        }
        if step.from <= n {
            return Err(ReductionError::InternalProjectFailure(format!(
                "arc {} -> {} joins two original vertices; gadgets never do that",
                step.from, step.to
            )));
        }
        let j = ((step.from - n - 1) / 4) as usize;
        let Some(gd) = gadgets.get(j) else {
            return Err(ReductionError::InternalProjectFailure(format!(
                "vertex {} belongs to no gadget",
                step.from
            )));
        };
        out.push(Move { from: gd.other_endpoint(step.to), to: step.to });
    }
    Ok(ReconfSequence::new(out))
}

/// Largest number of tokens any single gadget holds along `seq`, counting
/// both endpoints and all four internal vertices, maximized over gadgets
/// and over every intermediate configuration.
pub fn max_gadget_weight(
    a: &ReductionArtifact,
    reduced: &Instance,
    seq: &ReconfSequence,
) -> Result<u32, ReductionError> {
    let ReductionDetail::Planar { gadgets } = &a.detail else {
        return Err(ReductionError::InternalProjectFailure(
            "gadget weights only exist for the planar reduction".into(),
        ));
    };
    let mut tokens: Vec<Vertex> = reduced.source().tokens().to_vec();
    let weight_of = |tokens: &[Vertex]| -> u32 {
        gadgets
            .iter()
            .map(|gd| {
                tokens
                    .iter()
                    .filter(|&&t| {
                        t == gd.first || t == gd.second || gd.w.contains(&t)
                    })
                    .count() as u32
            })
            .max()
            .unwrap_or(0)
    };
    let mut max = weight_of(&tokens);
    for step in &seq.moves {
        let Some(pos) = tokens.iter().position(|&t| t == step.from) else {
            return Err(ReductionError::InvalidSourceSequence(format!(
                "no token on {}",
                step.from
            )));
        };
        tokens[pos] = step.to;
        max = max.max(weight_of(&tokens));
    }
    Ok(max)
}
