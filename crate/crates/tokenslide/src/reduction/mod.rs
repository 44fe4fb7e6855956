//! Instance transformations onto planar-style gadget graphs, split graphs
//! and bipartite graphs, with witness lifting (original sequence to reduced
//! sequence) and projection (reduced back to original) driven by a
//! serializable [`ReductionArtifact`].
//!
//! Input instances are read as undirected graphs encoded with one arc per
//! edge; their sequences are checked with undirected semantics. Reduced
//! instances are genuinely oriented and their sequences are checked with
//! directed semantics.
//!
//! Guarantees differ by kind. The split and bipartite transformations
//! preserve yes/no answers in both directions, and [`campaign`] runs keep
//! that claim under continuous differential test. The edge-gadget
//! transformation ([`planar`]) preserves answers in the forward direction
//! only: every original witness lifts to a valid reduced witness, but some
//! no-instances gain reduced-only witnesses in which tokens stop inside
//! gadget interiors, hiding their origin vertex from the distant gadgets
//! that gate on it. See the module docs of [`planar`] for the smallest
//! known example; verification campaigns detect such instances and report
//! them as mismatches.
//!
//! [`campaign`]: crate::campaign

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{GraphError, OrientedGraph, Vertex};
use crate::instance::{
    Configuration, Instance, ParseError, ParseErrorKind, ReconfSequence,
};
use crate::solver::{apply_and_validate, apply_and_validate_undirected};

pub mod bipartite;
pub mod planar;
pub mod split;

pub use bipartite::reduce_bipartite;
pub use planar::reduce_planar;
pub use split::reduce_split;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    Planar,
    Split,
    Bipartite,
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionKind::Planar => "planar",
            ReductionKind::Split => "split",
            ReductionKind::Bipartite => "bipartite",
        })
    }
}

/// Resolves the construction's free choices: which endpoint of an edge leads
/// its gadget, and which way policy-owned arcs point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionPolicy {
    /// Always keep the canonical choice (smaller index first).
    Lexicographic,
    /// Flip each choice on an independent coin from a seeded stream.
    Seeded(u64),
}

impl Default for ReductionPolicy {
    fn default() -> Self {
        ReductionPolicy::Lexicographic
    }
}

impl ReductionPolicy {
    pub(crate) fn coins(&self) -> CoinStream {
        match self {
            ReductionPolicy::Lexicographic => CoinStream::Canonical,
            ReductionPolicy::Seeded(seed) => {
                CoinStream::Seeded(ChaCha8Rng::seed_from_u64(*seed))
            }
        }
    }
}

pub(crate) enum CoinStream {
    Canonical,
    Seeded(ChaCha8Rng),
}

impl CoinStream {
    /// True means "flip the canonical choice".
    pub(crate) fn flip(&mut self) -> bool {
        match self {
            CoinStream::Canonical => false,
            CoinStream::Seeded(rng) => rng.random(),
        }
    }
}

/// One per original edge of a planar-style reduction. The gadget replaces
/// the edge `{first, second}`; `w` lists its four internal vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanarGadget {
    pub first: Vertex,
    pub second: Vertex,
    pub w: [Vertex; 4],
}

impl PlanarGadget {
    pub fn w1(&self) -> Vertex {
        self.w[0]
    }
    pub fn w2(&self) -> Vertex {
        self.w[1]
    }
    pub fn w3(&self) -> Vertex {
        self.w[2]
    }
    pub fn w4(&self) -> Vertex {
        self.w[3]
    }

    /// The original endpoint that is not `v`.
    pub fn other_endpoint(&self, v: Vertex) -> Vertex {
        if v == self.first {
            self.second
        } else {
            self.first
        }
    }

    pub(crate) fn arcs(&self) -> [(Vertex, Vertex); 8] {
        let (f, s) = (self.first, self.second);
        let [w1, w2, w3, w4] = self.w;
        [
            (f, w1),
            (w1, w2),
            (w2, s),
            (s, w4),
            (w4, f),
            (w2, w3),
            (w3, w1),
            (f, w3),
        ]
    }
}

/// Kind-specific bookkeeping needed to rebuild the counterpart instance and
/// to run lift/project without repeating the reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionDetail {
    Planar {
        gadgets: Vec<PlanarGadget>,
    },
    Split {
        /// Original clique side, ascending.
        clique: Vec<Vertex>,
        c1: Vertex,
        c2: Vertex,
        /// Policy-oriented arcs: four per clique edge plus one per clique
        /// vertex between its two copies.
        chosen_arcs: Vec<(Vertex, Vertex)>,
    },
    Bipartite {
        /// Policy-kept orientation per original edge.
        kept: Vec<(Vertex, Vertex)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub original_vertex_count: u32,
    /// Original vertex to its image(s): identity for planar, `v` and its
    /// clique copy for split clique vertices, `v` and `v + n` for bipartite.
    pub forward_vertex_map: Vec<(Vertex, Vec<Vertex>)>,
    pub detail: ReductionDetail,
    /// One line per free choice the policy resolved.
    pub policy_trace: Vec<String>,
    pub warnings: Vec<String>,
}

impl ReductionArtifact {
    pub fn kind(&self) -> ReductionKind {
        match self.detail {
            ReductionDetail::Planar { .. } => ReductionKind::Planar,
            ReductionDetail::Split { .. } => ReductionKind::Split,
            ReductionDetail::Bipartite { .. } => ReductionKind::Bipartite,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenSide {
    Source,
    Target,
}

impl fmt::Display for TokenSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TokenSide::Source => "source",
            TokenSide::Target => "target",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("{which} tokens are not a maximum independent set (alpha = {alpha})")]
    NotMaximumIndependentSet { which: TokenSide, alpha: u32 },
    #[error("not a valid split partition: {0}")]
    InvalidSplitPartition(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("sequence invalid for the input instance: {0}")]
    InvalidSourceSequence(String),
    #[error("lift produced an invalid sequence: {0}")]
    InternalLiftFailure(String),
    #[error("projection produced an invalid sequence: {0}")]
    InternalProjectFailure(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

// ---------------------------------------------------------------------------
// Lift and project dispatch

/// Translates a sequence valid on the original instance into one valid on
/// the reduced instance, ending at the mapped target.
pub fn lift_sequence(
    a: &ReductionArtifact,
    original: &Instance,
    seq: &ReconfSequence,
) -> Result<ReconfSequence, ReductionError> {
    if original.graph().vertex_count() != a.original_vertex_count {
        return Err(ReductionError::InvalidSourceSequence(format!(
            "artifact maps {} vertices, instance has {}",
            a.original_vertex_count,
            original.graph().vertex_count()
        )));
    }
    let end = apply_and_validate_undirected(original, seq)
        .map_err(|e| ReductionError::InvalidSourceSequence(e.to_string()))?;
    if end != *original.target() {
        return Err(ReductionError::InvalidSourceSequence(format!(
            "sequence ends at {end}, not at the target"
        )));
    }
    let reduced = rebuild_reduced(a, original)?;
    let lifted = match &a.detail {
        ReductionDetail::Planar { gadgets } => {
            planar::lift(gadgets, original, seq)
        }
        ReductionDetail::Split { clique, c1, c2, .. } => {
            split::lift(clique, *c1, *c2, a.original_vertex_count, seq)
        }
        ReductionDetail::Bipartite { kept } => {
            bipartite::lift(kept, a.original_vertex_count, seq)?
        }
    };
    let end = apply_and_validate(&reduced, &lifted)
        .map_err(|e| ReductionError::InternalLiftFailure(e.to_string()))?;
    if end != *reduced.target() {
        return Err(ReductionError::InternalLiftFailure(format!(
            "lifted sequence ends at {end}, not at the mapped target"
        )));
    }
    Ok(lifted)
}

/// Translates a sequence valid on the reduced instance back into one valid
/// on the original instance, ending at the original target.
pub fn project_sequence(
    a: &ReductionArtifact,
    reduced: &Instance,
    seq: &ReconfSequence,
) -> Result<ReconfSequence, ReductionError> {
    let end = apply_and_validate(reduced, seq)
        .map_err(|e| ReductionError::InvalidSourceSequence(e.to_string()))?;
    if end != *reduced.target() {
        return Err(ReductionError::InvalidSourceSequence(format!(
            "sequence ends at {end}, not at the target"
        )));
    }
    let original = rebuild_original(a, reduced)?;
    let projected = match &a.detail {
        ReductionDetail::Planar { gadgets } => {
            planar::project(gadgets, a.original_vertex_count, seq)?
        }
        ReductionDetail::Split { clique, .. } => {
            split::project(clique, a.original_vertex_count, seq)?
        }
        ReductionDetail::Bipartite { .. } => {
            bipartite::project(a.original_vertex_count, &original, seq)?
        }
    };
    let end = apply_and_validate_undirected(&original, &projected)
        .map_err(|e| ReductionError::InternalProjectFailure(e.to_string()))?;
    if end != *original.target() {
        return Err(ReductionError::InternalProjectFailure(format!(
            "projected sequence ends at {end}, not at the original target"
        )));
    }
    Ok(projected)
}

// ---------------------------------------------------------------------------
// Instance reconstruction from an artifact

/// Rebuilds the reduced instance a reduction of `original` under this
/// artifact produced. Exact, including arc orientations.
pub fn rebuild_reduced(
    a: &ReductionArtifact,
    original: &Instance,
) -> Result<Instance, ReductionError> {
    let n = a.original_vertex_count;
    if original.graph().vertex_count() != n {
        return Err(ReductionError::InvalidSourceSequence(format!(
            "artifact maps {} vertices, instance has {}",
            n,
            original.graph().vertex_count()
        )));
    }
    let (s, t) = (original.source(), original.target());
    match &a.detail {
        ReductionDetail::Planar { gadgets } => {
            let mut arcs = Vec::with_capacity(gadgets.len() * 8);
            for g in gadgets {
                arcs.extend_from_slice(&g.arcs());
            }
            let graph = OrientedGraph::new(n + 4 * gadgets.len() as u32, &arcs)?;
            let s_red = planar::map_tokens(gadgets, s.tokens());
            let t_red = planar::map_tokens(gadgets, t.tokens());
            build_instance(graph, s_red, t_red)
        }
        ReductionDetail::Split { clique, c1, c2, chosen_arcs } => {
            let graph = split::rebuild_graph(
                original.graph(),
                clique,
                *c1,
                *c2,
                chosen_arcs,
            )?;
            build_instance(graph, s.tokens().to_vec(), t.tokens().to_vec())
        }
        ReductionDetail::Bipartite { kept } => {
            let mut arcs = Vec::with_capacity(kept.len() * 4);
            for &(u, v) in kept {
                arcs.extend_from_slice(&[
                    (u, v),
                    (v, n + u),
                    (n + u, n + v),
                    (n + v, u),
                ]);
            }
            let graph = OrientedGraph::new(2 * n, &arcs)?;
            build_instance(graph, s.tokens().to_vec(), t.tokens().to_vec())
        }
    }
}

/// Rebuilds the original instance behind a reduced one. Arc directions are
/// canonical; originals are treated as undirected, so this loses nothing.
pub fn rebuild_original(
    a: &ReductionArtifact,
    reduced: &Instance,
) -> Result<Instance, ReductionError> {
    let n = a.original_vertex_count;
    let mismatch = |msg: String| ReductionError::InvalidSourceSequence(msg);
    let expected = match &a.detail {
        ReductionDetail::Planar { gadgets } => n + 4 * gadgets.len() as u32,
        ReductionDetail::Split { clique, .. } => n + clique.len() as u32 + 2,
        ReductionDetail::Bipartite { .. } => 2 * n,
    };
    if reduced.graph().vertex_count() != expected {
        return Err(mismatch(format!(
            "artifact expects a reduced instance on {} vertices, got {}",
            expected,
            reduced.graph().vertex_count()
        )));
    }
    let strip = |cfg: &Configuration, which: &str| -> Result<Vec<Vertex>, ReductionError> {
        let kept: Vec<Vertex> =
            cfg.tokens().iter().copied().filter(|&v| v <= n).collect();
        match &a.detail {
            // Planar keeps one internal token per gadget aside.
            ReductionDetail::Planar { gadgets } => {
                if cfg.len() != kept.len() + gadgets.len() {
                    return Err(mismatch(format!(
                        "{which} tokens do not fit the gadget placement"
                    )));
                }
            }
            _ => {
                if kept.len() != cfg.len() {
                    return Err(mismatch(format!(
                        "{which} tokens are not a mapped configuration"
                    )));
                }
            }
        }
        Ok(kept)
    };
    let s = strip(reduced.source(), "source")?;
    let t = strip(reduced.target(), "target")?;
    let edges: Vec<(Vertex, Vertex)> = match &a.detail {
        ReductionDetail::Planar { gadgets } => gadgets
            .iter()
            .map(|g| (g.first.min(g.second), g.first.max(g.second)))
            .collect(),
        ReductionDetail::Split { clique, .. } => {
            let mut edges = Vec::new();
            for (i, &u) in clique.iter().enumerate() {
                for &v in &clique[i + 1..] {
                    edges.push((u, v));
                }
            }
            for &(u, v) in reduced.graph().arcs() {
                if u <= n && v <= n && !(clique.contains(&u) && clique.contains(&v)) {
                    edges.push((u.min(v), u.max(v)));
                }
            }
            edges
        }
        ReductionDetail::Bipartite { kept } => {
            kept.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
        }
    };
    let graph = OrientedGraph::new(n, &edges)?;
    build_instance(graph, s, t)
}

fn build_instance(
    graph: OrientedGraph,
    s: Vec<Vertex>,
    t: Vec<Vertex>,
) -> Result<Instance, ReductionError> {
    let s = Configuration::new(s)
        .map_err(|e| ReductionError::InvalidSourceSequence(e.to_string()))?;
    let t = Configuration::new(t)
        .map_err(|e| ReductionError::InvalidSourceSequence(e.to_string()))?;
    Instance::new(graph, s, t)
        .map_err(|e| ReductionError::InvalidSourceSequence(e.to_string()))
}

// ---------------------------------------------------------------------------
// .map sidecar format

/// Line-oriented sidecar alongside a reduced .tsd file:
/// `r <kind> <n>`, one `m <v> <images...>` per original vertex, then the
/// kind's own lines (`g` gadgets, `q`/`c`/`o` split data, `b` kept arcs),
/// then `p` policy-trace and `w` warning lines.
pub fn serialize_artifact(a: &ReductionArtifact) -> String {
    let mut out = format!("r {} {}\n", a.kind(), a.original_vertex_count);
    for (v, images) in &a.forward_vertex_map {
        out.push_str(&format!("m {v}"));
        for img in images {
            out.push_str(&format!(" {img}"));
        }
        out.push('\n');
    }
    match &a.detail {
        ReductionDetail::Planar { gadgets } => {
            for g in gadgets {
                out.push_str(&format!(
                    "g {} {} {} {} {} {}\n",
                    g.first,
                    g.second,
                    g.w[0],
                    g.w[1],
                    g.w[2],
                    g.w[3]
                ));
            }
        }
        ReductionDetail::Split { clique, c1, c2, chosen_arcs } => {
            out.push_str("q");
            for v in clique {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
            out.push_str(&format!("c {c1} {c2}\n"));
            for (u, v) in chosen_arcs {
                out.push_str(&format!("o {u} {v}\n"));
            }
        }
        ReductionDetail::Bipartite { kept } => {
            for (u, v) in kept {
                out.push_str(&format!("b {u} {v}\n"));
            }
        }
    }
    for line in &a.policy_trace {
        out.push_str(&format!("p {line}\n"));
    }
    for line in &a.warnings {
        out.push_str(&format!("w {line}\n"));
    }
    out
}

pub fn parse_artifact(text: &str) -> Result<ReductionArtifact, ParseError> {
    let syntax = |line: u32, col: u32, msg: String| ParseError {
        line,
        col,
        kind: ParseErrorKind::Syntax(msg),
    };
    let mut kind: Option<(ReductionKind, u32)> = None;
    let mut map: Vec<(Vertex, Vec<Vertex>)> = Vec::new();
    let mut gadgets: Vec<PlanarGadget> = Vec::new();
    let mut clique: Option<Vec<Vertex>> = None;
    let mut cs: Option<(Vertex, Vertex)> = None;
    let mut chosen: Vec<(Vertex, Vertex)> = Vec::new();
    let mut kept: Vec<(Vertex, Vertex)> = Vec::new();
    let mut trace: Vec<String> = Vec::new();
    let mut warnings: Vec<String> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx as u32 + 1;
        let content = &raw[..raw.find('#').unwrap_or(raw.len())];
        let fields = crate::instance::split_words(content);
        let Some(&(tag_col, tag)) = fields.first() else {
            continue;
        };
        let nums = |want: usize| -> Result<Vec<u32>, ParseError> {
            if fields.len() != want + 1 {
                return Err(syntax(
                    line,
                    tag_col,
                    format!("'{tag}' line expects {want} fields"),
                ));
            }
            fields[1..]
                .iter()
                .map(|&(col, word)| {
                    word.parse::<u32>().map_err(|_| {
                        syntax(line, col, format!("expected integer, found '{word}'"))
                    })
                })
                .collect()
        };
        match tag {
            "r" => {
                if fields.len() != 3 {
                    return Err(syntax(line, tag_col, "'r' line expects 2 fields".into()));
                }
                let k = match fields[1].1 {
                    "planar" => ReductionKind::Planar,
                    "split" => ReductionKind::Split,
                    "bipartite" => ReductionKind::Bipartite,
                    other => {
                        return Err(syntax(
                            line,
                            fields[1].0,
                            format!("unknown reduction kind '{other}'"),
                        ))
                    }
                };
                let n = fields[2].1.parse::<u32>().map_err(|_| {
                    syntax(line, fields[2].0, "expected vertex count".into())
                })?;
                if kind.replace((k, n)).is_some() {
                    return Err(syntax(line, tag_col, "duplicate 'r' line".into()));
                }
            }
            "m" => {
                if fields.len() < 3 {
                    return Err(syntax(
                        line,
                        tag_col,
                        "'m' line expects a vertex and at least one image".into(),
                    ));
                }
                let mut vals = Vec::with_capacity(fields.len() - 1);
                for &(col, word) in &fields[1..] {
                    vals.push(word.parse::<u32>().map_err(|_| {
                        syntax(line, col, format!("expected integer, found '{word}'"))
                    })?);
                }
                map.push((vals[0], vals[1..].to_vec()));
            }
            "g" => {
                let v = nums(6)?;
                gadgets.push(PlanarGadget {
                    first: v[0],
                    second: v[1],
                    w: [v[2], v[3], v[4], v[5]],
                });
            }
            "q" => {
                let mut vals = Vec::with_capacity(fields.len() - 1);
                for &(col, word) in &fields[1..] {
                    vals.push(word.parse::<u32>().map_err(|_| {
                        syntax(line, col, format!("expected integer, found '{word}'"))
                    })?);
                }
                if clique.replace(vals).is_some() {
                    return Err(syntax(line, tag_col, "duplicate 'q' line".into()));
                }
            }
            "c" => {
                let v = nums(2)?;
                if cs.replace((v[0], v[1])).is_some() {
                    return Err(syntax(line, tag_col, "duplicate 'c' line".into()));
                }
            }
            "o" => {
                let v = nums(2)?;
                chosen.push((v[0], v[1]));
            }
            "b" => {
                let v = nums(2)?;
                kept.push((v[0], v[1]));
            }
            "p" | "w" => {
                let rest = fields[1..]
                    .iter()
                    .map(|&(_, w)| w)
                    .collect::<Vec<_>>()
                    .join(" ");
                if tag == "p" {
                    trace.push(rest);
                } else {
                    warnings.push(rest);
                }
            }
            other => {
                return Err(syntax(line, tag_col, format!("unknown line tag '{other}'")));
            }
        }
    }

    let Some((kind, n)) = kind else {
        return Err(ParseError {
            line: 1,
            col: 1,
            kind: ParseErrorKind::MissingSection('r'),
        });
    };
    let detail = match kind {
        ReductionKind::Planar => ReductionDetail::Planar { gadgets },
        ReductionKind::Split => {
            let clique = clique.ok_or(ParseError {
                line: 1,
                col: 1,
                kind: ParseErrorKind::MissingSection('q'),
            })?;
            let (c1, c2) = cs.ok_or(ParseError {
                line: 1,
                col: 1,
                kind: ParseErrorKind::MissingSection('c'),
            })?;
            ReductionDetail::Split { clique, c1, c2, chosen_arcs: chosen }
        }
        ReductionKind::Bipartite => ReductionDetail::Bipartite { kept },
    };
    Ok(ReductionArtifact {
        original_vertex_count: n,
        forward_vertex_map: map,
        detail,
        policy_trace: trace,
        warnings,
    })
}

/// Normalized `(min, max)` endpoint pairs of every arc, ascending. Treats
/// the input as an undirected edge list.
pub(crate) fn normalized_edges(g: &OrientedGraph) -> Vec<(Vertex, Vertex)> {
    let mut edges: Vec<(Vertex, Vertex)> =
        g.arcs().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_artifacts() -> Vec<ReductionArtifact> {
        vec![
            ReductionArtifact {
                original_vertex_count: 2,
                forward_vertex_map: vec![(1, vec![1]), (2, vec![2])],
                detail: ReductionDetail::Planar {
                    gadgets: vec![PlanarGadget { first: 1, second: 2, w: [3, 4, 5, 6] }],
                },
                policy_trace: vec!["edge 1-2: first 1".into()],
                warnings: vec!["vertex 7 has degree 4".into()],
            },
            ReductionArtifact {
                original_vertex_count: 3,
                forward_vertex_map: vec![(1, vec![1, 4]), (2, vec![2]), (3, vec![3])],
                detail: ReductionDetail::Split {
                    clique: vec![1],
                    c1: 5,
                    c2: 6,
                    chosen_arcs: vec![(1, 4)],
                },
                policy_trace: vec![],
                warnings: vec![],
            },
            ReductionArtifact {
                original_vertex_count: 2,
                forward_vertex_map: vec![(1, vec![1, 3]), (2, vec![2, 4])],
                detail: ReductionDetail::Bipartite { kept: vec![(1, 2)] },
                policy_trace: vec!["edge 1-2: kept 1 -> 2".into()],
                warnings: vec![],
            },
        ]
    }

    #[test]
    fn artifact_serialization_round_trips() {
        for a in sample_artifacts() {
            let text = serialize_artifact(&a);
            let back = parse_artifact(&text).expect("reparse");
            assert_eq!(back, a, "round trip failed for\n{text}");
        }
    }

    #[test]
    fn parser_rejects_missing_header_and_bad_tags() {
        assert!(parse_artifact("m 1 1\n").is_err());
        assert!(parse_artifact("r planar 2\nx 1 2\n").is_err());
        assert!(parse_artifact("r teleport 2\n").is_err());
        assert!(parse_artifact("r split 3\nq 1\n").is_err(), "missing c line");
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# sidecar\nr bipartite 2\n\nm 1 1 3 # copy\nm 2 2 4\nb 1 2\n";
        let a = parse_artifact(text).expect("parse");
        assert_eq!(a.kind(), ReductionKind::Bipartite);
        assert_eq!(a.forward_vertex_map.len(), 2);
    }
}
