//! Structural classification of the underlying undirected graph, plus the
//! orientation facts the class-specific solvers dispatch on.

use crate::graph::{OrientedGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleOrientation {
    /// Every vertex has out-degree exactly one: the cycle rotates.
    Uniform,
    NonUniform,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPartition {
    pub clique: Vec<Vertex>,
    pub independent: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub is_oriented_cycle: bool,
    pub cycle_orientation: CycleOrientation,
    pub is_path_forest: bool,
    pub is_cograph: bool,
    pub split_partition: Option<SplitPartition>,
    pub is_bipartite: bool,
    pub max_degree: u32,
}

pub fn classify(g: &OrientedGraph) -> ClassReport {
    let comps = g.underlying_components();
    let is_oriented_cycle = is_single_cycle(g, &comps);
    let cycle_orientation = if !is_oriented_cycle {
        CycleOrientation::NotApplicable
    } else if g.vertices().all(|v| g.out_degree(v) == 1) {
        CycleOrientation::Uniform
    } else {
        CycleOrientation::NonUniform
    };
    ClassReport {
        is_oriented_cycle,
        cycle_orientation,
        is_path_forest: is_path_forest(g, &comps),
        is_cograph: is_cograph(g),
        split_partition: split_partition(g),
        is_bipartite: is_bipartite(g),
        max_degree: g.vertices().map(|v| g.underlying_degree(v) as u32).max().unwrap_or(0),
    }
}

fn is_single_cycle(g: &OrientedGraph, comps: &[Vec<Vertex>]) -> bool {
    g.vertex_count() >= 3
        && comps.len() == 1
        && g.arc_count() as u32 == g.vertex_count()
        && g.vertices().all(|v| g.underlying_degree(v) == 2)
}

fn is_path_forest(g: &OrientedGraph, comps: &[Vec<Vertex>]) -> bool {
    if g.vertices().any(|v| g.underlying_degree(v) > 2) {
        return false;
    }
    // Degree <= 2 everywhere, so each component is a path or a cycle; paths
    // have one fewer edge than vertices.
    comps.iter().all(|comp| {
        let deg_sum: usize = comp.iter().map(|&v| g.underlying_degree(v)).sum();
        deg_sum / 2 == comp.len() - 1
    })
}

fn is_cograph(g: &OrientedGraph) -> bool {
    fn check(g: &OrientedGraph, verts: &[Vertex]) -> bool {
        if verts.len() <= 1 {
            return true;
        }
        let (sub, _) = g.induced_subgraph(verts).expect("vertices come from g");
        let comps = sub.underlying_components();
        let parts = if comps.len() > 1 { comps } else { sub.co_components() };
        if parts.len() == 1 {
            // Connected with a connected complement: some induced P4 exists.
            return false;
        }
        parts.iter().all(|part| check(&sub, part))
    }
    let all: Vec<Vertex> = g.vertices().collect();
    check(g, &all)
}

fn split_partition(g: &OrientedGraph) -> Option<SplitPartition> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (usize::MAX - g.underlying_degree(v), v));
    // Largest m with the m highest degrees all >= m-1; for split graphs the
    // top-m prefix is then a clique and the rest independent.
    let mut m = 0;
    for (i, &v) in order.iter().enumerate() {
        if g.underlying_degree(v) >= i {
            m = i + 1;
        } else {
            break;
        }
    }
    let mut clique: Vec<Vertex> = order[..m].to_vec();
    let mut independent: Vec<Vertex> = order[m..].to_vec();
    clique.sort_unstable();
    independent.sort_unstable();
    let clique_ok =
        clique.iter().all(|&u| clique.iter().all(|&v| u == v || g.has_edge(u, v)));
    let independent_ok = g.is_independent(&independent);
    if clique_ok && independent_ok {
        Some(SplitPartition { clique, independent })
    } else {
        None
    }
}

fn is_bipartite(g: &OrientedGraph) -> bool {
    let n = g.vertex_count() as usize;
    let mut color = vec![u8::MAX; n];
    for s in g.vertices() {
        if color[(s - 1) as usize] != u8::MAX {
            continue;
        }
        color[(s - 1) as usize] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.underlying_neighbors(u) {
                if color[(w - 1) as usize] == u8::MAX {
                    color[(w - 1) as usize] = 1 - color[(u - 1) as usize];
                    stack.push(w);
                } else if color[(w - 1) as usize] == color[(u - 1) as usize] {
                    return false;
                }
            }
        }
    }
    true
}
