//! Exact independence-number computation on the underlying undirected graph.
//! Branch and bound over bitmasks; hard vertex cap keeps runtimes sane.

use crate::graph::{GraphError, OrientedGraph, Vertex};

/// Largest graph `max_independent_set` accepts.
pub const EXACT_VERTEX_CAP: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisCertificate {
    pub alpha: u32,
    /// One maximum independent set, ascending.
    pub witness: Vec<Vertex>,
}

fn adjacency_masks(g: &OrientedGraph) -> Vec<u64> {
    let n = g.vertex_count();
    (1..=n)
        .map(|v| {
            let mut m = 0u64;
            for &w in g.underlying_neighbors(v) {
                m |= 1 << (w - 1);
            }
            m
        })
        .collect()
}

fn pivot(p: u64, adj: &[u64]) -> u32 {
    let mut best = u32::MAX;
    let mut best_deg = 0usize;
    let mut rest = p;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        let deg = (adj[v as usize] & p).count_ones() as usize;
        // Highest degree first shrinks the candidate set fastest.
        if best == u32::MAX || deg > best_deg {
            best = v;
            best_deg = deg;
        }
    }
    best
}

fn branch(p: u64, cur: u32, chosen: u64, best: &mut u32, best_set: &mut u64, adj: &[u64]) {
    if cur + p.count_ones() <= *best {
        return;
    }
    if p == 0 {
        *best = cur;
        *best_set = chosen;
        return;
    }
    let v = pivot(p, adj);
    let bit = 1u64 << v;
    branch(p & !bit & !adj[v as usize], cur + 1, chosen | bit, best, best_set, adj);
    branch(p & !bit, cur, chosen, best, best_set, adj);
}

/// Exact independence number with one witness set.
pub fn max_independent_set(g: &OrientedGraph) -> Result<MisCertificate, GraphError> {
    let n = g.vertex_count();
    if n > EXACT_VERTEX_CAP {
        return Err(GraphError::TooLargeForExact { vertex_count: n, cap: EXACT_VERTEX_CAP });
    }
    let adj = adjacency_masks(g);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0u32;
    let mut best_set = 0u64;
    branch(full, 0, 0, &mut best, &mut best_set, &adj);
    let witness = (0..n).filter(|i| best_set >> i & 1 == 1).map(|i| i + 1).collect();
    Ok(MisCertificate { alpha: best, witness })
}

/// Every maximum independent set, ascending within each set, sets in
/// lexicographic order.
pub fn all_max_independent_sets(g: &OrientedGraph) -> Result<(u32, Vec<Vec<Vertex>>), GraphError> {
    let alpha = max_independent_set(g)?.alpha;
    let adj = adjacency_masks(g);
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    collect_exact(1, n, alpha, &adj, &mut cur, &mut out);
    Ok((alpha, out))
}

fn collect_exact(
    next: Vertex,
    n: u32,
    need: u32,
    adj: &[u64],
    cur: &mut Vec<Vertex>,
    out: &mut Vec<Vec<Vertex>>,
) {
    if need == 0 {
        out.push(cur.clone());
        return;
    }
    if n + 1 - next < need {
        return;
    }
    for v in next..=n {
        if n + 1 - v < need {
            break;
        }
        if cur.iter().any(|&u| adj[(v - 1) as usize] >> (u - 1) & 1 == 1) {
            continue;
        }
        cur.push(v);
        collect_exact(v + 1, n, need - 1, adj, cur, out);
        cur.pop();
    }
}

/// Every independent set of size `<= max_size` (all sizes when `None`),
/// including the empty set, in lexicographic order.
pub fn all_independent_sets(g: &OrientedGraph, max_size: Option<u32>) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let cap = max_size.unwrap_or(n);
    let mut out = Vec::new();
    let mut cur: Vec<Vertex> = Vec::new();
    fn rec(
        g: &OrientedGraph,
        next: Vertex,
        cap: u32,
        cur: &mut Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        out.push(cur.clone());
        if cur.len() as u32 == cap {
            return;
        }
        for v in next..=g.vertex_count() {
            if cur.iter().any(|&u| g.has_edge(u, v)) {
                continue;
            }
            cur.push(v);
            rec(g, v + 1, cap, cur, out);
            cur.pop();
        }
    }
    rec(g, 1, cap, &mut cur, &mut out);
    out
}
