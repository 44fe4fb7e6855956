//! Oriented graphs: directed graphs with no self-loops and no pair of
//! anti-parallel arcs. Vertices are dense external indices `1..=n`.

use std::collections::VecDeque;

use thiserror::Error;

/// External vertex index, 1-based.
pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} out of range 1..={vertex_count}")]
    VertexOutOfRange { vertex: Vertex, vertex_count: u32 },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: Vertex },
    #[error("arcs ({u},{v}) and ({v},{u}) are anti-parallel")]
    AntiParallelPair { u: Vertex, v: Vertex },
    #[error("duplicate arc ({u},{v})")]
    DuplicateArc { u: Vertex, v: Vertex },
    #[error("exact search limited to {cap} vertices, graph has {vertex_count}")]
    TooLargeForExact { vertex_count: u32, cap: u32 },
}

/// Directed graph on vertices `1..=n` whose underlying undirected graph is
/// simple: every unordered pair carries at most one arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    n: u32,
    arcs: Vec<(Vertex, Vertex)>,
    out: Vec<Vec<Vertex>>,
    inc: Vec<Vec<Vertex>>,
    und: Vec<Vec<Vertex>>,
}

impl OrientedGraph {
    pub fn new(vertex_count: u32, arcs: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::NoVertices);
        }
        let n = vertex_count as usize;
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut und = vec![Vec::new(); n];
        let check = |v: Vertex| {
            if v == 0 || v > vertex_count {
                Err(GraphError::VertexOutOfRange { vertex: v, vertex_count })
            } else {
                Ok(())
            }
        };
        let mut sorted = arcs.to_vec();
        sorted.sort_unstable();
        for &(u, v) in &sorted {
            check(u)?;
            check(v)?;
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            if out[(u - 1) as usize].contains(&v) {
                return Err(GraphError::DuplicateArc { u, v });
            }
            if out[(v - 1) as usize].contains(&u) {
                return Err(GraphError::AntiParallelPair { u, v });
            }
            out[(u - 1) as usize].push(v);
            inc[(v - 1) as usize].push(u);
            und[(u - 1) as usize].push(v);
            und[(v - 1) as usize].push(u);
        }
        for list in out.iter_mut().chain(inc.iter_mut()).chain(und.iter_mut()) {
            list.sort_unstable();
        }
        Ok(OrientedGraph { n: vertex_count, arcs: sorted, out, inc, und })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        1..=self.n
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.in_range(u) && self.in_range(v) && self.out[(u - 1) as usize].binary_search(&v).is_ok()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.in_range(u)
            && self.in_range(v)
            && self.und[(u - 1) as usize].binary_search(&v).is_ok()
    }

    fn in_range(&self, v: Vertex) -> bool {
        v >= 1 && v <= self.n
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out[(v - 1) as usize]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.inc[(v - 1) as usize]
    }

    /// Neighbors in the underlying undirected graph, ascending.
    pub fn underlying_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.und[(v - 1) as usize]
    }

    pub fn underlying_degree(&self, v: Vertex) -> usize {
        self.und[(v - 1) as usize].len()
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[(v - 1) as usize].len()
    }

    /// No two tokens on underlying-adjacent vertices.
    pub fn is_independent(&self, tokens: &[Vertex]) -> bool {
        tokens.iter().all(|&v| {
            self.in_range(v)
                && self.und[(v - 1) as usize].iter().all(|w| !tokens.contains(w))
        })
    }

    /// Length of a shortest directed path, `None` when unreachable.
    pub fn directed_distance(&self, from: Vertex, to: Vertex) -> Option<u32> {
        if !self.in_range(from) || !self.in_range(to) {
            return None;
        }
        let mut dist = vec![u32::MAX; self.n as usize];
        dist[(from - 1) as usize] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                return Some(dist[(u - 1) as usize]);
            }
            for &w in &self.out[(u - 1) as usize] {
                if dist[(w - 1) as usize] == u32::MAX {
                    dist[(w - 1) as usize] = dist[(u - 1) as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Shortest directed path from `from` to `to` as a vertex list, if any.
    pub fn directed_path(&self, from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
        if !self.in_range(from) || !self.in_range(to) {
            return None;
        }
        let mut prev = vec![0u32; self.n as usize];
        prev[(from - 1) as usize] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[(cur - 1) as usize];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.out[(u - 1) as usize] {
                if prev[(w - 1) as usize] == 0 {
                    prev[(w - 1) as usize] = u;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Connected components of the underlying graph, each sorted, ordered by
    /// smallest member.
    pub fn underlying_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n as usize];
        let mut comps = Vec::new();
        for s in 1..=self.n {
            if seen[(s - 1) as usize] {
                continue;
            }
            let mut comp = vec![s];
            seen[(s - 1) as usize] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.und[(u - 1) as usize] {
                    if !seen[(w - 1) as usize] {
                        seen[(w - 1) as usize] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Connected components of the complement of the underlying graph, each
    /// sorted, ordered by smallest member. Runs the standard non-neighbor
    /// sweep, so the complement is never materialized.
    pub fn co_components(&self) -> Vec<Vec<Vertex>> {
        let mut unvisited: Vec<Vertex> = (1..=self.n).collect();
        let mut comps = Vec::new();
        while let Some(&s) = unvisited.first() {
            unvisited.remove(0);
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                // Complement neighbors of u = unvisited vertices not adjacent
                // to u in the underlying graph.
                let adj = &self.und[(u - 1) as usize];
                let (near, far): (Vec<Vertex>, Vec<Vertex>) =
                    unvisited.iter().partition(|w| adj.binary_search(w).is_ok());
                unvisited = near;
                for w in far {
                    comp.push(w);
                    queue.push_back(w);
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort_by_key(|c| c[0]);
        comps
    }

    /// Subgraph induced by `keep` (deduplicated, sorted), relabeled densely.
    /// Returns the subgraph and the map from new vertex `i+1` to `map[i]`.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Result<(OrientedGraph, Vec<Vertex>), GraphError> {
        let mut map: Vec<Vertex> = keep.to_vec();
        map.sort_unstable();
        map.dedup();
        for &v in &map {
            if !self.in_range(v) {
                return Err(GraphError::VertexOutOfRange { vertex: v, vertex_count: self.n });
            }
        }
        let rank = |v: Vertex| map.binary_search(&v).ok().map(|i| i as u32 + 1);
        let mut arcs = Vec::new();
        for &(u, v) in &self.arcs {
            if let (Some(nu), Some(nv)) = (rank(u), rank(v)) {
                arcs.push((nu, nv));
            }
        }
        let sub = OrientedGraph::new(map.len() as u32, &arcs)?;
        Ok((sub, map))
    }
}
