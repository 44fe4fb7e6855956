//! Seeded instance generators for the campaign harness.
//!
//! Generation is a pure function of the [`GenSpec`]: one ChaCha8 stream, graph
//! drawn before tokens so that specs differing only in token count share
//! the same graph. Token draws are rejection samplers with a bounded retry
//! budget and an exact enumeration fallback, so infeasible requests fail
//! deterministically instead of by bad luck.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{GraphError, OrientedGraph, Vertex};
use crate::instance::{Configuration, Instance};
use crate::mis::{all_independent_sets, all_max_independent_sets};

const RETRY_BUDGET: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenClass {
    Cycle,
    PathForest,
    Cograph,
    Split,
    /// Bipartite, max degree 3; tokens are maximum independent sets.
    BipartiteSubcubicMaxIs,
    /// Max degree 3; tokens are maximum independent sets.
    SubcubicMaxIs,
    Arbitrary,
}

impl std::fmt::Display for GenClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GenClass::Cycle => "cycle",
            GenClass::PathForest => "path_forest",
            GenClass::Cograph => "cograph",
            GenClass::Split => "split",
            GenClass::BipartiteSubcubicMaxIs => "bipartite_subcubic_max_is",
            GenClass::SubcubicMaxIs => "subcubic_max_is",
            GenClass::Arbitrary => "arbitrary",
        })
    }
}

/// The `*_max_is` classes certify their own token-set size and ignore
/// `token_count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub class: GenClass,
    pub vertex_count: u32,
    pub token_count: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn generate_instance(spec: &GenSpec) -> Result<Instance, GenError> {
    let n = spec.vertex_count;
    if n == 0 {
        return Err(GenError::InfeasibleSpec("need at least one vertex".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let edges = match spec.class {
        GenClass::Cycle => {
            if n < 3 {
                return Err(GenError::InfeasibleSpec(format!(
                    "a cycle needs at least 3 vertices, got {n}"
                )));
            }
            (1..=n).map(|u| (u, u % n + 1)).collect()
        }
        GenClass::PathForest => {
            let perm = permutation(&mut rng, n);
            perm.windows(2)
                .filter(|_| rng.random_bool(0.75))
                .map(|w| (w[0], w[1]))
                .collect()
        }
        GenClass::Cograph => {
            let perm = permutation(&mut rng, n);
            let mut edges = Vec::new();
            let join = rng.random();
            cotree_edges(&mut rng, &perm, join, &mut edges);
            edges
        }
        GenClass::Split => {
            let perm = permutation(&mut rng, n);
            let clique_len = rng.random_range(1..=n) as usize;
            let (clique, indep) = perm.split_at(clique_len);
            let mut edges = Vec::new();
            for (i, &u) in clique.iter().enumerate() {
                for &v in &clique[i + 1..] {
                    edges.push((u, v));
                }
            }
            for &v in indep {
                for &u in clique {
                    if rng.random() {
                        edges.push((u, v));
                    }
                }
            }
            edges
        }
        GenClass::BipartiteSubcubicMaxIs => {
            if n == 1 {
                Vec::new()
            } else {
                let perm = permutation(&mut rng, n);
                let (left, right) = perm.split_at(rng.random_range(1..n) as usize);
                let mut cand: Vec<(Vertex, Vertex)> = left
                    .iter()
                    .flat_map(|&u| right.iter().map(move |&v| (u, v)))
                    .collect();
                cand.shuffle(&mut rng);
                capped_degree_prefix(&mut rng, n, cand)
            }
        }
        GenClass::SubcubicMaxIs => {
            let mut cand: Vec<(Vertex, Vertex)> =
                (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
            cand.shuffle(&mut rng);
            capped_degree_prefix(&mut rng, n, cand)
        }
        GenClass::Arbitrary => {
            let density = rng.random_range(0.15..0.45);
            (1..=n)
                .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                .filter(|_| rng.random_bool(density))
                .collect()
        }
    };
    let arcs: Vec<(Vertex, Vertex)> = edges
        .into_iter()
        .map(|(u, v)| if rng.random() { (u, v) } else { (v, u) })
        .collect();
    let g = OrientedGraph::new(n, &arcs)?;

    let (s, t) = match spec.class {
        GenClass::BipartiteSubcubicMaxIs | GenClass::SubcubicMaxIs => {
            let (_, optima) = all_max_independent_sets(&g)?;
            let s = optima.choose(&mut rng).expect("alpha >= 1 on nonempty graphs").clone();
            let t = optima.choose(&mut rng).expect("alpha >= 1 on nonempty graphs").clone();
            (s, t)
        }
        _ => {
            let s = draw_independent(&mut rng, &g, spec.token_count)?;
            let t = draw_independent(&mut rng, &g, spec.token_count)?;
            (s, t)
        }
    };
    let s = Configuration::new(s).expect("drawn tokens are distinct");
    let t = Configuration::new(t).expect("drawn tokens are distinct");
    Ok(Instance::new(g, s, t).expect("drawn tokens are in range and independent"))
}

fn permutation(rng: &mut ChaCha8Rng, n: u32) -> Vec<Vertex> {
    let mut perm: Vec<Vertex> = (1..=n).collect();
    perm.shuffle(rng);
    perm
}

/// Takes a random-length prefix of the candidate edges, skipping any edge
/// that would push an endpoint past degree 3.
fn capped_degree_prefix(
    rng: &mut ChaCha8Rng,
    n: u32,
    cand: Vec<(Vertex, Vertex)>,
) -> Vec<(Vertex, Vertex)> {
    let want = rng.random_range(0..=cand.len().min(n as usize + 3));
    let mut deg = vec![0u32; n as usize];
    let mut edges = Vec::with_capacity(want);
    for (u, v) in cand {
        if edges.len() >= want {
            break;
        }
        if deg[(u - 1) as usize] < 3 && deg[(v - 1) as usize] < 3 {
            deg[(u - 1) as usize] += 1;
            deg[(v - 1) as usize] += 1;
            edges.push((u, v));
        }
    }
    edges
}

/// Random cotree: splits the vertices into parts, joins across parts on
/// alternating levels, recurses within. Every cograph arises this way.
fn cotree_edges(
    rng: &mut ChaCha8Rng,
    verts: &[Vertex],
    join: bool,
    edges: &mut Vec<(Vertex, Vertex)>,
) {
    if verts.len() <= 1 {
        return;
    }
    let mut parts: Vec<Vec<Vertex>> = vec![vec![verts[0]]];
    for &v in &verts[1..] {
        if rng.random() {
            parts.last_mut().expect("parts start nonempty").push(v);
        } else {
            parts.push(vec![v]);
        }
    }
    if parts.len() == 1 {
        // Proper cotrees branch at every internal node.
        let cut = rng.random_range(1..verts.len());
        parts = vec![verts[..cut].to_vec(), verts[cut..].to_vec()];
    }
    if join {
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                for &u in a {
                    for &v in b {
                        edges.push((u, v));
                    }
                }
            }
        }
    }
    for part in &parts {
        cotree_edges(rng, part, !join, edges);
    }
}

fn draw_independent(
    rng: &mut ChaCha8Rng,
    g: &OrientedGraph,
    k: u32,
) -> Result<Vec<Vertex>, GenError> {
    let n = g.vertex_count();
    if k > n {
        return Err(GenError::InfeasibleSpec(format!("{k} tokens on {n} vertices")));
    }
    let pool: Vec<Vertex> = g.vertices().collect();
    for _ in 0..RETRY_BUDGET {
        let mut pick: Vec<Vertex> =
            pool.choose_multiple(rng, k as usize).copied().collect();
        pick.sort_unstable();
        if g.is_independent(&pick) {
            return Ok(pick);
        }
    }
    let sized: Vec<Vec<Vertex>> = all_independent_sets(g, Some(k))
        .into_iter()
        .filter(|s| s.len() == k as usize)
        .collect();
    sized.choose(rng).cloned().ok_or_else(|| {
        GenError::InfeasibleSpec(format!("graph has no independent set of size {k}"))
    })
}
