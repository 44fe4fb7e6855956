//! Decision on disjoint unions of oriented paths: token counts must match
//! per component, then each component is settled by exact search on its own
//! relabeled subgraph. Structurally identical component queries within one
//! call are solved once.

use std::collections::HashMap;

use crate::graph::{OrientedGraph, Vertex};
use crate::instance::{Configuration, Instance, Move};
use crate::solver::{
    solve_exact, AlgorithmTag, SearchLimits, SearchStats, SolveError, SolveResult,
};

pub fn is_path_forest(g: &OrientedGraph) -> bool {
    g.vertices().all(|v| g.underlying_degree(v) <= 2)
        && g.underlying_components().iter().all(|c| {
            let edges = c.iter().map(|&v| g.underlying_degree(v)).sum::<usize>() / 2;
            edges == c.len() - 1
        })
}

type ComponentKey = (u32, Vec<(Vertex, Vertex)>, Vec<Vertex>, Vec<Vertex>);

pub fn solve_path_forest(i: &Instance, want_witness: bool) -> Result<SolveResult, SolveError> {
    let g = i.graph();
    if !is_path_forest(g) {
        return Err(SolveError::NotAPathForest);
    }
    let mut stats = SearchStats { algorithm_tag: AlgorithmTag::PathForest, ..Default::default() };
    if i.source().len() != i.target().len() || !g.is_independent(i.target().tokens()) {
        return Ok(SolveResult { answer: false, witness: None, stats });
    }

    let mut moves: Vec<Move> = Vec::new();
    let mut memo: HashMap<ComponentKey, SolveResult> = HashMap::new();
    for comp in g.underlying_components() {
        let on = |cfg: &Configuration| -> Vec<Vertex> {
            cfg.tokens().iter().copied().filter(|v| comp.binary_search(v).is_ok()).collect()
        };
        let (s_c, t_c) = (on(i.source()), on(i.target()));
        if s_c.len() != t_c.len() {
            return Ok(SolveResult { answer: false, witness: None, stats });
        }
        if s_c == t_c {
            continue;
        }
        let (sub, map) = g.induced_subgraph(&comp).expect("component vertices are in range");
        let rank = |v: &Vertex| map.binary_search(v).expect("token is in its component") as u32 + 1;
        let s_new: Vec<Vertex> = s_c.iter().map(rank).collect();
        let t_new: Vec<Vertex> = t_c.iter().map(rank).collect();
        let key = (sub.vertex_count(), sub.arcs().to_vec(), s_new.clone(), t_new.clone());
        let sub_result = match memo.get(&key) {
            Some(r) => r.clone(),
            None => {
                let inst = Instance::new(
                    sub,
                    Configuration::new(s_new).expect("tokens are distinct"),
                    Configuration::new(t_new).expect("tokens are distinct"),
                )
                .expect("induced token sets stay independent");
                let r = solve_exact(&inst, SearchLimits::default(), want_witness).map_err(
                    |e| match e {
                        // The per-component search is an implementation detail;
                        // blowing its budget is a solver failure, not a verdict.
                        SolveError::StateLimitExceeded { states_expanded } => SolveError::Internal(
                            format!("component search gave up after {states_expanded} states"),
                        ),
                        other => other,
                    },
                )?;
                memo.insert(key, r.clone());
                r
            }
        };
        stats.states_expanded += sub_result.stats.states_expanded;
        stats.frontier_peak = stats.frontier_peak.max(sub_result.stats.frontier_peak);
        if !sub_result.answer {
            return Ok(SolveResult { answer: false, witness: None, stats });
        }
        if let Some(w) = sub_result.witness {
            moves.extend(w.moves.iter().map(|m| Move {
                from: map[(m.from - 1) as usize],
                to: map[(m.to - 1) as usize],
            }));
        }
    }
    let witness = want_witness.then(|| crate::instance::ReconfSequence::new(moves));
    Ok(SolveResult { answer: true, witness, stats })
}
