//! Polynomial-time decision on cographs.
//!
//! Cographs decompose recursively: every induced subgraph with two or more
//! vertices is either disconnected or a join of its co-components. Tokens in
//! a join are trapped: with two or more tokens present, stepping outside the
//! co-component that holds them would land adjacent to every other token. So
//! the instance splits along components and confines along co-components
//! until single-token reachability decides it.

use crate::classify::classify;
use crate::graph::{OrientedGraph, Vertex};
use crate::instance::{Instance, Move, ReconfSequence};
use crate::solver::{AlgorithmTag, SearchStats, SolveError, SolveResult};

pub fn solve_cograph(i: &Instance, want_witness: bool) -> Result<SolveResult, SolveError> {
    let g = i.graph();
    if !classify(g).is_cograph {
        return Err(SolveError::NotACograph);
    }
    let stats = SearchStats { algorithm_tag: AlgorithmTag::Cograph, ..Default::default() };
    if i.source().len() != i.target().len() || !g.is_independent(i.target().tokens()) {
        return Ok(SolveResult { answer: false, witness: None, stats });
    }
    let mut moves = want_witness.then(Vec::new);
    let answer = recurse(g, i.source().tokens(), i.target().tokens(), &mut moves)?;
    let witness = if answer { moves.map(ReconfSequence::new) } else { None };
    Ok(SolveResult { answer, witness, stats })
}

/// Decides the relabeled subinstance (s, t) on g, appending witness moves in
/// g's labels when requested. Both token slices are sorted and equal-sized.
fn recurse(
    g: &OrientedGraph,
    s: &[Vertex],
    t: &[Vertex],
    moves: &mut Option<Vec<Move>>,
) -> Result<bool, SolveError> {
    if s == t {
        return Ok(true);
    }
    if s.len() == 1 {
        return Ok(match g.directed_path(s[0], t[0]) {
            Some(path) => {
                if let Some(ms) = moves.as_mut() {
                    ms.extend(path.windows(2).map(|w| Move { from: w[0], to: w[1] }));
                }
                true
            }
            None => false,
        });
    }

    let comps = g.underlying_components();
    let parts: Vec<Vec<Vertex>> = if comps.len() > 1 {
        comps
    } else {
        // Connected cograph: a join of co-components, and with two or more
        // tokens every one of them sits in the co-component of s[0].
        let cos = g.co_components();
        if cos.len() == 1 {
            return Err(SolveError::Internal(
                "connected graph with connected complement passed the cograph check".into(),
            ));
        }
        let home = cos
            .into_iter()
            .find(|c| c.binary_search(&s[0]).is_ok())
            .expect("every vertex lies in a co-component");
        debug_assert!(s.iter().all(|v| home.binary_search(v).is_ok()));
        if t.iter().any(|v| home.binary_search(v).is_err()) {
            return Ok(false);
        }
        vec![home]
    };

    for part in parts {
        let s_p: Vec<Vertex> =
            s.iter().copied().filter(|v| part.binary_search(v).is_ok()).collect();
        let t_p: Vec<Vertex> =
            t.iter().copied().filter(|v| part.binary_search(v).is_ok()).collect();
        if s_p.len() != t_p.len() {
            return Ok(false);
        }
        if s_p == t_p {
            continue;
        }
        let (sub, map) = g.induced_subgraph(&part).expect("parts come from g");
        let rank =
            |v: &Vertex| map.binary_search(v).expect("token lies in this part") as u32 + 1;
        let s_new: Vec<Vertex> = s_p.iter().map(rank).collect();
        let t_new: Vec<Vertex> = t_p.iter().map(rank).collect();
        let mut sub_moves = moves.as_ref().map(|_| Vec::new());
        if !recurse(&sub, &s_new, &t_new, &mut sub_moves)? {
            return Ok(false);
        }
        if let (Some(ms), Some(sm)) = (moves.as_mut(), sub_moves) {
            ms.extend(sm.into_iter().map(|m| Move {
                from: map[(m.from - 1) as usize],
                to: map[(m.to - 1) as usize],
            }));
        }
    }
    Ok(true)
}
