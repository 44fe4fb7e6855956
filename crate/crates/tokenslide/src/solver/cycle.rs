//! Polynomial-time decision on oriented cycles.
//!
//! Uniform orientations (every out-degree 1) reduce to a lockedness test;
//! witnesses follow a potential argument: commit to a source-to-target
//! assignment and repeat moves that each shave one step off the total
//! remaining forward distance. Non-uniform orientations case-split on an
//! out-degree-2 vertex: nothing re-enters it, so its token departs at most
//! once, and each departure arc reduces to a clearing cascade plus a path
//! instance on the rest of the ring.

use crate::graph::{OrientedGraph, Vertex};
use crate::instance::{Configuration, Instance, Move, ReconfSequence};
use crate::solver::{
    solve_path_forest, AlgorithmTag, SearchStats, SolveError, SolveResult,
};

/// Shape facts plus, on uniform equal-size instances, the committed
/// assignment and its total forward distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleAnalysis {
    pub uniform: bool,
    /// Smallest vertex with out-degree 2; present iff not uniform.
    pub source_vertex: Option<Vertex>,
    pub locked: bool,
    /// Committed (token, target) pairs, ascending by token.
    pub pairing: Option<Vec<(Vertex, Vertex)>>,
    /// Sum of directed distances from each token to its paired target.
    pub total_distance: Option<u64>,
}

/// Vertices in ring order starting at 1, or `NotACycle`.
fn cycle_order(g: &OrientedGraph) -> Result<Vec<Vertex>, SolveError> {
    let n = g.vertex_count();
    if n < 3 || g.arc_count() != n as usize || g.vertices().any(|v| g.underlying_degree(v) != 2)
    {
        return Err(SolveError::NotACycle);
    }
    let mut order = Vec::with_capacity(n as usize);
    let mut seen = vec![false; n as usize];
    let (mut prev, mut cur) = (0u32, 1u32);
    for _ in 0..n {
        if seen[(cur - 1) as usize] {
            // Degrees check out but the walk closed early: several cycles.
            return Err(SolveError::NotACycle);
        }
        seen[(cur - 1) as usize] = true;
        order.push(cur);
        let nb = g.underlying_neighbors(cur);
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
    }
    if cur != 1 {
        return Err(SolveError::NotACycle);
    }
    Ok(order)
}

/// Ring order rotated to follow arc direction (uniform orientations only).
fn align_with_arcs(g: &OrientedGraph, mut order: Vec<Vertex>) -> Vec<Vertex> {
    if !g.has_arc(order[0], order[1]) {
        order[1..].reverse();
    }
    order
}

fn is_uniform(g: &OrientedGraph) -> bool {
    g.vertices().all(|v| g.out_degree(v) == 1)
}

/// A locked source on a uniform cycle: every token sees another token two
/// steps ahead, so no slide can ever preserve independence.
pub fn is_locked(i: &Instance) -> Result<bool, SolveError> {
    let g = i.graph();
    cycle_order(g)?;
    if !is_uniform(g) || i.source() == i.target() {
        return Ok(false);
    }
    let succ = |v: Vertex| g.out_neighbors(v)[0];
    Ok(i.source().tokens().iter().all(|&s| i.source().contains(succ(succ(s)))))
}

pub fn analyze_cycle(i: &Instance) -> Result<CycleAnalysis, SolveError> {
    let g = i.graph();
    let order = cycle_order(g)?;
    let uniform = is_uniform(g);
    let source_vertex = if uniform {
        None
    } else {
        g.vertices().find(|&v| g.out_degree(v) == 2)
    };
    let locked = is_locked(i)?;
    let mut pairing = None;
    let mut total_distance = None;
    if uniform
        && !locked
        && i.source().len() == i.target().len()
        && g.is_independent(i.target().tokens())
    {
        let order = align_with_arcs(g, order);
        if let Some((pairs, delta)) = committed_pairing(&order, i.source(), i.target()) {
            pairing = Some(pairs);
            total_distance = Some(delta);
        }
    }
    Ok(CycleAnalysis { uniform, source_vertex, locked, pairing, total_distance })
}

/// Picks the source-to-target assignment the witness schedule will follow.
///
/// Candidates are the k cyclic shifts of the order-preserving assignment. A
/// shift is kept only if it is realizable: tokens cannot pass each other, so
/// consecutive travel distances must satisfy d(i+1) - d(i) = h(i) - g(i)
/// exactly (token gaps g before, h after), with no wrap-around slack. An
/// inconsistent shift strands a token behind a finished one. Among
/// realizable shifts: least total distance, ties by the smallest target
/// paired with the smallest token.
fn committed_pairing(
    order: &[Vertex],
    source: &Configuration,
    target: &Configuration,
) -> Option<(Vec<(Vertex, Vertex)>, u64)> {
    let n = order.len() as i64;
    let k = source.len();
    if k == 0 {
        return Some((Vec::new(), 0));
    }
    let mut pos = vec![0i64; order.len()];
    for (idx, &v) in order.iter().enumerate() {
        pos[(v - 1) as usize] = idx as i64;
    }
    let md = |x: i64| x.rem_euclid(n);
    let mut p: Vec<i64> = source.tokens().iter().map(|&v| pos[(v - 1) as usize]).collect();
    p.sort_unstable();
    let mut q: Vec<i64> = target.tokens().iter().map(|&v| pos[(v - 1) as usize]).collect();
    q.sort_unstable();
    let s_min_idx = p
        .iter()
        .position(|&x| x == pos[(source.tokens()[0] - 1) as usize])
        .expect("smallest token has a position");

    let mut best: Option<((u64, Vertex), Vec<i64>)> = None;
    for j in 0..k {
        let tgt: Vec<i64> = (0..k).map(|idx| q[(idx + j) % k]).collect();
        let d: Vec<i64> = (0..k).map(|idx| md(tgt[idx] - p[idx])).collect();
        let consistent = (0..k).all(|idx| {
            let nx = (idx + 1) % k;
            d[nx] - d[idx] == md(tgt[nx] - tgt[idx]) - md(p[nx] - p[idx])
        });
        if !consistent {
            continue;
        }
        let delta = d.iter().sum::<i64>() as u64;
        let key = (delta, order[tgt[s_min_idx] as usize]);
        if best.as_ref().is_none_or(|(b, _)| key < *b) {
            best = Some((key, tgt));
        }
    }
    best.map(|((delta, _), tgt)| {
        let mut pairs: Vec<(Vertex, Vertex)> = (0..k)
            .map(|idx| (order[p[idx] as usize], order[tgt[idx] as usize]))
            .collect();
        pairs.sort_unstable();
        (pairs, delta)
    })
}

/// Greedy schedule: move any token that is short of its target and whose
/// next two ring slots are free. Every move cuts the total distance by one;
/// with a realizable pairing and fewer than n/2 tokens this never stalls.
fn uniform_witness(
    order: &[Vertex],
    pairing: &[(Vertex, Vertex)],
    total: u64,
) -> Result<ReconfSequence, SolveError> {
    let n = order.len();
    let mut pos = vec![0usize; n];
    for (idx, &v) in order.iter().enumerate() {
        pos[(v - 1) as usize] = idx;
    }
    let mut cur: Vec<usize> = pairing.iter().map(|&(s, _)| pos[(s - 1) as usize]).collect();
    let tgt: Vec<usize> = pairing.iter().map(|&(_, t)| pos[(t - 1) as usize]).collect();
    let mut occupied = vec![false; n];
    for &c in &cur {
        occupied[c] = true;
    }
    let mut moves = Vec::with_capacity(total as usize);
    for _ in 0..total {
        let Some(ti) = (0..cur.len()).find(|&ti| {
            cur[ti] != tgt[ti] && !occupied[(cur[ti] + 1) % n] && !occupied[(cur[ti] + 2) % n]
        }) else {
            return Err(SolveError::Internal("uniform cycle schedule stalled".into()));
        };
        let (from, to) = (cur[ti], (cur[ti] + 1) % n);
        occupied[from] = false;
        occupied[to] = true;
        cur[ti] = to;
        moves.push(Move { from: order[from], to: order[to] });
    }
    if cur != tgt {
        return Err(SolveError::Internal("uniform cycle schedule fell short".into()));
    }
    Ok(ReconfSequence::new(moves))
}

pub fn solve_cycle(i: &Instance, want_witness: bool) -> Result<SolveResult, SolveError> {
    let g = i.graph();
    let order = cycle_order(g)?;
    let mut stats = SearchStats { algorithm_tag: AlgorithmTag::Cycle, ..Default::default() };
    if i.source().len() != i.target().len() || !g.is_independent(i.target().tokens()) {
        return Ok(SolveResult { answer: false, witness: None, stats });
    }
    if i.source() == i.target() {
        let witness = want_witness.then(ReconfSequence::default);
        return Ok(SolveResult { answer: true, witness, stats });
    }

    if is_uniform(g) {
        if is_locked(i)? {
            return Ok(SolveResult { answer: false, witness: None, stats });
        }
        let witness = if want_witness {
            let order = align_with_arcs(g, order);
            let Some((pairing, total)) = committed_pairing(&order, i.source(), i.target())
            else {
                return Err(SolveError::Internal(
                    "no realizable pairing on an unlocked uniform cycle".into(),
                ));
            };
            Some(uniform_witness(&order, &pairing, total)?)
        } else {
            None
        };
        return Ok(SolveResult { answer: true, witness, stats });
    }

    let v1 = g
        .vertices()
        .find(|&v| g.out_degree(v) == 2)
        .expect("non-uniform cycle has an out-degree-2 vertex");
    let nb = g.underlying_neighbors(v1).to_vec();
    match (i.source().contains(v1), i.target().contains(v1)) {
        // The v1 token can never leave and nothing can enter v1 (in-degree
        // 0), so it pins both neighbors for the whole reconfiguration.
        (true, true) => {
            let keep: Vec<Vertex> =
                g.vertices().filter(|&v| v != v1 && !nb.contains(&v)).collect();
            let strip = |cfg: &Configuration| -> Vec<Vertex> {
                cfg.tokens().iter().copied().filter(|&v| v != v1).collect()
            };
            let (s_rest, t_rest) = (strip(i.source()), strip(i.target()));
            if keep.is_empty() {
                let witness = want_witness.then(ReconfSequence::default);
                return Ok(SolveResult { answer: true, witness, stats });
            }
            let (sub, map) = g.induced_subgraph(&keep).expect("kept vertices are in range");
            let rank = |v: &Vertex| map.binary_search(v).expect("token was kept") as u32 + 1;
            let inst = Instance::new(
                sub,
                Configuration::new(s_rest.iter().map(rank).collect()).expect("tokens distinct"),
                Configuration::new(t_rest.iter().map(rank).collect()).expect("tokens distinct"),
            )
            .expect("induced source stays independent");
            let r = solve_path_forest(&inst, want_witness)?;
            let witness = r.witness.map(|w| {
                ReconfSequence::new(
                    w.moves
                        .iter()
                        .map(|m| Move {
                            from: map[(m.from - 1) as usize],
                            to: map[(m.to - 1) as usize],
                        })
                        .collect(),
                )
            });
            stats.states_expanded = r.stats.states_expanded;
            stats.frontier_peak = r.stats.frontier_peak;
            Ok(SolveResult { answer: r.answer, witness, stats })
        }
        // v1 is never occupied: drop it and solve the leftover path.
        (false, false) => {
            let keep: Vec<Vertex> = g.vertices().filter(|&v| v != v1).collect();
            let (sub, map) = g.induced_subgraph(&keep).expect("kept vertices are in range");
            let rank = |v: &Vertex| map.binary_search(v).expect("token was kept") as u32 + 1;
            let inst = Instance::new(
                sub,
                Configuration::new(i.source().tokens().iter().map(rank).collect())
                    .expect("tokens distinct"),
                Configuration::new(i.target().tokens().iter().map(rank).collect())
                    .expect("tokens distinct"),
            )
            .expect("induced source stays independent");
            let r = solve_path_forest(&inst, want_witness)?;
            let witness = r.witness.map(|w| {
                ReconfSequence::new(
                    w.moves
                        .iter()
                        .map(|m| Move {
                            from: map[(m.from - 1) as usize],
                            to: map[(m.to - 1) as usize],
                        })
                        .collect(),
                )
            });
            stats.states_expanded = r.stats.states_expanded;
            stats.frontier_peak = r.stats.frontier_peak;
            Ok(SolveResult { answer: r.answer, witness, stats })
        }
        // No arc enters v1, so a target token there is unreachable.
        (false, true) => Ok(SolveResult { answer: false, witness: None, stats }),
        // The v1 token departs exactly once, through one of its two
        // out-arcs, and v1 stays empty afterwards. Both edges at v1 keep
        // their independence constraints until the departure, so before it
        // no token may stand next to v1 and the landing's far side must be
        // cleared by a forced cascade; after it the run is free play on the
        // path left by deleting v1.
        (true, false) => {
            let p = order.iter().position(|&v| v == v1).expect("v1 lies on the ring");
            let n = order.len();
            let mut dirs = [1usize, n - 1];
            // Ascending departure vertex keeps the branch order stable.
            if order[(p + dirs[1]) % n] < order[(p + dirs[0]) % n] {
                dirs.reverse();
            }
            for dir in dirs {
                // q walks the ring away from v1; slot 1 is the landing.
                let q: Vec<Vertex> = (1..n).map(|s| order[(p + dir * s) % n]).collect();
                let m = q.len();
                let mut qpos = vec![0usize; n + 1];
                for (idx, &v) in q.iter().enumerate() {
                    qpos[v as usize] = idx + 1;
                }
                let slots: Vec<usize> = i
                    .source()
                    .tokens()
                    .iter()
                    .filter(|&&v| v != v1)
                    .map(|&v| qpos[v as usize])
                    .collect();
                let mut occ = vec![false; m + 2];
                for &r in &slots {
                    occ[r] = true;
                }
                // Tokens at slots 2, 4, ..., 2j block the departure; each
                // must step one slot further out first, and that step is
                // its only legal move while v1 is occupied.
                let mut j = 0usize;
                while 2 * (j + 1) <= m && occ[2 * (j + 1)] {
                    j += 1;
                }
                if j > 0 && 2 * j + 1 > m - 1 {
                    // The last cascade step would land next to v1.
                    continue;
                }
                if !(1..=j).all(|i| g.has_arc(q[2 * i - 1], q[2 * i])) {
                    continue;
                }
                let arcs: Vec<(Vertex, Vertex)> = (0..m - 1)
                    .map(|idx| {
                        if g.has_arc(q[idx], q[idx + 1]) {
                            ((idx + 1) as Vertex, (idx + 2) as Vertex)
                        } else {
                            ((idx + 2) as Vertex, (idx + 1) as Vertex)
                        }
                    })
                    .collect();
                let path_g =
                    OrientedGraph::new(m as u32, &arcs).expect("ring segment stays oriented");
                let mut s_path: Vec<Vertex> = slots
                    .iter()
                    .map(|&r| if r % 2 == 0 && r <= 2 * j { (r + 1) as Vertex } else { r as Vertex })
                    .collect();
                s_path.push(1);
                let t_path: Vec<Vertex> =
                    i.target().tokens().iter().map(|&v| qpos[v as usize] as Vertex).collect();
                let inst = Instance::new(
                    path_g,
                    Configuration::new(s_path).expect("slots are distinct"),
                    Configuration::new(t_path).expect("slots are distinct"),
                )
                .expect("post-cascade slots stay independent");
                let r = solve_path_forest(&inst, want_witness)?;
                stats.states_expanded += r.stats.states_expanded;
                stats.frontier_peak = stats.frontier_peak.max(r.stats.frontier_peak);
                if !r.answer {
                    continue;
                }
                let witness = want_witness.then(|| {
                    let mut moves: Vec<Move> = (1..=j)
                        .rev()
                        .map(|i| Move { from: q[2 * i - 1], to: q[2 * i] })
                        .collect();
                    moves.push(Move { from: v1, to: q[0] });
                    if let Some(w) = &r.witness {
                        moves.extend(w.moves.iter().map(|mv| Move {
                            from: q[(mv.from - 1) as usize],
                            to: q[(mv.to - 1) as usize],
                        }));
                    }
                    ReconfSequence::new(moves)
                });
                return Ok(SolveResult { answer: true, witness, stats });
            }
            Ok(SolveResult { answer: false, witness: None, stats })
        }
    }
}
