//! Differential checks of the exact solver against a reference search that
//! materializes the whole configuration graph up front. The two
//! implementations share no traversal or encoding code, so agreement on
//! answers and shortest distances is meaningful.

use std::collections::{HashMap, VecDeque};

use tokenslide::generate::{generate_instance, GenClass, GenError, GenSpec};
use tokenslide::graph::{OrientedGraph, Vertex};
use tokenslide::instance::{Configuration, Instance};
use tokenslide::mis::all_independent_sets;
use tokenslide::solver::{solve_auto, solve_exact, SearchLimits};

/// Shortest slide count from source to target, None when unreachable.
fn reference_distance(i: &Instance) -> Option<u32> {
    let g = i.graph();
    let k = i.source().len();
    let states: Vec<Vec<Vertex>> = all_independent_sets(g, Some(k as u32))
        .into_iter()
        .filter(|s| s.len() == k)
        .collect();
    let index: HashMap<&[Vertex], usize> =
        states.iter().enumerate().map(|(idx, s)| (s.as_slice(), idx)).collect();
    let target = *index.get(i.target().tokens())?;
    let source = *index.get(i.source().tokens())?;

    let mut dist: Vec<Option<u32>> = vec![None; states.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(at) = queue.pop_front() {
        let d = dist[at].unwrap();
        if at == target {
            return Some(d);
        }
        let tokens = &states[at];
        for (slot, &v) in tokens.iter().enumerate() {
            for &w in g.out_neighbors(v) {
                if tokens.contains(&w) {
                    continue;
                }
                let mut next = tokens.clone();
                next[slot] = w;
                next.sort_unstable();
                if !g.is_independent(&next) {
                    continue;
                }
                let to = index[next.as_slice()];
                if dist[to].is_none() {
                    dist[to] = Some(d + 1);
                    queue.push_back(to);
                }
            }
        }
    }
    None
}

fn check(i: &Instance) {
    let expected = reference_distance(i);
    let r = solve_exact(i, SearchLimits::default(), true).unwrap();
    assert_eq!(r.answer, expected.is_some(), "answer mismatch on {i:?}");
    match expected {
        Some(d) => {
            let w = r.witness.expect("yes with witness requested");
            assert_eq!(w.len() as u32, d, "non-shortest witness on {i:?}");
        }
        None => assert!(r.witness.is_none()),
    }
    let auto = solve_auto(i, SearchLimits::default(), false).unwrap();
    assert_eq!(auto.answer, expected.is_some(), "auto mismatch on {i:?}");
}

/// All 3^pairs orientation assignments: absent, forward, backward.
fn every_graph(n: u32) -> Vec<OrientedGraph> {
    let pairs: Vec<(Vertex, Vertex)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    let mut graphs = Vec::new();
    let total = 3usize.pow(pairs.len() as u32);
    for code in 0..total {
        let mut rest = code;
        let mut arcs = Vec::new();
        for &(u, v) in &pairs {
            match rest % 3 {
                1 => arcs.push((u, v)),
                2 => arcs.push((v, u)),
                _ => {}
            }
            rest /= 3;
        }
        graphs.push(OrientedGraph::new(n, &arcs).unwrap());
    }
    graphs
}

#[test]
fn every_tiny_instance_agrees_with_the_reference_search() {
    let mut checked = 0u64;
    for n in 1..=4 {
        for g in every_graph(n) {
            for k in 1..=2usize {
                let sets: Vec<Vec<Vertex>> = all_independent_sets(&g, Some(k as u32))
                    .into_iter()
                    .filter(|s| s.len() == k)
                    .collect();
                for s in &sets {
                    for t in &sets {
                        let i = Instance::new(
                            g.clone(),
                            Configuration::new(s.clone()).unwrap(),
                            Configuration::new(t.clone()).unwrap(),
                        )
                        .unwrap();
                        check(&i);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 10_000, "enumeration collapsed: {checked} instances");
}

#[test]
fn seeded_arbitrary_instances_agree_with_the_reference_search() {
    let mut checked = 0u64;
    for seed in 0..400 {
        let spec = GenSpec {
            class: GenClass::Arbitrary,
            vertex_count: 5 + (seed % 5) as u32,
            token_count: 1 + (seed % 3) as u32,
            seed,
        };
        match generate_instance(&spec) {
            Ok(i) => {
                check(&i);
                checked += 1;
            }
            Err(GenError::InfeasibleSpec(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(checked > 300, "generator starved the sweep: {checked} instances");
}

#[test]
fn seeded_class_instances_agree_with_the_reference_search() {
    for class in [GenClass::Cycle, GenClass::PathForest, GenClass::Cograph] {
        for seed in 0..150 {
            let spec = GenSpec {
                class,
                vertex_count: 3 + (seed % 7) as u32,
                token_count: 1 + (seed % 3) as u32,
                seed,
            };
            match generate_instance(&spec) {
                Ok(i) => check(&i),
                Err(GenError::InfeasibleSpec(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}
