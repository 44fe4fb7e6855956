//! Randomized structural properties, cross-checked against brute force on
//! small graphs.

use proptest::prelude::*;

use tokenslide::classify::classify;
use tokenslide::generate::{generate_instance, GenClass, GenError, GenSpec};
use tokenslide::graph::{OrientedGraph, Vertex};
use tokenslide::instance::{
    parse_instance, parse_witness, serialize_instance, serialize_witness, Configuration,
    Instance, Move, ReconfSequence,
};
use tokenslide::mis::{all_independent_sets, all_max_independent_sets, max_independent_set};
use tokenslide::reduction::{
    parse_artifact, reduce_bipartite, reduce_planar, reduce_split, serialize_artifact,
    ReductionPolicy,
};
use tokenslide::solver::{apply_and_validate, solve_auto, solve_exact, SearchLimits};

/// Every unordered pair independently absent, oriented one way, or the other.
fn arb_graph(max_n: u32) -> impl Strategy<Value = OrientedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(Vertex, Vertex)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(0..3u8, len).prop_map(move |choices| {
            let arcs: Vec<(Vertex, Vertex)> = pairs
                .iter()
                .zip(&choices)
                .filter_map(|(&(u, v), c)| match c {
                    1 => Some((u, v)),
                    2 => Some((v, u)),
                    _ => None,
                })
                .collect();
            OrientedGraph::new(n, &arcs).expect("pairs are distinct and in range")
        })
    })
}

/// Graph plus equal-size independent source and target drawn by index.
fn arb_instance(max_n: u32) -> impl Strategy<Value = Instance> {
    (arb_graph(max_n), any::<usize>(), any::<usize>()).prop_filter_map(
        "no matching independent sets",
        |(g, si, ti)| {
            let sets: Vec<Vec<Vertex>> = all_independent_sets(&g, None)
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect();
            if sets.is_empty() {
                return None;
            }
            let s = sets[si % sets.len()].clone();
            let same_size: Vec<&Vec<Vertex>> =
                sets.iter().filter(|t| t.len() == s.len()).collect();
            let t = same_size[ti % same_size.len()].clone();
            Instance::new(
                g,
                Configuration::new(s).expect("independent sets have no duplicates"),
                Configuration::new(t).expect("independent sets have no duplicates"),
            )
            .ok()
        },
    )
}

fn brute_force_alpha(g: &OrientedGraph) -> (u32, Vec<Vec<Vertex>>) {
    let n = g.vertex_count();
    let mut best = 0u32;
    let mut sets: Vec<Vec<Vertex>> = Vec::new();
    for mask in 0u32..1 << n {
        let tokens: Vec<Vertex> = (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect();
        if !g.is_independent(&tokens) {
            continue;
        }
        let size = tokens.len() as u32;
        if size > best {
            best = size;
            sets.clear();
        }
        if size == best {
            sets.push(tokens);
        }
    }
    sets.sort();
    (best, sets)
}

fn has_induced_p4(g: &OrientedGraph) -> bool {
    let n = g.vertex_count();
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                for d in a + 1..=n {
                    let distinct = a != b && a != c && b != c && b != d && c != d;
                    if distinct
                        && g.has_edge(a, b)
                        && g.has_edge(b, c)
                        && g.has_edge(c, d)
                        && !g.has_edge(a, c)
                        && !g.has_edge(a, d)
                        && !g.has_edge(b, d)
                    {
                        return true;
                    }
                }
            }
        }
    }
    false
}

proptest! {
    #[test]
    fn co_components_partition_vertices_and_cross_pairs_are_edges(g in arb_graph(8)) {
        let comps = g.co_components();
        let mut seen: Vec<Vertex> = comps.iter().flatten().copied().collect();
        seen.sort_unstable();
        let all: Vec<Vertex> = g.vertices().collect();
        prop_assert_eq!(seen, all);
        for (i, a) in comps.iter().enumerate() {
            for b in comps.iter().skip(i + 1) {
                for &u in a {
                    for &v in b {
                        prop_assert!(g.has_edge(u, v), "co-components must be fully joined");
                    }
                }
            }
        }
    }

    #[test]
    fn cograph_flag_matches_induced_p4_search(g in arb_graph(8)) {
        prop_assert_eq!(classify(&g).is_cograph, !has_induced_p4(&g));
    }

    #[test]
    fn exact_alpha_matches_brute_force(g in arb_graph(10)) {
        let (alpha, sets) = brute_force_alpha(&g);
        let cert = max_independent_set(&g).unwrap();
        prop_assert_eq!(cert.alpha, alpha);
        prop_assert_eq!(cert.witness.len() as u32, alpha);
        prop_assert!(g.is_independent(&cert.witness));
        let (all_alpha, all) = all_max_independent_sets(&g).unwrap();
        prop_assert_eq!(all_alpha, alpha);
        prop_assert_eq!(all, sets);
    }

    #[test]
    fn generated_instances_survive_a_parse_serialize_round_trip(
        class in prop_oneof![
            Just(GenClass::Cycle),
            Just(GenClass::PathForest),
            Just(GenClass::Cograph),
            Just(GenClass::Split),
            Just(GenClass::BipartiteSubcubicMaxIs),
            Just(GenClass::SubcubicMaxIs),
            Just(GenClass::Arbitrary),
        ],
        n in 3u32..=10,
        k in 1u32..=3,
        seed in any::<u64>(),
    ) {
        let spec = GenSpec { class, vertex_count: n, token_count: k, seed };
        let i = match generate_instance(&spec) {
            Ok(i) => i,
            Err(GenError::InfeasibleSpec(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let text = serialize_instance(&i);
        prop_assert_eq!(parse_instance(&text).unwrap(), i);
    }

    #[test]
    fn witness_text_survives_a_round_trip(
        moves in proptest::collection::vec((1u32..=99, 1u32..=99), 0..20),
    ) {
        let seq = ReconfSequence::new(
            moves.into_iter().map(|(from, to)| Move { from, to }).collect(),
        );
        let text = serialize_witness(Some(&seq));
        prop_assert_eq!(parse_witness(&text).unwrap(), Some(seq));
        prop_assert_eq!(parse_witness(&serialize_witness(None)).unwrap(), None);
    }

    #[test]
    fn artifacts_survive_a_parse_serialize_round_trip(
        kind in 0u8..3,
        n in 4u32..=8,
        seed in any::<u64>(),
        policy_seed in proptest::option::of(any::<u64>()),
    ) {
        let policy = match policy_seed {
            None => ReductionPolicy::Lexicographic,
            Some(s) => ReductionPolicy::Seeded(s),
        };
        let class = match kind {
            0 => GenClass::SubcubicMaxIs,
            1 => GenClass::Split,
            _ => GenClass::BipartiteSubcubicMaxIs,
        };
        let spec = GenSpec { class, vertex_count: n, token_count: 2, seed };
        let i = match generate_instance(&spec) {
            Ok(i) => i,
            Err(GenError::InfeasibleSpec(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let artifact = match kind {
            0 => reduce_planar(&i, &policy).unwrap().1,
            1 => {
                let partition = classify(i.graph()).split_partition.unwrap();
                reduce_split(&i, &partition, &policy).unwrap().1
            }
            _ => reduce_bipartite(&i, &policy).unwrap().1,
        };
        let text = serialize_artifact(&artifact);
        prop_assert_eq!(parse_artifact(&text).unwrap(), artifact);
    }

    #[test]
    fn raising_the_state_limit_never_changes_the_answer(i in arb_instance(6)) {
        let base = solve_exact(&i, SearchLimits::default(), false).unwrap();
        for cap in [SearchLimits::default().max_states * 2, u64::MAX] {
            let r = solve_exact(
                &i,
                SearchLimits { max_states: cap, max_moves: None },
                false,
            )
            .unwrap();
            prop_assert_eq!(r.answer, base.answer);
            prop_assert_eq!(r.stats.states_expanded, base.stats.states_expanded);
        }
    }

    #[test]
    fn exact_witnesses_replay_to_the_target(i in arb_instance(6)) {
        let r = solve_exact(&i, SearchLimits::default(), true).unwrap();
        if r.answer {
            let w = r.witness.expect("yes answers carry a witness when asked");
            let end = apply_and_validate(&i, &w).unwrap();
            prop_assert_eq!(&end, i.target());
        } else {
            prop_assert!(r.witness.is_none());
        }
    }

    #[test]
    fn auto_agrees_with_exact_everywhere(i in arb_instance(6)) {
        let auto = solve_auto(&i, SearchLimits::default(), false).unwrap();
        let exact = solve_exact(&i, SearchLimits::default(), false).unwrap();
        prop_assert_eq!(auto.answer, exact.answer);
    }
}
