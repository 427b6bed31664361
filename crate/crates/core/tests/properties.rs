//! Property tests for the structural invariants.

use graph_containers::constructions::{
    bnk_graph, construct_ft, construction_78, extend_to_maximal, free_edges, good_triples, is_maximal_independent,
    is_skew, SetPairFamily,
};
use graph_containers::containers::{fingerprint_bound_holds, replay, run_kw, Schedule};
use graph_containers::graphs::{build_graph, AuxGraph, GraphKind};
use graph_containers::katona::{sample_lattice_stream, IntersectionOracle, Probability};
use graph_containers::lattice::{
    binomial_u64, build_scd, hamming_distance, sample_permutation, Family, SetMask,
};
use graph_containers::oracles::{count_independent_sets_dense, count_independent_sets_scan, DenseGraph, EnumBudget};
use graph_containers::supersat::count_edges_in_induced;
use proptest::prelude::*;

fn mask(n: u32) -> impl Strategy<Value = SetMask> {
    (0..1u64 << n).prop_map(SetMask)
}

fn graph_kind() -> impl Strategy<Value = (u32, GraphKind)> {
    prop_oneof![
        (1..=5u32).prop_map(|n| (n, GraphKind::Comparability)),
        (2..=5u32).prop_map(|n| (n, GraphKind::Tilt { p: 1, q: 2 })),
        (3..=5u32, 1..=2u32).prop_map(|(n, t)| (n, GraphKind::Hamming { t })),
        (2..=5u32, 1..=2u32).prop_map(|(n, t)| (n, GraphKind::Intersection { t })),
        (4..=6u32).prop_map(|n| (n, GraphKind::Transport { k: 2, t: 1 })),
        (1..=5u32, any::<u64>()).prop_map(|(n, r)| (n, GraphKind::MonoDiff { red: SetMask(r & ((1 << n) - 1)) })),
        (2..=6u32, 0..=4u32).prop_map(|(n, k)| (n, GraphKind::Bnk { k: k.min(n - 1) })),
    ]
}

/// An independent set grown greedily in a shuffled vertex order.
fn random_independent(g: &AuxGraph, seed: u64, keep: u8) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    let mut state = seed | 1;
    for i in (1..order.len()).rev() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        order.swap(i, (state % (i as u64 + 1)) as usize);
    }
    let mut chosen: Vec<usize> = Vec::new();
    for v in order {
        if chosen.len() as u8 >= keep {
            break;
        }
        if chosen.iter().all(|&w| !g.adjacent(v, w)) {
            chosen.push(v);
        }
    }
    chosen.sort_unstable();
    chosen
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hamming_is_a_metric(a in mask(10), b in mask(10), c in mask(10)) {
        prop_assert_eq!(hamming_distance(a, b), hamming_distance(b, a));
        prop_assert_eq!(hamming_distance(a, a), 0);
        prop_assert_eq!(hamming_distance(a, b) == 0, a == b);
        prop_assert!(hamming_distance(a, c) <= hamming_distance(a, b) + hamming_distance(b, c));
    }

    #[test]
    fn scd_valid_and_permutation_invariant(n in 0..=12u32, seed in any::<u64>()) {
        let scd = build_scd(n).unwrap();
        prop_assert!(scd.validate().is_ok());
        prop_assert_eq!(scd.chains().len() as u64, binomial_u64(n as u64, (n / 2) as u64).unwrap());
        let moved = scd.permuted(&sample_permutation(n, seed)).unwrap();
        prop_assert!(moved.validate().is_ok());
    }

    #[test]
    fn adjacency_is_symmetric_and_irreflexive((n, kind) in graph_kind(), i in any::<usize>(), j in any::<usize>()) {
        let g = build_graph(n, kind).unwrap();
        let (i, j) = (i % g.order(), j % g.order());
        prop_assert_eq!(g.adjacent(i, j), g.adjacent(j, i));
        prop_assert!(!g.adjacent(i, i));
        prop_assert_eq!(g.neighbors(i).len(), g.degree(i));
        prop_assert!(g.neighbors(i).iter().all(|&w| g.adjacent(i, w)));
    }

    #[test]
    fn containers_are_sound(
        (n, kind) in graph_kind(),
        seed in any::<u64>(),
        keep in 0..12u8,
        first in 1..8u64,
        second in 1..4u64,
        switch in 0..40usize,
    ) {
        let g = build_graph(n, kind).unwrap();
        let schedule = if first > second {
            Schedule::two_stage(first, switch, second).unwrap()
        } else {
            Schedule::single(second).unwrap()
        };
        let set = random_independent(&g, seed, keep);
        let run = run_kw(&g, &set, &schedule).unwrap();
        prop_assert!(set.iter().all(|v| run.container.binary_search(v).is_ok()));
        prop_assert!(run.fingerprint.iter().all(|v| set.binary_search(v).is_ok()));
        prop_assert_eq!(replay(&g, &run.fingerprint, &schedule).unwrap(), run.container.clone());
        prop_assert!(fingerprint_bound_holds(g.order(), &schedule, run.fingerprint.len()));
    }

    #[test]
    fn equal_fingerprints_give_equal_containers(
        (n, kind) in graph_kind(),
        s1 in any::<u64>(),
        s2 in any::<u64>(),
        delta in 1..5u64,
    ) {
        let g = build_graph(n, kind).unwrap();
        let schedule = Schedule::single(delta).unwrap();
        let a = run_kw(&g, &random_independent(&g, s1, 255), &schedule).unwrap();
        let b = run_kw(&g, &random_independent(&g, s2, 255), &schedule).unwrap();
        if a.fingerprint == b.fingerprint {
            prop_assert_eq!(a.container, b.container);
        }
    }

    #[test]
    fn counting_oracles_agree(order in 1..14usize, edges in prop::collection::vec((0..14usize, 0..14usize), 0..30)) {
        let pairs: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| (a % order, b % order))
            .filter(|(a, b)| a != b)
            .collect();
        let g = DenseGraph::from_edges(order, &pairs);
        let fast = count_independent_sets_dense(&g, &EnumBudget::default()).unwrap();
        let scan = count_independent_sets_scan(&g).unwrap();
        prop_assert_eq!(fast, scan.into());
    }

    #[test]
    fn family_text_round_trip(n in 0..=8u32, bits in any::<u64>()) {
        let members: Vec<SetMask> = (0..1u64 << n).filter(|i| bits >> (i % 64) & 1 == 1).map(SetMask).collect();
        let f = Family::new(n, members).unwrap();
        prop_assert_eq!(Family::parse_text(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn random_families_meet_the_comparable_pair_bound(n in 2..=6u32, seed in any::<u64>(), x in 1..8u64) {
        let mid = binomial_u64(n as u64, (n / 2) as u64).unwrap();
        let size = (mid + x).min(1 << n) as usize;
        let x = size as u64 - mid;
        let g = build_graph(n, GraphKind::Comparability).unwrap();
        let picked: Vec<SetMask> = {
            let mut all: Vec<u64> = (0..1u64 << n).collect();
            let mut state = seed | 1;
            for i in (1..all.len()).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                all.swap(i, (state >> 33) as usize % (i + 1));
            }
            all.into_iter().take(size).map(SetMask).collect()
        };
        let edges = count_edges_in_induced(&g, &Family::new(n, picked).unwrap()).unwrap();
        prop_assert!(edges >= ((n / 2 + 1) as u64 * x).into());
    }

    #[test]
    fn sampling_is_reproducible(n in 1..=12u32, num in 0..=8u64, seed in any::<u64>(), stream in 0..4u64) {
        let p = Probability::new(num, 8).unwrap();
        let a = sample_lattice_stream(n, p, seed, stream).unwrap();
        let b = sample_lattice_stream(n, p, seed, stream).unwrap();
        prop_assert_eq!(a.members, b.members);
    }

    #[test]
    fn intersection_oracle_matches_pairwise(n in 1..=8u32, t in 1..=3u32, bits in prop::collection::vec(any::<u64>(), 4)) {
        let members: Vec<SetMask> = (0..1u64 << n)
            .filter(|&i| bits[(i / 64) as usize % 4] >> (i % 64) & 1 == 1 && (i * 7 + 3) % 5 < 2)
            .map(SetMask)
            .collect();
        let f = Family::new(n, members).unwrap();
        let oracle = IntersectionOracle::new(&f, t).unwrap();
        for a in (0..1u64 << n).map(SetMask) {
            let direct = f.iter().any(|b| b != a && a.intersection(b).len() < t);
            prop_assert_eq!(oracle.conflicts(a), direct);
        }
    }

    #[test]
    fn ft_sets_are_independent(pick in any::<usize>(), bits in any::<u64>(), nk in prop::sample::select(vec![(5u32, 2u32), (6, 2), (6, 3), (7, 3)])) {
        let (n, k) = nk;
        let triples = good_triples(n, k).unwrap();
        let t = triples[pick % triples.len()];
        let free = free_edges(&t, n, k).len();
        let choices: Vec<bool> = (0..free).map(|i| bits >> (i % 64) & 1 == 1).collect();
        let f = construct_ft(&t, n, k, &choices).unwrap();
        let g = bnk_graph(n, k).unwrap();
        let idx = g.indices_of(&f).unwrap();
        prop_assert!(g.is_independent(&idx));
        prop_assert!(is_maximal_independent(&g, &extend_to_maximal(&g, &idx).unwrap()));
    }

    #[test]
    fn construction_78_families_are_skew(index in any::<u64>()) {
        let c = construction_78(6).unwrap();
        let total: u64 = c.count().try_into().unwrap();
        let f = c.family_at(index % total);
        prop_assert!(is_skew(&f, 3, 3));
        prop_assert_eq!(SetPairFamily::parse_text(&f.to_text()).unwrap(), f);
    }
}
