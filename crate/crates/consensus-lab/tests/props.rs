//! Randomized invariants across parsing, scoring, and the solver pair.

use std::collections::BTreeSet;

use consensus_lab::formats::{
    parse_digraph, parse_election, parse_graph, serialize_digraph, serialize_election,
    serialize_graph,
};
use consensus_lab::recognition::{
    gnd_prime_solvable, gnd_solvable, is_kemeny_consensus, is_minimal_fas, is_minimal_vertex_cover,
    is_minimum_fas, is_minimum_vertex_cover,
};
use consensus_lab::reductions::election_from_digraph;
use consensus_lab::sampling::letter_candidates;
use consensus_lab::solvers::{
    borda_scores, brute_force_kemeny, brute_force_slater, election_slater_input,
    kemeny_consensus_set, kemeny_score, slater_consensus_set,
};
use consensus_lab::{
    kendall_tau, weighted_majority_graph, Candidate, Digraph, Election, Limits, Ranking,
    UndirectedGraph,
};
use proptest::prelude::*;

fn ranking(m: usize) -> impl Strategy<Value = Ranking> {
    Just((0..m).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(move |perm| {
            let names = letter_candidates(m);
            Ranking::new(perm.into_iter().map(|i| names[i].clone()).collect()).unwrap()
        })
}

fn votes(m: usize, max_groups: usize) -> impl Strategy<Value = Vec<(u64, Ranking)>> {
    proptest::collection::vec((1..=3u64, ranking(m)), 0..=max_groups)
}

fn election(max_m: usize, max_groups: usize) -> impl Strategy<Value = Election> {
    (2..=max_m).prop_flat_map(move |m| {
        votes(m, max_groups)
            .prop_map(move |v| Election::unweighted(letter_candidates(m), v).unwrap())
    })
}

fn election_with_probe(
    max_m: usize,
    max_groups: usize,
) -> impl Strategy<Value = (Election, Ranking)> {
    (2..=max_m).prop_flat_map(move |m| {
        (votes(m, max_groups), ranking(m)).prop_map(move |(v, probe)| {
            (
                Election::unweighted(letter_candidates(m), v).unwrap(),
                probe,
            )
        })
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = UndirectedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| {
            let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if mask[k] {
                        edges.push((names[i].clone(), names[j].clone()));
                    }
                    k += 1;
                }
            }
            UndirectedGraph::new(names, &edges).unwrap()
        })
    })
}

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0..3u8, n * (n - 1) / 2).prop_map(move |choices| {
            let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
            let mut arcs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    match choices[k] {
                        1 => arcs.push((names[i].clone(), names[j].clone())),
                        2 => arcs.push((names[j].clone(), names[i].clone())),
                        _ => {}
                    }
                    k += 1;
                }
            }
            Digraph::new(names, &arcs).unwrap()
        })
    })
}

fn graph_with_subset(max_n: usize) -> impl Strategy<Value = (UndirectedGraph, BTreeSet<String>)> {
    graph(max_n)
        .prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), proptest::collection::vec(any::<bool>(), n))
        })
        .prop_map(|(g, mask)| {
            let set = g
                .vertices()
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(v, _)| v.clone())
                .collect();
            (g, set)
        })
}

fn digraph_with_arc_subset(
    max_n: usize,
) -> impl Strategy<Value = (Digraph, BTreeSet<(String, String)>)> {
    digraph(max_n)
        .prop_flat_map(|g| {
            let arc_total = g.arc_count();
            (Just(g), proptest::collection::vec(any::<bool>(), arc_total))
        })
        .prop_map(|(g, mask)| {
            let arcs = g
                .arcs()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|((u, v), _)| (u.to_string(), v.to_string()))
                .collect();
            (g, arcs)
        })
}

fn as_set(rankings: &[Ranking]) -> BTreeSet<Ranking> {
    rankings.iter().cloned().collect()
}

proptest! {
    #[test]
    fn kendall_tau_is_a_metric(
        (x, y, z) in (2..=6usize).prop_flat_map(|m| (ranking(m), ranking(m), ranking(m)))
    ) {
        prop_assert_eq!(kendall_tau(&x, &x).unwrap(), 0);
        let dxy = kendall_tau(&x, &y).unwrap();
        prop_assert_eq!(dxy, kendall_tau(&y, &x).unwrap());
        prop_assert_eq!(dxy == 0, x == y);
        let dxz = kendall_tau(&x, &z).unwrap();
        let dyz = kendall_tau(&y, &z).unwrap();
        prop_assert!(dxz <= dxy + dyz);
    }

    #[test]
    fn reversal_complements_the_distance(
        (x, y) in (2..=6usize).prop_flat_map(|m| (ranking(m), ranking(m)))
    ) {
        let m = x.len() as u64;
        let pairs = m * (m - 1) / 2;
        prop_assert_eq!(
            kendall_tau(&x, &y.reversed()).unwrap(),
            pairs - kendall_tau(&x, &y).unwrap()
        );
    }

    #[test]
    fn election_text_round_trips(e in election(5, 4)) {
        let text = serialize_election(&e);
        let back = parse_election(&text).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(serialize_election(&back), text);
    }

    #[test]
    fn graph_text_round_trips(g in graph(6)) {
        prop_assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }

    #[test]
    fn digraph_text_round_trips(g in digraph(6)) {
        prop_assert_eq!(parse_digraph(&serialize_digraph(&g)).unwrap(), g);
    }

    #[test]
    fn subset_scan_matches_exhaustive_kemeny(e in election(5, 4)) {
        let limits = Limits::default();
        let fast = kemeny_consensus_set(&e, &limits, true).unwrap();
        let slow = brute_force_kemeny(&e, &limits).unwrap();
        prop_assert_eq!(fast.optimum, slow.optimum);
        prop_assert_eq!(as_set(&fast.consensuses), as_set(&slow.consensuses));
    }

    #[test]
    fn subset_scan_matches_exhaustive_slater(e in election(5, 4)) {
        let limits = Limits::default();
        let (dg, w) = election_slater_input(&e);
        let fast = slater_consensus_set(&dg, &w, &limits, true).unwrap();
        let slow = brute_force_slater(&e, &limits).unwrap();
        prop_assert_eq!(fast.optimum, slow.optimum);
        prop_assert_eq!(as_set(&fast.consensuses), as_set(&slow.consensuses));
    }

    #[test]
    fn recognition_agrees_with_enumeration((e, probe) in election_with_probe(4, 4)) {
        let limits = Limits::default();
        let optimum = kemeny_consensus_set(&e, &limits, false).unwrap().optimum;
        prop_assert_eq!(
            is_kemeny_consensus(&e, &probe, &limits).unwrap(),
            kemeny_score(&e, &probe).unwrap() == optimum
        );
    }

    #[test]
    fn reversing_every_ballot_reverses_the_kemeny_set(e in election(5, 4)) {
        let limits = Limits::default();
        let reversed = Election::unweighted(
            e.candidates().to_vec(),
            e.vote_groups().iter().map(|g| (g.count, g.ranking.reversed())),
        )
        .unwrap();
        let orig = kemeny_consensus_set(&e, &limits, true).unwrap();
        let rev = kemeny_consensus_set(&reversed, &limits, true).unwrap();
        prop_assert_eq!(orig.optimum, rev.optimum);
        let mapped: BTreeSet<Ranking> = orig.consensuses.iter().map(|r| r.reversed()).collect();
        prop_assert_eq!(mapped, as_set(&rev.consensuses));
    }

    #[test]
    fn adding_a_consensus_ballot_keeps_it_optimal(e in election(5, 4)) {
        let limits = Limits::default();
        let witness = kemeny_consensus_set(&e, &limits, false).unwrap().consensuses[0].clone();
        let padded = e.with_votes_added([(1, witness.clone())]).unwrap();
        prop_assert!(is_kemeny_consensus(&padded, &witness, &limits).unwrap());
    }

    #[test]
    fn borda_points_are_conserved(e in election(5, 4)) {
        let m = e.candidate_count() as u64;
        let total: u64 = borda_scores(&e).iter().map(|(_, s)| s).sum();
        prop_assert_eq!(total, e.voter_count() * m * (m - 1) / 2);
    }

    #[test]
    fn two_ballots_per_arc_give_margin_two_everywhere(g in digraph(5)) {
        let e = election_from_digraph(&g).unwrap();
        let wmg = weighted_majority_graph(&e);
        prop_assert!(wmg.has_uniform_weights());
        prop_assert_eq!(wmg.arcs().len(), g.arc_count());
        for (u, v) in g.arcs() {
            let key = (Candidate::new(u).unwrap(), Candidate::new(v).unwrap());
            prop_assert_eq!(wmg.arcs().get(&key), Some(&2));
        }
    }

    #[test]
    fn uniform_margins_make_the_two_rules_agree(g in digraph(5)) {
        let limits = Limits::default();
        let e = election_from_digraph(&g).unwrap();
        let kem = kemeny_consensus_set(&e, &limits, true).unwrap();
        let (dg, w) = election_slater_input(&e);
        let sla = slater_consensus_set(&dg, &w, &limits, true).unwrap();
        prop_assert_eq!(as_set(&kem.consensuses), as_set(&sla.consensuses));
    }

    #[test]
    fn clique_deletion_matches_independent_deletion_in_the_complement(
        g in graph(5),
        ell in 1..=4u64,
        k in 0..=3u64,
    ) {
        let limits = Limits::default();
        prop_assert_eq!(
            gnd_solvable(&g, ell, k, &limits).unwrap(),
            gnd_prime_solvable(&g.complement(), ell, k, &limits).unwrap()
        );
    }

    #[test]
    fn minimum_covers_are_minimal((g, set) in graph_with_subset(5)) {
        let limits = Limits::default();
        if is_minimum_vertex_cover(&g, &set, &limits).unwrap() {
            prop_assert!(is_minimal_vertex_cover(&g, &set).unwrap());
        }
    }

    #[test]
    fn minimum_feedback_sets_are_minimal((g, arcs) in digraph_with_arc_subset(5)) {
        let limits = Limits::default();
        if is_minimum_fas(&g, &arcs, &limits).unwrap() {
            prop_assert!(is_minimal_fas(&g, &arcs).unwrap());
        }
    }
}
