//! Seeded instance generators for the verification harnesses.
//!
//! Every generator draws from a caller-supplied RNG; `trial_rng` derives
//! an independent, reproducible stream per trial from one master seed, so
//! trial i sees the same instance no matter how many trials run or in
//! what order.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Digraph, UndirectedGraph};
use crate::logic::{CnfFormula, Qsat2Instance};
use crate::model::{Candidate, Election, Ranking};

pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

/// The first `m` single-letter candidate names.
pub fn letter_candidates(m: usize) -> Vec<Candidate> {
    assert!(m <= 26, "letter names run out past 26 candidates");
    (0..m)
        .map(|i| Candidate::new(((b'a' + i as u8) as char).to_string()).expect("letters are valid"))
        .collect()
}

pub fn random_ranking<R: Rng>(rng: &mut R, candidates: &[Candidate]) -> Ranking {
    let mut order = candidates.to_vec();
    order.shuffle(rng);
    Ranking::new(order).expect("shuffled candidates form a ranking")
}

/// An unweighted election with 2 to `max_candidates` candidates and 1 to
/// `max_voters` uniformly random ballots.
pub fn random_election<R: Rng>(rng: &mut R, max_candidates: usize, max_voters: u64) -> Election {
    let m = rng.random_range(2..=max_candidates.max(2));
    let candidates = letter_candidates(m);
    let voters = rng.random_range(1..=max_voters.max(1));
    let votes: Vec<(u64, Ranking)> = (0..voters)
        .map(|_| (1, random_ranking(rng, &candidates)))
        .collect();
    Election::unweighted(candidates, votes).expect("generated ballots are permutations")
}

/// An election in which every ballot appears an even number of times, so
/// every pairwise margin is even.
pub fn random_doubled_election<R: Rng>(
    rng: &mut R,
    max_candidates: usize,
    max_voter_pairs: u64,
) -> Election {
    let single = random_election(rng, max_candidates, max_voter_pairs);
    let doubled: Vec<(u64, Ranking)> = single
        .vote_groups()
        .iter()
        .map(|g| (2 * g.count, g.ranking.clone()))
        .collect();
    Election::unweighted(single.candidates().to_vec(), doubled).expect("doubling preserves ballots")
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// A digraph on 1 to `max_vertices` vertices; each vertex pair carries an
/// arc one way, the other way, or not at all, with equal probability.
pub fn random_digraph<R: Rng>(rng: &mut R, max_vertices: usize) -> Digraph {
    let n = rng.random_range(1..=max_vertices.max(1));
    let names = numbered("v", n);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            match rng.random_range(0..3) {
                0 => arcs.push((names[i].clone(), names[j].clone())),
                1 => arcs.push((names[j].clone(), names[i].clone())),
                _ => {}
            }
        }
    }
    Digraph::new(names, &arcs).expect("generated arcs are loop-free and antisymmetric")
}

/// A graph on 1 to `max_vertices` vertices with each edge present with
/// probability 1/2.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> UndirectedGraph {
    let n = rng.random_range(1..=max_vertices.max(1));
    let names = numbered("v", n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(0.5) {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    UndirectedGraph::new(names, &edges).expect("generated edges are simple")
}

/// A formula with 1 to `max_clauses` clauses of up to three literals,
/// drawing variables from `min_var..=num_vars`.
pub fn random_cnf3<R: Rng>(
    rng: &mut R,
    min_var: u32,
    num_vars: u32,
    max_clauses: usize,
) -> CnfFormula {
    assert!(min_var >= 1 && min_var <= num_vars);
    let clause_count = rng.random_range(1..=max_clauses.max(1));
    let clauses: Vec<Vec<i32>> = (0..clause_count)
        .map(|_| {
            (0..rng.random_range(1..=3usize))
                .map(|_| {
                    let var = rng.random_range(min_var..=num_vars) as i32;
                    if rng.random_bool(0.5) {
                        var
                    } else {
                        -var
                    }
                })
                .collect()
        })
        .collect();
    CnfFormula::new(num_vars as usize, clauses).expect("generated literals are in range")
}

/// A quantified instance with `n` existential and `n` inner variables and
/// up to `max_clauses` clauses over all of them.
pub fn random_qsat2<R: Rng>(rng: &mut R, n: u32, max_clauses: usize) -> Qsat2Instance {
    assert!(n >= 1);
    let formula = random_cnf3(rng, 1, 2 * n, max_clauses);
    Qsat2Instance::new(formula, (1..=n).collect(), (n + 1..=2 * n).collect())
        .expect("blocks are disjoint and exhaustive")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_streams_are_reproducible_and_distinct() {
        let mut a = trial_rng(7, 0);
        let mut b = trial_rng(7, 0);
        let mut c = trial_rng(7, 1);
        let xs: Vec<u64> = (0..4).map(|_| a.random()).collect();
        let ys: Vec<u64> = (0..4).map(|_| b.random()).collect();
        let zs: Vec<u64> = (0..4).map(|_| c.random()).collect();
        assert_eq!(xs, ys);
        assert_ne!(xs, zs);
    }

    #[test]
    fn generated_instances_respect_their_bounds() {
        let mut rng = trial_rng(11, 3);
        for _ in 0..50 {
            let e = random_election(&mut rng, 5, 7);
            assert!((2..=5).contains(&e.candidate_count()));
            assert!((1..=7).contains(&e.voter_count()));

            let d = random_digraph(&mut rng, 5);
            assert!((1..=5).contains(&d.vertex_count()));

            let g = random_graph(&mut rng, 4);
            assert!((1..=4).contains(&g.vertex_count()));

            let f = random_cnf3(&mut rng, 2, 4, 3);
            assert!(!f.used_vars().contains(&1));

            let q = random_qsat2(&mut rng, 2, 2);
            assert_eq!(q.outer_vars(), &[1, 2]);
            assert_eq!(q.inner_vars(), &[3, 4]);
        }
    }

    #[test]
    fn doubled_elections_have_even_group_counts() {
        let mut rng = trial_rng(13, 0);
        for _ in 0..20 {
            let e = random_doubled_election(&mut rng, 4, 3);
            assert!(e.vote_groups().iter().all(|g| g.count % 2 == 0));
        }
    }
}
