//! Exact consensus solvers.
//!
//! The subset-DP ordering engine answers all three order-valued questions;
//! positional scoring handles the point-based rule. Every solver verifies
//! its own output with an independent score recomputation and reports a
//! breach as an internal error rather than returning a wrong answer.
//!
//! `brute_force_kemeny` and `brute_force_slater` rank every permutation
//! straight off the vote profile. They exist to cross-check the DP engine
//! and deliberately share no code with it.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::limits::Limits;
use crate::model::{
    distance_to_election, majority_graph, pairwise_tally, Candidate, Election, Ranking, WeakOrder,
};
use crate::ordering::{OrderingDp, PairCosts};

/// Optimal orders under a rule: the optimum value and either the full set
/// of optima or just the first one, per the caller's request.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsensusSet {
    pub optimum: u64,
    pub consensuses: Vec<Ranking>,
}

/// All strict rankings of the given candidates, in lexicographic order of
/// the sorted candidate sequence.
pub fn all_rankings(candidates: &[Candidate]) -> Vec<Ranking> {
    let mut sorted = candidates.to_vec();
    sorted.sort();
    let m = sorted.len();
    sorted
        .into_iter()
        .permutations(m)
        .map(|perm| Ranking::new(perm).expect("permutation of distinct candidates"))
        .collect()
}

/// Total swap distance from the order to the whole profile.
pub fn kemeny_score(election: &Election, order: &Ranking) -> Result<u64> {
    distance_to_election(order, election)
}

/// Orders minimizing total swap distance. With `all` set, every optimal
/// order in lexicographic order; otherwise just the lexicographically
/// first one. Full-set enumeration has its own, tighter candidate bound.
pub fn kemeny_consensus_set(
    election: &Election,
    limits: &Limits,
    all: bool,
) -> Result<ConsensusSet> {
    let m = election.candidate_count();
    if m > limits.max_score_candidates {
        return Err(Error::SizeLimit {
            what: "candidates",
            actual: m,
            limit: limits.max_score_candidates,
        });
    }
    if all && m > limits.max_enumeration_candidates {
        return Err(Error::SizeLimit {
            what: "candidates for full-set enumeration",
            actual: m,
            limit: limits.max_enumeration_candidates,
        });
    }
    // Placing i above j disagrees once with every voter who prefers j.
    let tally = pairwise_tally(election);
    let mut costs = PairCosts::new(m);
    for i in 0..m {
        for j in 0..m {
            if i != j {
                costs.add(i, j, tally.at(j, i));
            }
        }
    }
    let dp = OrderingDp::build(&costs)?;
    let optimum = dp.minimum();
    let orders = enumerate(&dp, limits, all)?;
    let consensuses: Vec<Ranking> = orders
        .iter()
        .map(|order| index_ranking(election.candidates(), order))
        .collect();
    for order in &consensuses {
        if kemeny_score(election, order)? != optimum {
            return Err(Error::Internal(
                "consensus order failed score recheck".to_string(),
            ));
        }
    }
    Ok(ConsensusSet {
        optimum,
        consensuses,
    })
}

fn enumerate(dp: &OrderingDp, limits: &Limits, all: bool) -> Result<Vec<Vec<usize>>> {
    if all {
        dp.all_minimum_orders(limits.max_consensus_count)
    } else {
        Ok(vec![dp.first_minimum_order()])
    }
}

fn index_ranking(candidates: &[Candidate], order: &[usize]) -> Ranking {
    Ranking::new(order.iter().map(|&i| candidates[i].clone()).collect())
        .expect("index permutation over distinct candidates")
}

/// Per-vertex weights for an agreement instance: entries default to 1,
/// must be positive, and may only name actual vertices.
fn vertex_weights(digraph: &Digraph, weights: &BTreeMap<String, u64>) -> Result<Vec<u64>> {
    for (name, &w) in weights {
        if digraph.index_of(name).is_none() {
            return Err(Error::invalid(
                "weights",
                format!("unknown vertex `{name}`"),
            ));
        }
        if w == 0 {
            return Err(Error::invalid(
                "weights",
                format!("zero weight for `{name}`"),
            ));
        }
    }
    Ok(digraph
        .vertices()
        .iter()
        .map(|v| weights.get(v).copied().unwrap_or(1))
        .collect())
}

fn pair_weight(wa: u64, wb: u64) -> Result<u64> {
    wa.checked_mul(wb)
        .ok_or_else(|| Error::invalid("weights", "weight product overflow"))
}

fn checked_sum(total: u64, add: u64) -> Result<u64> {
    total
        .checked_add(add)
        .ok_or_else(|| Error::invalid("weights", "weight sum overflow"))
}

/// Weighted count of arcs the order agrees with. The order must rank
/// exactly the digraph's vertices.
pub fn slater_agreement(
    digraph: &Digraph,
    weights: &BTreeMap<String, u64>,
    order: &Ranking,
) -> Result<u64> {
    let w = vertex_weights(digraph, weights)?;
    let n = digraph.vertex_count();
    if order.len() != n
        || order
            .candidates()
            .iter()
            .any(|c| digraph.index_of(c.name()).is_none())
    {
        return Err(Error::invalid(
            "order",
            "order must rank exactly the digraph's vertices",
        ));
    }
    let position: BTreeMap<&str, usize> = order
        .candidates()
        .iter()
        .enumerate()
        .map(|(i, c)| (c.name(), i))
        .collect();
    let mut total = 0u64;
    for (tail, head) in digraph.arcs() {
        if position[tail] < position[head] {
            let (ti, hi) = (
                digraph.index_of(tail).unwrap(),
                digraph.index_of(head).unwrap(),
            );
            total = checked_sum(total, pair_weight(w[ti], w[hi])?)?;
        }
    }
    Ok(total)
}

/// Weighted arc total: the agreement an order would earn by agreeing with
/// every arc at once.
pub fn slater_total_agreement(digraph: &Digraph, weights: &BTreeMap<String, u64>) -> Result<u64> {
    let w = vertex_weights(digraph, weights)?;
    let mut total = 0u64;
    for &(t, h) in digraph.arc_indices() {
        total = checked_sum(total, pair_weight(w[t], w[h])?)?;
    }
    Ok(total)
}

/// Orders maximizing weighted agreement with the digraph's arcs.
pub fn slater_consensus_set(
    digraph: &Digraph,
    weights: &BTreeMap<String, u64>,
    limits: &Limits,
    all: bool,
) -> Result<ConsensusSet> {
    let n = digraph.vertex_count();
    if all && n > limits.max_enumeration_candidates {
        return Err(Error::SizeLimit {
            what: "vertices for full-set enumeration",
            actual: n,
            limit: limits.max_enumeration_candidates,
        });
    }
    let (dp, total) = slater_dp(digraph, weights, limits)?;
    let optimum = total - dp.minimum();
    let orders = enumerate(&dp, limits, all)?;
    let vertices: Vec<Candidate> = digraph
        .vertices()
        .iter()
        .map(|v| Candidate::new(v).expect("vertex names are valid candidate tokens"))
        .collect();
    let consensuses: Vec<Ranking> = orders
        .iter()
        .map(|order| index_ranking(&vertices, order))
        .collect();
    for order in &consensuses {
        if slater_agreement(digraph, weights, order)? != optimum {
            return Err(Error::Internal(
                "agreement-optimal order failed score recheck".to_string(),
            ));
        }
    }
    Ok(ConsensusSet {
        optimum,
        consensuses,
    })
}

/// Vertices that top at least one agreement-optimal order. Runs one DP and
/// checks each vertex's best-with-first value; no enumeration.
pub fn slater_winners(
    digraph: &Digraph,
    weights: &BTreeMap<String, u64>,
    limits: &Limits,
) -> Result<Vec<Candidate>> {
    let (dp, _) = slater_dp(digraph, weights, limits)?;
    let best = dp.minimum();
    digraph
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(v, _)| dp.minimum_with_first(v) == best)
        .map(|(_, name)| Candidate::new(name))
        .collect()
}

fn slater_dp(
    digraph: &Digraph,
    weights: &BTreeMap<String, u64>,
    limits: &Limits,
) -> Result<(OrderingDp, u64)> {
    let n = digraph.vertex_count();
    if n > limits.max_score_candidates {
        return Err(Error::SizeLimit {
            what: "vertices",
            actual: n,
            limit: limits.max_score_candidates,
        });
    }
    let w = vertex_weights(digraph, weights)?;
    // Placing the head of an arc above its tail forfeits that arc's weight;
    // minimizing forfeited weight maximizes agreement.
    let mut costs = PairCosts::new(n);
    for &(t, h) in digraph.arc_indices() {
        costs.add(h, t, pair_weight(w[t], w[h])?);
    }
    let total = slater_total_agreement(digraph, weights)?;
    Ok((OrderingDp::build(&costs)?, total))
}

/// The majority digraph and the candidate weight map of an election, the
/// inputs the agreement solvers expect.
pub fn election_slater_input(election: &Election) -> (Digraph, BTreeMap<String, u64>) {
    let digraph = majority_graph(election);
    let weights = election
        .nondefault_weights()
        .iter()
        .map(|(c, &w)| (c.name().to_string(), w))
        .collect();
    (digraph, weights)
}

/// Positional scores: a candidate earns `m - 1 - position` points per
/// voter. Candidate weights play no part here.
pub fn borda_scores(election: &Election) -> Vec<(Candidate, u64)> {
    let m = election.candidate_count();
    let mut scores: BTreeMap<&Candidate, u64> =
        election.candidates().iter().map(|c| (c, 0)).collect();
    for group in election.vote_groups() {
        for (pos, c) in group.ranking.candidates().iter().enumerate() {
            *scores.get_mut(c).unwrap() += group.count * (m - 1 - pos) as u64;
        }
    }
    scores.into_iter().map(|(c, s)| (c.clone(), s)).collect()
}

/// Candidates grouped by score, highest tier first. Ties stay ties, so the
/// consensus is a weak order.
pub fn borda_consensus(election: &Election) -> WeakOrder {
    let mut by_score: BTreeMap<u64, Vec<Candidate>> = BTreeMap::new();
    for (c, s) in borda_scores(election) {
        by_score.entry(s).or_default().push(c);
    }
    let tiers: Vec<Vec<Candidate>> = by_score.into_values().rev().collect();
    WeakOrder::new(tiers).expect("scored candidates are distinct and tiers nonempty")
}

/// The top tier of the positional consensus.
pub fn borda_winners(election: &Election) -> Vec<Candidate> {
    borda_consensus(election).tiers()[0].clone()
}

fn oracle_guard(election: &Election, limits: &Limits) -> Result<()> {
    let m = election.candidate_count();
    if m > limits.max_oracle_candidates {
        return Err(Error::SizeLimit {
            what: "oracle candidates",
            actual: m,
            limit: limits.max_oracle_candidates,
        });
    }
    Ok(())
}

/// Factorial-time reference solver: scores every permutation against the
/// profile directly.
pub fn brute_force_kemeny(election: &Election, limits: &Limits) -> Result<ConsensusSet> {
    oracle_guard(election, limits)?;
    let mut optimum = u64::MAX;
    let mut consensuses = Vec::new();
    for order in all_rankings(election.candidates()) {
        let score = distance_to_election(&order, election)?;
        if score < optimum {
            optimum = score;
            consensuses.clear();
        }
        if score == optimum {
            consensuses.push(order);
        }
    }
    Ok(ConsensusSet {
        optimum,
        consensuses,
    })
}

/// Factorial-time reference solver for weighted agreement, computing
/// majority comparisons straight from the vote groups.
pub fn brute_force_slater(election: &Election, limits: &Limits) -> Result<ConsensusSet> {
    oracle_guard(election, limits)?;
    let m = election.candidate_count();
    let candidates = election.candidates();
    let mut prefer = vec![vec![0u64; m]; m];
    for group in election.vote_groups() {
        for i in 0..m {
            for j in 0..m {
                if i != j && group.ranking.prefers(&candidates[i], &candidates[j]) == Some(true) {
                    prefer[i][j] += group.count;
                }
            }
        }
    }
    let mut optimum = 0u64;
    let mut consensuses = Vec::new();
    for order in all_rankings(candidates) {
        let mut agreement = 0u64;
        for (pos_a, a) in order.candidates().iter().enumerate() {
            for b in &order.candidates()[pos_a + 1..] {
                let (i, j) = (election.index_of(a).unwrap(), election.index_of(b).unwrap());
                if prefer[i][j] > prefer[j][i] {
                    agreement = checked_sum(
                        agreement,
                        pair_weight(election.weight(a), election.weight(b))?,
                    )?;
                }
            }
        }
        if agreement > optimum {
            optimum = agreement;
            consensuses.clear();
        }
        if agreement == optimum {
            consensuses.push(order);
        }
    }
    Ok(ConsensusSet {
        optimum,
        consensuses,
    })
}
