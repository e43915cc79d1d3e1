//! Manipulation and control: can strategic voters, or an authority with
//! limited deletion power, make a chosen outcome the consensus?
//!
//! The Kemeny manipulation solver never searches vote assignments. If any
//! joint manipulator ballot makes the target a consensus, then so does
//! everyone voting the target itself (replacing a ballot by the target
//! cannot raise the target's distance more than it raises any rival's),
//! so recognition on that one election decides the problem;
//! `verify_manipulator_replacement` rechecks the implication on demand.
//! Borda and Slater manipulation get no such shortcut and search all
//! joint ballots.
//!
//! Searches yield the first witness in canonical order: deletion sets by
//! size then lexicographic, vote assignments in lexicographic order. Vote
//! assignments are reported as grouped multisets; only the multiset ever
//! matters to a score.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::{Candidate, Election, Ranking, WeakOrder};
use crate::recognition::{is_kemeny_consensus, is_slater_consensus};
use crate::solvers::{all_rankings, borda_consensus, election_slater_input, slater_winners};

/// A joint vote assignment, grouped: `(count, ballot)` pairs in ballot
/// order. Empty when there is nobody to assign.
pub type VoteAssignment = Vec<(u64, Ranking)>;

fn group_ballots(ballots: Vec<Ranking>) -> VoteAssignment {
    let mut grouped: BTreeMap<Ranking, u64> = BTreeMap::new();
    for b in ballots {
        *grouped.entry(b).or_insert(0) += 1;
    }
    grouped.into_iter().map(|(r, c)| (c, r)).collect()
}

fn manipulation_guard(base: &Election, manipulators: u64, limits: &Limits) -> Result<usize> {
    let m = base.candidate_count();
    if m > limits.max_manipulation_candidates {
        return Err(Error::SizeLimit {
            what: "manipulation candidates",
            actual: m,
            limit: limits.max_manipulation_candidates,
        });
    }
    if manipulators > limits.max_manipulators {
        return Err(Error::SizeLimit {
            what: "manipulators",
            actual: usize::try_from(manipulators).unwrap_or(usize::MAX),
            limit: usize::try_from(limits.max_manipulators).unwrap_or(usize::MAX),
        });
    }
    Ok(manipulators as usize)
}

/// Can `manipulators` extra voters make `target` a Kemeny consensus?
/// Decided by recognition after all of them vote the target; no other
/// ballot assignment is ever tried, and none needs to be.
pub fn kemeny_manipulation_to_consensus(
    base: &Election,
    manipulators: u64,
    target: &Ranking,
    limits: &Limits,
) -> Result<Option<VoteAssignment>> {
    if !base.has_same_candidates(target) {
        return Err(Error::CandidateMismatch(
            "target must rank exactly the election's candidates".to_string(),
        ));
    }
    let assignment: VoteAssignment = if manipulators == 0 {
        Vec::new()
    } else {
        vec![(manipulators, target.clone())]
    };
    let manipulated = base.with_votes_added(assignment.iter().cloned())?;
    if is_kemeny_consensus(&manipulated, target, limits)? {
        Ok(Some(assignment))
    } else {
        Ok(None)
    }
}

/// Checks, by exact solving on both sides, that replacing one voter's
/// ballot `mu` with `x` itself preserves `x` being a consensus. This is
/// the step that justifies the manipulation shortcut; it holds for every
/// input, and this function exists so tests can keep saying so.
pub fn verify_manipulator_replacement(
    base: &Election,
    mu: &Ranking,
    x: &Ranking,
    limits: &Limits,
) -> Result<bool> {
    let with_mu = base.with_votes_added([(1, mu.clone())])?;
    let with_x = base.with_votes_added([(1, x.clone())])?;
    let premise = is_kemeny_consensus(&with_mu, x, limits)?;
    let conclusion = is_kemeny_consensus(&with_x, x, limits)?;
    Ok(!premise || conclusion)
}

/// Joint ballots for `count` voters, one multiset per candidate ballot
/// combination, in lexicographic order. Scores depend only on the
/// multiset, and the lexicographically least witness tuple is always
/// nondecreasing, so enumerating multisets finds the same first witness
/// as enumerating tuples.
fn joint_ballots(candidates: &[Candidate], count: usize) -> impl Iterator<Item = Vec<Ranking>> {
    all_rankings(candidates)
        .into_iter()
        .combinations_with_replacement(count)
}

/// Can `manipulators` extra voters make `target` the Borda consensus?
/// Voting the target is not always the right move here, so every joint
/// ballot is tried.
pub fn borda_manipulation_to_consensus(
    base: &Election,
    manipulators: u64,
    target: &WeakOrder,
    limits: &Limits,
) -> Result<Option<VoteAssignment>> {
    if target.candidate_set() != base.candidate_set() {
        return Err(Error::CandidateMismatch(
            "target must order exactly the election's candidates".to_string(),
        ));
    }
    let count = manipulation_guard(base, manipulators, limits)?;
    if count == 0 {
        return Ok((borda_consensus(base) == *target).then(Vec::new));
    }
    for ballots in joint_ballots(base.candidates(), count) {
        let manipulated = base.with_votes_added(ballots.iter().map(|r| (1, r.clone())))?;
        if borda_consensus(&manipulated) == *target {
            return Ok(Some(group_ballots(ballots)));
        }
    }
    Ok(None)
}

/// Can `manipulators` extra voters make `preferred` a Slater winner of
/// the election's majority digraph? Exhaustive over joint ballots.
pub fn slater_manipulation_to_winner(
    base: &Election,
    manipulators: u64,
    preferred: &Candidate,
    limits: &Limits,
) -> Result<Option<VoteAssignment>> {
    if base.index_of(preferred).is_none() {
        return Err(Error::CandidateMismatch(format!(
            "preferred candidate `{preferred}` is not in the election"
        )));
    }
    let count = manipulation_guard(base, manipulators, limits)?;
    let wins = |e: &Election| -> Result<bool> {
        let (digraph, weights) = election_slater_input(e);
        Ok(slater_winners(&digraph, &weights, limits)?.contains(preferred))
    };
    if count == 0 {
        return Ok(wins(base)?.then(Vec::new));
    }
    for ballots in joint_ballots(base.candidates(), count) {
        let manipulated = base.with_votes_added(ballots.iter().map(|r| (1, r.clone())))?;
        if wins(&manipulated)? {
            return Ok(Some(group_ballots(ballots)));
        }
    }
    Ok(None)
}

/// Candidate deletion sets of size at most `budget`, by size then
/// lexicographic.
fn deletion_choices(candidates: &[Candidate], budget: usize) -> Vec<BTreeSet<Candidate>> {
    (0..=budget.min(candidates.len()))
        .flat_map(|size| {
            candidates
                .iter()
                .cloned()
                .combinations(size)
                .map(|d| d.into_iter().collect::<BTreeSet<_>>())
        })
        .collect()
}

fn cdc_search(
    election: &Election,
    k: u64,
    target: &Ranking,
    recognize: impl Fn(&Election, &Ranking) -> Result<bool>,
) -> Result<Option<BTreeSet<Candidate>>> {
    if !election.has_same_candidates(target) {
        return Err(Error::CandidateMismatch(
            "target must rank exactly the election's candidates".to_string(),
        ));
    }
    let budget = usize::try_from(k).unwrap_or(usize::MAX);
    for deleted in deletion_choices(election.candidates(), budget) {
        let keep: BTreeSet<Candidate> = election
            .candidate_set()
            .difference(&deleted)
            .cloned()
            .collect();
        // Deleting everyone leaves the empty election, whose one (empty)
        // order is trivially the consensus.
        if keep.is_empty() {
            return Ok(Some(deleted));
        }
        let restricted = election.restricted_to(&keep)?;
        if recognize(&restricted, &target.restricted_to(&keep))? {
            return Ok(Some(deleted));
        }
    }
    Ok(None)
}

/// Can deleting at most `k` candidates make the target, restricted to the
/// survivors, a Kemeny consensus of the restricted election? Returns the
/// first working deletion set.
pub fn kemeny_cdc_to_consensus(
    election: &Election,
    k: u64,
    target: &Ranking,
    limits: &Limits,
) -> Result<Option<BTreeSet<Candidate>>> {
    cdc_search(election, k, target, |e, x| {
        is_kemeny_consensus(e, x, limits)
    })
}

/// Candidate deletion against the Slater consensus of the restricted
/// election's majority digraph.
pub fn slater_cdc_to_consensus(
    election: &Election,
    k: u64,
    target: &Ranking,
    limits: &Limits,
) -> Result<Option<BTreeSet<Candidate>>> {
    cdc_search(election, k, target, |e, x| {
        let (digraph, weights) = election_slater_input(e);
        is_slater_consensus(&digraph, &weights, x, limits)
    })
}

/// All ways to pick `total` units from groups with the given capacities:
/// every vector `d` with `0 <= d[i] <= caps[i]` summing to `total`, in
/// lexicographic order.
fn count_vectors(caps: &[u64], total: u64) -> Vec<Vec<u64>> {
    fn go(caps: &[u64], total: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let Some((&cap, rest)) = caps.split_first() else {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        let rest_cap: u64 = rest.iter().sum();
        for d in total.saturating_sub(rest_cap)..=cap.min(total) {
            prefix.push(d);
            go(rest, total - d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(caps, total, &mut Vec::new(), &mut out);
    out
}

fn picked_votes(groups: &[(u64, Ranking)], vector: &[u64]) -> VoteAssignment {
    groups
        .iter()
        .zip(vector)
        .filter(|(_, &d)| d > 0)
        .map(|((_, r), &d)| (d, r.clone()))
        .collect()
}

/// Can deleting at most `k` voters make the target a Kemeny consensus?
/// Returns the first working deletion, as a grouped vote multiset.
pub fn kemeny_cdv_to_consensus(
    election: &Election,
    k: u64,
    target: &Ranking,
    limits: &Limits,
) -> Result<Option<VoteAssignment>> {
    if !election.has_same_candidates(target) {
        return Err(Error::CandidateMismatch(
            "target must rank exactly the election's candidates".to_string(),
        ));
    }
    let groups: Vec<(u64, Ranking)> = election
        .vote_groups()
        .iter()
        .map(|g| (g.count, g.ranking.clone()))
        .collect();
    let caps: Vec<u64> = groups.iter().map(|(c, _)| *c).collect();
    for total in 0..=k.min(election.voter_count()) {
        for vector in count_vectors(&caps, total) {
            let removed = picked_votes(&groups, &vector);
            let reduced = election.with_votes_removed(&removed)?;
            if is_kemeny_consensus(&reduced, target, limits)? {
                return Ok(Some(removed));
            }
        }
    }
    Ok(None)
}

/// Can registering at most `k` voters from the pool make the target a
/// Kemeny consensus? Pool votes carry multiplicity; adding a voter
/// consumes one unit. Returns the first working addition.
pub fn kemeny_cav_to_consensus(
    election: &Election,
    k: u64,
    pool: &[(u64, Ranking)],
    target: &Ranking,
    limits: &Limits,
) -> Result<Option<VoteAssignment>> {
    if !election.has_same_candidates(target) {
        return Err(Error::CandidateMismatch(
            "target must rank exactly the election's candidates".to_string(),
        ));
    }
    let mut grouped: BTreeMap<Ranking, u64> = BTreeMap::new();
    for (count, ranking) in pool {
        if !election.has_same_candidates(ranking) {
            return Err(Error::CandidateMismatch(format!(
                "pool vote `{ranking}` is not over the election's candidates"
            )));
        }
        *grouped.entry(ranking.clone()).or_insert(0) += count;
    }
    let groups: Vec<(u64, Ranking)> = grouped.into_iter().map(|(r, c)| (c, r)).collect();
    let caps: Vec<u64> = groups.iter().map(|(c, _)| *c).collect();
    let pool_total: u64 = caps.iter().sum();
    for total in 0..=k.min(pool_total) {
        for vector in count_vectors(&caps, total) {
            let added = picked_votes(&groups, &vector);
            let extended = election.with_votes_added(added.iter().cloned())?;
            if is_kemeny_consensus(&extended, target, limits)? {
                return Ok(Some(added));
            }
        }
    }
    Ok(None)
}
