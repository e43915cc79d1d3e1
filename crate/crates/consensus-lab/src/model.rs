//! Elections, rankings, and the pairwise machinery derived from them.
//!
//! Everything here is exact integer arithmetic over explicit orders. The
//! types canonicalize on construction (sorted candidates, aggregated and
//! sorted vote groups), so structural equality is semantic equality and
//! serialization is deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Digraph;

/// `[A-Za-z0-9_]+` check shared by candidate and vertex names.
pub(crate) fn valid_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// A candidate name: a nonempty token over `[A-Za-z0-9_]`.
///
/// Ordering is bytewise lexicographic; it fixes every canonical order in the
/// crate (candidate lists, consensus sets, witness enumeration).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Candidate(String);

impl Candidate {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if valid_token(&name) {
            Ok(Candidate(name))
        } else {
            Err(Error::invalid(
                "candidate name",
                format!("`{name}` is not a nonempty [A-Za-z0-9_] token"),
            ))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Candidate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Candidate::new(s.trim())
    }
}

impl Serialize for Candidate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

/// A strict total order over a candidate set, best first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ranking(Vec<Candidate>);

impl Ranking {
    pub fn new(order: Vec<Candidate>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &order {
            if !seen.insert(c.clone()) {
                return Err(Error::invalid(
                    "ranking",
                    format!("candidate `{c}` appears twice"),
                ));
            }
        }
        Ok(Ranking(order))
    }

    /// The order over the empty candidate set.
    pub fn empty() -> Self {
        Ranking(Vec::new())
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, c: &Candidate) -> Option<usize> {
        self.0.iter().position(|x| x == c)
    }

    /// True iff `a` is ranked above `b`; `None` when either is absent.
    pub fn prefers(&self, a: &Candidate, b: &Candidate) -> Option<bool> {
        Some(self.position(a)? < self.position(b)?)
    }

    pub fn reversed(&self) -> Ranking {
        Ranking(self.0.iter().rev().cloned().collect())
    }

    /// The induced order on `keep`, preserving relative positions.
    pub fn restricted_to(&self, keep: &BTreeSet<Candidate>) -> Ranking {
        Ranking(
            self.0
                .iter()
                .filter(|c| keep.contains(c))
                .cloned()
                .collect(),
        )
    }

    pub fn candidate_set(&self) -> BTreeSet<Candidate> {
        self.0.iter().cloned().collect()
    }

    pub fn same_candidates(&self, other: &Ranking) -> bool {
        self.len() == other.len() && self.candidate_set() == other.candidate_set()
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.0 {
            if !first {
                f.write_str(">")?;
            }
            first = false;
            f.write_str(c.name())?;
        }
        Ok(())
    }
}

impl FromStr for Ranking {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let order = s
            .split('>')
            .map(|t| Candidate::new(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        Ranking::new(order)
    }
}

impl Serialize for Ranking {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A ranking with ties: an ordered list of tiers, each tier an unordered
/// nonempty set. Borda consensuses live here.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeakOrder(Vec<Vec<Candidate>>);

impl WeakOrder {
    /// Tiers listed best first; members of a tier are sorted on construction.
    pub fn new(tiers: Vec<Vec<Candidate>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut canonical = Vec::with_capacity(tiers.len());
        for mut tier in tiers {
            if tier.is_empty() {
                return Err(Error::invalid("weak order", "empty tier"));
            }
            tier.sort();
            for c in &tier {
                if !seen.insert(c.clone()) {
                    return Err(Error::invalid(
                        "weak order",
                        format!("candidate `{c}` appears twice"),
                    ));
                }
            }
            canonical.push(tier);
        }
        Ok(WeakOrder(canonical))
    }

    pub fn tiers(&self) -> &[Vec<Candidate>] {
        &self.0
    }

    pub fn candidate_set(&self) -> BTreeSet<Candidate> {
        self.0.iter().flatten().cloned().collect()
    }

    /// The total orders compatible with the tier structure, as a count-free
    /// test: true iff `x` never places a lower tier above a higher one.
    pub fn is_strict(&self) -> bool {
        self.0.iter().all(|t| t.len() == 1)
    }
}

impl fmt::Display for WeakOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first_tier = true;
        for tier in &self.0 {
            if !first_tier {
                f.write_str(">")?;
            }
            first_tier = false;
            let mut first = true;
            for c in tier {
                if !first {
                    f.write_str("=")?;
                }
                first = false;
                f.write_str(c.name())?;
            }
        }
        Ok(())
    }
}

impl FromStr for WeakOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tiers = s
            .split('>')
            .map(|tier| {
                tier.split('=')
                    .map(|t| Candidate::new(t.trim()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        WeakOrder::new(tiers)
    }
}

impl Serialize for WeakOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Number of unordered candidate pairs the two rankings order oppositely.
/// Errors unless both range over the same candidate set.
pub fn kendall_tau(x: &Ranking, y: &Ranking) -> Result<u64> {
    if !x.same_candidates(y) {
        return Err(Error::CandidateMismatch(format!(
            "kendall_tau over `{x}` and `{y}`"
        )));
    }
    let pos: BTreeMap<&Candidate, usize> = y
        .candidates()
        .iter()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let xs = x.candidates();
    let mut tau = 0u64;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if pos[&xs[i]] > pos[&xs[j]] {
                tau += 1;
            }
        }
    }
    Ok(tau)
}

/// A group of identical votes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoteGroup {
    pub count: u64,
    pub ranking: Ranking,
}

/// An election: a candidate set, optional positive candidate weights
/// (default 1, relevant to Slater scoring), and a multiset of votes.
///
/// Construction canonicalizes: candidates sorted, identical votes aggregated
/// and groups sorted by ranking, weight map reduced to non-default entries.
/// Derived equality is therefore semantic equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Election {
    candidates: Vec<Candidate>,
    weights: BTreeMap<Candidate, u64>,
    votes: Vec<VoteGroup>,
}

impl Election {
    pub fn new(
        candidates: Vec<Candidate>,
        weights: impl IntoIterator<Item = (Candidate, u64)>,
        votes: impl IntoIterator<Item = (u64, Ranking)>,
    ) -> Result<Self> {
        let mut sorted = candidates;
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("election", "duplicate candidate"));
        }
        let set: BTreeSet<Candidate> = sorted.iter().cloned().collect();

        let mut weight_map = BTreeMap::new();
        for (c, w) in weights {
            if !set.contains(&c) {
                return Err(Error::invalid(
                    "election",
                    format!("weight for unknown candidate `{c}`"),
                ));
            }
            if w == 0 {
                return Err(Error::invalid(
                    "election",
                    format!("weight of `{c}` must be positive"),
                ));
            }
            if weight_map.insert(c.clone(), w).is_some() {
                return Err(Error::invalid(
                    "election",
                    format!("weight for `{c}` given twice"),
                ));
            }
        }
        weight_map.retain(|_, w| *w != 1);

        let mut grouped: BTreeMap<Ranking, u64> = BTreeMap::new();
        for (count, ranking) in votes {
            if count == 0 {
                return Err(Error::invalid("election", "vote group with count 0"));
            }
            if ranking.len() != set.len() || ranking.candidate_set() != set {
                return Err(Error::CandidateMismatch(format!(
                    "vote `{ranking}` is not a permutation of the candidate set"
                )));
            }
            *grouped.entry(ranking).or_insert(0) += count;
        }
        let votes = grouped
            .into_iter()
            .map(|(ranking, count)| VoteGroup { count, ranking })
            .collect();

        Ok(Election {
            candidates: sorted,
            weights: weight_map,
            votes,
        })
    }

    pub fn unweighted(
        candidates: Vec<Candidate>,
        votes: impl IntoIterator<Item = (u64, Ranking)>,
    ) -> Result<Self> {
        Election::new(candidates, Vec::new(), votes)
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn candidate_count(&self) -> usize {
        self.candidates.len()
    }

    pub fn candidate_set(&self) -> BTreeSet<Candidate> {
        self.candidates.iter().cloned().collect()
    }

    pub fn weight(&self, c: &Candidate) -> u64 {
        self.weights.get(c).copied().unwrap_or(1)
    }

    /// Entries different from the default weight 1, in canonical order.
    pub fn nondefault_weights(&self) -> &BTreeMap<Candidate, u64> {
        &self.weights
    }

    pub fn vote_groups(&self) -> &[VoteGroup] {
        &self.votes
    }

    pub fn voter_count(&self) -> u64 {
        self.votes.iter().map(|g| g.count).sum()
    }

    /// Index into the canonical candidate order.
    pub fn index_of(&self, c: &Candidate) -> Option<usize> {
        self.candidates.binary_search(c).ok()
    }

    pub fn has_same_candidates(&self, x: &Ranking) -> bool {
        x.len() == self.candidates.len() && x.candidate_set().iter().eq(self.candidates.iter())
    }

    /// This election plus extra votes over the same candidate set.
    pub fn with_votes_added(
        &self,
        extra: impl IntoIterator<Item = (u64, Ranking)>,
    ) -> Result<Election> {
        let mut votes: Vec<(u64, Ranking)> = self
            .votes
            .iter()
            .map(|g| (g.count, g.ranking.clone()))
            .collect();
        votes.extend(extra);
        Election::new(self.candidates.clone(), self.weights.clone(), votes)
    }

    /// This election with a sub-multiset of votes removed. Errors when a
    /// removal asks for more copies of a ranking than are present.
    pub fn with_votes_removed(&self, removed: &[(u64, Ranking)]) -> Result<Election> {
        let mut counts: BTreeMap<Ranking, u64> = self
            .votes
            .iter()
            .map(|g| (g.ranking.clone(), g.count))
            .collect();
        for (count, ranking) in removed {
            let have = counts.get_mut(ranking).ok_or_else(|| {
                Error::invalid("vote removal", format!("no voter with `{ranking}`"))
            })?;
            if *have < *count {
                return Err(Error::invalid(
                    "vote removal",
                    format!("only {have} voter(s) with `{ranking}`, removing {count}"),
                ));
            }
            *have -= *count;
        }
        counts.retain(|_, c| *c != 0);
        Election::new(
            self.candidates.clone(),
            self.weights.clone(),
            counts.into_iter().map(|(r, c)| (c, r)),
        )
    }

    /// The election induced on `keep`: candidates outside `keep` are dropped
    /// from the candidate set and from every vote. Weights of survivors are
    /// kept. `keep` must be a subset of the candidate set.
    pub fn restricted_to(&self, keep: &BTreeSet<Candidate>) -> Result<Election> {
        for c in keep {
            if self.index_of(c).is_none() {
                return Err(Error::invalid(
                    "restriction",
                    format!("unknown candidate `{c}`"),
                ));
            }
        }
        let candidates: Vec<Candidate> = keep.iter().cloned().collect();
        let weights: Vec<(Candidate, u64)> = self
            .weights
            .iter()
            .filter(|(c, _)| keep.contains(*c))
            .map(|(c, w)| (c.clone(), *w))
            .collect();
        let votes: Vec<(u64, Ranking)> = self
            .votes
            .iter()
            .map(|g| (g.count, g.ranking.restricted_to(keep)))
            .collect();
        Election::new(candidates, weights, votes)
    }
}

/// Sum over voters (with multiplicity) of the Kendall tau distance to `x`.
pub fn distance_to_election(x: &Ranking, e: &Election) -> Result<u64> {
    if !e.has_same_candidates(x) {
        return Err(Error::CandidateMismatch(format!(
            "distance of `{x}` to an election over a different candidate set"
        )));
    }
    let mut total = 0u64;
    for g in e.vote_groups() {
        total += g.count * kendall_tau(x, &g.ranking)?;
    }
    Ok(total)
}

/// The full pairwise comparison table of an election:
/// `count(a, b)` = number of voters ranking `a` above `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseTally {
    candidates: Vec<Candidate>,
    counts: Vec<u64>, // row-major m*m, diagonal 0
}

impl PairwiseTally {
    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub(crate) fn at(&self, i: usize, j: usize) -> u64 {
        self.counts[i * self.candidates.len() + j]
    }

    pub fn count(&self, a: &Candidate, b: &Candidate) -> Option<u64> {
        let i = self.candidates.binary_search(a).ok()?;
        let j = self.candidates.binary_search(b).ok()?;
        Some(self.at(i, j))
    }

    /// `count(a,b) - count(b,a)` by index.
    pub(crate) fn margin(&self, i: usize, j: usize) -> i64 {
        self.at(i, j) as i64 - self.at(j, i) as i64
    }
}

pub fn pairwise_tally(e: &Election) -> PairwiseTally {
    let m = e.candidate_count();
    let mut counts = vec![0u64; m * m];
    for g in e.vote_groups() {
        let order = g.ranking.candidates();
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                let a = e.index_of(&order[i]).expect("vote over candidate set");
                let b = e.index_of(&order[j]).expect("vote over candidate set");
                counts[a * m + b] += g.count;
            }
        }
    }
    PairwiseTally {
        candidates: e.candidates().to_vec(),
        counts,
    }
}

/// Majority margins: an arc `(a, b)` with weight `count(a,b) - count(b,a)`
/// for every strictly winning pair. Ties yield no arc, so the arc set is
/// irreflexive and antisymmetric by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMajorityGraph {
    candidates: Vec<Candidate>,
    arcs: BTreeMap<(Candidate, Candidate), u64>,
}

impl WeightedMajorityGraph {
    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn arcs(&self) -> &BTreeMap<(Candidate, Candidate), u64> {
        &self.arcs
    }

    /// True when every arc carries the same weight (vacuously true without
    /// arcs). Uniform margins collapse Kemeny and Slater consensus sets.
    pub fn has_uniform_weights(&self) -> bool {
        let mut values = self.arcs.values();
        match values.next() {
            None => true,
            Some(first) => values.all(|w| w == first),
        }
    }
}

pub fn weighted_majority_graph(e: &Election) -> WeightedMajorityGraph {
    let tally = pairwise_tally(e);
    let m = e.candidate_count();
    let mut arcs = BTreeMap::new();
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let margin = tally.margin(i, j);
            if margin > 0 {
                arcs.insert(
                    (e.candidates()[i].clone(), e.candidates()[j].clone()),
                    margin as u64,
                );
            }
        }
    }
    WeightedMajorityGraph {
        candidates: e.candidates().to_vec(),
        arcs,
    }
}

/// The unweighted majority digraph over the candidate names.
pub fn majority_graph(e: &Election) -> Digraph {
    let wmg = weighted_majority_graph(e);
    let vertices: Vec<String> = e
        .candidates()
        .iter()
        .map(|c| c.name().to_string())
        .collect();
    let arcs: Vec<(String, String)> = wmg
        .arcs()
        .keys()
        .map(|(a, b)| (a.name().to_string(), b.name().to_string()))
        .collect();
    Digraph::new(vertices, &arcs).expect("margins are irreflexive and antisymmetric")
}
