//! Decision oracles for recognition problems: is a proposed object (a
//! ranking, an arc set, a vertex set) an optimal solution?
//!
//! Consensus recognition compares the object's score against the computed
//! optimum rather than materializing consensus sets. Minimum-set questions
//! search smaller candidate sets in canonical order (by size, then
//! lexicographic) with early exit. The deletion and restriction variants
//! return the witness deletion set itself, so answers are checkable.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{Digraph, UndirectedGraph};
use crate::limits::Limits;
use crate::model::{distance_to_election, Election, Ranking};
use crate::ordering::{OrderingDp, PairCosts};
use crate::solvers;

pub fn is_kemeny_consensus(election: &Election, order: &Ranking, limits: &Limits) -> Result<bool> {
    if !election.has_same_candidates(order) {
        return Err(Error::CandidateMismatch(
            "order must rank exactly the election's candidates".to_string(),
        ));
    }
    let optimum = solvers::kemeny_consensus_set(election, limits, false)?.optimum;
    Ok(distance_to_election(order, election)? == optimum)
}

pub fn is_slater_consensus(
    digraph: &Digraph,
    weights: &std::collections::BTreeMap<String, u64>,
    order: &Ranking,
    limits: &Limits,
) -> Result<bool> {
    let agreement = solvers::slater_agreement(digraph, weights, order)?;
    let optimum = solvers::slater_consensus_set(digraph, weights, limits, false)?.optimum;
    Ok(agreement == optimum)
}

/// Does removing exactly these arcs make the digraph acyclic? Errors when
/// the set names arcs the digraph does not have.
pub fn is_fas(digraph: &Digraph, arcs: &BTreeSet<(String, String)>) -> Result<bool> {
    Ok(digraph.without_arcs(arcs)?.is_acyclic())
}

/// A feedback arc set no proper subset of which is one: every member arc
/// is needed.
pub fn is_minimal_fas(digraph: &Digraph, arcs: &BTreeSet<(String, String)>) -> Result<bool> {
    if !is_fas(digraph, arcs)? {
        return Ok(false);
    }
    for arc in arcs {
        let mut smaller = arcs.clone();
        smaller.remove(arc);
        if is_fas(digraph, &smaller)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest number of arcs whose removal leaves the digraph acyclic.
///
/// Any linear order's backward arcs form a feedback arc set, and every
/// inclusion-minimal feedback arc set arises that way, so the minimum over
/// orders of backward-arc count is the answer. The ordering DP computes
/// that minimum; if the digraph has too many vertices for it, a subset
/// search over arcs stands in.
pub fn minimum_fas_size(digraph: &Digraph, limits: &Limits) -> Result<u64> {
    let n = digraph.vertex_count();
    if n <= limits.max_score_candidates {
        let mut costs = PairCosts::new(n);
        for &(t, h) in digraph.arc_indices() {
            costs.add(h, t, 1);
        }
        return Ok(OrderingDp::build(&costs)?.minimum());
    }
    let m = digraph.arc_count();
    if m <= limits.max_subset_universe {
        let arcs: Vec<(String, String)> = digraph
            .arcs()
            .map(|(t, h)| (t.to_string(), h.to_string()))
            .collect();
        for size in 0..=m {
            for subset in arcs.iter().cloned().combinations(size) {
                if is_fas(digraph, &subset.into_iter().collect())? {
                    return Ok(size as u64);
                }
            }
        }
        unreachable!("the full arc set is always a feedback arc set");
    }
    Err(Error::SizeLimit {
        what: "digraph vertices",
        actual: n,
        limit: limits.max_score_candidates,
    })
}

/// Is there a feedback arc set with fewer arcs than `bound`?
fn exists_smaller_fas(digraph: &Digraph, bound: usize, limits: &Limits) -> Result<bool> {
    let m = digraph.arc_count();
    if m <= limits.max_subset_universe {
        let arcs: Vec<(String, String)> = digraph
            .arcs()
            .map(|(t, h)| (t.to_string(), h.to_string()))
            .collect();
        for size in 0..bound.min(m + 1) {
            for subset in arcs.iter().cloned().combinations(size) {
                if is_fas(digraph, &subset.into_iter().collect())? {
                    return Ok(true);
                }
            }
        }
        return Ok(false);
    }
    Ok((minimum_fas_size(digraph, limits)? as usize) < bound)
}

/// Is the set a feedback arc set of smallest possible cardinality?
pub fn is_minimum_fas(
    digraph: &Digraph,
    arcs: &BTreeSet<(String, String)>,
    limits: &Limits,
) -> Result<bool> {
    if !is_fas(digraph, arcs)? {
        return Ok(false);
    }
    Ok(!exists_smaller_fas(digraph, arcs.len(), limits)?)
}

pub fn is_vertex_cover(graph: &UndirectedGraph, set: &BTreeSet<String>) -> Result<bool> {
    graph.vertex_subset(set)?;
    Ok(graph
        .edges()
        .all(|(u, v)| set.contains(u) || set.contains(v)))
}

/// A cover where every member covers some edge no other member covers.
pub fn is_minimal_vertex_cover(graph: &UndirectedGraph, set: &BTreeSet<String>) -> Result<bool> {
    if !is_vertex_cover(graph, set)? {
        return Ok(false);
    }
    for v in set {
        let private_edge = graph
            .edges()
            .any(|(u, w)| (u == v && !set.contains(w)) || (w == v && !set.contains(u)));
        if !private_edge {
            return Ok(false);
        }
    }
    Ok(true)
}

fn subset_guard(graph: &UndirectedGraph, limits: &Limits) -> Result<()> {
    let n = graph.vertex_count();
    if n > limits.max_subset_universe {
        return Err(Error::SizeLimit {
            what: "graph vertices",
            actual: n,
            limit: limits.max_subset_universe,
        });
    }
    Ok(())
}

/// Is there a vertex cover with fewer vertices than `bound`?
fn exists_smaller_cover(graph: &UndirectedGraph, bound: usize, limits: &Limits) -> Result<bool> {
    subset_guard(graph, limits)?;
    let vertices = graph.vertices().to_vec();
    for size in 0..bound.min(vertices.len() + 1) {
        for subset in vertices.iter().cloned().combinations(size) {
            if is_vertex_cover(graph, &subset.into_iter().collect())? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub fn minimum_vertex_cover_size(graph: &UndirectedGraph, limits: &Limits) -> Result<u64> {
    subset_guard(graph, limits)?;
    let vertices = graph.vertices().to_vec();
    for size in 0..=vertices.len() {
        for subset in vertices.iter().cloned().combinations(size) {
            if is_vertex_cover(graph, &subset.into_iter().collect())? {
                return Ok(size as u64);
            }
        }
    }
    unreachable!("the full vertex set is always a cover");
}

pub fn is_minimum_vertex_cover(
    graph: &UndirectedGraph,
    set: &BTreeSet<String>,
    limits: &Limits,
) -> Result<bool> {
    if !is_vertex_cover(graph, set)? {
        return Ok(false);
    }
    Ok(!exists_smaller_cover(graph, set.len(), limits)?)
}

fn gnd_guard(graph: &UndirectedGraph, limits: &Limits) -> Result<()> {
    let n = graph.vertex_count();
    if n > limits.max_gnd_vertices {
        return Err(Error::SizeLimit {
            what: "node-deletion graph vertices",
            actual: n,
            limit: limits.max_gnd_vertices,
        });
    }
    Ok(())
}

fn forbidden_size(ell: u64) -> usize {
    usize::try_from(ell).unwrap_or(usize::MAX).saturating_add(1)
}

/// Does the graph minus the set still contain a clique on `ell + 1`
/// vertices? (Independent-set form when `independent` is set.)
fn deletion_leaves_pattern(
    graph: &UndirectedGraph,
    removed: &BTreeSet<String>,
    ell: u64,
    independent: bool,
) -> Result<bool> {
    let remaining = graph.without_vertices(removed)?;
    let need = forbidden_size(ell);
    if independent {
        remaining.has_independent_set(need)
    } else {
        remaining.has_clique(need)
    }
}

fn gnd_search(
    graph: &UndirectedGraph,
    ell: u64,
    max_delete: usize,
    independent: bool,
    limits: &Limits,
) -> Result<bool> {
    gnd_guard(graph, limits)?;
    let vertices = graph.vertices().to_vec();
    for size in 0..=max_delete.min(vertices.len()) {
        for subset in vertices.iter().cloned().combinations(size) {
            if !deletion_leaves_pattern(graph, &subset.into_iter().collect(), ell, independent)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Can at most `k` vertex deletions leave a graph with no clique on
/// `ell + 1` vertices?
pub fn gnd_solvable(graph: &UndirectedGraph, ell: u64, k: u64, limits: &Limits) -> Result<bool> {
    gnd_search(
        graph,
        ell,
        usize::try_from(k).unwrap_or(usize::MAX),
        false,
        limits,
    )
}

/// Independent-set form of `gnd_solvable`.
pub fn gnd_prime_solvable(
    graph: &UndirectedGraph,
    ell: u64,
    k: u64,
    limits: &Limits,
) -> Result<bool> {
    gnd_search(
        graph,
        ell,
        usize::try_from(k).unwrap_or(usize::MAX),
        true,
        limits,
    )
}

fn is_minimum_deletion_set(
    graph: &UndirectedGraph,
    ell: u64,
    set: &BTreeSet<String>,
    independent: bool,
    limits: &Limits,
) -> Result<bool> {
    gnd_guard(graph, limits)?;
    graph.vertex_subset(set)?;
    if deletion_leaves_pattern(graph, set, ell, independent)? {
        return Ok(false);
    }
    // A strictly smaller solution disqualifies the set. Nothing is
    // smaller than the empty set.
    let Some(bound) = set.len().checked_sub(1) else {
        return Ok(true);
    };
    Ok(!gnd_search(graph, ell, bound, independent, limits)?)
}

/// Is the set a smallest one whose deletion kills every clique on
/// `ell + 1` vertices?
pub fn is_minimum_gnd(
    graph: &UndirectedGraph,
    ell: u64,
    set: &BTreeSet<String>,
    limits: &Limits,
) -> Result<bool> {
    is_minimum_deletion_set(graph, ell, set, false, limits)
}

/// Independent-set form of `is_minimum_gnd`.
pub fn is_minimum_gnd_prime(
    graph: &UndirectedGraph,
    ell: u64,
    set: &BTreeSet<String>,
    limits: &Limits,
) -> Result<bool> {
    is_minimum_deletion_set(graph, ell, set, true, limits)
}

fn delete_budget(k: u64, available: usize) -> usize {
    usize::try_from(k).unwrap_or(usize::MAX).min(available)
}

/// Smallest-first, lexicographic deletion sets drawn from `pool`.
fn deletion_sets<'a>(
    pool: &'a [String],
    max_size: usize,
) -> impl Iterator<Item = BTreeSet<String>> + 'a {
    (0..=max_size).flat_map(move |size| {
        pool.iter()
            .cloned()
            .combinations(size)
            .map(|subset| subset.into_iter().collect())
    })
}

/// Witness for: can at most `k` deletions, none touching the set itself,
/// make the set a minimum vertex cover of what remains? Returns the first
/// witness in canonical order, or None.
pub fn vcr_deletion(
    graph: &UndirectedGraph,
    k: u64,
    set: &BTreeSet<String>,
    limits: &Limits,
) -> Result<Option<BTreeSet<String>>> {
    graph.vertex_subset(set)?;
    subset_guard(graph, limits)?;
    // Deleting a member of the set would leave it naming a missing vertex,
    // so only outside vertices are candidates.
    let pool: Vec<String> = graph
        .vertices()
        .iter()
        .filter(|v| !set.contains(*v))
        .cloned()
        .collect();
    for deleted in deletion_sets(&pool, delete_budget(k, pool.len())) {
        let remaining = graph.without_vertices(&deleted)?;
        if is_minimum_vertex_cover(&remaining, set, limits)? {
            return Ok(Some(deleted));
        }
    }
    Ok(None)
}

/// Witness for: can at most `k` vertex deletions, none touching the arc
/// set's endpoints, make the arc set a minimum feedback arc set of what
/// remains?
pub fn fasr_deletion(
    digraph: &Digraph,
    k: u64,
    arcs: &BTreeSet<(String, String)>,
    limits: &Limits,
) -> Result<Option<BTreeSet<String>>> {
    digraph.arc_subset(arcs)?;
    let touched: BTreeSet<&String> = arcs.iter().flat_map(|(t, h)| [t, h]).collect();
    // Deleting an endpoint would leave the arc set naming a missing arc.
    let pool: Vec<String> = digraph
        .vertices()
        .iter()
        .filter(|v| !touched.contains(*v))
        .cloned()
        .collect();
    for deleted in deletion_sets(&pool, delete_budget(k, pool.len())) {
        let remaining = digraph.without_vertices(&deleted)?;
        if is_minimum_fas(&remaining, arcs, limits)? {
            return Ok(Some(deleted));
        }
    }
    Ok(None)
}

/// Witness for: can at most `k` deletions make the cover, restricted to
/// the surviving vertices, a minimum vertex cover of what remains? The
/// cover must be minimal to begin with; that is a precondition, not a
/// "no".
pub fn vcr_restriction(
    graph: &UndirectedGraph,
    k: u64,
    cover: &BTreeSet<String>,
    limits: &Limits,
) -> Result<Option<BTreeSet<String>>> {
    if !is_minimal_vertex_cover(graph, cover)? {
        return Err(Error::Precondition(
            "the given set must be a minimal vertex cover".to_string(),
        ));
    }
    subset_guard(graph, limits)?;
    let pool = graph.vertices().to_vec();
    for deleted in deletion_sets(&pool, delete_budget(k, pool.len())) {
        let remaining = graph.without_vertices(&deleted)?;
        let restricted: BTreeSet<String> = cover.difference(&deleted).cloned().collect();
        if is_minimum_vertex_cover(&remaining, &restricted, limits)? {
            return Ok(Some(deleted));
        }
    }
    Ok(None)
}

/// Witness for: can at most `k` vertex deletions make the arc set,
/// restricted to arcs between surviving vertices, a minimum feedback arc
/// set of what remains? The arc set must be a minimal feedback arc set to
/// begin with.
pub fn fasr_restriction(
    digraph: &Digraph,
    k: u64,
    arcs: &BTreeSet<(String, String)>,
    limits: &Limits,
) -> Result<Option<BTreeSet<String>>> {
    if !is_minimal_fas(digraph, arcs)? {
        return Err(Error::Precondition(
            "the given arc set must be a minimal feedback arc set".to_string(),
        ));
    }
    let pool = digraph.vertices().to_vec();
    for deleted in deletion_sets(&pool, delete_budget(k, pool.len())) {
        let remaining = digraph.without_vertices(&deleted)?;
        let restricted: BTreeSet<(String, String)> = arcs
            .iter()
            .filter(|(t, h)| !deleted.contains(t) && !deleted.contains(h))
            .cloned()
            .collect();
        if is_minimum_fas(&remaining, &restricted, limits)? {
            return Ok(Some(deleted));
        }
    }
    Ok(None)
}
