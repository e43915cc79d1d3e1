//! Instance transformations between the decision problems, and a seeded
//! harness that replays each transformation against independent deciders
//! on both sides.
//!
//! Remarkable and load-bearing: `election_from_digraph` realizes any
//! digraph as the majority graph of a concrete election with every margin
//! equal to 2, which carries feedback-arc-set questions into consensus
//! questions verbatim. The quantified-formula gadget then rides the other
//! direction of growth: its padded graph forces every budget-respecting
//! deletion to pick one vertex per variable pair, encoding an assignment.
//!
//! Constructions that require a structured input (a minimal cover, a
//! minimal feedback arc set) either report the violated precondition or,
//! where the transformation is defined to stay total, emit a fixed
//! sentinel no-instance with `rejected` set. The sentinel for the
//! candidate-deletion problem pins its budget to zero: with any budget at
//! all, deleting one of its two candidates would make it a yes-instance.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formats;
use crate::graph::{Digraph, UndirectedGraph};
use crate::limits::Limits;
use crate::logic::{CnfFormula, Qsat2Instance};
use crate::model::{weighted_majority_graph, Candidate, Election, Ranking};
use crate::recognition::{
    fasr_deletion, fasr_restriction, gnd_solvable, is_fas, is_kemeny_consensus, is_minimal_fas,
    is_minimal_vertex_cover, is_minimum_fas, is_minimum_gnd_prime, is_minimum_vertex_cover,
    is_vertex_cover, vcr_deletion, vcr_restriction,
};
use crate::sampling;
use crate::strategic::kemeny_cdc_to_consensus;

/// A consensus-recognition query produced by a reduction. `rejected`
/// marks the sentinel emitted for inputs that fail the source problem's
/// promise; the sentinel is a fixed no-instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KemenyRecognitionInstance {
    pub election: Election,
    pub order: Ranking,
    pub rejected: bool,
}

/// A candidate-deletion control query produced by a reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KemenyCdcInstance {
    pub election: Election,
    pub budget: u64,
    pub order: Ranking,
    pub rejected: bool,
}

/// A node-deletion recognition instance in independent-set form: is
/// `solution` a minimum set whose removal leaves no independent set on
/// `ell + 1` vertices? `budget` is one less than the solution's size, the
/// bound a strictly better solution would have to meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GndPrimeInstance {
    pub graph: UndirectedGraph,
    pub ell: u64,
    pub solution: BTreeSet<String>,
    pub budget: u64,
}

/// A vertex-cover recognition instance with a deletion budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcrInstance {
    pub graph: UndirectedGraph,
    pub budget: u64,
    pub cover: BTreeSet<String>,
}

/// A feedback-arc-set recognition instance with a deletion budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FasrInstance {
    pub digraph: Digraph,
    pub budget: u64,
    pub arcs: BTreeSet<(String, String)>,
}

/// One disagreement found by the verification harness.
#[derive(Debug, Clone, Serialize)]
pub struct TrialFailure {
    pub trial: u64,
    pub instance: String,
    pub left: bool,
    pub right: bool,
}

/// Outcome of replaying a named transformation against independent
/// deciders on seeded random instances.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionReport {
    pub name: String,
    pub max_size: usize,
    pub trials: u64,
    pub seed: u64,
    pub agreements: u64,
    pub failures: Vec<TrialFailure>,
}

impl ReductionReport {
    pub fn all_agreed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A fresh primed name per vertex: `v` becomes `v_p`, with more `_p`
/// appended until the name collides with nothing.
fn primed_names(vertices: &[String]) -> BTreeMap<String, String> {
    let mut taken: BTreeSet<String> = vertices.iter().cloned().collect();
    let mut map = BTreeMap::new();
    for v in vertices {
        let mut p = format!("{v}_p");
        while taken.contains(&p) {
            p.push_str("_p");
        }
        taken.insert(p.clone());
        map.insert(v.clone(), p);
    }
    map
}

/// The vertex-cover-to-feedback-arc-set translation: each vertex `v`
/// splits into `v -> v_p`, and each edge `{v, w}` becomes the arcs
/// `v_p -> w` and `w_p -> v`, so every edge induces two cycles through
/// its endpoints' splitter arcs. The image of a vertex set is the set of
/// its splitter arcs.
pub fn vc_to_fas(
    graph: &UndirectedGraph,
    set: &BTreeSet<String>,
) -> Result<(Digraph, BTreeSet<(String, String)>)> {
    graph.vertex_subset(set)?;
    let primes = primed_names(graph.vertices());
    let mut vertices: Vec<String> = graph.vertices().to_vec();
    vertices.extend(primes.values().cloned());
    let mut arcs: Vec<(String, String)> = graph
        .vertices()
        .iter()
        .map(|v| (v.clone(), primes[v].clone()))
        .collect();
    for (v, w) in graph.edges() {
        arcs.push((primes[v].clone(), w.to_string()));
        arcs.push((primes[w].clone(), v.to_string()));
    }
    let image = set.iter().map(|v| (v.clone(), primes[v].clone())).collect();
    Ok((Digraph::new(vertices, &arcs)?, image))
}

/// The election whose weighted majority graph is the given digraph with
/// every arc weight 2. Per arc `(a, b)`: one voter ranking `a > b` above
/// the remaining candidates in ascending name order, and one ranking the
/// remaining candidates in descending order above `a > b`. The two
/// ballots agree only on `a > b`; everything else cancels.
pub fn election_from_digraph(digraph: &Digraph) -> Result<Election> {
    let candidates: Vec<Candidate> = digraph
        .vertices()
        .iter()
        .map(Candidate::new)
        .collect::<Result<_>>()?;
    let mut votes: Vec<(u64, Ranking)> = Vec::new();
    for (t, h) in digraph.arcs() {
        let a = Candidate::new(t)?;
        let b = Candidate::new(h)?;
        let rest: Vec<Candidate> = candidates
            .iter()
            .filter(|c| *c != &a && *c != &b)
            .cloned()
            .collect();
        let mut first = vec![a.clone(), b.clone()];
        first.extend(rest.iter().cloned());
        let mut second: Vec<Candidate> = rest.into_iter().rev().collect();
        second.push(a);
        second.push(b);
        votes.push((1, Ranking::new(first)?));
        votes.push((1, Ranking::new(second)?));
    }
    Election::unweighted(candidates, votes)
}

fn reject_recognition() -> Result<KemenyRecognitionInstance> {
    let a = Candidate::new("a")?;
    let b = Candidate::new("b")?;
    Ok(KemenyRecognitionInstance {
        election: Election::unweighted(
            vec![a.clone(), b.clone()],
            [(2, Ranking::new(vec![a.clone(), b.clone()])?)],
        )?,
        order: Ranking::new(vec![b, a])?,
        rejected: true,
    })
}

/// A total order of the digraph's vertices consistent with it after the
/// given arcs are removed, incomparabilities broken by name.
fn consistent_order(digraph: &Digraph, arcs: &BTreeSet<(String, String)>) -> Result<Ranking> {
    let names = digraph
        .without_arcs(arcs)?
        .topological_order_lex()
        .ok_or_else(|| Error::Internal("arc set left a cycle behind".to_string()))?;
    Ranking::new(names.iter().map(Candidate::new).collect::<Result<_>>()?)
}

/// Turns a feedback-arc-set minimality claim into a consensus-recognition
/// query: the arc set is a minimum feedback arc set exactly when a total
/// order consistent with the remaining digraph is a consensus of the
/// induced election. Inputs whose arc set is not a minimal feedback arc
/// set map to the fixed rejected no-instance.
pub fn fasr_to_kemeny_recognition(
    digraph: &Digraph,
    arcs: &BTreeSet<(String, String)>,
) -> Result<KemenyRecognitionInstance> {
    let minimal = digraph.arc_subset(arcs).is_ok() && is_minimal_fas(digraph, arcs)?;
    if !minimal {
        return reject_recognition();
    }
    Ok(KemenyRecognitionInstance {
        election: election_from_digraph(digraph)?,
        order: consistent_order(digraph, arcs)?,
        rejected: false,
    })
}

/// Prefixes every clause with the reserved variable 1 and appends the
/// unit clause demanding it false. Satisfiability is preserved, and any
/// assignment making variable 1 true satisfies all but that final
/// clause.
pub fn phi_to_phi_prime(formula: &CnfFormula) -> Result<CnfFormula> {
    if formula.used_vars().contains(&1) {
        return Err(Error::Precondition(
            "variable 1 must be unused; index clause variables from 2".to_string(),
        ));
    }
    let n = formula.num_vars().max(1);
    let mut clauses: Vec<Vec<i32>> = formula
        .clauses()
        .iter()
        .map(|c| {
            let mut widened = vec![1];
            widened.extend_from_slice(c);
            widened
        })
        .collect();
    clauses.push(vec![-1]);
    CnfFormula::new(n, clauses)
}

/// The quantified-satisfiability gadget. Core vertices: an unlinked pair
/// `xI`/`xbarI` per existential variable, a linked pair `yJ`/`ybarJ` per
/// inner variable, and a triangle `aI`,`bI`,`cI` per clause wired to the
/// vertices of its three literals (short clauses repeat their last
/// literal). Each existential variable also gets two pads of `2n+m-2`
/// vertices joined to everything except themselves and their variable
/// pair, which makes deleting one of `xI`/`xbarI` the only way to shrink
/// the pads' independent sets.
///
/// The emitted `solution` (all `xI` plus `xbar1`) always kills every
/// independent set on `ell + 1` vertices; the instance's point is whether
/// anything smaller does too. The formula is true exactly when the
/// solution is NOT minimum, which is also exactly when some set within
/// `budget = n` works.
pub fn qsat2_to_gnd_prime(q: &Qsat2Instance) -> Result<GndPrimeInstance> {
    let n = q.outer_vars().len();
    if n != q.inner_vars().len() {
        return Err(Error::Precondition(
            "equal variable blocks required; pad the smaller block first".to_string(),
        ));
    }
    if n == 0 {
        return Err(Error::Precondition(
            "at least one existential variable required".to_string(),
        ));
    }
    let m = q.formula().clause_count();
    let pad = 2 * n + m - 2;

    let outer_pos: BTreeMap<u32, usize> = q
        .outer_vars()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i + 1))
        .collect();
    let inner_pos: BTreeMap<u32, usize> = q
        .inner_vars()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i + 1))
        .collect();
    let lit_vertex = |lit: i32| -> String {
        let var = lit.unsigned_abs();
        if let Some(i) = outer_pos.get(&var) {
            if lit > 0 {
                format!("x{i}")
            } else {
                format!("xbar{i}")
            }
        } else {
            let j = inner_pos[&var];
            if lit > 0 {
                format!("y{j}")
            } else {
                format!("ybar{j}")
            }
        }
    };

    let mut vertices: Vec<String> = Vec::new();
    for i in 1..=n {
        vertices.push(format!("x{i}"));
        vertices.push(format!("xbar{i}"));
    }
    for j in 1..=n {
        vertices.push(format!("y{j}"));
        vertices.push(format!("ybar{j}"));
    }
    for i in 1..=m {
        vertices.push(format!("a{i}"));
        vertices.push(format!("b{i}"));
        vertices.push(format!("c{i}"));
    }
    let pad_set = |prefix: &str, i: usize| -> Vec<String> {
        (1..=pad).map(|j| format!("{prefix}{i}_{j}")).collect()
    };
    for i in 1..=n {
        vertices.extend(pad_set("i", i));
        vertices.extend(pad_set("ip", i));
    }

    let mut edges: BTreeSet<(String, String)> = BTreeSet::new();
    let mut link = |a: &str, b: &str| {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        edges.insert((lo.to_string(), hi.to_string()));
    };
    for j in 1..=n {
        link(&format!("y{j}"), &format!("ybar{j}"));
    }
    for (i, clause) in q.formula().clauses().iter().enumerate() {
        let i = i + 1;
        let mut lits = clause.clone();
        let Some(&last) = lits.last() else {
            return Err(Error::invalid(
                "quantified formula",
                format!("clause {i} is empty"),
            ));
        };
        while lits.len() < 3 {
            lits.push(last);
        }
        if lits.len() > 3 {
            return Err(Error::invalid(
                "quantified formula",
                format!("clause {i} has more than three literals"),
            ));
        }
        link(&format!("a{i}"), &format!("b{i}"));
        link(&format!("b{i}"), &format!("c{i}"));
        link(&format!("a{i}"), &format!("c{i}"));
        link(&format!("a{i}"), &lit_vertex(lits[0]));
        link(&format!("b{i}"), &lit_vertex(lits[1]));
        link(&format!("c{i}"), &lit_vertex(lits[2]));
    }
    for i in 1..=n {
        for prefix in ["i", "ip"] {
            let inside: BTreeSet<String> = pad_set(prefix, i).into_iter().collect();
            for u in &inside {
                for w in &vertices {
                    if w == u
                        || inside.contains(w)
                        || *w == format!("x{i}")
                        || *w == format!("xbar{i}")
                    {
                        continue;
                    }
                    link(u, w);
                }
            }
        }
    }

    let edge_list: Vec<(String, String)> = edges.into_iter().collect();
    let graph = UndirectedGraph::new(vertices, &edge_list)?;
    let mut solution: BTreeSet<String> = (1..=n).map(|i| format!("x{i}")).collect();
    solution.insert("xbar1".to_string());
    Ok(GndPrimeInstance {
        graph,
        ell: (2 * n + m - 1) as u64,
        solution,
        budget: n as u64,
    })
}

/// Freshly named join vertices stay buildable at desk scale only.
const MAX_JOIN_VERTICES: usize = 10_000;

/// Embeds a clique-form node-deletion question into cover recognition:
/// the complement of the input graph is joined to `ell` fresh mutually
/// nonadjacent vertices, and the proposed cover is the whole original
/// vertex set. Deleting at most `budget` vertices can make the rest of
/// that cover minimum exactly when the same budget kills every clique on
/// `ell + 1` vertices in the input.
pub fn gnd_to_vcrr(graph: &UndirectedGraph, k: u64, ell: u64) -> Result<VcrInstance> {
    let join = usize::try_from(ell)
        .ok()
        .filter(|&j| j <= MAX_JOIN_VERTICES)
        .ok_or(Error::SizeLimit {
            what: "join vertices",
            actual: usize::MAX,
            limit: MAX_JOIN_VERTICES,
        })?;
    let co = graph.complement();
    let mut taken: BTreeSet<String> = co.vertices().iter().cloned().collect();
    let mut fresh = Vec::new();
    for i in 1..=join {
        let mut name = format!("z{i}");
        while taken.contains(&name) {
            name.push_str("_p");
        }
        taken.insert(name.clone());
        fresh.push(name);
    }
    let mut vertices = co.vertices().to_vec();
    vertices.extend(fresh.iter().cloned());
    let mut edges: Vec<(String, String)> = co
        .edges()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    for v in co.vertices() {
        for z in &fresh {
            edges.push((v.clone(), z.clone()));
        }
    }
    Ok(VcrInstance {
        graph: UndirectedGraph::new(vertices, &edges)?,
        budget: k,
        cover: graph.vertices().iter().cloned().collect(),
    })
}

/// Restriction-variant carry-over of cover recognition to feedback-arc
/// recognition via the splitter construction. The cover must be minimal;
/// its image is then automatically a minimal feedback arc set.
pub fn vcrr_to_fasrr(
    graph: &UndirectedGraph,
    k: u64,
    cover: &BTreeSet<String>,
) -> Result<FasrInstance> {
    if !is_minimal_vertex_cover(graph, cover)? {
        return Err(Error::Precondition(
            "the given set must be a minimal vertex cover".to_string(),
        ));
    }
    let (digraph, arcs) = vc_to_fas(graph, cover)?;
    Ok(FasrInstance {
        digraph,
        budget: k,
        arcs,
    })
}

/// Deletion-variant carry-over; any vertex set is allowed.
pub fn vcrd_to_fasrd(
    graph: &UndirectedGraph,
    k: u64,
    set: &BTreeSet<String>,
) -> Result<FasrInstance> {
    let (digraph, arcs) = vc_to_fas(graph, set)?;
    Ok(FasrInstance {
        digraph,
        budget: k,
        arcs,
    })
}

fn reject_cdc() -> Result<KemenyCdcInstance> {
    let base = reject_recognition()?;
    Ok(KemenyCdcInstance {
        election: base.election,
        // With even one deletion allowed, a two-candidate instance is
        // always a yes; the sentinel must stay a no.
        budget: 0,
        order: base.order,
        rejected: true,
    })
}

/// Turns budgeted feedback-arc recognition into budgeted candidate
/// deletion over the induced election, reusing the recognition image and
/// keeping the budget. Non-minimal arc sets map to the fixed rejected
/// no-instance.
pub fn fasrr_to_kemeny_cdc(
    digraph: &Digraph,
    k: u64,
    arcs: &BTreeSet<(String, String)>,
) -> Result<KemenyCdcInstance> {
    let minimal = digraph.arc_subset(arcs).is_ok() && is_minimal_fas(digraph, arcs)?;
    if !minimal {
        return reject_cdc();
    }
    Ok(KemenyCdcInstance {
        election: election_from_digraph(digraph)?,
        budget: k,
        order: consistent_order(digraph, arcs)?,
        rejected: false,
    })
}

fn random_vertex_subset<R: Rng>(rng: &mut R, vertices: &[String]) -> BTreeSet<String> {
    vertices
        .iter()
        .filter(|_| rng.random_bool(0.5))
        .cloned()
        .collect()
}

fn random_arc_subset<R: Rng>(rng: &mut R, digraph: &Digraph) -> BTreeSet<(String, String)> {
    digraph
        .arcs()
        .filter(|_| rng.random_bool(0.5))
        .map(|(t, h)| (t.to_string(), h.to_string()))
        .collect()
}

fn minimal_covers(graph: &UndirectedGraph) -> Result<Vec<BTreeSet<String>>> {
    let vertices = graph.vertices().to_vec();
    let mut found = Vec::new();
    for size in 0..=vertices.len() {
        for subset in vertices.iter().cloned().combinations(size) {
            let set: BTreeSet<String> = subset.into_iter().collect();
            if is_minimal_vertex_cover(graph, &set)? {
                found.push(set);
            }
        }
    }
    Ok(found)
}

type HarnessRun = fn(&mut ChaCha8Rng, usize, &Limits) -> Result<(String, bool, bool)>;

struct Harness {
    name: &'static str,
    aliases: &'static [&'static str],
    default_size: usize,
    default_trials: u64,
    run: HarnessRun,
}

fn check_vc_to_fas(
    rng: &mut ChaCha8Rng,
    max_size: usize,
    limits: &Limits,
) -> Result<(String, bool, bool)> {
    let g = sampling::random_graph(rng, max_size);
    let x = random_vertex_subset(rng, g.vertices());
    let (hat, image) = vc_to_fas(&g, &x)?;
    let property = rng.random_range(0..3);
    let (left, right, label) = match property {
        0 => (is_vertex_cover(&g, &x)?, is_fas(&hat, &image)?, "cover"),
        1 => (
            is_minimal_vertex_cover(&g, &x)?,
            is_minimal_fas(&hat, &image)?,
            "minimal",
        ),
        _ => (
            is_minimum_vertex_cover(&g, &x, limits)?,
            is_minimum_fas(&hat, &image, limits)?,
            "minimum",
        ),
    };
    let instance = format!(
        "{}set: {}\nproperty: {label}\n",
        formats::serialize_graph(&g),
        formats::format_name_set(x.iter().map(String::as_str)),
    );
    Ok((instance, left, right))
}

fn check_wmg_law(
    rng: &mut ChaCha8Rng,
    max_size: usize,
    _limits: &Limits,
) -> Result<(String, bool, bool)> {
    let g = sampling::random_digraph(rng, max_size);
    let e = election_from_digraph(&g)?;
    let wmg = weighted_majority_graph(&e);
    let expected: BTreeMap<(Candidate, Candidate), u64> = g
        .arcs()
        .map(|(t, h)| Ok(((Candidate::new(t)?, Candidate::new(h)?), 2)))
        .collect::<Result<_>>()?;
    let holds = *wmg.arcs() == expected && e.voter_count() == 2 * g.arc_count() as u64;
    Ok((formats::serialize_digraph(&g), true, holds))
}

fn check_fasr_to_recognition(
    rng: &mut ChaCha8Rng,
    max_size: usize,
    limits: &Limits,
) -> Result<(String, bool, bool)> {
    let g = sampling::random_digraph(rng, max_size);
    let x = random_arc_subset(rng, &g);
    let left = is_minimum_fas(&g, &x, limits)?;
    let image = fasr_to_kemeny_recognition(&g, &x)?;
    let right = if image.rejected {
        false
    } else {
        is_kemeny_consensus(&image.election, &image.order, limits)?
    };
    let instance = format!(
        "{}set: {}\n",
        formats::serialize_digraph(&g),
        formats::format_arc_set(x.iter().map(|(t, h)| (t.as_str(), h.as_str()))),
    );
    Ok((instance, left, right))
}

fn check_phi_prime(
    rng: &mut ChaCha8Rng,
    max_size: usize,
    _limits: &Limits,
) -> Result<(String, bool, bool)> {
    let vars = max_size.clamp(2, 6) as u32;
    let formula = sampling::random_cnf3(rng, 2, vars, 3);
    let prime = phi_to_phi_prime(&formula)?;
    let left = formula.is_satisfiable()?;
    let right = prime.is_satisfiable()?;
    // Construction law, not an instance property: any assignment with the
    // reserved variable true satisfies all clauses but the last.
    let mut assignment = vec![false; prime.num_vars()];
    assignment[0] = true;
    for slot in assignment.iter_mut().skip(1) {
        *slot = rng.random_bool(0.5);
    }
    if prime.satisfied_clause_count(&assignment) != prime.clause_count() - 1 {
        return Err(Error::Internal(
            "widened formula broke the all-but-one satisfaction law".to_string(),
        ));
    }
    Ok((formats::serialize_cnf(&formula), left, right))
}

fn check_qsat2_to_gnd(
    rng: &mut ChaCha8Rng,
    max_size: usize,
    limits: &Limits,
) -> Result<(String, bool, bool)> {
    let n = rng.random_range(1..=max_size.clamp(1, 2)) as u32;
    let q = sampling::random_qsat2(rng, n, max_size.max(1));
    let left = q.truth()?;
    let image = qsat2_to_gnd_prime(&q)?;
    let right = !is_minimum_gnd_prime(&image.graph, image.ell, &image.solution, limits)?;
    Ok((formats::serialize_qsat2(&q), left, right))
}

fn check_gnd_to_vcrr(
    rng: &mut ChaCha8Rng,
    max_size: usize,
    limits: &Limits,
) -> Result<(String, bool, bool)> {
    let g = sampling::random_graph(rng, max_size);
    let ell = rng.random_range(1..=3u64);
    let k = rng.random_range(0..=2u64);
    let left = gnd_solvable(&g, ell, k, limits)?;
    let image = gnd_to_vcrr(&g, k, ell)?;
    let right = vcr_restriction(&image.graph, image.budget, &image.cover, limits)?.is_some();
    let instance = format!("{}ell: {ell}\nlimit: {k}\n", formats::serialize_graph(&g));
    Ok((instance, left, right))
}

fn check_vcrr_to_fasrr(
    rng: &mut ChaCha8Rng,
    max_size: usize,
    limits: &Limits,
) -> Result<(String, bool, bool)> {
    let g = sampling::random_graph(rng, max_size);
    let covers = minimal_covers(&g)?;
    let x = covers[rng.random_range(0..covers.len())].clone();
    let k = rng.random_range(0..=2u64);
    let left = vcr_restriction(&g, k, &x, limits)?.is_some();
    let image = vcrr_to_fasrr(&g, k, &x)?;
    let right = fasr_restriction(&image.digraph, image.budget, &image.arcs, limits)?.is_some();
    let instance = format!(
        "{}set: {}\nlimit: {k}\n",
        formats::serialize_graph(&g),
        formats::format_name_set(x.iter().map(String::as_str)),
    );
    Ok((instance, left, right))
}

fn check_vcrd_to_fasrd(
    rng: &mut ChaCha8Rng,
    max_size: usize,
    limits: &Limits,
) -> Result<(String, bool, bool)> {
    let g = sampling::random_graph(rng, max_size);
    let x = random_vertex_subset(rng, g.vertices());
    let k = rng.random_range(0..=2u64);
    let left = vcr_deletion(&g, k, &x, limits)?.is_some();
    let image = vcrd_to_fasrd(&g, k, &x)?;
    let right = fasr_deletion(&image.digraph, image.budget, &image.arcs, limits)?.is_some();
    let instance = format!(
        "{}set: {}\nlimit: {k}\n",
        formats::serialize_graph(&g),
        formats::format_name_set(x.iter().map(String::as_str)),
    );
    Ok((instance, left, right))
}

fn check_fasrr_to_cdc(
    rng: &mut ChaCha8Rng,
    max_size: usize,
    limits: &Limits,
) -> Result<(String, bool, bool)> {
    let g = sampling::random_digraph(rng, max_size);
    let x = random_arc_subset(rng, &g);
    let k = rng.random_range(0..=1u64);
    let left = is_minimal_fas(&g, &x)? && fasr_restriction(&g, k, &x, limits)?.is_some();
    let image = fasrr_to_kemeny_cdc(&g, k, &x)?;
    let right =
        kemeny_cdc_to_consensus(&image.election, image.budget, &image.order, limits)?.is_some();
    let instance = format!(
        "{}set: {}\nlimit: {k}\n",
        formats::serialize_digraph(&g),
        formats::format_arc_set(x.iter().map(|(t, h)| (t.as_str(), h.as_str()))),
    );
    Ok((instance, left, right))
}

fn check_chain(
    rng: &mut ChaCha8Rng,
    max_size: usize,
    limits: &Limits,
) -> Result<(String, bool, bool)> {
    let q = sampling::random_qsat2(rng, 1, max_size.max(1));
    let left = q.truth()?;
    let gnd = qsat2_to_gnd_prime(&q)?;
    // The node-deletion step is in independent-set form; the cover step
    // consumes clique form, so it gets the complement.
    let vcr = gnd_to_vcrr(&gnd.graph.complement(), gnd.budget, gnd.ell)?;
    let fasr = vcrr_to_fasrr(&vcr.graph, vcr.budget, &vcr.cover)?;
    let cdc = fasrr_to_kemeny_cdc(&fasr.digraph, fasr.budget, &fasr.arcs)?;
    let mut wide = limits.clone();
    wide.max_score_candidates = wide
        .max_score_candidates
        .max(cdc.election.candidate_count().min(24));
    let right = kemeny_cdc_to_consensus(&cdc.election, cdc.budget, &cdc.order, &wide)?.is_some();
    Ok((formats::serialize_qsat2(&q), left, right))
}

const HARNESSES: &[Harness] = &[
    Harness {
        name: "vc_to_fas",
        aliases: &["vc2fas"],
        default_size: 5,
        default_trials: 200,
        run: check_vc_to_fas,
    },
    Harness {
        name: "e_of_g_wmg",
        aliases: &["g2election", "election_from_digraph"],
        default_size: 5,
        default_trials: 200,
        run: check_wmg_law,
    },
    Harness {
        name: "fasr_to_kemeny_recognition",
        aliases: &["fas2rec"],
        default_size: 5,
        default_trials: 200,
        run: check_fasr_to_recognition,
    },
    Harness {
        name: "phi_to_phi_prime",
        aliases: &["phi2phiprime"],
        default_size: 4,
        default_trials: 200,
        run: check_phi_prime,
    },
    Harness {
        name: "qsat2_to_gnd_prime",
        aliases: &["qsat2gnd"],
        default_size: 2,
        default_trials: 20,
        run: check_qsat2_to_gnd,
    },
    Harness {
        name: "gnd_to_vcrr",
        aliases: &["gnd2vcrr"],
        default_size: 4,
        default_trials: 100,
        run: check_gnd_to_vcrr,
    },
    Harness {
        name: "vcrr_to_fasrr",
        aliases: &["vcrr2fasrr"],
        default_size: 4,
        default_trials: 100,
        run: check_vcrr_to_fasrr,
    },
    Harness {
        name: "vcrd_to_fasrd",
        aliases: &["vcrd2fasrd"],
        default_size: 4,
        default_trials: 100,
        run: check_vcrd_to_fasrd,
    },
    Harness {
        name: "fasrr_to_kemeny_cdc",
        aliases: &["fasrr2cdc"],
        default_size: 4,
        default_trials: 100,
        run: check_fasrr_to_cdc,
    },
    Harness {
        name: "chain",
        aliases: &["qsat2_to_kemeny_cdc"],
        default_size: 1,
        default_trials: 2,
        run: check_chain,
    },
];

pub fn reduction_names() -> Vec<&'static str> {
    HARNESSES.iter().map(|h| h.name).collect()
}

fn harness_for(name: &str) -> Result<&'static Harness> {
    HARNESSES
        .iter()
        .find(|h| h.name == name || h.aliases.contains(&name))
        .ok_or_else(|| Error::UnknownReduction(name.to_string()))
}

/// Replays a named transformation on seeded random instances, deciding
/// source and image with independent exact solvers, and reports every
/// disagreement. Per-trial seeds derive from the master seed, so trial i
/// is the same instance whether trials run alone, in sequence, or in
/// parallel.
pub fn verify_reduction(
    name: &str,
    max_size: Option<usize>,
    trials: Option<u64>,
    seed: u64,
    limits: &Limits,
) -> Result<ReductionReport> {
    let harness = harness_for(name)?;
    let max_size = max_size.unwrap_or(harness.default_size);
    let trials = trials.unwrap_or(harness.default_trials);
    let mut agreements = 0;
    let mut failures = Vec::new();
    for trial in 0..trials {
        let mut rng = sampling::trial_rng(seed, trial);
        let (instance, left, right) = (harness.run)(&mut rng, max_size, limits)?;
        if left == right {
            agreements += 1;
        } else {
            failures.push(TrialFailure {
                trial,
                instance,
                left,
                right,
            });
        }
    }
    Ok(ReductionReport {
        name: harness.name.to_string(),
        max_size,
        trials,
        seed,
        agreements,
        failures,
    })
}
