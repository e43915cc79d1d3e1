//! Simple undirected graphs and irreflexive antisymmetric digraphs over
//! named vertices, plus the small exact kernels the recognition and
//! reduction layers need: acyclicity, lexicographic topological orders,
//! clique and independent-set existence.
//!
//! Vertices are kept sorted; edges and arcs are index pairs into that order,
//! so structural equality is semantic equality and iteration order is
//! deterministic everywhere.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::model::valid_token;

fn canonical_vertices(vertices: Vec<String>) -> Result<Vec<String>> {
    let mut vs = vertices;
    vs.sort();
    for v in &vs {
        if !valid_token(v) {
            return Err(Error::invalid(
                "vertex name",
                format!("`{v}` is not a nonempty [A-Za-z0-9_] token"),
            ));
        }
    }
    if vs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("graph", "duplicate vertex"));
    }
    Ok(vs)
}

fn index_map(vertices: &[String]) -> BTreeMap<&str, usize> {
    vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect()
}

/// A finite simple undirected graph: no loops, no multi-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    vertices: Vec<String>,
    edges: BTreeSet<(usize, usize)>, // i < j
}

impl UndirectedGraph {
    pub fn new(vertices: Vec<String>, edges: &[(String, String)]) -> Result<Self> {
        let vertices = canonical_vertices(vertices)?;
        let idx = index_map(&vertices);
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            let i = *idx
                .get(a.as_str())
                .ok_or_else(|| Error::invalid("edge", format!("unknown vertex `{a}`")))?;
            let j = *idx
                .get(b.as_str())
                .ok_or_else(|| Error::invalid("edge", format!("unknown vertex `{b}`")))?;
            if i == j {
                return Err(Error::invalid("edge", format!("loop at `{a}`")));
            }
            if !set.insert((i.min(j), i.max(j))) {
                return Err(Error::invalid(
                    "edge",
                    format!("duplicate edge {{{a},{b}}}"),
                ));
            }
        }
        Ok(UndirectedGraph {
            vertices,
            edges: set,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, v: &str) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_str().cmp(v)).ok()
    }

    /// Edges as name pairs, lexicographically sorted, smaller endpoint first.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(i, j)| (self.vertices[i].as_str(), self.vertices[j].as_str()))
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) if i != j => self.edges.contains(&(i.min(j), i.max(j))),
            _ => false,
        }
    }

    /// Validates `set` as a subset of the vertex set, returning indices.
    pub(crate) fn vertex_subset(&self, set: &BTreeSet<String>) -> Result<BTreeSet<usize>> {
        set.iter()
            .map(|v| {
                self.index_of(v)
                    .ok_or_else(|| Error::invalid("vertex set", format!("unknown vertex `{v}`")))
            })
            .collect()
    }

    pub fn complement(&self) -> UndirectedGraph {
        let n = self.vertices.len();
        let mut edges = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.edges.contains(&(i, j)) {
                    edges.insert((i, j));
                }
            }
        }
        UndirectedGraph {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    /// The induced subgraph after deleting `w` (validated subset).
    pub fn without_vertices(&self, w: &BTreeSet<String>) -> Result<UndirectedGraph> {
        let removed = self.vertex_subset(w)?;
        let kept: Vec<usize> = (0..self.vertices.len())
            .filter(|i| !removed.contains(i))
            .collect();
        let rename: BTreeMap<usize, usize> = kept
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let vertices: Vec<String> = kept.iter().map(|&i| self.vertices[i].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|(i, j)| !removed.contains(i) && !removed.contains(j))
            .map(|(i, j)| (rename[i], rename[j]))
            .collect();
        Ok(UndirectedGraph { vertices, edges })
    }

    /// Adjacency bitmasks; the exact kernels below are mask-based, so the
    /// vertex count is capped at 64 (far above every configured limit).
    fn adjacency_masks(&self) -> Result<Vec<u64>> {
        let n = self.vertices.len();
        if n > 64 {
            return Err(Error::SizeLimit {
                what: "graph kernel vertices",
                actual: n,
                limit: 64,
            });
        }
        let mut adj = vec![0u64; n];
        for &(i, j) in &self.edges {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(adj)
    }

    /// Does the graph contain a clique on `k` vertices?
    pub fn has_clique(&self, k: usize) -> Result<bool> {
        if k == 0 {
            return Ok(true);
        }
        if k > self.vertices.len() {
            return Ok(false);
        }
        let adj = self.adjacency_masks()?;
        let all = if self.vertices.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.vertices.len()) - 1
        };
        Ok(clique_search(&adj, all, k as u32))
    }

    /// Does the graph contain an independent set on `k` vertices?
    pub fn has_independent_set(&self, k: usize) -> Result<bool> {
        if k == 0 {
            return Ok(true);
        }
        if k > self.vertices.len() {
            return Ok(false);
        }
        let adj = self.adjacency_masks()?;
        let all = if self.vertices.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.vertices.len()) - 1
        };
        Ok(independent_search(&adj, all, k as u32))
    }
}

/// Branch on the lowest candidate vertex: take it (restricting candidates to
/// its neighbors) or skip it.
fn clique_search(adj: &[u64], candidates: u64, need: u32) -> bool {
    if need == 0 {
        return true;
    }
    if candidates.count_ones() < need {
        return false;
    }
    let v = candidates.trailing_zeros() as usize;
    let rest = candidates & !(1u64 << v);
    clique_search(adj, rest & adj[v], need - 1) || clique_search(adj, rest, need)
}

/// Same branching with the complementary adjacency condition; kept as its
/// own routine so clique/independent-set duality stays a checkable fact
/// rather than a definition.
fn independent_search(adj: &[u64], candidates: u64, need: u32) -> bool {
    if need == 0 {
        return true;
    }
    if candidates.count_ones() < need {
        return false;
    }
    let v = candidates.trailing_zeros() as usize;
    let rest = candidates & !(1u64 << v);
    independent_search(adj, rest & !adj[v], need - 1) || independent_search(adj, rest, need)
}

/// A finite digraph with no loops and no 2-cycles (irreflexive,
/// antisymmetric). Majority graphs and the feedback-arc-set gadgets all
/// live in this class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertices: Vec<String>,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(vertices: Vec<String>, arcs: &[(String, String)]) -> Result<Self> {
        let vertices = canonical_vertices(vertices)?;
        let idx = index_map(&vertices);
        let mut set = BTreeSet::new();
        for (a, b) in arcs {
            let i = *idx
                .get(a.as_str())
                .ok_or_else(|| Error::invalid("arc", format!("unknown vertex `{a}`")))?;
            let j = *idx
                .get(b.as_str())
                .ok_or_else(|| Error::invalid("arc", format!("unknown vertex `{b}`")))?;
            if i == j {
                return Err(Error::invalid("arc", format!("loop at `{a}`")));
            }
            if set.contains(&(j, i)) {
                return Err(Error::invalid(
                    "arc",
                    format!("both ({a},{b}) and ({b},{a}) present"),
                ));
            }
            if !set.insert((i, j)) {
                return Err(Error::invalid("arc", format!("duplicate arc ({a},{b})")));
            }
        }
        Ok(Digraph {
            vertices,
            arcs: set,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn index_of(&self, v: &str) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_str().cmp(v)).ok()
    }

    /// Arcs as name pairs in deterministic (source, target) index order.
    pub fn arcs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.arcs
            .iter()
            .map(|&(i, j)| (self.vertices[i].as_str(), self.vertices[j].as_str()))
    }

    pub fn has_arc(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.arcs.contains(&(i, j)),
            _ => false,
        }
    }

    pub(crate) fn arc_indices(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    /// Validates `set` as a subset of the arc set, returning index pairs.
    pub(crate) fn arc_subset(
        &self,
        set: &BTreeSet<(String, String)>,
    ) -> Result<BTreeSet<(usize, usize)>> {
        set.iter()
            .map(|(a, b)| {
                let i = self
                    .index_of(a)
                    .ok_or_else(|| Error::invalid("arc set", format!("unknown vertex `{a}`")))?;
                let j = self
                    .index_of(b)
                    .ok_or_else(|| Error::invalid("arc set", format!("unknown vertex `{b}`")))?;
                if self.arcs.contains(&(i, j)) {
                    Ok((i, j))
                } else {
                    Err(Error::invalid(
                        "arc set",
                        format!("({a},{b}) is not an arc of the digraph"),
                    ))
                }
            })
            .collect()
    }

    pub fn vertex_subset(&self, set: &BTreeSet<String>) -> Result<BTreeSet<usize>> {
        set.iter()
            .map(|v| {
                self.index_of(v)
                    .ok_or_else(|| Error::invalid("vertex set", format!("unknown vertex `{v}`")))
            })
            .collect()
    }

    pub fn without_arcs(&self, x: &BTreeSet<(String, String)>) -> Result<Digraph> {
        let removed = self.arc_subset(x)?;
        Ok(Digraph {
            vertices: self.vertices.clone(),
            arcs: self.arcs.difference(&removed).copied().collect(),
        })
    }

    pub fn without_vertices(&self, w: &BTreeSet<String>) -> Result<Digraph> {
        let removed = self.vertex_subset(w)?;
        let kept: Vec<usize> = (0..self.vertices.len())
            .filter(|i| !removed.contains(i))
            .collect();
        let rename: BTreeMap<usize, usize> = kept
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let vertices: Vec<String> = kept.iter().map(|&i| self.vertices[i].clone()).collect();
        let arcs = self
            .arcs
            .iter()
            .filter(|(i, j)| !removed.contains(i) && !removed.contains(j))
            .map(|(i, j)| (rename[i], rename[j]))
            .collect();
        Ok(Digraph { vertices, arcs })
    }

    pub fn is_acyclic(&self) -> bool {
        self.kahn_order().is_some()
    }

    /// Topological order with ties broken toward the lexicographically
    /// smallest vertex; `None` when the digraph has a cycle.
    pub fn topological_order_lex(&self) -> Option<Vec<String>> {
        self.kahn_order().map(|order| {
            order
                .into_iter()
                .map(|i| self.vertices[i].clone())
                .collect()
        })
    }

    fn kahn_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(i, j) in &self.arcs {
            indegree[j] += 1;
            succ[i].push(j);
        }
        // Sorted "ready" set: smallest vertex index first = lexicographic,
        // because vertices are stored sorted.
        let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            order.push(v);
            for &w in &succ[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        if order.len() == n {
            Some(order)
        } else {
            None
        }
    }
}
