//! Plain-text instance documents.
//!
//! Elections, graphs, and digraphs share a line-oriented `key: value`
//! grammar; `#` starts a comment. CNF formulas use DIMACS, and quantified
//! instances extend DIMACS with two block-header lines. Every parser
//! reports 1-based line numbers on failure, and every serializer emits a
//! canonical byte-stable form that its parser round-trips.
//!
//! Election documents:
//!
//! ```text
//! candidates: a,b,c
//! weights: a=2,c=3      # optional, non-default candidate weights
//! 2: a>b>c              # a vote group: count, then a strict ranking
//! 1: c>b>a
//! ```
//!
//! Graph documents use `vertices:` plus repeated `edge: u,v` lines;
//! digraph documents use `arc: u,v` lines instead.
//!
//! Any document may carry query keys consumed by the command layer:
//! `order:` (a `>`-separated sequence), `set:` (comma list, or `u>v` pairs
//! for arc sets), `limit:`, `ell:`, and `reject:`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Digraph, UndirectedGraph};
use crate::logic::{CnfFormula, Qsat2Instance};
use crate::model::{Candidate, Election, Ranking};

/// Query keys a document may carry alongside the instance body.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DocKeys {
    /// A ranking or vertex order, `a>b>c`.
    pub order: Option<String>,
    /// A set: comma-separated names, or `u>v` pairs for arc sets.
    pub set: Option<String>,
    /// A numeric budget or target.
    pub limit: Option<u64>,
    /// A solution-size parameter for domination-style queries.
    pub ell: Option<u64>,
    /// Marks a document that stands for a fixed known no-instance.
    pub reject: bool,
}

impl DocKeys {
    pub fn is_empty(&self) -> bool {
        *self == DocKeys::default()
    }

    /// Absorb one `key: value` line if the key is a query key.
    fn try_absorb(&mut self, line_no: usize, key: &str, value: &str) -> Result<bool> {
        match key {
            "order" => set_once(line_no, key, &mut self.order, value.to_string())?,
            "set" => set_once(line_no, key, &mut self.set, value.to_string())?,
            "limit" => {
                let parsed = value
                    .parse::<u64>()
                    .map_err(|_| Error::parse(line_no, format!("bad limit value `{value}`")))?;
                set_once(line_no, key, &mut self.limit, parsed)?;
            }
            "ell" => {
                let parsed = value
                    .parse::<u64>()
                    .map_err(|_| Error::parse(line_no, format!("bad ell value `{value}`")))?;
                set_once(line_no, key, &mut self.ell, parsed)?;
            }
            "reject" => match value {
                "true" => self.reject = true,
                "false" => self.reject = false,
                _ => {
                    return Err(Error::parse(
                        line_no,
                        format!("bad reject value `{value}`, expected true or false"),
                    ))
                }
            },
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn serialize_into(&self, out: &mut String) {
        if let Some(order) = &self.order {
            writeln!(out, "order: {order}").unwrap();
        }
        if let Some(set) = &self.set {
            writeln!(out, "set: {set}").unwrap();
        }
        if let Some(limit) = self.limit {
            writeln!(out, "limit: {limit}").unwrap();
        }
        if let Some(ell) = self.ell {
            writeln!(out, "ell: {ell}").unwrap();
        }
        if self.reject {
            writeln!(out, "reject: true").unwrap();
        }
    }
}

fn set_once<T>(line_no: usize, key: &str, slot: &mut Option<T>, value: T) -> Result<()> {
    if slot.is_some() {
        return Err(Error::parse(line_no, format!("duplicate `{key}` line")));
    }
    *slot = Some(value);
    Ok(())
}

/// Content lines with 1-based numbers: comments stripped, blanks skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn split_key_value(line_no: usize, line: &str) -> Result<(&str, &str)> {
    let Some(colon) = line.find(':') else {
        return Err(Error::parse(
            line_no,
            format!("expected `key: value`, got `{line}`"),
        ));
    };
    Ok((line[..colon].trim(), line[colon + 1..].trim()))
}

/// Comma-separated names; the empty string is the empty list.
pub fn parse_name_list(value: &str) -> Result<Vec<String>> {
    if value.trim().is_empty() {
        return Ok(Vec::new());
    }
    value
        .split(',')
        .map(|part| {
            let name = part.trim();
            if name.is_empty() {
                Err(Error::invalid("name list", "empty entry"))
            } else {
                Ok(name.to_string())
            }
        })
        .collect()
}

pub fn parse_name_set(value: &str) -> Result<BTreeSet<String>> {
    let list = parse_name_list(value)?;
    let set: BTreeSet<String> = list.iter().cloned().collect();
    if set.len() != list.len() {
        return Err(Error::invalid("name set", "duplicate entry"));
    }
    Ok(set)
}

/// Comma-separated `u>v` pairs; the empty string is the empty set.
pub fn parse_arc_set(value: &str) -> Result<BTreeSet<(String, String)>> {
    if value.trim().is_empty() {
        return Ok(BTreeSet::new());
    }
    let mut set = BTreeSet::new();
    for part in value.split(',') {
        let part = part.trim();
        let mut ends = part.split('>');
        let (Some(tail), Some(head), None) = (ends.next(), ends.next(), ends.next()) else {
            return Err(Error::invalid(
                "arc set",
                format!("expected `u>v`, got `{part}`"),
            ));
        };
        if !set.insert((tail.trim().to_string(), head.trim().to_string())) {
            return Err(Error::invalid("arc set", format!("duplicate arc `{part}`")));
        }
    }
    Ok(set)
}

pub fn format_name_set<'a>(names: impl IntoIterator<Item = &'a str>) -> String {
    names.into_iter().collect::<Vec<_>>().join(",")
}

pub fn format_arc_set<'a>(arcs: impl IntoIterator<Item = (&'a str, &'a str)>) -> String {
    arcs.into_iter()
        .map(|(tail, head)| format!("{tail}>{head}"))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_election(text: &str) -> Result<Election> {
    let (election, keys) = parse_election_doc(text)?;
    if !keys.is_empty() {
        return Err(Error::invalid(
            "election",
            "unexpected query keys in document",
        ));
    }
    Ok(election)
}

pub fn parse_election_doc(text: &str) -> Result<(Election, DocKeys)> {
    let mut candidates: Option<Vec<Candidate>> = None;
    let mut weights: Option<BTreeMap<Candidate, u64>> = None;
    let mut votes: Vec<(u64, Ranking)> = Vec::new();
    let mut keys = DocKeys::default();

    for (line_no, line) in content_lines(text) {
        let (key, value) = split_key_value(line_no, line)?;
        if key == "candidates" {
            let parsed = parse_name_list(value)?
                .into_iter()
                .map(|name| Candidate::new(&name))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::parse(line_no, e.to_string()))?;
            set_once(line_no, key, &mut candidates, parsed)?;
        } else if key == "weights" {
            let mut parsed = BTreeMap::new();
            for part in value.split(',') {
                let part = part.trim();
                let Some((name, weight)) = part.split_once('=') else {
                    return Err(Error::parse(
                        line_no,
                        format!("expected `candidate=weight`, got `{part}`"),
                    ));
                };
                let candidate = Candidate::new(name.trim())
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
                let weight: u64 = weight
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad weight in `{part}`")))?;
                if parsed.insert(candidate, weight).is_some() {
                    return Err(Error::parse(
                        line_no,
                        format!("duplicate weight for `{name}`"),
                    ));
                }
            }
            set_once(line_no, key, &mut weights, parsed)?;
        } else if let Ok(count) = key.parse::<u64>() {
            if count == 0 {
                return Err(Error::parse(line_no, "vote group count must be positive"));
            }
            let ranking: Ranking = value
                .parse()
                .map_err(|e: Error| Error::parse(line_no, e.to_string()))?;
            votes.push((count, ranking));
        } else if !keys.try_absorb(line_no, key, value)? {
            return Err(Error::parse(line_no, format!("unknown key `{key}`")));
        }
    }

    let Some(candidates) = candidates else {
        return Err(Error::invalid("election", "missing `candidates:` line"));
    };
    let election = Election::new(candidates, weights.unwrap_or_default(), votes)?;
    Ok((election, keys))
}

pub fn serialize_election(election: &Election) -> String {
    serialize_election_doc(election, &DocKeys::default())
}

pub fn serialize_election_doc(election: &Election, keys: &DocKeys) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "candidates: {}",
        format_name_set(election.candidates().iter().map(Candidate::name))
    )
    .unwrap();
    let weights = election.nondefault_weights();
    if !weights.is_empty() {
        let parts: Vec<String> = weights
            .iter()
            .map(|(c, w)| format!("{}={}", c.name(), w))
            .collect();
        writeln!(out, "weights: {}", parts.join(",")).unwrap();
    }
    for group in election.vote_groups() {
        writeln!(out, "{}: {}", group.count, group.ranking).unwrap();
    }
    keys.serialize_into(&mut out);
    out
}

pub fn parse_graph(text: &str) -> Result<UndirectedGraph> {
    let (graph, keys) = parse_graph_doc(text)?;
    if !keys.is_empty() {
        return Err(Error::invalid("graph", "unexpected query keys in document"));
    }
    Ok(graph)
}

pub fn parse_graph_doc(text: &str) -> Result<(UndirectedGraph, DocKeys)> {
    let (vertices, pairs, keys) = parse_pair_doc(text, "edge")?;
    Ok((UndirectedGraph::new(vertices, &pairs)?, keys))
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let (digraph, keys) = parse_digraph_doc(text)?;
    if !keys.is_empty() {
        return Err(Error::invalid(
            "digraph",
            "unexpected query keys in document",
        ));
    }
    Ok(digraph)
}

pub fn parse_digraph_doc(text: &str) -> Result<(Digraph, DocKeys)> {
    let (vertices, pairs, keys) = parse_pair_doc(text, "arc")?;
    Ok((Digraph::new(vertices, &pairs)?, keys))
}

type PairDoc = (Vec<String>, Vec<(String, String)>, DocKeys);

fn parse_pair_doc(text: &str, pair_key: &str) -> Result<PairDoc> {
    let mut vertices: Option<Vec<String>> = None;
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut keys = DocKeys::default();

    for (line_no, line) in content_lines(text) {
        let (key, value) = split_key_value(line_no, line)?;
        if key == "vertices" {
            let parsed =
                parse_name_list(value).map_err(|e| Error::parse(line_no, e.to_string()))?;
            set_once(line_no, key, &mut vertices, parsed)?;
        } else if key == pair_key {
            let parts = parse_name_list(value).map_err(|e| Error::parse(line_no, e.to_string()))?;
            let [a, b] = parts.as_slice() else {
                return Err(Error::parse(
                    line_no,
                    format!("expected `{pair_key}: u,v`, got `{value}`"),
                ));
            };
            pairs.push((a.clone(), b.clone()));
        } else if !keys.try_absorb(line_no, key, value)? {
            return Err(Error::parse(line_no, format!("unknown key `{key}`")));
        }
    }

    let Some(vertices) = vertices else {
        return Err(Error::invalid("graph", "missing `vertices:` line"));
    };
    Ok((vertices, pairs, keys))
}

pub fn serialize_graph(graph: &UndirectedGraph) -> String {
    serialize_graph_doc(graph, &DocKeys::default())
}

pub fn serialize_graph_doc(graph: &UndirectedGraph, keys: &DocKeys) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "vertices: {}",
        format_name_set(graph.vertices().iter().map(String::as_str))
    )
    .unwrap();
    for (u, v) in graph.edges() {
        writeln!(out, "edge: {u},{v}").unwrap();
    }
    keys.serialize_into(&mut out);
    out
}

pub fn serialize_digraph(digraph: &Digraph) -> String {
    serialize_digraph_doc(digraph, &DocKeys::default())
}

pub fn serialize_digraph_doc(digraph: &Digraph, keys: &DocKeys) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "vertices: {}",
        format_name_set(digraph.vertices().iter().map(String::as_str))
    )
    .unwrap();
    for (tail, head) in digraph.arcs() {
        writeln!(out, "arc: {tail},{head}").unwrap();
    }
    keys.serialize_into(&mut out);
    out
}

pub fn parse_cnf(text: &str) -> Result<CnfFormula> {
    let (formula, blocks) = parse_dimacs(text)?;
    if blocks.is_some() {
        return Err(Error::invalid("formula", "unexpected block header lines"));
    }
    Ok(formula)
}

pub fn parse_qsat2(text: &str) -> Result<Qsat2Instance> {
    let (formula, blocks) = parse_dimacs(text)?;
    let Some((outer, inner)) = blocks else {
        return Err(Error::invalid(
            "quantified formula",
            "missing `e-vars:` and `a-negated-vars:` lines",
        ));
    };
    let outer =
        outer.ok_or_else(|| Error::invalid("quantified formula", "missing `e-vars:` line"))?;
    let inner = inner
        .ok_or_else(|| Error::invalid("quantified formula", "missing `a-negated-vars:` line"))?;
    Qsat2Instance::new(formula, outer, inner)
}

type BlockHeaders = (Option<Vec<u32>>, Option<Vec<u32>>);

/// DIMACS CNF with optional quantifier block headers. Comment lines start
/// with `c`. Clauses may span lines; each is terminated by a `0` token.
fn parse_dimacs(text: &str) -> Result<(CnfFormula, Option<BlockHeaders>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut outer: Option<Vec<u32>> = None;
    let mut inner: Option<Vec<u32>> = None;
    let mut saw_blocks = false;

    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = raw.trim();
        if line.is_empty() || line == "c" || line.starts_with("c ") {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate `p` line"));
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            let ["cnf", vars, count] = fields.as_slice() else {
                return Err(Error::parse(line_no, "expected `p cnf <vars> <clauses>`"));
            };
            let vars = vars
                .parse()
                .map_err(|_| Error::parse(line_no, "bad variable count"))?;
            let count = count
                .parse()
                .map_err(|_| Error::parse(line_no, "bad clause count"))?;
            header = Some((vars, count));
            continue;
        }
        if let Some(value) = line.strip_prefix("e-vars:") {
            saw_blocks = true;
            set_once(
                line_no,
                "e-vars",
                &mut outer,
                parse_var_list(line_no, value)?,
            )?;
            continue;
        }
        if let Some(value) = line.strip_prefix("a-negated-vars:") {
            saw_blocks = true;
            set_once(
                line_no,
                "a-negated-vars",
                &mut inner,
                parse_var_list(line_no, value)?,
            )?;
            continue;
        }
        if header.is_none() {
            return Err(Error::parse(line_no, "clause before `p cnf` line"));
        }
        for token in line.split_whitespace() {
            let lit: i32 = token
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad literal `{token}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }

    let Some((num_vars, declared)) = header else {
        return Err(Error::invalid("formula", "missing `p cnf` line"));
    };
    if !current.is_empty() {
        return Err(Error::invalid("formula", "unterminated clause"));
    }
    if clauses.len() != declared {
        return Err(Error::invalid(
            "formula",
            format!("declared {declared} clauses, found {}", clauses.len()),
        ));
    }
    let formula = CnfFormula::new(num_vars, clauses)?;
    let blocks = if saw_blocks {
        Some((outer, inner))
    } else {
        None
    };
    Ok((formula, blocks))
}

/// Comma-separated variable entries: `3` or `2..5` (inclusive).
fn parse_var_list(line_no: usize, value: &str) -> Result<Vec<u32>> {
    let mut vars = Vec::new();
    let value = value.trim();
    if value.is_empty() {
        return Ok(vars);
    }
    for part in value.split(',') {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u32 = lo
                .trim()
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad range `{part}`")))?;
            let hi: u32 = hi
                .trim()
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad range `{part}`")))?;
            if lo > hi {
                return Err(Error::parse(line_no, format!("empty range `{part}`")));
            }
            vars.extend(lo..=hi);
        } else {
            let v: u32 = part
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad variable `{part}`")))?;
            vars.push(v);
        }
    }
    Ok(vars)
}

pub fn serialize_cnf(formula: &CnfFormula) -> String {
    let mut out = String::new();
    dimacs_body(&mut out, formula, None);
    out
}

pub fn serialize_qsat2(instance: &Qsat2Instance) -> String {
    let mut out = String::new();
    dimacs_body(
        &mut out,
        instance.formula(),
        Some((instance.outer_vars(), instance.inner_vars())),
    );
    out
}

fn dimacs_body(out: &mut String, formula: &CnfFormula, blocks: Option<(&[u32], &[u32])>) {
    writeln!(
        out,
        "p cnf {} {}",
        formula.num_vars(),
        formula.clause_count()
    )
    .unwrap();
    if let Some((outer, inner)) = blocks {
        let join = |vars: &[u32]| {
            vars.iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(out, "e-vars: {}", join(outer)).unwrap();
        writeln!(out, "a-negated-vars: {}", join(inner)).unwrap();
    }
    for clause in formula.clauses() {
        for lit in clause {
            write!(out, "{lit} ").unwrap();
        }
        writeln!(out, "0").unwrap();
    }
}
