//! Edges of `KG^r(n, k, s)`, the compatibility graph whose `r`-cliques are exactly
//! those edges, and the padding homomorphism `KG^r(n-s, k-s, 0) -> KG^r(n, k, s)`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bits::{VertexMask, MAX_GRAPH_VERTICES};
use crate::error::{invalid, KneserError, Result};
use crate::params::KneserParams;
use crate::subset::{KSubset, VertexSet};

/// `r` distinct vertices with pairwise intersections of size at most `s`,
/// stored in canonical (lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Edge {
    members: Vec<KSubset>,
}

impl Edge {
    /// Sorts `members` and checks the edge predicate.
    pub fn new(mut members: Vec<KSubset>, r: u32, s: u32) -> Result<Self> {
        if !is_edge(&members, r, s) {
            return Err(KneserError::Structural(format!(
                "{members:?} is not an edge for r={r}, s={s}"
            )));
        }
        members.sort();
        Ok(Self { members })
    }

    pub fn members(&self) -> &[KSubset] {
        &self.members
    }

    pub fn arity(&self) -> usize {
        self.members.len()
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// True iff `members` holds exactly `r` distinct sets, pairwise meeting in at most `s` elements.
pub fn is_edge(members: &[KSubset], r: u32, s: u32) -> bool {
    if members.len() != r as usize {
        return false;
    }
    members.iter().enumerate().all(|(i, a)| {
        members[i + 1..]
            .iter()
            .all(|b| a != b && a.intersection_len(b) <= s)
    })
}

/// Search-node accounting shared by the exhaustive searches.
#[derive(Debug, Clone, Copy)]
pub struct NodeCounter {
    pub used: u64,
    pub limit: u64,
}

impl NodeCounter {
    pub fn new(limit: u64) -> Self {
        Self { used: 0, limit }
    }

    #[inline]
    pub fn tick(&mut self, what: &'static str) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(KneserError::Budget { what, limit: self.limit })
        } else {
            Ok(())
        }
    }
}

/// The graph on the vertices of `KG^r(n, k, s)` with `u ~ v` iff `|u ∩ v| <= s`.
#[derive(Debug, Clone)]
pub struct CompatibilityGraph {
    params: KneserParams,
    vertices: VertexSet,
    adj: Vec<VertexMask>,
}

impl CompatibilityGraph {
    /// Builds the graph, failing with a budget error when `C(n,k)` exceeds
    /// `max_vertices` (itself capped at [`MAX_GRAPH_VERTICES`]).
    pub fn new(params: &KneserParams, max_vertices: usize) -> Result<Self> {
        let cap = max_vertices.min(MAX_GRAPH_VERTICES);
        let count = params.num_vertices();
        if count > cap as u64 {
            return Err(KneserError::Budget { what: "vertex count", limit: cap as u64 });
        }
        let vertices = VertexSet::for_params(params)?;
        let list = vertices.as_slice();
        let adj = list
            .iter()
            .enumerate()
            .map(|(i, a)| {
                list.iter()
                    .enumerate()
                    .filter(|&(j, b)| j != i && a.intersection_len(b) <= params.s)
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Ok(Self { params: *params, vertices, adj })
    }

    pub fn params(&self) -> &KneserParams {
        &self.params
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &VertexMask {
        &self.adj[v]
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn all(&self) -> VertexMask {
        VertexMask::first(self.len())
    }

    /// Graph edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |u| {
            self.adj[u]
                .and(&VertexMask::above(u))
                .iter()
                .map(move |v| (u, v))
        })
    }

    /// True iff `candidates` contains a clique of `size` vertices.
    pub fn has_clique(&self, candidates: VertexMask, size: usize) -> bool {
        match size {
            0 => true,
            1 => !candidates.is_empty(),
            _ => {
                if candidates.len() < size {
                    return false;
                }
                candidates.iter().any(|v| {
                    let rest = candidates.and(&self.adj[v]).and(&VertexMask::above(v));
                    self.has_clique(rest, size - 1)
                })
            }
        }
    }

    /// The lexicographically least clique of `size` vertices inside `candidates`.
    pub fn least_clique(
        &self,
        candidates: VertexMask,
        size: usize,
        nodes: &mut NodeCounter,
    ) -> Result<Option<Vec<usize>>> {
        let mut stack = Vec::with_capacity(size);
        if self.least_clique_rec(candidates, size, &mut stack, nodes)? {
            Ok(Some(stack))
        } else {
            Ok(None)
        }
    }

    fn least_clique_rec(
        &self,
        candidates: VertexMask,
        size: usize,
        stack: &mut Vec<usize>,
        nodes: &mut NodeCounter,
    ) -> Result<bool> {
        if size == 0 {
            return Ok(true);
        }
        if candidates.len() < size {
            return Ok(false);
        }
        for v in candidates.iter() {
            nodes.tick("clique search nodes")?;
            stack.push(v);
            let rest = candidates.and(&self.adj[v]).and(&VertexMask::above(v));
            if self.least_clique_rec(rest, size - 1, stack, nodes)? {
                return Ok(true);
            }
            stack.pop();
        }
        Ok(false)
    }

    /// Calls `visit` on every clique of `size` vertices inside `candidates`, in
    /// lexicographic order, stopping early when `visit` returns `false`.
    pub fn for_each_clique(
        &self,
        candidates: VertexMask,
        size: usize,
        nodes: &mut NodeCounter,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<()> {
        let mut stack = Vec::with_capacity(size);
        self.each_clique_rec(candidates, size, &mut stack, nodes, visit)?;
        Ok(())
    }

    fn each_clique_rec(
        &self,
        candidates: VertexMask,
        size: usize,
        stack: &mut Vec<usize>,
        nodes: &mut NodeCounter,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool> {
        if size == 0 {
            return Ok(visit(stack));
        }
        for v in candidates.iter() {
            nodes.tick("clique enumeration nodes")?;
            stack.push(v);
            let rest = candidates.and(&self.adj[v]).and(&VertexMask::above(v));
            let go_on = self.each_clique_rec(rest, size - 1, stack, nodes, visit)?;
            stack.pop();
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The hypergraph edge spanned by a clique of vertex indices.
    pub fn edge_of(&self, clique: &[usize]) -> Result<Edge> {
        let members = clique
            .iter()
            .map(|&i| self.vertices.get(i).expect("index in range"))
            .collect();
        Edge::new(members, self.params.r, self.params.s)
    }
}

/// Maps `vertex ⊆ [source_n]` to `vertex ∪ {source_n+1, ..., source_n+s}`.
pub fn pad_homomorphism(vertex: &KSubset, source_n: u32, s: u32) -> Result<KSubset> {
    if vertex.max_element().unwrap_or(0) > source_n {
        return invalid(format!("{vertex} is not a subset of [{source_n}]"));
    }
    let pad = KSubset::range(source_n + 1, source_n + s);
    if pad.len() != s {
        return invalid(format!("padded ground set [{}] too large", source_n + s));
    }
    if !vertex.intersection(&pad).is_empty() {
        return invalid(format!("{vertex} overlaps the pad range"));
    }
    Ok(vertex.union(&pad))
}

/// Result of checking the padding map edge by edge.
#[derive(Debug, Clone, Serialize)]
pub struct HomomorphismCheck {
    pub source: KneserParams,
    pub target: KneserParams,
    pub holds: bool,
    pub injective: bool,
    pub edges_checked: u64,
    /// First source edge (canonical order) whose image is not a target edge.
    pub violation: Option<Edge>,
}

/// Exhaustively checks that padding by `target.s` maps every edge of `source`
/// onto an edge of `target`.
///
/// Requires `source.s == 0` and `target = (source.n + t, source.k + t, source.r, t)`.
pub fn verify_homomorphism(
    source: &KneserParams,
    target: &KneserParams,
    max_vertices: usize,
    max_nodes: u64,
) -> Result<HomomorphismCheck> {
    let pad = target.s;
    if source.s != 0 {
        return invalid("source hypergraph must have s = 0");
    }
    if target.r != source.r || target.n != source.n + pad || target.k != source.k + pad {
        return invalid(format!("{target} is not the {pad}-padding of {source}"));
    }
    let graph = CompatibilityGraph::new(source, max_vertices)?;
    let images = graph
        .vertices()
        .iter()
        .map(|v| pad_homomorphism(&v, source.n, pad))
        .collect::<Result<Vec<_>>>()?;
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    let injective = sorted.len() == images.len();

    let mut nodes = NodeCounter::new(max_nodes);
    let mut edges_checked = 0u64;
    let mut violation = None;
    graph.for_each_clique(graph.all(), source.r as usize, &mut nodes, &mut |clique| {
        edges_checked += 1;
        let mapped: Vec<KSubset> = clique.iter().map(|&i| images[i]).collect();
        if is_edge(&mapped, target.r, target.s) {
            true
        } else {
            violation = graph.edge_of(clique).ok();
            false
        }
    })?;
    Ok(HomomorphismCheck {
        source: *source,
        target: *target,
        holds: violation.is_none() && injective,
        injective,
        edges_checked,
        violation,
    })
}

/// Text dump: `kg n k r s V`, then `v <index> <elements>` per vertex and,
/// when `with_graph`, `e <u> <v>` per compatibility-graph edge.
pub fn export_text(params: &KneserParams, with_graph: bool, max_vertices: usize) -> Result<String> {
    let vertices = VertexSet::for_params(params)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "kg {} {} {} {} {}",
        params.n,
        params.k,
        params.r,
        params.s,
        vertices.len()
    );
    for (i, v) in vertices.iter().enumerate() {
        let elems: Vec<String> = v.elements().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "v {i} {}", elems.join(" "));
    }
    if with_graph {
        let graph = CompatibilityGraph::new(params, max_vertices)?;
        for (u, v) in graph.edges() {
            let _ = writeln!(out, "e {u} {v}");
        }
    }
    Ok(out)
}
