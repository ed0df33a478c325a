//! Exact coloring of `KG^r(n, k, s)`.
//!
//! A coloring is proper iff no color class contains an `r`-clique of the
//! compatibility graph, so everything here works on that graph. For `r = 2`
//! this is ordinary graph coloring.

use serde::Serialize;

use crate::bits::{VertexMask, MAX_GRAPH_VERTICES};
use crate::bounds::{ceil_div, theorem1_lower_bound};
use crate::coloring::Coloring;
use crate::error::{invalid, KneserError, Result};
use crate::hypergraph::{CompatibilityGraph, Edge, NodeCounter};
use crate::params::KneserParams;

/// Node limit for the class-capacity precomputation.
const CAPACITY_NODE_LIMIT: u64 = 2_000_000;

/// Limits for the exact searches.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveBudget {
    /// Cap on search-tree nodes, summed over all `m` tried by [`exact_chromatic`].
    pub max_nodes: u64,
    /// Cap on `C(n, k)`.
    pub max_vertices: usize,
    /// Advisory only; the searches are bounded by `max_nodes`.
    pub time_hint_secs: Option<f64>,
}

impl Default for SolveBudget {
    fn default() -> Self {
        Self { max_nodes: 10_000_000, max_vertices: 56, time_hint_secs: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    ChiFound,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub chi: Option<u32>,
    /// Proper coloring with exactly `chi` colors.
    pub witness: Option<Coloring>,
    pub nodes_explored: u64,
}

/// Answer of the `m`-colorability decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Colorable(Coloring),
    NotColorable,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionReport {
    pub decision: Decision,
    pub nodes_explored: u64,
}

/// Properness verdict with the canonically least monochromatic edge, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProperCheck {
    pub proper: bool,
    pub witness: Option<Edge>,
}

/// The lexicographically least monochromatic edge (as a sorted list of vertex
/// indices) on a prebuilt compatibility graph.
pub fn find_monochromatic_edge_in(
    graph: &CompatibilityGraph,
    coloring: &Coloring,
    nodes: &mut NodeCounter,
) -> Result<Option<Edge>> {
    coloring.check_total(graph.vertices())?;
    let r = graph.params().r as usize;
    let mut classes = vec![VertexMask::EMPTY; coloring.num_colors() as usize + 1];
    for v in 0..graph.len() {
        classes[coloring.color(v) as usize].insert(v);
    }
    let mut best: Option<Vec<usize>> = None;
    for class in classes {
        if class.len() < r {
            continue;
        }
        if let Some(clique) = graph.least_clique(class, r, nodes)? {
            if best.as_ref().is_none_or(|b| clique < *b) {
                best = Some(clique);
            }
        }
    }
    best.map(|c| graph.edge_of(&c)).transpose()
}

/// A monochromatic edge of `KG^r(n,k,s)` under `coloring`, if one exists.
pub fn find_monochromatic_edge(
    params: &KneserParams,
    coloring: &Coloring,
    budget: &SolveBudget,
) -> Result<Option<Edge>> {
    let graph = CompatibilityGraph::new(params, budget.max_vertices)?;
    let mut nodes = NodeCounter::new(budget.max_nodes);
    find_monochromatic_edge_in(&graph, coloring, &mut nodes)
}

pub fn is_proper(params: &KneserParams, coloring: &Coloring, budget: &SolveBudget) -> Result<ProperCheck> {
    let witness = find_monochromatic_edge(params, coloring, budget)?;
    Ok(ProperCheck { proper: witness.is_none(), witness })
}

/// The classical `t`-coloring of `KG^r(n, k, 0)`, `t = ⌈(n − r(k−1))/(r−1)⌉`:
/// color `i < t` goes to vertices whose minimum lies in
/// `{(i−1)(r−1)+1, …, i(r−1)}`, color `t` to the rest.
pub fn windowed_coloring_s0(params: &KneserParams) -> Result<Coloring> {
    let KneserParams { n, k, r, s } = *params;
    if s != 0 {
        return invalid(format!("{params}: windowed coloring needs s = 0"));
    }
    if u64::from(n) < u64::from(r) * u64::from(k) {
        return invalid(format!("{params}: windowed coloring needs n >= rk"));
    }
    let t = ceil_div(i64::from(n) - i64::from(r) * i64::from(k - 1), i64::from(r) - 1) as u32;
    let width = r - 1;
    let vertices = crate::subset::VertexSet::for_params(params)?;
    let colors = vertices
        .iter()
        .map(|v| {
            let lo = v.min_element().expect("k >= 1");
            if lo <= (t - 1) * width {
                (lo - 1) / width + 1
            } else {
                t
            }
        })
        .collect();
    Coloring::new(colors, t)
}

/// Largest number of vertices a single color class can hold, i.e. the size
/// of the largest vertex set without an `r`-clique. `None` when the search
/// runs out of nodes.
///
/// Compatibility graphs of Kneser hypergraphs are vertex-transitive, so the
/// search may assume vertex 0 belongs to an optimal set.
pub fn class_capacity(graph: &CompatibilityGraph, node_limit: u64) -> Option<usize> {
    let r = graph.params().r as usize;
    if graph.is_empty() {
        return Some(0);
    }
    let mut search = CapacitySearch { graph, r, best: 0, nodes: NodeCounter::new(node_limit) };
    let mut chosen = VertexMask::EMPTY;
    chosen.insert(0);
    let cands = search.still_addable(graph.all().and_not(&chosen), chosen, 0);
    search.run(chosen, 1, cands).ok()?;
    Some(search.best)
}

struct CapacitySearch<'g> {
    graph: &'g CompatibilityGraph,
    r: usize,
    best: usize,
    nodes: NodeCounter,
}

impl CapacitySearch<'_> {
    /// Candidates that stay addable after `added` joined `chosen`.
    fn still_addable(&self, cands: VertexMask, chosen: VertexMask, added: usize) -> VertexMask {
        let adj_added = self.graph.neighbors(added);
        let mut out = cands;
        for u in cands.and(adj_added).iter() {
            let common = self.graph.neighbors(u).and(adj_added).and(&chosen);
            if self.graph.has_clique(common, self.r - 2) {
                out.remove(u);
            }
        }
        out
    }

    fn run(&mut self, chosen: VertexMask, size: usize, cands: VertexMask) -> Result<()> {
        self.nodes.tick("capacity search nodes")?;
        if size > self.best {
            self.best = size;
        }
        if cands.is_empty() || size + clique_cover_bound(self.graph, cands, self.r) <= self.best {
            return Ok(());
        }
        let v = cands.first_index().expect("nonempty");
        let mut rest = cands;
        rest.remove(v);
        let mut with_v = chosen;
        with_v.insert(v);
        let addable = self.still_addable(rest, with_v, v);
        self.run(with_v, size + 1, addable)?;
        self.run(chosen, size, rest)
    }
}

/// Upper bound on an `r`-clique-free subset of `cands`: a greedy partition
/// into cliques, each contributing at most `r − 1` vertices.
fn clique_cover_bound(graph: &CompatibilityGraph, cands: VertexMask, r: usize) -> usize {
    let mut rest = cands;
    let mut total = 0;
    while let Some(v) = rest.first_index() {
        let mut clique_size = 1;
        let mut common = rest.and(graph.neighbors(v));
        rest.remove(v);
        while let Some(u) = common.first_index() {
            clique_size += 1;
            rest.remove(u);
            common = common.and(graph.neighbors(u));
            common.remove(u);
        }
        total += clique_size.min(r - 1);
    }
    total
}

/// Backtracking decision procedure for `m`-colorability on a fixed graph.
///
/// Branching picks the uncolored vertex with the fewest admissible colors,
/// ties broken by descending degree then index. A fresh color may only be
/// opened after all smaller colors are in use.
pub struct ColoringSolver<'g> {
    graph: &'g CompatibilityGraph,
    r: usize,
    rank: Vec<usize>,
    capacity: usize,
}

impl<'g> ColoringSolver<'g> {
    pub fn new(graph: &'g CompatibilityGraph) -> Self {
        let mut order: Vec<usize> = (0..graph.len()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(graph.degree(v)), v));
        let mut rank = vec![0; graph.len()];
        for (pos, &v) in order.iter().enumerate() {
            rank[v] = pos;
        }
        let capacity = class_capacity(graph, CAPACITY_NODE_LIMIT).unwrap_or(graph.len());
        Self { graph, r: graph.params().r as usize, rank, capacity }
    }

    /// Upper bound on the size of a single color class.
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// `Ok(Some(coloring))` if an `m`-coloring exists, `Ok(None)` if the
    /// search tree is exhausted; budget errors propagate.
    pub fn decide(&self, m: u32, nodes: &mut NodeCounter) -> Result<Option<Coloring>> {
        if m == 0 {
            return invalid("need m >= 1");
        }
        let v_count = self.graph.len();
        let m = (m as usize).min(v_count.max(1));
        if m > MAX_GRAPH_VERTICES {
            return invalid("too many colors");
        }
        if m * self.capacity < v_count {
            nodes.tick("coloring search nodes")?;
            return Ok(None);
        }
        let mut state = SearchState {
            color: vec![0; v_count],
            classes: vec![VertexMask::EMPTY; m],
            sizes: vec![0; m],
            blocked: vec![0; v_count],
            blocked_at: vec![VertexMask::EMPTY; m],
            used: 0,
            uncolored: self.graph.all(),
            m,
        };
        if self.search(&mut state, nodes)? {
            Ok(Some(Coloring::new(state.color, m as u32)?))
        } else {
            Ok(None)
        }
    }

    fn search(&self, st: &mut SearchState, nodes: &mut NodeCounter) -> Result<bool> {
        if st.uncolored.is_empty() {
            return Ok(true);
        }
        nodes.tick("coloring search nodes")?;

        let used_mask: u128 = if st.used == 128 { u128::MAX } else { (1u128 << st.used) - 1 };
        let fresh = usize::from(st.used < st.m);
        let remaining = st.uncolored.len();

        // Each class can still absorb at most its free capacity, and only
        // vertices for which it is admissible.
        let mut absorb = 0;
        if fresh == 1 {
            let each = self.capacity.min(clique_cover_bound(self.graph, st.uncolored, self.r));
            absorb += (st.m - st.used) * each;
        }
        for q in 0..st.used {
            let admissible = st.uncolored.and_not(&st.blocked_at[q]);
            let room = self.capacity.saturating_sub(st.sizes[q]);
            absorb += room.min(clique_cover_bound(self.graph, admissible, self.r));
        }
        if absorb < remaining {
            return Ok(false);
        }

        let mut pick = None;
        let mut pick_key = (usize::MAX, usize::MAX);
        for u in st.uncolored.iter() {
            let options = (used_mask & !st.blocked[u]).count_ones() as usize + fresh;
            if options == 0 {
                return Ok(false);
            }
            let key = (options, self.rank[u]);
            if key < pick_key {
                pick_key = key;
                pick = Some(u);
            }
        }
        let v = pick.expect("uncolored vertex");

        let mut choices: Vec<usize> =
            (0..st.used).filter(|&q| st.blocked[v] >> q & 1 == 0).collect();
        if fresh == 1 {
            choices.push(st.used);
        }
        for q in choices {
            let opened = q == st.used;
            let trail = self.assign(st, v, q);
            if opened {
                st.used += 1;
            }
            if self.search(st, nodes)? {
                return Ok(true);
            }
            if opened {
                st.used -= 1;
            }
            self.unassign(st, v, q, trail);
        }
        Ok(false)
    }

    /// Colors `v` with `q` and returns the vertices that became blocked for `q`.
    fn assign(&self, st: &mut SearchState, v: usize, q: usize) -> Vec<usize> {
        let old_class = st.classes[q];
        let adj_v = self.graph.neighbors(v);
        let mut trail = Vec::new();
        st.color[v] = q as u32 + 1;
        st.classes[q].insert(v);
        st.sizes[q] += 1;
        st.uncolored.remove(v);
        for u in st.uncolored.and(adj_v).and_not(&st.blocked_at[q]).iter() {
            let common = self.graph.neighbors(u).and(adj_v).and(&old_class);
            if self.graph.has_clique(common, self.r - 2) {
                st.blocked[u] |= 1u128 << q;
                st.blocked_at[q].insert(u);
                trail.push(u);
            }
        }
        trail
    }

    fn unassign(&self, st: &mut SearchState, v: usize, q: usize, trail: Vec<usize>) {
        for u in trail {
            st.blocked[u] &= !(1u128 << q);
            st.blocked_at[q].remove(u);
        }
        st.color[v] = 0;
        st.classes[q].remove(v);
        st.sizes[q] -= 1;
        st.uncolored.insert(v);
    }
}

struct SearchState {
    color: Vec<u32>,
    classes: Vec<VertexMask>,
    sizes: Vec<usize>,
    /// Per vertex, the colors it may no longer take.
    blocked: Vec<u128>,
    /// Per color, the vertices it is blocked for.
    blocked_at: Vec<VertexMask>,
    used: usize,
    uncolored: VertexMask,
    m: usize,
}

/// Decides whether `KG^r(n,k,s)` admits a proper `m`-coloring.
pub fn m_colorable(params: &KneserParams, m: u32, budget: &SolveBudget) -> Result<DecisionReport> {
    if m == 0 {
        return invalid("need m >= 1");
    }
    let graph = CompatibilityGraph::new(params, budget.max_vertices)?;
    let solver = ColoringSolver::new(&graph);
    let mut nodes = NodeCounter::new(budget.max_nodes);
    let decision = match solver.decide(m, &mut nodes) {
        Ok(Some(c)) => Decision::Colorable(c),
        Ok(None) => Decision::NotColorable,
        Err(KneserError::Budget { .. }) => Decision::BudgetExceeded,
        Err(e) => return Err(e),
    };
    Ok(DecisionReport { decision, nodes_explored: nodes.used.min(nodes.limit) })
}

/// `χ(KG^r(n,k,s))`, searching upward from the lower bound (or from 1 when the
/// bound does not apply).
pub fn exact_chromatic(params: &KneserParams, budget: &SolveBudget) -> Result<SolveResult> {
    let start = theorem1_lower_bound(params).unwrap_or(1).max(1) as u32;
    exact_chromatic_from(params, start, budget)
}

/// Like [`exact_chromatic`] but starting the upward scan at `start`. With
/// `start = 1` the result does not depend on any lower bound.
pub fn exact_chromatic_from(params: &KneserParams, start: u32, budget: &SolveBudget) -> Result<SolveResult> {
    let graph = CompatibilityGraph::new(params, budget.max_vertices)?;
    let solver = ColoringSolver::new(&graph);
    let mut nodes = NodeCounter::new(budget.max_nodes);
    let mut m = start.max(1);
    loop {
        match solver.decide(m, &mut nodes) {
            Ok(Some(witness)) => {
                return Ok(SolveResult {
                    status: SolveStatus::ChiFound,
                    chi: Some(m),
                    witness: Some(witness),
                    nodes_explored: nodes.used,
                })
            }
            Ok(None) => m += 1,
            Err(KneserError::Budget { .. }) => {
                return Ok(SolveResult {
                    status: SolveStatus::BudgetExceeded,
                    chi: None,
                    witness: None,
                    nodes_explored: nodes.limit,
                })
            }
            Err(e) => return Err(e),
        }
    }
}
