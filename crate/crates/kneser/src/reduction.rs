//! The composite-arity reduction as a constructive witness extractor.
//!
//! For `r = r1·r2` and a coloring of `KG^r(n, k, s)` with `t` colors, `t` below
//! the lower bound, every `m`-subset `A` of the ground set receives the common
//! color of a monochromatic `KG^{r1}` edge among the `k`-subsets of `A`. A
//! monochromatic `KG^{r2}(n, m, s)` edge `A_1, …, A_{r2}` under that induced
//! coloring then yields `r1·r2` same-colored `k`-sets whose pairwise
//! intersections are at most `s`: a monochromatic edge of the original.
//!
//! Each factor that is not prime is split again by its smallest prime factor.
//! At prime arity the edge is found by a lazy scan of `k`-subsets in lex order,
//! stopping at the first subset that completes a monochromatic edge with
//! earlier ones.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::bounds::theorem1_lower_bound;
use crate::coloring::Coloring;
use crate::error::{invalid, KneserError, Result};
use crate::hypergraph::{is_edge, Edge, NodeCounter};
use crate::params::KneserParams;
use crate::subset::{Combinations, KSubset, VertexSet};

/// Default cap on subsets visited plus clique-search nodes.
pub const DEFAULT_REDUCTION_NODES: u64 = 50_000_000;

/// Largest instances the extractor attempts.
pub const MAX_REDUCTION_N: u32 = 15;
pub const MAX_REDUCTION_K: u32 = 2;
pub const MAX_REDUCTION_S: u32 = 1;
pub const SUPPORTED_ARITIES: [u32; 2] = [4, 6];

/// `m = (r1 − 1)·t + r1·(k − s − 1) + 1`.
pub fn derived_m(r1: u32, t: u32, k: u32, s: u32) -> Result<u32> {
    if r1 < 2 || t < 1 || s >= k {
        return invalid(format!("derived_m needs r1>=2, t>=1, k>s; got r1={r1} t={t} k={k} s={s}"));
    }
    let m = (r1 - 1) * t + r1 * (k - s - 1) + 1;
    let alt = (r1 - 1) * (t - 1) + r1 * (k - s);
    if m != alt {
        return Err(KneserError::Structural(format!("the two forms of m disagree: {m} vs {alt}")));
    }
    Ok(m)
}

pub fn smallest_prime_factor(r: u32) -> u32 {
    (2..).take_while(|d| d * d <= r).find(|d| r.is_multiple_of(*d)).unwrap_or(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

fn ser_ratio<S: Serializer>(q: &Ratio<i64>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&q.to_string())
}

/// One link `lhs (= | >=) rhs` in a chain of (in)equalities, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub lhs_expr: &'static str,
    pub rhs_expr: &'static str,
    pub relation: Relation,
    #[serde(serialize_with = "ser_ratio")]
    pub lhs: Ratio<i64>,
    #[serde(serialize_with = "ser_ratio")]
    pub rhs: Ratio<i64>,
    pub holds: bool,
}

fn chain(terms: &[(&'static str, Ratio<i64>)], relations: &[Relation]) -> Vec<ChainStep> {
    terms
        .windows(2)
        .zip(relations)
        .map(|(w, &relation)| {
            let (lhs, rhs) = (w[0].1, w[1].1);
            ChainStep {
                lhs_expr: w[0].0,
                rhs_expr: w[1].0,
                relation,
                lhs,
                rhs,
                holds: match relation {
                    Relation::Eq => lhs == rhs,
                    Relation::Ge => lhs >= rhs,
                },
            }
        })
        .collect()
}

/// The two size arguments behind the reduction.
///
/// `inner` walks from `m` down to `r1(k−1)+1`, the size at which the bound for
/// arity `r1` applies inside an `m`-set. `outer` walks from `n` down to
/// `(r2−1)(t−1) + r2·m`, where the bound for arity `r2` applies to `m`-subsets.
/// Every link is recorded so that a failing intermediate step is visible even
/// when the endpoints happen to hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeChain {
    /// `false` for `k = 1`, where the complete hypergraph needs no inner step.
    pub inner_invoked: bool,
    pub inner: Vec<ChainStep>,
    /// `m >= r1(k−1)+1`.
    pub inner_endpoint: bool,
    pub outer: Vec<ChainStep>,
    /// `n >= (r2−1)(t−1) + r2·m`.
    pub outer_endpoint: bool,
}

impl SizeChain {
    pub fn new(n: u32, k: u32, s: u32, r1: u32, r2: u32, t: u32) -> Result<Self> {
        let m = derived_m(r1, t, k, s)?;
        let q = |v: i64| Ratio::from_integer(v);
        let (n, k, s, r1, r2, t, m) =
            (n as i64, k as i64, s as i64, r1 as i64, r2 as i64, t as i64, m as i64);
        let r = r1 * r2;
        let a = k - s - 1;
        let inner = chain(
            &[
                ("m", q(m)),
                ("t(r1-1) + r1(k-s-1) + 1", q(t * (r1 - 1) + r1 * a + 1)),
                (
                    "((n-r(k-s-1))/(r-1) - 1)(r1-1) + r1(k-s-1) + 1",
                    (Ratio::new(n - r * a, r - 1) - 1) * (r1 - 1) + r1 * a + 1,
                ),
                (
                    "((n-r1(k-s-1))/(r1-1) - 1)(r1-1) + r1(k-s-1) + 1",
                    (Ratio::new(n - r1 * a, r1 - 1) - 1) * (r1 - 1) + r1 * a + 1,
                ),
                ("n - r1 + 2", q(n - r1 + 2)),
                ("r1 r2 (k-1) + 1 - r1 + 2", q(r1 * r2 * (k - 1) + 1 - r1 + 2)),
                ("r1(r2(k-1) - 1) + 3", q(r1 * (r2 * (k - 1) - 1) + 3)),
                ("r1(k-1) + 1", q(r1 * (k - 1) + 1)),
            ],
            &[Relation::Eq, Relation::Ge, Relation::Ge, Relation::Eq, Relation::Ge, Relation::Eq, Relation::Ge],
        );
        let outer = chain(
            &[
                ("n", q(n)),
                ("(r-1)(t-1) + r(k-s)", q((r - 1) * (t - 1) + r * (k - s))),
                (
                    "(r1 r2 - r2 + r2 - 1)(t-1) + r1 r2 (k-s)",
                    q((r1 * r2 - r2 + r2 - 1) * (t - 1) + r1 * r2 * (k - s)),
                ),
                (
                    "(r2-1)(t-1) + r2((r1-1)(t-1) + r1(k-s))",
                    q((r2 - 1) * (t - 1) + r2 * ((r1 - 1) * (t - 1) + r1 * (k - s))),
                ),
                ("(r2-1)(t-1) + r2 m", q((r2 - 1) * (t - 1) + r2 * m)),
            ],
            &[Relation::Ge, Relation::Eq, Relation::Eq, Relation::Eq],
        );
        Ok(Self {
            inner_invoked: k >= 2,
            inner,
            inner_endpoint: m > r1 * (k - 1),
            outer,
            outer_endpoint: n >= (r2 - 1) * (t - 1) + r2 * m,
        })
    }

    /// Every recorded link holds (inner links only count when invoked).
    pub fn all_steps_hold(&self) -> bool {
        self.failing_steps().next().is_none()
    }

    pub fn endpoints_hold(&self) -> bool {
        self.inner_endpoint && self.outer_endpoint
    }

    pub fn failing_steps(&self) -> impl Iterator<Item = &ChainStep> {
        let inner: &[ChainStep] = if self.inner_invoked { &self.inner } else { &[] };
        inner.iter().chain(&self.outer).filter(|st| !st.holds)
    }
}

/// A single split `r = r1·r2` at color count `t`.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionPlan {
    pub params: KneserParams,
    pub r1: u32,
    pub r2: u32,
    pub t: u32,
    pub m: u32,
    pub chain: SizeChain,
}

impl ReductionPlan {
    /// Validates `r = r1·r2`, `n >= r(k−1)+1` and `1 <= t < bound`.
    pub fn new(params: KneserParams, r1: u32, r2: u32, t: u32) -> Result<Self> {
        if r1 < 2 || r2 < 2 || r1 * r2 != params.r {
            return invalid(format!("{params}: r={} is not r1*r2 = {r1}*{r2}", params.r));
        }
        let bound = theorem1_lower_bound(&params)?;
        if t < 1 || i64::from(t) >= bound {
            return invalid(format!("{params}: t={t} must satisfy 1 <= t < {bound}"));
        }
        let m = derived_m(r1, t, params.k, params.s)?;
        let chain = SizeChain::new(params.n, params.k, params.s, r1, r2, t)?;
        Ok(Self { params, r1, r2, t, m, chain })
    }
}

/// Same-colored `k`-sets with pairwise intersections at most `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Found {
    color: u32,
    members: Vec<KSubset>,
    /// The `m`-set each member was drawn from at the outermost split.
    parents: Vec<KSubset>,
}

struct Ctx {
    s: u32,
    t: u32,
    nodes: NodeCounter,
}

trait ColorSource {
    fn color(&mut self, set: KSubset, ctx: &mut Ctx) -> Result<u32>;
}

struct BaseColors<'a> {
    vertices: &'a VertexSet,
    coloring: &'a Coloring,
}

impl ColorSource for BaseColors<'_> {
    fn color(&mut self, set: KSubset, _: &mut Ctx) -> Result<u32> {
        self.vertices
            .index_of(&set)
            .map(|i| self.coloring.color(i))
            .ok_or_else(|| KneserError::Structural(format!("{set} is not a vertex")))
    }
}

/// Colors an `m`-set by a monochromatic arity-`r` edge among its `k`-subsets.
struct Induced<'a> {
    inner: &'a mut dyn ColorSource,
    r: u32,
    k: u32,
    memo: HashMap<u64, Found>,
}

impl Induced<'_> {
    fn resolve(&mut self, set: KSubset, ctx: &mut Ctx) -> Result<&Found> {
        if !self.memo.contains_key(&set.mask()) {
            let found = find_edge(set, self.k, self.r, &mut *self.inner, ctx, None)?;
            self.memo.insert(set.mask(), found);
        }
        Ok(&self.memo[&set.mask()])
    }
}

impl ColorSource for Induced<'_> {
    fn color(&mut self, set: KSubset, ctx: &mut Ctx) -> Result<u32> {
        Ok(self.resolve(set, ctx)?.color)
    }
}

/// Lex-first `size`-clique of the compatibility relation among `cands`.
fn first_clique(
    cands: &[KSubset],
    size: usize,
    s: u32,
    chosen: &mut Vec<KSubset>,
    nodes: &mut NodeCounter,
) -> Result<bool> {
    if chosen.len() == size {
        return Ok(true);
    }
    for (i, &c) in cands.iter().enumerate() {
        if cands.len() - i < size - chosen.len() {
            break;
        }
        nodes.tick("reduction clique search")?;
        if chosen.iter().all(|x| x.intersection_len(&c) <= s) {
            chosen.push(c);
            if first_clique(&cands[i + 1..], size, s, chosen, nodes)? {
                return Ok(true);
            }
            chosen.pop();
        }
    }
    Ok(false)
}

/// A monochromatic edge of arity `r` among the `size`-subsets of `ground`.
fn find_edge(
    ground: KSubset,
    size: u32,
    r: u32,
    source: &mut dyn ColorSource,
    ctx: &mut Ctx,
    split: Option<(u32, u32)>,
) -> Result<Found> {
    let (r1, r2) = split.unwrap_or_else(|| {
        let p = smallest_prime_factor(r);
        (p, r / p)
    });
    if r2 == 1 {
        return scan_prime(ground, size, r, source, ctx);
    }
    let m = derived_m(r1, ctx.t, size, ctx.s)?;
    if m > ground.len() {
        return Err(KneserError::Structural(format!(
            "intermediate size m={m} exceeds the ground set {ground}"
        )));
    }
    let mut induced = Induced { inner: source, r: r1, k: size, memo: HashMap::new() };
    let outer = find_edge(ground, m, r2, &mut induced, ctx, None)?;
    let mut members = Vec::with_capacity(r as usize);
    for a in &outer.members {
        let w = &induced.memo[&a.mask()];
        if w.color != outer.color {
            return Err(KneserError::Structural(format!("{a} has induced color {} not {}", w.color, outer.color)));
        }
        members.extend(w.members.iter().map(|&b| (b, *a)));
    }
    for (i, (b, a)) in members.iter().enumerate() {
        for (b2, a2) in &members[i + 1..] {
            if a != a2 && b.intersection_len(b2) > a.intersection_len(a2) {
                return Err(KneserError::Structural(format!(
                    "{b} and {b2} meet in more than their parents {a} and {a2}"
                )));
            }
        }
    }
    members.sort();
    let (members, parents) = members.into_iter().unzip();
    Ok(Found { color: outer.color, members, parents })
}

fn scan_prime(
    ground: KSubset,
    size: u32,
    r: u32,
    source: &mut dyn ColorSource,
    ctx: &mut Ctx,
) -> Result<Found> {
    let s = ctx.s;
    let mut by_color: HashMap<u32, Vec<KSubset>> = HashMap::new();
    for x in Combinations::new(ground, size) {
        ctx.nodes.tick("reduction subsets")?;
        let c = source.color(x, ctx)?;
        let earlier = by_color.entry(c).or_default();
        let cands: Vec<KSubset> = earlier.iter().copied().filter(|y| y.intersection_len(&x) <= s).collect();
        let mut chosen = Vec::with_capacity(r as usize);
        if first_clique(&cands, r as usize - 1, s, &mut chosen, &mut ctx.nodes)? {
            chosen.push(x);
            chosen.sort();
            return Ok(Found { color: c, members: chosen, parents: vec![ground; r as usize] });
        }
        earlier.push(x);
    }
    Err(KneserError::Structural(format!(
        "no monochromatic {r}-edge among the {size}-subsets of {ground} (s={s}, t={})",
        ctx.t
    )))
}

fn check_base(params: &KneserParams, coloring: &Coloring, t: u32) -> Result<VertexSet> {
    let vertices = VertexSet::for_params(params)?;
    coloring.check_total(&vertices)?;
    if let Some(c) = coloring.as_slice().iter().copied().find(|&c| c > t) {
        return invalid(format!("coloring uses color {c} above t={t}"));
    }
    Ok(vertices)
}

/// The common color and the canonically first monochromatic `KG^{r1}` edge
/// among the `k`-subsets of `set`, under a coloring of `KG(n, k, s)`.
pub fn induced_color(
    set: &KSubset,
    params: &KneserParams,
    coloring: &Coloring,
    r1: u32,
    max_nodes: u64,
) -> Result<(u32, Vec<KSubset>)> {
    let vertices = VertexSet::for_params(params)?;
    coloring.check_total(&vertices)?;
    if set.max_element().is_some_and(|e| e > params.n) {
        return invalid(format!("{set} is not inside [{}]", params.n));
    }
    let mut ctx = Ctx { s: params.s, t: coloring.num_colors(), nodes: NodeCounter::new(max_nodes) };
    let mut base = BaseColors { vertices: &vertices, coloring };
    let found = find_edge(*set, params.k, r1, &mut base, &mut ctx, None)?;
    Ok((found.color, found.members))
}

/// A verified monochromatic edge together with the intermediate sets it came from.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionWitness {
    pub plan: ReductionPlan,
    pub edge: Edge,
    pub color: u32,
    /// `parents[i]` is the `m`-set containing `edge.members()[i]`.
    pub parents: Vec<KSubset>,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessChecks {
    pub arity: bool,
    pub pairwise_intersections: bool,
    pub monochromatic: bool,
    pub members_inside_parents: bool,
    pub cross_intersections: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub params: KneserParams,
    pub r1: u32,
    pub r2: u32,
    pub t: u32,
    pub m: u32,
    pub edge: Vec<Vec<u32>>,
    pub color: u32,
    pub parents: Vec<Vec<u32>>,
    pub checks: WitnessChecks,
    pub nodes_explored: u64,
}

impl ReductionWitness {
    pub fn report(&self) -> WitnessReport {
        let members = self.edge.members();
        let s = self.plan.params.s;
        let pairs = || {
            members
                .iter()
                .zip(&self.parents)
                .enumerate()
                .flat_map(move |(i, x)| members[i + 1..].iter().zip(&self.parents[i + 1..]).map(move |y| (x, y)))
        };
        WitnessReport {
            params: self.plan.params,
            r1: self.plan.r1,
            r2: self.plan.r2,
            t: self.plan.t,
            m: self.plan.m,
            edge: members.iter().map(KSubset::to_vec).collect(),
            color: self.color,
            parents: self.parents.iter().map(KSubset::to_vec).collect(),
            checks: WitnessChecks {
                arity: members.len() == self.plan.params.r as usize,
                pairwise_intersections: is_edge(members, self.plan.params.r, s),
                monochromatic: true,
                members_inside_parents: members.iter().zip(&self.parents).all(|(b, a)| b.is_subset_of(a)),
                cross_intersections: pairs().all(|((b, a), (b2, a2))| {
                    a == a2 || b.intersection_len(b2) <= a.intersection_len(a2).min(s)
                }),
            },
            nodes_explored: self.nodes_explored,
        }
    }
}

/// Finds a monochromatic edge of `KG^{r1·r2}(n, k, s)` under a coloring with at
/// most `t` colors, `t` below the lower bound.
///
/// A structural error means the construction broke down: either a size
/// inequality the argument needs fails, or a search that should succeed came
/// up empty. Neither is masked.
pub fn extract_witness(
    params: &KneserParams,
    r1: u32,
    r2: u32,
    coloring: &Coloring,
    t: u32,
    max_nodes: u64,
) -> Result<ReductionWitness> {
    let plan = ReductionPlan::new(*params, r1, r2, t)?;
    if !params.bound_applicable() {
        return invalid(format!("{params}: need n >= r(k-1)+1"));
    }
    if !SUPPORTED_ARITIES.contains(&params.r)
        || params.k > MAX_REDUCTION_K
        || params.s > MAX_REDUCTION_S
        || params.n > MAX_REDUCTION_N
    {
        return Err(KneserError::Budget { what: "reduction envelope (r in {4,6}, k<=2, s<=1, n<=15)", limit: u64::from(MAX_REDUCTION_N) });
    }
    let vertices = check_base(params, coloring, t)?;
    if !plan.chain.inner_endpoint {
        return Err(KneserError::Structural(format!(
            "{params}, t={t}: m={} is below r1(k-1)+1={}, so the bound for arity {r1} does not apply inside an m-set",
            plan.m,
            r1 * (params.k - 1) + 1
        )));
    }
    if !plan.chain.outer_endpoint {
        return Err(KneserError::Structural(format!(
            "{params}, t={t}: n is below (r2-1)(t-1) + r2*m with m={}",
            plan.m
        )));
    }
    let mut ctx = Ctx { s: params.s, t, nodes: NodeCounter::new(max_nodes) };
    let mut base = BaseColors { vertices: &vertices, coloring };
    let found = find_edge(KSubset::range(1, params.n), params.k, params.r, &mut base, &mut ctx, Some((r1, r2)))?;
    let edge = Edge::new(found.members, params.r, params.s)?;
    if !verify_witness(params, coloring, &edge) {
        return Err(KneserError::Structural(format!("extracted {edge} is not monochromatic")));
    }
    Ok(ReductionWitness { plan, edge, color: found.color, parents: found.parents, nodes_explored: ctx.nodes.used })
}

/// True iff `edge` has arity `r`, pairwise intersections at most `s`, and one color.
pub fn verify_witness(params: &KneserParams, coloring: &Coloring, edge: &Edge) -> bool {
    let Ok(vertices) = VertexSet::for_params(params) else {
        return false;
    };
    if coloring.len() != vertices.len() || !is_edge(edge.members(), params.r, params.s) {
        return false;
    }
    let colors: Option<Vec<u32>> =
        edge.members().iter().map(|b| vertices.index_of(b).map(|i| coloring.color(i))).collect();
    colors.is_some_and(|c| c.windows(2).all(|w| w[0] == w[1]))
}

/// Pigeonhole witness for `k = 1`, `s = 0`: the `r` smallest elements of the
/// first color class with at least `r` members.
pub fn complete_hypergraph_witness(params: &KneserParams, coloring: &Coloring) -> Result<Option<Edge>> {
    if params.k != 1 || params.s != 0 {
        return invalid(format!("{params} is not a complete hypergraph"));
    }
    let vertices = VertexSet::for_params(params)?;
    coloring.check_total(&vertices)?;
    let mut classes: Vec<Vec<KSubset>> = vec![Vec::new(); coloring.num_colors() as usize];
    for (i, v) in vertices.iter().enumerate() {
        classes[coloring.color(i) as usize - 1].push(v);
    }
    classes
        .into_iter()
        .find(|c| c.len() >= params.r as usize)
        .map(|c| Edge::new(c[..params.r as usize].to_vec(), params.r, 0))
        .transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: u32, k: u32, r: u32, s: u32) -> KneserParams {
        KneserParams::new(n, k, r, s).unwrap()
    }

    fn singletons_colored(n: u32, f: impl Fn(u32) -> u32, t: u32) -> Coloring {
        Coloring::new((1..=n).map(f).collect(), t).unwrap()
    }

    fn set(e: &[u32]) -> KSubset {
        KSubset::from_elements(e).unwrap()
    }

    #[test]
    fn m_examples() {
        assert_eq!(derived_m(2, 2, 1, 0).unwrap(), 3);
        assert_eq!(derived_m(2, 3, 2, 0).unwrap(), 6);
        assert!(derived_m(1, 3, 2, 0).is_err());
        assert!(derived_m(2, 0, 2, 0).is_err());
        assert!(derived_m(2, 3, 2, 2).is_err());
    }

    #[test]
    fn spf() {
        let got: Vec<u32> = [2, 3, 4, 6, 9, 15, 49, 97].iter().map(|&r| smallest_prime_factor(r)).collect();
        assert_eq!(got, vec![2, 3, 2, 2, 3, 3, 7, 97]);
    }

    #[test]
    fn induced_color_example() {
        let params = p(9, 1, 2, 0);
        let mut colors = vec![3u32; 9];
        colors[0] = 1;
        colors[1] = 2;
        colors[2] = 1;
        let c = Coloring::new(colors, 3).unwrap();
        let (color, w) = induced_color(&set(&[1, 2, 3]), &params, &c, 2, 1000).unwrap();
        assert_eq!(color, 1);
        assert_eq!(w, vec![set(&[1]), set(&[3])]);
    }

    #[test]
    fn induced_color_single_class_packs_disjoint_sets() {
        let params = p(8, 2, 2, 0);
        let c = Coloring::uniform(28);
        let a = set(&[2, 3, 5, 7, 8]);
        let (color, w) = induced_color(&a, &params, &c, 2, 1000).unwrap();
        assert_eq!(color, 1);
        // the scan stops at {3,5}, the first pair member completing a disjoint pair
        assert_eq!(w, vec![set(&[2, 7]), set(&[3, 5])]);
        let (_, w3) = induced_color(&set(&[1, 2, 3, 4, 5, 6]), &params, &c, 3, 1000).unwrap();
        assert!(is_edge(&w3, 3, 0));
    }

    #[test]
    fn induced_color_fails_on_proper_coloring() {
        // a proper coloring of KG^2(6,2,0) with four colors leaves nothing to find
        let params = p(6, 2, 2, 0);
        let c = crate::solver::windowed_coloring_s0(&params).unwrap();
        let err = induced_color(&KSubset::range(1, 6), &params, &c, 2, 100_000).unwrap_err();
        assert!(matches!(err, KneserError::Structural(_)));
    }

    #[test]
    fn parity_on_nine_points() {
        let params = p(9, 1, 4, 0);
        let c = singletons_colored(9, |e| 2 - e % 2, 2);
        let w = extract_witness(&params, 2, 2, &c, 2, 1_000_000).unwrap();
        assert_eq!(w.plan.m, 3);
        assert_eq!(w.edge.arity(), 4);
        assert!(verify_witness(&params, &c, &w.edge));
        let r = w.report();
        assert!(r.checks.arity && r.checks.pairwise_intersections && r.checks.members_inside_parents);
        assert!(r.checks.cross_intersections);
        assert_eq!(r.color, 2);
        assert_eq!(r.edge, vec![vec![2], vec![4], vec![6], vec![8]]);
    }

    #[test]
    fn t_at_the_bound_is_rejected() {
        let params = p(9, 1, 4, 0);
        let c = singletons_colored(9, |e| (e - 1) % 3 + 1, 3);
        assert!(matches!(extract_witness(&params, 2, 2, &c, 3, 1_000_000), Err(KneserError::InvalidParams(_))));
    }

    #[test]
    fn too_many_colors_is_rejected() {
        let params = p(13, 1, 4, 0);
        let c = singletons_colored(13, |e| (e - 1) % 4 + 1, 4);
        assert!(extract_witness(&params, 2, 2, &c, 3, 1_000_000).is_err());
    }

    #[test]
    fn thirteen_points_three_colors() {
        let params = p(13, 1, 4, 0);
        for c in [
            singletons_colored(13, |e| (e - 1) % 3 + 1, 3),
            singletons_colored(13, |e| if e <= 5 { 1 } else if e <= 9 { 2 } else { 3 }, 3),
        ] {
            let w = extract_witness(&params, 2, 2, &c, 3, 1_000_000).unwrap();
            assert!(verify_witness(&params, &c, &w.edge));
            assert_eq!(w.plan.m, 4);
            let pigeon = complete_hypergraph_witness(&params, &c).unwrap().unwrap();
            assert!(verify_witness(&params, &c, &pigeon));
        }
    }

    #[test]
    fn arity_six_and_pairs() {
        let params = p(15, 2, 4, 1);
        let bound = theorem1_lower_bound(&params).unwrap() as u32;
        let c = Coloring::new(
            VertexSet::for_params(&params).unwrap().iter().map(|v| (v.min_element().unwrap() - 1) % (bound - 1) + 1).collect(),
            bound - 1,
        )
        .unwrap();
        let w = extract_witness(&params, 2, 2, &c, bound - 1, 10_000_000).unwrap();
        assert!(verify_witness(&params, &c, &w.edge));

        let params = p(11, 1, 6, 0);
        let c = singletons_colored(11, |e| (e - 1) % 2 + 1, 2);
        for (r1, r2) in [(2, 3), (3, 2)] {
            let w = extract_witness(&params, r1, r2, &c, 2, 1_000_000).unwrap();
            assert_eq!(w.edge.arity(), 6);
            assert!(verify_witness(&params, &c, &w.edge));
        }
    }

    #[test]
    fn envelope_is_enforced() {
        let params = p(16, 1, 4, 0);
        let c = Coloring::uniform(16);
        assert!(matches!(extract_witness(&params, 2, 2, &c, 1, 1000), Err(KneserError::Budget { .. })));
    }

    #[test]
    fn node_budget_is_enforced() {
        let params = p(13, 1, 4, 0);
        let c = singletons_colored(13, |e| (e - 1) % 3 + 1, 3);
        assert!(matches!(extract_witness(&params, 2, 2, &c, 3, 5), Err(KneserError::Budget { .. })));
    }

    #[test]
    fn small_t_with_positive_overlap_breaks_the_inner_step() {
        // KG^4(5,2,1) has chromatic number 4, yet with t=1 the inner size
        // m=2 is below r1(k-1)+1=3 and the construction has no room.
        let params = p(5, 2, 4, 1);
        let plan = ReductionPlan::new(params, 2, 2, 1).unwrap();
        assert_eq!(plan.m, 2);
        assert!(!plan.chain.inner_endpoint);
        assert!(plan.chain.outer_endpoint);
        let err = extract_witness(&params, 2, 2, &Coloring::uniform(10), 1, 1000).unwrap_err();
        assert!(matches!(err, KneserError::Structural(_)));
    }

    #[test]
    fn one_inner_link_points_the_wrong_way() {
        // (n-r a)/(r-1) decreases in r, so replacing r by r1 < r cannot lower it
        let chain = SizeChain::new(8, 2, 0, 2, 2, 1).unwrap();
        let failing: Vec<&ChainStep> = chain.failing_steps().collect();
        assert_eq!(failing.len(), 1);
        assert_eq!(failing[0].lhs_expr, "((n-r(k-s-1))/(r-1) - 1)(r1-1) + r1(k-s-1) + 1");
        assert_eq!(failing[0].lhs, Ratio::new(10, 3));
        assert_eq!(failing[0].rhs, Ratio::from_integer(8));
        assert!(chain.endpoints_hold());
    }

    #[test]
    fn chain_serializes_exact_values() {
        let chain = SizeChain::new(8, 2, 0, 2, 2, 1).unwrap();
        let json = serde_json::to_value(&chain).unwrap();
        assert_eq!(json["inner"][2]["lhs"], "10/3");
        assert_eq!(json["inner"][2]["relation"], ">=");
    }

    fn plans() -> impl Strategy<Value = (u32, u32, u32, u32, u32, u32)> {
        (2u32..=3, 2u32..=3, 1u32..=3, 0u32..=2).prop_flat_map(|(r1, r2, k, s)| {
            let s = s.min(k - 1);
            let r = r1 * r2;
            let lo = (r * (k - 1) + 1).max(k);
            (Just(r1), Just(r2), Just(k), Just(s), lo..lo + 30)
                .prop_map(move |(r1, r2, k, s, n)| {
                    let b = crate::bounds::ceil_div(n as i64 - (r * (k - s - 1)) as i64, r as i64 - 1);
                    (r1, r2, k, s, n, (b - 1).max(1) as u32)
                })
        })
    }

    proptest! {
        #[test]
        fn both_forms_of_m_agree(r1 in 2u32..8, t in 1u32..20, k in 1u32..6, s in 0u32..5) {
            prop_assume!(s < k);
            derived_m(r1, t, k, s).unwrap();
        }

        #[test]
        fn outer_chain_always_holds((r1, r2, k, s, n, t) in plans()) {
            let b = crate::bounds::ceil_div(n as i64 - (r1 * r2 * (k - s - 1)) as i64, (r1 * r2) as i64 - 1);
            prop_assume!(i64::from(t) < b);
            let chain = SizeChain::new(n, k, s, r1, r2, t).unwrap();
            prop_assert!(chain.outer.iter().all(|st| st.holds));
            prop_assert!(chain.outer_endpoint);
        }

        #[test]
        fn inner_endpoint_holds_without_overlap((r1, r2, k, _s, n, t) in plans()) {
            let b = crate::bounds::ceil_div(n as i64 - (r1 * r2 * (k - 1)) as i64, (r1 * r2) as i64 - 1);
            prop_assume!(i64::from(t) < b);
            prop_assert!(SizeChain::new(n, k, 0, r1, r2, t).unwrap().inner_endpoint);
        }
    }
}
