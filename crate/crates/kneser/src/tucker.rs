//! Signed vectors over `Z_p ∪ {0}`, the `Z_p` action, the order `⪯`, and the
//! equivariant labelling `λ` built from a coloring of `KG^p(n, k, s)`.
//!
//! The `Z_p`-Tucker lemma says: if `λ : (Z_p ∪ {0})^n \ {0} → Z_p × [m]` is
//! equivariant, agrees in sign on comparable pairs at levels `≤ α`, and never
//! gives pairwise distinct signs along a `p`-chain at one level `> α`, then
//! `α + (m − α)(p − 1) ≥ n`. The lemma is taken as given; this module checks its
//! three hypotheses exhaustively for the concrete `λ` and evaluates the conclusion.
//!
//! Group elements `ω^e` are stored as exponents `e ∈ 1..=p`; `0` stands for the
//! fixed zero symbol.

use serde::Serialize;

use crate::bounds::ceil_div;
use crate::coloring::Coloring;
use crate::error::{invalid, KneserError, Result};
use crate::hypergraph::is_edge;
use crate::params::KneserParams;
use crate::solver::{is_proper, SolveBudget};
use crate::subset::{KSubset, VertexSet};

/// Default cap on enumerated vectors, pairs or chains per check.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 5_000_000;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// An element of `(Z_p ∪ {0})^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SignedVector {
    #[serde(skip)]
    p: u8,
    entries: Vec<u8>,
}

impl SignedVector {
    pub fn new(p: u32, entries: Vec<u8>) -> Result<Self> {
        if !is_prime(p) || p > 61 {
            return invalid(format!("p={p} must be a prime below 62"));
        }
        if entries.len() > 64 {
            return invalid("vectors longer than 64 are not supported");
        }
        if let Some(&e) = entries.iter().find(|&&e| u32::from(e) > p) {
            return invalid(format!("entry ω^{e} is not in Z_{p}"));
        }
        Ok(Self { p: p as u8, entries })
    }

    pub fn p(&self) -> u32 {
        u32::from(self.p)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at 1-based `position`: `0` or an exponent in `1..=p`.
    pub fn entry(&self, position: usize) -> u8 {
        self.entries[position - 1]
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// `X_i`: positions holding `ω^i` (`i ≥ 1`) or zero (`i = 0`), as a subset of `[n]`.
    pub fn class(&self, i: u8) -> KSubset {
        let mask = self
            .entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == i)
            .fold(0u64, |m, (j, _)| m | 1u64 << j);
        KSubset::from_mask(mask)
    }

    /// `|X_0|, |X_1|, …, |X_p|`.
    pub fn class_sizes(&self) -> Vec<u32> {
        let mut sizes = vec![0u32; usize::from(self.p) + 1];
        for &e in &self.entries {
            sizes[usize::from(e)] += 1;
        }
        sizes
    }

    /// Decodes a flat index in `0..(p+1)^n`; position 1 is the most significant digit.
    fn from_index(p: u8, n: usize, mut index: u64) -> Self {
        let base = u64::from(p) + 1;
        let mut entries = vec![0u8; n];
        for slot in entries.iter_mut().rev() {
            *slot = (index % base) as u8;
            index /= base;
        }
        Self { p, entries }
    }

    fn index(&self) -> u64 {
        let base = u64::from(self.p) + 1;
        self.entries.iter().fold(0u64, |acc, &e| acc * base + u64::from(e))
    }
}

impl std::fmt::Display for SignedVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|&e| if e == 0 { "0".to_string() } else { format!("ω^{e}") })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `ω^a · ω^b = ω^((a+b−1) mod p + 1)`.
fn rotate(e: u8, i: u8, p: u8) -> u8 {
    ((u16::from(e) + u16::from(i) - 1) % u16::from(p) + 1) as u8
}

/// `ω^i · x`: multiplies every nonzero entry by `ω^i`; zeros stay fixed.
pub fn omega_action(i: u32, x: &SignedVector) -> Result<SignedVector> {
    if i == 0 || i > x.p() {
        return invalid(format!("exponent {i} outside 1..={}", x.p()));
    }
    let entries = x
        .entries
        .iter()
        .map(|&e| if e == 0 { 0 } else { rotate(e, i as u8, x.p) })
        .collect();
    Ok(SignedVector { p: x.p, entries })
}

/// `x ⪯ y` iff `X_i ⊆ Y_i` for every `i ≥ 1`.
pub fn preceq(x: &SignedVector, y: &SignedVector) -> bool {
    x.p == y.p
        && x.len() == y.len()
        && x.entries.iter().zip(&y.entries).all(|(&a, &b)| a == 0 || a == b)
}

/// The `l` smallest elements of `set`.
pub fn first_set(set: &KSubset, l: u32) -> Result<KSubset> {
    if l > set.len() {
        return invalid(format!("cannot take {l} elements of {set}"));
    }
    let mask = set.elements().take(l as usize).fold(0u64, |m, e| m | 1u64 << (e - 1));
    Ok(KSubset::from_mask(mask))
}

/// `(λ₁(x), λ₂(x))`: a sign exponent in `1..=p` and a level in `1..=m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LambdaValue {
    pub sign: u8,
    pub level: u32,
}

/// Which branch of `λ` produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum LambdaCase {
    /// Every nonzero class has at most `k − s − 1` elements.
    Small,
    /// Built from the `k`-set `F = f_t(X_j) ∪ f_{k−t}(X_0)`.
    Large { class: u8, f_set: KSubset },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LambdaEval {
    pub value: LambdaValue,
    pub case: LambdaCase,
}

/// A prime `p`, a coloring of `KG^p(n, k, s)` with `C` colors, `α = p(k−s−1)`
/// and `m = α + C`.
#[derive(Debug, Clone)]
pub struct TuckerInstance {
    p: u32,
    params: KneserParams,
    coloring: Coloring,
    vertices: VertexSet,
    alpha: u32,
    m: u32,
    proper: bool,
}

impl TuckerInstance {
    /// Checks `p` is prime, `r = p`, `n ≥ p(k−1)+1`, and that the coloring is
    /// proper. With `diagnostic` set an improper coloring is accepted, so the
    /// checks can exhibit what fails.
    pub fn new(
        p: u32,
        params: KneserParams,
        coloring: Coloring,
        budget: &SolveBudget,
        diagnostic: bool,
    ) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("p={p} is not prime"));
        }
        if params.r != p {
            return invalid(format!("{params} does not have r = p = {p}"));
        }
        if !params.bound_applicable() {
            return invalid(format!("{params}: need n >= p(k-1)+1"));
        }
        if params.n > 20 {
            return invalid("signed-vector enumeration supports n <= 20");
        }
        let vertices = VertexSet::for_params(&params)?;
        coloring.check_total(&vertices)?;
        let check = is_proper(&params, &coloring, budget)?;
        if !check.proper && !diagnostic {
            return invalid(format!(
                "coloring is not proper: monochromatic edge {}",
                check.witness.expect("witness for improper coloring")
            ));
        }
        let alpha = p * (params.k - params.s - 1);
        let m = alpha + coloring.num_colors();
        Ok(Self { p, params, coloring, vertices, alpha, m, proper: check.proper })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn params(&self) -> &KneserParams {
        &self.params
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn num_colors(&self) -> u32 {
        self.coloring.num_colors()
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }

    pub fn color_of(&self, set: &KSubset) -> Option<u32> {
        self.vertices.index_of(set).map(|i| self.coloring.color(i))
    }

    pub fn lambda(&self, x: &SignedVector) -> Result<LambdaValue> {
        Ok(self.lambda_detail(x)?.value)
    }

    /// Evaluates `λ(x)` and reports which branch fired.
    pub fn lambda_detail(&self, x: &SignedVector) -> Result<LambdaEval> {
        let KneserParams { n, k, s, .. } = self.params;
        if x.p() != self.p || x.len() != n as usize {
            return invalid(format!("vector {x} does not live in (Z_{} ∪ {{0}})^{n}", self.p));
        }
        let (_, first) = x
            .entries
            .iter()
            .enumerate()
            .find(|(_, &e)| e != 0)
            .ok_or_else(|| KneserError::InvalidParams("λ is undefined at the zero vector".into()))?;
        let sizes = x.class_sizes();
        let small = k - s - 1;
        if sizes[1..].iter().all(|&c| c <= small) {
            let level = sizes[1..].iter().sum();
            return Ok(LambdaEval { value: LambdaValue { sign: *first, level }, case: LambdaCase::Small });
        }
        let zeros = sizes[0];
        let j = x
            .entries
            .iter()
            .copied()
            .find(|&e| e != 0 && sizes[usize::from(e)] >= k - s && sizes[usize::from(e)] + zeros >= k)
            .ok_or_else(|| {
                KneserError::Structural(format!(
                    "no class of {x} qualifies for the large case; n >= p(k-1)+1 must be violated"
                ))
            })?;
        let big = x.class(j);
        let t = k.min(big.len());
        let f_set = first_set(&big, t)?.union(&first_set(&x.class(0), k - t)?);
        if f_set.len() != k || !f_set.is_subset_of(&big.union(&x.class(0))) {
            return Err(KneserError::Structural(format!("F = {f_set} is malformed for {x}")));
        }
        let color = self
            .color_of(&f_set)
            .ok_or_else(|| KneserError::Structural(format!("{f_set} is not a vertex")))?;
        Ok(LambdaEval {
            value: LambdaValue { sign: j, level: self.alpha + color },
            case: LambdaCase::Large { class: j, f_set },
        })
    }

    fn vector_count(&self) -> u64 {
        (u64::from(self.p) + 1).pow(self.params.n)
    }

    /// `λ` at every index of `0..(p+1)^n` (`None` at the zero vector).
    fn lambda_table(&self, limit: u64) -> Result<Vec<Option<LambdaEval>>> {
        let count = self.vector_count();
        if count > limit {
            return Err(KneserError::Budget { what: "signed vectors", limit });
        }
        let n = self.params.n as usize;
        (0..count)
            .map(|idx| {
                let x = SignedVector::from_index(self.p as u8, n, idx);
                if x.is_zero() {
                    Ok(None)
                } else {
                    self.lambda_detail(&x).map(Some)
                }
            })
            .collect()
    }
}

/// A failure of `λ(ω^i·x) = (ω^i·λ₁(x), λ₂(x))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivarianceViolation {
    pub x: SignedVector,
    pub exponent: u32,
    pub lambda_of_rotated: LambdaValue,
    pub rotated_lambda: LambdaValue,
}

/// A pair `x ⪯ y` with equal levels `≤ α` but different signs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairViolation {
    pub x: SignedVector,
    pub y: SignedVector,
    pub lambda_x: LambdaValue,
    pub lambda_y: LambdaValue,
}

/// A chain `x¹ ⪯ ⋯ ⪯ xᵖ` at one level `> α` with pairwise distinct signs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainViolation {
    pub chain: Vec<SignedVector>,
    pub values: Vec<LambdaValue>,
    /// The `k`-sets behind each label; they share one color.
    pub f_sets: Vec<KSubset>,
    /// Whether the `F`-sets pairwise meet in at most `s` elements, i.e. form an edge.
    pub f_sets_form_edge: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome<W> {
    pub holds: bool,
    pub checked: u64,
    pub witness: Option<W>,
}

/// Exhaustive check of equivariance over all nonzero `x` and all `i ∈ 1..=p`.
pub fn verify_equivariance(
    instance: &TuckerInstance,
    limit: u64,
) -> Result<CheckOutcome<EquivarianceViolation>> {
    let table = instance.lambda_table(limit)?;
    verify_equivariance_with(instance, &table, |x| instance.lambda(x))
}

fn verify_equivariance_with(
    instance: &TuckerInstance,
    table: &[Option<LambdaEval>],
    lambda: impl Fn(&SignedVector) -> Result<LambdaValue>,
) -> Result<CheckOutcome<EquivarianceViolation>> {
    let p = instance.p as u8;
    let n = instance.params.n as usize;
    let mut checked = 0;
    for (idx, entry) in table.iter().enumerate() {
        if entry.is_none() {
            continue;
        }
        let x = SignedVector::from_index(p, n, idx as u64);
        let base = lambda(&x)?;
        for i in 1..=p {
            checked += 1;
            let rotated = omega_action(u32::from(i), &x)?;
            let lhs = lambda(&rotated)?;
            let rhs = LambdaValue { sign: rotate(base.sign, i, p), level: base.level };
            if lhs != rhs {
                return Ok(CheckOutcome {
                    holds: false,
                    checked,
                    witness: Some(EquivarianceViolation {
                        x,
                        exponent: u32::from(i),
                        lambda_of_rotated: lhs,
                        rotated_lambda: rhs,
                    }),
                });
            }
        }
    }
    Ok(CheckOutcome { holds: true, checked, witness: None })
}

/// Equivariance check against an arbitrary labelling; lets tests confirm the
/// checker rejects a broken map.
pub fn verify_equivariance_of(
    instance: &TuckerInstance,
    limit: u64,
    lambda: impl Fn(&SignedVector) -> Result<LambdaValue>,
) -> Result<CheckOutcome<EquivarianceViolation>> {
    let table = instance.lambda_table(limit)?;
    verify_equivariance_with(instance, &table, lambda)
}

/// All comparable pairs `x ⪯ y` with `x ≠ 0`: each coordinate is one of
/// `(0,0)`, `(0,v)` or `(v,v)`, giving `(2p+1)^n` patterns.
pub fn verify_condition2(instance: &TuckerInstance, limit: u64) -> Result<CheckOutcome<PairViolation>> {
    let p = instance.p as u8;
    let n = instance.params.n as usize;
    let patterns = (2 * u64::from(p) + 1).pow(n as u32);
    if patterns > limit {
        return Err(KneserError::Budget { what: "comparable pairs", limit });
    }
    let table = instance.lambda_table(limit)?;
    let base = 2 * u64::from(p) + 1;
    let mut checked = 0;
    let mut xs = vec![0u8; n];
    let mut ys = vec![0u8; n];
    for pat in 0..patterns {
        let mut rest = pat;
        for j in (0..n).rev() {
            let d = (rest % base) as u8;
            rest /= base;
            (xs[j], ys[j]) = match d {
                0 => (0, 0),
                d if d <= p => (0, d),
                d => (d - p, d - p),
            };
        }
        let x = SignedVector { p, entries: xs.clone() };
        if x.is_zero() {
            continue;
        }
        let y = SignedVector { p, entries: ys.clone() };
        checked += 1;
        let lx = table[x.index() as usize].expect("nonzero").value;
        let ly = table[y.index() as usize].expect("nonzero").value;
        if lx.level == ly.level && lx.level <= instance.alpha && lx.sign != ly.sign {
            return Ok(CheckOutcome {
                holds: false,
                checked,
                witness: Some(PairViolation { x, y, lambda_x: lx, lambda_y: ly }),
            });
        }
    }
    Ok(CheckOutcome { holds: true, checked, witness: None })
}

/// All chains `x¹ ⪯ ⋯ ⪯ xᵖ` with `x¹ ≠ 0`: each coordinate is either zero
/// throughout or takes a value `v` from chain index `a` onward, giving
/// `(p²+1)^n` patterns.
///
/// Checks that a chain at a common level `≥ α+1` never carries `p` pairwise
/// distinct signs. (The lemma speaks of the sign values not being "pairwise
/// disjoint"; for single group elements that means not pairwise distinct.)
pub fn verify_condition3(instance: &TuckerInstance, limit: u64) -> Result<CheckOutcome<ChainViolation>> {
    let p = instance.p as u8;
    let n = instance.params.n as usize;
    let base = u64::from(p) * u64::from(p) + 1;
    let patterns = base.pow(n as u32);
    if patterns > limit {
        return Err(KneserError::Budget { what: "chains", limit });
    }
    if instance.m == instance.alpha {
        return Ok(CheckOutcome { holds: true, checked: 0, witness: None });
    }
    let table = instance.lambda_table(limit)?;
    let vbase = u64::from(p) + 1;
    let mut checked = 0;
    let mut idx = vec![0u64; usize::from(p)];
    let mut digits = vec![0u64; n];
    for pat in 0..patterns {
        let mut rest = pat;
        for d in digits.iter_mut().rev() {
            *d = rest % base;
            rest /= base;
        }
        // x¹ must be nonzero: some coordinate appears at chain index 1
        if !digits.iter().any(|&d| d != 0 && (d - 1) / u64::from(p) == 0) {
            continue;
        }
        for (a, slot) in idx.iter_mut().enumerate() {
            *slot = digits.iter().fold(0u64, |acc, &d| {
                let e = if d != 0 && ((d - 1) / u64::from(p)) as usize <= a {
                    (d - 1) % u64::from(p) + 1
                } else {
                    0
                };
                acc * vbase + e
            });
        }
        checked += 1;
        let first = table[idx[0] as usize].expect("nonzero").value;
        if first.level <= instance.alpha {
            continue;
        }
        let values: Vec<LambdaValue> =
            idx.iter().map(|&i| table[i as usize].expect("nonzero").value).collect();
        if values.iter().any(|v| v.level != first.level) {
            continue;
        }
        let mut signs: Vec<u8> = values.iter().map(|v| v.sign).collect();
        signs.sort_unstable();
        signs.dedup();
        if signs.len() == usize::from(p) {
            let chain: Vec<SignedVector> = idx
                .iter()
                .map(|&i| SignedVector::from_index(p, n, i))
                .collect();
            let f_sets: Vec<KSubset> = idx
                .iter()
                .map(|&i| match table[i as usize].expect("nonzero").case {
                    LambdaCase::Large { f_set, .. } => f_set,
                    LambdaCase::Small => unreachable!("levels above alpha come from the large case"),
                })
                .collect();
            let f_sets_form_edge = is_edge(&f_sets, instance.p, instance.params.s);
            return Ok(CheckOutcome {
                holds: false,
                checked,
                witness: Some(ChainViolation { chain, values, f_sets, f_sets_form_edge }),
            });
        }
    }
    Ok(CheckOutcome { holds: true, checked, witness: None })
}

/// The lemma's conclusion `α + (m − α)(p − 1) ≥ n`, with the color bound it implies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    /// `⌈(n − α)/(p − 1)⌉`, the least `m − α` compatible with the inequality.
    pub implied_min_colors: i64,
}

pub fn conclusion_check(alpha: u32, m: u32, p: u32, n: u32) -> Result<Conclusion> {
    if m < alpha {
        return invalid(format!("need m >= alpha, got m={m}, alpha={alpha}"));
    }
    if !is_prime(p) {
        return invalid(format!("p={p} is not prime"));
    }
    let (alpha, m, p, n) = (i64::from(alpha), i64::from(m), i64::from(p), i64::from(n));
    let lhs = alpha + (m - alpha) * (p - 1);
    Ok(Conclusion { lhs, rhs: n, holds: lhs >= n, implied_min_colors: ceil_div(n - alpha, p - 1) })
}

/// Everything the verifier knows about one instance.
#[derive(Debug, Clone, Serialize)]
pub struct TuckerReport {
    pub p: u32,
    pub n: u32,
    pub k: u32,
    pub s: u32,
    #[serde(rename = "C")]
    pub colors: u32,
    pub alpha: u32,
    pub m: u32,
    pub coloring_proper: bool,
    pub equivariance: Verdict,
    pub cond2: Verdict,
    pub cond3: Verdict,
    pub conclusion: Conclusion,
    pub witness: Option<serde_json::Value>,
    pub vectors_enumerated: u64,
    pub pairs_enumerated: u64,
    pub chains_enumerated: u64,
    pub note: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl TuckerReport {
    pub fn all_conditions_pass(&self) -> bool {
        [self.equivariance, self.cond2, self.cond3].iter().all(|v| *v == Verdict::Pass)
    }
}

pub const CONDITION3_NOTE: &str =
    "condition 3 is checked as: the p sign values along the chain are not pairwise distinct";

/// Runs all three checks and the conclusion. The first failing check supplies the witness.
pub fn verify_all(instance: &TuckerInstance, limit: u64) -> Result<TuckerReport> {
    let eq = verify_equivariance(instance, limit)?;
    let c2 = verify_condition2(instance, limit)?;
    let c3 = verify_condition3(instance, limit)?;
    let KneserParams { n, k, s, .. } = instance.params;
    let conclusion = conclusion_check(instance.alpha, instance.m, instance.p, n)?;
    let to_json = |v: serde_json::Result<serde_json::Value>| v.ok();
    let witness = if let Some(w) = &eq.witness {
        to_json(serde_json::to_value(w))
    } else if let Some(w) = &c2.witness {
        to_json(serde_json::to_value(w))
    } else if let Some(w) = &c3.witness {
        to_json(serde_json::to_value(w))
    } else {
        None
    };
    Ok(TuckerReport {
        p: instance.p,
        n,
        k,
        s,
        colors: instance.num_colors(),
        alpha: instance.alpha,
        m: instance.m,
        coloring_proper: instance.proper,
        equivariance: eq.holds.into(),
        cond2: c2.holds.into(),
        cond3: c3.holds.into(),
        conclusion,
        witness,
        vectors_enumerated: instance.vector_count() - 1,
        pairs_enumerated: c2.checked,
        chains_enumerated: c3.checked,
        note: CONDITION3_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::windowed_coloring_s0;

    fn v(p: u32, e: &[u8]) -> SignedVector {
        SignedVector::new(p, e.to_vec()).unwrap()
    }

    fn set(e: &[u32]) -> KSubset {
        KSubset::from_elements(e).unwrap()
    }

    fn petersen_instance() -> TuckerInstance {
        let params = KneserParams::new(5, 2, 2, 0).unwrap();
        let c = windowed_coloring_s0(&params).unwrap();
        TuckerInstance::new(2, params, c, &SolveBudget::default(), false).unwrap()
    }

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn action_examples() {
        assert_eq!(omega_action(1, &v(3, &[3, 0, 1])).unwrap(), v(3, &[1, 0, 2]));
        let x = v(5, &[1, 0, 4, 5, 2]);
        assert_eq!(omega_action(5, &x).unwrap(), x);
        for i in 1..=5 {
            assert_eq!(omega_action(i, &x).unwrap().class(0), x.class(0));
        }
        assert!(omega_action(0, &x).is_err());
        assert!(omega_action(6, &x).is_err());
    }

    #[test]
    fn order_examples() {
        let x = v(2, &[0, 1, 0]);
        assert!(preceq(&x, &x));
        assert!(preceq(&x, &v(2, &[2, 1, 0])));
        assert!(!preceq(&v(2, &[1, 0, 0]), &v(2, &[2, 1, 0])));
    }

    #[test]
    fn first_set_examples() {
        let x = set(&[3, 5, 9]);
        assert_eq!(first_set(&x, 2).unwrap(), set(&[3, 5]));
        assert_eq!(first_set(&x, 0).unwrap(), KSubset::EMPTY);
        assert_eq!(first_set(&x, 3).unwrap(), x);
        assert!(first_set(&x, 4).is_err());
    }

    #[test]
    fn classes() {
        let x = v(2, &[2, 1, 1, 0, 0]);
        assert_eq!(x.class(0), set(&[4, 5]));
        assert_eq!(x.class(1), set(&[2, 3]));
        assert_eq!(x.class(2), set(&[1]));
        assert_eq!(x.class_sizes(), vec![2, 2, 1]);
        assert_eq!(x.to_string(), "(ω^2,ω^1,ω^1,0,0)");
    }

    #[test]
    fn lambda_small_case() {
        let inst = petersen_instance();
        let e = inst.lambda_detail(&v(2, &[0, 1, 0, 0, 0])).unwrap();
        assert_eq!(e.value, LambdaValue { sign: 1, level: 1 });
        assert_eq!(e.case, LambdaCase::Small);
        assert!(inst.lambda(&v(2, &[0; 5])).is_err());
    }

    #[test]
    fn lambda_large_case() {
        let inst = petersen_instance();
        let e = inst.lambda_detail(&v(2, &[2, 1, 1, 0, 0])).unwrap();
        let c = inst.color_of(&set(&[2, 3])).unwrap();
        assert_eq!(e.value, LambdaValue { sign: 1, level: 2 + c });
        assert_eq!(e.case, LambdaCase::Large { class: 1, f_set: set(&[2, 3]) });
    }

    #[test]
    fn lambda_when_k_minus_s_is_one() {
        let params = KneserParams::new(4, 2, 2, 1).unwrap();
        let c = Coloring::new((1..=6).collect(), 6).unwrap();
        let inst = TuckerInstance::new(2, params, c, &SolveBudget::default(), false).unwrap();
        assert_eq!(inst.alpha(), 0);
        let e = inst.lambda_detail(&v(2, &[1, 0, 0, 0])).unwrap();
        assert_eq!(e.case, LambdaCase::Large { class: 1, f_set: set(&[1, 2]) });
        assert_eq!(e.value, LambdaValue { sign: 1, level: 1 });
    }

    #[test]
    fn instance_rejections() {
        let params = KneserParams::new(5, 2, 2, 0).unwrap();
        let b = SolveBudget::default();
        assert!(TuckerInstance::new(2, params, Coloring::uniform(10), &b, false).is_err());
        assert!(TuckerInstance::new(2, params, Coloring::uniform(10), &b, true).is_ok());
        assert!(TuckerInstance::new(4, params, Coloring::uniform(10), &b, true).is_err());
        assert!(TuckerInstance::new(3, params, Coloring::uniform(10), &b, true).is_err());
        let params = KneserParams::new(2, 2, 2, 0).unwrap();
        assert!(TuckerInstance::new(2, params, Coloring::uniform(1), &b, true).is_err());
    }

    #[test]
    fn broken_labelling_is_caught() {
        let inst = petersen_instance();
        let out = verify_equivariance_of(&inst, 1_000_000, |x| {
            let value = inst.lambda(x)?;
            Ok(LambdaValue { sign: 1, ..value })
        })
        .unwrap();
        assert!(!out.holds);
        assert_eq!(out.witness.unwrap().exponent, 1);
    }

    #[test]
    fn conclusion_examples() {
        let c = conclusion_check(2, 5, 2, 5).unwrap();
        assert!(c.holds);
        assert_eq!((c.lhs, c.rhs, c.implied_min_colors), (5, 5, 3));
        assert!(!conclusion_check(2, 4, 2, 5).unwrap().holds);
        for n in 1..20 {
            assert!(conclusion_check(0, n, 2, n).unwrap().holds);
        }
        assert!(conclusion_check(3, 2, 2, 5).is_err());
        // m = alpha is allowed
        assert!(!conclusion_check(4, 4, 2, 5).unwrap().holds);
    }

    #[test]
    fn petersen_passes_everything() {
        let inst = petersen_instance();
        let report = verify_all(&inst, 1_000_000).unwrap();
        assert!(report.all_conditions_pass());
        assert_eq!(report.vectors_enumerated, 242);
        assert_eq!(report.conclusion.lhs, 5);
        assert!(report.conclusion.holds);
        assert!(report.witness.is_none());
    }

    #[test]
    fn identical_chain_members_never_violate() {
        // a chain x ⪯ x shares its sign trivially; the enumeration includes such chains
        let inst = petersen_instance();
        let x = v(2, &[1, 1, 0, 0, 2]);
        let l = inst.lambda(&x).unwrap();
        assert_eq!(l, inst.lambda(&x).unwrap());
    }

    #[test]
    fn monochromatic_coloring_breaks_condition3() {
        let params = KneserParams::new(5, 2, 2, 0).unwrap();
        let inst = TuckerInstance::new(2, params, Coloring::uniform(10), &SolveBudget::default(), true).unwrap();
        assert!(!inst.is_proper());
        let out = verify_condition3(&inst, 1_000_000).unwrap();
        assert!(!out.holds);
        let w = out.witness.unwrap();
        assert!(w.f_sets_form_edge);
        assert_eq!(w.f_sets[0].intersection_len(&w.f_sets[1]), 0);
        assert!(preceq(&w.chain[0], &w.chain[1]));
    }

    proptest::proptest! {
        #[test]
        fn action_composes_additively(
            p in proptest::sample::select(vec![2u32, 3, 5, 7]),
            raw in proptest::collection::vec(0u8..=7, 1..10),
            i in 1u32..=7,
            j in 1u32..=7,
        ) {
            let i = (i - 1) % p + 1;
            let j = (j - 1) % p + 1;
            let x = v(p, &raw.iter().map(|&e| e % (p as u8 + 1)).collect::<Vec<_>>());
            let both = omega_action(i, &omega_action(j, &x).unwrap()).unwrap();
            let sum = (i + j - 1) % p + 1;
            proptest::prop_assert_eq!(both, omega_action(sum, &x).unwrap());
        }
    }

    #[test]
    fn preceq_is_a_partial_order() {
        // exhaustive over (p+1)^n <= 10^5 for small cases
        for (p, n) in [(2u32, 4usize), (3, 3), (2, 3)] {
            let count = (u64::from(p) + 1).pow(n as u32);
            let all: Vec<SignedVector> =
                (0..count).map(|i| SignedVector::from_index(p as u8, n, i)).collect();
            for x in &all {
                assert!(preceq(x, x));
                for y in &all {
                    if preceq(x, y) && preceq(y, x) {
                        assert_eq!(x, y);
                    }
                    if preceq(x, y) {
                        for z in &all {
                            if preceq(y, z) {
                                assert!(preceq(x, z));
                            }
                        }
                    }
                }
            }
        }
    }
}
