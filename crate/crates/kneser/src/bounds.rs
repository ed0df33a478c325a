//! Closed-form lower bounds on `χ(KG^r(n, k, s))` and their side-by-side comparison.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::params::KneserParams;
use crate::solver::{exact_chromatic, SolveBudget, SolveStatus};

/// `⌈num / den⌉` for `den > 0` and any integer numerator.
pub fn ceil_div(num: i64, den: i64) -> i64 {
    assert!(den > 0, "ceil_div needs a positive denominator");
    num.div_euclid(den) + i64::from(num.rem_euclid(den) != 0)
}

fn generalized_bound(n: i64, k: i64, r: i64, s: i64) -> i64 {
    ceil_div(n - r * (k - s - 1), r - 1)
}

/// `⌈(n − r(k−s−1)) / (r−1)⌉`, valid for `n >= r(k−1)+1`.
pub fn theorem1_lower_bound(params: &KneserParams) -> Result<i64> {
    if !params.bound_applicable() {
        return invalid(format!("{params}: need n >= r(k-1)+1"));
    }
    let KneserParams { n, k, r, s } = *params;
    Ok(generalized_bound(n.into(), k.into(), r.into(), s.into()))
}

/// The Alon–Frankl–Lovász bound `⌈(n − r(k−1)) / (r−1)⌉` for `s = 0`, `n >= rk`.
pub fn afl_lower_bound(params: &KneserParams) -> Result<i64> {
    let KneserParams { n, k, r, s } = *params;
    if s != 0 {
        return invalid(format!("{params}: the classical bound needs s = 0"));
    }
    if u64::from(n) < u64::from(r) * u64::from(k) {
        return invalid(format!("{params}: the classical bound needs n >= rk"));
    }
    Ok(generalized_bound(n.into(), k.into(), r.into(), 0))
}

/// The classical bound of the unpadded source `KG^r(n−s, k−s, 0)`, transported
/// through the padding homomorphism: `⌈((n−s) − r(k−s−1)) / (r−1)⌉`.
pub fn homomorphism_lower_bound(params: &KneserParams) -> Result<i64> {
    let KneserParams { n, k, r, s } = *params;
    if u64::from(n - s) < u64::from(r) * u64::from(k - s) {
        return invalid(format!("{params}: need n - s >= r(k - s)"));
    }
    let source = KneserParams::new(n - s, k - s, r, 0)?;
    afl_lower_bound(&source)
}

/// Outcome of the optional exact solve inside [`compare_bounds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverStatus {
    ChiFound,
    BudgetExceeded,
    Skipped,
}

impl SolverStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverStatus::ChiFound => "chi_found",
            SolverStatus::BudgetExceeded => "budget_exceeded",
            SolverStatus::Skipped => "skipped",
        }
    }
}

impl std::str::FromStr for SolverStatus {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "chi_found" => Ok(SolverStatus::ChiFound),
            "budget_exceeded" => Ok(SolverStatus::BudgetExceeded),
            "skipped" => Ok(SolverStatus::Skipped),
            other => Err(format!("unknown solver status {other:?}")),
        }
    }
}

/// All bound values for one parameter set. Absent values mean the formula's
/// precondition does not hold (or the solver was skipped / ran out of budget).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u32,
    pub k: u32,
    pub r: u32,
    pub s: u32,
    pub theorem1: Option<i64>,
    pub afl_eq1: Option<i64>,
    pub hom_eq3: Option<i64>,
    pub exact_chi: Option<u32>,
    pub tight: Option<bool>,
    pub solver_status: SolverStatus,
}

impl BoundReport {
    pub fn params(&self) -> KneserParams {
        KneserParams { n: self.n, k: self.k, r: self.r, s: self.s }
    }

    /// `(n, k) = (rN, N)`, the shape in which the two lower bounds read
    /// `r(s+1)/(r−1)` and `r(s+1)/(r−1) − s/(r−1)`.
    pub fn is_balanced_shape(&self) -> bool {
        self.n == self.r * self.k
    }

    /// `theorem1 − hom_eq3` when both are defined.
    pub fn improvement(&self) -> Option<i64> {
        Some(self.theorem1? - self.hom_eq3?)
    }

    /// Fills the exact chromatic number from a known value.
    pub fn with_exact(mut self, chi: Option<u32>, status: SolverStatus) -> Self {
        self.exact_chi = chi;
        self.solver_status = status;
        self.tight = match (chi, self.theorem1) {
            (Some(c), Some(t)) => Some(i64::from(c) == t),
            _ => None,
        };
        self
    }
}

/// Evaluates every bound; runs the exact solver when a budget is given.
/// Budget exhaustion leaves `exact_chi` empty rather than failing.
pub fn compare_bounds(params: &KneserParams, budget: Option<&SolveBudget>) -> BoundReport {
    let report = BoundReport {
        n: params.n,
        k: params.k,
        r: params.r,
        s: params.s,
        theorem1: theorem1_lower_bound(params).ok(),
        afl_eq1: afl_lower_bound(params).ok(),
        hom_eq3: homomorphism_lower_bound(params).ok(),
        exact_chi: None,
        tight: None,
        solver_status: SolverStatus::Skipped,
    };
    match budget {
        None => report,
        Some(budget) => match exact_chromatic(params, budget) {
            Ok(res) if res.status == SolveStatus::ChiFound => {
                report.with_exact(res.chi, SolverStatus::ChiFound)
            }
            _ => report.with_exact(None, SolverStatus::BudgetExceeded),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, k: u32, r: u32, s: u32) -> KneserParams {
        KneserParams::new(n, k, r, s).unwrap()
    }

    #[test]
    fn ceiling_division() {
        assert_eq!(ceil_div(7, 2), 4);
        assert_eq!(ceil_div(6, 2), 3);
        assert_eq!(ceil_div(0, 3), 0);
        assert_eq!(ceil_div(-1, 3), 0);
        assert_eq!(ceil_div(-3, 3), -1);
        assert_eq!(ceil_div(-4, 3), -1);
        // against the rational definition
        for num in -50i64..=50 {
            for den in 1i64..=9 {
                let c = ceil_div(num, den);
                assert!(c * den >= num && (c - 1) * den < num, "{num}/{den}");
            }
        }
    }

    #[test]
    fn theorem1_examples() {
        assert_eq!(theorem1_lower_bound(&p(6, 3, 2, 1)).unwrap(), 4);
        assert_eq!(theorem1_lower_bound(&p(5, 2, 2, 0)).unwrap(), 3);
        assert_eq!(theorem1_lower_bound(&p(9, 1, 4, 0)).unwrap(), 3);
        for big_n in 2..=10u32 {
            for s in 0..big_n {
                let b = theorem1_lower_bound(&p(2 * big_n, big_n, 2, s)).unwrap();
                assert_eq!(b, 2 * i64::from(s) + 2);
            }
        }
        assert!(theorem1_lower_bound(&p(4, 2, 4, 0)).is_err());
    }

    #[test]
    fn afl_examples() {
        assert_eq!(afl_lower_bound(&p(6, 2, 2, 0)).unwrap(), 4);
        assert_eq!(afl_lower_bound(&p(7, 2, 3, 0)).unwrap(), 2);
        for r in 2..=6u32 {
            for k in 2..=6u32 {
                if r * k <= 64 {
                    assert_eq!(afl_lower_bound(&p(r * k, k, r, 0)).unwrap(), 2);
                }
            }
        }
        assert!(afl_lower_bound(&p(6, 2, 2, 1)).is_err());
        assert!(afl_lower_bound(&p(5, 2, 3, 0)).is_err());
    }

    #[test]
    fn homomorphism_examples() {
        assert_eq!(homomorphism_lower_bound(&p(6, 3, 2, 1)).unwrap(), 3);
        assert_eq!(homomorphism_lower_bound(&p(8, 3, 2, 1)).unwrap(), 5);
        assert_eq!(
            homomorphism_lower_bound(&p(6, 2, 2, 0)).unwrap(),
            afl_lower_bound(&p(6, 2, 2, 0)).unwrap()
        );
        for big_n in 2..=10u32 {
            for s in 0..big_n {
                let b = homomorphism_lower_bound(&p(2 * big_n, big_n, 2, s)).unwrap();
                assert_eq!(b, i64::from(s) + 2);
            }
        }
        assert!(homomorphism_lower_bound(&p(4, 3, 2, 1)).is_err());
    }

    fn grid() -> impl Iterator<Item = KneserParams> {
        (1..=24u32).flat_map(|n| {
            (1..=8u32).flat_map(move |k| {
                (2..=5u32).flat_map(move |r| {
                    (0..k).filter_map(move |s| {
                        KneserParams::new(n, k, r, s).ok().filter(|p| p.bound_applicable())
                    })
                })
            })
        })
    }

    #[test]
    fn generalized_bound_dominates_the_transported_one() {
        for params in grid() {
            let t1 = theorem1_lower_bound(&params).unwrap();
            if let Ok(h) = homomorphism_lower_bound(&params) {
                assert!(t1 >= h, "{params}");
            }
            if params.s == 0 {
                if let Ok(a) = afl_lower_bound(&params) {
                    assert_eq!(a, t1);
                }
            }
            assert!(t1 >= 1, "{params}");
        }
    }

    #[test]
    fn monotonicity_of_theorem1() {
        for params in grid() {
            let t1 = theorem1_lower_bound(&params).unwrap();
            let KneserParams { n, k, r, s } = params;
            if let Ok(up) = KneserParams::new(n + 1, k, r, s) {
                assert!(theorem1_lower_bound(&up).unwrap() >= t1);
            }
            if let Ok(up) = KneserParams::new(n, k, r, s + 1) {
                assert!(theorem1_lower_bound(&up).unwrap() >= t1);
            }
            if let Ok(up) = KneserParams::new(n, k + 1, r, s) {
                if let Ok(b) = theorem1_lower_bound(&up) {
                    assert!(b <= t1);
                }
            }
        }
    }

    #[test]
    fn report_without_solver() {
        let rep = compare_bounds(&p(6, 3, 2, 1), None);
        assert_eq!(rep.theorem1, Some(4));
        assert_eq!(rep.hom_eq3, Some(3));
        assert_eq!(rep.afl_eq1, None);
        assert_eq!(rep.solver_status, SolverStatus::Skipped);
        assert!(rep.is_balanced_shape());
        assert_eq!(rep.improvement(), Some(1));
    }

    #[test]
    fn report_with_solver() {
        let budget = SolveBudget::default();
        let rep = compare_bounds(&p(5, 2, 2, 0), Some(&budget));
        assert_eq!(
            (rep.theorem1, rep.afl_eq1, rep.exact_chi, rep.tight),
            (Some(3), Some(3), Some(3), Some(true))
        );
        let rep = compare_bounds(&p(4, 2, 2, 1), Some(&budget));
        assert_eq!((rep.theorem1, rep.exact_chi, rep.tight), (Some(4), Some(6), Some(false)));
    }

    #[test]
    fn report_json_keys() {
        let rep = compare_bounds(&p(6, 3, 2, 1), None);
        let v = serde_json::to_value(&rep).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            [
                "afl_eq1", "exact_chi", "hom_eq3", "k", "n", "r", "s", "solver_status", "theorem1",
                "tight"
            ]
        );
        assert_eq!(v["solver_status"], "skipped");
    }
}
