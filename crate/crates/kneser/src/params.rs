use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Largest ground set supported by the fixed-width subset representation.
pub const MAX_GROUND: u32 = 64;

/// The quadruple `(n, k, r, s)` describing `KG^r(n, k, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KneserParams {
    pub n: u32,
    pub k: u32,
    pub r: u32,
    pub s: u32,
}

impl KneserParams {
    /// Validates `k > s >= 0`, `r >= 2`, `n >= k >= 1` and `n <= 64`.
    pub fn new(n: u32, k: u32, r: u32, s: u32) -> Result<Self> {
        if k == 0 {
            return invalid("k must be positive");
        }
        if s >= k {
            return invalid(format!("need k > s, got k={k}, s={s}"));
        }
        if r < 2 {
            return invalid(format!("need r >= 2, got r={r}"));
        }
        if n < k {
            return invalid(format!("need n >= k, got n={n}, k={k}"));
        }
        if n > MAX_GROUND {
            return invalid(format!("n={n} exceeds the supported ground set size {MAX_GROUND}"));
        }
        Ok(Self { n, k, r, s })
    }

    /// True iff `n >= r(k-1) + 1`, the range where the lower bound is stated.
    pub fn bound_applicable(&self) -> bool {
        u64::from(self.n) > u64::from(self.r) * u64::from(self.k - 1)
    }

    /// `C(n, k)`, saturating at `u64::MAX`.
    pub fn num_vertices(&self) -> u64 {
        binomial(self.n, self.k)
    }
}

impl std::fmt::Display for KneserParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "KG^{}({},{},{})", self.r, self.n, self.k, self.s)
    }
}

/// Binomial coefficient, saturating on overflow.
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_domain() {
        assert!(KneserParams::new(5, 2, 2, 2).is_err());
        assert!(KneserParams::new(5, 2, 1, 0).is_err());
        assert!(KneserParams::new(3, 4, 2, 0).is_err());
        assert!(KneserParams::new(65, 2, 2, 0).is_err());
        assert!(KneserParams::new(5, 0, 2, 0).is_err());
        assert!(KneserParams::new(64, 2, 2, 1).is_ok());
    }

    #[test]
    fn applicability_flag() {
        // n >= r(k-1)+1
        assert!(KneserParams::new(5, 2, 4, 0).unwrap().bound_applicable());
        assert!(!KneserParams::new(4, 2, 4, 0).unwrap().bound_applicable());
        assert!(KneserParams::new(1, 1, 3, 0).unwrap().bound_applicable());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(binomial(4, 4), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }
}
