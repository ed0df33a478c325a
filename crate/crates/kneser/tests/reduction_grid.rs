//! The reduction across its whole supported range, at one color below the bound.

use kneser::reduction::{extract_witness, ReductionPlan, SUPPORTED_ARITIES};
use kneser::{theorem1_lower_bound, verify_witness, Coloring, KneserError, KneserParams, VertexSet};
use rand::{Rng, SeedableRng};

fn splits(r: u32) -> Vec<(u32, u32)> {
    (2..r).filter(|d| r.is_multiple_of(*d)).map(|d| (d, r / d)).collect()
}

/// Runs every supported `(n, k, r, s)` with `t = bound - 1` and a few colorings.
/// The extractor must return a verified edge, except where the inner size
/// inequality `m >= r1(k-1)+1` fails; there it must report a structural error.
#[test]
fn succeeds_exactly_where_the_inner_size_bound_holds() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let mut gaps = Vec::new();
    for r in SUPPORTED_ARITIES {
        for k in 1..=2u32 {
            for s in 0..k.min(2) {
                for n in (r * (k - 1) + 1).max(k)..=15 {
                    let params = KneserParams::new(n, k, r, s).unwrap();
                    let bound = theorem1_lower_bound(&params).unwrap() as u32;
                    if bound < 2 {
                        continue;
                    }
                    let t = bound - 1;
                    let vs = VertexSet::for_params(&params).unwrap();
                    let by_min = Coloring::new(vs.iter().map(|v| v.min_element().unwrap().min(t)).collect(), t).unwrap();
                    let random = Coloring::new(vs.iter().map(|_| rng.gen_range(1..=t)).collect(), t).unwrap();
                    for (r1, r2) in splits(r) {
                        let plan = ReductionPlan::new(params, r1, r2, t).unwrap();
                        assert!(plan.chain.outer_endpoint, "{params} {r1}x{r2}");
                        for coloring in [&by_min, &random] {
                            match extract_witness(&params, r1, r2, coloring, t, 50_000_000) {
                                Ok(w) => {
                                    assert!(plan.chain.inner_endpoint);
                                    assert!(verify_witness(&params, coloring, &w.edge));
                                    let rep = w.report();
                                    assert!(rep.checks.cross_intersections && rep.checks.members_inside_parents);
                                }
                                Err(KneserError::Structural(_)) => {
                                    assert!(!plan.chain.inner_endpoint, "{params} {r1}x{r2} t={t}");
                                    gaps.push((params, r1));
                                }
                                Err(e) => panic!("{params} {r1}x{r2}: {e}"),
                            }
                        }
                    }
                }
            }
        }
    }
    // only overlapping cases with t = 1 hit the gap
    assert!(gaps.iter().all(|(p, _)| p.s == 1 && theorem1_lower_bound(p).unwrap() == 2));
    assert!(!gaps.is_empty());
}

#[test]
fn every_three_coloring_of_thirteen_points_yields_an_edge() {
    let params = KneserParams::new(13, 1, 4, 0).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    for _ in 0..300 {
        let c = Coloring::new((0..13).map(|_| rng.gen_range(1..=3)).collect(), 3).unwrap();
        let w = extract_witness(&params, 2, 2, &c, 3, 1_000_000).unwrap();
        assert!(verify_witness(&params, &c, &w.edge));
    }
}
