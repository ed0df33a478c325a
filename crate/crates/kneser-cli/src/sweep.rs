//! Parameter grids and the CSV table of bound reports.

use std::io::Write;

use anyhow::{bail, Result};
use kneser::{binomial, compare_bounds, BoundReport, KneserParams, SolveBudget, SolverStatus};

use crate::cache::Cache;
use crate::solve_chi;

pub const CSV_COLUMNS: [&str; 10] =
    ["n", "k", "r", "s", "theorem1", "afl_eq1", "hom_eq3", "exact_chi", "tight", "solver_status"];

/// Parses `5`, `2,3`, `5..8`, `5..=8` or `5-8` (ranges inclusive) into a sorted list.
pub fn parse_range(text: &str) -> std::result::Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bounds = part
            .split_once("..=")
            .or_else(|| part.split_once(".."))
            .or_else(|| part.split_once('-'));
        let num = |s: &str| s.trim().parse::<u32>().map_err(|e| format!("bad number {s:?} in {text:?}: {e}"));
        match bounds {
            Some((lo, hi)) => out.extend(num(lo)?..=num(hi)?),
            None => out.push(num(part)?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub n: Vec<u32>,
    pub k: Vec<u32>,
    pub r: Vec<u32>,
    pub s: Vec<u32>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SweepOptions {
    /// Drop tuples where the main lower bound does not apply (`n <= r(k-1)`).
    pub applicable_only: bool,
    /// Drop tuples with more vertices than the solver accepts, instead of
    /// emitting them with status `skipped`.
    pub skip_oversized: bool,
    /// Bounds only, no exact solving.
    pub no_solve: bool,
}

#[derive(Debug, Clone, Default)]
pub struct SweepOutcome {
    pub rows: Vec<BoundReport>,
    pub budget_exceeded: usize,
    /// Nodes spent by fresh solver runs; zero when every value came from the cache.
    pub fresh_nodes: u64,
}

impl Grid {
    /// Valid tuples in `(r, k, s, n)` lexicographic order; invalid ones are logged and skipped.
    pub fn tuples(&self) -> Vec<KneserParams> {
        let mut out = Vec::new();
        for &r in &self.r {
            for &k in &self.k {
                for &s in &self.s {
                    for &n in &self.n {
                        match KneserParams::new(n, k, r, s) {
                            Ok(p) => out.push(p),
                            Err(e) => log::info!("skipping (n={n}, k={k}, r={r}, s={s}): {e}"),
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn run_sweep(grid: &Grid, budget: &SolveBudget, cache: &mut Cache, opts: SweepOptions) -> Result<SweepOutcome> {
    let mut outcome = SweepOutcome::default();
    for params in grid.tuples() {
        if opts.applicable_only && !params.bound_applicable() {
            log::info!("skipping {params}: lower bound not applicable");
            continue;
        }
        let oversized = binomial(params.n, params.k) > budget.max_vertices as u64;
        if oversized && opts.skip_oversized {
            log::info!("skipping {params}: more than {} vertices", budget.max_vertices);
            continue;
        }
        let report = compare_bounds(&params, None);
        let report = if opts.no_solve || oversized {
            report
        } else {
            let (rec, fresh) = solve_chi(&params, budget, cache)?;
            if fresh {
                outcome.fresh_nodes += rec.nodes;
            }
            if rec.solver_status == SolverStatus::BudgetExceeded {
                outcome.budget_exceeded += 1;
            }
            report.with_exact(rec.chi, rec.solver_status)
        };
        outcome.rows.push(report);
    }
    Ok(outcome)
}

pub fn write_csv(rows: &[BoundReport], out: &mut dyn Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn grid_from_args(n: &str, k: &str, r: &str, s: &str) -> Result<Grid> {
    let parse = |name: &str, v: &str| match parse_range(v) {
        Ok(list) => Ok(list),
        Err(e) => bail!("--{name}: {e}"),
    };
    Ok(Grid { n: parse("n", n)?, k: parse("k", k)?, r: parse("r", r)?, s: parse("s", s)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("5..8").unwrap(), vec![5, 6, 7, 8]);
        assert_eq!(parse_range("5..=6,2").unwrap(), vec![2, 5, 6]);
        assert_eq!(parse_range("3-4").unwrap(), vec![3, 4]);
        assert_eq!(parse_range("7").unwrap(), vec![7]);
        assert_eq!(parse_range("8..5").unwrap(), Vec::<u32>::new());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn invalid_tuples_are_dropped() {
        let g = Grid { n: vec![2, 5], k: vec![2], r: vec![2], s: vec![0, 2] };
        let t = g.tuples();
        assert_eq!(t, vec![KneserParams::new(2, 2, 2, 0).unwrap(), KneserParams::new(5, 2, 2, 0).unwrap()]);
    }

    #[test]
    fn empty_grid_gives_header_only() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,k,r,s,theorem1,afl_eq1,hom_eq3,exact_chi,tight,solver_status\n");
    }

    #[test]
    fn csv_row_layout() {
        let p = KneserParams::new(6, 3, 2, 1).unwrap();
        let mut buf = Vec::new();
        write_csv(&[compare_bounds(&p, None)], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "6,3,2,1,4,,3,,,skipped");
    }
}
