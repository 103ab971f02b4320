//! Tables behind the command-line reports. Values that are out of reach
//! at a given `n` (beyond a solver cap) are left empty rather than
//! estimated.

use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::One;

use crate::counting::{
    crossover_rows, fibonacci_count, gamma_distribution, GammaDistributions, PowerBound, MAX_DP_LEN,
};
use crate::dyadic::Dyadic;
use crate::error::{check_range, Result};
use crate::montecarlo::TailEstimate;
use crate::solver::{
    exact_m, ExtremalResult, SandwichReport, SolveOptions, MAX_M_LEN, MAX_M_LEN_OVERRIDE,
};
use crate::sperner::{max_antichain, max_antichain_oracle, ProjectionReport, MAX_ORACLE_LEN, MAX_POSET_LEN};
use crate::table::{Cell, Table};

/// Counts and probabilities of each γ value at one length.
pub fn gamma_table(n: usize) -> Result<Table> {
    let dist = gamma_distribution(n)?;
    let mut t = Table::new(["gamma", "count", "probability"]);
    for (v, c) in dist.counts().iter().enumerate() {
        t.push(vec![v.into(), c.into(), Dyadic::new(c.clone(), n as u32).into()]);
    }
    Ok(t)
}

/// Per length: |C_n|, the tail probability and the mean of γ.
pub fn gamma_summary_table(range: RangeInclusive<usize>) -> Result<Table> {
    check_range("n", *range.start(), 1, MAX_DP_LEN)?;
    check_range("n", *range.end(), *range.start(), MAX_DP_LEN)?;
    let mut t = Table::new(["n", "count_c", "tail_probability", "expected_gamma"]);
    for dist in GammaDistributions::new().skip(*range.start() - 1).take(range.clone().count()) {
        let n = dist.n();
        let c = dist.count_above(n);
        let tail = Dyadic::new((BigUint::one() << n) - &c, n as u32);
        t.push(vec![n.into(), c.into(), tail.into(), dist.mean().into()]);
    }
    Ok(t)
}

pub fn crossover_table(max_n: usize) -> Result<Table> {
    let mut t = Table::new(["n", "excluded", "bound_floor", "holds"]);
    for row in crossover_rows(max_n)? {
        t.push(vec![row.n.into(), row.excluded.into(), row.bound.into(), row.holds.into()]);
    }
    Ok(t)
}

fn m_cap(opts: &SolveOptions) -> usize {
    if opts.allow_large {
        MAX_M_LEN_OVERRIDE
    } else {
        MAX_M_LEN
    }
}

/// Both bounds of the main estimate at every `n ≤ max_n`.
///
/// `excluded = 2^n − |C_n|` is compared with `2^{0.96n}`, and
/// `f_n − m_n` (only where m_n is computed) with `2^{0.69n}`. Bound
/// columns show the floor of the real value; the boolean columns come from
/// exact comparisons.
pub fn theorem_table(max_n: usize) -> Result<Table> {
    check_range("max_n", max_n, 1, MAX_DP_LEN)?;
    let mut t = Table::new([
        "n",
        "excluded",
        "lower_bound_floor",
        "lower_holds",
        "f_n",
        "m_n",
        "f_n_minus_m_n",
        "upper_bound_floor",
        "upper_holds",
    ]);
    for dist in GammaDistributions::new().take(max_n) {
        let n = dist.n();
        let excluded = dist.count_at_most(n);
        let lower = PowerBound::LOWER;
        let f_n = fibonacci_count(n);
        let (m_n, gap, upper_holds) = if n <= MAX_POSET_LEN {
            let m = max_antichain(n)?.size;
            let gap = &f_n - BigUint::from(m);
            let holds = PowerBound::UPPER.reached_by(n, &gap);
            (Cell::from(m), Cell::from(gap), Cell::from(holds))
        } else {
            (Cell::Empty, Cell::Empty, Cell::Empty)
        };
        t.push(vec![
            n.into(),
            Cell::from(&excluded),
            lower.floor_at(n).into(),
            lower.admits(n, &excluded).into(),
            f_n.into(),
            m_n,
            gap,
            PowerBound::UPPER.floor_at(n).into(),
            upper_holds,
        ]);
    }
    Ok(t)
}

/// The quantities squeezing M(n): `f_n`, `m_n`, `|C_n|`, `M(n)` and
/// `2^n − (f_n − m_n)`.
pub fn summary_table(range: RangeInclusive<usize>, opts: &SolveOptions) -> Result<Table> {
    check_range("n", *range.start(), 1, MAX_DP_LEN)?;
    check_range("n", *range.end(), *range.start(), MAX_DP_LEN)?;
    let mut t = Table::new(["n", "f_n", "m_n", "count_c", "M", "upper"]);
    let dists = GammaDistributions::new().skip(*range.start() - 1);
    for (n, dist) in range.clone().zip(dists) {
        let f_n = fibonacci_count(n);
        let m_n = if n <= MAX_POSET_LEN { Some(max_antichain(n)?.size) } else { None };
        let m = if n <= m_cap(opts) { Some(exact_m(n, opts)?.size) } else { None };
        let upper = m_n.map(|m_n| (BigUint::one() << n) + BigUint::from(m_n) - &f_n);
        t.push(vec![
            n.into(),
            f_n.into(),
            m_n.into(),
            dist.count_above(n).into(),
            m.into(),
            upper.into(),
        ]);
    }
    Ok(t)
}

pub fn sandwich_table(reports: &[SandwichReport]) -> Table {
    let mut t = Table::new(["n", "count_c", "M", "f_n", "m_n", "upper", "lower_holds", "upper_holds"]);
    for r in reports {
        t.push(vec![
            r.n.into(),
            Cell::from(&r.count_c),
            r.exact_m.into(),
            Cell::from(&r.f_n),
            r.m_n.into(),
            Cell::from(&r.upper),
            r.lower_holds().into(),
            r.upper_holds().into(),
        ]);
    }
    t
}

/// m_n with the clique cross-check where it is cheap enough.
pub fn sperner_table(range: RangeInclusive<usize>) -> Result<Table> {
    check_range("n", *range.start(), 1, MAX_POSET_LEN)?;
    check_range("n", *range.end(), *range.start(), MAX_POSET_LEN)?;
    let mut t = Table::new(["n", "f_n", "m_n", "oracle_m_n", "f_prev", "antichain_bound", "ratio_bound"]);
    for n in range {
        let m_n = max_antichain(n)?.size;
        let oracle = if n <= MAX_ORACLE_LEN { Some(max_antichain_oracle(n)?) } else { None };
        let f_n = fibonacci_count(n);
        let (f_prev, antichain_bound, ratio_bound) = if n >= 2 {
            let f_prev = fibonacci_count(n - 1);
            let a = BigUint::from(m_n) <= f_prev;
            let r = &f_prev * 3u8 <= &f_n * 2u8;
            (Cell::from(f_prev), Cell::from(a), Cell::from(r))
        } else {
            (Cell::Empty, Cell::Empty, Cell::Empty)
        };
        t.push(vec![n.into(), f_n.into(), m_n.into(), oracle.into(), f_prev, antichain_bound, ratio_bound]);
    }
    Ok(t)
}

pub fn projection_table(reports: &[ProjectionReport]) -> Table {
    let mut t = Table::new([
        "n",
        "m_n",
        "f_prev",
        "f_n",
        "projections_distinct",
        "projections_fibonacci",
        "antichain_bound",
        "ratio_bound",
    ]);
    for r in reports {
        t.push(vec![
            r.n.into(),
            r.m_n.into(),
            Cell::from(&r.f_prev),
            Cell::from(&r.f_n),
            r.projections_distinct.into(),
            r.projections_fibonacci.into(),
            r.antichain_bound().into(),
            r.ratio_bound().into(),
        ]);
    }
    t
}

/// One row per estimate, next to the exact tail probability.
pub fn montecarlo_table(rows: &[(TailEstimate, Dyadic)], k: f64) -> Table {
    let mut t = Table::new([
        "n",
        "samples",
        "seed",
        "hits",
        "estimate",
        "standard_error",
        "exact",
        "exact_value",
        "within",
    ]);
    for (e, exact) in rows {
        let value = exact.to_f64();
        t.push(vec![
            e.n.into(),
            e.samples.into(),
            e.seed.into(),
            e.hits.into(),
            e.estimate.into(),
            e.standard_error.into(),
            exact.clone().into(),
            value.into(),
            e.within(value, k).into(),
        ]);
    }
    t
}

/// One row per extremal result; the witness is space separated.
pub fn result_table(results: &[(usize, ExtremalResult)], timing: bool) -> Table {
    let mut columns = vec!["n", "size", "method", "witness"];
    if timing {
        columns.push("elapsed_ms");
    }
    let mut t = Table::new(columns);
    for (n, r) in results {
        let mut row = vec![
            Cell::from(*n),
            Cell::from(r.size),
            Cell::Text(r.method.to_string()),
            Cell::Text(r.witness.join(" ")),
        ];
        if timing {
            row.push(r.elapsed_ms.into());
        }
        t.push(row);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: u64) -> Cell {
        Cell::from(v)
    }

    #[test]
    fn theorem_rows() {
        let t = theorem_table(24).unwrap();
        assert_eq!(t.rows.len(), 24);
        assert_eq!(t.get(2, "excluded"), Some(&int(5)));
        assert_eq!(t.get(2, "lower_bound_floor"), Some(&int(7)));
        assert_eq!(t.get(0, "lower_holds"), Some(&Cell::Bool(false)));
        assert_eq!(t.get(2, "lower_holds"), Some(&Cell::Bool(true)));
        assert_eq!(t.get(2, "f_n_minus_m_n"), Some(&int(2)));
        assert_eq!(t.get(19, "m_n").map(|c| c != &Cell::Empty), Some(true));
        assert_eq!(t.get(20, "m_n"), Some(&Cell::Empty));
        assert!(theorem_table(513).is_err());
    }

    #[test]
    fn summary_rows() {
        let t = summary_table(1..=9, &SolveOptions::default()).unwrap();
        assert_eq!(t.columns, ["n", "f_n", "m_n", "count_c", "M", "upper"]);
        let row3: Vec<String> = t.rows[2].iter().map(|c| c.to_string()).collect();
        assert_eq!(row3, ["3", "5", "3", "3", "5", "6"]);
        let row1: Vec<String> = t.rows[0].iter().map(|c| c.to_string()).collect();
        assert_eq!(row1, ["1", "2", "1", "0", "1", "1"]);
        assert_eq!(t.get(8, "M"), Some(&Cell::Empty));
        assert_eq!(t.get(7, "M"), Some(&int(193)));
        let t = summary_table(4..=5, &SolveOptions::default()).unwrap();
        assert_eq!(t.get(0, "n"), Some(&int(4)));
        assert_eq!(t.get(1, "count_c"), summary_table(5..=5, &SolveOptions::default()).unwrap().get(0, "count_c"));
    }

    #[test]
    fn gamma_tables() {
        let t = gamma_table(2).unwrap();
        let probs: Vec<String> = t.rows.iter().map(|r| r[2].to_string()).collect();
        assert_eq!(probs, ["1/4", "0/1", "1/2", "0/1", "1/4"]);
        let s = gamma_summary_table(2..=3).unwrap();
        assert_eq!(s.get(0, "n"), Some(&int(2)));
        assert_eq!(s.get(0, "count_c"), Some(&int(1)));
        assert_eq!(s.get(1, "tail_probability").unwrap().to_string(), "5/8");
        assert_eq!(s.get(1, "expected_gamma").unwrap().to_string(), "13/4");
    }

    #[test]
    fn sperner_rows() {
        let t = sperner_table(1..=11).unwrap();
        assert_eq!(t.get(0, "f_prev"), Some(&Cell::Empty));
        assert_eq!(t.get(2, "m_n"), t.get(2, "oracle_m_n"));
        assert_eq!(t.get(10, "oracle_m_n"), Some(&Cell::Empty));
        assert!(t.rows[1..].iter().all(|r| r[5] == Cell::Bool(true) && r[6] == Cell::Bool(true)));
    }
}
