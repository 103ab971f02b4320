//! Exact counting over all of `{0,1}^n` without materializing strings.
//!
//! The law of γ under the uniform distribution comes from a windowed
//! dynamic program whose state is the last two bits and the γ mass already
//! settled. Position `i` is settled once position `i + 1` is chosen, since
//! its influence bit depends on both neighbors.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::dyadic::Dyadic;
use crate::error::{check_range, Error, Result};

/// Largest `n` accepted by the DP-backed operations.
pub const MAX_DP_LEN: usize = 512;

/// Exact number of strings of length `n` at each γ value `0..=2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaDistribution {
    n: usize,
    counts: Vec<BigUint>,
}

impl GammaDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Count of strings with γ = `v`; zero outside `0..=2n`.
    pub fn count(&self, v: usize) -> BigUint {
        self.counts.get(v).cloned().unwrap_or_default()
    }

    /// Counts indexed by γ value, length `2n + 1`.
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Always `2^n`.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// `Σ_v v · count(v)`.
    pub fn weighted_sum(&self) -> BigUint {
        self.counts
            .iter()
            .enumerate()
            .map(|(v, c)| c * BigUint::from(v))
            .sum()
    }

    pub fn count_above(&self, threshold: usize) -> BigUint {
        self.counts.iter().skip(threshold + 1).sum()
    }

    pub fn count_at_most(&self, threshold: usize) -> BigUint {
        self.counts.iter().take(threshold + 1).sum()
    }

    /// E γ(X) for uniform X.
    pub fn mean(&self) -> Dyadic {
        Dyadic::new(self.weighted_sum(), self.n as u32)
    }
}

/// Runs the γ DP one position at a time, yielding the distribution for
/// every length `1, 2, 3, ...` in turn.
#[derive(Clone, Debug)]
pub struct GammaDistributions {
    len: usize,
    // Indexed by `prev << 1 | cur`, then by settled γ mass.
    states: [Vec<BigUint>; 4],
}

impl GammaDistributions {
    pub fn new() -> Self {
        GammaDistributions { len: 0, states: Default::default() }
    }

    fn advance(&mut self) {
        if self.len == 0 {
            self.states = [vec![BigUint::one()], vec![BigUint::one()], vec![], vec![]];
            self.len = 1;
            return;
        }
        let width = 2 * self.len + 1;
        let mut next: [Vec<BigUint>; 4] = std::array::from_fn(|_| vec![BigUint::zero(); width]);
        for (state, row) in self.states.iter().enumerate() {
            let prev = state >> 1;
            let cur = state & 1;
            for c in 0..2 {
                let settled = cur + (prev | c);
                let target = &mut next[cur << 1 | c];
                for (acc, count) in row.iter().enumerate() {
                    if !count.is_zero() {
                        target[acc + settled] += count;
                    }
                }
            }
        }
        self.states = next;
        self.len += 1;
    }

    fn finish(&self) -> GammaDistribution {
        let n = self.len;
        let mut counts = vec![BigUint::zero(); 2 * n + 1];
        for (state, row) in self.states.iter().enumerate() {
            let last = (state & 1) + (state >> 1);
            for (acc, count) in row.iter().enumerate() {
                if !count.is_zero() {
                    counts[acc + last] += count;
                }
            }
        }
        GammaDistribution { n, counts }
    }
}

impl Default for GammaDistributions {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for GammaDistributions {
    type Item = GammaDistribution;

    fn next(&mut self) -> Option<GammaDistribution> {
        self.advance();
        Some(self.finish())
    }
}

pub fn gamma_distribution(n: usize) -> Result<GammaDistribution> {
    check_range("n", n, 1, MAX_DP_LEN)?;
    Ok(GammaDistributions::new().nth(n - 1).expect("iterator is unbounded"))
}

/// |C_n|: strings of length `n` with γ > n.
pub fn count_c(n: usize) -> Result<BigUint> {
    Ok(gamma_distribution(n)?.count_above(n))
}

/// Pr{γ(X) ≤ n} as `(2^n − |C_n|) / 2^n`.
pub fn tail_probability(n: usize) -> Result<Dyadic> {
    let dist = gamma_distribution(n)?;
    Ok(Dyadic::new(dist.count_at_most(n), n as u32))
}

pub fn expected_gamma(n: usize) -> Result<Dyadic> {
    Ok(gamma_distribution(n)?.mean())
}

/// Number of length-`n` strings without two consecutive ones:
/// `f_1 = 2`, `f_2 = 3`, `f_n = f_{n−1} + f_{n−2}`. `f_0 = 1` counts the
/// empty string.
pub fn fibonacci_count(n: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::one(), BigUint::from(2u8));
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

/// A bound of the form `2^{(num/den)·n}`.
///
/// Comparisons against integers are exact: `a ≤ 2^{rn}` is decided as
/// `a^den ≤ 2^{num·n}`, which agrees with comparing `a` to the bound
/// rounded down.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerBound {
    pub num: u32,
    pub den: u32,
}

impl PowerBound {
    /// 2^{0.96n}.
    pub const LOWER: PowerBound = PowerBound { num: 24, den: 25 };
    /// 2^{0.69n}.
    pub const UPPER: PowerBound = PowerBound { num: 69, den: 100 };
    /// 2^{0.694n}.
    pub const FIBONACCI_GROWTH: PowerBound = PowerBound { num: 347, den: 500 };

    fn scaled_power(&self, n: usize) -> BigUint {
        BigUint::one() << (self.num as u64 * n as u64)
    }

    /// ⌊2^{rn}⌋.
    pub fn floor_at(&self, n: usize) -> BigUint {
        self.scaled_power(n).nth_root(self.den)
    }

    /// `a ≤ 2^{rn}`.
    pub fn admits(&self, n: usize, a: &BigUint) -> bool {
        a.pow(self.den) <= self.scaled_power(n)
    }

    /// `a ≥ 2^{rn}`.
    pub fn reached_by(&self, n: usize, a: &BigUint) -> bool {
        a.pow(self.den) >= self.scaled_power(n)
    }

    pub fn exponent(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Per-length data behind the lower-bound crossover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossoverRow {
    pub n: usize,
    /// `2^n − |C_n|`.
    pub excluded: BigUint,
    /// ⌊2^{0.96n}⌋.
    pub bound: BigUint,
    pub holds: bool,
}

pub fn crossover_rows(max_n: usize) -> Result<Vec<CrossoverRow>> {
    check_range("max_n", max_n, 1, MAX_DP_LEN)?;
    Ok(GammaDistributions::new()
        .take(max_n)
        .map(|dist| {
            let n = dist.n();
            let excluded = dist.count_at_most(n);
            let bound = PowerBound::LOWER.floor_at(n);
            let holds = excluded <= bound;
            CrossoverRow { n, excluded, bound, holds }
        })
        .collect())
}

/// Smallest `N*` with `2^n − |C_n| ≤ 2^{0.96n}` for every `n` in
/// `N*..=max_n`.
pub fn crossover_scan(max_n: usize) -> Result<usize> {
    check_range("max_n", max_n, 2, MAX_DP_LEN)?;
    let rows = crossover_rows(max_n)?;
    match rows.iter().rposition(|r| !r.holds) {
        None => Ok(1),
        Some(i) if i + 1 == rows.len() => Err(Error::NoCrossover { max_n }),
        Some(i) => Ok(rows[i].n + 1),
    }
}

/// Smallest `N_f` with `f_n ≥ 2^{0.694n}` for every `n` in `N_f..=max_n`,
/// or `None` if the inequality fails at `max_n`.
pub fn fibonacci_growth_scan(max_n: usize) -> Option<usize> {
    let mut start = Some(1);
    for n in 1..=max_n {
        if PowerBound::FIBONACCI_GROWTH.reached_by(n, &fibonacci_count(n)) {
            start.get_or_insert(n);
        } else {
            start = None;
        }
    }
    start
}
