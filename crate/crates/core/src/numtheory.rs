//! Number-theoretic side of the classical Redheffer matrix: the Möbius
//! sieve and Mertens function, ordered factorization counts, and the
//! growth exponent of their partial sums.
//!
//! Convention: `F[1] = 1` counts the empty factorization, so
//! `perm R_n = F[1] + ... + F[n]`. The usual statement with `f(1) = 0`
//! adds that `1` separately; both give the same numbers.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{check_cap, Error, Result};

pub const SIEVE_CAP: usize = 100_000_000;
pub const FACTORIZATION_CAP: usize = 10_000_000;

/// Classical `mu(1..=n)` with Mertens prefix sums.
#[derive(Clone, Debug)]
pub struct MoebiusSieve {
    mu: Vec<i8>,
    mertens: Vec<i32>,
}

impl MoebiusSieve {
    /// Largest argument covered.
    pub fn limit(&self) -> usize {
        self.mu.len() - 1
    }

    /// # Panics
    /// If `k` is 0 or beyond the limit.
    pub fn mu(&self, k: usize) -> i8 {
        assert!(k >= 1, "mu is defined for k >= 1");
        self.mu[k]
    }

    /// `M(k) = mu(1) + ... + mu(k)`; `M(0) = 0`.
    pub fn mertens(&self, k: usize) -> i64 {
        self.mertens[k] as i64
    }
}

/// Eratosthenes-style sieve: every prime `p` flips the sign of its
/// multiples and zeroes the multiples of `p^2`.
pub fn moebius_sieve(n: usize) -> Result<MoebiusSieve> {
    if n == 0 {
        return Err(Error::InvalidArgument("sieve limit must be at least 1".into()));
    }
    check_cap("sieve limit", n as u64, SIEVE_CAP as u64)?;
    let mut mu = vec![1i8; n + 1];
    mu[0] = 0;
    let mut composite = vec![false; n + 1];
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        for m in (p..=n).step_by(p) {
            if m > p {
                composite[m] = true;
            }
            mu[m] = -mu[m];
        }
        if let Some(sq) = p.checked_mul(p).filter(|&sq| sq <= n) {
            for m in (sq..=n).step_by(sq) {
                mu[m] = 0;
            }
        }
    }
    let mut mertens = Vec::with_capacity(n + 1);
    let mut acc = 0i32;
    for &m in &mu {
        acc += m as i32;
        mertens.push(acc);
    }
    Ok(MoebiusSieve { mu, mertens })
}

/// `M(n) = sum_{k <= n} mu(k)`.
pub fn mertens(n: usize) -> Result<i64> {
    Ok(moebius_sieve(n)?.mertens(n))
}

/// `F[k]` = number of ordered factorizations of `k` into factors `>= 2`,
/// with `F[1] = 1`.
///
/// Entries are held in `u64`: `F[k] < k^1.73` and the partial sums stay
/// below `10^13` for `k` up to [`FACTORIZATION_CAP`], so nothing is lost;
/// additions are still checked.
#[derive(Clone, Debug)]
pub struct FactorCountTable {
    counts: Vec<u64>,
    prefix: Vec<u64>,
}

impl FactorCountTable {
    pub fn limit(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, k: usize) -> u64 {
        assert!(k >= 1, "F is indexed from 1");
        self.counts[k]
    }

    /// `F[1] + ... + F[k]`, which is `perm R_k`.
    pub fn prefix_sum(&self, k: usize) -> u64 {
        self.prefix[k]
    }

    pub fn count_big(&self, k: usize) -> BigInt {
        BigInt::from(self.count(k))
    }

    pub fn prefix_sum_big(&self, k: usize) -> BigInt {
        BigInt::from(self.prefix_sum(k))
    }
}

/// Forward sieve: each `F[k]` is pushed into `F[k*m]` for every `m >= 2`,
/// so `F[j] = sum_{d | j, d > 1} F[j/d]`.
pub fn ordered_factorization_counts(n: usize) -> Result<FactorCountTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("table limit must be at least 1".into()));
    }
    check_cap("factorization table limit", n as u64, FACTORIZATION_CAP as u64)?;
    let mut counts = vec![0u64; n + 1];
    counts[1] = 1;
    for k in 1..=n / 2 {
        let f = counts[k];
        if f == 0 {
            continue;
        }
        for j in (2 * k..=n).step_by(k) {
            counts[j] = counts[j].checked_add(f).ok_or_else(overflow)?;
        }
    }
    let mut prefix = Vec::with_capacity(n + 1);
    let mut acc = 0u64;
    for &f in &counts {
        acc = acc.checked_add(f).ok_or_else(overflow)?;
        prefix.push(acc);
    }
    Ok(FactorCountTable { counts, prefix })
}

fn overflow() -> Error {
    Error::InvalidArgument("ordered factorization count overflowed u64".into())
}

/// `perm R_n = 1 + sum_{k=2}^{n} f(k)`.
pub fn permanent_formula(n: usize) -> Result<BigInt> {
    Ok(ordered_factorization_counts(n)?.prefix_sum_big(n))
}

/// `sum_phi (-1)^{k(phi)}` over ordered factorizations `phi` of `r`, where
/// `k(phi)` is the number of factors. Runs the recursion
/// `G[1] = 1`, `G[d] = -sum_{e | d, e > 1} G[d/e]` over the divisors of `r` only.
pub fn signed_factorization_sum(r: u64) -> Result<i64> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    check_cap("signed factorization argument", r, SIEVE_CAP as u64)?;
    let divs = divisors(r);
    let mut g: HashMap<u64, i64> = HashMap::with_capacity(divs.len());
    for &d in &divs {
        let v = if d == 1 {
            1
        } else {
            -divs
                .iter()
                .take_while(|&&e| e < d)
                .filter(|&&e| d % e == 0)
                .map(|e| g[e])
                .sum::<i64>()
        };
        g.insert(d, v);
    }
    Ok(g[&r])
}

/// Signed counts `G[1..=n]` for a whole range, by the same forward sieve as `F`.
pub fn signed_factorization_table(n: usize) -> Result<Vec<i64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("table limit must be at least 1".into()));
    }
    check_cap("factorization table limit", n as u64, FACTORIZATION_CAP as u64)?;
    let mut g = vec![0i64; n + 1];
    g[1] = 1;
    for k in 1..=n / 2 {
        let v = g[k];
        if v == 0 {
            continue;
        }
        for j in (2 * k..=n).step_by(k) {
            g[j] -= v;
        }
    }
    Ok(g)
}

/// Sorted divisors by trial division.
pub fn divisors(r: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= r {
        if r % d == 0 {
            small.push(d);
            if d * d != r {
                large.push(r / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Number of sample points used by [`growth_exponent_estimate`].
pub const GROWTH_SAMPLES: usize = 50;

/// Least-squares slope of `log perm R_n` against `log n` at
/// geometrically spaced `n` in `[lo, hi]`.
pub fn growth_exponent_estimate(lo: usize, hi: usize) -> Result<f64> {
    if lo == 0 || lo >= hi {
        return Err(Error::InvalidArgument(format!("need 1 <= lo < hi, got lo={lo} hi={hi}")));
    }
    let table = ordered_factorization_counts(hi)?;
    let points: Vec<(f64, f64)> = geometric_samples(lo, hi, GROWTH_SAMPLES)
        .into_iter()
        .map(|n| (n as f64, table.prefix_sum(n) as f64))
        .collect();
    Ok(loglog_slope(&points))
}

/// Up to `count` distinct integers spaced geometrically from `lo` to `hi`.
pub fn geometric_samples(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    let ratio = (hi as f64 / lo as f64).ln();
    let mut out: Vec<usize> = (0..count)
        .map(|i| {
            let t = i as f64 / (count - 1) as f64;
            ((lo as f64) * (ratio * t).exp()).round() as usize
        })
        .map(|n| n.clamp(lo, hi))
        .collect();
    out.dedup();
    out
}

/// Ordinary least-squares slope of `ln y` on `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
