//! Cross-check suites behind `redheffer verify`. Each identity yields one
//! [`Check`], printed as `OK eq1 n=200` or `FAIL perm n=13 lhs=... rhs=...`.

use std::fmt;

use clap::ValueEnum;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use redheffer_core::counting::{
    count_chains_through_zero, enumerate_contributing_permutations, signed_chain_sum,
    signed_chain_sum_by_max, verify_contributing_support,
};
use redheffer_core::error::Error;
use redheffer_core::exactmat::{det_bareiss, is_identity, mat_mul, permanent_ryser, DET_CAP, PERMANENT_CAP};
use redheffer_core::numtheory::{moebius_sieve, permanent_formula, signed_factorization_sum};
use redheffer_core::poset::{boolean_lattice, divisor_poset, Poset, BOOLEAN_CAP, POSET_CAP};
use redheffer_core::redheffer::{
    det_via_moebius, redheffer_classic, redheffer_general, redheffer_inverse, redheffer_inverse_by_update,
};
use redheffer_core::BigInt;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Classic,
    Poset,
    Boolean,
    Identities,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.ok { "OK" } else { "FAIL" };
        write!(f, "{tag} {} {}", self.name, self.detail)
    }
}

/// Left and right sides of a failed identity.
type Mismatch = Option<(String, String)>;

fn mismatch<A: PartialEq + fmt::Display>(lhs: A, rhs: A) -> Mismatch {
    if lhs == rhs {
        None
    } else {
        Some((lhs.to_string(), rhs.to_string()))
    }
}

/// Runs `case` for every index in `range`, stopping at the first mismatch.
fn over_range(
    name: &'static str,
    label: &str,
    range: impl IntoIterator<Item = usize>,
    mut case: impl FnMut(usize) -> Result<Mismatch, Error>,
) -> Result<Check, Error> {
    let mut last = None;
    for k in range {
        if let Some((lhs, rhs)) = case(k)? {
            return Ok(Check {
                name,
                ok: false,
                detail: format!("{label}={k} lhs={lhs} rhs={rhs}"),
            });
        }
        last = Some(k);
    }
    let detail = match last {
        Some(k) => format!("{label}={k}"),
        None => format!("{label}=none"),
    };
    Ok(Check { name, ok: true, detail })
}

fn bounded(max: usize, what: &'static str, cap: usize) -> Result<usize, Error> {
    if max > cap {
        Err(Error::CapExceeded {
            what,
            value: max as u64,
            cap: cap as u64,
        })
    } else {
        Ok(max)
    }
}

pub fn run_suite(suite: Suite, max: Option<usize>) -> Result<Vec<Check>, Error> {
    match suite {
        Suite::Classic => classic(bounded(max.unwrap_or(200), "--max", DET_CAP)?),
        Suite::Poset => random_posets(bounded(max.unwrap_or(100), "--max", 100_000)?),
        Suite::Boolean => boolean(bounded(max.unwrap_or(5), "--max", BOOLEAN_CAP)?),
        Suite::Identities => identities(bounded(max.unwrap_or(20), "--max", DET_CAP.min(POSET_CAP))?),
    }
}

fn eq1(max: usize) -> Result<Check, Error> {
    let sieve = moebius_sieve(max.max(1))?;
    over_range("eq1", "n", 1..=max, |n| {
        let det = det_bareiss(redheffer_classic(n)?.matrix())?;
        Ok(mismatch(det, BigInt::from(sieve.mertens(n))))
    })
}

fn three_way_permanent(max: usize) -> Result<Check, Error> {
    over_range("perm", "n", 1..=max.min(20), |n| {
        let ryser = permanent_ryser(redheffer_classic(n)?.matrix())?;
        let formula = permanent_formula(n)?;
        let chains = count_chains_through_zero(&divisor_poset(n)?);
        if ryser == formula && formula == chains {
            Ok(None)
        } else {
            Ok(Some((ryser.to_string(), format!("{formula}/{chains}"))))
        }
    })
}

/// `R * R^-1 = I` and agreement with the rank-one update, or a reported
/// singularity exactly when `sum mu(0, x) = 0`.
fn inverse_case(p: &Poset) -> Result<Mismatch, Error> {
    let det = det_via_moebius(p);
    match redheffer_inverse(p) {
        Ok(inv) => {
            let r = redheffer_general(p).matrix().to_rational();
            if !is_identity(&mat_mul(&r, &inv)?) {
                return Ok(Some(("R*R^-1".into(), "I".into())));
            }
            Ok(mismatch(inv.to_tsv(), redheffer_inverse_by_update(p)?.to_tsv()))
        }
        Err(Error::Singular) => Ok(mismatch(det, BigInt::zero())),
        Err(e) => Err(e),
    }
}

fn chains_vs_moebius(p: &Poset) -> Mismatch {
    for x in (0..p.len()).filter(|&x| x != p.zero()) {
        let by_max = signed_chain_sum_by_max(p, x).expect("x is not the zero");
        let mu = p.moebius(p.zero(), x);
        if by_max != mu {
            return Some((by_max.to_string(), mu.to_string()));
        }
    }
    mismatch(signed_chain_sum(p), det_via_moebius(p))
}

fn classic(max: usize) -> Result<Vec<Check>, Error> {
    let sieve = moebius_sieve(max.max(1))?;
    Ok(vec![
        eq1(max)?,
        three_way_permanent(max)?,
        over_range("support", "n", 1..=max.min(8), |n| {
            let report = verify_contributing_support(&divisor_poset(n)?)?;
            Ok(mismatch(report.holds, true))
        })?,
        over_range("signs", "n", 1..=max.min(12), |n| {
            let p = divisor_poset(n)?;
            let total: i64 = enumerate_contributing_permutations(&p)?.map(|c| c.sign() as i64).sum();
            Ok(mismatch(total, sieve.mertens(n)))
        })?,
        over_range("inverse", "n", 1..=max.min(60), |n| inverse_case(&divisor_poset(n)?))?,
    ])
}

fn random_posets(count: usize) -> Result<Vec<Check>, Error> {
    let build = |seed: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed as u64);
        let density = [0.2, 0.35, 0.5][seed % 3];
        Poset::random(&mut rng, 2 + seed % 11, density)
    };
    Ok(vec![
        over_range("perm-chains", "case", 0..count, |i| {
            let p = build(i);
            Ok(mismatch(permanent_ryser(redheffer_general(&p).matrix())?, count_chains_through_zero(&p)))
        })?,
        over_range("det-moebius", "case", 0..count, |i| {
            let p = build(i);
            Ok(mismatch(det_bareiss(redheffer_general(&p).matrix())?, det_via_moebius(&p)))
        })?,
        over_range("chains-moebius", "case", 0..count, |i| Ok(chains_vs_moebius(&build(i))))?,
        over_range("zeta-moebius", "case", 0..count, |i| {
            let p = build(i);
            let prod = mat_mul(&p.zeta_matrix(), &p.moebius_table().to_matrix(&p))?;
            Ok(mismatch(is_identity(&prod), true))
        })?,
        over_range("inverse", "case", 0..count, |i| inverse_case(&build(i)))?,
        over_range("support", "case", 0..count, |i| {
            let p = build(i);
            if p.len() > 8 {
                return Ok(None);
            }
            Ok(mismatch(verify_contributing_support(&p)?.holds, true))
        })?,
    ])
}

/// Ordered set partitions of an `n`-set: `a(n) = sum_k C(n, k) a(n - k)`.
fn fubini(n: usize) -> BigInt {
    let mut a = vec![BigInt::from(1)];
    for m in 1..=n {
        let mut total = BigInt::zero();
        let mut binom = BigInt::from(1);
        for k in 1..=m {
            binom = binom * (m - k + 1) / k;
            total += &binom * &a[m - k];
        }
        a.push(total);
    }
    a.swap_remove(n)
}

fn boolean(max: usize) -> Result<Vec<Check>, Error> {
    const LISTED: [u64; 6] = [1, 2, 6, 26, 150, 1082];
    Ok(vec![
        over_range("chains", "n", 0..=max, |n| {
            let count = count_chains_through_zero(&boolean_lattice(n)?);
            // a chain from the empty set is an ordered partition with a possibly empty last block
            let closed = if n == 0 { BigInt::from(1) } else { fubini(n) * 2 };
            if let Some(&listed) = LISTED.get(n) {
                if let Some(m) = mismatch(count.clone(), BigInt::from(listed)) {
                    return Ok(Some(m));
                }
            }
            Ok(mismatch(count, closed))
        })?,
        over_range("perm-chains", "n", 0..=max.min(4), |n| {
            let b = boolean_lattice(n)?;
            Ok(mismatch(permanent_ryser(redheffer_general(&b).matrix())?, count_chains_through_zero(&b)))
        })?,
        over_range("singular", "n", 1..=max, |n| {
            let b = boolean_lattice(n)?;
            if let Some(m) = mismatch(det_via_moebius(&b), BigInt::zero()) {
                return Ok(Some(m));
            }
            if n <= 4 {
                if let Some(m) = mismatch(det_bareiss(redheffer_general(&b).matrix())?, BigInt::zero()) {
                    return Ok(Some(m));
                }
            }
            let reported = matches!(redheffer_inverse(&b), Err(Error::Singular));
            Ok(mismatch(reported, true))
        })?,
    ])
}

fn identities(max: usize) -> Result<Vec<Check>, Error> {
    let sig_max = max.max(10_000);
    let sieve = moebius_sieve(sig_max)?;
    Ok(vec![
        eq1(max)?,
        three_way_permanent(max.min(PERMANENT_CAP))?,
        over_range("chains-moebius", "n", 1..=max, |n| Ok(chains_vs_moebius(&divisor_poset(n)?)))?,
        over_range("inverse", "n", 1..=max, |n| inverse_case(&divisor_poset(n)?))?,
        over_range("sigfact", "r", 1..=sig_max, |r| {
            Ok(mismatch(signed_factorization_sum(r as u64)?, sieve.mu(r) as i64))
        })?,
    ])
}
