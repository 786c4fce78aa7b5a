//! Acceptance gate. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails or overruns its time budget.

mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;

use redheffer_core::counting::{
    count_chains_through_zero, enumerate_contributing_permutations, for_each_permutation,
    signed_chain_sum,
};
use redheffer_core::exactmat::{det_bareiss, is_identity, mat_mul, permanent_ryser, IntMatrix};
use redheffer_core::numtheory::{
    growth_exponent_estimate, moebius_sieve, permanent_formula, signed_factorization_sum,
};
use redheffer_core::poset::{boolean_lattice, divisor_poset, Poset};
use redheffer_core::redheffer::{
    det_via_moebius, rank_one_vectors, redheffer_classic, redheffer_general, redheffer_inverse,
    sherman_morrison_inverse,
};
use redheffer_core::Error;

use common::{det_cofactor, permanent_brute, random_small_matrix, rng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_mertens_determinant() -> Outcome {
    let sieve = moebius_sieve(200).map_err(|e| e.to_string())?;
    for n in 1..=200 {
        let r = redheffer_classic(n).map_err(|e| e.to_string())?;
        let det = det_bareiss(r.matrix()).map_err(|e| e.to_string())?;
        let m = BigInt::from(sieve.mertens(n));
        ensure(det == m, || format!("n={n} det={det} mertens={m}"))?;
    }
    let r8 = det_bareiss(redheffer_classic(8).unwrap().matrix()).unwrap();
    ensure(r8 == BigInt::from(-2), || format!("det R_8 = {r8}"))?;
    Ok("det R_n = M(n) for n=1..200; det R_8 = -2".into())
}

fn c2_permanent_three_routes() -> Outcome {
    let listed = [1, 2, 3, 5, 6, 9, 10, 14, 16, 19];
    for n in 1..=20 {
        let ryser = permanent_ryser(redheffer_classic(n).unwrap().matrix()).map_err(|e| e.to_string())?;
        let formula = permanent_formula(n).map_err(|e| e.to_string())?;
        let chains = count_chains_through_zero(&divisor_poset(n).unwrap());
        ensure(ryser == formula && formula == chains, || {
            format!("n={n} ryser={ryser} formula={formula} chains={chains}")
        })?;
        if n <= 10 {
            ensure(ryser == BigInt::from(listed[n - 1]), || {
                format!("n={n} value {ryser} vs listed {}", listed[n - 1])
            })?;
        }
    }
    Ok("Ryser = 1+sum f(k) = chains through 0 for n=1..20; n=1..10 match listed values".into())
}

fn c3_contributing_permutations() -> Outcome {
    for n in 1..=8 {
        let p = divisor_poset(n).unwrap();
        let r = redheffer_classic(n).unwrap().into_matrix();
        let mut support = HashSet::new();
        for_each_permutation(n, |img| {
            if img.iter().enumerate().all(|(i, &j)| !r[(i, j)].is_zero()) {
                support.insert(img.to_vec());
            }
        });
        let mut streamed = HashSet::new();
        let mut sign_sum = 0i64;
        for c in enumerate_contributing_permutations(&p).map_err(|e| e.to_string())? {
            sign_sum += c.sign() as i64;
            streamed.insert(c.images());
        }
        ensure(support == streamed, || {
            format!("n={n}: support {} vs enumerated {}", support.len(), streamed.len())
        })?;
        let m = moebius_sieve(n).unwrap().mertens(n);
        ensure(sign_sum == m, || format!("n={n}: sign sum {sign_sum} vs M(n)={m}"))?;
    }
    Ok("exhaustive n! search equals enumerated stream, sign sum = M(n), n<=8".into())
}

fn c4_general_posets() -> Outcome {
    let mut rng = rng(0xACCE);
    let count = 600;
    for i in 0..count {
        let size = 2 + i % 11;
        let density = [0.15, 0.3, 0.5, 0.7][i % 4];
        let p = Poset::random(&mut rng, size, density);
        let r = redheffer_general(&p);
        let perm = permanent_ryser(r.matrix()).map_err(|e| e.to_string())?;
        let chains = count_chains_through_zero(&p);
        ensure(perm == chains, || format!("perm {perm} vs chains {chains} for {}", p.to_json()))?;
        let det = det_bareiss(r.matrix()).map_err(|e| e.to_string())?;
        let mu_sum = det_via_moebius(&p);
        let signed = signed_chain_sum(&p);
        ensure(det == mu_sum && mu_sum == signed, || {
            format!("det {det} mu-sum {mu_sum} signed {signed} for {}", p.to_json())
        })?;
    }
    Ok(format!("{count} random posets (2..12 elements): perm = chains, det = sum mu(0,x) = signed chain sum"))
}

fn c5_boolean_lattice() -> Outcome {
    let listed = [1, 2, 6, 26, 150, 1082];
    for n in 0..=5 {
        let b = boolean_lattice(n).unwrap();
        let c = count_chains_through_zero(&b);
        ensure(c == BigInt::from(listed[n]), || format!("B_{n}: {c} vs {}", listed[n]))?;
        if n >= 1 {
            let d = det_via_moebius(&b);
            ensure(d.is_zero(), || format!("B_{n}: sum mu = {d}"))?;
        }
        if (1..=4).contains(&n) {
            let d = det_bareiss(redheffer_general(&b).matrix()).unwrap();
            ensure(d.is_zero(), || format!("B_{n}: det = {d}"))?;
        }
    }
    Ok("chains 1,2,6,26,150,1082; det 0 by Moebius (n=1..5) and Bareiss (n=1..4)".into())
}

fn c6_inverse() -> Outcome {
    let sieve = moebius_sieve(60).unwrap();
    let (mut inverted, mut singular) = (0, 0);
    for n in 1..=60 {
        let p = divisor_poset(n).unwrap();
        let got = redheffer_inverse(&p);
        if sieve.mertens(n) != 0 {
            let inv = got.map_err(|e| format!("n={n}: {e}"))?;
            let r = redheffer_general(&p).matrix().to_rational();
            ensure(is_identity(&mat_mul(&r, &inv).unwrap()), || format!("n={n}: R*R^-1 != I"))?;
            let b_inv = p.moebius_table().to_matrix(&p).to_rational();
            let (u, v) = rank_one_vectors(n);
            let sm = sherman_morrison_inverse(&b_inv, &u, &v).map_err(|e| e.to_string())?;
            ensure(sm == inv, || format!("n={n}: closed form differs from rank-one update"))?;
            inverted += 1;
        } else {
            ensure(got == Err(Error::Singular), || format!("n={n}: M(n)=0 but got {got:?}"))?;
            singular += 1;
        }
    }
    Ok(format!("{inverted} invertible n verified exactly, {singular} singular n reported"))
}

fn c7_signed_factorizations() -> Outcome {
    let sieve = moebius_sieve(10_000).unwrap();
    for r in 1..=10_000u64 {
        let s = signed_factorization_sum(r).map_err(|e| e.to_string())?;
        let mu = sieve.mu(r as usize) as i64;
        ensure(s == mu, || format!("r={r}: {s} vs mu={mu}"))?;
    }
    Ok("sum (-1)^k(phi) = mu(r) for r<=10^4".into())
}

fn c8_growth() -> Outcome {
    let slope = growth_exponent_estimate(100_000, 1_000_000).map_err(|e| e.to_string())?;
    ensure((1.65..=1.80).contains(&slope), || format!("slope {slope:.6} outside [1.65, 1.80]"))?;
    Ok(format!("slope on [1e5, 1e6] = {slope:.6} in [1.65, 1.80] (target 1.7286)"))
}

fn c9_linear_algebra_oracles() -> Outcome {
    let mut rng = rng(0x0AC1E);
    let cases = 10_000;
    for case in 0..cases {
        let n = 1 + case % 7;
        let rows = random_small_matrix(&mut rng, n);
        let m = IntMatrix::new(n, rows.concat()).unwrap();
        let (d, want) = (det_bareiss(&m).unwrap(), det_cofactor(&rows));
        ensure(d == want, || format!("det {d} vs {want} on {rows:?}"))?;
        let (p, want) = (permanent_ryser(&m).unwrap(), permanent_brute(&rows));
        ensure(p == want, || format!("perm {p} vs {want} on {rows:?}"))?;
    }
    Ok(format!("{cases} random matrices up to 7x7 with entries in -2..2"))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("1 det R_n = Mertens", 60, c1_mertens_determinant),
        ("2 permanent, three routes", 120, c2_permanent_three_routes),
        ("3 contributing permutations", 60, c3_contributing_permutations),
        ("4 general posets", 60, c4_general_posets),
        ("5 Boolean lattice", 60, c5_boolean_lattice),
        ("6 closed-form inverse", 30, c6_inverse),
        ("7 signed factorization sum", 5, c7_signed_factorizations),
        ("8 growth exponent", 60, c8_growth),
        ("9 det/perm oracles", 60, c9_linear_algebra_oracles),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > Duration::from_secs(budget) => {
                Err(format!("{msg}; took {elapsed:.2?}, budget {budget} s"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS [{name}] {msg} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{name}] {msg} ({elapsed:.2?})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
