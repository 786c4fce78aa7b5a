//! Independent brute-force oracles shared by the integration tests. None of
//! these call into the routines they are used to check.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use redheffer_core::{build_poset, Poset};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * det_cofactor(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Sum over all permutations by recursion on rows.
pub fn permanent_brute(m: &[Vec<BigInt>]) -> BigInt {
    fn go(m: &[Vec<BigInt>], row: usize, used: &mut Vec<bool>) -> BigInt {
        if row == m.len() {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..m.len() {
            if !used[j] && !m[row][j].is_zero() {
                used[j] = true;
                total += &m[row][j] * go(m, row + 1, used);
                used[j] = false;
            }
        }
        total
    }
    go(m, 0, &mut vec![false; m.len()])
}

pub fn random_small_matrix<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-2..=2))).collect())
        .collect()
}

/// Classical Möbius by trial division.
pub fn mu_trial(mut k: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            k /= p;
            if k % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if k > 1 {
        sign = -sign;
    }
    sign
}

/// Every ordered factorization of `k` into factors >= 2, listed explicitly.
pub fn ordered_factorizations(k: u64) -> Vec<Vec<u64>> {
    if k == 1 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 2..=k {
        if k % first == 0 {
            for mut rest in ordered_factorizations(k / first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
    }
    out
}

/// All chains (as internal-index lists, increasing) of `P - {0}`, empty included,
/// by testing every subset. Only for tiny posets.
pub fn chains_by_subsets(p: &Poset) -> Vec<Vec<usize>> {
    let others: Vec<usize> = (0..p.len()).filter(|&x| x != p.zero()).collect();
    assert!(others.len() <= 20);
    let mut chains = Vec::new();
    for mask in 0u32..(1 << others.len()) {
        let mut members: Vec<usize> = (0..others.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| others[b])
            .collect();
        let comparable = members
            .iter()
            .all(|&a| members.iter().all(|&b| p.leq(a, b) || p.leq(b, a)));
        if comparable {
            members.sort_by_key(|&x| p.position(x));
            chains.push(members);
        }
    }
    chains
}

/// Gauss-Jordan inverse over the rationals; `None` when singular.
pub fn inverse_gauss(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = BigRational::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Random poset with an added top element above everything.
pub fn with_top<R: Rng>(rng: &mut R, size: usize) -> Poset {
    let base = Poset::random(rng, size, 0.3);
    let mut elements: Vec<String> = base.elements().to_vec();
    elements.push("top".into());
    let mut covers: Vec<(String, String)> = base.to_file().covers;
    for e in base.elements() {
        covers.push((e.clone(), "top".into()));
    }
    build_poset(&elements, &covers).unwrap()
}

/// Sign of a permutation given by images, from its cycle count.
pub fn parity_sign(images: &[usize]) -> i32 {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for s in 0..n {
        if !seen[s] {
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = images[x];
            }
        }
    }
    if (n - cycles) % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn rows(m: &redheffer_core::IntMatrix) -> Vec<Vec<BigInt>> {
    m.rows().map(|r| r.to_vec()).collect()
}
