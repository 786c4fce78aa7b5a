//! Chains through the 0 element and the permutations they induce.
//!
//! A nonvanishing term of `det R(P)` or `perm R(P)` is a permutation that
//! fixes everything except one cycle `(0 j2 ... jk)` with `j2 < ... < jk` a
//! chain of `P - {0}`. Counting those chains gives the permanent, and the
//! signed count gives the determinant.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{check_cap, Error, Result};
use crate::exactmat::{permanent_ryser, PERMANENT_CAP};
use crate::poset::Poset;
use crate::redheffer::redheffer_general;

/// Largest stream [`enumerate_contributing_permutations`] will produce.
pub const ENUMERATION_CAP: u64 = 10_000_000;
/// Up to this size the support is checked against all `n!` permutations.
pub const EXHAUSTIVE_SUPPORT_CAP: usize = 8;

/// Strictly increasing sequence of internal element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain(pub Vec<usize>);

impl Chain {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_chain_in(&self, poset: &Poset) -> bool {
        self.0.windows(2).all(|w| poset.lt(w[0], w[1]))
    }
}

/// Permutation of matrix positions whose only nontrivial cycle starts at
/// position 0 (the 0 element).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContributingPermutation {
    n: usize,
    cycle: Vec<usize>,
}

impl ContributingPermutation {
    pub fn identity(n: usize) -> Self {
        ContributingPermutation { n, cycle: vec![0] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The cycle as positions, starting with 0. Length 1 means identity.
    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    pub fn is_identity(&self) -> bool {
        self.cycle.len() == 1
    }

    /// `(-1)^(k-1)` for a cycle of length `k`.
    pub fn sign(&self) -> i32 {
        if self.cycle.len() % 2 == 1 {
            1
        } else {
            -1
        }
    }

    /// Images `sigma(p)`; the term it selects is `prod_p R[p][sigma(p)]`.
    pub fn images(&self) -> Vec<usize> {
        let mut img: Vec<usize> = (0..self.n).collect();
        let k = self.cycle.len();
        for i in 0..k {
            img[self.cycle[i]] = self.cycle[(i + 1) % k];
        }
        img
    }

    /// The chain of `P - {0}` carried by the cycle, as internal indices.
    pub fn chain(&self, poset: &Poset) -> Chain {
        Chain(self.cycle[1..].iter().map(|&p| poset.at_position(p)).collect())
    }

    /// Cycle notation over element names instead of 1-based positions.
    pub fn display_with(&self, poset: &Poset) -> String {
        if self.is_identity() {
            return "()".into();
        }
        let names: Vec<&str> = self.cycle.iter().map(|&p| poset.name(poset.at_position(p))).collect();
        format!("({})", names.join(" "))
    }
}

/// Cycle notation on 1-based positions, e.g. `(1 2 4)`; identity is `()`.
impl fmt::Display for ContributingPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("()");
        }
        f.write_str("(")?;
        for (i, p) in self.cycle.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", p + 1)?;
        }
        f.write_str(")")
    }
}

/// Chains of `P` containing 0, i.e. chains of `P - {0}` including the empty one.
/// `c(x) = 1 + sum_{y > x} c(y)` counts chains with minimum `x`.
pub fn count_chains_through_zero(poset: &Poset) -> BigInt {
    let mut from = vec![BigInt::zero(); poset.len()];
    for &x in poset.order().iter().rev() {
        let mut c = BigInt::one();
        for y in poset.strictly_above(x) {
            c += &from[y];
        }
        from[x] = c;
    }
    from.swap_remove(poset.zero())
}

/// `g(x) = sum (-1)^|C|` over nonempty chains of `P - {0}` with maximum `x`,
/// for every `x` (internal index; the 0 slot holds the empty chain's `+1`).
fn signed_chains_by_max(poset: &Poset) -> Vec<BigInt> {
    let zero = poset.zero();
    let mut by_max = vec![BigInt::zero(); poset.len()];
    by_max[zero] = BigInt::one();
    let mut done: Vec<usize> = Vec::with_capacity(poset.len());
    for &x in poset.order() {
        if x == zero {
            continue;
        }
        // {x} alone, or a shorter chain ending below x with x appended
        let mut g = -BigInt::one();
        for &w in &done {
            if poset.lt(w, x) {
                g -= &by_max[w];
            }
        }
        by_max[x] = g;
        done.push(x);
    }
    by_max
}

/// Signed chain sum restricted to chains of `P - {0}` with maximum `x`.
pub fn signed_chain_sum_by_max(poset: &Poset, x: usize) -> Result<BigInt> {
    if x == poset.zero() {
        return Err(Error::InvalidArgument("the chain maximum must not be the 0 element".into()));
    }
    if x >= poset.len() {
        return Err(Error::InvalidArgument(format!("no element with index {x}")));
    }
    Ok(signed_chains_by_max(poset).swap_remove(x))
}

/// `sum (-1)^|C|` over all chains of `P - {0}`, the empty chain included.
pub fn signed_chain_sum(poset: &Poset) -> BigInt {
    signed_chains_by_max(poset).into_iter().sum()
}

/// Depth-first stream of contributing permutations in labeling order,
/// starting with the identity.
pub struct ContributingPermutations<'a> {
    poset: &'a Poset,
    chain: Vec<usize>,
    cursor: usize,
    started: bool,
}

impl Iterator for ContributingPermutations<'_> {
    type Item = ContributingPermutation;

    fn next(&mut self) -> Option<ContributingPermutation> {
        let n = self.poset.len();
        if !self.started {
            self.started = true;
            self.cursor = 1;
            return Some(ContributingPermutation::identity(n));
        }
        loop {
            let fits = |p: usize| match self.chain.last() {
                None => true,
                Some(&q) => self.poset.lt(self.poset.at_position(q), self.poset.at_position(p)),
            };
            if let Some(p) = (self.cursor..n).find(|&p| fits(p)) {
                self.chain.push(p);
                self.cursor = p + 1;
                let mut cycle = Vec::with_capacity(self.chain.len() + 1);
                cycle.push(0);
                cycle.extend_from_slice(&self.chain);
                return Some(ContributingPermutation { n, cycle });
            }
            let q = self.chain.pop()?;
            self.cursor = q + 1;
        }
    }
}

/// All permutations contributing to `det R(P)` / `perm R(P)`. The stream has
/// [`count_chains_through_zero`] items.
pub fn enumerate_contributing_permutations(poset: &Poset) -> Result<ContributingPermutations<'_>> {
    let total = count_chains_through_zero(poset);
    let total = total.to_u64().unwrap_or(u64::MAX);
    check_cap("contributing permutations", total, ENUMERATION_CAP)?;
    Ok(ContributingPermutations {
        poset,
        chain: Vec::new(),
        cursor: 0,
        started: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportMethod {
    /// Every one of the `n!` permutations was tested.
    Exhaustive,
    /// Support size taken from the permanent of the 0/1 matrix.
    Permanent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportReport {
    pub holds: bool,
    /// Number of permutations with no zero factor in `R(P)`.
    pub support_size: BigInt,
    /// Number of permutations produced by the enumeration.
    pub enumerated: u64,
    pub method: SupportMethod,
}

/// Checks that the nonvanishing terms of `R(P)` are exactly the
/// enumerated contributing permutations.
pub fn verify_contributing_support(poset: &Poset) -> Result<SupportReport> {
    let n = poset.len();
    check_cap("support check size", n as u64, PERMANENT_CAP as u64)?;
    let r = redheffer_general(poset).into_matrix();
    let mut streamed = HashSet::new();
    let mut all_nonvanishing = true;
    for perm in enumerate_contributing_permutations(poset)? {
        let img = perm.images();
        all_nonvanishing &= img.iter().enumerate().all(|(p, &q)| !r[(p, q)].is_zero());
        streamed.insert(img);
    }
    let enumerated = streamed.len() as u64;

    if n <= EXHAUSTIVE_SUPPORT_CAP {
        let mut support = HashSet::new();
        for_each_permutation(n, |img| {
            if img.iter().enumerate().all(|(p, &q)| !r[(p, q)].is_zero()) {
                support.insert(img.to_vec());
            }
        });
        Ok(SupportReport {
            holds: support == streamed,
            support_size: BigInt::from(support.len()),
            enumerated,
            method: SupportMethod::Exhaustive,
        })
    } else {
        let support_size = permanent_ryser(&r)?;
        Ok(SupportReport {
            holds: all_nonvanishing && support_size == BigInt::from(enumerated),
            support_size,
            enumerated,
            method: SupportMethod::Permanent,
        })
    }
}

/// Heap's algorithm over all permutations of `0..n`.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&a);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
