//! Finite posets with a 0 element.
//!
//! A [`Poset`] keeps its elements in input order ("internal indices") and,
//! separately, a linear extension that assigns each element a matrix
//! position. The 0 element always sits at position 0, and `x < y` implies
//! `position(x) < position(y)`, so zeta matrices come out upper-triangular.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};
use crate::exactmat::IntMatrix;

/// Largest number of elements a poset may have.
pub const POSET_CAP: usize = 4096;
/// Largest `n` accepted by [`boolean_lattice`] (`2^12 = POSET_CAP`).
pub const BOOLEAN_CAP: usize = 12;

/// Square bit table, one row of `u64` words per element.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BitTable {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitTable {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitTable {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }

    fn row_is_full(&self, i: usize) -> bool {
        self.row_ones(i).count() == self.n
    }

    /// Boolean product `self * self`.
    fn square(&self) -> BitTable {
        let mut out = BitTable::new(self.n);
        for i in 0..self.n {
            let dst = i * self.words;
            for k in self.row_ones(i) {
                let src = self.row(k);
                for (d, s) in out.bits[dst..dst + self.words].iter_mut().zip(src) {
                    *d |= s;
                }
            }
        }
        out
    }
}

/// A validated finite poset with a 0 element and a fixed linear extension.
#[derive(Clone, Debug)]
pub struct Poset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    leq: BitTable,
    zero: usize,
    /// internal index -> matrix position
    position: Vec<usize>,
    /// matrix position -> internal index
    order: Vec<usize>,
}

/// On-disk poset description: `{"elements": [...], "covers": [["a","b"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

/// Builds a poset from elements and (not necessarily minimal) cover pairs
/// `(a, b)` meaning `a <= b`. The order is the reflexive-transitive closure.
pub fn build_poset<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Poset> {
    if elements.is_empty() {
        return Err(Error::EmptyPoset);
    }
    check_cap("poset size", elements.len() as u64, POSET_CAP as u64)?;
    let names: Vec<String> = elements.iter().map(|e| e.as_ref().to_owned()).collect();
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateElement(name.clone()));
        }
    }
    let n = names.len();
    let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownElement(s.to_owned()));

    let mut rel = BitTable::new(n);
    for i in 0..n {
        rel.set(i, i);
    }
    for (a, b) in covers {
        rel.set(lookup(a.as_ref())?, lookup(b.as_ref())?);
    }
    loop {
        let next = rel.square();
        if next == rel {
            break;
        }
        rel = next;
    }

    for i in 0..n {
        if let Some(j) = rel.row_ones(i).find(|&j| j != i && rel.get(j, i)) {
            return Err(Error::Cycle(names[i.min(j)].clone()));
        }
    }
    let zero = (0..n).find(|&z| rel.row_is_full(z)).ok_or(Error::NoZero)?;
    let order = linear_extension(&rel);

    Ok(Poset::from_parts(names, index, rel, zero, order))
}

/// Kahn's algorithm on the strict order; among available elements the one
/// listed first in the input wins.
fn linear_extension(rel: &BitTable) -> Vec<usize> {
    let n = rel.n;
    let mut indegree = vec![0usize; n];
    for i in 0..n {
        for j in rel.row_ones(i) {
            if j != i {
                indegree[j] += 1;
            }
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&i| indegree[i] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(x)) = ready.pop() {
        order.push(x);
        for y in rel.row_ones(x) {
            if y != x {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    ready.push(Reverse(y));
                }
            }
        }
    }
    debug_assert_eq!(order.len(), n, "closure was checked acyclic");
    order
}

/// Integers `1..=n` under divisibility. The zero is `1` and the labeling is numeric.
pub fn divisor_poset(n: usize) -> Result<Poset> {
    if n == 0 {
        return Err(Error::InvalidArgument("divisor poset needs n >= 1".into()));
    }
    check_cap("poset size", n as u64, POSET_CAP as u64)?;
    let names: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
    let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut rel = BitTable::new(n);
    for d in 1..=n {
        for m in (d..=n).step_by(d) {
            rel.set(d - 1, m - 1);
        }
    }
    Ok(Poset::from_parts(names, index, rel, 0, (0..n).collect()))
}

/// Subsets of `{1..n}` under inclusion, listed by cardinality and then by
/// the binary value of the characteristic vector (element `i` is bit `i-1`).
pub fn boolean_lattice(n: usize) -> Result<Poset> {
    check_cap("boolean lattice rank", n as u64, BOOLEAN_CAP as u64)?;
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    let names: Vec<String> = masks.iter().map(|&m| subset_name(m)).collect();
    let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let size = masks.len();
    let mut rel = BitTable::new(size);
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate().skip(i) {
            if a & !b == 0 {
                rel.set(i, j);
            }
        }
    }
    Ok(Poset::from_parts(names, index, rel, 0, (0..size).collect()))
}

fn subset_name(mask: u32) -> String {
    let members: Vec<String> = (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| (b + 1).to_string())
        .collect();
    format!("{{{}}}", members.join(","))
}

impl Poset {
    fn from_parts(
        elements: Vec<String>,
        index: HashMap<String, usize>,
        leq: BitTable,
        zero: usize,
        order: Vec<usize>,
    ) -> Poset {
        let mut position = vec![0; order.len()];
        for (p, &x) in order.iter().enumerate() {
            position[x] = p;
        }
        debug_assert_eq!(order[0], zero);
        Poset {
            elements,
            index,
            leq,
            zero,
            position,
            order,
        }
    }

    /// Parses the JSON poset format.
    pub fn from_json(text: &str) -> Result<Poset> {
        let file: PosetFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let covers: Vec<(&str, &str)> = file.covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let elements: Vec<&str> = file.elements.iter().map(String::as_str).collect();
        build_poset(&elements, &covers)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Poset> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {}", path.display(), e)))?;
        Poset::from_json(&text)
    }

    /// Elements in input order with the Hasse diagram as covers.
    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            elements: self.elements.clone(),
            covers: self
                .hasse_edges()
                .map(|(a, b)| (self.elements[a].clone(), self.elements[b].clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("plain strings always serialize")
    }

    /// Pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn hasse_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |x| {
            self.strictly_above(x)
                .filter(move |&y| !self.strictly_above(x).any(|z| z != y && self.leq(z, y)))
                .map(move |y| (x, y))
        })
    }

    /// Random poset on `size` elements named `e0, e1, ...` (listed in shuffled
    /// order). Pairs are related with probability `density` before closure,
    /// and a randomly chosen element is placed below everything.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, size: usize, density: f64) -> Poset {
        assert!((1..=POSET_CAP).contains(&size));
        let mut names: Vec<String> = (0..size).map(|i| format!("e{i}")).collect();
        names.shuffle(rng);
        // names[0] is the zero; hidden order for the rest is names order
        let mut covers = Vec::new();
        for i in 1..size {
            covers.push((names[0].clone(), names[i].clone()));
            for j in i + 1..size {
                if rng.gen_bool(density) {
                    covers.push((names[i].clone(), names[j].clone()));
                }
            }
        }
        covers.shuffle(rng);
        names.shuffle(rng);
        build_poset(&names, &covers).expect("random construction is acyclic with a zero")
    }

    /// Same order, different linear extension. `order[p]` is the internal
    /// index placed at position `p`; it must be a linear extension.
    pub fn relabeled(&self, order: Vec<usize>) -> Result<Poset> {
        let n = self.len();
        if order.len() != n {
            return Err(Error::DimensionMismatch(n, order.len()));
        }
        let mut seen = vec![false; n];
        for &x in &order {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidArgument("labeling is not a bijection".into()));
            }
        }
        for (p, &x) in order.iter().enumerate() {
            if order[..p].iter().any(|&w| self.lt(x, w)) {
                return Err(Error::InvalidArgument(format!(
                    "labeling places `{}` after a larger element",
                    self.elements[x]
                )));
            }
        }
        Ok(Poset::from_parts(
            self.elements.clone(),
            self.index.clone(),
            self.leq.clone(),
            self.zero,
            order,
        ))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Internal index of the 0 element.
    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq.get(x, y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq.get(x, y)
    }

    /// Matrix position of internal element `x`.
    pub fn position(&self, x: usize) -> usize {
        self.position[x]
    }

    /// Internal element at matrix position `p`.
    pub fn at_position(&self, p: usize) -> usize {
        self.order[p]
    }

    /// The linear extension: internal indices in position order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Elements `y` with `x <= y`, by internal index.
    pub fn up_set(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.leq.row_ones(x)
    }

    pub fn strictly_above(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.leq.row_ones(x).filter(move |&y| y != x)
    }

    /// Number of pairs `x < y`.
    pub fn strict_pair_count(&self) -> usize {
        (0..self.len()).map(|x| self.strictly_above(x).count()).sum()
    }

    /// An element above every other element, if one exists.
    pub fn one(&self) -> Option<usize> {
        (0..self.len()).find(|&y| (0..self.len()).all(|x| self.leq(x, y)))
    }

    /// Zeta matrix in position coordinates: `(p, q)` is 1 iff
    /// `at_position(p) <= at_position(q)`.
    pub fn zeta_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.len(), |p, q| {
            if self.leq(self.order[p], self.order[q]) {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Möbius function `mu(x, y)` on internal indices; 0 unless `x <= y`.
    /// Evaluated over the interval `[x, y]` only.
    pub fn moebius(&self, x: usize, y: usize) -> BigInt {
        if !self.leq(x, y) {
            return BigInt::zero();
        }
        let mut interval: Vec<usize> = self.up_set(x).filter(|&z| self.leq(z, y)).collect();
        interval.sort_by_key(|&z| self.position[z]);
        let values = self.moebius_over(&interval);
        values.last().cloned().expect("interval contains y")
    }

    /// `mu(x, z)` for each `z` of `elems`, which must start with `x` and be in
    /// position order. Each value is minus the sum of the values below it.
    fn moebius_over(&self, elems: &[usize]) -> Vec<BigInt> {
        let mut values: Vec<BigInt> = Vec::with_capacity(elems.len());
        for (k, &z) in elems.iter().enumerate() {
            if k == 0 {
                values.push(BigInt::one());
                continue;
            }
            let mut acc = BigInt::zero();
            for (w, v) in elems[..k].iter().zip(&values) {
                if !v.is_zero() && self.leq(*w, z) {
                    acc -= v;
                }
            }
            values.push(acc);
        }
        values
    }

    /// `mu(x, y)` for every `y`, indexed by internal index.
    pub fn moebius_row(&self, x: usize) -> Vec<BigInt> {
        let mut up: Vec<usize> = self.up_set(x).collect();
        up.sort_by_key(|&z| self.position[z]);
        let mut row = vec![BigInt::zero(); self.len()];
        for (z, v) in up.iter().zip(self.moebius_over(&up)) {
            row[*z] = v;
        }
        row
    }

    /// All Möbius values.
    pub fn moebius_table(&self) -> MoebiusTable {
        let n = self.len();
        let mut mu = Vec::with_capacity(n * n);
        for x in 0..n {
            mu.extend(self.moebius_row(x));
        }
        MoebiusTable { n, mu }
    }
}

/// Dense table of `mu(x, y)` over internal indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusTable {
    n: usize,
    mu: Vec<BigInt>,
}

impl MoebiusTable {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, x: usize, y: usize) -> &BigInt {
        &self.mu[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[BigInt] {
        &self.mu[x * self.n..(x + 1) * self.n]
    }

    /// The table in matrix position coordinates; this is the inverse of
    /// [`Poset::zeta_matrix`].
    pub fn to_matrix(&self, poset: &Poset) -> IntMatrix {
        IntMatrix::from_fn(self.n, |p, q| self.get(poset.at_position(p), poset.at_position(q)).clone())
    }
}
