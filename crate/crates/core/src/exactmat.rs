//! Exact dense square matrices over big integers and rationals.
//!
//! Determinants use fraction-free (Bareiss) elimination and permanents use
//! Ryser's inclusion-exclusion formula walked in Gray-code order. Both try a
//! machine-word fast path first and fall back to `BigInt` arithmetic when an
//! intermediate value leaves `i128`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{check_cap, Error, Result};

/// Largest dimension accepted by [`det_bareiss`].
pub const DET_CAP: usize = 1024;
/// Largest dimension accepted by [`permanent_ryser`].
pub const PERMANENT_CAP: usize = 24;

/// Dense square matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    n: usize,
    entries: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T> Matrix<T> {
    /// Builds an `n x n` matrix from row-major entries.
    pub fn new(n: usize, entries: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(n * n, entries.len()));
        }
        Ok(Matrix { n, entries })
    }

    /// # Panics
    /// If `n == 0`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(n > 0, "matrix dimension must be at least 1");
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Matrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.n)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.n {
                self.entries.swap(a * self.n + j, b * self.n + j);
            }
        }
    }

    /// Applies `f` entrywise.
    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    /// Reorders rows and columns: entry `(i, j)` of the result is entry
    /// `(perm[i], perm[j])` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        Matrix::from_fn(self.n, |i, j| self[(perm[i], perm[j])].clone())
    }
}

impl<T: Zero + One + Clone> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.entries[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.entries[i * self.n + j]
    }
}

impl<T: fmt::Display> Matrix<T> {
    /// One row per line, entries separated by tabs. Rationals print as `p/q`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join("\t"));
            out.push('\n');
        }
        out
    }
}

impl<T: FromStr> Matrix<T> {
    /// Parses the TSV layout written by [`Matrix::to_tsv`]. Blank lines are skipped.
    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut n = None;
        let mut rows = 0;
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
            match n {
                None => n = Some(fields.len()),
                Some(w) if w != fields.len() => {
                    return Err(Error::Parse(format!(
                        "line {}: expected {} fields, found {}",
                        lineno + 1,
                        w,
                        fields.len()
                    )))
                }
                _ => {}
            }
            for f in fields {
                let v = f
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad entry `{}`", lineno + 1, f)))?;
                entries.push(v);
            }
            rows += 1;
        }
        let n = n.ok_or(Error::EmptyMatrix)?;
        if rows != n {
            return Err(Error::Parse(format!("{} rows but {} columns", rows, n)));
        }
        Matrix::new(n, entries)
    }
}

impl IntMatrix {
    pub fn from_i64(n: usize, entries: &[i64]) -> Result<Self> {
        Matrix::new(n, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    fn to_i128(&self) -> Option<Vec<i128>> {
        self.entries.iter().map(|x| x.to_i128()).collect()
    }
}

/// Exact matrix product.
pub fn mat_mul<T>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>>
where
    T: Clone + Zero,
    for<'x> &'x T: Mul<&'x T, Output = T>,
    T: Add<T, Output = T>,
{
    if a.n != b.n {
        return Err(Error::DimensionMismatch(a.n, b.n));
    }
    let n = a.n;
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = &a[(i, k)];
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                let bkj = &b[(k, j)];
                if bkj.is_zero() {
                    continue;
                }
                let cell = &mut out[i * n + j];
                *cell = std::mem::replace(cell, T::zero()) + aik * bkj;
            }
        }
    }
    Matrix::new(n, out)
}

/// True iff `m` is exactly the identity matrix.
pub fn is_identity<T: Zero + One + PartialEq>(m: &Matrix<T>) -> bool {
    (0..m.n).all(|i| {
        (0..m.n).all(|j| {
            let x = &m[(i, j)];
            if i == j {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    })
}

/// Ring operations needed by fraction-free elimination. `None` signals overflow.
trait BareissEntry: Clone {
    fn is_zero(&self) -> bool;
    /// `(x * pivot - lead * pivot_row) / prev`, an exact division.
    fn step(x: &Self, pivot: &Self, lead: &Self, pivot_row: &Self, prev: &Self) -> Option<Self>;
    fn negate(&self) -> Option<Self>;
}

impl BareissEntry for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn step(x: &i128, pivot: &i128, lead: &i128, pivot_row: &i128, prev: &i128) -> Option<i128> {
        let lhs = x.checked_mul(*pivot)?;
        let rhs = lead.checked_mul(*pivot_row)?;
        Some(lhs.checked_sub(rhs)? / prev)
    }

    fn negate(&self) -> Option<i128> {
        self.checked_neg()
    }
}

impl BareissEntry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn step(x: &BigInt, pivot: &BigInt, lead: &BigInt, pivot_row: &BigInt, prev: &BigInt) -> Option<BigInt> {
        Some((x * pivot - lead * pivot_row) / prev)
    }

    fn negate(&self) -> Option<BigInt> {
        Some(-self)
    }
}

fn bareiss<T: BareissEntry>(n: usize, mut a: Vec<T>, one: T, zero: T) -> Option<T> {
    let mut negate = false;
    let mut prev = one;
    for k in 0..n.saturating_sub(1) {
        if a[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return Some(zero);
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let v = T::step(&a[i * n + j], &pivot, &lead, &a[k * n + j], &prev)?;
                a[i * n + j] = v;
            }
        }
        prev = pivot;
    }
    let d = a[n * n - 1].clone();
    if negate {
        d.negate()
    } else {
        Some(d)
    }
}

/// Exact determinant by Bareiss elimination. Every intermediate is a minor
/// of `m`, so all divisions are exact.
pub fn det_bareiss(m: &IntMatrix) -> Result<BigInt> {
    check_cap("determinant dimension", m.n as u64, DET_CAP as u64)?;
    if let Some(small) = m.to_i128() {
        if let Some(d) = bareiss(m.n, small, 1i128, 0i128) {
            return Ok(BigInt::from(d));
        }
    }
    let d = bareiss(m.n, m.entries.clone(), BigInt::one(), BigInt::zero());
    Ok(d.expect("BigInt elimination cannot overflow"))
}

/// Exact permanent by Ryser's formula
/// `perm(A) = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} a_ij`,
/// visiting column subsets in Gray-code order so each step changes one row-sum term.
pub fn permanent_ryser(m: &IntMatrix) -> Result<BigInt> {
    check_cap("permanent dimension", m.n as u64, PERMANENT_CAP as u64)?;
    let small: Option<Vec<i64>> = m.entries.iter().map(|x| x.to_i64()).collect();
    if let Some(small) = small {
        if let Some(p) = ryser_i128(m.n, &small) {
            return Ok(p);
        }
    }
    Ok(ryser_big(m))
}

fn ryser_i128(n: usize, a: &[i64]) -> Option<BigInt> {
    let mut row_sums = vec![0i128; n];
    let mut acc: i128 = 0;
    let mut spill = BigInt::zero();
    let mut in_set = vec![false; n];
    let mut size = 0usize;
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        in_set[j] = !in_set[j];
        if in_set[j] {
            size += 1;
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += a[i * n + j] as i128;
            }
        } else {
            size -= 1;
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= a[i * n + j] as i128;
            }
        }
        let mut prod: i128 = 1;
        for &s in &row_sums {
            if s == 0 {
                prod = 0;
                break;
            }
            prod = prod.checked_mul(s)?;
        }
        if prod == 0 {
            continue;
        }
        if size % 2 == 1 {
            prod = -prod;
        }
        match acc.checked_add(prod) {
            Some(v) => acc = v,
            None => {
                spill += acc;
                acc = prod;
            }
        }
    }
    let total = spill + acc;
    Some(if n % 2 == 1 { -total } else { total })
}

fn ryser_big(m: &IntMatrix) -> BigInt {
    let n = m.n;
    let mut row_sums = vec![BigInt::zero(); n];
    let mut total = BigInt::zero();
    let mut in_set = vec![false; n];
    let mut size = 0usize;
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        in_set[j] = !in_set[j];
        if in_set[j] {
            size += 1;
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += &m[(i, j)];
            }
        } else {
            size -= 1;
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= &m[(i, j)];
            }
        }
        if row_sums.iter().any(Zero::is_zero) {
            continue;
        }
        let prod: BigInt = row_sums.iter().product();
        if size % 2 == 1 {
            total -= prod;
        } else {
            total += prod;
        }
    }
    if n % 2 == 1 {
        -total
    } else {
        total
    }
}

/// True iff every entry of `m` lies in `{0, 1}`.
pub fn is_zero_one(m: &IntMatrix) -> bool {
    m.entries.iter().all(|x| Zero::is_zero(x) || x.is_one())
}

/// Largest absolute entry, used only for diagnostics.
pub fn max_abs_entry(m: &IntMatrix) -> BigInt {
    m.entries.iter().map(|x| x.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: usize, v: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(n, v).unwrap()
    }

    fn cofactor(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * cofactor(&minor)
            })
            .sum()
    }

    #[test]
    fn identity_det_and_perm() {
        let id = IntMatrix::identity(5);
        assert_eq!(det_bareiss(&id).unwrap(), BigInt::one());
        assert_eq!(permanent_ryser(&id).unwrap(), BigInt::one());
    }

    #[test]
    fn all_ones_permanent_is_factorial() {
        let m = int(4, &[1; 16]);
        assert_eq!(permanent_ryser(&m).unwrap(), BigInt::from(24));
        assert_eq!(det_bareiss(&m).unwrap(), BigInt::zero());
    }

    #[test]
    fn repeated_row_is_singular() {
        let m = int(3, &[1, 2, 3, 4, 5, 6, 1, 2, 3]);
        assert_eq!(det_bareiss(&m).unwrap(), BigInt::zero());
    }

    #[test]
    fn needs_pivot_swap() {
        let rows = vec![vec![0, 1, 2], vec![3, 0, 1], vec![1, 1, 0]];
        let flat: Vec<i64> = rows.concat();
        assert_eq!(det_bareiss(&int(3, &flat)).unwrap(), BigInt::from(cofactor(&rows)));
    }

    #[test]
    fn big_entries_take_the_bigint_path() {
        let big: BigInt = BigInt::from(10).pow(30);
        let m = Matrix::new(2, vec![big.clone(), BigInt::one(), BigInt::one(), big.clone()]).unwrap();
        assert_eq!(det_bareiss(&m).unwrap(), &big * &big - 1);
        assert_eq!(permanent_ryser(&m).unwrap(), &big * &big + 1);
    }

    #[test]
    fn ryser_falls_back_past_i128() {
        // row-sum products reach 2^168
        let e = BigInt::from(1u64 << 40);
        let m = Matrix::from_fn(4, |_, _| e.clone());
        let expect = BigInt::from(24) * e.pow(4);
        assert_eq!(permanent_ryser(&m).unwrap(), expect);
    }

    #[test]
    fn caps() {
        let m = IntMatrix::identity(25);
        assert!(matches!(permanent_ryser(&m), Err(Error::CapExceeded { .. })));
        let m = IntMatrix::identity(DET_CAP + 1);
        assert!(matches!(det_bareiss(&m), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn mat_mul_identity_and_mismatch() {
        let m = int(2, &[1, 2, 3, 4]);
        assert_eq!(mat_mul(&IntMatrix::identity(2), &m).unwrap(), m);
        assert!(matches!(
            mat_mul(&IntMatrix::identity(3), &m),
            Err(Error::DimensionMismatch(3, 2))
        ));
        let r = m.to_rational();
        assert!(!is_identity(&r));
        assert!(is_identity(&RatMatrix::identity(4)));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(IntMatrix::new(0, vec![]), Err(Error::EmptyMatrix));
        assert!(IntMatrix::new(2, vec![BigInt::one(); 3]).is_err());
    }

    #[test]
    fn tsv_layout() {
        let m = int(2, &[1, -2, 0, 3]);
        assert_eq!(m.to_tsv(), "1\t-2\n0\t3\n");
        let half = BigRational::new(BigInt::from(2), BigInt::from(4));
        let r = Matrix::new(1, vec![half]).unwrap();
        assert_eq!(r.to_tsv(), "1/2\n");
        assert_eq!(IntMatrix::from_tsv("1\t-2\n0\t3\n").unwrap(), m);
        assert!(IntMatrix::from_tsv("1\t2\n3\n").is_err());
        assert!(IntMatrix::from_tsv("1\t2\n").is_err());
    }
}
