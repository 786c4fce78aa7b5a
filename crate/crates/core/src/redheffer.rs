//! Redheffer matrices of posets and their closed-form determinant and inverse.
//!
//! The Redheffer matrix of a poset is its zeta matrix with the column of the
//! 0 element replaced by ones. In position coordinates that is
//! `R = Z + u v^T` with `u = 1 - e_0` and `v = e_0`, so with `Z^-1 = mu`
//! the inverse follows from the Sherman-Morrison update.

use std::borrow::Cow;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmat::{IntMatrix, RatMatrix};
use crate::poset::{divisor_poset, Poset};

/// A Redheffer matrix together with the poset it came from.
#[derive(Clone, Debug)]
pub struct RedhefferMatrix<'a> {
    matrix: IntMatrix,
    poset: Cow<'a, Poset>,
}

impl RedhefferMatrix<'_> {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }
}

/// Classical `n x n` Redheffer matrix: `(i, j)` is 1 iff `i | j` or `j = 1`
/// (1-based), built straight from that rule.
pub fn redheffer_classic(n: usize) -> Result<RedhefferMatrix<'static>> {
    let poset = divisor_poset(n)?;
    let matrix = IntMatrix::from_fn(n, |i, j| {
        let (i, j) = (i + 1, j + 1);
        if j == 1 || j % i == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    Ok(RedhefferMatrix {
        matrix,
        poset: Cow::Owned(poset),
    })
}

/// Redheffer matrix of an arbitrary poset, in its position coordinates.
pub fn redheffer_general(poset: &Poset) -> RedhefferMatrix<'_> {
    let mut matrix = poset.zeta_matrix();
    for p in 0..poset.len() {
        matrix[(p, 0)] = BigInt::one();
    }
    RedhefferMatrix {
        matrix,
        poset: Cow::Borrowed(poset),
    }
}

/// `sum_x mu(0, x)`; only the Möbius row of the 0 element is evaluated.
pub fn det_via_moebius(poset: &Poset) -> BigInt {
    poset.moebius_row(poset.zero()).into_iter().sum()
}

/// Inverse of `B + u v^T` given `B^-1`:
/// `B^-1 - (B^-1 u)(v^T B^-1) / (1 + v^T B^-1 u)`.
pub fn sherman_morrison_inverse(
    b_inv: &RatMatrix,
    u: &[BigRational],
    v: &[BigRational],
) -> Result<RatMatrix> {
    let n = b_inv.dim();
    if u.len() != n {
        return Err(Error::DimensionMismatch(n, u.len()));
    }
    if v.len() != n {
        return Err(Error::DimensionMismatch(n, v.len()));
    }
    let binv_u: Vec<BigRational> = (0..n)
        .map(|i| dot(b_inv.row(i), u))
        .collect();
    let vt_binv: Vec<BigRational> = (0..n)
        .map(|j| {
            v.iter()
                .enumerate()
                .filter(|(_, vi)| !vi.is_zero())
                .map(|(i, vi)| vi * &b_inv[(i, j)])
                .sum()
        })
        .collect();
    let denom = BigRational::one() + dot(v, &binv_u);
    if denom.is_zero() {
        return Err(Error::SingularUpdate);
    }
    Ok(RatMatrix::from_fn(n, |i, j| {
        if binv_u[i].is_zero() || vt_binv[j].is_zero() {
            b_inv[(i, j)].clone()
        } else {
            &b_inv[(i, j)] - &binv_u[i] * &vt_binv[j] / &denom
        }
    }))
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Closed-form inverse of the Redheffer matrix, in position coordinates:
///
/// `R^-1(x, y) = mu(x, y) - mu(0, y) * (sum_{z != 0} mu(x, z)) / (sum_z mu(0, z))`.
pub fn redheffer_inverse(poset: &Poset) -> Result<RatMatrix> {
    let table = poset.moebius_table();
    let zero = poset.zero();
    let total: BigInt = table.row(zero).iter().sum();
    if total.is_zero() {
        return Err(Error::Singular);
    }
    // sum_{z != 0} mu(x, z), per internal x
    let row_tail: Vec<BigInt> = (0..poset.len())
        .map(|x| table.row(x).iter().sum::<BigInt>() - table.get(x, zero))
        .collect();
    Ok(RatMatrix::from_fn(poset.len(), |p, q| {
        let (x, y) = (poset.at_position(p), poset.at_position(q));
        let correction = BigRational::new(table.get(zero, y) * &row_tail[x], total.clone());
        BigRational::from_integer(table.get(x, y).clone()) - correction
    }))
}

/// The fixed rank-one split `R = Z + u v^T`: `u = 1 - e_0`, `v = e_0`.
pub fn rank_one_vectors(n: usize) -> (Vec<BigRational>, Vec<BigRational>) {
    let u = (0..n)
        .map(|i| if i == 0 { BigRational::zero() } else { BigRational::one() })
        .collect();
    let v = (0..n)
        .map(|i| if i == 0 { BigRational::one() } else { BigRational::zero() })
        .collect();
    (u, v)
}

/// Inverse via the generic Sherman-Morrison update applied to `Z^-1 = mu`.
pub fn redheffer_inverse_by_update(poset: &Poset) -> Result<RatMatrix> {
    let b_inv = poset.moebius_table().to_matrix(poset).to_rational();
    let (u, v) = rank_one_vectors(poset.len());
    sherman_morrison_inverse(&b_inv, &u, &v).map_err(|e| match e {
        Error::SingularUpdate => Error::Singular,
        other => other,
    })
}
