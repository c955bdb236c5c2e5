//! Closed forms and recursions for the factors, computed straight from the
//! weights without building a network.
//!
//! Entries are sums over index sequences `alpha = (alpha_1, ..., alpha_len)`,
//! written 1-indexed to match the usual subscripts:
//!
//! - `Q_I(i, j)`: weakly increasing, length `i - j`, `0 <= alpha_r <= i - r`;
//! - `Q_SD(i, j)`: strictly decreasing, same length and bounds.
//!
//! Both are `{empty}` when `i == j` and empty when `i < j`.
//!
//! ```text
//! L[i][j]    =             sum_{alpha in Q_I(i,j)}  prod_{r=j}^{i-1} t[r+1][alpha_{i-r}]
//! L^-1[i][j] = (-1)^(i-j)  sum_{alpha in Q_SD(i,j)} prod_{s=j}^{i-1} t[s+1][alpha_{i-s}]
//! U[i][j]    =             sum_{alpha in Q_I(j,i)}  prod_{r=i}^{j-1} t[alpha_{j-r}][r+1]
//! U^-1[i][j] = (-1)^|i-j|  sum_{alpha in Q_SD(j,i)} prod_{s=i}^{j-1} t[alpha_{j-s}][s+1]
//! ```

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::{mat_mul, Matrix};
use crate::params::ParamSet;
use crate::scalar::Scalar;

/// Index sequence with 1-based access.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSequence(Vec<usize>);

impl IndexSequence {
    pub fn new(values: Vec<usize>) -> Self {
        Self(values)
    }

    /// `alpha_r`, 1-indexed.
    pub fn get(&self, r: usize) -> usize {
        assert!(r >= 1 && r <= self.0.len(), "alpha_{r} out of range for length {}", self.0.len());
        self.0[r - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for IndexSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "()")
        } else {
            write!(f, "({})", self.0.iter().join(","))
        }
    }
}

#[derive(Clone, Copy)]
enum Monotone {
    WeaklyIncreasing,
    StrictlyDecreasing,
}

fn enumerate(i: usize, j: usize, shape: Monotone) -> Vec<IndexSequence> {
    fn extend(i: usize, len: usize, shape: Monotone, current: &mut Vec<usize>, out: &mut Vec<IndexSequence>) {
        let r = current.len() + 1;
        if r > len {
            out.push(IndexSequence(current.clone()));
            return;
        }
        let upper = i - r;
        let (lo, hi) = match (shape, current.last()) {
            (_, None) => (0, upper),
            (Monotone::WeaklyIncreasing, Some(&prev)) => (prev, upper),
            (Monotone::StrictlyDecreasing, Some(&prev)) => {
                if prev == 0 {
                    return;
                }
                (0, upper.min(prev - 1))
            }
        };
        for v in lo..=hi {
            current.push(v);
            extend(i, len, shape, current, out);
            current.pop();
        }
    }

    if i < j {
        return Vec::new();
    }
    let mut out = Vec::new();
    extend(i, i - j, shape, &mut Vec::with_capacity(i - j), &mut out);
    out
}

/// `Q_I(i, j)` in lexicographic order.
pub fn enum_q_i(i: usize, j: usize) -> Vec<IndexSequence> {
    enumerate(i, j, Monotone::WeaklyIncreasing)
}

/// `Q_SD(i, j)` in lexicographic order.
pub fn enum_q_sd(i: usize, j: usize) -> Vec<IndexSequence> {
    enumerate(i, j, Monotone::StrictlyDecreasing)
}

fn product<T: Scalar>(factors: impl Iterator<Item = T>) -> T {
    factors.fold(T::one(), |acc, t| acc * t)
}

/// Term of `L[i][j]` for one `alpha in Q_I(i, j)` (or `Q_SD` for the inverse).
pub(crate) fn lower_term<T: Scalar>(params: &ParamSet<T>, i: usize, j: usize, alpha: &IndexSequence) -> T {
    product((j..i).map(|r| params.t(r + 1, alpha.get(i - r)).clone()))
}

fn upper_term<T: Scalar>(params: &ParamSet<T>, i: usize, j: usize, alpha: &IndexSequence) -> T {
    product((i..j).map(|r| params.t(alpha.get(j - r), r + 1).clone()))
}

fn check_entry<T: Scalar>(params: &ParamSet<T>, i: usize, j: usize) {
    let n = params.order();
    assert!(i <= n && j <= n, "entry ({i},{j}) out of range for order {n}");
}

pub fn l_entry<T: Scalar>(params: &ParamSet<T>, i: usize, j: usize) -> T {
    check_entry(params, i, j);
    enum_q_i(i, j).iter().fold(T::zero(), |acc, alpha| acc + lower_term(params, i, j, alpha))
}

pub fn l_inverse_entry<T: Scalar>(params: &ParamSet<T>, i: usize, j: usize) -> T {
    check_entry(params, i, j);
    let sum = enum_q_sd(i, j).iter().fold(T::zero(), |acc, alpha| acc + lower_term(params, i, j, alpha));
    T::sign_power(i.abs_diff(j)) * sum
}

pub fn u_entry<T: Scalar>(params: &ParamSet<T>, i: usize, j: usize) -> T {
    check_entry(params, i, j);
    enum_q_i(j, i).iter().fold(T::zero(), |acc, alpha| acc + upper_term(params, i, j, alpha))
}

pub fn u_inverse_entry<T: Scalar>(params: &ParamSet<T>, i: usize, j: usize) -> T {
    check_entry(params, i, j);
    let sum = enum_q_sd(j, i).iter().fold(T::zero(), |acc, alpha| acc + upper_term(params, i, j, alpha));
    T::sign_power(i.abs_diff(j)) * sum
}

fn square<T: Scalar>(params: &ParamSet<T>, entry: fn(&ParamSet<T>, usize, usize) -> T) -> Matrix<T> {
    let dim = params.order() + 1;
    Matrix::from_fn(dim, dim, |i, j| entry(params, i, j))
}

/// Unit lower factor from its closed form.
pub fn l_closed<T: Scalar>(params: &ParamSet<T>) -> Matrix<T> {
    square(params, l_entry)
}

/// Unit upper factor from its closed form.
pub fn u_closed<T: Scalar>(params: &ParamSet<T>) -> Matrix<T> {
    square(params, u_entry)
}

/// Inverse of the lower factor from its signed closed form.
pub fn l_inverse_closed<T: Scalar>(params: &ParamSet<T>) -> Matrix<T> {
    square(params, l_inverse_entry)
}

/// Inverse of the upper factor from its signed closed form.
pub fn u_inverse_closed<T: Scalar>(params: &ParamSet<T>) -> Matrix<T> {
    square(params, u_inverse_entry)
}

/// `diag(t[0][0], ..., t[n][n])`, or the reciprocals when `inverted`.
pub fn d_matrix<T: Scalar>(params: &ParamSet<T>, inverted: bool) -> Result<Matrix<T>> {
    let mut diag = params.diag();
    if inverted {
        for (index, v) in diag.iter_mut().enumerate() {
            if v.is_zero() {
                return Err(Error::ZeroDiagonal { index });
            }
            *v = T::one() / v.clone();
        }
    }
    Ok(Matrix::diagonal(&diag))
}

/// `A ⊕ 1`: `a` bordered by a unit in the new bottom-right corner.
fn border<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    let k = a.rows();
    Matrix::from_fn(k + 1, k + 1, |i, j| match (i < k, j < k) {
        (true, true) => a[(i, j)].clone(),
        (false, false) => T::one(),
        _ => T::zero(),
    })
}

/// Lower factor by bordering: `L_0 = (1)`, `L_{k+1} = F_k (L_k ⊕ 1)`, where
/// `F_k` is the identity with bottom row replaced by minus the leading part of
/// row `k + 1` of the inverse.
pub fn l_recursive<T: Scalar>(params: &ParamSet<T>) -> Matrix<T> {
    let mut l = Matrix::identity(1);
    for k in 0..params.order() {
        let f = Matrix::from_fn(k + 2, k + 2, |i, j| match (i == k + 1, j == k + 1) {
            (true, false) => -l_inverse_entry(params, k + 1, j),
            _ if i == j => T::one(),
            _ => T::zero(),
        });
        l = mat_mul(&f, &border(&l)).expect("conforming shapes");
    }
    l
}

/// Upper factor by bordering: `U_0 = (1)`, `U_{k+1} = (U_k ⊕ 1) F_k`, where
/// `F_k` is the identity with last column replaced by minus the leading part of
/// column `k + 1` of the inverse.
pub fn u_recursive<T: Scalar>(params: &ParamSet<T>) -> Matrix<T> {
    let mut u = Matrix::identity(1);
    for k in 0..params.order() {
        let f = Matrix::from_fn(k + 2, k + 2, |i, j| match (i == k + 1, j == k + 1) {
            (false, true) => -u_inverse_entry(params, i, k + 1),
            _ if i == j => T::one(),
            _ => T::zero(),
        });
        u = mat_mul(&border(&u), &f).expect("conforming shapes");
    }
    u
}
