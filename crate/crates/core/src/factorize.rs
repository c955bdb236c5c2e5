//! From weights to matrices and back.

use crate::error::{Error, Result};
use crate::formulas::{d_matrix, enum_q_i, l_closed, l_inverse_closed, lower_term, u_closed, u_inverse_closed};
use crate::matrix::{is_totally_positive, ldu_eliminate, mat_mul, Matrix};
use crate::params::{ParamSet, Positivity};
use crate::scalar::Scalar;

/// `A = L * D * U` together with the weights that generate the three factors.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<T> {
    pub l: Matrix<T>,
    pub d: Matrix<T>,
    pub u: Matrix<T>,
    pub params: ParamSet<T>,
}

impl<T: Scalar> Factorization<T> {
    /// `L * D * U`.
    pub fn product(&self) -> Matrix<T> {
        let ld = mat_mul(&self.l, &self.d).expect("square factors of equal size");
        mat_mul(&ld, &self.u).expect("square factors of equal size")
    }
}

/// `L * D * U` for the factors generated by `params`. Positive weights give a
/// totally positive matrix.
pub fn assemble<T: Scalar>(params: &ParamSet<T>) -> Matrix<T> {
    let ld = mat_mul(&l_closed(params), &d_matrix(params, false).expect("not inverted")).expect("same size");
    mat_mul(&ld, &u_closed(params)).expect("same size")
}

/// Solves for the lower weights `t[i][j]`, `i > j`, of a unit lower factor.
///
/// Every `alpha` in `Q_I(i, j)` has `alpha_1 <= j`, and `alpha_1 == j` only for
/// the constant sequence, whose term is `c * t[i][j]` with
/// `c = t[j+1][j] * ... * t[i-1][j]`. Rows are solved top to bottom and each
/// row left to right, so all other weights in `L[i][j]` are already known.
///
/// When `c` vanishes the entry does not pin `t[i][j]` down: a zero residual
/// leaves it at zero, a nonzero residual is an error.
fn recover_lower<T: Scalar>(l: &Matrix<T>, params: &mut ParamSet<T>) -> Result<()> {
    let n = params.order();
    for i in 1..=n {
        for j in 0..i {
            params.set(i, j, T::zero());
            let mut known = T::zero();
            for alpha in enum_q_i(i, j) {
                if alpha.get(1) < j {
                    known = known + lower_term(params, i, j, &alpha);
                }
            }
            let coeff = (j..i - 1).fold(T::one(), |acc, r| acc * params.t(r + 1, j).clone());
            let residual = l[(i, j)].clone() - known;
            if coeff.is_zero() {
                if !residual.is_zero() {
                    return Err(Error::ZeroCoefficient { row: i, col: j, residual: residual.to_string() });
                }
            } else {
                params.set(i, j, residual / coeff);
            }
        }
    }
    Ok(())
}

/// Recovers the unique weights with `l_closed = l`, `d_matrix = d` and
/// `u_closed = u`. Upper weights come from the lower solve on `u^T` with the
/// families swapped.
pub fn recover_params<T: Scalar>(l: &Matrix<T>, d: &Matrix<T>, u: &Matrix<T>) -> Result<ParamSet<T>> {
    let dim = l.rows();
    if !l.is_unit_lower() {
        return Err(Error::InvalidFactor("L must be square unit lower triangular".into()));
    }
    if !d.is_diagonal() || d.rows() != dim {
        return Err(Error::InvalidFactor(format!("D must be a {dim}x{dim} diagonal matrix")));
    }
    if !u.is_unit_upper() || u.rows() != dim {
        return Err(Error::InvalidFactor(format!("U must be a {dim}x{dim} unit upper triangular matrix")));
    }
    if let Some(index) = (0..dim).find(|&i| d[(i, i)].is_zero()) {
        return Err(Error::ZeroDiagonal { index });
    }

    let order = dim - 1;
    let mut lower = ParamSet::from_fn(order, |a, b| if a == b { d[(a, a)].clone() } else { T::zero() });
    recover_lower(l, &mut lower)?;
    let mut upper_dual = ParamSet::filled(order, T::zero());
    recover_lower(&u.transpose(), &mut upper_dual).map_err(|e| match e {
        Error::ZeroCoefficient { row, col, residual } => Error::ZeroCoefficient { row: col, col: row, residual },
        other => other,
    })?;
    Ok(ParamSet::from_fn(order, |a, b| if a < b { upper_dual.t(b, a).clone() } else { lower.t(a, b).clone() }))
}

/// Eliminates `a = L * D * U` and recovers the weights. With `strict_check`,
/// `a` must first pass the strict all-minors test.
pub fn factor_tp<T: Scalar>(a: &Matrix<T>, strict_check: bool) -> Result<Factorization<T>> {
    if strict_check {
        let report = is_totally_positive(a, Positivity::Strict)?;
        if let Some(w) = report.witness {
            return Err(w.into_error(Positivity::Strict));
        }
    }
    let ldu = ldu_eliminate(a)?;
    let params = recover_params(&ldu.l, &ldu.d, &ldu.u)?;
    Ok(Factorization { l: ldu.l, d: ldu.d, u: ldu.u, params })
}

/// Inverse of [`assemble`]`(params)` as `U^-1 * D^-1 * L^-1`.
pub fn tp_inverse<T: Scalar>(params: &ParamSet<T>) -> Result<Matrix<T>> {
    let dinv = d_matrix(params, true)?;
    let ud = mat_mul(&u_inverse_closed(params), &dinv)?;
    mat_mul(&ud, &l_inverse_closed(params))
}
