#![allow(dead_code)]

use proptest::prelude::*;
use tpnet::{ParamSet, Rat, RatMatrix};

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

/// Small positive rationals `p/q`.
pub fn positive_rat() -> impl Strategy<Value = Rat> {
    (1i64..=9, 1i64..=5).prop_map(|(p, q)| rat(p, q))
}

/// Small rationals of either sign, including zero.
pub fn any_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| rat(p, q))
}

pub fn params_with(order: usize, value: impl Strategy<Value = Rat>) -> impl Strategy<Value = ParamSet<Rat>> {
    let dim = order + 1;
    proptest::collection::vec(value, dim * dim).prop_map(move |v| ParamSet::from_fn(order, |a, b| v[a * dim + b].clone()))
}

pub fn positive_params(max_order: usize) -> impl Strategy<Value = ParamSet<Rat>> {
    (0..=max_order).prop_flat_map(|n| params_with(n, positive_rat()))
}

pub fn signed_params(max_order: usize) -> impl Strategy<Value = ParamSet<Rat>> {
    (0..=max_order).prop_flat_map(|n| params_with(n, any_rat()))
}

pub fn square_matrix(dim: usize, value: impl Strategy<Value = Rat>) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(value, dim * dim).prop_map(move |v| RatMatrix::new(dim, dim, v).unwrap())
}

/// Determinant by the Leibniz permutation expansion.
pub fn leibniz_det(a: &RatMatrix) -> Rat {
    use itertools::Itertools;
    let n = a.rows();
    let mut total = rat(0, 1);
    for perm in (0..n).permutations(n) {
        let inversions = (0..n).tuple_combinations().filter(|&(i, j)| perm[i] > perm[j]).count();
        let term = (0..n).fold(rat(1, 1), |acc, i| acc * a[(i, perm[i])].clone());
        total = if inversions % 2 == 0 { total + term } else { total - term };
    }
    total
}
