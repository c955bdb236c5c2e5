//! Dense matrix kernel: products, minors, total-positivity testing and
//! unit-triangular LDU elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::scalar::{parse_rat, Scalar};
use crate::Rat;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::Parse(format!("expected {} entries for a {rows}x{cols} matrix, got {}", rows * cols, data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let data = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(entries: &[T]) -> Self {
        Self::from_fn(entries.len(), entries.len(), |i, j| if i == j { entries[i].clone() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square() && self.entries().all(|(i, j, v)| i == j || v.is_zero())
    }

    pub fn is_unit_lower(&self) -> bool {
        self.is_square()
            && self.entries().all(|(i, j, v)| match i.cmp(&j) {
                std::cmp::Ordering::Less => v.is_zero(),
                std::cmp::Ordering::Equal => v.is_one(),
                std::cmp::Ordering::Greater => true,
            })
    }

    pub fn is_unit_upper(&self) -> bool {
        self.transpose().is_unit_lower()
    }

    /// `(row, col, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let cols = self.cols;
        self.data.iter().enumerate().map(move |(k, v)| (k / cols, k % cols, v))
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det_cofactor(&self) -> Result<T> {
        self.require_square()?;
        Ok(cofactor_det(self))
    }

    /// Determinant by fraction-free (Bareiss) elimination, swapping rows on
    /// zero pivots.
    pub fn det_bareiss(&self) -> Result<T> {
        self.require_square()?;
        Ok(bareiss_det(self.clone()))
    }

    /// Determinant; cofactor expansion up to 4x4, Bareiss above.
    pub fn det(&self) -> Result<T> {
        self.require_square()?;
        if self.rows <= 4 {
            Ok(cofactor_det(self))
        } else {
            Ok(bareiss_det(self.clone()))
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Text form: a `rows cols` header line, then one line per row with
    /// space-separated entries.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            out.push_str(&self.row(i).iter().join(" "));
            out.push('\n');
        }
        out
    }
}

impl Matrix<Rat> {
    /// Parses the text form written by [`Matrix::to_text`]. Entries are `p` or
    /// `p/q`; blank lines are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing \"rows cols\" header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad dimension {s:?} in header"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!("header must be \"rows cols\", got {header:?}")));
        };
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {r}")))?;
            let row: Vec<Rat> = line.split_whitespace().map(parse_rat).collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(Error::Parse(format!("row {r} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("unexpected trailing line {extra:?}")));
        }
        Self::new(rows, cols, data)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "[{}]", self.row(i).iter().join(", "))?;
        }
        Ok(())
    }
}

fn cofactor_det<T: Scalar>(m: &Matrix<T>) -> T {
    let n = m.rows;
    match n {
        1 => m[(0, 0)].clone(),
        2 => m[(0, 0)].clone() * m[(1, 1)].clone() - m[(0, 1)].clone() * m[(1, 0)].clone(),
        _ => {
            let rest: Vec<usize> = (1..n).collect();
            let mut acc = T::zero();
            for j in 0..n {
                if m[(0, j)].is_zero() {
                    continue;
                }
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let term = m[(0, j)].clone() * cofactor_det(&m.submatrix(&rest, &cols));
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

fn bareiss_det<T: Scalar>(mut m: Matrix<T>) -> T {
    let n = m.rows;
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&r| !m[(r, k)].is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        m.data.swap(k * n + c, r * n + c);
                    }
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m[(i, j)].clone() * m[(k, k)].clone() - m[(i, k)].clone() * m[(k, j)].clone()) / prev.clone();
                m[(i, j)] = v;
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * m[(n - 1, n - 1)].clone()
}

/// Exact product `a * b`.
pub fn mat_mul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch { left_rows: a.rows, left_cols: a.cols, right_rows: b.rows, right_cols: b.cols });
    }
    Ok(Matrix::from_fn(a.rows, b.cols, |i, j| {
        (0..a.cols).fold(T::zero(), |acc, k| {
            let (x, y) = (&a[(i, k)], &b[(k, j)]);
            if x.is_zero() || y.is_zero() {
                acc
            } else {
                acc + x.clone() * y.clone()
            }
        })
    }))
}

fn check_index_set(set: &[usize], bound: usize, what: &str) -> Result<()> {
    if set.iter().any(|&i| i >= bound) {
        return Err(Error::InvalidIndexSet(format!("{what} index out of range 0..{bound}: {set:?}")));
    }
    if set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidIndexSet(format!("{what} set must be strictly increasing: {set:?}")));
    }
    Ok(())
}

/// Determinant of the submatrix on `rows` x `cols`.
pub fn minor<T: Scalar>(a: &Matrix<T>, rows: &[usize], cols: &[usize]) -> Result<T> {
    if rows.len() != cols.len() {
        return Err(Error::InvalidIndexSet(format!("row set has {} indices, column set has {}", rows.len(), cols.len())));
    }
    if rows.is_empty() {
        return Err(Error::InvalidIndexSet("empty index set".into()));
    }
    check_index_set(rows, a.rows, "row")?;
    check_index_set(cols, a.cols, "column")?;
    a.submatrix(rows, cols).det()
}

/// A minor that violated a positivity test.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorWitness<T> {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: T,
}

impl<T: Scalar> MinorWitness<T> {
    pub fn rows_text(&self) -> String {
        format!("{{{}}}", self.rows.iter().join(","))
    }

    pub fn cols_text(&self) -> String {
        format!("{{{}}}", self.cols.iter().join(","))
    }

    pub fn into_error(self, mode: crate::Positivity) -> Error {
        Error::NotTotallyPositive {
            kind: match mode {
                crate::Positivity::Strict => "positive",
                crate::Positivity::Nonneg => "nonnegative",
            },
            rows: self.rows_text(),
            cols: self.cols_text(),
            value: self.value.to_string(),
        }
    }
}

impl<T: Scalar> fmt::Display for MinorWitness<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rows {} cols {} = {}", self.rows_text(), self.cols_text(), self.value)
    }
}

/// Outcome of [`is_totally_positive`].
#[derive(Clone, Debug, PartialEq)]
pub struct TpReport<T> {
    /// First violating minor by (size, row set, column set), if any.
    pub witness: Option<MinorWitness<T>>,
    pub minors_checked: usize,
}

impl<T> TpReport<T> {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks every minor in increasing size, row sets and column sets in
/// lexicographic order, stopping at the first violation.
///
/// Strict mode requires every minor `> 0`. Nonnegative mode requires every
/// minor `>= 0` and every leading principal minor `> 0`.
pub fn is_totally_positive<T: Scalar>(a: &Matrix<T>, mode: crate::Positivity) -> Result<TpReport<T>> {
    a.require_square()?;
    let n = a.rows;
    let mut checked = 0;
    for k in 1..=n {
        for rows in (0..n).combinations(k) {
            for cols in (0..n).combinations(k) {
                let value = a.submatrix(&rows, &cols).det()?;
                checked += 1;
                let leading = rows.iter().enumerate().all(|(p, &r)| r == p) && rows == cols;
                let bad = match mode {
                    crate::Positivity::Strict => !value.is_positive(),
                    crate::Positivity::Nonneg => value.is_negative() || (leading && value.is_zero()),
                };
                if bad {
                    return Ok(TpReport { witness: Some(MinorWitness { rows, cols, value }), minors_checked: checked });
                }
            }
        }
    }
    Ok(TpReport { witness: None, minors_checked: checked })
}

/// `A = L * D * U` with `L` unit lower, `D` diagonal and `U` unit upper.
#[derive(Clone, Debug, PartialEq)]
pub struct Ldu<T> {
    pub l: Matrix<T>,
    pub d: Matrix<T>,
    pub u: Matrix<T>,
}

/// Doolittle elimination without pivoting, with the upper factor rescaled to
/// a unit diagonal.
pub fn ldu_eliminate<T: Scalar>(a: &Matrix<T>) -> Result<Ldu<T>> {
    a.require_square()?;
    let n = a.rows;
    let mut work = a.clone();
    let mut l = Matrix::identity(n);
    for k in 0..n {
        let pivot = work[(k, k)].clone();
        if pivot.is_zero() {
            return Err(Error::ZeroPivot { order: k + 1 });
        }
        for i in k + 1..n {
            let factor = work[(i, k)].clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for j in k..n {
                let v = work[(i, j)].clone() - factor.clone() * work[(k, j)].clone();
                work[(i, j)] = v;
            }
            l[(i, k)] = factor;
        }
    }
    let pivots: Vec<T> = (0..n).map(|k| work[(k, k)].clone()).collect();
    let u = Matrix::from_fn(n, n, |i, j| if j < i { T::zero() } else { work[(i, j)].clone() / pivots[i].clone() });
    Ok(Ldu { l, d: Matrix::diagonal(&pivots), u })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Positivity;

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rat::from_integer(v.into())).collect()).collect()).unwrap()
    }

    fn r(v: i64) -> Rat {
        Rat::from_integer(v.into())
    }

    #[test]
    fn identity_is_neutral() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(mat_mul(&Matrix::identity(3), &a).unwrap(), a);
    }

    #[test]
    fn lower_times_its_inverse() {
        let l = m(&[&[1, 0, 0], &[2, 1, 0], &[6, 8, 1]]);
        let linv = m(&[&[1, 0, 0], &[-2, 1, 0], &[10, -8, 1]]);
        assert_eq!(mat_mul(&l, &linv).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn ldu_product_order_one() {
        let l = m(&[&[1, 0], &[2, 1]]);
        let d = Matrix::diagonal(&[r(1), r(3)]);
        let u = m(&[&[1, 4], &[0, 1]]);
        let a = mat_mul(&mat_mul(&l, &d).unwrap(), &u).unwrap();
        assert_eq!(a, m(&[&[1, 4], &[2, 11]]));
    }

    #[test]
    fn mat_mul_dimension_error_names_shapes() {
        let err = mat_mul(&Matrix::<Rat>::zeros(2, 3), &Matrix::zeros(2, 3)).unwrap_err();
        assert_eq!(err.to_string(), "dimension mismatch: 2x3 times 2x3");
    }

    #[test]
    fn minors() {
        assert_eq!(minor(&m(&[&[1, 4], &[2, 11]]), &[0, 1], &[0, 1]).unwrap(), r(3));
        assert_eq!(minor(&Matrix::<Rat>::identity(2), &[0], &[1]).unwrap(), r(0));
        assert_eq!(minor(&m(&[&[1, 2], &[3, 4]]), &[0, 1], &[0, 1]).unwrap(), r(-2));
    }

    #[test]
    fn minor_rejects_bad_sets() {
        let a = Matrix::<Rat>::identity(3);
        assert!(minor(&a, &[0, 1], &[0]).is_err());
        assert!(minor(&a, &[0, 3], &[0, 1]).is_err());
        assert!(minor(&a, &[1, 0], &[0, 1]).is_err());
        assert!(minor(&a, &[], &[]).is_err());
    }

    #[test]
    fn bareiss_handles_zero_pivots() {
        let a = m(&[&[0, 1, 2, 0, 1], &[1, 0, 3, 1, 1], &[2, 1, 0, 1, 4], &[0, 0, 1, 5, 2], &[3, 1, 1, 1, 0]]);
        assert_eq!(a.det_bareiss().unwrap(), a.det_cofactor().unwrap());
        let singular = m(&[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]);
        assert_eq!(singular.det_bareiss().unwrap(), r(0));
    }

    #[test]
    fn tp_checks() {
        let report = is_totally_positive(&m(&[&[1, 4], &[2, 11]]), Positivity::Strict).unwrap();
        assert!(report.passed());
        assert_eq!(report.minors_checked, 5);

        let report = is_totally_positive(&Matrix::<Rat>::identity(2), Positivity::Strict).unwrap();
        let w = report.witness.unwrap();
        assert_eq!((w.rows, w.cols, w.value), (vec![0], vec![1], r(0)));

        let report = is_totally_positive(&m(&[&[1, 2], &[3, 4]]), Positivity::Strict).unwrap();
        let w = report.witness.unwrap();
        assert_eq!((w.rows, w.cols, w.value), (vec![0, 1], vec![0, 1], r(-2)));
    }

    #[test]
    fn nonneg_mode() {
        assert!(is_totally_positive(&Matrix::<Rat>::identity(3), Positivity::Nonneg).unwrap().passed());
        // all minors >= 0 but the leading 2x2 minor vanishes
        let w = is_totally_positive(&m(&[&[1, 1], &[1, 1]]), Positivity::Nonneg).unwrap().witness.unwrap();
        assert_eq!((w.rows, w.cols), (vec![0, 1], vec![0, 1]));
    }

    #[test]
    fn tp_requires_square() {
        assert_eq!(
            is_totally_positive(&Matrix::<Rat>::zeros(2, 3), Positivity::Strict).unwrap_err(),
            Error::NotSquare { rows: 2, cols: 3 }
        );
    }

    #[test]
    fn ldu_examples() {
        let f = ldu_eliminate(&m(&[&[1, 4], &[2, 11]])).unwrap();
        assert_eq!(f.l, m(&[&[1, 0], &[2, 1]]));
        assert_eq!(f.d, Matrix::diagonal(&[r(1), r(3)]));
        assert_eq!(f.u, m(&[&[1, 4], &[0, 1]]));

        let i3 = Matrix::<Rat>::identity(3);
        let f = ldu_eliminate(&i3).unwrap();
        assert_eq!((f.l, f.d, f.u), (i3.clone(), i3.clone(), i3));

        assert_eq!(ldu_eliminate(&m(&[&[0, 1], &[1, 0]])).unwrap_err(), Error::ZeroPivot { order: 1 });
        assert_eq!(ldu_eliminate(&m(&[&[1, 1], &[1, 1]])).unwrap_err(), Error::ZeroPivot { order: 2 });
    }

    #[test]
    fn text_format() {
        let a = Matrix::from_text("2 2\n11/3 -4/3\n-2/3 1/3\n").unwrap();
        assert_eq!(a.to_text(), "2 2\n11/3 -4/3\n-2/3 1/3\n");
        let b = Matrix::from_text("1 2\n4/2 -0/5\n").unwrap();
        assert_eq!(b.to_text(), "1 2\n2 0\n");
        assert!(Matrix::from_text("2 2\n1 2\n").is_err());
        assert!(Matrix::from_text("1 2\n1 2 3\n").is_err());
        assert!(Matrix::from_text("1 1\n1/0\n").is_err());
        assert!(Matrix::from_text("0 0\n").is_err());
        assert!(Matrix::from_text("1 1\n1\n2\n").is_err());
    }

    #[test]
    fn works_over_f64() {
        let a = Matrix::from_rows(vec![vec![1.0, 4.0], vec![2.0, 11.0]]).unwrap();
        let f = ldu_eliminate(&a).unwrap();
        assert_eq!(f.d, Matrix::diagonal(&[1.0, 3.0]));
        assert!(is_totally_positive(&a, Positivity::Strict).unwrap().passed());
    }
}
