//! Network weight parameters `t[a][b]`.
//!
//! For order `n` there are `(n + 1)^2` weights, one per pair `0 <= a, b <= n`:
//! `a > b` are the lower (fall edge) weights, `a == b` the diagonal weights and
//! `a < b` the upper (rise edge) weights.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scalar::{parse_rat, Scalar};
use crate::Rat;

/// Which sign conditions a parameter set must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Positivity {
    /// Every weight `> 0`.
    Strict,
    /// Diagonal weights `> 0`, all others `>= 0`.
    Nonneg,
}

/// Family a weight belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Lower,
    Diag,
    Upper,
}

impl Family {
    pub fn of(a: usize, b: usize) -> Self {
        match a.cmp(&b) {
            std::cmp::Ordering::Greater => Family::Lower,
            std::cmp::Ordering::Equal => Family::Diag,
            std::cmp::Ordering::Less => Family::Upper,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Family::Lower => "lower",
            Family::Diag => "diag",
            Family::Upper => "upper",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParamSet<T> {
    order: usize,
    weights: Vec<T>,
}

impl<T: Scalar> ParamSet<T> {
    /// Builds the set from `f(a, b) = t[a][b]`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let dim = order + 1;
        let weights = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self { order, weights }
    }

    /// All weights equal to `value`.
    pub fn filled(order: usize, value: T) -> Self {
        Self::from_fn(order, |_, _| value.clone())
    }

    /// Lower and upper weights zero, diagonal weights one: every factor is the identity.
    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |a, b| if a == b { T::one() } else { T::zero() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `t[a][b]`.
    pub fn t(&self, a: usize, b: usize) -> &T {
        assert!(a <= self.order && b <= self.order, "parameter t({a},{b}) out of range for order {}", self.order);
        &self.weights[a * (self.order + 1) + b]
    }

    pub fn set(&mut self, a: usize, b: usize, value: T) {
        assert!(a <= self.order && b <= self.order, "parameter t({a},{b}) out of range for order {}", self.order);
        self.weights[a * (self.order + 1) + b] = value;
    }

    pub fn diag(&self) -> Vec<T> {
        (0..=self.order).map(|i| self.t(i, i).clone()).collect()
    }

    /// `(a, b, t[a][b])` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let dim = self.order + 1;
        self.weights.iter().enumerate().map(move |(k, v)| (k / dim, k % dim, v))
    }

    /// Swaps `t[a][b]` with `t[b][a]`, exchanging the lower and upper families.
    pub fn transpose_dual(&self) -> Self {
        Self::from_fn(self.order, |a, b| self.t(b, a).clone())
    }

    /// Checks the sign conditions of `mode`; the error names the first offending weight.
    pub fn validate(&self, mode: Positivity) -> Result<()> {
        for (a, b, v) in self.iter() {
            let ok = match (mode, a == b) {
                (Positivity::Strict, _) | (Positivity::Nonneg, true) => v.is_positive(),
                (Positivity::Nonneg, false) => !v.is_negative(),
            };
            if !ok {
                let need = if matches!(mode, Positivity::Nonneg) && a != b { ">= 0" } else { "> 0" };
                return Err(Error::InvalidParams(format!(
                    "{} parameter ({a},{b}) = {v} must be {need}",
                    Family::of(a, b).name()
                )));
            }
        }
        Ok(())
    }

    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> ParamSet<U> {
        ParamSet { order: self.order, weights: self.weights.iter().map(&mut f).collect() }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RatValue {
    Text(String),
    Int(i64),
}

impl RatValue {
    fn to_rat(&self) -> Result<Rat> {
        match self {
            RatValue::Text(s) => parse_rat(s),
            RatValue::Int(v) => Ok(Rat::from_integer((*v).into())),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamFile {
    order: usize,
    lower: Vec<(usize, usize, RatValue)>,
    diag: Vec<(usize, RatValue)>,
    upper: Vec<(usize, usize, RatValue)>,
}

impl ParamSet<Rat> {
    /// Parses the JSON parameter file:
    /// `{"order": n, "lower": [[j, s, "p/q"], ...], "diag": [[i, "p/q"], ...], "upper": [[s, j, "p/q"], ...]}`.
    ///
    /// Every index pair of the order must appear exactly once.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ParamFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("parameter file: {e}")))?;
        let n = file.order;
        let mut seen: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
        let mut insert = |family: Family, a: usize, b: usize, value: &RatValue| -> Result<()> {
            let in_range = a <= n && b <= n && Family::of(a, b) == family;
            if !in_range {
                return Err(Error::InvalidParams(format!(
                    "{} entry ({a},{b}) out of range for order {n}",
                    family.name()
                )));
            }
            let value = value.to_rat().map_err(|e| Error::InvalidParams(format!("{} entry ({a},{b}): {e}", family.name())))?;
            if seen.insert((a, b), value).is_some() {
                return Err(Error::InvalidParams(format!("{} entry ({a},{b}) appears more than once", family.name())));
            }
            Ok(())
        };
        for (j, s, v) in &file.lower {
            insert(Family::Lower, *j, *s, v)?;
        }
        for (i, v) in &file.diag {
            insert(Family::Diag, *i, *i, v)?;
        }
        for (s, j, v) in &file.upper {
            insert(Family::Upper, *s, *j, v)?;
        }
        for a in 0..=n {
            for b in 0..=n {
                if !seen.contains_key(&(a, b)) {
                    let family = Family::of(a, b);
                    let what = if family == Family::Diag { format!("({a})") } else { format!("({a},{b})") };
                    return Err(Error::InvalidParams(format!("{} entry {what} missing for order {n}", family.name())));
                }
            }
        }
        Ok(Self::from_fn(n, |a, b| seen.remove(&(a, b)).expect("checked above")))
    }

    /// Writes the JSON parameter file, one family per line, pairs in
    /// lexicographic order of their written indices.
    pub fn to_json(&self) -> String {
        let quote = |v: &Rat| serde_json::to_string(&v.to_string()).expect("string serialization");
        let n = self.order;
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for a in 0..=n {
            for b in 0..a {
                lower.push(format!("[{a}, {b}, {}]", quote(self.t(a, b))));
            }
            for b in a + 1..=n {
                upper.push(format!("[{a}, {b}, {}]", quote(self.t(a, b))));
            }
        }
        let diag: Vec<String> = (0..=n).map(|i| format!("[{i}, {}]", quote(self.t(i, i)))).collect();
        let mut out = String::new();
        writeln!(out, "{{").unwrap();
        writeln!(out, "  \"order\": {n},").unwrap();
        writeln!(out, "  \"lower\": [{}],", lower.join(", ")).unwrap();
        writeln!(out, "  \"diag\": [{}],", diag.join(", ")).unwrap();
        writeln!(out, "  \"upper\": [{}]", upper.join(", ")).unwrap();
        writeln!(out, "}}").unwrap();
        out
    }
}
