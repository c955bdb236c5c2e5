//! Leveled planar networks on the integer grid.
//!
//! A network of order `n` has sources `(m, y)` and sinks `(m + width, y)` for
//! `0 <= y <= n`, and every edge advances one column: horizontal, a fall
//! (`y -> y - 1`) or a rise (`y -> y + 1`). Edges that a path is not allowed to
//! take are never created, so enumeration needs no side conditions.
//!
//! Weights, for x-step `i` (relative to the offset) and order `n`:
//!
//! | kind | edge                         | exists when | weight            |
//! |------|------------------------------|-------------|-------------------|
//! | L    | fall from height `y`         | `y >= n-i`  | `t[y][i+y-n]`     |
//! | Linv | fall from height `y`         | `y >= n-i`  | `-t[y][n-i-1]`    |
//! | U    | rise from `y` to `y+1`       | `y >= i`    | `t[y-i][y+1]`     |
//! | Uinv | rise from `y` to `y+1`       | `y >= i`    | `-t[i][y+1]`      |
//! | D    | horizontal at height `y`     | always      | `t[y][y]`         |
//! | Dinv | horizontal at height `y`     | always      | `1/t[y][y]`       |
//!
//! All other horizontal edges have weight one. L and U networks have width `n`,
//! D networks width one.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::params::ParamSet;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: usize,
    pub y: usize,
}

impl Point {
    pub fn new(x: usize, y: usize) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge<T> {
    pub from: Point,
    pub to: Point,
    pub weight: T,
    /// Index `(a, b)` of the weight `t[a][b]` this edge carries, if any.
    pub param: Option<(usize, usize)>,
}

impl<T> Edge<T> {
    pub fn is_fall(&self) -> bool {
        self.to.y + 1 == self.from.y
    }

    pub fn is_rise(&self) -> bool {
        self.to.y == self.from.y + 1
    }

    pub fn is_horizontal(&self) -> bool {
        self.to.y == self.from.y
    }
}

/// Factor a network is built for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Lower,
    Diagonal,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NetworkKind {
    L,
    D,
    U,
    LInv,
    DInv,
    UInv,
    Composite,
}

impl fmt::Display for NetworkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            NetworkKind::L => "L",
            NetworkKind::D => "D",
            NetworkKind::U => "U",
            NetworkKind::LInv => "Linv",
            NetworkKind::DInv => "Dinv",
            NetworkKind::UInv => "Uinv",
            NetworkKind::Composite => "composite",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanarNetwork<T> {
    order: usize,
    x_offset: usize,
    width: usize,
    kind: NetworkKind,
    /// Sorted by `(from, to)`.
    edges: Vec<Edge<T>>,
}

impl<T: Scalar> PlanarNetwork<T> {
    fn from_edges(order: usize, x_offset: usize, width: usize, kind: NetworkKind, mut edges: Vec<Edge<T>>) -> Self {
        edges.sort_by_key(|e| (e.from, e.to));
        debug_assert!(edges.iter().all(|e| e.to.x == e.from.x + 1 && e.from.y.abs_diff(e.to.y) <= 1));
        Self { order, x_offset, width, kind, edges }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn x_offset(&self) -> usize {
        self.x_offset
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn kind(&self) -> NetworkKind {
        self.kind
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn edge(&self, from: Point, to: Point) -> Option<&Edge<T>> {
        self.edges.binary_search_by_key(&(from, to), |e| (e.from, e.to)).ok().map(|k| &self.edges[k])
    }

    pub fn source(&self, i: usize) -> Point {
        Point::new(self.x_offset, i)
    }

    pub fn sink(&self, j: usize) -> Point {
        Point::new(self.x_offset + self.width, j)
    }

    /// Same network moved to start at column `x_offset`.
    pub fn shifted_to(&self, x_offset: usize) -> Self {
        let dx = |p: Point| Point::new(p.x - self.x_offset + x_offset, p.y);
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { from: dx(e.from), to: dx(e.to), weight: e.weight.clone(), param: e.param })
            .collect();
        Self { order: self.order, x_offset, width: self.width, kind: self.kind, edges }
    }

    fn outgoing(&self) -> BTreeMap<Point, Vec<&Edge<T>>> {
        let mut out: BTreeMap<Point, Vec<&Edge<T>>> = BTreeMap::new();
        for e in &self.edges {
            out.entry(e.from).or_default().push(e);
        }
        out
    }
}

/// Builds the network for one factor. `inverted` selects the network whose
/// weight matrix is the inverse factor.
pub fn build_network<T: Scalar>(
    kind: FactorKind,
    params: &ParamSet<T>,
    x_offset: usize,
    inverted: bool,
) -> Result<PlanarNetwork<T>> {
    let n = params.order();
    let m = x_offset;
    let unit = |x: usize, y: usize| Edge { from: Point::new(x, y), to: Point::new(x + 1, y), weight: T::one(), param: None };
    let mut edges = Vec::new();
    let (width, net_kind) = match kind {
        FactorKind::Lower => {
            for i in 0..n {
                for y in 0..=n {
                    edges.push(unit(m + i, y));
                    if y >= 1 && y + i >= n {
                        let (a, b) = if inverted { (y, n - i - 1) } else { (y, i + y - n) };
                        let t = params.t(a, b).clone();
                        let weight = if inverted { -t } else { t };
                        edges.push(Edge { from: Point::new(m + i, y), to: Point::new(m + i + 1, y - 1), weight, param: Some((a, b)) });
                    }
                }
            }
            (n, if inverted { NetworkKind::LInv } else { NetworkKind::L })
        }
        FactorKind::Upper => {
            for i in 0..n {
                for y in 0..=n {
                    edges.push(unit(m + i, y));
                    if y < n && y >= i {
                        let (a, b) = if inverted { (i, y + 1) } else { (y - i, y + 1) };
                        let t = params.t(a, b).clone();
                        let weight = if inverted { -t } else { t };
                        edges.push(Edge { from: Point::new(m + i, y), to: Point::new(m + i + 1, y + 1), weight, param: Some((a, b)) });
                    }
                }
            }
            (n, if inverted { NetworkKind::UInv } else { NetworkKind::U })
        }
        FactorKind::Diagonal => {
            for y in 0..=n {
                let t = params.t(y, y).clone();
                let weight = if inverted {
                    if t.is_zero() {
                        return Err(Error::ZeroDiagonal { index: y });
                    }
                    T::one() / t
                } else {
                    t
                };
                edges.push(Edge { from: Point::new(m, y), to: Point::new(m + 1, y), weight, param: Some((y, y)) });
            }
            (1, if inverted { NetworkKind::DInv } else { NetworkKind::D })
        }
    };
    Ok(PlanarNetwork::from_edges(n, x_offset, width, net_kind, edges))
}

/// A source-to-sink path, one point per column.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticePath<T> {
    pub points: Vec<Point>,
    pub weight: T,
}

impl<T> LatticePath<T> {
    pub fn heights(&self) -> Vec<usize> {
        self.points.iter().map(|p| p.y).collect()
    }
}

fn paths_from<T: Scalar>(net: &PlanarNetwork<T>, source: usize) -> Vec<LatticePath<T>> {
    fn walk<T: Scalar>(
        out_edges: &BTreeMap<Point, Vec<&Edge<T>>>,
        end_x: usize,
        points: &mut Vec<Point>,
        weight: T,
        found: &mut Vec<LatticePath<T>>,
    ) {
        let here = *points.last().expect("non-empty path");
        if here.x == end_x {
            found.push(LatticePath { points: points.clone(), weight });
            return;
        }
        // edges are sorted by target height, so paths come out in lexicographic order
        for e in out_edges.get(&here).into_iter().flatten() {
            points.push(e.to);
            walk(out_edges, end_x, points, weight.clone() * e.weight.clone(), found);
            points.pop();
        }
    }

    let out_edges = net.outgoing();
    let mut found = Vec::new();
    let mut points = vec![net.source(source)];
    walk(&out_edges, net.x_offset + net.width, &mut points, T::one(), &mut found);
    found
}

/// All paths from source `i` to sink `j`, ordered lexicographically by their
/// height sequences.
pub fn enumerate_paths<T: Scalar>(net: &PlanarNetwork<T>, source: usize, sink: usize) -> Result<Vec<LatticePath<T>>> {
    for index in [source, sink] {
        if index > net.order {
            return Err(Error::EndpointOutOfRange { index, order: net.order });
        }
    }
    Ok(paths_from(net, source).into_iter().filter(|p| p.points.last().map(|q| q.y) == Some(sink)).collect())
}

/// Entry `(i, j)` is the total weight of all paths from source `i` to sink `j`.
pub fn weight_matrix<T: Scalar>(net: &PlanarNetwork<T>) -> Matrix<T> {
    let dim = net.order + 1;
    let mut w: Matrix<T> = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for path in paths_from(net, i) {
            let j = path.points.last().expect("non-empty path").y;
            w[(i, j)] = w[(i, j)].clone() + path.weight;
        }
    }
    w
}

/// Glues `right` after `left`; `right` is shifted to start where `left` ends.
pub fn concatenate<T: Scalar>(left: &PlanarNetwork<T>, right: &PlanarNetwork<T>) -> Result<PlanarNetwork<T>> {
    if left.order != right.order {
        return Err(Error::OrderMismatch { left: left.order, right: right.order });
    }
    let right = right.shifted_to(left.x_offset + left.width);
    let edges = left.edges.iter().cloned().chain(right.edges).collect();
    Ok(PlanarNetwork::from_edges(left.order, left.x_offset, left.width + right.width, NetworkKind::Composite, edges))
}

/// Graphviz rendering: one node `"x_y"` per grid point, columns ranked left to
/// right, every edge labelled with its exact weight.
pub fn export_dot<T: Scalar>(net: &PlanarNetwork<T>) -> String {
    let mut out = String::new();
    let columns = net.x_offset..=net.x_offset + net.width;
    writeln!(out, "digraph planar_network {{").unwrap();
    writeln!(out, "  // kind={} order={} width={}", net.kind, net.order, net.width).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
    for x in columns {
        let nodes = (0..=net.order).map(|y| format!("\"{}\"", Point::new(x, y))).join("; ");
        writeln!(out, "  {{ rank=same; {nodes}; }}").unwrap();
        for y in 0..=net.order {
            writeln!(out, "  \"{}\" [pos=\"{x},{y}!\"];", Point::new(x, y)).unwrap();
        }
    }
    for e in &net.edges {
        writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", e.from, e.to, e.weight).unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rat, RatMatrix};

    fn r(v: i64) -> Rat {
        Rat::from_integer(v.into())
    }

    fn m(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(rows.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect()).unwrap()
    }

    fn example() -> ParamSet<Rat> {
        let mut p = ParamSet::filled(2, r(0));
        for (a, b, v) in [(1, 0, 2), (2, 0, 3), (2, 1, 5), (0, 0, 1), (1, 1, 4), (2, 2, 7), (0, 1, 2), (0, 2, 3), (1, 2, 5)] {
            p.set(a, b, r(v));
        }
        p
    }

    fn falls(net: &PlanarNetwork<Rat>) -> Vec<(Point, Point, Rat, (usize, usize))> {
        net.edges().iter().filter(|e| e.is_fall()).map(|e| (e.from, e.to, e.weight.clone(), e.param.unwrap())).collect()
    }

    #[test]
    fn lower_network_order_two() {
        let net = build_network(FactorKind::Lower, &example(), 0, false).unwrap();
        assert_eq!(net.width(), 2);
        let p = Point::new;
        assert_eq!(
            falls(&net),
            vec![(p(0, 2), p(1, 1), r(3), (2, 0)), (p(1, 1), p(2, 0), r(2), (1, 0)), (p(1, 2), p(2, 1), r(5), (2, 1))]
        );
        assert!(net.edges().iter().filter(|e| e.is_horizontal()).all(|e| e.weight == r(1)));
        assert_eq!(net.edges().len(), 9);
    }

    #[test]
    fn inverted_lower_network_order_two() {
        let net = build_network(FactorKind::Lower, &example(), 0, true).unwrap();
        assert_eq!(net.kind(), NetworkKind::LInv);
        let p = Point::new;
        assert_eq!(
            falls(&net),
            vec![(p(0, 2), p(1, 1), r(-5), (2, 1)), (p(1, 1), p(2, 0), r(-2), (1, 0)), (p(1, 2), p(2, 1), r(-3), (2, 0))]
        );
    }

    #[test]
    fn diagonal_network_order_two() {
        let net = build_network(FactorKind::Diagonal, &example(), 0, false).unwrap();
        assert_eq!(net.width(), 1);
        let w: Vec<Rat> = net.edges().iter().map(|e| e.weight.clone()).collect();
        assert_eq!(w, vec![r(1), r(4), r(7)]);
        assert!(net.edges().iter().all(Edge::is_horizontal));
        assert_eq!(weight_matrix(&net), Matrix::diagonal(&[r(1), r(4), r(7)]));
    }

    #[test]
    fn inverted_diagonal_rejects_zero() {
        let mut p = example();
        p.set(2, 2, r(0));
        assert_eq!(build_network(FactorKind::Diagonal, &p, 0, true).unwrap_err(), Error::ZeroDiagonal { index: 2 });
    }

    #[test]
    fn upper_network_edges() {
        let net = build_network(FactorKind::Upper, &example(), 0, false).unwrap();
        let rises: Vec<_> = net.edges().iter().filter(|e| e.is_rise()).map(|e| (e.from, e.param.unwrap())).collect();
        let p = Point::new;
        assert_eq!(rises, vec![(p(0, 0), (0, 1)), (p(0, 1), (1, 2)), (p(1, 1), (0, 2))]);
        assert!(net.edges().iter().all(|e| !e.is_fall()));
    }

    #[test]
    fn path_enumeration() {
        let net = build_network(FactorKind::Lower, &example(), 0, false).unwrap();
        let paths = enumerate_paths(&net, 2, 1).unwrap();
        let got: Vec<_> = paths.iter().map(|p| (p.heights(), p.weight.clone())).collect();
        assert_eq!(got, vec![(vec![2, 1, 1], r(3)), (vec![2, 2, 1], r(5))]);
        assert!(enumerate_paths(&net, 1, 2).unwrap().is_empty());
        let diag = enumerate_paths(&net, 1, 1).unwrap();
        assert_eq!(diag.len(), 1);
        assert_eq!((diag[0].heights(), diag[0].weight.clone()), (vec![1, 1, 1], r(1)));
        assert_eq!(enumerate_paths(&net, 3, 0).unwrap_err(), Error::EndpointOutOfRange { index: 3, order: 2 });
    }

    #[test]
    fn weight_matrices() {
        let p = example();
        let l = build_network(FactorKind::Lower, &p, 0, false).unwrap();
        assert_eq!(weight_matrix(&l), m(&[&[1, 0, 0], &[2, 1, 0], &[6, 8, 1]]));
        let linv = build_network(FactorKind::Lower, &p, 0, true).unwrap();
        assert_eq!(weight_matrix(&linv), m(&[&[1, 0, 0], &[-2, 1, 0], &[10, -8, 1]]));
        let u = build_network(FactorKind::Upper, &p, 0, false).unwrap();
        assert_eq!(weight_matrix(&u), m(&[&[1, 2, 6], &[0, 1, 8], &[0, 0, 1]]));
        let uinv = build_network(FactorKind::Upper, &p, 0, true).unwrap();
        assert_eq!(weight_matrix(&uinv), m(&[&[1, -2, 10], &[0, 1, -8], &[0, 0, 1]]));
    }

    #[test]
    fn order_zero_networks() {
        let p = ParamSet::filled(0, r(5));
        let l = build_network(FactorKind::Lower, &p, 0, false).unwrap();
        assert_eq!(l.width(), 0);
        assert_eq!(weight_matrix(&l), m(&[&[1]]));
        let d = build_network(FactorKind::Diagonal, &p, 0, false).unwrap();
        assert_eq!(weight_matrix(&d), m(&[&[5]]));
    }

    #[test]
    fn concatenation() {
        let p = example();
        let l = build_network(FactorKind::Lower, &p, 0, false).unwrap();
        let d = build_network(FactorKind::Diagonal, &p, 0, false).unwrap();
        let u = build_network(FactorKind::Upper, &p, 0, false).unwrap();
        let full = concatenate(&l, &concatenate(&d, &u).unwrap()).unwrap();
        assert_eq!(full.width(), 5);
        assert_eq!(full.kind(), NetworkKind::Composite);
        let mut labels: Vec<_> = full.edges().iter().filter_map(|e| e.param.map(|ab| (e.from.x, ab))).collect();
        labels.sort();
        assert_eq!(
            labels,
            vec![(0, (2, 0)), (1, (1, 0)), (1, (2, 1)), (2, (0, 0)), (2, (1, 1)), (2, (2, 2)), (3, (0, 1)), (3, (1, 2)), (4, (0, 2))]
        );

        let dinv = build_network(FactorKind::Diagonal, &p, 0, true).unwrap();
        assert_eq!(weight_matrix(&concatenate(&d, &dinv).unwrap()), Matrix::identity(3));
        let linv = build_network(FactorKind::Lower, &p, 0, true).unwrap();
        assert_eq!(weight_matrix(&concatenate(&l, &linv).unwrap()), Matrix::identity(3));

        let other = build_network(FactorKind::Lower, &ParamSet::filled(1, r(1)), 0, false).unwrap();
        assert_eq!(concatenate(&l, &other).unwrap_err(), Error::OrderMismatch { left: 2, right: 1 });
    }

    #[test]
    fn concatenation_accepts_any_offsets() {
        let p = example();
        let l = build_network(FactorKind::Lower, &p, 3, false).unwrap();
        let u = build_network(FactorKind::Upper, &p, 0, false).unwrap();
        let lu = concatenate(&l, &u).unwrap();
        assert_eq!((lu.x_offset(), lu.width()), (3, 4));
        assert_eq!(lu.source(0), Point::new(3, 0));
        assert_eq!(lu.sink(2), Point::new(7, 2));
    }

    #[test]
    fn dot_export_smallest() {
        let net = build_network(FactorKind::Diagonal, &ParamSet::filled(0, r(1)), 0, false).unwrap();
        let dot = export_dot(&net);
        assert!(dot.contains("\"0_0\" [pos"));
        assert!(dot.contains("\"1_0\" [pos"));
        assert_eq!(dot.matches("->").count(), 1);
        assert!(dot.contains("\"0_0\" -> \"1_0\" [label=\"1\"];"));
    }

    #[test]
    fn dot_export_lower_order_two() {
        let mut p = example();
        p.set(2, 0, Rat::new(3.into(), 2.into()));
        let net = build_network(FactorKind::Lower, &p, 0, false).unwrap();
        let dot = export_dot(&net);
        assert_eq!(dot.matches("[pos=").count(), 9);
        assert_eq!(dot.matches("->").count(), 9);
        assert!(dot.contains("\"0_2\" -> \"1_1\" [label=\"3/2\"];"));
        assert_eq!(dot.matches("[label=\"1\"]").count(), 6);
        assert_eq!(dot, export_dot(&net.clone()));
    }
}
