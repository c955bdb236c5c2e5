use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    DimensionMismatch { left_rows: usize, left_cols: usize, right_rows: usize, right_cols: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    /// Elimination hit a zero leading principal minor of the given order.
    #[error("zero pivot: leading principal minor of order {order} vanishes")]
    ZeroPivot { order: usize },

    #[error("not totally {kind}: minor rows {rows} cols {cols} = {value}")]
    NotTotallyPositive { kind: &'static str, rows: String, cols: String, value: String },

    /// Parameter recovery met a vanishing coefficient for `t[row][col]`.
    #[error("cannot recover parameter t({row},{col}): coefficient vanishes but residual is {residual}")]
    ZeroCoefficient { row: usize, col: usize, residual: String },

    #[error("diagonal parameter t({index},{index}) is zero")]
    ZeroDiagonal { index: usize },

    #[error("network order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("path endpoint {index} out of range for order {order}")]
    EndpointOutOfRange { index: usize, order: usize },

    #[error("invalid parameter set: {0}")]
    InvalidParams(String),

    #[error("invalid factor: {0}")]
    InvalidFactor(String),

    #[error("parse error: {0}")]
    Parse(String),
}
