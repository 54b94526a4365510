// SPDX-License-Identifier: MIT OR Apache-2.0
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HoweError {
    #[error("inexact division: ({dividend}) / ({divisor})")]
    InexactDivision { dividend: String, divisor: String },
    #[error("invalid specialization {0}")]
    BadSpecialization(String),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("index {index} out of range for rank {n}")]
    IndexOutOfRange { index: i64, n: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("repeated index {0} in subset")]
    RepeatedIndex(i64),
    #[error("subset {0} is not in the fundamental crystal")]
    NotInCrystal(String),
    #[error("column tableau condition violated by {0}")]
    TableauCondition(String),
    #[error("matrix is not unitriangular at ({0}, {1})")]
    NotUnitriangular(usize, usize),
    #[error("negative tilting multiplicity at row {row}, column {col}")]
    NegativeMultiplicity { row: usize, col: usize },
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("rank {n} exceeds the bound {bound} for check {check}")]
    RankBound { check: String, n: usize, bound: usize },
    #[error("cannot parse {0}")]
    Parse(String),
}
