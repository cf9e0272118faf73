//! The two relative-error grids for F_{μ,ν}(x) against its corollary bounds.

use serde::{Deserialize, Serialize};

use super::registry::{BoundParams, InequalityId};
use super::{bound_value, corollary_f};
use crate::error::Result;

/// (μ, ν) rows: μ − ν = −0.5, 2, 5 in blocks of five.
pub const TABLE_ROWS: [(f64, f64); 15] = [
    (-0.75, -0.25),
    (-0.5, 0.0),
    (2.0, 2.5),
    (4.5, 5.0),
    (9.5, 10.0),
    (1.75, -0.25),
    (2.0, 0.0),
    (4.5, 2.5),
    (7.0, 5.0),
    (12.0, 10.0),
    (4.75, -0.25),
    (5.0, 0.0),
    (7.5, 2.5),
    (10.0, 5.0),
    (15.0, 10.0),
];

pub const TABLE_X: [f64; 7] = [0.5, 5.0, 10.0, 15.0, 25.0, 50.0, 100.0];

const REFERENCE_CSV: &str = include_str!("../../data/paper_tables.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableKind {
    /// (F − L)/F
    Lower = 1,
    /// (U − F)/F
    Upper = 2,
}

impl TableKind {
    pub fn from_number(which: u8) -> Option<Self> {
        match which {
            1 => Some(TableKind::Lower),
            2 => Some(TableKind::Upper),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    pub mu: f64,
    pub nu: f64,
    pub x: f64,
    pub rel_err_lower: f64,
    pub rel_err_upper: f64,
}

impl TableCell {
    pub fn rel_err(&self, which: TableKind) -> f64 {
        match which {
            TableKind::Lower => self.rel_err_lower,
            TableKind::Upper => self.rel_err_upper,
        }
    }
}

pub fn table_cell(mu: f64, nu: f64, x: f64) -> Result<TableCell> {
    let p = BoundParams::new(mu, nu, 0.0, 0.0);
    let f = corollary_f(mu, nu, x)?;
    let lower = bound_value(InequalityId::CorLower, p, x)?;
    let upper = bound_value(InequalityId::CorUpper, p, x)?;
    Ok(TableCell { mu, nu, x, rel_err_lower: (f - lower) / f, rel_err_upper: (upper - f) / f })
}

/// Row-major (μ, ν, x) grid of both tables.
pub fn table_grid() -> impl Iterator<Item = (f64, f64, f64)> {
    TABLE_ROWS.iter().flat_map(|&(mu, nu)| TABLE_X.iter().map(move |&x| (mu, nu, x)))
}

/// All 105 cells in row-major order.
pub fn reproduce_table() -> Result<Vec<TableCell>> {
    table_grid().map(|(mu, nu, x)| table_cell(mu, nu, x)).collect()
}

/// A printed cell of both tables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceCell {
    pub mu: f64,
    pub nu: f64,
    pub x: f64,
    pub lower: f64,
    pub upper: f64,
}

impl ReferenceCell {
    pub fn value(&self, which: TableKind) -> f64 {
        match which {
            TableKind::Lower => self.lower,
            TableKind::Upper => self.upper,
        }
    }
}

/// The printed four-decimal values, row-major like [`reproduce_table`].
pub fn paper_reference() -> Vec<ReferenceCell> {
    REFERENCE_CSV
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let v: Vec<f64> = line.split(',').map(|f| f.trim().parse().expect("numeric reference cell")).collect();
            ReferenceCell { mu: v[0], nu: v[1], x: v[2], lower: v[3], upper: v[4] }
        })
        .collect()
}
