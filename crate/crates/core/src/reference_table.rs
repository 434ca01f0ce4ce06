//! Published interval-entropy values for eight lifetime models on nine
//! windows each, kept as a regression reference for the quadrature.

use rayon::prelude::*;
use serde::Serialize;

use crate::dist::{make_distribution, DistributionSpec};
use crate::entropy::{crie, CrieMethod};
use crate::error::Result;
use crate::truncation::{TruncatedView, Window};

/// Every cell must be within this of the published value.
pub const MAX_DEVIATION: f64 = 1e-3;
/// At least [`TIGHT_FRACTION`] of the cells must be within this.
pub const TIGHT_DEVIATION: f64 = 2e-4;
pub const TIGHT_FRACTION: f64 = 0.9;

#[derive(Debug, Clone, Copy)]
pub struct Column {
    pub label: &'static str,
    pub spec: DistributionSpec,
}

/// The first Lomax column fits scale 0.5, not 1; its values are evaluated there.
pub const COLUMNS: [Column; 8] = [
    Column { label: "power(0.1,0.9)", spec: DistributionSpec::Power { a: 0.1, b: 0.9 } },
    Column { label: "power(0.3,0.9)", spec: DistributionSpec::Power { a: 0.3, b: 0.9 } },
    Column { label: "betac(0.2)", spec: DistributionSpec::BetaC { c: 0.2 } },
    Column { label: "betac(0.5)", spec: DistributionSpec::BetaC { c: 0.5 } },
    Column { label: "exp(0.5)", spec: DistributionSpec::Exponential { rate: 0.5 } },
    Column { label: "exp(1)", spec: DistributionSpec::Exponential { rate: 1.0 } },
    Column { label: "lomax(2,0.5)", spec: DistributionSpec::Lomax { alpha: 2.0, lambda: 0.5 } },
    Column { label: "lomax(3,1)", spec: DistributionSpec::Lomax { alpha: 3.0, lambda: 1.0 } },
];

const UNIT_WINDOWS: [(f64, f64); 9] = [
    (0.1, 0.6), (0.3, 0.6), (0.5, 0.6),
    (0.1, 0.7), (0.3, 0.7), (0.5, 0.7),
    (0.1, 0.9), (0.3, 0.9), (0.5, 0.9),
];

const LIFE_WINDOWS: [(f64, f64); 9] = [
    (3.0, 10.0), (7.0, 10.0), (9.0, 10.0),
    (3.0, 12.0), (7.0, 12.0), (9.0, 12.0),
    (3.0, 15.0), (7.0, 15.0), (9.0, 15.0),
];

/// Rows follow the window lists; columns follow [`COLUMNS`].
const UNIT_VALUES: [[f64; 4]; 9] = [
    [0.13182, 0.13180, 0.13193, 0.13084],
    [0.07722, 0.07687, 0.07705, 0.07643],
    [0.02522, 0.02517, 0.02520, 0.02513],
    [0.15839, 0.15862, 0.15868, 0.15752],
    [0.10347, 0.10298, 0.10325, 0.10232],
    [0.05078, 0.05063, 0.05071, 0.05047],
    [0.21145, 0.21241, 0.21223, 0.21111],
    [0.15629, 0.15559, 0.15599, 0.15447],
    [0.10258, 0.10214, 0.10237, 0.10162],
];

const LIFE_VALUES: [[f64; 4]; 9] = [
    [1.52470, 0.97614, 1.61098, 1.45535],
    [0.76254, 0.68870, 0.77343, 0.77164],
    [0.25514, 0.25652, 0.25364, 0.25439],
    [1.73694, 0.99480, 1.95250, 1.69662],
    [1.20018, 0.90432, 1.28394, 1.26233],
    [0.76254, 0.68870, 0.77200, 0.77252],
    [1.90245, 0.99955, 2.38429, 1.96523],
    [1.64355, 0.98871, 2.00701, 1.91438],
    [1.37740, 0.95123, 1.54259, 1.51885],
];

#[derive(Debug, Clone, Copy)]
pub struct Cell {
    pub column: Column,
    pub window: (f64, f64),
    pub published: f64,
}

/// All 72 cells, column-major.
pub fn cells() -> Vec<Cell> {
    let mut out = Vec::with_capacity(72);
    for (c, column) in COLUMNS.iter().enumerate() {
        let (windows, values) = if c < 4 {
            (&UNIT_WINDOWS, &UNIT_VALUES)
        } else {
            (&LIFE_WINDOWS, &LIFE_VALUES)
        };
        for (r, &window) in windows.iter().enumerate() {
            out.push(Cell { column: *column, window, published: values[r][c % 4] });
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CellResult {
    pub distribution: &'static str,
    pub tau1: f64,
    pub tau2: f64,
    pub computed: f64,
    pub published: f64,
    pub deviation: f64,
}

pub fn evaluate(cell: &Cell) -> Result<CellResult> {
    let dist = make_distribution(cell.column.spec)?;
    let v = TruncatedView::new(dist, Window::new(cell.window.0, cell.window.1)?)?;
    let computed = crie(&v, CrieMethod::Definition)?;
    Ok(CellResult {
        distribution: cell.column.label,
        tau1: cell.window.0,
        tau2: cell.window.1,
        computed,
        published: cell.published,
        deviation: (computed - cell.published).abs(),
    })
}

/// Recomputes every cell in parallel; output keeps [`cells`] order.
pub fn reproduce() -> Result<Vec<CellResult>> {
    cells().par_iter().map(evaluate).collect()
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Agreement {
    pub cells: usize,
    pub max_deviation: f64,
    pub within_tight: usize,
}

impl Agreement {
    pub fn of(results: &[CellResult]) -> Self {
        Self {
            cells: results.len(),
            max_deviation: results.iter().map(|r| r.deviation).fold(0.0, f64::max),
            within_tight: results.iter().filter(|r| r.deviation <= TIGHT_DEVIATION).count(),
        }
    }

    pub fn passes(&self) -> bool {
        self.max_deviation <= MAX_DEVIATION
            && self.within_tight as f64 >= TIGHT_FRACTION * self.cells as f64
    }
}
