//! Grids of classified seeds.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::ConstraintViolation;
use crate::map::MapExpr;
use crate::orbit::{classify_valid, Classification, IterationConfig};
use crate::sample::Window;
use crate::strip::{boundaries_in, StripFamily, StripForm};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub classification: Classification,
    /// Set for escaping cells only.
    pub escape_step: Option<u32>,
}

impl Cell {
    pub fn new(classification: Classification) -> Self {
        let escape_step = match classification {
            Classification::Escaping { step } => Some(step),
            _ => None,
        };
        Cell {
            classification,
            escape_step,
        }
    }
}

/// Row-major grid of classifications; row 0 is the top of the window.
#[derive(Clone, Debug, PartialEq)]
pub struct EscapeField {
    pub window: Window,
    pub nx: usize,
    pub ny: usize,
    pub cells: Vec<Cell>,
}

impl EscapeField {
    /// A field with every cell set to `fill`.
    pub fn filled(window: Window, nx: usize, ny: usize, fill: Classification) -> Self {
        EscapeField {
            window,
            nx,
            ny,
            cells: vec![Cell::new(fill); nx * ny],
        }
    }

    pub fn dx(&self) -> f64 {
        self.window.width() / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        self.window.height() / self.ny as f64
    }

    /// Center of cell `(i, j)`, column `i` from the left, row `j` from the top.
    pub fn center(&self, i: usize, j: usize) -> Complex64 {
        cell_center(&self.window, self.nx, self.ny, i, j)
    }

    pub fn cell(&self, i: usize, j: usize) -> &Cell {
        &self.cells[j * self.nx + i]
    }

    pub fn set(&mut self, i: usize, j: usize, classification: Classification) {
        let nx = self.nx;
        self.cells[j * nx + i] = Cell::new(classification);
    }

    /// `(i, j, center, cell)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64, &Cell)> + '_ {
        self.cells.iter().enumerate().map(move |(idx, cell)| {
            let (i, j) = (idx % self.nx, idx / self.nx);
            (i, j, self.center(i, j), cell)
        })
    }

    pub fn escaping_count(&self) -> usize {
        self.cells.iter().filter(|c| c.classification.is_escaping()).count()
    }

    pub fn same_grid(&self, other: &EscapeField) -> bool {
        self.nx == other.nx && self.ny == other.ny && self.window == other.window
    }
}

pub fn cell_center(window: &Window, nx: usize, ny: usize, i: usize, j: usize) -> Complex64 {
    let dx = window.width() / nx as f64;
    let dy = window.height() / ny as f64;
    Complex64::new(
        window.x_min + (i as f64 + 0.5) * dx,
        window.y_max - (j as f64 + 0.5) * dy,
    )
}

/// Classifies row `j` of an `nx × ny` grid into `out` (length `nx`).
pub fn classify_row(
    map: &MapExpr,
    window: &Window,
    nx: usize,
    ny: usize,
    j: usize,
    cfg: &IterationConfig,
    out: &mut [Cell],
) {
    for (i, cell) in out.iter_mut().enumerate() {
        let z = cell_center(window, nx, ny, i, j);
        *cell = Cell::new(classify_valid(map, z, cfg));
    }
}

/// Classifies every cell center of the grid on the calling thread.
pub fn classify_grid(
    map: &MapExpr,
    window: Window,
    nx: usize,
    ny: usize,
    cfg: &IterationConfig,
) -> Result<EscapeField, ConstraintViolation> {
    map.validate()?;
    let mut field = EscapeField::filled(window, nx, ny, Classification::BoundedAtBudget);
    for (j, row) in field.cells.chunks_mut(nx.max(1)).enumerate() {
        classify_row(map, &window, nx, ny, j, cfg, row);
    }
    Ok(field)
}

/// Per-cell flags marking rows whose vertical span contains a strip
/// boundary. Classifications are untouched; renderers paint marked cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripMarks {
    pub nx: usize,
    pub ny: usize,
    pub marks: Vec<bool>,
}

impl StripMarks {
    pub fn is_marked(&self, i: usize, j: usize) -> bool {
        self.marks[j * self.nx + i]
    }

    pub fn marked_rows(&self) -> Vec<usize> {
        (0..self.ny)
            .filter(|&j| self.nx > 0 && self.marks[j * self.nx])
            .collect()
    }

    pub fn count(&self) -> usize {
        self.marks.iter().filter(|&&m| m).count()
    }
}

/// Marks cells crossed by the boundaries `y = (2m+1)π/2 + Im λ` (F) or
/// `y = (2m+1)π/2 - Im μ` (G). Row `j` spans `(y_max - (j+1)Δy, y_max - jΔy]`.
pub fn overlay_strips(field: &EscapeField, family: StripFamily, param: Complex64) -> StripMarks {
    let (nx, ny) = (field.nx, field.ny);
    let mut marks = vec![false; nx * ny];
    let w = field.window;
    let dy = field.dy();
    for b in boundaries_in(w.y_min, w.y_max, family, param, StripForm::Offset) {
        let j = (((w.y_max - b) / dy).floor().max(0.0) as usize).min(ny.saturating_sub(1));
        for m in &mut marks[j * nx..(j + 1) * nx] {
            *m = true;
        }
    }
    StripMarks { nx, ny, marks }
}
