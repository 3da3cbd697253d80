//! Placement of qubits on a 2D grid of cells, each cell holding up to two
//! layers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Location of one qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Site {
    pub row: usize,
    pub col: usize,
    pub layer: u8,
}

impl Site {
    pub fn new(row: usize, col: usize, layer: u8) -> Self {
        Site { row, col, layer }
    }

    /// Chebyshev distance between cells; layers are ignored.
    pub fn cell_distance(&self, other: &Site) -> usize {
        self.row.abs_diff(other.row).max(self.col.abs_diff(other.col))
    }
}

/// Qubit index → site map over a `rows × cols` grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    rows: usize,
    cols: usize,
    sites: Vec<Site>,
}

impl Layout {
    /// Validates that every site is inside the grid, uses layer 0 or 1, and
    /// that no two qubits share a `(row, col, layer)` slot.
    pub fn new(rows: usize, cols: usize, sites: Vec<Site>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for (q, s) in sites.iter().enumerate() {
            if s.layer > 1 {
                return Err(Error::InvalidLayout(format!("qubit {q} has layer {}", s.layer)));
            }
            if s.row >= rows || s.col >= cols {
                return Err(Error::InvalidLayout(format!(
                    "qubit {q} at ({}, {}) lies outside the {rows}x{cols} grid",
                    s.row, s.col
                )));
            }
            if !seen.insert(*s) {
                return Err(Error::InvalidLayout(format!(
                    "qubit {q} collides with another qubit at ({}, {}, {})",
                    s.row, s.col, s.layer
                )));
            }
        }
        Ok(Layout { rows, cols, sites })
    }

    /// Like [`Layout::new`] with the grid extents taken as the bounding box
    /// of the sites.
    pub fn fitted(sites: Vec<Site>) -> Result<Self> {
        let rows = sites.iter().map(|s| s.row + 1).max().unwrap_or(0);
        let cols = sites.iter().map(|s| s.col + 1).max().unwrap_or(0);
        Self::new(rows, cols, sites)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_qubits(&self) -> usize {
        self.sites.len()
    }

    pub fn site(&self, q: usize) -> Site {
        self.sites[q]
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    /// Adds a qubit at `site`, returning its index.
    pub fn push(&mut self, site: Site) -> Result<usize> {
        let mut sites = self.sites.clone();
        sites.push(site);
        *self = Layout::new(self.rows, self.cols, sites)?;
        Ok(self.sites.len() - 1)
    }

    pub fn is_occupied(&self, site: Site) -> bool {
        self.sites.contains(&site)
    }

    /// Free `(cell, layer)` slots in row-major cell order, layer 0 first.
    pub fn free_slots(&self) -> Vec<Site> {
        let used: std::collections::HashSet<Site> = self.sites.iter().copied().collect();
        let mut out = Vec::new();
        for row in 0..self.rows {
            for col in 0..self.cols {
                for layer in 0..2 {
                    let s = Site::new(row, col, layer);
                    if !used.contains(&s) {
                        out.push(s);
                    }
                }
            }
        }
        out
    }

    /// Total number of `(cell, layer)` slots.
    pub fn capacity(&self) -> usize {
        2 * self.rows * self.cols
    }

    /// Qubits whose cell lies inside `rows × cols` (half-open ranges).
    pub fn qubits_in_rect(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Vec<usize> {
        self.sites
            .iter()
            .enumerate()
            .filter(|(_, s)| rows.contains(&s.row) && cols.contains(&s.col))
            .map(|(q, _)| q)
            .collect()
    }

    /// Largest Chebyshev cell distance between two qubits of `support`.
    pub fn diameter(&self, support: &[usize]) -> usize {
        let mut best = 0;
        for (i, &a) in support.iter().enumerate() {
            for &b in &support[i + 1..] {
                best = best.max(self.sites[a].cell_distance(&self.sites[b]));
            }
        }
        best
    }
}
