use crate::error::{Error, Result};

/// Uniform partition of the slab `[0, X]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialMesh {
    length: f64,
    cells: usize,
}

impl SpatialMesh {
    pub fn uniform(length: f64, cells: usize) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidMesh(format!(
                "slab length must be positive and finite, got {length}"
            )));
        }
        if cells == 0 {
            return Err(Error::InvalidMesh("need at least one cell".into()));
        }
        Ok(Self { length, cells })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn width(&self) -> f64 {
        self.length / self.cells as f64
    }

    /// Number of discontinuous nodal unknowns (two per cell).
    pub fn nodes(&self) -> usize {
        2 * self.cells
    }

    pub fn left(&self, cell: usize) -> f64 {
        self.length * cell as f64 / self.cells as f64
    }

    pub fn right(&self, cell: usize) -> f64 {
        self.length * (cell + 1) as f64 / self.cells as f64
    }

    /// Coordinates of the DG nodes in storage order: left then right node of
    /// each cell. Interface coordinates therefore appear twice.
    pub fn node_coordinates(&self) -> Vec<f64> {
        (0..self.cells)
            .flat_map(|k| [self.left(k), self.right(k)])
            .collect()
    }
}
