//! Nodal storage for the linear discontinuous trial space.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// A scalar function of x held as (left, right) nodal values per cell.
///
/// Storage is `[cell0.left, cell0.right, cell1.left, ...]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(cells: usize) -> Self {
        Self {
            values: vec![0.0; 2 * cells],
        }
    }

    pub fn constant(cells: usize, value: f64) -> Self {
        Self {
            values: vec![value; 2 * cells],
        }
    }

    /// Wraps raw nodal values; the length must be even.
    pub fn from_nodal(values: Vec<f64>) -> Result<Self> {
        if values.len() % 2 != 0 {
            return Err(Error::DimensionMismatch {
                what: "nodal values (two per cell)",
                expected: values.len() + 1,
                found: values.len(),
            });
        }
        Ok(Self { values })
    }

    pub fn cells(&self) -> usize {
        self.values.len() / 2
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn left(&self, cell: usize) -> f64 {
        self.values[2 * cell]
    }

    pub fn right(&self, cell: usize) -> f64 {
        self.values[2 * cell + 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn fill(&mut self, value: f64) {
        self.values.fill(value);
    }

    /// Integral over the slab of the piecewise-linear function.
    pub fn integral(&self, cell_width: f64) -> f64 {
        0.5 * cell_width * self.values.iter().sum::<f64>()
    }

    /// Euclidean norm of the nodal vector.
    pub fn norm_l2(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn axpy(&mut self, alpha: f64, other: &ScalarField) {
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += alpha * b;
        }
    }
}

impl Add for &ScalarField {
    type Output = ScalarField;
    fn add(self, rhs: &ScalarField) -> ScalarField {
        let mut out = self.clone();
        out.axpy(1.0, rhs);
        out
    }
}

impl Sub for &ScalarField {
    type Output = ScalarField;
    fn sub(self, rhs: &ScalarField) -> ScalarField {
        let mut out = self.clone();
        out.axpy(-1.0, rhs);
        out
    }
}

impl Mul<f64> for &ScalarField {
    type Output = ScalarField;
    fn mul(self, rhs: f64) -> ScalarField {
        ScalarField {
            values: self.values.iter().map(|v| v * rhs).collect(),
        }
    }
}

/// Laguerre/angle resolved unknowns ψ_{m,n} on DG nodes.
///
/// The layout is angle-major, then cell, then moment, then node, which is
/// the order the transport sweep visits them.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentField {
    moments: usize,
    angles: usize,
    cells: usize,
    values: Vec<f64>,
}

impl MomentField {
    pub fn zeros(moments: usize, angles: usize, cells: usize) -> Self {
        Self {
            moments,
            angles,
            cells,
            values: vec![0.0; moments * angles * cells * 2],
        }
    }

    /// Number of Laguerre moments, M + 1.
    pub fn moments(&self) -> usize {
        self.moments
    }

    pub fn angles(&self) -> usize {
        self.angles
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    #[inline]
    fn offset(&self, moment: usize, angle: usize, cell: usize) -> usize {
        ((angle * self.cells + cell) * self.moments + moment) * 2
    }

    #[inline]
    pub fn get(&self, moment: usize, angle: usize, cell: usize, node: usize) -> f64 {
        self.values[self.offset(moment, angle, cell) + node]
    }

    #[inline]
    pub fn set(&mut self, moment: usize, angle: usize, cell: usize, node: usize, value: f64) {
        let i = self.offset(moment, angle, cell) + node;
        self.values[i] = value;
    }

    /// All moments of one (angle, cell) pair as `[m0.left, m0.right, m1.left, ...]`.
    #[inline]
    pub fn block(&self, angle: usize, cell: usize) -> &[f64] {
        let start = self.offset(0, angle, cell);
        &self.values[start..start + 2 * self.moments]
    }

    #[inline]
    pub fn block_mut(&mut self, angle: usize, cell: usize) -> &mut [f64] {
        let start = self.offset(0, angle, cell);
        let len = 2 * self.moments;
        &mut self.values[start..start + len]
    }

    /// ψ_{m,n} for one moment and angle as a scalar field.
    pub fn component(&self, moment: usize, angle: usize) -> ScalarField {
        let values = (0..self.cells)
            .flat_map(|k| [self.get(moment, angle, k, 0), self.get(moment, angle, k, 1)])
            .collect();
        ScalarField { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub(crate) fn check_shape(&self, moments: usize, angles: usize, cells: usize) -> Result<()> {
        for (what, expected, found) in [
            ("moment count", moments, self.moments),
            ("angle count", angles, self.angles),
            ("cell count", cells, self.cells),
        ] {
            if expected != found {
                return Err(Error::DimensionMismatch {
                    what,
                    expected,
                    found,
                });
            }
        }
        Ok(())
    }
}
