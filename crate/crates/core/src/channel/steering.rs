use std::f64::consts::PI;

use num_complex::Complex64;

use super::geometry::Angles;
use crate::error::{invalid, Result};
use crate::CVector;

/// Element spacing in wavelengths used unless a scenario says otherwise.
pub const DEFAULT_SPACING: f64 = 0.5;

/// Array sizes shared by the BS and every IRS of a scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayGeometry {
    bs_antennas: usize,
    irs_rows: usize,
    irs_cols: usize,
    spacing: f64,
}

impl ArrayGeometry {
    /// `irs_rows` counts elements along the horizontal axis, `irs_cols`
    /// along the vertical one.
    pub fn new(bs_antennas: usize, irs_rows: usize, irs_cols: usize, spacing: f64) -> Result<Self> {
        if bs_antennas == 0 {
            return Err(invalid("BS must have at least one antenna"));
        }
        if irs_rows == 0 || irs_cols == 0 {
            return Err(invalid("IRS dimensions must be positive"));
        }
        if !(spacing > 0.0) {
            return Err(invalid("element spacing must be positive"));
        }
        Ok(Self {
            bs_antennas,
            irs_rows,
            irs_cols,
            spacing,
        })
    }

    pub fn bs_antennas(&self) -> usize {
        self.bs_antennas
    }

    pub fn irs_rows(&self) -> usize {
        self.irs_rows
    }

    pub fn irs_cols(&self) -> usize {
        self.irs_cols
    }

    pub fn irs_elements(&self) -> usize {
        self.irs_rows * self.irs_cols
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn bs_response(&self, azimuth: f64) -> CVector {
        ula(azimuth, self.bs_antennas, self.spacing)
    }

    pub fn irs_response(&self, angles: &Angles) -> CVector {
        upa(
            angles.azimuth,
            angles.elevation,
            self.irs_rows,
            self.irs_cols,
            self.spacing,
        )
    }
}

/// Unit-norm ULA response: entry `n` is `exp(j 2 pi s n sin(psi)) / sqrt(N)`.
pub fn ula_response(psi: f64, antennas: usize, spacing: f64) -> Result<CVector> {
    if antennas == 0 {
        return Err(invalid("ULA needs at least one element"));
    }
    Ok(ula(psi, antennas, spacing))
}

/// Unit-norm UPA response, row-major over (horizontal, vertical) indices.
pub fn upa_response(
    azimuth: f64,
    elevation: f64,
    rows: usize,
    cols: usize,
    spacing: f64,
) -> Result<CVector> {
    if rows == 0 || cols == 0 {
        return Err(invalid("UPA dimensions must be positive"));
    }
    Ok(upa(azimuth, elevation, rows, cols, spacing))
}

fn ula(psi: f64, n: usize, spacing: f64) -> CVector {
    let scale = 1.0 / (n as f64).sqrt();
    let step = 2.0 * PI * spacing * psi.sin();
    CVector::from_fn(n, |i, _| Complex64::from_polar(scale, step * i as f64))
}

fn upa(azimuth: f64, elevation: f64, rows: usize, cols: usize, spacing: f64) -> CVector {
    let scale = 1.0 / ((rows * cols) as f64).sqrt();
    let row_step = 2.0 * PI * spacing * elevation.cos() * azimuth.sin();
    let col_step = 2.0 * PI * spacing * elevation.sin();
    CVector::from_fn(rows * cols, |idx, _| {
        let (r, c) = (idx / cols, idx % cols);
        Complex64::from_polar(scale, row_step * r as f64 + col_step * c as f64)
    })
}
