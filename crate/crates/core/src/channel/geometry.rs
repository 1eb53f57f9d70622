use nalgebra::{Point3, Vector3};

use crate::error::{invalid, Result};

pub type Position = Point3<f64>;

/// Horizontal orientation of a planar or linear array.
///
/// `normal_azimuth` is the angle of the broadside direction in the x-y plane,
/// measured counter-clockwise from +x. The in-plane horizontal axis of the
/// array is the normal rotated by +90 degrees about +z, and azimuths are
/// measured from the normal towards that axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayOrientation {
    pub normal_azimuth: f64,
}

impl ArrayOrientation {
    pub const fn facing(normal_azimuth: f64) -> Self {
        Self { normal_azimuth }
    }

    /// Broadside towards +x.
    pub const fn facing_pos_x() -> Self {
        Self::facing(0.0)
    }

    /// Broadside towards -x.
    pub const fn facing_neg_x() -> Self {
        Self::facing(std::f64::consts::PI)
    }

    pub fn normal(&self) -> Vector3<f64> {
        Vector3::new(self.normal_azimuth.cos(), self.normal_azimuth.sin(), 0.0)
    }

    pub fn axis(&self) -> Vector3<f64> {
        Vector3::new(-self.normal_azimuth.sin(), self.normal_azimuth.cos(), 0.0)
    }
}

/// A placed array: where it is and which way it faces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub position: Position,
    pub orientation: ArrayOrientation,
}

impl Node {
    pub fn new(position: Position, orientation: ArrayOrientation) -> Self {
        Self {
            position,
            orientation,
        }
    }
}

/// Direction of a target in an array's local frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angles {
    pub azimuth: f64,
    pub elevation: f64,
}

/// Azimuth/elevation of `target` as seen from an array at `source`.
pub fn angles_from_geometry(
    source: &Position,
    target: &Position,
    orientation: &ArrayOrientation,
) -> Result<Angles> {
    let delta = target - source;
    let dist = delta.norm();
    if dist == 0.0 || !dist.is_finite() {
        return Err(invalid("source and target positions coincide"));
    }
    let elevation = (delta.z / dist).clamp(-1.0, 1.0).asin();
    let azimuth = delta.dot(&orientation.axis()).atan2(delta.dot(&orientation.normal()));
    Ok(Angles { azimuth, elevation })
}

/// Distance-dependent path loss `C0 (d / D0)^-a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLossModel {
    pub c0_db: f64,
    pub reference_distance: f64,
    pub exponent: f64,
}

impl PathLossModel {
    pub fn new(c0_db: f64, reference_distance: f64, exponent: f64) -> Result<Self> {
        if !(reference_distance > 0.0) {
            return Err(invalid("reference distance must be positive"));
        }
        if !(exponent > 0.0) {
            return Err(invalid("path-loss exponent must be positive"));
        }
        Ok(Self {
            c0_db,
            reference_distance,
            exponent,
        })
    }

    pub fn gain(&self, distance: f64) -> Result<f64> {
        path_loss_gain(distance, self)
    }
}

/// Linear power gain at `distance` meters.
pub fn path_loss_gain(distance: f64, model: &PathLossModel) -> Result<f64> {
    if !(distance > 0.0) {
        return Err(invalid(format!("distance must be positive, got {distance}")));
    }
    let c0 = 10f64.powf(model.c0_db / 10.0);
    Ok(c0 * (distance / model.reference_distance).powf(-model.exponent))
}
