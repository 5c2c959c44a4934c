//! Node placement and Euclidean distances.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// A point in 3D space, metres. Serialized as `[x, y, z]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Position {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Position {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Position { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn distance(&self, other: &Position) -> f64 {
        distance(*self, *other)
    }
}

impl From<[f64; 3]> for Position {
    fn from([x, y, z]: [f64; 3]) -> Self {
        Position { x, y, z }
    }
}

impl From<Position> for [f64; 3] {
    fn from(p: Position) -> Self {
        [p.x, p.y, p.z]
    }
}

pub fn distance(p: Position, q: Position) -> f64 {
    let (dx, dy, dz) = (p.x - q.x, p.y - q.y, p.z - q.z);
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Places the near and far users on a horizontal ray leaving the IRS ground
/// projection at `bearing_deg` (counter-clockwise from +x).
///
/// `d_near` is the 3D IRS-to-near-user distance; the far user is put at
/// exactly twice that 3D distance, both at height `user_height`.
pub fn place_users(
    irs: Position,
    bearing_deg: f64,
    d_near: f64,
    user_height: f64,
) -> Result<(Position, Position)> {
    ensure_finite("bearing", bearing_deg)?;
    ensure_finite("user height", user_height)?;
    let d_near = ensure_finite("near-user distance", d_near)?;
    if !irs.is_finite() {
        return Err(Error::NonFinite {
            what: "IRS position",
            value: f64::NAN,
        });
    }
    if d_near <= 0.0 {
        return Err(Error::domain(
            "near-user distance",
            format!("{d_near} m is not positive"),
        ));
    }
    let height_diff = (irs.z - user_height).abs();
    if d_near < height_diff {
        return Err(Error::InfeasibleGeometry { d_near, height_diff });
    }
    let d_far = 2.0 * d_near;
    let dz2 = height_diff * height_diff;
    let r_near = (d_near * d_near - dz2).max(0.0).sqrt();
    let r_far = (d_far * d_far - dz2).sqrt();
    let (sin, cos) = bearing_deg.to_radians().sin_cos();
    let at = |r: f64| Position::new(irs.x + r * cos, irs.y + r * sin, user_height);
    Ok((at(r_near), at(r_far)))
}

/// A full drop: base station, surface and the two paired users.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layout {
    pub bs: Position,
    pub irs: Position,
    pub u1: Position,
    pub u2: Position,
    pub cell_side: f64,
}

impl Layout {
    /// BS-to-IRS distance.
    pub fn d_bs_irs(&self) -> f64 {
        distance(self.bs, self.irs)
    }

    pub fn d_irs_near(&self) -> f64 {
        distance(self.irs, self.u1)
    }

    pub fn d_irs_far(&self) -> f64 {
        distance(self.irs, self.u2)
    }

    /// Whether every node falls inside the square cell centred on the BS.
    pub fn within_cell(&self) -> bool {
        let half = self.cell_side / 2.0;
        [self.irs, self.u1, self.u2]
            .iter()
            .all(|p| (p.x - self.bs.x).abs() <= half && (p.y - self.bs.y).abs() <= half)
    }
}

/// Layout parameters as they appear in a scenario file. User positions are
/// derived per sweep point with [`place_users`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LayoutParams {
    pub bs: Position,
    pub irs: Position,
    pub bearing_deg: f64,
    pub user_height: f64,
    pub cell_side: f64,
}

impl Default for LayoutParams {
    fn default() -> Self {
        LayoutParams {
            bs: Position::new(0.0, 0.0, 10.0),
            irs: Position::new(50.0, 0.0, 10.0),
            bearing_deg: 0.0,
            user_height: 1.5,
            cell_side: 200.0,
        }
    }
}

impl LayoutParams {
    pub fn layout(&self, d_near: f64) -> Result<Layout> {
        let (u1, u2) = place_users(self.irs, self.bearing_deg, d_near, self.user_height)?;
        let layout = Layout {
            bs: self.bs,
            irs: self.irs,
            u1,
            u2,
            cell_side: self.cell_side,
        };
        if !layout.within_cell() {
            log::debug!(
                "layout at d_near={d_near} m extends beyond the {} m cell",
                self.cell_side
            );
        }
        Ok(layout)
    }

    pub fn validate(&self) -> Result<()> {
        for (key, p) in [("layout.bs", self.bs), ("layout.irs", self.irs)] {
            if !p.is_finite() {
                return Err(Error::config(key, "coordinates must be finite"));
            }
        }
        if self.bs == self.irs {
            return Err(Error::config("layout.irs", "IRS must not coincide with the BS"));
        }
        if !self.bearing_deg.is_finite() {
            return Err(Error::config("layout.bearing_deg", "must be finite"));
        }
        if !self.user_height.is_finite() {
            return Err(Error::config("layout.user_height", "must be finite"));
        }
        if !(self.cell_side.is_finite() && self.cell_side > 0.0) {
            return Err(Error::config("layout.cell_side", "must be positive"));
        }
        Ok(())
    }
}
