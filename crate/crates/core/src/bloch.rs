//! Unit vectors on the Bloch sphere and the ±1 outcome convention.

#[allow(unused_imports)]
use num_traits::Float;

use thiserror::Error;

/// Tolerance on the squared norm of a [`BlochVector`] at construction.
pub const UNIT_NORM_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum BlochError {
    #[error("vector norm {norm} is not 1 within {UNIT_NORM_TOL}")]
    NotUnit { norm: f64 },
    #[error("cannot normalize a (near-)zero vector")]
    ZeroVector,
}

/// A unit vector in R^3, used both for measurement directions and for the
/// shared hidden-variable vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    /// Build from components, requiring unit norm within [`UNIT_NORM_TOL`].
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, BlochError> {
        let n2 = x * x + y * y + z * z;
        if (n2 - 1.0).abs() > UNIT_NORM_TOL {
            return Err(BlochError::NotUnit { norm: n2.sqrt() });
        }
        Ok(Self { x, y, z })
    }

    /// Build from an arbitrary non-zero vector by normalizing it.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self, BlochError> {
        let n = (x * x + y * y + z * z).sqrt();
        if n < 1e-300 {
            return Err(BlochError::ZeroVector);
        }
        Ok(Self {
            x: x / n,
            y: y / n,
            z: z / n,
        })
    }

    pub fn x_axis() -> Self {
        Self { x: 1.0, y: 0.0, z: 0.0 }
    }

    pub fn y_axis() -> Self {
        Self { x: 0.0, y: 1.0, z: 0.0 }
    }

    pub fn z_axis() -> Self {
        Self { x: 0.0, y: 0.0, z: 1.0 }
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn neg(&self) -> Self {
        Self { x: -self.x, y: -self.y, z: -self.z }
    }

    /// Apply a 3x3 rotation matrix (rows dotted with the vector). The result
    /// is renormalized only through the constructor check, so `m` must be
    /// orthogonal.
    pub fn rotated(&self, m: &[[f64; 3]; 3]) -> Result<Self, BlochError> {
        Self::new(
            m[0][0] * self.x + m[0][1] * self.y + m[0][2] * self.z,
            m[1][0] * self.x + m[1][1] * self.y + m[1][2] * self.z,
            m[2][0] * self.x + m[2][1] * self.y + m[2][2] * self.z,
        )
    }
}

/// A ±1 measurement outcome (or communication bit).
///
/// The outcome-to-index mapping is fixed globally: `Plus` ↔ table index 0,
/// `Minus` ↔ table index 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(i8)]
pub enum Sign {
    Plus = 1,
    Minus = -1,
}

impl Sign {
    /// sgn with the fixed boundary convention sgn(0) := +1.
    pub fn of(t: f64) -> Self {
        if t >= 0.0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> f64 {
        self as i8 as f64
    }

    /// Table index under the global convention (+1 ↔ 0, −1 ↔ 1).
    pub fn index(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Heaviside step with the fixed boundary convention Θ(0) := 0.
pub fn heaviside(t: f64) -> f64 {
    if t > 0.0 {
        1.0
    } else {
        0.0
    }
}
