//! Planar points and the global geometric tolerance.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

/// Default absolute tolerance on squared-distance comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

static TOLERANCE: OnceLock<f64> = OnceLock::new();

/// Absolute tolerance applied to every squared-distance comparison
/// (sensing and communication alike). Read once per process from the
/// `CONNCOVER_TOL` environment variable, defaulting to 1e-9.
pub fn geo_tolerance() -> f64 {
    *TOLERANCE.get_or_init(|| {
        std::env::var("CONNCOVER_TOL")
            .ok()
            .and_then(|s| s.parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t >= 0.0)
            .unwrap_or(DEFAULT_TOLERANCE)
    })
}

/// A point in the plane. Serializes as a two-element array `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point(pub f64, pub f64);

impl Point {
    pub fn x(&self) -> f64 {
        self.0
    }

    pub fn y(&self) -> f64 {
        self.1
    }

    pub fn dist2(&self, other: &Point) -> f64 {
        let dx = self.0 - other.0;
        let dy = self.1 - other.1;
        dx * dx + dy * dy
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist2(other).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite() && self.1.is_finite()
    }
}

/// Closed-disk membership: `dist(a, b) <= radius`, tested on squared
/// distances with the global tolerance.
pub fn within(a: &Point, b: &Point, radius: f64) -> bool {
    a.dist2(b) <= radius * radius + geo_tolerance()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_disk_includes_boundary() {
        let origin = Point(0.0, 0.0);
        assert!(within(&origin, &Point(1.0, 0.0), 1.0));
        assert!(!within(&origin, &Point(1.001, 0.0), 1.0));
    }

    #[test]
    fn point_serializes_as_pair() {
        let p = Point(1.5, -2.25);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1.5,-2.25]");
        let q: Point = serde_json::from_str("[1.5,-2.25]").unwrap();
        assert_eq!(p, q);
    }
}
