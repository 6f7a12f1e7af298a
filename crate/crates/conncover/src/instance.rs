//! Problem instances: sensors, targets, radii, normalization, coverage,
//! generation and JSON round-tripping.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{within, Point};

/// Index of a sensor in the owning instance's sensor list.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct SensorId(pub usize);

/// Index of a target in the owning instance's target list.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct TargetId(pub usize);

impl fmt::Display for SensorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

impl fmt::Display for TargetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

/// An ordered, duplicate-free set of sensors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SensorSet(BTreeSet<SensorId>);

impl SensorSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: SensorId) -> bool {
        self.0.insert(id)
    }

    pub fn contains(&self, id: SensorId) -> bool {
        self.0.contains(&id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = SensorId> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &SensorSet) -> SensorSet {
        SensorSet(self.0.union(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &SensorSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn ids(&self) -> Vec<usize> {
        self.0.iter().map(|s| s.0).collect()
    }
}

impl FromIterator<SensorId> for SensorSet {
    fn from_iter<I: IntoIterator<Item = SensorId>>(iter: I) -> Self {
        SensorSet(iter.into_iter().collect())
    }
}

impl FromIterator<usize> for SensorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        SensorSet(iter.into_iter().map(SensorId).collect())
    }
}

impl<'a> IntoIterator for &'a SensorSet {
    type Item = SensorId;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, SensorId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("{which} must be positive, got {value}")]
    NonPositiveRadius { which: &'static str, value: f64 },
    #[error("non-finite coordinate in {kind} {index}")]
    NonFiniteCoordinate { kind: &'static str, index: usize },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// A deployment of sensors and targets in the plane, with a common
/// communication radius `rc` and sensing radius `rs`.
///
/// Instances are immutable after construction; all solver entry points
/// expect a normalized instance (`rc == 1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct Instance {
    rc: f64,
    rs: f64,
    sensors: Vec<Point>,
    targets: Vec<Point>,
}

/// On-disk shape: `{"rc": .., "rs": .., "sensors": [[x,y],..], "targets": [[x,y],..]}`.
#[derive(Serialize, Deserialize)]
struct RawInstance {
    rc: f64,
    rs: f64,
    sensors: Vec<Point>,
    targets: Vec<Point>,
}

impl TryFrom<RawInstance> for Instance {
    type Error = InstanceError;

    fn try_from(raw: RawInstance) -> Result<Self, Self::Error> {
        Instance::new(raw.sensors, raw.targets, raw.rc, raw.rs)
    }
}

impl From<Instance> for RawInstance {
    fn from(inst: Instance) -> Self {
        RawInstance {
            rc: inst.rc,
            rs: inst.rs,
            sensors: inst.sensors,
            targets: inst.targets,
        }
    }
}

impl Instance {
    pub fn new(
        sensors: Vec<Point>,
        targets: Vec<Point>,
        rc: f64,
        rs: f64,
    ) -> Result<Self, InstanceError> {
        if !(rc > 0.0) || !rc.is_finite() {
            return Err(InstanceError::NonPositiveRadius { which: "rc", value: rc });
        }
        if !(rs > 0.0) || !rs.is_finite() {
            return Err(InstanceError::NonPositiveRadius { which: "rs", value: rs });
        }
        for (i, p) in sensors.iter().enumerate() {
            if !p.is_finite() {
                return Err(InstanceError::NonFiniteCoordinate { kind: "sensor", index: i });
            }
        }
        for (i, p) in targets.iter().enumerate() {
            if !p.is_finite() {
                return Err(InstanceError::NonFiniteCoordinate { kind: "target", index: i });
            }
        }
        Ok(Instance { rc, rs, sensors, targets })
    }

    pub fn rc(&self) -> f64 {
        self.rc
    }

    pub fn rs(&self) -> f64 {
        self.rs
    }

    /// The radius ratio C = rs / rc that all grid constants depend on.
    pub fn ratio(&self) -> f64 {
        self.rs / self.rc
    }

    pub fn sensors(&self) -> &[Point] {
        &self.sensors
    }

    pub fn targets(&self) -> &[Point] {
        &self.targets
    }

    pub fn num_sensors(&self) -> usize {
        self.sensors.len()
    }

    pub fn num_targets(&self) -> usize {
        self.targets.len()
    }

    pub fn sensor(&self, id: SensorId) -> &Point {
        &self.sensors[id.0]
    }

    pub fn target(&self, id: TargetId) -> &Point {
        &self.targets[id.0]
    }

    pub fn sensor_ids(&self) -> impl Iterator<Item = SensorId> {
        (0..self.sensors.len()).map(SensorId)
    }

    pub fn target_ids(&self) -> impl Iterator<Item = TargetId> {
        (0..self.targets.len()).map(TargetId)
    }

    pub fn is_normalized(&self) -> bool {
        self.rc == 1.0
    }

    /// Rescale so that `rc == 1`, preserving all closed-disk membership
    /// relations exactly (uniform scaling by `1/rc`). Idempotent.
    pub fn normalize(&self) -> Instance {
        if self.rc == 1.0 {
            return self.clone();
        }
        let s = 1.0 / self.rc;
        let scale = |p: &Point| Point(p.0 * s, p.1 * s);
        Instance {
            rc: 1.0,
            rs: self.rs * s,
            sensors: self.sensors.iter().map(scale).collect(),
            targets: self.targets.iter().map(scale).collect(),
        }
    }

    /// True iff sensor `s` covers target `p` (closed sensing disk).
    pub fn covers(&self, s: SensorId, p: TargetId) -> bool {
        within(self.sensor(s), self.target(p), self.rs)
    }

    /// True iff sensors `a` and `b` can communicate (closed comm disk).
    pub fn communicates(&self, a: SensorId, b: SensorId) -> bool {
        within(self.sensor(a), self.sensor(b), self.rc)
    }

    /// The set of targets covered by a sensor set. Its cardinality is the
    /// profit of the set in the budgeted problem.
    pub fn coverage(&self, set: &SensorSet) -> BTreeSet<TargetId> {
        let mut covered = BTreeSet::new();
        for p in self.target_ids() {
            if set.iter().any(|s| self.covers(s, p)) {
                covered.insert(p);
            }
        }
        covered
    }

    /// Sensors covering target `p`, in id order.
    pub fn coverers(&self, p: TargetId) -> Vec<SensorId> {
        self.sensor_ids().filter(|&s| self.covers(s, p)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serialization cannot fail")
    }

    pub fn save(&self, path: &Path) -> Result<(), InstanceError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Instance, InstanceError> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Parameters for the uniform random generator.
#[derive(Debug, Clone)]
pub struct GenParams {
    pub n_sensors: usize,
    pub n_targets: usize,
    pub rc: f64,
    pub rs: f64,
    pub extent: f64,
    pub seed: u64,
}

/// Draw `n_sensors` + `n_targets` points uniformly in `[0, extent)^2`.
/// Deterministic for a given seed: coordinates are derived from raw
/// ChaCha8 output, independent of any distribution implementation.
pub fn generate(params: &GenParams) -> Result<Instance, InstanceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut coord = |extent: f64| (rng.next_u64() >> 11) as f64 * (extent / 9007199254740992.0);
    let mut points = |n: usize, extent: f64| -> Vec<Point> {
        (0..n).map(|_| Point(coord(extent), coord(extent))).collect()
    };
    let sensors = points(params.n_sensors, params.extent);
    let targets = points(params.n_targets, params.extent);
    Instance::new(sensors, targets, params.rc, params.rs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(sensors: Vec<Point>, targets: Vec<Point>, rc: f64, rs: f64) -> Instance {
        Instance::new(sensors, targets, rc, rs).unwrap()
    }

    #[test]
    fn normalize_scales_uniformly() {
        let i = inst(vec![Point(4.0, 0.0)], vec![Point(0.0, 0.0)], 2.0, 3.0);
        let n = i.normalize();
        assert_eq!(n.rc(), 1.0);
        assert_eq!(n.rs(), 1.5);
        assert_eq!(n.sensors()[0], Point(2.0, 0.0));
    }

    #[test]
    fn normalize_identity_when_rc_is_one() {
        let i = inst(vec![Point(0.3, 0.7)], vec![], 1.0, 2.0);
        assert_eq!(i.normalize(), i);
    }

    #[test]
    fn normalize_preserves_ratio() {
        let i = inst(vec![], vec![], 0.5, 0.5);
        assert_eq!(i.ratio(), 1.0);
        assert_eq!(i.normalize().ratio(), 1.0);
    }

    #[test]
    fn normalize_is_idempotent() {
        let i = inst(vec![Point(1.0, 2.0), Point(-3.0, 0.5)], vec![Point(0.0, 0.0)], 2.0, 1.0);
        let once = i.normalize();
        assert_eq!(once.normalize(), once);
    }

    #[test]
    fn rejects_non_positive_radius() {
        assert!(Instance::new(vec![], vec![], 0.0, 1.0).is_err());
        assert!(Instance::new(vec![], vec![], 1.0, -2.0).is_err());
        assert!(Instance::new(vec![], vec![], f64::NAN, 1.0).is_err());
    }

    #[test]
    fn rejects_non_finite_coordinates() {
        assert!(Instance::new(vec![Point(f64::INFINITY, 0.0)], vec![], 1.0, 1.0).is_err());
    }

    #[test]
    fn coverage_of_empty_set_is_empty() {
        let i = inst(vec![Point(0.0, 0.0)], vec![Point(0.5, 0.0)], 1.0, 1.0);
        assert!(i.coverage(&SensorSet::new()).is_empty());
    }

    #[test]
    fn coverage_boundary_is_closed() {
        let i = inst(
            vec![Point(0.0, 0.0)],
            vec![Point(1.0, 0.0), Point(1.0 + 1e-3, 0.0)],
            1.0,
            1.0,
        );
        let all: SensorSet = [0usize].into_iter().collect();
        let cov = i.coverage(&all);
        assert!(cov.contains(&TargetId(0)));
        assert!(!cov.contains(&TargetId(1)));
    }

    #[test]
    fn coverage_matches_distance_scan() {
        let params = GenParams {
            n_sensors: 3,
            n_targets: 5,
            rc: 1.0,
            rs: 0.8,
            extent: 2.0,
            seed: 42,
        };
        let i = generate(&params).unwrap();
        let set: SensorSet = [0usize, 1, 2].into_iter().collect();
        let cov = i.coverage(&set);
        for p in i.target_ids() {
            let by_scan = i
                .sensors()
                .iter()
                .any(|s| s.dist2(i.target(p)) <= i.rs() * i.rs() + crate::geom::geo_tolerance());
            assert_eq!(cov.contains(&p), by_scan, "target {p:?}");
        }
    }

    #[test]
    fn generate_empty_instance() {
        let params = GenParams {
            n_sensors: 0,
            n_targets: 0,
            rc: 1.0,
            rs: 1.0,
            extent: 1.0,
            seed: 0,
        };
        let i = generate(&params).unwrap();
        assert_eq!(i.num_sensors(), 0);
        assert_eq!(i.num_targets(), 0);
    }

    #[test]
    fn generate_is_deterministic() {
        let params = GenParams {
            n_sensors: 7,
            n_targets: 9,
            rc: 1.0,
            rs: 1.5,
            extent: 5.0,
            seed: 123,
        };
        let a = generate(&params).unwrap().to_json();
        let b = generate(&params).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let i = inst(
            vec![Point(0.1, 0.2), Point(1.0 / 3.0, 2.0_f64.sqrt())],
            vec![Point(-0.75, 1e-17)],
            1.0,
            0.5,
        );
        let text = i.to_json();
        let back: Instance = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_json(), text);
        for (a, b) in i.sensors().iter().zip(back.sensors()) {
            assert_eq!(a.0.to_bits(), b.0.to_bits());
            assert_eq!(a.1.to_bits(), b.1.to_bits());
        }
    }
}
