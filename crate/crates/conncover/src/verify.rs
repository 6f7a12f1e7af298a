//! Independent feasibility verification, shared by solvers, oracles, and the
//! CLI `verify` subcommand. Deliberately simple: distance scans and BFS,
//! no data reuse from the solving pipelines.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CommGraph, SubsetConnectivity};
use crate::instance::{Instance, InstanceError, SensorSet, TargetId};

#[derive(Debug, Error, PartialEq)]
pub enum VerifyError {
    #[error("sensor id {0} out of range")]
    SensorOutOfRange(usize),
    #[error("target {0:?} is not covered")]
    UncoveredTarget(TargetId),
    #[error("selected sensors do not induce a connected graph")]
    NotConnected,
    #[error("selected {size} sensors exceeds budget {budget}")]
    BudgetExceeded { size: usize, budget: usize },
    #[error("no sensors selected but targets exist")]
    EmptySelection,
    #[error("tree edge ({0}, {1}) is not a communication edge between selected sensors")]
    BadTreeEdge(usize, usize),
    #[error("tree edges do not form a spanning tree of the selected sensors")]
    NotSpanningTree,
}

fn check_ids(inst: &Instance, set: &SensorSet) -> Result<(), VerifyError> {
    for s in set.iter() {
        if s.0 >= inst.num_sensors() {
            return Err(VerifyError::SensorOutOfRange(s.0));
        }
    }
    Ok(())
}

fn check_connected(inst: &Instance, set: &SensorSet) -> Result<(), VerifyError> {
    let g = CommGraph::build(inst);
    match g.is_connected_subset(set) {
        SubsetConnectivity::Connected => Ok(()),
        SubsetConnectivity::Disconnected => Err(VerifyError::NotConnected),
        SubsetConnectivity::Empty => unreachable!("callers handle empty sets"),
    }
}

/// Minimum-cover feasibility: all targets covered and the selection
/// connected. An empty selection is accepted only when there are no
/// targets.
pub fn verify_min_csc(inst: &Instance, set: &SensorSet) -> Result<(), VerifyError> {
    check_ids(inst, set)?;
    if set.is_empty() {
        return if inst.num_targets() == 0 {
            Ok(())
        } else {
            Err(VerifyError::EmptySelection)
        };
    }
    let covered = inst.coverage(set);
    for p in inst.target_ids() {
        if !covered.contains(&p) {
            return Err(VerifyError::UncoveredTarget(p));
        }
    }
    check_connected(inst, set)
}

/// Budgeted feasibility: at most `budget` sensors, connected (no coverage
/// requirement; coverage is the objective, not a constraint).
pub fn verify_budgeted(inst: &Instance, set: &SensorSet, budget: usize) -> Result<(), VerifyError> {
    check_ids(inst, set)?;
    if set.len() > budget {
        return Err(VerifyError::BudgetExceeded { size: set.len(), budget });
    }
    if set.is_empty() {
        return Ok(());
    }
    check_connected(inst, set)
}

/// When a solution file carries tree edges, they must be communication
/// edges between selected sensors and form a spanning tree of them.
pub fn verify_tree_edges(
    inst: &Instance,
    set: &SensorSet,
    edges: &[(usize, usize)],
) -> Result<(), VerifyError> {
    for &(u, v) in edges {
        if u >= inst.num_sensors() || v >= inst.num_sensors() {
            return Err(VerifyError::SensorOutOfRange(u.max(v)));
        }
        let (su, sv) = (crate::instance::SensorId(u), crate::instance::SensorId(v));
        if u == v || !set.contains(su) || !set.contains(sv) || !inst.communicates(su, sv) {
            return Err(VerifyError::BadTreeEdge(u, v));
        }
    }
    if set.is_empty() {
        return if edges.is_empty() { Ok(()) } else { Err(VerifyError::NotSpanningTree) };
    }
    if edges.len() != set.len() - 1 {
        return Err(VerifyError::NotSpanningTree);
    }
    // connectivity over tree edges alone
    let ids = set.ids();
    let index = |x: usize| ids.binary_search(&x).unwrap();
    let mut adj = vec![Vec::new(); ids.len()];
    for &(u, v) in edges {
        adj[index(u)].push(index(v));
        adj[index(v)].push(index(u));
    }
    let mut seen = vec![false; ids.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    if count != ids.len() {
        return Err(VerifyError::NotSpanningTree);
    }
    Ok(())
}

/// Reference to the instance a solution file applies to: a path (resolved
/// relative to the process working directory) or the instance inlined.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InstanceRef {
    Path(String),
    Inline(Instance),
}

impl InstanceRef {
    pub fn resolve(&self) -> Result<Instance, InstanceError> {
        match self {
            InstanceRef::Path(p) => Instance::load(Path::new(p)),
            InstanceRef::Inline(i) => Ok(i.clone()),
        }
    }
}

/// On-disk solution format:
/// `{"instance": path-or-inline, "sensors": [ids], "tree_edges": [[u,v],...]?}`.
/// Tree edges are optional for minimum-cover solutions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionFile {
    pub instance: InstanceRef,
    pub sensors: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree_edges: Option<Vec<(usize, usize)>>,
}

impl SolutionFile {
    pub fn sensor_set(&self) -> SensorSet {
        self.sensors.iter().copied().collect()
    }
}
