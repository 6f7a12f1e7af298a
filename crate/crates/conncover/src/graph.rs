//! The communication graph (a unit disk graph after normalization), its
//! connected components, and connectivity checks on sensor subsets.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use crate::geom::within;
use crate::instance::{Instance, SensorId, SensorSet};

/// Immutable adjacency structure over the instance's sensors.
/// Edge (u, v) exists iff dist(u, v) <= rc (closed, global tolerance).
#[derive(Debug, Clone)]
pub struct CommGraph {
    adj: Vec<Vec<SensorId>>,
    edges: Vec<(SensorId, SensorId)>,
}

/// One maximal connected component, as a sorted vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<SensorId>,
}

/// Connectivity verdict for a sensor subset. The empty set is neither
/// connected nor disconnected; callers decide how to treat it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetConnectivity {
    Empty,
    Connected,
    Disconnected,
}

impl CommGraph {
    /// Build by bucketed neighbor search: buckets of side rc, so candidate
    /// neighbors are confined to the 3x3 surrounding buckets. Semantics are
    /// identical to the all-pairs scan (kept as the test oracle).
    pub fn build(inst: &Instance) -> CommGraph {
        let n = inst.num_sensors();
        let rc = inst.rc();
        let mut buckets: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
        for (i, p) in inst.sensors().iter().enumerate() {
            let key = ((p.y() / rc).floor() as i64, (p.x() / rc).floor() as i64);
            buckets.entry(key).or_default().push(i);
        }
        let mut adj = vec![Vec::new(); n];
        let mut edges = Vec::new();
        for (&(by, bx), members) in &buckets {
            for &i in members {
                for dy in -1..=1 {
                    for dx in -1..=1 {
                        let Some(cands) = buckets.get(&(by + dy, bx + dx)) else {
                            continue;
                        };
                        for &j in cands {
                            if j <= i {
                                continue;
                            }
                            if within(&inst.sensors()[i], &inst.sensors()[j], rc) {
                                adj[i].push(SensorId(j));
                                adj[j].push(SensorId(i));
                                edges.push((SensorId(i), SensorId(j)));
                            }
                        }
                    }
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        edges.sort_unstable();
        CommGraph { adj, edges }
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: SensorId) -> &[SensorId] {
        &self.adj[v.0]
    }

    pub fn edges(&self) -> &[(SensorId, SensorId)] {
        &self.edges
    }

    pub fn has_edge(&self, u: SensorId, v: SensorId) -> bool {
        u != v && self.adj[u.0].binary_search(&v).is_ok()
    }

    /// Maximal connected components, each sorted, listed by smallest member.
    pub fn components(&self) -> Vec<Component> {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            let mut verts = Vec::new();
            while let Some(v) = queue.pop_front() {
                verts.push(SensorId(v));
                for &w in &self.adj[v] {
                    if !seen[w.0] {
                        seen[w.0] = true;
                        queue.push_back(w.0);
                    }
                }
            }
            verts.sort_unstable();
            out.push(Component { vertices: verts });
        }
        out
    }

    /// Is the subgraph induced by `set` connected?
    pub fn is_connected_subset(&self, set: &SensorSet) -> SubsetConnectivity {
        let Some(start) = set.iter().next() else {
            return SubsetConnectivity::Empty;
        };
        let mut seen: SensorSet = [start].into_iter().collect();
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v.0] {
                if set.contains(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        if seen.len() == set.len() {
            SubsetConnectivity::Connected
        } else {
            SubsetConnectivity::Disconnected
        }
    }

    /// Graphviz rendering with sensor positions, for debugging.
    pub fn to_dot(&self, inst: &Instance) -> String {
        let mut s = String::from("graph comm {\n  node [shape=point];\n");
        for (i, p) in inst.sensors().iter().enumerate() {
            let _ = writeln!(s, "  {} [pos=\"{},{}!\"];", i, p.x(), p.y());
        }
        for (u, v) in &self.edges {
            let _ = writeln!(s, "  {} -- {};", u.0, v.0);
        }
        s.push_str("}\n");
        s
    }
}
