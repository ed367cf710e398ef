//! Exhaustive ground truth for small graphs.
//!
//! Every search here is a plain enumeration with a hard size limit taken from
//! [`SearchBounds`]; a graph over the limit is refused, never truncated.
//! Parallel searches report the first witness in enumeration order, so
//! results do not depend on the number of worker threads.

mod chord;
mod comparability;
mod dense;
mod iso;
mod local;
mod perm_search;
mod probe;

use std::time::Instant;

use serde::Serialize;

pub use chord::{chord_intersection_graph, circle_search, Chord, ChordDiagram};
pub use comparability::{is_comparability_small, Orientation};
pub use iso::{induced_subgraph, isomorphic};
pub use local::local_complement;
pub use perm_search::{all_perm_representations, is_permutation_graph_small, prn_search, prn_search_canonical};
pub use probe::{conjecture_probe, ProbeReport, ProbeVerdict};

use crate::error::{Error, Result};
use crate::graphcore::{Graph, PermSequence};

/// Size limits for the exhaustive searches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    /// Largest vertex count for two-permutation search.
    pub perm2_vertices: usize,
    /// Largest vertex count for searches over three or more permutations.
    pub perm3_vertices: usize,
    /// Largest chord count for chord-diagram enumeration.
    pub circle_vertices: usize,
    /// Largest edge count for orientation enumeration.
    pub orientation_edges: usize,
    /// Largest vertex count for isomorphism testing.
    pub iso_vertices: usize,
    /// Largest host size for induced-subgraph search.
    pub induced_host_vertices: usize,
    /// Largest vertex count accepted by the conjecture probe.
    pub probe_vertices: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            perm2_vertices: 8,
            perm3_vertices: 6,
            circle_vertices: 8,
            orientation_edges: 20,
            iso_vertices: 10,
            induced_host_vertices: 4096,
            probe_vertices: 7,
        }
    }
}

/// Environment variable holding default bounds, e.g. `perm2=7,circle=8`.
pub const BOUNDS_ENV: &str = "PERMREP_BOUNDS";

impl SearchBounds {
    /// Defaults overridden by `key=value` pairs separated by commas.
    pub fn parse_overrides(&self, spec: &str) -> Result<SearchBounds> {
        let mut b = self.clone();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("bound {item:?} is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| Error::InvalidArgument(format!("bound {key} needs a positive integer, got {value:?}")))?;
            let slot = match key.trim() {
                "perm2" => &mut b.perm2_vertices,
                "perm3" => &mut b.perm3_vertices,
                "circle" => &mut b.circle_vertices,
                "orient" => &mut b.orientation_edges,
                "iso" => &mut b.iso_vertices,
                "induced" => &mut b.induced_host_vertices,
                "probe" => &mut b.probe_vertices,
                other => return Err(Error::InvalidArgument(format!("unknown bound {other:?}"))),
            };
            *slot = value;
        }
        Ok(b)
    }

    /// Defaults, then whatever [`BOUNDS_ENV`] overrides.
    pub fn from_env() -> Result<SearchBounds> {
        match std::env::var(BOUNDS_ENV) {
            Ok(spec) => SearchBounds::default().parse_overrides(&spec),
            Err(_) => Ok(SearchBounds::default()),
        }
    }
}

pub(crate) fn check_bound(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::BoundExceeded { what, size, limit })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Perms(PermSequence),
    Chords(ChordDiagram),
    Orientation(Orientation),
    Graph(Graph),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub found: bool,
    pub witness: Option<Witness>,
    /// Candidates covered, including those rejected in bulk by pruning.
    /// On success this is the 1-based position of the witness in enumeration order.
    pub states_examined: u64,
    pub elapsed_ms: u128,
}

impl SearchOutcome {
    pub(crate) fn new(started: Instant, witness: Option<Witness>, states_examined: u64) -> Self {
        SearchOutcome { found: witness.is_some(), witness, states_examined, elapsed_ms: started.elapsed().as_millis() }
    }

    pub fn perms(&self) -> Option<&PermSequence> {
        match &self.witness {
            Some(Witness::Perms(p)) => Some(p),
            _ => None,
        }
    }

    pub fn chords(&self) -> Option<&ChordDiagram> {
        match &self.witness {
            Some(Witness::Chords(d)) => Some(d),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_overrides() {
        let b = SearchBounds::default().parse_overrides("perm2=7, circle=6").unwrap();
        assert_eq!(b.perm2_vertices, 7);
        assert_eq!(b.circle_vertices, 6);
        assert_eq!(b.perm3_vertices, 6);
        assert!(SearchBounds::default().parse_overrides("perm2=0").is_err());
        assert!(SearchBounds::default().parse_overrides("speed=9").is_err());
        assert!(SearchBounds::default().parse_overrides("perm2").is_err());
    }
}
