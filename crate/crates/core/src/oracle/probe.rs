use serde::Serialize;

use super::{check_bound, circle_search, is_comparability_small, prn_search, SearchBounds};
use crate::error::{Error, Result};
use crate::graphcore::{Graph, PermSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeVerdict {
    /// The graph is outside the premise: not a circle graph, not a
    /// comparability graph, or complete.
    Skipped,
    /// A representation by at most three permutations was found.
    Consistent,
    /// No representation by at most three permutations was found within the
    /// search bounds. This never refutes the conjecture on its own.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub verdict: ProbeVerdict,
    pub reason: String,
    pub circle: Option<bool>,
    pub comparability: Option<bool>,
    pub prn: Option<usize>,
    pub witness: Option<PermSequence>,
}

impl ProbeReport {
    fn skipped(reason: &str, circle: Option<bool>, comparability: Option<bool>) -> Self {
        ProbeReport {
            verdict: ProbeVerdict::Skipped,
            reason: reason.into(),
            circle,
            comparability,
            prn: None,
            witness: None,
        }
    }
}

/// Checks, on one small graph, that a comparability graph with
/// representation number two has a representation by at most three
/// permutations.
pub fn conjecture_probe(g: &Graph, bounds: &SearchBounds) -> Result<ProbeReport> {
    check_bound("vertices for the conjecture probe", g.vertex_count(), bounds.probe_vertices)?;
    if prn_search(g, 1, bounds)?.found {
        return Ok(ProbeReport::skipped("complete graph: representation number 1", None, None));
    }
    if !circle_search(g, bounds)?.found {
        return Ok(ProbeReport::skipped("not a circle graph: representation number at least 3", Some(false), None));
    }
    if !is_comparability_small(g, bounds)?.found {
        return Ok(ProbeReport::skipped("not a comparability graph", Some(true), Some(false)));
    }
    let mut last_reason = String::new();
    for k in [2, 3] {
        match prn_search(g, k, bounds) {
            Ok(out) if out.found => {
                return Ok(ProbeReport {
                    verdict: ProbeVerdict::Consistent,
                    reason: format!("found a representation by {k} permutations"),
                    circle: Some(true),
                    comparability: Some(true),
                    prn: Some(k),
                    witness: out.perms().cloned(),
                });
            }
            Ok(_) => last_reason = format!("no representation by {k} permutations exists"),
            Err(e @ Error::BoundExceeded { .. }) => {
                last_reason = format!("search for {k} permutations not run: {e}");
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ProbeReport {
        verdict: ProbeVerdict::Inconclusive,
        reason: last_reason,
        circle: Some(true),
        comparability: Some(true),
        prn: None,
        witness: None,
    })
}
