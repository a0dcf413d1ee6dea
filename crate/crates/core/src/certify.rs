//! Property certificates: machine-readable records binding a graph
//! encoding to verified properties.

use crate::analysis::{self, GirthResult};
use crate::graph::Graph;
use crate::io;
use crate::limits::SearchLimits;
use crate::search::{self, CensusOptions};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::time::Instant;

/// Checks selectable on the verify path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Cubic,
    Girth,
    /// Full vertex connectivity, or the short-circuit k-connectivity
    /// test when a target k is configured.
    Connectivity,
    HamCount,
    Census,
    Smith,
    Thomason,
    UniqueNonham,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Cubic,
        CheckKind::Girth,
        CheckKind::Connectivity,
        CheckKind::HamCount,
        CheckKind::Census,
        CheckKind::Smith,
        CheckKind::Thomason,
        CheckKind::UniqueNonham,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Cubic => "cubic",
            CheckKind::Girth => "girth",
            CheckKind::Connectivity => "connectivity",
            CheckKind::HamCount => "ham-count",
            CheckKind::Census => "census",
            CheckKind::Smith => "smith",
            CheckKind::Thomason => "thomason",
            CheckKind::UniqueNonham => "unique-nonham",
        }
    }

    pub fn parse(s: &str) -> Option<CheckKind> {
        CheckKind::ALL.iter().copied().find(|k| k.name() == s)
    }
}

/// Expected values asserted by the caller; never inferred.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
pub struct Expectations {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cubic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub girth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ham_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circumference: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
}

/// Verification settings echoed into the certificate.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerifyConfig {
    /// Short-circuit k for the connectivity check (full kappa if absent).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connectivity_k: Option<usize>,
    pub max_vertices: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node_budget: Option<u64>,
    pub expectations: Expectations,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig {
            connectivity_k: None,
            max_vertices: SearchLimits::search_default().max_vertices,
            node_budget: None,
            expectations: Expectations::default(),
        }
    }
}

impl VerifyConfig {
    fn limits(&self) -> SearchLimits {
        SearchLimits { max_vertices: self.max_vertices, node_budget: self.node_budget }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GraphIdentity {
    pub order: usize,
    pub size: usize,
    /// Embedded up to the size threshold; digest otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    pub sha256: String,
}

/// Largest order for which the graph6 string is embedded verbatim.
pub const EMBED_THRESHOLD: usize = 256;

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PropertyCertificate {
    pub tool: String,
    pub version: String,
    pub graph: GraphIdentity,
    pub config: VerifyConfig,
    pub checks: Vec<CheckRecord>,
    pub all_passed: bool,
}

impl PropertyCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Whether any non-skipped check failed its expectation.
    pub fn failed(&self) -> bool {
        !self.all_passed
    }
}

pub fn graph_identity(g: &Graph) -> GraphIdentity {
    let g6 = io::to_graph6(g);
    let sha256 = format!("{:x}", Sha256::digest(g6.as_bytes()));
    GraphIdentity {
        order: g.order(),
        size: g.size(),
        graph6: (g.order() <= EMBED_THRESHOLD).then_some(g6),
        sha256,
    }
}

fn status(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

fn expect<T: PartialEq + Serialize>(observed: &T, expected: &Option<T>) -> (bool, Option<serde_json::Value>) {
    match expected {
        Some(e) => (observed == e, Some(serde_json::json!(e))),
        None => (true, None),
    }
}

/// Runs the requested checks and assembles the certificate. A check that
/// hits a resource guard or a precondition error is recorded as skipped
/// with the reason; `all_passed` then stays false unless the caller
/// asked for nothing else.
pub fn run_checks(g: &Graph, checks: &[CheckKind], config: &VerifyConfig) -> PropertyCertificate {
    let mut records = Vec::new();
    let mut all_passed = true;
    let exp = &config.expectations;
    for &kind in checks {
        let t0 = Instant::now();
        let mut record = match kind {
            CheckKind::Cubic => {
                let cubic = g.is_cubic();
                let (ok, expected) = expect(&cubic, &exp.cubic);
                CheckRecord {
                    name: kind.name().into(),
                    status: status(ok && (exp.cubic.is_some() || cubic)),
                    observed: Some(serde_json::json!(cubic)),
                    expected,
                    reason: None,
                    runtime_ms: 0,
                }
            }
            CheckKind::Girth => {
                let r = analysis::girth(g);
                let observed = match &r {
                    GirthResult::Cycle { girth, witness } => serde_json::json!({
                        "girth": girth,
                        "witness": witness.vertices(),
                    }),
                    GirthResult::Acyclic => serde_json::json!("acyclic"),
                };
                let ok = match exp.girth {
                    Some(e) => r.girth() == Some(e),
                    None => true,
                };
                CheckRecord {
                    name: kind.name().into(),
                    status: status(ok),
                    observed: Some(observed),
                    expected: exp.girth.map(|e| serde_json::json!(e)),
                    reason: None,
                    runtime_ms: 0,
                }
            }
            CheckKind::Connectivity => match config.connectivity_k {
                Some(k) => {
                    let ok = analysis::is_k_connected(g, k);
                    CheckRecord {
                        name: kind.name().into(),
                        status: status(ok),
                        observed: Some(serde_json::json!({ "k_connected": ok, "k": k })),
                        expected: Some(serde_json::json!({ "k": k })),
                        reason: None,
                        runtime_ms: 0,
                    }
                }
                None => {
                    let r = analysis::vertex_connectivity(g);
                    let (ok, expected) = expect(&r.kappa, &exp.kappa);
                    CheckRecord {
                        name: kind.name().into(),
                        status: status(ok),
                        observed: Some(serde_json::json!({ "kappa": r.kappa, "cut": r.cut })),
                        expected,
                        reason: None,
                        runtime_ms: 0,
                    }
                }
            },
            CheckKind::HamCount => {
                match search::count_hamiltonian_cycles(g, &config.limits(), 4) {
                    Ok(r) => {
                        let (ok, expected) = expect(&r.count, &exp.ham_count);
                        CheckRecord {
                            name: kind.name().into(),
                            status: status(ok),
                            observed: Some(serde_json::json!({
                                "count": r.count,
                                "witnesses": r.witnesses.iter().map(|w| w.vertices().to_vec()).collect::<Vec<_>>(),
                                "nodes_expanded": r.stats.nodes_expanded,
                            })),
                            expected,
                            reason: None,
                            runtime_ms: 0,
                        }
                    }
                    Err(e) => skipped(kind, e.to_string()),
                }
            }
            CheckKind::Census => {
                let opts = CensusOptions { limits: config.limits(), ..CensusOptions::default() };
                match search::longest_cycle_census(g, &opts) {
                    Ok(r) => {
                        let (ok_l, exp_l) = expect(&r.circumference, &exp.circumference);
                        let (ok_c, exp_c) = expect(&r.count, &exp.count);
                        CheckRecord {
                            name: kind.name().into(),
                            status: status(ok_l && ok_c),
                            observed: Some(serde_json::json!({
                                "circumference": r.circumference,
                                "count": r.count,
                                "witnesses": r.witnesses.iter().map(|w| w.vertices().to_vec()).collect::<Vec<_>>(),
                                "nodes_expanded": r.stats.nodes_expanded,
                                "bound_prunes": r.stats.bound_prunes,
                            })),
                            expected: match (exp_l, exp_c) {
                                (None, None) => None,
                                (l, c) => Some(serde_json::json!({ "circumference": l, "count": c })),
                            },
                            reason: None,
                            runtime_ms: 0,
                        }
                    }
                    Err(e) => skipped(kind, e.to_string()),
                }
            }
            CheckKind::Smith => match search::smith_edge_check(g, &config.limits()) {
                Ok(r) => CheckRecord {
                    name: kind.name().into(),
                    status: status(r.pass),
                    observed: Some(serde_json::json!({
                        "total": r.total,
                        "all_even": r.all_even,
                        "min_three_ok": r.min_three_ok,
                    })),
                    expected: None,
                    reason: None,
                    runtime_ms: 0,
                },
                Err(e) => skipped(kind, e.to_string()),
            },
            CheckKind::Thomason => match search::thomason_parity_check(g, &config.limits()) {
                Ok(r) => CheckRecord {
                    name: kind.name().into(),
                    status: status(r.pass),
                    observed: Some(serde_json::json!({
                        "total": r.total,
                        "per_vertex_counts": r.per_vertex.iter().map(|&(_, c)| c).collect::<Vec<_>>(),
                    })),
                    expected: None,
                    reason: None,
                    runtime_ms: 0,
                },
                Err(e) => skipped(kind, e.to_string()),
            },
            CheckKind::UniqueNonham => {
                let opts = CensusOptions { limits: config.limits(), ..CensusOptions::default() };
                match search::unique_cycle_nonhamiltonicity_check(g, &opts) {
                    Ok(r) => CheckRecord {
                        name: kind.name().into(),
                        status: status(r.pass),
                        observed: Some(serde_json::json!({
                            "circumference": r.census.circumference,
                            "count": r.census.count,
                            "vacuous": r.vacuous,
                        })),
                        expected: None,
                        reason: None,
                        runtime_ms: 0,
                    },
                    Err(e) => skipped(kind, e.to_string()),
                }
            }
        };
        record.runtime_ms = t0.elapsed().as_millis() as u64;
        all_passed &= record.status == CheckStatus::Pass;
        records.push(record);
    }
    PropertyCertificate {
        tool: "cycleforge".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        graph: graph_identity(g),
        config: config.clone(),
        checks: records,
        all_passed,
    }
}

fn skipped(kind: CheckKind, reason: String) -> CheckRecord {
    CheckRecord {
        name: kind.name().into(),
        status: CheckStatus::Skipped,
        observed: None,
        expected: None,
        reason: Some(reason),
        runtime_ms: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::k4;

    #[test]
    fn k4_certificate_passes() {
        let config = VerifyConfig {
            expectations: Expectations {
                cubic: Some(true),
                girth: Some(3),
                kappa: Some(3),
                ham_count: Some(3),
                ..Expectations::default()
            },
            ..VerifyConfig::default()
        };
        let cert = run_checks(
            &k4(),
            &[CheckKind::Cubic, CheckKind::Girth, CheckKind::Connectivity, CheckKind::HamCount],
            &config,
        );
        assert!(cert.all_passed, "{}", cert.to_json());
        assert!(cert.graph.graph6.is_some());
    }

    #[test]
    fn expectation_failure_reported() {
        let config = VerifyConfig {
            expectations: Expectations { girth: Some(4), ..Expectations::default() },
            ..VerifyConfig::default()
        };
        let cert = run_checks(&k4(), &[CheckKind::Girth], &config);
        assert!(!cert.all_passed);
        assert_eq!(cert.checks[0].status, CheckStatus::Fail);
    }

    #[test]
    fn resource_guard_marks_skipped() {
        let (h1, _) = crate::construct::family_member(1, &Default::default()).unwrap();
        let cert = run_checks(&h1, &[CheckKind::Census], &VerifyConfig::default());
        assert_eq!(cert.checks[0].status, CheckStatus::Skipped);
        assert!(cert.checks[0].reason.as_deref().unwrap().contains("exceeds limit"));
        assert!(!cert.all_passed);
        // large graph carries a digest, not an embedded encoding
        assert!(cert.graph.graph6.is_none());
    }

    #[test]
    fn certificate_round_trip_identical_modulo_runtime() {
        let config = VerifyConfig::default();
        let mut a = run_checks(&k4(), &[CheckKind::Girth, CheckKind::HamCount], &config);
        let mut b = run_checks(&k4(), &[CheckKind::Girth, CheckKind::HamCount], &config);
        for r in a.checks.iter_mut().chain(b.checks.iter_mut()) {
            r.runtime_ms = 0;
        }
        assert_eq!(a.to_json(), b.to_json());
    }
}
