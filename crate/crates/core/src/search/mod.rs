//! Search for the Bell operators of maximal violation ratio.
//!
//! Candidates are subsets of the non-identity stabilizing operators.
//! Exhaustive mode considers every subset (exactly, with conservative
//! pruning); symmetric mode considers unions of automorphism orbits.
//! Optima maximize D = q/(2p−q) and, among equal ratios, minimize the
//! term count; all subsets achieving that pair are reported, both raw
//! and grouped into equivalence classes under the graph automorphisms.

mod engine;

use crate::error::{Error, Result};
use crate::graph::{Automorphism, GraphSpec};
use crate::lhv::{classical_bound, Assignment, BellOperator};
use crate::metrics::{settings_signature, violation_ratio, Rational};
use crate::stabilizer::{orbits, StabilizerGroup};
use crate::state::{build_state_vector, expectation, MAX_DENSE_QUBITS};
use engine::{Atom, Engine, Limits};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

/// Tolerance on the statevector check ⟨G|β|G⟩ = q.
pub const QUANTUM_VALUE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Every non-empty subset of the non-identity elements.
    Exhaustive,
    /// Non-empty unions of automorphism orbits.
    Symmetric,
}

impl std::fmt::Display for SearchMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SearchMode::Exhaustive => write!(f, "exhaustive"),
            SearchMode::Symmetric => write!(f, "symmetric"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub mode: SearchMode,
    /// Cap on the candidate term count; required for exhaustive runs on
    /// six or more qubits.
    pub max_q: Option<u32>,
    /// Worker threads; 0 picks the runtime default.
    pub workers: usize,
    /// Report every optimal subset instead of one per equivalence class.
    pub report_all_optima: bool,
    /// Abort after this many evaluated candidates, returning the best
    /// found so far flagged incomplete.
    pub node_budget: Option<u64>,
}

impl SearchConfig {
    pub fn exhaustive() -> Self {
        SearchConfig {
            mode: SearchMode::Exhaustive,
            max_q: None,
            workers: 0,
            report_all_optima: false,
            node_budget: None,
        }
    }

    pub fn symmetric() -> Self {
        SearchConfig {
            mode: SearchMode::Symmetric,
            ..SearchConfig::exhaustive()
        }
    }
}

/// One reported inequality: the operator together with its derived data.
#[derive(Debug, Clone)]
pub struct InequalityRecord {
    pub operator: BellOperator,
    pub q: u32,
    pub p: u32,
    pub bound: u32,
    /// q / (2p − q), exact.
    pub d: Rational,
    /// Distinct non-identity letters measured per qubit.
    pub settings: Vec<u8>,
    pub witness: Assignment,
    /// Lexicographically least image of the term set under the graph
    /// automorphisms; identifies the equivalence class.
    pub canonical_masks: Vec<u32>,
    /// Distinct images of the term set under the automorphisms.
    pub orbit_size: usize,
}

impl InequalityRecord {
    pub fn is_canonical(&self) -> bool {
        self.operator.term_masks() == self.canonical_masks
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    /// Candidate subsets evaluated (scheduling-dependent when pruning).
    pub candidates: u64,
    pub elapsed: Duration,
}

#[derive(Debug)]
pub struct SearchOutcome {
    pub mode: SearchMode,
    /// Reported optima, deterministically ordered.
    pub records: Vec<InequalityRecord>,
    /// Number of optimal subsets in the searched candidate space.
    pub raw_optima: u64,
    /// Number of automorphism classes among them.
    pub canonical_classes: u64,
    pub complete: bool,
    pub stats: SearchStats,
}

/// Applies every automorphism to a term-mask set and returns the
/// lexicographically least image plus the count of distinct images.
pub fn canonical_form(masks: &[u32], autos: &[Automorphism]) -> (Vec<u32>, usize) {
    let mut images: Vec<Vec<u32>> = autos
        .iter()
        .map(|a| {
            let mut img: Vec<u32> = masks.iter().map(|&m| a.apply_mask(m)).collect();
            img.sort_unstable();
            img
        })
        .collect();
    images.sort();
    images.dedup();
    (images[0].clone(), images.len())
}

/// Sums the statevector expectations of the operator's terms and checks
/// the result equals the term count; a mismatch signals a sign bug.
pub fn verify_quantum_value(op: &BellOperator) -> Result<f64> {
    let graph = op.group().graph();
    let state = build_state_vector(graph)?;
    let mut total = 0.0;
    for term in op.terms() {
        total += expectation(&state, term)?;
    }
    if (total - op.q() as f64).abs() > QUANTUM_VALUE_TOL {
        return Err(Error::QuantumValueMismatch {
            value: total,
            q: op.q(),
        });
    }
    Ok(total)
}

/// Exhaustive search over all non-empty subsets. Exact; refuses n ≥ 6
/// unless a term cap or node budget is configured.
pub fn search_exhaustive(graph: &GraphSpec, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let mut cfg = cfg.clone();
    cfg.mode = SearchMode::Exhaustive;
    search(graph, &cfg)
}

/// Symmetric search over unions of automorphism orbits.
pub fn search_symmetric(graph: &GraphSpec) -> Result<SearchOutcome> {
    search(graph, &SearchConfig::symmetric())
}

/// Runs the configured search on a graph.
pub fn search(graph: &GraphSpec, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let start = Instant::now();
    let n = graph.n();
    if n > 8 {
        return Err(Error::TooLarge {
            what: "search qubit count",
            value: n,
            limit: 8,
        });
    }
    if cfg.mode == SearchMode::Exhaustive && n >= 6 && cfg.max_q.is_none() && cfg.node_budget.is_none()
    {
        return Err(Error::TooLarge {
            what: "exhaustive candidate space (set a term cap or node budget)",
            value: n,
            limit: 5,
        });
    }
    let group = Arc::new(StabilizerGroup::from_graph(graph)?);
    let autos = graph.automorphisms()?;
    let atoms: Vec<Atom> = match cfg.mode {
        SearchMode::Exhaustive => (1u32..(1 << n))
            .map(|m| Atom { members: vec![m] })
            .collect(),
        SearchMode::Symmetric => orbits(&autos, n)
            .into_iter()
            .map(|members| Atom { members })
            .collect(),
    };
    let mut engine = Engine::new(&group, atoms)?;
    let raw = engine.run(Limits {
        max_q: cfg.max_q,
        node_budget: cfg.node_budget,
        workers: cfg.workers,
    });

    let mut records = Vec::new();
    let mut classes: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for (i, masks) in raw.optima.iter().enumerate() {
        if let Some(best) = raw.best {
            debug_assert_eq!(masks.len() as u32, best.q);
        }
        let (canonical, _) = canonical_form(masks, &autos);
        classes.entry(canonical).or_default().push(i);
    }
    let canonical_classes = classes.len() as u64;
    let raw_optima = raw.optima.len() as u64;
    if cfg.report_all_optima {
        for masks in &raw.optima {
            records.push(build_record(&group, &autos, masks.clone())?);
        }
    } else {
        for (canonical, members) in &classes {
            // The canonical image of an optimum is itself an optimum, so
            // prefer it as the class representative when present.
            let rep = if raw.optima[members[0]] == *canonical || !raw.complete {
                raw.optima[members[0]].clone()
            } else {
                canonical.clone()
            };
            records.push(build_record(&group, &autos, rep)?);
        }
    }
    records.sort_by(|a, b| {
        a.canonical_masks
            .cmp(&b.canonical_masks)
            .then_with(|| a.operator.term_masks().cmp(b.operator.term_masks()))
    });

    let outcome = SearchOutcome {
        mode: cfg.mode,
        records,
        raw_optima,
        canonical_classes,
        complete: raw.complete,
        stats: SearchStats {
            candidates: raw.nodes,
            elapsed: start.elapsed(),
        },
    };
    if !raw.complete {
        return Err(Error::BudgetExceeded {
            nodes: raw.nodes,
            partial: Box::new(outcome),
        });
    }
    Ok(outcome)
}

fn build_record(
    group: &Arc<StabilizerGroup>,
    autos: &[Automorphism],
    masks: Vec<u32>,
) -> Result<InequalityRecord> {
    let operator = BellOperator::new(group.clone(), masks)?;
    let cb = classical_bound(&operator)?;
    let q = operator.q() as u32;
    let bound = u32::try_from(cb.bound).map_err(|_| Error::NoViolationRatio { bound: cb.bound })?;
    let d = violation_ratio(q as i64, bound as i64)?;
    if group.n() <= MAX_DENSE_QUBITS {
        verify_quantum_value(&operator)?;
    }
    let settings = settings_signature(&operator);
    let (canonical_masks, orbit_size) = canonical_form(operator.term_masks(), autos);
    Ok(InequalityRecord {
        q,
        p: cb.p,
        bound,
        d,
        settings,
        witness: cb.witness,
        canonical_masks,
        orbit_size,
        operator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_lookup;
    use crate::metrics::Rational;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn exhaustive(name: &str) -> SearchOutcome {
        let graph = catalog_lookup(name).unwrap();
        search_exhaustive(&graph, &SearchConfig::exhaustive()).unwrap()
    }

    #[test]
    fn ghz3_exhaustive_optimum() {
        let out = exhaustive("ghz3");
        assert!(out.complete);
        assert_eq!(out.canonical_classes, 1);
        let r = &out.records[0];
        assert_eq!((r.q, r.bound), (4, 2));
        assert_eq!(r.d, rat(2, 1));
        assert_eq!(r.p, 3);
        assert_eq!(r.settings, vec![2, 2, 2]);
        // g₁(1+g₂)(1+g₃): all four terms contain g₁.
        assert_eq!(r.operator.term_masks(), &[1, 3, 5, 7]);
    }

    #[test]
    fn ghz4_exhaustive_two_classes() {
        let out = exhaustive("ghz4");
        let r = &out.records[0];
        assert_eq!((r.q, r.bound), (4, 2));
        assert_eq!(r.d, rat(2, 1));
    }

    #[test]
    fn lc4_exhaustive() {
        let out = exhaustive("lc4");
        let r = &out.records[0];
        assert_eq!((r.q, r.bound), (4, 2));
        assert_eq!(r.d, rat(2, 1));
    }

    #[test]
    fn symmetric_never_beats_exhaustive() {
        for name in ["ghz3", "ghz4", "lc4"] {
            let graph = catalog_lookup(name).unwrap();
            let ex = search_exhaustive(&graph, &SearchConfig::exhaustive()).unwrap();
            let sym = search_symmetric(&graph).unwrap();
            let de = ex.records[0].d;
            let ds = sym.records[0].d;
            assert!(ds <= de, "{name}: symmetric {ds} > exhaustive {de}");
        }
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let graph = catalog_lookup("lc4").unwrap();
        let autos = graph.automorphisms().unwrap();
        let out = exhaustive("lc4");
        for r in &out.records {
            let (again, size) = canonical_form(&r.canonical_masks, &autos);
            assert_eq!(again, r.canonical_masks);
            assert_eq!(size, r.orbit_size);
        }
    }

    #[test]
    fn quantum_value_matches_term_count() {
        let out = exhaustive("ghz3");
        let v = verify_quantum_value(&out.records[0].operator).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn exhaustive_needs_budget_for_six_qubits() {
        let graph = catalog_lookup("ghz6").unwrap();
        let err = search_exhaustive(&graph, &SearchConfig::exhaustive());
        assert!(matches!(err, Err(Error::TooLarge { .. })));
    }

    #[test]
    fn budget_abort_returns_partial() {
        let graph = catalog_lookup("ghz4").unwrap();
        let mut cfg = SearchConfig::exhaustive();
        cfg.node_budget = Some(10);
        cfg.workers = 1;
        match search_exhaustive(&graph, &cfg) {
            Err(Error::BudgetExceeded { partial, .. }) => assert!(!partial.complete),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn translate_preserves_bound_when_rechecked() {
        // Optimal GHZ₃ operator translated by g₂: bound recomputed, not assumed.
        let out = exhaustive("ghz3");
        let op = &out.records[0].operator;
        let t = op.translate(0b010).unwrap();
        let cb = classical_bound(&t).unwrap();
        assert_eq!(cb.bound, 2);
        assert_eq!(t.q(), 4);
    }
}
