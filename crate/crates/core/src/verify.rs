//! Per-instance self checks used by the CLI `verify` command and the test
//! suite.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arith::FactoredInteger;
use crate::bounds::bound;
use crate::cutset::{build, expand, CutSetDescriptor};
use crate::error::Result;
use crate::graph::{ExplicitGraph, OrderClassGraph};
use crate::kappa::{all_x, all_z, kappa, KappaResult};
use crate::oracle::vertex_connectivity;

/// Descriptors are built and checked on the quotient only when `n` has at most
/// this many divisors.
pub const QUOTIENT_CHECK_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimizerCheck {
    pub descriptor: CutSetDescriptor,
    pub size: usize,
    pub disconnects: bool,
}

/// Engine result compared with max-flow connectivity of the explicit graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub n: u64,
    pub engine_kappa: BigUint,
    pub oracle_kappa: u64,
    pub minimizers: Vec<MinimizerCheck>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.engine_kappa == BigUint::from(self.oracle_kappa)
            && self
                .minimizers
                .iter()
                .all(|m| m.disconnects && m.size as u64 == self.oracle_kappa)
    }
}

/// Runs the max-flow oracle on `P(C_n)` and deletes each reported minimizer
/// from the explicit graph. Fails with `LimitExceeded` when `n > limit`.
pub fn verify_against_oracle(f: &FactoredInteger, limit: u64) -> Result<OracleReport> {
    let g = ExplicitGraph::new(f, limit)?;
    let res = kappa(f)?;
    oracle_report(&g, &res)
}

fn oracle_report(g: &ExplicitGraph, res: &KappaResult) -> Result<OracleReport> {
    let n = g.order();
    let oracle_kappa = vertex_connectivity(g) as u64;
    let mut minimizers = Vec::new();
    for desc in &res.minimizers {
        let set = build(&res.n, desc)?;
        let elems = expand(&set, n as u64)?;
        let mut removed = vec![false; n];
        for &x in &elems {
            removed[x as usize] = true;
        }
        minimizers.push(MinimizerCheck {
            descriptor: *desc,
            size: elems.len(),
            disconnects: g.disconnects(&removed),
        });
    }
    Ok(OracleReport {
        n: n as u64,
        engine_kappa: res.kappa.clone(),
        oracle_kappa,
        minimizers,
    })
}

#[derive(Debug, Clone)]
pub struct InstanceReport {
    pub result: KappaResult,
    /// Number of descriptors built and checked on the quotient.
    pub descriptors_checked: usize,
    pub oracle: Option<OracleReport>,
    pub failures: Vec<String>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks one `n`:
/// * `kappa` equals the candidate-table minimum;
/// * for small divisor counts, every `Z` and `X` has size equal to its closed
///   form, disconnects the quotient, and is no smaller than `kappa`;
/// * for `n <= oracle_limit`, the max-flow oracle agrees.
pub fn check_instance(f: &FactoredInteger, oracle_limit: u64) -> Result<InstanceReport> {
    let result = kappa(f)?;
    let mut failures = Vec::new();
    let mut descriptors_checked = 0;

    if !f.is_prime_power() && result.table_minimum() != Some(&result.kappa) {
        failures.push(format!(
            "rule {} gives {} but the candidate table minimum is {:?}",
            result.rule,
            result.kappa,
            result.table_minimum().map(|v| v.to_string())
        ));
    }

    if !f.is_prime_power() && f.divisor_count_checked()? <= QUOTIENT_CHECK_LIMIT {
        let q = OrderClassGraph::new(f)?;
        for desc in all_z(f).into_iter().chain(all_x(f)) {
            descriptors_checked += 1;
            let set = build(f, &desc)?;
            let closed = bound(f, &desc)?.value;
            if set.cardinality() != &closed {
                failures.push(format!(
                    "{desc}: class sum {} differs from closed form {closed}",
                    set.cardinality()
                ));
            }
            if !q.is_cutset(&set)?.disconnected {
                failures.push(format!("{desc} does not disconnect the graph"));
            }
            if closed < result.kappa {
                failures.push(format!("{desc} has size {closed} below kappa {}", result.kappa));
            }
        }
    }

    let oracle = match f.value().to_u64() {
        Some(n) if n <= oracle_limit => {
            let g = ExplicitGraph::new(f, oracle_limit)?;
            let report = oracle_report(&g, &result)?;
            if !report.passed() {
                failures.push(format!(
                    "oracle kappa {} vs engine {}; minimizers {:?}",
                    report.oracle_kappa, report.engine_kappa, report.minimizers
                ));
            }
            Some(report)
        }
        _ => None,
    };

    Ok(InstanceReport {
        result,
        descriptors_checked,
        oracle,
        failures,
    })
}
