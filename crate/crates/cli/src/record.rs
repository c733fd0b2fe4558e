//! JSON records. Every integer is a decimal string so values of any size
//! survive a round trip.

use serde::{Deserialize, Serialize};

use powerconn::{BoundValue, CutCheck, DivisorSet, FactoredInteger, InstanceReport, KappaResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub descriptor: String,
    pub size: String,
    /// Rational inner term, `p/q` or an integer.
    pub inner: String,
}

impl From<&BoundValue> for CandidateRecord {
    fn from(b: &BoundValue) -> Self {
        CandidateRecord {
            descriptor: b.descriptor.to_string(),
            size: b.value.to_string(),
            inner: b.inner.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_us: String,
}

impl Timing {
    pub fn since(start: std::time::Instant) -> Self {
        Timing {
            elapsed_us: start.elapsed().as_micros().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: String,
    pub factorization: String,
    pub kappa: String,
    pub rule: String,
    pub minimizers: Vec<String>,
    pub uniqueness: String,
    pub candidates: Vec<CandidateRecord>,
    pub timing: Timing,
}

impl OutputRecord {
    pub fn new(res: &KappaResult, timing: Timing) -> Self {
        OutputRecord {
            n: res.n.value().to_string(),
            factorization: res.n.to_string(),
            kappa: res.kappa.to_string(),
            rule: res.rule.as_str().to_string(),
            minimizers: res.minimizers.iter().map(|d| d.to_string()).collect(),
            uniqueness: res.uniqueness.to_string(),
            candidates: res.candidates.iter().map(CandidateRecord::from).collect(),
            timing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub n: String,
    pub factorization: String,
    pub totient: String,
    pub cofactor: String,
    pub candidates: Vec<CandidateRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub disconnected: bool,
    /// Surviving order classes, grouped by component.
    pub components: Vec<Vec<String>>,
}

impl CheckRecord {
    pub fn new(f: &FactoredInteger, check: &CutCheck) -> Self {
        CheckRecord {
            disconnected: check.disconnected,
            components: check
                .components
                .iter()
                .map(|c| {
                    let mut v: Vec<_> = c.iter().map(|d| d.value(f)).collect();
                    v.sort();
                    v.into_iter().map(|x| x.to_string()).collect()
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutsetRecord {
    pub n: String,
    pub factorization: String,
    pub descriptor: String,
    pub size: String,
    /// Orders `d` with `E_d` inside the set, ascending.
    pub classes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elements: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub check: Option<CheckRecord>,
}

impl CutsetRecord {
    pub fn new(f: &FactoredInteger, descriptor: String, set: &DivisorSet) -> Self {
        CutsetRecord {
            n: f.value().to_string(),
            factorization: f.to_string(),
            descriptor,
            size: set.cardinality().to_string(),
            classes: set.values().iter().map(|v| v.to_string()).collect(),
            elements: None,
            check: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub n: String,
    pub factorization: String,
    pub kappa: String,
    pub rule: String,
    pub passed: bool,
    pub descriptors_checked: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_kappa: Option<String>,
    pub failures: Vec<String>,
}

impl From<&InstanceReport> for VerifyRecord {
    fn from(rep: &InstanceReport) -> Self {
        VerifyRecord {
            n: rep.result.n.value().to_string(),
            factorization: rep.result.n.to_string(),
            kappa: rep.result.kappa.to_string(),
            rule: rep.result.rule.as_str().to_string(),
            passed: rep.passed(),
            descriptors_checked: rep.descriptors_checked.to_string(),
            oracle_kappa: rep.oracle.as_ref().map(|o| o.oracle_kappa.to_string()),
            failures: rep.failures.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub checked: String,
    pub failed: String,
    pub results: Vec<VerifyRecord>,
    pub timing: Timing,
}

/// One row of a sweep table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: String,
    pub factorization: String,
    pub kappa: String,
    pub rule: String,
    pub minimizers: Vec<String>,
    pub uniqueness: String,
}

impl From<&KappaResult> for SweepRow {
    fn from(res: &KappaResult) -> Self {
        SweepRow {
            n: res.n.value().to_string(),
            factorization: res.n.to_string(),
            kappa: res.kappa.to_string(),
            rule: res.rule.as_str().to_string(),
            minimizers: res.minimizers.iter().map(|d| d.to_string()).collect(),
            uniqueness: res.uniqueness.to_string(),
        }
    }
}
