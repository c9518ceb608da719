use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exact::QRationalFunction;

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// Structured result of an exact or numeric check.
///
/// For exact checks `witness` is the canonical difference of the two sides
/// (`"0"` on a pass). For numeric checks it is the residual in scientific
/// notation and `tolerance` holds the declared bound. `millis` is wall time
/// and is the only field that varies between identical runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub witness: String,
    pub residual_digits: Option<f64>,
    pub terms: Option<u64>,
    pub max_degree: Option<usize>,
    pub tolerance: Option<String>,
    pub millis: u64,
}

const WITNESS_CHARS: usize = 400;

impl VerificationReport {
    /// Exact check: passes iff `difference` is the zero rational function.
    pub fn exact(
        check: &str,
        params: BTreeMap<String, Value>,
        difference: &QRationalFunction,
        max_degree: usize,
        started: Instant,
    ) -> Self {
        Self {
            check: check.to_string(),
            params,
            status: Status::from_bool(difference.is_zero()),
            witness: difference.summary(WITNESS_CHARS),
            residual_digits: None,
            terms: None,
            max_degree: Some(max_degree),
            tolerance: None,
            millis: started.elapsed().as_millis() as u64,
        }
    }

    /// Numeric check: passes iff `log10 |residual| <= log10 tol`.
    ///
    /// `residual_log10` is `-inf` for an exactly zero residual.
    pub fn numeric(
        check: &str,
        params: BTreeMap<String, Value>,
        residual: String,
        residual_log10: f64,
        tol_digits: u32,
        terms: Option<u64>,
        started: Instant,
    ) -> Self {
        let ok = residual_log10 <= -(tol_digits as f64);
        Self {
            check: check.to_string(),
            params,
            status: Status::from_bool(ok),
            witness: residual,
            residual_digits: Some(if residual_log10.is_finite() {
                -residual_log10
            } else {
                f64::MAX
            }),
            terms,
            max_degree: None,
            tolerance: Some(format!("1e-{tol_digits}")),
            millis: started.elapsed().as_millis() as u64,
        }
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    /// `name=value` pairs in key order, for log lines and file names.
    pub fn param_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Builds a parameter map from `(name, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, Value); N]) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
