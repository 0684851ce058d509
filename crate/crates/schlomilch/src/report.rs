//! Shared verification-report type: one record per checked identity,
//! serializable with exactly the field names the JSON interface promises.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Outcome of checking one identity: a left-hand side obtained by
/// quadrature against a right-hand side closed form.
///
/// `pass` holds iff |lhs − rhs| ≤ tol·max(1, |rhs|) and every quadrature
/// involved converged.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub flags: Vec<String>,
    pub evaluations: usize,
}

impl VerificationReport {
    pub fn compare(
        id: impl Into<String>,
        params: BTreeMap<String, f64>,
        lhs: f64,
        rhs: f64,
        tol: f64,
        evaluations: usize,
        quadrature_converged: bool,
    ) -> VerificationReport {
        let abs_err = (lhs - rhs).abs();
        let rel_err = abs_err / rhs.abs().max(1.0);
        let mut flags = Vec::new();
        if !quadrature_converged {
            flags.push("quadrature-non-converged".to_string());
        }
        VerificationReport {
            id: id.into(),
            params,
            lhs,
            rhs,
            abs_err,
            rel_err,
            tol,
            pass: quadrature_converged && abs_err <= tol * rhs.abs().max(1.0),
            flags,
            evaluations,
        }
    }

    pub fn with_flag(mut self, flag: impl Into<String>) -> VerificationReport {
        self.flags.push(flag.into());
        self
    }
}

/// Convenience for building the `params` map.
pub fn param_map(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}
