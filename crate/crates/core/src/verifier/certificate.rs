//! Self-contained certificates: one instance, one check, the recorded
//! verdict. Replaying recomputes the verdict from the embedded data alone.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{check_instance, criticality, Outcome, TheoremId};
use crate::colorer::ExtensionOracle;
use crate::critical::CriticalityCertificate;
use crate::deficiency::Params;
use crate::format::CanvasFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "theorem", rename_all = "lowercase")]
pub enum CheckKind {
    Theorem(TheoremId),
    Criticality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub check: CheckKind,
    /// Position in the scan stream, when the certificate came from a scan.
    pub instance: Option<u64>,
    pub canvas: CanvasFile,
    pub params: Params,
    /// Recorded outcome of a theorem check.
    pub outcome: Option<Outcome>,
    /// Recorded criticality certificate; always present for criticality
    /// checks, and for theorem checks it is the gate that was used.
    pub criticality: Option<CriticalityCertificate>,
}

impl Certificate {
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string(self).expect("certificates always serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("malformed certificate at line {line}, column {column}: {message}")]
    Malformed { line: usize, column: usize, message: String },
    #[error("malformed certificate: {0}")]
    Incomplete(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayVerdict {
    pub check: CheckKind,
    pub matches: bool,
    pub recorded_outcome: Option<Outcome>,
    pub recomputed_outcome: Option<Outcome>,
    pub recorded_critical: Option<bool>,
    pub recomputed_critical: bool,
}

/// Re-run the certified check and compare with what was recorded.
pub fn replay_certificate(bytes: &[u8]) -> Result<ReplayVerdict, ReplayError> {
    let cert: Certificate = serde_json::from_slice(bytes).map_err(|e| ReplayError::Malformed {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let text = cert.canvas.to_text();
    let file = CanvasFile::parse(&text).map_err(|e| ReplayError::Incomplete(e.to_string()))?;
    let t = file.canvas_unchecked();
    if !t.validate().ok {
        return Err(ReplayError::Incomplete("embedded canvas is not a valid canvas".into()));
    }
    match cert.check {
        CheckKind::Criticality => {
            let recorded = cert
                .criticality
                .clone()
                .ok_or_else(|| ReplayError::Incomplete("criticality certificate missing".into()))?;
            let mut oracle = ExtensionOracle::from_env();
            let fresh = criticality(&t, &mut oracle).map_err(|e| ReplayError::Incomplete(e.to_string()))?;
            Ok(ReplayVerdict {
                check: cert.check,
                matches: fresh == recorded,
                recorded_outcome: None,
                recomputed_outcome: None,
                recorded_critical: Some(recorded.verdict),
                recomputed_critical: fresh.verdict,
            })
        }
        CheckKind::Theorem(id) => {
            let recorded =
                cert.outcome.clone().ok_or_else(|| ReplayError::Incomplete("recorded outcome missing".into()))?;
            let r = check_instance(&t, &cert.params, &BTreeSet::from([id]));
            let fresh = r.outcome(id).cloned();
            let gate_ok = cert.criticality.as_ref().is_none_or(|c| *c == r.certificate);
            Ok(ReplayVerdict {
                check: cert.check,
                matches: fresh.as_ref() == Some(&recorded) && gate_ok,
                recorded_outcome: Some(recorded),
                recomputed_outcome: fresh,
                recorded_critical: cert.criticality.as_ref().map(|c| c.verdict),
                recomputed_critical: r.certificate.verdict,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn wheel_certificate() -> Certificate {
        let t = fixtures::w5();
        let mut oracle = ExtensionOracle::with_memo();
        let c = criticality(&t, &mut oracle).unwrap();
        Certificate {
            check: CheckKind::Criticality,
            instance: None,
            canvas: CanvasFile::from_canvas(&t, Some("w5".into())),
            params: Params::standard(),
            outcome: None,
            criticality: Some(c),
        }
    }

    #[test]
    fn replays() {
        let cert = wheel_certificate();
        let v = replay_certificate(cert.to_text().as_bytes()).unwrap();
        assert!(v.matches && v.recomputed_critical);

        let mut tampered = cert.clone();
        tampered.canvas.lists[5] = vec![0, 1, 2, 3, 5];
        let v = replay_certificate(tampered.to_text().as_bytes()).unwrap();
        assert!(!v.matches);

        let text = cert.to_text();
        assert!(matches!(
            replay_certificate(&text.as_bytes()[..text.len() / 2]),
            Err(ReplayError::Malformed { .. })
        ));
    }

    #[test]
    fn theorem_replay() {
        let t = fixtures::c4e();
        let p = Params::standard();
        let r = check_instance(&t, &p, &BTreeSet::from([TheoremId::ChordOrTripod]));
        let cert = Certificate {
            check: CheckKind::Theorem(TheoremId::ChordOrTripod),
            instance: Some(0),
            canvas: CanvasFile::from_canvas(&t, None),
            params: p,
            outcome: r.outcome(TheoremId::ChordOrTripod).cloned(),
            criticality: Some(r.certificate.clone()),
        };
        assert!(replay_certificate(cert.to_text().as_bytes()).unwrap().matches);
    }
}
