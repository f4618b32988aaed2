use serde::Serialize;

use crate::diagnostic::{join_ids, Diagnostic, Severity};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub sent_id: String,
    pub diagnostics: Vec<Diagnostic>,
    pub passed: bool,
}

impl ValidationReport {
    pub fn new(sent_id: String, diagnostics: Vec<Diagnostic>) -> Self {
        let passed = !diagnostics.iter().any(Diagnostic::is_error);
        ValidationReport {
            sent_id,
            diagnostics,
            passed,
        }
    }

    pub fn count(&self, severity: Severity) -> usize {
        self.diagnostics
            .iter()
            .filter(|d| d.severity == severity)
            .count()
    }

    /// `sent_id<TAB>code<TAB>severity<TAB>token_ids<TAB>message`, one line
    /// per diagnostic.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for d in &self.diagnostics {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                self.sent_id,
                d.code,
                d.severity,
                if d.token_ids.is_empty() {
                    "_".to_owned()
                } else {
                    join_ids(&d.token_ids)
                },
                d.message.replace(['\t', '\n'], " ")
            ));
        }
        out
    }
}

pub fn reports_to_tsv(reports: &[ValidationReport]) -> String {
    reports.iter().map(ValidationReport::to_tsv).collect()
}

pub fn reports_to_json(reports: &[ValidationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialise")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostic::CheckCode;

    #[test]
    fn passed_tracks_error_severity() {
        let warn = Diagnostic::warning(CheckCode::C4, vec![2], "no Case");
        let r = ValidationReport::new("s1".into(), vec![warn.clone()]);
        assert!(r.passed);
        let err = Diagnostic::error(CheckCode::P2, vec![1, 2], "two roots");
        let r = ValidationReport::new("s1".into(), vec![warn, err]);
        assert!(!r.passed);
        assert_eq!(
            r.to_tsv(),
            "s1\tC4\twarning\t2\tno Case\ns1\tP2\terror\t1,2\ttwo roots\n"
        );
    }

    #[test]
    fn json_uses_stable_codes() {
        let r = ValidationReport::new(
            "s1".into(),
            vec![Diagnostic::error(CheckCode::PosUnknown, vec![1], "bad")],
        );
        let json = reports_to_json(&[r]);
        assert!(json.contains("\"code\": \"E_POS_UNKNOWN\""));
        assert!(json.contains("\"severity\": \"error\""));
        assert!(json.contains("\"passed\": false"));
    }
}
