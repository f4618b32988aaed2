use std::fmt;

use serde::Serialize;

use super::RuleId;
use crate::conllu::Sentence;
use crate::diagnostic::Diagnostic;

/// One arc edit: token `token` moved from `before` to `after`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Application {
    pub rule: RuleId,
    pub token: usize,
    pub before: (usize, String),
    pub after: (usize, String),
}

/// A rule that matched partially, was skipped, or was rolled back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceNote {
    pub rule: RuleId,
    pub token_ids: Vec<usize>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TransformTrace {
    pub sent_id: String,
    pub applications: Vec<Application>,
    pub notes: Vec<TraceNote>,
    /// Error diagnostics the validator still reports on the output.
    pub residual: Vec<Diagnostic>,
}

impl TransformTrace {
    pub fn new(sent_id: impl Into<String>) -> Self {
        TransformTrace {
            sent_id: sent_id.into(),
            ..TransformTrace::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.applications.is_empty()
    }

    pub fn rules_fired(&self) -> Vec<RuleId> {
        let mut out: Vec<RuleId> = self.applications.iter().map(|a| a.rule).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Re-applies the recorded edits to `input`.
    pub fn replay(&self, input: &Sentence) -> Sentence {
        let mut s = input.clone();
        for a in &self.applications {
            if let Some(t) = s.token_mut(a.token) {
                t.head = a.after.0;
                t.deprel = a.after.1.clone();
            }
        }
        s
    }

    /// `sent_id<TAB>rule<TAB>token<TAB>old_head:old_rel<TAB>new_head:new_rel`
    /// per edit, then notes and residual findings as `#` lines.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for a in &self.applications {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}:{}\t{}:{}\n",
                self.sent_id, a.rule, a.token, a.before.0, a.before.1, a.after.0, a.after.1
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("# {}\t{}\tnote\t{}\n", self.sent_id, n.rule, n.message));
        }
        for d in &self.residual {
            out.push_str(&format!("# {}\tresidual\t{}\n", self.sent_id, d));
        }
        out
    }
}

impl fmt::Display for Application {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} token {}: {}:{} -> {}:{}",
            self.rule, self.token, self.before.0, self.before.1, self.after.0, self.after.1
        )
    }
}
