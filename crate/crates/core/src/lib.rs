//! Toolkit for the Modern Uyghur Dependency Treebank annotation scheme.
//!
//! * [`conllu`]: extended CoNLL-U model, reader, canonical writer, trees
//! * [`schema`]: POS tagset, relation inventory, feature vocabulary, lexicons
//! * [`validator`]: annotation-principle and construction checks
//! * [`transform`]: rule-based UD-to-MUDT conversion with an audit trace
//! * [`metrics`]: UAS/LAS/MLAS/BLEX scoring and divergence reports
//! * [`stats`]: corpus statistics

pub mod conllu;
pub mod diagnostic;
pub mod metrics;
pub mod schema;
pub mod stats;
pub mod synth;
pub mod transform;
pub mod validator;

pub use conllu::{
    build_tree, parse_treebank, parse_treebank_strict, serialize_sentence, serialize_treebank,
    DependencyTree, Features, MorphSegmentation, ParseError, Sentence, Token, TreeError, Treebank,
};
pub use diagnostic::{CheckCode, Diagnostic, Severity};
pub use metrics::{align_tokens, divergence, score, Alignment, DivergenceReport, EvalScores};
pub use schema::{PosTag, RelationLabel, SchemaRegistry};
pub use transform::{apply_all, RuleId, RuleSet, TransformTrace};
pub use validator::{check_projectivity, validate_sentence, validate_treebank, ValidationReport};
