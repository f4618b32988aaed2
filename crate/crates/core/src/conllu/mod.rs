//! Data model and canonical I/O for extended CoNLL-U.

mod error;
mod features;
mod morph;
mod reader;
mod sentence;
mod token;
mod tree;
mod writer;

pub use error::{ParseCode, ParseError, TreeError};
pub use features::{canonical_value, parse_feats, Features};
pub use morph::{parse_gloss, parse_mseg, MorphSegmentation};
pub use reader::{parse_treebank, parse_treebank_strict, ParseOutcome, Reader};
pub use sentence::{Sentence, Treebank};
pub use token::{SpecialKind, SpecialLine, Token};
pub use tree::{build_tree, build_tree_from_heads, DependencyTree};
pub use writer::{serialize_sentence, serialize_treebank, write_sentence};
