//! Tagset, relation inventory, feature vocabulary and the lexicons used by
//! the converter.

mod assignment;
mod pos;
mod registry;
mod relation;

pub use assignment::{is_punctuation, parse_pos_sub, validate_assignment};
pub use pos::{is_converb, pos_of, PosTag};
pub use registry::{EvalSets, SchemaError, SchemaRegistry};
pub use relation::{main_category_of, RelationKind, RelationLabel};

/// Free-function form of [`SchemaRegistry::normalize_label`].
pub fn normalize_label<'r>(raw: &str, reg: &'r SchemaRegistry) -> Result<&'r RelationLabel, SchemaError> {
    reg.normalize_label(raw)
}
