use super::pos::PosTag;
use super::registry::SchemaRegistry;
use crate::conllu::Token;
use crate::diagnostic::{CheckCode, Diagnostic};

/// Subcategory markers that only make sense on nouns.
const NOUN_MARKERS: [&str; 4] = ["pern", "job", "date", "state"];

/// Punctuation has no main tag; it may leave UPOS empty.
pub fn is_punctuation(tok: &Token) -> bool {
    tok.deprel == "punct"
}

/// Checks one token's tag, label and feature assignments against the
/// registry.
pub fn validate_assignment(tok: &Token, reg: &SchemaRegistry) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let id = vec![tok.id];

    let pos = PosTag::from_code(&tok.pos);
    if pos.is_none() && !(is_punctuation(tok) && tok.pos == "_") {
        out.push(Diagnostic::error(
            CheckCode::PosUnknown,
            id.clone(),
            format!("POS `{}` is not one of the 13 main tags", tok.pos),
        ));
    }

    if reg.normalize_label(&tok.deprel).is_err() {
        out.push(Diagnostic::error(
            CheckCode::LabelUnknown,
            id.clone(),
            format!("relation `{}` is not in the inventory", tok.deprel),
        ));
    }

    for (key, value) in &tok.feats {
        match reg.feat_vocab().get(key) {
            None => out.push(Diagnostic::warning(
                CheckCode::FeatKey,
                id.clone(),
                format!("feature key `{}` is not in the vocabulary", key),
            )),
            Some(allowed) => {
                for v in value.split(',') {
                    if !allowed.contains(v) {
                        out.push(Diagnostic::error(
                            CheckCode::FeatValue,
                            id.clone(),
                            format!("`{}={}` is outside the vocabulary", key, v),
                        ));
                    }
                }
            }
        }
    }

    if let Some(sub) = &tok.pos_sub {
        match parse_pos_sub(sub) {
            None => out.push(Diagnostic::error(
                CheckCode::PosSub,
                id.clone(),
                format!("malformed subcategory `{}`", sub),
            )),
            Some((tag, markers)) => {
                if tag != tok.pos {
                    out.push(Diagnostic::error(
                        CheckCode::PosSub,
                        id.clone(),
                        format!("subcategory `{}` does not extend POS `{}`", sub, tok.pos),
                    ));
                } else if pos != Some(PosTag::N)
                    && markers.iter().any(|m| NOUN_MARKERS.contains(m))
                {
                    out.push(Diagnostic::error(
                        CheckCode::PosSub,
                        id.clone(),
                        format!("noun subcategory `{}` on a non-noun", sub),
                    ));
                }
            }
        }
    }
    out
}

/// Splits `N[+pern]` (or `N[+a][+b]`, `N[+a,+b]`) into tag and markers.
/// A bare tag without brackets is accepted with no markers.
pub fn parse_pos_sub(sub: &str) -> Option<(&str, Vec<&str>)> {
    let Some(open) = sub.find('[') else {
        return (!sub.is_empty()).then_some((sub, Vec::new()));
    };
    let (tag, mut rest) = sub.split_at(open);
    if tag.is_empty() {
        return None;
    }
    let mut markers = Vec::new();
    while !rest.is_empty() {
        let inner = rest.strip_prefix('[')?;
        let close = inner.find(']')?;
        for m in inner[..close].split(',') {
            markers.push(m.trim().strip_prefix('+')?);
        }
        rest = &inner[close + 1..];
    }
    Some((tag, markers))
}
