use std::collections::btree_map;
use std::collections::BTreeMap;
use std::fmt;

use super::error::{ParseCode, ParseError};

/// The FEATS column: a key-unique feature bundle kept in canonical key order.
///
/// Values are normalised on insertion: `Case` values are upper-cased (`ABL`,
/// `LOC`, `DAT`), everything else is title-cased (`Plur`, `Past`). Keys are
/// kept verbatim.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Features {
    inner: BTreeMap<String, String>,
}

impl Features {
    pub fn new() -> Self {
        Features::default()
    }

    /// Inserts a feature, returning the previous value for the key.
    pub fn insert(&mut self, key: impl Into<String>, value: &str) -> Option<String> {
        let key = key.into();
        let value = canonical_value(&key, value);
        self.inner.insert(key, value)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.inner.get(key).map(String::as_str)
    }

    pub fn remove(&mut self, key: &str) -> Option<String> {
        self.inner.remove(key)
    }

    pub fn contains_key(&self, key: &str) -> bool {
        self.inner.contains_key(key)
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, String, String> {
        self.inner.iter()
    }

    /// The Case feature, if any, in canonical upper case.
    pub fn case(&self) -> Option<&str> {
        self.get("Case")
    }
}

impl<'a> IntoIterator for &'a Features {
    type Item = (&'a String, &'a String);
    type IntoIter = btree_map::Iter<'a, String, String>;

    fn into_iter(self) -> Self::IntoIter {
        self.inner.iter()
    }
}

impl<K: Into<String>, V: AsRef<str>> FromIterator<(K, V)> for Features {
    fn from_iter<T: IntoIterator<Item = (K, V)>>(iter: T) -> Self {
        let mut feats = Features::new();
        for (k, v) in iter {
            feats.insert(k, v.as_ref());
        }
        feats
    }
}

impl fmt::Display for Features {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            return f.write_str("_");
        }
        for (i, (k, v)) in self.inner.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{}={}", k, v)?;
        }
        Ok(())
    }
}

pub fn canonical_value(key: &str, value: &str) -> String {
    if key.eq_ignore_ascii_case("case") {
        value.to_uppercase()
    } else {
        value
            .split(',')
            .map(title_case)
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn title_case(part: &str) -> String {
    let mut chars = part.chars();
    match chars.next() {
        Some(first) => first
            .to_uppercase()
            .chain(chars.flat_map(char::to_lowercase))
            .collect(),
        None => String::new(),
    }
}

/// Parses a FEATS column value. `_` is the empty bundle.
pub fn parse_feats(raw: &str) -> Result<Features, ParseError> {
    let mut feats = Features::new();
    if raw == "_" {
        return Ok(feats);
    }
    for pair in raw.split('|') {
        let (key, value) = pair.split_once('=').ok_or_else(|| {
            ParseError::new(ParseCode::Feats, format!("feature `{}` has no `=`", pair))
        })?;
        if key.is_empty() || value.is_empty() {
            return Err(ParseError::new(
                ParseCode::Feats,
                format!("empty key or value in feature `{}`", pair),
            ));
        }
        if feats.insert(key, value).is_some() {
            return Err(ParseError::new(
                ParseCode::Feats,
                format!("duplicate feature key `{}`", key),
            ));
        }
    }
    Ok(feats)
}
