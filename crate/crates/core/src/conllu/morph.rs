use std::fmt;

use super::error::{ParseCode, ParseError};

/// The morpheme-segmentation layer: root first, then suffixes in order.
///
/// The concatenation of segments need not equal the surface form, since
/// suffixes undergo vowel harmony and other alternations on the surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphSegmentation {
    segments: Vec<String>,
    gloss: Option<Vec<String>>,
}

impl MorphSegmentation {
    pub fn new(segments: Vec<String>) -> Result<Self, ParseError> {
        if segments.is_empty() || segments.iter().any(|s| s.is_empty()) {
            return Err(ParseError::new(
                ParseCode::Mseg,
                "segmentation must have at least one non-empty segment",
            ));
        }
        Ok(MorphSegmentation {
            segments,
            gloss: None,
        })
    }

    /// Attaches a gloss; it must align one-to-one with the segments.
    pub fn with_gloss(mut self, gloss: Vec<String>) -> Result<Self, ParseError> {
        if gloss.len() != self.segments.len() {
            return Err(ParseError::new(
                ParseCode::Mseg,
                format!(
                    "gloss has {} items but segmentation has {}",
                    gloss.len(),
                    self.segments.len()
                ),
            ));
        }
        if gloss.iter().any(|g| g.is_empty()) {
            return Err(ParseError::new(ParseCode::Mseg, "empty gloss item"));
        }
        self.gloss = Some(gloss);
        Ok(self)
    }

    pub fn segments(&self) -> &[String] {
        &self.segments
    }

    pub fn root(&self) -> &str {
        &self.segments[0]
    }

    pub fn suffixes(&self) -> &[String] {
        &self.segments[1..]
    }

    pub fn gloss(&self) -> Option<&[String]> {
        self.gloss.as_deref()
    }

    pub fn gloss_string(&self) -> Option<String> {
        self.gloss.as_ref().map(|g| g.join("-"))
    }
}

impl fmt::Display for MorphSegmentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.segments.join("-"))
    }
}

fn split_hyphens(raw: &str) -> Result<Vec<String>, ParseError> {
    if raw.is_empty() {
        return Err(ParseError::new(ParseCode::Mseg, "empty segmentation"));
    }
    let parts: Vec<String> = raw.split('-').map(str::to_owned).collect();
    if parts.iter().any(String::is_empty) {
        return Err(ParseError::new(
            ParseCode::Mseg,
            format!("empty segment in `{}`", raw),
        ));
    }
    Ok(parts)
}

/// Splits a hyphen-joined segmentation such as `oqu-yan-lar-im-din`.
pub fn parse_mseg(raw: &str) -> Result<MorphSegmentation, ParseError> {
    MorphSegmentation::new(split_hyphens(raw)?)
}

/// Splits a hyphen-joined gloss such as `read-PST-PL-P1SG.POS-ABL`.
pub fn parse_gloss(raw: &str) -> Result<Vec<String>, ParseError> {
    split_hyphens(raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_one_segmentation() {
        let m = parse_mseg("oqu-yan-lar-im-din").unwrap();
        assert_eq!(m.segments(), ["oqu", "yan", "lar", "im", "din"]);
        assert_eq!(m.root(), "oqu");
        assert_eq!(m.suffixes().len(), 4);
        assert_eq!(m.to_string(), "oqu-yan-lar-im-din");
    }

    #[test]
    fn bare_root_and_locative() {
        assert_eq!(parse_mseg("oqu").unwrap().segments(), ["oqu"]);
        assert_eq!(parse_mseg("jurt-da").unwrap().segments(), ["jurt", "da"]);
    }

    #[test]
    fn empty_segments_are_errors() {
        for raw in ["", "-", "oqu-", "-yan", "oqu--yan"] {
            assert_eq!(parse_mseg(raw).unwrap_err().code, ParseCode::Mseg, "{raw}");
        }
    }

    #[test]
    fn gloss_must_align() {
        let m = parse_mseg("oqu-yan-lar-im-din").unwrap();
        let gloss = parse_gloss("read-PST-PL-P1SG.POS-ABL").unwrap();
        let m = m.with_gloss(gloss).unwrap();
        assert_eq!(m.gloss().unwrap()[3], "P1SG.POS");
        assert_eq!(m.gloss_string().unwrap(), "read-PST-PL-P1SG.POS-ABL");

        let short = parse_mseg("oqu-yan").unwrap();
        assert!(short.with_gloss(vec!["read".into()]).is_err());
    }
}
