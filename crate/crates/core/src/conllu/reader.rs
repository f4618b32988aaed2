use std::io::{BufRead, Lines};

use super::error::{ParseCode, ParseError};
use super::features::parse_feats;
use super::morph::{parse_gloss, parse_mseg};
use super::sentence::{Sentence, Treebank};
use super::token::{SpecialKind, SpecialLine, Token};

const MSEG_KEY: &str = "MSeg";
const MGLOSS_KEY: &str = "MGloss";

/// Streaming sentence reader.
///
/// Each item is one blank-line-delimited block. A malformed block yields an
/// `Err` and the reader resumes at the next block, so callers choose between
/// lenient (skip and report) and strict (stop at the first error) handling.
pub struct Reader<R> {
    lines: Lines<R>,
    line_no: usize,
    done: bool,
}

impl<R: BufRead> Reader<R> {
    pub fn new(read: R) -> Self {
        Reader {
            lines: read.lines(),
            line_no: 0,
            done: false,
        }
    }
}

impl<R: BufRead> Iterator for Reader<R> {
    type Item = Result<Sentence, ParseError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let mut block: Vec<(usize, String)> = Vec::new();
        loop {
            match self.lines.next() {
                None => {
                    self.done = true;
                    break;
                }
                Some(Err(e)) => {
                    self.done = true;
                    return Some(Err(
                        ParseError::new(ParseCode::Io, e.to_string()).at(self.line_no + 1)
                    ));
                }
                Some(Ok(mut line)) => {
                    self.line_no += 1;
                    if line.ends_with('\r') {
                        line.pop();
                    }
                    if line.trim().is_empty() {
                        if block.is_empty() {
                            continue;
                        }
                        break;
                    }
                    block.push((self.line_no, line));
                }
            }
        }
        if block.is_empty() {
            None
        } else {
            Some(parse_block(&block))
        }
    }
}

/// Result of a lenient whole-input parse.
#[derive(Debug, Default)]
pub struct ParseOutcome {
    pub treebank: Treebank,
    pub errors: Vec<ParseError>,
}

/// Parses a whole treebank, dropping malformed sentences and collecting
/// their errors.
pub fn parse_treebank(input: &str) -> ParseOutcome {
    let mut outcome = ParseOutcome::default();
    for item in Reader::new(input.as_bytes()) {
        match item {
            Ok(s) => outcome.treebank.sentences.push(s),
            Err(e) => outcome.errors.push(e),
        }
    }
    outcome
}

/// Parses a whole treebank, failing on the first malformed sentence.
pub fn parse_treebank_strict(input: &str) -> Result<Treebank, ParseError> {
    Reader::new(input.as_bytes()).collect()
}

fn parse_block(block: &[(usize, String)]) -> Result<Sentence, ParseError> {
    let mut sentence = Sentence::default();
    let mut token_lines = Vec::new();

    for (line_no, line) in block {
        if let Some(comment) = line.strip_prefix('#') {
            if sentence.sent_id.is_none() {
                if let Some(v) = metadata_value(comment, "sent_id") {
                    sentence.sent_id = Some(v.to_owned());
                    continue;
                }
            }
            if sentence.text.is_none() {
                if let Some(v) = metadata_value(comment, "text") {
                    sentence.text = Some(v.to_owned());
                    continue;
                }
            }
            sentence.comments.push(comment.to_owned());
            continue;
        }

        let columns: Vec<&str> = line.split('\t').collect();
        if columns.len() != 10 {
            return Err(ParseError::new(
                ParseCode::Columns,
                format!("expected 10 tab-separated columns, found {}", columns.len()),
            )
            .at(*line_no));
        }

        if let Some(kind) = special_kind(columns[0]).map_err(|e| e.at(*line_no))? {
            sentence.special.push(SpecialLine {
                kind,
                position: sentence.tokens.len(),
                columns: columns.iter().map(|c| (*c).to_owned()).collect(),
            });
            continue;
        }

        let token = parse_token(&columns).map_err(|e| e.at(*line_no))?;
        let expected = sentence.tokens.len() + 1;
        if token.id != expected {
            let code = if token.id < expected {
                ParseCode::DuplicateId
            } else {
                ParseCode::Id
            };
            return Err(ParseError::new(
                code,
                format!("token id {} where {} was expected", token.id, expected),
            )
            .at(*line_no));
        }
        token_lines.push(*line_no);
        sentence.tokens.push(token);
    }

    let n = sentence.tokens.len();
    for (token, line_no) in sentence.tokens.iter().zip(&token_lines) {
        if token.head > n {
            return Err(ParseError::new(
                ParseCode::HeadRange,
                format!("head {} outside 0..={}", token.head, n),
            )
            .at(*line_no));
        }
    }
    Ok(sentence)
}

/// Matches `# key = value` (whitespace around `=` optional).
fn metadata_value<'a>(comment: &'a str, key: &str) -> Option<&'a str> {
    let rest = comment.trim_start().strip_prefix(key)?;
    let rest = rest.trim_start().strip_prefix('=')?;
    Some(rest.strip_prefix(' ').unwrap_or(rest))
}

fn special_kind(id: &str) -> Result<Option<SpecialKind>, ParseError> {
    let bad = || ParseError::new(ParseCode::Id, format!("malformed token id `{}`", id));
    if let Some((a, b)) = id.split_once('-') {
        let start = a.parse().map_err(|_| bad())?;
        let end = b.parse().map_err(|_| bad())?;
        if start == 0 || end < start {
            return Err(bad());
        }
        return Ok(Some(SpecialKind::Range { start, end }));
    }
    if let Some((a, b)) = id.split_once('.') {
        let major = a.parse().map_err(|_| bad())?;
        let minor = b.parse().map_err(|_| bad())?;
        if minor == 0 {
            return Err(bad());
        }
        return Ok(Some(SpecialKind::Empty { major, minor }));
    }
    Ok(None)
}

fn opt(col: &str) -> Option<String> {
    (col != "_").then(|| col.to_owned())
}

fn parse_token(columns: &[&str]) -> Result<Token, ParseError> {
    let id: usize = columns[0]
        .parse()
        .ok()
        .filter(|&id| id > 0)
        .ok_or_else(|| {
            ParseError::new(ParseCode::Id, format!("malformed token id `{}`", columns[0]))
        })?;
    let head: usize = columns[6].parse().map_err(|_| {
        ParseError::new(ParseCode::Head, format!("malformed head `{}`", columns[6]))
    })?;
    let feats = parse_feats(columns[5])?;
    let lemma = columns[2].to_owned();

    let mut mseg_raw = None;
    let mut gloss_raw = None;
    let mut misc = Vec::new();
    if columns[9] != "_" {
        for entry in columns[9].split('|') {
            match entry.split_once('=') {
                Some((MSEG_KEY, v)) if mseg_raw.is_none() => mseg_raw = Some(v),
                Some((MGLOSS_KEY, v)) if gloss_raw.is_none() => gloss_raw = Some(v),
                Some((k, v)) => misc.push((k.to_owned(), Some(v.to_owned()))),
                None => misc.push((entry.to_owned(), None)),
            }
        }
    }

    let mseg = match (mseg_raw, gloss_raw) {
        (None, None) => None,
        (None, Some(_)) => {
            return Err(ParseError::new(
                ParseCode::Mseg,
                "MGloss given without MSeg",
            ))
        }
        (Some(seg), gloss) => {
            let mut m = parse_mseg(seg)?;
            if let Some(g) = gloss {
                m = m.with_gloss(parse_gloss(g)?)?;
            }
            if m.root() != lemma {
                return Err(ParseError::new(
                    ParseCode::Mseg,
                    format!("segmentation root `{}` differs from lemma `{}`", m.root(), lemma),
                ));
            }
            Some(m)
        }
    };

    Ok(Token {
        id,
        form: columns[1].to_owned(),
        lemma,
        pos: columns[3].to_owned(),
        pos_sub: opt(columns[4]),
        feats,
        head,
        deprel: columns[7].to_owned(),
        deps: opt(columns[8]),
        mseg,
        misc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const OQYANLARIMDIN: &str = "# sent_id = morph-1\n\
# text = oqyanlarimdin\n\
1\toqyanlarimdin\toqu\tN\t_\tCase=ABL|Number=Plur|Person=1|Tense=Past\t0\troot\t_\tMSeg=oqu-yan-lar-im-din|MGloss=read-PST-PL-P1SG.POS-ABL\n\n";

    #[test]
    fn four_layers_are_populated() {
        let tb = parse_treebank_strict(OQYANLARIMDIN).unwrap();
        assert_eq!(tb.len(), 1);
        let s = &tb.sentences[0];
        assert_eq!(s.sent_id.as_deref(), Some("morph-1"));
        assert_eq!(s.text.as_deref(), Some("oqyanlarimdin"));
        let t = &s.tokens[0];
        assert_eq!(t.form, "oqyanlarimdin");
        assert_eq!(t.lemma, "oqu");
        assert_eq!(t.feats.get("Case"), Some("ABL"));
        assert_eq!(t.feats.get("Tense"), Some("Past"));
        let m = t.mseg.as_ref().unwrap();
        assert_eq!(m.segments(), ["oqu", "yan", "lar", "im", "din"]);
        assert_eq!(m.gloss().unwrap().len(), 5);
        assert!(t.misc.is_empty());
    }

    #[test]
    fn empty_input_has_no_sentences() {
        let out = parse_treebank("");
        assert!(out.treebank.is_empty());
        assert!(out.errors.is_empty());
        assert!(parse_treebank("\n\n\n").treebank.is_empty());
    }

    #[test]
    fn nine_columns_is_reported_with_line() {
        let input = "# c\n1\tU\tu\tPron\t_\t_\t0\troot\t_\n";
        let err = parse_treebank_strict(input).unwrap_err();
        assert_eq!(err.code, ParseCode::Columns);
        assert_eq!(err.line, 2);
    }

    #[test]
    fn lenient_mode_skips_bad_sentence_and_continues() {
        let input = "1\tU\tu\tPron\t_\t_\tx\troot\t_\t_\n\n1\tkeldi\tkel\tV\t_\t_\t0\troot\t_\t_\n";
        let out = parse_treebank(input);
        assert_eq!(out.treebank.len(), 1);
        assert_eq!(out.errors.len(), 1);
        assert_eq!(out.errors[0].code, ParseCode::Head);
        assert_eq!(out.errors[0].line, 1);
        assert_eq!(out.treebank.sentences[0].tokens[0].form, "keldi");
    }

    #[test]
    fn id_errors() {
        let dup = "1\tU\t_\tPron\t_\t_\t2\tnsubj\t_\t_\n1\tkeldi\t_\tV\t_\t_\t0\troot\t_\t_\n";
        assert_eq!(parse_treebank_strict(dup).unwrap_err().code, ParseCode::DuplicateId);
        let gap = "1\tU\t_\tPron\t_\t_\t3\tnsubj\t_\t_\n3\tkeldi\t_\tV\t_\t_\t0\troot\t_\t_\n";
        assert_eq!(parse_treebank_strict(gap).unwrap_err().code, ParseCode::Id);
        let word = "a\tU\t_\tPron\t_\t_\t0\troot\t_\t_\n";
        assert_eq!(parse_treebank_strict(word).unwrap_err().code, ParseCode::Id);
    }

    #[test]
    fn head_out_of_range() {
        let input = "1\tU\t_\tPron\t_\t_\t2\tnsubj\t_\t_\n2\tkeldi\t_\tV\t_\t_\t5\troot\t_\t_\n";
        let err = parse_treebank_strict(input).unwrap_err();
        assert_eq!(err.code, ParseCode::HeadRange);
        assert_eq!(err.line, 2);
    }

    #[test]
    fn malformed_feats_and_mseg() {
        let feats = "1\tU\t_\tPron\t_\tCase=LOC|Case=DAT\t0\troot\t_\t_\n";
        assert_eq!(parse_treebank_strict(feats).unwrap_err().code, ParseCode::Feats);
        let mseg = "1\tjurtda\tjurt\tN\t_\t_\t0\troot\t_\tMSeg=jurt--da\n";
        assert_eq!(parse_treebank_strict(mseg).unwrap_err().code, ParseCode::Mseg);
        let lemma = "1\tjurtda\tjer\tN\t_\t_\t0\troot\t_\tMSeg=jurt-da\n";
        assert_eq!(parse_treebank_strict(lemma).unwrap_err().code, ParseCode::Mseg);
        let gloss = "1\tjurtda\tjurt\tN\t_\t_\t0\troot\t_\tMSeg=jurt-da|MGloss=hometown\n";
        assert_eq!(parse_treebank_strict(gloss).unwrap_err().code, ParseCode::Mseg);
    }

    #[test]
    fn head_equal_to_id_is_left_to_the_validator() {
        let input = "1\tU\t_\tPron\t_\t_\t1\tnsubj\t_\t_\n2\tkeldi\t_\tV\t_\t_\t0\troot\t_\t_\n";
        let tb = parse_treebank_strict(input).unwrap();
        assert_eq!(tb.sentences[0].tokens[0].head, 1);
    }

    #[test]
    fn special_lines_are_kept_in_place() {
        let input = "1-2\tkeldi.\t_\t_\t_\t_\t_\t_\t_\t_\n1\tkeldi\t_\tV\t_\t_\t0\troot\t_\t_\n2\t.\t_\t_\t_\t_\t1\tpunct\t_\t_\n2.1\tx\t_\t_\t_\t_\t_\t_\t_\t_\n";
        let s = &parse_treebank_strict(input).unwrap().sentences[0];
        assert_eq!(s.tokens.len(), 2);
        assert_eq!(s.special.len(), 2);
        assert_eq!(s.special[0].kind, SpecialKind::Range { start: 1, end: 2 });
        assert_eq!(s.special[0].position, 0);
        assert_eq!(s.special[1].kind, SpecialKind::Empty { major: 2, minor: 1 });
        assert_eq!(s.special[1].position, 2);
    }

    #[test]
    fn crlf_and_multiple_blank_lines() {
        let input = "1\tU\t_\tPron\t_\t_\t0\troot\t_\t_\r\n\r\n\r\n1\tkeldi\t_\tV\t_\t_\t0\troot\t_\t_\r\n";
        assert_eq!(parse_treebank_strict(input).unwrap().len(), 2);
    }
}
