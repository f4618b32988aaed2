use std::fmt::Write as _;
use std::io;

use super::sentence::{Sentence, Treebank};
use super::token::{SpecialLine, Token};

/// Renders a treebank in canonical extended CoNLL-U.
///
/// Canonical means: `sent_id` then `text` then the other comments, FEATS in
/// key order, `MSeg`/`MGloss` leading the MISC column, and every sentence
/// followed by one blank line.
pub fn serialize_treebank(tb: &Treebank) -> String {
    let mut out = String::new();
    for s in &tb.sentences {
        push_sentence(&mut out, s);
    }
    out
}

pub fn serialize_sentence(s: &Sentence) -> String {
    let mut out = String::new();
    push_sentence(&mut out, s);
    out
}

/// Streams one sentence to a writer.
pub fn write_sentence<W: io::Write>(w: &mut W, s: &Sentence) -> io::Result<()> {
    w.write_all(serialize_sentence(s).as_bytes())
}

fn push_sentence(out: &mut String, s: &Sentence) {
    if let Some(id) = &s.sent_id {
        let _ = writeln!(out, "# sent_id = {}", id);
    }
    if let Some(text) = &s.text {
        let _ = writeln!(out, "# text = {}", text);
    }
    for c in &s.comments {
        let _ = writeln!(out, "#{}", c);
    }
    let mut special = s.special.iter().peekable();
    for (i, token) in s.tokens.iter().enumerate() {
        while let Some(line) = special.next_if(|l| l.position <= i) {
            push_special(out, line);
        }
        push_token(out, token);
    }
    for line in special {
        push_special(out, line);
    }
    out.push('\n');
}

fn push_special(out: &mut String, line: &SpecialLine) {
    out.push_str(&line.columns.join("\t"));
    out.push('\n');
}

fn or_blank(v: Option<&str>) -> &str {
    v.unwrap_or("_")
}

fn push_token(out: &mut String, t: &Token) {
    let _ = writeln!(
        out,
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        t.id,
        t.form,
        t.lemma,
        t.pos,
        or_blank(t.pos_sub.as_deref()),
        t.feats,
        t.head,
        t.deprel,
        or_blank(t.deps.as_deref()),
        misc_column(t),
    );
}

fn misc_column(t: &Token) -> String {
    let mut parts = Vec::new();
    if let Some(m) = &t.mseg {
        parts.push(format!("MSeg={}", m));
        if let Some(g) = m.gloss_string() {
            parts.push(format!("MGloss={}", g));
        }
    }
    for (k, v) in &t.misc {
        match v {
            Some(v) => parts.push(format!("{}={}", k, v)),
            None => parts.push(k.clone()),
        }
    }
    if parts.is_empty() {
        "_".to_owned()
    } else {
        parts.join("|")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conllu::{parse_treebank_strict, Token};

    #[test]
    fn canonical_input_is_reproduced() {
        let input = "# sent_id = t1\n# text = U keldi.\n# note\n1\tU\tu\tPron\t_\t_\t2\tnsubj\t2:nsubj\t_\n2\tkeldi\tkel\tV\t_\tTense=Past\t0\troot\t_\tMSeg=kel-di|SpaceAfter=No\n3\t.\t.\t_\t_\t_\t2\tpunct\t_\t_\n\n";
        let tb = parse_treebank_strict(input).unwrap();
        assert_eq!(serialize_treebank(&tb), input);
    }

    #[test]
    fn empty_feats_render_as_underscore() {
        let s = Sentence::new(vec![Token::new(1, "keldi", "V", 0, "root")]);
        let out = serialize_sentence(&s);
        assert_eq!(out, "1\tkeldi\t_\tV\t_\t_\t0\troot\t_\t_\n\n");
    }

    #[test]
    fn feats_are_written_in_key_order() {
        let keys = ["Tense", "Person", "Case", "Number", "Aspect"];
        let mut t = Token::new(1, "x", "V", 0, "root");
        for k in keys {
            t.feats.insert(k, "1");
        }
        let mut sorted = keys.to_vec();
        sorted.sort();
        let expected: Vec<String> = sorted.iter().map(|k| format!("{k}=1")).collect();
        assert_eq!(t.feats.to_string(), expected.join("|"));
    }

    #[test]
    fn trailing_special_lines_are_written() {
        let input = "1\tkeldi\t_\tV\t_\t_\t0\troot\t_\t_\n1.1\tx\t_\t_\t_\t_\t_\t_\t_\t_\n\n";
        let tb = parse_treebank_strict(input).unwrap();
        assert_eq!(serialize_treebank(&tb), input);
    }
}
