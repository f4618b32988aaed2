//! Seeded random trees and treebanks for property tests, fuzzing and
//! benchmarks.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::conllu::{MorphSegmentation, Sentence, SpecialKind, SpecialLine, Token, Treebank};
use crate::schema::PosTag;

const ALPHABET: &[char] = &[
    'a', 'b', 'd', 'e', 'g', 'i', 'j', 'k', 'l', 'm', 'n', 'o', 'q', 'r', 's', 't', 'u', 'x',
    'y', 'z', 'ə', 'ö', 'ü', 'č',
];

const LABELS: &[&str] = &[
    "nsubj", "obj", "advcl", "amod", "advmod", "nmod", "nummod", "appos", "det", "aux",
    "cop", "cc", "case:abl", "case:loc", "case:dat", "case:poss", "instr:case=post",
    "instr:case=loc", "instr:case=dat", "post", "discourse", "fixed", "conj", "punct",
];

const UD_LABELS: &[&str] = &[
    "nsubj", "obj", "obl", "obl", "advcl", "amod", "advmod", "nmod", "det", "aux", "cc",
    "compound", "conj", "conj", "mark", "punct",
];

const FEATS: &[(&str, &[&str])] = &[
    ("Case", &["ABL", "LOC", "DAT", "GEN", "POSS"]),
    ("Number", &["Sing", "Plur"]),
    ("Person", &["1", "2", "3"]),
    ("Tense", &["Past", "Pres", "Fut"]),
];

/// A uniformly shaped random tree over `n` tokens: exactly one root, no
/// cycles, not necessarily projective.
pub fn random_heads<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut heads = vec![0; n];
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        heads[order[i] - 1] = parent;
    }
    heads
}

/// A random projective tree over `n` tokens.
pub fn random_projective_heads<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    fn fill<R: Rng + ?Sized>(rng: &mut R, heads: &mut [usize], lo: usize, hi: usize, head: usize) {
        if lo > hi {
            return;
        }
        let k = rng.random_range(lo..=hi);
        heads[k - 1] = head;
        fill(rng, heads, lo, k - 1, k);
        fill(rng, heads, k + 1, hi, k);
    }
    let mut heads = vec![0; n];
    if n > 0 {
        fill(rng, &mut heads, 1, n, 0);
    }
    heads
}

fn random_word<R: Rng + ?Sized>(rng: &mut R) -> String {
    let len = rng.random_range(1..=6);
    (0..len).map(|_| *ALPHABET.choose(rng).unwrap()).collect()
}

/// A random sentence exercising every column of the extended format:
/// subcategories, FEATS, segmentations with glosses, extra MISC, DEPS,
/// range lines and free comments. Heads form a valid tree.
pub fn random_sentence<R: Rng + ?Sized>(rng: &mut R, id: usize, max_len: usize) -> Sentence {
    let n = rng.random_range(1..=max_len.max(1));
    let heads = random_heads(rng, n);
    let mut tokens = Vec::with_capacity(n);
    for (i, &head) in heads.iter().enumerate() {
        let pos = *PosTag::ALL.choose(rng).unwrap();
        let lemma = random_word(rng);
        let mut t = Token::new(
            i + 1,
            format!("{}{}", lemma, random_word(rng)),
            pos.code(),
            head,
            if head == 0 { "root" } else { LABELS.choose(rng).unwrap() },
        )
        .with_lemma(lemma.clone());
        if rng.random_bool(0.2) {
            t.pos_sub = Some(format!("{}[+{}]", pos.code(), random_word(rng)));
        }
        for (key, values) in FEATS {
            if rng.random_bool(0.3) {
                t.feats.insert(*key, values.choose(rng).unwrap());
            }
        }
        if rng.random_bool(0.4) {
            let k = rng.random_range(0..3);
            let mut segs = vec![lemma.clone()];
            segs.extend((0..k).map(|_| random_word(rng)));
            let mut m = MorphSegmentation::new(segs).unwrap();
            if rng.random_bool(0.5) {
                let gloss = (0..=k).map(|_| random_word(rng).to_uppercase()).collect();
                m = m.with_gloss(gloss).unwrap();
            }
            t.mseg = Some(m);
        }
        if rng.random_bool(0.15) {
            t.misc.push(("SpaceAfter".to_owned(), Some("No".to_owned())));
        }
        if rng.random_bool(0.05) {
            t.misc.push(("Flag".to_owned(), None));
        }
        if rng.random_bool(0.1) {
            t.deps = Some(format!("{}:{}", head, t.deprel));
        }
        tokens.push(t);
    }

    let mut s = Sentence::new(tokens).with_id(format!("synth-{}", id));
    if rng.random_bool(0.7) {
        s.text = Some(s.forms().collect::<Vec<_>>().join(" "));
    }
    if rng.random_bool(0.2) {
        s.comments.push(format!(" note = {}", random_word(rng)));
    }
    if n >= 2 && rng.random_bool(0.2) {
        let start = rng.random_range(1..n);
        let mut columns = vec!["_".to_owned(); 10];
        columns[0] = format!("{}-{}", start, start + 1);
        columns[1] = random_word(rng);
        s.special.push(SpecialLine {
            kind: SpecialKind::Range {
                start,
                end: start + 1,
            },
            position: start - 1,
            columns,
        });
    }
    s
}

pub fn random_treebank<R: Rng + ?Sized>(rng: &mut R, sentences: usize, max_len: usize) -> Treebank {
    (0..sentences)
        .map(|i| random_sentence(rng, i + 1, max_len))
        .collect()
}

/// A projective sentence labelled in the style of the UD input the
/// converter expects, seeded with the lexical triggers the rules look for
/// (postpositions, quotatives, light verbs, converbs, coordination).
pub fn random_ud_sentence<R: Rng + ?Sized>(rng: &mut R, id: usize, max_len: usize) -> Sentence {
    const LEXICON: &[(&str, &str, PosTag)] = &[
        ("sewr", "sewr", PosTag::N),
        ("qilip", "qil", PosTag::V),
        ("həyran", "həyran", PosTag::N),
        ("bolup", "bol", PosTag::V),
        ("dəp", "de", PosTag::V),
        ("bilən", "bilən", PosTag::Post),
        ("üčün", "üčün", PosTag::Post),
        ("saqlap", "saqla", PosTag::V),
        ("turidu", "tur", PosTag::Aux),
        ("kitab", "kitab", PosTag::N),
        ("u", "u", PosTag::Pron),
        ("jaxfi", "jaxfi", PosTag::A),
        ("ikki", "ikki", PosTag::Num),
        ("tez", "tez", PosTag::Adv),
        ("wə", "wə", PosTag::Conj),
    ];
    let n = rng.random_range(1..=max_len.max(1));
    let heads = random_projective_heads(rng, n);
    let tokens = heads
        .iter()
        .enumerate()
        .map(|(i, &head)| {
            let (form, lemma, pos) = *LEXICON.choose(rng).unwrap();
            let rel = if head == 0 {
                "root"
            } else {
                UD_LABELS.choose(rng).unwrap()
            };
            let mut t = Token::new(i + 1, form, pos.code(), head, rel).with_lemma(lemma);
            if pos.is_nominal() && rng.random_bool(0.6) {
                let (key, values) = FEATS[0];
                t.feats.insert(key, values.choose(rng).unwrap());
            }
            t
        })
        .collect();
    Sentence::new(tokens).with_id(format!("fuzz-{}", id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conllu::build_tree_from_heads;
    use crate::validator::crossing_arcs;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_heads_are_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=12 {
            for _ in 0..50 {
                build_tree_from_heads(&random_heads(&mut rng, n)).unwrap();
                let p = random_projective_heads(&mut rng, n);
                build_tree_from_heads(&p).unwrap();
                assert!(crossing_arcs(&p).is_empty(), "{p:?}");
            }
        }
    }

    #[test]
    fn generators_are_seed_deterministic() {
        let a = random_treebank(&mut ChaCha8Rng::seed_from_u64(9), 20, 8);
        let b = random_treebank(&mut ChaCha8Rng::seed_from_u64(9), 20, 8);
        assert_eq!(a, b);
    }
}
