mod common;

use mudt::synth::random_treebank;
use mudt::{parse_treebank_strict, serialize_treebank};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn fixtures_are_canonical() {
    let files = common::all_fixture_files();
    assert!(files.len() >= 30);
    for f in files {
        let text = common::read(&f);
        let tb = parse_treebank_strict(&text).unwrap();
        assert_eq!(serialize_treebank(&tb), text, "{f}");
    }
}

#[test]
fn thousand_random_treebanks_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let tb = random_treebank(&mut rng, 3, 12);
        let back = parse_treebank_strict(&serialize_treebank(&tb)).unwrap();
        assert_eq!(back, tb);
    }
}

#[test]
fn segmentation_root_is_lemma_everywhere() {
    for f in common::all_fixture_files() {
        for t in common::load(&f).tokens() {
            assert!(t.mseg_matches_lemma(), "{f}: token {}", t.form);
        }
    }
}

#[test]
fn oqyanlarimdin_four_layers() {
    let tb = common::load("morphology.conllu");
    let t = &tb.sentences[0].tokens[0];
    assert_eq!(t.form, "oqyanlarimdin");
    assert_eq!(t.lemma, "oqu");
    let m = t.mseg.as_ref().unwrap();
    assert_eq!(m.segments(), ["oqu", "yan", "lar", "im", "din"]);
    assert_eq!(m.gloss().unwrap(), ["read", "PST", "PL", "P1SG.POS", "ABL"]);
    let feats: Vec<(&str, &str)> = t.feats.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
    assert_eq!(
        feats,
        [("Case", "ABL"), ("Number", "Plur"), ("Person", "1"), ("Tense", "Past")]
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn serialize_is_stable(seed in any::<u64>(), n in 1usize..6, len in 1usize..15) {
        let tb = random_treebank(&mut ChaCha8Rng::seed_from_u64(seed), n, len);
        let once = serialize_treebank(&tb);
        let twice = serialize_treebank(&parse_treebank_strict(&once).unwrap());
        prop_assert_eq!(once, twice);
    }
}
