mod common;

use std::collections::BTreeMap;

use mudt::metrics::{divergence, score, Category, Tally};
use mudt::synth::random_treebank;
use mudt::{SchemaRegistry, Treebank};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Brute-force LAS tally for same-tokenisation pairs.
fn las_by_hand(gold: &Treebank, pred: &Treebank) -> (usize, usize, usize) {
    let mut correct = 0;
    for (g, p) in gold.sentences.iter().zip(&pred.sentences) {
        for (a, b) in g.tokens.iter().zip(&p.tokens) {
            if a.head == b.head && a.deprel == b.deprel {
                correct += 1;
            }
        }
    }
    let n = gold.tokens().count();
    (correct, n, pred.tokens().count())
}

#[test]
fn self_evaluation_is_exactly_100() {
    let reg = SchemaRegistry::default();
    let mut files = common::all_fixture_files();
    files.retain(|f| !f.starts_with("principles/P"));
    for f in files {
        let tb = common::load(&f);
        let s = score(&tb, &tb, &reg).unwrap();
        for t in [s.uas, s.las, s.mlas, s.blex] {
            assert_eq!(t.render(), "100.00", "{f}");
        }
    }
    let tb = random_treebank(&mut ChaCha8Rng::seed_from_u64(1), 200, 20);
    let s = score(&tb, &tb, &reg).unwrap();
    assert_eq!((s.las.render(), s.mlas.render(), s.blex.render()), ("100.00".into(), "100.00".into(), "100.00".into()));
}

#[test]
fn parallel_pair_scores() {
    let reg = SchemaRegistry::default();
    let gold = common::load("parallel_mudt.conllu");
    let pred = common::load("parallel_ud.conllu");
    let s = score(&gold, &pred, &reg).unwrap();
    assert_eq!(las_by_hand(&gold, &pred), (29, 40, 40));
    assert_eq!((s.las.correct, s.las.gold, s.las.pred), (29, 40, 40));
    assert_eq!(s.las.render(), "72.50");
    assert!(s.mlas.correct <= s.las.correct && s.mlas.gold <= s.las.gold);

    let d = divergence(&gold, &pred, &reg).unwrap();
    for c in Category::ALL {
        let want = usize::from(c != Category::Other);
        assert_eq!(d.categories[&c], want, "{c}");
    }
    assert_eq!(d.aligned, 40);
    assert_eq!(d.agreement_rate(), "72.50");
    assert_eq!(d.category_tokens.values().sum::<usize>(), 11);
    let tokens: BTreeMap<Category, usize> = d.category_tokens.clone();
    assert_eq!(tokens[&Category::CompoundPredicates], 5);
    assert_eq!(tokens[&Category::Quotative], 2);
    assert_eq!(tokens[&Category::PostpositionHeadedness], 2);
    assert_eq!(tokens[&Category::FixedExpressions], 1);
    assert_eq!(tokens[&Category::CaseRelations], 1);
}

#[test]
fn corruption_oracles() {
    let reg = SchemaRegistry::default();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let gold = random_treebank(&mut rng, 1, 20);
        let n = gold.sentences[0].len();
        let k = rng.random_range(0..=n);
        let mut pred = gold.clone();
        for i in sample(&mut rng, n, k) {
            pred.sentences[0].tokens[i].deprel = "corrupt".into();
        }
        let s = score(&gold, &pred, &reg).unwrap();
        let (c, g, p) = las_by_hand(&gold, &pred);
        assert_eq!((s.las.correct, s.las.gold, s.las.pred), (c, g, p));
        assert_eq!(s.las.correct, n - k);
        assert!(s.las.f1() <= s.uas.f1());
        assert!(s.mlas.correct <= s.las.correct);

        let d = divergence(&gold, &pred, &reg).unwrap();
        let want = Tally { correct: n - k, gold: n, pred: n };
        assert_eq!(d.agreement_hundredths(), want.f1_hundredths());
        assert_eq!(d.confusion.values().sum::<usize>(), n);
        assert_eq!(d.category_tokens.values().sum::<usize>(), k);
    }
}

#[test]
fn corrupting_more_never_raises_las() {
    let reg = SchemaRegistry::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let gold = random_treebank(&mut rng, 10, 15);
    let mut pred = gold.clone();
    let mut last = score(&gold, &pred, &reg).unwrap().las.f1();
    for si in 0..pred.len() {
        for ti in 0..pred.sentences[si].len() {
            pred.sentences[si].tokens[ti].deprel = "corrupt".into();
            let now = score(&gold, &pred, &reg).unwrap().las.f1();
            assert!(now <= last);
            last = now;
        }
    }
    assert_eq!(last, 0.0);
}

#[test]
fn f1_matches_precision_and_recall() {
    let reg = SchemaRegistry::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let gold = random_treebank(&mut rng, 1, 20);
        let mut pred = gold.clone();
        let n = gold.sentences[0].len();
        for t in &mut pred.sentences[0].tokens {
            if rng.random_bool(0.3) {
                t.head = rng.random_range(0..=n);
            }
        }
        let s = score(&gold, &pred, &reg).unwrap();
        for t in [s.uas, s.las, s.mlas, s.blex] {
            let (p, r) = (t.precision(), t.recall());
            let f = if p + r == 0.0 { 0.0 } else { 2.0 * p * r / (p + r) };
            if t.gold + t.pred > 0 {
                assert!((f - t.f1()).abs() < 1e-9, "{t:?}");
            }
        }
    }
}
