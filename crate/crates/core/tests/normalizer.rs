mod common;

use std::collections::BTreeMap;

use forge_core::leiden::{Normalizer, RULES};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn normalizer() -> Normalizer {
    Normalizer::default()
}

#[test]
fn fixture_covers_every_rule() {
    let mut per_rule: BTreeMap<u8, usize> = BTreeMap::new();
    for (rule, _, _) in common::fixture() {
        *per_rule.entry(rule).or_default() += 1;
    }
    assert_eq!(per_rule.values().sum::<usize>(), 200);
    for rule in RULES {
        assert!(
            per_rule.get(&rule.id).copied().unwrap_or(0) >= 10,
            "rule {} under-covered",
            rule.id
        );
    }
}

#[test]
fn fixture_expected_outputs() {
    let n = normalizer();
    let mut failures = Vec::new();
    for (rule, input, expected) in common::fixture() {
        if let Some(expected) = expected {
            let got = n.normalize(&input);
            if got != expected {
                failures.push(format!(
                    "rule {rule}: {input:?} -> {got:?}, expected {expected:?}"
                ));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn fixture_is_idempotent_and_clean() {
    let n = normalizer();
    let lexicon = n.lexicon().phrases().to_vec();
    for (rule, input, _) in common::fixture() {
        let once = n.normalize(&input);
        assert_eq!(n.normalize(&once), once, "rule {rule}: {input:?}");
        let violations = common::forbidden_violations(&once, &lexicon);
        assert!(
            violations.is_empty(),
            "rule {rule}: {input:?} -> {once:?}: {violations:?}"
        );
        assert!(
            common::brackets_resolved(&once),
            "rule {rule}: {input:?} -> {once:?}"
        );
    }
}

#[test]
fn seeded_grammar_strings() {
    let n = normalizer();
    let lexicon = n.lexicon().phrases().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1be7);
    for _ in 0..1000 {
        let a = common::apparatus_string(&mut rng);
        let out = n.normalize(&a.text);
        assert_eq!(n.normalize(&out), out, "{:?}", a.text);
        assert!(
            common::forbidden_violations(&out, &lexicon).is_empty(),
            "{:?} -> {out:?}",
            a.text
        );
        assert!(common::brackets_resolved(&out), "{:?} -> {out:?}", a.text);
        assert_eq!(
            out.matches("[---]").count(),
            a.gaps,
            "{:?} -> {out:?}",
            a.text
        );
        assert_eq!(
            out.matches('+').count(),
            a.pluses,
            "{:?} -> {out:?}",
            a.text
        );
        assert!(
            common::missing_metrology(&out, &a.metrology).is_empty(),
            "{:?} -> {out:?}",
            a.text
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn idempotent_on_arbitrary_text(s in "\\PC{0,60}") {
        let n = normalizer();
        let once = n.normalize(&s);
        prop_assert_eq!(n.normalize(&once), once);
    }

    #[test]
    fn idempotent_on_apparatus_alphabet(s in "[a-z\\[\\]\\(\\)\\{\\}\\.\\- |:+0-9ΣIΠ\n]{0,60}") {
        let n = normalizer();
        let once = n.normalize(&s);
        prop_assert_eq!(n.normalize(&once), once.clone());
        let violations = common::forbidden_violations(&once, n.lexicon().phrases());
        prop_assert!(violations.is_empty(), "{:?} -> {:?}: {:?}", s, once, violations);
    }

    #[test]
    fn grammar_strings_keep_signs(seed in any::<u64>()) {
        let n = normalizer();
        let a = common::apparatus_string(&mut ChaCha8Rng::seed_from_u64(seed));
        let out = n.normalize(&a.text);
        prop_assert_eq!(out.matches("[---]").count(), a.gaps);
        prop_assert_eq!(out.matches('+').count(), a.pluses);
        prop_assert!(common::missing_metrology(&out, &a.metrology).is_empty());
    }
}
