use forge_core::encoding::{count_mismatches, distinct_categories, Attribute, EncodeStatus};
use forge_core::{synthetic, MappingSet};
use proptest::prelude::*;

#[test]
fn covering_corpus_hits_final_counts_exactly() {
    let set = MappingSet::builtin();
    let corpus = synthetic::covering_corpus(&set);
    let counts = distinct_categories(&corpus, &set);
    assert!(count_mismatches(&counts).is_empty(), "{counts:?}");
}

#[test]
fn partial_corpus_reports_mismatch() {
    let set = MappingSet::builtin();
    let corpus = synthetic::covering_corpus(&set);
    let counts = distinct_categories(&corpus[..3], &set);
    assert!(count_mismatches(&counts)
        .iter()
        .any(|(a, _, _)| *a == Attribute::Medium));
}

#[test]
fn codes_are_stable_across_runs() {
    let set = MappingSet::builtin();
    let again = MappingSet::builtin();
    let corpus = synthetic::corpus(400, 23);
    for a in Attribute::ALL {
        for r in &corpus {
            assert_eq!(
                set.encode(a, a.raw_value(r)),
                again.encode(a, a.raw_value(r))
            );
        }
    }
}

proptest! {
    #[test]
    fn null_propagation(raw in proptest::option::of("[A-Z ]{0,12}"), i in 0usize..7) {
        let set = MappingSet::builtin();
        let attribute = Attribute::ALL[i];
        let enc = set.encode(attribute, raw.as_deref());
        prop_assert_eq!(enc.category.is_none(), enc.code.is_none());
        let absent = raw.as_deref().is_none_or(|r| r.trim().is_empty());
        let null_expected = absent
            || (set.get(attribute).misc_category().is_none() && enc.status == EncodeStatus::Unmapped);
        prop_assert_eq!(enc.code.is_none(), null_expected);
    }

    #[test]
    fn case_and_spacing_do_not_matter(i in 0usize..7, pad in 0usize..3, lower in any::<bool>()) {
        let set = MappingSet::builtin();
        let mapping = set.get(Attribute::ALL[i]);
        for (raw, category) in mapping.groups() {
            let mut probe = format!("{}{}{}", " ".repeat(pad), raw.replace(' ', "  "), " ".repeat(pad));
            if lower {
                probe = probe.to_lowercase();
            }
            let enc = mapping.encode(Some(&probe));
            prop_assert_eq!(enc.category.as_deref(), Some(category));
        }
    }
}
