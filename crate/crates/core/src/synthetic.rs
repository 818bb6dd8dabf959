//! Seeded synthetic corpora for throughput checks, benchmarks and tests.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::encoding::{Attribute, MappingSet};
use crate::model::{Authenticity, RawRecord};

/// The raw fields of the reference example record.
pub fn golden_record() -> RawRecord {
    RawRecord {
        site: "Montanya Frontera".into(),
        ref_mlh: "F.11.30".into(),
        ref_hesperia: "V.04.50".into(),
        text: "A: [.]uŕbokon[---]+ B: :baisuka[-c.1 ó 2-]esite[---]".into(),
        municipality: Some("Sagunto".into()),
        province: Some("Valencia".into()),
        material: Some("PIEDRA".into()),
        medium: Some("Pedestal".into()),
        writing_direction: Some("DEXTROGIRA".into()),
        technique: Some("INCISION".into()),
        signary: Some("LEVANTINO".into()),
        dual_system: Some("NO DUAL".into()),
        separators: Some("CARECE".into()),
        dating: Some("Rodríguez Ramos: 200 - 50 a.C.".into()),
        authenticity: Authenticity::Genuine,
    }
}

const SYLLABLES: [&str; 24] = [
    "ba", "be", "bi", "bo", "bu", "ka", "ke", "ki", "ko", "ku", "ta", "te", "ti", "to", "tu", "ŕ",
    "n", "s", "ś", "l", "r", "a", "e", "i",
];

const APPARATUS: [&str; 16] = [
    "[---]",
    "[-c.3-]",
    "[-c.1 ó 2-]",
    "[.]",
    "[..]",
    "(vacat)",
    "(?)",
    "{-}",
    "[ba]",
    "(ka)",
    "Σ",
    "‡",
    "III",
    "=",
    "-\n",
    " | ",
];

const MUNICIPALITIES: [&str; 10] = [
    "Sagunto",
    "Llíria",
    "Botorrita",
    "Ullastret",
    "Azaila",
    "Narbonne",
    "Ensérune",
    "Villar del Arzobispo",
    "Caminreal",
    "Garray",
];

const PROVINCES: [&str; 8] = [
    "Valencia",
    "Zaragoza",
    "Girona",
    "Teruel",
    "Hérault",
    "Aude",
    "Castellón",
    "Cuenca",
];

const DATINGS: [&str; 12] = [
    "s. II a.C.",
    "ss. II-I a.C.",
    "200 - 50 a.C.",
    "finales del s. III a.C.",
    "mediados del s. I a.C.",
    "primera mitad del s. II a.C.",
    "Untermann: s. I a.C.; Beltrán: s. II a.C.",
    "hacia el 100 a.C.",
    "cambio de era",
    "s. I d.C.",
    "anterior a finales del s. III a.C.",
    "Desconocida",
];

fn text(rng: &mut StdRng) -> String {
    let mut out = String::new();
    for face in ["A: ", "B: "].iter().take(rng.gen_range(1..=2)) {
        out.push_str(face);
        for _ in 0..rng.gen_range(4..16) {
            if rng.gen_bool(0.15) {
                out.push_str(APPARATUS.choose(rng).expect("non-empty"));
            } else {
                out.push_str(SYLLABLES.choose(rng).expect("non-empty"));
            }
            if rng.gen_bool(0.1) {
                out.push(':');
            }
        }
        out.push(' ');
    }
    out.trim_end().to_string()
}

fn pick(rng: &mut StdRng, values: &[String]) -> Option<String> {
    if values.is_empty() || rng.gen_bool(0.05) {
        None
    } else {
        values.choose(rng).cloned()
    }
}

/// `n` records drawn from seeded pools. The same seed always yields the same
/// corpus.
pub fn corpus(n: usize, seed: u64) -> Vec<RawRecord> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mappings = MappingSet::builtin();
    let values: Vec<Vec<String>> = Attribute::ALL
        .iter()
        .map(|a| {
            let mut v: Vec<String> = mappings
                .get(*a)
                .groups()
                .map(|(raw, _)| raw.to_string())
                .collect();
            v.sort();
            v.push(format!("{} RARO", a.name().to_uppercase()));
            v
        })
        .collect();
    (0..n)
        .map(|i| {
            let mut attr = values.iter().map(|v| pick(&mut rng, v));
            let mut next = || attr.next().flatten();
            let (material, medium, writing_direction, technique, signary, dual_system, separators) =
                (next(), next(), next(), next(), next(), next(), next());
            let authenticity = match rng.gen_range(0..100) {
                0..=2 => Authenticity::False,
                3..=4 => Authenticity::Suspicious,
                _ => Authenticity::Genuine,
            };
            RawRecord {
                site: format!("Site {}", i % 97),
                ref_mlh: format!("F.{}.{}", i % 30, i),
                ref_hesperia: format!("S.{:02}.{:05}", i % 50, i),
                text: text(&mut rng),
                municipality: rng.gen_bool(0.9).then(|| {
                    MUNICIPALITIES
                        .choose(&mut rng)
                        .expect("non-empty")
                        .to_string()
                }),
                province: rng
                    .gen_bool(0.9)
                    .then(|| PROVINCES.choose(&mut rng).expect("non-empty").to_string()),
                material,
                medium,
                writing_direction,
                technique,
                signary,
                dual_system,
                separators,
                dating: rng
                    .gen_bool(0.85)
                    .then(|| DATINGS.choose(&mut rng).expect("non-empty").to_string()),
                authenticity,
            }
        })
        .collect()
}

/// A corpus in which every category of every attribute in `mappings`
/// occurs at least once, including each miscellaneous category.
pub fn covering_corpus(mappings: &MappingSet) -> Vec<RawRecord> {
    let mut columns: Vec<Vec<String>> = Vec::new();
    for attribute in Attribute::ALL {
        let mapping = mappings.get(attribute);
        let mut raws: Vec<String> = mapping.groups().map(|(raw, _)| raw.to_string()).collect();
        raws.sort();
        if mapping.misc_category().is_some() {
            raws.push(format!("{} SIN AGRUPAR", attribute.name().to_uppercase()));
        }
        columns.push(raws);
    }
    let rows = columns.iter().map(Vec::len).max().unwrap_or(0);
    (0..rows)
        .map(|i| {
            let at = |c: usize| columns[c].get(i).cloned();
            RawRecord {
                site: "Cobertura".into(),
                ref_mlh: format!("C.{i}"),
                ref_hesperia: format!("C.{i:04}"),
                text: "ba".into(),
                material: at(0),
                medium: at(1),
                writing_direction: at(2),
                technique: at(3),
                signary: at(4),
                dual_system: at(5),
                separators: at(6),
                ..RawRecord::default()
            }
        })
        .collect()
}
