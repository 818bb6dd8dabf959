//! Oracles and generators shared by the integration and acceptance tests.
//! Nothing here calls into the normalizer or the chronology parser.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

pub const FIXTURE: &str = include_str!("../fixtures/normalizer_corpus.tsv");

/// `(rule id, input, expected output if given)` per fixture line. The input
/// uses `\n` for line breaks.
pub fn fixture() -> Vec<(u8, String, Option<String>)> {
    FIXTURE
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|line| {
            let mut parts = line.split('\t');
            let rule: u8 = parts.next().unwrap().trim().parse().expect("rule id");
            let input = parts
                .next()
                .expect("input column")
                .replace("\\r", "\r")
                .replace("\\n", "\n");
            let expected = parts.next().map(str::to_string);
            (rule, input, expected)
        })
        .collect()
}

const DISPUTED: [char; 5] = ['\u{2336}', 'Σ', '\u{10603}', '‡', '\u{3E0}'];
const OCCLUSIVES: [char; 5] = ['b', 'd', 'g', 'k', 't'];
const VOWELS: [char; 5] = ['a', 'e', 'i', 'o', 'u'];
pub const METROLOGY: [&str; 9] = ["I", "II", "III", "Π", "Δ?", "ssss?", "<", ">?", "="];

fn is_list_token(token: &str) -> bool {
    let body = token.strip_suffix('.').or_else(|| token.strip_suffix(')'));
    matches!(body, Some(b) if !b.is_empty() && b.len() <= 3 && b.bytes().all(|c| c.is_ascii_digit()))
}

fn phrase_occurs(haystack: &str, phrase: &str) -> bool {
    let hay: Vec<char> = haystack.to_lowercase().chars().collect();
    let needle: Vec<char> = phrase.to_lowercase().chars().collect();
    if needle.is_empty() || needle.len() > hay.len() {
        return false;
    }
    let word = |c: char| c.is_alphanumeric();
    for start in 0..=hay.len() - needle.len() {
        let end = start + needle.len();
        let same = hay[start..end]
            .iter()
            .zip(&needle)
            .all(|(h, n)| h == n || (n.is_whitespace() && h.is_whitespace()));
        if !same {
            continue;
        }
        let left_ok = !word(needle[0]) || start == 0 || !word(hay[start - 1]);
        let right_ok = !word(needle[needle.len() - 1]) || end == hay.len() || !word(hay[end]);
        if left_ok && right_ok {
            return true;
        }
    }
    false
}

/// Everything a normalized text must not contain.
pub fn forbidden_violations(output: &str, lexicon: &[String]) -> Vec<String> {
    let mut v = Vec::new();
    if output.contains("[-c.") {
        v.push("counted gap survived".into());
    }
    if output.contains(['{', '}']) {
        v.push("curly bracket".into());
    }
    if output.contains(['|', '\u{2502}']) {
        v.push("line bar".into());
    }
    if output.contains(['\n', '\r', '\t']) || output.contains("  ") || output.trim() != output {
        v.push("untidy whitespace".into());
    }
    if output.contains(&DISPUTED[..]) {
        v.push("disputed character".into());
    }
    for token in output.split(' ') {
        if is_list_token(token) {
            continue;
        }
        if token.contains(['(', ')']) {
            v.push(format!("parenthesis in `{token}`"));
        }
        if token.chars().any(|c| c.is_ascii_digit()) {
            v.push(format!("numeral in `{token}`"));
        }
    }
    let chars: Vec<char> = output.chars().collect();
    for w in chars.windows(3) {
        if OCCLUSIVES.contains(&w[0]) && VOWELS.contains(&w[1]) && w[1] == w[2] {
            v.push(format!(
                "redundant vowel in `{}`",
                w.iter().collect::<String>()
            ));
        }
    }
    for phrase in lexicon {
        if phrase_occurs(output, phrase) {
            v.push(format!("annotation `{phrase}`"));
        }
    }
    v
}

/// True when no square bracket survives outside a `[---]` gap marker.
/// Unbalanced input may legitimately keep a literal bracket.
pub fn brackets_resolved(output: &str) -> bool {
    !output.replace("[---]", "").contains(['[', ']'])
}

/// A generated apparatus string with what must survive normalization.
#[derive(Debug, Clone)]
pub struct Apparatus {
    pub text: String,
    pub gaps: usize,
    pub pluses: usize,
    pub metrology: Vec<&'static str>,
}

/// Syllables chosen so that no sequence spells a lexicon entry: no `r`,
/// `l`, `f` or `n`, and `s` only word-final.
const SYLLABLES: [&str; 15] = [
    "ba", "be", "bi", "ka", "ke", "ku", "ta", "ti", "to", "ŕ", "ś", "ga", "gi", "da", "a",
];

fn word(rng: &mut impl Rng) -> String {
    let mut w: String = (0..rng.gen_range(1..4))
        .map(|_| *SYLLABLES.choose(rng).unwrap())
        .collect();
    if rng.gen_bool(0.2) {
        w.push('s');
    }
    w
}

/// Random transcription mixing words with every apparatus family.
pub fn apparatus_string(rng: &mut impl Rng) -> Apparatus {
    let mut a = Apparatus {
        text: String::new(),
        gaps: 0,
        pluses: 0,
        metrology: Vec::new(),
    };
    if rng.gen_bool(0.3) {
        a.text.push_str(["A: ", "B: "].choose(rng).unwrap());
    }
    let pieces = rng.gen_range(1..10);
    for i in 0..pieces {
        if i > 0 {
            let sep = match rng.gen_range(0..10) {
                0 => " | ",
                1 => "\n",
                2 => "",
                _ => " ",
            };
            a.text.push_str(sep);
        }
        match rng.gen_range(0..17) {
            0 => {
                a.text.push_str("[---]");
                a.gaps += 1;
            }
            1 => {
                let n = rng.gen_range(1..9);
                let gap = if rng.gen_bool(0.5) {
                    format!("[-c.{n}-]")
                } else {
                    format!("[-c.{n} ó {}-]", n + 1)
                };
                a.text.push_str(&gap);
                a.gaps += 1;
            }
            2 => {
                let dots = rng.gen_range(1..4);
                a.text.push('[');
                a.text.push_str(&".".repeat(dots));
                a.text.push(']');
                a.pluses += dots;
            }
            3 => a.text.push_str(&format!("[{}]", word(rng))),
            4 => a.text.push_str(&format!("({})", word(rng))),
            5 => a.text.push_str(&format!("{{{}}}", word(rng))),
            6 => a.text.push_str(
                ["(vacat)", "(?)", "(sic)", "(cara externa)", "(!)"]
                    .choose(rng)
                    .unwrap(),
            ),
            7 => a.text.push_str(&format!(
                "({} {}: {})",
                ["Untermann", "Ferrer", "Velaza"].choose(rng).unwrap(),
                rng.gen_range(1950..2024),
                rng.gen_range(1..300)
            )),
            8 => a.text.push_str(&rng.gen_range(1..40).to_string()),
            9 => {
                a.text.push_str(&word(rng));
                a.text.push(*DISPUTED.choose(rng).unwrap());
                a.pluses += 1;
            }
            10 => {
                a.text.push_str(&word(rng));
                a.text.push_str("-\n");
                a.text.push_str(&word(rng));
            }
            11 => {
                let o = *OCCLUSIVES.choose(rng).unwrap();
                let v = *VOWELS.choose(rng).unwrap();
                a.text.push(o);
                for _ in 0..rng.gen_range(2..4) {
                    a.text.push(v);
                }
            }
            12 => {
                let m = *METROLOGY.choose(rng).unwrap();
                a.text.push(' ');
                a.text.push_str(m);
                a.text.push(' ');
                a.metrology.push(m);
            }
            13 => {
                a.text.push('+');
                a.pluses += 1;
            }
            14 => a.text.push(':'),
            _ => a.text.push_str(&word(rng)),
        }
    }
    a
}

/// Metrology tokens of `expected` that are missing from `output`, counted
/// with multiplicity.
pub fn missing_metrology(output: &str, expected: &[&str]) -> Vec<String> {
    let mut tokens: Vec<&str> = output.split(' ').collect();
    let mut missing = Vec::new();
    for m in expected {
        match tokens.iter().position(|t| t == m) {
            Some(i) => {
                tokens.remove(i);
            }
            None => missing.push(m.to_string()),
        }
    }
    missing
}

/// Century span in plain floating point.
pub fn century_oracle(c: u32, bc: bool) -> (f64, f64) {
    let a = 100.0 * (c as f64 - 1.0) + 1.0;
    let b = 100.0 * c as f64;
    if bc {
        (-b, -a)
    } else {
        (a, b)
    }
}

/// Century modifiers with their fraction pairs, written out independently
/// of the bundled table.
pub const FRACTIONS: [(&str, f64, f64); 12] = [
    ("comienzos", 0.0, 0.2),
    ("inicios", 0.0, 0.2),
    ("finales", 0.8, 1.0),
    ("mediados", 0.25, 0.75),
    ("primera mitad", 0.0, 0.5),
    ("segunda mitad", 0.5, 1.0),
    ("primer tercio", 0.0, 1.0 / 3.0),
    ("último tercio", 2.0 / 3.0, 1.0),
    ("primer cuarto", 0.0, 0.25),
    ("segundo cuarto", 0.25, 0.5),
    ("tercer cuarto", 0.5, 0.75),
    ("último cuarto", 0.75, 1.0),
];

pub fn fraction_oracle((a, b): (f64, f64), p: f64, q: f64) -> (f64, f64) {
    (a + p * (b - a), a + q * (b - a))
}

fn roman(n: u32) -> &'static str {
    ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X"][n as usize - 1]
}

fn era(bc: bool, rng: &mut impl Rng) -> &'static str {
    if bc {
        ["a.C.", "a. C.", "a.C"].choose(rng).unwrap()
    } else {
        ["d.C.", "d. C."].choose(rng).unwrap()
    }
}

/// A dating expression and the hull the oracle expects for it.
pub fn dating_expression(rng: &mut impl Rng) -> (String, (f64, f64)) {
    let mut parts = Vec::new();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for _ in 0..rng.gen_range(1..4) {
        let bc = rng.gen_bool(0.7);
        let (text, (a, b)) = match rng.gen_range(0..6) {
            0 => {
                let c = rng.gen_range(1..=10);
                let word = ["s.", "siglo", "Siglo"].choose(rng).unwrap();
                (
                    format!("{word} {} {}", roman(c), era(bc, rng)),
                    century_oracle(c, bc),
                )
            }
            1 => {
                let c = rng.gen_range(1..=10);
                let (name, p, q) = *FRACTIONS.choose(rng).unwrap();
                (
                    format!("{name} del s. {} {}", roman(c), era(bc, rng)),
                    fraction_oracle(century_oracle(c, bc), p, q),
                )
            }
            2 => {
                let first = rng.gen_range(2..=10);
                let second = rng.gen_range(1..first);
                let (c1, c2) = if bc { (first, second) } else { (second, first) };
                let (l1, u1) = century_oracle(c1, bc);
                let (l2, u2) = century_oracle(c2, bc);
                (
                    format!("ss. {}-{} {}", roman(c1), roman(c2), era(bc, rng)),
                    (l1.min(l2), u1.max(u2)),
                )
            }
            3 => {
                let x = rng.gen_range(1..900) as f64;
                let y = rng.gen_range(1..900) as f64;
                let (older, younger) = if bc {
                    (x.max(y), x.min(y))
                } else {
                    (x.min(y), x.max(y))
                };
                let sign = if bc { -1.0 } else { 1.0 };
                (
                    format!("{older} - {younger} {}", era(bc, rng)),
                    (
                        (sign * older).min(sign * younger),
                        (sign * older).max(sign * younger),
                    ),
                )
            }
            4 => {
                let c = rng.gen_range(1..=10);
                let (a, b) = century_oracle(c, bc);
                (
                    format!("anterior a finales del s. {} {}", roman(c), era(bc, rng)),
                    (a, a + 0.8 * (b - a)),
                )
            }
            _ => {
                let y = rng.gen_range(20..900) as f64;
                let sign = if bc { -1.0 } else { 1.0 };
                let word = ["hacia el", "alrededor del", "aprox."].choose(rng).unwrap();
                (
                    format!("{word} {y} {}", era(bc, rng)),
                    (sign * y - 10.0, sign * y + 10.0),
                )
            }
        };
        parts.push(text);
        lo = lo.min(a);
        hi = hi.max(b);
    }
    let joiners = [" o ", ", ", " / ", "; "];
    let mut expr = String::new();
    if rng.gen_bool(0.3) {
        expr.push_str(
            ["Untermann: ", "Rodríguez Ramos: ", "Ferrer i Jané: "]
                .choose(rng)
                .unwrap(),
        );
    }
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            expr.push_str(joiners.choose(rng).unwrap());
        }
        expr.push_str(p);
    }
    (expr, (lo, hi))
}
