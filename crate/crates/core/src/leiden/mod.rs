//! Removal of the epigraphic apparatus (Leiden-style sigla, editorial
//! commentary, line numbering) from inscription texts.
//!
//! The rules run in a fixed order over a working copy of the text in which
//! gap markers and list numbering are replaced by private-use sentinels, so
//! that later rules cannot mistake a `[---]` for brackets or hyphens, or a
//! list number for a line number. A full pass is repeated until the text
//! stops changing; one pass can expose material for an earlier rule (a
//! restored abbreviation that spells a commentary word, say), and
//! iterating makes the composition idempotent.

mod lexicon;

use std::sync::LazyLock;

use regex::Regex;
use serde::Serialize;

pub use lexicon::{Lexicon, METROLOGY_KEEP};

/// Apparatus families handled by the normalizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PatternClass {
    GapCount,
    Citation,
    Parens,
    Brackets,
    Curly,
    Numeral,
    DisputedChar,
    MetrologyKeep,
    LineBar,
    Annotation,
    HyphenJoin,
    VowelRedundancy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RewriteRule {
    pub id: u8,
    pub description: &'static str,
    pub class: PatternClass,
}

/// The twelve cleaning rules, by their conventional numbering.
pub const RULES: [RewriteRule; 12] = [
    RewriteRule {
        id: 1,
        description: "counted gaps [-c.X-] become the generic [---]",
        class: PatternClass::GapCount,
    },
    RewriteRule {
        id: 2,
        description: "bibliographic citations are removed",
        class: PatternClass::Citation,
    },
    RewriteRule {
        id: 3,
        description: "parentheses are removed; restored abbreviations keep their content",
        class: PatternClass::Parens,
    },
    RewriteRule {
        id: 4,
        description: "square brackets are removed; restorations keep their content, [.] becomes +",
        class: PatternClass::Brackets,
    },
    RewriteRule {
        id: 5,
        description: "curly brackets and their content (scribal errors) are removed",
        class: PatternClass::Curly,
    },
    RewriteRule {
        id: 6,
        description: "Arabic numerals that are not list items are removed",
        class: PatternClass::Numeral,
    },
    RewriteRule {
        id: 7,
        description: "disputed or illegible characters become +",
        class: PatternClass::DisputedChar,
    },
    RewriteRule {
        id: 8,
        description: "metrology marks are kept",
        class: PatternClass::MetrologyKeep,
    },
    RewriteRule {
        id: 9,
        description: "line-split bars are removed",
        class: PatternClass::LineBar,
    },
    RewriteRule {
        id: 10,
        description: "Spanish and Latin annotations are removed",
        class: PatternClass::Annotation,
    },
    RewriteRule {
        id: 11,
        description: "words hyphenated across lines are joined",
        class: PatternClass::HyphenJoin,
    },
    RewriteRule {
        id: 12,
        description: "a vowel repeating the vowel of the preceding syllabogram is removed",
        class: PatternClass::VowelRedundancy,
    },
];

/// Characters whose reading is disputed or illegible; each becomes `+`.
pub const DISPUTED_CHARS: [char; 5] = ['\u{2336}', 'Σ', '\u{10603}', '‡', '\u{3E0}'];

/// Line-split marks.
pub const LINE_BARS: [char; 2] = ['|', '\u{2502}'];

const OCCLUSIVES: [char; 5] = ['b', 'd', 'g', 'k', 't'];
const VOWELS: [char; 5] = ['a', 'e', 'i', 'o', 'u'];

const GAP: char = '\u{E000}';
const GAP_MARKER: &str = "[---]";
const SENTINEL_BASE: u32 = 0xE000;
const MAX_PASSES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizationWarning {
    pub rule: PatternClass,
    pub message: String,
}

static COUNTED_GAP: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\[\s*-?\s*c\.[^\[\]]*?-?\s*\]").unwrap());
static HYPHEN_GAP: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\[[\s-]*-[\s-]*\]").unwrap());
static INNER_GROUP: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"[\(\[]([^\(\)\[\]]*)[\)\]]").unwrap());
static CITATION_YEAR: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\b(?:1[5-9]|20)\d{2}[a-z]?\b").unwrap());
static CITATION_LEAD: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)^\s*(?:cf\.|vid\.|véase|vease|según|segun)").unwrap());
static FREE_CITATION: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(
        r"(?:\b(?:cf|vid)\.\s*)?\p{Lu}[\p{L}'-]+(?:\s+(?:et al\.|y|&)\s*(?:\p{Lu}[\p{L}'-]+)?)?,?\s+(?:1[5-9]|20)\d{2}[a-z]?(?:\s*[:,]\s*(?:p\.\s*)?\d+(?:\s*[-–]\s*\d+)?)?",
    )
    .unwrap()
});
static PARENS: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\(([^()]*)\)").unwrap());
static BRACKETS: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\[([^\[\]]*)\]").unwrap());
static CURLY: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\{[^{}]*\}").unwrap());
static HYPHEN_BREAK: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"-[ \t]*(?:\r\n|\n|\r|\||\u{2502})\s*").unwrap());
static WHITESPACE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\s+").unwrap());

static DEFAULT: LazyLock<Normalizer> = LazyLock::new(Normalizer::default);

/// Normalizes with the built-in annotation lexicon.
pub fn normalize_text(raw: &str) -> String {
    DEFAULT.normalize(raw)
}

/// Replaces counted gaps such as `[-c.3-]` or `[-c.1 ó 2-]` with `[---]`.
pub fn rewrite_gap_counts(text: &str) -> String {
    COUNTED_GAP.replace_all(text, GAP_MARKER).into_owned()
}

pub fn replace_disputed_chars(text: &str) -> String {
    text.chars()
        .map(|c| if DISPUTED_CHARS.contains(&c) { '+' } else { c })
        .collect()
}

/// Joins words split with a trailing `-` across a line break (or a line
/// bar) and drops the remaining line bars.
pub fn join_hyphenated_lines(text: &str) -> String {
    decode(&join_lines(&encode_gaps(text)))
}

/// Deletes vowels that repeat the vowel of an occlusive syllabogram:
/// `kaabaarinos` becomes `kabarinos`. Runs of the same vowel collapse fully.
pub fn collapse_vowel_redundancy(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        out.push(c);
        if !OCCLUSIVES.contains(&c) {
            continue;
        }
        let Some(&vowel) = chars.peek().filter(|v| VOWELS.contains(v)) else {
            continue;
        };
        out.push(vowel);
        chars.next();
        while chars.peek() == Some(&vowel) {
            chars.next();
        }
    }
    out
}

/// Text normalizer bound to an annotation lexicon.
#[derive(Debug, Clone, Default)]
pub struct Normalizer {
    lexicon: Lexicon,
}

type StepFn = fn(&Normalizer, &str, &mut Vec<NormalizationWarning>) -> String;

/// Pass order. Structural markers go before character-level rewrites.
const STEPS: [(&str, StepFn); 11] = [
    ("gap-count", |_, t, _| encode_gaps(t)),
    ("citation", |_, t, _| strip_citations(t)),
    ("annotation", |n, t, _| n.strip_annotations(t)),
    ("parens", |_, t, w| resolve_parens(t, w)),
    ("brackets", |_, t, w| resolve_square(t, w)),
    ("curly", |_, t, w| strip_curly(t, w)),
    ("numeral", |_, t, _| strip_numerals(t)),
    ("disputed-char", |_, t, _| replace_disputed_chars(t)),
    ("line-join", |_, t, _| join_lines(t)),
    ("vowel-redundancy", |_, t, _| collapse_vowel_redundancy(t)),
    ("whitespace", |_, t, _| tidy_whitespace(t)),
];

impl Normalizer {
    pub fn new(lexicon: Lexicon) -> Self {
        Normalizer { lexicon }
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn normalize(&self, raw: &str) -> String {
        self.normalize_with_warnings(raw).0
    }

    /// Normalizes `raw`, returning the clean text and any warnings raised by
    /// the first pass (unbalanced delimiters and the like).
    pub fn normalize_with_warnings(&self, raw: &str) -> (String, Vec<NormalizationWarning>) {
        let mut warnings = Vec::new();
        let mut current = self.single_pass(raw, &mut warnings);
        for _ in 1..MAX_PASSES {
            let next = self.single_pass(&current, &mut Vec::new());
            if next == current {
                break;
            }
            current = next;
        }
        (current, warnings)
    }

    /// Text after each step of a single pass, for debugging rule behaviour.
    pub fn trace(&self, raw: &str) -> Vec<(&'static str, String)> {
        let mut warnings = Vec::new();
        let mut working = protect(raw);
        STEPS
            .iter()
            .map(|(name, step)| {
                working = step(self, &working, &mut warnings);
                (*name, decode(&working))
            })
            .collect()
    }

    fn single_pass(&self, raw: &str, warnings: &mut Vec<NormalizationWarning>) -> String {
        let working = STEPS
            .iter()
            .fold(protect(raw), |text, (_, step)| step(self, &text, warnings));
        decode(&working)
    }

    /// Bracket and parenthesis resolution on its own: gaps are preserved,
    /// `[.]` becomes `+`, restorations lose their delimiters, commentary
    /// groups disappear.
    pub fn resolve_brackets(&self, text: &str) -> (String, Vec<NormalizationWarning>) {
        let mut warnings = Vec::new();
        let working = encode_gaps(text);
        let working = self.strip_commentary_groups(&working);
        let working = resolve_parens(&working, &mut warnings);
        let working = resolve_square(&working, &mut warnings);
        (decode(&working), warnings)
    }

    fn strip_annotations(&self, text: &str) -> String {
        if self.lexicon.is_empty() {
            return text.to_string();
        }
        let without_groups = self.strip_commentary_groups(text);
        self.lexicon.strip(&without_groups)
    }

    fn strip_commentary_groups(&self, text: &str) -> String {
        replace_until_stable(text, &INNER_GROUP, |caps| {
            let content = &caps[1];
            if self.is_commentary(content) {
                String::new()
            } else {
                // Keep the group; mask it so the loop moves on.
                caps[0].to_string()
            }
        })
    }

    fn is_commentary(&self, content: &str) -> bool {
        let trimmed = content.trim();
        if !trimmed.is_empty() && trimmed.chars().all(|c| c == '?' || c == '!') {
            return true;
        }
        self.lexicon.contains_match(content)
            && !self.lexicon.strip(content).chars().any(char::is_alphabetic)
    }
}

/// Applies `f` to every match until the text stops changing. `f` returning
/// the match unchanged leaves it in place.
fn replace_until_stable(
    text: &str,
    re: &Regex,
    mut f: impl FnMut(&regex::Captures<'_>) -> String,
) -> String {
    let mut current = text.to_string();
    loop {
        let next = re
            .replace_all(&current, |caps: &regex::Captures<'_>| f(caps))
            .into_owned();
        if next == current {
            return current;
        }
        current = next;
    }
}

fn protect_char(c: char) -> char {
    char::from_u32(SENTINEL_BASE + c as u32).expect("ASCII offsets stay in the private-use area")
}

fn is_sentinel(c: char) -> bool {
    (SENTINEL_BASE..=SENTINEL_BASE + 0xFF).contains(&(c as u32))
}

/// Drops stray private-use sentinels from the input and shields list
/// numbering (a token like `1.` or `2)`) from the numeral and parenthesis
/// rules. A `2)` inside an open parenthesis closes it and is left alone.
fn protect(raw: &str) -> String {
    let clean: String = raw.chars().filter(|c| !is_sentinel(*c)).collect();
    let mut out = String::with_capacity(clean.len());
    let mut rest = clean.as_str();
    let mut depth = 0usize;
    while !rest.is_empty() {
        let ws_end = rest
            .find(|c: char| !c.is_whitespace())
            .unwrap_or(rest.len());
        out.push_str(&rest[..ws_end]);
        rest = &rest[ws_end..];
        let tok_end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let token = &rest[..tok_end];
        if is_list_marker(token, depth) {
            out.extend(token.chars().map(protect_char));
        } else {
            for c in token.chars() {
                match c {
                    '(' => depth += 1,
                    ')' => depth = depth.saturating_sub(1),
                    _ => {}
                }
            }
            out.push_str(token);
        }
        rest = &rest[tok_end..];
    }
    out
}

fn is_list_marker(token: &str, paren_depth: usize) -> bool {
    let body = match token.strip_suffix('.') {
        Some(body) => body,
        None if paren_depth == 0 => match token.strip_suffix(')') {
            Some(body) => body,
            None => return false,
        },
        None => return false,
    };
    !body.is_empty() && body.len() <= 3 && body.bytes().all(|b| b.is_ascii_digit())
}

fn encode_gaps(text: &str) -> String {
    let counted = COUNTED_GAP.replace_all(text, GAP.to_string());
    HYPHEN_GAP
        .replace_all(&counted, GAP.to_string())
        .into_owned()
}

fn decode(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        if c == GAP {
            out.push_str(GAP_MARKER);
        } else if is_sentinel(c) {
            out.push(char::from_u32(c as u32 - SENTINEL_BASE).unwrap());
        } else {
            out.push(c);
        }
    }
    out
}

fn strip_citations(text: &str) -> String {
    let grouped = replace_until_stable(text, &INNER_GROUP, |caps| {
        let content = &caps[1];
        let cited = CITATION_LEAD.is_match(content)
            || (CITATION_YEAR.is_match(content) && content.chars().any(char::is_alphabetic));
        if cited {
            String::new()
        } else {
            caps[0].to_string()
        }
    });
    FREE_CITATION.replace_all(&grouped, "").into_owned()
}

fn resolve_parens(text: &str, warnings: &mut Vec<NormalizationWarning>) -> String {
    let resolved = replace_until_stable(text, &PARENS, |caps| caps[1].to_string());
    drop_strays(&resolved, &['(', ')'], PatternClass::Parens, warnings)
}

fn resolve_square(text: &str, warnings: &mut Vec<NormalizationWarning>) -> String {
    let resolved = replace_until_stable(text, &BRACKETS, |caps| caps[1].replace('.', "+"));
    if resolved.contains(['[', ']']) {
        warnings.push(NormalizationWarning {
            rule: PatternClass::Brackets,
            message: "unbalanced square bracket kept literally".to_string(),
        });
    }
    resolved
}

fn strip_curly(text: &str, warnings: &mut Vec<NormalizationWarning>) -> String {
    let resolved = replace_until_stable(text, &CURLY, |_| String::new());
    drop_strays(&resolved, &['{', '}'], PatternClass::Curly, warnings)
}

fn drop_strays(
    text: &str,
    delimiters: &[char],
    rule: PatternClass,
    warnings: &mut Vec<NormalizationWarning>,
) -> String {
    if !text.contains(delimiters) {
        return text.to_string();
    }
    warnings.push(NormalizationWarning {
        rule,
        message: format!(
            "unbalanced `{}` removed",
            delimiters.iter().collect::<String>()
        ),
    });
    text.chars().filter(|c| !delimiters.contains(c)).collect()
}

fn strip_numerals(text: &str) -> String {
    text.chars().filter(|c| !c.is_ascii_digit()).collect()
}

fn join_lines(text: &str) -> String {
    let joined = HYPHEN_BREAK.replace_all(text, "");
    joined.chars().filter(|c| !LINE_BARS.contains(c)).collect()
}

fn tidy_whitespace(text: &str) -> String {
    WHITESPACE.replace_all(text.trim(), " ").into_owned()
}
