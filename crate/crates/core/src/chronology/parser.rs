use std::sync::LazyLock;

use regex::Regex;
use serde::Serialize;

use super::interval::{
    century_to_interval, hull, parse_roman, year_to_interval, DatingInterval, DatingSummary, Era,
};
use super::modifier::{apply_modifier, ModifierKind, ModifierTable};

/// Highest century recognised in dating expressions.
pub const MAX_CENTURY: u32 = 10;

const FILLER_WORDS: [&str; 11] = [
    "del", "de", "la", "el", "los", "las", "en", "año", "años", "entre", "desde",
];
const JOIN_WORDS: [&str; 3] = ["al", "a", "hasta"];
const ALT_WORDS: [&str; 5] = ["o", "ó", "y", "u", "e"];

static SCHOLAR_PREFIX: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^([^:]*):").unwrap());
static ROMAN_WORD: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\b[IVXLCDM]+\b").unwrap());
static CENTURY_WORD: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)\b(?:siglos?|sig\.|ss?\.)").unwrap());

/// Result of parsing one dating expression.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParsedDating {
    /// One interval per dated alternative; ranges are merged into a single
    /// alternative.
    pub alternatives: Vec<DatingInterval>,
    /// Convex hull of all alternatives.
    pub interval: Option<DatingInterval>,
    /// Fragments that were not understood.
    pub unparsed: Vec<String>,
}

impl ParsedDating {
    pub fn summary(&self) -> Option<DatingSummary> {
        self.interval.as_ref().map(DatingInterval::summary)
    }

    /// `(min, max, mean, width)`, all `None` when nothing was recognised.
    pub fn tuple(&self) -> (Option<f64>, Option<f64>, Option<f64>, Option<f64>) {
        match self.summary().map(|s| s.to_f64()) {
            Some((a, b, c, d)) => (Some(a), Some(b), Some(c), Some(d)),
            None => (None, None, None, None),
        }
    }
}

#[derive(Debug, Clone)]
enum Token {
    Era(Era),
    Modifier(usize),
    CenturyWord,
    Roman(String),
    Number(String),
    Dash,
    Alternative,
    Word(String),
}

#[derive(Debug)]
enum TermValue {
    Century(u32),
    Year(u32),
    Fixed(usize),
}

#[derive(Debug)]
struct Term {
    value: TermValue,
    era: Option<Era>,
    modifier: Option<usize>,
    joined: bool,
    fragment: String,
}

/// Parser for Spanish dating expressions such as `"Finales del s. III a.C."`
/// or `"Rodríguez Ramos: 200 - 50 a.C."`.
#[derive(Debug, Clone)]
pub struct DatingParser {
    table: ModifierTable,
    tokens: Regex,
}

impl Default for DatingParser {
    fn default() -> Self {
        Self::new(ModifierTable::builtin())
    }
}

static DEFAULT: LazyLock<DatingParser> = LazyLock::new(DatingParser::default);

/// Parses with the built-in modifier table.
pub fn parse_dating(expr: &str) -> (Option<f64>, Option<f64>, Option<f64>, Option<f64>) {
    DEFAULT.parse(expr).tuple()
}

impl DatingParser {
    pub fn new(table: ModifierTable) -> Self {
        let mut keywords: Vec<(usize, &str)> = table
            .modifiers()
            .iter()
            .enumerate()
            .flat_map(|(i, m)| m.keywords.iter().map(move |k| (i, k.as_str())))
            .collect();
        keywords.sort_by_key(|(_, k)| std::cmp::Reverse(k.chars().count()));
        let modifier_alts: String = keywords
            .iter()
            .enumerate()
            .map(|(j, (i, k))| format!("(?P<m{i}_{j}>{})|", keyword_pattern(k)))
            .collect();
        let pattern = format!(
            r"(?P<era>\b[aAdD]\.?\s?(?:de\s+)?[cC](?:\.|\b))|{modifier_alts}(?P<century>(?i:\bsiglos?\b|\bsig\.|\bss?\.))|(?P<roman>\b[IVXLCDM]+\b)|(?P<num>\d+)|(?P<dash>[-\x{{2013}}\x{{2014}}])|(?P<alt>[,/])|(?P<word>\p{{L}}[\p{{L}}']*)"
        );
        let tokens = Regex::new(&pattern).expect("dating token pattern compiles");
        DatingParser { table, tokens }
    }

    pub fn table(&self) -> &ModifierTable {
        &self.table
    }

    pub fn parse(&self, expr: &str) -> ParsedDating {
        let mut alternatives = Vec::new();
        let mut unparsed = Vec::new();
        for segment in expr.split([';', '\n']) {
            let segment = strip_scholar(segment);
            if segment.trim().is_empty() {
                continue;
            }
            let tokens = self.tokenize(segment);
            let terms = self.build_terms(&tokens, &mut unparsed);
            self.evaluate(terms, &mut alternatives, &mut unparsed);
        }
        ParsedDating {
            interval: hull(&alternatives),
            alternatives,
            unparsed,
        }
    }

    fn tokenize(&self, segment: &str) -> Vec<(Token, String)> {
        let names: Vec<&str> = self.tokens.capture_names().flatten().collect();
        self.tokens
            .captures_iter(segment)
            .filter_map(|caps| {
                let name = names.iter().find(|n| caps.name(n).is_some())?;
                let text = caps.name(name)?.as_str().to_string();
                let token = match *name {
                    "era" => {
                        let lead = text.chars().next()?.to_ascii_lowercase();
                        Token::Era(if lead == 'a' { Era::BC } else { Era::AD })
                    }
                    "century" => Token::CenturyWord,
                    "roman" => Token::Roman(text.clone()),
                    "num" => Token::Number(text.clone()),
                    "dash" => Token::Dash,
                    "alt" => Token::Alternative,
                    "word" => {
                        let lower = text.to_lowercase();
                        if ALT_WORDS.contains(&lower.as_str()) {
                            Token::Alternative
                        } else if JOIN_WORDS.contains(&lower.as_str()) {
                            Token::Dash
                        } else {
                            Token::Word(text.clone())
                        }
                    }
                    modifier => {
                        let index = modifier[1..].split('_').next()?.parse().ok()?;
                        Token::Modifier(index)
                    }
                };
                Some((token, text))
            })
            .collect()
    }

    fn build_terms(&self, tokens: &[(Token, String)], unparsed: &mut Vec<String>) -> Vec<Term> {
        let mut terms: Vec<Term> = Vec::new();
        let mut pending_modifier: Option<(usize, String)> = None;
        let mut pending_join = false;
        let mut century_context = false;
        let mut unassigned_from = 0;

        let push = |terms: &mut Vec<Term>,
                    value: TermValue,
                    fragment: String,
                    pending_modifier: &mut Option<(usize, String)>,
                    pending_join: &mut bool| {
            let (modifier, fragment) = match pending_modifier.take() {
                Some((m, text)) => (Some(m), format!("{text} {fragment}")),
                None => (None, fragment),
            };
            terms.push(Term {
                value,
                era: None,
                modifier,
                joined: std::mem::take(pending_join) && !terms.is_empty(),
                fragment,
            });
        };

        for (token, text) in tokens {
            match token {
                Token::Era(era) => {
                    for term in &mut terms[unassigned_from..] {
                        term.era.get_or_insert(*era);
                    }
                    unassigned_from = terms.len();
                    century_context = false;
                }
                Token::Modifier(index) => {
                    let modifier = &self.table.modifiers()[*index];
                    if modifier.applies_to == ModifierKind::Era {
                        push(
                            &mut terms,
                            TermValue::Fixed(*index),
                            text.clone(),
                            &mut None,
                            &mut pending_join,
                        );
                    } else {
                        if let Some((_, dropped)) = pending_modifier.replace((*index, text.clone()))
                        {
                            unparsed.push(dropped);
                        }
                    }
                }
                Token::CenturyWord => century_context = true,
                Token::Roman(numeral) => match parse_roman(numeral).filter(|c| *c <= MAX_CENTURY) {
                    Some(century) => push(
                        &mut terms,
                        TermValue::Century(century),
                        text.clone(),
                        &mut pending_modifier,
                        &mut pending_join,
                    ),
                    None => unparsed.push(text.clone()),
                },
                Token::Number(digits) => match digits.parse::<u32>().ok().filter(|n| *n > 0) {
                    Some(n) if century_context && n <= MAX_CENTURY => push(
                        &mut terms,
                        TermValue::Century(n),
                        text.clone(),
                        &mut pending_modifier,
                        &mut pending_join,
                    ),
                    Some(n) => push(
                        &mut terms,
                        TermValue::Year(n),
                        text.clone(),
                        &mut pending_modifier,
                        &mut pending_join,
                    ),
                    None => unparsed.push(text.clone()),
                },
                Token::Dash => pending_join = true,
                Token::Alternative => {
                    pending_join = false;
                    century_context = false;
                }
                Token::Word(word) => {
                    let lower = word.to_lowercase();
                    if !FILLER_WORDS.contains(&lower.as_str()) {
                        unparsed.push(word.clone());
                    }
                }
            }
        }
        if let Some((_, dangling)) = pending_modifier {
            unparsed.push(dangling);
        }
        terms
    }

    fn evaluate(
        &self,
        terms: Vec<Term>,
        alternatives: &mut Vec<DatingInterval>,
        unparsed: &mut Vec<String>,
    ) {
        for term in terms {
            let era = term.era.unwrap_or(Era::AD);
            let base = match term.value {
                TermValue::Century(c) => century_to_interval(c, era),
                TermValue::Year(y) => year_to_interval(y, era),
                TermValue::Fixed(i) => Ok(self.table.modifiers()[i]
                    .era_interval()
                    .expect("fixed terms come from era modifiers")),
            };
            let Ok(mut interval) = base else {
                unparsed.push(term.fragment);
                continue;
            };
            if let Some(m) = term.modifier {
                match apply_modifier(&interval, &self.table.modifiers()[m]) {
                    Ok(modified) => interval = modified,
                    Err(_) => unparsed.push(term.fragment.clone()),
                }
            }
            interval.provenance = term.fragment;
            match alternatives.last_mut() {
                Some(last) if term.joined => *last = last.hull_with(&interval),
                _ => alternatives.push(interval),
            }
        }
    }
}

/// Drops a leading `Name:` attribution when the text before the colon holds
/// no date material.
fn strip_scholar(segment: &str) -> &str {
    let Some(caps) = SCHOLAR_PREFIX.captures(segment) else {
        return segment;
    };
    let prefix = &caps[1];
    let dated = prefix.bytes().any(|b| b.is_ascii_digit())
        || ROMAN_WORD.is_match(prefix)
        || CENTURY_WORD.is_match(prefix);
    if dated {
        segment
    } else {
        &segment[caps[0].len()..]
    }
}

/// Case- and accent-insensitive pattern for a modifier keyword.
fn keyword_pattern(keyword: &str) -> String {
    let mut body = String::new();
    for c in keyword.to_lowercase().chars() {
        let class = match c {
            'a' | 'á' | 'à' => "[aáà]",
            'e' | 'é' | 'è' => "[eéè]",
            'i' | 'í' | 'ï' => "[iíï]",
            'o' | 'ó' | 'ò' => "[oóò]",
            'u' | 'ú' | 'ü' => "[uúü]",
            ' ' => r"\s+",
            _ => "",
        };
        if class.is_empty() {
            body.push_str(&regex::escape(&c.to_string()));
        } else {
            body.push_str(class);
        }
    }
    let trail = if keyword.chars().last().is_some_and(char::is_alphanumeric) {
        r"\b"
    } else {
        ""
    };
    format!(r"(?i:\b{body}{trail})")
}
