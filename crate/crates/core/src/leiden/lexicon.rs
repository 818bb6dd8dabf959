use std::fs;
use std::path::Path;

use regex::Regex;

use crate::error::{Error, Result};

const BUILTIN: &str = include_str!("../../data/lexicon.txt");

/// Metrology marks that must survive normalization even if a lexicon lists them.
pub const METROLOGY_KEEP: [&str; 9] = ["I", "II", "III", "Π", "Δ?", "ssss?", "<", ">?", "="];

/// Commentary phrases (Spanish and Latin editorial notes) to strip from texts.
#[derive(Debug, Clone)]
pub struct Lexicon {
    phrases: Vec<String>,
    matcher: Option<Regex>,
}

impl Lexicon {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let contents = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(&contents))
    }

    /// One phrase per line; `#` starts a comment line.
    pub fn parse(contents: &str) -> Self {
        let mut phrases: Vec<String> = Vec::new();
        for line in contents.lines() {
            let phrase = line.trim();
            if phrase.is_empty() || phrase.starts_with('#') {
                continue;
            }
            if METROLOGY_KEEP
                .iter()
                .any(|m| m.eq_ignore_ascii_case(phrase))
            {
                log::warn!("lexicon entry `{phrase}` is a metrology mark; ignored");
                continue;
            }
            let phrase = phrase.split_whitespace().collect::<Vec<_>>().join(" ");
            if !phrases
                .iter()
                .any(|p| p.to_lowercase() == phrase.to_lowercase())
            {
                phrases.push(phrase);
            }
        }
        Self::from_phrases(phrases)
    }

    pub fn from_phrases(mut phrases: Vec<String>) -> Self {
        // Longest first so that "cara externa" wins over a bare "cara".
        phrases.sort_by(|a, b| b.chars().count().cmp(&a.chars().count()).then(a.cmp(b)));
        let matcher = (!phrases.is_empty()).then(|| {
            let alternatives: Vec<String> = phrases.iter().map(|p| phrase_pattern(p)).collect();
            Regex::new(&format!("(?i)(?:{})", alternatives.join("|")))
                .expect("escaped lexicon phrases always compile")
        });
        Lexicon { phrases, matcher }
    }

    pub fn phrases(&self) -> &[String] {
        &self.phrases
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    pub fn contains_match(&self, text: &str) -> bool {
        self.matcher.as_ref().is_some_and(|m| m.is_match(text))
    }

    /// Removes every lexicon phrase from `text`.
    pub fn strip(&self, text: &str) -> String {
        match &self.matcher {
            Some(m) => m.replace_all(text, "").into_owned(),
            None => text.to_string(),
        }
    }
}

impl Default for Lexicon {
    fn default() -> Self {
        Self::builtin()
    }
}

fn phrase_pattern(phrase: &str) -> String {
    let body = phrase
        .split(' ')
        .map(regex::escape)
        .collect::<Vec<_>>()
        .join(r"\s+");
    let word = |c: Option<char>| c.is_some_and(char::is_alphanumeric);
    let lead = if word(phrase.chars().next()) {
        r"\b"
    } else {
        ""
    };
    let trail = if word(phrase.chars().last()) {
        r"\b"
    } else {
        ""
    };
    format!("{lead}{body}{trail}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_words_only() {
        let lex = Lexicon::parse("sic\nvacat\n");
        assert_eq!(lex.strip("basic sic"), "basic ");
        assert_eq!(lex.strip("VACAT ka"), " ka");
    }

    #[test]
    fn multi_word_phrases_tolerate_spacing() {
        let lex = Lexicon::parse("cara externa\n");
        assert_eq!(lex.strip("Cara   externa: baikar"), ": baikar");
    }

    #[test]
    fn trailing_punctuation_phrase() {
        let lex = Lexicon::parse("vac.\n");
        assert_eq!(lex.strip("ka vac. ba"), "ka  ba");
    }

    #[test]
    fn metrology_marks_are_never_lexicon_entries() {
        let lex = Lexicon::parse("# c\nII\n=\nsic\n");
        assert_eq!(lex.phrases(), ["sic"]);
    }

    #[test]
    fn builtin_loads() {
        let lex = Lexicon::builtin();
        assert!(lex.phrases().iter().any(|p| p == "vacat"));
        assert!(lex.phrases().iter().any(|p| p == "cara externa"));
    }

    #[test]
    fn empty_lexicon_is_identity() {
        let lex = Lexicon::parse("# nothing\n");
        assert!(lex.is_empty());
        assert_eq!(lex.strip("vacat"), "vacat");
    }
}
