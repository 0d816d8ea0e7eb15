//! Rule-based whitespace/punctuation tokenizer with sentence splitting.

use std::collections::BTreeSet;

use crate::model::{Document, Token};

pub trait Tokenizer: Send + Sync {
    fn tokenize(&self, text: &str) -> Document;
}

/// Splits on whitespace, separates punctuation into single-character tokens,
/// keeps word-internal `-`, `'` and `.`, splits English clitics (`n't`, `'s`, ...)
/// and ends sentences at `.`, `!` or `?`.
#[derive(Debug, Clone)]
pub struct RuleTokenizer {
    abbreviations: BTreeSet<String>,
}

const ABBREVIATIONS: &[&str] = &[
    "dr", "mr", "mrs", "ms", "prof", "st", "jr", "sr", "vs", "etc", "inc", "co", "corp", "ltd",
    "gov", "sen", "rep", "gen", "lt", "col", "sgt", "capt", "no", "fig", "e.g", "i.e", "jan",
    "feb", "mar", "apr", "aug", "sep", "sept", "oct", "nov", "dec", "mt", "ft",
];

const CLITICS: &[&str] = &["'s", "'re", "'ve", "'ll", "'d", "'m"];

impl Default for RuleTokenizer {
    fn default() -> Self {
        Self {
            abbreviations: ABBREVIATIONS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl RuleTokenizer {
    pub fn with_abbreviations<I, S>(abbreviations: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            abbreviations: abbreviations.into_iter().map(Into::into).collect(),
        }
    }

    fn keeps_period(&self, word: &str) -> bool {
        let lower = word.to_lowercase();
        self.abbreviations.contains(&lower) || word.contains('.')
    }
}

fn is_joiner(c: char) -> bool {
    matches!(c, '-' | '\'' | '.' | '’')
}

fn is_terminal(surface: &str) -> bool {
    matches!(surface, "." | "!" | "?")
}

fn is_closer(surface: &str) -> bool {
    matches!(surface, "\"" | "'" | ")" | "]" | "”" | "’" | "»")
}

fn split_clitic(word: &str) -> (usize, Option<usize>) {
    // returns (stem char length, clitic char length)
    let lower = word.to_lowercase().replace('’', "'");
    let n = word.chars().count();
    if lower.ends_with("n't") && n > 3 {
        return (n - 3, Some(3));
    }
    for c in CLITICS {
        let k = c.chars().count();
        if lower.ends_with(c) && n > k {
            return (n - k, Some(k));
        }
    }
    (n, None)
}

impl Tokenizer for RuleTokenizer {
    fn tokenize(&self, text: &str) -> Document {
        let chars: Vec<char> = text.chars().collect();
        let n = chars.len();
        let mut tokens = Vec::new();
        let push = |tokens: &mut Vec<Token>, start: usize, end: usize| {
            tokens.push(Token {
                surface: chars[start..end].iter().collect(),
                char_start: start,
                char_end: end,
            })
        };

        let mut i = 0;
        while i < n {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if !c.is_alphanumeric() {
                push(&mut tokens, i, i + 1);
                i += 1;
                continue;
            }
            let mut j = i + 1;
            while j < n {
                let joined = j + 1 < n && is_joiner(chars[j]) && chars[j + 1].is_alphanumeric();
                if !(chars[j].is_alphanumeric() || joined) {
                    break;
                }
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            if j < n && chars[j] == '.' && self.keeps_period(&word) {
                push(&mut tokens, i, j + 1);
                j += 1;
            } else {
                match split_clitic(&word) {
                    (stem, Some(k)) => {
                        push(&mut tokens, i, i + stem);
                        push(&mut tokens, i + stem, i + stem + k);
                    }
                    _ => push(&mut tokens, i, j),
                }
            }
            i = j;
        }

        let mut sentences = Vec::new();
        let mut start = 0;
        let mut k = 0;
        while k < tokens.len() {
            if is_terminal(&tokens[k].surface) {
                let mut end = k + 1;
                while end < tokens.len()
                    && (is_terminal(&tokens[end].surface) || is_closer(&tokens[end].surface))
                {
                    end += 1;
                }
                sentences.push(start..end);
                start = end;
                k = end;
            } else {
                k += 1;
            }
        }
        if start < tokens.len() {
            sentences.push(start..tokens.len());
        }

        Document::new(text.to_string(), tokens, sentences)
            .expect("tokenizer output satisfies document invariants")
    }
}

/// Tokenize with the default rules.
pub fn tokenize(text: &str) -> Document {
    RuleTokenizer::default().tokenize(text)
}
