//! Monoid presentations `<X | R>`, their finite quotients and verification
//! against concrete transformation monoids.
//!
//! Words are sequences of alphabet indices; the empty word is the identity.

mod builders;
mod todd_coxeter;
mod verify;
pub mod word_closure;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::Word;

pub use builders::{
    end_star_presentation, full_transf_presentation, partial_transf_presentation,
    star_presentation, swend_star_presentation, sym_presentation, wend_star_presentation,
};
pub use todd_coxeter::{
    enumerate_quotient, enumerate_quotient_with, CongruenceTable, Exceeded, QuotientOptions,
    QuotientOutcome, DEFAULT_MAX_CLASSES,
};
pub use verify::{
    satisfies_relations, standard_assignment, verify_presentation, verify_presentation_with,
    QuotientSize, RelationCheck, Verdict, VerificationReport,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Vec<String>,
    relations: Vec<(Word, Word)>,
}

impl Presentation {
    pub fn new<S: Into<String>>(alphabet: impl IntoIterator<Item = S>) -> Result<Self> {
        let alphabet: Vec<String> = alphabet.into_iter().map(Into::into).collect();
        for (i, letter) in alphabet.iter().enumerate() {
            if !is_identifier(letter) {
                return Err(Error::InvalidPresentation(format!(
                    "letter {letter:?} is not an identifier"
                )));
            }
            if alphabet[..i].contains(letter) {
                return Err(Error::InvalidPresentation(format!("repeated letter {letter:?}")));
            }
        }
        Ok(Self {
            alphabet,
            relations: Vec::new(),
        })
    }

    /// Builds a presentation from letter-name words, rejecting unknown
    /// letters and duplicate relations.
    pub fn from_named<S: AsRef<str>>(alphabet: &[S], relations: &[(Vec<S>, Vec<S>)]) -> Result<Self> {
        let mut p = Self::new(alphabet.iter().map(|s| s.as_ref().to_string()))?;
        for (lhs, rhs) in relations {
            let lhs = p.word_from_letters(lhs)?;
            let rhs = p.word_from_letters(rhs)?;
            if !p.add_relation(lhs, rhs) {
                return Err(Error::InvalidPresentation("duplicate relation".into()));
            }
        }
        Ok(p)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn letter_index(&self, letter: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == letter)
    }

    fn word_from_letters<S: AsRef<str>>(&self, letters: &[S]) -> Result<Word> {
        letters
            .iter()
            .map(|l| {
                self.letter_index(l.as_ref()).ok_or_else(|| {
                    Error::InvalidPresentation(format!("unknown letter {:?}", l.as_ref()))
                })
            })
            .collect()
    }

    /// Adds `lhs = rhs` unless that exact pair is already present.
    pub fn add_relation(&mut self, lhs: Word, rhs: Word) -> bool {
        assert!(
            lhs.iter().chain(&rhs).all(|&x| x < self.alphabet.len()),
            "relation uses a letter outside the alphabet"
        );
        if self.relations.iter().any(|(l, r)| *l == lhs && *r == rhs) {
            return false;
        }
        self.relations.push((lhs, rhs));
        true
    }

    /// Parses and adds one relation written as two word expressions.
    pub fn relate(&mut self, lhs: &str, rhs: &str) -> Result<()> {
        let lhs = self.parse_word(lhs)?;
        let rhs = self.parse_word(rhs)?;
        self.add_relation(lhs, rhs);
        Ok(())
    }

    /// Adds the chain `t_1 = t_2 = ... = t_k` as the pairs `t_i = t_k`.
    pub fn relate_chain(&mut self, terms: &[&str]) -> Result<()> {
        let words = terms
            .iter()
            .map(|t| self.parse_word(t))
            .collect::<Result<Vec<_>>>()?;
        if let Some((last, rest)) = words.split_last() {
            for w in rest {
                self.add_relation(w.clone(), last.clone());
            }
        }
        Ok(())
    }

    /// Parses a word expression such as `"(a b^2 e)^3 a"`.
    ///
    /// Letters are identifiers separated by whitespace or parentheses, `^k`
    /// raises the preceding letter or group to the power `k`, and `1` is the
    /// empty word.
    pub fn parse_word(&self, expr: &str) -> Result<Word> {
        let tokens = tokenize(expr)?;
        let mut parser = WordParser {
            tokens: &tokens,
            position: 0,
            presentation: self,
            source: expr,
        };
        let word = parser.sequence()?;
        if parser.position != tokens.len() {
            return Err(parser.error("unexpected ')'"));
        }
        Ok(word)
    }

    /// Renames letters; letters not mentioned keep their names.
    pub fn relabel(&self, renaming: &[(&str, &str)]) -> Result<Self> {
        let alphabet: Vec<String> = self
            .alphabet
            .iter()
            .map(|l| {
                renaming
                    .iter()
                    .find(|(from, _)| from == l)
                    .map_or_else(|| l.clone(), |(_, to)| to.to_string())
            })
            .collect();
        let mut p = Self::new(alphabet)?;
        p.relations = self.relations.clone();
        Ok(p)
    }

    /// The same relations over a larger alphabet that contains every current
    /// letter (possibly in a different order).
    pub fn embed_into<S: AsRef<str>>(&self, alphabet: &[S]) -> Result<Self> {
        let mut p = Self::new(alphabet.iter().map(|s| s.as_ref().to_string()))?;
        let map: Vec<usize> = self
            .alphabet
            .iter()
            .map(|l| {
                p.letter_index(l).ok_or_else(|| {
                    Error::InvalidPresentation(format!("letter {l:?} missing from target alphabet"))
                })
            })
            .collect::<Result<_>>()?;
        for (lhs, rhs) in &self.relations {
            let lhs = lhs.iter().map(|&x| map[x]).collect();
            let rhs = rhs.iter().map(|&x| map[x]).collect();
            p.add_relation(lhs, rhs);
        }
        Ok(p)
    }

    /// A copy with relation `index` removed.
    pub fn without_relation(&self, index: usize) -> Self {
        let mut p = self.clone();
        p.relations.remove(index);
        p
    }

    /// Position of the relation `lhs = rhs` (in that orientation).
    pub fn find_relation(&self, lhs: &str, rhs: &str) -> Result<Option<usize>> {
        let lhs = self.parse_word(lhs)?;
        let rhs = self.parse_word(rhs)?;
        Ok(self
            .relations
            .iter()
            .position(|(l, r)| *l == lhs && *r == rhs))
    }

    pub fn spell(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.iter()
            .map(|&x| self.alphabet[x].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn spell_relation(&self, index: usize) -> String {
        let (lhs, rhs) = &self.relations[index];
        format!("{} = {}", self.spell(lhs), self.spell(rhs))
    }

    /// Serializes to the structured presentation document.
    pub fn to_json(&self) -> String {
        let doc = PresentationDoc {
            alphabet: self.alphabet.clone(),
            relations: self
                .relations
                .iter()
                .map(|(l, r)| [self.letters_of(l), self.letters_of(r)])
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("presentation serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PresentationDoc = serde_json::from_str(text)
            .map_err(|e| Error::InvalidPresentation(format!("malformed document: {e}")))?;
        let relations: Vec<(Vec<String>, Vec<String>)> = doc
            .relations
            .into_iter()
            .map(|[l, r]| (l, r))
            .collect();
        Self::from_named(&doc.alphabet, &relations)
    }

    fn letters_of(&self, word: &[usize]) -> Vec<String> {
        word.iter().map(|&x| self.alphabet[x].clone()).collect()
    }

    /// Human-readable `<a, b | a^2 = 1, ...>` form with runs collapsed.
    pub fn display(&self) -> String {
        let mut out = format!("<{} |", self.alphabet.join(", "));
        for (i, (l, r)) in self.relations.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            let _ = write!(out, "{sep}{} = {}", self.compact(l), self.compact(r));
        }
        out.push('>');
        out
    }

    fn compact(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < word.len() {
            let mut j = i;
            while j < word.len() && word[j] == word[i] {
                j += 1;
            }
            let letter = &self.alphabet[word[i]];
            parts.push(if j - i == 1 {
                letter.clone()
            } else {
                format!("{letter}^{}", j - i)
            });
            i = j;
        }
        parts.join(" ")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationDoc {
    alphabet: Vec<String>,
    relations: Vec<[Vec<String>; 2]>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, PartialEq)]
enum Token {
    Letter(String),
    One,
    Open,
    Close,
    Power(usize),
}

fn tokenize(expr: &str) -> Result<Vec<Token>> {
    let bad = |reason: String| Error::InvalidPresentation(format!("word {expr:?}: {reason}"));
    let chars: Vec<char> = expr.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '(' => {
                tokens.push(Token::Open);
                i += 1;
            }
            ')' => {
                tokens.push(Token::Close);
                i += 1;
            }
            '^' => {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let k = digits
                    .parse()
                    .map_err(|_| bad("'^' must be followed by an exponent".into()))?;
                tokens.push(Token::Power(k));
            }
            '1' => {
                tokens.push(Token::One);
                i += 1;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push(Token::Letter(chars[start..i].iter().collect()));
            }
            _ => return Err(bad(format!("unexpected character {c:?}"))),
        }
    }
    Ok(tokens)
}

struct WordParser<'a> {
    tokens: &'a [Token],
    position: usize,
    presentation: &'a Presentation,
    source: &'a str,
}

impl WordParser<'_> {
    fn error(&self, reason: &str) -> Error {
        Error::InvalidPresentation(format!("word {:?}: {reason}", self.source))
    }

    fn sequence(&mut self) -> Result<Word> {
        let mut word = Vec::new();
        while let Some(token) = self.tokens.get(self.position) {
            let mut factor = match token {
                Token::Close => break,
                Token::Power(_) => return Err(self.error("exponent without a base")),
                Token::One => {
                    self.position += 1;
                    Vec::new()
                }
                Token::Letter(name) => {
                    self.position += 1;
                    let x = self
                        .presentation
                        .letter_index(name)
                        .ok_or_else(|| self.error(&format!("unknown letter {name:?}")))?;
                    vec![x]
                }
                Token::Open => {
                    self.position += 1;
                    let inner = self.sequence()?;
                    if self.tokens.get(self.position) != Some(&Token::Close) {
                        return Err(self.error("missing ')'"));
                    }
                    self.position += 1;
                    inner
                }
            };
            while let Some(Token::Power(k)) = self.tokens.get(self.position) {
                self.position += 1;
                factor = factor.repeat(*k);
            }
            word.extend(factor);
        }
        Ok(word)
    }
}
