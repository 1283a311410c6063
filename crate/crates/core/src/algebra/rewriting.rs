//! Shortlex-reducing string rewriting with a critical-pair confluence check.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{usage, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Vec<u8>,
    pub rhs: Vec<u8>,
}

/// A finite confluent rewriting system whose irreducible words are the
/// canonical forms of the presented semigroup (or monoid).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewritingSystem {
    alphabet: Vec<String>,
    rules: Vec<Rule>,
    monoid: bool,
}

/// `a` precedes `b` in shortlex order over letter indices.
pub fn shortlex_less(a: &[u8], b: &[u8]) -> bool {
    a.len() < b.len() || (a.len() == b.len() && a < b)
}

impl RewritingSystem {
    /// Validates orientation and confluence of `rules` over `alphabet`.
    pub fn new(alphabet: Vec<String>, rules: Vec<Rule>, monoid: bool) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(usage("rewriting alphabet is empty"));
        }
        if alphabet.len() > u8::MAX as usize {
            return Err(usage("rewriting alphabet has more than 255 letters"));
        }
        for (i, a) in alphabet.iter().enumerate() {
            if a.is_empty() || a == "1" || alphabet[..i].contains(a) {
                return Err(usage(format!("invalid or repeated letter {a:?}")));
            }
        }
        let system = RewritingSystem {
            alphabet,
            rules,
            monoid,
        };
        for rule in &system.rules {
            let shown = system.render_rule(rule);
            if rule.lhs.is_empty() {
                return Err(usage(format!("rule {shown} has an empty left-hand side")));
            }
            if rule
                .lhs
                .iter()
                .chain(&rule.rhs)
                .any(|&x| x as usize >= system.alphabet.len())
            {
                return Err(usage(format!(
                    "rule {shown} uses a letter outside the alphabet"
                )));
            }
            if rule.rhs.is_empty() && !monoid {
                return Err(usage(format!(
                    "rule {shown} has an empty right-hand side in a semigroup presentation"
                )));
            }
            if !shortlex_less(&rule.rhs, &rule.lhs) {
                return Err(usage(format!("rule {shown} is not shortlex-reducing")));
            }
        }
        system.check_critical_pairs()?;
        Ok(system)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_monoid(&self) -> bool {
        self.monoid
    }

    pub(crate) fn set_monoid(&mut self) {
        self.monoid = true;
    }

    /// Every rule preserves length, so word length is an invariant.
    pub fn is_homogeneous(&self) -> bool {
        self.rules.iter().all(|r| r.lhs.len() == r.rhs.len())
    }

    /// Normal form of `word`.
    pub fn normalize(&self, word: &[u8]) -> Vec<u8> {
        self.append_normalized(Vec::with_capacity(word.len()), word)
    }

    /// Normal form of `prefix · rest`, given that `prefix` is irreducible.
    ///
    /// The output buffer is irreducible after every step, so only rules
    /// matching a suffix need to be tried; the right-hand side of an applied
    /// rule is pushed back onto the input.
    pub fn append_normalized(&self, prefix: Vec<u8>, rest: &[u8]) -> Vec<u8> {
        let mut out = prefix;
        let mut pending: Vec<u8> = rest.iter().rev().copied().collect();
        while let Some(x) = pending.pop() {
            out.push(x);
            if let Some(rule) = self.rules.iter().find(|r| out.ends_with(&r.lhs)) {
                out.truncate(out.len() - rule.lhs.len());
                pending.extend(rule.rhs.iter().rev());
            }
        }
        out
    }

    pub fn is_irreducible(&self, word: &[u8]) -> bool {
        self.rules
            .iter()
            .all(|r| !word.windows(r.lhs.len()).any(|w| w == r.lhs.as_slice()))
    }

    fn check_critical_pairs(&self) -> Result<()> {
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                // Overlaps: a proper suffix of lhs1 equals a proper prefix of lhs2.
                let max = r1.lhs.len().min(r2.lhs.len());
                for k in 1..max {
                    if r1.lhs[r1.lhs.len() - k..] != r2.lhs[..k] {
                        continue;
                    }
                    let mut word = r1.lhs.clone();
                    word.extend_from_slice(&r2.lhs[k..]);
                    let mut left = r1.rhs.clone();
                    left.extend_from_slice(&r2.lhs[k..]);
                    let mut right = r1.lhs[..r1.lhs.len() - k].to_vec();
                    right.extend_from_slice(&r2.rhs);
                    self.joinable(&word, &left, &right)?;
                }
                // Inclusions: lhs2 is a factor of lhs1.
                if i == j || r2.lhs.len() > r1.lhs.len() {
                    continue;
                }
                for p in 0..=r1.lhs.len() - r2.lhs.len() {
                    if r1.lhs[p..p + r2.lhs.len()] != r2.lhs[..] {
                        continue;
                    }
                    let left = r1.rhs.clone();
                    let mut right = r1.lhs[..p].to_vec();
                    right.extend_from_slice(&r2.rhs);
                    right.extend_from_slice(&r1.lhs[p + r2.lhs.len()..]);
                    self.joinable(&r1.lhs, &left, &right)?;
                }
            }
        }
        Ok(())
    }

    fn joinable(&self, word: &[u8], left: &[u8], right: &[u8]) -> Result<()> {
        let left = self.normalize(left);
        let right = self.normalize(right);
        if left == right {
            Ok(())
        } else {
            Err(Error::Confluence {
                overlap: self.render(word),
                left: self.render(&left),
                right: self.render(&right),
            })
        }
    }

    /// Letters concatenated; `1` for the empty word.
    pub fn render(&self, word: &[u8]) -> String {
        render_letters(&self.alphabet, word)
    }

    fn render_rule(&self, rule: &Rule) -> String {
        format!("{} -> {}", self.render(&rule.lhs), self.render(&rule.rhs))
    }

    /// Parses a word over the alphabet (greedy longest match; `1` is empty).
    pub fn parse_word(&self, text: &str) -> Result<Vec<u8>> {
        let letters = tokenize(&self.alphabet, text)?;
        Ok(letters.into_iter().map(|x| x as u8).collect())
    }
}

pub(crate) fn render_letters(alphabet: &[String], word: &[u8]) -> String {
    if word.is_empty() {
        return String::from("1");
    }
    let sep = if alphabet.iter().all(|a| a.chars().count() == 1) {
        ""
    } else {
        "."
    };
    let mut out = String::new();
    for (k, &x) in word.iter().enumerate() {
        if k > 0 {
            out.push_str(sep);
        }
        out.push_str(&alphabet[x as usize]);
    }
    out
}

/// Splits `text` into symbol indices by greedy longest match.
///
/// Whitespace and `.` separate tokens and are otherwise ignored; `1` (or an
/// empty string) is the empty word.
pub fn tokenize(symbols: &[String], text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() || text == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let skip = rest.trim_start_matches(|c: char| c.is_whitespace() || c == '.');
        if skip.len() != rest.len() {
            rest = skip;
            continue;
        }
        let best = symbols
            .iter()
            .enumerate()
            .filter(|(_, s)| rest.starts_with(s.as_str()))
            .max_by_key(|(_, s)| s.len());
        match best {
            Some((i, s)) => {
                out.push(i);
                rest = &rest[s.len()..];
            }
            None => {
                return Err(usage(format!(
                    "cannot parse {rest:?} as a word over the generators"
                )))
            }
        }
    }
    Ok(out)
}
