//! Letters, words and the composition codec `(k_1, ..., k_r) <-> z_{k_1} ... z_{k_r}`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// A monomial of the free algebra on `{x, y}`. The empty word is the unit.
///
/// Words are ordered by weight first, then lexicographically with `x < y`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn x() -> Self {
        Word(vec![Letter::X])
    }

    pub fn y() -> Self {
        Word(vec![Letter::Y])
    }

    pub fn from_letters(letters: impl Into<Vec<Letter>>) -> Self {
        Word(letters.into())
    }

    /// Parses a string of `x`/`y` characters. Returns `None` on any other character.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                'x' => Some(Letter::X),
                'y' => Some(Letter::Y),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }

    /// `y x^{k-1}`.
    pub fn z(k: u32) -> Self {
        assert!(k >= 1, "z_k needs k >= 1");
        let mut letters = Vec::with_capacity(k as usize);
        letters.push(Letter::Y);
        letters.extend(std::iter::repeat(Letter::X).take(k as usize - 1));
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// Drops a trailing `x`, or reports that the word does not end with one.
    pub fn strip_x(&self) -> Result<Word> {
        match self.0.split_last() {
            Some((Letter::X, rest)) => Ok(Word(rest.to_vec())),
            _ => Err(Error::NotEndingInX(self.clone())),
        }
    }

    pub fn in_h1(&self) -> bool {
        matches!(self.first(), None | Some(Letter::Y))
    }

    pub fn in_h0(&self) -> bool {
        self.is_empty() || (self.first() == Some(Letter::Y) && self.last() == Some(Letter::X))
    }

    pub fn ends_with_x(&self) -> bool {
        self.last() == Some(Letter::X)
    }

    pub fn to_composition(&self) -> Result<Composition> {
        let mut parts = Vec::new();
        for &letter in &self.0 {
            match letter {
                Letter::Y => parts.push(1),
                Letter::X => match parts.last_mut() {
                    Some(k) => *k += 1,
                    None => return Err(Error::NotInH1(self.clone())),
                },
            }
        }
        Ok(Composition(parts))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for letter in &self.0 {
            write!(f, "{}", letter.as_char())?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// An index `(k_1, ..., k_r)` with every `k_i >= 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&k| k == 0) {
            return Err(Error::Domain(format!(
                "composition parts must be >= 1, got {parts:?}"
            )));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.weight() as usize);
        for &k in &self.0 {
            letters.push(Letter::Y);
            letters.extend(std::iter::repeat(Letter::X).take(k as usize - 1));
        }
        Word(letters)
    }

    /// All compositions with weight in `1..=max_weight` and depth in `1..=max_depth`,
    /// ordered by weight, then depth, then lexicographically.
    pub fn enumerate(max_weight: u32, max_depth: usize) -> Vec<Composition> {
        fn rec(rest: u32, depth_left: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if rest == 0 {
                out.push(prefix.clone());
                return;
            }
            if depth_left == 0 {
                return;
            }
            for k in 1..=rest {
                prefix.push(k);
                rec(rest - k, depth_left - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut all = Vec::new();
        for w in 1..=max_weight {
            let mut these = Vec::new();
            rec(w, max_depth, &mut Vec::new(), &mut these);
            these.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            all.extend(these.into_iter().map(Composition));
        }
        all
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}
