use std::fmt;

use serde::{Deserialize, Serialize};

/// A monomial of the free algebra: a sequence of generator indices with its weighted degree.
///
/// The derived ordering compares degree first and then the raw letter indices; it is a
/// storage order only. Use [`MonomialOrder`](super::MonomialOrder) for leading terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    degree: u32,
    letters: Vec<u16>,
}

impl Word {
    pub fn empty() -> Word {
        Word { degree: 0, letters: Vec::new() }
    }

    pub fn new(letters: Vec<u16>, weights: &[u32]) -> Word {
        let degree = letters.iter().map(|&g| weights[g as usize]).sum();
        Word { degree, letters }
    }

    pub fn letter(g: u16, weights: &[u32]) -> Word {
        Word { degree: weights[g as usize], letters: vec![g] }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { degree: self.degree + other.degree, letters }
    }

    /// `left · self · right`.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Word {
        left.concat(self).concat(right)
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { degree: self.degree, letters }
    }

    /// The subword `letters[start..end]`.
    pub fn slice(&self, start: usize, end: usize, weights: &[u32]) -> Word {
        Word::new(self.letters[start..end].to_vec(), weights)
    }

    /// First position at which `pattern` occurs as a contiguous subword.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.len() > self.len() {
            return None;
        }
        if pattern.is_empty() {
            return Some(0);
        }
        self.letters
            .windows(pattern.len())
            .position(|w| w == pattern.letters.as_slice())
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        self.find(pattern).is_some()
    }

    /// Renders the word with generator names, grouping repeated letters as powers.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let g = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == g {
                j += 1;
            }
            let name = &names[g as usize];
            if j - i == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{}^{}", name, j - i));
            }
            i = j;
        }
        parts.join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.letters.iter().map(|g| format!("g{g}")).collect();
        write!(f, "{}", s.join("*"))
    }
}
