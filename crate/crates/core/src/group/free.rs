use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{check_cap, Group, GroupDescriptor};
use crate::error::{Error, Result};

/// Letter names for generators; `e` is reserved for the identity.
const ALPHABET: &[u8] = b"abcdfghijklmnopqrstuvwxyz";

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(gen: u32, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn to_char(self) -> char {
        let c = ALPHABET[self.gen as usize] as char;
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }
}

/// A reduced word in a free group.
///
/// Words are ordered shortlex (length first, then letters with
/// `a < a^-1 < b < b^-1 < ...`). Displayed with lowercase letters for
/// generators, uppercase for inverses and `e` for the empty word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Accepts an already reduced sequence, rejecting any cancelling pair.
    pub fn try_reduced(letters: Vec<Letter>) -> Result<Self> {
        let w = Word(letters);
        if !w.is_reduced() {
            return Err(Error::UnreducedWord(w.to_string()));
        }
        Ok(w)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inv())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::reduce(self.0.iter().chain(other.0.iter()).copied())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
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
            return f.write_str("e");
        }
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses strings such as `aB`, `a b^-1` or `e`. The input must already
    /// be reduced.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "e" || t == "1" {
            return Ok(Word::identity());
        }
        let bytes: Vec<char> = t.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '.').collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let lower = c.to_ascii_lowercase() as u8;
            let gen = ALPHABET
                .iter()
                .position(|&a| a == lower)
                .ok_or_else(|| Error::WordParse(s.to_string()))? as u32;
            let mut inverse = c.is_ascii_uppercase();
            i += 1;
            if bytes.get(i) == Some(&'^') {
                let rest: String = bytes[i + 1..].iter().take(2).collect();
                if rest == "-1" {
                    inverse = !inverse;
                    i += 3;
                } else if rest.starts_with('1') {
                    i += 2;
                } else {
                    return Err(Error::WordParse(s.to_string()));
                }
            }
            letters.push(Letter::new(gen, inverse));
        }
        Word::try_reduced(letters)
    }
}

impl TryFrom<String> for Word {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

/// The free group on `rank` generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGroup {
    rank: u32,
}

impl FreeGroup {
    pub fn new(rank: u32) -> Result<Self> {
        if rank == 0 || rank as usize > ALPHABET.len() {
            return Err(Error::InvalidArgument(format!(
                "free group rank must lie in 1..={}",
                ALPHABET.len()
            )));
        }
        Ok(FreeGroup { rank })
    }

    /// The free group on `a`, `b`.
    pub fn f2() -> Self {
        FreeGroup { rank: 2 }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn generator(&self, i: u32) -> Word {
        assert!(i < self.rank, "generator {i} out of range");
        Word::letter(Letter::new(i, false))
    }

    /// All letters `a, a^-1, b, b^-1, ...` in shortlex letter order.
    pub fn letters(&self) -> Vec<Letter> {
        (0..self.rank).flat_map(|g| [Letter::new(g, false), Letter::new(g, true)]).collect()
    }

    pub fn validate(&self, w: &Word) -> Result<()> {
        if let Some(l) = w.0.iter().find(|l| l.gen >= self.rank) {
            return Err(Error::InvalidArgument(format!(
                "letter {} outside free group of rank {}",
                l.to_char(),
                self.rank
            )));
        }
        if !w.is_reduced() {
            return Err(Error::UnreducedWord(w.to_string()));
        }
        Ok(())
    }

    /// Number of reduced words of length at most `r`.
    pub fn ball_size(&self, r: usize) -> usize {
        let k = 2 * self.rank as usize;
        let mut total: usize = 1;
        let mut sphere: usize = 1;
        for j in 1..=r {
            sphere = if j == 1 { k } else { sphere.saturating_mul(k - 1) };
            total = total.saturating_add(sphere);
        }
        total
    }

    /// Reduced words of length at most `r`, in shortlex order.
    pub fn ball(&self, r: usize) -> Result<Vec<Word>> {
        check_cap(self.ball_size(r))?;
        let letters = self.letters();
        let mut out = vec![Word::identity()];
        let mut sphere = vec![Word::identity()];
        for _ in 0..r {
            let mut next = Vec::with_capacity(sphere.len() * letters.len());
            for w in &sphere {
                for &l in &letters {
                    if w.0.last() != Some(&l.inv()) {
                        let mut v = w.0.clone();
                        v.push(l);
                        next.push(Word(v));
                    }
                }
            }
            out.extend(next.iter().cloned());
            sphere = next;
        }
        Ok(out)
    }
}

impl Group for FreeGroup {
    type Elem = Word;

    fn identity(&self) -> Word {
        Word::identity()
    }

    fn mul(&self, x: &Word, y: &Word) -> Word {
        x.concat(y)
    }

    fn inv(&self, x: &Word) -> Word {
        x.inverse()
    }

    fn elements(&self) -> Option<Vec<Word>> {
        None
    }

    fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor::Free { rank: self.rank }
    }
}
