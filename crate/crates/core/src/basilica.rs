//! The Basilica automaton acting on binary words, and its Schreier graphs.
//!
//! ```text
//! a(0w) = 0 b(w)    a(1w) = 1 w
//! b(0w) = 1 a(w)    b(1w) = 0 w
//! ```
//!
//! The inverse recursions follow by inverting these:
//! `a⁻¹(0w) = 0 b⁻¹(w)`, `a⁻¹(1w) = 1w`, `b⁻¹(0w) = 1w`, `b⁻¹(1w) = 0 a⁻¹(w)`.

use std::fmt;
use std::str::FromStr;

use crate::multigraph::{HalfEdge, RotationGraph};
use crate::{Error, Result, DEFAULT_MAX_LEVEL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    AInv,
    B,
    BInv,
}

/// Port order used at every vertex of `Γ_n`.
pub const GENERATORS: [Generator; 4] = [Generator::A, Generator::AInv, Generator::B, Generator::BInv];

impl Generator {
    pub fn inverse(self) -> Self {
        match self {
            Generator::A => Generator::AInv,
            Generator::AInv => Generator::A,
            Generator::B => Generator::BInv,
            Generator::BInv => Generator::B,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Generator::A => "a",
            Generator::AInv => "a^-1",
            Generator::B => "b",
            Generator::BInv => "b^-1",
        }
    }

    /// Port index of this generator in [`GENERATORS`].
    pub fn port(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(Generator::A),
            "a^-1" | "a⁻¹" | "A" => Ok(Generator::AInv),
            "b" => Ok(Generator::B),
            "b^-1" | "b⁻¹" | "B" => Ok(Generator::BInv),
            _ => Err(Error::UnknownGenerator(s.to_string())),
        }
    }
}

/// A binary word; letter 0 is the leftmost letter and is acted on first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&bad) = letters.iter().find(|&&x| x > 1) {
            return Err(Error::InvalidLetter(char::from(b'0' + bad.min(9))));
        }
        Ok(Self { letters })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    /// The `index`-th word of length `n` in lexicographic order.
    pub fn from_index(n: usize, index: usize) -> Result<Self> {
        Self::new((0..n).map(|i| ((index >> (n - 1 - i)) & 1) as u8).collect())
    }

    pub fn index(&self) -> usize {
        self.letters.iter().fold(0, |acc, &x| (acc << 1) | x as usize)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn prefix(&self, len: usize) -> Result<Word> {
        Word::new(self.letters[..len.min(self.len())].to_vec())
    }

    pub fn suffix(&self, len: usize) -> Result<Word> {
        Word::new(self.letters[self.len().saturating_sub(len)..].to_vec())
    }

    /// The word with its last letter flipped.
    pub fn flip_last(&self) -> Word {
        let mut letters = self.letters.clone();
        if let Some(x) = letters.last_mut() {
            *x ^= 1;
        }
        Word { letters }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.letters {
            f.write_str(if x == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidLetter(other)),
            })
            .collect::<Result<Vec<u8>>>()?;
        Word::new(letters)
    }
}

/// All `2^n` words of length `n`, lexicographically.
pub fn all_words(n: usize) -> impl Iterator<Item = Word> {
    (0..1usize << n).map(move |i| Word::from_index(n, i).expect("n >= 1"))
}

fn act_in_place(g: Generator, letters: &mut [u8]) {
    use Generator::*;
    let mut state = g;
    for x in letters.iter_mut() {
        match (state, *x) {
            (A, 0) => state = B,
            (A, _) | (AInv, 1) => return,
            (B, 0) => {
                *x = 1;
                state = A;
            }
            (B, _) => {
                *x = 0;
                return;
            }
            (AInv, _) => state = BInv,
            (BInv, 0) => {
                *x = 1;
                return;
            }
            (BInv, _) => {
                *x = 0;
                state = AInv;
            }
        }
    }
}

pub fn apply(g: Generator, w: &Word) -> Result<Word> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut letters = w.letters.clone();
    act_in_place(g, &mut letters);
    Ok(Word { letters })
}

/// Apply `gs` in list order: the first generator acts first.
pub fn apply_sequence(gs: &[Generator], w: &Word) -> Result<Word> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut letters = w.letters.clone();
    for &g in gs {
        act_in_place(g, &mut letters);
    }
    Ok(Word { letters })
}

/// `Γ_n` with the default level cap.
pub fn build_schreier(n: usize) -> Result<RotationGraph> {
    build_schreier_capped(n, DEFAULT_MAX_LEVEL)
}

/// `Γ_n`: vertices are the words of length `n` in lexicographic order, ports
/// `a, a^-1, b, b^-1`, and `(v, s)` is paired with `(s(v), s^-1)`.
pub fn build_schreier_capped(n: usize, cap: usize) -> Result<RotationGraph> {
    if n == 0 || n > cap {
        return Err(Error::LevelOutOfRange { level: n, cap });
    }
    let mut builder = RotationGraph::builder();
    let words: Vec<Word> = all_words(n).collect();
    for w in &words {
        builder.add_vertex(w.to_string(), GENERATORS.iter().map(|g| g.label()))?;
    }
    for (i, w) in words.iter().enumerate() {
        for g in [Generator::A, Generator::B] {
            let target = apply(g, w)?.index();
            builder.connect(
                HalfEdge { vertex: i, port: g.port() },
                HalfEdge { vertex: target, port: g.inverse().port() },
            )?;
        }
    }
    builder.build()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuffixCheck {
    Holds,
    Fails,
    /// `a` fixes `v`, so the statement makes no claim.
    Vacuous,
}

impl SuffixCheck {
    /// `Vacuous` counts as true.
    pub fn holds_or_vacuous(self) -> bool {
        self != SuffixCheck::Fails
    }
}

/// Whether the last `|v|` letters of both `a(0^r v)` and `b(0^r v)` differ from `v`.
pub fn suffix_distinct_check(r: usize, v: &Word) -> Result<SuffixCheck> {
    if apply(Generator::A, v)? == *v {
        return Ok(SuffixCheck::Vacuous);
    }
    let w = Word::zeros(r)?.concat(v);
    for g in [Generator::A, Generator::B] {
        if apply(g, &w)?.suffix(v.len())? == *v {
            return Ok(SuffixCheck::Fails);
        }
    }
    Ok(SuffixCheck::Holds)
}
