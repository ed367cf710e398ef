use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::token::VertexToken;
use crate::error::{invalid, Result};

/// A finite sequence of vertex tokens, repeats allowed.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Word(Vec<VertexToken>);

impl Word {
    pub fn new(letters: Vec<VertexToken>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[VertexToken] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<VertexToken> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexToken> {
        self.0.iter()
    }

    /// Distinct letters in token order.
    pub fn alphabet(&self) -> BTreeSet<VertexToken> {
        self.0.iter().cloned().collect()
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        Word(parts.into_iter().flat_map(|w| w.0.iter().cloned()).collect())
    }

    /// Occurrence count per distinct letter.
    pub fn letter_counts(&self) -> BTreeMap<&VertexToken, usize> {
        let mut counts = BTreeMap::new();
        for letter in &self.0 {
            *counts.entry(letter).or_insert(0) += 1;
        }
        counts
    }
}

impl FromIterator<VertexToken> for Word {
    fn from_iter<I: IntoIterator<Item = VertexToken>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a VertexToken;
    type IntoIter = std::slice::Iter<'a, VertexToken>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace().map(VertexToken::new).collect::<Result<Vec<_>>>().map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The subsequence of `w` made of letters in `keep`, order preserved.
pub fn restrict(w: &Word, keep: &BTreeSet<VertexToken>) -> Word {
    w.iter().filter(|l| keep.contains(*l)).cloned().collect()
}

/// Whether `a` and `b` alternate in `w`.
///
/// The restriction of `w` to `{a, b}` alternates when no letter follows itself.
/// A letter that is absent from `w` therefore alternates with a letter that
/// occurs at most once, and with nothing else.
pub fn alternates(w: &Word, a: &VertexToken, b: &VertexToken) -> Result<bool> {
    if a == b {
        return Err(invalid(format!("alternation needs two distinct letters, got {a} twice")));
    }
    let mut last: Option<&VertexToken> = None;
    for letter in w.iter().filter(|l| *l == a || *l == b) {
        if last == Some(letter) {
            return Ok(false);
        }
        last = Some(letter);
    }
    Ok(true)
}

/// `Some(k)` when every distinct letter occurs exactly `k` times.
pub fn uniformity(w: &Word) -> Option<usize> {
    let counts = w.letter_counts();
    let mut values = counts.values();
    let k = *values.next()?;
    values.all(|&c| c == k).then_some(k)
}

/// Reverses a permutation; repeated letters are rejected.
pub fn reverse_perm(p: &Word) -> Result<Word> {
    let mut seen = HashSet::with_capacity(p.len());
    for letter in p {
        if !seen.insert(letter) {
            return Err(invalid(format!("{letter} repeats, so the word is not a permutation")));
        }
    }
    Ok(p.iter().rev().cloned().collect())
}

/// Consecutive permutations of one vertex set; their concatenation is a
/// `len()`-uniform word.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PermSequence {
    perms: Vec<Word>,
}

impl PermSequence {
    pub fn new(perms: Vec<Word>) -> Result<Self> {
        let first = perms.first().ok_or_else(|| invalid("a permutation sequence needs at least one permutation"))?;
        let vertices = first.alphabet();
        if vertices.len() != first.len() {
            return Err(invalid(format!("first block {first} repeats a letter")));
        }
        for (i, p) in perms.iter().enumerate().skip(1) {
            if p.len() != vertices.len() || p.alphabet() != vertices {
                return Err(invalid(format!("block {} ({p}) is not a permutation of {first}", i + 1)));
            }
        }
        Ok(PermSequence { perms })
    }

    pub fn perms(&self) -> &[Word] {
        &self.perms
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<VertexToken> {
        self.perms[0].alphabet()
    }

    pub fn word(&self) -> Word {
        Word::concat(&self.perms)
    }

    /// Applies `f` letter by letter to every permutation.
    pub fn relabel(&self, mut f: impl FnMut(&VertexToken) -> VertexToken) -> Result<PermSequence> {
        PermSequence::new(self.perms.iter().map(|p| p.iter().map(&mut f).collect()).collect())
    }

    pub fn reversed(&self) -> PermSequence {
        PermSequence { perms: self.perms.iter().map(|p| p.iter().rev().cloned().collect()).collect() }
    }
}

impl<'de> Deserialize<'de> for PermSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            perms: Vec<Word>,
        }
        let raw = Raw::deserialize(d)?;
        PermSequence::new(raw.perms).map_err(serde::de::Error::custom)
    }
}

/// Splits `w` into blocks of `|vertices|` letters; `Some` iff every block is a
/// permutation of `vertices`.
pub fn as_perm_sequence(w: &Word, vertices: &BTreeSet<VertexToken>) -> Option<PermSequence> {
    let n = vertices.len();
    if n == 0 || w.is_empty() || w.len() % n != 0 {
        return None;
    }
    let perms: Vec<Word> = w.letters().chunks(n).map(|c| Word(c.to_vec())).collect();
    if perms.iter().any(|p| p.alphabet() != *vertices) {
        return None;
    }
    PermSequence::new(perms).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::token::tok;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn set(names: &[&str]) -> BTreeSet<VertexToken> {
        names.iter().map(|s| tok(s)).collect()
    }

    const S_WORD: &str = "2 3 4 6 1 5 7 6 7 4 5 2 1 3 2 3 4 5 6 7 1";

    #[test]
    fn restrict_examples() {
        assert_eq!(restrict(&w("2 4 6 1 6 4 2 1"), &set(&["1", "2"])), w("2 1 2 1"));
        assert!(restrict(&w("2 4 6 1 6 4 2 1"), &BTreeSet::new()).is_empty());
        assert_eq!(restrict(&w("2 3 4 6 1 5 7"), &set(&["5", "7"])), w("5 7"));
    }

    #[test]
    fn alternation_examples() {
        let (a, b) = (tok("a"), tok("b"));
        assert!(alternates(&w("a b a b"), &a, &b).unwrap());
        assert!(!alternates(&w("a a b"), &a, &b).unwrap());
        assert!(alternates(&w(S_WORD), &tok("1"), &tok("2")).unwrap());
        assert!(alternates(&w("a b a"), &a, &b).unwrap());
        assert!(alternates(&w("b"), &a, &b).unwrap());
        assert!(!alternates(&w("b c b"), &a, &b).unwrap());
        assert!(alternates(&w("c"), &a, &b).unwrap());
        assert!(alternates(&w("a b"), &a, &a).is_err());
    }

    #[test]
    fn uniformity_examples() {
        assert_eq!(uniformity(&w("a b a b")), Some(2));
        assert_eq!(uniformity(&w("a a b")), None);
        assert_eq!(uniformity(&w(S_WORD)), Some(3));
        assert_eq!(uniformity(&Word::default()), None);
    }

    #[test]
    fn perm_sequence_split() {
        let v = set(&["1", "2", "3", "4", "5", "6", "7"]);
        let ps = as_perm_sequence(&w(S_WORD), &v).unwrap();
        let blocks: Vec<String> = ps.perms().iter().map(|p| p.to_string()).collect();
        assert_eq!(blocks, ["2 3 4 6 1 5 7", "6 7 4 5 2 1 3", "2 3 4 5 6 7 1"]);

        let ab = set(&["a", "b"]);
        let ps = as_perm_sequence(&w("a b b a"), &ab).unwrap();
        assert_eq!(ps.perms(), &[w("a b"), w("b a")]);
        assert!(as_perm_sequence(&w("a b a"), &ab).is_none());
        assert!(as_perm_sequence(&w("a a b b"), &ab).is_none());
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse_perm(&w("1 2 3")).unwrap(), w("3 2 1"));
        assert_eq!(reverse_perm(&w("1 2 3 0")).unwrap(), w("0 3 2 1"));
        let p = w("4 1 3 2");
        assert_eq!(reverse_perm(&reverse_perm(&p).unwrap()).unwrap(), p);
        assert!(reverse_perm(&w("1 2 1")).is_err());
    }

    #[test]
    fn perm_sequence_rejects_mismatched_blocks() {
        assert!(PermSequence::new(vec![w("a b"), w("a c")]).is_err());
        assert!(PermSequence::new(vec![w("a a")]).is_err());
        assert!(PermSequence::new(vec![]).is_err());
    }

    #[test]
    fn serde_word_is_text() {
        let json = serde_json::to_string(&w("0' 1 1'")).unwrap();
        assert_eq!(json, "\"0' 1 1'\"");
        let back: Word = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w("0' 1 1'"));
    }
}
