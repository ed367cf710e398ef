use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};

/// A vertex name: a non-empty run of non-whitespace characters.
///
/// Tokens made only of ASCII digits compare numerically and sort before every
/// other token; everything else compares lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexToken(String);

impl VertexToken {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(invalid("vertex token must be non-empty"));
        }
        if name.chars().any(char::is_whitespace) {
            return Err(invalid(format!("vertex token {name:?} contains whitespace")));
        }
        Ok(VertexToken(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn is_numeric(&self) -> bool {
        self.0.bytes().all(|b| b.is_ascii_digit())
    }
}

impl From<usize> for VertexToken {
    fn from(n: usize) -> Self {
        VertexToken(n.to_string())
    }
}

impl std::str::FromStr for VertexToken {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        VertexToken::new(s)
    }
}

fn cmp_numeric(a: &str, b: &str) -> Ordering {
    let a = a.trim_start_matches('0');
    let b = b.trim_start_matches('0');
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Ord for VertexToken {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_numeric(), other.is_numeric()) {
            // "07" and "7" are numerically equal; fall back to the raw string
            (true, true) => cmp_numeric(&self.0, &other.0).then_with(|| self.0.cmp(&other.0)),
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for VertexToken {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Serialize for VertexToken {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for VertexToken {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        VertexToken::new(s).map_err(serde::de::Error::custom)
    }
}

/// Shorthand used throughout tests and constructions. Panics on an invalid name.
pub fn tok(name: &str) -> VertexToken {
    VertexToken::new(name).expect("valid vertex token")
}
