use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Positive weights `w_1, ..., w_n` with `n >= 3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    entries: Vec<i64>,
    total: i64,
}

impl WeightVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.len() < 3 {
            return Err(Error::TooFewWeights { min: 3, got: entries.len() });
        }
        if let Some(bad) = entries.iter().find(|&&w| w < 1) {
            return Err(Error::InvalidWeights(format!("entry {bad} is not positive")));
        }
        let total = entries.iter().sum();
        Ok(Self { entries, total })
    }

    /// `w^n`, the constant vector of length `n`.
    pub fn uniform(weight: i64, n: usize) -> Result<Self> {
        Self::new(vec![weight; n])
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// `|w|`.
    pub fn total(&self) -> i64 {
        self.total
    }

    /// `|w| / 2` when `|w|` is even.
    pub fn half(&self) -> Option<i64> {
        self.even_total().then_some(self.total / 2)
    }

    pub fn even_total(&self) -> bool {
        self.total % 2 == 0
    }

    pub fn all_even(&self) -> bool {
        self.entries.iter().all(|w| w % 2 == 0)
    }

    /// 1-based access `w_i`.
    pub fn get(&self, i: usize) -> i64 {
        self.entries[i - 1]
    }

    pub fn require_all_even(&self) -> Result<()> {
        if self.all_even() {
            Ok(())
        } else {
            Err(Error::OddWeights(self.entries.clone()))
        }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(first) = self.entries.first() {
            if self.entries.iter().all(|w| w == first) {
                return write!(f, "{}^{}", first, self.entries.len());
            }
        }
        let parts: Vec<String> = self.entries.iter().map(|w| w.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Parses comma lists with optional repeat notation: `1^8`, `2,4,2,4`,
/// `2^3,4^2`.
impl FromStr for WeightVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::InvalidWeights(format!("empty entry in {s:?}")));
            }
            let (value, count) = match part.split_once('^') {
                Some((v, c)) => (v.trim(), c.trim()),
                None => (part, "1"),
            };
            let value: i64 = value
                .parse()
                .map_err(|_| Error::InvalidWeights(format!("cannot parse {value:?}")))?;
            let count: usize = count
                .parse()
                .map_err(|_| Error::InvalidWeights(format!("cannot parse repeat count {count:?}")))?;
            entries.extend(std::iter::repeat_n(value, count));
        }
        Self::new(entries)
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}
