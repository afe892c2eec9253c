//! Integer-partition calculus: dominance order, part-wise sums and
//! multiples, gcd of parts, enumeration.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition: weakly decreasing positive parts. The empty partition is
/// the partition of 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        if parts.last() == Some(&0) {
            return Err(Error::InvalidSpec("partition with zero part".into()));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Dominance: every prefix sum of `self` is at most the corresponding
    /// prefix sum of `other`. Only defined between partitions of one size.
    pub fn dominated_by(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        let mut a = 0u64;
        let mut b = 0u64;
        for i in 0..self.parts.len().max(other.parts.len()) {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Part-wise sum after zero-padding the shorter partition.
    pub fn sum(&self, other: &Partition) -> Partition {
        let len = self.parts.len().max(other.parts.len());
        let parts = (0..len)
            .map(|i| {
                self.parts.get(i).copied().unwrap_or(0) + other.parts.get(i).copied().unwrap_or(0)
            })
            .collect();
        Partition { parts }
    }

    /// `d.λ`: every part multiplied by `d` (the partition added `d` times).
    pub fn multiple(&self, d: u64) -> Partition {
        assert!(d >= 1);
        Partition {
            parts: self.parts.iter().map(|p| p * d).collect(),
        }
    }

    /// Inverse of [`multiple`](Self::multiple); errors on a part `d` does
    /// not divide.
    pub fn divide_exact(&self, d: u64) -> Result<Partition> {
        assert!(d >= 1);
        let parts = self
            .parts
            .iter()
            .map(|&p| {
                if p % d == 0 {
                    Ok(p / d)
                } else {
                    Err(Error::NonDivisiblePart {
                        part: p,
                        divisor: d,
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Partition { parts })
    }

    /// gcd of all parts; 0 for the empty partition.
    pub fn gcd_parts(&self) -> u64 {
        self.parts.iter().fold(0, |g, &p| g.gcd(&p))
    }
}

/// Partitions of one integer are ordered as they are enumerated:
/// reverse-lexicographically, `(m)` first and `(1, ..., 1)` last.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.parts.len().max(other.parts.len());
        for i in 0..len {
            let a = self.parts.get(i).copied().unwrap_or(u64::MAX);
            let b = other.parts.get(i).copied().unwrap_or(u64::MAX);
            match b.cmp(&a) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u64>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `m` in reverse-lexicographic order.
pub fn enumerate_partitions(m: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    descend(m, m, &mut prefix, &mut out);
    out
}

fn descend(remaining: u64, max_part: u64, prefix: &mut Vec<u64>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: prefix.clone(),
        });
        return;
    }
    let top = remaining.min(max_part);
    for part in (1..=top).rev() {
        prefix.push(part);
        descend(remaining - part, part, prefix, out);
        prefix.pop();
    }
}

/// Conjugate (transposed) partition. Exposed to document the labelling
/// convention: all partition labels in this crate are normalised so that
/// `(1, ..., 1)` labels the trivial character; tables using the opposite
/// convention differ from ours by this involution.
pub fn conjugate(p: &Partition) -> Partition {
    let parts = &p.parts;
    let rows = parts.first().copied().unwrap_or(0);
    let conj = (1..=rows)
        .map(|i| parts.iter().filter(|&&p| p >= i).count() as u64)
        .collect();
    Partition { parts: conj }
}
