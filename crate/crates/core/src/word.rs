//! Finite words: bit-strings addressing cylinders of the Cantor space, and
//! `L`/`R` paths addressing leaves of a tree.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A finite bit-string. Ordered lexicographically, a prefix sorting before
/// its extensions.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(Vec<bool>);

impl Bits {
    pub fn empty() -> Self {
        Bits(Vec::new())
    }

    pub fn from_bools(bits: impl IntoIterator<Item = bool>) -> Self {
        Bits(bits.into_iter().collect())
    }

    /// The `width` low-order bits of `value`, most significant first.
    pub fn from_index(value: u64, width: usize) -> Self {
        Bits((0..width).rev().map(|i| (value >> i) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn is_prefix_of(&self, other: &Bits) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn comparable(&self, other: &Bits) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// The remainder of `self` after removing `prefix`, if it is one.
    pub fn strip_prefix(&self, prefix: &Bits) -> Option<Bits> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|s| Bits(s.to_vec()))
    }

    pub fn concat(&self, tail: &Bits) -> Bits {
        let mut v = self.0.clone();
        v.extend_from_slice(&tail.0);
        Bits(v)
    }

    pub fn push(&self, bit: bool) -> Bits {
        let mut v = self.0.clone();
        v.push(bit);
        Bits(v)
    }

    pub fn last(&self) -> Option<bool> {
        self.0.last().copied()
    }

    pub fn parent(&self) -> Option<Bits> {
        if self.0.is_empty() {
            None
        } else {
            Some(Bits(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn sibling(&self) -> Option<Bits> {
        let mut v = self.0.clone();
        let last = v.last_mut()?;
        *last = !*last;
        Some(Bits(v))
    }

    /// All bit-strings of exactly `len` bits, in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = Bits> {
        (0..1u64 << len).map(move |i| Bits::from_index(i, len))
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Invalid(format!("bad bit {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Bits)
    }
}

/// A path from the root of a tree to one of its nodes; `false` is `L`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeafPath(Vec<bool>);

impl LeafPath {
    pub fn root() -> Self {
        LeafPath(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn steps(&self) -> &[bool] {
        &self.0
    }

    /// `side · self`, re-rooting the path under a new binary node.
    pub fn under(&self, right: bool) -> LeafPath {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(right);
        v.extend_from_slice(&self.0);
        LeafPath(v)
    }

    pub fn under_path(&self, prefix: &LeafPath) -> LeafPath {
        let mut v = prefix.0.clone();
        v.extend_from_slice(&self.0);
        LeafPath(v)
    }

    pub fn child(&self, right: bool) -> LeafPath {
        let mut v = self.0.clone();
        v.push(right);
        LeafPath(v)
    }

    pub fn split_first(&self) -> Option<(bool, LeafPath)> {
        self.0
            .split_first()
            .map(|(&h, rest)| (h, LeafPath(rest.to_vec())))
    }

    pub fn strip_prefix(&self, prefix: &LeafPath) -> Option<LeafPath> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|s| LeafPath(s.to_vec()))
    }
}

impl fmt::Display for LeafPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "R" } else { "L" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for LeafPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for LeafPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                'L' => Ok(false),
                'R' => Ok(true),
                other => Err(Error::Invalid(format!("bad leaf step {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(LeafPath)
    }
}
