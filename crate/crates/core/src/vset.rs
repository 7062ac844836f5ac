use std::fmt;

use serde::{Serialize, Serializer};

/// A set of diagram vertices, stored as a bitmask over ids `0..16`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u16);

pub const MAX_VERTEX: usize = 15;

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        assert!(v <= MAX_VERTEX);
        VertexSet(1 << v)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v <= MAX_VERTEX && self.0 & (1 << v) != 0
    }

    pub fn with(self, v: usize) -> Self {
        assert!(v <= MAX_VERTEX);
        VertexSet(self.0 | (1 << v))
    }

    pub fn without(self, v: usize) -> Self {
        if v > MAX_VERTEX {
            return self;
        }
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..=MAX_VERTEX).filter(move |&v| self.contains(v))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Concatenated decimal ids, e.g. `"014"`. Ids above 9 are comma separated.
    pub fn compact(self) -> String {
        if self.iter().all(|v| v < 10) {
            self.iter().map(|v| char::from(b'0' + v as u8)).collect()
        } else {
            self.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, |s, v| s.with(v))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ops() {
        let a: VertexSet = [2, 3, 5].into_iter().collect();
        assert_eq!(a.len(), 3);
        assert!(a.contains(3) && !a.contains(4));
        assert_eq!(a.with(4).without(2).to_vec(), vec![3, 4, 5]);
        assert_eq!(a.compact(), "235");
        assert_eq!(format!("{a}"), "{2,3,5}");
        assert!(VertexSet::singleton(3).is_subset(a));
    }
}
