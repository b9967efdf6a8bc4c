//! Canonical PBW monomials.
//!
//! A monomial records the depths `n_1 >= n_2 >= ... >= n_k >= 1` of a
//! product of creation operators applied to a cyclic vector. Negative
//! Heisenberg modes commute, so the weakly decreasing depth sequence is a
//! canonical form: any permutation of the same multiset yields the same
//! monomial.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive depths; the empty sequence is
/// the vacuum-side monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwMonomial {
    depths: Vec<u32>,
}

impl PbwMonomial {
    /// The empty monomial.
    pub fn vacuum() -> Self {
        PbwMonomial { depths: Vec::new() }
    }

    /// Builds a monomial from depths in any order; rejects zero depths.
    pub fn new(mut depths: Vec<u32>) -> Result<Self> {
        if depths.contains(&0) {
            return Err(Error::InvalidParams("monomial depth must be >= 1".into()));
        }
        depths.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PbwMonomial { depths })
    }

    /// Total weight: the sum of the depths.
    pub fn weight(&self) -> u64 {
        self.depths.iter().map(|&d| d as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.depths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depths.is_empty()
    }

    pub fn is_vacuum(&self) -> bool {
        self.depths.is_empty()
    }

    pub fn depths(&self) -> &[u32] {
        &self.depths
    }

    pub fn max_depth(&self) -> u32 {
        self.depths.first().copied().unwrap_or(0)
    }

    pub fn count_depth(&self, depth: u32) -> usize {
        self.depths.iter().filter(|&&d| d == depth).count()
    }

    /// Multiplies by one more creation operator of the given depth.
    pub fn prepend(&self, depth: u32) -> Self {
        debug_assert!(depth >= 1);
        let pos = self.depths.partition_point(|&d| d >= depth);
        let mut depths = self.depths.clone();
        depths.insert(pos, depth);
        PbwMonomial { depths }
    }

    /// Removes one occurrence of `depth`, if present.
    pub fn remove_one(&self, depth: u32) -> Option<Self> {
        let pos = self.depths.iter().position(|&d| d == depth)?;
        let mut depths = self.depths.clone();
        depths.remove(pos);
        Some(PbwMonomial { depths })
    }
}

impl fmt::Display for PbwMonomial {
    /// `[3,1,1]`; the vacuum monomial prints as `[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.depths.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", d)?;
        }
        write!(f, "]")
    }
}

impl FromStr for PbwMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidParams(format!("monomial must look like [2,1]: {s:?}")))?;
        if inner.is_empty() {
            return Ok(PbwMonomial::vacuum());
        }
        let depths = inner
            .split(',')
            .map(|part| {
                part.parse::<u32>()
                    .map_err(|_| Error::InvalidParams(format!("invalid depth {part:?} in {s:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        PbwMonomial::new(depths)
    }
}

/// All partitions of `weight` with parts `>= min_part`, largest part first
/// within each partition, in a fixed deterministic order. `weight = 0`
/// yields the single empty partition.
pub fn partitions(weight: u32, min_part: u32) -> Vec<PbwMonomial> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        remaining: u32,
        max_part: u32,
        min_part: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<PbwMonomial>,
    ) {
        if remaining == 0 {
            out.push(PbwMonomial {
                depths: current.clone(),
            });
            return;
        }
        let top = remaining.min(max_part);
        let mut part = top;
        while part >= min_part.max(1) {
            current.push(part);
            rec(remaining - part, part, min_part, current, out);
            current.pop();
            part -= 1;
        }
    }
    rec(weight, weight.max(1), min_part, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_sorts_descending() {
        let a = PbwMonomial::new(vec![1, 3, 2, 3]).unwrap();
        let b = PbwMonomial::new(vec![3, 3, 2, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.depths(), &[3, 3, 2, 1]);
        assert_eq!(a.weight(), 9);
        assert!(PbwMonomial::new(vec![1, 0]).is_err());
    }

    #[test]
    fn prepend_and_remove() {
        let m = PbwMonomial::new(vec![2, 1]).unwrap();
        assert_eq!(m.prepend(3).depths(), &[3, 2, 1]);
        assert_eq!(m.prepend(1).depths(), &[2, 1, 1]);
        assert_eq!(m.prepend(2).depths(), &[2, 2, 1]);
        assert_eq!(m.remove_one(2).unwrap().depths(), &[1]);
        assert!(m.remove_one(5).is_none());
        assert_eq!(m.count_depth(1), 1);
        assert_eq!(m.max_depth(), 2);
        assert_eq!(PbwMonomial::vacuum().max_depth(), 0);
    }

    #[test]
    fn display_and_parse() {
        let m = PbwMonomial::new(vec![2, 1]).unwrap();
        assert_eq!(m.to_string(), "[2,1]");
        assert_eq!("[2,1]".parse::<PbwMonomial>().unwrap(), m);
        assert_eq!("[]".parse::<PbwMonomial>().unwrap(), PbwMonomial::vacuum());
        assert_eq!("[1,2]".parse::<PbwMonomial>().unwrap(), m);
        assert!("[2,]".parse::<PbwMonomial>().is_err());
        assert!("2,1".parse::<PbwMonomial>().is_err());
    }

    #[test]
    fn partition_counts() {
        // p(0..=8) = 1,1,2,3,5,7,11,15,22
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22];
        for (w, &count) in expected.iter().enumerate() {
            assert_eq!(partitions(w as u32, 1).len(), count, "weight {w}");
        }
        // parts >= 2: p(6) - p(5) = 4, p(10) - p(9) = 12
        assert_eq!(partitions(6, 2).len(), 4);
        assert_eq!(partitions(10, 2).len(), 12);
        assert_eq!(partitions(0, 2), vec![PbwMonomial::vacuum()]);
        assert_eq!(partitions(1, 2).len(), 0);
    }

    #[test]
    fn ordering_is_lexicographic_on_depths() {
        let vac = PbwMonomial::vacuum();
        let one = PbwMonomial::new(vec![1]).unwrap();
        let one_one = PbwMonomial::new(vec![1, 1]).unwrap();
        let two = PbwMonomial::new(vec![2]).unwrap();
        let mut v = vec![two.clone(), one_one.clone(), vac.clone(), one.clone()];
        v.sort();
        assert_eq!(v, vec![vac, one, one_one, two]);
    }
}
