//! Multisets over a `q`-symbol alphabet, as multiplicity vectors, and the
//! simplex `S_{n,q}` of all size-`n` multisets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multiset {
    counts: Vec<u32>,
}

impl Multiset {
    pub fn new(counts: Vec<u32>) -> Self {
        Multiset { counts }
    }

    pub fn empty(q: usize) -> Self {
        Multiset { counts: vec![0; q] }
    }

    /// Builds the multiplicity vector of a list of symbol indices.
    pub fn from_symbols(q: usize, symbols: &[usize]) -> Result<Self> {
        let mut counts = vec![0u32; q];
        for &a in symbols {
            let slot = counts.get_mut(a).ok_or_else(|| {
                Error::InvalidMultiset(format!("symbol {a} outside alphabet of size {q}"))
            })?;
            *slot += 1;
        }
        Ok(Multiset { counts })
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn q(&self) -> usize {
        self.counts.len()
    }

    /// Cardinality.
    pub fn n(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Symbols with repetition, ascending.
    pub fn symbols(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(a, &c)| std::iter::repeat_n(a, c as usize))
            .collect()
    }

    fn same_alphabet(&self, other: &Multiset) -> Result<()> {
        if self.q() == other.q() {
            Ok(())
        } else {
            Err(Error::InvalidMultiset(format!(
                "alphabet sizes differ: {} vs {}",
                self.q(),
                other.q()
            )))
        }
    }

    /// Multiset sum `self ⊎ other`.
    pub fn union(&self, other: &Multiset) -> Result<Multiset> {
        self.same_alphabet(other)?;
        Ok(Multiset::new(
            self.counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    /// `self - other`, requiring `other <= self` componentwise.
    pub fn difference(&self, other: &Multiset) -> Result<Multiset> {
        self.same_alphabet(other)?;
        if !other.is_submultiset_of(self) {
            return Err(Error::InvalidMultiset(
                "subtrahend is not contained in the multiset".into(),
            ));
        }
        Ok(Multiset::new(
            self.counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn is_submultiset_of(&self, other: &Multiset) -> bool {
        self.q() == other.q() && self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    /// `|S ∩ T|`.
    pub fn intersection_size(&self, other: &Multiset) -> u64 {
        self.counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a.min(b) as u64)
            .sum()
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Iterates `S_{n,q}` in descending lexicographic order of multiplicity
/// vectors, from `(n,0,...,0)` to `(0,...,0,n)`.
#[derive(Debug, Clone)]
pub struct Simplex {
    next: Option<Vec<u32>>,
}

impl Simplex {
    pub fn new(n: u32, q: usize) -> Self {
        let next = if q == 0 {
            (n == 0).then(Vec::new)
        } else {
            let mut v = vec![0u32; q];
            v[0] = n;
            Some(v)
        };
        Simplex { next }
    }
}

impl Iterator for Simplex {
    type Item = Multiset;

    fn next(&mut self) -> Option<Multiset> {
        let current = self.next.take()?;
        let q = current.len();
        if q >= 2 {
            if let Some(i) = (0..q - 1).rev().find(|&i| current[i] > 0) {
                let mut v = current.clone();
                let tail = v[q - 1];
                v[q - 1] = 0;
                v[i] -= 1;
                v[i + 1] = tail + 1;
                self.next = Some(v);
            }
        }
        Some(Multiset::new(current))
    }
}

/// Every `E <= S` componentwise with `|E| = r`.
pub fn submultisets_of_size(s: &Multiset, r: u64) -> Vec<Multiset> {
    fn rec(s: &[u32], i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Multiset>) {
        if i == s.len() {
            if left == 0 {
                out.push(Multiset::new(cur.clone()));
            }
            return;
        }
        let max = (s[i] as u64).min(left);
        for take in (0..=max).rev() {
            cur.push(take as u32);
            rec(s, i + 1, left - take, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(s.counts(), 0, r, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::simplex_size;

    #[test]
    fn simplex_order_and_size() {
        let all: Vec<Vec<u32>> = Simplex::new(2, 3).map(|m| m.counts().to_vec()).collect();
        assert_eq!(
            all,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        for q in 1..=5usize {
            for n in 0..=7u32 {
                let v: Vec<Multiset> = Simplex::new(n, q).collect();
                assert_eq!(v.len() as u128, simplex_size(n as u64, q as u64).unwrap());
                assert!(v.windows(2).all(|w| w[0] > w[1]));
                assert!(v.iter().all(|m| m.n() == n as u64));
            }
        }
    }

    #[test]
    fn symbol_lists() {
        let m = Multiset::from_symbols(4, &[0, 1, 1]).unwrap();
        assert_eq!(m.counts(), &[1, 2, 0, 0]);
        assert_eq!(m.symbols(), vec![0, 1, 1]);
        assert!(Multiset::from_symbols(2, &[2]).is_err());
    }

    #[test]
    fn union_and_difference() {
        let a = Multiset::new(vec![1, 2, 0]);
        let b = Multiset::new(vec![0, 1, 1]);
        let u = a.union(&b).unwrap();
        assert_eq!(u.counts(), &[1, 3, 1]);
        assert_eq!(u.difference(&b).unwrap(), a);
        assert!(a.difference(&b).is_err());
        assert!(a.union(&Multiset::empty(2)).is_err());
    }

    #[test]
    fn submultisets() {
        let s = Multiset::new(vec![1, 2, 0, 0]);
        let subs = submultisets_of_size(&s, 1);
        assert_eq!(subs.len(), 2);
        assert_eq!(submultisets_of_size(&s, 3), vec![s.clone()]);
        assert_eq!(submultisets_of_size(&s, 0), vec![Multiset::empty(4)]);
        assert!(submultisets_of_size(&s, 4).is_empty());
    }
}
