//! Integer partitions and Young-diagram combinatorics.
//!
//! A partition labels a Specht-module class `[S^μ]`. Parts are always kept
//! weakly decreasing, so structural equality is equality of classes.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::Error;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from arbitrary positive parts, sorting them into
    /// weakly decreasing order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Caller guarantees positive, weakly decreasing parts.
    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Column lengths of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|i| self.parts.iter().take_while(|&&p| p >= i).count() as u32)
            .collect();
        Partition { parts }
    }

    /// All partitions reachable by adding one box, ordered by the row that
    /// receives it (top to bottom). The last entry opens a new row.
    pub fn addable_results(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..=self.parts.len() {
            let current = self.parts.get(i).copied().unwrap_or(0);
            if i == 0 || self.parts[i - 1] > current {
                let mut parts = self.parts.clone();
                if i == parts.len() {
                    parts.push(1);
                } else {
                    parts[i] += 1;
                }
                out.push(Partition { parts });
            }
        }
        out
    }

    /// All partitions reachable by removing one box, ordered by row index.
    pub fn removable_results(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            let next = self.parts.get(i + 1).copied().unwrap_or(0);
            if self.parts[i] > next {
                let mut parts = self.parts.clone();
                parts[i] -= 1;
                if parts[i] == 0 {
                    parts.pop();
                }
                out.push(Partition { parts });
            }
        }
        out
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.parts.iter().peekable(), other.parts.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x >= y {
                        parts.push(x);
                        a.next();
                    } else {
                        parts.push(y);
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    parts.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    parts.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Partition { parts }
    }

    /// Inserts a row of `j` boxes.
    pub fn insert_row(&self, j: u32) -> Result<Partition, Error> {
        if j == 0 {
            return Err(Error::domain("cannot insert a row of zero boxes"));
        }
        let at = self.parts.iter().take_while(|&&p| p >= j).count();
        let mut parts = self.parts.clone();
        parts.insert(at, j);
        Ok(Partition { parts })
    }

    /// Distinct part values in decreasing order with their multiplicities.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Number of standard Young tableaux of this shape, by the box-removal
    /// recursion `f^p = Σ f^q` over `q` in `removable_results(p)`.
    pub fn standard_tableaux_count(&self) -> BigUint {
        fn go(p: &Partition, memo: &mut HashMap<Partition, BigUint>) -> BigUint {
            if p.is_empty() {
                return BigUint::one();
            }
            if let Some(v) = memo.get(p) {
                return v.clone();
            }
            let total = p
                .removable_results()
                .iter()
                .fold(BigUint::default(), |acc, q| acc + go(q, memo));
            memo.insert(p.clone(), total.clone());
            total
        }
        go(self, &mut HashMap::new())
    }

    /// Every partition of `n`, in reverse lexicographic order starting from `(n)`.
    pub fn all(n: u32) -> Vec<Partition> {
        fn go(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: prefix.clone() });
                return;
            }
            for p in (1..=remaining.min(max)).rev() {
                prefix.push(p);
                go(remaining - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Every partition of size at most `n`, grouped by increasing size.
    pub fn all_up_to(n: u32) -> Vec<Partition> {
        (0..=n).flat_map(Partition::all).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::text::parse_partition(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[4, 2, 1]).conjugate(), p(&[3, 2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[5, 5]).conjugate(), p(&[2, 2, 2, 2, 2]));
    }

    #[test]
    fn addable_examples() {
        assert_eq!(p(&[1]).addable_results(), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(
            p(&[2, 1]).addable_results(),
            vec![p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1])]
        );
        assert_eq!(Partition::empty().addable_results(), vec![p(&[1])]);
    }

    #[test]
    fn addable_count_is_distinct_parts_plus_one() {
        for q in Partition::all_up_to(9) {
            assert_eq!(q.addable_results().len(), q.multiplicities().len() + 1);
        }
    }

    #[test]
    fn removable_examples() {
        assert_eq!(p(&[2, 1]).removable_results(), vec![p(&[1, 1]), p(&[2])]);
        assert_eq!(p(&[1]).removable_results(), vec![Partition::empty()]);
        assert_eq!(p(&[3, 3]).removable_results(), vec![p(&[3, 2])]);
    }

    #[test]
    fn union_examples() {
        assert_eq!(p(&[2, 1]).union(&p(&[3, 1])), p(&[3, 2, 1, 1]));
        assert_eq!(p(&[4, 2]).union(&Partition::empty()), p(&[4, 2]));
        assert_eq!(p(&[1, 1]).union(&p(&[1])), p(&[1, 1, 1]));
    }

    #[test]
    fn insert_row_examples() {
        assert_eq!(p(&[5, 2, 1]).insert_row(4).unwrap(), p(&[5, 4, 2, 1]));
        assert_eq!(Partition::empty().insert_row(3).unwrap(), p(&[3]));
        assert_eq!(p(&[2, 2]).insert_row(2).unwrap(), p(&[2, 2, 2]));
        assert!(p(&[2]).insert_row(0).is_err());
    }

    #[test]
    fn multiplicities_examples() {
        assert_eq!(p(&[2, 2, 1]).multiplicities(), vec![(2, 2), (1, 1)]);
        assert!(Partition::empty().multiplicities().is_empty());
        assert_eq!(p(&[3, 3, 3]).multiplicities(), vec![(3, 3)]);
    }

    #[test]
    fn syt_examples() {
        assert_eq!(p(&[2, 1]).standard_tableaux_count(), BigUint::from(2u32));
        assert_eq!(p(&[7]).standard_tableaux_count(), BigUint::from(1u32));
        assert_eq!(p(&[2, 2]).standard_tableaux_count(), BigUint::from(2u32));
    }

    #[test]
    fn new_rejects_zero_and_sorts() {
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(p(&[1, 3, 2]).parts(), &[3, 2, 1]);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }
}
