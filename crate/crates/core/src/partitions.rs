//! Integer partitions in multiplicity form and tuples of them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A partition stored as part size -> number of parts of that size.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionMult {
    counts: BTreeMap<usize, usize>,
}

impl PartitionMult {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds from a list of parts in any order; zero parts are ignored.
    pub fn from_parts(parts: &[usize]) -> Self {
        let mut counts = BTreeMap::new();
        for &p in parts.iter().filter(|&&p| p > 0) {
            *counts.entry(p).or_insert(0) += 1;
        }
        PartitionMult { counts }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().map(|(n, c)| n * c).sum()
    }

    /// Number of parts equal to `n`.
    pub fn mult(&self, n: usize) -> usize {
        self.counts.get(&n).copied().unwrap_or(0)
    }

    pub fn max_part(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `(part size, multiplicity)` pairs, ascending by size.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&n, &c)| (n, c))
    }

    /// Parts in weakly decreasing order.
    pub fn parts(&self) -> Vec<usize> {
        self.counts
            .iter()
            .rev()
            .flat_map(|(&n, &c)| std::iter::repeat_n(n, c))
            .collect()
    }
}

impl fmt::Display for PartitionMult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// One partition per node: the summation variable of the fermionic sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NuConfig {
    pub parts: Vec<PartitionMult>,
}

impl NuConfig {
    pub fn empty(rank: usize) -> Self {
        NuConfig {
            parts: vec![PartitionMult::empty(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn totals(&self) -> Vec<usize> {
        self.parts.iter().map(PartitionMult::total).collect()
    }

    pub fn max_part(&self) -> usize {
        self.parts.iter().map(PartitionMult::max_part).max().unwrap_or(0)
    }
}

/// All partitions of `n`, in reverse lexicographic order of their part
/// lists: `(n)`, `(n-1, 1)`, ..., `(1, ..., 1)`.
pub fn enumerate_partitions(n: usize) -> Vec<PartitionMult> {
    fn rec(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<PartitionMult>) {
        if rest == 0 {
            out.push(PartitionMult::from_parts(current));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            current.push(p);
            rec(rest - p, p, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Streams the Cartesian product of `enumerate_partitions(n_k)` over `k`,
/// the last node varying fastest.
pub fn enumerate_configs(n_vector: &[usize]) -> ConfigIter {
    ConfigIter::new(n_vector)
}

pub struct ConfigIter {
    choices: Vec<Vec<PartitionMult>>,
    cursor: Vec<usize>,
    done: bool,
}

impl ConfigIter {
    fn new(n_vector: &[usize]) -> Self {
        let choices: Vec<_> = n_vector.iter().map(|&n| enumerate_partitions(n)).collect();
        ConfigIter {
            cursor: vec![0; choices.len()],
            choices,
            done: false,
        }
    }

    /// Number of configurations still to be produced, from the start.
    pub fn total(&self) -> u128 {
        self.choices.iter().map(|c| c.len() as u128).product()
    }
}

impl Iterator for ConfigIter {
    type Item = NuConfig;

    fn next(&mut self) -> Option<NuConfig> {
        if self.done {
            return None;
        }
        let config = NuConfig {
            parts: self
                .cursor
                .iter()
                .zip(&self.choices)
                .map(|(&i, c)| c[i].clone())
                .collect(),
        };
        // odometer step
        let mut k = self.cursor.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.cursor[k] += 1;
            if self.cursor[k] < self.choices[k].len() {
                break;
            }
            self.cursor[k] = 0;
        }
        Some(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    /// p(n) by the recursion on the largest part, independent of the
    /// enumerator.
    fn partition_count(n: usize) -> u64 {
        fn p(n: usize, max: usize, memo: &mut Vec<Vec<Option<u64>>>) -> u64 {
            if n == 0 {
                return 1;
            }
            if max == 0 {
                return 0;
            }
            if let Some(v) = memo[n][max] {
                return v;
            }
            let v = p(n, max - 1, memo) + if max <= n { p(n - max, max, memo) } else { 0 };
            memo[n][max] = Some(v);
            v
        }
        let mut memo = vec![vec![None; n + 1]; n + 1];
        p(n, n, &mut memo)
    }

    #[test]
    fn small_cases() {
        assert_eq!(enumerate_partitions(0), vec![PartitionMult::empty()]);
        let three: Vec<_> = enumerate_partitions(3).iter().map(|p| p.parts()).collect();
        assert_eq!(three, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(enumerate_partitions(4).len(), 5);
    }

    #[test]
    fn counts_match_recursion() {
        assert_eq!(partition_count(4), 5);
        assert_eq!(partition_count(10), 42);
        for n in 0..=20 {
            let ps = enumerate_partitions(n);
            assert_eq!(ps.len() as u64, partition_count(n), "n = {n}");
            assert!(ps.iter().all(|p| p.total() == n));
            let distinct: HashSet<_> = ps.iter().collect();
            assert_eq!(distinct.len(), ps.len());
        }
    }

    #[test]
    fn multiplicity_form() {
        let p = PartitionMult::from_parts(&[2, 1, 2, 0]);
        assert_eq!(p.mult(2), 2);
        assert_eq!(p.mult(1), 1);
        assert_eq!(p.mult(3), 0);
        assert_eq!(p.total(), 5);
        assert_eq!(p.max_part(), 2);
        assert_eq!(p.to_string(), "(2,2,1)");
    }

    #[test]
    fn config_examples() {
        let all: Vec<_> = enumerate_configs(&[0, 0]).collect();
        assert_eq!(all, vec![NuConfig::empty(2)]);
        let ones: Vec<_> = enumerate_configs(&[1, 1]).collect();
        assert_eq!(ones.len(), 1);
        assert_eq!(ones[0].parts[0].parts(), vec![1]);
        assert_eq!(enumerate_configs(&[2, 3]).count(), 6);
        assert_eq!(enumerate_configs(&[]).count(), 1);
    }

    proptest! {
        #[test]
        fn config_stream_is_exact(ns in proptest::collection::vec(0usize..7, 1..5)) {
            let iter = enumerate_configs(&ns);
            let expected: u64 = ns.iter().map(|&n| partition_count(n)).product();
            prop_assert_eq!(iter.total(), expected as u128);
            let mut seen = HashSet::new();
            for c in iter {
                prop_assert_eq!(c.totals(), ns.clone());
                seen.insert(c);
            }
            prop_assert_eq!(seen.len() as u64, expected);
        }
    }
}
