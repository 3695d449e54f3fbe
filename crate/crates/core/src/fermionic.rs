//! Vacancy numbers and the fermionic multiplicity sum for tensor products of
//! Kirillov-Reshetikhin modules.
//!
//! For a factor list `(i_a, m_a)` and a configuration `nu`, the vacancy
//! number at node `k` and part size `n` is
//!
//! ```text
//! P(k, n) = sum_a min(n, m_a) [i_a = k]
//!         - 2 sum_h min(n, h) nu(k)_h
//!         + sum_{j != k} sum_h min(-a_jk n, -a_kj h) nu(j)_h
//! ```
//!
//! with `a_ij = <alpha_j, h_i>`. A configuration contributes the product of
//! `binom(P(k, n) + nu(k)_n, nu(k)_n)` over all `k` and `n >= 1`; it
//! contributes nothing as soon as some vacancy number is negative, since
//! then the binomial at that position (occupied or not) vanishes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bignum::{binomial, serde_biguint};
use crate::error::{Error, Result};
use crate::lie::{RootSystem, Weight};
use crate::partitions::{enumerate_configs, enumerate_partitions, NuConfig, PartitionMult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KrFactor {
    pub node: usize,
    pub level: usize,
}

impl KrFactor {
    pub fn new(node: usize, level: usize) -> Self {
        KrFactor { node, level }
    }
}

impl fmt::Display for KrFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.node, self.level)
    }
}

impl FromStr for KrFactor {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (node, level) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| format!("expected node:level, got {s:?}"))?;
        let node = node.trim().parse().map_err(|_| format!("bad node in {s:?}"))?;
        let level = level.trim().parse().map_err(|_| format!("bad level in {s:?}"))?;
        Ok(KrFactor { node, level })
    }
}

/// Ordered tensor factors, each node checked against the rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactorList {
    factors: Vec<KrFactor>,
}

impl FactorList {
    pub fn new(rs: &RootSystem, factors: Vec<KrFactor>) -> Result<Self> {
        for f in &factors {
            rs.check_node(f.node)?;
        }
        Ok(FactorList { factors })
    }

    pub fn single(rs: &RootSystem, node: usize, level: usize) -> Result<Self> {
        Self::new(rs, vec![KrFactor::new(node, level)])
    }

    pub fn factors(&self) -> &[KrFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn max_level(&self) -> usize {
        self.factors.iter().map(|f| f.level).max().unwrap_or(0)
    }

    /// `sum_a m_a lambda_{i_a}`.
    pub fn top_weight(&self, rank: usize) -> Weight {
        let mut w = Weight::zero(rank);
        for f in &self.factors {
            w.0[f.node - 1] += f.level as i64;
        }
        w
    }

    /// `sum_a min(n, m_a)` over factors sitting at 0-based node `k`.
    fn level_term(&self, k: usize, n: usize) -> i64 {
        self.factors
            .iter()
            .filter(|f| f.node - 1 == k)
            .map(|f| n.min(f.level) as i64)
            .sum()
    }

    /// Same factors in canonical (sorted) order.
    pub fn sorted(&self) -> FactorList {
        let mut factors = self.factors.clone();
        factors.sort();
        FactorList { factors }
    }
}

impl fmt::Display for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Dominant weight -> multiplicity; zero multiplicities are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Decomposition {
    entries: BTreeMap<Weight, BigUint>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionEntry {
    weight: Weight,
    #[serde(with = "serde_biguint")]
    multiplicity: BigUint,
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|(w, m)| DecompositionEntry {
                weight: w.clone(),
                multiplicity: m.clone(),
            })
            .collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Decomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<DecompositionEntry>::deserialize(d)?;
        let mut out = Decomposition::new();
        for e in entries {
            if !e.weight.is_dominant() {
                return Err(serde::de::Error::custom(format!(
                    "weight {} is not dominant",
                    e.weight
                )));
            }
            out.add(e.weight, e.multiplicity);
        }
        Ok(out)
    }
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    /// The irreducible module `V(w)`.
    pub fn irreducible(w: Weight) -> Self {
        let mut d = Self::new();
        d.add(w, BigUint::one());
        d
    }

    /// Adds `mult` to the multiplicity of `w`.
    pub fn add(&mut self, w: Weight, mult: BigUint) {
        debug_assert!(w.is_dominant());
        if mult.is_zero() {
            return;
        }
        *self.entries.entry(w).or_default() += mult;
    }

    pub fn get(&self, w: &Weight) -> BigUint {
        self.entries.get(w).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BigUint)> {
        self.entries.iter()
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.entries.keys()
    }

    pub fn max_multiplicity(&self) -> BigUint {
        self.entries.values().max().cloned().unwrap_or_default()
    }

    /// Entries ordered highest weight first.
    pub fn sorted_entries(&self, rs: &RootSystem) -> Vec<(Weight, BigUint)> {
        let mut ws: Vec<Weight> = self.entries.keys().cloned().collect();
        rs.sort_weights_descending(&mut ws);
        ws.into_iter()
            .map(|w| {
                let m = self.entries[&w].clone();
                (w, m)
            })
            .collect()
    }
}

impl FromIterator<(Weight, BigUint)> for Decomposition {
    fn from_iter<I: IntoIterator<Item = (Weight, BigUint)>>(iter: I) -> Self {
        let mut d = Decomposition::new();
        for (w, m) in iter {
            d.add(w, m);
        }
        d
    }
}

/// `min(-a_jk n, -a_kj h)`: contribution of a part of size `h` at node `j`
/// to the vacancy number at node `k`, part size `n` (0-based nodes).
fn neighbor_term(rs: &RootSystem, k: usize, j: usize, n: usize, h: usize) -> i64 {
    let outgoing = -rs.a(j, k) * n as i64;
    let incoming = -rs.a(k, j) * h as i64;
    outgoing.min(incoming)
}

/// Vacancy number `P(k, n)` for a 1-based node `k` and part size `n >= 1`.
pub fn vacancy(rs: &RootSystem, factors: &FactorList, config: &NuConfig, k: usize, n: usize) -> i64 {
    assert!(k >= 1 && k <= rs.rank(), "node {k} out of range");
    assert!(n >= 1, "part size must be positive");
    let k0 = k - 1;
    let mut p = factors.level_term(k0, n);
    for (h, c) in config.parts[k0].iter() {
        p -= 2 * n.min(h) as i64 * c as i64;
    }
    for j in rs.neighbors(k0) {
        for (h, c) in config.parts[j].iter() {
            p += neighbor_term(rs, k0, j, n, h) * c as i64;
        }
    }
    p
}

/// Part size beyond which every vacancy number is constant.
pub fn stabilization_bound(factors: &FactorList, config: &NuConfig) -> usize {
    3 * factors.max_level().max(config.max_part()).max(1)
}

/// The root coordinates `n_k` of `top_weight - lambda`, if nonnegative.
pub fn n_vector(rs: &RootSystem, factors: &FactorList, lambda: &Weight) -> Option<Vec<usize>> {
    let top = factors.top_weight(rs.rank());
    rs.weight_minus_in_roots(&top, lambda)
        .map(|eta| eta.0.iter().map(|&c| c as usize).collect())
}

/// Contribution of a single configuration to the multiplicity of `lambda`.
pub fn config_weight_term(
    rs: &RootSystem,
    factors: &FactorList,
    config: &NuConfig,
    lambda: &Weight,
) -> Result<BigUint> {
    rs.check_weight(lambda)?;
    let ns = n_vector(rs, factors, lambda).ok_or(Error::ConfigMismatch)?;
    if config.rank() != rs.rank() || config.totals() != ns {
        return Err(Error::ConfigMismatch);
    }
    let bound = stabilization_bound(factors, config);
    let mut term = BigUint::one();
    for k in 1..=rs.rank() {
        for n in 1..=bound {
            let p = vacancy(rs, factors, config, k, n);
            if p < 0 {
                return Ok(BigUint::zero());
            }
            let nu = config.parts[k - 1].mult(n) as u64;
            if nu > 0 {
                term *= binomial(p as u64 + nu, nu);
            }
        }
    }
    Ok(term)
}

/// `n_lambda` by summing `config_weight_term` over the full configuration
/// stream. Exponential in the root coordinates; kept as a reference for
/// [`fermionic_multiplicity`].
pub fn fermionic_multiplicity_by_enumeration(
    rs: &RootSystem,
    factors: &FactorList,
    lambda: &Weight,
) -> Result<BigUint> {
    rs.check_dominant(lambda)?;
    let Some(ns) = n_vector(rs, factors, lambda) else {
        return Ok(BigUint::zero());
    };
    let mut total = BigUint::zero();
    for config in enumerate_configs(&ns) {
        total += config_weight_term(rs, factors, &config, lambda)?;
    }
    Ok(total)
}

/// Depth-first evaluation of the fermionic sum. Nodes are assigned in
/// index order; once a node and all of its neighbours are assigned its
/// vacancy numbers are final, so a negative one prunes the whole subtree.
struct PrunedSum {
    choices: Vec<Vec<PartitionMult>>,
    // complete_at[t]: nodes whose vacancies are final after assigning node t
    complete_at: Vec<Vec<usize>>,
    // base[k][n-1]: level term
    base: Vec<Vec<i64>>,
    // own[k][p][n-1]: -2 sum_h min(n, h) nu_h for choice p at k
    own: Vec<Vec<Vec<i64>>>,
    // cross[k]: (j, [p][n-1]) neighbour contributions into k
    cross: Vec<Vec<(usize, Vec<Vec<i64>>)>>,
    // occupied[k][p]: (n, nu_n) for choice p at k
    occupied: Vec<Vec<Vec<(usize, u64)>>>,
    bound: usize,
}

impl PrunedSum {
    fn new(rs: &RootSystem, factors: &FactorList, ns: &[usize]) -> Self {
        let r = rs.rank();
        let bound = 3 * factors
            .max_level()
            .max(ns.iter().copied().max().unwrap_or(0))
            .max(1);
        let choices: Vec<Vec<PartitionMult>> = ns.iter().map(|&n| enumerate_partitions(n)).collect();
        let mut complete_at = vec![Vec::new(); r];
        for k in 0..r {
            let t = rs.neighbors(k).fold(k, usize::max);
            complete_at[t].push(k);
        }
        let base = (0..r)
            .map(|k| (1..=bound).map(|n| factors.level_term(k, n)).collect())
            .collect();
        let own = choices
            .iter()
            .map(|ps| {
                ps.iter()
                    .map(|p| {
                        (1..=bound)
                            .map(|n| p.iter().map(|(h, c)| -2 * (n.min(h) * c) as i64).sum())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let cross = (0..r)
            .map(|k| {
                rs.neighbors(k)
                    .map(|j| {
                        let table = choices[j]
                            .iter()
                            .map(|p| {
                                (1..=bound)
                                    .map(|n| {
                                        p.iter()
                                            .map(|(h, c)| neighbor_term(rs, k, j, n, h) * c as i64)
                                            .sum()
                                    })
                                    .collect()
                            })
                            .collect();
                        (j, table)
                    })
                    .collect()
            })
            .collect();
        let occupied = choices
            .iter()
            .map(|ps| {
                ps.iter()
                    .map(|p| p.iter().map(|(n, c)| (n, c as u64)).collect())
                    .collect()
            })
            .collect();
        PrunedSum {
            choices,
            complete_at,
            base,
            own,
            cross,
            occupied,
            bound,
        }
    }

    /// Product of binomials for a completed node, or `None` if some vacancy
    /// number is negative.
    fn node_factor(&self, k: usize, chosen: &[usize]) -> Option<BigUint> {
        let p = chosen[k];
        let mut vac = self.base[k].clone();
        for (v, o) in vac.iter_mut().zip(&self.own[k][p]) {
            *v += o;
        }
        for (j, table) in &self.cross[k] {
            for (v, c) in vac.iter_mut().zip(&table[chosen[*j]]) {
                *v += c;
            }
        }
        if vac.iter().any(|&v| v < 0) {
            return None;
        }
        let mut f = BigUint::one();
        for &(n, nu) in &self.occupied[k][p] {
            debug_assert!(n <= self.bound);
            f *= binomial(vac[n - 1] as u64 + nu, nu);
        }
        Some(f)
    }

    fn run(&self) -> BigUint {
        let mut chosen = vec![0; self.choices.len()];
        let mut total = BigUint::zero();
        self.descend(0, &mut chosen, BigUint::one(), &mut total);
        total
    }

    fn descend(&self, t: usize, chosen: &mut Vec<usize>, acc: BigUint, total: &mut BigUint) {
        if t == self.choices.len() {
            *total += acc;
            return;
        }
        'choice: for p in 0..self.choices[t].len() {
            chosen[t] = p;
            let mut acc = acc.clone();
            for &k in &self.complete_at[t] {
                match self.node_factor(k, chosen) {
                    Some(f) => {
                        if !f.is_one() {
                            acc *= f;
                        }
                    }
                    None => continue 'choice,
                }
            }
            self.descend(t + 1, chosen, acc, total);
        }
    }
}

/// `n_lambda`: multiplicity of `V(lambda)` in the tensor product.
pub fn fermionic_multiplicity(
    rs: &RootSystem,
    factors: &FactorList,
    lambda: &Weight,
) -> Result<BigUint> {
    rs.check_dominant(lambda)?;
    let Some(ns) = n_vector(rs, factors, lambda) else {
        return Ok(BigUint::zero());
    };
    Ok(PrunedSum::new(rs, factors, &ns).run())
}

/// Fermionic multiplicities of every dominant weight below the top weight.
pub fn fermionic_decomposition(rs: &RootSystem, factors: &FactorList) -> Decomposition {
    let top = factors.top_weight(rs.rank());
    let below = rs
        .dominant_weights_below(&top)
        .expect("top weight is dominant");
    below
        .into_iter()
        .map(|lambda| {
            let m = fermionic_multiplicity(rs, factors, &lambda).expect("dominant by construction");
            (lambda, m)
        })
        .collect()
}
