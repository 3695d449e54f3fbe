//! Root systems and weight lattices of the finite-type simple Lie algebras.
//!
//! Nodes follow Bourbaki numbering. The Cartan matrix is
//! `a[i][j] = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)`, so the simple root
//! `alpha_j` written in the fundamental-weight basis is the `j`-th column.
//! Weights are kept in fundamental-weight coordinates, roots in simple-root
//! coordinates. Public node arguments are 1-based.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A family letter together with a rank, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawLieType", into = "RawLieType")]
pub struct LieType {
    family: Family,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct RawLieType {
    family: char,
    rank: usize,
}

impl TryFrom<RawLieType> for LieType {
    type Error = Error;
    fn try_from(raw: RawLieType) -> Result<Self> {
        let family = Family::from_letter(raw.family).ok_or(Error::InvalidType {
            family: raw.family,
            rank: raw.rank,
        })?;
        LieType::new(family, raw.rank)
    }
}

impl From<LieType> for RawLieType {
    fn from(t: LieType) -> Self {
        RawLieType {
            family: t.family.letter(),
            rank: t.rank,
        }
    }
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::InvalidType {
                family: family.letter(),
                rank,
            })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let bad = || Error::BadAlgebraName(s.to_string());
        let family = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
        let digits = chars.as_str().trim_start_matches('_');
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let rank = digits.parse().map_err(|_| bad())?;
        LieType::new(family, rank)
    }
}

/// Integer vector in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// `lambda_node`, 1-based.
    pub fn fundamental(rank: usize, node: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[node - 1] = 1;
        w
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Sum of the coordinates.
    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Integer vector in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![0; rank])
    }

    pub fn simple(rank: usize, node: usize) -> Self {
        let mut r = RootVector::zero(rank);
        r.0[node - 1] = 1;
        r
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Membership in the positive cone `Q^+`.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Weight(self.0.clone()))
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: Vec<Vec<i64>>,
    symmetrizers: Vec<i64>,
    positive_roots: Vec<RootVector>,
    highest_root: RootVector,
    weyl_vector: Weight,
    // det(cartan) * cartan^{-1}, exact.
    inverse_num: Vec<Vec<i64>>,
    det: i64,
}

/// Squared-length classes `d_i = (alpha_i, alpha_i) / 2`, shortest roots at 1.
fn root_lengths(t: LieType) -> Vec<i64> {
    let n = t.rank;
    match t.family {
        Family::A | Family::D | Family::E => vec![1; n],
        Family::B => {
            let mut d = vec![2; n];
            d[n - 1] = 1;
            d
        }
        Family::C => {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            d
        }
        Family::F => vec![2, 2, 1, 1],
        Family::G => vec![1, 3],
    }
}

/// Dynkin diagram edges, 0-based, Bourbaki numbering.
fn dynkin_edges(t: LieType) -> Vec<(usize, usize)> {
    let n = t.rank;
    match t.family {
        Family::A | Family::B | Family::C | Family::F | Family::G => {
            (0..n - 1).map(|i| (i, i + 1)).collect()
        }
        Family::D => {
            let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
            e.push((n - 3, n - 1));
            e
        }
        Family::E => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..n - 1).map(|i| (i, i + 1)));
            e
        }
    }
}

fn rational_inverse(m: &[Vec<i64>]) -> (Vec<Vec<BigRational>>, BigRational) {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrices are nonsingular");
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    (inv, det)
}

fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("entry fits in i64")
}

impl RootSystem {
    pub fn new(lie_type: LieType) -> Self {
        let n = lie_type.rank;
        let d = root_lengths(lie_type);
        let mut cartan = vec![vec![0i64; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in dynkin_edges(lie_type) {
            // (alpha_i, alpha_j) = -max(d_i, d_j) on an edge.
            let ip = d[i].max(d[j]);
            cartan[i][j] = -ip / d[i];
            cartan[j][i] = -ip / d[j];
        }

        let (inv, det) = rational_inverse(&cartan);
        assert!(det.is_integer() && det.is_positive());
        let det_int = det.to_integer();
        let inverse_num = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let v = x * BigRational::from_integer(det_int.clone());
                        assert!(v.is_integer());
                        to_i64(&v.to_integer())
                    })
                    .collect()
            })
            .collect();

        let positive_roots = Self::close_roots(&cartan);
        let highest_root = positive_roots.last().cloned().expect("nonempty root system");

        RootSystem {
            lie_type,
            cartan,
            symmetrizers: d,
            positive_roots,
            highest_root,
            weyl_vector: Weight(vec![1; n]),
            inverse_num,
            det: to_i64(&det_int),
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(Self::new(name.parse()?))
    }

    /// Positive roots by height, adding simple roots along unbroken strings.
    fn close_roots(cartan: &[Vec<i64>]) -> Vec<RootVector> {
        let n = cartan.len();
        let mut all: HashSet<Vec<i64>> = HashSet::new();
        let mut layer: BTreeSet<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut out = Vec::new();
        while !layer.is_empty() {
            all.extend(layer.iter().cloned());
            let mut next = BTreeSet::new();
            for beta in &layer {
                for i in 0..n {
                    // p: how far the i-string extends downward from beta.
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if all.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        next.insert(up);
                    }
                }
            }
            out.extend(layer.into_iter().map(RootVector));
            layer = next;
        }
        out
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `a_ij` for 0-based indices.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.symmetrizers
    }

    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &RootVector {
        &self.highest_root
    }

    pub fn weyl_vector(&self) -> &Weight {
        &self.weyl_vector
    }

    pub fn cartan_determinant(&self) -> i64 {
        self.det
    }

    /// Nodes adjacent to `k` in the Dynkin diagram (0-based).
    pub fn neighbors(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&j| j != k && self.cartan[k][j] != 0)
    }

    pub fn fundamental(&self, node: usize) -> Weight {
        Weight::fundamental(self.rank(), node)
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.rank())
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node == 0 || node > self.rank() {
            return Err(Error::NodeOutOfRange {
                node,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch(w.clone(), w.rank(), self.rank()));
        }
        Ok(())
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_weight(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.clone()));
        }
        Ok(())
    }

    pub fn root_to_weight(&self, r: &RootVector) -> Weight {
        let n = self.rank();
        Weight(
            (0..n)
                .map(|i| (0..n).map(|j| self.cartan[i][j] * r.0[j]).sum())
                .collect(),
        )
    }

    /// Root coordinates of `w` scaled by the Cartan determinant.
    fn scaled_root_coords(&self, w: &Weight) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.inverse_num[i][j] * w.0[j]).sum())
            .collect()
    }

    /// Root coordinates of `w`, if they are all integers.
    pub fn weight_to_root(&self, w: &Weight) -> Option<RootVector> {
        let scaled = self.scaled_root_coords(w);
        if scaled.iter().all(|c| c % self.det == 0) {
            Some(RootVector(scaled.into_iter().map(|c| c / self.det).collect()))
        } else {
            None
        }
    }

    /// The `eta` in `Q^+` with `lambda - mu = eta`, if one exists.
    pub fn weight_minus_in_roots(&self, lambda: &Weight, mu: &Weight) -> Option<RootVector> {
        self.weight_to_root(&lambda.sub(mu))
            .filter(RootVector::is_nonnegative)
    }

    /// Height of `w` (sum of its rational root coordinates) times the
    /// Cartan determinant.
    pub fn scaled_height(&self, w: &Weight) -> i64 {
        self.scaled_root_coords(w).iter().sum()
    }

    /// Sorts highest first: by height, then by coordinates, both descending.
    pub fn sort_weights_descending(&self, ws: &mut [Weight]) {
        ws.sort_by_cached_key(|w| std::cmp::Reverse((self.scaled_height(w), w.clone())));
    }

    /// Every dominant `mu` with `lambda - mu` in `Q^+`, highest first.
    ///
    /// Walks down by positive roots through dominant weights only; the
    /// dominance order on dominant weights is generated by such steps.
    pub fn dominant_weights_below(&self, lambda: &Weight) -> Result<Vec<Weight>> {
        self.check_dominant(lambda)?;
        let root_weights: Vec<Weight> = self
            .positive_roots
            .iter()
            .map(|r| self.root_to_weight(r))
            .collect();
        let mut seen: HashSet<Weight> = HashSet::new();
        seen.insert(lambda.clone());
        let mut stack = vec![lambda.clone()];
        while let Some(mu) = stack.pop() {
            for rw in &root_weights {
                let nu = mu.sub(rw);
                if nu.is_dominant() && !seen.contains(&nu) {
                    seen.insert(nu.clone());
                    stack.push(nu);
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        self.sort_weights_descending(&mut out);
        Ok(out)
    }

    /// The invariant form with `(alpha_i, alpha_i) = 2 d_i`.
    pub fn inner_product(&self, x: &Weight, y: &Weight) -> BigRational {
        // (lambda_k, lambda_j) = (A^{-1})_{jk} d_j
        let n = self.rank();
        let mut acc = BigInt::zero();
        for k in 0..n {
            if x.0[k] == 0 {
                continue;
            }
            for j in 0..n {
                let g = self.inverse_num[j][k] * self.symmetrizers[j];
                acc += BigInt::from(x.0[k]) * BigInt::from(y.0[j]) * BigInt::from(g);
            }
        }
        BigRational::new(acc, BigInt::from(self.det))
    }

    /// `(eta, w)` for `eta` in root coordinates; always an integer.
    pub fn root_pairing(&self, eta: &RootVector, w: &Weight) -> i64 {
        eta.0
            .iter()
            .zip(&self.symmetrizers)
            .zip(&w.0)
            .map(|((c, d), x)| c * d * x)
            .sum()
    }

    /// Simple reflection `s_i`, 0-based.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let c = w.0[i];
        if c == 0 {
            return w.clone();
        }
        let n = self.rank();
        Weight((0..n).map(|k| w.0[k] - c * self.cartan[k][i]).collect())
    }

    /// Moves `w` into the dominant chamber by simple reflections; returns
    /// the dominant representative and the number of reflections used.
    pub fn to_dominant(&self, w: &Weight) -> (Weight, usize) {
        let mut w = w.clone();
        let mut steps = 0;
        while let Some(i) = w.0.iter().position(|&c| c < 0) {
            w = self.reflect(&w, i);
            steps += 1;
        }
        (w, steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rs(name: &str) -> RootSystem {
        RootSystem::from_name(name).unwrap()
    }

    const ALL: &[&str] = &[
        "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "B5", "C2", "C3", "C4", "C5", "D4", "D5",
        "E6", "E7", "E8", "F4", "G2",
    ];

    #[test]
    fn type_validation() {
        assert!(LieType::new(Family::A, 0).is_err());
        assert!(LieType::new(Family::B, 1).is_err());
        assert!(LieType::new(Family::D, 3).is_err());
        assert!(LieType::new(Family::E, 9).is_err());
        assert!(LieType::new(Family::F, 3).is_err());
        assert!(LieType::new(Family::G, 3).is_err());
        assert!("X3".parse::<LieType>().is_err());
        assert!("B".parse::<LieType>().is_err());
        assert_eq!("e8".parse::<LieType>().unwrap().to_string(), "E8");
        for name in ALL {
            assert_eq!(name.parse::<LieType>().unwrap().to_string(), *name);
        }
    }

    #[test]
    fn a1_basics() {
        let r = rs("A1");
        assert_eq!(r.cartan(), &[vec![2]]);
        assert_eq!(r.positive_roots(), &[RootVector(vec![1])]);
        assert_eq!(r.highest_root(), &RootVector(vec![1]));
    }

    #[test]
    fn root_counts_and_highest_roots() {
        let expect: &[(&str, usize, &[i64])] = &[
            ("A3", 6, &[1, 1, 1]),
            ("B3", 9, &[1, 2, 2]),
            ("C3", 9, &[2, 2, 1]),
            ("D4", 12, &[1, 2, 1, 1]),
            ("G2", 6, &[3, 2]),
            ("F4", 24, &[2, 3, 4, 2]),
            ("E6", 36, &[1, 2, 2, 3, 2, 1]),
            ("E7", 63, &[2, 2, 3, 4, 3, 2, 1]),
            ("E8", 120, &[2, 3, 4, 6, 5, 4, 3, 2]),
        ];
        for (name, count, theta) in expect {
            let r = rs(name);
            assert_eq!(r.positive_roots().len(), *count, "{name}");
            assert_eq!(r.highest_root().coords(), *theta, "{name}");
        }
    }

    #[test]
    fn classical_root_count_formulas() {
        for n in 1..=5usize {
            assert_eq!(rs(&format!("A{n}")).positive_roots().len(), n * (n + 1) / 2);
        }
        for n in 2..=5usize {
            assert_eq!(rs(&format!("B{n}")).positive_roots().len(), n * n);
            assert_eq!(rs(&format!("C{n}")).positive_roots().len(), n * n);
        }
        for n in 4..=5usize {
            assert_eq!(rs(&format!("D{n}")).positive_roots().len(), n * (n - 1));
        }
    }

    #[test]
    fn highest_root_is_maximal() {
        for name in ALL {
            let r = rs(name);
            let theta = r.highest_root();
            let roots: HashSet<_> = r.positive_roots().iter().cloned().collect();
            for i in 1..=r.rank() {
                assert!(!roots.contains(&theta.add(&RootVector::simple(r.rank(), i))));
            }
            // theta is dominant and exceeds every positive root
            let tw = r.root_to_weight(theta);
            assert!(tw.is_dominant(), "{name}");
            for beta in r.positive_roots() {
                assert!(theta.0.iter().zip(&beta.0).all(|(a, b)| a >= b));
            }
        }
    }

    #[test]
    fn symmetrizable_and_well_formed() {
        for name in ALL {
            let r = rs(name);
            let a = r.cartan();
            let d = r.symmetrizers();
            for i in 0..r.rank() {
                assert_eq!(a[i][i], 2);
                for j in 0..r.rank() {
                    assert_eq!(d[i] * a[i][j], d[j] * a[j][i], "{name} {i} {j}");
                    if i != j {
                        assert!(a[i][j] <= 0);
                        assert_eq!(a[i][j] == 0, a[j][i] == 0);
                    }
                }
            }
        }
    }

    #[test]
    fn bourbaki_orientation() {
        // B_n: alpha_n short; C_n: alpha_n long; G2: alpha_1 short.
        assert_eq!(rs("B3").cartan()[2][1], -2);
        assert_eq!(rs("C3").cartan()[1][2], -2);
        assert_eq!(rs("G2").cartan(), &[vec![2, -3], vec![-1, 2]]);
        assert_eq!(rs("F4").cartan()[2][1], -2);
    }

    #[test]
    fn root_to_weight_examples() {
        let a2 = rs("A2");
        assert_eq!(a2.root_to_weight(&RootVector(vec![1, 0])), Weight(vec![2, -1]));
        assert!(a2.root_to_weight(&RootVector::zero(2)).is_zero());
        let g2 = rs("G2");
        assert_eq!(g2.root_to_weight(&RootVector(vec![0, 1])), Weight(vec![-3, 2]));
    }

    #[test]
    fn weight_minus_in_roots_examples() {
        let a2 = rs("A2");
        assert_eq!(
            a2.weight_minus_in_roots(&Weight(vec![1, 1]), &Weight(vec![0, 0])),
            Some(RootVector(vec![1, 1]))
        );
        let w = Weight(vec![3, 1]);
        assert_eq!(a2.weight_minus_in_roots(&w, &w), Some(RootVector::zero(2)));
        let a1 = rs("A1");
        assert_eq!(a1.weight_minus_in_roots(&Weight(vec![1]), &Weight(vec![0])), None);
        // integral but negative
        assert_eq!(a1.weight_minus_in_roots(&Weight(vec![0]), &Weight(vec![2])), None);
    }

    fn brute_force_below(r: &RootSystem, lambda: &Weight, bound: i64) -> BTreeSet<Weight> {
        let n = r.rank();
        let mut out = BTreeSet::new();
        let mut eta = vec![0i64; n];
        loop {
            let mu = lambda.sub(&r.root_to_weight(&RootVector(eta.clone())));
            if mu.is_dominant() {
                out.insert(mu);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                eta[i] += 1;
                if eta[i] <= bound {
                    break;
                }
                eta[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn dominant_weights_below_examples() {
        let a1 = rs("A1");
        assert_eq!(
            a1.dominant_weights_below(&Weight(vec![2])).unwrap(),
            vec![Weight(vec![2]), Weight(vec![0])]
        );
        let a2 = rs("A2");
        assert_eq!(
            a2.dominant_weights_below(&Weight(vec![1, 1])).unwrap(),
            vec![Weight(vec![1, 1]), Weight(vec![0, 0])]
        );
        for name in ALL {
            let r = rs(name);
            assert_eq!(r.dominant_weights_below(&r.zero_weight()).unwrap(), vec![r.zero_weight()]);
        }
        assert!(a2.dominant_weights_below(&Weight(vec![1, -1])).is_err());
    }

    #[test]
    fn dominant_weights_below_matches_box_search() {
        let cases: &[(&str, &[i64])] = &[
            ("A2", &[2, 2]),
            ("A3", &[1, 2, 1]),
            ("B3", &[1, 0, 2]),
            ("C3", &[0, 2, 1]),
            ("G2", &[2, 1]),
            ("D4", &[0, 2, 0, 0]),
            ("F4", &[1, 0, 0, 1]),
        ];
        for (name, l) in cases {
            let r = rs(name);
            let lambda = Weight(l.to_vec());
            // root coordinates of lambda bound those of any eta below it
            let bound = r.scaled_root_coords(&lambda).into_iter().max().unwrap() / r.det + 1;
            let got: BTreeSet<_> = r.dominant_weights_below(&lambda).unwrap().into_iter().collect();
            assert_eq!(got, brute_force_below(&r, &lambda, bound), "{name} {lambda}");
        }
    }

    #[test]
    fn inner_product_examples() {
        let a1 = rs("A1");
        let alpha = a1.root_to_weight(&RootVector(vec![1]));
        assert_eq!(a1.inner_product(&alpha, &alpha), BigRational::from_integer(2.into()));
        let a2 = rs("A2");
        let l1 = a2.fundamental(1);
        assert_eq!(
            a2.inner_product(&l1, &l1),
            BigRational::new(2.into(), 3.into())
        );
        assert!(a2.inner_product(&a2.zero_weight(), &l1).is_zero());
    }

    #[test]
    fn simple_roots_pair_with_fundamentals() {
        for name in ALL {
            let r = rs(name);
            let n = r.rank();
            for i in 1..=n {
                let alpha = r.root_to_weight(&RootVector::simple(n, i));
                for j in 1..=n {
                    let expect = if i == j { r.symmetrizers()[i - 1] } else { 0 };
                    assert_eq!(
                        r.inner_product(&alpha, &r.fundamental(j)),
                        BigRational::from_integer(expect.into()),
                        "{name} {i} {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn reflections_preserve_the_form() {
        let r = rs("F4");
        let x = Weight(vec![1, -2, 0, 3]);
        let y = Weight(vec![0, 1, 1, -1]);
        for i in 0..4 {
            assert_eq!(
                r.inner_product(&r.reflect(&x, i), &r.reflect(&y, i)),
                r.inner_product(&x, &y)
            );
        }
    }

    proptest! {
        #[test]
        fn root_to_weight_is_additive(
            idx in 0usize..ALL.len(),
            a in proptest::collection::vec(-5i64..6, 8),
            b in proptest::collection::vec(-5i64..6, 8),
        ) {
            let r = rs(ALL[idx]);
            let n = r.rank();
            let ra = RootVector(a[..n].to_vec());
            let rb = RootVector(b[..n].to_vec());
            let lhs = r.root_to_weight(&ra.add(&rb));
            let rhs = r.root_to_weight(&ra).add(&r.root_to_weight(&rb));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(r.weight_to_root(&r.root_to_weight(&ra)), Some(ra));
        }

        #[test]
        fn inner_product_is_symmetric_and_positive(
            idx in 0usize..ALL.len(),
            a in proptest::collection::vec(-4i64..5, 8),
            b in proptest::collection::vec(-4i64..5, 8),
        ) {
            let r = rs(ALL[idx]);
            let n = r.rank();
            let x = Weight(a[..n].to_vec());
            let y = Weight(b[..n].to_vec());
            prop_assert_eq!(r.inner_product(&x, &y), r.inner_product(&y, &x));
            let xx = r.inner_product(&x, &x);
            prop_assert!(x.is_zero() || xx.is_positive());
        }

        #[test]
        fn below_set_is_order_closed(idx in 0usize..6, a in proptest::collection::vec(0i64..3, 4)) {
            let names = ["A2", "A3", "B2", "C3", "G2", "B3"];
            let r = rs(names[idx]);
            let n = r.rank();
            let lambda = Weight(a[..n].to_vec());
            let below = r.dominant_weights_below(&lambda).unwrap();
            prop_assert!(below.contains(&lambda));
            let set: HashSet<_> = below.iter().cloned().collect();
            for mu in &below {
                for nu in r.dominant_weights_below(mu).unwrap() {
                    prop_assert!(set.contains(&nu));
                }
            }
        }
    }
}
