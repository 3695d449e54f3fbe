//! Classical representation theory used as an independent check on the
//! fermionic formula: Weyl's dimension formula, Freudenthal's weight
//! multiplicity recursion and Brauer-Klimyk tensor products.
//!
//! Only reflection walks are used, never explicit Weyl group element lists.
//! Full weight diagrams are built orbit by orbit, which is fine for the
//! classical and low-rank exceptional cases this is meant for.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fermionic::Decomposition;
use crate::lie::{RootSystem, Weight};

/// Weight -> multiplicity for a full (not only dominant) weight diagram.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightMultiplicityMap {
    entries: BTreeMap<Weight, u64>,
}

impl WeightMultiplicityMap {
    pub fn get(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }

    /// Number of distinct weights.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all multiplicities, i.e. the dimension.
    pub fn total(&self) -> u128 {
        self.entries.values().map(|&m| m as u128).sum()
    }
}

/// `prod_{alpha > 0} (lambda + rho, alpha) / (rho, alpha)`.
pub fn weyl_dim(rs: &RootSystem, lambda: &Weight) -> Result<BigUint> {
    rs.check_dominant(lambda)?;
    let shifted = lambda.add(rs.weyl_vector());
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for alpha in rs.positive_roots() {
        num *= rs.root_pairing(alpha, &shifted) as u64;
        den *= rs.root_pairing(alpha, rs.weyl_vector()) as u64;
    }
    if !(&num % &den).is_zero() {
        return Err(Error::NonIntegral("weyl_dim"));
    }
    Ok(num / den)
}

/// Dimension of a (reducible) module given by its decomposition.
pub fn decomposition_dimension(rs: &RootSystem, d: &Decomposition) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for (w, m) in d.iter() {
        total += weyl_dim(rs, w)? * m;
    }
    Ok(total)
}

/// Caches weight diagrams per highest weight for one root system.
pub struct RepOracle<'a> {
    rs: &'a RootSystem,
    cache: RwLock<HashMap<Weight, Arc<WeightMultiplicityMap>>>,
}

impl<'a> RepOracle<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        RepOracle {
            rs,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    pub fn weight_multiplicities(&self, lambda: &Weight) -> Result<Arc<WeightMultiplicityMap>> {
        if let Some(hit) = self.cache.read().expect("cache lock").get(lambda) {
            return Ok(Arc::clone(hit));
        }
        let computed = Arc::new(freudenthal(self.rs, lambda)?);
        let mut cache = self.cache.write().expect("cache lock");
        Ok(Arc::clone(cache.entry(lambda.clone()).or_insert(computed)))
    }

    /// `V(lambda) (x) V(mu)`, reflecting the weights of `V(lambda)` shifted
    /// by `mu + rho` into the dominant chamber.
    pub fn tensor_decompose(&self, lambda: &Weight, mu: &Weight) -> Result<Decomposition> {
        let rs = self.rs;
        rs.check_dominant(lambda)?;
        rs.check_dominant(mu)?;
        let rho = rs.weyl_vector();
        let shift = mu.add(rho);
        let weights = self.weight_multiplicities(lambda)?;
        let mut acc: HashMap<Weight, i128> = HashMap::new();
        for (nu, c) in weights.iter() {
            let (dominant, steps) = rs.to_dominant(&nu.add(&shift));
            // on a wall: cancels
            if dominant.0.contains(&0) {
                continue;
            }
            let signed = if steps % 2 == 0 { c as i128 } else { -(c as i128) };
            *acc.entry(dominant.sub(rho)).or_insert(0) += signed;
        }
        let mut out = Decomposition::new();
        for (w, m) in acc {
            assert!(m >= 0, "negative Brauer-Klimyk coefficient {m} at {w}");
            out.add(w, BigUint::from(m as u128));
        }
        Ok(out)
    }

    /// Bilinear extension of [`Self::tensor_decompose`].
    pub fn decomposition_tensor(&self, a: &Decomposition, b: &Decomposition) -> Result<Decomposition> {
        let mut out = Decomposition::new();
        for (lambda, ma) in a.iter() {
            for (mu, mb) in b.iter() {
                let coeff = ma * mb;
                for (nu, c) in self.tensor_decompose(lambda, mu)?.iter() {
                    out.add(nu.clone(), c * &coeff);
                }
            }
        }
        Ok(out)
    }
}

pub fn weight_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<WeightMultiplicityMap> {
    freudenthal(rs, lambda)
}

pub fn tensor_decompose(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<Decomposition> {
    RepOracle::new(rs).tensor_decompose(lambda, mu)
}

pub fn decomposition_tensor(
    rs: &RootSystem,
    a: &Decomposition,
    b: &Decomposition,
) -> Result<Decomposition> {
    RepOracle::new(rs).decomposition_tensor(a, b)
}

/// W-orbit of a dominant weight, walking down by simple reflections.
fn orbit(rs: &RootSystem, dominant: &Weight) -> Vec<Weight> {
    let mut seen = std::collections::HashSet::new();
    seen.insert(dominant.clone());
    let mut out = vec![dominant.clone()];
    let mut head = 0;
    while head < out.len() {
        let w = out[head].clone();
        head += 1;
        for i in 0..rs.rank() {
            if w.0[i] > 0 {
                let r = rs.reflect(&w, i);
                if seen.insert(r.clone()) {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// Freudenthal's recursion
///
/// ```text
/// ((lambda+rho, lambda+rho) - (mu+rho, mu+rho)) m(mu)
///     = 2 sum_{alpha > 0} sum_{k >= 1} m(mu + k alpha) (mu + k alpha, alpha)
/// ```
///
/// evaluated on dominant weights only; other weights take the multiplicity
/// of their dominant representative. The inner sums are accumulated along
/// root strings, `S_alpha(mu) = m(mu + alpha)(mu + alpha, alpha) + S_alpha(mu + alpha)`,
/// processing weights from the top down.
fn freudenthal(rs: &RootSystem, lambda: &Weight) -> Result<WeightMultiplicityMap> {
    let dominants = rs.dominant_weights_below(lambda)?;
    let mut weights: Vec<Weight> = dominants.iter().flat_map(|d| orbit(rs, d)).collect();
    rs.sort_weights_descending(&mut weights);
    let index: HashMap<&Weight, usize> = weights.iter().enumerate().map(|(i, w)| (w, i)).collect();

    let roots = rs.positive_roots();
    let root_weights: Vec<Weight> = roots.iter().map(|r| rs.root_to_weight(r)).collect();
    let nroots = roots.len();
    let shifted_top = lambda.add(&rs.weyl_vector().scale(2));

    let mut mult = vec![0u64; weights.len()];
    let mut strings = vec![0i128; weights.len() * nroots];
    for (i, w) in weights.iter().enumerate() {
        let mut sum: i128 = 0;
        for (r, (alpha, aw)) in roots.iter().zip(&root_weights).enumerate() {
            let up = w.add(aw);
            let s = match index.get(&up) {
                Some(&u) => {
                    debug_assert!(u < i);
                    let pair = rs.root_pairing(alpha, &up) as i128;
                    (mult[u] as i128)
                        .checked_mul(pair)
                        .and_then(|x| x.checked_add(strings[u * nroots + r]))
                        .ok_or(Error::Overflow("freudenthal"))?
                }
                None => 0,
            };
            strings[i * nroots + r] = s;
            sum += s;
        }
        mult[i] = if w == lambda {
            1
        } else if w.is_dominant() {
            // (lambda+rho)^2 - (w+rho)^2 = (lambda - w, lambda + w + 2 rho)
            let eta = rs
                .weight_minus_in_roots(lambda, w)
                .expect("weights of V(lambda) lie in lambda - Q+");
            let denom = rs.root_pairing(&eta, &shifted_top.add(w)) as i128;
            if denom <= 0 || (2 * sum) % denom != 0 {
                return Err(Error::NonIntegral("freudenthal"));
            }
            u64::try_from(2 * sum / denom).map_err(|_| Error::Overflow("freudenthal"))?
        } else {
            let (d, _) = rs.to_dominant(w);
            mult[index[&d]]
        };
    }

    Ok(WeightMultiplicityMap {
        entries: weights
            .into_iter()
            .zip(mult)
            .filter(|(_, m)| *m > 0)
            .collect(),
    })
}
