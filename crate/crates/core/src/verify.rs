//! Executable checks comparing the fermionic sum with the branching sets,
//! the exceptional tables and the classical oracle.
//!
//! Every check returns a [`VerificationReport`]; a failed comparison is
//! report content, never an `Err`. Errors are reserved for inputs outside
//! a check's domain (wrong family, bad node).

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bignum::serde_biguint;
use crate::error::{Error, Result};
use crate::fermionic::{fermionic_decomposition, Decomposition, FactorList, KrFactor};
use crate::kr_tables::{exceptional_nodes, exceptional_table, kr_dimension, pim_recursive};
use crate::lie::{Family, LieType, RootSystem, Weight};
use crate::rep_oracle::{decomposition_dimension, decomposition_tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// Single-factor fermionic decomposition equals the branching set.
    KrBranching,
    /// Type A fermionic decomposition equals the tensor product of irreducibles.
    TypeATensor,
    /// Single-factor fermionic decomposition equals the tabulated one.
    ExceptionalTable,
    /// Dimension of the fermionic decomposition equals the product of factor dimensions.
    DimensionConservation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
}

/// What a passing report establishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// The compared statement is a theorem in this range.
    Theorem,
    /// A necessary consequence of an unproven identity.
    ConjectureConsistent,
    /// Agreement with a reference table.
    ReferenceTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scope {
    pub algebra: LieType,
    pub factors: FactorList,
}

/// The quantity a counterexample disagrees on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Probe {
    /// Multiplicity of this highest weight.
    Weight(Weight),
    /// A named scalar, e.g. `"dimension"`.
    Quantity(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub input: Probe,
    #[serde(with = "serde_biguint")]
    pub expected: BigUint,
    #[serde(with = "serde_biguint")]
    pub got: BigUint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: Claim,
    pub scope: Scope,
    pub status: Status,
    pub basis: Basis,
    /// Fermionic decomposition of the factor list.
    pub decomposition: Decomposition,
    pub counterexamples: Vec<Counterexample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl VerificationReport {
    fn new(
        claim: Claim,
        rs: &RootSystem,
        factors: FactorList,
        basis: Basis,
        decomposition: Decomposition,
        counterexamples: Vec<Counterexample>,
        elapsed: Duration,
    ) -> Self {
        let status = if counterexamples.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        VerificationReport {
            claim,
            scope: Scope {
                algebra: rs.lie_type(),
                factors,
            },
            status,
            basis,
            decomposition,
            counterexamples,
            note: None,
            metadata: Some(Metadata {
                elapsed_ms: elapsed.as_secs_f64() * 1e3,
            }),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Drops timing so that the serialized report depends only on the input.
    pub fn without_metadata(mut self) -> Self {
        self.metadata = None;
        self
    }

    /// One-line summary, e.g. `pass kr-branching B3 2:1`.
    pub fn summary(&self) -> String {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        format!(
            "{status} {} {} {} ({})",
            claim_name(self.claim),
            self.scope.algebra,
            self.scope.factors,
            basis_name(self.basis)
        )
    }
}

pub fn claim_name(c: Claim) -> &'static str {
    match c {
        Claim::KrBranching => "kr-branching",
        Claim::TypeATensor => "type-a-tensor",
        Claim::ExceptionalTable => "exceptional-table",
        Claim::DimensionConservation => "dimension-conservation",
    }
}

pub fn basis_name(b: Basis) -> &'static str {
    match b {
        Basis::Theorem => "theorem",
        Basis::ConjectureConsistent => "conjecture-consistent",
        Basis::ReferenceTable => "reference-table",
    }
}

/// Per-weight differences, in descending weight order.
pub fn diff(rs: &RootSystem, expected: &Decomposition, got: &Decomposition) -> Vec<Counterexample> {
    let mut ws: Vec<Weight> = expected.weights().chain(got.weights()).cloned().collect();
    ws.sort();
    ws.dedup();
    rs.sort_weights_descending(&mut ws);
    ws.into_iter()
        .filter_map(|w| {
            let e = expected.get(&w);
            let g = got.get(&w);
            (e != g).then_some(Counterexample {
                input: Probe::Weight(w),
                expected: e,
                got: g,
            })
        })
        .collect()
}

fn require_family(rs: &RootSystem, ok: bool, operation: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedType {
            lie_type: rs.lie_type(),
            operation,
        })
    }
}

/// Fermionic decompositions of a factor list.
pub type Evaluator<'a> = dyn Fn(&RootSystem, &FactorList) -> Decomposition + 'a;

/// Runs the checks with a pluggable fermionic evaluator, e.g. one backed
/// by an on-disk cache. The default evaluates [`fermionic_decomposition`].
pub struct Verifier<'a> {
    eval: Box<Evaluator<'a>>,
}

impl Default for Verifier<'_> {
    fn default() -> Self {
        Verifier {
            eval: Box::new(fermionic_decomposition),
        }
    }
}

impl<'a> Verifier<'a> {
    pub fn with_evaluator(eval: impl Fn(&RootSystem, &FactorList) -> Decomposition + 'a) -> Self {
        Verifier {
            eval: Box::new(eval),
        }
    }

    fn fermionic(&self, rs: &RootSystem, factors: &FactorList) -> Decomposition {
        (self.eval)(rs, factors)
    }

    /// Fermionic decomposition of `W(i, m)` against the classical branching set.
    pub fn kr_branching(&self, rs: &RootSystem, i: usize, m: usize) -> Result<VerificationReport> {
        require_family(rs, rs.lie_type().family().is_classical(), "verify_kr_branching")?;
        let start = Instant::now();
        let factors = FactorList::single(rs, i, m)?;
        let expected = pim_recursive(rs, i, m)?.to_decomposition();
        let got = self.fermionic(rs, &factors);
        let cx = diff(rs, &expected, &got);
        Ok(VerificationReport::new(
            Claim::KrBranching,
            rs,
            factors,
            Basis::Theorem,
            got,
            cx,
            start.elapsed(),
        ))
    }

    /// Type A: fermionic decomposition against `⊗_a V(m_a lambda_{i_a})`.
    pub fn type_a_tensor(&self, rs: &RootSystem, factors: &FactorList) -> Result<VerificationReport> {
        require_family(rs, rs.lie_type().family() == Family::A, "verify_type_a_tensor")?;
        let start = Instant::now();
        let mut expected = Decomposition::irreducible(rs.zero_weight());
        for f in factors.factors() {
            let irr = Decomposition::irreducible(rs.fundamental(f.node).scale(f.level as i64));
            expected = decomposition_tensor(rs, &expected, &irr)?;
        }
        let got = self.fermionic(rs, factors);
        let cx = diff(rs, &expected, &got);
        Ok(VerificationReport::new(
            Claim::TypeATensor,
            rs,
            factors.clone(),
            Basis::Theorem,
            got,
            cx,
            start.elapsed(),
        ))
    }

    /// Fermionic decomposition of `W(i, m)` against [`exceptional_table`]. A
    /// failing report flags the table entry; it does not decide which side
    /// is wrong.
    pub fn exceptional(&self, rs: &RootSystem, i: usize, m: usize) -> Result<VerificationReport> {
        let start = Instant::now();
        let expected = exceptional_table(rs, i, m)?;
        let factors = FactorList::single(rs, i, m)?;
        let got = self.fermionic(rs, &factors);
        let cx = diff(rs, &expected, &got);
        let mut report = VerificationReport::new(
            Claim::ExceptionalTable,
            rs,
            factors,
            Basis::ReferenceTable,
            got,
            cx,
            start.elapsed(),
        );
        if !report.passed() {
            report.note = Some(format!(
                "table entry {} node {i} level {m} disagrees with the fermionic sum: table {}, fermionic {}",
                rs.lie_type(),
                render_support(rs, &expected),
                render_support(rs, &report.decomposition),
            ));
        }
        Ok(report)
    }

    /// `sum n_lambda dim V(lambda)` over the fermionic decomposition against
    /// `prod_a dim W(i_a, m_a)`.
    pub fn dimension_conservation(
        &self,
        rs: &RootSystem,
        factors: &FactorList,
    ) -> Result<VerificationReport> {
        require_family(
            rs,
            rs.lie_type().family().is_classical(),
            "verify_dimension_conservation",
        )?;
        let start = Instant::now();
        let mut expected = BigUint::from(1u32);
        for f in factors.factors() {
            expected *= kr_dimension(rs, f.node, f.level)?;
        }
        let got_decomp = self.fermionic(rs, factors);
        let got = decomposition_dimension(rs, &got_decomp)?;
        let nontrivial = factors.factors().iter().filter(|f| f.level > 0).count();
        let basis = if nontrivial <= 1 || rs.lie_type().family() == Family::A {
            Basis::Theorem
        } else {
            Basis::ConjectureConsistent
        };
        let cx = if expected == got {
            Vec::new()
        } else {
            vec![Counterexample {
                input: Probe::Quantity("dimension".into()),
                expected,
                got,
            }]
        };
        Ok(VerificationReport::new(
            Claim::DimensionConservation,
            rs,
            factors.clone(),
            basis,
            got_decomp,
            cx,
            start.elapsed(),
        ))
    }

    /// Every node at levels `1..=max_level`.
    pub fn branching_suite(&self, rs: &RootSystem, max_level: usize) -> Result<Vec<VerificationReport>> {
        single_factors(rs, max_level)
            .into_iter()
            .map(|f| self.kr_branching(rs, f.node, f.level))
            .collect()
    }

    /// Every ordered factor pair up to `max_level`.
    pub fn type_a_tensor_suite(&self, rs: &RootSystem, max_level: usize) -> Result<Vec<VerificationReport>> {
        factor_pairs(rs, max_level)
            .iter()
            .map(|f| self.type_a_tensor(rs, f))
            .collect()
    }

    /// Every tabulated node at levels `1..=max_level`.
    pub fn exceptional_suite(&self, rs: &RootSystem, max_level: usize) -> Result<Vec<VerificationReport>> {
        let nodes = exceptional_nodes(rs);
        require_family(rs, !nodes.is_empty(), "verify_exceptional")?;
        nodes
            .iter()
            .flat_map(|&i| (1..=max_level).map(move |m| (i, m)))
            .map(|(i, m)| self.exceptional(rs, i, m))
            .collect()
    }

    /// Every ordered factor pair up to `max_level`.
    pub fn dimension_suite(&self, rs: &RootSystem, max_level: usize) -> Result<Vec<VerificationReport>> {
        factor_pairs(rs, max_level)
            .iter()
            .map(|f| self.dimension_conservation(rs, f))
            .collect()
    }
}

pub fn verify_kr_branching(rs: &RootSystem, i: usize, m: usize) -> Result<VerificationReport> {
    Verifier::default().kr_branching(rs, i, m)
}

pub fn verify_type_a_tensor(rs: &RootSystem, factors: &FactorList) -> Result<VerificationReport> {
    Verifier::default().type_a_tensor(rs, factors)
}

pub fn verify_exceptional(rs: &RootSystem, i: usize, m: usize) -> Result<VerificationReport> {
    Verifier::default().exceptional(rs, i, m)
}

pub fn verify_dimension_conservation(
    rs: &RootSystem,
    factors: &FactorList,
) -> Result<VerificationReport> {
    Verifier::default().dimension_conservation(rs, factors)
}

/// Weights of a decomposition as `{w1, w2, ...}`, highest first, with
/// multiplicities above one written as `k*w`.
pub fn render_support(rs: &RootSystem, d: &Decomposition) -> String {
    let parts: Vec<String> = d
        .sorted_entries(rs)
        .into_iter()
        .map(|(w, m)| {
            if m == BigUint::from(1u32) {
                w.to_string()
            } else {
                format!("{m}*{w}")
            }
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Every `(node, level)` with `1 <= level <= max_level`.
fn single_factors(rs: &RootSystem, max_level: usize) -> Vec<KrFactor> {
    (1..=rs.rank())
        .flat_map(|i| (1..=max_level).map(move |m| KrFactor::new(i, m)))
        .collect()
}

/// All ordered pairs of nontrivial single factors up to `max_level`.
pub fn factor_pairs(rs: &RootSystem, max_level: usize) -> Vec<FactorList> {
    let singles = single_factors(rs, max_level);
    singles
        .iter()
        .flat_map(|a| singles.iter().map(move |b| (*a, *b)))
        .map(|(a, b)| FactorList::new(rs, vec![a, b]).expect("nodes in range"))
        .collect()
}

pub fn branching_suite(rs: &RootSystem, max_level: usize) -> Result<Vec<VerificationReport>> {
    Verifier::default().branching_suite(rs, max_level)
}

pub fn type_a_tensor_suite(rs: &RootSystem, max_level: usize) -> Result<Vec<VerificationReport>> {
    Verifier::default().type_a_tensor_suite(rs, max_level)
}

pub fn exceptional_suite(rs: &RootSystem, max_level: usize) -> Result<Vec<VerificationReport>> {
    Verifier::default().exceptional_suite(rs, max_level)
}

pub fn dimension_suite(rs: &RootSystem, max_level: usize) -> Result<Vec<VerificationReport>> {
    Verifier::default().dimension_suite(rs, max_level)
}
