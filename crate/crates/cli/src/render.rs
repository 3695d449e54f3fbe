//! Text, JSON and CSV output.

use std::io::{self, Write};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use krfermion::bignum::serde_biguint;
use krfermion::fermionic::{Decomposition, FactorList};
use krfermion::rep_oracle::weyl_dim;
use krfermion::verify::{basis_name, claim_name, Probe, Status, VerificationReport};
use krfermion::{Error, LieType, RootSystem, Weight};

use crate::Format;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub weight: Weight,
    #[serde(with = "serde_biguint")]
    pub multiplicity: BigUint,
    #[serde(with = "serde_biguint")]
    pub dim: BigUint,
}

/// Output of `pim` and `fermionic`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionOutput {
    pub algebra: LieType,
    pub factors: FactorList,
    pub decomposition: Vec<Row>,
    #[serde(with = "serde_biguint")]
    pub total_dim: BigUint,
}

/// Output of `tensor`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorOutput {
    pub algebra: LieType,
    pub left: Weight,
    pub right: Weight,
    pub decomposition: Vec<Row>,
    #[serde(with = "serde_biguint")]
    pub total_dim: BigUint,
}

/// Output of `verify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportsOutput {
    pub reports: Vec<VerificationReport>,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Comparison printed under a decomposition in text mode.
pub enum DimCheck {
    None,
    /// Some factor has no known dimension.
    Unavailable,
    /// Expected total is the product of these.
    Product(Vec<BigUint>),
}

/// Rows ordered highest weight first.
pub fn rows(rs: &RootSystem, d: &Decomposition) -> Result<Vec<Row>, Error> {
    d.sorted_entries(rs)
        .into_iter()
        .map(|(weight, multiplicity)| {
            let dim = weyl_dim(rs, &weight)?;
            Ok(Row {
                weight,
                multiplicity,
                dim,
            })
        })
        .collect()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_rows(out: &mut dyn Write, rank: usize, rows: &[Row]) -> io::Result<()> {
    let mut header: Vec<String> = (1..=rank).map(|i| format!("c{i}")).collect();
    header.push("multiplicity".into());
    header.push("dim".into());
    writeln!(out, "{}", header.join(","))?;
    for r in rows {
        let mut cells: Vec<String> = r.weight.0.iter().map(i64::to_string).collect();
        cells.push(r.multiplicity.to_string());
        cells.push(r.dim.to_string());
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

fn text_rows(out: &mut dyn Write, rows: &[Row]) -> io::Result<()> {
    let width = rows.iter().map(|r| r.weight.to_string().len()).max().unwrap_or(0);
    for r in rows {
        writeln!(
            out,
            "  {:<width$}  multiplicity {}  dim {}",
            r.weight.to_string(),
            r.multiplicity,
            r.dim
        )?;
    }
    Ok(())
}

fn product_string(xs: &[BigUint]) -> String {
    xs.iter().map(BigUint::to_string).collect::<Vec<_>>().join(" * ")
}

#[allow(clippy::too_many_arguments)]
pub fn decomposition(
    out: &mut dyn Write,
    format: Format,
    header: &str,
    rs: &RootSystem,
    factors: &FactorList,
    rows: &[Row],
    total: &BigUint,
    check: DimCheck,
) -> io::Result<()> {
    match format {
        Format::Json => {
            let payload = DecompositionOutput {
                algebra: rs.lie_type(),
                factors: factors.clone(),
                decomposition: rows.to_vec(),
                total_dim: total.clone(),
            };
            writeln!(out, "{}", serde_json::to_string(&payload)?)
        }
        Format::Csv => csv_rows(out, rs.rank(), rows),
        Format::Text => {
            writeln!(out, "{header}")?;
            text_rows(out, rows)?;
            writeln!(out, "total_dim {total}")?;
            match check {
                DimCheck::None => Ok(()),
                DimCheck::Unavailable => {
                    writeln!(out, "dimension check: factor dimensions unavailable")
                }
                DimCheck::Product(dims) => {
                    let expected: BigUint = dims.iter().product();
                    let verdict = if &expected == total { "ok" } else { "MISMATCH" };
                    if dims.len() > 1 {
                        writeln!(
                            out,
                            "dimension check: {total} vs {} = {expected} {verdict}",
                            product_string(&dims)
                        )
                    } else {
                        writeln!(out, "dimension check: {total} vs {expected} {verdict}")
                    }
                }
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn tensor(
    out: &mut dyn Write,
    format: Format,
    rs: &RootSystem,
    left: &Weight,
    right: &Weight,
    rows: &[Row],
    total: &BigUint,
    dims: (BigUint, BigUint),
) -> io::Result<()> {
    match format {
        Format::Json => {
            let payload = TensorOutput {
                algebra: rs.lie_type(),
                left: left.clone(),
                right: right.clone(),
                decomposition: rows.to_vec(),
                total_dim: total.clone(),
            };
            writeln!(out, "{}", serde_json::to_string(&payload)?)
        }
        Format::Csv => csv_rows(out, rs.rank(), rows),
        Format::Text => {
            writeln!(out, "{} V({left}) x V({right})", rs.lie_type())?;
            text_rows(out, rows)?;
            writeln!(out, "total_dim {total}")?;
            let expected = &dims.0 * &dims.1;
            let verdict = if &expected == total { "ok" } else { "MISMATCH" };
            writeln!(
                out,
                "dimension check: {} * {} = {expected} {verdict}",
                dims.0, dims.1
            )
        }
    }
}

pub fn reports(out: &mut dyn Write, format: Format, reports: &[VerificationReport]) -> io::Result<()> {
    let passed = reports.iter().filter(|r| r.passed()).count();
    let failed = reports.len() - passed;
    match format {
        Format::Json => {
            let payload = ReportsOutput {
                reports: reports.to_vec(),
                total: reports.len(),
                passed,
                failed,
            };
            writeln!(out, "{}", serde_json::to_string(&payload)?)
        }
        Format::Csv => {
            writeln!(out, "claim,algebra,factors,status,basis,counterexamples")?;
            for r in reports {
                let status = match r.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                };
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    claim_name(r.claim),
                    r.scope.algebra,
                    csv_field(&r.scope.factors.to_string()),
                    status,
                    basis_name(r.basis),
                    r.counterexamples.len()
                )?;
            }
            Ok(())
        }
        Format::Text => {
            for r in reports {
                match &r.metadata {
                    Some(m) => writeln!(out, "{} [{:.1} ms]", r.summary(), m.elapsed_ms)?,
                    None => writeln!(out, "{}", r.summary())?,
                }
                for c in &r.counterexamples {
                    let what = match &c.input {
                        Probe::Weight(w) => format!("weight {w}"),
                        Probe::Quantity(q) => q.clone(),
                    };
                    writeln!(out, "    {what}: expected {} got {}", c.expected, c.got)?;
                }
                if let Some(note) = &r.note {
                    writeln!(out, "    LEDGER {note}")?;
                }
            }
            writeln!(out, "{} reports, {passed} passed, {failed} failed", reports.len())
        }
    }
}
