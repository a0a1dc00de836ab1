//! Exceptional curves of the double covers `lambda w^2 = q`.
//!
//! Over a bitangent `l` the quartic restricts to `c h^2`, so the preimage of
//! `l` on the surface splits into the two branches `w = ±sqrt(c / lambda) h`.
//! If `l` is defined over the degree-`e` extension, the branches are defined
//! there when `c / lambda` is a square in it, and over the degree-`2e`
//! extension otherwise.

use crate::bitangent::{orbits_from_degrees, BitangentData};
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, Ring};

/// The two branches over one bitangent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalCurvePair {
    /// Index of the bitangent in pair order.
    pub line: usize,
    pub line_degree: usize,
    /// Whether `c / lambda` is a square over the line's field of definition.
    pub split: bool,
    /// Degree of the field of definition of each branch.
    pub branch_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistReport {
    /// Frobenius orbit sizes on the 56 branches.
    pub branch_orbits: Vec<usize>,
    /// Orbit sizes of the induced action on the 28 blocks.
    pub block_orbits: Vec<usize>,
    pub lambda_square: bool,
}

impl TwistReport {
    pub fn format(&self) -> String {
        let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        format!(
            "lambda_class: {}\nbranch_orbits: {}\nblock_orbits: {}",
            if self.lambda_square { "square" } else { "nonsquare" },
            list(&self.branch_orbits),
            list(&self.block_orbits)
        )
    }
}

/// Branch data for every bitangent.
pub fn exceptional_pairs<F: FiniteField>(
    data: &BitangentData<F>,
    lambda: &F::Elem,
) -> Result<Vec<ExceptionalCurvePair>> {
    let k = data.points.over.base();
    if k.is_zero(lambda) {
        return Err(Error::InvalidArgument("lambda must be nonzero".into()));
    }
    let l = data.points.field();
    let lambda_inv = l.inv(&data.points.over.embed(lambda)).ok_or(Error::DivisionByZero)?;
    let mut out = Vec::with_capacity(data.lines.len());
    for (idx, (line, sq)) in data.lines.iter().zip(&data.squares).enumerate() {
        let sq = sq
            .as_ref()
            .ok_or_else(|| Error::Verification(format!("restriction to line {idx} is not a square")))?;
        let e = line.definition_degree;
        let ratio = l.mul(&sq.c, &lambda_inv);
        let split = data.points.over.is_square_in_subfield(&ratio, e);
        out.push(ExceptionalCurvePair {
            line: idx,
            line_degree: e,
            split,
            branch_degree: if split { e } else { 2 * e },
        });
    }
    Ok(out)
}

/// Frobenius structure on the 56 exceptional curves of `lambda w^2 = q`.
pub fn exceptional_structure<F: FiniteField>(data: &BitangentData<F>, lambda: &F::Elem) -> Result<TwistReport> {
    let pairs = exceptional_pairs(data, lambda)?;
    // each branch of degree d lies in an orbit of size d
    let branch_degrees: Vec<usize> = pairs.iter().flat_map(|p| [p.branch_degree; 2]).collect();
    let branch_orbits = orbits_from_degrees(&branch_degrees)?;
    let line_degrees: Vec<usize> = pairs.iter().map(|p| p.line_degree).collect();
    let block_orbits = orbits_from_degrees(&line_degrees)?;
    let report = TwistReport {
        branch_orbits,
        block_orbits,
        lambda_square: data.points.over.base().is_square(lambda),
    };
    check_report(&report, data)?;
    Ok(report)
}

fn check_report<F: FiniteField>(report: &TwistReport, data: &BitangentData<F>) -> Result<()> {
    if report.branch_orbits.iter().sum::<usize>() != 56 {
        return Err(Error::Verification("branch orbits do not cover 56 curves".into()));
    }
    if report.block_orbits.iter().sum::<usize>() != 28 {
        return Err(Error::Verification("block orbits do not cover 28 bitangents".into()));
    }
    if report.block_orbits != data.report()?.bitangent_orbits {
        return Err(Error::Verification("block orbits differ from bitangent orbits".into()));
    }
    // a branch orbit of size d maps onto a bitangent orbit of size d or d/2
    let mut branches = report.branch_orbits.clone();
    let mut blocks = report.block_orbits.clone();
    while let Some(e) = blocks.pop() {
        if let Some(pos) = branches.iter().position(|&b| b == 2 * e) {
            branches.remove(pos);
        } else {
            let first = branches.iter().position(|&b| b == e);
            let second = first.and_then(|i| branches.iter().skip(i + 1).position(|&b| b == e).map(|j| i + 1 + j));
            match (first, second) {
                (Some(i), Some(j)) => {
                    branches.remove(j);
                    branches.remove(i);
                }
                _ => return Err(Error::Verification("branch orbits do not lie over block orbits".into())),
            }
        }
    }
    if !branches.is_empty() {
        return Err(Error::Verification("block map is not 2-to-1".into()));
    }
    Ok(())
}

/// True iff all `lambdas` induce the same action on the 28 blocks.
pub fn twist_invariance_check<F: FiniteField>(data: &BitangentData<F>, lambdas: &[F::Elem]) -> Result<bool> {
    if lambdas.len() < 2 {
        return Err(Error::InvalidArgument("need at least two values of lambda".into()));
    }
    let reports = lambdas
        .iter()
        .map(|lam| exceptional_structure(data, lam))
        .collect::<Result<Vec<_>>>()?;
    Ok(reports.windows(2).all(|w| w[0].block_orbits == w[1].block_orbits))
}
