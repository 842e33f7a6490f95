use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::group::SUnitGroup;
use crate::error::{Error, Result};
use crate::legendre::lambda_orbit;
use crate::qfield::{valuation, AlgebraicNumber, PrimeSlot};

/// Default ceiling on the number of enumerated candidates.
pub const DEFAULT_ENUMERATION_CEILING: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relevance {
    Irrelevant,
    Relevant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotValuation {
    pub slot: String,
    pub lambda: i64,
    pub mu: i64,
}

/// A solution of `λ + μ = 1` in S-units.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SUnitSolution {
    pub lambda: AlgebraicNumber,
    pub mu: AlgebraicNumber,
    pub lambda_exponents: Vec<i64>,
    pub mu_exponents: Vec<i64>,
    /// `(ord λ, ord μ)` at each slot of `S`.
    pub valuations: Vec<SlotValuation>,
    pub relevance: Relevance,
    /// Slot at which `m` was measured.
    pub designated_slot: Option<String>,
    /// `max(|ord λ|, |ord μ|)` at the designated slot.
    pub m: Option<u32>,
    /// Exponent bound of the search that produced the solution.
    pub bound: u32,
}

/// `λ ∈ {-1, 2, 1/2}`, the three solutions present in every field once 2 is an S-unit.
pub fn is_irrelevant(lambda: &AlgebraicNumber) -> bool {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    match lambda.as_rational() {
        Some(q) => *q == half || lambda.is_rational_integer(-1) || lambda.is_rational_integer(2),
        None => false,
    }
}

pub fn solve_sunit(group: &SUnitGroup, bound: u32) -> Result<Vec<SUnitSolution>> {
    solve_sunit_with_ceiling(group, bound, DEFAULT_ENUMERATION_CEILING)
}

/// All solutions with `λ` in the box `[-bound, bound]^rank` (any torsion
/// part), sorted by the exponent vector of `λ`.
///
/// `μ = 1 - λ` is tested for S-unit membership directly, so only one side
/// of the equation is enumerated.
pub fn solve_sunit_with_ceiling(
    group: &SUnitGroup,
    bound: u32,
    ceiling: u128,
) -> Result<Vec<SUnitSolution>> {
    let rank = group.rank();
    let side = 2 * bound as u128 + 1;
    let torsion = group.torsion.len() as u128;
    let size = side
        .checked_pow(rank as u32)
        .and_then(|s| s.checked_mul(torsion))
        .unwrap_or(u128::MAX);
    if size > ceiling {
        return Err(Error::BoxTooLarge { size, ceiling });
    }
    let b = bound as i64;
    let powers: Vec<Vec<AlgebraicNumber>> = group
        .free_generators
        .iter()
        .map(|g| (-b..=b).map(|e| g.pow(e)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let one = AlgebraicNumber::one(group.field);
    let side = side as u64;
    // the last free coordinate and the torsion index are split off so the
    // parallel work items are whole slices of the box
    let (outer, inner_len) = match rank {
        0 => (torsion as u64, 1),
        _ => (size as u64 / side, side),
    };

    let mut found: Vec<(Vec<i64>, AlgebraicNumber, AlgebraicNumber)> = (0..outer)
        .into_par_iter()
        .flat_map_iter(|idx| {
            let mut exps = vec![0i64; rank + 1];
            let mut rest = idx;
            exps[rank] = (rest % torsion as u64) as i64;
            rest /= torsion as u64;
            for e in exps.iter_mut().take(rank.saturating_sub(1)) {
                *e = (rest % side) as i64 - b;
                rest /= side;
            }
            let mut base = group.torsion[exps[rank] as usize].clone();
            for i in 0..rank.saturating_sub(1) {
                base = &base * &powers[i][(exps[i] + b) as usize];
            }
            let last = rank.checked_sub(1);
            let one = &one;
            let powers = &powers;
            (0..inner_len).filter_map(move |j| {
                let mut exps = exps.clone();
                let lambda = match last {
                    Some(l) => {
                        exps[l] = j as i64 - b;
                        &base * &powers[l][j as usize]
                    }
                    None => base.clone(),
                };
                if lambda == *one {
                    return None;
                }
                let mu = one - &lambda;
                group.is_s_unit(&mu).then_some((exps, lambda, mu))
            })
        })
        .collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));

    let designated = default_designated_slot(group);
    found
        .into_iter()
        .map(|(lambda_exponents, lambda, mu)| {
            let mu_exponents = group.exponents(&mu).expect("membership already checked");
            let sol = build_solution(group, lambda, mu, lambda_exponents, mu_exponents, bound)?;
            Ok(match designated {
                Some(slot) => classify(&sol, slot)?,
                None => sol,
            })
        })
        .collect()
}

/// The first slot above 2 in `S`, else the first slot.
fn default_designated_slot(group: &SUnitGroup) -> Option<&PrimeSlot> {
    group.s.iter().find(|s| s.rational_prime == 2).or(group.s.first())
}

fn build_solution(
    group: &SUnitGroup,
    lambda: AlgebraicNumber,
    mu: AlgebraicNumber,
    lambda_exponents: Vec<i64>,
    mu_exponents: Vec<i64>,
    bound: u32,
) -> Result<SUnitSolution> {
    let valuations = group
        .s
        .iter()
        .map(|slot| {
            Ok(SlotValuation {
                slot: slot.label(),
                lambda: valuation(&lambda, slot)?,
                mu: valuation(&mu, slot)?,
            })
        })
        .collect::<Result<_>>()?;
    let relevance = if is_irrelevant(&lambda) { Relevance::Irrelevant } else { Relevance::Relevant };
    Ok(SUnitSolution {
        lambda,
        mu,
        lambda_exponents,
        mu_exponents,
        valuations,
        relevance,
        designated_slot: None,
        m: None,
        bound,
    })
}

/// `m_{λ,μ} = max(|ord λ|, |ord μ|)` at the slot.
pub fn m_value(lambda: &AlgebraicNumber, mu: &AlgebraicNumber, slot: &PrimeSlot) -> Result<u32> {
    let a = valuation(lambda, slot)?.unsigned_abs();
    let b = valuation(mu, slot)?.unsigned_abs();
    Ok(a.max(b) as u32)
}

/// Fills relevance and `m` at the designated slot.
pub fn classify(sol: &SUnitSolution, designated_slot: &PrimeSlot) -> Result<SUnitSolution> {
    let mut out = sol.clone();
    out.relevance = if is_irrelevant(&sol.lambda) { Relevance::Irrelevant } else { Relevance::Relevant };
    out.m = Some(m_value(&sol.lambda, &sol.mu, designated_slot)?);
    out.designated_slot = Some(designated_slot.label());
    Ok(out)
}

/// Solutions grouped by the orbit of `λ` under the six maps of the
/// Legendre lambda line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionOrbit {
    /// The member with the lexicographically smallest exponent vector.
    pub representative: SUnitSolution,
    /// Every value of the orbit of `λ`, found or not.
    pub orbit: Vec<AlgebraicNumber>,
    /// The `λ` values of the input that fall in this orbit, by exponent vector.
    pub members: Vec<AlgebraicNumber>,
}

pub fn orbit_reduce(sols: &[SUnitSolution]) -> Result<Vec<SolutionOrbit>> {
    let mut order: Vec<&SUnitSolution> = sols.iter().collect();
    order.sort_by(|a, b| a.lambda_exponents.cmp(&b.lambda_exponents));
    let mut index: HashMap<AlgebraicNumber, usize> = HashMap::new();
    let mut out: Vec<SolutionOrbit> = Vec::new();
    for sol in order {
        if let Some(&i) = index.get(&sol.lambda) {
            out[i].members.push(sol.lambda.clone());
            continue;
        }
        let orbit = lambda_orbit(&sol.lambda)?;
        for v in &orbit.values {
            index.insert(v.clone(), out.len());
        }
        out.push(SolutionOrbit {
            representative: sol.clone(),
            orbit: orbit.values,
            members: vec![sol.lambda.clone()],
        });
    }
    Ok(out)
}
