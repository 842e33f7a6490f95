//! Squarefree sieve, residue-class fractions modulo 8 and bound-qualified
//! sampling of which quadratic fields have relevant S-unit solutions.

use std::fmt;
use std::str::FromStr;

use bitvec::prelude::*;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::isqrt_u64;
use crate::error::{Error, Result};
use crate::qfield::{make_field, AlgebraicNumber, DEFAULT_DISCRIMINANT_BOUND};
use crate::sunit::{slots_above, solve_sunit_with_ceiling, sunit_group_with_bound, Relevance, DEFAULT_ENUMERATION_CEILING};

/// Entries per sieve segment.
pub const BLOCK_SIZE: u64 = 1 << 20;

/// Largest cutoff accepted by the sieve entry points.
pub const DEFAULT_SIEVE_BUDGET: u64 = 4_000_000_000;

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize + 1;
    let mut composite = bitvec![0; n.max(2)];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite.set(j, true);
                j += i;
            }
        }
    }
    out
}

/// Squarefree flags for `[lo, hi)`, `lo ≥ 1`.
fn sieve_block(lo: u64, hi: u64, primes: &[u64]) -> BitVec {
    let mut flags = bitvec![1; (hi - lo) as usize];
    for &p in primes {
        let sq = p * p;
        if sq >= hi {
            break;
        }
        let mut m = lo.div_ceil(sq) * sq;
        while m < hi {
            flags.set((m - lo) as usize, false);
            m += sq;
        }
    }
    flags
}

fn check_cutoff(cutoff: u64, min: u64, budget: u64) -> Result<()> {
    if cutoff < min {
        return Err(Error::InvalidArgument(format!("cutoff {cutoff} must be at least {min}")));
    }
    if cutoff > budget {
        return Err(Error::CutoffTooLarge { cutoff, budget });
    }
    Ok(())
}

/// Blocks `[lo, hi)` covering `[2, cutoff]`.
fn blocks(cutoff: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut lo = 2;
    while lo <= cutoff {
        let hi = (lo + BLOCK_SIZE).min(cutoff + 1);
        out.push((lo, hi));
        lo = hi;
    }
    out
}

/// Membership bitmap of the squarefree integers in `[2, cutoff]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeSieve {
    pub cutoff: u64,
    /// Bit `i` stands for `d = i + 2`.
    bits: BitVec,
}

impl SquarefreeSieve {
    pub fn contains(&self, d: u64) -> bool {
        d >= 2 && d <= self.cutoff && self.bits[(d - 2) as usize]
    }

    pub fn count(&self) -> u64 {
        self.bits.count_ones() as u64
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter_ones().map(|i| i as u64 + 2)
    }
}

pub fn squarefree_sieve(cutoff: u64) -> Result<SquarefreeSieve> {
    squarefree_sieve_with_budget(cutoff, DEFAULT_SIEVE_BUDGET)
}

pub fn squarefree_sieve_with_budget(cutoff: u64, budget: u64) -> Result<SquarefreeSieve> {
    check_cutoff(cutoff, 2, budget)?;
    let primes = small_primes(isqrt_u64(cutoff));
    let parts: Vec<BitVec> = blocks(cutoff).into_par_iter().map(|(lo, hi)| sieve_block(lo, hi, &primes)).collect();
    let mut bits = BitVec::with_capacity((cutoff - 1) as usize);
    for p in parts {
        bits.extend_from_bitslice(&p);
    }
    Ok(SquarefreeSieve { cutoff, bits })
}

/// An unreduced fraction `numerator/denominator`, serialized as that string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub numerator: u64,
    pub denominator: u64,
}

impl Fraction {
    pub fn to_rational(self) -> BigRational {
        BigRational::new(self.numerator.into(), self.denominator.into())
    }

    pub fn to_f64(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl FromStr for Fraction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (n, d) = s.split_once('/').ok_or_else(|| format!("{s:?} is not n/d"))?;
        let numerator = n.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
        let denominator: u64 = d.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
        if denominator == 0 {
            return Err(format!("{s:?}: zero denominator"));
        }
        Ok(Fraction { numerator, denominator })
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub residue: u8,
    pub count: u64,
    pub fraction: Fraction,
}

/// Solver evidence for one field `Q(√d)` with `S` the primes above 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipRecord {
    pub d: i64,
    pub field: String,
    pub bound: u32,
    pub solutions: usize,
    pub has_relevant_solution_at_bound: bool,
    /// Relevant `(λ, μ)` in solver order.
    pub witnesses: Vec<(AlgebraicNumber, AlgebraicNumber)>,
}

/// Membership of a positive squarefree `d` in the sets built from the
/// sampled records; `None` where the needed record is missing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetMembership {
    pub d: i64,
    /// No relevant solution over `Q(√d)` at the bound.
    pub in_c: Option<bool>,
    /// No relevant solution over `Q(√-d)` at the bound.
    pub in_c_prime: Option<bool>,
    /// `d ∈ C` and `d ≢ 5 (mod 8)`.
    pub in_d: Option<bool>,
    /// `d ∈ C` and `-d ≢ 5 (mod 8)`, the set as printed.
    pub in_d_prime_printed: Option<bool>,
    /// `d ∈ C'` and `-d ≢ 5 (mod 8)`.
    pub in_d_prime_imaginary: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub cutoff: u64,
    pub squarefree_total: u64,
    /// One entry per residue class `0..8` of squarefree `d ∈ [2, cutoff]`.
    pub classes: Vec<ClassCount>,
    /// Share of `d ≢ 5 (mod 8)`.
    pub projected_d: Fraction,
    /// Share of `-d ≢ 5 (mod 8)`, that is `d ≢ 3 (mod 8)`.
    pub projected_d_prime: Fraction,
    pub sample_bound: Option<u32>,
    pub sampled_membership: Vec<MembershipRecord>,
    pub set_membership: Vec<SetMembership>,
}

/// Counts of squarefree `d ∈ [2, cutoff]` per class mod 8 without
/// materializing the bitmap.
pub fn residue_fractions(cutoff: u64) -> Result<DensityReport> {
    residue_fractions_with_budget(cutoff, DEFAULT_SIEVE_BUDGET)
}

pub fn residue_fractions_with_budget(cutoff: u64, budget: u64) -> Result<DensityReport> {
    check_cutoff(cutoff, 8, budget)?;
    let primes = small_primes(isqrt_u64(cutoff));
    let per_block: Vec<[u64; 8]> = blocks(cutoff)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut c = [0u64; 8];
            for i in sieve_block(lo, hi, &primes).iter_ones() {
                c[((lo + i as u64) % 8) as usize] += 1;
            }
            c
        })
        .collect();
    let mut counts = [0u64; 8];
    for c in per_block {
        for (a, b) in counts.iter_mut().zip(c) {
            *a += b;
        }
    }
    let total: u64 = counts.iter().sum();
    let frac = |n| Fraction { numerator: n, denominator: total };
    Ok(DensityReport {
        cutoff,
        squarefree_total: total,
        classes: (0..8)
            .map(|r| ClassCount { residue: r as u8, count: counts[r], fraction: frac(counts[r]) })
            .collect(),
        projected_d: frac(total - counts[5]),
        projected_d_prime: frac(total - counts[3]),
        sample_bound: None,
        sampled_membership: Vec::new(),
        set_membership: Vec::new(),
    })
}

pub fn membership_sample(d_list: &[i64], bound: u32) -> Result<Vec<MembershipRecord>> {
    membership_sample_with_limits(d_list, bound, DEFAULT_DISCRIMINANT_BOUND, DEFAULT_ENUMERATION_CEILING)
}

/// Runs the solver over `S = {primes above 2}` in `Q(√d)` for every `d`,
/// in parallel, returning records in input order.
pub fn membership_sample_with_limits(
    d_list: &[i64],
    bound: u32,
    disc_bound: u64,
    ceiling: u128,
) -> Result<Vec<MembershipRecord>> {
    d_list
        .par_iter()
        .map(|&d| {
            let field = make_field(d)?;
            let s = slots_above(&field, &[2])?;
            let group = sunit_group_with_bound(&field, &s, disc_bound)?;
            let sols = solve_sunit_with_ceiling(&group, bound, ceiling)?;
            let witnesses: Vec<_> = sols
                .iter()
                .filter(|s| s.relevance == Relevance::Relevant)
                .map(|s| (s.lambda.clone(), s.mu.clone()))
                .collect();
            Ok(MembershipRecord {
                d,
                field: field.label(),
                bound,
                solutions: sols.len(),
                has_relevant_solution_at_bound: !witnesses.is_empty(),
                witnesses,
            })
        })
        .collect()
}

/// Set memberships for every positive `d` appearing among the records.
pub fn set_membership(records: &[MembershipRecord]) -> Vec<SetMembership> {
    let lookup = |d: i64| records.iter().find(|r| r.d == d).map(|r| !r.has_relevant_solution_at_bound);
    let mut ds: Vec<i64> = records.iter().map(|r| r.d.abs()).filter(|&d| d >= 2).collect();
    ds.sort_unstable();
    ds.dedup();
    ds.into_iter()
        .map(|d| {
            let in_c = lookup(d);
            let in_c_prime = lookup(-d);
            let d_ok = d.rem_euclid(8) != 5;
            let dp_ok = (-d).rem_euclid(8) != 5;
            SetMembership {
                d,
                in_c,
                in_c_prime,
                in_d: in_c.map(|c| c && d_ok),
                in_d_prime_printed: in_c.map(|c| c && dp_ok),
                in_d_prime_imaginary: in_c_prime.map(|c| c && dp_ok),
            }
        })
        .collect()
}

/// Residue fractions plus sampled memberships.
pub fn density_report(cutoff: u64, sample: &[i64], bound: u32) -> Result<DensityReport> {
    let mut report = residue_fractions(cutoff)?;
    if !sample.is_empty() {
        report.sampled_membership = membership_sample(sample, bound)?;
        report.set_membership = set_membership(&report.sampled_membership);
        report.sample_bound = Some(bound);
    }
    Ok(report)
}
