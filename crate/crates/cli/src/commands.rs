use serde::Serialize;

use quartic_core::criteria::{
    contradiction_trace, corollary_prime_quadratic, corollary_q24, corollary_quadratic, corollary_ramified,
    corollary_splits3, theorem_a_check, theorem_b_check_with_bound, theorem_s, CriterionVerdict, SolverRun,
    TraceRecord,
};
use quartic_core::density::{
    membership_sample_with_limits, residue_fractions_with_budget, set_membership, DensityReport, DEFAULT_SIEVE_BUDGET,
};
use quartic_core::frey::{
    bad_profiles, conductor_support, invariants, printed_ordj_comparison, validate_triple, ConductorReport, FreyInvariants,
    FreyTriple, OrdJComparison, SlotProfile,
};
use quartic_core::legendre::{frey_lambda, j_of_lambda};
use quartic_core::qfield::{
    class_data_with_bound, fundamental_unit, make_field, primes_above, torsion_generator, AlgebraicNumber, ClassData,
    FieldDescriptor, SplittingType,
};
use quartic_core::sunit::{
    classify, congruence_filters, orbit_reduce, slots_above, solve_sunit_with_ceiling, sunit_group_with_bound,
    FilterReport, Relevance, SUnitGroup, SUnitSolution, SolutionOrbit,
};
use quartic_core::Error;

use crate::args::{CheckTag, Command, FieldArgs};
use crate::cache::Outcome;
use crate::config::RunConfig;
use crate::exit::Failure;

/// Report bodies; `kind` tells them apart in serialized form.
#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Field(FieldPayload),
    Sunit(SunitPayload),
    Frey(Box<FreyPayload>),
    Verdicts(VerdictsPayload),
    Trace(TracePayload),
    Density(DensityReport),
}

#[derive(Serialize)]
pub struct SplitRow {
    pub p: u64,
    pub splitting: SplittingType,
    pub slots: Vec<String>,
}

#[derive(Serialize)]
pub struct FieldPayload {
    pub label: String,
    pub descriptor: FieldDescriptor,
    pub splitting: Vec<SplitRow>,
    pub roots_of_unity: u32,
    pub torsion_generator: AlgebraicNumber,
    pub fundamental_unit: Option<AlgebraicNumber>,
    pub class_data: ClassData,
}

#[derive(Serialize)]
pub struct SolutionEntry {
    pub solution: SUnitSolution,
    pub filters: FilterReport,
}

#[derive(Serialize)]
pub struct SunitPayload {
    pub field: String,
    pub s: Vec<String>,
    pub bound: u32,
    pub group: SUnitGroup,
    pub solution_count: usize,
    pub relevant_count: usize,
    pub orbit_count: usize,
    pub solutions: Vec<SolutionEntry>,
    pub orbits: Vec<SolutionOrbit>,
}

#[derive(Serialize)]
pub struct OrdJAudit {
    pub slot: String,
    pub comparison: Option<OrdJComparison>,
    /// Why the comparison does not apply at this slot.
    pub skipped: Option<String>,
}

#[derive(Serialize)]
pub struct FreyPayload {
    pub triple: FreyTriple,
    pub invariants: FreyInvariants,
    /// `A/(2C)`, absent when `C = 0`.
    pub lambda: Option<AlgebraicNumber>,
    pub j_of_lambda: Option<AlgebraicNumber>,
    pub lambda_j_agrees: Option<bool>,
    pub profiles: Vec<SlotProfile>,
    pub conductor: ConductorReport,
    pub ordj_audit: Vec<OrdJAudit>,
}

#[derive(Serialize)]
pub struct VerdictsPayload {
    pub verdicts: Vec<CriterionVerdict>,
}

#[derive(Serialize)]
pub struct TraceEntry {
    pub solution: String,
    pub record: Option<TraceRecord>,
    pub error: Option<String>,
}

#[derive(Serialize)]
pub struct TracePayload {
    pub field: String,
    pub s: Vec<String>,
    pub bound: u32,
    pub traces: Vec<TraceEntry>,
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    notices: Vec<String>,
}

impl Ctx<'_> {
    fn ceiling(&self) -> u128 {
        self.cfg.enumeration_ceiling as u128
    }

    fn run(&self, field: &FieldDescriptor, primes: &[u64], bound: u32) -> Result<SolverRun, Error> {
        let s = slots_above(field, primes)?;
        SolverRun::with_limits(field, &s, bound, self.cfg.discriminant_bound, self.ceiling())
    }
}

/// Runs a command without touching the cache.
pub fn execute(cmd: &Command, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let mut ctx = Ctx { cfg, notices: Vec::new() };
    let payload = match cmd {
        Command::Field { d } => Payload::Field(field_payload(&ctx, *d)?),
        Command::Sunit { d, primes, bound } => {
            Payload::Sunit(sunit_payload(&ctx, *d, primes, bound.unwrap_or(cfg.exponent_bound))?)
        }
        Command::Frey { a, b, c, n, p, d } => Payload::Frey(Box::new(frey_payload(&mut ctx, [a, b, c], *n, *p, *d)?)),
        Command::Check { tag } => check_payload(&mut ctx, tag)?,
        Command::Density { cutoff, sample, sample_range, bound } => {
            Payload::Density(density_payload(&ctx, cutoff.unwrap_or(cfg.sieve_cutoff), sample, *sample_range, *bound)?)
        }
    };
    let payload = serde_json::to_value(&payload).map_err(|e| Failure::computation(format!("serialization: {e}")))?;
    Ok(Outcome { payload, discrepancy_notices: ctx.notices })
}

fn descriptor(d: i64) -> Result<FieldDescriptor, Error> {
    if d == 0 {
        Ok(FieldDescriptor::rational())
    } else {
        make_field(d)
    }
}

fn resolve_field(f: &FieldArgs) -> Result<FieldDescriptor, Failure> {
    let Some(degree) = f.degree else {
        let d = f.d.ok_or_else(|| Failure::input("give -d or --degree"))?;
        return Ok(descriptor(d)?);
    };
    let mut table = Vec::new();
    for (ps, ty) in [(&f.ramified, SplittingType::Ramified), (&f.split, SplittingType::Split), (&f.inert, SplittingType::Inert)] {
        for &p in ps {
            if table.iter().any(|&(q, _)| q == p) {
                return Err(Failure::input(format!("prime {p} given two splitting types")));
            }
            table.push((p, ty));
        }
    }
    let mut desc = FieldDescriptor::abstract_field(degree, f.signature.unwrap_or(degree), table)?;
    desc.narrow_class_number_odd = f.narrow_odd;
    Ok(desc)
}

fn field_payload(ctx: &Ctx, d: i64) -> Result<FieldPayload, Error> {
    let desc = descriptor(d)?;
    let k = desc.arith()?;
    let splitting = (2..=50u64)
        .filter(|&p| quartic_core::arith::is_prime(p))
        .map(|p| {
            let slots = primes_above(k, p)?;
            Ok(SplitRow { p, splitting: k.splitting_type(p), slots: slots.iter().map(|s| s.label()).collect() })
        })
        .collect::<Result<_, Error>>()?;
    let (zeta, order) = torsion_generator(k);
    let unit = if k.is_real() && !k.is_rational() { Some(fundamental_unit(&desc)?) } else { None };
    Ok(FieldPayload {
        label: desc.label(),
        class_data: class_data_with_bound(&desc, ctx.cfg.discriminant_bound)?,
        descriptor: desc,
        splitting,
        roots_of_unity: order,
        torsion_generator: zeta,
        fundamental_unit: unit,
    })
}

fn sunit_payload(ctx: &Ctx, d: i64, primes: &[u64], bound: u32) -> Result<SunitPayload, Error> {
    let desc = descriptor(d)?;
    let s = slots_above(&desc, primes)?;
    let group = sunit_group_with_bound(&desc, &s, ctx.cfg.discriminant_bound)?;
    let raw = solve_sunit_with_ceiling(&group, bound, ctx.ceiling())?;
    let designated = s.iter().find(|slot| slot.rational_prime == 2);
    let solutions = raw
        .iter()
        .map(|sol| {
            let solution = match designated {
                Some(slot) => classify(sol, slot)?,
                None => sol.clone(),
            };
            Ok(SolutionEntry { filters: congruence_filters(&solution, &group)?, solution })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let orbits = orbit_reduce(&raw)?;
    Ok(SunitPayload {
        field: desc.label(),
        s: s.iter().map(|x| x.label()).collect(),
        bound,
        solution_count: solutions.len(),
        relevant_count: solutions.iter().filter(|e| e.solution.relevance == Relevance::Relevant).count(),
        orbit_count: orbits.len(),
        group,
        solutions,
        orbits,
    })
}

fn frey_payload(ctx: &mut Ctx, entries: [&String; 3], n: u64, p: u64, d: i64) -> Result<FreyPayload, Error> {
    let desc = descriptor(d)?;
    let k = desc.arith()?;
    let [a, b, c] = entries.map(|s| AlgebraicNumber::parse_in(k, s));
    let triple = validate_triple(&a?, &b?, &c?, n, p, &desc)?;
    let inv = invariants(&triple)?;
    let audit = &inv.display_audit;
    if audit.printed_c6_mismatch {
        ctx.notices.push(format!(
            "c6: the printed closed form -2^7(2^5 a^2 b^2 + 3(a^2 - b^2)^2) gives {}, the model gives {}",
            audit.printed_c6, inv.c6
        ));
    }
    if audit.printed_c4_alternative_mismatch {
        ctx.notices.push(format!(
            "c4: the printed alternative 2^4(AB - 2AC - 2BC) gives {}, the model gives {}",
            audit.printed_c4_alternative, inv.c4
        ));
    }
    let lambda = match frey_lambda(&triple) {
        Ok(l) => Some(l),
        Err(Error::DegenerateTriple) => None,
        Err(e) => return Err(e),
    };
    let j_lambda = lambda.as_ref().map(j_of_lambda).transpose()?;
    let profiles = bad_profiles(&triple, &inv)?;
    let conductor = conductor_support(&triple, &profiles)?;
    let mut ordj_audit = Vec::new();
    for slot in primes_above(k, 2)? {
        let (comparison, skipped) = match printed_ordj_comparison(&triple, &slot) {
            Ok(c) => (Some(c), None),
            Err(Error::PreconditionFailed(why)) => (None, Some(why)),
            Err(e) => return Err(e),
        };
        if let Some(c) = comparison.as_ref().filter(|c| c.discrepancy) {
            ctx.notices.push(format!(
                "ord(j) at {}: the printed formula 8 ord(2) - 4pk - 2 ord(n) gives {}, the exact j has valuation {}",
                c.slot, c.printed_value, c.direct_value
            ));
        }
        ordj_audit.push(OrdJAudit { slot: slot.label(), comparison, skipped });
    }
    Ok(FreyPayload {
        lambda_j_agrees: j_lambda.as_ref().map(|j| *j == inv.j),
        j_of_lambda: j_lambda,
        lambda,
        triple,
        invariants: inv,
        profiles,
        conductor,
        ordj_audit,
    })
}

fn verdicts(v: Vec<CriterionVerdict>) -> Payload {
    Payload::Verdicts(VerdictsPayload { verdicts: v })
}

fn check_payload(ctx: &mut Ctx, tag: &CheckTag) -> Result<Payload, Failure> {
    let cfg = ctx.cfg;
    Ok(match tag {
        CheckTag::TheoremA { d, n, slot, bound } => {
            let bound = bound.unwrap_or(cfg.exponent_bound);
            let desc = descriptor(*d)?;
            let mut primes: Vec<u64> = quartic_core::arith::factorize(*n).into_iter().map(|(q, _)| q).collect();
            primes.push(2);
            let wide = sunit_group_with_bound(&desc, &slots_above(&desc, &primes)?, cfg.discriminant_bound)?;
            let s = theorem_s(&wide, *n)?;
            let group = sunit_group_with_bound(&desc, &s, cfg.discriminant_bound)?;
            let two: Vec<_> = group.s.iter().filter(|x| x.rational_prime == 2).cloned().collect();
            let chosen = two
                .get(*slot)
                .ok_or_else(|| Failure::input(format!("slot index {slot} out of range ({} primes above 2)", two.len())))?;
            let sols = solve_sunit_with_ceiling(&group, bound, ctx.ceiling())?;
            verdicts(vec![theorem_a_check(&group, *n, chosen, &sols, bound)?])
        }
        CheckTag::TheoremB { field, alpha } => {
            let desc = resolve_field(field)?;
            verdicts(vec![theorem_b_check_with_bound(&desc, *alpha, cfg.discriminant_bound)?])
        }
        CheckTag::CorollaryQuadratic { d, ell, alpha, bound } => {
            let run = bound.map(|b| ctx.run(&make_field(*d)?, &[2, *ell], b)).transpose()?;
            verdicts(vec![corollary_quadratic(*d, *ell, *alpha, run.as_ref())?])
        }
        CheckTag::CorollaryRamified { field, p, alpha, bound } => {
            let desc = resolve_field(field)?;
            let run = bound.map(|b| ctx.run(&desc, &[2], b)).transpose()?;
            verdicts(vec![corollary_ramified(&desc, *p, *alpha, run.as_ref())?])
        }
        CheckTag::CorollarySplits3 { field, alpha, bound } => {
            let desc = resolve_field(field)?;
            let run = bound.map(|b| ctx.run(&desc, &[2], b)).transpose()?;
            verdicts(vec![corollary_splits3(&desc, *alpha, run.as_ref())?])
        }
        CheckTag::Q24 { q, alpha, bound } => {
            let run = match bound {
                Some(b) => Some(ctx.run(&make_field(i64::try_from(*q).map_err(|_| Failure::input("q too large"))?)?, &[2], *b)?),
                None => None,
            };
            verdicts(vec![corollary_q24(*q, *alpha, run.as_ref())?])
        }
        CheckTag::CorollaryPrimeQuadratic { q, alpha } => verdicts(corollary_prime_quadratic(*q, *alpha)?),
        CheckTag::Z2Layer { r, alpha } => verdicts(vec![quartic_core::criteria::z2_layer_check(*r, *alpha)?]),
        CheckTag::Trace { d, primes, bound } => {
            let bound = bound.unwrap_or(cfg.exponent_bound);
            let desc = descriptor(*d)?;
            let run = ctx.run(&desc, primes, bound)?;
            let slot = run
                .group
                .s
                .iter()
                .find(|x| x.rational_prime == 2)
                .ok_or_else(|| Failure::input("S must contain a prime above 2"))?
                .clone();
            let traces = run
                .solutions
                .iter()
                .map(|sol| {
                    let solution = format!("({}, {})", sol.lambda, sol.mu);
                    match contradiction_trace(sol, &slot) {
                        Ok(r) => TraceEntry { solution, record: Some(r), error: None },
                        Err(e) => TraceEntry { solution, record: None, error: Some(e.to_string()) },
                    }
                })
                .collect();
            Payload::Trace(TracePayload {
                field: desc.label(),
                s: run.group.s.iter().map(|x| x.label()).collect(),
                bound,
                traces,
            })
        }
    })
}

fn density_payload(
    ctx: &Ctx,
    cutoff: u64,
    sample: &[i64],
    range: Option<u64>,
    bound: Option<u32>,
) -> Result<DensityReport, Failure> {
    let mut ds: Vec<i64> = sample.to_vec();
    if let Some(n) = range {
        let n = i64::try_from(n).map_err(|_| Failure::input("sample range too large"))?;
        for d in 2..=n {
            if quartic_core::arith::is_squarefree(d) {
                ds.extend([d, -d]);
            }
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    ds.retain(|d| seen.insert(*d));
    let mut report = residue_fractions_with_budget(cutoff, DEFAULT_SIEVE_BUDGET)?;
    if !ds.is_empty() {
        let bound = bound.unwrap_or(ctx.cfg.exponent_bound);
        report.sampled_membership =
            membership_sample_with_limits(&ds, bound, ctx.cfg.discriminant_bound, ctx.ceiling())?;
        report.set_membership = set_membership(&report.sampled_membership);
        report.sample_bound = Some(bound);
    }
    Ok(report)
}
