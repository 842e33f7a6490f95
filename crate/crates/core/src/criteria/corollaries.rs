use num_integer::Integer;

use super::theorem_a::{alpha_caveat, ord_two};
use super::verdict::{describe, Condition, CriterionVerdict, SolverRun, BOX_CAVEAT, CONJECTURAL_CAVEAT};
use crate::arith::{is_prime, kronecker};
use crate::error::{Error, Result};
use crate::qfield::{
    class_data_with_bound, make_field, primes_above, FieldDescriptor, FieldKind, PrimeSlot, QuadField,
    DEFAULT_DISCRIMINANT_BOUND,
};
use crate::sunit::{congruence_filters, m_value, FilterStatus, Relevance, SUnitSolution};

fn same_slots(run: &SolverRun, want: &[PrimeSlot]) -> bool {
    run.group.s.len() == want.len() && want.iter().all(|s| run.group.s.contains(s))
}

fn check_run(run: &SolverRun, k: QuadField, want: &[PrimeSlot]) -> Result<()> {
    if run.group.field != k {
        return Err(Error::FieldMismatch);
    }
    if !same_slots(run, want) {
        return Err(Error::WrongS);
    }
    Ok(())
}

fn first_witness<'a>(
    sols: &'a [SUnitSolution],
    mut bad: impl FnMut(&SUnitSolution) -> Result<bool>,
) -> Result<Option<&'a SUnitSolution>> {
    for s in sols {
        if bad(s)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

fn alpha_condition(alpha: u64, excluded: u64) -> Condition {
    Condition::check("alpha_exclusion", alpha != excluded, format!("alpha = {alpha}, excluded {excluded}"))
}

/// `x⁴ - y⁴ = 2^α ℓ^β z^p` over `Q(√d)`: the real case `d ≥ 13`,
/// `d ≡ 5 (mod 8)` or the imaginary case `|d| ≥ 7`, `d ≡ 2, 3 (mod 4)`,
/// with `ℓ ≥ 29` prime, `ℓ ≡ 5 (mod 8)` and `(d/ℓ) = -1`.
///
/// Solver evidence, when given, must be over `S = {primes above 2 and ℓ}`
/// and is required to contain no relevant solution.
pub fn corollary_quadratic(d: i64, ell: u64, alpha: u64, evidence: Option<&SolverRun>) -> Result<CriterionVerdict> {
    let field = make_field(d)?;
    let k = field.arith()?;
    let mut ev = Vec::new();
    if d > 0 {
        ev.push(Condition::check(
            "real_case",
            d >= 13 && d.rem_euclid(8) == 5,
            format!("d = {d}; d mod 8 = {}", d.rem_euclid(8)),
        ));
    } else {
        ev.push(Condition::check(
            "imaginary_case",
            d <= -7 && matches!(d.rem_euclid(4), 2 | 3),
            format!("d = {d}; d mod 4 = {}", d.rem_euclid(4)),
        ));
    }
    ev.push(Condition::check("ell_prime", ell >= 29 && is_prime(ell), format!("ell = {ell}")));
    ev.push(Condition::check("ell_mod_8", ell % 8 == 5, format!("ell mod 8 = {}", ell % 8)));
    let symbol = if ell % 2 == 1 { kronecker(d, ell as i64) } else { 0 };
    ev.push(Condition::check("legendre_symbol", symbol == -1, format!("(d/ell) = {symbol}")));
    let printed = match d.rem_euclid(8) {
        5 => Some(4),
        2 | 3 | 6 | 7 => Some(8),
        _ => None,
    };
    if let Some(x) = printed {
        ev.push(alpha_condition(alpha, x));
    }

    let two = primes_above(k, 2)?;
    let e = ord_two(&two[0])?;
    let mut search_bound = None;
    if let Some(run) = evidence {
        let mut want = two.clone();
        if is_prime(ell) {
            want.extend(primes_above(k, ell)?);
        }
        check_run(run, k, &want)?;
        let relevant: Vec<&SUnitSolution> =
            run.solutions.iter().filter(|s| s.relevance == Relevance::Relevant).collect();
        ev.push(
            Condition::check(
                "no_relevant_solutions",
                relevant.is_empty(),
                format!("{} solutions, {} relevant", run.solutions.len(), relevant.len()),
            )
            .with_witness(relevant.first().map(|s| describe(s))),
        );
        search_bound = Some(run.bound);
    }

    let mut v = CriterionVerdict::assemble(
        "corollary-quadratic",
        field.label(),
        [("d", d), ("ell", ell as i64), ("alpha", alpha as i64)],
        ev,
        search_bound,
    );
    v.alpha_exclusions = vec![4 * e as u64];
    v.printed_alpha_exclusions = printed.into_iter().collect();
    if search_bound.is_some() {
        v.caveats.push(BOX_CAVEAT.into());
    }
    if d < 0 {
        v.caveats.push(CONJECTURAL_CAVEAT.into());
    }
    if e != 1 {
        v.caveats.push(alpha_caveat(e));
    }
    Ok(v)
}

/// `ord(2)` at the unique prime above 2, when there is one.
fn unique_ord_two(field: &FieldDescriptor) -> Result<Option<u32>> {
    field.unique_prime_ord(2)
}

fn solver_field(field: &FieldDescriptor, run: &SolverRun) -> Result<(QuadField, PrimeSlot)> {
    let k = field.arith()?;
    let two = primes_above(k, 2)?;
    if two.len() != 1 {
        return Err(Error::PreconditionFailed("2 has more than one prime above it".into()));
    }
    check_run(run, k, &two)?;
    Ok((k, two[0].clone()))
}

/// Valuation bound `m < 2·ord(2)` over every solution.
fn small_m_condition(run: &SolverRun, slot: &PrimeSlot) -> Result<Condition> {
    let limit = 2 * ord_two(slot)?;
    let mut max_m = 0;
    let mut witness = None;
    for s in &run.solutions {
        let m = m_value(&s.lambda, &s.mu, slot)?;
        max_m = max_m.max(m);
        if m as i64 >= limit && witness.is_none() {
            witness = Some(s);
        }
    }
    Ok(Condition::check("small_m", witness.is_none(), format!("max m = {max_m}; limit 2·ord(2) = {limit}"))
        .with_witness(witness.map(describe)))
}

/// `x⁴ - y⁴ = 2^α z^p` over a field of degree `d` with `gcd(d, p - 1) = 1`
/// and both 2 and `p` totally ramified.
pub fn corollary_ramified(
    field: &FieldDescriptor,
    p: u64,
    alpha: u64,
    evidence: Option<&SolverRun>,
) -> Result<CriterionVerdict> {
    let deg = field.degree as u64;
    let mut ev = vec![
        Condition::gate("p_prime", p >= 5 && is_prime(p), format!("p = {p}")),
        Condition::gate("degree_coprime", deg.gcd(&(p.max(1) - 1)) == 1, format!("gcd({deg}, {}) = {}", p.max(1) - 1, deg.gcd(&(p.max(1) - 1)))),
    ];
    if !is_prime(p) {
        return Ok(CriterionVerdict::assemble("corollary-ramified", field.label(), [("p", p as i64), ("alpha", alpha as i64)], ev, None));
    }
    ev.push(Condition::check("two_totally_ramified", field.is_totally_ramified(2)?, format!("{:?}", field.decomposition(2)?)));
    ev.push(Condition::check("p_totally_ramified", field.is_totally_ramified(p)?, format!("{:?}", field.decomposition(p)?)));
    ev.push(alpha_condition(alpha, 4 * deg));
    let mut search_bound = None;
    if let Some(run) = evidence {
        let (_, slot) = solver_field(field, run)?;
        ev.push(small_m_condition(run, &slot)?);
        search_bound = Some(run.bound);
    }
    let mut v = CriterionVerdict::assemble(
        "corollary-ramified",
        field.label(),
        [("degree", deg as i64), ("p", p as i64), ("alpha", alpha as i64)],
        ev,
        search_bound,
    );
    v.printed_alpha_exclusions = vec![4 * deg];
    v.alpha_exclusions = vec![4 * unique_ord_two(field)?.map_or(deg, u64::from)];
    finish_general(&mut v, field);
    Ok(v)
}

fn finish_general(v: &mut CriterionVerdict, field: &FieldDescriptor) {
    if v.search_bound.is_some() {
        v.caveats.push(BOX_CAVEAT.into());
    }
    if !field.is_totally_real() {
        v.caveats.push(CONJECTURAL_CAVEAT.into());
    }
}

/// `x⁴ - y⁴ = 2^α z^p` over a field of odd degree `d` with 2 totally
/// ramified and 3 totally split.
///
/// Solver evidence (only `Q` qualifies among fields with element
/// arithmetic) is replayed through the unit-partner and residue filters.
pub fn corollary_splits3(field: &FieldDescriptor, alpha: u64, evidence: Option<&SolverRun>) -> Result<CriterionVerdict> {
    let deg = field.degree as u64;
    let mut ev = vec![Condition::gate("odd_degree", deg % 2 == 1, format!("degree = {deg}"))];
    ev.push(Condition::check("two_totally_ramified", field.is_totally_ramified(2)?, format!("{:?}", field.decomposition(2)?)));
    ev.push(Condition::check("three_totally_split", field.is_totally_split(3)?, format!("{:?}", field.decomposition(3)?)));
    ev.push(alpha_condition(alpha, 4 * deg));
    let mut search_bound = None;
    if let Some(run) = evidence {
        let (_, slot) = solver_field(field, run)?;
        ev.push(small_m_condition(run, &slot)?);
        let mut failed = None;
        let mut partners = 0;
        for s in &run.solutions {
            let r = congruence_filters(s, &run.group)?;
            partners += r.partner.is_some() as usize;
            let bad = [&r.mod3, &r.unit_partner, &r.norm_sign].into_iter().find(|o| o.status == FilterStatus::Failed);
            if let (None, Some(o)) = (&failed, bad) {
                failed = Some(format!("{}: {}", describe(s), o.detail));
            }
        }
        ev.push(
            Condition::check(
                "filters_consistent",
                failed.is_none(),
                format!("{} solutions replayed, {partners} unit partners", run.solutions.len()),
            )
            .with_witness(failed),
        );
        search_bound = Some(run.bound);
    }
    let mut v = CriterionVerdict::assemble(
        "corollary-splits3",
        field.label(),
        [("degree", deg as i64), ("alpha", alpha as i64)],
        ev,
        search_bound,
    );
    v.printed_alpha_exclusions = vec![4 * deg];
    v.alpha_exclusions = vec![4 * unique_ord_two(field)?.map_or(deg, u64::from)];
    finish_general(&mut v, field);
    Ok(v)
}

/// `x⁴ - y⁴ = 2^α z^p` over `Q(√q)` for a prime `q > 73`, `q ≡ 1 (mod 24)`.
///
/// Solver evidence over the two primes above 2 is checked for the pattern
/// `max(|ord_P1 λ|, |ord_P1 μ|) = 1` or the same at `P2`.
pub fn corollary_q24(q: u64, alpha: u64, evidence: Option<&SolverRun>) -> Result<CriterionVerdict> {
    let mut ev = vec![
        Condition::check("q_prime", is_prime(q), format!("q = {q}")),
        Condition::check("q_above_73", q > 73, format!("q = {q}")),
        Condition::check("q_mod_24", q % 24 == 1, format!("q mod 24 = {}", q % 24)),
        alpha_condition(alpha, 4),
    ];
    let mut search_bound = None;
    let mut label = format!("Q(sqrt({q}))");
    if let Some(run) = evidence {
        let k = run.group.field;
        if k.d() != q as i64 {
            return Err(Error::FieldMismatch);
        }
        label = k.descriptor().label();
        let two = primes_above(k, 2)?;
        check_run(run, k, &two)?;
        let witness = first_witness(&run.solutions, |s| {
            for slot in &two {
                if m_value(&s.lambda, &s.mu, slot)? == 1 {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
        ev.push(
            Condition::check("split_pattern", witness.is_none(), format!("{} solutions checked", run.solutions.len()))
                .with_witness(witness.map(describe)),
        );
        search_bound = Some(run.bound);
    }
    let mut v =
        CriterionVerdict::assemble("q24", label, [("q", q as i64), ("alpha", alpha as i64)], ev, search_bound);
    v.alpha_exclusions = vec![4];
    v.printed_alpha_exclusions = vec![4];
    if search_bound.is_some() {
        v.caveats.push(BOX_CAVEAT.into());
    }
    Ok(v)
}

pub fn theorem_b_check(field: &FieldDescriptor, alpha: u64) -> Result<CriterionVerdict> {
    theorem_b_check_with_bound(field, alpha, DEFAULT_DISCRIMINANT_BOUND)
}

/// One prime above 2, odd narrow class number and `α ≠ 4·ord(2)`.
pub fn theorem_b_check_with_bound(field: &FieldDescriptor, alpha: u64, disc_bound: u64) -> Result<CriterionVerdict> {
    let e = unique_ord_two(field)?;
    let mut ev = vec![Condition::check(
        "unique_prime_above_2",
        e.is_some(),
        format!("decomposition of 2: {:?}", field.decomposition(2)?),
    )];
    let (h_plus, odd) = match field.kind {
        FieldKind::Abstract => {
            let odd = field.narrow_class_number_odd.ok_or_else(|| {
                Error::PreconditionFailed("narrow class number parity not supplied".into())
            })?;
            (None, odd)
        }
        _ => {
            let c = class_data_with_bound(field, disc_bound)?;
            (Some(c.h_plus), c.h_plus % 2 == 1)
        }
    };
    let detail = match h_plus {
        Some(h) => format!("h+ = {h}"),
        None => format!("supplied parity: {}", if odd { "odd" } else { "even" }),
    };
    ev.push(Condition::check("narrow_class_number_odd", odd, detail));
    if let Some(e) = e {
        ev.push(alpha_condition(alpha, 4 * e as u64));
    }
    let mut v = CriterionVerdict::assemble("theoremB", field.label(), [("alpha", alpha as i64)], ev, None);
    if let Some(e) = e {
        v.alpha_exclusions = vec![4 * e as u64];
        v.printed_alpha_exclusions = vec![4 * e as u64];
    }
    if let Some(d) = field.d {
        v.parameters.insert("d".into(), d);
    }
    finish_general(&mut v, field);
    if let (Some(d), Some(h)) = (field.d, h_plus) {
        if let Some(case) = prime_quadratic_case(d) {
            if h % 2 == 0 {
                v.caveats.push(format!(
                    "Q(sqrt({d})) with {case} is listed among the quadratic fields of prime conductor with odd narrow class number, but the computed h+ = {h} is even"
                ));
            }
        }
    }
    Ok(v)
}

/// The printed congruence case that lists `Q(√d)` with `|d|` an odd prime.
fn prime_quadratic_case(d: i64) -> Option<String> {
    let q = d.unsigned_abs();
    if q == 2 || !is_prime(q) {
        return None;
    }
    let listed = if d > 0 { q % 8 == 5 || q % 4 == 3 } else { q % 8 == 3 || q % 4 == 1 };
    listed.then(|| format!("q = {q} ≡ {} (mod 8)", q % 8))
}

/// Theorem B over each printed field `Q(√q)` (for `q ≡ 5 mod 8` or
/// `q ≡ 3 mod 4`) and `Q(√-q)` (for `q ≡ 3 mod 8` or `q ≡ 1 mod 4`).
pub fn corollary_prime_quadratic(q: u64, alpha: u64) -> Result<Vec<CriterionVerdict>> {
    if q == 2 || !is_prime(q) {
        return Err(Error::InvalidArgument(format!("q = {q} must be an odd prime")));
    }
    let mut out = Vec::new();
    let q = q as i64;
    for d in [q, -q] {
        if prime_quadratic_case(d).is_some() {
            let mut v = theorem_b_check(&make_field(d)?, alpha as u64)?;
            v.statement_id = "corollary-prime-quadratic".into();
            v.parameters.insert("q".into(), q);
            out.push(v);
        }
    }
    Ok(out)
}

/// `x⁴ - y⁴ = 2^α z^p` over the r-th layer of the cyclotomic
/// Z_2-extension, recording both `α ≠ 2^r` and the general rule
/// `α ≠ 4·ord(2) = 2^{r+2}`.
pub fn z2_layer_check(r: u32, alpha: u64) -> Result<CriterionVerdict> {
    if r == 0 {
        let ev = vec![Condition::gate("layer_index", false, "r = 0 is the base field; layers start at r = 1")];
        return Ok(CriterionVerdict::assemble("z2-layer", "Q".into(), [("r", 0), ("alpha", alpha as i64)], ev, None));
    }
    let field = FieldDescriptor::z2_layer(r)?;
    let printed = 1u64 << r;
    let rule = 1u64 << (r + 2);
    let ev = vec![
        Condition::check("unique_prime_above_2", field.is_totally_ramified(2)?, "2 is totally ramified"),
        Condition::check("narrow_class_number_odd", field.narrow_class_number_odd == Some(true), "odd narrow class number"),
        Condition::check("alpha_printed_exclusion", alpha != printed, format!("alpha = {alpha}, excluded {printed}")),
        Condition::check("alpha_rule_exclusion", alpha != rule, format!("alpha = {alpha}, excluded 4·ord(2) = {rule}")),
    ];
    let mut v = CriterionVerdict::assemble("z2-layer", field.label(), [("r", r as i64), ("alpha", alpha as i64)], ev, None);
    v.alpha_exclusions = vec![rule];
    v.printed_alpha_exclusions = vec![printed];
    v.caveats.push(format!(
        "the printed exclusion alpha != 2^r = {printed} differs from the rule alpha != 4·ord(2) = 2^(r+2) = {rule}"
    ));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::Status;
    use crate::qfield::SplittingType::*;
    use crate::sunit::slots_above;

    #[test]
    fn quadratic_vectors() {
        assert_eq!(corollary_quadratic(21, 29, 3, None).unwrap().status, Status::Holds);
        let v = corollary_quadratic(13, 29, 3, None).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert_eq!(v.failed_conditions().map(|c| c.name.as_str()).collect::<Vec<_>>(), vec!["legendre_symbol"]);
        let v = corollary_quadratic(21, 29, 4, None).unwrap();
        assert_eq!(v.failed_conditions().map(|c| c.name.as_str()).collect::<Vec<_>>(), vec!["alpha_exclusion"]);
        assert_eq!(corollary_quadratic(12, 29, 3, None), Err(Error::NotSquarefree(12)));
        let v = corollary_quadratic(-10, 37, 3, None).unwrap();
        assert_eq!(v.printed_alpha_exclusions, vec![8]);
        assert_eq!(v.alpha_exclusions, vec![8]);
    }

    #[test]
    fn quadratic_with_solver_evidence() {
        let f = make_field(21).unwrap();
        let run = SolverRun::new(&f, &slots_above(&f, &[2, 29]).unwrap(), 3).unwrap();
        let v = corollary_quadratic(21, 29, 3, Some(&run)).unwrap();
        assert_eq!(v.status, Status::HoldsAtBound);
        let wrong = SolverRun::new(&f, &slots_above(&f, &[2]).unwrap(), 3).unwrap();
        assert_eq!(corollary_quadratic(21, 29, 3, Some(&wrong)), Err(Error::WrongS));
    }

    #[test]
    fn ramified_vectors() {
        let cubic = FieldDescriptor::abstract_field(3, 3, [(2, Ramified), (5, Ramified)]).unwrap();
        assert_eq!(corollary_ramified(&cubic, 5, 1, None).unwrap().status, Status::Holds);
        assert_eq!(corollary_ramified(&cubic, 5, 12, None).unwrap().status, Status::Fails);
        assert_eq!(corollary_ramified(&make_field(10).unwrap(), 5, 1, None).unwrap().status, Status::NotApplicable);
        let quintic = FieldDescriptor::abstract_field(5, 5, [(2, Ramified), (11, Ramified)]).unwrap();
        assert_eq!(corollary_ramified(&quintic, 11, 1, None).unwrap().status, Status::NotApplicable);
        assert_eq!(corollary_ramified(&cubic, 7, 1, None), Err(Error::MissingTableEntry(7)));
    }

    #[test]
    fn rational_solver_evidence_for_general_corollaries() {
        let q = FieldDescriptor::rational();
        let run = SolverRun::new(&q, &slots_above(&q, &[2]).unwrap(), 12).unwrap();
        assert_eq!(corollary_ramified(&q, 5, 1, Some(&run)).unwrap().status, Status::HoldsAtBound);
        let v = corollary_splits3(&q, 1, Some(&run)).unwrap();
        assert_eq!(v.status, Status::HoldsAtBound, "{v:?}");
    }

    #[test]
    fn splits3_vectors() {
        let good = FieldDescriptor::abstract_field(3, 3, [(2, Ramified), (3, Split)]).unwrap();
        assert_eq!(corollary_splits3(&good, 1, None).unwrap().status, Status::Holds);
        let inert = FieldDescriptor::abstract_field(3, 3, [(2, Ramified), (3, Inert)]).unwrap();
        let v = corollary_splits3(&inert, 1, None).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert_eq!(v.failed_conditions().next().unwrap().name, "three_totally_split");
        assert_eq!(corollary_splits3(&make_field(-7).unwrap(), 1, None).unwrap().status, Status::NotApplicable);
    }

    #[test]
    fn q24_vectors() {
        assert_eq!(corollary_q24(97, 2, None).unwrap().status, Status::Holds);
        let v = corollary_q24(73, 2, None).unwrap();
        assert_eq!(v.failed_conditions().map(|c| c.name.as_str()).collect::<Vec<_>>(), vec!["q_above_73"]);
        let v = corollary_q24(89, 2, None).unwrap();
        assert_eq!(v.failed_conditions().map(|c| c.name.as_str()).collect::<Vec<_>>(), vec!["q_mod_24"]);
        assert_eq!(corollary_q24(97, 4, None).unwrap().status, Status::Fails);
    }

    #[test]
    fn q24_with_solver_evidence() {
        let f = make_field(97).unwrap();
        let run = SolverRun::new(&f, &slots_above(&f, &[2]).unwrap(), 2).unwrap();
        let v = corollary_q24(97, 2, Some(&run)).unwrap();
        assert_eq!(v.status, Status::HoldsAtBound, "{v:?}");
    }

    #[test]
    fn theorem_b_vectors() {
        assert_eq!(theorem_b_check(&make_field(5).unwrap(), 1).unwrap().status, Status::Holds);
        let v = theorem_b_check(&make_field(-5).unwrap(), 1).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert!(v.caveats.iter().any(|c| c.contains("h+ = 2")));
        let v = theorem_b_check(&make_field(7).unwrap(), 1).unwrap();
        assert_eq!(v.status, Status::Fails);
        assert!(v.caveats.iter().any(|c| c.contains("Q(sqrt(7))") && c.contains("h+ = 2")));
        let v = theorem_b_check(&make_field(5).unwrap(), 4).unwrap();
        assert_eq!(v.status, Status::Fails);
        // 2 splits in Q(sqrt 17)
        assert_eq!(theorem_b_check(&make_field(17).unwrap(), 1).unwrap().status, Status::Fails);
    }

    #[test]
    fn prime_quadratic_cases() {
        let vs = corollary_prime_quadratic(13, 1).unwrap();
        // 13 ≡ 5 (mod 8): both Q(sqrt 13) and Q(sqrt -13) are listed
        assert_eq!(vs.len(), 2);
        assert_eq!(vs[0].status, Status::Holds);
        assert_eq!(vs[1].status, Status::Fails);
        let vs = corollary_prime_quadratic(11, 1).unwrap();
        assert_eq!(vs.iter().map(|v| v.status).collect::<Vec<_>>(), vec![Status::Fails, Status::Holds]);
    }

    #[test]
    fn z2_layers() {
        let v = z2_layer_check(1, 1).unwrap();
        assert_eq!((v.printed_alpha_exclusions.clone(), v.alpha_exclusions.clone()), (vec![2], vec![8]));
        assert_eq!(v.status, Status::Holds);
        assert_eq!(z2_layer_check(1, 2).unwrap().status, Status::Fails);
        assert_eq!(z2_layer_check(1, 8).unwrap().status, Status::Fails);
        let v = z2_layer_check(2, 1).unwrap();
        assert_eq!((v.printed_alpha_exclusions.clone(), v.alpha_exclusions.clone()), (vec![4], vec![16]));
        assert_eq!(z2_layer_check(0, 1).unwrap().status, Status::NotApplicable);
    }
}
