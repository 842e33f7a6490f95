use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::arith::strip_prime;
use crate::error::{Error, Result};
use crate::qfield::{
    class_data_with_bound, primes_above, torsion_generator, valuation, AlgebraicNumber,
    FieldDescriptor, Ideal, PrimeSlot, QuadField, DEFAULT_DISCRIMINANT_BOUND,
};

/// The group of S-units `μ_K × ε^Z × γ_1^Z × … × γ_s^Z`.
///
/// The `γ_i` generate the principal ideals of the lattice
/// `{v : ∏ P_i^{v_i} principal}`, taken in Hermite normal form, so their
/// valuation rows form an upper triangular basis of that lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SUnitGroup {
    pub field: QuadField,
    pub s: Vec<PrimeSlot>,
    pub class_number: u64,
    /// All roots of unity, as powers `ζ^0, ζ^1, …` of a generator.
    pub torsion: Vec<AlgebraicNumber>,
    /// The fundamental unit (real fields) followed by the `γ_i`.
    pub free_generators: Vec<AlgebraicNumber>,
    /// Row `i` lists the valuations of generator `i` at the slots of `S`.
    pub valuation_matrix: Vec<Vec<i64>>,
    /// Non-S primes lying over the same rational primes as `S`.
    #[serde(skip)]
    outside: Vec<PrimeSlot>,
    #[serde(skip)]
    s_primes: BTreeSet<u64>,
}

pub fn sunit_group(field: &FieldDescriptor, s: &[PrimeSlot]) -> Result<SUnitGroup> {
    sunit_group_with_bound(field, s, DEFAULT_DISCRIMINANT_BOUND)
}

/// All primes of `field` above each listed rational prime.
pub fn slots_above(field: &FieldDescriptor, primes: &[u64]) -> Result<Vec<PrimeSlot>> {
    let k = field.arith()?;
    let mut out = Vec::new();
    for &p in primes {
        for slot in primes_above(k, p)? {
            if !out.contains(&slot) {
                out.push(slot);
            }
        }
    }
    Ok(out)
}

pub fn sunit_group_with_bound(
    field: &FieldDescriptor,
    s: &[PrimeSlot],
    disc_bound: u64,
) -> Result<SUnitGroup> {
    let k = field.arith()?;
    for (i, slot) in s.iter().enumerate() {
        if slot.field != k {
            return Err(Error::FieldMismatch);
        }
        if s[..i].contains(slot) {
            return Err(Error::InvalidArgument(format!("prime {} listed twice", slot.label())));
        }
    }
    let class = class_data_with_bound(field, disc_bound)?;
    let (zeta, order) = torsion_generator(k);
    let torsion: Vec<AlgebraicNumber> = (0..order as i64)
        .map(|i| zeta.pow(i).expect("root of unity is invertible"))
        .collect();

    let lattice = principal_lattice(s, class.h);
    let eps = class.fundamental_unit.clone();
    let mut free_generators = Vec::new();
    let mut valuation_matrix = Vec::new();
    if let Some(e) = &eps {
        free_generators.push(e.clone());
        valuation_matrix.push(vec![0; s.len()]);
    }
    for row in &lattice {
        let mut ideal = Ideal::unit(k);
        for (slot, &v) in s.iter().zip(row) {
            ideal = ideal.mul(&slot.ideal().pow(v as u32));
        }
        let g = ideal
            .principal_generator()
            .expect("lattice rows correspond to principal ideals");
        free_generators.push(normalize_generator(g, eps.as_ref(), &torsion));
        valuation_matrix.push(row.clone());
    }

    let s_primes: BTreeSet<u64> = s.iter().map(|slot| slot.rational_prime).collect();
    let mut outside = Vec::new();
    for &p in &s_primes {
        outside.extend(primes_above(k, p)?.into_iter().filter(|sl| !s.contains(sl)));
    }
    Ok(SUnitGroup {
        field: k,
        s: s.to_vec(),
        class_number: class.h,
        torsion,
        free_generators,
        valuation_matrix,
        outside,
        s_primes,
    })
}

/// HNF basis of `{v ∈ Z^s : ∏ P_i^{v_i} principal}`.
fn principal_lattice(s: &[PrimeSlot], h: u64) -> Vec<Vec<i64>> {
    let n = s.len();
    let h = h as i64;
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = h;
            r
        })
        .collect();
    if h > 1 && n > 0 {
        let ideals: Vec<Ideal> = s.iter().map(PrimeSlot::ideal).collect();
        let mut v = vec![0i64; n];
        // odometer over [0, h)^n, skipping the zero vector
        loop {
            let mut i = 0;
            while i < n {
                v[i] += 1;
                if v[i] < h {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            let mut ideal = Ideal::unit(s[0].field);
            for (p, &e) in ideals.iter().zip(&v) {
                ideal = ideal.mul(&p.pow(e as u32));
            }
            if ideal.principal_generator().is_some() {
                rows.push(v.clone());
            }
        }
    }
    hermite_normal_form(rows, n)
}

/// Row-style Hermite normal form of a full-rank integer lattice: upper
/// triangular, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`.
pub(crate) fn hermite_normal_form(mut rows: Vec<Vec<i64>>, n: usize) -> Vec<Vec<i64>> {
    let mut basis: Vec<Vec<i64>> = Vec::with_capacity(n);
    for col in 0..n {
        let mut pivot: Option<Vec<i64>> = None;
        let mut rest = Vec::with_capacity(rows.len());
        for r in rows {
            if r[col] == 0 {
                rest.push(r);
                continue;
            }
            pivot = Some(match pivot {
                None => r,
                Some(p) => {
                    let eg = p[col].extended_gcd(&r[col]);
                    let (ua, ub) = (r[col] / eg.gcd, p[col] / eg.gcd);
                    let combined: Vec<i64> =
                        p.iter().zip(&r).map(|(a, b)| eg.x * a + eg.y * b).collect();
                    let reduced: Vec<i64> =
                        p.iter().zip(&r).map(|(a, b)| ua * a - ub * b).collect();
                    rest.push(reduced);
                    combined
                }
            });
        }
        let mut p = pivot.expect("lattice has full rank");
        if p[col] < 0 {
            p.iter_mut().for_each(|x| *x = -*x);
        }
        for b in basis.iter_mut() {
            let q = num_integer::Integer::div_floor(&b[col], &p[col]);
            b.iter_mut().zip(&p).for_each(|(x, y)| *x -= q * y);
        }
        basis.push(p);
        rows = rest;
    }
    basis
}

/// `|u| > |v|` in the real embedding.
fn abs_gt(u: &AlgebraicNumber, v: &AlgebraicNumber) -> bool {
    (u * u - v * v).real_sign() == Some(Ordering::Greater)
}

/// Picks a canonical associate: balanced against the fundamental unit and
/// positive for real fields, the largest torsion multiple otherwise.
fn normalize_generator(
    mut g: AlgebraicNumber,
    eps: Option<&AlgebraicNumber>,
    torsion: &[AlgebraicNumber],
) -> AlgebraicNumber {
    if let Some(e) = eps {
        let e_inv = e.inv().expect("unit");
        loop {
            let gc = g.conj();
            if abs_gt(&g, &(e * &gc)) {
                g = &g * &e_inv;
            } else if !abs_gt(&(&g * e), &gc) {
                g = &g * e;
            } else {
                break;
            }
        }
        if g.real_sign() == Some(Ordering::Less) {
            g = -g;
        }
        return g;
    }
    torsion
        .iter()
        .map(|z| z * &g)
        .max_by(|a, b| a.canonical_cmp(b))
        .expect("torsion contains 1")
}

impl SUnitGroup {
    /// Number of free generators.
    pub fn rank(&self) -> usize {
        self.free_generators.len()
    }

    pub fn has_fundamental_unit(&self) -> bool {
        self.field.is_real() && !self.field.is_rational()
    }

    pub fn s_primes(&self) -> &BTreeSet<u64> {
        &self.s_primes
    }

    /// Whether `x` has valuation zero at every prime outside `S`.
    ///
    /// Away from the rational primes under `S` this needs no factoring: `x`
    /// must be integral there and have norm coprime to them.
    pub fn is_s_unit(&self, x: &AlgebraicNumber) -> bool {
        if x.is_zero() || x.field() != self.field {
            return false;
        }
        let strip = |mut n: BigInt| {
            for &p in &self.s_primes {
                n = strip_prime(&n, p);
            }
            n
        };
        if !strip(x.denominator()).is_one() {
            return false;
        }
        let norm = x.norm();
        if !strip(norm.numer().clone()).abs().is_one() || !strip(norm.denom().clone()).is_one() {
            return false;
        }
        self.outside
            .iter()
            .all(|slot| valuation(x, slot).expect("non-zero") == 0)
    }

    /// Valuations of `x` at the slots of `S`.
    pub fn s_valuations(&self, x: &AlgebraicNumber) -> Result<Vec<i64>> {
        self.s.iter().map(|slot| valuation(x, slot)).collect()
    }

    /// Exponent vector of an S-unit: free exponents followed by the torsion
    /// exponent. `None` when `x` is not an S-unit.
    pub fn exponents(&self, x: &AlgebraicNumber) -> Option<Vec<i64>> {
        if !self.is_s_unit(x) {
            return None;
        }
        let w = self.s_valuations(x).ok()?;
        let offset = usize::from(self.has_fundamental_unit());
        let n = self.s.len();
        let mut exps = vec![0i64; self.rank()];
        // forward substitution against the upper triangular rows
        for j in 0..n {
            let mut r = w[j];
            for i in 0..j {
                r -= exps[offset + i] * self.valuation_matrix[offset + i][j];
            }
            let pivot = self.valuation_matrix[offset + j][j];
            debug_assert_eq!(r % pivot, 0);
            exps[offset + j] = r / pivot;
        }
        let mut u = x.clone();
        for i in 0..n {
            let g = self.free_generators[offset + i].pow(exps[offset + i]).ok()?;
            u = u.checked_div(&g).ok()?;
        }
        if offset == 1 {
            let eps = &self.free_generators[0];
            let e_inv = eps.inv().ok()?;
            let one = AlgebraicNumber::one(self.field);
            let mut k = 0i64;
            while abs_gt(&u, &one) {
                u = &u * &e_inv;
                k += 1;
            }
            while abs_gt(&one, &u) {
                u = &u * eps;
                k -= 1;
            }
            exps[0] = k;
        }
        let t = self.torsion.iter().position(|z| *z == u)?;
        exps.push(t as i64);
        Some(exps)
    }

    /// The element with the given exponent vector.
    pub fn element(&self, exps: &[i64]) -> Result<AlgebraicNumber> {
        if exps.len() != self.rank() + 1 {
            return Err(Error::InvalidArgument("exponent vector length".into()));
        }
        let t = exps[self.rank()].rem_euclid(self.torsion.len() as i64) as usize;
        let mut x = self.torsion[t].clone();
        for (g, &e) in self.free_generators.iter().zip(exps) {
            x = &x * &g.pow(e)?;
        }
        Ok(x)
    }
}
