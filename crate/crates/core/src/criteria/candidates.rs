//! The candidate set for exceptional primes, elimination certificates and
//! witnesses of genuine exceptionality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use super::rideal::RIdealResult;
use super::sieve::{sieve_prime, SieveResult};
use super::TraceSource;
use crate::arith::{divisor_set_intersection_with, factorize_with, primes_up_to, DivisorSet, FactorConfig};
use crate::ellcurve::{CurveModel, FrobeniusData};
use crate::error::{Error, Result};
use crate::finfield::is_irreducible_mod_p;
use crate::intpoly::IntPoly;
use crate::numfield::{KElement, PrimeIdealData};

/// Why a sieve prime contributed nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkipReason {
    /// `ell` divides the norm of the discriminant.
    BadReduction,
    /// `ell` divides the index of `Z[theta]` and no override was given.
    IndexDivisor,
    /// A residue field above `ell` is too large to count points on.
    ResidueFieldTooLarge,
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SkipReason::BadReduction => "ell divides N(disc)",
            SkipReason::IndexDivisor => "ell divides the index of Z[theta]",
            SkipReason::ResidueFieldTooLarge => "residue field too large",
        })
    }
}

impl SkipReason {
    /// The reason a sieve prime is unusable, if `err` is such a reason.
    pub fn from_error(err: &Error) -> Option<Self> {
        match err {
            Error::BadReductionPrime(_) | Error::BadReductionAtIdeal(_) => Some(SkipReason::BadReduction),
            Error::IndexDivisor(_) => Some(SkipReason::IndexDivisor),
            Error::FieldTooLargeForEnumeration(_) => Some(SkipReason::ResidueFieldTooLarge),
            _ => None,
        }
    }
}

fn skip_reason(err: &Error) -> Option<SkipReason> {
    SkipReason::from_error(err)
}

/// `P_q` is irreducible mod `p`, so `E[p]` is irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub p: BigUint,
    pub ideal: PrimeIdealData,
    pub trace: BigInt,
    pub frobenius_poly: IntPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CandidateStatus {
    Eliminated(Certificate),
    WitnessedExceptional(String),
    Undecided,
}

impl fmt::Display for CandidateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CandidateStatus::Eliminated(c) => {
                write!(f, "eliminated by {} (P = {} irreducible mod {})", c.ideal, c.frobenius_poly, c.p)
            }
            CandidateStatus::WitnessedExceptional(w) => write!(f, "exceptional ({w})"),
            CandidateStatus::Undecided => f.write_str("undecided"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CandidateReport {
    /// `6 |D_K| |N(disc)|`.
    pub screening_value: BigInt,
    pub screening_primes: BTreeSet<BigUint>,
    /// In ascending `ell`.
    pub sieve_results: Vec<SieveResult>,
    pub skipped: Vec<(u64, SkipReason)>,
    /// `R_q` values, in the order supplied.
    pub r_results: Vec<RIdealResult>,
    /// Intersection of the sieve sets and of the prime divisors of the
    /// `R_q`; every prime when nothing ran.
    pub intersection: DivisorSet,
    pub candidates: DivisorSet,
    /// One entry per candidate when the candidate set is finite.
    pub statuses: BTreeMap<BigUint, CandidateStatus>,
}

impl CandidateReport {
    pub fn witnessed(&self) -> BTreeSet<BigUint> {
        self.with_status(|s| matches!(s, CandidateStatus::WitnessedExceptional(_)))
    }

    pub fn undecided(&self) -> BTreeSet<BigUint> {
        self.with_status(|s| matches!(s, CandidateStatus::Undecided))
    }

    pub fn eliminated(&self) -> BTreeSet<BigUint> {
        self.with_status(|s| matches!(s, CandidateStatus::Eliminated(_)))
    }

    fn with_status(&self, pred: impl Fn(&CandidateStatus) -> bool) -> BTreeSet<BigUint> {
        self.statuses
            .iter()
            .filter(|(_, s)| pred(s))
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// Marks `p` exceptional. A witness for an eliminated prime, or for a
    /// prime outside the candidate set, means something upstream is wrong.
    pub fn record_witness(&mut self, p: &BigUint, description: impl Into<String>) -> Result<()> {
        match self.statuses.get(p) {
            Some(CandidateStatus::Eliminated(c)) => Err(Error::InternalInconsistency(format!(
                "{p} has an exceptionality witness but was eliminated by {}",
                c.ideal
            ))),
            None if !self.candidates.contains(p) => Err(Error::InternalInconsistency(format!(
                "{p} has an exceptionality witness but is not a candidate"
            ))),
            _ => {
                self.statuses
                    .insert(p.clone(), CandidateStatus::WitnessedExceptional(description.into()));
                Ok(())
            }
        }
    }
}

/// `6 |D_K| |N(disc)|` for an integral model.
pub fn screening_value(curve: &CurveModel) -> Result<BigInt> {
    let n = curve.discriminant_norm()?;
    Ok(BigInt::from(6) * curve.field().field_disc().abs() * n.abs())
}

/// Candidates for exceptional primes: divisors of the screening value
/// together with the intersection of the sieve sets at `ells`.
pub fn exceptional_candidates(
    curve: &CurveModel,
    ells: &[u64],
    source: &dyn TraceSource,
    config: &FactorConfig,
) -> Result<CandidateReport> {
    let mut ells = ells.to_vec();
    ells.sort_unstable();
    ells.dedup();
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    for &ell in &ells {
        match sieve_prime(curve, ell, source) {
            Ok(r) => results.push(r),
            Err(e) => match skip_reason(&e) {
                Some(reason) => skipped.push((ell, reason)),
                None => return Err(e),
            },
        }
    }
    assemble(curve, results, skipped, Vec::new(), config)
}

/// Builds the report from sieve outcomes computed elsewhere (for instance
/// in parallel) and from `R_q` values. Sieve outcomes are sorted by `ell`.
pub fn assemble(
    curve: &CurveModel,
    mut results: Vec<SieveResult>,
    mut skipped: Vec<(u64, SkipReason)>,
    r_results: Vec<RIdealResult>,
    config: &FactorConfig,
) -> Result<CandidateReport> {
    if results.is_empty() && r_results.is_empty() && !skipped.is_empty() {
        return Err(Error::NoUsablePrimes);
    }
    results.sort_by_key(|r| r.ell);
    skipped.sort_by_key(|s| s.0);
    let screening_value = screening_value(curve)?;
    let screening_primes: BTreeSet<BigUint> =
        factorize_with(&screening_value, config)?.primes().cloned().collect();
    let d = curve.field().degree();
    let mut integers: Vec<BigInt> = results.iter().map(|r| r.sieve_integer(d)).collect();
    // For d = 1 both criteria are silent at p = ell.
    integers.extend(r_results.iter().map(|r| {
        if d == 1 {
            &r.value * BigInt::from(r.frobenius.ideal.ell)
        } else {
            r.value.clone()
        }
    }));
    let intersection = if integers.is_empty() {
        DivisorSet::AllPrimes
    } else {
        divisor_set_intersection_with(&integers, config)?
    };
    let candidates = DivisorSet::Primes(screening_primes.clone()).union(&intersection);
    let statuses = match &candidates {
        DivisorSet::AllPrimes => BTreeMap::new(),
        DivisorSet::Primes(set) => set.iter().map(|p| (p.clone(), CandidateStatus::Undecided)).collect(),
    };
    Ok(CandidateReport {
        screening_value,
        screening_primes,
        sieve_results: results,
        skipped,
        r_results,
        intersection,
        candidates,
        statuses,
    })
}

/// Frobenius data at the usable ideals above each prime up to a bound,
/// computed on first use.
struct IdealSearch<'a> {
    curve: &'a CurveModel,
    source: &'a dyn TraceSource,
    ells: Vec<u64>,
    found: BTreeMap<u64, Vec<FrobeniusData>>,
}

impl IdealSearch<'_> {
    fn at(&mut self, ell: u64) -> Result<&[FrobeniusData]> {
        if !self.found.contains_key(&ell) {
            let data = self.compute(ell)?;
            self.found.insert(ell, data);
        }
        Ok(&self.found[&ell])
    }

    fn compute(&self, ell: u64) -> Result<Vec<FrobeniusData>> {
        if !self.curve.good_reduction_at(ell)? {
            return Ok(Vec::new());
        }
        let ideals = match self.curve.field().factor_prime(ell) {
            Ok(ideals) => ideals,
            Err(e) if skip_reason(&e).is_some() => return Ok(Vec::new()),
            Err(e) => return Err(e),
        };
        let mut out = Vec::new();
        for q in &ideals {
            match self.source.frobenius(self.curve, q) {
                Ok(fd) => out.push(fd),
                Err(e) if skip_reason(&e).is_some() => {}
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }
}

/// Tries to eliminate every undecided candidate with a prime ideal `q`
/// above some `ell <= search_bound`, `ell != p`, such that `P_q` is
/// irreducible mod `p`. Each certificate is re-verified before it is stored.
pub fn eliminate(
    curve: &CurveModel,
    report: &mut CandidateReport,
    search_bound: u64,
    source: &dyn TraceSource,
) -> Result<()> {
    let mut search = IdealSearch {
        curve,
        source,
        ells: primes_up_to(search_bound),
        found: BTreeMap::new(),
    };
    let undecided: Vec<BigUint> = report.undecided().into_iter().collect();
    for p in undecided {
        let Some(cert) = find_certificate(&mut search, &p)? else {
            continue;
        };
        if !verify_certificate(curve, &cert)? {
            return Err(Error::InternalInconsistency(format!(
                "certificate for {p} at {} does not re-verify",
                cert.ideal
            )));
        }
        report.statuses.insert(p, CandidateStatus::Eliminated(cert));
    }
    Ok(())
}

fn find_certificate(search: &mut IdealSearch<'_>, p: &BigUint) -> Result<Option<Certificate>> {
    for ell in search.ells.clone() {
        if BigUint::from(ell) == *p {
            continue;
        }
        for fd in search.at(ell)? {
            if is_irreducible_mod_p(&fd.frobenius_poly, p)? {
                return Ok(Some(Certificate {
                    p: p.clone(),
                    ideal: fd.ideal.clone(),
                    trace: fd.trace.clone(),
                    frobenius_poly: fd.frobenius_poly.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// Recomputes the trace at the certificate's ideal by point counting and
/// checks that `P_q` is irreducible mod `p`.
pub fn verify_certificate(curve: &CurveModel, cert: &Certificate) -> Result<bool> {
    if BigUint::from(cert.ideal.ell) == cert.p || !curve.good_reduction_at(cert.ideal.ell)? {
        return Ok(false);
    }
    let fresh = curve.trace_of_frobenius(&cert.ideal)?;
    Ok(fresh.trace == cert.trace
        && fresh.frobenius_poly == cert.frobenius_poly
        && is_irreducible_mod_p(&fresh.frobenius_poly, &cert.p)?)
}

/// Whether `j(E)` is the image of `x` under the `j`-map of `X_0(n)`,
/// `n in {3, 13}`. A true answer exhibits a rational `n`-isogeny.
pub fn x0_witness(curve: &CurveModel, n: u64, x: &KElement) -> Result<bool> {
    let k = curve.field();
    if x.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let num = match n {
        3 => k.mul(&k.pow(&k.add(x, &k.from_int(3)), 3), &k.add(x, &k.from_int(27))),
        13 => {
            let quad = k.eval(&IntPoly::from_i64s(&[13, 5, 1]), x);
            let quartic = k.eval(&IntPoly::from_i64s(&[1, 19, 20, 7, 1]), x);
            k.mul(&quad, &k.pow(&quartic, 3))
        }
        _ => {
            return Err(Error::Invalid(format!(
                "no j-map available for X_0({n}); supported levels are 3 and 13"
            )))
        }
    };
    Ok(k.div(&num, x)? == *curve.j_invariant())
}

/// Whether `(x, y)` is a point of order 2, which makes `E[2]` reducible.
pub fn two_torsion_witness(curve: &CurveModel, x: &KElement, y: &KElement) -> bool {
    curve.is_order_two_point(x, y)
}
