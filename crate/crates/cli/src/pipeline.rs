//! Orchestration: integral model, parallel sieve, prime-ideal resultants,
//! candidate assembly, elimination, witnesses and the `Phi` predicates.

use isosieve_core::arith::FactorConfig;
use isosieve_core::criteria::{
    assemble, eliminate, frobenius_above, phi_uniform_test, r_ideal_for_curve, sieve_prime,
    two_torsion_witness, x0_witness, CandidateReport, RIdealResult, SieveResult, SkipReason, TraceSource,
};
use isosieve_core::ellcurve::CurveModel;
use isosieve_core::Error;
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::config::{RunConfig, WitnessSpec};
use crate::error::CliError;
use crate::report::{
    factorization_gap, Inputs, ModelSummary, Number, PhiEntry, PrimeSet, RIdealEntry, Report, Screening,
    SieveEntry, SkippedEntry, StatusEntry, TraceBlock, TraceEntry, WitnessEntry, REPORT_SCHEMA,
};

type Skipped = Vec<(u64, SkipReason)>;

/// Runs the sieve at every `ell` in parallel. Unusable primes are listed,
/// any other failure aborts. Results come back in ascending `ell`.
pub fn sieve_all(
    curve: &CurveModel,
    ells: &[u64],
    source: &dyn TraceSource,
) -> isosieve_core::Result<(Vec<SieveResult>, Skipped)> {
    let mut ells = ells.to_vec();
    ells.sort_unstable();
    ells.dedup();
    let outcomes: Vec<(u64, isosieve_core::Result<SieveResult>)> =
        ells.par_iter().map(|&ell| (ell, sieve_prime(curve, ell, source))).collect();
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    for (ell, outcome) in outcomes {
        match outcome {
            Ok(r) => results.push(r),
            Err(e) => match SkipReason::from_error(&e) {
                Some(reason) => skipped.push((ell, reason)),
                None => return Err(e),
            },
        }
    }
    Ok((results, skipped))
}

/// Traces at the ideals above each `ell`.
pub fn trace_blocks(curve: &CurveModel, ells: &[u64], source: &dyn TraceSource) -> Result<Vec<TraceBlock>, CliError> {
    let mut ells = ells.to_vec();
    ells.sort_unstable();
    ells.dedup();
    let outcomes: Vec<_> = ells.par_iter().map(|&ell| (ell, frobenius_above(curve, ell, source))).collect();
    let mut blocks = Vec::new();
    for (ell, outcome) in outcomes {
        match outcome {
            Ok(fds) => blocks.push(TraceBlock { ell, traces: fds.iter().map(TraceEntry::from).collect(), skipped: None }),
            Err(e) => match SkipReason::from_error(&e) {
                Some(reason) => blocks.push(TraceBlock { ell, traces: Vec::new(), skipped: Some(reason.to_string()) }),
                None => return Err(e.into()),
            },
        }
    }
    Ok(blocks)
}

/// `R_q` for every configured `gamma`.
pub fn r_ideals(config: &RunConfig, curve: &CurveModel, source: &dyn TraceSource) -> Result<Vec<RIdealResult>, CliError> {
    config
        .gammas
        .iter()
        .map(|g| r_ideal_for_curve(curve, &g.ideal, g.h, &g.min_poly, source).map_err(CliError::from))
        .collect()
}

fn witness_description(w: &WitnessSpec) -> String {
    match w {
        WitnessSpec::TwoTorsion { x, y } => format!("point of order 2 at ({x}, {y})"),
        WitnessSpec::X0 { level, x } => format!("j is the image of {x} on X_0({level})"),
    }
}

fn check_witness(curve: &CurveModel, w: &WitnessSpec) -> Result<bool, CliError> {
    Ok(match w {
        WitnessSpec::TwoTorsion { x, y } => two_torsion_witness(curve, x, y),
        WitnessSpec::X0 { level, x } => x0_witness(curve, *level, x)?,
    })
}

fn inputs(config: &RunConfig) -> Inputs {
    let k = &config.field;
    let mut asserted = vec![format!("D_K = {} (checked only up to a square factor)", k.field_disc())];
    if k.class_number_asserted() {
        asserted.push("class number 1 (not given, assumed)".into());
    } else {
        asserted.push(format!("class number {} (given)", k.class_number()));
    }
    for g in &config.gammas {
        asserted.push(format!(
            "a root of {} generates q^{} for q = {} (norm checked)",
            g.min_poly, g.h, g.ideal
        ));
    }
    Inputs {
        field_poly: crate::report::poly_coeffs(k.defining_poly()),
        field_disc: k.field_disc().to_string(),
        class_number: k.class_number(),
        curve: config.curve.coefficients().iter().map(ToString::to_string).collect(),
        ells: {
            let mut e = config.sieve.ells.primes();
            e.sort_unstable();
            e.dedup();
            e
        },
        eliminate_bound: config.sieve.eliminate_bound,
        seed: config.sieve.factor.seed,
        asserted,
    }
}

fn model_summary(curve: &CurveModel, factor: &FactorConfig) -> Result<ModelSummary, CliError> {
    Ok(ModelSummary {
        coefficients: curve.coefficients().iter().map(ToString::to_string).collect(),
        discriminant: curve.discriminant().to_string(),
        discriminant_norm: Number::new(&curve.discriminant_norm()?, factor),
        j_invariant: curve.j_invariant().to_string(),
    })
}

/// The whole pipeline. A factorization that exhausts its budget yields a
/// report with `complete = false` rather than an error.
pub fn run_pipeline(config: &RunConfig, source: &dyn TraceSource) -> Result<Report, CliError> {
    let factor = &config.sieve.factor;
    let curve = config.curve.integralize()?;
    let ells = config.sieve.ells.primes();
    let (results, skipped) = sieve_all(&curve, &ells, source)?;
    let r_results = r_ideals(config, &curve, source)?;

    let mut report = Report {
        schema: REPORT_SCHEMA,
        complete: true,
        gaps: Vec::new(),
        inputs: inputs(config),
        model: model_summary(&curve, factor)?,
        screening: None,
        sieve: results.iter().map(|r| SieveEntry::new(r, factor)).collect(),
        skipped: skipped.iter().map(|(ell, r)| SkippedEntry::new(*ell, r)).collect(),
        r_ideals: r_results.iter().map(|r| RIdealEntry::new(r, factor)).collect(),
        intersection: None,
        candidates: None,
        statuses: Vec::new(),
        witnesses: Vec::new(),
        phi: Vec::new(),
    };
    report.sieve.sort_by_key(|s| s.ell);

    let assembled = match assemble(&curve, results, skipped, r_results, factor) {
        Ok(c) => Some(c),
        Err(Error::Timeout { partial, unsplit }) => {
            report.complete = false;
            report.gaps.push(factorization_gap("the candidate set", &partial, &unsplit));
            None
        }
        Err(e) => return Err(e.into()),
    };

    if let Some(mut c) = assembled {
        if let Some(bound) = config.sieve.eliminate_bound {
            if matches!(c.candidates, isosieve_core::arith::DivisorSet::Primes(_)) {
                eliminate(&curve, &mut c, bound, source)?;
            }
        }
        record_witnesses(config, &mut c, &mut report)?;
        fill_candidates(&mut report, &c, factor);
    } else {
        for w in &config.witnesses {
            let holds = check_witness(&config.curve, w)?;
            report.witnesses.push(WitnessEntry { p: w.prime(), description: witness_description(w), holds });
        }
    }

    for input in &config.phi {
        let conclusion = phi_uniform_test(*input)?;
        report.phi.push(PhiEntry {
            ell: input.ell,
            f: input.residue_degree,
            order: input.phi_order,
            conclusion: conclusion.to_string(),
        });
    }
    Ok(report)
}

/// Witnesses are checked on the configured model, whose coordinates the
/// user supplied.
fn record_witnesses(config: &RunConfig, c: &mut CandidateReport, report: &mut Report) -> Result<(), CliError> {
    for w in &config.witnesses {
        let holds = check_witness(&config.curve, w)?;
        let description = witness_description(w);
        if holds {
            c.record_witness(&BigUint::from(w.prime()), description.clone())?;
        }
        report.witnesses.push(WitnessEntry { p: w.prime(), description, holds });
    }
    Ok(())
}

fn fill_candidates(report: &mut Report, c: &CandidateReport, factor: &FactorConfig) {
    report.screening = Some(Screening {
        value: Number::new(&c.screening_value, factor),
        primes: c.screening_primes.iter().map(ToString::to_string).collect(),
    });
    report.intersection = Some(PrimeSet::from_divisors(&c.intersection));
    report.candidates = Some(PrimeSet::from_divisors(&c.candidates));
    report.statuses = c.statuses.iter().map(|(p, s)| StatusEntry::new(p, s)).collect();
}

/// Exit code for a finished run: 3 when the report has gaps.
pub fn report_exit_code(report: &Report) -> i32 {
    if report.complete {
        0
    } else {
        3
    }
}

