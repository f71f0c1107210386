//! Criteria bounding the primes `p` for which `E[p]` may be reducible.

mod candidates;
mod forms;
mod phi;
mod rideal;
mod sieve;

pub use candidates::{
    assemble, eliminate, exceptional_candidates, screening_value, two_torsion_witness,
    verify_certificate, x0_witness, CandidateReport, CandidateStatus, Certificate, SkipReason,
};
pub use forms::reduced_forms;
pub use phi::{phi_order_from_valuation, phi_uniform_test, PhiConclusion, PhiInput};
pub use rideal::{r_ideal, r_ideal_for_curve, RIdealResult};
pub use sieve::{
    b_ell, check_p_ell_star, frobenius_above, p_ell_star, quadratic_fast_path, sieve_prime,
    sieve_values, QuadraticFastPath, SieveResult, Splitting, VanishingReason,
};

use crate::ellcurve::{CurveModel, FrobeniusData};
use crate::error::Result;
use crate::numfield::PrimeIdealData;

/// Where Frobenius traces come from. The CLI wraps [`DirectTraces`] with a
/// persistent cache.
pub trait TraceSource: Sync {
    fn frobenius(&self, curve: &CurveModel, q: &PrimeIdealData) -> Result<FrobeniusData>;
}

/// Traces by point counting on the reduction.
#[derive(Clone, Copy, Debug, Default)]
pub struct DirectTraces;

impl TraceSource for DirectTraces {
    fn frobenius(&self, curve: &CurveModel, q: &PrimeIdealData) -> Result<FrobeniusData> {
        curve.trace_of_frobenius(q)
    }
}
