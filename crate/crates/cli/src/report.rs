//! Serializable reports. Every integer is a decimal string, never a float,
//! and every list is in a canonical order, so a report survives a round trip
//! through JSON byte for byte.

use std::fmt::Write as _;

use isosieve_core::arith::{factorize_with, FactorConfig, Factorization};
use isosieve_core::criteria::{
    CandidateStatus, QuadraticFastPath, RIdealResult, SieveResult, SkipReason,
};
use isosieve_core::ellcurve::FrobeniusData;
use isosieve_core::intpoly::IntPoly;
use isosieve_core::numfield::{IdealSource, PrimeIdealData};
use isosieve_core::Error;
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: u32 = 1;

/// Rho iterations spent on the factored form of a displayed integer. The
/// displayed factorization is informational; an unsplit cofactor is shown
/// as such instead of stalling the run.
const DISPLAY_RHO_ITERATIONS: u64 = 1 << 16;

/// An integer with its factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Number {
    pub decimal: String,
    pub factored: String,
    pub fully_factored: bool,
}

impl Number {
    pub fn new(n: &BigInt, config: &FactorConfig) -> Self {
        let decimal = n.to_string();
        if n.is_zero() {
            return Number { decimal, factored: "0".into(), fully_factored: true };
        }
        let budget = FactorConfig {
            rho_iterations: config.rho_iterations.min(DISPLAY_RHO_ITERATIONS),
            rho_seeds: config.rho_seeds.min(2),
            ..config.clone()
        };
        match factorize_with(n, &budget) {
            Ok(f) => Number { decimal, factored: f.to_string(), fully_factored: true },
            Err(Error::Timeout { partial, unsplit }) => {
                let mut factored = if partial.factors.is_empty() {
                    if partial.sign == num_bigint::Sign::Minus { "-".to_string() } else { String::new() }
                } else {
                    partial.to_string()
                };
                for c in unsplit {
                    if !factored.is_empty() && factored != "-" {
                        factored.push_str(" * ");
                    }
                    write!(factored, "[composite {c}]").expect("string write");
                }
                Number { decimal, factored, fully_factored: false }
            }
            Err(e) => Number { decimal, factored: format!("[{e}]"), fully_factored: false },
        }
    }
}

/// Coefficients, constant term first.
pub fn poly_coeffs(p: &IntPoly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly {
    pub text: String,
    pub coeffs: Vec<String>,
}

impl From<&IntPoly> for Poly {
    fn from(p: &IntPoly) -> Self {
        Poly { text: p.to_string(), coeffs: poly_coeffs(p) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealEntry {
    pub ell: u64,
    pub gen: String,
    pub e: usize,
    pub f: usize,
    pub norm: String,
    pub from_override: bool,
}

impl From<&PrimeIdealData> for IdealEntry {
    fn from(q: &PrimeIdealData) -> Self {
        IdealEntry {
            ell: q.ell,
            gen: q.local_gen.to_string().replace('X', "t"),
            e: q.ramification,
            f: q.residue_degree,
            norm: q.norm().to_string(),
            from_override: q.source == IdealSource::Override,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub ideal: IdealEntry,
    pub trace: String,
    pub frobenius_poly: String,
    pub supersingular: bool,
}

impl From<&FrobeniusData> for TraceEntry {
    fn from(fd: &FrobeniusData) -> Self {
        TraceEntry {
            ideal: IdealEntry::from(&fd.ideal),
            trace: fd.trace.to_string(),
            frobenius_poly: fd.frobenius_poly.to_string(),
            supersingular: fd.is_supersingular(),
        }
    }
}

/// Traces above one prime, or why there are none.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceBlock {
    pub ell: u64,
    pub traces: Vec<TraceEntry>,
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FastPathEntry {
    pub splitting: String,
    pub value_at_ell12: Number,
    pub vanishing: Option<String>,
}

impl FastPathEntry {
    fn new(fp: &QuadraticFastPath, config: &FactorConfig) -> Self {
        FastPathEntry {
            splitting: fp.splitting.to_string(),
            value_at_ell12: Number::new(&fp.value_at_ell12, config),
            vanishing: fp.vanishing.map(|v| v.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveEntry {
    pub ell: u64,
    pub traces: Vec<TraceEntry>,
    pub p_ell_star: Poly,
    /// `P_ell^*(ell^{12k})` for `k = 0, 1, ...`.
    pub values: Vec<Number>,
    pub b_ell: Number,
    pub fast_path: Option<FastPathEntry>,
}

impl SieveEntry {
    pub fn new(r: &SieveResult, config: &FactorConfig) -> Self {
        SieveEntry {
            ell: r.ell,
            traces: r.frobenius.iter().map(TraceEntry::from).collect(),
            p_ell_star: Poly::from(&r.p_ell_star),
            values: r.values.iter().map(|v| Number::new(v, config)).collect(),
            b_ell: Number::new(&r.b_ell, config),
            fast_path: r.fast_path.as_ref().map(|fp| FastPathEntry::new(fp, config)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedEntry {
    pub ell: u64,
    pub reason: String,
}

impl SkippedEntry {
    pub fn new(ell: u64, reason: &SkipReason) -> Self {
        SkippedEntry { ell, reason: reason.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RIdealEntry {
    pub trace: TraceEntry,
    pub h: u32,
    pub m_gamma: Poly,
    pub p_twisted: Poly,
    pub m_twisted: Poly,
    /// `Res(P_q^{(12h)}, (m_gamma^{(12)})^{*k})` for `k = 0, 1, ...`.
    pub factors: Vec<Number>,
    pub value: Number,
}

impl RIdealEntry {
    pub fn new(r: &RIdealResult, config: &FactorConfig) -> Self {
        RIdealEntry {
            trace: TraceEntry::from(&r.frobenius),
            h: r.h,
            m_gamma: Poly::from(&r.m_gamma),
            p_twisted: Poly::from(&r.p_twisted),
            m_twisted: Poly::from(&r.m_twisted),
            factors: r.factors.iter().map(|v| Number::new(v, config)).collect(),
            value: Number::new(&r.value, config),
        }
    }
}

/// A set of primes, possibly every prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSet {
    pub all_primes: bool,
    pub primes: Vec<String>,
}

impl PrimeSet {
    pub fn from_divisors(set: &isosieve_core::arith::DivisorSet) -> Self {
        match set {
            isosieve_core::arith::DivisorSet::AllPrimes => PrimeSet { all_primes: true, primes: Vec::new() },
            isosieve_core::arith::DivisorSet::Primes(s) => PrimeSet::finite(s.iter()),
        }
    }

    pub fn finite<'a>(primes: impl IntoIterator<Item = &'a BigUint>) -> Self {
        PrimeSet { all_primes: false, primes: primes.into_iter().map(ToString::to_string).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub ideal: IdealEntry,
    pub trace: String,
    pub frobenius_poly: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusEntry {
    pub p: String,
    /// `eliminated`, `exceptional` or `undecided`.
    pub status: String,
    pub certificate: Option<CertificateEntry>,
    pub witness: Option<String>,
}

impl StatusEntry {
    pub fn new(p: &BigUint, status: &CandidateStatus) -> Self {
        let (label, certificate, witness) = match status {
            CandidateStatus::Eliminated(c) => (
                "eliminated",
                Some(CertificateEntry {
                    ideal: IdealEntry::from(&c.ideal),
                    trace: c.trace.to_string(),
                    frobenius_poly: c.frobenius_poly.to_string(),
                }),
                None,
            ),
            CandidateStatus::WitnessedExceptional(w) => ("exceptional", None, Some(w.clone())),
            CandidateStatus::Undecided => ("undecided", None, None),
        };
        StatusEntry { p: p.to_string(), status: label.into(), certificate, witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub p: u64,
    pub description: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiEntry {
    pub ell: u64,
    pub f: u32,
    pub order: u32,
    pub conclusion: String,
}

/// Inputs echoed back, including those taken on trust.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    pub field_poly: Vec<String>,
    pub field_disc: String,
    pub class_number: u64,
    pub curve: Vec<String>,
    pub ells: Vec<u64>,
    pub eliminate_bound: Option<u64>,
    pub seed: u64,
    /// Statements the run relies on without checking them.
    pub asserted: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSummary {
    /// `a1, a2, a3, a4, a6` of the integral model used for reduction.
    pub coefficients: Vec<String>,
    pub discriminant: String,
    pub discriminant_norm: Number,
    pub j_invariant: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Screening {
    pub value: Number,
    pub primes: Vec<String>,
}

/// The full pipeline output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    /// False when a factorization budget ran out; `gaps` says where.
    pub complete: bool,
    pub gaps: Vec<String>,
    pub inputs: Inputs,
    pub model: ModelSummary,
    pub screening: Option<Screening>,
    pub sieve: Vec<SieveEntry>,
    pub skipped: Vec<SkippedEntry>,
    pub r_ideals: Vec<RIdealEntry>,
    pub intersection: Option<PrimeSet>,
    pub candidates: Option<PrimeSet>,
    pub statuses: Vec<StatusEntry>,
    pub witnesses: Vec<WitnessEntry>,
    pub phi: Vec<PhiEntry>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn status_of(&self, p: u64) -> Option<&str> {
        let p = p.to_string();
        self.statuses.iter().find(|s| s.p == p).map(|s| s.status.as_str())
    }
}

pub fn factorization_gap(what: &str, partial: &Factorization, unsplit: &[BigUint]) -> String {
    let unsplit: Vec<String> = unsplit.iter().map(ToString::to_string).collect();
    format!(
        "factorization of {what} stopped at {partial}; unsplit composites: {}",
        unsplit.join(", ")
    )
}

/// ANSI styling, disabled by `NO_COLOR` or a non-terminal stdout.
#[derive(Clone, Copy, Debug)]
pub struct Style {
    pub color: bool,
}

impl Style {
    pub fn detect() -> Self {
        use std::io::IsTerminal;
        let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
        Style { color: !no_color && std::io::stdout().is_terminal() }
    }

    pub fn plain() -> Self {
        Style { color: false }
    }

    fn paint(&self, code: &str, text: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    pub fn heading(&self, text: &str) -> String {
        self.paint("1", text)
    }

    fn status(&self, label: &str) -> String {
        match label {
            "eliminated" => self.paint("32", label),
            "exceptional" => self.paint("31;1", label),
            _ => self.paint("33", label),
        }
    }
}

fn prime_set_text(set: &Option<PrimeSet>) -> String {
    match set {
        None => "unknown (factorization incomplete)".into(),
        Some(s) if s.all_primes => "all primes".into(),
        Some(s) => format!("{{{}}}", s.primes.join(", ")),
    }
}

fn number_text(n: &Number) -> String {
    if n.decimal == n.factored {
        n.decimal.clone()
    } else if n.decimal.len() <= 40 {
        format!("{} = {}", n.decimal, n.factored)
    } else {
        n.factored.clone()
    }
}

pub fn render_traces(blocks: &[TraceBlock], style: Style) -> String {
    let mut out = String::new();
    writeln!(out, "{}", style.heading(&format!("{:>6}  {:<28} {:>8}  P_q", "ell", "ideal", "t_q"))).unwrap();
    for b in blocks {
        if let Some(reason) = &b.skipped {
            writeln!(out, "{:>6}  skipped: {reason}", b.ell).unwrap();
        }
        for t in &b.traces {
            writeln!(out, "{:>6}  {:<28} {:>8}  {}", b.ell, ideal_text(&t.ideal), t.trace, t.frobenius_poly).unwrap();
        }
    }
    out
}

fn ideal_text(q: &IdealEntry) -> String {
    format!("({}, {}) e={} f={}", q.ell, q.gen, q.e, q.f)
}

pub fn render_sieve(entries: &[SieveEntry], skipped: &[SkippedEntry], style: Style) -> String {
    let mut out = String::new();
    for s in entries {
        writeln!(out, "{}", style.heading(&format!("ell = {}", s.ell))).unwrap();
        for t in &s.traces {
            writeln!(out, "  t at {} = {}", ideal_text(&t.ideal), t.trace).unwrap();
        }
        writeln!(out, "  P*     = {}", s.p_ell_star.text).unwrap();
        for (k, v) in s.values.iter().enumerate() {
            writeln!(out, "  P*(ell^{}) = {}", 12 * k, number_text(v)).unwrap();
        }
        writeln!(out, "  B      = {}", number_text(&s.b_ell)).unwrap();
        if let Some(fp) = &s.fast_path {
            let why = fp.vanishing.as_deref().map(|v| format!(", vanishes: {v}")).unwrap_or_default();
            writeln!(out, "  quadratic closed form: {}{why}", fp.splitting).unwrap();
        }
    }
    for s in skipped {
        writeln!(out, "ell = {} skipped: {}", s.ell, s.reason).unwrap();
    }
    out
}

pub fn render_rideals(entries: &[RIdealEntry], style: Style) -> String {
    let mut out = String::new();
    for r in entries {
        let q = &r.trace.ideal;
        writeln!(out, "{}", style.heading(&format!("R at {} (h = {})", ideal_text(q), r.h))).unwrap();
        writeln!(out, "  P_q        = {}", r.trace.frobenius_poly).unwrap();
        writeln!(out, "  m_gamma    = {}", r.m_gamma.text).unwrap();
        writeln!(out, "  P_q^(12h)  = {}", r.p_twisted.text).unwrap();
        writeln!(out, "  m^(12)     = {}", r.m_twisted.text).unwrap();
        for (k, v) in r.factors.iter().enumerate() {
            writeln!(out, "  Res_{k}      = {}", number_text(v)).unwrap();
        }
        writeln!(out, "  R          = {}", number_text(&r.value)).unwrap();
    }
    out
}

/// The same content as the JSON report, as text.
pub fn render_report(r: &Report, style: Style) -> String {
    let mut out = String::new();
    let i = &r.inputs;
    writeln!(out, "{}", style.heading("Input")).unwrap();
    writeln!(out, "  field poly     [{}]", i.field_poly.join(", ")).unwrap();
    writeln!(out, "  D_K            {}", i.field_disc).unwrap();
    writeln!(out, "  class number   {}", i.class_number).unwrap();
    writeln!(out, "  curve          [{}]", i.curve.join(", ")).unwrap();
    let ells: Vec<String> = i.ells.iter().map(ToString::to_string).collect();
    writeln!(out, "  sieve primes   {{{}}}", ells.join(", ")).unwrap();
    if let Some(b) = i.eliminate_bound {
        writeln!(out, "  search bound   {b}").unwrap();
    }
    writeln!(out, "  seed           {}", i.seed).unwrap();
    for a in &i.asserted {
        writeln!(out, "  asserted       {a}").unwrap();
    }
    writeln!(out, "{}", style.heading("Model")).unwrap();
    writeln!(out, "  [a1, a2, a3, a4, a6] = [{}]", r.model.coefficients.join(", ")).unwrap();
    writeln!(out, "  disc           {}", r.model.discriminant).unwrap();
    writeln!(out, "  N(disc)        {}", number_text(&r.model.discriminant_norm)).unwrap();
    writeln!(out, "  j              {}", r.model.j_invariant).unwrap();
    if let Some(s) = &r.screening {
        writeln!(out, "{}", style.heading("Screening")).unwrap();
        writeln!(out, "  6 |D_K| |N(disc)| = {}", number_text(&s.value)).unwrap();
        writeln!(out, "  primes         {{{}}}", s.primes.join(", ")).unwrap();
    }
    if !r.sieve.is_empty() || !r.skipped.is_empty() {
        writeln!(out, "{}", style.heading("Sieve")).unwrap();
        out.push_str(&render_sieve(&r.sieve, &r.skipped, style));
    }
    if !r.r_ideals.is_empty() {
        writeln!(out, "{}", style.heading("Prime-ideal resultants")).unwrap();
        out.push_str(&render_rideals(&r.r_ideals, style));
    }
    writeln!(out, "{}", style.heading("Candidates")).unwrap();
    writeln!(out, "  intersection   {}", prime_set_text(&r.intersection)).unwrap();
    writeln!(out, "  candidates     {}", prime_set_text(&r.candidates)).unwrap();
    for s in &r.statuses {
        let detail = match (&s.certificate, &s.witness) {
            (Some(c), _) => format!("P = {} at {} is irreducible mod {}", c.frobenius_poly, ideal_text(&c.ideal), s.p),
            (_, Some(w)) => w.clone(),
            _ => String::new(),
        };
        writeln!(out, "  {:>8}  {:<12} {detail}", s.p, style.status(&s.status)).unwrap();
    }
    if !r.witnesses.is_empty() {
        writeln!(out, "{}", style.heading("Witnesses")).unwrap();
        for w in &r.witnesses {
            writeln!(out, "  p = {:<4} {:<40} {}", w.p, w.description, if w.holds { "holds" } else { "fails" }).unwrap();
        }
    }
    if !r.phi.is_empty() {
        writeln!(out, "{}", style.heading("Semistability defect")).unwrap();
        for p in &r.phi {
            writeln!(out, "  ell = {:<4} f = {:<2} |Phi| = {:<3} {}", p.ell, p.f, p.order, p.conclusion).unwrap();
        }
    }
    if !r.complete {
        writeln!(out, "{}", style.heading("Gaps")).unwrap();
        for g in &r.gaps {
            writeln!(out, "  {g}").unwrap();
        }
    }
    out
}
