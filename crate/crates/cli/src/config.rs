//! TOML run configuration and its validation.
//!
//! Integers may be written as TOML integers or, when they overflow `i64`, as
//! decimal strings. Polynomials and field elements are coefficient lists with
//! the constant term first. See the README for a complete example.

use std::path::Path;
use std::sync::Arc;

use isosieve_core::arith::{is_prime_u64, FactorConfig};
use isosieve_core::criteria::PhiInput;
use isosieve_core::ellcurve::CurveModel;
use isosieve_core::intpoly::IntPoly;
use isosieve_core::numfield::{IdealSource, KElement, NumberField, PrimeIdealData};
use num_bigint::BigInt;
use num_traits::One;
use serde::Deserialize;

use crate::error::{CliError, Issue};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RawInt {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RawElement {
    Coeffs(Vec<RawInt>),
    Fraction { coeffs: Vec<RawInt>, den: RawInt },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub field: Option<RawField>,
    pub curve: Option<RawCurve>,
    #[serde(default)]
    pub sieve: RawSieve,
    #[serde(default)]
    pub witnesses: RawWitnesses,
    #[serde(default)]
    pub phi: Vec<RawPhi>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawField {
    pub poly: Option<Vec<RawInt>>,
    pub disc: Option<RawInt>,
    pub class_number: Option<u64>,
    #[serde(default, rename = "override")]
    pub overrides: Vec<RawOverride>,
    #[serde(default)]
    pub gamma: Vec<RawGamma>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOverride {
    pub ell: u64,
    pub ideals: Vec<RawIdeal>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawIdeal {
    pub gen: Vec<RawInt>,
    pub e: usize,
    pub f: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGamma {
    pub ell: u64,
    /// Position in the list of ideals above `ell`, when `gen` is absent.
    pub ideal: Option<usize>,
    pub gen: Option<Vec<RawInt>>,
    pub min_poly: Vec<RawInt>,
    pub h: Option<u32>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCurve {
    pub a1: Option<RawElement>,
    pub a2: Option<RawElement>,
    pub a3: Option<RawElement>,
    pub a4: Option<RawElement>,
    pub a6: Option<RawElement>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSieve {
    pub ells: Option<Vec<u64>>,
    pub ell_bound: Option<u64>,
    pub eliminate_bound: Option<u64>,
    pub trial_bound: Option<u64>,
    pub rho_iterations: Option<u64>,
    pub rho_seeds: Option<u32>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawWitnesses {
    #[serde(default)]
    pub two_torsion: Vec<RawPoint>,
    #[serde(default)]
    pub x0: Vec<RawX0>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPoint {
    pub x: RawElement,
    pub y: RawElement,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawX0 {
    pub level: u64,
    pub x: RawElement,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPhi {
    pub ell: u64,
    pub f: u32,
    pub order: Option<u32>,
    /// Valuation of the minimal discriminant, for `ell >= 5`.
    pub valuation: Option<u32>,
}

/// Which sieve primes to use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EllChoice {
    List(Vec<u64>),
    Bound(u64),
}

impl EllChoice {
    pub fn primes(&self) -> Vec<u64> {
        match self {
            EllChoice::List(v) => v.clone(),
            EllChoice::Bound(b) => isosieve_core::arith::primes_up_to(*b),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GammaSpec {
    pub ideal: PrimeIdealData,
    pub min_poly: IntPoly,
    pub h: u32,
}

#[derive(Clone, Debug)]
pub enum WitnessSpec {
    TwoTorsion { x: KElement, y: KElement },
    X0 { level: u64, x: KElement },
}

impl WitnessSpec {
    /// The prime an exceptionality witness speaks about.
    pub fn prime(&self) -> u64 {
        match self {
            WitnessSpec::TwoTorsion { .. } => 2,
            WitnessSpec::X0 { level, .. } => *level,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SieveSpec {
    pub ells: EllChoice,
    pub eliminate_bound: Option<u64>,
    pub factor: FactorConfig,
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: Arc<NumberField>,
    pub curve: CurveModel,
    pub gammas: Vec<GammaSpec>,
    pub sieve: SieveSpec,
    pub witnesses: Vec<WitnessSpec>,
    pub phi: Vec<PhiInput>,
}

pub fn parse_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_config_str(&text).map_err(|e| match e {
        CliError::Parse { message, .. } => CliError::Parse { path: path.to_path_buf(), message },
        other => other,
    })
}

pub fn parse_config_str(text: &str) -> Result<RunConfig, CliError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Parse {
        path: "<config>".into(),
        message: e.to_string(),
    })?;
    validate(&raw)
}

/// Collects every problem it can find before giving up.
struct Validator {
    issues: Vec<Issue>,
}

impl Validator {
    fn fail(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.issues.push(Issue::new(path, message));
    }

    fn int(&mut self, path: &str, raw: &RawInt) -> Option<BigInt> {
        match raw {
            RawInt::Int(i) => Some(BigInt::from(*i)),
            RawInt::Text(s) => match s.trim().parse::<BigInt>() {
                Ok(v) => Some(v),
                Err(_) => {
                    self.fail(path, format!("{s:?} is not an integer"));
                    None
                }
            },
        }
    }

    fn ints(&mut self, path: &str, raw: &[RawInt]) -> Option<Vec<BigInt>> {
        let out: Vec<Option<BigInt>> = raw
            .iter()
            .enumerate()
            .map(|(i, r)| self.int(&format!("{path}[{i}]"), r))
            .collect();
        out.into_iter().collect()
    }

    fn poly(&mut self, path: &str, raw: &[RawInt]) -> Option<IntPoly> {
        self.ints(path, raw).map(IntPoly::new)
    }

    fn element(&mut self, path: &str, k: &NumberField, raw: &RawElement) -> Option<KElement> {
        let (coeffs, den) = match raw {
            RawElement::Coeffs(c) => (self.ints(path, c)?, BigInt::one()),
            RawElement::Fraction { coeffs, den } => {
                let c = self.ints(&format!("{path}.coeffs"), coeffs);
                let d = self.int(&format!("{path}.den"), den);
                (c?, d?)
            }
        };
        if coeffs.len() > k.degree() {
            self.fail(path, format!("expected at most {} coefficients, got {}", k.degree(), coeffs.len()));
            return None;
        }
        match k.element(IntPoly::new(coeffs), den) {
            Ok(x) => Some(x),
            Err(e) => {
                self.fail(path, e.to_string());
                None
            }
        }
    }
}

fn validate(raw: &RawConfig) -> Result<RunConfig, CliError> {
    let mut v = Validator { issues: Vec::new() };
    let field = match &raw.field {
        Some(f) => build_field(&mut v, f),
        None => {
            v.fail("field", "missing [field] table");
            None
        }
    };
    let Some(field) = field else {
        return Err(CliError::Validation(v.issues));
    };
    let curve = match &raw.curve {
        Some(c) => build_curve(&mut v, &field, c),
        None => {
            v.fail("curve", "missing [curve] table");
            None
        }
    };
    let gammas = raw
        .field
        .as_ref()
        .map(|f| build_gammas(&mut v, &field, &f.gamma))
        .unwrap_or_default();
    let sieve = build_sieve(&mut v, &raw.sieve);
    let witnesses = build_witnesses(&mut v, &field, &raw.witnesses);
    let phi = build_phi(&mut v, &raw.phi);
    match curve {
        Some(curve) if v.issues.is_empty() => Ok(RunConfig { field, curve, gammas, sieve, witnesses, phi }),
        _ => Err(CliError::Validation(v.issues)),
    }
}

fn build_field(v: &mut Validator, raw: &RawField) -> Option<Arc<NumberField>> {
    let poly = match &raw.poly {
        Some(p) => v.poly("field.poly", p),
        None => {
            v.fail("field.poly", "missing defining polynomial");
            None
        }
    };
    let disc = match &raw.disc {
        Some(d) => v.int("field.disc", d),
        None => {
            v.fail("field.disc", "missing field discriminant D_K");
            None
        }
    };
    if raw.class_number == Some(0) {
        v.fail("field.class_number", "class number must be positive");
        return None;
    }
    let (poly, disc) = (poly?, disc?);
    let mut field = match NumberField::new(poly, disc, raw.class_number) {
        Ok(k) => k,
        Err(e) => {
            v.fail("field", e.to_string());
            return None;
        }
    };
    for (i, o) in raw.overrides.iter().enumerate() {
        let path = format!("field.override[{i}]");
        if !is_prime_u64(o.ell) {
            v.fail(format!("{path}.ell"), format!("{} is not prime", o.ell));
            continue;
        }
        let mut ideals = Vec::new();
        for (j, q) in o.ideals.iter().enumerate() {
            let qpath = format!("{path}.ideals[{j}]");
            let Some(gen) = v.poly(&format!("{qpath}.gen"), &q.gen) else { continue };
            match PrimeIdealData::new(o.ell, &gen, q.e, IdealSource::Override) {
                Ok(ideal) => {
                    if let Some(f) = q.f {
                        if f != ideal.residue_degree {
                            v.fail(
                                format!("{qpath}.f"),
                                format!("f = {f} but the generator has degree {}", ideal.residue_degree),
                            );
                        }
                    }
                    ideals.push(ideal);
                }
                Err(e) => v.fail(qpath, e.to_string()),
            }
        }
        if ideals.len() != o.ideals.len() {
            continue;
        }
        field = match field.clone().with_override(o.ell, ideals) {
            Ok(k) => k,
            Err(e) => {
                v.fail(path, e.to_string());
                field
            }
        };
    }
    Some(Arc::new(field))
}

fn build_curve(v: &mut Validator, k: &Arc<NumberField>, raw: &RawCurve) -> Option<CurveModel> {
    let slots = [("a1", &raw.a1), ("a2", &raw.a2), ("a3", &raw.a3), ("a4", &raw.a4), ("a6", &raw.a6)];
    let mut coeffs = Vec::with_capacity(5);
    for (name, slot) in slots {
        coeffs.push(match slot {
            Some(e) => v.element(&format!("curve.{name}"), k, e),
            None => Some(k.zero()),
        });
    }
    let coeffs: Vec<KElement> = coeffs.into_iter().collect::<Option<_>>()?;
    match CurveModel::new(Arc::clone(k), coeffs.try_into().expect("five coefficients")) {
        Ok(c) => Some(c),
        Err(e) => {
            v.fail("curve", e.to_string());
            None
        }
    }
}

fn build_gammas(v: &mut Validator, k: &NumberField, raw: &[RawGamma]) -> Vec<GammaSpec> {
    let mut out = Vec::new();
    for (i, g) in raw.iter().enumerate() {
        let path = format!("field.gamma[{i}]");
        if !is_prime_u64(g.ell) {
            v.fail(format!("{path}.ell"), format!("{} is not prime", g.ell));
            continue;
        }
        let ideals = match k.factor_prime(g.ell) {
            Ok(ideals) => ideals,
            Err(e) => {
                v.fail(format!("{path}.ell"), e.to_string());
                continue;
            }
        };
        let ideal = match (&g.gen, g.ideal) {
            (Some(_), Some(_)) => {
                v.fail(&path, "give either `gen` or `ideal`, not both");
                continue;
            }
            (Some(gen), None) => {
                let Some(gen) = v.poly(&format!("{path}.gen"), gen) else { continue };
                let target = PrimeIdealData::new(g.ell, &gen, 1, IdealSource::Override).ok();
                match ideals
                    .iter()
                    .find(|q| target.as_ref().is_some_and(|t| t.local_gen == q.local_gen))
                {
                    Some(q) => q.clone(),
                    None => {
                        v.fail(format!("{path}.gen"), format!("no prime ideal above {} has this generator", g.ell));
                        continue;
                    }
                }
            }
            (None, index) => {
                let index = index.unwrap_or(0);
                match ideals.get(index) {
                    Some(q) => q.clone(),
                    None => {
                        v.fail(
                            format!("{path}.ideal"),
                            format!("only {} prime ideals lie above {}", ideals.len(), g.ell),
                        );
                        continue;
                    }
                }
            }
        };
        let Some(min_poly) = v.poly(&format!("{path}.min_poly"), &g.min_poly) else { continue };
        if !min_poly.in_monoid() {
            v.fail(format!("{path}.min_poly"), "must be monic with nonzero constant term");
            continue;
        }
        let h = g.h.unwrap_or(k.class_number() as u32);
        if h == 0 {
            v.fail(format!("{path}.h"), "must be positive");
            continue;
        }
        out.push(GammaSpec { ideal, min_poly, h });
    }
    out
}

fn build_sieve(v: &mut Validator, raw: &RawSieve) -> SieveSpec {
    let ells = match (&raw.ells, raw.ell_bound) {
        (Some(_), Some(_)) => {
            v.fail("sieve", "give either `ells` or `ell_bound`, not both");
            EllChoice::List(Vec::new())
        }
        (Some(list), None) => {
            for (i, &ell) in list.iter().enumerate() {
                if !is_prime_u64(ell) {
                    v.fail(format!("sieve.ells[{i}]"), format!("{ell} is not prime"));
                }
            }
            EllChoice::List(list.clone())
        }
        (None, Some(b)) => EllChoice::Bound(b),
        (None, None) => EllChoice::List(Vec::new()),
    };
    let defaults = FactorConfig::default();
    let factor = FactorConfig {
        trial_bound: raw.trial_bound.unwrap_or(defaults.trial_bound),
        rho_iterations: raw.rho_iterations.unwrap_or(defaults.rho_iterations),
        rho_seeds: raw.rho_seeds.unwrap_or(defaults.rho_seeds),
        seed: raw.seed.unwrap_or(defaults.seed),
    };
    if factor.trial_bound < 2 {
        v.fail("sieve.trial_bound", "must be at least 2");
    }
    if factor.rho_seeds == 0 {
        v.fail("sieve.rho_seeds", "must be positive");
    }
    SieveSpec { ells, eliminate_bound: raw.eliminate_bound, factor }
}

fn build_witnesses(v: &mut Validator, k: &NumberField, raw: &RawWitnesses) -> Vec<WitnessSpec> {
    let mut out = Vec::new();
    for (i, p) in raw.two_torsion.iter().enumerate() {
        let path = format!("witnesses.two_torsion[{i}]");
        let x = v.element(&format!("{path}.x"), k, &p.x);
        let y = v.element(&format!("{path}.y"), k, &p.y);
        if let (Some(x), Some(y)) = (x, y) {
            out.push(WitnessSpec::TwoTorsion { x, y });
        }
    }
    for (i, w) in raw.x0.iter().enumerate() {
        let path = format!("witnesses.x0[{i}]");
        if w.level != 3 && w.level != 13 {
            v.fail(format!("{path}.level"), format!("only levels 3 and 13 are supported, got {}", w.level));
            continue;
        }
        if let Some(x) = v.element(&format!("{path}.x"), k, &w.x) {
            out.push(WitnessSpec::X0 { level: w.level, x });
        }
    }
    out
}

fn build_phi(v: &mut Validator, raw: &[RawPhi]) -> Vec<PhiInput> {
    let mut out = Vec::new();
    for (i, p) in raw.iter().enumerate() {
        let path = format!("phi[{i}]");
        let order = match (p.order, p.valuation) {
            (Some(o), None) => o,
            (None, Some(val)) => match isosieve_core::criteria::phi_order_from_valuation(p.ell, val) {
                Ok(o) => o,
                Err(e) => {
                    v.fail(format!("{path}.valuation"), e.to_string());
                    continue;
                }
            },
            _ => {
                v.fail(&path, "give exactly one of `order` and `valuation`");
                continue;
            }
        };
        out.push(PhiInput { ell: p.ell, residue_degree: p.f, phi_order: order });
    }
    out
}
