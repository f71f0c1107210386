//! Exit gate: one PASS/FAIL line per criterion, each against its time limit.
//!
//! Runs without the test harness so the lines are always printed. The
//! process fails if any required check fails.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use isosieve_cli::config::{parse_config, EllChoice, RunConfig};
use isosieve_cli::pipeline::{r_ideals, run_pipeline, sieve_all, trace_blocks};
use isosieve_core::arith::{factorize, DivisorSet};
use isosieve_core::criteria::{
    assemble, phi_uniform_test, p_ell_star, reduced_forms, sieve_values, two_torsion_witness, x0_witness,
    DirectTraces, PhiConclusion, PhiInput,
};
use isosieve_core::ellcurve::{FrobeniusData, ReducedCurve};
use isosieve_core::finfield::{FiniteField, FpPoly};
use isosieve_core::intpoly::{adams, chebyshev, star, star_pow, star_sylvester, IntPoly};
use isosieve_core::numfield::{IdealSource, PrimeIdealData};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture(name: &str) -> RunConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.toml"));
    parse_config(&path).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

fn factored(pairs: &[(u64, u32)]) -> BigInt {
    pairs.iter().fold(BigInt::one(), |acc, &(p, e)| acc * BigInt::from(p).pow(e))
}

fn prime_set(list: &[u64]) -> Vec<String> {
    list.iter().map(ToString::to_string).collect()
}

fn traces_above(config: &RunConfig, ell: u64) -> Result<Vec<i64>, String> {
    let curve = config.curve.integralize().map_err(|e| e.to_string())?;
    let blocks = trace_blocks(&curve, &[ell], &DirectTraces).map_err(|e| e.to_string())?;
    let mut t: Vec<i64> = blocks[0].traces.iter().map(|t| t.trace.parse().expect("integer")).collect();
    t.sort_unstable();
    Ok(t)
}

fn traces() -> Check {
    let cases: &[(&str, u64, &[i64])] = &[
        ("q_sqrt5", 7, &[-12]),
        ("q_i", 5, &[-2, 1]),
        ("q_i", 7, &[6]),
        ("q_sqrt2", 11, &[4]),
        ("q_sqrt2", 13, &[-14]),
        ("q_sqrt2", 19, &[26]),
        ("q_sqrt2", 29, &[1]),
        ("q_sqrt2", 41, &[-3, 2]),
        ("q_sqrt13", 3, &[-3, -3]),
        ("cubic", 17, &[-3, -3, 3]),
        ("cubic", 19, &[-5, -5, 5]),
        ("cubic", 37, &[-7, -7, 7]),
        ("cubic", 53, &[-3, 3, 3]),
    ];
    for &(name, ell, expected) in cases {
        let found = traces_above(&fixture(name), ell)?;
        ensure!(found == expected, "{name} at {ell}: traces {found:?}, expected {expected:?}");
    }
    Ok(())
}

fn sieve_integers() -> Check {
    let config = fixture("q_i");
    let curve = config.curve.integralize().map_err(|e| e.to_string())?;
    let (results, _) = sieve_all(&curve, &[5, 7], &DirectTraces).map_err(|e| e.to_string())?;
    let b5 = factored(&[
        (2, 28), (3, 16), (5, 39), (11, 2), (17, 1), (61, 1), (73, 1), (277, 1),
        (397, 1), (557, 1), (653, 1), (757, 1), (23833, 1),
    ]);
    let b7 = factored(&[
        (2, 14), (3, 8), (5, 2), (7, 13), (11, 1), (13, 5), (37, 2), (2089, 1), (2689, 1), (3889, 1),
    ]);
    ensure!(results[0].b_ell == b5, "B_5 = {}", results[0].b_ell);
    ensure!(results[1].b_ell == b7, "B_7 = {}", results[1].b_ell);
    let report = assemble(&curve, results, Vec::new(), Vec::new(), &config.sieve.factor).map_err(|e| e.to_string())?;
    let expected = DivisorSet::Primes([2u32, 3, 5, 11].into_iter().map(Into::into).collect());
    ensure!(report.intersection == expected, "S_5 ∩ S_7 = {:?}", report.intersection);
    Ok(())
}

fn r_values() -> Check {
    let config = fixture("biquadratic");
    let curve = config.curve.integralize().map_err(|e| e.to_string())?;
    let r = r_ideals(&config, &curve, &DirectTraces).map_err(|e| e.to_string())?;
    ensure!(r.len() == 2, "expected two gamma entries");
    let p12 = IntPoly::new(vec![BigInt::from(5).pow(24), BigInt::from(-2 * 47 * 1_163_039i64), BigInt::one()]);
    ensure!(r[0].frobenius.frobenius_poly == IntPoly::from_i64s(&[25, 4, 1]), "P_q5 = {}", r[0].frobenius.frobenius_poly);
    ensure!(r[0].p_twisted == p12, "P_q5^(12) = {}", r[0].p_twisted);
    let r5 = factored(&[
        (2, 126), (3, 100), (5, 225), (7, 21), (11, 1), (13, 8), (19, 1), (37, 11), (41, 8),
        (59, 16), (103, 1), (109, 8), (149, 8), (193, 1), (373, 2), (2137, 1), (4201, 2),
        (7753, 2), (24061, 2),
    ]);
    let r7 = factored(&[
        (2, 105), (3, 59), (5, 26), (7, 116), (11, 2), (13, 2), (17, 8), (23, 8), (31, 1),
        (79, 1), (137, 2), (191, 4), (193, 1), (463, 1), (487, 2), (673, 1), (1033, 2),
        (1471, 1), (2953, 1), (3697, 1),
    ]);
    ensure!(r[0].value == r5, "R_q5 = {}", factorize(&r[0].value).map_err(|e| e.to_string())?);
    ensure!(r[1].value == r7, "R_q7 = {}", factorize(&r[1].value).map_err(|e| e.to_string())?);
    Ok(())
}

/// The two displayed intermediates built from `m_gamma5^(12)`. The roots of
/// `X^4 + 17X^2 + 25` have twelfth-power sum 2 * 13203794, while the display
/// uses 2 * 2838386; `R_q5` matches the former. See the README.
fn displayed_m_gamma_intermediates() -> Check {
    let m12 = adams(&IntPoly::from_i64s(&[25, 0, 17, 0, 1]), 12).map_err(|e| e.to_string())?;
    let quad = |v: i64, c: BigInt| IntPoly::new(vec![c, BigInt::from(-v), BigInt::one()]);
    let shown = quad(2 * 73 * 19441, BigInt::from(5).pow(12)).pow(2);
    let lin = IntPoly::new(vec![-BigInt::from(5).pow(12), BigInt::one()]);
    let shown_sq = &lin.pow(8) * &quad(2 * 79 * 127 * 337 * 1_191_313, BigInt::from(5).pow(24)).pow(4);
    let sq = star_pow(&m12, 2).map_err(|e| e.to_string())?;
    ensure!(
        m12 == shown,
        "known deviation: m_gamma5^(12) = {m12}; the displayed square has X^3 coefficient -2 * 2838386"
    );
    ensure!(sq == shown_sq, "known deviation: (m_gamma5^(12))^*2 differs from the displayed form");
    Ok(())
}

fn degenerate_sieve() -> Check {
    let config = fixture("biquadratic_good_at_3");
    let curve = config.curve.integralize().map_err(|e| e.to_string())?;
    let (results, skipped) = sieve_all(&curve, &[3, 7], &DirectTraces).map_err(|e| e.to_string())?;
    ensure!(skipped.is_empty(), "skipped: {skipped:?}");
    let x = |ell: u64| IntPoly::new(vec![-BigInt::from(ell).pow(24), BigInt::one()]);
    ensure!(results[0].p_ell_star == x(3).pow(2), "P_3* = {}", results[0].p_ell_star);
    let quad = IntPoly::new(vec![
        BigInt::from(7).pow(48),
        "-371728108602950083202".parse().expect("integer"),
        BigInt::one(),
    ]);
    ensure!(results[1].p_ell_star == &x(7).pow(2) * &quad, "P_7* = {}", results[1].p_ell_star);
    for r in &results {
        ensure!(r.b_ell.is_zero(), "B_{} = {}", r.ell, r.b_ell);
    }
    Ok(())
}

fn end_to_end() -> Check {
    let report = run_pipeline(&fixture("q_sqrt2"), &DirectTraces).map_err(|e| e.to_string())?;
    for s in &report.statuses {
        let want = if s.p == "13" { "exceptional" } else { "eliminated" };
        ensure!(s.status == want, "Q(sqrt 2): {} is {}", s.p, s.status);
    }
    ensure!(report.status_of(13) == Some("exceptional"), "Q(sqrt 2): 13 not witnessed");

    let report = run_pipeline(&fixture("q_i"), &DirectTraces).map_err(|e| e.to_string())?;
    ensure!(report.complete, "Q(i): incomplete report");
    ensure!(
        report.statuses.iter().all(|s| s.status == "eliminated"),
        "Q(i): statuses {:?}",
        report.statuses.iter().map(|s| (&s.p, &s.status)).collect::<Vec<_>>()
    );

    let report = run_pipeline(&fixture("cubic"), &DirectTraces).map_err(|e| e.to_string())?;
    let inter = report.intersection.as_ref().ok_or("cubic: no intersection")?;
    ensure!(inter.primes == prime_set(&[2, 3, 5]) && !inter.all_primes, "cubic: S_17 ∩ S_19 ∩ S_37 = {inter:?}");
    ensure!(report.statuses.iter().all(|s| s.status == "eliminated"), "cubic: not everything eliminated");

    let mut config = fixture("biquadratic");
    config.sieve.ells = EllChoice::List(vec![5]);
    let report = run_pipeline(&config, &DirectTraces).map_err(|e| e.to_string())?;
    let cands = report.candidates.as_ref().ok_or("biquadratic: no candidates")?;
    ensure!(cands.primes == prime_set(&[2, 3, 5, 7, 11, 13, 193]), "biquadratic candidates {cands:?}");
    Ok(())
}

fn phi_predicates() -> Check {
    let cases = [
        (17, 1, 6, PhiConclusion::IrreducibleAllPGe3ExceptEll),
        (13, 1, 6, PhiConclusion::NoConclusion),
        (2, 1, 8, PhiConclusion::IrreducibleAllPGe5),
        (3, 1, 4, PhiConclusion::IrreducibleAllPGe5),
        // f = 2 at 2 with |Phi| = 6: no conclusion, and indeed E[7] can be reducible.
        (2, 2, 6, PhiConclusion::NoConclusion),
    ];
    for (ell, f, order, want) in cases {
        let got = phi_uniform_test(PhiInput { ell, residue_degree: f, phi_order: order }).map_err(|e| e.to_string())?;
        ensure!(got == want, "(ell={ell}, f={f}, |Phi|={order}) gave {got}");
    }
    Ok(())
}

fn witnesses() -> Check {
    let e = fixture("q_sqrt2").curve;
    let k = Arc::clone(e.field());
    ensure!(x0_witness(&e, 13, &k.theta()).map_err(|e| e.to_string())?, "X_0(13) at sqrt 2");

    let e = fixture("q_sqrt3").curve;
    let k = Arc::clone(e.field());
    let el = |c: &[i64]| k.element_i64s(c, 1).expect("element");
    ensure!(x0_witness(&e, 3, &el(&[243, -162])).map_err(|e| e.to_string())?, "X_0(3) at 243 - 162 sqrt 3");
    ensure!(two_torsion_witness(&e, &el(&[-420, -224]), &el(&[15288, 4704])), "2-torsion on Q(sqrt 3)");
    let m = k.min_poly(e.j_invariant()).map_err(|e| e.to_string())?.to_int_poly().ok_or("non-integral min poly")?;
    ensure!(m == IntPoly::from_i64s(&[-1_790_957_481_984, -153_542_016, 1]), "min_poly(j) = {m}");

    let e = fixture("q_sqrt5").curve;
    let k = Arc::clone(e.field());
    ensure!(two_torsion_witness(&e, &k.zero(), &k.zero()), "(0, 0) on Q(sqrt 5)");

    let forms = reduced_forms(-36).map_err(|e| e.to_string())?;
    ensure!(forms == [(1, 0, 9), (2, 2, 5)], "reduced_forms(-36) = {forms:?}");
    Ok(())
}

fn random_monoid_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> IntPoly {
    let deg = rng.gen_range(1..=max_deg);
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-9..=9)).collect();
    if c[0] == 0 {
        c[0] = 1 + rng.gen_range(0..9);
    }
    c.push(1);
    IntPoly::from_i64s(&c)
}

fn field_of_order(ell: u64, f: usize) -> Arc<FiniteField> {
    (0..ell.pow(f as u32))
        .find_map(|i| {
            let mut coeffs: Vec<u64> = (0..f).map(|k| (i / ell.pow(k as u32)) % ell).collect();
            coeffs.push(1);
            FiniteField::new(FpPoly::new(ell, coeffs)).ok()
        })
        .expect("an irreducible polynomial exists")
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let s = |e: isosieve_core::Error| e.to_string();
    let psi1 = IntPoly::psi(1);
    for _ in 0..500 {
        let p = random_monoid_poly(&mut rng, 4);
        let q = random_monoid_poly(&mut rng, 4);
        let pq = star(&p, &q).map_err(s)?;
        ensure!(pq == star(&q, &p).map_err(s)?, "star not commutative on {p}, {q}");
        ensure!(star(&p, &psi1).map_err(s)? == p, "Psi_1 is not an identity for {p}");
        let sign = if (p.deg() * q.deg()) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        let law = sign * p.constant_term().pow(q.deg() as u32) * q.constant_term().pow(p.deg() as u32);
        ensure!(pq.constant_term() == law, "constant-term law fails on {p}, {q}");
        ensure!(pq == star_sylvester(&p, &q).map_err(s)?, "star implementations disagree on {p}, {q}");
    }
    for _ in 0..100 {
        let p = random_monoid_poly(&mut rng, 3);
        let q = random_monoid_poly(&mut rng, 3);
        let r = rng.gen_range(1..=6);
        let lhs = adams(&star(&p, &q).map_err(s)?, r).map_err(s)?;
        let rhs = star(&adams(&p, r).map_err(s)?, &adams(&q, r).map_err(s)?).map_err(s)?;
        ensure!(lhs == rhs, "adams is not a star morphism on {p}, {q}, r = {r}");
        let (a, b) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let composed = adams(&adams(&p, a).map_err(s)?, b).map_err(s)?;
        ensure!(composed == adams(&p, a * b).map_err(s)?, "adams does not compose on {p}");
    }
    let (t3, t12, t24) = (chebyshev(3).t, chebyshev(12).t, chebyshev(24).t);
    let one = IntPoly::one();
    ensure!(t24 == &(&t12 * &t12).scale(&BigInt::from(2)) - &one, "T_24 != 2 T_12^2 - 1");
    let rhs = (&(&(&one - &t3) * &(&one + &t3)) * &(&t3 * &t3)).scale(&BigInt::from(8));
    ensure!(&one - &t12 == rhs, "1 - T_12 != 8 (1 - T_3)(1 + T_3) T_3^2");

    // Hasse bound on every trace the fixtures produce up to 60.
    for name in ["q_sqrt5", "q_sqrt13", "q_i", "q_sqrt2", "q_sqrt3", "cubic", "biquadratic_good_at_3"] {
        let curve = fixture(name).curve.integralize().map_err(s)?;
        let ells = isosieve_core::arith::primes_up_to(60);
        let blocks = trace_blocks(&curve, &ells, &DirectTraces).map_err(|e| e.to_string())?;
        for t in blocks.iter().flat_map(|b| &b.traces) {
            let (tr, n): (BigInt, BigInt) = (t.trace.parse().expect("int"), t.ideal.norm.parse().expect("int"));
            ensure!(&tr * &tr <= BigInt::from(4) * n, "{name}: Hasse bound fails at {:?}", t.ideal);
        }
    }

    // Odd degree: B_ell never vanishes for Hasse-bounded traces.
    let patterns: [&[(usize, usize)]; 5] = [&[(1, 1)], &[(1, 1), (1, 1), (1, 1)], &[(1, 1), (1, 2)], &[(1, 3)], &[(3, 1)]];
    for round in 0..200 {
        let ell = [3u64, 5, 7, 11, 13][rng.gen_range(0..5)];
        let pattern = patterns[round % patterns.len()];
        let d: usize = pattern.iter().map(|(e, f)| e * f).sum();
        let mut fds = Vec::new();
        for &(e, f) in pattern {
            let g = field_of_order(ell, f).modulus().to_int_poly();
            let ideal = PrimeIdealData::new(ell, &g, e, IdealSource::Computed).map_err(s)?;
            let bound = (2.0 * (ell.pow(f as u32) as f64).sqrt()).floor() as i64;
            fds.push(FrobeniusData::new(ideal, BigInt::from(rng.gen_range(-bound..=bound))).map_err(s)?);
        }
        let values = sieve_values(&p_ell_star(&fds).map_err(s)?, ell, d).map_err(s)?;
        ensure!(values.iter().all(|v| !v.is_zero()), "B_{ell} = 0 with d = {d}");
    }

    // Character sums against enumeration for every odd q <= 49.
    for q in (3u64..=49).step_by(2) {
        let Some((ell, f)) = prime_power(q) else { continue };
        let k = field_of_order(ell, f);
        let mut tested = 0;
        while tested < 4 {
            let a = std::array::from_fn(|_| k.element(rng.gen_range(0..q)));
            let curve = ReducedCurve::new(a).map_err(s)?;
            if curve.discriminant().is_zero() {
                continue;
            }
            let fast = curve.count_points().map_err(s)?;
            ensure!(fast == curve.count_points_naive().map_err(s)?, "point counts disagree over F_{q}");
            tested += 1;
        }
    }
    Ok(())
}

fn prime_power(q: u64) -> Option<(u64, usize)> {
    let ell = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut f = 0;
    let mut n = q;
    while n.is_multiple_of(ell) {
        n /= ell;
        f += 1;
    }
    (n == 1).then_some((ell, f))
}

struct Gate {
    failures: Vec<String>,
    deviations: Vec<String>,
}

impl Gate {
    fn run(&mut self, id: &str, title: &str, limit: Duration, required: bool, check: fn() -> Check) {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(()) if elapsed <= limit => Ok(()),
            Ok(()) => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(()) => println!("criterion {id} {title}: PASS ({elapsed:.2?}, limit {limit:?})"),
            Err(reason) => {
                println!("criterion {id} {title}: FAIL ({elapsed:.2?}) {reason}");
                let line = format!("{id} {title}: {reason}");
                if required {
                    self.failures.push(line);
                } else {
                    self.deviations.push(line);
                }
            }
        }
    }
}

fn main() {
    // `cargo test -- --list` and filters are harness conventions; honor --list.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let mut gate = Gate { failures: Vec::new(), deviations: Vec::new() };
    let secs = Duration::from_secs;
    gate.run("1", "traces", secs(5), true, traces);
    gate.run("2", "sieve integers over Q(i)", secs(10), true, sieve_integers);
    gate.run("3", "R_q5, R_q7 and P_q5^(12)", secs(60), true, r_values);
    gate.run("3", "displayed m_gamma5^(12) intermediates", secs(60), false, displayed_m_gamma_intermediates);
    gate.run("4", "degenerate sieve", secs(60), true, degenerate_sieve);
    gate.run("5", "end-to-end candidate sets", secs(120), true, end_to_end);
    gate.run("6", "Phi predicates", secs(5), true, phi_predicates);
    gate.run("7", "witnesses", secs(10), true, witnesses);
    gate.run("8", "property suites", secs(120), true, property_suites);
    for d in &gate.deviations {
        println!("known deviation: {d}");
    }
    if !gate.failures.is_empty() {
        eprintln!("{} acceptance check(s) failed", gate.failures.len());
        std::process::exit(1);
    }
}
