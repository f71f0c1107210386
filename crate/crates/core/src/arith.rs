//! Integer utilities: primality, factorization and prime-divisor sets.
//!
//! Factorization is trial division up to a configurable bound followed by
//! Pollard rho with Brent's cycle detection on whatever cofactor remains.
//! The rho search has a fixed budget; exhausting it is reported as
//! [`Error::Timeout`] together with everything that was found.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const SMALL_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
/// Extra random Miller-Rabin rounds above 2^64: error below 4^-64 = 2^-128.
const RANDOM_ROUNDS: usize = 64;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL_WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn miller_rabin_round(n: &BigUint, n_minus_1: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || &x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if &x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Primality test. Exact below 2^64; above, a composite passes with
/// probability below 2^-128.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &SMALL_WITNESSES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    for &a in &SMALL_WITNESSES {
        if !miller_rabin_round(n, &n_minus_1, &d, s, &BigUint::from(a)) {
            return false;
        }
    }
    // Seeded from n so the answer is reproducible.
    let seed = n.iter_u64_digits().fold(0x9e37_79b9_7f4a_7c15u64, |h, x| h.rotate_left(7) ^ x);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = BigUint::from(2u32);
    for _ in 0..RANDOM_ROUNDS {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        if !miller_rabin_round(n, &n_minus_1, &d, s, &a) {
            return false;
        }
    }
    true
}

/// A complete factorization `sign * prod p^e` with primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub sign: Sign,
    pub factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    fn from_multiset(sign: Sign, mut primes: Vec<BigUint>) -> Self {
        primes.sort();
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Factorization { sign, factors }
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn value(&self) -> BigInt {
        let magnitude = self
            .factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        BigInt::from_biguint(self.sign, magnitude)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Minus {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct FactorConfig {
    pub trial_bound: u64,
    pub rho_iterations: u64,
    pub rho_seeds: u32,
    pub seed: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: 1_000_000,
            rho_iterations: 1 << 22,
            rho_seeds: 8,
            seed: 0,
        }
    }
}

fn sieve_primes(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes up to `bound`, cached for the default trial bound.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    static DEFAULT: OnceLock<Vec<u64>> = OnceLock::new();
    let default_bound = FactorConfig::default().trial_bound;
    if bound <= default_bound {
        let all = DEFAULT.get_or_init(|| sieve_primes(default_bound));
        let end = all.partition_point(|&p| p <= bound);
        all[..end].to_vec()
    } else {
        sieve_primes(bound)
    }
}

fn rem_u64(n: &BigUint, p: u64) -> u64 {
    let mut r: u128 = 0;
    for digit in n.iter_u64_digits().rev() {
        r = ((r << 64) | digit as u128) % p as u128;
    }
    r as u64
}

fn rho_brent_u64(n: u64, c: u64, x0: u64, budget: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q, mut g) = (x0, 1u64, 1u64, 1u64);
    let (mut x, mut ys) = (0, 0);
    let m = 128u64;
    let mut spent = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += m;
        }
        spent += r;
        if spent > budget {
            return None;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn rho_brent(n: &BigUint, c: &BigUint, x0: BigUint, budget: u64) -> Option<BigUint> {
    let f = |x: &BigUint| (x * x + c) % n;
    let mut y = x0;
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = BigUint::zero();
    let mut ys = BigUint::zero();
    let m = 128u64;
    let mut spent = 0u64;
    let absdiff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * absdiff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        spent += r;
        if spent > budget {
            return None;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = absdiff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

fn find_split(n: &BigUint, config: &FactorConfig, rng: &mut ChaCha8Rng) -> Option<BigUint> {
    if let Some(small) = n.to_u64() {
        for _ in 0..config.rho_seeds {
            let c = rand::Rng::gen_range(rng, 1..small);
            let x0 = rand::Rng::gen_range(rng, 0..small);
            if let Some(d) = rho_brent_u64(small, c, x0, config.rho_iterations) {
                return Some(BigUint::from(d));
            }
        }
        return None;
    }
    let one = BigUint::one();
    for _ in 0..config.rho_seeds {
        let c = rng.gen_biguint_range(&one, n);
        let x0 = rng.gen_biguint_below(n);
        if let Some(d) = rho_brent(n, &c, x0, config.rho_iterations) {
            return Some(d);
        }
    }
    None
}

fn perfect_square_root(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Factor `n` with the default budget.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    factorize_with(n, &FactorConfig::default())
}

pub fn factorize_with(n: &BigInt, config: &FactorConfig) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Invalid("cannot factor zero".into()));
    }
    let sign = if n.is_negative() { Sign::Minus } else { Sign::Plus };
    let mut rest = n.magnitude().clone();
    let mut found: Vec<BigUint> = Vec::new();

    for p in primes_up_to(config.trial_bound) {
        if rest.is_one() {
            break;
        }
        if let Some(r) = rest.to_u64() {
            if p.saturating_mul(p) > r {
                break;
            }
        }
        while rem_u64(&rest, p) == 0 {
            rest /= p;
            found.push(BigUint::from(p));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut stack = vec![rest];
    let mut unsplit = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            found.push(m);
            continue;
        }
        if let Some(r) = perfect_square_root(&m) {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        match find_split(&m, config, &mut rng) {
            Some(d) => {
                let other = &m / &d;
                stack.push(d);
                stack.push(other);
            }
            None => unsplit.push(m),
        }
    }

    let factorization = Factorization::from_multiset(sign, found);
    if unsplit.is_empty() {
        Ok(factorization)
    } else {
        unsplit.sort();
        Err(Error::Timeout {
            partial: factorization,
            unsplit,
        })
    }
}

/// A set of primes, or the sentinel "every prime" (contributed by the value 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisorSet {
    AllPrimes,
    Primes(BTreeSet<BigUint>),
}

impl DivisorSet {
    pub fn empty() -> Self {
        DivisorSet::Primes(BTreeSet::new())
    }

    pub fn contains(&self, p: &BigUint) -> bool {
        match self {
            DivisorSet::AllPrimes => true,
            DivisorSet::Primes(set) => set.contains(p),
        }
    }

    pub fn intersect(&self, other: &DivisorSet) -> DivisorSet {
        match (self, other) {
            (DivisorSet::AllPrimes, x) | (x, DivisorSet::AllPrimes) => x.clone(),
            (DivisorSet::Primes(a), DivisorSet::Primes(b)) => {
                DivisorSet::Primes(a.intersection(b).cloned().collect())
            }
        }
    }

    pub fn union(&self, other: &DivisorSet) -> DivisorSet {
        match (self, other) {
            (DivisorSet::AllPrimes, _) | (_, DivisorSet::AllPrimes) => DivisorSet::AllPrimes,
            (DivisorSet::Primes(a), DivisorSet::Primes(b)) => {
                DivisorSet::Primes(a.union(b).cloned().collect())
            }
        }
    }
}

/// Prime divisors of `n`, with 0 mapping to [`DivisorSet::AllPrimes`].
pub fn prime_divisors(n: &BigInt, config: &FactorConfig) -> Result<DivisorSet> {
    if n.is_zero() {
        return Ok(DivisorSet::AllPrimes);
    }
    let f = factorize_with(n, config)?;
    Ok(DivisorSet::Primes(f.primes().cloned().collect()))
}

/// Intersection of the prime-divisor sets of `values`.
///
/// Computed as the prime divisors of the gcd of the nonzero entries, which is
/// the same set and much cheaper to factor than the entries themselves.
pub fn divisor_set_intersection(values: &[BigInt]) -> Result<DivisorSet> {
    divisor_set_intersection_with(values, &FactorConfig::default())
}

pub fn divisor_set_intersection_with(values: &[BigInt], config: &FactorConfig) -> Result<DivisorSet> {
    let g = values
        .iter()
        .filter(|v| !v.is_zero())
        .fold(None::<BigInt>, |acc, v| match acc {
            None => Some(v.abs()),
            Some(a) => Some(a.gcd(v)),
        });
    match g {
        None => Ok(DivisorSet::AllPrimes),
        Some(g) => prime_divisors(&g, config),
    }
}
