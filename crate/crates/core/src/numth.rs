//! Multiplicative number theory primitives on machine integers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ascending list of all primes up to `limit`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Primes `p <= x` (x may be fractional).
    pub fn up_to(&self, x: f64) -> &[u64] {
        let end = self.primes.partition_point(|&p| (p as f64) <= x);
        &self.primes[..end]
    }

    /// Prime-counting function π(x) for `x <= limit`.
    pub fn pi(&self, x: f64) -> usize {
        self.up_to(x).len()
    }
}

/// Sieve of Eratosthenes.
pub fn sieve_primes(limit: u64) -> PrimeTable {
    if limit < 2 {
        return PrimeTable {
            limit,
            primes: Vec::new(),
        };
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    PrimeTable { limit, primes }
}

/// Primes `p <= x` for a real cutoff; empty when `x < 2`.
pub fn primes_up_to(x: f64) -> Vec<u64> {
    if x < 2.0 {
        return Vec::new();
    }
    sieve_primes(x.floor() as u64).primes
}

/// Prime factorization `n = ∏ p^e` with primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Total number of prime factors with multiplicity, Ω(n).
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }
}

/// Trial-division factorization.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut factors = Vec::new();
    let mut m = n;
    let mut push = |p: u64, m: &mut u64| {
        let mut e = 0;
        while (*m).is_multiple_of(p) {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut m);
    push(3, &mut m);
    let mut p = 5u64;
    while p.saturating_mul(p) <= m {
        push(p, &mut m);
        push(p + 2, &mut m);
        p += 6;
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Factorization { n, factors }
}

pub fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut p = 5u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) || n.is_multiple_of(p + 2) {
            return false;
        }
        p += 6;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Euler's totient.
pub fn euler_phi(q: u64) -> u64 {
    factorize(q)
        .factors
        .iter()
        .fold(q, |acc, &(p, _)| acc / p * (p - 1))
}

/// von Mangoldt function Λ(n).
pub fn mangoldt(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    match factorize(n).factors.as_slice() {
        [(p, _)] => (*p as f64).ln(),
        _ => 0.0,
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

/// Smallest generator of (Z/qZ)^* for an odd prime `q`.
pub fn primitive_root(q: u64) -> Result<u64> {
    if q == 2 || !is_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    let order = q - 1;
    let divisors: Vec<u64> = factorize(order).primes().collect();
    (2..q)
        .find(|&g| divisors.iter().all(|&r| pow_mod(g, order / r, q) != 1))
        .ok_or(Error::NotOddPrime(q))
}

/// All `n <= limit` whose prime factors are `<= bound`, ascending, including 1.
pub fn smooth_numbers(bound: u64, limit: u64) -> Vec<u64> {
    let primes = sieve_primes(bound.min(limit)).primes;
    let mut out: Vec<u64> = weighted_smooth(&primes, &vec![1.0; primes.len()], limit)
        .into_iter()
        .map(|(n, _)| n)
        .collect();
    out.sort_unstable();
    out
}

/// Enumerates the `primes`-smooth `n <= limit` together with the completely
/// multiplicative weight `∏ w_p^{e_p}`. Output ascending in `n`.
///
/// `primes` must be ascending. Enumeration is by prime-power multiplication,
/// so cost is proportional to the output size.
pub fn weighted_smooth(primes: &[u64], weights: &[f64], limit: u64) -> Vec<(u64, f64)> {
    assert_eq!(primes.len(), weights.len());
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    fn walk(
        primes: &[u64],
        weights: &[f64],
        start: usize,
        n: u64,
        w: f64,
        limit: u64,
        out: &mut Vec<(u64, f64)>,
    ) {
        out.push((n, w));
        for i in start..primes.len() {
            let p = primes[i];
            if n > limit / p {
                break;
            }
            walk(primes, weights, i, n * p, w * weights[i], limit, out);
        }
    }
    walk(primes, weights, 0, 1, 1.0, limit, &mut out);
    out.sort_unstable_by_key(|&(n, _)| n);
    out
}
