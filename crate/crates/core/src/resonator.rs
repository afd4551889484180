//! Completely multiplicative resonator weights and their closed-form products.
//!
//! Two weight shapes are supported: the linear weights `q_p = 1 − p/X` for
//! `p ≤ X`, and constant half weights `q_p = 1/2` for `p ≤ Y`. Both vanish on
//! larger primes and extend completely multiplicatively with `q_1 = 1`.

use serde::{Deserialize, Serialize};

use crate::chargroup::Character;
use crate::error::{Error, Result};
use crate::numth::{factorize, is_prime, primes_up_to, weighted_smooth};
use crate::quad::integrate;
use crate::sum::{neumaier_sum, neumaier_sum_complex};
use crate::Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightScheme {
    /// `q_p = 1 − p/x` for `p ≤ x`.
    Linear { x: f64 },
    /// `q_p = 1/2` for `p ≤ y`.
    Half { y: f64 },
}

impl WeightScheme {
    pub fn linear(x: f64) -> Self {
        Self::Linear { x }
    }

    pub fn half(y: f64) -> Self {
        Self::Half { y }
    }

    pub fn cutoff(&self) -> f64 {
        match *self {
            Self::Linear { x } => x,
            Self::Half { y } => y,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Linear { .. } => "linear",
            Self::Half { .. } => "half",
        }
    }

    fn prime_weight(&self, p: u64) -> f64 {
        let pf = p as f64;
        match *self {
            Self::Linear { x } if pf <= x => 1.0 - pf / x,
            Self::Half { y } if pf <= y => 0.5,
            _ => 0.0,
        }
    }

    /// q_p for a prime `p`.
    pub fn weight(&self, p: u64) -> Result<f64> {
        if is_prime(p) {
            Ok(self.prime_weight(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Completely multiplicative extension q_n.
    pub fn coeff(&self, n: u64) -> f64 {
        factorize(n)
            .factors
            .iter()
            .map(|&(p, e)| self.prime_weight(p).powi(e as i32))
            .product()
    }

    /// Primes `p ≤ cutoff` paired with `q_p`.
    pub fn prime_weights(&self) -> Vec<(u64, f64)> {
        primes_up_to(self.cutoff())
            .into_iter()
            .map(|p| (p, self.prime_weight(p)))
            .collect()
    }

    /// Primes with `q_p > 0` and their weights, as parallel vectors.
    pub fn support(&self) -> (Vec<u64>, Vec<f64>) {
        self.prime_weights()
            .into_iter()
            .filter(|&(_, w)| w > 0.0)
            .unzip()
    }

    /// Σ_n q_n = ∏_{p ≤ cutoff} (1 − q_p)^{−1}, the value R(χ₀).
    pub fn total(&self) -> f64 {
        self.prime_weights()
            .iter()
            .map(|&(_, w)| (1.0 - w).recip())
            .product()
    }

    /// The prime cutoff must stay below `q` so every prime is coprime to it.
    pub fn check_modulus(&self, q: u64) -> Result<()> {
        if self.cutoff() < q as f64 {
            Ok(())
        } else {
            Err(Error::CutoffTooLarge {
                cutoff: self.cutoff(),
                q,
            })
        }
    }
}

/// R(χ) = ∏_{p ≤ cutoff} (1 − q_p χ(p))^{−1}.
pub fn resonator_value(scheme: &WeightScheme, chi: Char<'_>) -> Result<Complex64> {
    scheme.check_modulus(chi.modulus())?;
    let one = Complex64::new(1.0, 0.0);
    Ok(scheme
        .prime_weights()
        .into_iter()
        .fold(one, |acc, (p, w)| acc / (one - chi.value(p) * w)))
}

type Char<'g> = Character<'g, f64>;

/// Truncated coefficient list `(n, q_n)` over smooth `n ≤ n_limit` with
/// `q_n > 0`, plus the exact full sum and the positive tail beyond `n_limit`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonatorCoeffs {
    pub scheme: WeightScheme,
    pub n_limit: u64,
    pub entries: Vec<(u64, f64)>,
    pub total: f64,
    pub tail: f64,
}

impl ResonatorCoeffs {
    pub fn partial(&self) -> f64 {
        self.total - self.tail
    }

    /// tail / total.
    pub fn tail_fraction(&self) -> f64 {
        self.tail / self.total
    }

    /// R_N(χ) = Σ_{n ≤ N} q_n χ(n).
    pub fn series_value(&self, chi: Char<'_>) -> Complex64 {
        neumaier_sum_complex(self.entries.iter().map(|&(n, w)| chi.value(n) * w))
    }

    /// Σ_{n ≤ N} q_n², the diagonal part of |R_N|² summed over characters.
    pub fn sum_of_squares(&self) -> f64 {
        neumaier_sum(self.entries.iter().map(|&(_, w)| w * w))
    }
}

pub fn enumerate_coeffs(scheme: &WeightScheme, n_limit: u64) -> Result<ResonatorCoeffs> {
    if n_limit == 0 {
        return Err(Error::InvalidParameter(
            "resonator truncation N must be >= 1".into(),
        ));
    }
    let (primes, weights) = scheme.support();
    let entries = weighted_smooth(&primes, &weights, n_limit);
    let partial = neumaier_sum(entries.iter().map(|&(_, w)| w));
    let total = scheme.total();
    Ok(ResonatorCoeffs {
        scheme: *scheme,
        n_limit,
        entries,
        total,
        tail: (total - partial).max(0.0),
    })
}

/// 2 Σ_{p ≤ X} (log X − log p), which equals log |R(χ₀)|² for linear weights.
pub fn log_r0_squared(scheme: &WeightScheme) -> Result<f64> {
    match *scheme {
        WeightScheme::Linear { x } => {
            let lx = x.ln();
            Ok(2.0 * neumaier_sum(primes_up_to(x).into_iter().map(|p| lx - (p as f64).ln())))
        }
        WeightScheme::Half { .. } => Err(Error::LinearSchemeOnly("log_r0_squared")),
    }
}

/// ∏_{p ≤ X} (1 − q_p/p)^{−1} = Σ_k a_k q_k, split as the Mertens product
/// ∏ (1 − 1/p)^{−1} times the correction ∏ (p − 1)/(p − q_p).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundProduct {
    pub product: f64,
    pub mertens: f64,
    pub correction: f64,
}

pub fn lower_bound_product(scheme: &WeightScheme) -> LowerBoundProduct {
    let pw = scheme.prime_weights();
    let product = pw
        .iter()
        .map(|&(p, w)| (1.0 - w / p as f64).recip())
        .product();
    let mertens = pw
        .iter()
        .map(|&(p, _)| (1.0 - 1.0 / p as f64).recip())
        .product();
    let correction = pw
        .iter()
        .map(|&(p, w)| (p as f64 - 1.0) / (p as f64 - w))
        .product();
    LowerBoundProduct {
        product,
        mertens,
        correction,
    }
}

/// ∏_{p ≤ X} (1 − 1/p)^{−1}.
pub fn mertens_product(x: f64) -> Result<f64> {
    if x < 2.0 {
        return Err(Error::CutoffBelowTwo(x));
    }
    Ok(primes_up_to(x)
        .into_iter()
        .map(|p| (1.0 - 1.0 / p as f64).recip())
        .product())
}

/// e^γ log X (1 + c / log² X), the Mertens comparator with offset `c`.
pub fn mertens_comparator(x: f64, c: f64) -> f64 {
    let lx = x.ln();
    EULER_GAMMA.exp() * lx * (1.0 + c / (lx * lx))
}

/// ∏_{p ≤ cutoff} (1 − q_p²)^{−1} = Σ_n q_n², the diagonal lower bound for
/// S2, kept in log form since it overflows `f64` once X reaches a few thousand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecondMoment {
    pub log_product: f64,
    /// (2 − log 4) X / log X, linear weights only.
    pub log_asymptotic: Option<f64>,
}

impl SecondMoment {
    pub fn product(&self) -> f64 {
        self.log_product.exp()
    }

    pub fn asymptotic(&self) -> Option<f64> {
        self.log_asymptotic.map(f64::exp)
    }
}

pub fn second_moment_product(scheme: &WeightScheme) -> SecondMoment {
    let log_product = neumaier_sum(
        scheme
            .prime_weights()
            .iter()
            .map(|&(_, w)| -(-w * w).ln_1p()),
    );
    let log_asymptotic = match *scheme {
        WeightScheme::Linear { x } if x > 1.0 => Some((2.0 - 4f64.ln()) * x / x.ln()),
        _ => None,
    };
    SecondMoment {
        log_product,
        log_asymptotic,
    }
}

/// J = ∫_1^{2−2/X} dt / ((log(2−t) + log X) t) = J1 + J2, split at 2 − (log X)^{−2}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JIntegral {
    pub j: f64,
    pub j1: f64,
    pub j2: f64,
}

pub fn j_integral(x: f64) -> Result<JIntegral> {
    if !(x >= 10.0) {
        return Err(Error::IntegralDomain(x));
    }
    let lx = x.ln();
    let upper = 2.0 - 2.0 / x;
    // For X < 2 log² X the split lands past the upper limit and J2 is empty.
    let split = (2.0 - 1.0 / (lx * lx)).min(upper);
    let f = |t: f64| 1.0 / (((2.0 - t).ln() + lx) * t);
    let j1 = integrate(f, 1.0, split, 1e-10).value;
    let j2 = if split < upper {
        integrate(f, split, upper, 1e-10).value
    } else {
        0.0
    };
    Ok(JIntegral { j: j1 + j2, j1, j2 })
}
