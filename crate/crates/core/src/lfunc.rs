//! Values of L(σ, χ) for real σ ∈ (1/2, 1] and their finite approximations.
//!
//! Ground truth comes from two finite formulas:
//!
//! * σ = 1, χ ≠ χ₀: `L(1, χ) = -(1/q) Σ_a χ(a) ψ(a/q)`;
//! * σ < 1: `L(σ, χ) = q^{-σ} Σ_a χ(a) ζ(σ, a/q)`.
//!
//! The batch variants evaluate all characters at once through one group DFT.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chargroup::{Character, CharacterGroup};
use crate::error::{Error, Result};
use crate::numth::primes_up_to;
use crate::scalar::Real;
use crate::special::{digamma, hurwitz_zeta};
use crate::sum::{neumaier_sum, neumaier_sum_complex};

/// A real point σ with 1/2 < σ ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct SigmaPoint<T>(T);

impl<T: Real> SigmaPoint<T> {
    pub fn new(sigma: T) -> Result<Self> {
        if sigma > T::lit(0.5) && sigma <= T::one() {
            Ok(Self(sigma))
        } else {
            Err(Error::SigmaOutOfRange(sigma.to_f64().unwrap_or(f64::NAN)))
        }
    }

    pub fn one() -> Self {
        Self(T::one())
    }

    pub fn get(self) -> T {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0 == T::one()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Digamma,
    Hurwitz,
    EulerProduct,
    DirichletSeries,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LValue<T> {
    pub index: usize,
    pub sigma: T,
    pub value: Complex<T>,
    pub method: Method,
    pub err_estimate: T,
}

/// Backend samples f(a) for a = 1..q-1 and their absolute error bounds.
struct Backend<T> {
    method: Method,
    values: Vec<T>,
    errors: Vec<T>,
    /// Overall factor: -1/q at σ = 1, q^{-σ} otherwise.
    scale: T,
}

fn backend<T: Real>(q: u64, sigma: SigmaPoint<T>) -> Result<Backend<T>> {
    let qt = T::from_count(q);
    let s = sigma.get();
    let samples: Vec<(T, T)> = (1..q)
        .into_par_iter()
        .map(|a| {
            let x = T::from_count(a) / qt;
            if sigma.is_one() {
                let v = digamma(x)?;
                Ok((v, T::lit(16.0) * T::epsilon() * v.abs().max(T::one())))
            } else {
                let h = hurwitz_zeta(s, x)?;
                Ok((h.value, h.err_bound))
            }
        })
        .collect::<Result<_>>()?;
    let (values, errors) = samples.into_iter().unzip();
    let (method, scale) = if sigma.is_one() {
        (Method::Digamma, -qt.recip())
    } else {
        (Method::Hurwitz, qt.powf(-s))
    };
    Ok(Backend {
        method,
        values,
        errors,
        scale,
    })
}

fn check_pole<T: Real>(chi: &Character<'_, T>, sigma: SigmaPoint<T>) -> Result<()> {
    if sigma.is_one() && chi.is_principal() {
        Err(Error::Pole)
    } else {
        Ok(())
    }
}

/// L(σ, χ) by direct compensated summation over residues.
pub fn l_value<T: Real>(chi: Character<'_, T>, sigma: SigmaPoint<T>) -> Result<LValue<T>> {
    check_pole(&chi, sigma)?;
    let q = chi.modulus();
    let b = backend(q, sigma)?;
    let sum = neumaier_sum_complex(
        b.values
            .iter()
            .enumerate()
            .map(|(i, &v)| chi.value(i as u64 + 1) * v),
    );
    let err = neumaier_sum(b.errors.iter().copied()) * b.scale.abs();
    Ok(LValue {
        index: chi.index(),
        sigma: sigma.get(),
        value: sum * b.scale,
        method: b.method,
        err_estimate: err,
    })
}

/// L(σ, χ) for every non-principal χ, indexed `1..q-1` in the output order.
pub fn l_value_batch<T: Real>(
    group: &CharacterGroup<T>,
    sigma: SigmaPoint<T>,
) -> Result<Vec<LValue<T>>> {
    let b = backend(group.modulus(), sigma)?;
    let spectrum = group.dft_real(&b.values)?;
    let n = T::from_count(group.order() as u64);
    let mass = neumaier_sum(b.values.iter().map(|v| v.abs()));
    let err =
        (neumaier_sum(b.errors.iter().copied()) + T::epsilon() * n.log2() * mass) * b.scale.abs();
    Ok(spectrum
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(j, z)| LValue {
            index: j,
            sigma: sigma.get(),
            value: z * b.scale,
            method: b.method,
            err_estimate: err,
        })
        .collect())
}

/// L(1, χ) for an explicit character table `values[a] = χ(a)`, `a = 0..q-1`,
/// of any modulus. The table must sum to zero (non-principal).
pub fn l_one_from_table<T: Real>(values: &[Complex<T>]) -> Result<Complex<T>> {
    let q = values.len() as u64;
    if q < 2 {
        return Err(Error::InvalidParameter(
            "character table needs q >= 2".into(),
        ));
    }
    if neumaier_sum_complex(values.iter().copied()).norm() > T::lit(1e-9) {
        return Err(Error::Pole);
    }
    let qt = T::from_count(q);
    let terms = (1..q)
        .map(|a| Ok(values[a as usize] * digamma(T::from_count(a) / qt)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(neumaier_sum_complex(terms) * (-qt.recip()))
}

fn check_cutoff(x: f64) -> Result<()> {
    if x >= 2.0 {
        Ok(())
    } else {
        Err(Error::CutoffBelowTwo(x))
    }
}

/// ∏_{p ≤ X} (1 − χ(p) p^{−σ})^{−1}.
pub fn euler_product_truncated<T: Real>(
    chi: Character<'_, T>,
    sigma: T,
    x: f64,
) -> Result<Complex<T>> {
    check_cutoff(x)?;
    let one = Complex::new(T::one(), T::zero());
    Ok(primes_up_to(x).into_iter().fold(one, |acc, p| {
        let pt = T::from_count(p);
        acc / (one - chi.value(p) * pt.powf(-sigma))
    }))
}

/// Prime powers `p^k ≤ x` with their exponent `k`.
fn prime_powers(x: f64) -> Vec<(u64, u64, u32)> {
    let limit = x.floor() as u64;
    let mut out = Vec::new();
    for p in primes_up_to(x) {
        let mut pk = p;
        let mut k = 1;
        loop {
            out.push((pk, p, k));
            match pk.checked_mul(p) {
                Some(next) if next <= limit => {
                    pk = next;
                    k += 1;
                }
                _ => break,
            }
        }
    }
    out
}

/// D_χ(σ, X) = Σ_{2≤n≤X} Λ(n) χ(n) / (n^σ log n), summed over prime powers
/// `p^k` where `Λ(n)/log n = 1/k`.
pub fn dirichlet_poly<T: Real>(chi: Character<'_, T>, sigma: T, x: f64) -> Result<Complex<T>> {
    check_cutoff(x)?;
    Ok(neumaier_sum_complex(prime_powers(x).into_iter().map(
        |(n, _, k)| chi.value(n) * (T::from_count(n).powf(-sigma) / T::from_count(k as u64)),
    )))
}

/// S_χ(σ, X) = Σ_{p ≤ X} χ(p) p^{−σ}; zero when X < 2.
pub fn prime_sum<T: Real>(chi: Character<'_, T>, sigma: T, x: f64) -> Complex<T> {
    neumaier_sum_complex(
        primes_up_to(x)
            .into_iter()
            .map(|p| chi.value(p) * T::from_count(p).powf(-sigma)),
    )
}

/// Residue buckets `B[a-1] = Σ_{n ≡ a} w_n` of a weighted integer sequence;
/// terms with `q | n` are dropped.
pub fn residue_buckets<T: Real, I: IntoIterator<Item = (u64, T)>>(q: u64, terms: I) -> Vec<T> {
    let mut acc = vec![crate::sum::NeumaierSum::<T>::new(); (q - 1) as usize];
    for (n, w) in terms {
        let r = n % q;
        if r != 0 {
            acc[r as usize - 1].add(w);
        }
    }
    acc.iter().map(|s| s.value()).collect()
}

/// S_χ(σ, X) for all characters, indexed by character index.
pub fn prime_sum_batch<T: Real>(
    group: &CharacterGroup<T>,
    sigma: T,
    x: f64,
) -> Result<Vec<Complex<T>>> {
    let f = residue_buckets(
        group.modulus(),
        primes_up_to(x)
            .into_iter()
            .map(|p| (p, T::from_count(p).powf(-sigma))),
    );
    group.dft_real(&f)
}

/// D_χ(σ, X) for all characters, indexed by character index.
pub fn dirichlet_poly_batch<T: Real>(
    group: &CharacterGroup<T>,
    sigma: T,
    x: f64,
) -> Result<Vec<Complex<T>>> {
    check_cutoff(x)?;
    let f = residue_buckets(
        group.modulus(),
        prime_powers(x)
            .into_iter()
            .map(|(n, _, k)| (n, T::from_count(n).powf(-sigma) / T::from_count(k as u64))),
    );
    group.dft_real(&f)
}

/// Characters whose `log|L(σ,χ)|` deviates from `Re S_χ(σ,X)` by more than a
/// tolerance, with summary statistics over all non-principal characters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxCensus {
    pub q: u64,
    pub sigma: f64,
    pub x: f64,
    pub tol: f64,
    pub indices: Vec<usize>,
    pub max_deviation: f64,
    pub mean_deviation: f64,
}

/// Per-character deviations `|log|L(σ,χ)| − Re S_χ(σ,X)|`, index 0 unused.
pub fn approx_deviations<T: Real>(
    group: &CharacterGroup<T>,
    sigma: SigmaPoint<T>,
    x: f64,
) -> Result<Vec<T>> {
    let lvals = l_value_batch(group, sigma)?;
    let sums = prime_sum_batch(group, sigma.get(), x)?;
    let mut dev = vec![T::zero(); group.order()];
    for l in &lvals {
        dev[l.index] = (l.value.norm().ln() - sums[l.index].re).abs();
    }
    Ok(dev)
}

pub fn approx_error_census<T: Real>(
    group: &CharacterGroup<T>,
    sigma: SigmaPoint<T>,
    x: f64,
    tol: f64,
) -> Result<ApproxCensus> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidParameter(format!("census tolerance {tol}")));
    }
    let dev = approx_deviations(group, sigma, x)?;
    let devs: Vec<f64> = dev[1..].iter().map(|d| d.to_f64().unwrap()).collect();
    let indices = devs
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > tol)
        .map(|(i, _)| i + 1)
        .collect();
    let max_deviation = devs.iter().copied().fold(0.0, f64::max);
    let mean_deviation = if devs.is_empty() {
        0.0
    } else {
        neumaier_sum(devs.iter().copied()) / devs.len() as f64
    };
    Ok(ApproxCensus {
        q: group.modulus(),
        sigma: sigma.get().to_f64().unwrap(),
        x,
        tol,
        indices,
        max_deviation,
        mean_deviation,
    })
}
