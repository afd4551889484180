//! Resonance sums S1 and S2 and the finite certificates built on them.
//!
//! Every sum is available in two independent forms: the character-sum form,
//! which evaluates R_N(χ) and the L-side Dirichlet polynomial for every χ via
//! the group DFT, and the congruence form obtained from orthogonality, which
//! only sums products of coefficients over pairs in matching residue classes.
//! The congruence forms are sums of nonnegative terms.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chargroup::CharacterGroup;
use crate::error::{Error, Result};
use crate::lfunc::residue_buckets;
use crate::numth::{is_prime, primes_up_to, smooth_numbers};
use crate::resonator::{enumerate_coeffs, lower_bound_product, ResonatorCoeffs, WeightScheme};
use crate::sum::{neumaier_sum, neumaier_sum_complex};
use crate::{Complex64, Group};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest certified slack accepted by a certificate.
pub const TAU_MAX: f64 = 0.05;

/// Relative slack allowed when checking the exact finite relation bound.
const RELATION_RTOL: f64 = 1e-9;

fn check_modulus(q: u64) -> Result<()> {
    if q == 2 || !is_prime(q) {
        return Err(Error::NotOddPrime(q));
    }
    if q >= crate::chargroup::MAX_MODULUS {
        return Err(Error::ModulusTooLarge(q));
    }
    Ok(())
}

fn check_y(scheme: &WeightScheme, y: f64) -> Result<()> {
    if y >= scheme.cutoff() {
        Ok(())
    } else {
        Err(Error::YBelowX {
            x: scheme.cutoff(),
            y,
        })
    }
}

/// a(σ) = (2σ − 1)/(2 − σ), the bad-set exponent implied by the zero-density
/// count exponent 3(1 − σ)/(2 − σ).
pub fn default_a_sigma(sigma: f64) -> f64 {
    (2.0 * sigma - 1.0) / (2.0 - sigma)
}

/// Dirichlet coefficients b_k = k^{−σ} on Y-smooth k ≤ K.
pub fn l_coefficients(sigma: f64, y: f64, k_limit: u64) -> Vec<(u64, f64)> {
    let bound = if y >= k_limit as f64 {
        k_limit
    } else {
        y.max(1.0).floor() as u64
    };
    smooth_numbers(bound, k_limit)
        .into_iter()
        .map(|k| (k, (k as f64).powf(-sigma)))
        .collect()
}

fn resonator_buckets(q: u64, coeffs: &ResonatorCoeffs) -> Vec<f64> {
    residue_buckets(q, coeffs.entries.iter().copied())
}

/// Σ_c w[c] Σ_m q_m A[c·m mod q] over residues c with w[c] ≠ 0.
fn twisted_sum(q: u64, weights: &[f64], coeffs: &ResonatorCoeffs, buckets: &[f64]) -> f64 {
    let parts: Vec<f64> = (1..q)
        .into_par_iter()
        .filter(|&c| weights[c as usize - 1] != 0.0)
        .map(|c| {
            let inner = neumaier_sum(coeffs.entries.iter().map(|&(m, w)| {
                let r = (c * (m % q)) % q;
                w * buckets[r as usize - 1]
            }));
            weights[c as usize - 1] * inner
        })
        .collect();
    neumaier_sum(parts)
}

/// `pref[i] = Σ_{j ≤ i} q_{r_j} A[r_j mod q]`, the S2 mass restricted to `r ≤ r_i`.
fn s2_prefix(q: u64, coeffs: &ResonatorCoeffs, buckets: &[f64]) -> Vec<f64> {
    let mut acc = crate::sum::NeumaierSum::new();
    coeffs
        .entries
        .iter()
        .map(|&(r, w)| {
            acc.add(w * buckets[(r % q) as usize - 1]);
            acc.value()
        })
        .collect()
}

fn prefix_at(coeffs: &ResonatorCoeffs, pref: &[f64], limit: u64) -> f64 {
    let end = coeffs.entries.partition_point(|&(r, _)| r <= limit);
    if end == 0 {
        0.0
    } else {
        pref[end - 1]
    }
}

/// Σ_χ |R_N(χ)|² through the group DFT.
pub fn s2_character_sum(group: &Group, scheme: &WeightScheme, n_limit: u64) -> Result<f64> {
    let q = group.modulus();
    scheme.check_modulus(q)?;
    let coeffs = enumerate_coeffs(scheme, n_limit)?;
    let r = group.dft_real(&resonator_buckets(q, &coeffs))?;
    Ok(neumaier_sum(r.iter().map(|z| z.norm_sqr())))
}

/// φ(q) Σ_{m ≡ n (mod q)} q_m q_n = φ(q) Σ_c A[c]².
pub fn s2_congruence_form(q: u64, scheme: &WeightScheme, n_limit: u64) -> Result<f64> {
    check_modulus(q)?;
    scheme.check_modulus(q)?;
    let coeffs = enumerate_coeffs(scheme, n_limit)?;
    let a = resonator_buckets(q, &coeffs);
    Ok((q - 1) as f64 * neumaier_sum(a.iter().map(|v| v * v)))
}

/// Σ_χ L_K(σ, χ, Y) |R_N(χ)|² with L_K = Σ_{k ≤ K} b_k χ(k).
pub fn s1_character_sum(
    group: &Group,
    scheme: &WeightScheme,
    sigma: f64,
    y: f64,
    n_limit: u64,
    k_limit: u64,
) -> Result<Complex64> {
    let q = group.modulus();
    scheme.check_modulus(q)?;
    check_y(scheme, y)?;
    let coeffs = enumerate_coeffs(scheme, n_limit)?;
    let r = group.dft_real(&resonator_buckets(q, &coeffs))?;
    let l = group.dft_real(&residue_buckets(q, l_coefficients(sigma, y, k_limit)))?;
    Ok(neumaier_sum_complex(
        r.iter().zip(&l).map(|(rj, lj)| lj * rj.norm_sqr()),
    ))
}

/// φ(q) Σ_{k ≤ K} b_k Σ_{km ≡ n (mod q)} q_m q_n.
pub fn s1_congruence_form(
    q: u64,
    scheme: &WeightScheme,
    sigma: f64,
    y: f64,
    n_limit: u64,
    k_limit: u64,
) -> Result<f64> {
    check_modulus(q)?;
    scheme.check_modulus(q)?;
    check_y(scheme, y)?;
    let coeffs = enumerate_coeffs(scheme, n_limit)?;
    let a = resonator_buckets(q, &coeffs);
    let b = residue_buckets(q, l_coefficients(sigma, y, k_limit));
    Ok((q - 1) as f64 * twisted_sum(q, &b, &coeffs, &a))
}

/// Both sides of the finite multiplicativity step for a fixed `k`:
/// `φ Σ_{km ≡ n} q_m q_n` and `q_k φ Σ_{r ≡ m, r ≤ N/k} q_r q_m`.
pub fn relation_sides(q: u64, scheme: &WeightScheme, n_limit: u64, k: u64) -> Result<(f64, f64)> {
    check_modulus(q)?;
    scheme.check_modulus(q)?;
    if k.is_multiple_of(q) {
        return Err(Error::NotCoprime(q));
    }
    let coeffs = enumerate_coeffs(scheme, n_limit)?;
    let a = resonator_buckets(q, &coeffs);
    let phi = (q - 1) as f64;
    let lhs = phi
        * neumaier_sum(
            coeffs
                .entries
                .iter()
                .map(|&(m, w)| w * a[((k % q) * (m % q) % q) as usize - 1]),
        );
    let pref = s2_prefix(q, &coeffs, &a);
    let rhs = phi * scheme.coeff(k) * prefix_at(&coeffs, &pref, n_limit / k);
    Ok((lhs, rhs))
}

/// `|R_N(χ₀)|²` and the principal term of S1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrincipalTerms {
    pub r0_sq: f64,
    pub l_r0_sq: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub pass: bool,
    /// ratio − (1 − TAU_MAX)·target.
    pub margin: f64,
    /// Slack realized by the computed ratio, max(0, 1 − ratio/target).
    pub tau_cert: f64,
    /// Slack implied by the exact finite relation bound alone.
    pub tau_apriori: f64,
    /// Proven finite lower bound for the ratio.
    pub relation_bound: f64,
    pub target: f64,
}

impl Certificate {
    fn evaluate(ratio: f64, relation_bound: f64, target: f64, check_relation: bool) -> Self {
        let tau_cert = (1.0 - ratio / target).max(0.0);
        let tau_apriori = (1.0 - relation_bound / target).max(0.0);
        let relation_ok = !check_relation || ratio >= relation_bound * (1.0 - RELATION_RTOL);
        Self {
            pass: relation_ok && tau_cert <= TAU_MAX,
            margin: ratio - (1.0 - TAU_MAX) * target,
            tau_cert,
            tau_apriori,
            relation_bound,
            target,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonanceReport {
    pub q: u64,
    pub sigma: f64,
    pub scheme: WeightScheme,
    pub x: f64,
    pub y: f64,
    pub n: u64,
    pub k: u64,
    pub s1: Complex64,
    pub s2: f64,
    pub ratio: f64,
    pub lower_bound: f64,
    pub tail_fraction: f64,
    pub principal_terms: PrincipalTerms,
    pub certificate: Certificate,
    /// Largest relative gap between the character-sum and congruence forms.
    pub dual_rel_gap: f64,
    /// e^γ log X (1 − 1/log X), linear weights only.
    pub mertens_target: Option<f64>,
    /// exp(2 log q / B), the growth ceiling for |R(χ₀)|², linear weights only.
    pub order2_bound: Option<f64>,
    pub principal_excluded: bool,
}

impl ResonanceReport {
    pub const CSV_HEADER: &'static str = "q,sigma,scheme,x,y,n,k,s1_re,s1_im,s2,ratio,lower_bound,\
tail_fraction,r0_sq,l_r0_sq,pass,margin,tau_cert,tau_apriori,relation_bound,target,dual_rel_gap,\
principal_excluded";

    pub fn csv_row(&self) -> String {
        let c = &self.certificate;
        format!(
            "{},{:?},{},{:?},{:?},{},{},{:?},{:?},{:?},{:?},{:?},{:?},{:?},{:?},{},{:?},{:?},{:?},{:?},{:?},{:?},{}",
            self.q,
            self.sigma,
            self.scheme.name(),
            self.x,
            self.y,
            self.n,
            self.k,
            self.s1.re,
            self.s1.im,
            self.s2,
            self.ratio,
            self.lower_bound,
            self.tail_fraction,
            self.principal_terms.r0_sq,
            self.principal_terms.l_r0_sq,
            c.pass,
            c.margin,
            c.tau_cert,
            c.tau_apriori,
            c.relation_bound,
            c.target,
            self.dual_rel_gap,
            self.principal_excluded
        )
    }

    /// |ratio_other / ratio − 1|.
    pub fn ratio_change(&self, other: &ResonanceReport) -> f64 {
        (other.ratio / self.ratio - 1.0).abs()
    }
}

fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Certificate for linear weights with an explicit prime cutoff X.
pub fn linear_certificate(
    q: u64,
    x: f64,
    y: f64,
    n_limit: u64,
    k_limit: u64,
) -> Result<ResonanceReport> {
    check_modulus(q)?;
    let scheme = WeightScheme::linear(x);
    scheme.check_modulus(q)?;
    check_y(&scheme, y)?;
    let sigma = 1.0;
    let group = Group::new(q)?;
    let coeffs = enumerate_coeffs(&scheme, n_limit)?;
    let a = resonator_buckets(q, &coeffs);
    let lcoef = l_coefficients(sigma, y, k_limit);
    let b = residue_buckets(q, lcoef.iter().copied());
    let phi = (q - 1) as f64;

    let s2 = phi * neumaier_sum(a.iter().map(|v| v * v));
    let s1 = phi * twisted_sum(q, &b, &coeffs, &a);
    let (s1_char, s2_char) = character_forms(&group, &a, &b)?;
    let dual_rel_gap = rel_gap(s1, s1_char.re)
        .max(rel_gap(s2, s2_char))
        .max(s1_char.im.abs() / s1.abs().max(f64::MIN_POSITIVE));

    let r0 = coeffs.partial();
    let l0 = neumaier_sum(lcoef.iter().filter(|(k, _)| k % q != 0).map(|&(_, w)| w));

    // Σ_{k ≤ K} a_k q_k S2(r ≤ N/k) / S2 with a_k = k^{-σ} on X-smooth k.
    let pref = s2_prefix(q, &coeffs, &a);
    let total = *pref.last().unwrap_or(&0.0);
    let relation_bound = neumaier_sum(
        coeffs
            .entries
            .iter()
            .take_while(|&&(k, _)| k <= k_limit)
            .map(|&(k, w)| w * (k as f64).powf(-sigma) * prefix_at(&coeffs, &pref, n_limit / k)),
    ) / total;

    let lower_bound = lower_bound_product(&scheme).product;
    let ratio = s1.abs() / s2;
    let lx = x.ln();
    let b_param = (q as f64).ln() * (q as f64).ln().ln() / x;
    Ok(ResonanceReport {
        q,
        sigma,
        scheme,
        x,
        y,
        n: n_limit,
        k: k_limit,
        s1: Complex64::new(s1, 0.0),
        s2,
        ratio,
        lower_bound,
        tail_fraction: coeffs.tail_fraction(),
        principal_terms: PrincipalTerms {
            r0_sq: r0 * r0,
            l_r0_sq: l0 * r0 * r0,
        },
        certificate: Certificate::evaluate(ratio, relation_bound, lower_bound, true),
        dual_rel_gap,
        mertens_target: (x > 1.0).then(|| EULER_GAMMA.exp() * lx * (1.0 - 1.0 / lx)),
        order2_bound: (b_param > 0.0).then(|| (2.0 * (q as f64).ln() / b_param).exp()),
        principal_excluded: false,
    })
}

fn character_forms(group: &Group, a: &[f64], b: &[f64]) -> Result<(Complex64, f64)> {
    let r = group.dft_real(a)?;
    let l = group.dft_real(b)?;
    let s1 = neumaier_sum_complex(r.iter().zip(&l).map(|(rj, lj)| lj * rj.norm_sqr()));
    let s2 = neumaier_sum(r.iter().map(|z| z.norm_sqr()));
    Ok((s1, s2))
}

/// Resonator cutoff X = log q · log log q / B.
pub fn resonator_cutoff(q: u64, b: f64) -> f64 {
    let lq = (q as f64).ln();
    lq * lq.ln() / b
}

/// Certificate at σ = 1 with X = log q · log log q / B.
pub fn ratio_certificate(
    q: u64,
    b: f64,
    n_limit: u64,
    k_limit: u64,
    y: f64,
) -> Result<ResonanceReport> {
    if !(b > 4f64.ln()) {
        return Err(Error::BTooSmall(b));
    }
    check_modulus(q)?;
    linear_certificate(q, resonator_cutoff(q, b), y, n_limit, k_limit)
}

/// Removes the principal character from S1 and S2 and re-evaluates the ratio.
pub fn exclude_principal(report: &ResonanceReport) -> Result<ResonanceReport> {
    let s1 = report.s1 - Complex64::new(report.principal_terms.l_r0_sq, 0.0);
    let s2 = report.s2 - report.principal_terms.r0_sq;
    if !(s2 > 0.0) {
        return Err(Error::DegenerateScale(s2));
    }
    let ratio = s1.norm() / s2;
    let c = &report.certificate;
    Ok(ResonanceReport {
        s1,
        s2,
        ratio,
        certificate: Certificate::evaluate(ratio, c.relation_bound, c.target, false),
        principal_excluded: true,
        ..report.clone()
    })
}

/// Half-weight cutoff Y = max((a/2) log q log log q, Y_min).
pub fn half_cutoff(q: u64, a_sigma: f64, y_min: f64) -> f64 {
    let lq = (q as f64).ln();
    (0.5 * a_sigma * lq * lq.ln()).max(y_min)
}

/// Prime-sum length X = min((log q)^{3/(σ − 1/2)}, X_cap).
pub fn prime_sum_cutoff(q: u64, sigma: f64, x_cap: f64) -> f64 {
    (q as f64).ln().powf(3.0 / (sigma - 0.5)).min(x_cap)
}

/// S1 = Σ_χ S_χ(σ, X) |R(χ)|² against S2 for half weights on p ≤ Y.
pub fn theorem3_quotient(
    q: u64,
    sigma: f64,
    a_sigma: f64,
    y_min: f64,
    x_cap: f64,
    n_limit: u64,
) -> Result<ResonanceReport> {
    if !(sigma > 0.5 && sigma < 1.0) {
        return Err(Error::SigmaOutOfRange(sigma));
    }
    check_modulus(q)?;
    let y = half_cutoff(q, a_sigma, y_min);
    let scheme = WeightScheme::half(y);
    scheme.check_modulus(q)?;
    let x = prime_sum_cutoff(q, sigma, x_cap);
    let group = Group::new(q)?;
    let coeffs = enumerate_coeffs(&scheme, n_limit)?;
    let a = resonator_buckets(q, &coeffs);
    let primes = primes_up_to(x);
    let pw: Vec<(u64, f64)> = primes
        .iter()
        .map(|&p| (p, (p as f64).powf(-sigma)))
        .collect();
    let b = residue_buckets(q, pw.iter().copied());
    let phi = (q - 1) as f64;

    let s2 = phi * neumaier_sum(a.iter().map(|v| v * v));
    let s1 = phi * twisted_sum(q, &b, &coeffs, &a);
    let (s1_char, s2_char) = character_forms(&group, &a, &b)?;
    let dual_rel_gap = rel_gap(s1, s1_char.re)
        .max(rel_gap(s2, s2_char))
        .max(s1_char.im.abs() / s1.abs().max(f64::MIN_POSITIVE));

    let r0 = coeffs.partial();
    let s0 = neumaier_sum(pw.iter().filter(|(p, _)| p % q != 0).map(|&(_, w)| w));

    let small: Vec<(u64, f64)> = scheme
        .prime_weights()
        .into_iter()
        .filter(|&(p, _)| p as f64 <= x)
        .map(|(p, w)| (p, w * (p as f64).powf(-sigma)))
        .collect();
    let lower_bound = neumaier_sum(small.iter().map(|&(_, t)| t));
    let pref = s2_prefix(q, &coeffs, &a);
    let total = *pref.last().unwrap_or(&0.0);
    let relation_bound = neumaier_sum(
        small
            .iter()
            .map(|&(p, t)| t * prefix_at(&coeffs, &pref, n_limit / p)),
    ) / total;

    let ratio = s1.abs() / s2;
    Ok(ResonanceReport {
        q,
        sigma,
        scheme,
        x,
        y,
        n: n_limit,
        k: primes.len() as u64,
        s1: Complex64::new(s1, 0.0),
        s2,
        ratio,
        lower_bound,
        tail_fraction: coeffs.tail_fraction(),
        principal_terms: PrincipalTerms {
            r0_sq: r0 * r0,
            l_r0_sq: s0 * r0 * r0,
        },
        certificate: Certificate::evaluate(ratio, relation_bound, lower_bound, true),
        dual_rel_gap,
        mertens_target: None,
        order2_bound: None,
        principal_excluded: false,
    })
}

/// Size budget for the bad characters: at most q^{1−a} of them, each with
/// |R(χ)|² ≤ 2^{2π(Y)}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BadSetBudget {
    pub bound_count: f64,
    pub r_bound: f64,
    /// bound_count · r_bound.
    pub bad_mass: f64,
    /// φ(q), the trivial lower bound for S2 from the n = m = 1 term.
    pub s2_floor: f64,
}

pub fn bad_set_budget(q: u64, a_sigma: f64, y: f64) -> BadSetBudget {
    let qf = q as f64;
    let bound_count = qf.powf(1.0 - a_sigma);
    let r_bound = 2f64.powi(2 * primes_up_to(y).len() as i32);
    BadSetBudget {
        bound_count,
        r_bound,
        bad_mass: bound_count * r_bound,
        s2_floor: qf - 1.0,
    }
}

/// Convenience wrapper used by reports: |R(χ)|² for every non-principal χ.
pub fn resonator_energies(group: &CharacterGroup<f64>, scheme: &WeightScheme) -> Result<Vec<f64>> {
    scheme.check_modulus(group.modulus())?;
    group
        .non_principal()
        .map(|chi| crate::resonator::resonator_value(scheme, chi).map(|r| r.norm_sqr()))
        .collect()
}
