//! Digamma and Hurwitz zeta on the real axis.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// B_{2k}/(2k) for k = 1..8, the digamma asymptotic coefficients.
const DIGAMMA_ASYMP: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// Below this the recurrence ψ(x) = ψ(x+1) − 1/x lifts the argument.
const DIGAMMA_LIFT: f64 = 10.0;

/// ψ(x) for x > 0: recurrence lift to x ≥ 10, then the asymptotic series.
pub fn digamma<T: Real>(x: T) -> Result<T> {
    if x.is_nan() || x <= T::zero() {
        return Err(Error::NonPositiveArgument(x.to_f64().unwrap_or(f64::NAN)));
    }
    let mut shift = T::zero();
    let mut y = x;
    let lift = T::lit(DIGAMMA_LIFT);
    while y < lift {
        shift += y.recip();
        y += T::one();
    }
    let inv2 = (y * y).recip();
    let mut series = T::zero();
    let mut pow = inv2;
    for &c in &DIGAMMA_ASYMP {
        series += T::lit(c) * pow;
        pow *= inv2;
    }
    Ok(y.ln() - T::lit(0.5) / y - series - shift)
}

/// B_2, B_4, B_6, B_8 divided by (2k)!.
const EM_COEFFS: [f64; 4] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
];

/// |B_10| / 10!, first omitted Euler–Maclaurin coefficient.
const EM_NEXT: f64 = 5.0 / 66.0 / 3_628_800.0;

/// Number of explicit terms in the Euler–Maclaurin sum for exponent `s`.
pub fn hurwitz_terms(s: f64) -> usize {
    let m = (10.0 / (s - 0.5)).ceil();
    if m.is_finite() {
        (m as usize).max(30)
    } else {
        30
    }
}

/// Hurwitz zeta value with its truncation bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HurwitzValue<T> {
    pub value: T,
    pub err_bound: T,
}

/// ζ(s, x) = Σ_{n≥0} (n+x)^{-s} for s > 1/2, s ≠ 1, 0 < x ≤ 1.
///
/// Euler–Maclaurin: `M` explicit terms, the tail integral, the boundary half
/// term and Bernoulli corrections through B_8. The returned bound is the
/// magnitude of the B_10 remainder plus rounding in the explicit sum.
pub fn hurwitz_zeta<T: Real>(s: T, x: T) -> Result<HurwitzValue<T>> {
    let sf = s.to_f64().unwrap_or(f64::NAN);
    if !(sf > 0.5) {
        return Err(Error::SigmaOutOfRange(sf));
    }
    if s == T::one() {
        return Err(Error::Pole);
    }
    if !(x > T::zero()) || x > T::one() {
        return Err(Error::NonPositiveArgument(x.to_f64().unwrap_or(f64::NAN)));
    }
    let m = hurwitz_terms(sf);
    let mut head = crate::sum::NeumaierSum::new();
    // smallest terms first
    for n in (0..m).rev() {
        head.add((T::from_count(n as u64) + x).powf(-s));
    }
    let a = T::from_count(m as u64) + x;
    let a_pow = a.powf(-s);
    let mut total = head.value() + a * a_pow / (s - T::one()) + T::lit(0.5) * a_pow;

    // rising factorial s(s+1)...(s+2k-2) times a^{-s-2k+1}
    let mut rising = s;
    let mut pow = a_pow / a;
    for (k, &c) in EM_COEFFS.iter().enumerate() {
        total += T::lit(c) * rising * pow;
        let j = T::from_count(2 * k as u64 + 1);
        rising *= (s + j) * (s + j + T::one());
        pow /= a * a;
    }
    let remainder = T::lit(EM_NEXT) * rising.abs() * pow;
    let rounding = T::epsilon() * T::lit(4.0) * head.value().abs();
    Ok(HurwitzValue {
        value: total,
        err_bound: remainder + rounding,
    })
}
