//! Independent reference computations used to cross-check the fast paths.
//!
//! Nothing here goes through the DFT kernel, the digamma/Hurwitz backends or
//! the congruence forms; each routine recomputes its quantity from the
//! definition.

use num_complex::Complex;

use crate::chargroup::CharacterGroup;
use crate::sum::{neumaier_sum, neumaier_sum_complex};
use crate::Complex64;

/// χ_j(a) from the discrete log, without the precomputed root table.
pub fn direct_char_value(group: &CharacterGroup<f64>, j: usize, a: u64) -> Complex64 {
    match group.dlog(a) {
        None => Complex64::new(0.0, 0.0),
        Some(k) => {
            let phi = group.order() as f64;
            let theta =
                std::f64::consts::TAU * ((j as u64 * k as u64) % group.order() as u64) as f64 / phi;
            Complex64::from_polar(1.0, theta)
        }
    }
}

/// `Σ_a f[a-1] χ_j(a)` for every `j`, by the O(q²) double loop.
pub fn naive_group_dft(group: &CharacterGroup<f64>, f: &[Complex64]) -> Vec<Complex64> {
    let q = group.modulus();
    (0..group.order())
        .map(|j| {
            neumaier_sum_complex((1..q).map(|a| f[a as usize - 1] * direct_char_value(group, j, a)))
        })
        .collect()
}

/// Σ_{n ≤ M} χ(n)/n with a partial-summation tail correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbelSeries {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// Harmonic residue sums `H[a] = Σ_{n ≤ M, n ≡ a} 1/n` shared by all characters.
pub struct HarmonicBuckets {
    q: u64,
    m: u64,
    h: Vec<f64>,
}

impl HarmonicBuckets {
    pub fn new(q: u64, m: u64) -> Self {
        let mut acc = vec![crate::sum::NeumaierSum::<f64>::new(); q as usize];
        // decreasing n so each bucket adds small terms first
        for n in (1..=m).rev() {
            acc[(n % q) as usize].add(1.0 / n as f64);
        }
        Self {
            q,
            m,
            h: acc.iter().map(|s| s.value()).collect(),
        }
    }

    /// L(1, χ_j) from the series truncated at M, corrected by
    /// `Σ_{n>M} χ(n)/n = (c̄ − C(M))/(M+1) + Σ_{n>M} D(n)/(n(n+1))`, where `C` is
    /// the character partial sum, `c̄` its period mean and `D = C − c̄`.
    pub fn l_one(&self, group: &CharacterGroup<f64>, j: usize) -> AbelSeries {
        let q = self.q;
        let chi: Vec<Complex64> = (0..q).map(|a| direct_char_value(group, j, a)).collect();
        let partial = neumaier_sum_complex((1..q).map(|a| chi[a as usize] * self.h[a as usize]));
        let mut run = Complex64::new(0.0, 0.0);
        let cums: Vec<Complex64> = (0..q)
            .map(|a| {
                run += chi[a as usize];
                run
            })
            .collect();
        let mean = neumaier_sum_complex(cums.iter().copied()) / q as f64;
        let c_m = cums[(self.m % q) as usize];
        let mf = self.m as f64;
        let dev = cums.iter().map(|c| (c - mean).norm()).fold(0.0, f64::max);
        AbelSeries {
            value: partial + (mean - c_m) / (mf + 1.0),
            tail_bound: q as f64 * dev / (mf * (mf + 1.0)),
        }
    }
}

/// ζ(s) for real s > 0, s ≠ 1, from the alternating eta series with
/// Borwein's acceleration: ζ(s) = η(s)/(1 − 2^{1−s}).
pub fn zeta_via_eta(s: f64) -> f64 {
    const N: usize = 40;
    // d_k = n Σ_{i ≤ k} (n+i−1)! 4^i / ((n−i)! (2i)!)
    let n = N as f64;
    let mut d = Vec::with_capacity(N + 1);
    let mut term = 1.0 / n; // i = 0: (n−1)!/n! = 1/n
    let mut acc = 0.0;
    for i in 0..=N {
        if i > 0 {
            let i_f = i as f64;
            term *= (n + i_f - 1.0) * (n - i_f + 1.0) * 4.0 / ((2.0 * i_f - 1.0) * (2.0 * i_f));
        }
        acc += term;
        d.push(n * acc);
    }
    let dn = d[N];
    let eta = -neumaier_sum((0..N).map(|k| {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sign * (d[k] - dn) / ((k + 1) as f64).powf(s)
    })) / dn;
    eta / (1.0 - 2f64.powf(1.0 - s))
}

/// Direct partial sum Σ_{n ≤ M} w(n) for a real sequence; used for the
/// Hurwitz check at s > 1.
pub fn direct_series<F: Fn(u64) -> f64>(m: u64, f: F) -> f64 {
    neumaier_sum((1..=m).rev().map(f))
}

/// Complex helper for tests building explicit character tables.
pub fn table(values: &[f64]) -> Vec<Complex<f64>> {
    values.iter().map(|&v| Complex::new(v, 0.0)).collect()
}
