//! Extreme-value scans over a full character group.
//!
//! The asymptotic lower bounds are evaluated at the given modulus and reported
//! with their margins; nothing here asserts that a finite modulus satisfies
//! them.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lfunc::{approx_error_census, l_value_batch};
use crate::resonance::{
    half_cutoff, prime_sum_cutoff, resonator_cutoff, resonator_energies, theorem3_quotient,
    ResonanceReport,
};
use crate::resonator::WeightScheme;
use crate::{Group, Sigma};

pub const MIN_MODULUS: u64 = 17;

/// Resonator parameter used to pick the resonant character in σ = 1 scans.
pub const SCAN_B: f64 = 1.4;

/// Resonator truncation used by the companion certificate of σ < 1 scans.
pub const SCAN_N: u64 = 10_000;

/// Tolerance of the approximation census that defines the excluded set.
pub const CENSUS_TOL: f64 = 1.0;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// e^γ.
    pub e_gamma: f64,
    /// C = 1 + log log 4.
    pub c: f64,
    /// C₀ from the random Euler product model.
    pub c0: f64,
    /// C₀ + 1 − log 2.
    pub conj_offset: f64,
}

pub fn constants() -> Constants {
    let c0 = -0.395;
    Constants {
        e_gamma: EULER_GAMMA.exp(),
        c: 1.0 + 4f64.ln().ln(),
        c0,
        conj_offset: c0 + 1.0 - 2f64.ln(),
    }
}

/// (log log q, log log log q); requires q ≥ 17 so that log log q ≥ 1.
pub fn iterated_logs(q: u64) -> Result<(f64, f64)> {
    if q < MIN_MODULUS {
        return Err(Error::ModulusTooSmall {
            q,
            min: MIN_MODULUS,
        });
    }
    let l2 = (q as f64).ln().ln();
    Ok((l2, l2.ln()))
}

/// e^γ (log₂ q + log₃ q − C − ε).
pub fn theorem1_bound(q: u64, epsilon: f64) -> Result<f64> {
    let (l2, l3) = iterated_logs(q)?;
    let k = constants();
    Ok(k.e_gamma * (l2 + l3 - k.c - epsilon))
}

/// (log q)^{1−σ} (log log q)^{−σ}.
pub fn theorem3_shape(q: u64, sigma: f64) -> f64 {
    let lq = (q as f64).ln();
    lq.powf(1.0 - sigma) * lq.ln().powf(-sigma)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuntimeStats {
    pub elapsed_ms: f64,
    pub characters: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem3Scan {
    pub x: f64,
    pub y: f64,
    pub a_sigma: f64,
    pub target_shape: f64,
    pub max_log_abs_l: f64,
    /// max log|L| / target_shape over the retained characters.
    pub c_hat: f64,
    pub excluded: Vec<usize>,
    pub certificate: ResonanceReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub q: u64,
    pub sigma: f64,
    pub max_abs_l: f64,
    pub argmax: usize,
    pub bound_value: f64,
    /// max_abs_l − bound_value.
    pub margin: f64,
    /// argmax of |R(χ)|² over non-principal characters.
    pub resonant_index: usize,
    pub resonant_abs_l: f64,
    pub median_abs_l: f64,
    pub runtime: RuntimeStats,
    pub theorem3: Option<Theorem3Scan>,
}

pub const CSV_HEADER: &str =
    "q,sigma,delta,threshold,count,max_abs_l,bound,margin,exponent_emp,exponent_ref";

impl ScanReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{:?},,,,{:?},{:?},{:?},,",
            self.q, self.sigma, self.max_abs_l, self.bound_value, self.margin
        )
    }
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// First index of the maximum; ties resolve to the smaller index.
fn argmax(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &v)| {
            if v > best.1 {
                (i, v)
            } else {
                best
            }
        })
        .0
}

/// |L(1, χ)| for all characters; index 0 (principal) holds NaN.
pub fn abs_l_one(group: &Group) -> Result<Vec<f64>> {
    let mut out = vec![f64::NAN; group.order()];
    for l in l_value_batch(group, Sigma::one())? {
        out[l.index] = l.value.norm();
    }
    Ok(out)
}

pub fn scan_theorem1(q: u64, epsilon: f64) -> Result<ScanReport> {
    let start = Instant::now();
    let bound_value = theorem1_bound(q, epsilon)?;
    let group = Group::new(q)?;
    let abs_l = abs_l_one(&group)?;
    let np = &abs_l[1..];
    let arg = argmax(np) + 1;
    let scheme = WeightScheme::linear(resonator_cutoff(q, SCAN_B));
    let energies = resonator_energies(&group, &scheme)?;
    let resonant = argmax(&energies) + 1;
    Ok(ScanReport {
        q,
        sigma: 1.0,
        max_abs_l: abs_l[arg],
        argmax: arg,
        bound_value,
        margin: abs_l[arg] - bound_value,
        resonant_index: resonant,
        resonant_abs_l: abs_l[resonant],
        median_abs_l: median(np),
        runtime: RuntimeStats {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            characters: np.len(),
        },
        theorem3: None,
    })
}

pub fn scan_theorem3(
    q: u64,
    sigma: f64,
    x_cap: f64,
    a_sigma: f64,
    y_min: f64,
) -> Result<ScanReport> {
    scan_theorem3_with(q, sigma, x_cap, a_sigma, y_min, CENSUS_TOL, SCAN_N)
}

/// As [`scan_theorem3`] with an explicit census tolerance and certificate
/// truncation `n_limit`.
pub fn scan_theorem3_with(
    q: u64,
    sigma: f64,
    x_cap: f64,
    a_sigma: f64,
    y_min: f64,
    tol: f64,
    n_limit: u64,
) -> Result<ScanReport> {
    let start = Instant::now();
    if !(sigma > 0.5 && sigma < 1.0) {
        return Err(Error::SigmaOutOfRange(sigma));
    }
    iterated_logs(q)?;
    let group = Group::new(q)?;
    let s = Sigma::new(sigma)?;
    let x = prime_sum_cutoff(q, sigma, x_cap);
    let census = approx_error_census(&group, s, x, tol)?;
    let mut abs_l = vec![f64::NAN; group.order()];
    for l in l_value_batch(&group, s)? {
        abs_l[l.index] = l.value.norm();
    }
    let mut retained = abs_l.clone();
    retained[0] = f64::NEG_INFINITY;
    for &i in &census.indices {
        retained[i] = f64::NEG_INFINITY;
    }
    let arg = argmax(&retained);
    let max_abs_l = abs_l[arg];

    let y = half_cutoff(q, a_sigma, y_min);
    let energies = resonator_energies(&group, &WeightScheme::half(y))?;
    let resonant = argmax(&energies) + 1;
    let certificate = theorem3_quotient(q, sigma, a_sigma, y_min, x_cap, n_limit)?;

    let target_shape = theorem3_shape(q, sigma);
    let bound_value = target_shape.exp();
    let max_log_abs_l = max_abs_l.ln();
    Ok(ScanReport {
        q,
        sigma,
        max_abs_l,
        argmax: arg,
        bound_value,
        margin: max_abs_l - bound_value,
        resonant_index: resonant,
        resonant_abs_l: abs_l[resonant],
        median_abs_l: median(&abs_l[1..]),
        runtime: RuntimeStats {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            characters: group.order() - 1,
        },
        theorem3: Some(Theorem3Scan {
            x,
            y,
            a_sigma,
            target_shape,
            max_log_abs_l,
            c_hat: max_log_abs_l / target_shape,
            excluded: census.indices,
            certificate,
        }),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub delta: f64,
    /// A′_δ = e^γ (log₂ q + log₃ q − C − δ).
    pub threshold: f64,
    /// Φ(δ): non-principal characters with |L(1, χ)| > A′_δ.
    pub count: usize,
    /// log Φ / log q, absent when Φ = 0.
    pub exponent_emp: Option<f64>,
    /// 1 − e^{−δ}.
    pub exponent_ref: f64,
    /// B = e^δ e^{−1/√log₂ q} log 4.
    pub b_param: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub q: u64,
    pub rows: Vec<CensusRow>,
    pub max_abs_l: f64,
    pub constants: Constants,
}

impl CensusReport {
    pub fn csv_rows(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| {
                format!(
                    "{},1.0,{:?},{:?},{},{:?},{:?},{:?},{},{:?}",
                    self.q,
                    r.delta,
                    r.threshold,
                    r.count,
                    self.max_abs_l,
                    r.threshold,
                    self.max_abs_l - r.threshold,
                    r.exponent_emp.map(|e| format!("{e:?}")).unwrap_or_default(),
                    r.exponent_ref
                )
            })
            .collect()
    }
}

pub fn phi_delta_census(q: u64, deltas: &[f64]) -> Result<CensusReport> {
    if let Some(&d) = deltas.iter().find(|&&d| !(d > 0.0)) {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive, got {d}"
        )));
    }
    let (l2, _) = iterated_logs(q)?;
    let group = Group::new(q)?;
    let abs_l = abs_l_one(&group)?;
    let np = &abs_l[1..];
    let k = constants();
    let lq = (q as f64).ln();
    let rows = deltas
        .iter()
        .map(|&delta| {
            let threshold = theorem1_bound(q, delta)?;
            let count = np.iter().filter(|&&v| v > threshold).count();
            Ok(CensusRow {
                delta,
                threshold,
                count,
                exponent_emp: (count >= 1).then(|| (count as f64).ln() / lq),
                exponent_ref: 1.0 - (-delta).exp(),
                b_param: delta.exp() * (-1.0 / l2.sqrt()).exp() * 4f64.ln(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(CensusReport {
        q,
        rows,
        max_abs_l: np.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        constants: k,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GsCheck {
    pub max_abs_l: f64,
    pub bound: f64,
    pub ok: bool,
}

/// max_{χ≠χ₀} |L(1, χ)| against (1/3) log q (1 + slack).
pub fn gs_upper_check(q: u64, slack: f64) -> Result<GsCheck> {
    iterated_logs(q)?;
    let group = Group::new(q)?;
    let max_abs_l = abs_l_one(&group)?[1..]
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let bound = (q as f64).ln() / 3.0 * (1.0 + slack);
    Ok(GsCheck {
        max_abs_l,
        bound,
        ok: max_abs_l <= bound,
    })
}
