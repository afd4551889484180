use std::io::{self, Write};

use reslab::lfunc::l_value_batch;
use reslab::numth::gcd;
use reslab::oracle::HarmonicBuckets;
use reslab::resonance::{
    s1_character_sum, s1_congruence_form, s2_character_sum, s2_congruence_form,
};
use reslab::resonator::WeightScheme;
use reslab::{Group, Sigma};

const ABEL_TERMS: u64 = 1_000_000;
const BACKEND_TOL: f64 = 1e-6;
const ORTHO_TOL: f64 = 1e-9;
const DUAL_TOL: f64 = 1e-9;

struct Row {
    q: u64,
    check: &'static str,
    value: f64,
    tol: f64,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn checks(q: u64) -> Result<Vec<Row>, reslab::Error> {
    let g = Group::new(q)?;

    let abel = HarmonicBuckets::new(q, ABEL_TERMS);
    let backend = l_value_batch(&g, Sigma::one())?
        .iter()
        .map(|l| (l.value - abel.l_one(&g, l.index).value).norm())
        .fold(0.0, f64::max);

    let mut ortho = 0.0f64;
    for m in (1..=50).filter(|&m| gcd(m, q) == 1) {
        for n in (1..=50).filter(|&n| gcd(n, q) == 1) {
            let want = if m % q == n % q { (q - 1) as f64 } else { 0.0 };
            ortho = ortho.max((g.orthogonality_sum(m, n)? - want).abs() / (q - 1) as f64);
        }
    }

    let scheme = WeightScheme::linear(3.0);
    let (n, k, y) = (10_000, 10_000, 100.0);
    let s2 = rel(
        s2_character_sum(&g, &scheme, n)?,
        s2_congruence_form(q, &scheme, n)?,
    );
    let s1c = s1_character_sum(&g, &scheme, 1.0, y, n, k)?;
    let s1g = s1_congruence_form(q, &scheme, 1.0, y, n, k)?;
    let s1 = rel(s1c.re, s1g).max(s1c.im.abs() / s1g.abs());

    Ok(vec![
        Row {
            q,
            check: "backend",
            value: backend,
            tol: BACKEND_TOL,
        },
        Row {
            q,
            check: "orthogonality",
            value: ortho,
            tol: ORTHO_TOL,
        },
        Row {
            q,
            check: "dual-s2",
            value: s2,
            tol: DUAL_TOL,
        },
        Row {
            q,
            check: "dual-s1",
            value: s1,
            tol: DUAL_TOL,
        },
    ])
}

/// Runs the reference checks for each modulus and prints a table to `out`.
/// Returns whether every check passed; a modulus the kernels reject counts
/// as a failure.
pub fn oracle_check<W: Write>(q_list: &[u64], out: &mut W) -> io::Result<bool> {
    use rayon::prelude::*;
    let results: Vec<_> = q_list.par_iter().map(|&q| (q, checks(q))).collect();
    writeln!(
        out,
        "{:>8}  {:<14} {:>12} {:>10}  status",
        "q", "check", "value", "tol"
    )?;
    let mut all = true;
    for (q, r) in results {
        match r {
            Ok(rows) => {
                for row in rows {
                    let ok = row.value <= row.tol;
                    all &= ok;
                    writeln!(
                        out,
                        "{:>8}  {:<14} {:>12.3e} {:>10.0e}  {}",
                        row.q,
                        row.check,
                        row.value,
                        row.tol,
                        if ok { "PASS" } else { "FAIL" }
                    )?;
                }
            }
            Err(e) => {
                all = false;
                writeln!(out, "{q:>8}  {:<14} {e}  FAIL", "setup")?;
            }
        }
    }
    Ok(all)
}
