//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero when any
//! criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use reslab::extremes::{gs_upper_check, phi_delta_census, scan_theorem1, scan_theorem3};
use reslab::lfunc::{l_one_from_table, l_value, l_value_batch};
use reslab::oracle::{table, HarmonicBuckets};
use reslab::resonance::{
    default_a_sigma, exclude_principal, ratio_certificate, s1_character_sum, s1_congruence_form,
    s2_character_sum, s2_congruence_form, theorem3_quotient, TAU_MAX,
};
use reslab::resonator::{
    log_r0_squared, mertens_comparator, mertens_product, resonator_value, WeightScheme,
};
use reslab::{Group, Sigma};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let t = start.elapsed();
    if t <= limit {
        Ok(format!("{detail}; {:.2}s", t.as_secs_f64()))
    } else {
        Err(format!(
            "{detail}; runtime {:.2}s over {:?}",
            t.as_secs_f64(),
            limit
        ))
    }
}

fn dual_oracle() -> Outcome {
    let start = Instant::now();
    let (n, k) = (10_000u64, 10_000u64);
    let mut worst = 0.0f64;
    let mut ran = 0;
    let mut rejected = 0;
    for q in [7u64, 101, 1009] {
        let g = Group::new(q).map_err(|e| e.to_string())?;
        for x in [3.0, 10.0, 15.0] {
            let scheme = WeightScheme::linear(x);
            let y = f64::max(x, 100.0);
            if x >= q as f64 {
                // resonator primes must stay below q
                if s2_congruence_form(q, &scheme, n).is_ok() {
                    return Err(format!("q={q} X={x} accepted despite X ≥ q"));
                }
                rejected += 1;
                continue;
            }
            let e = |r: reslab::Error| format!("q={q} X={x}: {r}");
            let s2c = s2_character_sum(&g, &scheme, n).map_err(e)?;
            let s2g = s2_congruence_form(q, &scheme, n).map_err(e)?;
            let s1c = s1_character_sum(&g, &scheme, 1.0, y, n, k).map_err(e)?;
            let s1g = s1_congruence_form(q, &scheme, 1.0, y, n, k).map_err(e)?;
            worst = worst
                .max(rel(s2c, s2g))
                .max(rel(s1c.re, s1g))
                .max(s1c.im.abs() / s1g.abs());
            ran += 1;
        }
    }
    let toy = s2_congruence_form(7, &WeightScheme::linear(3.0), 8).map_err(|e| e.to_string())?;
    let detail = format!(
        "{ran} combos, worst rel gap {worst:.2e}, {rejected} X≥q combos rejected, toy S2 = {toy:.12}"
    );
    if worst > 1e-9 || (toy - 7.193_415_637_860_1).abs() > 1e-9 {
        return Err(detail);
    }
    within(Duration::from_secs(60), start, detail)
}

fn known_l_values() -> Outcome {
    let start = Instant::now();
    let mod3 = l_one_from_table(&table(&[0.0, 1.0, -1.0])).map_err(|e| e.to_string())?;
    let mod4 = l_one_from_table(&table(&[0.0, 1.0, 0.0, -1.0])).map_err(|e| e.to_string())?;
    let g3 = Group::new(3).map_err(|e| e.to_string())?;
    let grp3 = l_value(g3.character(1), Sigma::one())
        .map_err(|e| e.to_string())?
        .value;
    let e3 = (mod3 - PI / (3.0 * 3f64.sqrt()))
        .norm()
        .max((grp3 - PI / (3.0 * 3f64.sqrt())).norm());
    let e4 = (mod4 - PI / 4.0).norm();
    let detail = format!("mod 3 err {e3:.1e}, mod 4 err {e4:.1e}");
    if e3 > 1e-10 || e4 > 1e-10 {
        return Err(detail);
    }
    within(Duration::from_secs(1), start, detail)
}

fn backend_cross_check() -> Outcome {
    let start = Instant::now();
    let q = 101;
    let g = Group::new(q).map_err(|e| e.to_string())?;
    let oracle = HarmonicBuckets::new(q, 1_000_000);
    let mut worst = 0.0f64;
    for l in l_value_batch(&g, Sigma::one()).map_err(|e| e.to_string())? {
        let a = oracle.l_one(&g, l.index);
        worst = worst.max((l.value - a.value).norm());
    }
    let detail = format!(
        "max |digamma − Abel| = {worst:.2e} over {} characters",
        q - 2
    );
    if worst > 1e-6 {
        return Err(detail);
    }
    within(Duration::from_secs(10), start, detail)
}

fn resonator_identity() -> Outcome {
    let g = Group::new(1009).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for x in [3.0, 10.0, 100.0, 1000.0] {
        let scheme = WeightScheme::linear(x);
        let closed = log_r0_squared(&scheme).map_err(|e| e.to_string())?;
        let direct = 2.0
            * resonator_value(&scheme, g.principal())
                .map_err(|e| e.to_string())?
                .norm()
                .ln();
        worst = worst.max(rel(closed, direct));
    }
    let detail = format!("max rel gap {worst:.2e}");
    if worst > 1e-12 {
        Err(detail)
    } else {
        Ok(detail)
    }
}

fn mertens() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for x in [1e1, 1e2, 1e3, 1e4, 1e5, 1e6] {
        let p = mertens_product(x).map_err(|e| e.to_string())?;
        let c = mertens_comparator(x, -0.5);
        ok &= p >= c;
        parts.push(format!("{x:.0e}: {p:.4} ≥ {c:.4}"));
    }
    let detail = parts.join(", ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn resonance_certificate() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for q in [1009u64, 10007] {
        let r = ratio_certificate(q, 1.4, 10_000, 10_000, 10_000.0).map_err(|e| e.to_string())?;
        let ex = exclude_principal(&r).map_err(|e| e.to_string())?;
        let change = r.ratio_change(&ex);
        let c = &r.certificate;
        ok &= c.pass && change < 0.05;
        parts.push(format!(
            "q={q}: ratio {:.4} vs target {:.4}, tau_cert {:.3} (≤ {TAU_MAX}: {}), ratio change after excluding χ₀ {:.1}% (< 5%: {})",
            r.ratio,
            c.target,
            c.tau_cert,
            c.pass,
            100.0 * change,
            change < 0.05
        ));
    }
    let detail = parts.join("; ");
    if !ok {
        return Err(detail);
    }
    within(Duration::from_secs(300), start, detail)
}

fn theorem3_certificate() -> Outcome {
    let start = Instant::now();
    let r = theorem3_quotient(1009, 0.75, default_a_sigma(0.75), 20.0, 1e5, 10_000)
        .map_err(|e| e.to_string())?;
    let c = &r.certificate;
    let detail = format!(
        "ratio {:.4} vs target {:.4}, tau_cert {:.3}, relation bound {:.4}",
        r.ratio, c.target, c.tau_cert, c.relation_bound
    );
    if !c.pass {
        return Err(detail);
    }
    within(Duration::from_secs(300), start, detail)
}

fn census() -> Outcome {
    let deltas = [0.5, 1.0, 2.0, 3.0];
    let a = phi_delta_census(1009, &deltas).map_err(|e| e.to_string())?;
    let b = phi_delta_census(1009, &deltas).map_err(|e| e.to_string())?;
    let counts: Vec<usize> = a.rows.iter().map(|r| r.count).collect();
    let monotone = counts.windows(2).all(|w| w[0] <= w[1]);
    let exps = a
        .rows
        .iter()
        .all(|r| (r.exponent_ref - (1.0 - (-r.delta).exp())).abs() <= 1e-12);
    let same = a.csv_rows() == b.csv_rows();
    let detail =
        format!("Φ = {counts:?}, monotone {monotone}, exponents {exps}, CSV identical {same}");
    if monotone && exps && same {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn gs_upper() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for q in [101u64, 1009, 10007] {
        let g = gs_upper_check(q, 0.5).map_err(|e| e.to_string())?;
        ok &= g.ok;
        parts.push(format!(
            "q={q}: {:.4} ≤ {:.4} {}",
            g.max_abs_l, g.bound, g.ok
        ));
    }
    let detail = parts.join(", ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn scan_fixtures() -> Outcome {
    // (q, theorem-1 margin, theorem-3 margin), frozen from the first verified run
    let fixtures = [
        (1009u64, 1.063_471_414_507_102_2, 2.248_014_317_432_749_4),
        (10007, 1.090_141_599_363_593_5, 4.471_929_449_512_915),
    ];
    let mut worst = 0.0f64;
    for (q, m1, m3) in fixtures {
        let t1 = scan_theorem1(q, 0.0).map_err(|e| e.to_string())?;
        let t3 =
            scan_theorem3(q, 0.75, 1e5, default_a_sigma(0.75), 20.0).map_err(|e| e.to_string())?;
        worst = worst.max(rel(t1.margin, m1)).max(rel(t3.margin, m3));
    }
    let detail = format!("max rel drift {worst:.1e}");
    if worst <= 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("dual-oracle identity", dual_oracle),
        ("known L-values", known_l_values),
        ("backend cross-check", backend_cross_check),
        ("exact resonator identity", resonator_identity),
        ("Mertens inequality", mertens),
        ("resonance certificate", resonance_certificate),
        ("theorem-3 certificate", theorem3_certificate),
        ("census properties", census),
        ("GS upper bound", gs_upper),
        ("scan fixtures", scan_fixtures),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(d) => println!("[{:>2}] PASS {name}: {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("[{:>2}] FAIL {name}: {d}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
