use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reslab::lfunc::{
    dirichlet_poly, euler_product_truncated, l_one_from_table, l_value, l_value_batch, prime_sum,
};
use reslab::oracle::{direct_char_value, naive_group_dft, table, zeta_via_eta, HarmonicBuckets};
use reslab::special::hurwitz_zeta;
use reslab::{Complex64, Group, Sigma};

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

#[test]
fn eta_oracle_matches_reference_zeta() {
    // values from an independent multiprecision evaluation
    for (s, z) in [
        (0.6, -1.952_661_448_224),
        (0.75, -3.441_285_386_945_22),
        (0.9, -9.430_114_019_402_26),
    ] {
        assert!((zeta_via_eta(s) - z).abs() < 1e-11 * z.abs(), "s = {s}");
    }
    assert!((zeta_via_eta(2.0) - PI * PI / 6.0).abs() < 1e-13);
}

#[test]
fn hurwitz_at_one_matches_eta_oracle() {
    for (s, tol) in [(0.6, 1e-10), (0.75, 1e-12), (0.9, 1e-10)] {
        let h = hurwitz_zeta(s, 1.0).unwrap();
        let z = zeta_via_eta(s);
        assert!(
            (h.value - z).abs() <= tol * z.abs(),
            "s = {s}: {} vs {z}",
            h.value
        );
        assert!(h.err_bound < tol * z.abs());
    }
}

#[test]
fn known_l_values_from_tables() {
    let mod3 = l_one_from_table(&table(&[0.0, 1.0, -1.0])).unwrap();
    assert!((mod3.re - PI / (3.0 * 3f64.sqrt())).abs() < 1e-10);
    assert!(mod3.im.abs() < 1e-14);
    let mod4 = l_one_from_table(&table(&[0.0, 1.0, 0.0, -1.0])).unwrap();
    assert!((mod4.re - PI / 4.0).abs() < 1e-10);
    assert!(l_one_from_table(&table(&[0.0, 1.0, 1.0])).is_err());
}

#[test]
fn mod_three_group_matches_closed_form() {
    let g = Group::new(3).unwrap();
    let l = l_value(g.character(1), Sigma::one()).unwrap();
    assert!((l.value.re - PI / (3.0 * 3f64.sqrt())).abs() < 1e-10);
}

#[test]
fn mod_three_finite_sums() {
    let g = Group::new(3).unwrap();
    let chi = g.character(1);
    let d = dirichlet_poly(chi, 1.0, 5.0).unwrap().re;
    assert!((d + 0.575).abs() < 1e-14, "{d}");
    assert!((prime_sum(chi, 1.0, 3.0).re + 0.5).abs() < 1e-14);
    assert!((euler_product_truncated(chi, 1.0, 3.0).unwrap().re - 2.0 / 3.0).abs() < 1e-14);
}

#[test]
fn group_dft_matches_naive_sum() {
    for q in [101u64, 1009, 10007] {
        let g = Group::new(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(q);
        let f: Vec<Complex64> = (1..q)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let fast = g.dft(&f).unwrap();
        let scale: f64 = f.iter().map(|z| z.norm()).sum();
        // the O(q²) oracle is only run on a sample of indices for the largest modulus
        let naive = if q < 10_000 {
            naive_group_dft(&g, &f)
        } else {
            Vec::new()
        };
        let check: Vec<usize> = if q < 10_000 {
            (0..g.order()).collect()
        } else {
            (0..g.order()).step_by(397).collect()
        };
        for j in check {
            let want = if naive.is_empty() {
                (1..q)
                    .map(|a| f[a as usize - 1] * direct_char_value(&g, j, a))
                    .sum()
            } else {
                naive[j]
            };
            assert!((fast[j] - want).norm() < 1e-10 * scale, "q={q} j={j}");
        }
    }
}

#[test]
fn backend_agrees_with_abel_series() {
    for q in [101u64, 1009] {
        let g = Group::new(q).unwrap();
        let buckets = HarmonicBuckets::new(q, 1_000_000);
        for l in l_value_batch(&g, Sigma::one()).unwrap() {
            let abel = buckets.l_one(&g, l.index);
            let d = (l.value - abel.value).norm();
            assert!(d <= 1e-6, "q={q} j={} diff {d}", l.index);
            assert!(abel.tail_bound < 1e-6);
        }
    }
}

#[test]
fn conjugation_symmetry_both_backends() {
    let g = Group::new(101).unwrap();
    for sigma in [Sigma::one(), Sigma::new(0.75).unwrap()] {
        let batch = l_value_batch(&g, sigma).unwrap();
        let by_index = |j: usize| batch[j - 1].value;
        for j in 1..g.order() {
            let conj = g.order() - j;
            assert!(rel(by_index(conj), by_index(j).conj()) < 1e-10, "j={j}");
        }
    }
}

#[test]
fn euler_product_error_shrinks_by_decade() {
    let g = Group::new(1009).unwrap();
    let batch = l_value_batch(&g, Sigma::one()).unwrap();
    let worst: Vec<f64> = [1e1, 1e2, 1e3, 1e4, 1e5]
        .iter()
        .map(|&x| {
            batch
                .iter()
                .map(|l| {
                    (euler_product_truncated(g.character(l.index), 1.0, x).unwrap() - l.value)
                        .norm()
                })
                .fold(0.0, f64::max)
        })
        .collect();
    for w in worst.windows(2) {
        assert!(w[1] < w[0], "{worst:?}");
    }
}

#[test]
fn f32_group_tracks_f64() {
    let g32 = reslab::chargroup::CharacterGroup::<f32>::new(101).unwrap();
    let g64 = Group::new(101).unwrap();
    for j in [1usize, 10, 50] {
        let a = l_value(g32.character(j), reslab::lfunc::SigmaPoint::<f32>::one())
            .unwrap()
            .value;
        let b = l_value(g64.character(j), Sigma::one()).unwrap().value;
        assert!((a.re as f64 - b.re).abs() < 1e-4 && (a.im as f64 - b.im).abs() < 1e-4);
    }
}
